use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlogic::classify::classify;
use qlogic::hilbert::{
    born, born_valuation, generate_sublattice, join_s, meet_s, ortho_s, rvector, subspace_from_vectors,
    DensityMatrix, Subspace, DEFAULT_CAP,
};
use qlogic::state::{is_state, subadditivity_scan};

fn line(v: &[f64]) -> Subspace {
    subspace_from_vectors(v.len(), &[rvector(v)]).unwrap()
}

fn angle_line(t: f64) -> Subspace {
    line(&[t.cos(), t.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn born_is_affine_in_rho(seed in any::<u64>(), lambda in 0.0f64..=1.0, t in 0.0f64..3.1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DensityMatrix::random(2, &mut rng).unwrap();
        let b = DensityMatrix::random(2, &mut rng).unwrap();
        let s = angle_line(t);
        let mixed = born(&a.mix(&b, lambda).unwrap(), &s).unwrap();
        let split = lambda * born(&a, &s).unwrap() + (1.0 - lambda) * born(&b, &s).unwrap();
        prop_assert!((mixed - split).abs() < 1e-10);
    }

    #[test]
    fn complement_and_orthogonal_join(seed in any::<u64>(), t in 0.0f64..3.1) {
        let rho = DensityMatrix::random(2, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let s = angle_line(t);
        let total = born(&rho, &s).unwrap() + born(&rho, &ortho_s(&s)).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lines_in_the_plane_give_mo_lattices(k in 1usize..5, base in 0.0f64..0.5) {
        // k distinct, non-orthogonal directions
        let seeds: Vec<Subspace> = (0..k).map(|i| angle_line(base + 0.3 * i as f64)).collect();
        let g = generate_sublattice(&seeds, DEFAULT_CAP).unwrap();
        prop_assert_eq!(g.lattice.len(), 2 * k + 2);
        let r = classify(&g.lattice);
        prop_assert!(r.is_orthomodular && r.is_modular);
        prop_assert_eq!(r.is_distributive, k == 1);
    }

    #[test]
    fn generated_born_valuations_are_monotone_states(seed in any::<u64>()) {
        let seeds = [line(&[1.0, 0.0, 0.0]), line(&[0.0, 1.0, 0.0]), line(&[0.0, 0.0, 1.0]), line(&[1.0, 1.0, 0.0])];
        let g = generate_sublattice(&seeds, DEFAULT_CAP).unwrap();
        let rho = DensityMatrix::random(3, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let v = born_valuation(&rho, &g).unwrap();
        prop_assert!(is_state(&g.lattice, &v, 1e-8).unwrap().pass);
        let l = &g.lattice;
        for a in l.elements() {
            for b in l.elements().filter(|&b| l.leq(a, b)) {
                prop_assert!(v.get(a).to_f64() <= v.get(b).to_f64() + 1e-10);
            }
        }
    }

    #[test]
    fn meet_and_join_bound_the_operands(t in 0.0f64..3.1, u in 0.0f64..3.1) {
        let (a, b) = (angle_line(t), angle_line(u));
        let (m, j) = (meet_s(&a, &b).unwrap(), join_s(&a, &b).unwrap());
        prop_assert!(m.is_subspace_of(&a) && m.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&j) && b.is_subspace_of(&j));
    }
}

#[test]
fn one_hundred_random_densities_in_three_dimensions() {
    let seeds = [line(&[1.0, 0.0, 0.0]), line(&[0.0, 1.0, 0.0]), line(&[0.0, 0.0, 1.0]), line(&[1.0, 1.0, 0.0])];
    let g = generate_sublattice(&seeds, DEFAULT_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let rho = DensityMatrix::random(3, &mut rng).unwrap();
        let v = born_valuation(&rho, &g).unwrap();
        assert!(is_state(&g.lattice, &v, 1e-8).unwrap().pass);
    }
}

#[test]
fn subadditivity_holds_for_the_maximally_mixed_state() {
    let g = generate_sublattice(&[angle_line(0.0), angle_line(0.7)], DEFAULT_CAP).unwrap();
    let v = born_valuation(&DensityMatrix::maximally_mixed(2).unwrap(), &g).unwrap();
    // every line has weight 1/2, so s(a v b) <= 1 = s(a) + s(b)
    assert!(subadditivity_scan(&g.lattice, &v, 1e-9).unwrap().is_empty());
}
