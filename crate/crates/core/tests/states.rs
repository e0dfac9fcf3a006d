use proptest::prelude::*;

use qlogic::builders::{firefly_l12, mo, powerset};
use qlogic::classify::maximal_blocks;
use qlogic::number::Number;
use qlogic::state::{
    extreme_states, find_state, implied_affine_relations, inclusion_exclusion_scan, is_state, sample_states,
    Valuation,
};
use qlogic::OrthoLattice;

fn pool() -> Vec<OrthoLattice> {
    vec![firefly_l12(), powerset(3).unwrap(), mo(2).unwrap(), mo(3).unwrap()]
}

fn assert_monotone(o: &OrthoLattice, v: &Valuation) {
    for a in o.elements() {
        for b in o.elements().filter(|&b| o.leq(a, b)) {
            assert!(v.get(a) <= v.get(b), "{} <= {}", o.name(a), o.name(b));
        }
        assert_eq!(&(v.get(a) + v.get(o.neg(a))), &Number::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn convex_combinations_of_vertices_are_states(
        which in 0usize..4,
        raw in proptest::collection::vec(1i64..50, 1..12),
    ) {
        let o = &pool()[which];
        let vertices = extreme_states(o, 1000).unwrap();
        let weights: Vec<i64> = vertices.iter().enumerate().map(|(i, _)| raw[i % raw.len()]).collect();
        let total: i64 = weights.iter().sum();
        let w: Vec<Number> = weights.iter().map(|&x| Number::ratio(x, total)).collect();
        let s = Valuation::combine(&vertices, &w);
        prop_assert!(is_state(o, &s, 0.0).unwrap().pass);
        assert_monotone(o, &s);
    }

    #[test]
    fn samples_satisfy_every_relation(which in 0usize..4, seed in any::<u64>()) {
        let o = &pool()[which];
        let relations = implied_affine_relations(o).unwrap();
        for s in sample_states(o, 5, seed).unwrap() {
            prop_assert!(is_state(o, &s, 0.0).unwrap().pass);
            for r in &relations {
                prop_assert_eq!(r.residual(&s), Number::zero());
            }
        }
    }

    #[test]
    fn restriction_to_a_block_is_classical(which in 0usize..4, seed in any::<u64>()) {
        let o = &pool()[which];
        let blocks = maximal_blocks(o).unwrap();
        let s = &sample_states(o, 1, seed).unwrap()[0];
        for block in &blocks {
            for &a in block {
                for &b in block {
                    let lhs = s.get(a) + s.get(b);
                    let rhs = s.get(o.meet(a, b)) + s.get(o.join(a, b));
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn boolean_states_obey_inclusion_exclusion() {
    let p = powerset(3).unwrap();
    for s in sample_states(&p, 20, 1).unwrap() {
        assert!(inclusion_exclusion_scan(&p, &s, 0.0).unwrap().is_empty());
    }
}

#[test]
fn found_state_is_a_state() {
    for o in pool() {
        let s = find_state(&o).unwrap();
        assert!(is_state(&o, &s, 0.0).unwrap().pass);
        assert_monotone(&o, &s);
    }
}
