use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use super::linalg::{maximize, rref, solve_square, LpOutcome};
use super::system::{build_state_system, StateSystem};
use super::{StateError, Valuation};
use crate::lattice::{ElementId, OrthoLattice};
use crate::number::{Field, Number};

/// Lattices up to this size are solved in exact rational arithmetic when
/// [`Arithmetic::Auto`] is requested.
pub const EXACT_ELEMENT_LIMIT: usize = 512;

/// Vertex cap used when sampling states.
const SAMPLE_VERTEX_CAP: usize = 100_000;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Arithmetic {
    #[default]
    Auto,
    Exact,
    Float,
}

impl Arithmetic {
    fn exact_for(self, n: usize) -> bool {
        match self {
            Arithmetic::Auto => n <= EXACT_ELEMENT_LIMIT,
            Arithmetic::Exact => true,
            Arithmetic::Float => false,
        }
    }
}

/// Which half of `0 <= s(x) <= 1` an inequality is.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundSide {
    Lower,
    Upper,
}

/// One term of an infeasibility certificate: a nonnegative multiplier on a
/// bound of the reduced system. Summing the weighted bounds gives `0 <= c`
/// with `c < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateTerm {
    pub element: ElementId,
    pub side: BoundSide,
    pub multiplier: Number,
}

/// `sum(coefficient * s(atom)) = rhs` with integer coefficients of gcd 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRelation {
    pub terms: Vec<(ElementId, BigInt)>,
    pub rhs: BigInt,
}

impl AffineRelation {
    /// `lhs - rhs` on a valuation.
    pub fn residual(&self, v: &Valuation) -> Number {
        let mut acc = Number::Exact(BigRational::from_integer(-self.rhs.clone()));
        for (e, c) in &self.terms {
            acc = &acc + &(&Number::Exact(BigRational::from_integer(c.clone())) * v.get(*e));
        }
        acc
    }

    /// Text such as `s(l) + s(r) - s(f) - s(b) = 0`.
    pub fn render(&self, ortho: &OrthoLattice) -> String {
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("s({})", ortho.name(*e)));
        }
        format!("{out} = {}", self.rhs)
    }
}

/// The state polytope after eliminating the equalities: every element value
/// is an affine function of the free variables `t >= 0`, and the element
/// bounds become `g t <= h`.
struct Reduced<F> {
    constant: Vec<F>,
    coeff: Vec<Vec<F>>,
    g: Vec<Vec<F>>,
    h: Vec<F>,
    origin: Vec<(ElementId, BoundSide)>,
}

impl<F: Field> Reduced<F> {
    fn dim(&self) -> usize {
        self.coeff.first().map_or(0, Vec::len)
    }

    fn point(&self, t: &[F]) -> Vec<F> {
        self.constant
            .iter()
            .zip(&self.coeff)
            .map(|(c, a)| {
                a.iter()
                    .zip(t)
                    .filter(|(x, _)| !x.is_zero())
                    .fold(c.clone(), |acc, (x, y)| acc + x.clone() * y.clone())
            })
            .collect()
    }

    fn certificate(&self, y: Option<Vec<F>>) -> Vec<CertificateTerm> {
        y.map(|y| {
            y.iter()
                .zip(&self.origin)
                .filter(|(v, _)| !v.is_zero())
                .map(|(v, &(element, side))| CertificateTerm {
                    element,
                    side,
                    multiplier: v.to_number(),
                })
                .collect()
        })
        .unwrap_or_default()
    }

    fn maximize(&self, objective: &[F]) -> Result<(Vec<F>, F), StateError> {
        match maximize(&self.g, &self.h, objective) {
            LpOutcome::Optimal { x, value } => Ok((x, value)),
            LpOutcome::Infeasible { certificate } => Err(StateError::Infeasible {
                certificate: self.certificate(certificate),
            }),
            LpOutcome::Unbounded => unreachable!("state polytope is bounded"),
        }
    }
}

fn equality_rows<F: Field>(system: &StateSystem) -> Vec<Vec<F>> {
    let n = system.variables;
    system
        .equalities
        .iter()
        .map(|eq| {
            let mut row = vec![F::zero(); n + 1];
            for &(e, c) in &eq.terms {
                row[e.index()] = F::from_i64(c);
            }
            row[n] = F::from_i64(eq.rhs);
            row
        })
        .collect()
}

fn reduce<F: Field>(system: &StateSystem) -> Result<Reduced<F>, StateError> {
    let n = system.variables;
    // high indices become pivots, so the free variables are low-index elements
    let priority: Vec<usize> = (0..n).rev().collect();
    let ech = rref(equality_rows::<F>(system), n, &priority);
    if ech.inconsistent {
        return Err(StateError::Infeasible {
            certificate: Vec::new(),
        });
    }
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
    let k = free.len();
    let mut constant = vec![F::zero(); n];
    let mut coeff = vec![vec![F::zero(); k]; n];
    for (j, &f) in free.iter().enumerate() {
        coeff[f][j] = F::one();
    }
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        constant[p] = row[n].clone();
        for (j, &f) in free.iter().enumerate() {
            if !row[f].is_zero() {
                coeff[p][j] = -row[f].clone();
            }
        }
    }

    let (mut g, mut h, mut origin) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        let e = ElementId::new(i);
        if coeff[i].iter().all(Field::is_zero) {
            let side = if constant[i].is_negative() {
                Some(BoundSide::Lower)
            } else if (constant[i].clone() - F::one()).is_positive() {
                Some(BoundSide::Upper)
            } else {
                None
            };
            if let Some(side) = side {
                return Err(StateError::Infeasible {
                    certificate: vec![CertificateTerm {
                        element: e,
                        side,
                        multiplier: Number::one(),
                    }],
                });
            }
            continue;
        }
        g.push(coeff[i].iter().map(|v| -v.clone()).collect());
        h.push(constant[i].clone());
        origin.push((e, BoundSide::Lower));
        g.push(coeff[i].clone());
        h.push(F::one() - constant[i].clone());
        origin.push((e, BoundSide::Upper));
    }
    Ok(Reduced {
        constant,
        coeff,
        g,
        h,
        origin,
    })
}

fn to_valuation<F: Field>(x: &[F]) -> Valuation {
    Valuation::new(x.iter().map(Field::to_number).collect())
}

/// A deterministic state: the average of the simplex optima obtained by
/// maximizing each atom in turn. On a boolean lattice this is the uniform
/// measure on atoms.
pub fn find_state(ortho: &OrthoLattice) -> Result<Valuation, StateError> {
    find_state_with(ortho, Arithmetic::Auto)
}

pub fn find_state_with(ortho: &OrthoLattice, arithmetic: Arithmetic) -> Result<Valuation, StateError> {
    let system = build_state_system(ortho)?;
    if arithmetic.exact_for(ortho.len()) {
        find_point::<BigRational>(ortho, &system)
    } else {
        find_point::<f64>(ortho, &system)
    }
}

fn find_point<F: Field>(ortho: &OrthoLattice, system: &StateSystem) -> Result<Valuation, StateError> {
    let r = reduce::<F>(system)?;
    let k = r.dim();
    if k == 0 {
        return Ok(to_valuation(&r.point(&[])));
    }
    let atoms = ortho.lattice().atoms();
    let mut acc = vec![F::zero(); k];
    for a in &atoms {
        let (t, _) = r.maximize(&r.coeff[a.index()])?;
        for (s, v) in acc.iter_mut().zip(t) {
            *s = s.clone() + v;
        }
    }
    let count = F::from_i64(atoms.len() as i64);
    let t: Vec<F> = acc.into_iter().map(|v| v / count.clone()).collect();
    Ok(to_valuation(&r.point(&t)))
}

/// Vertices of the state polytope in descending lexicographic order of
/// their value vectors.
pub fn extreme_states(ortho: &OrthoLattice, cap: usize) -> Result<Vec<Valuation>, StateError> {
    extreme_states_with(ortho, cap, Arithmetic::Auto)
}

pub fn extreme_states_with(
    ortho: &OrthoLattice,
    cap: usize,
    arithmetic: Arithmetic,
) -> Result<Vec<Valuation>, StateError> {
    let system = build_state_system(ortho)?;
    if arithmetic.exact_for(ortho.len()) {
        vertices::<BigRational>(&system, cap)
    } else {
        vertices::<f64>(&system, cap)
    }
}

fn lex_desc<F: Field>(a: &[F], b: &[F]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp_value(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

struct VertexSearch<'a, F> {
    r: &'a Reduced<F>,
    cap: usize,
    found: Vec<Vec<F>>,
    exceeded: bool,
    chosen: Vec<usize>,
    basis: Vec<(usize, Vec<F>)>,
}

impl<F: Field> VertexSearch<'_, F> {
    fn run(&mut self, start: usize) {
        let k = self.r.dim();
        let m = self.r.g.len();
        if self.chosen.len() == k {
            self.visit();
            return;
        }
        for i in start..m {
            if self.exceeded || m - i < k - self.chosen.len() {
                return;
            }
            let mut v = self.r.g[i].clone();
            for (p, b) in &self.basis {
                if v[*p].is_zero() {
                    continue;
                }
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
            let Some(q) = v.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let inv = F::one() / v[q].clone();
            let v = v.into_iter().map(|x| x * inv.clone()).collect();
            self.basis.push((q, v));
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
            self.basis.pop();
        }
    }

    fn visit(&mut self) {
        let r = self.r;
        let a: Vec<Vec<F>> = self.chosen.iter().map(|&i| r.g[i].clone()).collect();
        let b: Vec<F> = self.chosen.iter().map(|&i| r.h[i].clone()).collect();
        let Some(t) = solve_square(&a, &b) else {
            return;
        };
        let feasible = r.g.iter().zip(&r.h).all(|(row, hi)| {
            let lhs = row
                .iter()
                .zip(&t)
                .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            !(lhs - hi.clone()).is_positive()
        });
        if !feasible {
            return;
        }
        let x = r.point(&t);
        if self.found.iter().any(|y| lex_desc(y, &x) == Ordering::Equal) {
            return;
        }
        if self.found.len() == self.cap {
            self.exceeded = true;
            return;
        }
        self.found.push(x);
    }
}

fn vertices<F: Field>(system: &StateSystem, cap: usize) -> Result<Vec<Valuation>, StateError> {
    let r = reduce::<F>(system)?;
    let mut search = VertexSearch {
        r: &r,
        cap,
        found: Vec::new(),
        exceeded: false,
        chosen: Vec::new(),
        basis: Vec::new(),
    };
    search.run(0);
    let (mut found, exceeded) = (search.found, search.exceeded);
    found.sort_by(|a, b| lex_desc(a, b));
    let out: Vec<Valuation> = found.iter().map(|x| to_valuation(x)).collect();
    if exceeded {
        return Err(StateError::CapExceeded { cap, partial: out });
    }
    if out.is_empty() {
        // bounded and empty: let the simplex method produce a certificate
        r.maximize(&vec![F::zero(); r.dim()])?;
        unreachable!("a nonempty bounded polytope has a vertex");
    }
    Ok(out)
}

/// `count` random states: convex combinations of the vertices with weights
/// drawn from a flat Dirichlet distribution and rounded to rationals, so
/// exact lattices yield exact states.
pub fn sample_states(ortho: &OrthoLattice, count: usize, seed: u64) -> Result<Vec<Valuation>, StateError> {
    let vertices = extreme_states(ortho, SAMPLE_VERTEX_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut raw: Vec<i64> = vertices
            .iter()
            .map(|_| {
                let e: f64 = rng.sample(Exp1);
                (e * 1e6).round() as i64
            })
            .collect();
        let mut total: i64 = raw.iter().sum();
        if total == 0 {
            raw.iter_mut().for_each(|w| *w = 1);
            total = raw.len() as i64;
        }
        let weights: Vec<Number> = raw.iter().map(|&w| Number::ratio(w, total)).collect();
        out.push(Valuation::combine(&vertices, &weights));
    }
    Ok(out)
}

/// A basis of the affine relations among atom values that every state
/// satisfies, computed exactly.
pub fn implied_affine_relations(ortho: &OrthoLattice) -> Result<Vec<AffineRelation>, StateError> {
    let system = build_state_system(ortho)?;
    let n = system.variables;
    let r = reduce::<BigRational>(&system)?;
    let mut rows = equality_rows::<BigRational>(&system);
    // bounds that are tight on the whole polytope are implicit equalities
    for i in 0..n {
        let a = &r.coeff[i];
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let (_, hi) = r.maximize(a)?;
        let neg: Vec<BigRational> = a.iter().map(|v| -v.clone()).collect();
        let (_, lo) = r.maximize(&neg)?;
        let max = &r.constant[i] + hi;
        let min = &r.constant[i] - lo;
        for (value, hit) in [(0, Zero::is_zero(&max)), (1, min.is_one())] {
            if hit {
                let mut row = vec![<BigRational as Zero>::zero(); n + 1];
                row[i] = <BigRational as One>::one();
                row[n] = BigRational::from_integer(value.into());
                rows.push(row);
            }
        }
    }

    let atoms = ortho.lattice().atoms();
    let mut is_atom = vec![false; n];
    for a in &atoms {
        is_atom[a.index()] = true;
    }
    let priority: Vec<usize> = (0..n)
        .filter(|&i| !is_atom[i])
        .chain(atoms.iter().rev().map(|a| a.index()))
        .collect();
    let ech = rref(rows, n, &priority);

    let mut dense: Vec<(Vec<BigInt>, BigInt)> = ech
        .rows
        .iter()
        .zip(&ech.pivots)
        .filter(|(_, &p)| is_atom[p])
        .map(|(row, _)| {
            let vals: Vec<&BigRational> = atoms.iter().map(|a| &row[a.index()]).chain([&row[n]]).collect();
            integer_row(&vals)
        })
        .collect();
    dense.sort_by(|a, b| b.cmp(a));
    Ok(dense
        .into_iter()
        .map(|(coeffs, rhs)| AffineRelation {
            terms: atoms
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&a, c)| (a, c))
                .collect(),
            rhs,
        })
        .collect())
}

/// Scales a rational row (coefficients then rhs) to coprime integers with
/// the first nonzero coefficient positive.
fn integer_row(vals: &[&BigRational]) -> (Vec<BigInt>, BigInt) {
    let lcm = vals.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut ints: Vec<BigInt> = vals.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let lead_negative = ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(Signed::is_negative);
    let g = if lead_negative { -g } else { g };
    if !g.is_zero() {
        ints.iter_mut().for_each(|v| *v = &*v / &g);
    }
    let rhs = ints.pop().unwrap_or_default();
    (ints, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{firefly_l12, mo, o6, powerset};
    use crate::state::is_state;

    fn values(v: &Valuation) -> Vec<Number> {
        v.values().to_vec()
    }

    #[test]
    fn find_state_powerset3_is_uniform() {
        let p = powerset(3).unwrap();
        let s = find_state(&p).unwrap();
        for mask in 1..8usize {
            let expected = Number::ratio(mask.count_ones() as i64, 3);
            assert_eq!(s.get(ElementId::new(mask)), &expected);
        }
        assert_eq!(s.get(ElementId::new(0)), &Number::zero());
    }

    #[test]
    fn find_state_is_a_state_and_stable() {
        for ortho in [firefly_l12(), mo(4).unwrap()] {
            let s = find_state(&ortho).unwrap();
            assert!(s.is_exact());
            assert!(is_state(&ortho, &s, 0.0).unwrap().pass);
            assert_eq!(s, find_state(&ortho).unwrap());
        }
    }

    #[test]
    fn find_state_float_mode() {
        let l = firefly_l12();
        let s = find_state_with(&l, Arithmetic::Float).unwrap();
        assert!(!s.is_exact());
        assert!(is_state(&l, &s, 1e-9).unwrap().pass);
    }

    #[test]
    fn non_orthomodular_rejected() {
        assert!(matches!(find_state(&o6()), Err(StateError::NotOrthomodular(_))));
        assert!(matches!(
            implied_affine_relations(&o6()),
            Err(StateError::NotOrthomodular(_))
        ));
    }

    #[test]
    fn powerset2_vertices_are_point_masses() {
        let p = powerset(2).unwrap();
        let v = extreme_states(&p, 10).unwrap();
        let n = Number::ratio;
        assert_eq!(
            v.iter().map(values).collect::<Vec<_>>(),
            vec![
                vec![n(0, 1), n(1, 1), n(0, 1), n(1, 1)],
                vec![n(0, 1), n(0, 1), n(1, 1), n(1, 1)],
            ]
        );
    }

    #[test]
    fn mo2_has_four_vertices() {
        let m = mo(2).unwrap();
        let v = extreme_states(&m, 10).unwrap();
        assert_eq!(v.len(), 4);
        let (a1, a2) = (ElementId::new(1), ElementId::new(3));
        let mut corners: Vec<(Number, Number)> =
            v.iter().map(|s| (s.get(a1).clone(), s.get(a2).clone())).collect();
        corners.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let (z, o) = (Number::zero(), Number::one());
        assert_eq!(
            corners,
            vec![(z.clone(), z.clone()), (z.clone(), o.clone()), (o.clone(), z), (o.clone(), o)]
        );
    }

    #[test]
    fn l12_vertices() {
        let l = firefly_l12();
        let v = extreme_states(&l, 100).unwrap();
        let at = |s: &Valuation, name: &str| s.get(l.find(name).unwrap()).clone();
        let one = Number::one();
        assert!(v.iter().any(|s| at(s, "n") == one));
        for (x, y) in [("l", "f"), ("l", "b"), ("r", "f"), ("r", "b")] {
            assert!(v.iter().any(|s| at(s, x) == one && at(s, y) == one && at(s, "n").is_exact()));
        }
        assert_eq!(v.len(), 5);
        for s in &v {
            assert!(is_state(&l, s, 0.0).unwrap().pass);
        }
    }

    #[test]
    fn cap_exceeded_keeps_partial() {
        let l = firefly_l12();
        match extreme_states(&l, 2) {
            Err(StateError::CapExceeded { cap, partial }) => {
                assert_eq!(cap, 2);
                assert_eq!(partial.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn l12_relations() {
        let l = firefly_l12();
        let rel = implied_affine_relations(&l).unwrap();
        let text: Vec<String> = rel.iter().map(|r| r.render(&l)).collect();
        assert_eq!(text, vec!["s(l) + s(r) + s(n) = 1", "s(l) + s(r) - s(f) - s(b) = 0"]);
    }

    #[test]
    fn powerset3_relation_is_normalization() {
        let p = powerset(3).unwrap();
        let rel = implied_affine_relations(&p).unwrap();
        assert_eq!(rel.len(), 1);
        assert_eq!(rel[0].render(&p), "s({1}) + s({2}) + s({3}) = 1");
    }

    #[test]
    fn samples_are_states_and_seeded() {
        let l = firefly_l12();
        let a = sample_states(&l, 20, 7).unwrap();
        assert_eq!(a, sample_states(&l, 20, 7).unwrap());
        assert_ne!(a, sample_states(&l, 20, 8).unwrap());
        for s in &a {
            assert!(is_state(&l, s, 0.0).unwrap().pass);
        }
    }

    #[test]
    fn integer_row_canonical() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let row = [q(-1, 2), q(1, 3), q(0, 1), q(-1, 6)];
        let refs: Vec<&BigRational> = row.iter().collect();
        let (c, r) = integer_row(&refs);
        let b = |v: i64| BigInt::from(v);
        assert_eq!(c, vec![b(3), b(-2), b(0)]);
        assert_eq!(r, b(1));
    }
}
