//! Gauss-Jordan elimination and a two-phase simplex method over any
//! [`Field`].

use crate::number::Field;

/// Reduced row echelon form of an augmented system `[A | b]`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<F> {
    /// Nonzero rows, each with a unit pivot; length `ncols + 1`.
    pub rows: Vec<Vec<F>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    /// Set when some combination of the rows reads `0 = c` with `c != 0`.
    pub inconsistent: bool,
}

/// Gauss-Jordan elimination visiting columns in `priority` order. Columns
/// not listed are never pivots.
pub(crate) fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize, priority: &[usize]) -> Echelon<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in priority {
        if r == rows.len() {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            let score = row[col].pivot_score();
            if score > 0.0 && best.is_none_or(|(_, s)| score > s) {
                best = Some((i, score));
            }
        }
        let Some((p, _)) = best else { continue };
        rows.swap(r, p);
        let inv = F::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        rows[r][col] = F::one();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - factor.clone() * pv.clone();
                }
            }
            row[col] = F::zero();
        }
        pivots.push(col);
        r += 1;
    }
    let inconsistent = rows[r..].iter().any(|row| {
        row[..ncols].iter().all(Field::is_zero) && !row[ncols].is_zero()
    });
    rows.truncate(r);
    Echelon {
        rows,
        pivots,
        inconsistent,
    }
}

/// Solves a square system; `None` when it is singular.
pub(crate) fn solve_square<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let k = b.len();
    let rows: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let order: Vec<usize> = (0..k).collect();
    let ech = rref(rows, k, &order);
    if ech.pivots.len() < k {
        return None;
    }
    let mut x = vec![F::zero(); k];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpOutcome<F> {
    Optimal { x: Vec<F>, value: F },
    /// Farkas multipliers `y >= 0` with `y^T G >= 0` and `y^T h < 0`, when
    /// they could be read off the final phase-one tableau.
    Infeasible { certificate: Option<Vec<F>> },
    Unbounded,
}

/// Maximizes `c^T x` subject to `G x <= h`, `x >= 0` with Bland's rule, so
/// the result is deterministic for identical input.
pub(crate) fn maximize<F: Field>(g: &[Vec<F>], h: &[F], c: &[F]) -> LpOutcome<F> {
    let m = g.len();
    let k = c.len();
    let negative: Vec<usize> = (0..m).filter(|&i| h[i].is_negative()).collect();
    let p = negative.len();
    let cols = k + m + p;
    let mut art_col = vec![None; m];
    for (j, &i) in negative.iter().enumerate() {
        art_col[i] = Some(k + m + j);
    }

    let mut t: Vec<Vec<F>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let s = if art_col[i].is_some() { -F::one() } else { F::one() };
        let mut row = vec![F::zero(); cols + 1];
        for j in 0..k {
            if !g[i][j].is_zero() {
                row[j] = s.clone() * g[i][j].clone();
            }
        }
        row[k + i] = s.clone();
        row[cols] = s.clone() * h[i].clone();
        match art_col[i] {
            Some(a) => {
                row[a] = F::one();
                basis.push(a);
            }
            None => basis.push(k + i),
        }
        t.push(row);
    }

    let mut tableau = Tableau { t, basis, cols };

    if p > 0 {
        let mut cost = vec![F::zero(); cols];
        for c in &mut cost[k + m..] {
            *c = -F::one();
        }
        let allowed = vec![true; cols];
        let (obj, value) = match tableau.run(&cost, &allowed) {
            Ok(r) => r,
            Err(()) => unreachable!("phase one is bounded"),
        };
        if value.is_negative() {
            let y: Vec<F> = (0..m).map(|i| -obj[k + i].clone()).collect();
            let certificate = verify_farkas(g, h, &y).then_some(y);
            return LpOutcome::Infeasible { certificate };
        }
        // drive zero-level artificials out of the basis
        let mut r = 0;
        while r < tableau.t.len() {
            if tableau.basis[r] >= k + m {
                match (0..k + m).find(|&j| !tableau.t[r][j].is_zero()) {
                    Some(j) => tableau.pivot(r, j),
                    None => {
                        tableau.t.remove(r);
                        tableau.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut cost = vec![F::zero(); cols];
    cost[..k].clone_from_slice(c);
    let mut allowed = vec![true; cols];
    for a in allowed.iter_mut().skip(k + m) {
        *a = false;
    }
    match tableau.run(&cost, &allowed) {
        Ok((_, value)) => {
            let mut x = vec![F::zero(); k];
            for (row, &b) in tableau.t.iter().zip(&tableau.basis) {
                if b < k {
                    x[b] = row[cols].clone();
                }
            }
            LpOutcome::Optimal { x, value }
        }
        Err(()) => LpOutcome::Unbounded,
    }
}

fn verify_farkas<F: Field>(g: &[Vec<F>], h: &[F], y: &[F]) -> bool {
    if y.iter().any(Field::is_negative) {
        return false;
    }
    let k = g.first().map_or(0, Vec::len);
    for j in 0..k {
        let mut s = F::zero();
        for (row, yi) in g.iter().zip(y) {
            s = s + yi.clone() * row[j].clone();
        }
        if s.is_negative() {
            return false;
        }
    }
    let mut s = F::zero();
    for (hi, yi) in h.iter().zip(y) {
        s = s + yi.clone() * hi.clone();
    }
    s.is_negative()
}

struct Tableau<F> {
    t: Vec<Vec<F>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<F: Field> Tableau<F> {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = F::one() / self.t[r][col].clone();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        self.t[r][col] = F::one();
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - factor.clone() * pv.clone();
                }
            }
            row[col] = F::zero();
        }
        self.basis[r] = col;
    }

    /// Runs the simplex loop for `max cost^T x`; returns the final reduced
    /// costs and objective value, or `Err` when unbounded.
    fn run(&mut self, cost: &[F], allowed: &[bool]) -> Result<(Vec<F>, F), ()> {
        loop {
            let mut reduced = cost.to_vec();
            let mut value = F::zero();
            for (row, &b) in self.t.iter().zip(&self.basis) {
                let cb = &cost[b];
                if cb.is_zero() {
                    continue;
                }
                for (j, r) in reduced.iter_mut().enumerate() {
                    if !row[j].is_zero() {
                        *r = r.clone() - cb.clone() * row[j].clone();
                    }
                }
                value = value + cb.clone() * row[self.cols].clone();
            }
            let entering = (0..self.cols).find(|&j| allowed[j] && reduced[j].is_positive());
            let Some(col) = entering else {
                return Ok((reduced, value));
            };
            let mut leave: Option<(usize, F)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = row[self.cols].clone() / row[col].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => match ratio.cmp_value(lr) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => self.basis[i] < self.basis[*li],
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(());
            };
            self.pivot(r, col);
        }
    }
}
