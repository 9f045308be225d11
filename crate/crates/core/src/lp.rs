//! Dense two-phase simplex over exact rationals, used for geometric
//! validation of complexes. Problems here have at most a dozen variables.

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // last entry of each row is the rhs
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        self.rows[i].last().unwrap()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland's-rule simplex maximizing `obj` over columns `0..ncols`.
    fn optimize(&mut self, obj: &[Rational], ncols: usize) -> bool {
        loop {
            let entering = (0..ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &obj[b] * &self.rows[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x ≥ 0`.
pub(crate) fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<Rational> = Vec::with_capacity(n + m + 1);
        for x in row {
            r.push(if flip { -x.clone() } else { x.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Rational::from_integer(1.into()) } else { Rational::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(r);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect() };

    let mut phase1 = vec![Rational::zero(); n + m];
    for x in phase1.iter_mut().skip(n) {
        *x = Rational::from_integer((-1).into());
    }
    t.optimize(&phase1, n + m);
    let infeasibility: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= n)
        .fold(Rational::zero(), |acc, (i, _)| acc + t.rhs(i));
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut obj = c.to_vec();
    obj.resize(n + m, Rational::zero());
    if !t.optimize(&obj, n) {
        return LpOutcome::Unbounded;
    }
    let value = t
        .basis
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, &bj)| acc + &obj[bj] * t.rhs(i));
    LpOutcome::Optimal(value)
}
