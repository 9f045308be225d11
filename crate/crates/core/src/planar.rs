//! Connected-component (β₀) evaluation of `∫h⌊dχ⌋` for continuous, compactly
//! supported integrands on a planar window.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use petgraph::unionfind::UnionFind;

use crate::complex::{CellId, SimplicialComplex};
use crate::defint::{DefFun, Excursion};
use crate::rational::{int, sum};
use crate::{Error, Exec, Rational, Result};

/// A pure 2-dimensional complex in R² standing for a window of the plane. The
/// unbounded region outside the window is modeled by one extra node on which
/// every admissible integrand is zero.
#[derive(Clone, Debug)]
pub struct PlanarWindow {
    complex: Arc<SimplicialComplex>,
    boundary: Vec<CellId>,
}

impl PlanarWindow {
    pub fn new(complex: impl Into<Arc<SimplicialComplex>>) -> Result<Self> {
        let complex = complex.into();
        if complex.ambient_dim() != 2 || complex.dim() != 2 || !complex.is_pure() {
            return Err(Error::InvalidArgument(
                "planar window must be a pure 2-dimensional complex in the plane".into(),
            ));
        }
        let boundary = complex.boundary_cells();
        Ok(PlanarWindow { complex, boundary })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn boundary(&self) -> &[CellId] {
        &self.boundary
    }

    fn check(&self, h: &DefFun) -> Result<()> {
        crate::cf::same_complex(&self.complex, h.complex())?;
        if !h.is_continuous() {
            return Err(Error::NotContinuous);
        }
        let touches = self
            .boundary
            .iter()
            .any(|&c| h.data(c).iter().any(|x| !x.is_zero()));
        if touches {
            return Err(Error::SupportTouchesBoundary);
        }
        Ok(())
    }

    /// Number of connected components in R² of an excursion set of `h`.
    pub fn betti0_excursion(&self, h: &DefFun, s: &Rational, kind: Excursion) -> Result<usize> {
        self.check(h)?;
        Ok(self.count(h, s, kind))
    }

    fn count(&self, h: &DefFun, s: &Rational, kind: Excursion) -> usize {
        let k = &self.complex;
        let n = k.num_cells();
        let occupied: Vec<bool> = k.cell_ids().map(|c| piece_nonempty(h.min(c), h.max(c), s, kind)).collect();
        let outside = piece_nonempty(&Rational::zero(), &Rational::zero(), s, kind);
        let mut uf = UnionFind::<usize>::new(n + 1);
        for c in k.cell_ids().filter(|c| occupied[c.index()]) {
            for f in k.closure(c) {
                if occupied[f.index()] {
                    uf.union(c.index(), f.index());
                }
            }
        }
        if outside {
            for &c in &self.boundary {
                if occupied[c.index()] {
                    uf.union(n, c.index());
                }
            }
        }
        let mut roots: Vec<usize> = (0..n)
            .filter(|&i| occupied[i])
            .chain(outside.then_some(n))
            .map(|i| uf.find(i))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// `∫_0^∞ β₀{h≥s} + β₀{h≥−s} − β₀{h<s} − β₀{h<−s} ds`, exactly; equals
    /// `∫h⌊dχ⌋` for continuous compactly supported `h`.
    pub fn integrate_betti0(&self, h: &DefFun) -> Result<Rational> {
        self.integrate_betti0_with(h, Exec::default())
    }

    pub fn integrate_betti0_with(&self, h: &DefFun, exec: Exec) -> Result<Rational> {
        self.check(h)?;
        let mut breaks: Vec<Rational> = h
            .vertex_values()
            .into_iter()
            .map(|x| x.abs())
            .chain(std::iter::once(Rational::zero()))
            .collect();
        breaks.sort();
        breaks.dedup();
        let terms = exec.map_range(breaks.len() - 1, |i| {
            let (a, b) = (&breaks[i], &breaks[i + 1]);
            let s = (a + b) / int(2);
            let neg = -&s;
            let beta = self.count(h, &s, Excursion::Ge) as i64 + self.count(h, &neg, Excursion::Ge) as i64
                - self.count(h, &s, Excursion::Lt) as i64
                - self.count(h, &neg, Excursion::Lt) as i64;
            (b - a) * int(beta)
        });
        Ok(sum(terms))
    }
}

/// Whether the open cell with affine extrema `m ≤ M` meets the excursion set.
/// A nonconstant affine function on an open simplex does not attain its
/// extrema, which only matters when the threshold equals one of them.
fn piece_nonempty(m: &Rational, big_m: &Rational, s: &Rational, kind: Excursion) -> bool {
    let constant = m == big_m;
    match kind {
        Excursion::Ge => big_m > s || (constant && m == s),
        Excursion::Gt => big_m > s,
        Excursion::Le => m < s || (constant && m == s),
        Excursion::Lt => m < s,
    }
}

/// [`PlanarWindow::betti0_excursion`] on the window formed by `h`'s complex.
pub fn betti0_excursion(h: &DefFun, s: &Rational, kind: Excursion) -> Result<usize> {
    PlanarWindow::new(h.complex().clone())?.betti0_excursion(h, s, kind)
}

/// [`PlanarWindow::integrate_betti0`] on the window formed by `h`'s complex.
pub fn integrate_betti0(h: &DefFun) -> Result<Rational> {
    PlanarWindow::new(h.complex().clone())?.integrate_betti0(h)
}
