//! Combinatorial Morse co-index and index fields of PL integrands, and the
//! Morse-sum evaluation of the lower and upper integrals.

use std::collections::HashSet;

use num_traits::Zero;

use crate::cf::CFun;
use crate::complex::{CellId, VertexId};
use crate::defint::{integrate, DefFun, Measure};
use crate::rational::{int, sign};
use crate::{Error, Exec, Rational, Result};

/// Which Morse field to use: the co-index (`Index*`, pairs with `⌊dχ⌋`) or the
/// index (`Index_*`, pairs with `⌈dχ⌉`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Coindex,
    Index,
}

/// Face of `c` spanned by the vertices where the affine data attain their
/// minimum. `h` is constant on it.
fn min_face(h: &DefFun, c: CellId) -> CellId {
    let k = h.complex();
    let lo = h.min(c);
    let verts: Vec<VertexId> = k
        .cell(c)
        .vertices()
        .iter()
        .zip(h.data(c))
        .filter(|(_, x)| *x == lo)
        .map(|(&v, _)| v)
        .collect();
    k.find(&verts).expect("faces are stored")
}

/// `Index*h = Σ_σ (−1)^dim σ · 1_{F_min(σ)}`, where `F_min(σ)` is the closed
/// face of σ on which `h` attains its infimum over σ.
pub fn coindex(h: &DefFun) -> Result<CFun> {
    coindex_with(h, Exec::default())
}

pub fn coindex_with(h: &DefFun, exec: Exec) -> Result<CFun> {
    if !h.is_continuous() {
        return Err(Error::NotContinuous);
    }
    let k = h.complex();
    let faces = exec.map_cheap(k.num_cells(), |i| {
        let c = CellId(i);
        (min_face(h, c), sign(k.cell(c).dim()))
    });
    let mut values = vec![0i64; k.num_cells()];
    for (f, s) in faces {
        for g in k.closure(f) {
            values[g.index()] += s;
        }
    }
    CFun::new(k.clone(), values)
}

/// `Index_*h`, the co-index of `−h`.
pub fn index(h: &DefFun) -> Result<CFun> {
    coindex(&h.conjugate())
}

/// `∫ h·Index h dχ`: the Morse-sum form of `∫h⌊dχ⌋` (co-index) or
/// `∫h⌈dχ⌉` (index). `h` is constant on every cell carrying a nonzero
/// index value.
pub fn integrate_via_index(h: &DefFun, which: IndexKind) -> Result<Rational> {
    let field = match which {
        IndexKind::Coindex => coindex(h)?,
        IndexKind::Index => index(h)?,
    };
    let k = h.complex();
    let mut total = Rational::zero();
    for c in k.cell_ids() {
        let w = field.value(c);
        if w != 0 {
            let d = h.data(c);
            debug_assert!(d.iter().all(|x| x == &d[0]), "index supported on a nonconstant cell");
            total += &d[0] * int(w * sign(k.cell(c).dim()));
        }
    }
    Ok(total)
}

/// Field whose `dχ`-integral is `∫h⌊dχ⌋`: `h` itself for constructible
/// (cell-wise constant) integrands, `h·Index*h` for continuous ones.
pub fn weighted_coindex(h: &DefFun) -> Result<DefFun> {
    if h.is_cellwise_constant() {
        return Ok(h.clone());
    }
    let field = coindex(h)?;
    let values = h
        .complex()
        .cell_ids()
        .map(|c| &h.data(c)[0] * int(field.value(c)))
        .collect();
    // h is constant wherever the field is nonzero, so the product is too
    DefFun::from_cell_values(h.complex().clone(), values)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalVertex {
    pub vertex: VertexId,
    /// χ of the lower link.
    pub lower_link_chi: i64,
    /// Smooth-style Morse index when it can be read off the lower link on a
    /// closed 1- or 2-manifold: 0 at minima, n at maxima, 1 at simple saddles.
    pub morse_index: Option<usize>,
}

/// Vertices whose lower link (link cells with all vertices strictly below)
/// has χ ≠ 1. Values on each closed vertex star must be pairwise distinct.
pub fn critical_vertices(h: &DefFun) -> Result<Vec<CriticalVertex>> {
    if !h.is_continuous() {
        return Err(Error::NotContinuous);
    }
    let k = h.complex();
    let n = k.closed_manifold_dim();
    let mut out = Vec::new();
    for v in 0..k.num_vertices() {
        let link = k.vertex_link(v);
        let mut star_verts: Vec<VertexId> = link
            .iter()
            .filter(|&&c| k.cell(c).dim() == 0)
            .map(|&c| k.cell(c).vertices()[0])
            .collect();
        star_verts.push(v);
        let distinct: HashSet<&Rational> = star_verts.iter().map(|&w| h.vertex_value(w)).collect();
        if distinct.len() != star_verts.len() {
            return Err(Error::TieError(v));
        }
        let hv = h.vertex_value(v);
        let lower: Vec<CellId> = link
            .iter()
            .copied()
            .filter(|&c| k.cell(c).vertices().iter().all(|&w| h.vertex_value(w) < hv))
            .collect();
        let chi = k.euler_characteristic(&lower)?;
        if chi == 1 {
            continue;
        }
        let morse_index = if lower.is_empty() {
            Some(0)
        } else if lower.len() == link.len() {
            n
        } else if n == Some(2) && chi == 2 {
            Some(1)
        } else {
            None
        };
        out.push(CriticalVertex { vertex: v, lower_link_chi: chi, morse_index });
    }
    Ok(out)
}

/// `(∫h⌈dχ⌉, (−1)^n ∫h⌊dχ⌋)` for continuous `h` on a closed n-manifold.
pub fn parity_check(h: &DefFun) -> Result<(Rational, Rational)> {
    let n = h.complex().closed_manifold_dim().ok_or(Error::NotManifoldFixture)?;
    if !h.is_continuous() {
        return Err(Error::NotContinuous);
    }
    let floor = integrate(h, Measure::Floor);
    Ok((integrate(h, Measure::Ceil), if n % 2 == 0 { floor } else { -floor }))
}
