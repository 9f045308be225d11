//! Duality and link transforms on cell-wise affine functions, and Euler
//! integral transforms with the inner-product kernel `⟨x, ξ⟩`.

use num_traits::{One, Zero};

use crate::cf::CFun;
use crate::complex::CellId;
use crate::defint::{integrate, DefFun, Measure};
use crate::rational::signed;
use crate::{Error, Exec, Rational, Result};

/// Duality `Dh(x) = lim_{ε→0⁺} ∫ h·1_{B_ε(x)} dχ`: on each open cell τ, the sum
/// over cells σ whose closure contains τ of `(−1)^dim σ` times the affine
/// extension of `h|_σ` restricted to τ.
pub fn dual(h: &DefFun) -> DefFun {
    let k = h.complex();
    let data = k
        .cell_ids()
        .map(|t| {
            let mut acc = vec![Rational::zero(); k.cell(t).dim() + 1];
            for s in k.star(t) {
                let dim = k.cell(s).dim();
                for (a, x) in acc.iter_mut().zip(h.restrict(s, t)) {
                    *a += signed(dim, &x);
                }
            }
            acc
        })
        .collect();
    DefFun::new(k.clone(), data).expect("same shape as input")
}

/// `D(D(h)) == h`.
pub fn dual_involution_check(h: &DefFun) -> bool {
    &dual(&dual(h)) == h
}

/// Link transform `Λ = id − D`.
pub fn link(h: &DefFun) -> DefFun {
    h.combine(&Rational::one(), &dual(h), &-Rational::one()).expect("same complex")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelMode {
    Floor,
    Ceil,
    Avg,
    /// `⌊dχ⌋` minus `⌈dχ⌉`: for an indicator of a convex set, the width of its
    /// projection to the ξ-axis.
    Width,
}

/// The integrand `x ↦ h(x)·⟨x, ξ⟩`, which is affine on every open cell because
/// `h` is constant there.
pub fn kernel_integrand(h: &DefFun, xi: &[Rational]) -> Result<DefFun> {
    if !h.is_cellwise_constant() {
        return Err(Error::NotConstructibleIntegrand);
    }
    let k = h.complex();
    if xi.len() != k.ambient_dim() {
        return Err(Error::InvalidArgument(format!(
            "direction has {} components, complex lives in R^{}",
            xi.len(),
            k.ambient_dim()
        )));
    }
    let dot = |p: &[Rational]| p.iter().zip(xi).map(|(a, b)| a * b).sum::<Rational>();
    let data = k
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let value = &h.data(CellId(i))[0];
            c.vertices().iter().map(|&v| value * dot(k.coords(v))).collect()
        })
        .collect();
    DefFun::new(k.clone(), data)
}

fn transform_one(h: &DefFun, xi: &[Rational], mode: KernelMode) -> Result<Rational> {
    let g = kernel_integrand(h, xi)?;
    Ok(match mode {
        KernelMode::Floor => integrate(&g, Measure::Floor),
        KernelMode::Ceil => integrate(&g, Measure::Ceil),
        KernelMode::Avg => integrate(&g, Measure::Avg),
        KernelMode::Width => integrate(&g, Measure::Floor) - integrate(&g, Measure::Ceil),
    })
}

/// `∫ h(x)⟨x, ξ⟩` with the requested measure, for each direction ξ.
pub fn kernel_transform(h: &DefFun, xis: &[Vec<Rational>], mode: KernelMode) -> Result<Vec<Rational>> {
    kernel_transform_with(h, xis, mode, Exec::default())
}

pub fn kernel_transform_with(
    h: &DefFun,
    xis: &[Vec<Rational>],
    mode: KernelMode,
    exec: Exec,
) -> Result<Vec<Rational>> {
    exec.map_slice(xis, |xi| transform_one(h, xi, mode)).into_iter().collect()
}

/// Whether `∫(af+bg)K = a∫fK + b∫gK` holds at every ξ for the given measure.
pub fn linearity_check(
    f: &CFun,
    g: &CFun,
    a: i64,
    b: i64,
    xis: &[Vec<Rational>],
    mode: KernelMode,
) -> Result<bool> {
    let combo = DefFun::from_cfun(&f.combine(a, g, b)?);
    let lhs = kernel_transform(&combo, xis, mode)?;
    let tf = kernel_transform(&DefFun::from_cfun(f), xis, mode)?;
    let tg = kernel_transform(&DefFun::from_cfun(g), xis, mode)?;
    let (qa, qb) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
    Ok(lhs.iter().zip(tf.iter().zip(&tg)).all(|(l, (x, y))| l == &(&qa * x + &qb * y)))
}

/// Linearity of the `[dχ]` transform on constructible integrands.
pub fn avg_linearity_check(f: &CFun, g: &CFun, a: i64, b: i64, xis: &[Vec<Rational>]) -> Result<bool> {
    linearity_check(f, g, a, b, xis, KernelMode::Avg)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::{build_complex, circle, grid_complex, torus, SimplicialComplex};
    use crate::rat;

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    fn interval() -> Arc<SimplicialComplex> {
        Arc::new(build_complex(vec![vec![q(0)], vec![q(1)]], vec![vec![0, 1]]).unwrap())
    }

    fn unit_square() -> Arc<SimplicialComplex> {
        Arc::new(grid_complex(1, 1, (q(0), q(1)), (q(0), q(1))).unwrap())
    }

    #[test]
    fn dual_of_closed_interval() {
        let one = DefFun::from_cfun(&CFun::one(interval()));
        let d = dual(&one);
        let k = one.complex();
        assert_eq!(d.data(k.vertex_cell(0)), &[q(0)]);
        assert_eq!(d.data(k.vertex_cell(1)), &[q(0)]);
        assert_eq!(d.data(k.find(&[0, 1]).unwrap()), &[q(-1), q(-1)]);
        assert_eq!(dual(&d), one);
    }

    #[test]
    fn manifold_duality() {
        let c = DefFun::from_vertex_values(circle(4).unwrap(), vec![q(3), q(2), q(1), q(2)]).unwrap();
        assert_eq!(dual(&c), c.conjugate());
        assert_eq!(link(&c), c.scale(&q(2)));
        let t = DefFun::from_vertex_fn(torus(3, 4).unwrap(), |p| &p[0] - &p[2] * q(3));
        assert_eq!(dual(&t), t);
        assert!(link(&t).all_data().iter().flatten().all(|x| x.is_zero()));
        assert!(dual_involution_check(&t));
    }

    #[test]
    fn link_of_vertex_indicator() {
        let pts = (0..3).map(|i| vec![q(i)]).collect();
        let k = Arc::new(build_complex(pts, vec![vec![0, 1], vec![1, 2]]).unwrap());
        let v = k.vertex_cell(1);
        let h = DefFun::from_cfun(&CFun::indicator(k.clone(), &[v], 1).unwrap());
        // D(1_{v}) is 1 at v, zero elsewhere, so the link vanishes
        assert_eq!(dual(&h), h);
        assert!(link(&h).all_data().iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn square_width_and_centroid() {
        let h = DefFun::from_cfun(&CFun::one(unit_square()));
        let xis = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        assert_eq!(kernel_transform(&h, &xis, KernelMode::Width).unwrap(), vec![q(1), q(2)]);
        assert_eq!(kernel_transform(&h, &xis, KernelMode::Avg).unwrap(), vec![rat(1, 2), q(1)]);
        let pl = DefFun::from_vertex_fn(unit_square(), |p| p[0].clone());
        assert_eq!(kernel_transform(&pl, &xis, KernelMode::Floor), Err(Error::NotConstructibleIntegrand));
        assert!(kernel_transform(&h, &[vec![q(1)]], KernelMode::Floor).is_err());
    }

    #[test]
    fn linearity() {
        let k = Arc::new(grid_complex(2, 2, (q(0), q(2)), (q(0), q(2))).unwrap());
        let f = CFun::one(k.clone());
        let small: Vec<CellId> = k
            .cell_ids()
            .filter(|&c| k.cell(c).vertices().iter().all(|&v| k.coords(v).iter().all(|x| x <= &q(1))))
            .collect();
        let g = CFun::indicator(k, &small, 1).unwrap();
        let xis = vec![vec![q(1), q(0)], vec![q(2), q(-3)]];
        assert!(avg_linearity_check(&f, &g, 1, -1, &xis).unwrap());
        assert!(linearity_check(&f, &g, 2, 3, &xis, KernelMode::Floor).unwrap());
        assert!(!linearity_check(&f, &g, -1, 0, &xis, KernelMode::Floor).unwrap());
    }
}
