//! Definable integrands: functions affine on each open cell, integrated against
//! the lower and upper Euler measures `⌊dχ⌋`, `⌈dχ⌉` and their average `[dχ]`.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::cf::{same_complex, CFun, SimplicialMap};
use crate::complex::{CellId, SimplicialComplex, VertexId};
use crate::rational::{int, max_of, min_of, sign, signed, sum};
use crate::{Error, Exec, Rational, Result};

/// A function that is affine on every open cell. For each cell the data are
/// the limit values at the cell's vertices (in the cell's vertex order) of the
/// affine extension of the restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefFun {
    complex: Arc<SimplicialComplex>,
    data: Vec<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    /// `⌊dχ⌋`
    Floor,
    /// `⌈dχ⌉`
    Ceil,
    /// `[dχ]`, the mean of the other two.
    Avg,
}

/// Excursion set kinds `{h ≥ s}`, `{h > s}`, `{h ≤ s}`, `{h < s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Excursion {
    Ge,
    Gt,
    Le,
    Lt,
}

impl DefFun {
    pub fn new(complex: impl Into<Arc<SimplicialComplex>>, data: Vec<Vec<Rational>>) -> Result<Self> {
        let complex = complex.into();
        if data.len() != complex.num_cells() {
            return Err(Error::FunctionMismatch(format!(
                "{} cells of data for {} cells",
                data.len(),
                complex.num_cells()
            )));
        }
        for (c, d) in complex.cells().iter().zip(&data) {
            if d.len() != c.dim() + 1 {
                return Err(Error::FunctionMismatch(format!(
                    "cell {:?} needs {} values, got {}",
                    c.vertices(),
                    c.dim() + 1,
                    d.len()
                )));
            }
        }
        Ok(DefFun { complex, data })
    }

    /// The continuous piecewise-linear interpolation of vertex values.
    pub fn from_vertex_values(
        complex: impl Into<Arc<SimplicialComplex>>,
        values: Vec<Rational>,
    ) -> Result<Self> {
        let complex = complex.into();
        if values.len() != complex.num_vertices() {
            return Err(Error::FunctionMismatch(format!(
                "{} vertex values for {} vertices",
                values.len(),
                complex.num_vertices()
            )));
        }
        let data = complex
            .cells()
            .iter()
            .map(|c| c.vertices().iter().map(|&v| values[v].clone()).collect())
            .collect();
        Ok(DefFun { complex, data })
    }

    /// One constant per open cell.
    pub fn from_cell_values(
        complex: impl Into<Arc<SimplicialComplex>>,
        values: Vec<Rational>,
    ) -> Result<Self> {
        let complex = complex.into();
        if values.len() != complex.num_cells() {
            return Err(Error::FunctionMismatch(format!(
                "{} cell values for {} cells",
                values.len(),
                complex.num_cells()
            )));
        }
        let data = complex
            .cells()
            .iter()
            .zip(values)
            .map(|(c, v)| vec![v; c.dim() + 1])
            .collect();
        Ok(DefFun { complex, data })
    }

    pub fn from_cfun(h: &CFun) -> Self {
        let values = h.values().iter().map(|&v| int(v)).collect();
        Self::from_cell_values(h.complex().clone(), values).expect("one value per cell")
    }

    pub fn constant(complex: impl Into<Arc<SimplicialComplex>>, q: Rational) -> Self {
        let complex = complex.into();
        let n = complex.num_cells();
        Self::from_cell_values(complex, vec![q; n]).expect("one value per cell")
    }

    /// Continuous PL interpolation of `f` evaluated at the vertex coordinates.
    pub fn from_vertex_fn(
        complex: impl Into<Arc<SimplicialComplex>>,
        f: impl Fn(&[Rational]) -> Rational,
    ) -> Self {
        let complex = complex.into();
        let values = complex.all_coords().iter().map(|p| f(p)).collect();
        Self::from_vertex_values(complex, values).expect("one value per vertex")
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    /// Limit values of the affine piece on `c`, one per vertex of `c`.
    pub fn data(&self, c: CellId) -> &[Rational] {
        &self.data[c.index()]
    }

    pub fn all_data(&self) -> &[Vec<Rational>] {
        &self.data
    }

    /// Infimum of `h` over the open cell.
    pub fn min(&self, c: CellId) -> &Rational {
        min_of(&self.data[c.index()])
    }

    /// Supremum of `h` over the open cell.
    pub fn max(&self, c: CellId) -> &Rational {
        max_of(&self.data[c.index()])
    }

    /// Value of `h` at a vertex (its value on the 0-cell).
    pub fn vertex_value(&self, v: VertexId) -> &Rational {
        &self.data[self.complex.vertex_cell(v).index()][0]
    }

    pub fn vertex_values(&self) -> Vec<Rational> {
        (0..self.complex.num_vertices()).map(|v| self.vertex_value(v).clone()).collect()
    }

    /// True iff every affine piece extends continuously to the vertex values.
    pub fn is_continuous(&self) -> bool {
        self.complex.cells().iter().zip(&self.data).all(|(c, d)| {
            c.vertices().iter().zip(d).all(|(&v, x)| x == self.vertex_value(v))
        })
    }

    /// True iff `h` is constant on every open cell, i.e. comes from a
    /// constructible function with rational values.
    pub fn is_cellwise_constant(&self) -> bool {
        self.data.iter().all(|d| d.iter().all(|x| x == &d[0]))
    }

    /// Data of the affine extension of `h|_c` restricted to the face `face`.
    pub fn restrict(&self, c: CellId, face: CellId) -> Vec<Rational> {
        let cv = self.complex.cell(c).vertices();
        let d = &self.data[c.index()];
        self.complex
            .cell(face)
            .vertices()
            .iter()
            .map(|v| d[cv.iter().position(|w| w == v).expect("face of c")].clone())
            .collect()
    }

    /// Pointwise negation `−h`.
    pub fn conjugate(&self) -> DefFun {
        self.map(|x| -x)
    }

    /// `λ·h`.
    pub fn scale(&self, lambda: &Rational) -> DefFun {
        self.map(|x| x * lambda)
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> DefFun {
        let data = self.data.iter().map(|d| d.iter().map(&f).collect()).collect();
        DefFun { complex: self.complex.clone(), data }
    }

    /// `a·self + b·other` on a shared complex (cell-wise, so affine data add).
    pub fn combine(&self, a: &Rational, other: &DefFun, b: &Rational) -> Result<DefFun> {
        same_complex(&self.complex, &other.complex)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| a * p + b * q).collect())
            .collect();
        Ok(DefFun { complex: self.complex.clone(), data })
    }

    /// The same function on the barycentric subdivision.
    pub fn subdivide(&self) -> DefFun {
        let sub = self.complex.barycentric_subdivision();
        let data = sub
            .complex
            .cells()
            .iter()
            .zip(&sub.carrier)
            .map(|(cell, &carrier)| {
                // new vertex i is the barycenter of old cell i
                cell.vertices()
                    .iter()
                    .map(|&b| {
                        let vals = self.restrict(carrier, CellId(b));
                        let n = int(vals.len() as i64);
                        sum(vals) / n
                    })
                    .collect()
            })
            .collect();
        DefFun { complex: Arc::new(sub.complex), data }
    }

    /// The same function transported along a vertex bijection onto a complex
    /// whose cells are the images of this one's cells. `perm[v]` is the image
    /// of vertex `v`.
    pub fn relabel(&self, target: impl Into<Arc<SimplicialComplex>>, perm: &[VertexId]) -> Result<DefFun> {
        let target = target.into();
        let map = SimplicialMap::new(self.complex.clone(), target.clone(), perm.to_vec())?;
        if target.num_cells() != self.complex.num_cells()
            || map.preimages().iter().any(|p| p.len() != 1)
        {
            return Err(Error::InvalidMap("not a simplicial isomorphism".into()));
        }
        let mut data = vec![Vec::new(); target.num_cells()];
        for c in self.complex.cell_ids() {
            let t = map.image(c);
            let tv = target.cell(t).vertices();
            let mut d = vec![Rational::zero(); tv.len()];
            for (&v, x) in self.complex.cell(c).vertices().iter().zip(&self.data[c.index()]) {
                d[tv.iter().position(|&w| w == perm[v]).unwrap()] = x.clone();
            }
            data[t.index()] = d;
        }
        Ok(DefFun { complex: target, data })
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn average(a: Rational, b: Rational) -> Rational {
    (a + b) * half()
}

/// Closed form: `Σ_c (−1)^dim c · inf_c h` for `⌊dχ⌋`, sup for `⌈dχ⌉`.
pub fn integrate(h: &DefFun, m: Measure) -> Rational {
    integrate_with(h, m, Exec::default())
}

pub fn integrate_with(h: &DefFun, m: Measure, exec: Exec) -> Rational {
    match m {
        Measure::Avg => average(integrate_with(h, Measure::Floor, exec), integrate_with(h, Measure::Ceil, exec)),
        Measure::Floor | Measure::Ceil => {
            let k = &h.complex;
            let terms = exec.map_cheap(k.num_cells(), |i| {
                let c = CellId(i);
                let x = if m == Measure::Floor { h.min(c) } else { h.max(c) };
                signed(k.cell(c).dim(), x)
            });
            sum(terms)
        }
    }
}

/// Compactly supported χ of an excursion set. Each open k-cell with extrema
/// `m ≤ M` contributes `(−1)^k` when its piece of the set is nonempty, which for
/// an affine function on an open simplex happens exactly when
/// `{h>s}: s < M`, `{h≥s}: s ≤ m`, `{h<s}: s > m`, `{h≤s}: s ≥ M`. (The piece
/// `{h≥s}` of a nonconstant cell with `m < s` is an open simplex cut by a
/// closed half-space not containing a vertex minimum, whose χ is zero.)
pub fn chi_excursion(h: &DefFun, s: &Rational, kind: Excursion) -> i64 {
    h.complex
        .cell_ids()
        .filter(|&c| excursion_counts(h.min(c), h.max(c), s, kind))
        .map(|c| sign(h.complex.cell(c).dim()))
        .sum()
}

fn excursion_counts(m: &Rational, big_m: &Rational, s: &Rational, kind: Excursion) -> bool {
    match kind {
        Excursion::Gt => s < big_m,
        Excursion::Ge => s <= m,
        Excursion::Lt => s > m,
        Excursion::Le => s >= big_m,
    }
}

/// `chi_excursion` for all thresholds at once: per-cell extrema sorted with
/// prefix sums of the signs, so each query is a binary search.
#[derive(Clone, Debug)]
pub struct ExcursionProfile {
    mins: Vec<Rational>,
    min_prefix: Vec<i64>,
    maxs: Vec<Rational>,
    max_prefix: Vec<i64>,
}

impl ExcursionProfile {
    pub fn new(h: &DefFun) -> Self {
        let k = &h.complex;
        let sorted = |f: &dyn Fn(CellId) -> Rational| -> (Vec<Rational>, Vec<i64>) {
            let mut v: Vec<(Rational, i64)> =
                k.cell_ids().map(|c| (f(c), sign(k.cell(c).dim()))).collect();
            v.sort();
            let mut prefix = Vec::with_capacity(v.len() + 1);
            prefix.push(0);
            for (_, s) in &v {
                prefix.push(prefix.last().unwrap() + s);
            }
            (v.into_iter().map(|(x, _)| x).collect(), prefix)
        };
        let (mins, min_prefix) = sorted(&|c| h.min(c).clone());
        let (maxs, max_prefix) = sorted(&|c| h.max(c).clone());
        ExcursionProfile { mins, min_prefix, maxs, max_prefix }
    }

    pub fn chi(&self, s: &Rational, kind: Excursion) -> i64 {
        let total = *self.min_prefix.last().unwrap();
        match kind {
            Excursion::Ge => total - self.min_prefix[self.mins.partition_point(|m| m < s)],
            Excursion::Lt => self.min_prefix[self.mins.partition_point(|m| m < s)],
            Excursion::Gt => total - self.max_prefix[self.maxs.partition_point(|m| m <= s)],
            Excursion::Le => self.max_prefix[self.maxs.partition_point(|m| m <= s)],
        }
    }

    /// Sorted distinct per-cell extrema.
    pub fn critical_values(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.mins.iter().chain(&self.maxs).cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Level-set form: `∫_0^∞ χ{h≥s} − χ{h<−s} ds` for `⌊dχ⌋` and
/// `∫_0^∞ χ{h>s} − χ{h≤−s} ds` for `⌈dχ⌉`, integrated exactly over the
/// intervals between breakpoints.
pub fn integrate_levelset(h: &DefFun, m: Measure) -> Rational {
    integrate_levelset_with(h, m, Exec::default())
}

pub fn integrate_levelset_with(h: &DefFun, m: Measure, exec: Exec) -> Rational {
    let profile = ExcursionProfile::new(h);
    let (up, down) = match m {
        Measure::Floor => (Excursion::Ge, Excursion::Lt),
        Measure::Ceil => (Excursion::Gt, Excursion::Le),
        Measure::Avg => {
            return average(
                integrate_levelset_with(h, Measure::Floor, exec),
                integrate_levelset_with(h, Measure::Ceil, exec),
            )
        }
    };
    let mut breaks: Vec<Rational> = profile
        .critical_values()
        .into_iter()
        .map(|x| x.abs())
        .chain(std::iter::once(Rational::zero()))
        .collect();
    breaks.sort();
    breaks.dedup();
    let terms = exec.map_range(breaks.len().saturating_sub(1), |i| {
        let (a, b) = (&breaks[i], &breaks[i + 1]);
        let mid = (a + b) * half();
        let value = profile.chi(&mid, up) - profile.chi(&-&mid, down);
        (b - a) * int(value)
    });
    sum(terms)
}

/// `(1/n)·∫⌊n·h⌋ dχ` (or `⌈n·h⌉` for [`Measure::Ceil`]), computed exactly from
/// excursion χ values. The result is within `#cells/n` of the limit.
pub fn riemann_oracle(h: &DefFun, n: u64, m: Measure) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let profile = ExcursionProfile::new(h);
    let nq = Rational::from_integer(n.into());
    let at = |s: &Rational| s / &nq;
    let mut steps: Vec<Rational> = Vec::new();
    let total = match m {
        Measure::Avg => {
            return Ok(average(
                riemann_oracle(h, n, Measure::Floor)?,
                riemann_oracle(h, n, Measure::Ceil)?,
            ))
        }
        Measure::Floor => {
            // χ{⌊nh⌋ = s} = χ{h ≥ s/n} − χ{h ≥ (s+1)/n}; it can only be nonzero
            // where some cell minimum lies in [s/n, (s+1)/n).
            steps.extend(profile.mins.iter().map(|x| (x * &nq).floor()));
            steps.sort();
            steps.dedup();
            steps
                .iter()
                .map(|s| {
                    let level = profile.chi(&at(s), Excursion::Ge)
                        - profile.chi(&at(&(s + Rational::one())), Excursion::Ge);
                    s * int(level)
                })
                .sum::<Rational>()
        }
        Measure::Ceil => {
            // χ{⌈nh⌉ = s} = χ{h ≤ s/n} − χ{h ≤ (s−1)/n}
            steps.extend(profile.maxs.iter().map(|x| (x * &nq).ceil()));
            steps.sort();
            steps.dedup();
            steps
                .iter()
                .map(|s| {
                    let level = profile.chi(&at(s), Excursion::Le)
                        - profile.chi(&at(&(s - Rational::one())), Excursion::Le);
                    s * int(level)
                })
                .sum::<Rational>()
        }
    };
    Ok(total / nq)
}

/// `(1/ε)∫ s·χ{s ≤ h < s+ε} ds` (`⌊dχ⌋`) or `(1/ε)∫ s·χ{s < h ≤ s+ε} ds`
/// (`⌈dχ⌉`). Differs from the integral by `−(ε/2)·χ(X)`.
pub fn epsilon_formula(h: &DefFun, eps: &Rational, m: Measure) -> Result<Rational> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("ε must be positive".into()));
    }
    let profile = ExcursionProfile::new(h);
    let values = profile.critical_values();
    if let Some(gap) = values.windows(2).map(|w| &w[1] - &w[0]).min() {
        if eps >= &gap {
            return Err(Error::EpsilonTooLarge { epsilon: eps.to_string(), gap: gap.to_string() });
        }
    }
    let (extrema, band): (&[Rational], Box<dyn Fn(&Rational) -> i64>) = match m {
        Measure::Avg => {
            return Ok(average(
                epsilon_formula(h, eps, Measure::Floor)?,
                epsilon_formula(h, eps, Measure::Ceil)?,
            ))
        }
        Measure::Floor => (
            &profile.mins,
            Box::new(|s| profile.chi(s, Excursion::Ge) - profile.chi(&(s + eps), Excursion::Ge)),
        ),
        Measure::Ceil => (
            &profile.maxs,
            Box::new(|s| profile.chi(&(s + eps), Excursion::Le) - profile.chi(s, Excursion::Le)),
        ),
    };
    let mut breaks: Vec<Rational> =
        extrema.iter().flat_map(|x| [x.clone(), x - eps]).collect();
    breaks.sort();
    breaks.dedup();
    let two = int(2);
    let total = breaks
        .windows(2)
        .map(|w| {
            let mid = (&w[0] + &w[1]) / &two;
            let level = band(&mid);
            // ∫_a^b s ds = (b² − a²)/2
            int(level) * (&w[1] * &w[1] - &w[0] * &w[0]) / &two
        })
        .sum::<Rational>();
    Ok(total / eps)
}

/// The pushforward of `h` to R with `γ(s) = χ{h = s}`, as the 1-D function
/// `s ↦ s·γ(s)` on the line complex whose points are the per-cell extrema.
pub fn line_pushforward(h: &DefFun) -> DefFun {
    let profile = ExcursionProfile::new(h);
    let pts = profile.critical_values();
    let gamma = |s: &Rational| profile.chi(s, Excursion::Ge) - profile.chi(s, Excursion::Gt);
    let n = pts.len();
    let line = SimplicialComplex::assemble(
        pts.iter().map(|p| vec![p.clone()]).collect(),
        (1..n).map(|i| vec![i - 1, i]).collect(),
        false,
    )
    .expect("sorted distinct points");
    let data = line
        .cells()
        .iter()
        .map(|c| match c.vertices() {
            [v] => vec![&pts[*v] * int(gamma(&pts[*v]))],
            [a, b] => {
                let g = int(gamma(&((&pts[*a] + &pts[*b]) * half())));
                vec![&pts[*a] * &g, &pts[*b] * &g]
            }
            _ => unreachable!("1-D complex"),
        })
        .collect();
    DefFun { complex: Arc::new(line), data }
}

/// `∫_R s·χ{h=s} dm(s)`, which equals `∫ h dm`.
pub fn pushforward_to_line(h: &DefFun, m: Measure) -> Rational {
    integrate(&line_pushforward(h), m)
}

/// Affine data on the target cell `t` of `h|_c` when it factors through `f`.
fn factor_through(f: &SimplicialMap, h: &DefFun, c: CellId) -> Option<Vec<Rational>> {
    let t = f.image(c);
    let tv = f.target().cell(t).vertices();
    let mut out: Vec<Option<Rational>> = vec![None; tv.len()];
    for (&v, x) in f.source().cell(c).vertices().iter().zip(h.data(c)) {
        let slot = &mut out[tv.iter().position(|&w| w == f.vertex_map()[v]).unwrap()];
        match slot {
            Some(y) if y != x => return None,
            _ => *slot = Some(x.clone()),
        }
    }
    out.into_iter().collect()
}

/// Pushforward of an integrand that is constant on the fibers of `f` over
/// every open target cell: `(F_*h)(y) = χ(F⁻¹(y))·g(y)` where `h = g∘F`.
pub fn pushforward_fiber_constant(f: &SimplicialMap, h: &DefFun) -> Result<DefFun> {
    same_complex(f.source(), &h.complex)
        .map_err(|_| Error::InvalidMap("map source differs from the integrand's complex".into()))?;
    let tgt = f.target();
    let mut g: Vec<Option<Vec<Rational>>> = vec![None; tgt.num_cells()];
    for c in h.complex.cell_ids() {
        let t = f.image(c);
        let piece = factor_through(f, h, c).ok_or(Error::NotFiberConstant)?;
        match &g[t.index()] {
            Some(prev) if prev != &piece => return Err(Error::NotFiberConstant),
            _ => g[t.index()] = Some(piece),
        }
    }
    let chi = f.fiber_chi();
    let data = tgt
        .cells()
        .iter()
        .zip(g)
        .zip(chi)
        .map(|((cell, g), chi)| match g {
            Some(g) => g.into_iter().map(|x| x * int(chi)).collect(),
            None => vec![Rational::zero(); cell.dim() + 1],
        })
        .collect();
    DefFun::new(tgt.clone(), data)
}

/// `(∫_Y F_*h dm, ∫_X h dm)` for an integrand constant on fibers of `f`.
pub fn fubini_fiber_preserving(
    f: &SimplicialMap,
    h: &DefFun,
    m: Measure,
) -> Result<(Rational, Rational)> {
    let pushed = pushforward_fiber_constant(f, h)?;
    Ok((integrate(&pushed, m), integrate(h, m)))
}

/// Pushforward along a map that preserves the dimension of every cell, so
/// every fiber is finite: `(F_*h)(y) = Σ_{x ∈ F⁻¹(y)} h(x)`.
pub fn pushforward_finite_fibers(f: &SimplicialMap, h: &DefFun) -> Result<DefFun> {
    same_complex(f.source(), &h.complex)
        .map_err(|_| Error::InvalidMap("map source differs from the integrand's complex".into()))?;
    let tgt = f.target();
    let mut data: Vec<Vec<Rational>> =
        tgt.cells().iter().map(|c| vec![Rational::zero(); c.dim() + 1]).collect();
    for c in h.complex.cell_ids() {
        let t = f.image(c);
        if tgt.cell(t).dim() != h.complex.cell(c).dim() {
            return Err(Error::InvalidMap("map collapses a cell".into()));
        }
        let piece = factor_through(f, h, c).expect("injective on vertices of c");
        for (acc, x) in data[t.index()].iter_mut().zip(piece) {
            *acc += x;
        }
    }
    DefFun::new(tgt.clone(), data)
}
