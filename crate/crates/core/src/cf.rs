//! Constructible functions: one integer per open cell, integrated against `dχ`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::complex::{CellId, SimplicialComplex, VertexId};
use crate::rational::{int, sign};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFun {
    complex: Arc<SimplicialComplex>,
    values: Vec<i64>,
}

impl CFun {
    pub fn new(complex: impl Into<Arc<SimplicialComplex>>, values: Vec<i64>) -> Result<Self> {
        let complex = complex.into();
        if values.len() != complex.num_cells() {
            return Err(Error::FunctionMismatch(format!(
                "{} values for {} cells",
                values.len(),
                complex.num_cells()
            )));
        }
        Ok(CFun { complex, values })
    }

    pub fn zero(complex: impl Into<Arc<SimplicialComplex>>) -> Self {
        let complex = complex.into();
        let values = vec![0; complex.num_cells()];
        CFun { complex, values }
    }

    pub fn from_fn(complex: impl Into<Arc<SimplicialComplex>>, f: impl Fn(CellId) -> i64) -> Self {
        let complex = complex.into();
        let values = complex.cell_ids().map(f).collect();
        CFun { complex, values }
    }

    /// `weight` on the given open cells, zero elsewhere.
    pub fn indicator(
        complex: impl Into<Arc<SimplicialComplex>>,
        cells: &[CellId],
        weight: i64,
    ) -> Result<Self> {
        let mut h = CFun::zero(complex);
        for &c in cells {
            if c.index() >= h.values.len() {
                return Err(Error::UnknownCell(c.index()));
            }
            h.values[c.index()] = weight;
        }
        Ok(h)
    }

    /// Indicator of the whole complex.
    pub fn one(complex: impl Into<Arc<SimplicialComplex>>) -> Self {
        Self::from_fn(complex, |_| 1)
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn value(&self, c: CellId) -> i64 {
        self.values[c.index()]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `a·self + b·other` on a shared complex.
    pub fn combine(&self, a: i64, other: &CFun, b: i64) -> Result<CFun> {
        same_complex(&self.complex, &other.complex)?;
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(CFun { complex: self.complex.clone(), values })
    }
}

pub(crate) fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::FunctionMismatch("functions live on different complexes".into()))
    }
}

/// `∫ h dχ = Σ_c h(c)·(−1)^dim c`.
pub fn integrate_cf(h: &CFun) -> i64 {
    h.complex
        .cells()
        .iter()
        .zip(&h.values)
        .map(|(c, v)| v * sign(c.dim()))
        .sum()
}

/// The level-set form `Σ_{s≥0} χ{h>s} − χ{h<−s}`, evaluated literally.
pub fn integrate_cf_levelset(h: &CFun) -> i64 {
    let top = h.values.iter().map(|v| v.abs()).max().unwrap_or(0);
    let k = &h.complex;
    let chi_where = |pred: &dyn Fn(i64) -> bool| -> i64 {
        let cells: Vec<CellId> = k.cell_ids().filter(|&c| pred(h.value(c))).collect();
        k.euler_characteristic(&cells).expect("own cells")
    };
    (0..top)
        .map(|s| chi_where(&|v| v > s) - chi_where(&|v| v < -s))
        .sum()
}

/// A simplicial map, given by its vertex map. Each source cell is sent
/// affinely onto the target cell spanned by its image vertices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_map: Vec<VertexId>,
    image: Vec<CellId>,
}

impl SimplicialMap {
    pub fn new(
        source: impl Into<Arc<SimplicialComplex>>,
        target: impl Into<Arc<SimplicialComplex>>,
        vertex_map: Vec<VertexId>,
    ) -> Result<Self> {
        let source = source.into();
        let target = target.into();
        if vertex_map.len() != source.num_vertices() {
            return Err(Error::InvalidMap(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.num_vertices()
            )));
        }
        if let Some(&w) = vertex_map.iter().find(|&&w| w >= target.num_vertices()) {
            return Err(Error::InvalidMap(format!("target vertex {w} does not exist")));
        }
        let mut image = Vec::with_capacity(source.num_cells());
        for c in source.cells() {
            let imgs: Vec<VertexId> = c.vertices().iter().map(|&v| vertex_map[v]).collect();
            match target.find(&imgs) {
                Some(t) => image.push(t),
                None => {
                    return Err(Error::InvalidMap(format!(
                        "image of cell {:?} is not a cell",
                        c.vertices()
                    )))
                }
            }
        }
        Ok(SimplicialMap { source, target, vertex_map, image })
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    /// Target cell onto which the open source cell maps.
    pub fn image(&self, c: CellId) -> CellId {
        self.image[c.index()]
    }

    /// Source cells mapped onto each target cell.
    pub fn preimages(&self) -> Vec<Vec<CellId>> {
        let mut out = vec![Vec::new(); self.target.num_cells()];
        for c in self.source.cell_ids() {
            out[self.image(c).index()].push(c);
        }
        out
    }

    /// χ of the fiber over a point of each open target cell.
    pub fn fiber_chi(&self) -> Vec<i64> {
        let mut out = vec![0; self.target.num_cells()];
        for c in self.source.cell_ids() {
            let t = self.image(c);
            let d = self.source.cell(c).dim() - self.target.cell(t).dim();
            out[t.index()] += sign(d);
        }
        out
    }
}

/// `F_*h(y) = ∫_{F⁻¹(y)} h dχ`. Over an open target cell τ, the fiber inside
/// an open source cell σ mapped onto τ is an open cell of dimension
/// `dim σ − dim τ`.
pub fn pushforward(f: &SimplicialMap, h: &CFun) -> Result<CFun> {
    same_complex(&f.source, &h.complex).map_err(|_| Error::InvalidMap("map source differs from the integrand's complex".into()))?;
    let mut values = vec![0; f.target.num_cells()];
    for c in f.source.cell_ids() {
        let t = f.image(c);
        let d = f.source.cell(c).dim() - f.target.cell(t).dim();
        values[t.index()] += h.value(c) * sign(d);
    }
    CFun::new(f.target.clone(), values)
}

/// A constructible function on a 1-D complex in R, as a sorted list of
/// breakpoints with the values on each point and on each open gap between
/// consecutive breakpoints. Outside the breakpoints the function is zero.
struct LineProfile {
    points: Vec<Rational>,
    point_vals: Vec<i64>,
    gap_vals: Vec<i64>,
}

impl LineProfile {
    fn of(h: &CFun) -> Result<Self> {
        let k = &h.complex;
        if k.ambient_dim() != 1 || k.dim() > 1 {
            return Err(Error::NotOneDimensional);
        }
        let mut order: Vec<VertexId> = (0..k.num_vertices()).collect();
        order.sort_by(|&a, &b| k.coords(a)[0].cmp(&k.coords(b)[0]));
        let points: Vec<Rational> = order.iter().map(|&v| k.coords(v)[0].clone()).collect();
        let point_vals = order.iter().map(|&v| h.value(k.vertex_cell(v))).collect();
        let gap_vals = order
            .windows(2)
            .map(|w| k.find(w).map(|e| h.value(e)).unwrap_or(0))
            .collect();
        Ok(LineProfile { points, point_vals, gap_vals })
    }

    fn eval(&self, t: &Rational) -> i64 {
        match self.points.binary_search(t) {
            Ok(i) => self.point_vals[i],
            Err(0) => 0,
            Err(i) if i == self.points.len() => 0,
            Err(i) => self.gap_vals[i - 1],
        }
    }

    /// Drops every breakpoint whose value matches both neighbouring gaps, then
    /// realizes the result on the smallest complex carrying it.
    fn into_canonical(self) -> CFun {
        let n = self.points.len();
        let gap = |i: usize| -> i64 {
            // gap i lies left of point i; gaps 0 and n are the unbounded ones
            if i == 0 || i == n {
                0
            } else {
                self.gap_vals[i - 1]
            }
        };
        let mut pts: Vec<Rational> = Vec::new();
        let mut pvals: Vec<i64> = Vec::new();
        let mut gvals: Vec<i64> = Vec::new();
        for i in 0..n {
            let left = gap(i);
            let right = gap(i + 1);
            if self.point_vals[i] == left && left == right {
                continue;
            }
            if !pts.is_empty() {
                gvals.push(left);
            }
            pts.push(self.points[i].clone());
            pvals.push(self.point_vals[i]);
        }
        if pts.is_empty() {
            let k = SimplicialComplex::assemble(vec![vec![Rational::zero()]], vec![], false)
                .expect("single point");
            return CFun::zero(k);
        }
        let edges: Vec<Vec<VertexId>> = gvals
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| vec![i, i + 1])
            .collect();
        let coords = pts.into_iter().map(|p| vec![p]).collect();
        let k = Arc::new(SimplicialComplex::assemble(coords, edges, false).expect("sorted distinct points"));
        let values = k
            .cells()
            .iter()
            .map(|c| match c.vertices() {
                [v] => pvals[*v],
                [a, _] => gvals[*a],
                _ => unreachable!("1-D complex"),
            })
            .collect();
        CFun { complex: k, values }
    }
}

/// Canonical form of a constructible function on a 1-D complex in R: merges
/// adjacent cells carrying equal values and drops zero cells that are not
/// needed as edge endpoints. Two functions are equal iff their canonical
/// forms are.
pub fn normalize_1d(h: &CFun) -> Result<CFun> {
    Ok(LineProfile::of(h)?.into_canonical())
}

fn sorted_unique(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v.dedup();
    v
}

fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// `(f*g)(x) = ∫ f(t) g(x−t) dχ(t)` for constructible functions on R.
pub fn convolve_1d(f: &CFun, g: &CFun) -> Result<CFun> {
    let pf = LineProfile::of(f)?;
    let pg = LineProfile::of(g)?;
    let value_at = |x: &Rational| -> i64 {
        let ts = sorted_unique(
            pf.points
                .iter()
                .cloned()
                .chain(pg.points.iter().map(|b| x - b))
                .collect(),
        );
        let points: i64 = ts.iter().map(|t| pf.eval(t) * pg.eval(&(x - t))).sum();
        let gaps: i64 = ts
            .windows(2)
            .map(|w| {
                let m = midpoint(&w[0], &w[1]);
                pf.eval(&m) * pg.eval(&(x - &m))
            })
            .sum();
        points - gaps
    };
    let sums = sorted_unique(
        pf.points
            .iter()
            .flat_map(|a| pg.points.iter().map(move |b| a + b))
            .collect(),
    );
    let point_vals = sums.iter().map(&value_at).collect();
    let gap_vals = sums.windows(2).map(|w| value_at(&midpoint(&w[0], &w[1]))).collect();
    Ok(LineProfile { points: sums, point_vals, gap_vals }.into_canonical())
}

/// A compact convex polygon (possibly a segment or a point) in canonical form:
/// counterclockwise, starting at the lowest-then-leftmost vertex, without
/// repeated or collinear vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<[Rational; 2]>,
}

fn sub(a: &[Rational; 2], b: &[Rational; 2]) -> [Rational; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn cross(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Polar-angle order of direction vectors on [0, 2π).
fn angle_cmp(a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
    let half = |d: &[Rational; 2]| -> u8 {
        if d[1].is_positive() || (d[1].is_zero() && d[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn lowest_first(mut v: Vec<[Rational; 2]>) -> Vec<[Rational; 2]> {
    if let Some(start) = (0..v.len()).min_by(|&i, &j| (&v[i][1], &v[i][0]).cmp(&(&v[j][1], &v[j][0]))) {
        v.rotate_left(start);
    }
    v
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<[Rational; 2]>) -> Result<Self> {
        let mut v = vertices;
        v.dedup();
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        if v.is_empty() {
            return Err(Error::InvalidArgument("polygon without vertices".into()));
        }
        if v.len() <= 2 {
            return Ok(ConvexPolygon { vertices: lowest_first(v) });
        }
        // Classify turns before removing collinear points.
        let n = v.len();
        let turns: Vec<Rational> = (0..n)
            .map(|i| {
                let a = sub(&v[i], &v[(i + n - 1) % n]);
                let b = sub(&v[(i + 1) % n], &v[i]);
                cross(&a, &b)
            })
            .collect();
        let left = turns.iter().any(|t| t.is_positive());
        let right = turns.iter().any(|t| t.is_negative());
        match (left, right) {
            (true, true) => return Err(Error::NotConvex),
            (false, true) => return Err(Error::NotCounterclockwise),
            (false, false) => {
                // all collinear: a segment, valid only if it does not double back
                // more than once
                let lo = v.iter().min_by(|a, b| (&a[1], &a[0]).cmp(&(&b[1], &b[0]))).unwrap().clone();
                let hi = v.iter().max_by(|a, b| (&a[1], &a[0]).cmp(&(&b[1], &b[0]))).unwrap().clone();
                return Ok(ConvexPolygon { vertices: vec![lo, hi] });
            }
            (true, false) => {}
        }
        let mut kept = Vec::with_capacity(n);
        for i in 0..n {
            if turns[i].is_zero() {
                let a = sub(&v[i], &v[(i + n - 1) % n]);
                let b = sub(&v[(i + 1) % n], &v[i]);
                if dot(&a, &b).is_negative() {
                    return Err(Error::NotConvex);
                }
                continue;
            }
            kept.push(v[i].clone());
        }
        let kept = lowest_first(kept);
        // Left turns everywhere plus strictly increasing edge angles from the
        // lowest vertex means the boundary winds exactly once.
        let m = kept.len();
        let edges: Vec<[Rational; 2]> = (0..m).map(|i| sub(&kept[(i + 1) % m], &kept[i])).collect();
        if edges.windows(2).any(|w| angle_cmp(&w[0], &w[1]) != Ordering::Less) {
            return Err(Error::NotConvex);
        }
        Ok(ConvexPolygon { vertices: kept })
    }

    pub fn point(p: [Rational; 2]) -> Self {
        ConvexPolygon { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[[Rational; 2]] {
        &self.vertices
    }

    fn edges(&self) -> Vec<[Rational; 2]> {
        let n = self.vertices.len();
        if n == 1 {
            return Vec::new();
        }
        (0..n).map(|i| sub(&self.vertices[(i + 1) % n], &self.vertices[i])).collect()
    }

    /// Fan triangulation from the first vertex (a point or an edge for
    /// degenerate polygons).
    pub fn to_complex(&self) -> SimplicialComplex {
        let n = self.vertices.len();
        let coords = self.vertices.iter().map(|p| p.to_vec()).collect();
        let cells = match n {
            1 => vec![],
            2 => vec![vec![0, 1]],
            _ => (1..n - 1).map(|i| vec![0, i, i + 1]).collect(),
        };
        SimplicialComplex::assemble(coords, cells, false).expect("convex fan")
    }

    /// Closed membership.
    pub fn contains(&self, p: &[Rational; 2]) -> bool {
        let n = self.vertices.len();
        match n {
            1 => &self.vertices[0] == p,
            2 => {
                let a = &self.vertices[0];
                let b = &self.vertices[1];
                let ab = sub(b, a);
                let ap = sub(p, a);
                cross(&ab, &ap).is_zero() && !dot(&ab, &ap).is_negative() && dot(&ab, &ap) <= dot(&ab, &ab)
            }
            _ => (0..n).all(|i| {
                let e = sub(&self.vertices[(i + 1) % n], &self.vertices[i]);
                !cross(&e, &sub(p, &self.vertices[i])).is_negative()
            }),
        }
    }
}

/// Minkowski sum `A + B` by merging the two edge sequences in angular order.
/// As a constructible function this is the Euler convolution `1_A * 1_B`.
pub fn minkowski_sum(a: &ConvexPolygon, b: &ConvexPolygon) -> ConvexPolygon {
    let ea = a.edges();
    let eb = b.edges();
    let start = [&a.vertices[0][0] + &b.vertices[0][0], &a.vertices[0][1] + &b.vertices[0][1]];
    let mut out = vec![start];
    let (mut i, mut j) = (0, 0);
    while i < ea.len() || j < eb.len() {
        let step = if j == eb.len() || (i < ea.len() && angle_cmp(&ea[i], &eb[j]) != Ordering::Greater) {
            i += 1;
            ea[i - 1].clone()
        } else {
            j += 1;
            eb[j - 1].clone()
        };
        let last = out.last().unwrap();
        out.push([&last[0] + &step[0], &last[1] + &step[1]]);
    }
    ConvexPolygon::new(out).expect("sum of convex polygons is convex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, circle, grid_complex, product_complex, sphere_boundary};
    use crate::rat;

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    fn line(points: &[i64], edges: &[[usize; 2]]) -> Arc<SimplicialComplex> {
        Arc::new(
            build_complex(
                points.iter().map(|&p| vec![q(p)]).collect(),
                edges.iter().map(|e| e.to_vec()).collect(),
            )
            .unwrap(),
        )
    }

    fn interval_indicator(a: i64, b: i64) -> CFun {
        CFun::one(line(&[a, b], &[[0, 1]]))
    }

    #[test]
    fn integrates_simple_functions() {
        let i = interval_indicator(0, 1);
        assert_eq!(integrate_cf(&i), 1);
        let k = i.complex().clone();
        let edge = k.find(&[0, 1]).unwrap();
        assert_eq!(integrate_cf(&CFun::indicator(k, &[edge], 1).unwrap()), -1);
        assert_eq!(integrate_cf(&CFun::from_fn(sphere_boundary(), |_| 3)), 6);
    }

    #[test]
    fn levelset_matches_closed_form() {
        assert_eq!(integrate_cf_levelset(&interval_indicator(0, 1)), 1);
        let g = Arc::new(grid_complex(1, 1, (q(0), q(1)), (q(0), q(1))).unwrap());
        let tri = g.cells_of_dim(2).next().unwrap();
        let h = CFun::indicator(g, &[tri], -2).unwrap();
        assert_eq!(integrate_cf_levelset(&h), -2);
        assert_eq!(integrate_cf(&h), -2);
    }

    #[test]
    fn pushforward_examples() {
        let i = interval_indicator(0, 1);
        let pt = Arc::new(build_complex(vec![vec![]], vec![]).unwrap());
        let to_point = SimplicialMap::new(i.complex().clone(), pt, vec![0, 0]).unwrap();
        let pushed = pushforward(&to_point, &i).unwrap();
        assert_eq!(pushed.values(), &[1]);

        // collapse an edge onto one endpoint of a target interval
        let tgt = line(&[0, 5], &[[0, 1]]);
        let collapse = SimplicialMap::new(i.complex().clone(), tgt, vec![0, 0]).unwrap();
        let pushed = pushforward(&collapse, &i).unwrap();
        let v = pushed.complex().vertex_cell(0);
        assert_eq!(pushed.value(v), 1);
        assert_eq!(integrate_cf(&pushed), 1);

        // projection of the staircase square onto its first factor
        let iv = line(&[0, 1], &[[0, 1]]);
        let sq = product_complex(&iv, &iv).unwrap();
        let proj = SimplicialMap::new(sq, iv.clone(), vec![0, 0, 1, 1]).unwrap();
        let pushed = pushforward(&proj, &CFun::one(proj.source().clone())).unwrap();
        assert_eq!(pushed.values(), &[1, 1, 1]);
    }

    #[test]
    fn invalid_maps_rejected() {
        let sq = grid_complex(1, 1, (q(0), q(1)), (q(0), q(1))).unwrap();
        let iv = line(&[0, 1], &[[0, 1]]);
        // vertex 0 ↦ 0, 3 ↦ 0 is fine but a triangle cannot map onto two
        // unconnected target vertices
        let two_points = line(&[0, 1], &[]);
        assert!(matches!(
            SimplicialMap::new(sq.clone(), two_points, vec![0, 1, 0, 1]),
            Err(Error::InvalidMap(_))
        ));
        assert!(matches!(SimplicialMap::new(sq, iv, vec![0, 1]), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn convolution_of_intervals() {
        let f = interval_indicator(0, 1);
        let g = interval_indicator(0, 2);
        let fg = convolve_1d(&f, &g).unwrap();
        assert_eq!(fg, normalize_1d(&interval_indicator(0, 3)).unwrap());
    }

    #[test]
    fn dirac_is_identity() {
        let delta = CFun::one(line(&[0], &[]));
        let k = line(&[-1, 1, 2, 4], &[[0, 1], [2, 3]]);
        let g = CFun::from_fn(k, |c| c.index() as i64 - 2);
        assert_eq!(convolve_1d(&delta, &g).unwrap(), normalize_1d(&g).unwrap());
    }

    #[test]
    fn product_formula_example() {
        // g = 1_[0,1] − 1_(2,3)
        let k = line(&[0, 1, 2, 3], &[[0, 1], [2, 3]]);
        let g = CFun::from_fn(k.clone(), |c| {
            let cell = k.cell(c);
            match cell.vertices() {
                [0] | [1] | [0, 1] => 1,
                [2, 3] => -1,
                _ => 0,
            }
        });
        assert_eq!(integrate_cf(&g), 2);
        let f = interval_indicator(0, 1);
        let fg = convolve_1d(&f, &g).unwrap();
        assert_eq!(integrate_cf(&fg), 2);
    }

    #[test]
    fn normalization_merges_cells() {
        let k = line(&[0, 1, 2], &[[0, 1], [1, 2]]);
        let h = CFun::one(k);
        let n = normalize_1d(&h).unwrap();
        assert_eq!(n.complex().num_vertices(), 2);
        assert_eq!(n, normalize_1d(&interval_indicator(0, 2)).unwrap());
        let zero = normalize_1d(&CFun::zero(line(&[3, 4], &[[0, 1]]))).unwrap();
        assert_eq!(zero.complex().num_cells(), 1);
        assert_eq!(integrate_cf(&zero), 0);
        let two_d = CFun::zero(circle(4).unwrap());
        assert_eq!(normalize_1d(&two_d), Err(Error::NotOneDimensional));
    }

    fn poly(pts: &[(i64, i64)]) -> Result<ConvexPolygon> {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| [q(x), q(y)]).collect())
    }

    #[test]
    fn minkowski_examples() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let sum = minkowski_sum(&sq, &sq);
        assert_eq!(sum, poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap());
        let tri = poly(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(minkowski_sum(&tri, &sq).vertices().len(), 5);
        let p = ConvexPolygon::point([q(3), q(-1)]);
        assert_eq!(minkowski_sum(&sq, &p), poly(&[(3, -1), (4, -1), (4, 0), (3, 0)]).unwrap());
        assert_eq!(minkowski_sum(&tri, &sq).to_complex().chi(), 1);
        assert_eq!(p.to_complex().num_cells(), 1);
    }

    #[test]
    fn polygon_validation() {
        assert_eq!(poly(&[(0, 0), (0, 1), (1, 1), (1, 0)]), Err(Error::NotCounterclockwise));
        assert_eq!(poly(&[(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)]), Err(Error::NotConvex));
        // pentagram: all left turns but winds twice
        assert_eq!(
            poly(&[(0, 0), (4, 0), (1, 3), (2, -2), (3, 3)]).map(|_| ()),
            Err(Error::NotConvex)
        );
        let with_collinear = poly(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        assert_eq!(with_collinear.vertices().len(), 4);
        assert!(with_collinear.contains(&[q(1), q(2)]));
        assert!(!with_collinear.contains(&[q(3), q(2)]));
    }
}
