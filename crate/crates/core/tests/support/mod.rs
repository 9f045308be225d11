//! Seeded fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use eulerint::cf::ConvexPolygon;
use eulerint::complex::{build_complex, circle, grid_complex, sphere_boundary, torus};
use eulerint::{rat, CFun, CellId, DefFun, Excursion, Measure, Rational, SimplicialComplex};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    rat(n, 1)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rationals with denominators 1, 2, 3, so distinct values differ by at
/// least 1/6.
pub fn random_value(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

pub fn grid(nx: usize, ny: usize) -> Arc<SimplicialComplex> {
    Arc::new(grid_complex(nx, ny, (q(0), q(nx as i64)), (q(0), q(ny as i64))).unwrap())
}

pub fn random_grid(rng: &mut ChaCha8Rng, max: usize) -> Arc<SimplicialComplex> {
    grid(rng.gen_range(1..=max), rng.gen_range(1..=max))
}

pub fn random_continuous(rng: &mut ChaCha8Rng, k: &Arc<SimplicialComplex>) -> DefFun {
    let values = (0..k.num_vertices()).map(|_| random_value(rng)).collect();
    DefFun::from_vertex_values(k.clone(), values).unwrap()
}

/// Independent affine data on every open cell (generally discontinuous).
pub fn random_deffun(rng: &mut ChaCha8Rng, k: &Arc<SimplicialComplex>) -> DefFun {
    let data = k
        .cells()
        .iter()
        .map(|c| (0..=c.dim()).map(|_| random_value(rng)).collect())
        .collect();
    DefFun::new(k.clone(), data).unwrap()
}

pub fn random_cfun(rng: &mut ChaCha8Rng, k: &Arc<SimplicialComplex>, bound: i64) -> CFun {
    let values = (0..k.num_cells()).map(|_| rng.gen_range(-bound..=bound)).collect();
    CFun::new(k.clone(), values).unwrap()
}

/// Closed 1- and 2-manifold fixtures with their dimension.
pub fn manifold_fixtures() -> Vec<(&'static str, Arc<SimplicialComplex>, usize)> {
    vec![
        ("circle(3)", Arc::new(circle(3).unwrap()), 1),
        ("circle(4)", Arc::new(circle(4).unwrap()), 1),
        ("circle(9)", Arc::new(circle(9).unwrap()), 1),
        ("sphere", Arc::new(sphere_boundary()), 2),
        ("sphere subdivided", Arc::new(sphere_boundary().barycentric_subdivision().complex), 2),
        ("torus(3,3)", Arc::new(torus(3, 3).unwrap()), 2),
        ("torus(4,5)", Arc::new(torus(4, 5).unwrap()), 2),
    ]
}

/// A random 1-D complex in R: sorted distinct breakpoints with some of the
/// gaps filled by edges, and integer values on every cell.
pub fn random_line_cfun(rng: &mut ChaCha8Rng) -> CFun {
    let n = rng.gen_range(1..=5);
    let mut pts: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-8..=8), 2)).collect();
    pts.sort();
    pts.dedup();
    let edges: Vec<Vec<usize>> = (1..pts.len()).filter(|_| rng.gen_bool(0.6)).map(|i| vec![i - 1, i]).collect();
    let k = Arc::new(build_complex(pts.into_iter().map(|p| vec![p]).collect(), edges).unwrap());
    let values = (0..k.num_cells()).map(|_| rng.gen_range(-3..=3)).collect();
    CFun::new(k, values).unwrap()
}

/// Convex hull by the monotone chain, counterclockwise from the lowest point,
/// without collinear points.
pub fn convex_hull(points: &[[Rational; 2]]) -> Vec<[Rational; 2]> {
    let mut p: Vec<[Rational; 2]> = points.to_vec();
    p.sort_by(|a, b| (&a[0], &a[1]).cmp(&(&b[0], &b[1])));
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let cross = |o: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]| {
        (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
    };
    let mut lower: Vec<[Rational; 2]> = Vec::new();
    for x in &p {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], x).is_positive() {
            lower.pop();
        }
        lower.push(x.clone());
    }
    let mut upper: Vec<[Rational; 2]> = Vec::new();
    for x in p.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], x).is_positive() {
            upper.pop();
        }
        upper.push(x.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn random_convex_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    let n = rng.gen_range(1..=7);
    let pts: Vec<[Rational; 2]> =
        (0..n).map(|_| [q(rng.gen_range(-5..=5)), q(rng.gen_range(-5..=5))]).collect();
    ConvexPolygon::new(convex_hull(&pts)).unwrap()
}

/// Separating-axis test for two compact convex polygons given by vertices.
pub fn convex_sets_meet(a: &[[Rational; 2]], b: &[[Rational; 2]]) -> bool {
    let axes = |p: &[[Rational; 2]]| -> Vec<[Rational; 2]> {
        let n = p.len();
        let mut out = Vec::new();
        for i in 0..n {
            let e = [&p[(i + 1) % n][0] - &p[i][0], &p[(i + 1) % n][1] - &p[i][1]];
            out.push([-e[1].clone(), e[0].clone()]);
            out.push(e);
        }
        out
    };
    let project = |p: &[[Rational; 2]], ax: &[Rational; 2]| {
        let vals: Vec<Rational> = p.iter().map(|v| &v[0] * &ax[0] + &v[1] * &ax[1]).collect();
        (vals.iter().min().unwrap().clone(), vals.iter().max().unwrap().clone())
    };
    let between = [&b[0][0] - &a[0][0], &b[0][1] - &a[0][1]];
    for ax in axes(a).into_iter().chain(axes(b)).chain([between]) {
        if ax[0].is_zero() && ax[1].is_zero() {
            continue;
        }
        let (a0, a1) = project(a, &ax);
        let (b0, b1) = project(b, &ax);
        if a1 < b0 || b1 < a0 {
            return false;
        }
    }
    true
}

/// `lim_{δ→0⁺} ∫ h·1_{B_δ(x)} dm` evaluated directly on a 1-D complex, for a
/// point `x` given by a cell and (for an edge) a parameter `t ∈ (0, 1)` along
/// it. The ball is parametrized along each edge. For small δ the integral is
/// affine in δ, so the limit is extrapolated exactly from δ and 2δ (and the
/// affine behavior is checked at 3δ).
pub fn small_ball_dual(h: &DefFun, cell: CellId, t: &Rational, delta: &Rational, m: Measure) -> Rational {
    let at = |d: &Rational| ball_integral(h, cell, t, d, m);
    let (o1, o2, o3) = (at(delta), at(&(delta * q(2))), at(&(delta * q(3))));
    assert_eq!(&o3 - &o2, &o2 - &o1, "δ too large for the affine regime");
    q(2) * o1 - o2
}

fn open_segment(a: Rational, b: Rational, m: Measure) -> Rational {
    // an open 1-cell carrying the affine function from a to b
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    match m {
        Measure::Floor => -lo,
        Measure::Ceil => -hi,
        Measure::Avg => -(lo + hi) / q(2),
    }
}

fn ball_integral(h: &DefFun, cell: CellId, t: &Rational, d: &Rational, m: Measure) -> Rational {
    let k = h.complex();
    let c = k.cell(cell);
    match c.vertices() {
        [v] => {
            let mut total = h.vertex_value(*v).clone();
            for &e in k.cofaces(cell) {
                let ev = k.cell(e).vertices();
                let data = h.data(e);
                let (xv, xw) = if ev[0] == *v { (&data[0], &data[1]) } else { (&data[1], &data[0]) };
                total += open_segment(xv.clone(), xv + d * (xw - xv), m);
            }
            total
        }
        [_, _] => {
            let data = h.data(cell);
            let f = |s: &Rational| &data[0] + s * (&data[1] - &data[0]);
            let (l, r) = (t - d, t + d);
            assert!(l.is_positive() && r < q(1));
            f(t) + open_segment(f(&l), f(t), m) + open_segment(f(t), f(&r), m)
        }
        _ => panic!("1-D complexes only"),
    }
}

/// Planar window fixture: an `n × n` grid over `[0, n]²` with random integer
/// values in `[-3, 3]` at interior vertices and zero on the boundary.
pub fn random_planar(rng: &mut ChaCha8Rng, n: usize) -> (DefFun, Vec<i64>) {
    let k = grid(n, n);
    let w = n + 1;
    let vals: Vec<i64> = (0..w * w)
        .map(|id| {
            let (i, j) = (id % w, id / w);
            if i == 0 || j == 0 || i == n || j == n {
                0
            } else {
                rng.gen_range(-3..=3)
            }
        })
        .collect();
    let h = DefFun::from_vertex_values(k, vals.iter().map(|&v| q(v)).collect()).unwrap();
    (h, vals)
}

/// Component count of an excursion set of the PL interpolation of grid
/// values (grid as in [`random_planar`]), by sampling pixel centers at
/// resolution `1/res` over the window plus a one-unit margin (where the
/// function is zero) and flood-filling with 8-neighbor adjacency.
pub fn flood_fill_betti0(vals: &[i64], n: usize, s: f64, kind: Excursion, res: usize) -> usize {
    let w = n + 1;
    let eval = |x: f64, y: f64| -> f64 {
        if x <= 0.0 || y <= 0.0 || x >= n as f64 || y >= n as f64 {
            return 0.0;
        }
        let (i, j) = (x.floor() as usize, y.floor() as usize);
        let (fx, fy) = (x - i as f64, y - j as f64);
        let v = |a: usize, b: usize| vals[b * w + a] as f64;
        let (sw, se, nw, ne) = (v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1));
        if fx >= fy {
            sw + fx * (se - sw) + fy * (ne - se)
        } else {
            sw + fy * (nw - sw) + fx * (ne - nw)
        }
    };
    let inside = |z: f64| match kind {
        Excursion::Ge => z >= s,
        Excursion::Gt => z > s,
        Excursion::Le => z <= s,
        Excursion::Lt => z < s,
    };
    let size = (n + 2) * res;
    let coord = |i: usize| (i as f64 + 0.5) / res as f64 - 1.0;
    let mut occ = vec![false; size * size];
    for j in 0..size {
        for i in 0..size {
            occ[j * size + i] = inside(eval(coord(i), coord(j)));
        }
    }
    let mut seen = vec![false; size * size];
    let mut count = 0;
    for start in 0..size * size {
        if !occ[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            let (i, j) = ((p % size) as i64, (p / size) as i64);
            for dj in -1..=1 {
                for di in -1..=1 {
                    let (a, b) = (i + di, j + dj);
                    if a < 0 || b < 0 || a >= size as i64 || b >= size as i64 {
                        continue;
                    }
                    let r = b as usize * size + a as usize;
                    if occ[r] && !seen[r] {
                        seen[r] = true;
                        stack.push(r);
                    }
                }
            }
        }
    }
    count
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap()
}
