//! Finite geometric simplicial complexes with exact rational coordinates.
//!
//! A complex stores every open cell (face closure is computed on
//! construction) together with a coface index. Cells are sorted by dimension
//! and then lexicographically by vertex ids, so [`CellId`]s are deterministic.
//!
//! χ is the compactly supported Euler characteristic: a set of open cells
//! contributes `Σ (−1)^dim`, which makes it additive over arbitrary cell
//! subsets, face-closed or not.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::lp::{self, LpOutcome};
use crate::rational::{int, sign};
use crate::{Error, Rational, Result};

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId(pub usize);

impl CellId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An open simplex, named by its strictly increasing vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    verts: Vec<VertexId>,
}

impl Cell {
    fn from_sorted(verts: Vec<VertexId>) -> Self {
        Cell { verts }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    /// True when `self` is a (not necessarily proper) face of `other`.
    pub fn is_face_of(&self, other: &Cell) -> bool {
        self.verts.iter().all(|v| other.contains(*v))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.verts
            .len()
            .cmp(&other.verts.len())
            .then_with(|| self.verts.cmp(&other.verts))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All non-empty subsets of a sorted vertex list, each sorted.
pub(crate) fn subsets(verts: &[VertexId]) -> impl Iterator<Item = Vec<VertexId>> + '_ {
    let n = verts.len();
    (1u64..(1u64 << n)).map(move |mask| {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| verts[i])
            .collect()
    })
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    coords: Vec<Vec<Rational>>,
    ambient: usize,
    cells: Vec<Cell>,
    lookup: HashMap<Vec<VertexId>, CellId>,
    cofaces: Vec<Vec<CellId>>,
    facets: Vec<Vec<CellId>>,
    vertex_cells: Vec<CellId>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.cells == other.cells
    }
}

impl Eq for SimplicialComplex {}

/// Builds a complex from vertex coordinates (vertex `i` is `vertices[i]`) and
/// a list of cells whose face closure is the complex. Every vertex becomes a
/// 0-cell even if no listed cell uses it.
pub fn build_complex(
    vertices: Vec<Vec<Rational>>,
    maximal_cells: Vec<Vec<VertexId>>,
) -> Result<SimplicialComplex> {
    SimplicialComplex::assemble(vertices, maximal_cells, true)
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<Vec<Rational>>, maximal_cells: Vec<Vec<VertexId>>) -> Result<Self> {
        build_complex(vertices, maximal_cells)
    }

    /// Construction without the pairwise overlap test; used by generators whose
    /// output is valid by construction.
    pub(crate) fn assemble(
        coords: Vec<Vec<Rational>>,
        maximal: Vec<Vec<VertexId>>,
        validate_overlaps: bool,
    ) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let ambient = coords[0].len();
        for (i, c) in coords.iter().enumerate() {
            if c.len() != ambient {
                return Err(Error::DimensionMismatch {
                    vertex: i,
                    expected: ambient,
                    found: c.len(),
                });
            }
        }
        let nv = coords.len();
        let mut listed = HashSet::new();
        let mut closure: HashSet<Vec<VertexId>> = (0..nv).map(|v| vec![v]).collect();
        for cell in maximal {
            if let Some(&bad) = cell.iter().find(|&&v| v >= nv) {
                return Err(Error::UnknownVertex(bad));
            }
            let mut sorted = cell.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() || sorted.len() != cell.len() {
                return Err(Error::DegenerateSimplex(cell));
            }
            if !affinely_independent(&coords, &sorted) {
                return Err(Error::DegenerateSimplex(sorted));
            }
            if !listed.insert(sorted.clone()) {
                return Err(Error::DuplicateCell(sorted));
            }
            if !closure.contains(&sorted) {
                closure.extend(subsets(&sorted));
            }
        }

        let mut cells: Vec<Cell> = closure.into_iter().map(Cell::from_sorted).collect();
        cells.sort_unstable();
        let lookup: HashMap<Vec<VertexId>, CellId> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.verts.clone(), CellId(i)))
            .collect();
        let mut cofaces = vec![Vec::new(); cells.len()];
        let mut facets = vec![Vec::new(); cells.len()];
        for (i, c) in cells.iter().enumerate() {
            if c.verts.len() > 1 {
                for face in subsets(&c.verts) {
                    if face.len() == c.verts.len() {
                        continue;
                    }
                    let f = lookup[&face];
                    cofaces[f.0].push(CellId(i));
                    if face.len() + 1 == c.verts.len() {
                        facets[i].push(f);
                    }
                }
            }
        }
        let vertex_cells = (0..nv).map(|v| lookup[&vec![v]]).collect();
        let complex = SimplicialComplex {
            coords,
            ambient,
            cells,
            lookup,
            cofaces,
            facets,
            vertex_cells,
        };
        if validate_overlaps && complex.dim() <= 3 {
            complex.check_overlaps()?;
        }
        Ok(complex)
    }

    fn check_overlaps(&self) -> Result<()> {
        let maximal: Vec<CellId> = self.maximal_cells().collect();
        if self.ambient == 0 {
            return match maximal.as_slice() {
                [a, b, ..] => Err(Error::OverlappingInteriors(
                    self.cell(*a).verts.clone(),
                    self.cell(*b).verts.clone(),
                )),
                _ => Ok(()),
            };
        }
        let boxes: Vec<(Vec<&Rational>, Vec<&Rational>)> = maximal
            .iter()
            .map(|&c| {
                let vs = &self.cell(c).verts;
                let lo = (0..self.ambient)
                    .map(|d| vs.iter().map(|&v| &self.coords[v][d]).min().unwrap())
                    .collect();
                let hi = (0..self.ambient)
                    .map(|d| vs.iter().map(|&v| &self.coords[v][d]).max().unwrap())
                    .collect();
                (lo, hi)
            })
            .collect();
        let mut order: Vec<usize> = (0..maximal.len()).collect();
        order.sort_by(|&a, &b| boxes[a].0[0].cmp(boxes[b].0[0]));
        for (k, &i) in order.iter().enumerate() {
            for &j in &order[k + 1..] {
                if boxes[j].0[0] > boxes[i].1[0] {
                    break;
                }
                let touching =
                    (1..self.ambient).all(|d| boxes[j].0[d] <= boxes[i].1[d] && boxes[i].0[d] <= boxes[j].1[d]);
                if touching && self.improper_intersection(maximal[i], maximal[j]) {
                    return Err(Error::OverlappingInteriors(
                        self.cell(maximal[i]).verts.clone(),
                        self.cell(maximal[j]).verts.clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Whether two closed simplices meet outside the face spanned by their
    /// common vertices. Barycentric coordinates are unique, so a point of the
    /// intersection lies in that face iff it carries no weight on the other
    /// vertices: we maximize that weight.
    fn improper_intersection(&self, a: CellId, b: CellId) -> bool {
        let av = &self.cell(a).verts;
        let bv = &self.cell(b).verts;
        let n = av.len() + bv.len();
        let mut rows = Vec::with_capacity(self.ambient + 2);
        for d in 0..self.ambient {
            let mut row = Vec::with_capacity(n);
            row.extend(av.iter().map(|&v| self.coords[v][d].clone()));
            row.extend(bv.iter().map(|&v| -self.coords[v][d].clone()));
            rows.push(row);
        }
        let mut sum_a = vec![Rational::zero(); n];
        let mut sum_b = vec![Rational::zero(); n];
        for x in sum_a.iter_mut().take(av.len()) {
            *x = Rational::one();
        }
        for x in sum_b.iter_mut().skip(av.len()) {
            *x = Rational::one();
        }
        rows.push(sum_a);
        rows.push(sum_b);
        let mut rhs = vec![Rational::zero(); self.ambient];
        rhs.push(Rational::one());
        rhs.push(Rational::one());
        let objective: Vec<Rational> = av
            .iter()
            .map(|v| if bv.contains(v) { Rational::zero() } else { Rational::one() })
            .chain(std::iter::repeat_n(Rational::zero(), bv.len()))
            .collect();
        matches!(lp::maximize(&rows, &rhs, &objective), LpOutcome::Optimal(v) if v > Rational::zero())
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Dimension of the embedding space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Largest cell dimension.
    pub fn dim(&self) -> usize {
        self.cells.last().map(|c| c.dim()).unwrap_or(0)
    }

    pub fn coords(&self, v: VertexId) -> &[Rational] {
        &self.coords[v]
    }

    pub fn all_coords(&self) -> &[Vec<Rational>] {
        &self.coords
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.0]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).map(CellId)
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        self.cell_ids().filter(move |&c| self.cell(c).dim() == dim)
    }

    /// Looks a cell up by its vertex set (any order).
    pub fn find(&self, verts: &[VertexId]) -> Option<CellId> {
        let mut key = verts.to_vec();
        key.sort_unstable();
        key.dedup();
        self.lookup.get(&key).copied()
    }

    pub fn vertex_cell(&self, v: VertexId) -> CellId {
        self.vertex_cells[v]
    }

    /// All cells having `id` as a proper face.
    pub fn cofaces(&self, id: CellId) -> &[CellId] {
        &self.cofaces[id.0]
    }

    /// Codimension-one faces.
    pub fn facets(&self, id: CellId) -> &[CellId] {
        &self.facets[id.0]
    }

    /// All faces of `id`, including `id` itself.
    pub fn closure(&self, id: CellId) -> Vec<CellId> {
        subsets(&self.cell(id).verts).map(|f| self.lookup[&f]).collect()
    }

    /// `id` together with all its cofaces: the cells whose closure meets the
    /// interior of `id`.
    pub fn star(&self, id: CellId) -> impl Iterator<Item = CellId> + '_ {
        std::iter::once(id).chain(self.cofaces[id.0].iter().copied())
    }

    pub fn is_maximal(&self, id: CellId) -> bool {
        self.cofaces[id.0].is_empty()
    }

    pub fn maximal_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cell_ids().filter(|&c| self.is_maximal(c))
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.maximal_cells().all(|c| self.cell(c).dim() == d)
    }

    /// Link of a vertex: cells τ not containing `v` with τ ∪ {v} in the complex.
    pub fn vertex_link(&self, v: VertexId) -> Vec<CellId> {
        self.cofaces(self.vertex_cell(v))
            .iter()
            .map(|&c| {
                let rest: Vec<VertexId> =
                    self.cell(c).verts.iter().copied().filter(|&w| w != v).collect();
                self.lookup[&rest]
            })
            .collect()
    }

    pub fn barycenter(&self, id: CellId) -> Vec<Rational> {
        let vs = &self.cell(id).verts;
        let k = int(vs.len() as i64);
        (0..self.ambient)
            .map(|d| {
                let s = vs.iter().fold(Rational::zero(), |acc, &v| acc + &self.coords[v][d]);
                s / &k
            })
            .collect()
    }

    /// Compactly supported χ of a set of open cells (duplicates ignored).
    pub fn euler_characteristic(&self, subset: &[CellId]) -> Result<i64> {
        let mut seen = HashSet::with_capacity(subset.len());
        let mut chi = 0;
        for &c in subset {
            if c.0 >= self.cells.len() {
                return Err(Error::UnknownCell(c.0));
            }
            if seen.insert(c) {
                chi += sign(self.cell(c).dim());
            }
        }
        Ok(chi)
    }

    /// χ of the whole complex.
    pub fn chi(&self) -> i64 {
        self.cells.iter().map(|c| sign(c.dim())).sum()
    }

    /// Cells on the topological boundary of a pure complex: codimension-one
    /// cells with a single top-dimensional coface, and their faces.
    pub fn boundary_cells(&self) -> Vec<CellId> {
        let d = self.dim();
        if d == 0 {
            return Vec::new();
        }
        let mut out = HashSet::new();
        for c in self.cells_of_dim(d - 1) {
            let tops = self.cofaces(c).iter().filter(|&&s| self.cell(s).dim() == d).count();
            if tops == 1 {
                out.extend(self.closure(c));
            }
        }
        let mut out: Vec<CellId> = out.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// `Some(n)` when the complex is a closed combinatorial n-manifold, n ∈ {1, 2}.
    pub fn closed_manifold_dim(&self) -> Option<usize> {
        let n = self.dim();
        if !self.is_pure() || !(1..=2).contains(&n) {
            return None;
        }
        for c in self.cells_of_dim(n - 1) {
            let tops = self.cofaces(c).iter().filter(|&&s| self.cell(s).dim() == n).count();
            if tops != 2 {
                return None;
            }
        }
        if n == 2 {
            for v in 0..self.num_vertices() {
                if !self.link_is_cycle(v) {
                    return None;
                }
            }
        }
        Some(n)
    }

    fn link_is_cycle(&self, v: VertexId) -> bool {
        let link = self.vertex_link(v);
        let verts: Vec<VertexId> = link
            .iter()
            .filter(|&&c| self.cell(c).dim() == 0)
            .map(|&c| self.cell(c).verts[0])
            .collect();
        let edges: Vec<&[VertexId]> = link
            .iter()
            .filter(|&&c| self.cell(c).dim() == 1)
            .map(|&c| self.cell(c).verts.as_slice())
            .collect();
        if verts.len() < 3 || edges.len() != verts.len() {
            return false;
        }
        let mut seen = HashSet::from([verts[0]]);
        let mut stack = vec![verts[0]];
        while let Some(x) = stack.pop() {
            for e in &edges {
                let other = if e[0] == x {
                    e[1]
                } else if e[1] == x {
                    e[0]
                } else {
                    continue;
                };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == verts.len()
    }

    /// Barycentric subdivision. New vertex `i` is the barycenter of old cell
    /// `CellId(i)`; `carrier[c]` is the old open cell containing new cell `c`.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let coords: Vec<Vec<Rational>> = self.cell_ids().map(|c| self.barycenter(c)).collect();
        let mut chains = Vec::new();
        for top in self.maximal_cells() {
            let mut acc = Vec::new();
            self.flags(top, &mut acc, &mut chains);
        }
        let complex = SimplicialComplex::assemble(coords, chains, false)
            .expect("subdivision of a valid complex is valid");
        // Vertex ids are old cell ids and old ids are sorted by dimension, so the
        // carrier of a chain is its largest vertex id.
        let carrier = complex
            .cells
            .iter()
            .map(|c| CellId(*c.verts.last().unwrap()))
            .collect();
        Subdivision { complex, carrier }
    }

    fn flags(&self, top: CellId, acc: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        acc.push(top.0);
        if self.cell(top).dim() == 0 {
            out.push(acc.clone());
        } else {
            for &f in self.facets(top) {
                self.flags(f, acc, out);
            }
        }
        acc.pop();
    }
}

/// Result of [`SimplicialComplex::barycentric_subdivision`].
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carrier: Vec<CellId>,
}

fn affinely_independent(coords: &[Vec<Rational>], verts: &[VertexId]) -> bool {
    let k = verts.len() - 1;
    if k == 0 {
        return true;
    }
    let d = coords[verts[0]].len();
    if k > d {
        return false;
    }
    let base = &coords[verts[0]];
    let mut rows: Vec<Vec<Rational>> = verts[1..]
        .iter()
        .map(|&v| coords[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&mut rows) == k
}

fn rank(rows: &mut [Vec<Rational>]) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            for j in col..ncols {
                let delta = &f * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Triangulated rectangle `[x0, x1] × [y0, y1]` with `nx × ny` squares, each
/// split along its SW–NE diagonal. Vertex `(i, j)` has id `j·(nx+1) + i`.
pub fn grid_complex(
    nx: usize,
    ny: usize,
    x_range: (Rational, Rational),
    y_range: (Rational, Rational),
) -> Result<SimplicialComplex> {
    if nx == 0 || ny == 0 || x_range.0 >= x_range.1 || y_range.0 >= y_range.1 {
        return Err(Error::EmptyRange);
    }
    let w = nx + 1;
    let dx = (&x_range.1 - &x_range.0) / int(nx as i64);
    let dy = (&y_range.1 - &y_range.0) / int(ny as i64);
    let mut coords = Vec::with_capacity(w * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            coords.push(vec![
                &x_range.0 + &dx * int(i as i64),
                &y_range.0 + &dy * int(j as i64),
            ]);
        }
    }
    let mut tris = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let sw = j * w + i;
            let se = sw + 1;
            let nw = sw + w;
            let ne = nw + 1;
            tris.push(vec![sw, se, ne]);
            tris.push(vec![sw, ne, nw]);
        }
    }
    SimplicialComplex::assemble(coords, tris, false)
}

/// `n` rational points on the unit circle in counterclockwise order, placed
/// near the angles `2πi/n` through the parametrization
/// `t ↦ ((1−t²)/(1+t²), 2t/(1+t²))`.
pub(crate) fn circle_points(n: usize) -> Vec<[Rational; 2]> {
    (0..n)
        .map(|i| {
            if 2 * i == n {
                return [int(-1), Rational::zero()];
            }
            let half = std::f64::consts::PI * i as f64 / n as f64;
            let t = Rational::new(((half.tan() * 1024.0).round() as i64).into(), 1024.into());
            let t2 = &t * &t;
            let den = Rational::one() + &t2;
            [(Rational::one() - &t2) / &den, (int(2) * &t) / &den]
        })
        .collect()
}

/// Boundary of an `n`-gon inscribed in the unit circle.
pub fn circle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::TooFewVertices { min: 3, got: n });
    }
    let coords = circle_points(n).into_iter().map(|p| p.to_vec()).collect();
    let edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::assemble(coords, edges, false)
}

/// Boundary of the standard 3-simplex: a triangulated 2-sphere.
pub fn sphere_boundary() -> SimplicialComplex {
    let coords = vec![
        vec![int(0), int(0), int(0)],
        vec![int(1), int(0), int(0)],
        vec![int(0), int(1), int(0)],
        vec![int(0), int(0), int(1)],
    ];
    let tris = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    SimplicialComplex::assemble(coords, tris, false).expect("tetrahedron boundary")
}

/// Polyhedral torus in R³ on an `n × m` grid (n around the core circle, m
/// around the tube). Vertex `(i, j)` has id `i·m + j`.
pub fn torus(n: usize, m: usize) -> Result<SimplicialComplex> {
    if n < 3 || m < 3 {
        return Err(Error::TooFewVertices { min: 3, got: n.min(m) });
    }
    let core = circle_points(n);
    let tube = circle_points(m);
    let big = int(3);
    let mut coords = Vec::with_capacity(n * m);
    for [a, b] in &core {
        for [c, d] in &tube {
            let r = &big + c;
            coords.push(vec![&r * a, &r * b, d.clone()]);
        }
    }
    let id = |i: usize, j: usize| (i % n) * m + (j % m);
    let mut tris = Vec::with_capacity(2 * n * m);
    for i in 0..n {
        for j in 0..m {
            tris.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            tris.push(vec![id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    SimplicialComplex::assemble(coords, tris, false)
}

/// Staircase triangulation of |K| × |L|. Vertex `(k, l)` has id
/// `k·|V(L)| + l` and coordinates `(coords_K(k), coords_L(l))`.
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex> {
    let nl = l.num_vertices();
    let mut coords = Vec::with_capacity(k.num_vertices() * nl);
    for a in k.all_coords() {
        for b in l.all_coords() {
            coords.push(a.iter().chain(b.iter()).cloned().collect());
        }
    }
    let mut cells = Vec::new();
    for s in k.maximal_cells() {
        for t in l.maximal_cells() {
            let sv = k.cell(s).vertices();
            let tv = l.cell(t).vertices();
            staircase(sv, tv, 0, 0, &mut vec![sv[0] * nl + tv[0]], nl, &mut cells);
        }
    }
    SimplicialComplex::assemble(coords, cells, false)
}

fn staircase(
    sv: &[VertexId],
    tv: &[VertexId],
    i: usize,
    j: usize,
    path: &mut Vec<VertexId>,
    nl: usize,
    out: &mut Vec<Vec<VertexId>>,
) {
    if i + 1 == sv.len() && j + 1 == tv.len() {
        out.push(path.clone());
        return;
    }
    if i + 1 < sv.len() {
        path.push(sv[i + 1] * nl + tv[j]);
        staircase(sv, tv, i + 1, j, path, nl, out);
        path.pop();
    }
    if j + 1 < tv.len() {
        path.push(sv[i] * nl + tv[j + 1]);
        staircase(sv, tv, i, j + 1, path, nl, out);
        path.pop();
    }
}
