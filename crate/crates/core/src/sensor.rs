//! Target counting on a sensor grid: synthetic count fields, ±1 corruption,
//! confidence-weighted smoothing, and count estimates by Euler integration.

use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{grid_complex, SimplicialComplex, VertexId};
use crate::defint::{integrate, DefFun, Measure};
use crate::rational::{int, max_of, min_of, rat, sum};
use crate::{Error, Exec, Rational, Result};

pub type Point = [Rational; 2];

/// A compact convex target support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Disk { center: Point, radius: Rational },
    Rect { min: Point, max: Point },
}

impl Support {
    /// Closed membership.
    pub fn contains(&self, p: &[Rational]) -> bool {
        match self {
            Support::Disk { center, radius } => {
                let dx = &p[0] - &center[0];
                let dy = &p[1] - &center[1];
                &dx * &dx + &dy * &dy <= radius * radius
            }
            Support::Rect { min, max } => (0..2).all(|i| min[i] <= p[i] && p[i] <= max[i]),
        }
    }

    fn bounds(&self) -> (Point, Point) {
        match self {
            Support::Disk { center, radius } => (
                [&center[0] - radius, &center[1] - radius],
                [&center[0] + radius, &center[1] + radius],
            ),
            Support::Rect { min, max } => (min.clone(), max.clone()),
        }
    }
}

/// The target supports `U_α`; each is convex, so `χ(U_α) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetScene {
    pub supports: Vec<Support>,
}

impl TargetScene {
    pub fn truth(&self) -> usize {
        self.supports.len()
    }
}

/// Sensors at the vertices of a triangulated grid. A node's neighborhood is
/// the node itself plus its triangulation neighbors. Hole nodes are present
/// in the triangulation but report nothing (confidence 0).
#[derive(Clone, Debug)]
pub struct SensorNetwork {
    complex: Arc<SimplicialComplex>,
    window: (Point, Point),
    neighbors: Vec<Vec<VertexId>>,
    holes: Vec<bool>,
}

impl SensorNetwork {
    pub fn grid(nx: usize, ny: usize, x_range: (Rational, Rational), y_range: (Rational, Rational)) -> Result<Self> {
        let window = ([x_range.0.clone(), y_range.0.clone()], [x_range.1.clone(), y_range.1.clone()]);
        let complex = grid_complex(nx, ny, x_range, y_range)?;
        Ok(Self::from_complex(complex, window))
    }

    /// A network on an arbitrary planar triangulation lying in `window`.
    pub fn from_complex(complex: impl Into<Arc<SimplicialComplex>>, window: (Point, Point)) -> Self {
        let complex = complex.into();
        let n = complex.num_vertices();
        let mut neighbors: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
        for e in complex.cells_of_dim(1) {
            let vs = complex.cell(e).vertices();
            neighbors[vs[0]].push(vs[1]);
            neighbors[vs[1]].push(vs[0]);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        SensorNetwork { complex, window, neighbors, holes: vec![false; n] }
    }

    /// Marks every node inside one of `regions` as dropped.
    pub fn with_holes(mut self, regions: &[Support]) -> Self {
        for (v, p) in self.complex.all_coords().iter().enumerate() {
            if regions.iter().any(|r| r.contains(p)) {
                self.holes[v] = true;
            }
        }
        self
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn window(&self) -> &(Point, Point) {
        &self.window
    }

    pub fn num_nodes(&self) -> usize {
        self.complex.num_vertices()
    }

    pub fn neighborhood(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v]
    }

    pub fn is_hole(&self, v: VertexId) -> bool {
        self.holes[v]
    }
}

/// `h(x_i)` = number of supports containing node `x_i`.
pub fn synthesize_counts(scene: &TargetScene, network: &SensorNetwork) -> Result<Vec<i64>> {
    let (lo, hi) = &network.window;
    for (i, s) in scene.supports.iter().enumerate() {
        let (a, b) = s.bounds();
        if (0..2).any(|d| a[d] <= lo[d] || b[d] >= hi[d]) {
            return Err(Error::SupportOutsideWindow(i));
        }
    }
    Ok(network
        .complex
        .all_coords()
        .iter()
        .map(|p| scene.supports.iter().filter(|s| s.contains(p)).count() as i64)
        .collect())
}

/// Adds ±1 to `⌊p·N⌋` uniformly chosen nodes. Corrupted nodes receive a
/// confidence uniform on the grid `{0, 1/2000, …, 1/2}`, clean nodes 1.
/// Values are not clamped, so readings may become negative.
pub fn corrupt(raw: &[i64], p: &Rational, seed: u64) -> Result<(Vec<i64>, Vec<Rational>)> {
    if p < &Rational::zero() || p > &int(1) {
        return Err(Error::InvalidArgument(format!("corruption fraction {p} outside [0, 1]")));
    }
    let n = raw.len();
    let k = (p * int(n as i64)).floor().to_integer().to_usize().expect("0 ≤ k ≤ n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = raw.to_vec();
    let mut confidence = vec![int(1); n];
    for i in sample(&mut rng, n, k) {
        values[i] += if rng.gen_bool(0.5) { 1 } else { -1 };
        confidence[i] = rat(rng.gen_range(0..=1000), 2000);
    }
    Ok((values, confidence))
}

fn weighted_mean(values: &[i64], confidence: &[Rational], nb: &[VertexId]) -> Option<Rational> {
    let w = sum(nb.iter().map(|&j| confidence[j].clone()));
    if w.is_zero() {
        return None;
    }
    Some(sum(nb.iter().map(|&j| &confidence[j] * int(values[j]))) / w)
}

/// `h̃(x_i) = Σ_{y∈N(i)} c(y)h(y) / Σ_{y∈N(i)} c(y)`.
pub fn smooth(values: &[i64], confidence: &[Rational], network: &SensorNetwork) -> Result<Vec<Rational>> {
    (0..network.num_nodes())
        .map(|i| {
            weighted_mean(values, confidence, &network.neighbors[i]).ok_or(Error::ZeroConfidenceNeighborhood(i))
        })
        .collect()
}

/// [`smooth`], except that nodes whose whole neighborhood has zero confidence
/// are filled in rounds by the plain mean of already defined neighbors.
pub fn smooth_filling_holes(
    values: &[i64],
    confidence: &[Rational],
    network: &SensorNetwork,
) -> Result<Vec<Rational>> {
    let n = network.num_nodes();
    let mut out: Vec<Option<Rational>> =
        (0..n).map(|i| weighted_mean(values, confidence, &network.neighbors[i])).collect();
    loop {
        let missing: Vec<usize> = (0..n).filter(|&i| out[i].is_none()).collect();
        if missing.is_empty() {
            break;
        }
        let filled: Vec<(usize, Rational)> = missing
            .iter()
            .filter_map(|&i| {
                let known: Vec<Rational> =
                    network.neighbors[i].iter().filter_map(|&j| out[j].clone()).collect();
                (!known.is_empty()).then(|| (i, sum(known.iter().cloned()) / int(known.len() as i64)))
            })
            .collect();
        if filled.is_empty() {
            return Err(Error::ZeroConfidenceNeighborhood(missing[0]));
        }
        for (i, v) in filled {
            out[i] = Some(v);
        }
    }
    Ok(out.into_iter().map(|v| v.expect("filled")).collect())
}

/// How node values are extended over the triangulation before integrating.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Extension {
    /// Continuous piecewise-linear interpolation.
    #[default]
    Pl,
    /// Upper semicontinuous: each open cell takes the max of its vertex values.
    Usc,
    /// Lower semicontinuous: each open cell takes the min of its vertex values.
    Lsc,
}

/// The integrand built from node values.
pub fn extend(values: &[Rational], network: &SensorNetwork, ext: Extension) -> Result<DefFun> {
    let k = network.complex.clone();
    match ext {
        Extension::Pl => DefFun::from_vertex_values(k, values.to_vec()),
        Extension::Usc | Extension::Lsc => {
            if values.len() != k.num_vertices() {
                return Err(Error::FunctionMismatch("one value per node required".into()));
            }
            let cell_values = k
                .cells()
                .iter()
                .map(|c| {
                    let vs: Vec<Rational> = c.vertices().iter().map(|&v| values[v].clone()).collect();
                    if ext == Extension::Usc { max_of(&vs).clone() } else { min_of(&vs).clone() }
                })
                .collect();
            DefFun::from_cell_values(k, cell_values)
        }
    }
}

/// `(1/N)∫h dm` for supports of Euler characteristic `N`.
pub fn estimate_count(
    values: &[Rational],
    network: &SensorNetwork,
    ext: Extension,
    m: Measure,
    divisor: i64,
) -> Result<Rational> {
    if divisor == 0 {
        return Err(Error::InvalidArgument("divisor must be nonzero".into()));
    }
    Ok(integrate(&extend(values, network, ext)?, m) / int(divisor))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub scene: TargetScene,
    pub nx: usize,
    pub ny: usize,
    pub x_range: (Rational, Rational),
    pub y_range: (Rational, Rational),
    /// Fraction of corrupted nodes.
    pub p: Rational,
    /// Regions whose nodes are dropped.
    pub holes: Vec<Support>,
    pub seeds: Vec<u64>,
    pub extension: Extension,
    pub measure: Measure,
}

impl ExperimentConfig {
    pub fn network(&self) -> Result<SensorNetwork> {
        Ok(SensorNetwork::grid(self.nx, self.ny, self.x_range.clone(), self.y_range.clone())?.with_holes(&self.holes))
    }
}

/// One seed of the pipeline, with the intermediate fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedRun {
    pub seed: u64,
    pub truth: usize,
    pub raw: Vec<i64>,
    pub confidence: Vec<Rational>,
    pub smoothed: Vec<Rational>,
    pub raw_estimate: Rational,
    pub smoothed_estimate: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub runs: Vec<SeedRun>,
    pub median_raw_estimate: Rational,
    pub median_smoothed_estimate: Rational,
    pub median_raw_error: Rational,
    pub median_smoothed_error: Rational,
}

pub fn run_seed(config: &ExperimentConfig, network: &SensorNetwork, seed: u64) -> Result<SeedRun> {
    let mut clean = synthesize_counts(&config.scene, network)?;
    for (v, x) in clean.iter_mut().enumerate() {
        if network.is_hole(v) {
            *x = 0;
        }
    }
    let (raw, mut confidence) = corrupt(&clean, &config.p, seed)?;
    for (v, c) in confidence.iter_mut().enumerate() {
        if network.is_hole(v) {
            *c = Rational::zero();
        }
    }
    let smoothed = smooth_filling_holes(&raw, &confidence, network)?;
    let raw_q: Vec<Rational> = raw.iter().map(|&x| int(x)).collect();
    let raw_estimate = estimate_count(&raw_q, network, config.extension, config.measure, 1)?;
    let smoothed_estimate = estimate_count(&smoothed, network, config.extension, config.measure, 1)?;
    Ok(SeedRun {
        seed,
        truth: config.scene.truth(),
        raw,
        confidence,
        smoothed,
        raw_estimate,
        smoothed_estimate,
    })
}

pub fn median(values: &[Rational]) -> Option<Rational> {
    let mut v = values.to_vec();
    v.sort();
    let n = v.len();
    match n {
        0 => None,
        _ if n % 2 == 1 => Some(v[n / 2].clone()),
        _ => Some((&v[n / 2 - 1] + &v[n / 2]) / int(2)),
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    run_experiment_with(config, Exec::default())
}

pub fn run_experiment_with(config: &ExperimentConfig, exec: Exec) -> Result<Report> {
    if config.seeds.is_empty() {
        return Err(Error::InvalidArgument("at least one seed required".into()));
    }
    let network = config.network()?;
    let runs: Vec<SeedRun> = exec
        .map_slice(&config.seeds, |&seed| run_seed(config, &network, seed))
        .into_iter()
        .collect::<Result<_>>()?;
    let truth = int(config.scene.truth() as i64);
    let col = |f: &dyn Fn(&SeedRun) -> Rational| -> Rational {
        median(&runs.iter().map(f).collect::<Vec<_>>()).expect("nonempty")
    };
    Ok(Report {
        median_raw_estimate: col(&|r| r.raw_estimate.clone()),
        median_smoothed_estimate: col(&|r| r.smoothed_estimate.clone()),
        median_raw_error: col(&|r| (&r.raw_estimate - &truth).abs()),
        median_smoothed_error: col(&|r| (&r.smoothed_estimate - &truth).abs()),
        runs,
    })
}


/// The nine-disk benchmark scene: unit disks centered at `{2, 6, 10}²` in the
/// window `[0, 12]²`.
pub fn nine_disks() -> TargetScene {
    let mut supports = Vec::new();
    for cx in [2, 6, 10] {
        for cy in [2, 6, 10] {
            supports.push(Support::Disk { center: [int(cx), int(cy)], radius: int(1) });
        }
    }
    TargetScene { supports }
}

/// The nine-disk scene on a 30×30 grid with one third of the nodes corrupted.
pub fn benchmark_config(seeds: Vec<u64>) -> ExperimentConfig {
    ExperimentConfig {
        scene: nine_disks(),
        nx: 30,
        ny: 30,
        x_range: (int(0), int(12)),
        y_range: (int(0), int(12)),
        p: rat(1, 3),
        holes: Vec::new(),
        seeds,
        extension: Extension::Pl,
        measure: Measure::Floor,
    }
}
