//! The three subcommands as functions from parsed input to output text.

use std::fs;
use std::path::Path;

use eulerint::cf::{integrate_cf, integrate_cf_levelset};
use eulerint::defint::{integrate, integrate_levelset, pushforward_to_line, riemann_oracle};
use eulerint::morse::{integrate_via_index, IndexKind};
use eulerint::planar::integrate_betti0;
use eulerint::sensor::{run_experiment, Report};
use eulerint::transforms::{dual, kernel_transform, link, KernelMode};
use eulerint::{parse_rational, rat, to_f64, Measure, Rational};

use crate::config::SensorConfig;
use crate::document::{format_q, Document, Integrand};
use crate::render;
use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureArg {
    Floor,
    Ceil,
    Avg,
    /// Plain Euler integration of a constructible function.
    Dchi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Closed,
    Levelset,
    Riemann(u64),
    Morse,
    Betti0,
    Pushline,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "closed" => Method::Closed,
            "levelset" => Method::Levelset,
            "morse" => Method::Morse,
            "betti0" => Method::Betti0,
            "pushline" => Method::Pushline,
            _ => match s.strip_prefix("riemann:").map(str::parse::<u64>) {
                Some(Ok(n)) if n > 0 => Method::Riemann(n),
                _ => return Err(format!("unknown method {s:?}")),
            },
        })
    }
}

/// An exact value with an optional error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub exact: Rational,
    pub bound: Option<Rational>,
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", format_q(&self.exact))?;
        writeln!(f, "≈ {:.6}", to_f64(&self.exact))?;
        if let Some(b) = &self.bound {
            writeln!(f, "± {}", format_q(b))?;
        }
        Ok(())
    }
}

fn incompatible(msg: &str) -> CliError {
    CliError::Precondition(format!("incompatible method: {msg}"))
}

pub fn read_document(path: &Path) -> Result<Integrand> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Document::from_json(&text)?.parse()
}

pub fn integrate_cmd(h: &Integrand, measure: MeasureArg, method: Method) -> Result<Value> {
    let exact = |exact| Ok(Value { exact, bound: None });
    let m = match measure {
        MeasureArg::Dchi => {
            let Integrand::Constructible(h) = h else {
                return Err(incompatible("dchi needs a constructible integrand (cell_values)"));
            };
            return match method {
                Method::Closed => exact(rat(integrate_cf(h), 1)),
                Method::Levelset => exact(rat(integrate_cf_levelset(h), 1)),
                _ => Err(incompatible("dchi supports closed and levelset")),
            };
        }
        MeasureArg::Floor => Measure::Floor,
        MeasureArg::Ceil => Measure::Ceil,
        MeasureArg::Avg => Measure::Avg,
    };
    let d = h.to_deffun();
    match method {
        Method::Closed => exact(integrate(&d, m)),
        Method::Levelset => exact(integrate_levelset(&d, m)),
        Method::Pushline => exact(pushforward_to_line(&d, m)),
        Method::Riemann(n) => {
            let r = riemann_oracle(&d, n, m)?;
            Ok(Value { exact: r, bound: Some(rat(d.complex().num_cells() as i64, n as i64)) })
        }
        Method::Morse => {
            if !d.is_continuous() {
                return Err(incompatible("morse needs a continuous integrand"));
            }
            let floor = || integrate_via_index(&d, IndexKind::Coindex);
            let ceil = || integrate_via_index(&d, IndexKind::Index);
            exact(match m {
                Measure::Floor => floor()?,
                Measure::Ceil => ceil()?,
                Measure::Avg => (floor()? + ceil()?) / rat(2, 1),
            })
        }
        Method::Betti0 => {
            if m != Measure::Floor {
                return Err(incompatible("betti0 computes the floor integral"));
            }
            if !d.is_continuous() {
                return Err(incompatible("betti0 needs a continuous planar integrand"));
            }
            exact(integrate_betti0(&d)?)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformOp {
    Dual,
    Link,
    Width,
    Centroid,
}

pub enum TransformOutput {
    Document(Document),
    Values(Vec<Rational>),
}

/// `"a,b,..."` as a direction vector.
pub fn parse_xi(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|x| parse_rational(x.trim()).map_err(|e| CliError::Parse(format!("--xi {s:?}: {e}"))))
        .collect()
}

pub fn transform_cmd(h: &Integrand, op: TransformOp, xis: &[Vec<Rational>]) -> Result<TransformOutput> {
    let d = h.to_deffun();
    let mode = match op {
        TransformOp::Dual => return Ok(TransformOutput::Document(Document::from_deffun(&dual(&d)))),
        TransformOp::Link => return Ok(TransformOutput::Document(Document::from_deffun(&link(&d)))),
        TransformOp::Width => KernelMode::Width,
        TransformOp::Centroid => KernelMode::Avg,
    };
    if xis.is_empty() {
        return Err(CliError::Precondition("width and centroid need at least one --xi".into()));
    }
    let dim = d.complex().ambient_dim();
    if let Some(xi) = xis.iter().find(|xi| xi.len() != dim) {
        return Err(CliError::Precondition(format!("--xi has {} components, complex lives in R^{dim}", xi.len())));
    }
    Ok(TransformOutput::Values(kernel_transform(&d, xis, mode)?))
}

/// CSV with one row per seed and a final row of medians; LF line endings.
pub fn report_csv(report: &Report) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.into());
    w.write_record(["seed", "truth", "raw_estimate", "smoothed_estimate"]).map_err(io)?;
    for r in &report.runs {
        w.write_record([
            r.seed.to_string(),
            r.truth.to_string(),
            format_q(&r.raw_estimate),
            format_q(&r.smoothed_estimate),
        ])
        .map_err(io)?;
    }
    let truth = report.runs.first().map_or(0, |r| r.truth);
    w.write_record([
        "median".to_string(),
        truth.to_string(),
        format_q(&report.median_raw_estimate),
        format_q(&report.median_smoothed_estimate),
    ])
    .map_err(io)?;
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of ascii fields"))
}

pub fn sensor_cmd(config: &SensorConfig, seeds: usize, out: &Path, render_dir: Option<&Path>) -> Result<Report> {
    if seeds == 0 {
        return Err(CliError::Precondition("--seeds must be positive".into()));
    }
    let exp = config.experiment(seeds)?;
    let report = run_experiment(&exp)?;
    fs::write(out, report_csv(&report)?)?;
    if let Some(dir) = render_dir {
        fs::create_dir_all(dir)?;
        let network = exp.network()?;
        fs::write(dir.join("network.svg"), render::network_svg(&network, &exp.scene.supports))?;
        for run in &report.runs {
            let raw: Vec<Rational> = run.raw.iter().map(|&x| rat(x, 1)).collect();
            fs::write(dir.join(format!("raw_{}.pgm", run.seed)), render::pgm(&raw, &network))?;
            fs::write(dir.join(format!("smoothed_{}.pgm", run.seed)), render::pgm(&run.smoothed, &network))?;
        }
    }
    Ok(report)
}
