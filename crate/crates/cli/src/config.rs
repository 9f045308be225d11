//! Sensor experiment configs in JSON.

use eulerint::sensor::{Extension, ExperimentConfig, Support, TargetScene};
use eulerint::{parse_rational, Measure, Rational};
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorConfig {
    /// `[x_min, x_max]` and `[y_min, y_max]`.
    pub x_range: [String; 2],
    pub y_range: [String; 2],
    /// Grid cells along x and y.
    pub grid: [usize; 2],
    /// Fraction of corrupted nodes.
    pub p: String,
    pub targets: Vec<Region>,
    #[serde(default)]
    pub holes: Vec<Region>,
    #[serde(default)]
    pub extension: ExtensionName,
    #[serde(default)]
    pub measure: MeasureName,
    /// First seed; `--seeds k` runs `seed_offset..seed_offset + k`.
    #[serde(default)]
    pub seed_offset: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Region {
    Disk { center: [String; 2], radius: String },
    Rect { min: [String; 2], max: [String; 2] },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionName {
    #[default]
    Pl,
    Usc,
    Lsc,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureName {
    #[default]
    Floor,
    Ceil,
    Avg,
}

fn q(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| CliError::Parse(format!("{s:?}: {e}")))
}

fn point(p: &[String; 2]) -> Result<[Rational; 2]> {
    Ok([q(&p[0])?, q(&p[1])?])
}

impl Region {
    fn support(&self) -> Result<Support> {
        Ok(match self {
            Region::Disk { center, radius } => Support::Disk { center: point(center)?, radius: q(radius)? },
            Region::Rect { min, max } => Support::Rect { min: point(min)?, max: point(max)? },
        })
    }
}

impl SensorConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn experiment(&self, seeds: usize) -> Result<ExperimentConfig> {
        let supports = |rs: &[Region]| rs.iter().map(Region::support).collect::<Result<Vec<_>>>();
        Ok(ExperimentConfig {
            scene: TargetScene { supports: supports(&self.targets)? },
            nx: self.grid[0],
            ny: self.grid[1],
            x_range: (q(&self.x_range[0])?, q(&self.x_range[1])?),
            y_range: (q(&self.y_range[0])?, q(&self.y_range[1])?),
            p: q(&self.p)?,
            holes: supports(&self.holes)?,
            seeds: (self.seed_offset..self.seed_offset + seeds as u64).collect(),
            extension: match self.extension {
                ExtensionName::Pl => Extension::Pl,
                ExtensionName::Usc => Extension::Usc,
                ExtensionName::Lsc => Extension::Lsc,
            },
            measure: match self.measure {
                MeasureName::Floor => Measure::Floor,
                MeasureName::Ceil => Measure::Ceil,
                MeasureName::Avg => Measure::Avg,
            },
        })
    }
}
