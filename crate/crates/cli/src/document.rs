//! JSON documents: a simplicial complex plus one integrand, rationals as
//! `"p/q"` strings.

use std::collections::HashMap;
use std::sync::Arc;

use eulerint::{parse_rational, CFun, DefFun, Rational, SimplicialComplex};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: u32,
    pub complex: ComplexSection,
    pub function: FunctionSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSection {
    pub vertices: Vec<Vec<String>>,
    pub cells: Vec<Vec<usize>>,
}

/// Cells not listed in `cell_values` or `cell_affine` carry zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionSection {
    VertexValues(Vec<String>),
    CellValues(Vec<CellValue>),
    CellAffine(Vec<CellAffine>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellValue {
    pub cell: Vec<usize>,
    pub value: i64,
}

/// Limit values at the listed vertices, in the listed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellAffine {
    pub cell: Vec<usize>,
    pub values: Vec<String>,
}

/// A parsed integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integrand {
    Constructible(CFun),
    Definable(DefFun),
}

impl Integrand {
    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        match self {
            Integrand::Constructible(h) => h.complex(),
            Integrand::Definable(h) => h.complex(),
        }
    }

    /// The integrand as a definable function.
    pub fn to_deffun(&self) -> DefFun {
        match self {
            Integrand::Constructible(h) => DefFun::from_cfun(h),
            Integrand::Definable(h) => h.clone(),
        }
    }
}

fn parse_q(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse(format!("{s:?}: {e}")))
}

/// `p/q` with `q = 1` written as `p`.
pub fn format_q(q: &Rational) -> String {
    q.to_string()
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if doc.version != FORMAT_VERSION {
            return Err(CliError::Parse(format!("unsupported format version {}", doc.version)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn parse_complex(&self) -> Result<SimplicialComplex, CliError> {
        let vertices = self
            .complex
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| parse_q(x)).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        SimplicialComplex::new(vertices, self.complex.cells.clone()).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn parse(&self) -> Result<Integrand, CliError> {
        let k = Arc::new(self.parse_complex()?);
        let lookup = |cell: &[usize]| {
            let mut sorted = cell.to_vec();
            sorted.sort_unstable();
            k.find(&sorted).ok_or_else(|| CliError::Parse(format!("cell {cell:?} is not in the complex")))
        };
        let mismatch = |e: eulerint::Error| CliError::Parse(e.to_string());
        match &self.function {
            FunctionSection::VertexValues(values) => {
                let values = values.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>, _>>()?;
                Ok(Integrand::Definable(DefFun::from_vertex_values(k, values).map_err(mismatch)?))
            }
            FunctionSection::CellValues(entries) => {
                let mut values = vec![0i64; k.num_cells()];
                let mut seen = vec![false; k.num_cells()];
                for e in entries {
                    let c = lookup(&e.cell)?;
                    if std::mem::replace(&mut seen[c.index()], true) {
                        return Err(CliError::Parse(format!("cell {:?} listed twice", e.cell)));
                    }
                    values[c.index()] = e.value;
                }
                Ok(Integrand::Constructible(CFun::new(k, values).map_err(mismatch)?))
            }
            FunctionSection::CellAffine(entries) => {
                let mut data: Vec<Option<Vec<Rational>>> = vec![None; k.num_cells()];
                for e in entries {
                    let c = lookup(&e.cell)?;
                    if e.values.len() != e.cell.len() {
                        return Err(CliError::Parse(format!("cell {:?} needs {} values", e.cell, e.cell.len())));
                    }
                    let by_vertex: HashMap<usize, Rational> = e
                        .cell
                        .iter()
                        .zip(&e.values)
                        .map(|(&v, x)| Ok((v, parse_q(x)?)))
                        .collect::<Result<_, CliError>>()?;
                    let row = k.cell(c).vertices().iter().map(|v| by_vertex[v].clone()).collect();
                    if data[c.index()].replace(row).is_some() {
                        return Err(CliError::Parse(format!("cell {:?} listed twice", e.cell)));
                    }
                }
                let data = data
                    .into_iter()
                    .zip(k.cells())
                    .map(|(row, cell)| row.unwrap_or_else(|| vec![Rational::zero(); cell.dim() + 1]))
                    .collect();
                Ok(Integrand::Definable(DefFun::new(k, data).map_err(mismatch)?))
            }
        }
    }

    fn complex_section(k: &SimplicialComplex) -> ComplexSection {
        ComplexSection {
            vertices: k.all_coords().iter().map(|p| p.iter().map(format_q).collect()).collect(),
            cells: k.maximal_cells().map(|c| k.cell(c).vertices().to_vec()).collect(),
        }
    }

    pub fn from_cfun(h: &CFun) -> Self {
        let k = h.complex();
        let entries = k
            .cell_ids()
            .zip(h.values())
            .filter(|(_, &v)| v != 0)
            .map(|(c, &value)| CellValue { cell: k.cell(c).vertices().to_vec(), value })
            .collect();
        Document {
            version: FORMAT_VERSION,
            complex: Self::complex_section(k),
            function: FunctionSection::CellValues(entries),
        }
    }

    /// Continuous integrands are written as vertex values, everything else
    /// cell by cell.
    pub fn from_deffun(h: &DefFun) -> Self {
        let k = h.complex();
        let function = if h.is_continuous() {
            FunctionSection::VertexValues(h.vertex_values().iter().map(format_q).collect())
        } else {
            FunctionSection::CellAffine(
                k.cell_ids()
                    .filter(|&c| h.data(c).iter().any(|x| !x.is_zero()))
                    .map(|c| CellAffine {
                        cell: k.cell(c).vertices().to_vec(),
                        values: h.data(c).iter().map(format_q).collect(),
                    })
                    .collect(),
            )
        };
        Document { version: FORMAT_VERSION, complex: Self::complex_section(k), function }
    }

    pub fn from_integrand(h: &Integrand) -> Self {
        match h {
            Integrand::Constructible(h) => Self::from_cfun(h),
            Integrand::Definable(h) => Self::from_deffun(h),
        }
    }
}
