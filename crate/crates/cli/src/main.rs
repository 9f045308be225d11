use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eulerint_cli::commands::{
    integrate_cmd, parse_xi, read_document, sensor_cmd, transform_cmd, MeasureArg, Method, TransformOp,
    TransformOutput,
};
use eulerint_cli::config::SensorConfig;
use eulerint_cli::document::format_q;
use eulerint::to_f64;
use eulerint_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "eulerint", version, about = "Euler integration of definable functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureFlag {
    Floor,
    Ceil,
    Avg,
    Dchi,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpFlag {
    Dual,
    Link,
    Width,
    Centroid,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the function in a document.
    Integrate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "floor")]
        measure: MeasureFlag,
        /// closed, levelset, riemann:N, morse, betti0 or pushline
        #[arg(long, default_value = "closed")]
        method: Method,
    },
    /// Dual, link, or an inner-product kernel transform.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: OpFlag,
        /// Direction `a,b`; repeat for several.
        #[arg(long)]
        xi: Vec<String>,
        /// Where to write a document result; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the target-counting experiment.
    Sensor {
        config: PathBuf,
        #[arg(long, default_value_t = 30)]
        seeds: usize,
        #[arg(long, default_value = "report.csv")]
        out: PathBuf,
        /// Directory for PGM fields and the network SVG.
        #[arg(long)]
        render: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Integrate { file, measure, method } => {
            let h = read_document(&file)?;
            let measure = match measure {
                MeasureFlag::Floor => MeasureArg::Floor,
                MeasureFlag::Ceil => MeasureArg::Ceil,
                MeasureFlag::Avg => MeasureArg::Avg,
                MeasureFlag::Dchi => MeasureArg::Dchi,
            };
            Ok(integrate_cmd(&h, measure, method)?.to_string())
        }
        Command::Transform { file, op, xi, out } => {
            let h = read_document(&file)?;
            let op = match op {
                OpFlag::Dual => TransformOp::Dual,
                OpFlag::Link => TransformOp::Link,
                OpFlag::Width => TransformOp::Width,
                OpFlag::Centroid => TransformOp::Centroid,
            };
            let xis = xi.iter().map(|s| parse_xi(s)).collect::<Result<Vec<_>>>()?;
            match transform_cmd(&h, op, &xis)? {
                TransformOutput::Document(doc) => match out {
                    Some(path) => {
                        std::fs::write(&path, doc.to_json())?;
                        Ok(String::new())
                    }
                    None => Ok(doc.to_json()),
                },
                TransformOutput::Values(values) => {
                    Ok(values.iter().map(|v| format_q(v) + "\n").collect())
                }
            }
        }
        Command::Sensor { config, seeds, out, render } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Parse(format!("{}: {e}", config.display())))?;
            let report = sensor_cmd(&SensorConfig::from_json(&text)?, seeds, &out, render.as_deref())?;
            Ok(format!(
                "median raw estimate {:.4}, median smoothed estimate {:.4}\n",
                to_f64(&report.median_raw_estimate),
                to_f64(&report.median_smoothed_estimate)
            ))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("eulerint: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
