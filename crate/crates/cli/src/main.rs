//! `hyperspace`: exact Hausdorff-metric computations on polyhedra stored as
//! JSON files.

mod commands;
mod error;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::output::Output;

#[derive(Parser)]
#[command(name = "hyperspace", version, about = "Exact hyperspace calculus for convex polyhedra under the sup norm")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the result to a file instead of standard output.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Verb {
    /// Homeomorphism type of the component containing the set.
    Classify { file: PathBuf },
    /// Hausdorff distance with witness point and separating functional.
    Hausdorff { a: PathBuf, b: PathBuf },
    /// Support value sup f(P).
    Support {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "v1,v2,...")]
        dir: String,
    },
    /// Sup-norm distance from a point to the set.
    Dist {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "v1,v2,...")]
        point: String,
    },
    /// Both representations in canonical form.
    Convert { file: PathBuf },
    /// Minkowski sum.
    Sum { a: PathBuf, b: PathBuf },
    /// Closed convex hull of the union.
    Hull { a: PathBuf, b: PathBuf },
    /// Scalar multiple rP.
    Scale {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "p/q")]
        r: String,
    },
    /// Convex combination (1 - t)A + tB.
    Combine {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "p/q")]
        t: String,
    },
    /// Translate by a vector.
    Translate {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "v1,v2,...")]
        dir: String,
    },
    /// Image in the quotient by a subspace of the lineality space.
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        subspace: PathBuf,
    },
    /// Characteristic (recession) cone.
    Recession { file: PathBuf },
    /// Generators of the dual characteristic cone.
    DualCone { file: PathBuf },
    /// Check that the characteristic cone is the polar of the dual cone.
    Lemma31 { file: PathBuf },
    /// Metric identities of sum, hull, scaling and convex combination.
    Prop42 {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        a2: PathBuf,
        b2: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "p/q", default_value = "1")]
        r: String,
        #[arg(long, allow_hyphen_values = true, value_name = "p/q", default_value = "0")]
        t: String,
        #[arg(long, allow_hyphen_values = true, value_name = "p/q", default_value = "1")]
        t2: String,
    },
    /// Separated sequence C_n near a pointed cone.
    Witness {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "p/q", default_value = "1/2")]
        eps: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Simplices conv{e_i : i in A}, pairwise at distance >= 1.
    Biorth {
        #[arg(long)]
        n: usize,
        /// Subsets as `1,2;2,3`; all nonempty subsets by default.
        #[arg(long)]
        subsets: Option<String>,
    },
    /// Run every exact invariant check on the inputs.
    VerifyAll {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(out: &Output, common: &Common) -> Result<(), CliError> {
    let text = if common.json { format!("{}\n", serde_json::to_string_pretty(&out.json).unwrap()) } else { out.table.clone() };
    match &common.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli.verb).and_then(|out| emit(&out, &cli.common).map(|()| out.success));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
