//! `combmetric`: convert, sample, verify and draw combs.
//!
//! Exit codes: 0 on success, 1 for usage, parse and I/O errors, 2 when the
//! input is well formed but violates a mathematical precondition.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod plot;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Precision;

#[derive(Debug, Parser)]
#[command(name = "combmetric", version, about = "Comb representations of ultrametric spaces")]
struct Cli {
    /// Significant digits of decimal output, or `full` for the shortest form
    /// that reads back exactly.
    #[arg(long, global = true, default_value = "12", value_parser = output::parse_precision)]
    precision: Precision,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order the points of an ultrametric matrix and build their comb.
    Order {
        /// Matrix CSV: n rows of n distances, optional `masses,...` row.
        matrix: PathBuf,
        /// Comb file to write instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the point order, one matrix index per line.
        #[arg(long)]
        order_out: Option<PathBuf>,
    },
    /// Distance matrix between points of a comb.
    Dist(DistArgs),
    /// Sample a random comb.
    Sample {
        #[command(subcommand)]
        kind: SampleKind,
    },
    /// Comb of the sphere of a tree contour at a level.
    Sphere {
        /// Contour CSV: `time,value_left_limit,value` rows.
        contour: PathBuf,
        /// Level `T` of the sphere.
        #[arg(long)]
        level: f64,
        /// Keep only teeth deeper than this.
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the excursions as `g,d,depth` rows.
        #[arg(long)]
        excursions: Option<PathBuf>,
        /// Write the corners of the local-time staircase as `x,value` rows.
        #[arg(long)]
        staircase: Option<PathBuf>,
    },
    /// Exact p-adic queries; rationals are written `a/b`.
    Padic {
        /// Prime base.
        p: u32,
        #[command(subcommand)]
        query: PadicQuery,
    },
    /// Draw a comb or a contour as SVG.
    Plot {
        /// Comb file or contour CSV.
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Overlay the tree of the comb.
        #[arg(long)]
        dendrogram: bool,
        /// Draw a horizontal line at this level on a contour.
        #[arg(long)]
        level: Option<f64>,
    },
    /// Check a comb, matrix, contour or sample file.
    Verify {
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
struct DistArgs {
    /// Comb file.
    comb: PathBuf,
    /// Points as `x`, `x:l` or `x:r` (left or right face of a tooth).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    at: Vec<String>,
    /// File with one point per line, in the same notation.
    #[arg(long)]
    positions: Option<PathBuf>,
    /// Point order written by `order`: point `i` sits at its rank plus 1/2.
    #[arg(long, conflicts_with_all = ["at", "positions"])]
    order: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum SampleKind {
    /// Kingman comb truncated at `n` lineages, on [0, 1].
    Kingman {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Coalescent point process with the Brownian intensity `dh / 2h^2`.
    Cpp {
        #[arg(long)]
        level: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// i.i.d. excursion depths of a splitting tree with exponential lifetimes.
    Splitting {
        #[arg(long)]
        level: f64,
        #[arg(long)]
        birth_rate: f64,
        #[arg(long)]
        lifetime_mean: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum PadicQuery {
    /// `d_p(a, b)`.
    Dist {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// `v_p(q)`.
    Val {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Image of `q` in the comb `F_p`, as `<position> <face>`.
    Chi {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// The rational at a face (`l`, `r` or `i`) of a position of `F_p`.
    ChiInv { t: String, face: String },
    /// Both faces of a tooth of `F_p`, and their difference.
    Gap { t: String },
    /// Base-p expansion of a position, in digit-string notation.
    Expand { t: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(output::exit_code(&e))
        }
    }
}
