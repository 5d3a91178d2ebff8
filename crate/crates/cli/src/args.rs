//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "sbo",
    version,
    about = "Exact symmetry breaking operators between differential forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    /// Rows i, columns j, as in the published table.
    Matrix,
    /// One line per sampled parameter point.
    Csv,
    Json,
}

/// Signature and variant of the flat space.
#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    #[arg(short = 'p', long, default_value_t = 2)]
    pub p: usize,
    #[arg(short = 'q', long, default_value_t = 2)]
    pub q: usize,
    /// `plus` (normal direction positive) or `minus`.
    #[arg(long, default_value = "plus")]
    pub variant: String,
}

/// A family member: degrees, weight and order.
#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(short = 'i', long)]
    pub i: usize,
    #[arg(short = 'j', long)]
    pub j: usize,
    /// Source weight: an exact rational or `symbolic`.
    #[arg(
        short = 'u',
        long,
        default_value = "symbolic",
        allow_hyphen_values = true
    )]
    pub u: String,
    /// Order ℓ; derived from `--v` when omitted.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Target weight; must satisfy ℓ = (v + j) − (u + i) when both are given.
    #[arg(short = 'v', long, allow_hyphen_values = true)]
    pub v: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the renormalized Gegenbauer polynomial and its ODE residual.
    Gegenbauer {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        ell: usize,
    },
    /// Build a family operator and print it as JSON.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        /// Post-compose with the Hodge star of the hyperplane.
        #[arg(long)]
        hodge: bool,
    },
    /// Apply an operator (JSON file) to a form (JSON file).
    Apply {
        #[arg(long)]
        operator: PathBuf,
        #[arg(long)]
        form: PathBuf,
    },
    /// Check covariance of a family member or of an operator file.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(short = 'i', long)]
        i: Option<usize>,
        #[arg(short = 'j', long)]
        j: Option<usize>,
        #[arg(
            short = 'u',
            long,
            default_value = "symbolic",
            allow_hyphen_values = true
        )]
        u: String,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(short = 'v', long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Verify this operator (JSON) instead of a family member.
        #[arg(long)]
        from_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify covariant operators of bounded order in one cell.
    Classify {
        #[command(flatten)]
        space: SpaceArgs,
        /// Degrees `i,j`.
        #[arg(long)]
        cell: String,
        #[arg(short = 'u', long, allow_hyphen_values = true)]
        u: String,
        #[arg(short = 'v', long, allow_hyphen_values = true)]
        v: String,
        /// Order bound L (guarded by SBO_MAX_ORDER, default 6).
        #[arg(short = 'L', long, default_value_t = 4)]
        order_bound: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reproduce the four-dimensional multiplicity table (variant plus).
    #[command(name = "table-n4")]
    TableN4 {
        /// Signature `p,q` with p + q = 4.
        #[arg(long, default_value = "2,2")]
        signature: String,
        #[arg(short = 'L', long, default_value_t = 3)]
        order_bound: u32,
        #[arg(long, value_enum, default_value = "matrix")]
        format: TableFormat,
    },
    /// Checks on the space forms.
    Spaceform {
        #[command(subcommand)]
        check: SpaceformCheck,
    },
    /// Print the conformal generators as JSON.
    #[command(name = "dump-generators")]
    DumpGenerators {
        #[command(flatten)]
        space: SpaceArgs,
        /// Only the fields tangent to the hyperplane.
        #[arg(long)]
        tangential: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpaceformCheck {
    /// Conformal factors of the chart and its inverse.
    Factor {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Twisted pullbacks invert each other at weight v.
    Inverse {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(short = 'v', long, default_value = "1", allow_hyphen_values = true)]
        v: String,
    },
    /// Phases of the holomorphic restriction table (real form R^{p,q}_−).
    Lemma61 {
        #[arg(short = 'p', long, default_value_t = 1)]
        p: usize,
        #[arg(short = 'q', long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// Restrict to one family (`i->i-1`, `i->i`, `i->i-2`, `i->i+1`).
        #[arg(long)]
        family: Option<String>,
    },
    /// Evaluate the chart Φ at a rational point.
    Chart {
        #[command(flatten)]
        space: SpaceArgs,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}
