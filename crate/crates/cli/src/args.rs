use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ncball", version, about = "Computations on the noncommutative unit ball")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Truncation degree.
    #[arg(short = 'N', long = "degree", global = true, default_value_t = 10)]
    pub degree: usize,
    /// Witness scale in (0, 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    pub t: f64,
    /// Relative tolerance for feasibility tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Number of sample points for sampled bounds and checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    /// Seed for sampled bounds and checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Append a run record (one JSON document per line) to this file.
    #[arg(long, global = true)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a polynomial at a matrix tuple.
    Eval {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        tuple: String,
    },
    /// Multiplier norm of a polynomial, optionally modulo an ideal.
    Norm {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Truncated Szegő kernel function K_{W,v,y}.
    Kernel {
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        y: String,
    },
    /// Graded dimensions and an orthonormal basis of an ideal at degree N.
    IdealBasis {
        #[arg(long)]
        ideal: String,
    },
    /// Membership of a homogeneous polynomial in an ideal.
    IdealMember {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Nullstellensatz witness for a non-member.
    Witness {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Pick interpolation feasibility.
    PickCheck {
        #[arg(long)]
        problem: String,
    },
    /// Apply a ball automorphism to a tuple.
    Mobius {
        #[arg(long)]
        automorphism: String,
        #[arg(long)]
        tuple: String,
    },
    /// Matrix span of a set of tuples.
    Span {
        #[arg(long = "tuple", required = true)]
        tuples: Vec<String>,
    },
    /// Verify that a unitary carries one ideal onto another up to degree N.
    Equiv {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        ideal2: String,
        #[arg(long)]
        unitary: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Norm { .. } => "norm",
            Command::Kernel { .. } => "kernel",
            Command::IdealBasis { .. } => "ideal-basis",
            Command::IdealMember { .. } => "ideal-member",
            Command::Witness { .. } => "witness",
            Command::PickCheck { .. } => "pick-check",
            Command::Mobius { .. } => "mobius",
            Command::Span { .. } => "span",
            Command::Equiv { .. } => "equiv",
        }
    }
}
