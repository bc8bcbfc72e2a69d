use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "quartic", version, about = "Desk-scale laboratory for primes of the form (a^2 + b^4)/c")]
pub struct Cli {
    /// Worker threads for lattice enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest accepted c·x for lattice enumeration.
    #[arg(long, global = true, default_value_t = quartic_core::sequence::DEFAULT_ENUMERATION_BOUND)]
    pub budget: u64,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// G(c), H(c), kappa and the main-term coefficient.
    Constant {
        #[arg(long)]
        c: u64,
    },
    /// Writes the counts a(c)_n, n <= x, as CSV.
    Tally {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        x: u64,
        /// Output file; relative paths resolve against QUARTIC_OUT_DIR when set.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric audit of the sieve hypotheses.
    Audit(AuditArgs),
    /// Primes n <= x with a(c)_n > 0, one per line.
    Primes {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        x: u64,
    },
    /// Congruence constructions.
    #[command(subcommand)]
    Congruence(CongruenceCmd),
    /// Runs an invariant suite: rho, g, G, sequence, sieve, congruence or all.
    Verify { suite: String },
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub c: u64,
    #[arg(long)]
    pub x: u64,
    #[arg(long = "D")]
    pub big_d: Option<u64>,
    #[arg(long = "K")]
    pub k: Option<u64>,
    #[arg(long = "N")]
    pub n: Option<u64>,
    #[arg(long = "P")]
    pub p: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum CongruenceCmd {
    /// Smallest p = 3 mod 4 with 2^(ell+4) - p prime (or semiprime).
    Chen {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        semiprime: bool,
    },
    /// Frey curve invariants for 2^(ell+4) = p + q.
    Frey {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Trace of Frobenius of y^2 = x^3 + a2 x^2 + a4 x + a6.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        a2: i128,
        #[arg(long, allow_hyphen_values = true)]
        a4: i128,
        #[arg(long, allow_hyphen_values = true)]
        a6: i128,
        #[arg(long)]
        p: u64,
    },
    /// Lower bound for the coefficient-field degree.
    Degree {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        q: u64,
    },
    /// Numerator of (p - 1)(q + 1)/24.
    Ogg {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Prime levels for the Eisenstein congruences.
    Eisenstein {
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 1)]
        t: u8,
    },
    /// Solutions of A^4 + B^2 = 5^ell p.
    Quartic {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        bound: u64,
    },
    /// The Q-curve y^2 = x^3 + 4A x^2 + 2(A^2 + iB) x.
    Qcurve {
        #[arg(long = "A")]
        a: u64,
        #[arg(long = "B")]
        b: u64,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        p: u64,
    },
}
