use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exact and modular power-series analysis.
#[derive(Debug, Parser)]
#[command(name = "modseries", version)]
pub struct Cli {
    /// Print a machine-readable verdict on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a series.
    #[command(subcommand)]
    Gen(Gen),
    /// Reduce an exact series modulo m.
    Reduce {
        #[arg(long = "mod")]
        modulus: u64,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Guess an operator, relation or identity from a series.
    #[command(subcommand)]
    Guess(Guess),
    /// Check a candidate against a series.
    #[command(subcommand)]
    Verify(Verify),
    /// Classify the p-curvature of a mod-p operator.
    Pcurv {
        operator: PathBuf,
        /// Exit 1 unless the p-curvature vanishes.
        #[arg(long)]
        require_zero: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact Hermite-Padé fit of a rational operator, with its singularities.
    Diffpade {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        degree: usize,
        /// Coefficients used; defaults to the square system.
        #[arg(long)]
        n_use: Option<usize>,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Diagnostics on series and operators.
    #[command(subcommand)]
    Report(Report),
}

#[derive(Debug, Args)]
pub struct Out {
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// Tutte's series H(w); --q accepts a rational or the letter q.
    Tutte {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: usize,
        /// Emit S = H / (12 w^2) instead (q = 4 only).
        #[arg(long)]
        normalized: bool,
        /// Emit H + w.
        #[arg(long, conflicts_with = "normalized")]
        plus_w: bool,
        #[command(flatten)]
        out: Out,
    },
    /// A generalized hypergeometric series.
    Hypergeom {
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        lower: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        scale: i64,
        #[arg(long)]
        n: usize,
        /// Stream residues modulo m instead of exact coefficients.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[command(flatten)]
        out: Out,
    },
    /// The integral ratio of two 2F1 series.
    #[command(name = "ratio-2f1")]
    Ratio2F1 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// The complementary period y0.
    #[command(name = "period-y0")]
    PeriodY0 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Subcommand)]
pub enum Guess {
    /// Linear differential operator mod p. A fixed --order/--degree pair
    /// takes precedence over the search budget.
    Ode {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 50)]
        guard: usize,
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Polynomial relation P(w, S) = 0 mod m.
    Rel {
        #[arg(long)]
        deg_s: Option<usize>,
        #[arg(long)]
        deg_w: Option<usize>,
        #[arg(long, default_value_t = 400)]
        max_unknowns: usize,
        #[arg(long, default_value_t = 50)]
        guard: usize,
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Relation sum a_i(x) S^(p^i) + b(x) = 0 mod p.
    Frobenius {
        #[arg(long, default_value_t = 3)]
        i_max: u32,
        #[arg(long, default_value_t = 4)]
        deg: usize,
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Fit target = w^j (poly + sum g L^e) over Z/m.
    Lacunary {
        #[arg(long, default_value_t = 2)]
        poly_degree: usize,
        /// Comma-separated KIND^POWER list, e.g. L2^1,L2^2,L3^1.
        #[arg(long)]
        lacunary: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        prefactor: i64,
        target: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Bivariate relation JSON against a reduced series.
    Rel { relation: PathBuf, input: PathBuf },
    /// Linear operator JSON: a mod-p operator on a reduced series, a rational one on an exact series.
    #[command(name = "ode-linear")]
    OdeLinear { operator: PathBuf, input: PathBuf },
    /// Non-linear equation residual.
    Node {
        /// tutte, tutte-q4-reduced, ratio-2f1, autonomous-q4 or schwarzian.
        #[arg(long)]
        ode: Option<String>,
        /// Equation given as term-list JSON instead of by name.
        #[arg(long, conflicts_with = "ode")]
        ode_file: Option<PathBuf>,
        #[arg(long)]
        q: Option<String>,
        /// Order for the Schwarzian check, which needs no input file.
        #[arg(long)]
        n: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Lacunary expression JSON against a reduced target.
    Lacunary {
        expr: PathBuf,
        target: PathBuf,
        /// Exact series for terms with basis S.
        #[arg(long)]
        subject: Option<PathBuf>,
    },
    /// s^e * den == num to the series order.
    #[command(name = "power-identity")]
    PowerIdentity {
        #[arg(long)]
        e: u64,
        /// Comma-separated ascending coefficients.
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        den: String,
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum Report {
    /// Growth rate from the coefficient window [from, to].
    Growth {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        input: PathBuf,
    },
    /// Singularities and local exponents of a rational operator.
    Singularities { operator: PathBuf },
    /// Whether a rescaling clears all denominators.
    Integrality {
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        input: PathBuf,
    },
    /// Smallest e with s^-e mod p a polynomial.
    Truncation {
        #[arg(long)]
        e_max: Option<u64>,
        #[arg(long, default_value = "series")]
        id: String,
        input: PathBuf,
    },
    /// s^p against s(x^p) and the head of s^p - 1.
    Frobenius {
        #[arg(long, default_value_t = 4)]
        head: usize,
        input: PathBuf,
    },
    /// Low coefficients of s^M - 1 for the Calabi-Yau 4F3 series.
    #[command(name = "power-pattern")]
    PowerPattern {
        #[arg(long, default_value = "1,2,3,4,5")]
        m: String,
        input: PathBuf,
    },
    /// Fit/holdout test over all budgets (Q+1)(D+1) <= max-unknowns.
    Holonomy {
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        #[arg(long, default_value_t = 2000)]
        max_unknowns: usize,
        #[arg(long, default_value_t = 2000)]
        n_use: usize,
        #[arg(long, default_value_t = 500)]
        holdout: usize,
        input: PathBuf,
    },
}
