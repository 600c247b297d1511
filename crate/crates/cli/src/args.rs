use clap::{Args, Parser, Subcommand, ValueEnum};
use rankcrit::{CurveFamily, Family};

#[derive(Debug, Parser)]
#[command(name = "rankcrit", version, about = "Constant-term rank criteria for y^2 = x^3 + px and x^3 + y^3 = p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Leave the timestamp out of JSON output.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a recurrence polynomial.
    Poly(PolyArgs),
    /// Scan a prime range with the constant-term criterion.
    Criterion(CriterionArgs),
    /// Compute S_p from L(E_p, 1).
    Oracle(OracleArgs),
    /// Check the CM derivative identities numerically.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// One of f, a, x, y, z.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,

    #[arg(long, value_parser = parse_count)]
    pub n: u64,

    /// Reduce modulo this odd prime.
    #[arg(long = "mod", value_parser = parse_count)]
    pub modulus: Option<u64>,

    /// Print every row from 0 through n.
    #[arg(long)]
    pub all: bool,

    /// Print only the constant term.
    #[arg(long, conflicts_with = "all")]
    pub at_zero: bool,

    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CriterionArgs {
    /// Ep or Ap.
    #[arg(long, value_parser = parse_curve_family)]
    pub family: CurveFamily,

    /// Inclusive prime range `LO..HI`.
    #[arg(long, value_parser = parse_range)]
    pub range: (u64, u64),

    /// Worker threads; defaults to available parallelism.
    #[arg(long, value_parser = parse_count)]
    pub jobs: Option<u64>,

    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Admissible primes p ≡ 1, 9 (mod 16); repeatable.
    #[arg(long = "p", value_parser = parse_count, required = true, num_args = 1..)]
    pub primes: Vec<u64>,

    /// Target accuracy of L(E_p, 1).
    #[arg(long, value_parser = parse_real, default_value = "1e-8")]
    pub tol: f64,

    #[arg(long, value_parser = parse_count)]
    pub jobs: Option<u64>,

    /// Cache file; RANKCRIT_CACHE overrides the default location.
    #[arg(long)]
    pub cache: Option<std::path::PathBuf>,

    #[arg(long)]
    pub no_cache: bool,

    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// 3 or 5: θ₂ at i. 4 or 6: η, η³ and η(3z)³ at ω.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["3", "4", "5", "6"]))]
    pub thm: String,

    #[arg(long, value_parser = parse_count)]
    pub max_n: u64,

    #[arg(long, value_parser = parse_count, default_value = "256")]
    pub precision: u64,

    /// Largest acceptable relative error; defaults to 1e-20 at i and
    /// 1e-18 at ω.
    #[arg(long, value_parser = parse_real)]
    pub tol: Option<f64>,

    #[arg(long, value_parser = parse_count)]
    pub jobs: Option<u64>,

    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_curve_family(s: &str) -> Result<CurveFamily, String> {
    s.parse()
}

/// Nonnegative integer, written plainly or in scientific notation.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v > 9.007_199_254_740_992e15 {
        return Err(format!("`{s}` is not a nonnegative integer"));
    }
    Ok(v as u64)
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() || v <= 0.0 {
        return Err(format!("`{s}` must be a positive finite number"));
    }
    Ok(v)
}

pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("`{s}` is not a range LO..HI"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let (lo, hi) = (parse_count(lo)?, parse_count(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}
