mod args;
mod cache;
mod output;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rankcrit::lseries::sp;
use rankcrit::maass::{thm5_reports, thm6_reports};
use rankcrit::polyring::{CoefficientRing, Polynomial};
use rankcrit::recurrences::{generate, generate_all, generate_exact};
use rankcrit::{scan, CriterionVerdict, Error, Family, Integers, LValueReport, MsDerivativeReport, Precision, Residues};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use args::{Cli, Command, CriterionArgs, OracleArgs, PolyArgs, VerifyArgs};
use cache::Cache;
use output::emit;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    /// Output was written but a check did not hold.
    CrossCheck(String),
    NonConvergence(String),
    Io(std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Domain(Error::CrossCheck(_)) | Failure::CrossCheck(_) => 2,
            Failure::Domain(Error::NonConvergence(_)) | Failure::NonConvergence(_) => 3,
            Failure::Domain(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::CrossCheck(m) | Failure::NonConvergence(m) => write!(f, "{m}"),
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Poly(a) => poly(&mut out, a, &cli),
        Command::Criterion(a) => criterion(&mut out, a, &cli),
        Command::Oracle(a) => oracle(&mut out, a, &cli),
        Command::Verify(a) => verify(&mut out, a, &cli),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe is not an error
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn pool(jobs: Option<u64>) -> Result<rayon::ThreadPool, Failure> {
    let n = match jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => usize::try_from(j).map_err(|_| Failure::Usage("--jobs is too large".into()))?,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Failure::Usage(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
struct PolyRecord {
    family: String,
    n: u64,
    modulus: Option<u64>,
    value: String,
}

fn render<R: CoefficientRing>(polys: Vec<Polynomial<R>>, at_zero: bool) -> Vec<String> {
    polys
        .into_iter()
        .map(|q| if at_zero { q.ring().to_coefficient(&q.constant_term()).to_string() } else { q.to_string() })
        .collect()
}

fn rows<R: CoefficientRing>(family: Family, n: u64, all: bool, ring: &R) -> rankcrit::Result<Vec<Polynomial<R>>> {
    if all {
        generate_all(family, n, ring)
    } else {
        Ok(vec![generate(family, n, ring)?])
    }
}

fn poly(out: &mut impl Write, a: &PolyArgs, cli: &Cli) -> Result<(), Failure> {
    let values = match a.modulus {
        Some(p) => render(rows(a.family, a.n, a.all, &Residues::new(p)?)?, a.at_zero),
        None if a.family == Family::Z => {
            let polys = if a.all {
                (0..=a.n).map(|i| generate_exact(a.family, i)).collect::<rankcrit::Result<_>>()?
            } else {
                vec![generate_exact(a.family, a.n)?]
            };
            render(polys, a.at_zero)
        }
        None => render(rows(a.family, a.n, a.all, &Integers)?, a.at_zero),
    };
    let first = if a.all { 0 } else { a.n };
    let records: Vec<PolyRecord> = values
        .into_iter()
        .enumerate()
        .map(|(i, value)| PolyRecord { family: a.family.to_string(), n: first + i as u64, modulus: a.modulus, value })
        .collect();
    let labelled = a.all;
    let suffix = if a.at_zero { "(0)" } else { "" };
    emit(out, a.format, "poly", &records, !cli.no_timestamp, |r| {
        if labelled {
            format!("{}_{}{suffix} = {}", r.family, r.n, r.value)
        } else {
            r.value.clone()
        }
    })?;
    Ok(())
}

fn criterion(out: &mut impl Write, a: &CriterionArgs, cli: &Cli) -> Result<(), Failure> {
    let pool = pool(a.jobs)?;
    let threads = pool.current_num_threads();
    let (lo, hi) = a.range;
    let verdicts: Vec<CriterionVerdict> = scan(a.family, lo, hi, threads)?;
    emit(out, a.format, "criterion", &verdicts, !cli.no_timestamp, |v| {
        format!(
            "p = {:>6}  {}  {:>9} mod p = {:<6}  divisible = {:<5}  rank = {}",
            v.p,
            v.family,
            format!("{}_{}(0)", v.recurrence, v.index),
            v.residue,
            v.divisible,
            v.predicted_rank_bsd
        )
    })?;
    Ok(())
}

fn oracle(out: &mut impl Write, a: &OracleArgs, cli: &Cli) -> Result<(), Failure> {
    let pool = pool(a.jobs)?;
    let mut cache = match (a.no_cache, cache::resolve(a.cache.as_deref())) {
        (false, Some(path)) => Some(Cache::open(path)),
        _ => None,
    };
    let keys: Vec<String> = a.primes.iter().map(|&p| cache::oracle_key(p, a.tol)).collect();
    let cached: Vec<Option<LValueReport>> =
        keys.iter().map(|k| cache.as_ref().and_then(|c| c.get(k)).cloned()).collect();
    let fresh: Vec<rankcrit::Result<Option<LValueReport>>> = pool.install(|| {
        a.primes
            .par_iter()
            .zip(&cached)
            .map(|(&p, hit)| if hit.is_some() { Ok(None) } else { sp(p, a.tol).map(Some) })
            .collect()
    });
    let mut reports = Vec::with_capacity(a.primes.len());
    for ((hit, computed), key) in cached.into_iter().zip(fresh).zip(keys) {
        let report = match (hit, computed?) {
            (Some(r), _) => r,
            (None, Some(r)) => {
                if let (Some(c), true) = (cache.as_mut(), r.converged) {
                    c.put(key, r.clone());
                }
                r
            }
            (None, None) => unreachable!(),
        };
        reports.push(report);
    }
    emit(out, a.format, "oracle", &reports, !cli.no_timestamp, |r| {
        format!(
            "p = {:>6}  N = {:<10}  L(1) = {:<22.15e}  S_p = {:<18.10}  ~ {:<4}  terms = {:<6}  {}",
            r.p,
            r.conductor,
            r.l1,
            r.sp_real,
            r.sp_rounded,
            r.terms,
            if r.converged { "ok" } else { "NOT CONVERGED" }
        )
    })?;
    let bad: Vec<String> = reports.iter().filter(|r| !r.converged).map(|r| r.p.to_string()).collect();
    if !bad.is_empty() {
        return Err(Failure::NonConvergence(format!("S_p not within tolerance of an integer for p = {}", bad.join(", "))));
    }
    Ok(())
}

/// One verification report as a flat record.
#[derive(Debug, Serialize, Deserialize)]
struct VerifyRecord {
    case: String,
    series: String,
    n: u64,
    k: u64,
    order: u32,
    recurrence_term: String,
    recurrence_constant: String,
    numeric: String,
    predicted: String,
    relative_error: f64,
    vanishing: bool,
    precision_bits: u32,
    constants: String,
    pass: bool,
}

impl VerifyRecord {
    fn new(r: MsDerivativeReport, tol: f64) -> Self {
        let pass = r.within(tol);
        VerifyRecord {
            case: r.case,
            series: r.series.to_string(),
            n: r.n,
            k: r.k,
            order: r.order,
            recurrence_term: r.recurrence_term,
            recurrence_constant: r.recurrence_constant,
            numeric: r.numeric,
            predicted: r.predicted,
            relative_error: r.relative_error,
            vanishing: r.vanishing,
            precision_bits: r.precision_bits,
            constants: r.constants.join(";"),
            pass,
        }
    }
}

fn verify(out: &mut impl Write, a: &VerifyArgs, cli: &Cli) -> Result<(), Failure> {
    let bits = u32::try_from(a.precision).map_err(|_| Failure::Usage("--precision is too large".into()))?;
    let prec = Precision::new(bits)?;
    let at_i = matches!(a.thm.as_str(), "3" | "5");
    let tol = a.tol.unwrap_or(if at_i { 1e-20 } else { 1e-18 });
    let pool = pool(a.jobs)?;
    let reports = pool.install(|| if at_i { thm5_reports(a.max_n, prec) } else { thm6_reports(a.max_n, prec) })?;
    let records: Vec<VerifyRecord> = reports.into_iter().map(|r| VerifyRecord::new(r, tol)).collect();
    emit(out, a.format, "verify", &records, !cli.no_timestamp, |r| {
        format!(
            "{:<16} {:<10} N = {:<3} k = {:<4} order = {:<3} {:>9} = {:<12} rel.err = {:<10.3e} {}",
            r.case,
            r.series,
            r.n,
            r.k,
            r.order,
            r.recurrence_term,
            r.recurrence_constant,
            r.relative_error,
            if r.pass { "PASS" } else { "FAIL" }
        )
    })?;
    let failed: Vec<String> = records.iter().filter(|r| !r.pass).map(|r| format!("{} N = {}", r.case, r.n)).collect();
    if !failed.is_empty() {
        return Err(Failure::CrossCheck(format!("relative error above {tol:e} for {}", failed.join(", "))));
    }
    Ok(())
}
