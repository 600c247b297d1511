//! Numerical oracle for `L(E, 1)` built from point counts.
//!
//! With root number +1 the functional equation gives the rapidly convergent
//!
//! ```text
//! L(E, 1) = 2 Σ_{n≥1} (a_n / n) exp(−2πn/√N)
//! ```
//!
//! and for `E_p: y² = x³ + px` the normalized value is
//! `S_p = 2 p^{1/4} L(E_p, 1) / Ω_E`, expected to be a square integer.

mod tate;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Serialize};

pub use tate::{local_data, Kodaira, LocalData, Reduction, Weierstrass};

use crate::criteria::{admissible, CurveFamily};
use crate::error::{Error, Result};
use crate::maass::{omega_e, Precision};
use crate::primes::{is_prime, jacobi, pow_mod, primes_in, smallest_prime_factors};
use crate::recurrences::{constant_term_mod, Family};

/// `y² = x³ + A·x + B`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub a: Integer,
    pub b: Integer,
}

impl CurveSpec {
    pub fn new(a: Integer, b: Integer) -> Result<Self> {
        let c = Self { a, b };
        if c.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(c)
    }

    /// `E_p: y² = x³ + p·x`
    pub fn e_p(p: u64) -> Self {
        Self { a: Integer::from(p), b: Integer::new() }
    }

    /// `x³ + y³ = p` in the model `y² = x³ − 432p²`.
    pub fn a_p(p: u64) -> Self {
        Self { a: Integer::new(), b: -432 * Integer::from(p).pow(2u32) }
    }

    /// `−16(4A³ + 27B²)`
    pub fn discriminant(&self) -> Integer {
        let a3 = Integer::from(self.a.clone().pow(3u32));
        let b2 = Integer::from(&self.b * &self.b);
        -16 * (4 * a3 + 27 * b2)
    }

    pub fn weierstrass(&self) -> Weierstrass {
        Weierstrass::short(&self.a, &self.b)
    }

    /// Primes dividing `2·disc`, by trial division with a primality check
    /// on the cofactor.
    pub fn bad_prime_candidates(&self) -> Result<Vec<u64>> {
        let mut n: Integer = Integer::from(self.discriminant().abs_ref()) * 2;
        let mut out = Vec::new();
        for q in primes_in(2, 1_000_000) {
            if Integer::from(q) * q > n {
                break;
            }
            if n.is_divisible_u(q as u32) {
                out.push(q);
                while n.is_divisible_u(q as u32) {
                    n /= q as u32;
                }
            }
        }
        if n > 1 {
            match n.to_u64() {
                Some(r) if is_prime(r) => out.push(r),
                _ => return Err(Error::Factorization(n.to_string())),
            }
        }
        Ok(out)
    }

    fn reduce(&self, q: u64) -> (u64, u64) {
        let m = Integer::from(q);
        let r = |v: &Integer| {
            let mut x = Integer::from(v % &m);
            if x.is_negative() {
                x += &m;
            }
            x.to_u64().unwrap()
        };
        (r(&self.a), r(&self.b))
    }
}

/// Trace of Frobenius at an odd prime `q ∤ disc`.
pub fn ap(curve: &CurveSpec, q: u64) -> Result<i64> {
    if q == 2 || !is_prime(q) || curve.discriminant().is_divisible(&Integer::from(q)) {
        return Err(Error::BadReduction(q));
    }
    let (a, b) = curve.reduce(q);
    let mut s = 0i64;
    for x in 0..q {
        let x2 = x as u128 * x as u128 % q as u128;
        let v = ((x2 * x as u128) + a as u128 * x as u128 + b as u128) % q as u128;
        s += jacobi(v as i64, q) as i64;
    }
    Ok(-s)
}

/// Conductor with its local factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conductor {
    pub value: Integer,
    /// One entry per prime dividing `2·disc`, including ones where the
    /// short model is merely non-minimal.
    pub local: Vec<LocalData>,
}

impl Conductor {
    pub fn exponent(&self, q: u64) -> u32 {
        self.local.iter().find(|d| d.prime == q).map_or(0, |d| d.conductor_exponent)
    }

    fn data(&self, q: u64) -> Option<&LocalData> {
        self.local.iter().find(|d| d.prime == q)
    }
}

pub fn conductor(curve: &CurveSpec) -> Result<Conductor> {
    let w = curve.weierstrass();
    let mut value = Integer::from(1);
    let mut local = Vec::new();
    for q in curve.bad_prime_candidates()? {
        let d = local_data(&w, q)?;
        value *= Integer::from(q).pow(d.conductor_exponent);
        local.push(d);
    }
    Ok(Conductor { value, local })
}

/// `a_q` at any prime, using the local data where the short model is bad.
fn trace_at(curve: &CurveSpec, cond: &Conductor, q: u64) -> Result<i64> {
    match cond.data(q) {
        None => ap(curve, q),
        Some(d) => Ok(match d.reduction {
            Reduction::Good => q as i64 + 1 - d.minimal_model.count_points(q) as i64,
            Reduction::SplitMultiplicative => 1,
            Reduction::NonSplitMultiplicative => -1,
            Reduction::Additive => 0,
        }),
    }
}

fn fill_an(m: usize, cond: &Conductor, traces: &[(u64, i64)]) -> Vec<i64> {
    let mut a = vec![0i64; m + 1];
    if m == 0 {
        return a;
    }
    a[1] = 1;
    let spf = smallest_prime_factors(m);
    let trace = |q: u64| traces.binary_search_by_key(&q, |t| t.0).map(|i| traces[i].1).unwrap();
    for n in 2..=m {
        let q = spf[n] as usize;
        let mut rest = n;
        let mut qe = 1;
        while rest % q == 0 {
            rest /= q;
            qe *= q;
        }
        a[n] = if rest > 1 {
            a[qe] * a[rest]
        } else if qe == q {
            trace(q as u64)
        } else if cond.exponent(q as u64) > 0 {
            a[q] * a[n / q]
        } else {
            a[q] * a[n / q] - q as i64 * a[n / q / q]
        };
    }
    a
}

/// `[0, a_1, ..., a_M]`; index `n` holds `a_n`.
pub fn an_list(curve: &CurveSpec, m: usize) -> Result<Vec<i64>> {
    let cond = conductor(curve)?;
    an_list_with(curve, &cond, m)
}

fn an_list_with(curve: &CurveSpec, cond: &Conductor, m: usize) -> Result<Vec<i64>> {
    Ok(fill_an(m, cond, &prime_traces(curve, cond, m)?))
}

/// `(q, a_q)` for every prime `q ≤ m`, computed in parallel.
fn prime_traces(curve: &CurveSpec, cond: &Conductor, m: usize) -> Result<Vec<(u64, i64)>> {
    primes_in(2, m.max(2) as u64)
        .par_iter()
        .map(|&q| trace_at(curve, cond, q).map(|t| (q, t)))
        .collect()
}

/// A truncated central value with its certified tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralValue {
    pub value: f64,
    pub terms: u64,
    pub tail_bound: f64,
}

/// Smallest `M` with `4 e^{−c(M+1)} / (1 − e^{−c}) < tol`, where
/// `c = 2π/√N`. Uses `|a_n|/n ≤ d(n)/√n ≤ 2`.
fn truncation(n_cond: f64, tol: f64) -> (u64, f64) {
    let c = 2.0 * std::f64::consts::PI / n_cond.sqrt();
    let denom = -(-c).exp_m1();
    let bound = |m: u64| 4.0 * (-c * (m as f64 + 1.0)).exp() / denom;
    let mut m = ((4.0 / (tol * denom)).ln() / c).max(1.0) as u64;
    while m > 1 && bound(m - 1) < tol {
        m -= 1;
    }
    while bound(m) >= tol {
        m += 1;
    }
    (m, bound(m))
}

/// `L(E, 1)` assuming root number +1.
pub fn l1(curve: &CurveSpec, tol: f64) -> Result<CentralValue> {
    l1_with_traces(curve, tol).map(|(v, _)| v)
}

/// [`l1`] together with every `(q, a_q)` it used.
pub fn l1_with_traces(curve: &CurveSpec, tol: f64) -> Result<(CentralValue, Vec<(u64, i64)>)> {
    if !(tol.is_finite() && tol >= 1e-12 && tol < 1.0) {
        return Err(Error::Tolerance(tol));
    }
    let cond = conductor(curve)?;
    let n_cond = cond.value.to_f64();
    let (m, tail_bound) = truncation(n_cond, tol);
    let traces = prime_traces(curve, &cond, m as usize)?;
    let a = fill_an(m as usize, &cond, &traces);
    let c = 2.0 * std::f64::consts::PI / n_cond.sqrt();
    let value = 2.0
        * a.iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &an)| an != 0)
            .map(|(n, &an)| an as f64 / n as f64 * (-c * n as f64).exp())
            .sum::<f64>();
    Ok((CentralValue { value, terms: m, tail_bound }, traces))
}

/// Normalized central value of `E_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LValueReport {
    pub p: u64,
    pub conductor: u64,
    pub terms: u64,
    pub l1: f64,
    pub sp_real: f64,
    pub sp_rounded: i64,
    pub residual: f64,
    pub tail_bound: f64,
    pub tol: f64,
    pub converged: bool,
}

/// Below this, `S_p` is read as zero.
pub const VANISHING_THRESHOLD: f64 = 0.01;

impl LValueReport {
    pub fn vanishes(&self) -> bool {
        self.sp_real.abs() < VANISHING_THRESHOLD
    }

    pub fn ensure_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence(format!(
                "S_{} = {} is {:e} from an integer (tol {:e})",
                self.p, self.sp_real, self.residual, self.tol
            )))
        }
    }
}

pub fn sp(p: u64, tol: f64) -> Result<LValueReport> {
    sp_with_traces(p, tol).map(|(r, _)| r)
}

/// [`sp`] together with the `(q, a_q)` list behind it.
pub fn sp_with_traces(p: u64, tol: f64) -> Result<(LValueReport, Vec<(u64, i64)>)> {
    if admissible(p, CurveFamily::Ep).is_none() {
        return Err(Error::Inadmissible { p, family: CurveFamily::Ep.to_string() });
    }
    let curve = CurveSpec::e_p(p);
    let cond = conductor(&curve)?;
    let (lv, traces) = l1_with_traces(&curve, tol)?;
    let omega = omega_e(Precision::new(128)?).to_f64();
    let sp_real = 2.0 * (p as f64).powf(0.25) * lv.value / omega;
    let sp_rounded = sp_real.round() as i64;
    let residual = (sp_real - sp_rounded as f64).abs();
    let report = LValueReport {
        p,
        conductor: cond.value.to_u64().ok_or_else(|| Error::NotRepresentable(cond.value.to_string(), "u64".into()))?,
        terms: lv.terms,
        l1: lv.value,
        sp_real,
        sp_rounded,
        residual,
        tail_bound: lv.tail_bound,
        tol,
        converged: residual < 10.0 * tol,
    };
    Ok((report, traces))
}

/// `R = ((p−1)/4)!² · 2^{4k−5} · 3^{3k−3} · f_N(0)² mod p` with
/// `k = (3p+1)/4`, `N = 3(p−1)/8`.
pub fn congruence_residue(p: u64) -> Result<u64> {
    let adm = admissible(p, CurveFamily::Ep).ok_or_else(|| Error::Inadmissible { p, family: "Ep".into() })?;
    let k = adm.weight;
    let mut fact = 1u64;
    for i in 1..=(p - 1) / 4 {
        fact = fact * i % p;
    }
    let f0 = constant_term_mod(Family::F, adm.index, p)?;
    let mut r = fact * fact % p;
    r = r * pow_mod(2, 4 * k - 5, p) % p;
    r = r * pow_mod(3, 3 * k - 3, p) % p;
    r = r * (f0 * f0 % p) % p;
    Ok(r)
}

/// `S_p ≡ ±R (mod p)`.
pub fn congruence_holds(p: u64, sp_rounded: i64) -> Result<bool> {
    let r = congruence_residue(p)? as i64;
    let s = sp_rounded.rem_euclid(p as i64);
    Ok(s == r || s == (p as i64 - r) % p as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_trace(curve: &CurveSpec, q: u64) -> i64 {
        q as i64 + 1 - curve.weierstrass().count_points(q) as i64
    }

    #[test]
    fn spec_traces() {
        let e17 = CurveSpec::e_p(17);
        assert_eq!(ap(&e17, 3).unwrap(), 0);
        assert_eq!(ap(&e17, 5).unwrap(), 4);
        let a13 = ap(&e17, 13).unwrap();
        assert!(a13.abs() <= 7);
        assert_eq!(a13, brute_trace(&e17, 13));
        assert_eq!(ap(&e17, 17), Err(Error::BadReduction(17)));
        assert_eq!(ap(&e17, 2), Err(Error::BadReduction(2)));
    }

    #[test]
    fn traces_match_enumeration() {
        for p in [1u64, 17, 41, 73] {
            let e = CurveSpec::e_p(p);
            for q in primes_in(3, 60) {
                if q == p {
                    continue;
                }
                let t = ap(&e, q).unwrap();
                assert_eq!(t, brute_trace(&e, q), "p = {p}, q = {q}");
                assert!((t * t) as u64 <= 4 * q);
                if q % 4 == 3 {
                    assert_eq!(t, 0);
                }
            }
        }
    }

    #[test]
    fn an_list_examples() {
        let e17 = CurveSpec::e_p(17);
        assert_eq!(&an_list(&e17, 1).unwrap()[1..], &[1]);
        let a = an_list(&e17, 50).unwrap();
        assert_eq!(a[15], a[3] * a[5]);
        assert_eq!(a[15], 0);
        assert_eq!(a[4], 0);
        assert_eq!(a[25], a[5] * a[5] - 5);
        assert_eq!(a[17], 0);
    }

    #[test]
    fn conductors() {
        assert_eq!(conductor(&CurveSpec::e_p(1)).unwrap().value, 64);
        let c = conductor(&CurveSpec::e_p(17)).unwrap();
        assert_eq!(c.exponent(17), 2);
        assert_eq!(c.exponent(2), 6);
        assert_eq!(c.value, 64 * 17 * 17);
        // x³ + y³ = 1 has conductor 27
        let a1 = conductor(&CurveSpec::a_p(1)).unwrap();
        assert_eq!(a1.value, 27);
        let a19 = conductor(&CurveSpec::a_p(19)).unwrap();
        assert_eq!(a19.exponent(19), 2);
        assert_eq!(a19.exponent(2), 0);
    }

    #[test]
    fn tolerance_guard() {
        let e = CurveSpec::e_p(17);
        assert_eq!(l1(&e, 1e-13), Err(Error::Tolerance(1e-13)));
        assert!(l1(&e, 0.0).is_err());
        assert!(l1(&e, f64::NAN).is_err());
    }

    #[test]
    fn truncation_is_tight() {
        let (m, b) = truncation(64.0 * 17.0 * 17.0, 1e-8);
        assert!(b < 1e-8);
        let (_, b_prev) = truncation(64.0 * 17.0 * 17.0, b * 1.0001);
        assert!(b_prev <= b * 1.0001);
        assert!(m > 100);
    }

    #[test]
    fn sp_small_primes() {
        let r17 = sp(17, 1e-8).unwrap();
        assert!(r17.converged);
        assert!(r17.sp_rounded > 0);
        assert!(congruence_holds(17, r17.sp_rounded).unwrap());
        let r73 = sp(73, 1e-8).unwrap();
        assert!(r73.vanishes());
        assert_eq!(r73.sp_rounded, 0);
        assert!(r73.l1.abs() < 1e-4);
        assert!(matches!(sp(19, 1e-8), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn x3_plus_y3_value() {
        // x³ + y³ = 1 is 27a, with L(1) = 0.5888795834...
        let v = l1(&CurveSpec::a_p(1), 1e-10).unwrap();
        assert!((v.value - 0.588879583428).abs() < 1e-9, "{}", v.value);
    }
}
