//! Squared CM derivatives against their recurrence-side predictions.
//!
//! At `z = i`, with `k = 2N+1`:
//!
//! ```text
//! |∂_{1/2}^{(N)} θ₂(i)|² = 2^{−4k+7/2} 3^{−k+1} π^{−2k+1} Ω_E^{2k−1} f_N(0)²
//! ```
//!
//! At `z = ω`, with `c = (Ω_A/π)^{2k−1}`:
//!
//! ```text
//! k = 6N+1   |∂_{1/2}^{(3N)}   η(ω)|²      = c 2^{−3k+2} 3^{k−1/4} x_{3N}(0)²
//! k = 6N+2   |∂_{3/2}^{(3N)}   η³(ω)|²     = c 2^{−3k+3} 3^{k+1/4} y_{3N}(0)²
//! k = 6N+4   |∂_{3/2}^{(3N+1)} η(3z)³(ω)|² = c 2^{−3k+5} 3^{k−9/4} z_{3N+1}(0)²
//! ```
//!
//! Only squared magnitudes are compared, so the unit-modulus phases that
//! relate the derivatives to the L-values are never needed.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};
use serde::Serialize;

use super::precision::{omega_a, omega_e, pi, Precision};
use super::series::{ms_derivative, ExpSeries, HalfPlanePoint};
use super::special::{hermite, laguerre};
use crate::error::{Error, Result};
use crate::polyring::Integers;
use crate::recurrences::{generate, generate_exact, Family};

#[derive(Debug, Clone, Serialize)]
pub struct MsDerivativeReport {
    /// `E-6N+1`-style tag naming the identity checked.
    pub case: String,
    pub series: &'static str,
    pub n: u64,
    pub k: u64,
    /// Order of the derivative.
    pub order: u32,
    /// e.g. `f_2(0)`
    pub recurrence_term: String,
    pub recurrence_constant: String,
    pub numeric: String,
    pub predicted: String,
    /// `|numeric − predicted| / predicted`, or `|numeric| / scale` when the
    /// prediction vanishes, with `scale` the prediction at constant 1.
    pub relative_error: f64,
    pub vanishing: bool,
    pub precision_bits: u32,
    pub constants: Vec<&'static str>,
    #[serde(skip)]
    pub numeric_value: Float,
    #[serde(skip)]
    pub predicted_value: Float,
}

impl MsDerivativeReport {
    pub fn within(&self, tol: f64) -> bool {
        self.relative_error < tol
    }
}

fn sci(x: &Float) -> String {
    format!("{:.40e}", x)
}

/// `Π base^exp` at `w` bits.
fn product(w: u32, factors: &[(&Float, Rational)]) -> Float {
    let mut acc = Float::with_val(w, 1);
    for (b, e) in factors {
        acc *= (*b).clone().pow(&Float::with_val(w, e));
    }
    acc
}

fn squared_abs(v: &Complex, w: u32) -> Float {
    Float::with_val(w, v.norm_ref())
}

#[allow(clippy::too_many_arguments)]
fn finish(
    case: String,
    series: &ExpSeries,
    n: u64,
    k: u64,
    order: u32,
    recurrence_term: String,
    constant: Rational,
    numeric: Float,
    unit_prediction: Float,
    prec: Precision,
    constants: Vec<&'static str>,
) -> Result<MsDerivativeReport> {
    let w = prec.working();
    let c2 = Rational::from(constant.square_ref());
    let predicted = Float::with_val(w, &unit_prediction * &c2);
    if predicted < 0 {
        return Err(Error::CrossCheck(format!("negative prediction for {case}")));
    }
    let vanishing = constant == 0;
    let rel = if vanishing {
        Float::with_val(w, &numeric / &unit_prediction)
    } else {
        Float::with_val(w, &numeric - &predicted).abs() / &predicted
    };
    Ok(MsDerivativeReport {
        case,
        series: series.name(),
        n,
        k,
        order,
        recurrence_term,
        recurrence_constant: constant.to_string(),
        numeric: sci(&numeric),
        predicted: sci(&predicted),
        relative_error: rel.to_f64(),
        vanishing,
        precision_bits: prec.bits(),
        constants,
        numeric_value: numeric,
        predicted_value: predicted,
    })
}

/// The `E_p`-side identity at `z = i` for `k = 2N + 1`.
pub fn verify_thm5(n: u64, prec: Precision) -> Result<MsDerivativeReport> {
    let w = prec.working();
    let order = u32::try_from(n).map_err(|_| Error::NotRepresentable(n.to_string(), "u32".into()))?;
    let k = 2 * n + 1;
    let series = ExpSeries::Theta2;
    let d = ms_derivative(&series, &Rational::from((1, 2)), order, &HalfPlanePoint::i(), prec)?;
    let numeric = squared_abs(&d, w);

    let f0 = Rational::from(generate(Family::F, n, &Integers)?.constant_term());
    let ki = k as i64;
    let two = Float::with_val(w, 2);
    let three = Float::with_val(w, 3);
    let unit = product(
        w,
        &[
            (&two, Rational::from((-8 * ki + 7, 2))),
            (&three, Rational::from(1 - ki)),
            (&pi(prec), Rational::from(1 - 2 * ki)),
            (&omega_e(prec), Rational::from(2 * ki - 1)),
        ],
    );
    finish(
        format!("E k=2N+1 (k={k})"),
        &series,
        n,
        k,
        order,
        format!("f_{n}(0)"),
        f0,
        numeric,
        unit,
        prec,
        vec!["pi", "Omega_E"],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Thm6Case {
    /// `k = 6N+1`: η, weight 1/2, order 3N, constant `x_{3N}(0)`.
    Eta,
    /// `k = 6N+2`: η³, weight 3/2, order 3N, constant `y_{3N}(0)`.
    EtaCubed,
    /// `k = 6N+4`: η(3z)³, weight 3/2, order 3N+1, constant `z_{3N+1}(0)`.
    EtaCubedAt3z,
}

impl Thm6Case {
    pub const ALL: [Thm6Case; 3] = [Thm6Case::Eta, Thm6Case::EtaCubed, Thm6Case::EtaCubedAt3z];

    pub fn k(self, n: u64) -> u64 {
        6 * n
            + match self {
                Thm6Case::Eta => 1,
                Thm6Case::EtaCubed => 2,
                Thm6Case::EtaCubedAt3z => 4,
            }
    }

    pub fn order(self, n: u64) -> u64 {
        match self {
            Thm6Case::Eta | Thm6Case::EtaCubed => 3 * n,
            Thm6Case::EtaCubedAt3z => 3 * n + 1,
        }
    }

    pub fn family(self) -> Family {
        match self {
            Thm6Case::Eta => Family::X,
            Thm6Case::EtaCubed => Family::Y,
            Thm6Case::EtaCubedAt3z => Family::Z,
        }
    }

    fn series(self) -> ExpSeries {
        match self {
            Thm6Case::Eta => ExpSeries::Eta,
            Thm6Case::EtaCubed => ExpSeries::EtaCubed,
            Thm6Case::EtaCubedAt3z => ExpSeries::EtaCubedAt3z,
        }
    }

    fn weight(self) -> Rational {
        match self {
            Thm6Case::Eta => Rational::from((1, 2)),
            _ => Rational::from((3, 2)),
        }
    }

    /// Exponents of 2 and of 3 (the latter in quarters) beyond `k`.
    fn shifts(self) -> (i64, i64) {
        match self {
            Thm6Case::Eta => (2, -1),
            Thm6Case::EtaCubed => (3, 1),
            Thm6Case::EtaCubedAt3z => (5, -9),
        }
    }
}

impl fmt::Display for Thm6Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Thm6Case::Eta => "6N+1",
            Thm6Case::EtaCubed => "6N+2",
            Thm6Case::EtaCubedAt3z => "6N+4",
        })
    }
}

impl FromStr for Thm6Case {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "6N+1" | "1" | "eta" => Ok(Thm6Case::Eta),
            "6N+2" | "2" | "eta3" => Ok(Thm6Case::EtaCubed),
            "6N+4" | "4" | "eta3z" => Ok(Thm6Case::EtaCubedAt3z),
            other => Err(format!("unknown case `{other}` (expected 6N+1, 6N+2 or 6N+4)")),
        }
    }
}

/// The `A_p`-side identity at `z = ω` for one case.
pub fn verify_thm6(n: u64, case: Thm6Case, prec: Precision) -> Result<MsDerivativeReport> {
    let w = prec.working();
    let k = case.k(n);
    let order64 = case.order(n);
    let order = u32::try_from(order64).map_err(|_| Error::NotRepresentable(n.to_string(), "u32".into()))?;
    let series = case.series();
    let d = ms_derivative(&series, &case.weight(), order, &HalfPlanePoint::omega(), prec)?;
    let numeric = squared_abs(&d, w);

    let constant = generate_exact(case.family(), order64)?.constant_term();
    let ki = k as i64;
    let (s2, s3) = case.shifts();
    let ratio = Float::with_val(w, omega_a(prec) / pi(prec));
    let two = Float::with_val(w, 2);
    let three = Float::with_val(w, 3);
    let unit = product(
        w,
        &[
            (&ratio, Rational::from(2 * ki - 1)),
            (&two, Rational::from(-3 * ki + s2)),
            (&three, Rational::from((4 * ki + s3, 4))),
        ],
    );
    let constants = match case {
        Thm6Case::Eta => vec!["pi", "Omega_A", "eta(omega)"],
        Thm6Case::EtaCubed => vec!["pi", "Omega_A", "eta(omega)", "E6(omega)"],
        Thm6Case::EtaCubedAt3z => vec!["pi", "Omega_A", "C(omega)"],
    };
    finish(
        format!("A k={case} (k={k})"),
        &series,
        n,
        k,
        order,
        format!("{}_{}(0)", case.family(), order64),
        constant,
        numeric,
        unit,
        prec,
        constants,
    )
}

/// `verify_thm5` for `N = 0..=max_n`, in parallel, ordered by `N`.
pub fn thm5_reports(max_n: u64, prec: Precision) -> Result<Vec<MsDerivativeReport>> {
    (0..=max_n).into_par_iter().map(|n| verify_thm5(n, prec)).collect()
}

/// `verify_thm6` for `N = 0..=max_n` and every case, ordered by `(N, case)`.
pub fn thm6_reports(max_n: u64, prec: Precision) -> Result<Vec<MsDerivativeReport>> {
    let jobs: Vec<(u64, Thm6Case)> =
        (0..=max_n).flat_map(|n| Thm6Case::ALL.into_iter().map(move |c| (n, c))).collect();
    jobs.into_par_iter().map(|(n, c)| verify_thm6(n, c, prec)).collect()
}

/// Algebraic part on the `E` side: `f_N(0)²` for `k = 2N+1`, and 0 for
/// even `k`.
pub fn algebraic_part_e(k: u64) -> Result<Integer> {
    if k % 2 == 0 {
        return Ok(Integer::new());
    }
    let c = generate(Family::F, (k - 1) / 2, &Integers)?.constant_term();
    Ok(c.square())
}

/// Algebraic part on the `A` side: the square of `x_{3N}(0)`, `y_{3N}(0)`
/// or `z_{3N+1}(0)` for `k ≡ 1, 2, 4 (mod 6)`, and 0 otherwise.
pub fn algebraic_part_a(k: u64) -> Result<Rational> {
    let n = k / 6;
    let case = match k % 6 {
        1 => Thm6Case::Eta,
        2 => Thm6Case::EtaCubed,
        4 => Thm6Case::EtaCubedAt3z,
        _ => return Ok(Rational::new()),
    };
    let c = generate_exact(case.family(), case.order(n))?.constant_term();
    Ok(c.square())
}

/// `θ_{(p)}[μ; ν](z) = i^{−p} (2πy)^{−p/2} Σ_{n∈Z+μ} H_p(n√(2πy)) e^{πin²z + 2πiνn}`,
/// summed over `|n − μ| ≤ cutoff`.
pub fn partial_theta(
    p: u32,
    mu: &Rational,
    nu: &Rational,
    z: &HalfPlanePoint,
    cutoff: i64,
    prec: Precision,
) -> Complex {
    let w = prec.working();
    let pi = pi(prec);
    let y = z.im(w);
    let two_pi_y = Float::with_val(w, &pi * &y) * 2u32;
    let scale = Float::with_val(w, two_pi_y.sqrt_ref());
    let mut sum = Complex::with_val(w, (0, 0));
    for n0 in -cutoff..=cutoff {
        let n = Rational::from(mu + n0);
        let n2 = Rational::from(n.square_ref());
        let hx = hermite(p, &Float::with_val(w, &scale * &n));
        // πin²z + 2πiνn = −πn²y + i(πn²x + 2πνn)
        let re = -Float::with_val(w, &pi * &n2) * &y;
        let im = Float::with_val(w, &pi * (n2 * &z.re + Rational::from(nu * &n) * 2u32));
        sum += Complex::with_val(w, (re, im)).exp() * hx;
    }
    // i^{−p}
    let rot = match p % 4 {
        0 => Complex::with_val(w, (1, 0)),
        1 => Complex::with_val(w, (0, -1)),
        2 => Complex::with_val(w, (-1, 0)),
        _ => Complex::with_val(w, (0, 1)),
    };
    let norm = two_pi_y.clone().pow(&Float::with_val(w, Rational::from((-(p as i64), 2))));
    sum * rot * norm
}

/// Both sides of the lattice-sum identity (special case `a = 1`, `α = 0`):
///
/// ```text
/// (−1)^p p!/(πy)^p Σ_{n,m} e^{2πi(nμ+mν)} L_p(2πQ) e^{π(inm − Q)}  =  (−1)^p √(2y) |θ_{(p)}[μ; ν](z)|²
/// ```
///
/// with `Q = |mz − n|²/(2y)` and `|n|, |m| ≤ cutoff`.
pub fn ff_sides(
    p: u32,
    mu: &Rational,
    nu: &Rational,
    z: &HalfPlanePoint,
    cutoff: i64,
    prec: Precision,
) -> (Complex, Float) {
    let w = prec.working();
    let pi = pi(prec);
    let y = z.im(w);
    let zero = Rational::new();
    let mut sum = Complex::with_val(w, (0, 0));
    for n in -cutoff..=cutoff {
        for m in -cutoff..=cutoff {
            // |mz − n|² = (mx − n)² + m²y²
            let dx = Rational::from(&z.re * m) - n;
            let q2 = Rational::from(dx.square_ref()) + Rational::from(&z.im_squared * (m * m));
            let q = Float::with_val(w, &q2) / Float::with_val(w, &y * 2u32);
            let lag = laguerre(p, &zero, &(Float::with_val(w, &pi * &q) * 2u32));
            let phase = Rational::from(mu * n) * 2u32 + Rational::from(nu * m) * 2u32 + Rational::from(n * m);
            let re = -Float::with_val(w, &pi * &q);
            let im = Float::with_val(w, &pi * &phase);
            sum += Complex::with_val(w, (re, im)).exp() * lag;
        }
    }
    let fact = Float::with_val(w, Integer::from(Integer::factorial(p)));
    let mut pre = fact / Float::with_val(w, &pi * &y).pow(p);
    if p % 2 == 1 {
        pre = -pre;
    }
    let lhs = sum * pre;

    let th = partial_theta(p, mu, nu, z, cutoff, prec);
    let mut rhs = Float::with_val(w, y * 2u32).sqrt() * Float::with_val(w, th.norm_ref());
    if p % 2 == 1 {
        rhs = -rhs;
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p256() -> Precision {
        Precision::DEFAULT
    }

    #[test]
    fn thm5_small() {
        let r0 = verify_thm5(0, p256()).unwrap();
        assert!(r0.within(1e-30), "{r0:?}");
        let r2 = verify_thm5(2, p256()).unwrap();
        assert_eq!(r2.recurrence_constant, "-9");
        assert!(r2.within(1e-20), "{r2:?}");
        let r6 = verify_thm5(6, p256()).unwrap();
        assert_eq!(r6.recurrence_constant, "80919");
        assert!(r6.within(1e-20));
    }

    #[test]
    fn thm6_small() {
        let r = verify_thm6(0, Thm6Case::Eta, p256()).unwrap();
        assert_eq!(r.recurrence_constant, "1");
        assert!(r.within(1e-20), "{r:?}");
        let r = verify_thm6(1, Thm6Case::Eta, p256()).unwrap();
        assert_eq!((r.k, r.recurrence_constant.as_str()), (7, "2"));
        assert!(r.within(1e-20));
        // x_6(0) = −152, not 0
        let r = verify_thm6(2, Thm6Case::Eta, p256()).unwrap();
        assert_eq!((r.k, r.recurrence_constant.as_str()), (13, "-152"));
        assert!(!r.vanishing);
        assert!(r.within(1e-20));
        let r = verify_thm6(0, Thm6Case::EtaCubedAt3z, p256()).unwrap();
        assert_eq!((r.k, r.recurrence_constant.as_str()), (4, "1"));
        assert!(r.within(1e-20));
        let r = verify_thm6(1, Thm6Case::EtaCubed, p256()).unwrap();
        assert_eq!((r.k, r.recurrence_constant.as_str()), (8, "6"));
        assert!(r.within(1e-20));
    }

    #[test]
    fn algebraic_parts() {
        assert_eq!(algebraic_part_e(5).unwrap(), 81);
        assert_eq!(algebraic_part_e(4).unwrap(), 0);
        assert_eq!(algebraic_part_a(7).unwrap(), 4);
        assert_eq!(algebraic_part_a(4).unwrap(), 1);
        assert_eq!(algebraic_part_a(3).unwrap(), 0);
    }

    #[test]
    fn partial_theta_matches_derivative() {
        // θ_{(2h)}[1/2; 0](i) = (−1)^h 2^{3h} ∂_{1/2}^{(h)} θ₂(i)
        let prec = p256();
        let w = prec.working();
        let half = Rational::from((1, 2));
        for h in 0..4u32 {
            let th = partial_theta(2 * h, &half, &Rational::new(), &HalfPlanePoint::i(), 40, prec);
            let d = ms_derivative(&ExpSeries::Theta2, &half, h, &HalfPlanePoint::i(), prec).unwrap();
            let mut rhs = d * Float::with_val(w, Float::i_exp(1, 3 * h as i32));
            if h % 2 == 1 {
                rhs = -rhs;
            }
            let diff = Float::with_val(w, Complex::with_val(w, &th - &rhs).abs_ref());
            let scale = Float::with_val(w, th.abs_ref());
            assert!(diff / scale < 1e-60, "h = {h}");
        }
    }

    #[test]
    fn ff_special_case() {
        let prec = Precision::new(128).unwrap();
        let half = Rational::from((1, 2));
        for p in [0u32, 2, 4] {
            let (lhs, rhs) = ff_sides(p, &half, &Rational::new(), &HalfPlanePoint::i(), 40, prec);
            let d = Float::with_val(200, lhs.real() - &rhs).abs() / Float::with_val(200, rhs.abs_ref());
            assert!(d < 1e-15, "p = {p}: {lhs} vs {rhs}");
            assert!(lhs.imag().clone().abs() < 1e-15);
        }
    }
}
