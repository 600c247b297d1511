//! Exponential series `Σ a_j e^{2πiμ_j z}` and their Maass–Shimura
//! derivatives
//!
//! ```text
//! ∂_k^{(h)} Σ a e^{2πiμz} = (−1)^h h!/(4πy)^h · Σ a L_h^{k−1}(4πμy) e^{2πiμz}
//! ```

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use super::precision::{pi, Precision};
use super::special::laguerre;
use crate::error::{Error, Result};

/// A point of the upper half plane with `Re z` rational and `(Im z)²`
/// rational, which covers the CM points of interest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlanePoint {
    pub re: Rational,
    pub im_squared: Rational,
}

impl HalfPlanePoint {
    pub fn new(re: Rational, im_squared: Rational) -> Result<Self> {
        if im_squared <= 0 {
            return Err(Error::NotRepresentable(im_squared.to_string(), "(Im z)² > 0".into()));
        }
        Ok(Self { re, im_squared })
    }

    pub fn i() -> Self {
        Self { re: Rational::new(), im_squared: Rational::from(1) }
    }

    /// `ω = (−1 + i√3)/2`
    pub fn omega() -> Self {
        Self { re: Rational::from((-1, 2)), im_squared: Rational::from((3, 4)) }
    }

    /// `Im z` at `w` bits.
    pub fn im(&self, w: u32) -> Float {
        Float::with_val(w, &self.im_squared).sqrt()
    }
}

/// One term `a·e^{2πiμz}` with `a = re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub mu: Rational,
    pub re: Rational,
    pub im: Rational,
}

impl Term {
    fn real(mu: Rational, a: Integer) -> Self {
        Self { mu, re: Rational::from(a), im: Rational::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpSeries {
    /// `θ₂ = Σ_{n∈Z} q^{(n+1/2)²/2}`
    Theta2,
    /// `θ₄ = Σ_{n∈Z} (−1)^n q^{n²/2}`
    Theta4,
    /// `η = Σ_{n∈Z} (−1)^n q^{(6n−1)²/24}`
    Eta,
    /// `η³ = Σ_{n≥0} (−1)^n (2n+1) q^{(2n+1)²/8}`
    EtaCubed,
    /// `η(3z)³`
    EtaCubedAt3z,
    /// Finite list, frequencies strictly increasing and nonnegative.
    Custom(Vec<Term>),
}

impl ExpSeries {
    pub fn custom(terms: Vec<Term>) -> Result<Self> {
        let ordered = terms.windows(2).all(|w| w[0].mu < w[1].mu);
        if !ordered || terms.first().is_some_and(|t| t.mu < 0) {
            return Err(Error::NotRepresentable(
                "frequency list".into(),
                "strictly increasing nonnegative frequencies".into(),
            ));
        }
        Ok(ExpSeries::Custom(terms))
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExpSeries::Theta2 => "theta2",
            ExpSeries::Theta4 => "theta4",
            ExpSeries::Eta => "eta",
            ExpSeries::EtaCubed => "eta^3",
            ExpSeries::EtaCubedAt3z => "eta(3z)^3",
            ExpSeries::Custom(_) => "custom",
        }
    }

    /// True when every coefficient is real, so the series is real on
    /// the imaginary axis.
    pub fn is_real_on_imaginary_axis(&self) -> bool {
        match self {
            ExpSeries::Custom(t) => t.iter().all(|t| t.im == 0),
            _ => true,
        }
    }

    /// The `j`-th term in increasing frequency, `None` past the end.
    pub fn term(&self, j: usize) -> Option<Term> {
        let odd_sq = |m: i64| Rational::from((m * m, 8));
        let sign = |even: bool| if even { 1i64 } else { -1 };
        let j64 = j as i64;
        Some(match self {
            ExpSeries::Theta2 => Term::real(odd_sq(2 * j64 + 1), Integer::from(2)),
            ExpSeries::Theta4 => {
                if j == 0 {
                    Term::real(Rational::new(), Integer::from(1))
                } else {
                    Term::real(Rational::from((j64 * j64, 2)), Integer::from(2 * sign(j % 2 == 0)))
                }
            }
            ExpSeries::Eta => {
                // m = |6n − 1| runs over 1, 5, 7, 11, 13, ...
                let m = 3 * j64 + 1 + j64 % 2;
                let n = if m % 6 == 1 { (1 - m) / 6 } else { (m + 1) / 6 };
                Term::real(Rational::from((m * m, 24)), Integer::from(sign(n % 2 == 0)))
            }
            ExpSeries::EtaCubed => {
                let m = 2 * j64 + 1;
                Term::real(odd_sq(m), Integer::from(sign(j % 2 == 0) * m))
            }
            ExpSeries::EtaCubedAt3z => {
                let m = 2 * j64 + 1;
                Term::real(odd_sq(m) * 3u32, Integer::from(sign(j % 2 == 0) * m))
            }
            ExpSeries::Custom(t) => t.get(j)?.clone(),
        })
    }
}

const MAX_TERMS: usize = 100_000;

/// `∂_k^{(h)}` of `series` at `z`, accurate to roughly `prec` bits relative
/// to the largest term.
pub fn ms_derivative(
    series: &ExpSeries,
    k: &Rational,
    h: u32,
    z: &HalfPlanePoint,
    prec: Precision,
) -> Result<Complex> {
    let w = prec.working();
    let pi = pi(prec);
    let y = z.im(w);
    let alpha = Rational::from(k - 1u32);
    let four_pi_y = Float::with_val(w, &pi * &y) * 4u32;
    let two_pi = Float::with_val(w, &pi * 2u32);

    // |L_h^α(x)| ≤ 2^{h+⌈|α|⌉+1} (1+x)^h for x ≥ 0
    let alpha_ceil = Rational::from(alpha.abs_ref()).ceil().to_f64();
    let cap = h as f64 + alpha_ceil + 1.0;
    let y_f = y.to_f64();
    let ln2 = std::f64::consts::LN_2;

    let mut sum = Complex::with_val(w, (0, 0));
    let mut max_log = f64::NEG_INFINITY;
    let mut j = 0;
    loop {
        if j >= MAX_TERMS {
            return Err(Error::NonConvergence(format!(
                "{} series did not reach 2^-{} within {MAX_TERMS} terms",
                series.name(),
                prec.bits() + 10
            )));
        }
        let Some(t) = series.term(j) else { break };
        j += 1;
        let mu_f = t.mu.to_f64();
        let x_f = 4.0 * std::f64::consts::PI * mu_f * y_f;
        let a_abs = t.re.to_f64().hypot(t.im.to_f64());
        if a_abs == 0.0 {
            continue;
        }
        let log_bound = a_abs.log2() + cap + h as f64 * (1.0 + x_f).log2() - x_f / 2.0 / ln2;
        max_log = max_log.max(log_bound);
        if 1.0 + x_f > 2.0 * h as f64 && log_bound < max_log - (prec.bits() as f64 + 10.0) {
            break;
        }
        let x = Float::with_val(w, &four_pi_y * &t.mu);
        let lag = laguerre(h, &alpha, &x);
        let angle = Float::with_val(w, &two_pi * Rational::from(&t.mu * &z.re));
        let decay = Float::with_val(w, -&x) / 2u32;
        let e = Complex::with_val(w, (decay, angle)).exp();
        let a = Complex::with_val(w, (Float::with_val(w, &t.re), Float::with_val(w, &t.im)));
        sum += e * a * lag;
    }

    let fact = Float::with_val(w, Integer::from(Integer::factorial(h)));
    let mut pre = fact / four_pi_y.clone().pow(h);
    if h % 2 == 1 {
        pre = -pre;
    }
    Ok(sum * pre)
}

/// Plain evaluation, i.e. order zero.
pub fn evaluate(series: &ExpSeries, z: &HalfPlanePoint, prec: Precision) -> Result<Complex> {
    ms_derivative(series, &Rational::new(), 0, z, prec)
}

/// `E₂*(z) = 1 − 24 Σ σ₁(n) q^n − 3/(πy)`.
pub fn e2star(z: &HalfPlanePoint, prec: Precision) -> Complex {
    let w = prec.working();
    let pi = pi(prec);
    let y = z.im(w);
    let two_pi = Float::with_val(w, &pi * 2u32);
    let q = Complex::with_val(
        w,
        (-Float::with_val(w, &two_pi * &y), Float::with_val(w, &two_pi * &z.re)),
    )
    .exp();
    let log2_q = -(2.0 * std::f64::consts::PI * y.to_f64()) / std::f64::consts::LN_2;
    let mut sum = Complex::with_val(w, (0, 0));
    let mut qn = Complex::with_val(w, (1, 0));
    for n in 1u64.. {
        qn *= &q;
        let sigma: u64 = (1..=n).filter(|d| n % d == 0).sum();
        sum += Complex::with_val(w, &qn * sigma);
        // σ₁(m) ≤ m² and |q|^m decays geometrically
        if 2.0 * (n as f64).log2() + n as f64 * log2_q < -(w as f64 + 10.0) {
            break;
        }
    }
    let three_over_pi_y = Float::with_val(w, 3) / (pi * y);
    Complex::with_val(w, (1, 0)) - sum * 24u32 - three_over_pi_y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maass::precision::omega_e;

    fn approx(a: &Complex, re: f64, im: f64, tol: f64) -> bool {
        (a.real().to_f64() - re).abs() < tol && (a.imag().to_f64() - im).abs() < tol
    }

    #[test]
    fn eta_terms() {
        let e = ExpSeries::Eta;
        let got: Vec<(Rational, Rational)> = (0..5).map(|j| e.term(j).unwrap()).map(|t| (t.mu, t.re)).collect();
        let q = |n: i64, d: i64| Rational::from((n, d));
        assert_eq!(
            got,
            vec![
                (q(1, 24), q(1, 1)),
                (q(25, 24), q(-1, 1)),
                (q(49, 24), q(-1, 1)),
                (q(121, 24), q(1, 1)),
                (q(169, 24), q(1, 1)),
            ]
        );
    }

    #[test]
    fn custom_series_validation() {
        let t = |m: i64| Term { mu: Rational::from(m), re: Rational::from(1), im: Rational::new() };
        assert!(ExpSeries::custom(vec![t(0), t(1)]).is_ok());
        assert!(ExpSeries::custom(vec![t(1), t(1)]).is_err());
        assert!(ExpSeries::custom(vec![t(-1)]).is_err());
    }

    #[test]
    fn theta2_at_i() {
        // |θ₂(i)| = 2^{−1/4} π^{−1/2} Ω_E^{1/2}
        let prec = Precision::DEFAULT;
        let v = evaluate(&ExpSeries::Theta2, &HalfPlanePoint::i(), prec).unwrap();
        let expect = 2f64.powf(-0.25) * (omega_e(prec).to_f64() / std::f64::consts::PI).sqrt();
        assert!(approx(&v, expect, 0.0, 1e-14), "{v}");
    }

    #[test]
    fn jacobi_quartic_at_i() {
        // θ₃⁴ = θ₂⁴ + θ₄⁴ and θ₂(i) = θ₄(i)
        let prec = Precision::DEFAULT;
        let z = HalfPlanePoint::i();
        let t2 = evaluate(&ExpSeries::Theta2, &z, prec).unwrap();
        let t4 = evaluate(&ExpSeries::Theta4, &z, prec).unwrap();
        let d = Complex::with_val(prec.working(), &t2 - &t4).abs().real().clone();
        assert!(d < 1e-75);
    }

    #[test]
    fn order_zero_is_plain_sum() {
        let prec = Precision::new(128).unwrap();
        let s = ExpSeries::custom(vec![Term {
            mu: Rational::from(1),
            re: Rational::from(1),
            im: Rational::new(),
        }])
        .unwrap();
        let v = ms_derivative(&s, &Rational::from(5), 0, &HalfPlanePoint::i(), prec).unwrap();
        let expect = (-2.0 * std::f64::consts::PI).exp();
        assert!(approx(&v, expect, 0.0, 1e-16));
    }

    #[test]
    fn derivative_of_single_exponential() {
        // ∂_k q = Dq − k/(4πy)·q with Dq = q
        let prec = Precision::new(128).unwrap();
        let s = ExpSeries::custom(vec![Term {
            mu: Rational::from(1),
            re: Rational::from(1),
            im: Rational::new(),
        }])
        .unwrap();
        let k = Rational::from(2);
        let v = ms_derivative(&s, &k, 1, &HalfPlanePoint::i(), prec).unwrap();
        let pi = std::f64::consts::PI;
        let q = (-2.0 * pi).exp();
        let expect = q - 2.0 / (4.0 * pi) * q;
        assert!(approx(&v, expect, 0.0, 1e-18), "{v}");
    }

    #[test]
    fn e2star_zeros() {
        let prec = Precision::DEFAULT;
        for z in [HalfPlanePoint::i(), HalfPlanePoint::omega()] {
            let v = e2star(&z, prec);
            assert!(Float::with_val(300, v.abs_ref()) < 1e-70, "{v}");
        }
        let two_i = HalfPlanePoint::new(Rational::new(), Rational::from(4)).unwrap();
        assert!(Float::with_val(300, e2star(&two_i, prec).abs_ref()) > 1e-3);
    }

    #[test]
    fn imaginary_part_vanishes_on_axis() {
        let v = ms_derivative(&ExpSeries::Theta2, &Rational::from((1, 2)), 3, &HalfPlanePoint::i(), Precision::DEFAULT)
            .unwrap();
        assert_eq!(*v.imag(), 0);
    }
}
