//! The ring `Q[θ₂, θ₄]` of modular forms for Γ(2), with the Ramanujan–Serre
//! derivation acting on the generators by
//!
//! ```text
//! ϑθ₂ =  θ₂θ₄⁴/12 + θ₂⁵/24
//! ϑθ₄ = −θ₂⁴θ₄/12 − θ₄⁵/24
//! ```
//!
//! This is enough to rebuild the `f` recurrence from the general weight-`k`
//! recurrence `F_{n+1} = ϑF_n − n(n+k−1)/144·E₄F_{n−1}` with `k = 1/2`,
//! `F_0 = θ₂` and `E₄ = θ₂⁸ + θ₂⁴θ₄⁴ + θ₄⁸`, and then to substitute
//! `t = (θ₄⁴ − θ₂⁴)/θ₂⁴`.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::polyring::{Integers, Polynomial, Rationals};

/// `Σ c_{ij} θ₂^i θ₄^j` with exact rational coefficients; zero terms are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThetaPolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl ThetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn theta2() -> Self {
        Self::monomial(Rational::from(1), 1, 0)
    }

    pub fn theta4() -> Self {
        Self::monomial(Rational::from(1), 0, 1)
    }

    /// `E₄ = θ₂⁸ + θ₂⁴θ₄⁴ + θ₄⁸`.
    pub fn e4() -> Self {
        let one = || Rational::from(1);
        Self::monomial(one(), 8, 0) + Self::monomial(one(), 4, 4) + Self::monomial(one(), 0, 8)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    /// Common total degree `i + j` of every monomial, if homogeneous.
    /// The zero polynomial has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Modular weight `(i + j)/2` of a homogeneous element.
    pub fn weight(&self) -> Option<Rational> {
        self.homogeneous_degree().map(|d| Rational::from((d, 2)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, Rational::from(v * c));
        }
        out
    }

    pub fn partial_theta2(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), Rational::from(c * i));
            }
        }
        out
    }

    pub fn partial_theta4(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term((i, j - 1), Rational::from(c * j));
            }
        }
        out
    }

    /// The Ramanujan–Serre derivation ϑ; raises weight by 2.
    pub fn rs_derivation(&self) -> Self {
        let q = |n: i32, d: i32| Rational::from((n, d));
        let image2 = Self::monomial(q(1, 12), 1, 4) + Self::monomial(q(1, 24), 5, 0);
        let image4 = Self::monomial(q(1, 12), 4, 1) + Self::monomial(q(1, 24), 0, 5);
        &image2 * &self.partial_theta2() - &image4 * &self.partial_theta4()
    }
}

impl std::ops::Add for ThetaPolynomial {
    type Output = ThetaPolynomial;
    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl std::ops::Sub for ThetaPolynomial {
    type Output = ThetaPolynomial;
    fn sub(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.add_term(k, -v);
        }
        self
    }
}

impl std::ops::Mul for &ThetaPolynomial {
    type Output = ThetaPolynomial;
    fn mul(self, rhs: &ThetaPolynomial) -> ThetaPolynomial {
        let mut out = ThetaPolynomial::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), Rational::from(a * b));
            }
        }
        out
    }
}

impl fmt::Display for ThetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (sym, e) in [("θ₂", i), ("θ₄", j)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{sym}")?,
                    _ => write!(f, "*{sym}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// `[F_0, ..., F_N]` for `f = θ₂` (weight 1/2).
pub fn vz_sequence(n_max: u64) -> Vec<ThetaPolynomial> {
    let e4 = ThetaPolynomial::e4();
    let mut seq = vec![ThetaPolynomial::theta2()];
    if n_max >= 1 {
        seq.push(seq[0].rs_derivation());
    }
    for n in 1..n_max {
        let i = n as usize;
        // n(n + k − 1)/144 with k = 1/2
        let c = Rational::from((n * (2 * n - 1), 288));
        let next = seq[i].rs_derivation() - (&e4 * &seq[i - 1]).scale(&c);
        seq.push(next);
    }
    seq
}

/// `24^n F_n / θ₂^{4n+1}` as a polynomial in `t = (θ₄⁴ − θ₂⁴)/θ₂⁴`.
///
/// Requires every monomial of `F_n` to be `θ₂^{4(n−j)+1} θ₄^{4j}`.
pub fn normalize_to_t(f: &ThetaPolynomial, n: u64) -> Result<Polynomial<Rationals>> {
    let one_plus_t = Polynomial::from_i64s(Rationals, &[1, 1]);
    let mut acc = Polynomial::zero(Rationals);
    for (&(i, j), c) in f.terms() {
        let jj = (j / 4) as u64;
        if j % 4 != 0 || jj > n || i as u64 != 4 * (n - jj) + 1 {
            return Err(Error::Lattice(i, j, n));
        }
        let mut term = Polynomial::constant(Rationals, c.clone())?;
        for _ in 0..jj {
            term = term.mul(&one_plus_t)?;
        }
        acc = acc.add(&term)?;
    }
    let scale = Rational::from(Integer::from(24).pow(n as u32));
    acc.scale(&scale)
}

/// [`normalize_to_t`] followed by an integrality check.
pub fn normalize_to_integer_t(f: &ThetaPolynomial, n: u64) -> Result<Polynomial<Integers>> {
    let q = normalize_to_t(f, n)?;
    q.to_integers()
        .ok_or_else(|| Error::CrossCheck(format!("normalized F_{n} has non-integral coefficients: {q}")))
}
