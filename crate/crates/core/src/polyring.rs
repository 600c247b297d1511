//! Dense univariate polynomials in `t` over a pluggable coefficient ring.
//!
//! Three rings are provided: [`Integers`] (arbitrary precision), [`Rationals`]
//! (always reduced, positive denominators) and [`Residues`] (integers modulo
//! an odd prime). Polynomials carry their ring; binary operations on
//! polynomials over different residue rings fail with
//! [`Error::RingMismatch`], and mixing integer with rational polynomials is a
//! type error.
//!
//! Coefficients are stored in ascending order of degree with trailing zeros
//! stripped, so structural equality is mathematical equality.

use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::primes::{inv_mod_prime, is_odd_prime, mul_mod, reduce_i64};

pub trait CoefficientRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `num/den` as a ring element, if it exists in this ring.
    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` is a valid element of this particular ring instance.
    fn owns(&self, a: &Self::Elem) -> bool;
    fn to_coefficient(&self, a: &Self::Elem) -> Coefficient;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

/// `Z/pZ` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residues {
    modulus: u64,
}

impl Residues {
    pub fn new(p: u64) -> Result<Self> {
        if !is_odd_prime(p) || p >= 1 << 62 {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self { modulus: p })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, v: i64) -> Residue {
        Residue { value: reduce_i64(v, self.modulus), modulus: self.modulus }
    }

    pub fn from_integer(&self, v: &Integer) -> Residue {
        let m = Integer::from(self.modulus);
        let mut r = Integer::from(v % &m);
        if r.is_negative() {
            r += &m;
        }
        let value = r.to_u64().expect("remainder below modulus");
        Residue { value, modulus: self.modulus }
    }
}

/// A residue class `value mod modulus` with `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl CoefficientRing for Integers {
    type Elem = Integer;

    fn name(&self) -> String {
        "Z".into()
    }
    fn zero(&self) -> Integer {
        Integer::new()
    }
    fn from_i64(&self, v: i64) -> Integer {
        Integer::from(v)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Result<Integer> {
        if den == 0 || num % den != 0 {
            return Err(Error::NotRepresentable(format!("{num}/{den}"), self.name()));
        }
        Ok(Integer::from(num / den))
    }
    fn add(&self, a: &Integer, b: &Integer) -> Integer {
        Integer::from(a + b)
    }
    fn neg(&self, a: &Integer) -> Integer {
        Integer::from(-a)
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        Integer::from(a * b)
    }
    fn is_zero(&self, a: &Integer) -> bool {
        a.is_zero()
    }
    fn owns(&self, _: &Integer) -> bool {
        true
    }
    fn to_coefficient(&self, a: &Integer) -> Coefficient {
        Coefficient::Integer(a.clone())
    }
}

impl CoefficientRing for Rationals {
    type Elem = Rational;

    fn name(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> Rational {
        Rational::new()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from(v)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Result<Rational> {
        if den == 0 {
            return Err(Error::NotRepresentable(format!("{num}/{den}"), self.name()));
        }
        Ok(Rational::from((num, den)))
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a + b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        Rational::from(-a)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.numer().is_zero()
    }
    fn owns(&self, _: &Rational) -> bool {
        true
    }
    fn to_coefficient(&self, a: &Rational) -> Coefficient {
        Coefficient::Rational(a.clone())
    }
}

impl CoefficientRing for Residues {
    type Elem = Residue;

    fn name(&self) -> String {
        format!("Z/{}Z", self.modulus)
    }
    fn zero(&self) -> Residue {
        Residue { value: 0, modulus: self.modulus }
    }
    fn from_i64(&self, v: i64) -> Residue {
        self.elem(v)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Result<Residue> {
        let d = reduce_i64(den, self.modulus);
        if d == 0 {
            return Err(Error::NotRepresentable(format!("{num}/{den}"), self.name()));
        }
        let n = reduce_i64(num, self.modulus);
        Ok(Residue { value: mul_mod(n, inv_mod_prime(d, self.modulus), self.modulus), modulus: self.modulus })
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        let s = a.value + b.value;
        let value = if s >= self.modulus { s - self.modulus } else { s };
        Residue { value, modulus: self.modulus }
    }
    fn neg(&self, a: &Residue) -> Residue {
        let value = if a.value == 0 { 0 } else { self.modulus - a.value };
        Residue { value, modulus: self.modulus }
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        Residue { value: mul_mod(a.value, b.value, self.modulus), modulus: self.modulus }
    }
    fn is_zero(&self, a: &Residue) -> bool {
        a.value == 0
    }
    fn owns(&self, a: &Residue) -> bool {
        a.modulus == self.modulus && a.value < self.modulus
    }
    fn to_coefficient(&self, a: &Residue) -> Coefficient {
        Coefficient::Residue(*a)
    }
}

/// A ring-tagged coefficient value, used for rendering and for reporting
/// values across ring boundaries.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Integer(Integer),
    Rational(Rational),
    Residue(Residue),
}

impl Coefficient {
    fn is_negative(&self) -> bool {
        match self {
            Coefficient::Integer(v) => v.is_negative(),
            Coefficient::Rational(v) => v.is_negative(),
            Coefficient::Residue(_) => false,
        }
    }

    fn abs(&self) -> Coefficient {
        match self {
            Coefficient::Integer(v) => Coefficient::Integer(v.clone().abs()),
            Coefficient::Rational(v) => Coefficient::Rational(v.clone().abs()),
            Coefficient::Residue(v) => Coefficient::Residue(*v),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Coefficient::Integer(v) => *v == 1,
            Coefficient::Rational(v) => *v == 1,
            Coefficient::Residue(v) => v.value == 1,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Integer(v) => write!(f, "{v}"),
            Coefficient::Rational(v) => write!(f, "{v}"),
            Coefficient::Residue(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<R: CoefficientRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoefficientRing> Polynomial<R> {
    pub fn zero(ring: R) -> Self {
        Self { ring, coeffs: Vec::new() }
    }

    pub fn constant(ring: R, c: R::Elem) -> Result<Self> {
        Self::from_coeffs(ring, vec![c])
    }

    /// Build from ascending coefficients; every coefficient must belong to `ring`.
    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !ring.owns(c)) {
            return Err(Error::RingMismatch(format!("{bad:?}"), ring.name()));
        }
        Ok(Self::from_raw(ring, coeffs))
    }

    pub fn from_i64s(ring: R, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| ring.from_i64(c)).collect();
        Self::from_raw(ring, coeffs)
    }

    fn from_raw(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Self { ring, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Value at `t = 0`.
    pub fn constant_term(&self) -> R::Elem {
        self.coeff(0)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let r = &self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::from_raw(r.clone(), coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self { ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        let r = &self.ring;
        let mut coeffs = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = r.add(&coeffs[i + j], &r.mul(a, b));
            }
        }
        Ok(Self::from_raw(r.clone(), coeffs))
    }

    pub fn scale(&self, c: &R::Elem) -> Result<Self> {
        if !self.ring.owns(c) {
            return Err(Error::RingMismatch(format!("{c:?}"), self.ring.name()));
        }
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Ok(Self::from_raw(self.ring.clone(), coeffs))
    }

    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(c, &r.from_i64(i as i64)))
            .collect();
        Self::from_raw(r.clone(), coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R::Elem) -> Result<R::Elem> {
        if !self.ring.owns(x) {
            return Err(Error::RingMismatch(format!("{x:?}"), self.ring.name()));
        }
        let r = &self.ring;
        Ok(self.coeffs.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c)))
    }
}

impl Polynomial<Integers> {
    /// Coefficientwise reduction modulo an odd prime.
    pub fn reduce_mod(&self, p: u64) -> Result<Polynomial<Residues>> {
        let ring = Residues::new(p)?;
        let coeffs = self.coeffs.iter().map(|c| ring.from_integer(c)).collect();
        Ok(Polynomial::from_raw(ring, coeffs))
    }

    pub fn to_rationals(&self) -> Polynomial<Rationals> {
        let coeffs = self.coeffs.iter().map(|c| Rational::from(c)).collect();
        Polynomial { ring: Rationals, coeffs }
    }
}

impl Polynomial<Rationals> {
    /// The same polynomial over `Z`, if every coefficient is integral.
    pub fn to_integers(&self) -> Option<Polynomial<Integers>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| (*c.denom() == 1).then(|| c.numer().clone()))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { ring: Integers, coeffs })
    }

    /// Reduction of a polynomial with denominators prime to `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Polynomial<Residues>> {
        let ring = Residues::new(p)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let d = ring.from_integer(c.denom());
                if d.value == 0 {
                    return Err(Error::NotRepresentable(c.to_string(), ring.name()));
                }
                let n = ring.from_integer(c.numer());
                Ok(ring.mul(&n, &ring.elem(inv_mod_prime(d.value, p) as i64)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_raw(ring, coeffs))
    }
}

/// Renders as `c_k*t^k + ... + c_0`, omitting zero terms and unit coefficients.
impl<R: CoefficientRing> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let c = self.ring.to_coefficient(c);
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if deg == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
