//! Property checks shared by the property suite and the acceptance gate.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rankcrit::lseries::{ap, CurveSpec};
use rankcrit::polyring::{CoefficientRing, Integers, Polynomial, Residues};
use rankcrit::ThetaPolynomial;
use rug::{Integer, Rational};

pub const CASES: u32 = 10_000;
pub const SMALL_PRIMES: [u64; 8] = [3, 5, 7, 13, 17, 73, 97, 1_000_000_007];

pub fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1_000_000i64..1_000_000, 0..9)
}

pub fn triple() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>)> {
    (coeffs(), coeffs(), coeffs())
}

pub fn theta_poly() -> impl Strategy<Value = Vec<(u32, u32, i32, i32)>> {
    prop::collection::vec((0u32..9, 0u32..9, -50i32..50, 1i32..13), 0..6)
}

pub fn build_theta(terms: &[(u32, u32, i32, i32)]) -> ThetaPolynomial {
    terms.iter().fold(ThetaPolynomial::zero(), |acc, &(i, j, n, d)| {
        acc + ThetaPolynomial::monomial(Rational::from((n, d)), i, j)
    })
}

fn axioms<R: CoefficientRing>(a: &Polynomial<R>, b: &Polynomial<R>, c: &Polynomial<R>) -> Result<(), TestCaseError> {
    let ring = a.ring().clone();
    let zero = Polynomial::zero(ring.clone());
    let one = Polynomial::from_i64s(ring, &[1]);
    let ok = |r: rankcrit::Result<Polynomial<R>>| r.map_err(|e| TestCaseError::fail(e.to_string()));
    prop_assert_eq!(ok(a.add(b))?, ok(b.add(a))?);
    prop_assert_eq!(ok(ok(a.add(b))?.add(c))?, ok(a.add(&ok(b.add(c))?))?);
    prop_assert_eq!(ok(a.mul(b))?, ok(b.mul(a))?);
    prop_assert_eq!(ok(ok(a.mul(b))?.mul(c))?, ok(a.mul(&ok(b.mul(c))?))?);
    prop_assert_eq!(ok(a.mul(&ok(b.add(c))?))?, ok(ok(a.mul(b))?.add(&ok(a.mul(c))?))?);
    prop_assert_eq!(ok(a.add(&zero))?, a.clone());
    prop_assert_eq!(ok(a.mul(&one))?, a.clone());
    prop_assert!(ok(a.sub(a))?.is_zero());
    // Leibniz rule
    let lhs = ok(a.mul(b))?.derivative();
    let rhs = ok(ok(a.derivative().mul(b))?.add(&ok(a.mul(&b.derivative()))?))?;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn check_integer_axioms(a: &[i64], b: &[i64], c: &[i64]) -> Result<(), TestCaseError> {
    let z = |v: &[i64]| Polynomial::from_i64s(Integers, v);
    axioms(&z(a), &z(b), &z(c))
}

pub fn check_residue_axioms(p: u64, a: &[i64], b: &[i64], c: &[i64]) -> Result<(), TestCaseError> {
    let ring = Residues::new(p).unwrap();
    let r = |v: &[i64]| Polynomial::from_i64s(ring, v);
    axioms(&r(a), &r(b), &r(c))
}

/// Reduction mod `p` is a ring homomorphism commuting with `d/dt` and with
/// evaluation.
pub fn check_reduction(p: u64, a: &[i64], b: &[i64], x: i64) -> Result<(), TestCaseError> {
    let ring = Residues::new(p).unwrap();
    let (pa, pb) = (Polynomial::from_i64s(Integers, a), Polynomial::from_i64s(Integers, b));
    let red = |q: &Polynomial<Integers>| q.reduce_mod(p).unwrap();
    prop_assert_eq!(red(&pa.add(&pb).unwrap()), red(&pa).add(&red(&pb)).unwrap());
    prop_assert_eq!(red(&pa.mul(&pb).unwrap()), red(&pa).mul(&red(&pb)).unwrap());
    prop_assert_eq!(red(&pa.derivative()), red(&pa).derivative());
    prop_assert_eq!(red(&pa).constant_term(), ring.from_integer(&pa.constant_term()));
    let at_x = pa.eval(&Integer::from(x)).unwrap();
    prop_assert_eq!(red(&pa).eval(&ring.elem(x)).unwrap(), ring.from_integer(&at_x));
    Ok(())
}

/// ϑ is a derivation raising homogeneous degree by 4.
pub fn check_derivation(p: &[(u32, u32, i32, i32)], q: &[(u32, u32, i32, i32)]) -> Result<(), TestCaseError> {
    let (p, q) = (build_theta(p), build_theta(q));
    let lhs = (&p * &q).rs_derivation();
    let rhs = &p.rs_derivation() * &q + &p * &q.rs_derivation();
    prop_assert_eq!(lhs, rhs);
    let sum = p.clone() + q.clone();
    prop_assert_eq!(sum.rs_derivation(), p.rs_derivation() + q.rs_derivation());
    if let Some(d) = p.homogeneous_degree() {
        let dp = p.rs_derivation();
        prop_assert!(dp.is_zero() || dp.homogeneous_degree() == Some(d + 4));
    }
    Ok(())
}

/// Hasse bound for random short curves at small good primes.
pub fn check_hasse(a: i64, b: i64, qi: usize) -> Result<(), TestCaseError> {
    let q = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101, 997][qi % 12];
    let curve = CurveSpec { a: Integer::from(a), b: Integer::from(b) };
    if curve.discriminant().is_divisible(&Integer::from(q)) {
        return Ok(());
    }
    let t = ap(&curve, q).unwrap();
    prop_assert!((t * t) as u64 <= 4 * q);
    Ok(())
}
