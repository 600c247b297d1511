//! Generalized Laguerre and Hermite polynomials at high precision.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// `L_h^α(x)` by `(h+1)L_{h+1} = (2h+1+α−x)L_h − (h+α)L_{h−1}`.
/// Works at the precision of `x`.
pub fn laguerre(h: u32, alpha: &Rational, x: &Float) -> Float {
    let w = x.prec();
    let a = Float::with_val(w, alpha);
    let mut prev = Float::with_val(w, 1);
    if h == 0 {
        return prev;
    }
    let mut cur = Float::with_val(w, &a + 1u32) - x;
    for n in 1..h {
        let c = Float::with_val(w, &a + (2 * n + 1)) - x;
        let d = Float::with_val(w, &a + n);
        let next = (c * &cur - d * &prev) / (n + 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `binom(h + α, m)` for rational `α`.
fn gen_binomial(h: u32, alpha: &Rational, m: u32) -> Rational {
    let top = Rational::from(alpha + h);
    let mut r = Rational::from(1);
    for i in 0..m {
        r *= Rational::from(&top - i);
        r /= i + 1;
    }
    r
}

/// `L_h^α(x) = Σ_{j=0}^{h} binom(h+α, h−j) (−x)^j / j!`, term by term.
pub fn laguerre_by_sum(h: u32, alpha: &Rational, x: &Float) -> Float {
    let w = x.prec();
    let mut sum = Float::with_val(w, 0);
    let mut xj = Float::with_val(w, 1);
    let mut jfact = Integer::from(1);
    for j in 0..=h {
        if j > 0 {
            xj *= x;
            xj = -xj;
            jfact *= j;
        }
        let c = gen_binomial(h, alpha, h - j) / Rational::from(&jfact);
        sum += Float::with_val(w, &xj * &c);
    }
    sum
}

/// Physicists' Hermite `H_n(x)` by `H_{n+1} = 2xH_n − 2nH_{n−1}`.
pub fn hermite(n: u32, x: &Float) -> Float {
    let w = x.prec();
    let mut prev = Float::with_val(w, 1);
    if n == 0 {
        return prev;
    }
    let mut cur = Float::with_val(w, x * 2u32);
    for k in 1..n {
        let next = Float::with_val(w, x * 2u32) * &cur - Float::with_val(w, &prev * (2 * k));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `H_n(x) = Σ_{j ≤ n/2} n!/(j!(n−2j)!) (−1)^j (2x)^{n−2j}`.
pub fn hermite_by_sum(n: u32, x: &Float) -> Float {
    let w = x.prec();
    let two_x = Float::with_val(w, x * 2u32);
    let mut sum = Float::with_val(w, 0);
    for j in 0..=n / 2 {
        let c = Integer::from(Integer::factorial(n))
            / (Integer::from(Integer::factorial(j)) * Integer::from(Integer::factorial(n - 2 * j)));
        let mut term = two_x.clone().pow(n - 2 * j) * c;
        if j % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: u32 = 256;

    fn f(v: f64) -> Float {
        Float::with_val(W, v)
    }

    fn close(a: &Float, b: &Float, bits: i32) -> bool {
        let d = Float::with_val(W, a - b).abs();
        let scale = Float::with_val(W, a.abs_ref()).max(&Float::with_val(W, 1));
        d <= scale * Float::with_val(W, Float::i_exp(1, -bits))
    }

    #[test]
    fn laguerre_small() {
        let h = Rational::from((-1, 2));
        assert_eq!(laguerre(0, &h, &f(3.7)), 1);
        // L_1^{−1/2}(x) = 1/2 − x
        assert!(close(&laguerre(1, &h, &f(3.7)), &f(-3.2), 240));
        let x = f(2.25);
        let half = Rational::from((1, 2));
        assert!(close(&laguerre(2, &half, &x), &laguerre_by_sum(2, &half, &x), 240));
    }

    #[test]
    fn hermite_small() {
        assert_eq!(hermite(0, &f(0.3)), 1);
        assert!(close(&hermite(1, &f(0.3)), &f(0.6), 250));
        assert_eq!(hermite(4, &f(1.0)), -20);
        assert_eq!(hermite_by_sum(4, &f(1.0)), -20);
    }

    #[test]
    fn laguerre_hermite_relation() {
        // H_{2n}(x) = (−4)^n n! L_n^{−1/2}(x²)
        let alpha = Rational::from((-1, 2));
        for n in 0..=10u32 {
            for i in 0..20 {
                let x = Float::with_val(W, 0.37 * i as f64 - 3.1);
                let lhs = hermite(2 * n, &x);
                let c = Integer::from(-4).pow(n) * Integer::from(Integer::factorial(n));
                let rhs = laguerre(n, &alpha, &Float::with_val(W, x.square_ref())) * c;
                assert!(close(&lhs, &rhs, 240), "n = {n}, x = {x}");
            }
        }
    }
}
