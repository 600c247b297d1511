//! The five three-term polynomial recurrences.
//!
//! Every family has the shape
//!
//! ```text
//! F_{n+1}(t) = D(t)·F_n'(t) + A_n(t)·F_n(t) + B_n(t)·F_{n-1}(t)
//! ```
//!
//! with small integer polynomials `D`, `A_n`, `B_n`:
//!
//! | family | `D`            | `A_n`            | `B_n`              | seeds         |
//! |--------|----------------|------------------|--------------------|---------------|
//! | `f`    | −12(t+1)(t+2)  | (4n+1)(2t+3)     | −2n(2n−1)(t²+3t+3) | 1, 2t+3       |
//! | `a`    | −(1−8t³)       | −(16n+3)t²       | −4n(2n−1)t         | 1, −3t²       |
//! | `x`    | −2(1−8t³)      | −8nt²            | −n(2n−1)t          | 1, 0          |
//! | `y`    | −2(1−8t³)      | −8nt²            | −n(2n+1)t          | 1, 0          |
//! | `z`    | −(t−1)(9t−1)   | (6t−2)n+2        | −2n(2n+1)t         | 1/2, 1        |
//!
//! `z` has a half-integer seed, so it is only defined over [`Rationals`] and
//! over residues modulo odd primes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{CoefficientRing, Integers, Polynomial, Rationals, Residues};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `f_n`, the E_p family.
    F,
    /// `a_n`, the Villegas–Zagier family for A_p.
    A,
    /// `x_n`, the simplified A_p family (k = 6N+1).
    X,
    /// `y_n`, A_p with k = 6N+2.
    Y,
    /// `z_n`, A_p with k = 6N+4.
    Z,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::F, Family::A, Family::X, Family::Y, Family::Z];

    pub fn symbol(self) -> char {
        match self {
            Family::F => 'f',
            Family::A => 'a',
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        }
    }

    /// `(F_0, F_1)` over `ring`.
    pub fn seeds<R: CoefficientRing>(self, ring: &R) -> Result<(Polynomial<R>, Polynomial<R>)> {
        let p = |c: &[i64]| Polynomial::from_i64s(ring.clone(), c);
        Ok(match self {
            Family::F => (p(&[1]), p(&[3, 2])),
            Family::A => (p(&[1]), p(&[0, 0, -3])),
            Family::X | Family::Y => (p(&[1]), p(&[])),
            Family::Z => (Polynomial::constant(ring.clone(), ring.from_ratio(1, 2)?)?, p(&[1])),
        })
    }

    /// Integer coefficient lists of `(D, A_n, B_n)`, ascending in `t`.
    fn rule(self, n: i64) -> ([i64; 4], [i64; 3], [i64; 3]) {
        match self {
            Family::F => {
                let m = 4 * n + 1;
                let b = -2 * n * (2 * n - 1);
                ([-24, -36, -12, 0], [3 * m, 2 * m, 0], [3 * b, 3 * b, b])
            }
            Family::A => ([-1, 0, 0, 8], [0, 0, -(16 * n + 3)], [0, -4 * n * (2 * n - 1), 0]),
            Family::X => ([-2, 0, 0, 16], [0, 0, -8 * n], [0, -n * (2 * n - 1), 0]),
            Family::Y => ([-2, 0, 0, 16], [0, 0, -8 * n], [0, -n * (2 * n + 1), 0]),
            Family::Z => ([-1, 10, -9, 0], [2 - 2 * n, 6 * n, 0], [0, -2 * n * (2 * n + 1), 0]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "f" | "F" => Ok(Family::F),
            "a" | "A" => Ok(Family::A),
            "x" | "X" => Ok(Family::X),
            "y" | "Y" => Ok(Family::Y),
            "z" | "Z" => Ok(Family::Z),
            other => Err(format!("unknown recurrence family `{other}` (expected f, a, x, y or z)")),
        }
    }
}

/// `F_{n+1}` from `F_{n-1}` and `F_n`, for `n >= 1`.
pub fn step<R: CoefficientRing>(
    family: Family,
    n: u64,
    prev: &Polynomial<R>,
    cur: &Polynomial<R>,
) -> Result<Polynomial<R>> {
    if n == 0 {
        return Err(Error::StepIndex(n));
    }
    let ring = cur.ring().clone();
    let (d, a, b) = family.rule(n as i64);
    let lift = |c: &[i64]| Polynomial::from_i64s(ring.clone(), c);
    let next = lift(&d)
        .mul(&cur.derivative())?
        .add(&lift(&a).mul(cur)?)?
        .add(&lift(&b).mul(prev)?)?;
    Ok(next)
}

/// `F_N` over `ring`, keeping only a two-term window.
pub fn generate<R: CoefficientRing>(family: Family, n: u64, ring: &R) -> Result<Polynomial<R>> {
    let (mut prev, mut cur) = family.seeds(ring)?;
    if n == 0 {
        return Ok(prev);
    }
    for i in 1..n {
        let next = step(family, i, &prev, &cur)?;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `[F_0, ..., F_N]` over `ring`.
pub fn generate_all<R: CoefficientRing>(family: Family, n: u64, ring: &R) -> Result<Vec<Polynomial<R>>> {
    let (f0, f1) = family.seeds(ring)?;
    let mut out = vec![f0];
    if n >= 1 {
        out.push(f1);
    }
    for i in 1..n {
        let next = step(family, i, &out[i as usize - 1], &out[i as usize])?;
        out.push(next);
    }
    Ok(out)
}

/// `F_N(0) mod p`, computed entirely in `Z/pZ`.
pub fn constant_term_mod(family: Family, n: u64, p: u64) -> Result<u64> {
    let ring = Residues::new(p)?;
    Ok(generate(family, n, &ring)?.constant_term().value)
}

/// `F_N` with exact coefficients: over `Z` for `f, a, x, y`, over `Q` for `z`.
pub fn generate_exact(family: Family, n: u64) -> Result<Polynomial<Rationals>> {
    match family {
        Family::Z => generate(family, n, &Rationals),
        _ => Ok(generate(family, n, &Integers)?.to_rationals()),
    }
}
