//! Constant-term divisibility criteria and their rank verdicts.
//!
//! For `E_p` with `p ≡ 1, 9 (mod 16)` the test is `p | f_N(0)` with
//! `N = 3(p−1)/8`; for `A_p` with `p ≡ 1 (mod 9)` it is `p | x_n(0)` (and,
//! equivalently, `p | a_n(0)`) with `n = (p−1)/3`. A divisible constant term
//! forces rank 2 when the normalized L-value is an integer; the converse,
//! and hence the rank-0 verdict, is conditional on BSD.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes::{is_prime, primes_in};
use crate::recurrences::{constant_term_mod, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveFamily {
    /// `y^2 = x^3 + p x`
    Ep,
    /// `x^3 + y^3 = p`
    Ap,
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveFamily::Ep => "Ep",
            CurveFamily::Ap => "Ap",
        })
    }
}

impl FromStr for CurveFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Ep" | "ep" | "E" => Ok(CurveFamily::Ep),
            "Ap" | "ap" | "A" => Ok(CurveFamily::Ap),
            other => Err(format!("unknown curve family `{other}` (expected Ep or Ap)")),
        }
    }
}

impl Serialize for CurveFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Index arithmetic for an admissible prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Admissibility {
    pub p: u64,
    pub family: CurveFamily,
    /// Recurrence index: `3(p−1)/8` for E_p, `(p−1)/3` for A_p.
    pub index: u64,
    /// Weight `k`: `(3p+1)/4` for E_p; `(2p+1)/3` for A_p (derived from `k = 6N+1`).
    pub weight: u64,
}

/// `Some` iff `p` is prime and in the family's congruence class.
pub fn admissible(p: u64, family: CurveFamily) -> Option<Admissibility> {
    if !is_prime(p) {
        return None;
    }
    match family {
        CurveFamily::Ep if p % 16 == 1 || p % 16 == 9 => {
            Some(Admissibility { p, family, index: 3 * (p - 1) / 8, weight: (3 * p + 1) / 4 })
        }
        CurveFamily::Ap if p % 9 == 1 => {
            Some(Admissibility { p, family, index: (p - 1) / 3, weight: (2 * p + 1) / 3 })
        }
        _ => None,
    }
}

/// One criterion evaluation. Serializes as the record
/// `p, family, index, k, residue, divisible, predicted_rank_bsd`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub p: u64,
    pub family: CurveFamily,
    pub index: u64,
    pub k: u64,
    /// `F_index(0) mod p`.
    pub residue: u64,
    pub divisible: bool,
    /// 2 if divisible, else 0; the rank-0 side assumes BSD.
    pub predicted_rank_bsd: u8,
    #[serde(skip)]
    pub recurrence: Family,
    #[serde(skip)]
    pub note: &'static str,
}

const NOTE_EP: &str = "divisible => rank 2 given S_p in Z; converse under BSD";
const NOTE_AP: &str = "divisible => rank 2 under BSD; k = (2p+1)/3 is derived";

fn evaluate(adm: &Admissibility, recurrence: Family) -> Result<CriterionVerdict> {
    let residue = constant_term_mod(recurrence, adm.index, adm.p)?;
    let divisible = residue == 0;
    Ok(CriterionVerdict {
        p: adm.p,
        family: adm.family,
        index: adm.index,
        k: adm.weight,
        residue,
        divisible,
        predicted_rank_bsd: if divisible { 2 } else { 0 },
        recurrence,
        note: match adm.family {
            CurveFamily::Ep => NOTE_EP,
            CurveFamily::Ap => NOTE_AP,
        },
    })
}

fn require(p: u64, family: CurveFamily) -> Result<Admissibility> {
    admissible(p, family).ok_or_else(|| Error::Inadmissible { p, family: family.to_string() })
}

pub fn verdict_ep(p: u64) -> Result<CriterionVerdict> {
    evaluate(&require(p, CurveFamily::Ep)?, Family::F)
}

/// Both A_p paths for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApVerdict {
    pub a_path: CriterionVerdict,
    pub x_path: CriterionVerdict,
}

impl ApVerdict {
    pub fn agree(&self) -> bool {
        self.a_path.divisible == self.x_path.divisible
    }
}

/// Runs both the `a` and `x` recurrences. Disagreement is returned as a
/// value here; [`scan`] turns it into [`Error::CrossCheck`].
pub fn verdict_ap(p: u64) -> Result<ApVerdict> {
    let adm = require(p, CurveFamily::Ap)?;
    Ok(ApVerdict { a_path: evaluate(&adm, Family::A)?, x_path: evaluate(&adm, Family::X)? })
}

/// Verdicts for every admissible prime in `[lo, hi]`, ordered by `p`.
///
/// Output does not depend on `jobs`. For A_p the x-path verdict is
/// returned after checking it against the a-path.
pub fn scan(family: CurveFamily, lo: u64, hi: u64, jobs: usize) -> Result<Vec<CriterionVerdict>> {
    if lo < 2 || hi < 2 || lo > hi {
        return Err(Error::Range(lo, hi));
    }
    let candidates: Vec<Admissibility> =
        primes_in(lo, hi).into_iter().filter_map(|p| admissible(p, family)).collect();
    let work = |adm: &Admissibility| -> Result<CriterionVerdict> {
        match family {
            CurveFamily::Ep => evaluate(adm, Family::F),
            CurveFamily::Ap => {
                let v = verdict_ap(adm.p)?;
                if !v.agree() {
                    return Err(Error::CrossCheck(format!(
                        "a-path and x-path disagree at p = {} (residues {} and {})",
                        adm.p, v.a_path.residue, v.x_path.residue
                    )));
                }
                Ok(v.x_path)
            }
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| candidates.par_iter().map(work).collect())
}
