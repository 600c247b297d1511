use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Requested accuracy in bits. Arithmetic runs with [`GUARD_BITS`] extra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Precision(u32);

pub const GUARD_BITS: u32 = 64;

impl Precision {
    pub const DEFAULT: Precision = Precision(256);
    pub const MIN_BITS: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::PrecisionTooLow(bits));
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn working(self) -> u32 {
        self.0 + GUARD_BITS
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub fn pi(prec: Precision) -> Float {
    Float::with_val(prec.working(), Constant::Pi)
}

/// `Ω_E = Γ(1/4)² / (2√π) ≈ 3.708149`
pub fn omega_e(prec: Precision) -> Float {
    let w = prec.working();
    let g = Float::with_val(w, 0.25).gamma();
    let sqrt_pi = pi(prec).sqrt();
    Float::with_val(w, &g * &g) / (sqrt_pi * 2u32)
}

/// `Ω_A = Γ(1/3)³ / (2π√3)`
pub fn omega_a(prec: Precision) -> Float {
    let w = prec.working();
    let g = Float::with_val(w, Rational::from((1, 3))).gamma();
    let g3 = Float::with_val(w, &g * &g) * &g;
    let sqrt3 = Float::with_val(w, 3).sqrt();
    g3 / (pi(prec) * sqrt3 * 2u32)
}
