//! Tate's algorithm: local reduction data of a Weierstrass model at a prime.

use std::fmt;

use rug::ops::Pow;
use rug::Integer;

use crate::error::{Error, Result};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weierstrass {
    pub a1: Integer,
    pub a2: Integer,
    pub a3: Integer,
    pub a4: Integer,
    pub a6: Integer,
}

impl Weierstrass {
    pub fn short(a: &Integer, b: &Integer) -> Self {
        let z = Integer::new;
        Self { a1: z(), a2: z(), a3: z(), a4: a.clone(), a6: b.clone() }
    }

    pub fn b2(&self) -> Integer {
        Integer::from(&self.a1 * &self.a1) + Integer::from(4 * &self.a2)
    }

    pub fn b4(&self) -> Integer {
        Integer::from(&self.a1 * &self.a3) + Integer::from(2 * &self.a4)
    }

    pub fn b6(&self) -> Integer {
        Integer::from(&self.a3 * &self.a3) + Integer::from(4 * &self.a6)
    }

    pub fn b8(&self) -> Integer {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        Integer::from(a1 * a1) * a6 + Integer::from(4 * a2) * a6 - Integer::from(a1 * a3) * a4
            + Integer::from(a2 * a3) * a3
            - Integer::from(a4 * a4)
    }

    pub fn c4(&self) -> Integer {
        let b2 = self.b2();
        Integer::from(&b2 * &b2) - 24 * self.b4()
    }

    pub fn c6(&self) -> Integer {
        let b2 = self.b2();
        -Integer::from(&b2 * &b2) * &b2 + 36 * b2 * self.b4() - 216 * self.b6()
    }

    pub fn discriminant(&self) -> Integer {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -Integer::from(&b2 * &b2) * &b8 - 8 * Integer::from(&b4 * &b4) * &b4 - 27 * Integer::from(&b6 * &b6)
            + 9 * b2 * b4 * b6
    }

    /// Substitution `x = x' + r`, `y = y' + s·x' + t`.
    pub fn rst(&self, r: &Integer, s: &Integer, t: &Integer) -> Self {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let r2 = Integer::from(r * r);
        let a1n = Integer::from(a1 + 2 * s.clone());
        let a2n = Integer::from(a2 - Integer::from(s * a1)) + 3 * r.clone() - Integer::from(s * s);
        let a3n = Integer::from(a3 + Integer::from(r * a1)) + 2 * t.clone();
        let a4n = Integer::from(a4 - Integer::from(s * a3)) + 2 * Integer::from(r * a2)
            - (Integer::from(t + Integer::from(r * s))) * a1
            + 3 * r2.clone()
            - 2 * Integer::from(s * t);
        let a6n = Integer::from(a6 + Integer::from(r * a4)) + Integer::from(&r2 * a2) + Integer::from(&r2 * r)
            - Integer::from(t * a3)
            - Integer::from(t * t)
            - Integer::from(r * t) * a1;
        Self { a1: a1n, a2: a2n, a3: a3n, a4: a4n, a6: a6n }
    }

    /// Number of affine points plus the point at infinity over `F_q`,
    /// by exhaustive enumeration. Only sensible for small `q`.
    pub fn count_points(&self, q: u64) -> u64 {
        let m = Integer::from(q);
        let red = |v: &Integer| -> u64 {
            let mut r = Integer::from(v % &m);
            if r.is_negative() {
                r += &m;
            }
            r.to_u64().unwrap()
        };
        let (a1, a2, a3, a4, a6) = (red(&self.a1), red(&self.a2), red(&self.a3), red(&self.a4), red(&self.a6));
        let q128 = q as u128;
        let mut count = 1u64;
        for x in 0..q as u128 {
            let rhs = (((x * x % q128) * x) + a2 as u128 * (x * x % q128) + a4 as u128 * x + a6 as u128) % q128;
            for y in 0..q as u128 {
                let lhs = (y * y + a1 as u128 * x % q128 * y + a3 as u128 * y) % q128;
                if lhs == rhs {
                    count += 1;
                }
            }
        }
        count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonSplitMultiplicative,
    Additive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalData {
    pub prime: u64,
    pub conductor_exponent: u32,
    pub kodaira: Kodaira,
    pub reduction: Reduction,
    /// A model minimal at `prime`.
    pub minimal_model: Weierstrass,
}

fn val(x: &Integer, p: &Integer) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let mut x = x.clone();
    let mut v = 0;
    while x.is_divisible(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Reduce into `[0, p)`.
fn red(x: Integer, p: &Integer) -> Integer {
    let mut r = x % p;
    if r.is_negative() {
        r += p;
    }
    r
}

/// Inverse of `x` modulo the prime `p`.
fn inv(x: &Integer, p: &Integer) -> Integer {
    red(x.clone(), p).invert(p).expect("unit modulo p")
}

/// Local data of `curve` at the prime `p` (Tate's algorithm, with the
/// non-minimal restart).
pub fn local_data(curve: &Weierstrass, p: u64) -> Result<LocalData> {
    let pi = Integer::from(p);
    let pd = |x: &Integer| x.is_divisible(&pi);
    let mut e = curve.clone();
    loop {
        let delta = e.discriminant();
        if delta.is_zero() {
            return Err(Error::Singular);
        }
        let vd = val(&delta, &pi);
        if vd == 0 {
            return Ok(LocalData {
                prime: p,
                conductor_exponent: 0,
                kodaira: Kodaira::I0,
                reduction: Reduction::Good,
                minimal_model: e,
            });
        }

        // move the singular point to (0, 0)
        let (r, t) = match p {
            2 => {
                if pd(&e.b2()) {
                    let r = red(e.a4.clone(), &pi);
                    let t = red(Integer::from(&r * (Integer::from(1) + &e.a2 + &e.a4)) + &e.a6, &pi);
                    (r, t)
                } else {
                    let r = red(e.a3.clone(), &pi);
                    let t = red(Integer::from(&r + &e.a4), &pi);
                    (r, t)
                }
            }
            3 => {
                let r = if pd(&e.b2()) { red(-e.b6(), &pi) } else { red(-e.b2() * e.b4(), &pi) };
                let t = red(Integer::from(&e.a1 * &r) + &e.a3, &pi);
                (r, t)
            }
            _ => {
                let c4 = e.c4();
                let r = if pd(&c4) {
                    -inv(&Integer::from(12), &pi) * e.b2()
                } else {
                    -inv(&Integer::from(12 * c4.clone()), &pi) * (e.c6() + e.b2() * &c4)
                };
                let r = red(r, &pi);
                let t = red(-inv(&Integer::from(2), &pi) * (Integer::from(&e.a1 * &r) + &e.a3), &pi);
                (r, t)
            }
        };
        e = e.rst(&r, &Integer::new(), &t);

        if !pd(&e.c4()) {
            // multiplicative: split iff T² + a1·T − a2 has a root mod p
            let split = (0..p).any(|x| {
                let x = Integer::from(x);
                (Integer::from(&x * &x) + Integer::from(&e.a1 * &x) - &e.a2).is_divisible(&pi)
            });
            return Ok(LocalData {
                prime: p,
                conductor_exponent: 1,
                kodaira: Kodaira::In(vd),
                reduction: if split { Reduction::SplitMultiplicative } else { Reduction::NonSplitMultiplicative },
                minimal_model: e,
            });
        }

        let additive = |f: u32, kodaira: Kodaira, e: Weierstrass| LocalData {
            prime: p,
            conductor_exponent: f,
            kodaira,
            reduction: Reduction::Additive,
            minimal_model: e,
        };

        if val(&e.a6, &pi) < 2 {
            return Ok(additive(vd, Kodaira::II, e));
        }
        if val(&e.b8(), &pi) < 3 {
            return Ok(additive(vd - 1, Kodaira::III, e));
        }
        if val(&e.b6(), &pi) < 3 {
            return Ok(additive(vd - 2, Kodaira::IV, e));
        }

        // make p | a1, a2; p² | a3, a4; p³ | a6
        let (s, t) = if p == 2 {
            let s = red(e.a2.clone(), &pi);
            let t = 2 * red(Integer::from(&e.a6 / 4u32), &pi);
            (s, t)
        } else {
            let h = inv(&Integer::from(2), &pi);
            (red(-Integer::from(&e.a1 * &h), &pi), red(-Integer::from(&e.a3 * &h), &pi))
        };
        e = e.rst(&Integer::new(), &s, &t);

        let p2 = Integer::from(&pi * &pi);
        let p3 = Integer::from(&p2 * &pi);
        let b = Integer::from(&e.a2 / &pi);
        let c = Integer::from(&e.a4 / &p2);
        let d = Integer::from(&e.a6 / &p3);
        let w = 27 * Integer::from(&d * &d) - Integer::from(&b * &b) * Integer::from(&c * &c)
            + 4 * Integer::from(&b * &b) * &b * &d
            - 18 * Integer::from(&b * &c) * &d
            + 4 * Integer::from(&c * &c) * &c;
        let x = 3 * c.clone() - Integer::from(&b * &b);

        if !pd(&w) {
            return Ok(additive(vd - 4, Kodaira::I0Star, e));
        }
        if !pd(&x) {
            // double root: move it to T = 0, then climb the I_m* ladder
            let r = match p {
                2 => c.clone(),
                3 => Integer::from(&b * &c),
                _ => (Integer::from(&b * &c) - 9 * d.clone()) * inv(&Integer::from(2 * x.clone()), &pi),
            };
            let r = Integer::from(&pi * red(r, &pi));
            e = e.rst(&r, &Integer::new(), &Integer::new());
            let mut m = 1u32;
            let mut mx = p2.clone();
            let mut my = p2.clone();
            loop {
                let a3t = Integer::from(&e.a3 / &my);
                let a6t = Integer::from(&e.a6 / Integer::from(&mx * &my));
                if !pd(&(Integer::from(&a3t * &a3t) + 4 * a6t.clone())) {
                    break;
                }
                let t = if p == 2 {
                    Integer::from(&my * &a6t)
                } else {
                    Integer::from(&my * red(-a3t * inv(&Integer::from(2), &pi), &pi))
                };
                e = e.rst(&Integer::new(), &Integer::new(), &t);
                my *= &pi;
                m += 1;
                let a2t = Integer::from(&e.a2 / &pi);
                let a4t = Integer::from(&e.a4 / Integer::from(&pi * &mx));
                let a6t = Integer::from(&e.a6 / Integer::from(&mx * &my));
                if !pd(&(Integer::from(&a4t * &a4t) - 4 * Integer::from(&a6t * &a2t))) {
                    break;
                }
                let r = if p == 2 {
                    Integer::from(&mx * red(Integer::from(&a6t * &a2t), &pi))
                } else {
                    Integer::from(&mx * red(-a4t * inv(&Integer::from(2 * a2t.clone()), &pi), &pi))
                };
                e = e.rst(&r, &Integer::new(), &Integer::new());
                mx *= &pi;
                m += 1;
            }
            return Ok(additive(vd - m - 4, Kodaira::InStar(m), e));
        }

        // triple root: move it to T = 0
        let r = match p {
            2 => b.clone(),
            3 => red(-d.clone(), &pi),
            _ => -b.clone() * inv(&Integer::from(3), &pi),
        };
        let r = Integer::from(&pi * red(r, &pi));
        e = e.rst(&r, &Integer::new(), &Integer::new());
        let a3t = Integer::from(&e.a3 / &p2);
        let a6t = Integer::from(&e.a6 / Integer::from(&p2 * &p2));
        if !pd(&(Integer::from(&a3t * &a3t) + 4 * a6t.clone())) {
            return Ok(additive(vd - 6, Kodaira::IVStar, e));
        }
        let t = if p == 2 {
            Integer::from(&p2 * red(a6t, &pi))
        } else {
            Integer::from(&p2 * red(-a3t * inv(&Integer::from(2), &pi), &pi))
        };
        e = e.rst(&Integer::new(), &Integer::new(), &t);
        if val(&e.a4, &pi) < 4 {
            return Ok(additive(vd - 7, Kodaira::IIIStar, e));
        }
        if val(&e.a6, &pi) < 6 {
            return Ok(additive(vd - 8, Kodaira::IIStar, e));
        }

        // not minimal at p: scale by u = p and start over
        e = Weierstrass {
            a1: Integer::from(&e.a1 / &pi),
            a2: Integer::from(&e.a2 / &p2),
            a3: Integer::from(&e.a3 / &p3),
            a4: Integer::from(&e.a4 / Integer::from(&p2 * &p2)),
            a6: Integer::from(&e.a6 / pi.clone().pow(6u32)),
        };
    }
}
