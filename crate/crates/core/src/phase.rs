//! Exact phases in ℚ/ℤ.
//!
//! A character value `e^{2πi q}` is carried as the rational `q` reduced into
//! `[0, 1)`. Complex numbers only appear when a phase is baked into a matrix.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use num_integer::Integer;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// The phase `num / den mod 1`.
    pub fn new(num: i128, den: u64) -> Phase {
        assert!(den > 0, "phase denominator must be positive");
        let d = den as i128;
        let n = num.rem_euclid(d);
        let g = n.gcd(&d);
        Phase {
            num: (n / g) as u64,
            den: (d / g) as u64,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `k · q mod 1`.
    pub fn times(self, k: i128) -> Phase {
        Phase::new(self.num as i128 * k, self.den)
    }

    /// The unit complex number `e^{2πi q}`.
    ///
    /// Quarter turns are returned exactly; other phases are evaluated on the
    /// representative in `(-1/2, 1/2]` to keep the argument small.
    pub fn to_c64(self) -> C64 {
        match (self.num, self.den) {
            (0, _) => C64::new(1.0, 0.0),
            (1, 2) => C64::new(-1.0, 0.0),
            (1, 4) => C64::new(0.0, 1.0),
            (3, 4) => C64::new(0.0, -1.0),
            (n, d) => {
                let signed = if 2 * n > d { n as f64 - d as f64 } else { n as f64 };
                let angle = 2.0 * std::f64::consts::PI * signed / d as f64;
                C64::new(angle.cos(), angle.sin())
            }
        }
    }

    /// `|e^{2πi p} - e^{2πi q}| = 2 |sin(π (p - q))|`.
    pub fn chord(self, other: Phase) -> f64 {
        let diff = self - other;
        if diff.is_zero() {
            return 0.0;
        }
        let t = diff.num as f64 / diff.den as f64;
        2.0 * (std::f64::consts::PI * t).sin().abs()
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        if self.num == 0 {
            return rhs;
        }
        if rhs.num == 0 {
            return self;
        }
        if self.den == rhs.den {
            let d = self.den;
            let mut n = self.num + rhs.num;
            if n >= d {
                n -= d;
            }
            let g = n.gcd(&d);
            return Phase { num: n / g, den: d / g };
        }
        let l = self.den.lcm(&rhs.den);
        let n = self.num as i128 * (l / self.den) as i128 + rhs.num as i128 * (l / rhs.den) as i128;
        Phase::new(n, l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        if self.num == 0 {
            return Phase::ZERO;
        }
        Phase {
            num: self.den - self.num,
            den: self.den,
        }
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |acc, p| acc + p)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Phase, Error> {
        let bad = || Error::Invalid(format!("not a rational phase: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| bad())?;
                let d: u64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Phase::new(n, d))
            }
            None => {
                let n: i128 = s.trim().parse().map_err(|_| bad())?;
                Ok(Phase::new(n, 1))
            }
        }
    }
}

impl serde::Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Phase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
