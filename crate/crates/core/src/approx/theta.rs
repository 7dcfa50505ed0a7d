use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// How many ulps the float enclosure of an irrational `θ` is widened by.
const ENCLOSURE_ULPS: u32 = 4;

/// The parameter `θ` of `λ_θ`.
#[derive(Clone, Debug, PartialEq)]
pub enum Theta {
    /// `p/q` in lowest terms with `q ≥ 1`; all orbit arithmetic is exact.
    Rational { p: i64, q: u64 },
    /// A float value together with a guaranteed enclosure `[lo, hi]` of the
    /// intended real number.
    Irrational { value: f64, lo: f64, hi: f64, name: String },
}

/// Position of an orbit point relative to the arcs `[k/g, (k+1)/g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Arc(usize),
    /// The enclosure straddles an arc boundary.
    Ambiguous,
}

fn widen(x: f64, ulps: u32) -> (f64, f64) {
    let (mut lo, mut hi) = (x, x);
    for _ in 0..ulps {
        lo = lo.next_down();
        hi = hi.next_up();
    }
    (lo, hi)
}

impl Theta {
    pub fn rational(p: i64, q: u64) -> Result<Theta> {
        if q == 0 {
            return Err(Error::Invalid("θ = p/0".into()));
        }
        let g = (p.unsigned_abs()).gcd(&q).max(1);
        Ok(Theta::Rational {
            p: p / g as i64,
            q: q / g,
        })
    }

    /// `(√5 − 1)/2`.
    pub fn golden() -> Theta {
        let value = (5f64.sqrt() - 1.0) / 2.0;
        let (lo, hi) = widen(value, ENCLOSURE_ULPS);
        Theta::Irrational {
            value,
            lo,
            hi,
            name: "golden".into(),
        }
    }

    pub fn from_f64(value: f64) -> Result<Theta> {
        if !value.is_finite() {
            return Err(Error::Invalid("θ must be finite".into()));
        }
        let (lo, hi) = widen(value, ENCLOSURE_ULPS);
        Ok(Theta::Irrational {
            value,
            lo,
            hi,
            name: format!("{value}"),
        })
    }

    /// Accepts `golden`, `sqrt2` (for `√2 − 1`), `p/q`, or a decimal number.
    pub fn parse(s: &str) -> Result<Theta> {
        let s = s.trim();
        match s {
            "golden" => return Ok(Theta::golden()),
            "sqrt2" => {
                let value = 2f64.sqrt() - 1.0;
                let (lo, hi) = widen(value, ENCLOSURE_ULPS);
                return Ok(Theta::Irrational {
                    value,
                    lo,
                    hi,
                    name: "sqrt2".into(),
                });
            }
            _ => {}
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| Error::Invalid(format!("bad θ {s:?}")))?;
            let q: u64 = q.trim().parse().map_err(|_| Error::Invalid(format!("bad θ {s:?}")))?;
            return Theta::rational(p, q);
        }
        let v: f64 = s.parse().map_err(|_| Error::Invalid(format!("bad θ {s:?}")))?;
        Theta::from_f64(v)
    }

    pub fn value(&self) -> f64 {
        match self {
            Theta::Rational { p, q } => *p as f64 / *q as f64,
            Theta::Irrational { value, .. } => *value,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Theta::Rational { .. })
    }

    /// Continued-fraction convergents `p_k/q_k` of the float value (or of the exact rational).
    pub fn convergents(&self, max_terms: usize) -> Vec<(i64, u64)> {
        let mut out = Vec::new();
        let (mut h0, mut h1) = (0i128, 1i128);
        let (mut k0, mut k1) = (1i128, 0i128);
        match self {
            Theta::Rational { p, q } => {
                let (mut num, mut den) = (*p as i128, *q as i128);
                while den != 0 && out.len() < max_terms {
                    let a = num.div_euclid(den);
                    (num, den) = (den, num - a * den);
                    (h0, h1) = (h1, a * h1 + h0);
                    (k0, k1) = (k1, a * k1 + k0);
                    out.push((h1 as i64, k1 as u64));
                }
            }
            Theta::Irrational { value, .. } => {
                let mut x = *value;
                while out.len() < max_terms {
                    let a = x.floor();
                    (h0, h1) = (h1, a as i128 * h1 + h0);
                    (k0, k1) = (k1, a as i128 * k1 + k0);
                    if k1 > 1 << 52 {
                        break;
                    }
                    out.push((h1 as i64, k1 as u64));
                    let frac = x - a;
                    if frac < 1e-12 {
                        break;
                    }
                    x = 1.0 / frac;
                }
            }
        }
        let _ = (h0, k0);
        out
    }

    /// Enclosure `[lo, hi]` of `θa mod 1`, with `lo ∈ [0, 1)` and `hi ≥ lo` (possibly `≥ 1`).
    pub fn orbit_interval(&self, a: i64) -> (f64, f64) {
        match self {
            Theta::Rational { p, q } => {
                let r = (*p as i128 * a as i128).rem_euclid(*q as i128);
                let x = r as f64 / *q as f64;
                (x, x)
            }
            Theta::Irrational { .. } if a == 0 => (0.0, 0.0),
            Theta::Irrational { lo, hi, .. } => {
                let af = a as f64;
                let (x, y) = if a >= 0 { (lo * af, hi * af) } else { (hi * af, lo * af) };
                let (x, y) = (x.next_down(), y.next_up());
                let base = x.floor();
                (x - base, y - base)
            }
        }
    }

    /// Exact residue `r` with `θa ≡ r/q (mod 1)` for rational `θ`.
    pub fn rational_residue(&self, a: i64) -> Option<(u64, u64)> {
        match self {
            Theta::Rational { p, q } => Some(((*p as i128 * a as i128).rem_euclid(*q as i128) as u64, *q)),
            Theta::Irrational { .. } => None,
        }
    }

    /// Which arc `[k/g, (k+1)/g)` contains `θa mod 1`.
    pub fn arc_of(&self, a: i64, g: usize) -> Membership {
        match self.rational_residue(a) {
            Some((r, q)) => Membership::Arc((r as u128 * g as u128 / q as u128) as usize),
            None => {
                let (lo, hi) = self.orbit_interval(a);
                if hi == 0.0 {
                    return Membership::Arc(0);
                }
                let gf = g as f64;
                let k_lo = (lo * gf).next_down().floor();
                let k_hi = (hi * gf).next_up().floor();
                if k_lo == k_hi && k_lo >= 0.0 && (k_lo as usize) < g {
                    Membership::Arc(k_lo as usize)
                } else {
                    Membership::Ambiguous
                }
            }
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Rational { p, q } => write!(f, "{p}/{q}"),
            Theta::Irrational { name, .. } => write!(f, "{name}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_enclosure_contains_value() {
        let t = Theta::golden();
        if let Theta::Irrational { value, lo, hi, .. } = t {
            assert!(lo < value && value < hi);
            assert!(hi - lo < 1e-15);
        }
        // 1/φ satisfies x² + x − 1 = 0
        let v = Theta::golden().value();
        assert!((v * v + v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn convergents_of_golden_are_fibonacci_ratios() {
        let c = Theta::golden().convergents(10);
        let fib = [0u64, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
        for (k, &(p, q)) in c.iter().enumerate().skip(1) {
            assert_eq!((p as u64, q), (fib[k], fib[k + 1]));
        }
        assert_eq!(Theta::parse("3/8").unwrap().convergents(10), vec![(0, 1), (1, 2), (1, 3), (3, 8)]);
    }

    #[test]
    fn arc_membership() {
        let t = Theta::rational(3, 8).unwrap();
        assert_eq!(t.arc_of(1, 8), Membership::Arc(3));
        assert_eq!(t.arc_of(-1, 8), Membership::Arc(5));
        assert_eq!(t.arc_of(3, 16), Membership::Arc(2));
        let g = Theta::golden();
        assert_eq!(g.arc_of(1, 8), Membership::Arc(4));
        assert_eq!(g.arc_of(0, 8), Membership::Arc(0));
        // θ·1 = 0.618… sits well inside [0.6, 0.7)
        assert_eq!(g.arc_of(1, 10), Membership::Arc(6));
    }

    #[test]
    fn reduces_rationals() {
        assert_eq!(Theta::parse("6/16").unwrap(), Theta::Rational { p: 3, q: 8 });
        assert!(Theta::parse("1/0").is_err());
        assert!(Theta::parse("abc").is_err());
    }
}
