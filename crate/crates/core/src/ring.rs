//! Finite unital rings: `ℤ/n`, prime fields, matrix rings over a commutative
//! base and finite products.
//!
//! Elements are encoded as indices `0..|R|` by mixed radix over the ring's
//! additive factors, so addition is coordinate-wise and needs no knowledge of
//! the multiplicative structure.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::group::{AbelianGroup, DEFAULT_ENUM_CAP};

/// Index of a ring element under the canonical encoding.
pub type Elem = usize;

/// Rings up to this order get precomputed addition and multiplication tables.
const TABLE_LIMIT: usize = 256;

/// Largest ring order accepted by the constructors.
pub const RING_ORDER_CAP: u128 = 1 << 24;

/// Serializable ring description, e.g. `{"kind":"matrix","n":2,"base":{"kind":"prime_field","p":2}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    Zmod { n: u64 },
    PrimeField { p: u64 },
    Matrix { n: usize, base: Box<RingDescriptor> },
    Product { factors: Vec<RingDescriptor> },
}

impl RingDescriptor {
    /// Parses either JSON or the shorthand `zmod:N`, `fp:P`, `mat:N:<ring>`,
    /// `prod(<ring>,<ring>,...)`.
    pub fn parse(s: &str) -> Result<RingDescriptor> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Invalid(format!("ring descriptor: {e}")));
        }
        parse_shorthand(s)
    }
}

fn parse_shorthand(s: &str) -> Result<RingDescriptor> {
    let bad = || Error::Invalid(format!("unrecognized ring shorthand {s:?}"));
    if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
        let mut factors = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                ',' if depth == 0 => {
                    factors.push(parse_shorthand(&inner[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        factors.push(parse_shorthand(&inner[start..])?);
        return Ok(RingDescriptor::Product { factors });
    }
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    match kind.trim() {
        "zmod" | "z" => Ok(RingDescriptor::Zmod {
            n: rest.trim().parse().map_err(|_| bad())?,
        }),
        "fp" | "prime_field" | "f" => Ok(RingDescriptor::PrimeField {
            p: rest.trim().parse().map_err(|_| bad())?,
        }),
        "mat" | "matrix" => {
            let (n, base) = rest.split_once(':').ok_or_else(bad)?;
            Ok(RingDescriptor::Matrix {
                n: n.trim().parse().map_err(|_| bad())?,
                base: Box::new(parse_shorthand(base)?),
            })
        }
        _ => Err(bad()),
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Zmod { n } => write!(f, "Z/{n}"),
            RingDescriptor::PrimeField { p } => write!(f, "F_{p}"),
            RingDescriptor::Matrix { n, base } => write!(f, "M_{n}({base})"),
            RingDescriptor::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|r| r.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

#[derive(Debug)]
enum Repr {
    Cyclic(u64),
    Matrix { n: usize, base: FiniteRing },
    Product(Vec<FiniteRing>),
}

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

#[derive(Debug)]
struct Inner {
    descriptor: RingDescriptor,
    additive: AbelianGroup,
    repr: Repr,
    one: Elem,
    commutative: bool,
    tables: Option<Tables>,
}

/// A finite unital ring. Cheap to clone; all values are immutable.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.descriptor == other.inner.descriptor
    }
}

impl Eq for FiniteRing {}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

impl FiniteRing {
    pub fn new(descriptor: &RingDescriptor) -> Result<FiniteRing> {
        let (repr, additive) = match descriptor {
            RingDescriptor::Zmod { n } => {
                if *n < 2 {
                    return Err(Error::Invalid(format!("Z/{n} is not a ring with 0 != 1")));
                }
                check_cap("ring order", *n as u128, RING_ORDER_CAP)?;
                (Repr::Cyclic(*n), AbelianGroup::new(vec![*n])?)
            }
            RingDescriptor::PrimeField { p } => {
                if !is_prime(*p) {
                    return Err(Error::Invalid(format!("{p} is not prime")));
                }
                check_cap("ring order", *p as u128, RING_ORDER_CAP)?;
                (Repr::Cyclic(*p), AbelianGroup::new(vec![*p])?)
            }
            RingDescriptor::Matrix { n, base } => {
                if *n < 1 {
                    return Err(Error::Invalid("matrix size must be at least 1".into()));
                }
                let base = FiniteRing::new(base)?;
                if !base.is_commutative() {
                    return Err(Error::Invalid(format!(
                        "matrix rings need a commutative base, {} is not",
                        base.descriptor()
                    )));
                }
                let order = (base.order() as u128).checked_pow((n * n) as u32);
                check_cap("ring order", order.unwrap_or(u128::MAX), RING_ORDER_CAP)?;
                let additive = base.additive().power(n * n)?;
                (Repr::Matrix { n: *n, base }, additive)
            }
            RingDescriptor::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::Invalid("empty product ring".into()));
                }
                let rings = factors.iter().map(FiniteRing::new).collect::<Result<Vec<_>>>()?;
                let order = rings.iter().fold(1u128, |acc, r| acc.saturating_mul(r.order() as u128));
                check_cap("ring order", order, RING_ORDER_CAP)?;
                let orders = rings.iter().flat_map(|r| r.additive_factors().to_vec()).collect();
                (Repr::Product(rings), AbelianGroup::new(orders)?)
            }
        };
        let mut inner = Inner {
            descriptor: descriptor.clone(),
            additive,
            repr,
            one: 0,
            commutative: true,
            tables: None,
        };
        inner.one = one_of(&inner.repr, &inner.additive);
        inner.commutative = match &inner.repr {
            Repr::Cyclic(_) => true,
            Repr::Matrix { n, .. } => *n == 1,
            Repr::Product(rs) => rs.iter().all(|r| r.is_commutative()),
        };
        let order = inner.additive.order();
        if order <= TABLE_LIMIT {
            let mut add = vec![0u16; order * order];
            let mut mul = vec![0u16; order * order];
            for x in 0..order {
                for y in 0..order {
                    add[x * order + y] = inner.additive.add(x, y) as u16;
                    mul[x * order + y] = mul_raw(&inner.repr, &inner.additive, x, y) as u16;
                }
            }
            inner.tables = Some(Tables { add, mul });
        }
        Ok(FiniteRing {
            inner: Arc::new(inner),
        })
    }

    pub fn zmod(n: u64) -> Result<FiniteRing> {
        FiniteRing::new(&RingDescriptor::Zmod { n })
    }

    pub fn prime_field(p: u64) -> Result<FiniteRing> {
        FiniteRing::new(&RingDescriptor::PrimeField { p })
    }

    pub fn matrix(n: usize, base: &FiniteRing) -> Result<FiniteRing> {
        FiniteRing::new(&RingDescriptor::Matrix {
            n,
            base: Box::new(base.descriptor().clone()),
        })
    }

    pub fn product(factors: &[FiniteRing]) -> Result<FiniteRing> {
        FiniteRing::new(&RingDescriptor::Product {
            factors: factors.iter().map(|r| r.descriptor().clone()).collect(),
        })
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.inner.descriptor
    }

    pub fn order(&self) -> usize {
        self.inner.additive.order()
    }

    /// Cyclic orders `(m_1, …, m_r)` with `(R,+) ≅ ⊕ ℤ/m_j`, in encoding order.
    pub fn additive_factors(&self) -> &[u64] {
        self.inner.additive.orders()
    }

    pub fn additive(&self) -> &AbelianGroup {
        &self.inner.additive
    }

    pub fn is_commutative(&self) -> bool {
        self.inner.commutative
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.inner.one
    }

    /// Additive basis element `j`; its additive order is `additive_factors()[j]`.
    pub fn basis(&self, j: usize) -> Elem {
        self.inner.additive.basis(j)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order()
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.inner.tables {
            Some(t) => t.add[x * self.order() + y] as Elem,
            None => self.inner.additive.add(x, y),
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.inner.additive.neg(x)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.inner.tables {
            Some(t) => t.mul[x * self.order() + y] as Elem,
            None => mul_raw(&self.inner.repr, &self.inner.additive, x, y),
        }
    }

    /// `k · x` for an integer `k`.
    pub fn scale(&self, k: i64, x: Elem) -> Elem {
        let coords: Vec<u64> = self
            .inner
            .additive
            .coords(x)
            .iter()
            .zip(self.additive_factors())
            .map(|(&c, &m)| ((c as i128 * k as i128).rem_euclid(m as i128)) as u64)
            .collect();
        self.inner.additive.index(&coords)
    }

    fn check(&self, x: Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "element index {x} is not in {} (order {})",
                self.descriptor(),
                self.order()
            )))
        }
    }

    pub fn try_add(&self, x: Elem, y: Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn try_mul(&self, x: Elem, y: Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn try_sub(&self, x: Elem, y: Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.sub(x, y))
    }

    /// All elements in index order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Elem>> {
        check_cap("ring enumeration", self.order() as u128, cap as u128)?;
        Ok((0..self.order()).collect())
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    /// For matrix rings: the entries of `x` as base-ring elements, row-major.
    pub fn matrix_entries(&self, x: Elem) -> Option<Vec<Elem>> {
        match &self.inner.repr {
            Repr::Matrix { n, base } => Some(split_digits(x, base.order(), n * n)),
            _ => None,
        }
    }

    /// For matrix rings: encode a row-major list of base-ring entries.
    pub fn matrix_from_entries(&self, entries: &[Elem]) -> Result<Elem> {
        match &self.inner.repr {
            Repr::Matrix { n, base } => {
                if entries.len() != n * n || entries.iter().any(|&e| e >= base.order()) {
                    return Err(Error::Structural("bad matrix entries".into()));
                }
                Ok(join_digits(entries, base.order()))
            }
            _ => Err(Error::Structural(format!("{} is not a matrix ring", self.descriptor()))),
        }
    }

    /// Base ring and size of a matrix ring.
    pub fn matrix_parts(&self) -> Option<(usize, &FiniteRing)> {
        match &self.inner.repr {
            Repr::Matrix { n, base } => Some((*n, base)),
            _ => None,
        }
    }

    /// Human-readable element label.
    pub fn label(&self, x: Elem) -> String {
        match &self.inner.repr {
            Repr::Cyclic(_) => x.to_string(),
            Repr::Matrix { n, base } => {
                let e = split_digits(x, base.order(), n * n);
                let rows: Vec<String> = e
                    .chunks(*n)
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|&v| base.label(v)).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Repr::Product(rs) => {
                let radices: Vec<usize> = rs.iter().map(|r| r.order()).collect();
                let parts = split_mixed(x, &radices);
                let cells: Vec<String> = rs.iter().zip(parts).map(|(r, v)| r.label(v)).collect();
                format!("({})", cells.join(","))
            }
        }
    }
}

fn split_digits(x: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    let mut rest = x;
    for slot in out.iter_mut().rev() {
        *slot = rest % radix;
        rest /= radix;
    }
    out
}

fn join_digits(digits: &[usize], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

fn split_mixed(x: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    let mut rest = x;
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = rest % r;
        rest /= r;
    }
    out
}

fn join_mixed(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

fn one_of(repr: &Repr, _additive: &AbelianGroup) -> Elem {
    match repr {
        Repr::Cyclic(_) => 1,
        Repr::Matrix { n, base } => {
            let entries: Vec<usize> = (0..n * n)
                .map(|k| if k / n == k % n { base.one() } else { base.zero() })
                .collect();
            join_digits(&entries, base.order())
        }
        Repr::Product(rs) => {
            let radices: Vec<usize> = rs.iter().map(|r| r.order()).collect();
            let ones: Vec<usize> = rs.iter().map(|r| r.one()).collect();
            join_mixed(&ones, &radices)
        }
    }
}

fn mul_raw(repr: &Repr, _additive: &AbelianGroup, x: Elem, y: Elem) -> Elem {
    match repr {
        Repr::Cyclic(n) => ((x as u128 * y as u128) % *n as u128) as Elem,
        Repr::Matrix { n, base } => {
            let n = *n;
            let a = split_digits(x, base.order(), n * n);
            let b = split_digits(y, base.order(), n * n);
            let mut c = vec![base.zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = base.zero();
                    for k in 0..n {
                        acc = base.add(acc, base.mul(a[i * n + k], b[k * n + j]));
                    }
                    c[i * n + j] = acc;
                }
            }
            join_digits(&c, base.order())
        }
        Repr::Product(rs) => {
            let radices: Vec<usize> = rs.iter().map(|r| r.order()).collect();
            let a = split_mixed(x, &radices);
            let b = split_mixed(y, &radices);
            let c: Vec<usize> = rs.iter().enumerate().map(|(i, r)| r.mul(a[i], b[i])).collect();
            join_mixed(&c, &radices)
        }
    }
}

/// An element of `R^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingVector {
    pub entries: Vec<Elem>,
}

impl RingVector {
    pub fn new(entries: Vec<Elem>) -> RingVector {
        RingVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The free module `R^d`, indexed big-endian with radix `|R|`.
///
/// Its index encoding coincides with mixed radix over `additive_factors`
/// repeated `d` times, so [`FreeModule::additive`] shares indices with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: FiniteRing,
    d: usize,
    size: usize,
    additive: AbelianGroup,
}

impl FreeModule {
    pub fn new(ring: &FiniteRing, d: usize) -> Result<FreeModule> {
        if d == 0 {
            return Err(Error::Invalid("degree d must be at least 1".into()));
        }
        let size = (ring.order() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        check_cap("|R|^d", size, RING_ORDER_CAP)?;
        Ok(FreeModule {
            ring: ring.clone(),
            d,
            size: size as usize,
            additive: ring.additive().power(d)?,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// `|R|^d`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn additive(&self) -> &AbelianGroup {
        &self.additive
    }

    pub fn vector(&self, idx: usize) -> RingVector {
        RingVector::new(split_digits(idx, self.ring.order(), self.d))
    }

    pub fn index(&self, v: &RingVector) -> Result<usize> {
        self.check(v)?;
        Ok(join_digits(&v.entries, self.ring.order()))
    }

    fn check(&self, v: &RingVector) -> Result<()> {
        if v.len() != self.d {
            return Err(Error::Structural(format!(
                "vector of length {} in a module of degree {}",
                v.len(),
                self.d
            )));
        }
        if let Some(&bad) = v.entries.iter().find(|&&e| !self.ring.contains(e)) {
            return Err(Error::Structural(format!(
                "entry {bad} does not belong to {}",
                self.ring.descriptor()
            )));
        }
        Ok(())
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.additive.add(x, y)
    }

    pub fn neg(&self, x: usize) -> usize {
        self.additive.neg(x)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.additive.sub(x, y)
    }

    /// `x·y = Σ_k x_k y_k`, left factors from `x`, on indices.
    pub fn dot_index(&self, x: usize, y: usize) -> Elem {
        let n = self.ring.order();
        let (mut x, mut y) = (x, y);
        let mut acc = self.ring.zero();
        for _ in 0..self.d {
            acc = self.ring.add(acc, self.ring.mul(x % n, y % n));
            x /= n;
            y /= n;
        }
        acc
    }

    pub fn dot(&self, a: &RingVector, b: &RingVector) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.entries
            .iter()
            .zip(&b.entries)
            .fold(self.ring.zero(), |acc, (&x, &y)| self.ring.add(acc, self.ring.mul(x, y))))
    }

    /// Additive generators of `R^d`: basis element `j` of `R` in coordinate `k`.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.additive.rank()).map(|j| self.additive.basis(j)).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn label(&self, idx: usize) -> String {
        let v = self.vector(idx);
        let cells: Vec<String> = v.entries.iter().map(|&e| self.ring.label(e)).collect();
        format!("({})", cells.join(", "))
    }
}

/// Rings used by the test suites and the acceptance runner.
pub fn shipped_rings() -> Vec<FiniteRing> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(FiniteRing::zmod(n).expect("valid modulus"));
    }
    for p in [2, 3, 5, 7] {
        out.push(FiniteRing::prime_field(p).expect("prime"));
    }
    let f2 = FiniteRing::prime_field(2).expect("prime");
    out.push(FiniteRing::matrix(2, &f2).expect("M_2(F_2)"));
    out.push(
        FiniteRing::product(&[FiniteRing::zmod(2).expect("Z/2"), FiniteRing::zmod(3).expect("Z/3")])
            .expect("Z/2 x Z/3"),
    );
    out.push(FiniteRing::product(&[f2.clone(), f2.clone()]).expect("F_2 x F_2"));
    out.push(
        FiniteRing::product(&[FiniteRing::zmod(2).expect("Z/2"), FiniteRing::zmod(4).expect("Z/4")])
            .expect("Z/2 x Z/4"),
    );
    out.push(FiniteRing::zmod(9).expect("Z/9"));
    out.push(FiniteRing::zmod(12).expect("Z/12"));
    out.push(FiniteRing::zmod(16).expect("Z/16"));
    out
}

/// Default enumeration cap re-exported for callers.
pub const ENUM_CAP: usize = DEFAULT_ENUM_CAP;

#[cfg(test)]
mod tests {
    use super::*;

    fn m2f2() -> FiniteRing {
        FiniteRing::matrix(2, &FiniteRing::prime_field(2).unwrap()).unwrap()
    }

    #[test]
    fn zmod_addition() {
        let r = FiniteRing::zmod(4).unwrap();
        assert_eq!(r.add(3, 2), 1);
        assert_eq!(r.add(3, r.zero()), 3);
        assert_eq!(r.try_add(3, 7).unwrap_err().to_string().contains("not in"), true);
    }

    #[test]
    fn matrix_product_mod_two() {
        let r = m2f2();
        let a = r.matrix_from_entries(&[1, 1, 0, 1]).unwrap();
        let b = r.matrix_from_entries(&[1, 0, 1, 1]).unwrap();
        let c = r.mul(a, b);
        assert_eq!(r.matrix_entries(c).unwrap(), vec![0, 1, 1, 1]);
        // and the other order differs
        assert_eq!(r.matrix_entries(r.mul(b, a)).unwrap(), vec![1, 1, 1, 0]);
    }

    #[test]
    fn enumerate_orders() {
        assert_eq!(FiniteRing::zmod(3).unwrap().enumerate(ENUM_CAP).unwrap(), vec![0, 1, 2]);
        let f2 = FiniteRing::prime_field(2).unwrap();
        assert_eq!(FiniteRing::product(&[f2.clone(), f2]).unwrap().enumerate(ENUM_CAP).unwrap().len(), 4);
        assert_eq!(m2f2().enumerate(ENUM_CAP).unwrap().len(), 16);
        let big = FiniteRing::zmod(5000).unwrap();
        assert!(matches!(big.enumerate(ENUM_CAP), Err(Error::Resource { .. })));
    }

    #[test]
    fn invalid_descriptors() {
        assert!(FiniteRing::zmod(1).is_err());
        assert!(FiniteRing::prime_field(6).is_err());
        assert!(FiniteRing::new(&RingDescriptor::Product { factors: vec![] }).is_err());
        let m = m2f2();
        assert!(FiniteRing::matrix(2, &m).is_err());
    }

    #[test]
    fn dot_products() {
        let r = FiniteRing::zmod(5).unwrap();
        let m = FreeModule::new(&r, 1).unwrap();
        assert_eq!(m.dot(&RingVector::new(vec![2]), &RingVector::new(vec![3])).unwrap(), 1);
        let r4 = FiniteRing::zmod(4).unwrap();
        let m2 = FreeModule::new(&r4, 2).unwrap();
        let a = RingVector::new(vec![1, 2]);
        let b = RingVector::new(vec![2, 3]);
        assert_eq!(m2.dot(&a, &b).unwrap(), 0);
        assert_eq!(m2.dot_index(m2.index(&a).unwrap(), m2.index(&b).unwrap()), 0);
        assert!(m2.dot(&a, &RingVector::new(vec![1])).is_err());
    }

    #[test]
    fn noncommutative_dot_uses_left_factor_from_a() {
        let r = m2f2();
        let m = FreeModule::new(&r, 1).unwrap();
        // search all 16x16 pairs for a witness where a·b != b·a
        let witness = (0..16)
            .flat_map(|a| (0..16).map(move |b| (a, b)))
            .find(|&(a, b)| r.mul(a, b) != r.mul(b, a))
            .expect("M_2(F_2) is noncommutative");
        let (a, b) = witness;
        let av = RingVector::new(vec![a]);
        let bv = RingVector::new(vec![b]);
        assert_eq!(m.dot(&av, &bv).unwrap(), r.mul(a, b));
        assert_ne!(m.dot(&av, &bv).unwrap(), m.dot(&bv, &av).unwrap());
    }

    #[test]
    fn ring_axioms_on_shipped_rings() {
        for r in shipped_rings().into_iter().filter(|r| r.order() <= 64) {
            let n = r.order();
            let one = r.one();
            assert_ne!(one, r.zero());
            for x in 0..n {
                assert_eq!(r.mul(one, x), x);
                assert_eq!(r.mul(x, one), x);
                assert_eq!(r.add(x, r.neg(x)), 0);
                for y in 0..n {
                    assert_eq!(r.add(x, y), r.add(y, x));
                    for z in 0..n {
                        assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)), "{}", r.descriptor());
                        assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
                        assert_eq!(r.mul(r.add(x, y), z), r.add(r.mul(x, z), r.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn additive_basis_orders_and_reconstruction() {
        for r in shipped_rings() {
            let f = r.additive_factors();
            assert_eq!(f.iter().product::<u64>() as usize, r.order());
            for (j, &m) in f.iter().enumerate() {
                let b = r.basis(j);
                let mut x = b;
                let mut k = 1;
                while x != 0 {
                    x = r.add(x, b);
                    k += 1;
                }
                assert_eq!(k, m);
            }
            // the map ⊕ℤ/m_j → (R,+) through the basis is a bijection
            let mut seen = vec![false; r.order()];
            for i in 0..r.order() {
                let coords = r.additive().coords(i);
                let mut x = r.zero();
                for (j, &c) in coords.iter().enumerate() {
                    x = r.add(x, r.scale(c as i64, r.basis(j)));
                }
                assert!(!seen[x]);
                seen[x] = true;
            }
        }
    }

    #[test]
    fn constructions_compose() {
        let z3 = FiniteRing::zmod(3).unwrap();
        let m = FiniteRing::matrix(2, &z3).unwrap();
        assert_eq!(m.order(), 81);
        assert_eq!(m.additive_factors(), &[3, 3, 3, 3]);
        let p = FiniteRing::product(&[FiniteRing::zmod(4).unwrap(), z3]).unwrap();
        assert_eq!(p.additive_factors(), &[4, 3]);
    }

    #[test]
    fn shorthand_and_json_descriptors() {
        let d = RingDescriptor::parse("zmod:5").unwrap();
        assert_eq!(d, RingDescriptor::Zmod { n: 5 });
        let d = RingDescriptor::parse("mat:2:fp:2").unwrap();
        assert_eq!(FiniteRing::new(&d).unwrap().order(), 16);
        let d = RingDescriptor::parse("prod(zmod:2,zmod:3)").unwrap();
        assert_eq!(FiniteRing::new(&d).unwrap().order(), 6);
        let d = RingDescriptor::parse(r#"{"kind":"matrix","n":2,"base":{"kind":"prime_field","p":2}}"#).unwrap();
        assert_eq!(d.to_string(), "M_2(F_2)");
        assert!(RingDescriptor::parse("ring:7").is_err());
    }
}
