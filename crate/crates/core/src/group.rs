//! Finite abelian groups `⊕_j ℤ/m_j` with mixed-radix element encoding.

use crate::error::{check_cap, Result};

/// Largest group the enumeration helpers will walk.
pub const DEFAULT_ENUM_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<AbelianGroup> {
        let mut order: u128 = 1;
        for &m in &orders {
            if m < 1 {
                return Err(crate::Error::Invalid("cyclic factor of order 0".into()));
            }
            order = order.saturating_mul(m as u128);
        }
        check_cap("group order", order, u32::MAX as u128)?;
        let mut strides = vec![1usize; orders.len()];
        for j in (0..orders.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * orders[j + 1] as usize;
        }
        Ok(AbelianGroup {
            orders,
            strides,
            order: order as usize,
        })
    }

    /// `G^k`, the factor list repeated `k` times.
    pub fn power(&self, k: usize) -> Result<AbelianGroup> {
        let orders = (0..k).flat_map(|_| self.orders.iter().copied()).collect();
        AbelianGroup::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn coords(&self, idx: usize) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| ((idx / s) as u64) % m)
            .collect()
    }

    pub fn coord(&self, idx: usize, j: usize) -> u64 {
        ((idx / self.strides[j]) as u64) % self.orders[j]
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&c, &m), &s)| (c % m) as usize * s)
            .sum()
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        for j in 0..self.orders.len() {
            let m = self.orders[j];
            let s = self.strides[j];
            let c = (((x / s) as u64 % m) + ((y / s) as u64 % m)) % m;
            out += c as usize * s;
        }
        out
    }

    pub fn neg(&self, x: usize) -> usize {
        let mut out = 0;
        for j in 0..self.orders.len() {
            let m = self.orders[j];
            let s = self.strides[j];
            let c = (m - (x / s) as u64 % m) % m;
            out += c as usize * s;
        }
        out
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// The `j`-th basis element (coordinate unit vector).
    pub fn basis(&self, j: usize) -> usize {
        self.strides[j]
    }

    pub fn elements(&self, cap: usize) -> Result<std::ops::Range<usize>> {
        check_cap("group enumeration", self.order as u128, cap as u128)?;
        Ok(0..self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_roundtrip() {
        let g = AbelianGroup::new(vec![2, 3, 4]).unwrap();
        assert_eq!(g.order(), 24);
        for i in 0..24 {
            assert_eq!(g.index(&g.coords(i)), i);
        }
        assert_eq!(g.coords(g.basis(1)), vec![0, 1, 0]);
    }

    #[test]
    fn group_laws() {
        let g = AbelianGroup::new(vec![4, 6]).unwrap();
        for x in 0..24 {
            assert_eq!(g.add(x, g.neg(x)), 0);
            for y in 0..24 {
                assert_eq!(g.add(x, y), g.add(y, x));
                assert_eq!(g.sub(g.add(x, y), y), x);
            }
        }
    }
}
