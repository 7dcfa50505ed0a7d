use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::phase::Phase;

/// A monomial unitary: row `i` holds `e^{2πi phases[i]}` in column `cols[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseMonomial {
    cols: Vec<usize>,
    phases: Vec<Phase>,
}

impl PhaseMonomial {
    pub fn new(cols: Vec<usize>, phases: Vec<Phase>) -> Result<PhaseMonomial> {
        let n = cols.len();
        if phases.len() != n {
            return Err(Error::Invalid("monomial needs one phase per row".into()));
        }
        let mut hit = vec![false; n];
        for &c in &cols {
            if c >= n || hit[c] {
                return Err(Error::Invalid("monomial columns must form a permutation".into()));
            }
            hit[c] = true;
        }
        Ok(PhaseMonomial { cols, phases })
    }

    pub fn identity(n: usize) -> PhaseMonomial {
        PhaseMonomial {
            cols: (0..n).collect(),
            phases: vec![Phase::ZERO; n],
        }
    }

    /// Builds `i ↦ (col(i), phase(i))`; the caller guarantees a permutation.
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize) -> (usize, Phase)) -> PhaseMonomial {
        let (cols, phases) = (0..n).map(&mut f).unzip();
        let m = PhaseMonomial { cols, phases };
        debug_assert!(PhaseMonomial::new(m.cols.clone(), m.phases.clone()).is_ok());
        m
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(i, &c)| c == i) && self.phases.iter().all(|p| p.is_zero())
    }

    pub fn mul(&self, other: &PhaseMonomial) -> PhaseMonomial {
        assert_eq!(self.dim(), other.dim(), "monomial product shape mismatch");
        PhaseMonomial::from_fn(self.dim(), |i| {
            let k = self.cols[i];
            (other.cols[k], self.phases[i] + other.phases[k])
        })
    }

    pub fn adjoint(&self) -> PhaseMonomial {
        let n = self.dim();
        let mut cols = vec![0; n];
        let mut phases = vec![Phase::ZERO; n];
        for i in 0..n {
            cols[self.cols[i]] = i;
            phases[self.cols[i]] = -self.phases[i];
        }
        PhaseMonomial { cols, phases }
    }

    pub fn scale(&self, q: Phase) -> PhaseMonomial {
        PhaseMonomial {
            cols: self.cols.clone(),
            phases: self.phases.iter().map(|&p| p + q).collect(),
        }
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &PhaseMonomial) -> PhaseMonomial {
        let m = other.dim();
        PhaseMonomial::from_fn(self.dim() * m, |i| {
            let (a, b) = (i / m, i % m);
            (self.cols[a] * m + other.cols[b], self.phases[a] + other.phases[b])
        })
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            out.set(i, self.cols[i], self.phases[i].to_c64());
        }
        out
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        if self.cols[i] == j {
            self.phases[i].to_c64()
        } else {
            ZERO
        }
    }

    pub fn trace(&self) -> C64 {
        self.cols
            .iter()
            .zip(&self.phases)
            .enumerate()
            .filter(|(i, (&c, _))| *i == c)
            .map(|(_, (_, p))| p.to_c64())
            .sum()
    }

    /// `P·M`: row `i` of the result is `phase_i` times row `cols[i]` of `M`.
    pub fn left_mul(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), m.nrows());
        let ph: Vec<C64> = self.phases.iter().map(|p| p.to_c64()).collect();
        ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| ph[i] * m.get(self.cols[i], j))
    }

    /// `M·P`: column `cols[k]` of the result is `phase_k` times column `k` of `M`.
    pub fn right_mul(&self, m: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), m.ncols());
        let adj = self.adjoint();
        let ph: Vec<C64> = self.phases.iter().map(|p| p.to_c64()).collect();
        ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, c| {
            let k = adj.cols[c];
            m.get(i, k) * ph[k]
        })
    }

    /// Whether `self·other = e^{2πi q}·left·right`, checked row by row
    /// without forming either product.
    pub fn product_eq(&self, other: &PhaseMonomial, left: &PhaseMonomial, right: &PhaseMonomial, q: Phase) -> bool {
        (0..self.dim()).all(|i| {
            let (k, m) = (self.cols[i], left.cols[i]);
            other.cols[k] == right.cols[m]
                && sum_eq(
                    [self.phases[i], other.phases[k]],
                    [left.phases[i], right.phases[m], q],
                )
        })
    }

    /// Exact `‖self − other‖` in operator norm.
    ///
    /// `‖A − B‖ = ‖I − A*B‖`, and `A*B` is again monomial; on a cycle of
    /// length `L` with total phase `θ` its eigenvalues are `e^{2πi(θ+k)/L}`.
    pub fn distance(&self, other: &PhaseMonomial) -> f64 {
        assert_eq!(self.dim(), other.dim(), "monomial distance shape mismatch");
        if self == other {
            return 0.0;
        }
        let p = self.adjoint().mul(other);
        let n = p.dim();
        let mut seen = vec![false; n];
        let mut worst: f64 = 0.0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut theta = Phase::ZERO;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                theta += p.phases[i];
                i = p.cols[i];
                len += 1;
            }
            if len == 1 {
                worst = worst.max(theta.chord(Phase::ZERO));
                continue;
            }
            // the points (θ + k)/L are spaced 1/L apart; only the two nearest 1/2 matter
            let (num, den) = (theta.num() as i128, theta.den() as i128);
            let l = len as i128;
            let k0 = (l * den - 2 * num).div_euclid(2 * den);
            for k in [k0, k0 + 1] {
                let mu = Phase::new(num + k * den, (den * l) as u64);
                worst = worst.max(mu.chord(Phase::ZERO));
            }
        }
        worst
    }
}

/// Largest denominator handled by the unreduced fast path of [`sum_eq`].
const RAW_DEN_LIMIT: u64 = 1 << 16;

/// `Σ lhs == Σ rhs` in ℚ/ℤ, adding without reducing and comparing by
/// cross-multiplication.
fn sum_eq(lhs: [Phase; 2], rhs: [Phase; 3]) -> bool {
    if lhs.iter().chain(&rhs).any(|p| p.den() > RAW_DEN_LIMIT) {
        return lhs[0] + lhs[1] == rhs[0] + rhs[1] + rhs[2];
    }
    let add = |(n, d): (u128, u128), p: Phase| -> (u128, u128) {
        let (pn, pd) = (p.num() as u128, p.den() as u128);
        if pn == 0 {
            (n, d)
        } else if pd == d {
            ((n + pn) % d, d)
        } else {
            ((n * pd + pn * d) % (d * pd), d * pd)
        }
    };
    let (a, b) = lhs.into_iter().fold((0, 1), add);
    let (c, d) = rhs.into_iter().fold((0, 1), add);
    a * d == c * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ph(n: i128, d: u64) -> Phase {
        Phase::new(n, d)
    }

    #[test]
    fn product_and_adjoint() {
        let a = PhaseMonomial::new(vec![1, 2, 0], vec![ph(1, 3), ph(0, 1), ph(1, 2)]).unwrap();
        let b = PhaseMonomial::new(vec![2, 0, 1], vec![ph(1, 4), ph(1, 4), ph(0, 1)]).unwrap();
        let dense = a.to_dense().mul(&b.to_dense());
        assert!(a.mul(&b).to_dense().sub(&dense).max_abs() < 1e-15);
        assert!(a.mul(&a.adjoint()).is_identity());
        assert!(a.left_mul(&b.to_dense()).sub(&dense).max_abs() < 1e-15);
        assert!(b.right_mul(&a.to_dense()).sub(&dense).max_abs() < 1e-15);
        assert!(PhaseMonomial::new(vec![0, 0], vec![Phase::ZERO; 2]).is_err());
    }

    #[test]
    fn product_eq_agrees_with_products() {
        let a = PhaseMonomial::new(vec![1, 2, 0], vec![ph(1, 3), ph(0, 1), ph(1, 2)]).unwrap();
        let b = PhaseMonomial::new(vec![2, 0, 1], vec![ph(1, 4), ph(1, 4), ph(0, 1)]).unwrap();
        let ab = a.mul(&b);
        let id = PhaseMonomial::identity(3);
        assert!(a.product_eq(&b, &ab, &id, Phase::ZERO));
        assert!(a.product_eq(&b, &id, &ab, Phase::ZERO));
        assert!(!a.product_eq(&b, &ab, &id, ph(1, 6)));
        assert!(ab.scale(ph(1, 6)).product_eq(&id, &ab, &id, ph(1, 6)));
        assert!(!a.product_eq(&b, &b, &a, Phase::ZERO));
        assert_eq!(a.mul(&b) == b.mul(&a), a.product_eq(&b, &b, &a, Phase::ZERO));
    }

    #[test]
    fn unreduced_sums_compare_exactly() {
        assert!(sum_eq([ph(1, 4), ph(1, 4)], [ph(1, 2), Phase::ZERO, Phase::ZERO]));
        assert!(sum_eq([ph(1, 3), ph(1, 6)], [ph(1, 4), ph(1, 8), ph(1, 8)]));
        assert!(sum_eq([ph(2, 3), ph(2, 3)], [ph(1, 3), Phase::ZERO, Phase::ZERO]));
        assert!(!sum_eq([ph(1, 3), ph(1, 6)], [ph(1, 4), ph(1, 8), ph(1, 7)]));
        let big = (1u64 << 17) + 1;
        assert!(sum_eq([ph(1, big), ph(-1, big)], [Phase::ZERO; 3]));
    }

    #[test]
    fn exact_distance_matches_svd() {
        let cases = [
            (vec![1, 0], vec![ph(0, 1), ph(0, 1)]),
            (vec![1, 2, 0], vec![ph(1, 5), ph(2, 5), ph(0, 1)]),
            (vec![0, 1, 2], vec![ph(1, 2), ph(0, 1), ph(1, 7)]),
            (vec![1, 0, 3, 2], vec![ph(1, 4), ph(1, 4), ph(0, 1), ph(1, 3)]),
        ];
        for (cols, phases) in cases {
            let b = PhaseMonomial::new(cols.clone(), phases).unwrap();
            let a = PhaseMonomial::identity(cols.len());
            let exact = a.distance(&b);
            let svd = a.to_dense().sub(&b.to_dense()).op_norm().unwrap();
            assert!((exact - svd).abs() < 1e-12, "{exact} vs {svd}");
        }
        let a = PhaseMonomial::identity(3);
        assert_eq!(a.distance(&a), 0.0);
    }

    #[test]
    fn kron_matches_dense() {
        let a = PhaseMonomial::new(vec![1, 0], vec![ph(1, 2), ph(0, 1)]).unwrap();
        let b = PhaseMonomial::new(vec![2, 0, 1], vec![ph(1, 3), ph(0, 1), ph(2, 3)]).unwrap();
        let d = a.to_dense().kron(&b.to_dense());
        assert!(a.kron(&b).to_dense().sub(&d).max_abs() < 1e-15);
        assert!((a.kron(&b).trace() - d.trace()).norm() < 1e-15);
    }
}
