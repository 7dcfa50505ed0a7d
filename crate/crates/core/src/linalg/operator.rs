use super::{ComplexMatrix, PhaseMonomial, C64};
use crate::error::Result;
use crate::phase::Phase;

/// A square carrier operator, kept monomial whenever possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Operator {
    Monomial(PhaseMonomial),
    Dense(ComplexMatrix),
}

impl Operator {
    pub fn identity(n: usize) -> Operator {
        Operator::Monomial(PhaseMonomial::identity(n))
    }

    pub fn dim(&self) -> usize {
        match self {
            Operator::Monomial(m) => m.dim(),
            Operator::Dense(m) => m.nrows(),
        }
    }

    pub fn as_monomial(&self) -> Option<&PhaseMonomial> {
        match self {
            Operator::Monomial(m) => Some(m),
            Operator::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        match self {
            Operator::Monomial(m) => m.to_dense(),
            Operator::Dense(m) => m.clone(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        match self {
            Operator::Monomial(m) => m.entry(i, j),
            Operator::Dense(m) => m.get(i, j),
        }
    }

    pub fn mul(&self, other: &Operator) -> Operator {
        match (self, other) {
            (Operator::Monomial(a), Operator::Monomial(b)) => Operator::Monomial(a.mul(b)),
            (Operator::Monomial(a), Operator::Dense(b)) => Operator::Dense(a.left_mul(b)),
            (Operator::Dense(a), Operator::Monomial(b)) => Operator::Dense(b.right_mul(a)),
            (Operator::Dense(a), Operator::Dense(b)) => Operator::Dense(a.mul(b)),
        }
    }

    pub fn adjoint(&self) -> Operator {
        match self {
            Operator::Monomial(m) => Operator::Monomial(m.adjoint()),
            Operator::Dense(m) => Operator::Dense(m.adjoint()),
        }
    }

    pub fn scale(&self, q: Phase) -> Operator {
        match self {
            Operator::Monomial(m) => Operator::Monomial(m.scale(q)),
            Operator::Dense(m) => Operator::Dense(m.scale(q.to_c64())),
        }
    }

    pub fn kron(&self, other: &Operator) -> Operator {
        match (self, other) {
            (Operator::Monomial(a), Operator::Monomial(b)) => Operator::Monomial(a.kron(b)),
            _ => Operator::Dense(self.to_dense().kron(&other.to_dense())),
        }
    }

    pub fn trace(&self) -> C64 {
        match self {
            Operator::Monomial(m) => m.trace(),
            Operator::Dense(m) => m.trace(),
        }
    }

    /// `‖self − other‖` in operator norm; exact for two monomials.
    pub fn distance(&self, other: &Operator) -> Result<f64> {
        match (self, other) {
            (Operator::Monomial(a), Operator::Monomial(b)) => Ok(a.distance(b)),
            _ => self.to_dense().sub(&other.to_dense()).op_norm(),
        }
    }

    /// A guaranteed upper bound on `‖self − other‖`; equal to it for monomials.
    pub fn distance_bound(&self, other: &Operator) -> f64 {
        match (self, other) {
            (Operator::Monomial(a), Operator::Monomial(b)) => a.distance(b),
            _ => self.to_dense().sub(&other.to_dense()).op_norm_bound(),
        }
    }

    pub fn unitarity_defect(&self) -> Result<f64> {
        match self {
            Operator::Monomial(_) => Ok(0.0),
            Operator::Dense(m) => m.unitarity_defect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_unitary;

    #[test]
    fn mixed_products_agree_with_dense() {
        let m = Operator::Monomial(
            PhaseMonomial::new(vec![2, 0, 1], vec![Phase::new(1, 3), Phase::ZERO, Phase::new(1, 2)]).unwrap(),
        );
        let d = Operator::Dense(random_unitary(3, 5));
        for (a, b) in [(&m, &d), (&d, &m), (&m, &m), (&d, &d)] {
            let fast = a.mul(b).to_dense();
            let slow = a.to_dense().mul(&b.to_dense());
            assert!(fast.sub(&slow).max_abs() < 1e-14);
        }
        assert!(m.mul(&m.adjoint()).distance(&Operator::identity(3)).unwrap() == 0.0);
        assert!(d.mul(&d.adjoint()).distance(&Operator::identity(3)).unwrap() < 1e-14);
    }
}
