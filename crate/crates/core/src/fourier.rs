//! The Fourier transform on `S = R^d × R^d` with respect to the pairing
//! `((x,y),(t,s)) ↦ λ(t·x)λ(s·y)`, normalized by `|S|^{-1/2}`.

use crate::character::Character;
use crate::error::{check_cap, Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::phase::Phase;
use crate::ring::FreeModule;

/// Largest `|S|` for which the dense transform is built.
pub const FOURIER_CAP: usize = 4096;

/// Allowed `‖F*F − I‖` before [`PlancherelTransform::extend_to_vectors`] refuses.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct PlancherelTransform {
    module: FreeModule,
    lambda: Character,
    matrix: ComplexMatrix,
}

/// `F ⊗ I_N` on `L²(S, ℋ)`, kept in factored form.
#[derive(Clone, Debug)]
pub struct ExtendedTransform {
    pub transform: PlancherelTransform,
    pub carrier_dim: usize,
}

impl PlancherelTransform {
    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn lambda(&self) -> &Character {
        &self.lambda
    }

    /// `|S|`.
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Exact phase of the entry at row `(x,y)`, column `(t,s)`.
    pub fn phase(&self, row: usize, col: usize) -> Phase {
        let n = self.module.size();
        let m = &self.module;
        self.lambda.eval(m.dot_index(col / n, row / n)) + self.lambda.eval(m.dot_index(col % n, row % n))
    }

    /// `|S|^{-1/2}`.
    pub fn scale(&self) -> f64 {
        1.0 / (self.size() as f64).sqrt()
    }

    pub fn unitarity_defect(&self) -> Result<f64> {
        self.matrix.unitarity_defect()
    }

    pub fn rank(&self) -> Result<usize> {
        self.matrix.rank(1e-9)
    }

    pub fn apply(&self, f: &[C64]) -> Result<Vec<C64>> {
        if f.len() != self.size() {
            return Err(Error::Structural(format!("vector of length {} for |S| = {}", f.len(), self.size())));
        }
        Ok((0..self.size())
            .map(|i| (0..self.size()).map(|j| self.matrix.get(i, j) * f[j]).sum())
            .collect())
    }

    /// `F̃ = F ⊗ I_N`; requires `F` unitary.
    pub fn extend_to_vectors(&self, carrier_dim: usize) -> Result<ExtendedTransform> {
        let defect = self.unitarity_defect()?;
        if defect > UNITARY_TOL {
            return Err(Error::Precondition(format!(
                "Fourier transform is not unitary (‖F*F − I‖ = {defect:.3e}); ∇_λ is not injective"
            )));
        }
        Ok(ExtendedTransform {
            transform: self.clone(),
            carrier_dim,
        })
    }
}

impl ExtendedTransform {
    pub fn dim(&self) -> usize {
        self.transform.size() * self.carrier_dim
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        self.transform.matrix.kron(&ComplexMatrix::identity(self.carrier_dim))
    }

    /// `F̃(v)` for `v` laid out `S`-major.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        let (m, n) = (self.transform.size(), self.carrier_dim);
        if v.len() != m * n {
            return Err(Error::Structural("vector length does not match |S|·N".into()));
        }
        let f = self.transform.matrix();
        let mut out = vec![C64::new(0.0, 0.0); m * n];
        for s in 0..m {
            for t in 0..m {
                let c = f.get(s, t);
                for h in 0..n {
                    out[s * n + h] += c * v[t * n + h];
                }
            }
        }
        Ok(out)
    }
}

pub fn plancherel_dft(module: &FreeModule, lambda: &Character) -> Result<PlancherelTransform> {
    if lambda.group() != module.ring().additive() {
        return Err(Error::Structural("character does not belong to the ring".into()));
    }
    let n = module.size();
    check_cap("|S|", (n * n) as u128, FOURIER_CAP as u128)?;
    let mut t = PlancherelTransform {
        module: module.clone(),
        lambda: lambda.clone(),
        matrix: ComplexMatrix::zeros(0, 0),
    };
    let scale = 1.0 / ((n * n) as f64).sqrt();
    t.matrix = ComplexMatrix::from_fn(n * n, n * n, |i, j| t.phase(i, j).to_c64() * scale);
    Ok(t)
}
