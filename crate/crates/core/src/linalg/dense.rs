use faer::Mat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Operator norms are computed by a full SVD up to this dimension and by
/// power iteration above it.
pub const DENSE_SVD_LIMIT: usize = 512;

const POWER_REL_TOL: f64 = 1e-6;
const POWER_MAX_ITERS: usize = 1000;

/// Dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    m: Mat<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix {
            m: Mat::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> ComplexMatrix {
        ComplexMatrix {
            m: Mat::from_fn(rows, cols, f),
        }
    }

    /// Builds a matrix from row-major `[re, im]` pairs.
    pub fn from_pairs(rows: usize, cols: usize, data: &[[f64; 2]]) -> Result<ComplexMatrix> {
        if data.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::Invalid("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
            let [re, im] = data[i * cols + j];
            C64::new(re, im)
        }))
    }

    /// Row-major `[re, im]` pairs.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.nrows() * self.ncols());
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let z = self.get(i, j);
                out.push([z.re, z.im]);
            }
        }
        out
    }

    pub fn from_faer(m: Mat<C64>) -> ComplexMatrix {
        ComplexMatrix { m }
    }

    pub fn as_faer(&self) -> &Mat<C64> {
        &self.m
    }

    pub fn nrows(&self) -> usize {
        self.m.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.m.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.m[(i, j)] = z;
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.ncols(), other.nrows(), "matrix product shape mismatch");
        ComplexMatrix { m: &self.m * &other.m }
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix {
            m: self.m.adjoint().to_owned(),
        }
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { m: &self.m + &other.m }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { m: &self.m - &other.m }
    }

    pub fn scale(&self, z: C64) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.nrows(), self.ncols(), |i, j| self.get(i, j) * z)
    }

    /// `self ⊗ other`, with row index `i·rows(other) + k`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (r2, c2) = (other.nrows(), other.ncols());
        ComplexMatrix::from_fn(self.nrows() * r2, self.ncols() * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    pub fn trace(&self) -> C64 {
        (0..self.nrows().min(self.ncols())).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.m.norm_l2()
    }

    pub fn max_abs(&self) -> f64 {
        let mut best: f64 = 0.0;
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                best = best.max(self.get(i, j).norm());
            }
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        (0..self.ncols()).all(|j| (0..self.nrows()).all(|i| self.get(i, j).is_finite()))
    }

    pub fn singular_values(&self) -> Result<Vec<f64>> {
        if self.nrows() == 0 || self.ncols() == 0 {
            return Ok(Vec::new());
        }
        self.m
            .singular_values()
            .map_err(|e| Error::Numeric(format!("SVD did not converge: {e:?}")))
    }

    /// Numerical rank: singular values above `tol · σ_max`.
    pub fn rank(&self, tol: f64) -> Result<usize> {
        let s = self.singular_values()?;
        let top = s.iter().cloned().fold(0.0, f64::max);
        Ok(s.iter().filter(|&&x| x > tol * top.max(f64::MIN_POSITIVE)).count())
    }

    /// Spectral norm: SVD up to [`DENSE_SVD_LIMIT`], power iteration above.
    pub fn op_norm(&self) -> Result<f64> {
        if self.nrows().max(self.ncols()) <= DENSE_SVD_LIMIT {
            Ok(self.singular_values()?.into_iter().fold(0.0, f64::max))
        } else {
            self.power_norm()
        }
    }

    /// Guaranteed upper bound `sqrt(‖A‖_1 ‖A‖_∞)` on the spectral norm, cheap at any size.
    pub fn op_norm_bound(&self) -> f64 {
        let (r, c) = (self.nrows(), self.ncols());
        let mut rows = vec![0.0f64; r];
        let mut max_col: f64 = 0.0;
        for j in 0..c {
            let mut col = 0.0;
            for (i, acc) in rows.iter_mut().enumerate() {
                let a = self.get(i, j).norm();
                col += a;
                *acc += a;
            }
            max_col = max_col.max(col);
        }
        let max_row = rows.into_iter().fold(0.0, f64::max);
        (max_col * max_row).sqrt().min(self.frobenius())
    }

    fn power_norm(&self) -> Result<f64> {
        let n = self.ncols();
        let mut x = Mat::<C64>::from_fn(n, 1, |i, _| C64::new(1.0 + (i % 7) as f64 * 0.01, (i % 3) as f64 * 0.01));
        let mut est = 0.0;
        for _ in 0..POWER_MAX_ITERS {
            let nx = x.norm_l2();
            if nx == 0.0 {
                return Ok(0.0);
            }
            x = x * faer::Scale(C64::new(1.0 / nx, 0.0));
            let y = &self.m * &x;
            let z = self.m.adjoint() * &y;
            let next = y.norm_l2();
            if (next - est).abs() <= POWER_REL_TOL * next.max(f64::MIN_POSITIVE) {
                return Ok(next);
            }
            est = next;
            x = z;
        }
        Err(Error::Numeric(format!(
            "power iteration did not settle within {POWER_MAX_ITERS} steps"
        )))
    }

    /// `‖A*A − I‖`.
    pub fn unitarity_defect(&self) -> Result<f64> {
        let g = self.adjoint().mul(self);
        g.sub(&ComplexMatrix::identity(g.nrows())).op_norm()
    }

    /// Orthonormal basis of the column space (thin SVD, singular values above `tol`).
    pub fn column_space(&self, tol: f64) -> Result<ComplexMatrix> {
        if self.ncols() == 0 {
            return Ok(ComplexMatrix::zeros(self.nrows(), 0));
        }
        let svd = self
            .m
            .thin_svd()
            .map_err(|e| Error::Numeric(format!("SVD did not converge: {e:?}")))?;
        let s = svd.S().column_vector();
        let keep: Vec<usize> = (0..s.nrows()).filter(|&k| s[k].re > tol).collect();
        let u = svd.U();
        Ok(ComplexMatrix::from_fn(self.nrows(), keep.len(), |i, k| u[(i, keep[k])]))
    }
}

/// Haar-like random unitary: QR of a seeded complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    let mut g = Mat::<C64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = C64::new(draw(), draw());
        }
    }
    let qr = g.qr();
    let q = qr.compute_thin_Q();
    let r = qr.thin_R();
    let phases: Vec<C64> = (0..n)
        .map(|k| {
            let d = r[(k, k)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                ONE
            }
        })
        .collect();
    ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j])
}
