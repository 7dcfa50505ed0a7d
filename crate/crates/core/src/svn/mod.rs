//! Explicit equivalences between CCR pairs: the block unitaries `Φ`, `Ψ`,
//! the composed intertwiner with the regular pair, commutants, decomposition
//! into copies of the Schrödinger pair, and trace-based equivalence tests.

mod commutant;
mod decompose;

pub use commutant::{commutant_dim, COMMUTANT_CAP, NULL_TOL};
pub use decompose::{decompose, Decomposition, DecomposeOptions};

use serde::Serialize;

use crate::character::{check_iso, check_sym, Character};
use crate::error::{Error, Result};
use crate::fourier::{plancherel_dft, PlancherelTransform};
use crate::linalg::{ComplexMatrix, Operator, DENSE_SVD_LIMIT};
use crate::pairs::{regular, CcrPair, Scope};
use crate::phase::Phase;
use crate::ring::{FiniteRing, FreeModule};

/// CCR residual a pair must meet before `Φ`, `Ψ` are built from it.
pub const CCR_TOL: f64 = 1e-10;

/// A block-diagonal operator on `L²(S, ℋ)`, one `N×N` block per `s ∈ S`.
#[derive(Clone, Debug)]
pub struct BlockDiagonal {
    pub blocks: Vec<Operator>,
}

impl BlockDiagonal {
    pub fn dim(&self) -> usize {
        self.blocks.len() * self.blocks.first().map_or(0, Operator::dim)
    }

    /// `‖X*X − I‖`, the worst block.
    pub fn unitarity_defect(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for b in &self.blocks {
            worst = worst.max(b.unitarity_defect()?);
        }
        Ok(worst)
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.blocks.first().map_or(0, Operator::dim);
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for (s, b) in self.blocks.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out.set(s * n + i, s * n + j, b.entry(i, j));
                }
            }
        }
        out
    }
}

fn require_ccr(pair: &CcrPair) -> Result<()> {
    let scope = if pair.module().size() <= 64 { Scope::All } else { Scope::Generators };
    let res = pair.verify_ccr(scope)?;
    if res > CCR_TOL {
        return Err(Error::Precondition(format!("pair violates the commutation relation (residual {res:.3e})")));
    }
    Ok(())
}

/// `Φ` with block `U(−x)V(−y)` at `(x, y)`.
pub fn phi_unitary(pair: &CcrPair) -> Result<BlockDiagonal> {
    require_ccr(pair)?;
    let m = pair.module();
    let n = m.size();
    let blocks = (0..n * n)
        .map(|s| pair.u(m.neg(s / n)).mul(pair.v(m.neg(s % n))))
        .collect();
    Ok(BlockDiagonal { blocks })
}

/// `Ψ` with block `V(−x)U(y)` at `(x, y)`.
pub fn psi_unitary(pair: &CcrPair) -> Result<BlockDiagonal> {
    require_ccr(pair)?;
    let m = pair.module();
    let n = m.size();
    let blocks = (0..n * n).map(|s| pair.v(m.neg(s / n)).mul(pair.u(s % n))).collect();
    Ok(BlockDiagonal { blocks })
}

/// Residuals of the three intertwining identities, each a maximum over all
/// `a` (for the `U` side) or `b` (for the `V` side) in `R^d`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityResiduals {
    /// `‖Ũ(a)Φ − Φ U_reg^{(N)}(a)‖`
    pub phi_u: f64,
    /// `‖Ṽ(b)Φ − Φ V_reg^{(N)}(b)‖`
    pub phi_v: f64,
    /// `‖Ψ U^{(|S|)}(a) − Ū(a)Ψ‖`
    pub psi_u: f64,
    /// `‖Ψ V^{(|S|)}(b) − V̄(b)Ψ‖`
    pub psi_v: f64,
    /// `‖Ũ(a)F̃ − F̃ Ū(a)‖`
    pub fourier_u: f64,
    /// `‖Ṽ(b)F̃ − F̃ V̄(b)‖`
    pub fourier_v: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        [self.phi_u, self.phi_v, self.psi_u, self.psi_v, self.fourier_u, self.fourier_v]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Checks the `Φ`- and `Ψ`-identities block by block (both sides are block
/// monomial with the same block pattern, so the norm is the worst block) and
/// the `F̃`-identity through `‖(P_a F − F Λ_a) ⊗ U(a)‖ = ‖P_a F − F Λ_a‖·‖U(a)‖`.
pub fn identity_residuals(pair: &CcrPair) -> Result<IdentityResiduals> {
    let phi = phi_unitary(pair)?;
    let psi = psi_unitary(pair)?;
    let m = pair.module();
    let n = m.size();
    let lam = pair.lambda();
    let mut out = IdentityResiduals::default();
    let id = Operator::identity(pair.dim());
    for a in m.elements() {
        for s in 0..n * n {
            let (x, y) = (s / n, s % n);
            // Ũ(a) and U_reg(a) both send block row (x,y) to block column (x+a,y)
            let sig = m.add(x, a) * n + y;
            out.phi_u = out.phi_u.max(product_gap(pair.u(a), &phi.blocks[sig], &phi.blocks[s], &id, Phase::ZERO)?);
            // Ṽ(b), V_reg(b) send (x,y) to (x,y+b); V_reg carries λ(x·b)
            let tau = x * n + m.add(y, a);
            let q = lam.eval(m.dot_index(x, a));
            out.phi_v = out.phi_v.max(product_gap(pair.v(a), &phi.blocks[tau], &phi.blocks[s], &id, q)?);

            let q = lam.eval(m.dot_index(a, x));
            out.psi_u = out.psi_u.max(product_gap(&psi.blocks[s], pair.u(a), pair.u(a), &psi.blocks[s], q)?);
            let q = lam.eval(m.dot_index(y, a));
            out.psi_v = out.psi_v.max(product_gap(&psi.blocks[s], pair.v(a), pair.v(a), &psi.blocks[s], q)?);
        }
    }
    let f = if n * n <= DENSE_SVD_LIMIT { Some(plancherel_dft(m, lam)?) } else { None };
    for a in m.elements() {
        let (du, dv) = fourier_defects(m, lam, f.as_ref(), a)?;
        out.fourier_u = out.fourier_u.max(du * op_norm_of(pair.u(a))?);
        out.fourier_v = out.fourier_v.max(dv * op_norm_of(pair.v(a))?);
    }
    Ok(out)
}

/// `‖AB − e^{2πi q} CD‖`, short-circuiting to 0 when monomial products agree exactly.
fn product_gap(a: &Operator, b: &Operator, c: &Operator, d: &Operator, q: Phase) -> Result<f64> {
    if let (Operator::Monomial(a), Operator::Monomial(b), Operator::Monomial(c), Operator::Monomial(d)) = (a, b, c, d) {
        if a.product_eq(b, c, d, q) {
            return Ok(0.0);
        }
    }
    a.mul(b).distance(&c.mul(d).scale(q))
}

fn op_norm_of(op: &Operator) -> Result<f64> {
    match op {
        Operator::Monomial(_) => Ok(1.0),
        Operator::Dense(d) => d.op_norm(),
    }
}

/// `(‖P_a F − F Λ_a‖, ‖Q_a F − F M_a‖)` on `ℓ²(S)`.
///
/// Above [`DENSE_SVD_LIMIT`] the factorization `F = A ⊗ A` with
/// `A[x,t] = λ(t·x)/√n` is used: the defects are `D_1 ⊗ A` and `A ⊗ D_2`
/// for `n×n` matrices `D_1`, `D_2`, and `‖X ⊗ Y‖ = ‖X‖·‖Y‖`.
fn fourier_defects(m: &FreeModule, lam: &Character, f: Option<&PlancherelTransform>, a: usize) -> Result<(f64, f64)> {
    let n = m.size();
    let Some(f) = f else {
        let c = 1.0 / (n as f64).sqrt();
        let amat = ComplexMatrix::from_fn(n, n, |x, t| lam.eval(m.dot_index(t, x)).to_c64() * c);
        let d1 = ComplexMatrix::from_fn(n, n, |x, t| {
            amat.get(m.add(x, a), t) - amat.get(x, t) * lam.eval(m.dot_index(a, t)).to_c64()
        });
        let d2 = ComplexMatrix::from_fn(n, n, |y, t| {
            amat.get(m.add(y, a), t) - amat.get(y, t) * lam.eval(m.dot_index(t, a)).to_c64()
        });
        let na = amat.op_norm()?;
        return Ok((d1.op_norm()? * na, d2.op_norm()? * na));
    };
    let mat = f.matrix();
    let du = ComplexMatrix::from_fn(n * n, n * n, |s, t| {
        let sig = m.add(s / n, a) * n + s % n;
        mat.get(sig, t) - mat.get(s, t) * lam.eval(m.dot_index(a, t / n)).to_c64()
    });
    let dv = ComplexMatrix::from_fn(n * n, n * n, |s, t| {
        let tau = (s / n) * n + m.add(s % n, a);
        mat.get(tau, t) - mat.get(s, t) * lam.eval(m.dot_index(t % n, a)).to_c64()
    });
    Ok((du.op_norm()?, dv.op_norm()?))
}

/// `W = Φ* F̃ Ψ`: its `(s, t)` block is `F[s,t] Φ_s* Ψ_t`.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub phi: BlockDiagonal,
    pub psi: BlockDiagonal,
    pub fourier: PlancherelTransform,
    carrier_dim: usize,
}

/// Largest `W` that [`Intertwiner::to_dense`] will materialize.
pub const DENSE_W_CAP: usize = 1024;

impl Intertwiner {
    pub fn dim(&self) -> usize {
        self.fourier.size() * self.carrier_dim
    }

    pub fn to_dense(&self) -> Result<ComplexMatrix> {
        crate::error::check_cap("dense intertwiner dimension", self.dim() as u128, DENSE_W_CAP as u128)?;
        let phi_adj = self.phi.to_dense().adjoint();
        let ft = self.fourier.matrix().kron(&ComplexMatrix::identity(self.carrier_dim));
        Ok(phi_adj.mul(&ft).mul(&self.psi.to_dense()))
    }

    fn block_products(&self) -> Vec<Vec<Operator>> {
        let adj: Vec<Operator> = self.phi.blocks.iter().map(Operator::adjoint).collect();
        adj.iter()
            .map(|p| self.psi.blocks.iter().map(|q| p.mul(q)).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualMethod {
    /// `W` materialized; norms by SVD.
    Dense,
    /// Block-structured: per-block norms combined by `‖R‖ ≤ sqrt(max row sum · max column sum)`,
    /// unitarity from `(1+δ_Φ)(1+δ_F)(1+δ_Ψ) − 1`. Both are upper bounds.
    BlockBound,
}

/// `W` with `W·U^{(|S|)}(a) = U_reg^{(N)}(a)·W` and the same for `V`.
///
/// Source layout is `I_{|S|} ⊗ U(a)`; target layout is `U_reg(a) ⊗ I_N`, i.e.
/// both live on `L²(S, ℋ)` indexed `s·N + h`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub source: CcrPair,
    pub target: CcrPair,
    pub source_copies: usize,
    pub target_copies: usize,
    pub intertwiner: Intertwiner,
    pub residual_u: f64,
    pub residual_v: f64,
    pub unitarity_defect: f64,
    pub method: ResidualMethod,
}

impl EquivalenceWitness {
    pub fn residual(&self) -> f64 {
        self.residual_u.max(self.residual_v)
    }
}

/// Human-readable description of `ker ∇_λ`.
fn kernel_message(ring: &FiniteRing, kernel: &[usize]) -> String {
    let labels: Vec<String> = kernel.iter().map(|&k| ring.label(k)).collect();
    format!("ker ∇_λ = {{{}}} is nonzero, so ∇_λ is not an isomorphism", labels.join(", "))
}

/// Fails unless `λ` satisfies (Sym) and (Isom) on the pair's ring.
pub fn require_sym_isom(ring: &FiniteRing, lambda: &Character) -> Result<()> {
    let iso = check_iso(ring, lambda)?;
    if let Some(kernel) = iso.kernel {
        return Err(Error::Precondition(kernel_message(ring, &kernel)));
    }
    let sym = check_sym(ring, lambda)?;
    if let Some((a, b)) = sym.counterexample {
        return Err(Error::Precondition(format!(
            "λ is not symmetric: λ(ab) ≠ λ(ba) for a = {}, b = {}",
            ring.label(a),
            ring.label(b)
        )));
    }
    Ok(())
}

/// Builds `W = Φ* F̃ Ψ` relating `|S|` copies of `pair` to `N` copies of the
/// regular pair, and measures how well it intertwines.
pub fn svn_intertwiner(pair: &CcrPair) -> Result<EquivalenceWitness> {
    require_sym_isom(pair.ring(), pair.lambda())?;
    let m = pair.module();
    let n = m.size();
    let big_n = pair.dim();
    crate::error::check_cap("|S|·N", (n * n * big_n) as u128, crate::pairs::PAIR_DIM_CAP as u128)?;
    let phi = phi_unitary(pair)?;
    let psi = psi_unitary(pair)?;
    let fourier = plancherel_dft(m, pair.lambda())?;
    fourier.extend_to_vectors(big_n)?;
    let target = regular(pair.ring(), pair.degree(), pair.lambda())?;
    let w = Intertwiner {
        phi,
        psi,
        fourier,
        carrier_dim: big_n,
    };
    let dense = w.dim() <= DENSE_SVD_LIMIT;
    let (ru, rv, defect) = if dense {
        dense_residuals(pair, &target, &w)?
    } else {
        block_residuals(pair, &target, &w)?
    };
    Ok(EquivalenceWitness {
        source: pair.clone(),
        target,
        source_copies: n * n,
        target_copies: big_n,
        intertwiner: w,
        residual_u: ru,
        residual_v: rv,
        unitarity_defect: defect,
        method: if dense { ResidualMethod::Dense } else { ResidualMethod::BlockBound },
    })
}

fn dense_residuals(pair: &CcrPair, target: &CcrPair, w: &Intertwiner) -> Result<(f64, f64, f64)> {
    let wd = Operator::Dense(w.to_dense()?);
    let copies = w.fourier.size();
    let id_n = Operator::identity(pair.dim());
    let (mut ru, mut rv) = (0.0f64, 0.0f64);
    for a in pair.module().elements() {
        let lhs = wd.mul(&Operator::identity(copies).kron(pair.u(a)));
        let rhs = target.u(a).kron(&id_n).mul(&wd);
        ru = ru.max(lhs.distance(&rhs)?);
        let lhs = wd.mul(&Operator::identity(copies).kron(pair.v(a)));
        let rhs = target.v(a).kron(&id_n).mul(&wd);
        rv = rv.max(lhs.distance(&rhs)?);
    }
    Ok((ru, rv, wd.unitarity_defect()?))
}

fn block_residuals(pair: &CcrPair, target: &CcrPair, w: &Intertwiner) -> Result<(f64, f64, f64)> {
    let f = &w.fourier;
    let size = f.size();
    let c = f.scale();
    let blocks = w.block_products();
    let (mut ru, mut rv) = (0.0f64, 0.0f64);
    let mut norms = vec![0.0f64; size * size];
    for a in pair.module().elements() {
        for (table, reg, out) in [(pair.u_table(), target.u(a), &mut ru), (pair.v_table(), target.v(a), &mut rv)] {
            let reg = reg.as_monomial().expect("regular pair is monomial");
            for s in 0..size {
                let (sig, ph) = (reg.cols()[s], reg.phases()[s]);
                for t in 0..size {
                    // block (s,t) of W·(I ⊗ X) − (X_reg ⊗ I)·W
                    let lhs = blocks[s][t].mul(&table[a]).scale(f.phase(s, t));
                    let rhs = blocks[sig][t].scale(f.phase(sig, t) + ph);
                    norms[s * size + t] = c * lhs.distance_bound(&rhs);
                }
            }
            *out = out.max(schur_bound(&norms, size));
        }
    }
    let dphi = w.phi.unitarity_defect()?;
    let dpsi = w.psi.unitarity_defect()?;
    let df = f.unitarity_defect()?;
    Ok((ru, rv, (1.0 + dphi) * (1.0 + df) * (1.0 + dpsi) - 1.0))
}

/// `sqrt(max row sum · max column sum)` of a nonnegative `k×k` block-norm table.
fn schur_bound(norms: &[f64], k: usize) -> f64 {
    let mut rows = vec![0.0; k];
    let mut cols = vec![0.0; k];
    for s in 0..k {
        for t in 0..k {
            rows[s] += norms[s * k + t];
            cols[t] += norms[s * k + t];
        }
    }
    let r = rows.into_iter().fold(0.0, f64::max);
    let c = cols.into_iter().fold(0.0, f64::max);
    (r * c).sqrt()
}

/// Equivalence test through the trace functions `(a, b) ↦ tr V(b)U(a)`,
/// which determine the Heisenberg characters `tr π(m(a,b,c)) = λ(c) tr V(b)U(a)`.
pub fn pairs_equivalent(a: &CcrPair, b: &CcrPair) -> Result<bool> {
    Ok(trace_distance(a, b)? <= TRACE_TOL)
}

/// Pointwise tolerance for trace-function comparisons.
pub const TRACE_TOL: f64 = 1e-8;

/// `max_{a,b} |tr V_A(b)U_A(a) − tr V_B(b)U_B(a)|`.
pub fn trace_distance(a: &CcrPair, b: &CcrPair) -> Result<f64> {
    if a.module() != b.module() || a.lambda() != b.lambda() {
        return Err(Error::Structural("pairs over different (R, d, λ)".into()));
    }
    let mut worst: f64 = 0.0;
    for x in a.module().elements() {
        for y in a.module().elements() {
            let ta = a.v(y).mul(a.u(x)).trace();
            let tb = b.v(y).mul(b.u(x)).trace();
            worst = worst.max((ta - tb).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_unitary;
    use crate::pairs::{random_instance, schrodinger};
    use crate::ring::FiniteRing;

    fn setup(r: &FiniteRing, e: i64) -> Character {
        Character::on_ring(r, &vec![e; r.additive_factors().len()]).unwrap()
    }

    #[test]
    fn factored_fourier_defects_match_dense() {
        let r = FiniteRing::zmod(5).unwrap();
        let m = FreeModule::new(&r, 1).unwrap();
        let l = setup(&r, 2);
        let f = plancherel_dft(&m, &l).unwrap();
        for a in 0..5 {
            let (u0, v0) = fourier_defects(&m, &l, Some(&f), a).unwrap();
            let (u1, v1) = fourier_defects(&m, &l, None, a).unwrap();
            assert!(u0 < 1e-13 && v0 < 1e-13 && u1 < 1e-13 && v1 < 1e-13);
        }
        // a non-unitary transform leaves a visible defect on both paths
        let r = FiniteRing::zmod(4).unwrap();
        let m = FreeModule::new(&r, 1).unwrap();
        let l = setup(&r, 2);
        let f = plancherel_dft(&m, &l).unwrap();
        let (u0, _) = fourier_defects(&m, &l, Some(&f), 1).unwrap();
        let (u1, _) = fourier_defects(&m, &l, None, 1).unwrap();
        assert!((u0 - u1).abs() < 1e-12);
    }

    #[test]
    fn phi_block_at_origin_is_identity() {
        let r = FiniteRing::zmod(3).unwrap();
        let p = schrodinger(&r, 1, &setup(&r, 1)).unwrap();
        let phi = phi_unitary(&p).unwrap();
        assert!(phi.blocks[0].as_monomial().unwrap().is_identity());
        assert!(phi.to_dense().unitarity_defect().unwrap() < 1e-12);
        assert!(psi_unitary(&p).unwrap().to_dense().unitarity_defect().unwrap() < 1e-12);
    }

    #[test]
    fn identities_hold_exactly_for_schrodinger() {
        let f2 = FiniteRing::prime_field(2).unwrap();
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        let cases = vec![
            (FiniteRing::zmod(2).unwrap(), setup(&FiniteRing::zmod(2).unwrap(), 1)),
            (FiniteRing::zmod(3).unwrap(), setup(&FiniteRing::zmod(3).unwrap(), 1)),
            (FiniteRing::zmod(4).unwrap(), setup(&FiniteRing::zmod(4).unwrap(), 3)),
            (FiniteRing::prime_field(5).unwrap(), setup(&FiniteRing::prime_field(5).unwrap(), 2)),
            (m2.clone(), Character::standard_trace(&m2).unwrap()),
        ];
        for (r, l) in cases {
            let p = schrodinger(&r, 1, &l).unwrap();
            let res = identity_residuals(&p).unwrap();
            assert!(res.max() <= 1e-10, "{} {res:?}", r.descriptor());
            assert_eq!(res.phi_u + res.phi_v + res.psi_u + res.psi_v, 0.0);
        }
    }

    #[test]
    fn fourier_identity_needs_symmetry() {
        let f2 = FiniteRing::prime_field(2).unwrap();
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        let l = Character::on_ring(&m2, &[0, 1, 1, 0]).unwrap();
        assert!(!check_sym(&m2, &l).unwrap().holds);
        let p = schrodinger(&m2, 1, &l).unwrap();
        let res = identity_residuals(&p).unwrap();
        assert!(res.fourier_u > 0.5);
        assert!(res.fourier_v < 1e-10);
        assert!(matches!(svn_intertwiner(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn intertwiner_for_z2_is_8_by_8() {
        let r = FiniteRing::zmod(2).unwrap();
        let p = schrodinger(&r, 1, &setup(&r, 1)).unwrap();
        let w = svn_intertwiner(&p).unwrap();
        assert_eq!(w.intertwiner.dim(), 8);
        assert_eq!((w.source_copies, w.target_copies), (4, 2));
        assert!(w.residual() <= 1e-10 && w.unitarity_defect <= 1e-10);
        assert_eq!(w.method, ResidualMethod::Dense);
    }

    #[test]
    fn block_bound_agrees_with_dense() {
        let r = FiniteRing::zmod(3).unwrap();
        let p = random_instance(&r, 1, &setup(&r, 1), 1, 4).unwrap();
        let target = regular(&r, 1, p.lambda()).unwrap();
        let w = svn_intertwiner(&p).unwrap();
        let (ru, rv, du) = block_residuals(&p, &target, &w.intertwiner).unwrap();
        assert!(ru <= 1e-10 && rv <= 1e-10 && du <= 1e-10);
        assert!(w.residual() <= ru.max(rv) + 1e-15);
    }

    #[test]
    fn refuses_without_isom() {
        let r = FiniteRing::zmod(4).unwrap();
        let p = schrodinger(&r, 1, &setup(&r, 2)).unwrap();
        match svn_intertwiner(&p) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("ker ∇_λ = {0, 2}"), "{msg}"),
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn residual_is_stable_under_conjugation() {
        let r = FiniteRing::zmod(3).unwrap();
        let p = schrodinger(&r, 1, &setup(&r, 1)).unwrap();
        let base = svn_intertwiner(&p).unwrap().residual();
        let q = p.conjugate(&random_unitary(3, 17)).unwrap();
        let conj = svn_intertwiner(&q).unwrap().residual();
        assert!(conj <= 10.0 * base.max(1e-13), "{base} {conj}");
    }

    #[test]
    fn trace_equivalence() {
        let r = FiniteRing::zmod(3).unwrap();
        let l = setup(&r, 1);
        let p = schrodinger(&r, 1, &l).unwrap();
        let q = p.conjugate(&random_unitary(3, 2)).unwrap();
        assert!(pairs_equivalent(&p, &q).unwrap());
        assert!(!pairs_equivalent(&p, &p.inflate(2).unwrap()).unwrap());
        assert!(pairs_equivalent(&p.inflate(3).unwrap(), &regular(&r, 1, &l).unwrap()).unwrap());
        let other = schrodinger(&r, 1, &setup(&r, 2)).unwrap();
        assert!(pairs_equivalent(&p, &other).is_err());
    }
}
