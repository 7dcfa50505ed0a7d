use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::require_sym_isom;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Operator, C64};
use crate::pairs::{schrodinger, CcrPair};

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Extra averaging rounds allowed beyond the multiplicity.
    pub spare_rounds: usize,
    /// A harvested intertwiner with `tr(AA*)/n` below this is discarded.
    pub min_weight: f64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            seed: 0,
            spare_rounds: 16,
            min_weight: 1e-6,
        }
    }
}

/// `Θ` with `Θ U(a) = (I_k ⊗ U_Schr(a)) Θ` and `Θ V(b) = (I_k ⊗ V_Schr(b)) Θ`.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub multiplicity: usize,
    #[serde(skip)]
    pub theta: ComplexMatrix,
    /// Worst intertwining defect over all `a`, `b`.
    pub residual: f64,
    /// `‖Θ*Θ − I‖`.
    pub unitarity_defect: f64,
    pub rounds: usize,
}

/// Splits `pair` into copies of the Schrödinger pair.
///
/// Each round averages `X ↦ π_Schr(g) X π(g)^{-1}` over the Heisenberg group
/// for a seeded Gaussian `X`; the center acts by `λ(c)` on both sides and
/// cancels, so the sum runs over `m(a, b, 0)` and factorizes as
/// `Σ_b V_Schr(b) [Σ_a U_Schr(a) X U(a)*] V(b)*`. The result `A` intertwines;
/// after projecting out the copies already found, `A A* = c I` by Schur's
/// lemma and `A*/√c` embeds one more copy.
pub fn decompose(pair: &CcrPair, opts: DecomposeOptions) -> Result<Decomposition> {
    require_sym_isom(pair.ring(), pair.lambda())?;
    let schr = schrodinger(pair.ring(), pair.degree(), pair.lambda())?;
    let n = schr.dim();
    let big_n = pair.dim();
    if big_n % n != 0 {
        return Err(Error::Structural(format!(
            "pair cannot be a finite multiple of Schrödinger: dimension {big_n} is not divisible by {n}"
        )));
    }
    let k = big_n / n;
    let m = pair.module();
    let order = m.size() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut copies: Vec<ComplexMatrix> = Vec::new();
    let mut rounds = 0;
    let max_rounds = k + opts.spare_rounds;
    let u_adj: Vec<Operator> = m.elements().map(|a| pair.u(a).adjoint()).collect();
    let v_adj: Vec<Operator> = m.elements().map(|b| pair.v(b).adjoint()).collect();
    while copies.len() < k {
        if rounds == max_rounds {
            return Err(Error::Numeric(format!(
                "averaging found {} of {k} copies in {rounds} rounds",
                copies.len()
            )));
        }
        rounds += 1;
        let x = ComplexMatrix::from_fn(n, big_n, |_, _| {
            C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
        });
        let x = Operator::Dense(x);
        let mut inner = ComplexMatrix::zeros(n, big_n);
        for a in m.elements() {
            inner = inner.add(&rect_mul(schr.u(a), &x, &u_adj[a]));
        }
        let inner = Operator::Dense(inner);
        let mut avg = ComplexMatrix::zeros(n, big_n);
        for b in m.elements() {
            avg = avg.add(&rect_mul(schr.v(b), &inner, &v_adj[b]));
        }
        let mut avg = avg.scale(C64::new(1.0 / (order * order), 0.0));
        for j in &copies {
            // A ← A (I − J J*)
            avg = avg.sub(&avg.mul(j).mul(&j.adjoint()));
        }
        let weight = avg.mul(&avg.adjoint()).trace().re / n as f64;
        if weight < opts.min_weight {
            continue;
        }
        copies.push(avg.adjoint().scale(C64::new(1.0 / weight.sqrt(), 0.0)));
    }
    let theta = ComplexMatrix::from_fn(big_n, big_n, |r, c| copies[r / n].get(c, r % n).conj());
    let mut residual: f64 = 0.0;
    let th = Operator::Dense(theta.clone());
    let ik = Operator::identity(k);
    for a in m.elements() {
        let lhs = th.mul(pair.u(a));
        let rhs = ik.kron(schr.u(a)).mul(&th);
        residual = residual.max(lhs.distance(&rhs)?);
        let lhs = th.mul(pair.v(a));
        let rhs = ik.kron(schr.v(a)).mul(&th);
        residual = residual.max(lhs.distance(&rhs)?);
    }
    let unitarity_defect = theta.unitarity_defect()?;
    Ok(Decomposition {
        multiplicity: k,
        theta,
        residual,
        unitarity_defect,
        rounds,
    })
}

/// `L · X · R` for an `n×N` matrix `X` between square operators.
fn rect_mul(left: &Operator, x: &Operator, right: &Operator) -> ComplexMatrix {
    let x = match x {
        Operator::Dense(d) => d,
        Operator::Monomial(_) => unreachable!("averaging input is dense"),
    };
    let lx = match left {
        Operator::Monomial(p) => p.left_mul(x),
        Operator::Dense(d) => d.mul(x),
    };
    match right {
        Operator::Monomial(p) => p.right_mul(&lx),
        Operator::Dense(d) => lx.mul(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::Character;
    use crate::pairs::{random_instance, regular};
    use crate::ring::FiniteRing;

    #[test]
    fn schrodinger_decomposes_into_itself() {
        let r = FiniteRing::zmod(5).unwrap();
        let p = schrodinger(&r, 1, &Character::on_ring(&r, &[2]).unwrap()).unwrap();
        let d = decompose(&p, DecomposeOptions::default()).unwrap();
        assert_eq!(d.multiplicity, 1);
        // Θ is a phase times the identity
        let z = d.theta.get(0, 0);
        assert!((z.norm() - 1.0).abs() < 1e-10);
        assert!(d.theta.sub(&ComplexMatrix::identity(5).scale(z)).max_abs() < 1e-10);
    }

    #[test]
    fn planted_multiplicity_is_recovered() {
        let r = FiniteRing::zmod(3).unwrap();
        let l = Character::on_ring(&r, &[1]).unwrap();
        for seed in 0..3 {
            let p = random_instance(&r, 1, &l, 2, seed).unwrap();
            let d = decompose(&p, DecomposeOptions { seed, ..Default::default() }).unwrap();
            assert_eq!(d.multiplicity, 2);
            assert!(d.residual <= 1e-8 && d.unitarity_defect <= 1e-8, "{d:?}");
        }
    }

    #[test]
    fn regular_pair_has_multiplicity_r() {
        let r = FiniteRing::zmod(4).unwrap();
        let p = regular(&r, 1, &Character::on_ring(&r, &[1]).unwrap()).unwrap();
        let d = decompose(&p, DecomposeOptions::default()).unwrap();
        assert_eq!(d.multiplicity, 4);
        assert!(d.residual <= 1e-8);
    }

    #[test]
    fn indivisible_dimension_is_structural() {
        let r = FiniteRing::zmod(3).unwrap();
        let l = Character::on_ring(&r, &[1]).unwrap();
        let p = schrodinger(&r, 1, &l).unwrap();
        let ids: Vec<Operator> = (0..3).map(|_| Operator::identity(4)).collect();
        let bad = CcrPair::from_tables(p.module(), &l, ids.clone(), ids).unwrap();
        assert!(matches!(decompose(&bad, DecomposeOptions::default()), Err(Error::Structural(_))));
    }
}
