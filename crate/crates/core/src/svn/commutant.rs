use crate::character::dual_group;
use crate::error::{check_cap, Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::pairs::CcrPair;

/// Singular values below this count as zero when measuring the nullity.
pub const NULL_TOL: f64 = 1e-8;

/// Cap on `rows · columns` of the stacked commutant system.
pub const COMMUTANT_CAP: usize = 20_000_000;

/// `dim {T : T U(a) = U(a) T, T V(b) = V(b) T for all a, b}`.
///
/// `T` must preserve the isotypic components of `V`, so after moving to an
/// orthonormal basis adapted to them only the diagonal blocks are unknown;
/// the remaining equations `T A_g = A_g T` for the generators `g` of `U` are
/// stacked and the nullity read off the singular values.
pub fn commutant_dim(pair: &CcrPair) -> Result<usize> {
    let m = pair.module();
    let n = pair.dim();
    let group = m.additive();
    let chars = dual_group(group, crate::group::DEFAULT_ENUM_CAP)?;
    let order = m.size() as f64;

    // isotypic bases of V
    let mut q_cols: Vec<Vec<C64>> = Vec::new();
    let mut block_of: Vec<usize> = Vec::new();
    let mut block_sizes: Vec<usize> = Vec::new();
    for chi in &chars {
        let mut p = ComplexMatrix::zeros(n, n);
        for b in m.elements() {
            let w = chi.eval(b).to_c64().conj() / order;
            let vb = pair.v(b).to_dense();
            p = p.add(&vb.scale(w));
        }
        let basis = p.column_space(0.5)?;
        if basis.ncols() == 0 {
            continue;
        }
        for k in 0..basis.ncols() {
            q_cols.push((0..n).map(|i| basis.get(i, k)).collect());
            block_of.push(block_sizes.len());
        }
        block_sizes.push(basis.ncols());
    }
    if q_cols.len() != n {
        return Err(Error::Numeric(format!(
            "isotypic components of V span {} of {n} dimensions",
            q_cols.len()
        )));
    }
    let q = ComplexMatrix::from_fn(n, n, |i, k| q_cols[k][i]);
    let qa = q.adjoint();

    // unknowns: E_{ij} with i, j in the same block
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| block_of[i] == block_of[j])
        .collect();
    let gens = m.generators();
    let rows = gens.len() * n * n;
    check_cap("commutant system entries", (rows * unknowns.len()) as u128, COMMUTANT_CAP as u128)?;
    if gens.is_empty() || unknowns.is_empty() {
        return Ok(unknowns.len());
    }
    let mut sys = ComplexMatrix::zeros(rows, unknowns.len());
    for (gi, &g) in gens.iter().enumerate() {
        let a = qa.mul(&pair.u(g).to_dense()).mul(&q);
        // (E A − A E)_{kl} = Σ_{ij} E_ij (δ_ki A_jl − A_ki δ_jl)
        for (col, &(i, j)) in unknowns.iter().enumerate() {
            for l in 0..n {
                let row = gi * n * n + i * n + l;
                sys.set(row, col, sys.get(row, col) + a.get(j, l));
            }
            for k in 0..n {
                let row = gi * n * n + k * n + j;
                sys.set(row, col, sys.get(row, col) - a.get(k, i));
            }
        }
    }
    let sv = sys.singular_values()?;
    let rank = sv.iter().filter(|&&s| s >= NULL_TOL).count();
    Ok(unknowns.len() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::Character;
    use crate::linalg::Operator;
    use crate::pairs::{random_instance, schrodinger};
    use crate::ring::FiniteRing;

    #[test]
    fn schrodinger_is_irreducible() {
        for n in 2..=6 {
            let r = FiniteRing::zmod(n).unwrap();
            let p = schrodinger(&r, 1, &Character::on_ring(&r, &[1]).unwrap()).unwrap();
            assert_eq!(commutant_dim(&p).unwrap(), 1);
            assert_eq!(commutant_dim(&p.inflate(2).unwrap()).unwrap(), 4);
        }
    }

    /// Nullity of the unreduced system over all `N²` entries of `T`.
    fn brute_commutant(pair: &CcrPair) -> usize {
        let n = pair.dim();
        let gens = pair.module().generators();
        let mut ops: Vec<ComplexMatrix> = gens.iter().map(|&g| pair.u(g).to_dense()).collect();
        ops.extend(gens.iter().map(|&g| pair.v(g).to_dense()));
        let mut sys = ComplexMatrix::zeros(ops.len() * n * n, n * n);
        for (oi, x) in ops.iter().enumerate() {
            for col in 0..n * n {
                let mut t = ComplexMatrix::zeros(n, n);
                t.set(col / n, col % n, C64::new(1.0, 0.0));
                let c = t.mul(x).sub(&x.mul(&t));
                for i in 0..n {
                    for j in 0..n {
                        sys.set(oi * n * n + i * n + j, col, c.get(i, j));
                    }
                }
            }
        }
        let sv = sys.singular_values().unwrap();
        n * n - sv.iter().filter(|&&s| s >= NULL_TOL).count()
    }

    #[test]
    fn degenerate_character_is_reducible() {
        // U(1) = S, V(1) = diag(1,-1,1,-1): S² is central with eigenvalues ±1 and
        // splits ℓ²(ℤ/4) into two inequivalent 2-dimensional pieces
        let r = FiniteRing::zmod(4).unwrap();
        let p = schrodinger(&r, 1, &Character::on_ring(&r, &[2]).unwrap()).unwrap();
        assert_eq!(brute_commutant(&p), 2);
        assert_eq!(commutant_dim(&p).unwrap(), 2);
    }

    #[test]
    fn reduction_matches_unreduced_system() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let z6 = FiniteRing::zmod(6).unwrap();
        let f2 = FiniteRing::prime_field(2).unwrap();
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        let mut pairs = vec![];
        for e in 0..4 {
            pairs.push(schrodinger(&z4, 1, &Character::on_ring(&z4, &[e]).unwrap()).unwrap());
        }
        for e in [2, 3] {
            pairs.push(schrodinger(&z6, 1, &Character::on_ring(&z6, &[e]).unwrap()).unwrap());
        }
        pairs.push(schrodinger(&m2, 1, &Character::standard_trace(&m2).unwrap()).unwrap());
        pairs.push(schrodinger(&m2, 1, &Character::on_ring(&m2, &[1, 0, 0, 0]).unwrap()).unwrap());
        pairs.push(random_instance(&z4, 1, &Character::on_ring(&z4, &[1]).unwrap(), 2, 3).unwrap());
        for p in pairs {
            assert_eq!(commutant_dim(&p).unwrap(), brute_commutant(&p), "{:?}", p.lambda().exponents());
        }
    }

    #[test]
    fn trivial_pair_commutes_with_everything() {
        let r = FiniteRing::zmod(3).unwrap();
        let m = crate::ring::FreeModule::new(&r, 1).unwrap();
        let ids: Vec<Operator> = (0..3).map(|_| Operator::identity(2)).collect();
        let p = CcrPair::from_tables(&m, &Character::trivial(r.additive()), ids.clone(), ids).unwrap();
        assert_eq!(commutant_dim(&p).unwrap(), 4);
    }

    #[test]
    fn conjugated_multiples() {
        let r = FiniteRing::zmod(3).unwrap();
        let l = Character::on_ring(&r, &[2]).unwrap();
        let p = random_instance(&r, 1, &l, 3, 5).unwrap();
        assert_eq!(commutant_dim(&p).unwrap(), 9);
    }
}
