//! CCR pairs `(U, V)` on `R^d`, stored as full tables of carrier operators.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::character::{Character, CharacterJson};
use crate::error::{check_cap, Error, Result};
use crate::linalg::{random_unitary, ComplexMatrix, Operator, PhaseMonomial};
use crate::phase::Phase;
use crate::ring::{FiniteRing, FreeModule, RingDescriptor};

/// Largest carrier dimension for any pair.
pub const PAIR_DIM_CAP: usize = 4096;
/// Largest number of stored complex entries across a dense pair table.
pub const DENSE_TABLE_CAP: usize = 1 << 24;

/// Tolerance for unitaries handed to [`CcrPair::conjugate`].
pub const CONJUGATE_TOL: f64 = 1e-10;

/// Which group elements a residual scan covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every element (pair) of `R^d`.
    All,
    /// Only the additive generators of `R^d`.
    Generators,
}

/// Largest common denominator for the integer residue fast path.
const RESIDUE_DEN_CAP: u64 = 1 << 32;

/// Monomial operators as `(cols, phase numerators)` over a shared denominator.
struct Residues {
    den: u64,
    u: Vec<(Vec<usize>, Vec<u64>)>,
    v: Vec<(Vec<usize>, Vec<u64>)>,
}

type Rows<'a> = (&'a [usize], &'a [u64]);

impl Residues {
    fn table(&self, v: bool) -> &[(Vec<usize>, Vec<u64>)] {
        if v {
            &self.v
        } else {
            &self.u
        }
    }

    fn rows(&self, v: bool, idx: usize) -> Rows<'_> {
        let (c, p) = &self.table(v)[idx];
        (c, p)
    }

    /// `q` as a numerator over `den`; `den` is a multiple of every `λ` value's denominator.
    fn lift(&self, q: Phase) -> u64 {
        q.num() * (self.den / q.den())
    }

    /// Whether `x·y = e^{2πi q/den}·l·r`, row by row.
    fn product_eq(&self, x: Rows, y: Rows, l: Rows, r: Rows, q: u64) -> bool {
        let den = self.den;
        (0..x.0.len()).all(|i| {
            let (k, m) = (x.0[i], l.0[i]);
            y.0[k] == r.0[m] && (x.1[i] + y.1[k]) % den == (l.1[i] + r.1[m] + q) % den
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CcrPair {
    module: FreeModule,
    lambda: Character,
    dim: usize,
    u: Vec<Operator>,
    v: Vec<Operator>,
}

fn check_dim(dim: usize, elements: usize, dense: bool) -> Result<()> {
    check_cap("carrier dimension", dim as u128, PAIR_DIM_CAP as u128)?;
    if dense {
        let entries = 2 * elements as u128 * dim as u128 * dim as u128;
        check_cap("dense pair table entries", entries, DENSE_TABLE_CAP as u128)?;
    }
    Ok(())
}

impl CcrPair {
    /// Builds a pair from full tables indexed by elements of `R^d`.
    pub fn from_tables(module: &FreeModule, lambda: &Character, u: Vec<Operator>, v: Vec<Operator>) -> Result<CcrPair> {
        if lambda.group() != module.ring().additive() {
            return Err(Error::Structural("character does not belong to the ring".into()));
        }
        if u.len() != module.size() || v.len() != module.size() {
            return Err(Error::Structural(format!(
                "pair tables need {} entries, got {} and {}",
                module.size(),
                u.len(),
                v.len()
            )));
        }
        let dim = u.first().map(Operator::dim).unwrap_or(0);
        if u.iter().chain(&v).any(|op| op.dim() != dim) {
            return Err(Error::Structural("operators of different dimensions in one pair".into()));
        }
        let dense = u.iter().chain(&v).any(|op| op.as_monomial().is_none());
        check_dim(dim, module.size(), dense)?;
        Ok(CcrPair {
            module: module.clone(),
            lambda: lambda.clone(),
            dim,
            u,
            v,
        })
    }

    /// Builds the full tables from the values on the additive generators of `R^d`.
    pub fn from_generators(
        module: &FreeModule,
        lambda: &Character,
        u_gens: &[Operator],
        v_gens: &[Operator],
    ) -> Result<CcrPair> {
        let u = extend_from_generators(module, u_gens)?;
        let v = extend_from_generators(module, v_gens)?;
        CcrPair::from_tables(module, lambda, u, v)
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn ring(&self) -> &FiniteRing {
        self.module.ring()
    }

    pub fn degree(&self) -> usize {
        self.module.degree()
    }

    pub fn lambda(&self) -> &Character {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u(&self, a: usize) -> &Operator {
        &self.u[a]
    }

    pub fn v(&self, b: usize) -> &Operator {
        &self.v[b]
    }

    pub fn u_table(&self) -> &[Operator] {
        &self.u
    }

    pub fn v_table(&self) -> &[Operator] {
        &self.v
    }

    pub fn is_monomial(&self) -> bool {
        self.u.iter().chain(&self.v).all(|op| op.as_monomial().is_some())
    }

    /// `λ(a·b)` for `a, b ∈ R^d`.
    pub fn ccr_phase(&self, a: usize, b: usize) -> Phase {
        self.lambda.eval(self.module.dot_index(a, b))
    }

    fn scan(&self, scope: Scope) -> Vec<usize> {
        match scope {
            Scope::All => self.module.elements().collect(),
            Scope::Generators => self.module.generators(),
        }
    }

    /// `max ‖U(a)V(b) − λ(a·b)V(b)U(a)‖` over the scope.
    pub fn verify_ccr(&self, scope: Scope) -> Result<f64> {
        let els = self.scan(scope);
        let res = self.residues();
        let mut worst: f64 = 0.0;
        for &a in &els {
            for &b in &els {
                let q = self.ccr_phase(a, b);
                if let Some(r) = &res {
                    let (u, v) = (r.rows(false, a), r.rows(true, b));
                    if r.product_eq(u, v, v, u, r.lift(q)) {
                        continue;
                    }
                }
                let lhs = self.u[a].mul(&self.v[b]);
                let rhs = self.v[b].mul(&self.u[a]).scale(q);
                worst = worst.max(lhs.distance(&rhs)?);
            }
        }
        Ok(worst)
    }

    /// Largest of `‖U(a+a') − U(a)U(a')‖`, `‖U(0) − I‖` and the same for `V`.
    /// With [`Scope::Generators`] only `a'` runs over generators.
    pub fn representation_residual(&self, scope: Scope) -> Result<f64> {
        let id = Operator::identity(self.dim);
        let mut worst = self.u[0].distance(&id)?.max(self.v[0].distance(&id)?);
        let right = self.scan(scope);
        let res = self.residues();
        let id_cols: Vec<usize> = (0..self.dim).collect();
        let id_phases = vec![0u64; self.dim];
        for (table, is_v) in [(&self.u, false), (&self.v, true)] {
            for a in self.module.elements() {
                for &b in &right {
                    let sum = self.module.add(a, b);
                    if let Some(r) = &res {
                        if r.product_eq(r.rows(is_v, a), r.rows(is_v, b), r.rows(is_v, sum), (&id_cols, &id_phases), 0) {
                            continue;
                        }
                    }
                    let prod = table[a].mul(&table[b]);
                    worst = worst.max(table[sum].distance(&prod)?);
                }
            }
        }
        Ok(worst)
    }

    /// All-monomial tables rewritten over one common denominator, when it is small.
    fn residues(&self) -> Option<Residues> {
        let mut den = 1u64;
        let mut absorb = |p: Phase| {
            if den % p.den() != 0 {
                den = den.lcm(&p.den());
            }
            den <= RESIDUE_DEN_CAP
        };
        for c in self.module.ring().elements() {
            if !absorb(self.lambda.eval(c)) {
                return None;
            }
        }
        for op in self.u.iter().chain(&self.v) {
            if !op.as_monomial()?.phases().iter().all(|&p| absorb(p)) {
                return None;
            }
        }
        let lower = |t: &[Operator]| -> Vec<(Vec<usize>, Vec<u64>)> {
            t.iter()
                .map(|op| {
                    let m = op.as_monomial().expect("checked above");
                    (m.cols().to_vec(), m.phases().iter().map(|p| p.num() * (den / p.den())).collect())
                })
                .collect()
        };
        Some(Residues {
            den,
            u: lower(&self.u),
            v: lower(&self.v),
        })
    }

    /// Largest `‖X*X − I‖` over the table.
    pub fn unitarity_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for op in self.u.iter().chain(&self.v) {
            worst = worst.max(op.unitarity_defect()?);
        }
        Ok(worst)
    }

    /// `k` copies, `U^{(k)}(a) = I_k ⊗ U(a)`.
    pub fn inflate(&self, k: usize) -> Result<CcrPair> {
        if k == 0 {
            return Err(Error::Invalid("inflation needs at least one copy".into()));
        }
        let ik = Operator::identity(k);
        let map = |t: &Vec<Operator>| t.iter().map(|op| ik.kron(op)).collect::<Vec<_>>();
        check_dim(self.dim * k, self.module.size(), !self.is_monomial())?;
        CcrPair::from_tables(&self.module, &self.lambda, map(&self.u), map(&self.v))
    }

    pub fn direct_sum(&self, other: &CcrPair) -> Result<CcrPair> {
        if self.module != other.module || self.lambda != other.lambda {
            return Err(Error::Structural("direct sum of pairs over different (R, d, λ)".into()));
        }
        let n = self.dim + other.dim;
        check_dim(n, self.module.size(), !(self.is_monomial() && other.is_monomial()))?;
        let sum = |x: &Operator, y: &Operator| -> Operator {
            match (x, y) {
                (Operator::Monomial(p), Operator::Monomial(q)) => {
                    let off = p.dim();
                    Operator::Monomial(PhaseMonomial::from_fn(n, |i| {
                        if i < off {
                            (p.cols()[i], p.phases()[i])
                        } else {
                            (off + q.cols()[i - off], q.phases()[i - off])
                        }
                    }))
                }
                _ => {
                    let off = x.dim();
                    Operator::Dense(ComplexMatrix::from_fn(n, n, |i, j| match (i < off, j < off) {
                        (true, true) => x.entry(i, j),
                        (false, false) => y.entry(i - off, j - off),
                        _ => crate::linalg::C64::new(0.0, 0.0),
                    }))
                }
            }
        };
        let u = self.u.iter().zip(&other.u).map(|(x, y)| sum(x, y)).collect();
        let v = self.v.iter().zip(&other.v).map(|(x, y)| sum(x, y)).collect();
        CcrPair::from_tables(&self.module, &self.lambda, u, v)
    }

    /// The pair `a ↦ W U(a) W*`, `b ↦ W V(b) W*`.
    pub fn conjugate(&self, w: &ComplexMatrix) -> Result<CcrPair> {
        if w.nrows() != self.dim || w.ncols() != self.dim {
            return Err(Error::Structural(format!(
                "conjugating unitary is {}x{}, pair dimension is {}",
                w.nrows(),
                w.ncols(),
                self.dim
            )));
        }
        let defect = w.unitarity_defect()?;
        if defect > CONJUGATE_TOL {
            return Err(Error::Precondition(format!(
                "conjugating matrix is not unitary: ‖W*W − I‖ = {defect:.3e}"
            )));
        }
        check_dim(self.dim, self.module.size(), true)?;
        let wo = Operator::Dense(w.clone());
        let wa = Operator::Dense(w.adjoint());
        let map = |t: &Vec<Operator>| t.iter().map(|op| wo.mul(op).mul(&wa)).collect::<Vec<_>>();
        CcrPair::from_tables(&self.module, &self.lambda, map(&self.u), map(&self.v))
    }

    /// Ũ(a) = P_a ⊗ U(a) and Ṽ(b) = Q_b ⊗ V(b) on `L²(S, ℋ)`, where `P_a`, `Q_b`
    /// translate the first, second coordinate of `S = R^d × R^d`.
    pub fn tilde(&self) -> Result<CcrPair> {
        let m = &self.module;
        let n = m.size();
        check_dim(n * n * self.dim, n, !self.is_monomial())?;
        let u = m
            .elements()
            .map(|a| Operator::Monomial(s_shift(m, a)).kron(&self.u[a]))
            .collect();
        let v = m
            .elements()
            .map(|b| Operator::Monomial(s_shift_second(m, b)).kron(&self.v[b]))
            .collect();
        CcrPair::from_tables(m, &self.lambda, u, v)
    }

    /// Ū(a) = diag λ(a·x) ⊗ U(a) and V̄(b) = diag λ(y·b) ⊗ V(b) on `L²(S, ℋ)`.
    pub fn bar(&self) -> Result<CcrPair> {
        let m = &self.module;
        let n = m.size();
        check_dim(n * n * self.dim, n, !self.is_monomial())?;
        let lam = &self.lambda;
        let u = m
            .elements()
            .map(|a| {
                let d = PhaseMonomial::from_fn(n * n, |s| (s, lam.eval(m.dot_index(a, s / n))));
                Operator::Monomial(d).kron(&self.u[a])
            })
            .collect();
        let v = m
            .elements()
            .map(|b| {
                let d = PhaseMonomial::from_fn(n * n, |s| (s, lam.eval(m.dot_index(s % n, b))));
                Operator::Monomial(d).kron(&self.v[b])
            })
            .collect();
        CcrPair::from_tables(m, &self.lambda, u, v)
    }

    /// `U^{(m)}(a) = I_m ⊗ U(a)`, the lazily described inflation used in intertwining checks.
    pub fn inflated_u(&self, copies: usize, a: usize) -> Operator {
        Operator::identity(copies).kron(&self.u[a])
    }

    /// Carrier operators of the Heisenberg element `m(a, b, c)`: `λ(c) V(b) U(a)`.
    pub fn heisenberg_operator(&self, a: usize, b: usize, c: usize) -> Operator {
        self.v[b].mul(&self.u[a]).scale(self.lambda.eval(c))
    }

    pub fn to_file(&self) -> PairFile {
        let enc = |op: &Operator| match op {
            Operator::Monomial(m) => MatrixJson {
                data: None,
                monomial: Some(MonomialJson {
                    cols: m.cols().to_vec(),
                    phases: m.phases().to_vec(),
                }),
            },
            Operator::Dense(d) => MatrixJson {
                data: Some(d.to_pairs()),
                monomial: None,
            },
        };
        PairFile {
            ring: self.ring().descriptor().clone(),
            d: self.degree(),
            lambda: self.lambda.to_json(),
            dim: self.dim,
            u: self.u.iter().map(enc).collect(),
            v: self.v.iter().map(enc).collect(),
        }
    }

    pub fn from_file(file: &PairFile) -> Result<CcrPair> {
        let ring = FiniteRing::new(&file.ring)?;
        let module = FreeModule::new(&ring, file.d)?;
        let lambda = Character::on_ring(&ring, &file.lambda.exponents)?;
        check_dim(file.dim, module.size(), false)?;
        let dec = |m: &MatrixJson| -> Result<Operator> {
            match (&m.data, &m.monomial) {
                (None, Some(mono)) => {
                    if mono.cols.len() != file.dim {
                        return Err(Error::Invalid("monomial of the wrong dimension".into()));
                    }
                    Ok(Operator::Monomial(PhaseMonomial::new(mono.cols.clone(), mono.phases.clone())?))
                }
                (Some(data), None) => Ok(Operator::Dense(ComplexMatrix::from_pairs(file.dim, file.dim, data)?)),
                _ => Err(Error::Invalid("matrix needs exactly one of `data`, `monomial`".into())),
            }
        };
        let u = file.u.iter().map(dec).collect::<Result<Vec<_>>>()?;
        let v = file.v.iter().map(dec).collect::<Result<Vec<_>>>()?;
        CcrPair::from_tables(&module, &lambda, u, v)
    }
}

/// Translation of `S = R^d × R^d` by `a` in the first coordinate:
/// row `(x, y)` has its entry at column `(x + a, y)`.
fn s_shift(m: &FreeModule, a: usize) -> PhaseMonomial {
    let n = m.size();
    PhaseMonomial::from_fn(n * n, |s| (m.add(s / n, a) * n + s % n, Phase::ZERO))
}

/// Translation of `S` by `b` in the second coordinate.
fn s_shift_second(m: &FreeModule, b: usize) -> PhaseMonomial {
    let n = m.size();
    PhaseMonomial::from_fn(n * n, |s| ((s / n) * n + m.add(s % n, b), Phase::ZERO))
}

fn extend_from_generators(module: &FreeModule, gens: &[Operator]) -> Result<Vec<Operator>> {
    let group = module.additive();
    if gens.len() != group.rank() {
        return Err(Error::Structural(format!(
            "{} generator values for {} additive generators",
            gens.len(),
            group.rank()
        )));
    }
    let dim = gens.first().map(Operator::dim).unwrap_or(0);
    let mut table: Vec<Operator> = Vec::with_capacity(module.size());
    table.push(Operator::identity(dim));
    for x in 1..module.size() {
        let coords = group.coords(x);
        let j = coords.iter().rposition(|&c| c != 0).expect("nonzero element");
        let prev = group.sub(x, group.basis(j));
        table.push(table[prev].mul(&gens[j]));
    }
    Ok(table)
}

/// The Schrödinger pair on `ℓ²(R^d)`: `(U(a)f)(x) = f(x+a)`, `(V(b)f)(x) = λ(x·b)f(x)`.
pub fn schrodinger(ring: &FiniteRing, d: usize, lambda: &Character) -> Result<CcrPair> {
    let m = FreeModule::new(ring, d)?;
    let n = m.size();
    check_dim(n, n, false)?;
    let u = m
        .elements()
        .map(|a| Operator::Monomial(PhaseMonomial::from_fn(n, |x| (m.add(x, a), Phase::ZERO))))
        .collect();
    let v = m
        .elements()
        .map(|b| Operator::Monomial(PhaseMonomial::from_fn(n, |x| (x, lambda.eval(m.dot_index(x, b))))))
        .collect();
    CcrPair::from_tables(&m, lambda, u, v)
}

/// The regular pair on `ℓ²(S)`, `S = R^d × R^d`, with index `x·|R^d| + y`:
/// `(U(a)ξ)(x,y) = ξ(x+a,y)`, `(V(b)ξ)(x,y) = λ(x·b)ξ(x,y+b)`.
pub fn regular(ring: &FiniteRing, d: usize, lambda: &Character) -> Result<CcrPair> {
    let m = FreeModule::new(ring, d)?;
    let n = m.size();
    check_dim(n * n, n, false)?;
    let u = m.elements().map(|a| Operator::Monomial(s_shift(&m, a))).collect();
    let v = m
        .elements()
        .map(|b| {
            Operator::Monomial(PhaseMonomial::from_fn(n * n, |s| {
                let (x, y) = (s / n, s % n);
                (x * n + m.add(y, b), lambda.eval(m.dot_index(x, b)))
            }))
        })
        .collect();
    CcrPair::from_tables(&m, lambda, u, v)
}

/// `W · (mult copies of Schrödinger) · W*` with a seeded random unitary `W`.
pub fn random_instance(ring: &FiniteRing, d: usize, lambda: &Character, mult: usize, seed: u64) -> Result<CcrPair> {
    let base = schrodinger(ring, d, lambda)?.inflate(mult)?;
    let w = random_unitary(base.dim(), seed);
    base.conjugate(&w)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub cols: Vec<usize>,
    pub phases: Vec<Phase>,
}

/// One carrier operator: dense row-major `[re, im]` entries, or an exact monomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<MonomialJson>,
}

/// File form of a pair; `u` and `v` list every element of `R^d` in index order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairFile {
    pub ring: RingDescriptor,
    pub d: usize,
    pub lambda: CharacterJson,
    pub dim: usize,
    pub u: Vec<MatrixJson>,
    pub v: Vec<MatrixJson>,
}
