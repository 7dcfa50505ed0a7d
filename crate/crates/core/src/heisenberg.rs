//! The Heisenberg group `H_{2d+1}(R)` of elements `m(a, b, c)` with
//! `m(a,b,c)·m(a',b',c') = m(a+a', b+b', c+c'+a·b')`, and its representations
//! with central character `λ`.

use serde::Serialize;

use crate::character::Character;
use crate::error::{check_cap, Error, Result};
use crate::linalg::{Operator, PhaseMonomial, C64};
use crate::pairs::{CcrPair, Scope};
use crate::ring::{Elem, FiniteRing, FreeModule};

/// Largest group that is enumerated element by element.
pub const HEIS_CAP: usize = 4096;

/// Residual allowed for the CCR and central-character preconditions.
pub const REP_TOL: f64 = 1e-10;

/// `m(a, b, c)` with `a, b` indices into `R^d` and `c ∈ R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HeisElem {
    pub a: usize,
    pub b: usize,
    pub c: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergGroup {
    module: FreeModule,
}

impl HeisenbergGroup {
    pub fn new(ring: &FiniteRing, d: usize) -> Result<HeisenbergGroup> {
        Ok(HeisenbergGroup {
            module: FreeModule::new(ring, d)?,
        })
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn ring(&self) -> &FiniteRing {
        self.module.ring()
    }

    /// `|R|^{2d+1}`.
    pub fn order(&self) -> u128 {
        let n = self.module.size() as u128;
        n * n * self.ring().order() as u128
    }

    pub fn identity(&self) -> HeisElem {
        HeisElem { a: 0, b: 0, c: 0 }
    }

    pub fn contains(&self, g: HeisElem) -> bool {
        g.a < self.module.size() && g.b < self.module.size() && g.c < self.ring().order()
    }

    fn check(&self, g: HeisElem) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::Structural(format!("{g:?} is not an element of this Heisenberg group")))
        }
    }

    pub fn index(&self, g: HeisElem) -> usize {
        (g.a * self.module.size() + g.b) * self.ring().order() + g.c
    }

    pub fn element(&self, idx: usize) -> HeisElem {
        let r = self.ring().order();
        let n = self.module.size();
        HeisElem {
            a: idx / r / n,
            b: (idx / r) % n,
            c: idx % r,
        }
    }

    pub fn mul(&self, g: HeisElem, h: HeisElem) -> HeisElem {
        let m = &self.module;
        let r = self.ring();
        HeisElem {
            a: m.add(g.a, h.a),
            b: m.add(g.b, h.b),
            c: r.add(r.add(g.c, h.c), m.dot_index(g.a, h.b)),
        }
    }

    pub fn try_mul(&self, g: HeisElem, h: HeisElem) -> Result<HeisElem> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    /// `m(−a, −b, −c + a·b)`.
    pub fn inv(&self, g: HeisElem) -> HeisElem {
        let m = &self.module;
        let r = self.ring();
        HeisElem {
            a: m.neg(g.a),
            b: m.neg(g.b),
            c: r.add(r.neg(g.c), m.dot_index(g.a, g.b)),
        }
    }

    pub fn try_inv(&self, g: HeisElem) -> Result<HeisElem> {
        self.check(g)?;
        Ok(self.inv(g))
    }

    /// `g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, g: HeisElem, h: HeisElem) -> HeisElem {
        self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))
    }

    /// `C = {m(0, 0, c)}`.
    pub fn center(&self) -> Vec<HeisElem> {
        self.ring().elements().map(|c| HeisElem { a: 0, b: 0, c }).collect()
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<HeisElem>> {
        check_cap("Heisenberg group order", self.order(), cap as u128)?;
        Ok((0..self.order() as usize).map(|i| self.element(i)).collect())
    }

    /// Generators `m(e_j,0,0)`, `m(0,e_j,0)`, `m(0,0,f_k)` from the additive bases.
    pub fn generators(&self) -> Vec<HeisElem> {
        let mut out = Vec::new();
        for g in self.module.generators() {
            out.push(HeisElem { a: g, b: 0, c: 0 });
            out.push(HeisElem { a: 0, b: g, c: 0 });
        }
        for k in 0..self.ring().additive_factors().len() {
            out.push(HeisElem {
                a: 0,
                b: 0,
                c: self.ring().basis(k),
            });
        }
        out
    }

    /// Multiplication table by element index.
    pub fn table(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let els = self.elements(cap)?;
        Ok(els
            .iter()
            .map(|&g| els.iter().map(|&h| self.index(self.mul(g, h))).collect())
            .collect())
    }

    pub fn label(&self, g: HeisElem) -> String {
        format!(
            "m({}, {}, {})",
            self.module.label(g.a),
            self.module.label(g.b),
            self.ring().label(g.c)
        )
    }
}

#[derive(Clone, Debug)]
enum RepKind {
    Pair(CcrPair),
    /// Induced from `λ` on the center, transversal `m(a, b, 0)` indexed `a·|R^d| + b`.
    Induced,
}

/// A unitary representation of `H_{2d+1}(R)` with central character `λ`.
#[derive(Clone, Debug)]
pub struct GroupRep {
    group: HeisenbergGroup,
    lambda: Character,
    kind: RepKind,
}

impl GroupRep {
    pub fn group(&self) -> &HeisenbergGroup {
        &self.group
    }

    pub fn lambda(&self) -> &Character {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            RepKind::Pair(p) => p.dim(),
            RepKind::Induced => self.group.module.size().pow(2),
        }
    }

    pub fn matrix(&self, g: HeisElem) -> Operator {
        match &self.kind {
            RepKind::Pair(p) => p.heisenberg_operator(g.a, g.b, g.c),
            RepKind::Induced => {
                let m = &self.group.module;
                let n = m.size();
                let r = self.group.ring();
                // g·t_j = t_i·m(0, 0, c + a·b_j) with t_i = m(a + a_j, b + b_j, 0)
                Operator::Monomial(PhaseMonomial::from_fn(n * n, |i| {
                    let (ai, bi) = (i / n, i % n);
                    let (aj, bj) = (m.sub(ai, g.a), m.sub(bi, g.b));
                    (aj * n + bj, self.lambda.eval(r.add(g.c, m.dot_index(g.a, bj))))
                }))
            }
        }
    }

    pub fn trace(&self, g: HeisElem) -> C64 {
        self.matrix(g).trace()
    }

    /// `tr π(g)` for every `g`, in index order.
    pub fn traces(&self, cap: usize) -> Result<Vec<C64>> {
        Ok(self.group.elements(cap)?.into_iter().map(|g| self.trace(g)).collect())
    }

    /// `max ‖π(gh) − π(g)π(h)‖`, with `h` over all elements or over generators.
    pub fn homomorphism_residual(&self, scope: Scope, cap: usize) -> Result<f64> {
        let els = self.group.elements(cap)?;
        let right = match scope {
            Scope::All => els.clone(),
            Scope::Generators => self.group.generators(),
        };
        let mats: Vec<Operator> = els.iter().map(|&g| self.matrix(g)).collect();
        let mut worst: f64 = 0.0;
        for (gi, &g) in els.iter().enumerate() {
            for &h in &right {
                let prod = mats[gi].mul(&mats[self.group.index(h)]);
                worst = worst.max(mats[self.group.index(self.group.mul(g, h))].distance(&prod)?);
            }
        }
        Ok(worst)
    }

    /// `max_c ‖π(m(0,0,c)) − λ(c) I‖`.
    pub fn central_residual(&self) -> Result<f64> {
        let id = Operator::identity(self.dim());
        let mut worst: f64 = 0.0;
        for z in self.group.center() {
            worst = worst.max(self.matrix(z).distance(&id.scale(self.lambda.eval(z.c)))?);
        }
        Ok(worst)
    }
}

/// `π(m(a,b,c)) = λ(c) V(b) U(a)`.
pub fn rep_from_pair(pair: &CcrPair) -> Result<GroupRep> {
    let scope = if pair.module().size() <= 64 { Scope::All } else { Scope::Generators };
    let res = pair.verify_ccr(scope)?;
    if res > REP_TOL {
        return Err(Error::Precondition(format!("pair violates the commutation relation (residual {res:.3e})")));
    }
    Ok(GroupRep {
        group: HeisenbergGroup {
            module: pair.module().clone(),
        },
        lambda: pair.lambda().clone(),
        kind: RepKind::Pair(pair.clone()),
    })
}

/// `U(a) = π(m(a,0,0))`, `V(b) = π(m(0,b,0))`.
pub fn pair_from_rep(rep: &GroupRep) -> Result<CcrPair> {
    let res = rep.central_residual()?;
    if res > REP_TOL {
        return Err(Error::Precondition(format!(
            "representation does not have λ as central character (residual {res:.3e})"
        )));
    }
    if let RepKind::Pair(p) = &rep.kind {
        return Ok(p.clone());
    }
    let m = rep.group.module();
    let u = m.elements().map(|a| rep.matrix(HeisElem { a, b: 0, c: 0 })).collect();
    let v = m.elements().map(|b| rep.matrix(HeisElem { a: 0, b, c: 0 })).collect();
    CcrPair::from_tables(m, &rep.lambda, u, v)
}

/// `Ind_C^H λ` on `ℓ²(H/C)` with transversal `m(a, b, 0)`.
pub fn induced_rep(ring: &FiniteRing, d: usize, lambda: &Character) -> Result<GroupRep> {
    let group = HeisenbergGroup::new(ring, d)?;
    if lambda.group() != ring.additive() {
        return Err(Error::Structural("character does not belong to the ring".into()));
    }
    check_cap("induced dimension", (group.module.size() as u128).pow(2), crate::pairs::PAIR_DIM_CAP as u128)?;
    Ok(GroupRep {
        group,
        lambda: lambda.clone(),
        kind: RepKind::Induced,
    })
}

/// `max_g |tr π(g) − tr ρ(g)|`.
pub fn trace_distance(pi: &GroupRep, rho: &GroupRep, cap: usize) -> Result<f64> {
    if pi.group != rho.group || pi.lambda != rho.lambda {
        return Err(Error::Structural("representations of different groups".into()));
    }
    let a = pi.traces(cap)?;
    let b = rho.traces(cap)?;
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
}
