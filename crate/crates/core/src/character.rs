//! Characters of finite abelian groups, the map `∇_λ` and the conditions
//! (Sym), (Isom), (Faith) on a character of a finite ring.

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::group::AbelianGroup;
use crate::phase::Phase;
use crate::ring::{Elem, FiniteRing, FreeModule};

/// `χ(x) = exp(2πi Σ_j e_j x_j / m_j)` on `⊕_j ℤ/m_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group: AbelianGroup,
    exponents: Vec<u64>,
}

/// JSON form of a character, relative to a known group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub exponents: Vec<i64>,
}

impl Character {
    /// Exponents are reduced modulo the factor orders.
    pub fn new(group: &AbelianGroup, exponents: &[i64]) -> Result<Character> {
        if exponents.len() != group.rank() {
            return Err(Error::Structural(format!(
                "{} exponents for a group with {} cyclic factors",
                exponents.len(),
                group.rank()
            )));
        }
        let exponents = exponents
            .iter()
            .zip(group.orders())
            .map(|(&e, &m)| e.rem_euclid(m as i64) as u64)
            .collect();
        Ok(Character {
            group: group.clone(),
            exponents,
        })
    }

    pub fn trivial(group: &AbelianGroup) -> Character {
        Character {
            group: group.clone(),
            exponents: vec![0; group.rank()],
        }
    }

    /// A character of `(R,+)`.
    pub fn on_ring(ring: &FiniteRing, exponents: &[i64]) -> Result<Character> {
        Character::new(ring.additive(), exponents)
    }

    /// `x ↦ χ0(Tr x)` on a matrix ring, where `χ0` has the given exponents on the base ring.
    pub fn trace_form(ring: &FiniteRing, base_exponents: &[i64]) -> Result<Character> {
        let (n, base) = ring
            .matrix_parts()
            .ok_or_else(|| Error::Structural(format!("{} is not a matrix ring", ring.descriptor())))?;
        let chi0 = Character::on_ring(base, base_exponents)?;
        let r = base.additive_factors().len();
        let mut exps = vec![0i64; n * n * r];
        for i in 0..n {
            let slot = i * n + i;
            for j in 0..r {
                exps[slot * r + j] = chi0.exponents[j] as i64;
            }
        }
        Character::on_ring(ring, &exps)
    }

    /// The standard trace character `x ↦ exp(2πi Tr(x)/p)`, with exponent 1 on every base factor.
    pub fn standard_trace(ring: &FiniteRing) -> Result<Character> {
        let (_, base) = ring
            .matrix_parts()
            .ok_or_else(|| Error::Structural(format!("{} is not a matrix ring", ring.descriptor())))?;
        Character::trace_form(ring, &vec![1; base.additive_factors().len()])
    }

    /// Parses `{"exponents":[..]}`, a bare integer `k` (every exponent `k`), or
    /// `trace` for the standard trace character of a matrix ring.
    pub fn parse(ring: &FiniteRing, s: &str) -> Result<Character> {
        let s = s.trim();
        if s == "trace" {
            return Character::standard_trace(ring);
        }
        if let Ok(k) = s.parse::<i64>() {
            return Character::on_ring(ring, &vec![k; ring.additive_factors().len()]);
        }
        let json: CharacterJson =
            serde_json::from_str(s).map_err(|e| Error::Invalid(format!("character: {e}")))?;
        Character::on_ring(ring, &json.exponents)
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            exponents: self.exponents.iter().map(|&e| e as i64).collect(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `χ(x)` as an exact phase; `x` is an element index of the group.
    pub fn eval(&self, x: usize) -> Phase {
        let mut acc = Phase::ZERO;
        for (j, (&e, &m)) in self.exponents.iter().zip(self.group.orders()).enumerate() {
            if e != 0 {
                let c = self.group.coord(x, j);
                acc += Phase::new(e as i128 * c as i128, m);
            }
        }
        acc
    }

    pub fn try_eval(&self, x: usize) -> Result<Phase> {
        if x >= self.group.order() {
            return Err(Error::Structural(format!(
                "element {x} outside a group of order {}",
                self.group.order()
            )));
        }
        Ok(self.eval(x))
    }

    /// Product of characters (sum of exponents).
    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.group != other.group {
            return Err(Error::Structural("characters on different groups".into()));
        }
        let exps: Vec<i64> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| (a + b) as i64)
            .collect();
        Character::new(&self.group, &exps)
    }

    /// Reads off the character with the given values on the group basis.
    fn from_basis_values(group: &AbelianGroup, values: impl Iterator<Item = Phase>) -> Character {
        let exponents = values
            .zip(group.orders())
            .map(|(q, &m)| {
                // m · q is an integer because m annihilates the basis element
                let e = q.num() as u128 * m as u128 / q.den() as u128;
                debug_assert_eq!(e * q.den() as u128, q.num() as u128 * m as u128);
                e as u64
            })
            .collect();
        Character {
            group: group.clone(),
            exponents,
        }
    }
}

/// `∇_λ(a): x ↦ λ(x·a)` on `R^d`, for `a ∈ R^d` given as a module index.
pub fn nabla(lambda: &Character, module: &FreeModule, a: usize) -> Result<Character> {
    check_ring_character(module.ring(), lambda)?;
    if a >= module.size() {
        return Err(Error::Structural(format!("vector index {a} outside R^{}", module.degree())));
    }
    let group = module.additive();
    let values = (0..group.rank()).map(|j| lambda.eval(module.dot_index(group.basis(j), a)));
    Ok(Character::from_basis_values(group, values))
}

fn check_ring_character(ring: &FiniteRing, lambda: &Character) -> Result<()> {
    if lambda.group() != ring.additive() {
        return Err(Error::Structural(format!(
            "character does not live on the additive group of {}",
            ring.descriptor()
        )));
    }
    Ok(())
}

/// All characters of a finite abelian group, ordered by exponent vector.
pub fn dual_group(group: &AbelianGroup, cap: usize) -> Result<Vec<Character>> {
    check_cap("dual group", group.order() as u128, cap as u128)?;
    Ok((0..group.order())
        .map(|i| Character {
            group: group.clone(),
            exponents: group.coords(i),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymReport {
    pub holds: bool,
    /// First `(a, b)` in index order with `λ(ab) ≠ λ(ba)`.
    pub counterexample: Option<(Elem, Elem)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomReport {
    pub holds: bool,
    /// `ker ∇_λ`, sorted, when it is nonzero.
    pub kernel: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithReport {
    pub holds: bool,
    /// A nonzero two-sided ideal inside `ker λ`, sorted.
    pub witness_ideal: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub sym: SymReport,
    pub iso: IsomReport,
    pub faith: FaithReport,
}

/// Largest ring for which the condition checks run (the (Sym) scan is quadratic).
pub const CONDITION_CAP: usize = 4096;

pub fn check_sym(ring: &FiniteRing, lambda: &Character) -> Result<SymReport> {
    check_ring_character(ring, lambda)?;
    check_cap("ring order", ring.order() as u128, CONDITION_CAP as u128)?;
    for a in ring.elements() {
        for b in ring.elements() {
            if lambda.eval(ring.mul(a, b)) != lambda.eval(ring.mul(b, a)) {
                return Ok(SymReport {
                    holds: false,
                    counterexample: Some((a, b)),
                });
            }
        }
    }
    Ok(SymReport {
        holds: true,
        counterexample: None,
    })
}

/// `ker ∇_λ = {a : λ(xa) = 1 for all x}`, tested on the additive basis.
pub fn nabla_kernel(ring: &FiniteRing, lambda: &Character) -> Result<Vec<Elem>> {
    check_ring_character(ring, lambda)?;
    let basis: Vec<Elem> = (0..ring.additive_factors().len()).map(|j| ring.basis(j)).collect();
    Ok(ring
        .elements()
        .filter(|&a| basis.iter().all(|&x| lambda.eval(ring.mul(x, a)).is_zero()))
        .collect())
}

pub fn check_iso(ring: &FiniteRing, lambda: &Character) -> Result<IsomReport> {
    check_cap("ring order", ring.order() as u128, CONDITION_CAP as u128)?;
    let kernel = nabla_kernel(ring, lambda)?;
    // injective on a finite group of the same order as its dual, hence bijective
    let holds = kernel.len() == 1;
    Ok(IsomReport {
        holds,
        kernel: if holds { None } else { Some(kernel) },
    })
}

/// The two-sided ideal generated by `a`: closure of `{a}` under addition and
/// left/right multiplication by the additive basis.
pub fn two_sided_ideal(ring: &FiniteRing, a: Elem) -> Vec<Elem> {
    let gens: Vec<Elem> = (0..ring.additive_factors().len()).map(|j| ring.basis(j)).collect();
    let mut member = vec![false; ring.order()];
    let mut list = vec![ring.zero()];
    member[ring.zero()] = true;
    let mut queue = vec![a];
    while let Some(x) = queue.pop() {
        if member[x] {
            continue;
        }
        // add x and every sum with an existing member, keeping the set a subgroup
        let existing = list.clone();
        for &y in &existing {
            let mut z = ring.add(x, y);
            while !member[z] {
                member[z] = true;
                list.push(z);
                for &g in &gens {
                    queue.push(ring.mul(g, z));
                    queue.push(ring.mul(z, g));
                }
                z = ring.add(z, x);
            }
        }
    }
    list.sort_unstable();
    list
}

pub fn check_faith(ring: &FiniteRing, lambda: &Character) -> Result<FaithReport> {
    check_ring_character(ring, lambda)?;
    check_cap("ring order", ring.order() as u128, CONDITION_CAP as u128)?;
    for a in ring.elements().skip(1) {
        if !lambda.eval(a).is_zero() {
            continue;
        }
        let ideal = two_sided_ideal(ring, a);
        if ideal.iter().all(|&x| lambda.eval(x).is_zero()) {
            return Ok(FaithReport {
                holds: false,
                witness_ideal: Some(ideal),
            });
        }
    }
    Ok(FaithReport {
        holds: true,
        witness_ideal: None,
    })
}

pub fn check_conditions(ring: &FiniteRing, lambda: &Character) -> Result<ConditionReport> {
    Ok(ConditionReport {
        sym: check_sym(ring, lambda)?,
        iso: check_iso(ring, lambda)?,
        faith: check_faith(ring, lambda)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::shipped_rings;
    use crate::ring::RingVector;

    fn z(n: u64) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let r2 = z(2);
        let l = Character::on_ring(&r2, &[1]).unwrap();
        assert_eq!(l.eval(1), Phase::new(1, 2));
        let r4 = z(4);
        let l = Character::on_ring(&r4, &[1]).unwrap();
        assert_eq!(l.eval(3), Phase::new(3, 4));
        assert_eq!(l.eval(3).to_c64().im, -1.0);
        assert!(l.eval(0).is_zero());
        assert!(l.try_eval(4).is_err());
    }

    #[test]
    fn character_is_multiplicative_exhaustively() {
        for r in shipped_rings().into_iter().filter(|r| r.order() <= 16) {
            for chi in dual_group(r.additive(), 4096).unwrap() {
                for x in r.elements() {
                    for y in r.elements() {
                        assert_eq!(chi.eval(r.add(x, y)), chi.eval(x) + chi.eval(y));
                    }
                }
            }
        }
    }

    #[test]
    fn nabla_examples() {
        let r4 = z(4);
        let m = FreeModule::new(&r4, 1).unwrap();
        let l1 = Character::on_ring(&r4, &[1]).unwrap();
        assert_eq!(nabla(&l1, &m, 1).unwrap(), l1);
        let l2 = Character::on_ring(&r4, &[2]).unwrap();
        assert!(nabla(&l2, &m, 2).unwrap().is_trivial());

        let f2 = FiniteRing::prime_field(2).unwrap();
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        let tr = Character::standard_trace(&m2).unwrap();
        let e12 = m2.matrix_from_entries(&[0, 1, 0, 0]).unwrap();
        let mm = FreeModule::new(&m2, 1).unwrap();
        let k = nabla(&tr, &mm, e12).unwrap();
        for x in m2.elements() {
            let x21 = m2.matrix_entries(x).unwrap()[2];
            assert_eq!(k.eval(x).is_zero(), x21 == 0);
        }
    }

    #[test]
    fn nabla_is_additive() {
        for r in shipped_rings().into_iter().filter(|r| r.order() <= 16) {
            let m = FreeModule::new(&r, 1).unwrap();
            for lam in dual_group(r.additive(), 4096).unwrap() {
                for a in r.elements() {
                    for b in r.elements() {
                        let lhs = nabla(&lam, &m, r.add(a, b)).unwrap();
                        let rhs = nabla(&lam, &m, a).unwrap().mul(&nabla(&lam, &m, b).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn nabla_on_module_matches_definition() {
        let r = z(3);
        let m = FreeModule::new(&r, 2).unwrap();
        let lam = Character::on_ring(&r, &[1]).unwrap();
        for a in m.elements() {
            let chi = nabla(&lam, &m, a).unwrap();
            for x in m.elements() {
                assert_eq!(chi.eval(x), lam.eval(m.dot_index(x, a)));
            }
        }
        let av = RingVector::new(vec![1, 2]);
        assert_eq!(m.index(&av).unwrap(), 5);
    }

    #[test]
    fn condition_examples() {
        let r4 = z(4);
        let rep = check_conditions(&r4, &Character::on_ring(&r4, &[1]).unwrap()).unwrap();
        assert!(rep.sym.holds && rep.iso.holds && rep.faith.holds);
        let rep = check_conditions(&r4, &Character::on_ring(&r4, &[2]).unwrap()).unwrap();
        assert!(rep.sym.holds);
        assert_eq!(rep.iso.kernel, Some(vec![0, 2]));
        assert_eq!(rep.faith.witness_ideal, Some(vec![0, 2]));

        let f2 = FiniteRing::prime_field(2).unwrap();
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        let rep = check_conditions(&m2, &Character::standard_trace(&m2).unwrap()).unwrap();
        assert!(rep.sym.holds && rep.iso.holds && rep.faith.holds);
    }

    #[test]
    fn asymmetric_character_gets_counterexample() {
        let f2 = FiniteRing::prime_field(2).unwrap();
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        // λ(X) = (−1)^{X_12}
        let lam = Character::on_ring(&m2, &[0, 1, 0, 0]).unwrap();
        let rep = check_sym(&m2, &lam).unwrap();
        let (a, b) = rep.counterexample.unwrap();
        assert_ne!(lam.eval(m2.mul(a, b)), lam.eval(m2.mul(b, a)));
    }

    #[test]
    fn dual_group_sizes() {
        assert_eq!(dual_group(z(2).additive(), 10).unwrap().len(), 2);
        let m = FreeModule::new(&z(2), 2).unwrap();
        assert_eq!(dual_group(m.additive(), 10).unwrap().len(), 4);
        let d6 = dual_group(z(6).additive(), 10).unwrap();
        assert_eq!(d6.len(), 6);
        // generated by the exponent-1 character
        let g = &d6[1];
        let mut c = g.clone();
        let mut k = 1;
        while !c.is_trivial() {
            c = c.mul(g).unwrap();
            k += 1;
        }
        assert_eq!(k, 6);
        assert!(dual_group(z(64).additive(), 10).is_err());
    }

    #[test]
    fn characters_separate_points() {
        for r in shipped_rings().into_iter().filter(|r| r.order() <= 64) {
            let dual = dual_group(r.additive(), 4096).unwrap();
            for a in r.elements().skip(1) {
                assert!(dual.iter().any(|c| !c.eval(a).is_zero()));
            }
        }
    }

    #[test]
    fn sym_and_faith_imply_iso() {
        for r in shipped_rings().into_iter().filter(|r| r.order() <= 64) {
            for lam in dual_group(r.additive(), 4096).unwrap() {
                let rep = check_conditions(&r, &lam).unwrap();
                if rep.sym.holds && rep.faith.holds {
                    assert!(rep.iso.holds, "{} {:?}", r.descriptor(), lam.exponents());
                }
                if rep.sym.holds {
                    let ker = nabla_kernel(&r, &lam).unwrap();
                    for &k in &ker {
                        assert!(lam.eval(k).is_zero());
                        for x in r.elements() {
                            assert!(ker.binary_search(&r.mul(x, k)).is_ok());
                            assert!(ker.binary_search(&r.mul(k, x)).is_ok());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_closure_is_an_ideal() {
        let f2 = FiniteRing::prime_field(2).unwrap();
        let m2 = FiniteRing::matrix(2, &f2).unwrap();
        // M_2(F_2) is simple
        for a in m2.elements().skip(1) {
            assert_eq!(two_sided_ideal(&m2, a).len(), 16);
        }
        assert_eq!(two_sided_ideal(&z(12), 8), vec![0, 4, 8]);
    }

    #[test]
    fn parse_forms() {
        let r4 = z(4);
        assert_eq!(Character::parse(&r4, "3").unwrap().exponents(), &[3]);
        assert_eq!(Character::parse(&r4, r#"{"exponents":[6]}"#).unwrap().exponents(), &[2]);
        assert!(Character::parse(&r4, r#"{"exponents":[1,1]}"#).is_err());
        assert!(Character::parse(&r4, "trace").is_err());
    }
}
