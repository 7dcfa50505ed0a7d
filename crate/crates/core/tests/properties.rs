use std::f64::consts::PI;

use ccr_core::approx::{build_grid_partition, certify_epsilon, lemma_partition, sample_orbit, Theta};
use ccr_core::character::{check_conditions, Character};
use ccr_core::group::AbelianGroup;
use ccr_core::heisenberg::{HeisElem, HeisenbergGroup};
use ccr_core::linalg::random_unitary;
use ccr_core::pairs::{random_instance, schrodinger, Scope};
use ccr_core::ring::{shipped_rings, FiniteRing};
use num_complex::Complex64;
use proptest::prelude::*;

fn ring_strategy() -> impl Strategy<Value = FiniteRing> {
    let rings = shipped_rings();
    (0..rings.len()).prop_map(move |i| rings[i].clone())
}

fn character(ring: &FiniteRing, seed: u64) -> Character {
    let exps: Vec<i64> = ring
        .additive_factors()
        .iter()
        .enumerate()
        .map(|(j, &n)| ((seed >> (8 * j)) % n) as i64)
        .collect();
    Character::on_ring(ring, &exps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(r in ring_strategy(), x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let n = r.order();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
        prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
        prop_assert_eq!(r.mul(r.add(x, y), z), r.add(r.mul(x, z), r.mul(y, z)));
        prop_assert_eq!(r.mul(r.one(), x), x);
        prop_assert_eq!(r.add(x, r.neg(x)), r.zero());
    }

    #[test]
    fn characters_are_homomorphisms(r in ring_strategy(), seed in any::<u64>(), x in any::<usize>(), y in any::<usize>()) {
        let n = r.order();
        let l = character(&r, seed);
        let (x, y) = (x % n, y % n);
        prop_assert_eq!(l.eval(r.add(x, y)), l.eval(x) + l.eval(y));
        prop_assert_eq!(l.eval(r.neg(x)), -l.eval(x));
    }

    #[test]
    fn sym_and_faith_give_isom(r in ring_strategy(), seed in any::<u64>()) {
        let rep = check_conditions(&r, &character(&r, seed)).unwrap();
        if rep.sym.holds && rep.faith.holds {
            prop_assert!(rep.iso.holds);
        }
    }

    #[test]
    fn random_instances_satisfy_ccr(mult in 1usize..4, seed in any::<u64>(), e in 1i64..5) {
        let r = FiniteRing::zmod(5).unwrap();
        let l = Character::on_ring(&r, &[e]).unwrap();
        let p = random_instance(&r, 1, &l, mult, seed).unwrap();
        prop_assert!(p.verify_ccr(Scope::All).unwrap() < 1e-10);
        prop_assert!(p.representation_residual(Scope::All).unwrap() < 1e-10);
    }

    #[test]
    fn conjugation_preserves_ccr(seed in any::<u64>()) {
        let r = FiniteRing::zmod(4).unwrap();
        let l = Character::on_ring(&r, &[1]).unwrap();
        let p = schrodinger(&r, 1, &l).unwrap().inflate(2).unwrap();
        let w = random_unitary(p.dim(), seed);
        let q = p.conjugate(&w).unwrap();
        prop_assert!(q.verify_ccr(Scope::All).unwrap() < 1e-12);
        prop_assert!(q.unitarity_residual().unwrap() < 1e-12);
    }

    #[test]
    fn heisenberg_group_laws(x in prop::array::uniform9(0usize..6)) {
        let r = FiniteRing::zmod(6).unwrap();
        let h = HeisenbergGroup::new(&r, 1).unwrap();
        let e = |i: usize| HeisElem { a: x[i], b: x[i + 1], c: x[i + 2] };
        let (f, g, k) = (e(0), e(3), e(6));
        prop_assert_eq!(h.mul(h.mul(f, g), k), h.mul(f, h.mul(g, k)));
        prop_assert_eq!(h.mul(f, h.inv(f)), h.identity());
        let c = h.commutator(f, g);
        prop_assert!(h.center().contains(&c));
    }

    #[test]
    fn lemma_blocks_partition(n in 2u64..40, step in 1usize..40, width in 0usize..3) {
        let g = AbelianGroup::new(vec![n]).unwrap();
        let v: Vec<usize> = (0..=width).flat_map(|k| [k % n as usize, g.neg(k % n as usize)]).collect();
        let points: Vec<usize> = (0..n as usize).map(|k| (k * step) % n as usize).collect();
        if let Ok(p) = lemma_partition(&g, &points, &v) {
            let mut seen = vec![0u32; n as usize];
            for b in &p.blocks {
                for &x in b {
                    seen[x] += 1;
                }
            }
            prop_assert!(seen.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn certificate_is_sound(theta in 0.01f64..0.99, g in 2usize..24, kmax in 0i64..6, probes in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 16)) {
        let theta = Theta::from_f64(theta).unwrap();
        let p = build_grid_partition(g, 2).unwrap();
        let s = sample_orbit(&theta, &p, 5000).unwrap().with_nearest_fallback();
        let k: Vec<i64> = (-kmax..=kmax).collect();
        let c = certify_epsilon(&s, &k).unwrap();
        prop_assert!(c.epsilon <= c.epsilon_bound + 1e-12);
        for (x, y) in probes {
            let cell = p.cell_of(&[x, y]);
            let sample = &s.samples[cell].as_ref().unwrap().coords;
            for (&chi, &si) in [x, y].iter().zip(sample) {
                let alpha = theta.value() * si as f64;
                for &a in &k {
                    let z = Complex64::cis(2.0 * PI * chi * a as f64) - Complex64::cis(2.0 * PI * alpha * a as f64);
                    prop_assert!(z.norm() <= c.epsilon + 1e-9);
                }
            }
        }
    }
}
