//! Brute-force reference computations, written independently of the
//! library's algorithms and used only to cross-check them.

use std::f64::consts::PI;

use ccr_core::character::Character;
use ccr_core::ring::FiniteRing;
use num_complex::Complex64;

/// Largest ring for the subset enumeration of ideals.
pub const IDEAL_ORACLE_CAP: usize = 16;

/// Every two-sided ideal of `ring`, as bitmasks over element indices,
/// found by testing all subsets containing 0.
pub fn all_ideals(ring: &FiniteRing) -> Vec<u32> {
    let n = ring.order();
    assert!(n <= IDEAL_ORACLE_CAP, "ideal oracle is limited to |R| ≤ {IDEAL_ORACLE_CAP}");
    let add: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| ring.add(x, y)).collect()).collect();
    let mul: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| ring.mul(x, y)).collect()).collect();
    let zero = ring.zero();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask & (1 << zero) == 0 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let inside = |x: usize| mask & (1 << x) != 0;
        let closed = members.iter().all(|&x| {
            inside(ring.neg(x))
                && members.iter().all(|&y| inside(add[x][y]))
                && (0..n).all(|r| inside(mul[r][x]) && inside(mul[x][r]))
        });
        if closed {
            out.push(mask);
        }
    }
    out
}

fn kernel_mask(ring: &FiniteRing, lambda: &Character) -> u32 {
    (0..ring.order()).filter(|&x| lambda.eval(x).is_zero()).fold(0, |m, x| m | (1 << x))
}

/// (Faith): no nonzero ideal lies in `ker λ`.
pub fn faith(ring: &FiniteRing, lambda: &Character, ideals: &[u32]) -> bool {
    let ker = kernel_mask(ring, lambda);
    let zero = 1u32 << ring.zero();
    ideals.iter().all(|&i| i == zero || i & !ker != 0)
}

/// (Sym) by scanning all products.
pub fn sym(ring: &FiniteRing, lambda: &Character) -> bool {
    let n = ring.order();
    (0..n).all(|a| (0..n).all(|b| lambda.eval(ring.mul(a, b)) == lambda.eval(ring.mul(b, a))))
}

/// `{a : λ(xa) = 1 for all x}`, the kernel of `∇_λ` for `d = 1`.
pub fn nabla_kernel(ring: &FiniteRing, lambda: &Character) -> Vec<usize> {
    let n = ring.order();
    (0..n).filter(|&a| (0..n).all(|x| lambda.eval(ring.mul(x, a)).is_zero())).collect()
}

/// Whether `mask` is one of the enumerated ideals.
pub fn is_ideal(ideals: &[u32], members: &[usize]) -> bool {
    let mask = members.iter().fold(0u32, |m, &x| m | (1 << x));
    ideals.contains(&mask)
}

/// One arc of a certificate: `[u, u + w]` with sample phase `alpha`.
#[derive(Clone, Copy, Debug)]
pub struct Arc {
    pub u: f64,
    pub w: f64,
    pub alpha: f64,
}

/// `max |e^{2πixa} − e^{2πiαa}|` over `a ∈ ks` and a grid of `samples`
/// points spread evenly over the closed arcs (endpoints included).
pub fn sup_on_arcs(arcs: &[Arc], ks: &[i64], samples: usize) -> f64 {
    let per = (samples / arcs.len().max(1)).max(2);
    let mut best = 0.0f64;
    for arc in arcs {
        for i in 0..per {
            let x = arc.u + arc.w * i as f64 / (per - 1) as f64;
            for &a in ks {
                let af = a as f64;
                let z = Complex64::cis(2.0 * PI * x * af) - Complex64::cis(2.0 * PI * arc.alpha * af);
                best = best.max(z.norm());
            }
        }
    }
    best
}
