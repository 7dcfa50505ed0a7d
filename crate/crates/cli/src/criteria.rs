//! The acceptance matrix. Each `criterion_*` function runs one criterion
//! and returns its checks; [`run_suite`] runs them all.

use std::time::Instant;

use ccr_core::approx::{
    build_grid_partition, convergence_study, parse_window, sample_orbit, three_distance_window,
    StudyRow, Theta,
};
use ccr_core::character::{check_conditions, check_faith, check_iso, check_sym, dual_group, Character};
use ccr_core::heisenberg::{induced_rep, rep_from_pair, trace_distance, HEIS_CAP};
use ccr_core::pairs::{random_instance, regular, schrodinger, Scope};
use ccr_core::ring::{shipped_rings, FiniteRing};
use ccr_core::svn::{commutant_dim, decompose, identity_residuals, svn_intertwiner, DecomposeOptions};
use ccr_core::Error;
use serde::Serialize;

use crate::oracle;
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    /// Largest `|R|^d` for the pair-level criteria.
    pub fn module_cap(self) -> usize {
        match self {
            Profile::Quick => 16,
            Profile::Full => 64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn line(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        format!(
            "criterion {} ({}): {} [{} checks, {} failed, {:.1} s]",
            self.id,
            self.title,
            if failed == 0 { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed,
            self.elapsed_ms as f64 / 1000.0
        )
    }
}

struct Run {
    id: u8,
    title: &'static str,
    checks: Vec<Check>,
    notes: Vec<String>,
    start: Instant,
}

impl Run {
    fn new(id: u8, title: &'static str) -> Run {
        Run {
            id,
            title,
            checks: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    fn finish(mut self, runtime_limit_s: Option<f64>) -> CriterionResult {
        let secs = self.start.elapsed().as_secs_f64();
        if let Some(limit) = runtime_limit_s {
            self.checks.push(Check::at_most("runtime (s)", secs, limit));
        }
        CriterionResult {
            id: self.id,
            title: self.title,
            checks: self.checks,
            notes: self.notes,
            elapsed_ms: (secs * 1000.0) as u64,
        }
    }

    fn error(&mut self, what: &str, e: Error) {
        self.checks.push(Check::holds(format!("{what}: {e}"), false));
    }
}

/// `Z/2 … Z/8, F_3, F_5, F_7, M_2(F_2), Z/2 × Z/3`.
pub fn criterion_rings() -> Vec<FiniteRing> {
    let mut out: Vec<FiniteRing> = (2..=8).map(|n| FiniteRing::zmod(n).expect("modulus")).collect();
    for p in [3, 5, 7] {
        out.push(FiniteRing::prime_field(p).expect("prime"));
    }
    let f2 = FiniteRing::prime_field(2).expect("prime");
    out.push(FiniteRing::matrix(2, &f2).expect("M_2(F_2)"));
    out.push(FiniteRing::product(&[FiniteRing::zmod(2).expect("Z/2"), FiniteRing::zmod(3).expect("Z/3")]).expect("product"));
    out
}

/// `(R, d)` from the criterion ring set with `d ∈ {1, 2}` and `|R|^d ≤ cap`.
fn cases(cap: usize) -> Vec<(FiniteRing, usize)> {
    let mut out = Vec::new();
    for d in [1usize, 2] {
        for r in criterion_rings() {
            if r.order().pow(d as u32) <= cap {
                out.push((r, d));
            }
        }
    }
    out
}

fn label(r: &FiniteRing, d: usize) -> String {
    format!("{} d={d}", r.descriptor())
}

fn characters(r: &FiniteRing) -> Vec<Character> {
    dual_group(r.additive(), usize::MAX).expect("uncapped")
}

fn faithful(r: &FiniteRing) -> Vec<Character> {
    characters(r)
        .into_iter()
        .filter(|l| check_faith(r, l).map(|f| f.holds).unwrap_or(false))
        .collect()
}

fn is_sym(r: &FiniteRing, l: &Character) -> bool {
    check_sym(r, l).map(|s| s.holds).unwrap_or(false)
}

fn is_iso(r: &FiniteRing, l: &Character) -> bool {
    check_iso(r, l).map(|s| s.holds).unwrap_or(false)
}

/// CCR exactness of the Schrödinger and regular pairs.
pub fn criterion_1(profile: Profile) -> CriterionResult {
    let mut run = Run::new(1, "CCR exactness");
    for (r, d) in cases(profile.module_cap()) {
        let lams = faithful(&r);
        let (mut ccr, mut rep) = (0.0f64, 0.0f64);
        for l in &lams {
            for build in [schrodinger, regular] {
                match build(&r, d, l).and_then(|p| Ok((p.verify_ccr(Scope::All)?, p.representation_residual(Scope::All)?))) {
                    Ok((c, p)) => {
                        ccr = ccr.max(c);
                        rep = rep.max(p);
                    }
                    Err(e) => run.error(&label(&r, d), e),
                }
            }
        }
        let tag = format!("{} ({} faithful λ)", label(&r, d), lams.len());
        run.checks.push(Check::at_most(format!("{tag} CCR residual"), ccr, 1e-12));
        run.checks.push(Check::at_most(format!("{tag} representation residual"), rep, 1e-12));
    }
    run.finish(Some(10.0))
}

/// The Φ-, Ψ- and F̃-identities on Schrödinger pairs.
pub fn criterion_2(profile: Profile) -> CriterionResult {
    let mut run = Run::new(2, "intertwining identities");
    for (r, d) in cases(profile.module_cap()) {
        let lams: Vec<Character> = faithful(&r).into_iter().filter(|l| is_sym(&r, l) && is_iso(&r, l)).collect();
        if lams.is_empty() {
            run.notes.push(format!("{}: no (Sym)∧(Isom) character", label(&r, d)));
            continue;
        }
        let (mut phi, mut psi, mut four) = (0.0f64, 0.0f64, 0.0f64);
        for l in &lams {
            match schrodinger(&r, d, l).and_then(|p| identity_residuals(&p)) {
                Ok(res) => {
                    phi = phi.max(res.phi_u).max(res.phi_v);
                    psi = psi.max(res.psi_u).max(res.psi_v);
                    four = four.max(res.fourier_u).max(res.fourier_v);
                }
                Err(e) => run.error(&label(&r, d), e),
            }
        }
        let tag = format!("{} ({} λ)", label(&r, d), lams.len());
        run.checks.push(Check::at_most(format!("{tag} Φ-identity"), phi, 1e-10));
        run.checks.push(Check::at_most(format!("{tag} Ψ-identity"), psi, 1e-10));
        run.checks.push(Check::at_most(format!("{tag} F̃-identity"), four, 1e-10));
    }
    run.finish(Some(60.0))
}

/// The explicit intertwiner with the regular pair.
pub fn criterion_3(profile: Profile) -> CriterionResult {
    let mut run = Run::new(3, "explicit intertwiner");
    let cap = match profile {
        Profile::Quick => 512,
        Profile::Full => 4096,
    };
    for (r, d) in cases(64) {
        let n = r.order().pow(d as u32);
        if n * n * n > cap {
            continue;
        }
        for l in faithful(&r).into_iter().filter(|l| is_iso(&r, l)) {
            let tag = format!("{} λ={:?}", label(&r, d), l.exponents());
            let pair = match schrodinger(&r, d, &l) {
                Ok(p) => p,
                Err(e) => {
                    run.error(&tag, e);
                    continue;
                }
            };
            if !is_sym(&r, &l) {
                let refused = matches!(svn_intertwiner(&pair), Err(Error::Precondition(_)));
                run.checks.push(Check::holds(format!("{tag} without (Sym) is refused"), refused));
                continue;
            }
            match svn_intertwiner(&pair) {
                Ok(w) => {
                    run.checks.push(Check::at_most(format!("{tag} ‖W*W − I‖ (dim {})", w.intertwiner.dim()), w.unitarity_defect, 1e-10));
                    run.checks.push(Check::at_most(format!("{tag} intertwining residual"), w.residual(), 1e-9));
                }
                Err(e) => run.error(&tag, e),
            }
        }
    }
    run.finish(Some(600.0))
}

/// Recovery of planted multiplicities.
pub fn criterion_4(profile: Profile) -> CriterionResult {
    let mut run = Run::new(4, "decomposition");
    let cap = match profile {
        Profile::Quick => 8,
        Profile::Full => 16,
    };
    for (r, d) in cases(cap) {
        let Some(l) = faithful(&r).into_iter().find(|l| is_sym(&r, l) && is_iso(&r, l)) else {
            run.notes.push(format!("{}: no (Sym)∧(Isom) character", label(&r, d)));
            continue;
        };
        let tag = format!("{} λ={:?}", label(&r, d), l.exponents());
        let mut worst = 0.0f64;
        let mut misses = Vec::new();
        for k in 1..=4usize {
            for seed in 0..5u64 {
                let res = random_instance(&r, d, &l, k, seed)
                    .and_then(|p| decompose(&p, DecomposeOptions { seed, ..Default::default() }));
                match res {
                    Ok(dec) => {
                        worst = worst.max(dec.residual).max(dec.unitarity_defect);
                        if dec.multiplicity != k {
                            misses.push((k, seed, dec.multiplicity));
                        }
                    }
                    Err(e) => run.error(&format!("{tag} k={k} seed={seed}"), e),
                }
            }
        }
        run.checks.push(Check::holds(format!("{tag} planted k=1..4 × 5 seeds recovered {misses:?}"), misses.is_empty()));
        run.checks.push(Check::at_most(format!("{tag} Θ residual"), worst, 1e-8));
        let n = r.order().pow(d as u32);
        match regular(&r, d, &l).and_then(|p| decompose(&p, DecomposeOptions::default())) {
            Ok(dec) => {
                run.checks.push(Check::equals(format!("{tag} regular multiplicity"), dec.multiplicity, n));
                run.checks.push(Check::at_most(format!("{tag} regular Θ residual"), dec.residual, 1e-8));
            }
            Err(e) => run.error(&format!("{tag} regular"), e),
        }
    }
    run.finish(None)
}

/// The literal regression value expected for `Z/4`, `λ` exponent 2.
pub const REGRESSION_EXPECTED: usize = 4;

/// Commutant dimension of the `Z/4`, exponent-2 Schrödinger pair.
pub fn regression_commutant() -> Result<usize, Error> {
    let r = FiniteRing::zmod(4)?;
    let l = Character::on_ring(&r, &[2])?;
    commutant_dim(&schrodinger(&r, 1, &l)?)
}

/// Irreducibility through commutant dimensions.
pub fn criterion_5(profile: Profile) -> CriterionResult {
    let mut run = Run::new(5, "irreducibility");
    for (r, d) in cases(profile.module_cap()) {
        let lams: Vec<Character> = faithful(&r).into_iter().filter(|l| is_iso(&r, l)).collect();
        let mut dims = Vec::new();
        for l in &lams {
            match schrodinger(&r, d, l).and_then(|p| commutant_dim(&p)) {
                Ok(c) => dims.push(c),
                Err(e) => run.error(&label(&r, d), e),
            }
        }
        let bad = dims.iter().filter(|&&c| c != 1).count();
        run.checks.push(Check::equals(format!("{} (Isom) λ with commutant ≠ 1 among {}", label(&r, d), lams.len()), bad, 0));
    }
    for (r, d) in cases(8) {
        let Some(l) = faithful(&r).into_iter().find(|l| is_iso(&r, l)) else { continue };
        for k in 2..=3usize {
            match schrodinger(&r, d, &l).and_then(|p| p.inflate(k)).and_then(|p| commutant_dim(&p)) {
                Ok(c) => run.checks.push(Check::equals(format!("{} inflate {k} commutant", label(&r, d)), c, k * k)),
                Err(e) => run.error(&label(&r, d), e),
            }
        }
    }
    match regression_commutant() {
        Ok(c) => {
            run.checks.push(Check::holds(format!("Z/4 λ exp 2 commutant {c} > 1 (reducible)"), c > 1));
            run.checks.push(Check::equals("Z/4 λ exp 2 commutant, literal regression value", c, REGRESSION_EXPECTED));
        }
        Err(e) => run.error("Z/4 λ exp 2", e),
    }
    run.finish(None)
}

/// Rings of order at most 64 for the (Sym)∧(Faith) ⟹ (Isom) sweep.
pub fn rings_up_to_64() -> Vec<FiniteRing> {
    let mut out: Vec<FiniteRing> = (2..=64).map(|n| FiniteRing::zmod(n).expect("modulus")).collect();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
        out.push(FiniteRing::prime_field(p).expect("prime"));
    }
    for a in 2..=8u64 {
        for b in a..=32 {
            if a * b <= 64 {
                let ra = FiniteRing::zmod(a).expect("modulus");
                let rb = FiniteRing::zmod(b).expect("modulus");
                out.push(FiniteRing::product(&[ra, rb]).expect("product"));
            }
        }
    }
    let f2 = FiniteRing::prime_field(2).expect("prime");
    let m2 = FiniteRing::matrix(2, &f2).expect("M_2(F_2)");
    out.push(m2.clone());
    for other in [FiniteRing::zmod(2), FiniteRing::zmod(3), FiniteRing::zmod(4)] {
        out.push(FiniteRing::product(&[m2.clone(), other.expect("modulus")]).expect("product"));
    }
    out.push(FiniteRing::product(&[f2.clone(), f2.clone(), f2]).expect("product"));
    out
}

/// Condition checks against brute force.
pub fn criterion_6(profile: Profile) -> CriterionResult {
    let mut run = Run::new(6, "condition logic");
    let mut oracle_rings = shipped_rings();
    oracle_rings.extend(criterion_rings());
    for r in &oracle_rings {
        let ideals = oracle::all_ideals(r);
        let mut mismatches = 0usize;
        let mut total = 0usize;
        for l in characters(r) {
            total += 1;
            let Ok(rep) = check_conditions(r, &l) else {
                mismatches += 1;
                continue;
            };
            let kernel = oracle::nabla_kernel(r, &l);
            let mut ok = rep.sym.holds == oracle::sym(r, &l)
                && rep.faith.holds == oracle::faith(r, &l, &ideals)
                && rep.iso.holds == (kernel.len() == 1)
                && rep.iso.kernel.as_deref().unwrap_or(&[r.zero()]) == kernel.as_slice();
            if let Some(w) = &rep.faith.witness_ideal {
                ok &= oracle::is_ideal(&ideals, w) && w.len() > 1 && w.iter().all(|&x| l.eval(x).is_zero());
            }
            if !ok {
                mismatches += 1;
            }
        }
        run.checks.push(Check::equals(format!("{} oracle mismatches over {total} λ", r.descriptor()), mismatches, 0));
    }
    let bound = match profile {
        Profile::Quick => 16,
        Profile::Full => 64,
    };
    let (mut pairs, mut violations) = (0usize, Vec::new());
    for r in rings_up_to_64().into_iter().filter(|r| r.order() <= bound) {
        for l in characters(&r) {
            pairs += 1;
            match check_conditions(&r, &l) {
                Ok(rep) if rep.sym.holds && rep.faith.holds && !rep.iso.holds => {
                    violations.push(format!("{} {:?}", r.descriptor(), l.exponents()))
                }
                Ok(_) => {}
                Err(e) => run.error(&r.descriptor().to_string(), e),
            }
        }
    }
    run.checks.push(Check::holds(
        format!("(Sym)∧(Faith) ⟹ (Isom) on {pairs} (R, λ) with |R| ≤ {bound} {violations:?}"),
        violations.is_empty(),
    ));
    let z4 = FiniteRing::zmod(4).expect("modulus");
    let l = Character::on_ring(&z4, &[2]).expect("character");
    match check_conditions(&z4, &l) {
        Ok(rep) => {
            run.checks.push(Check::holds("Z/4 λ exp 2: (Isom) fails", !rep.iso.holds));
            run.checks.push(Check::holds("Z/4 λ exp 2: (Faith) fails", !rep.faith.holds));
            run.checks.push(Check::holds(
                format!("Z/4 λ exp 2: witness ideal {:?} = [0, 2]", rep.faith.witness_ideal),
                rep.faith.witness_ideal.as_deref() == Some(&[0, 2][..]),
            ));
        }
        Err(e) => run.error("Z/4 λ exp 2", e),
    }
    run.finish(None)
}

/// Trace functions of the induced and regular representations.
pub fn criterion_7(_profile: Profile) -> CriterionResult {
    let mut run = Run::new(7, "induced representation traces");
    for (r, d) in cases(64) {
        let h = (r.order() as u128).pow(2 * d as u32 + 1);
        if h > 512 {
            continue;
        }
        let mut worst = 0.0f64;
        let lams = faithful(&r);
        for l in &lams {
            let res = induced_rep(&r, d, l).and_then(|ind| {
                let reg = rep_from_pair(&regular(&r, d, l)?)?;
                trace_distance(&ind, &reg, HEIS_CAP)
            });
            match res {
                Ok(t) => worst = worst.max(t),
                Err(e) => run.error(&label(&r, d), e),
            }
        }
        run.checks.push(Check::at_most(format!("{} |H|={h} ({} λ) trace distance", label(&r, d), lams.len()), worst, 1e-8));
    }
    run.finish(None)
}

/// Brute-force sup for one resolution, with samples spread over the arcs.
pub fn brute_epsilon(theta: &Theta, g: usize, ks: &[i64], samples: usize) -> Result<f64, Error> {
    let window = match theta {
        Theta::Rational { q, .. } => *q,
        Theta::Irrational { .. } => three_distance_window(theta, g).ok_or_else(|| Error::Precondition("no covering window".into()))?,
    };
    let part = build_grid_partition(g, 2)?;
    let mut assignment = sample_orbit(theta, &part, window)?;
    if !assignment.is_covered() {
        assignment = assignment.with_nearest_fallback();
    }
    let mut arcs = Vec::new();
    for cell in 0..part.cell_count() {
        let s = assignment.samples[cell].as_ref().expect("filled");
        for (j, k) in part.coords(cell).into_iter().enumerate() {
            arcs.push((k, s.coords[j]));
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    let arcs: Vec<oracle::Arc> = arcs
        .into_iter()
        .map(|(k, a)| oracle::Arc {
            u: k as f64 / g as f64,
            w: 1.0 / g as f64,
            alpha: (theta.value() * a as f64).rem_euclid(1.0),
        })
        .collect();
    Ok(oracle::sup_on_arcs(&arcs, ks, samples))
}

/// Convergence of the certified ε.
pub fn criterion_8(_profile: Profile) -> CriterionResult {
    let mut run = Run::new(8, "epsilon certificate");
    let ks = parse_window("5").expect("window");
    let golden = Theta::golden();
    let grids = [8usize, 16, 32, 64];
    match convergence_study(&golden, &ks, &grids, 2) {
        Ok(rows) => {
            let eps: Vec<f64> = rows.iter().map(|r| r.eps_exact).collect();
            run.notes.push(format!("golden ε_exact {eps:?}"));
            let rises = rows.windows(2).map(|w| w[1].eps_exact - w[0].eps_exact).fold(f64::NEG_INFINITY, f64::max);
            run.checks.push(Check::at_most("golden ε_exact non-increasing (largest step)", rises, 0.0));
            run.checks.push(Check::at_most("golden ε_exact(64)", rows[3].eps_exact, 0.70));
            for row in &rows {
                run.checks.push(Check::at_most(format!("golden g={} ε_exact − ε_bound", row.g), row.eps_exact - row.eps_bound, 0.0));
                match brute_epsilon(&golden, row.g, &ks, 1_000_000) {
                    Ok(b) => run.checks.push(Check::at_most(format!("golden g={} |ε_exact − brute force|", row.g), (row.eps_exact - b).abs(), 1e-9)),
                    Err(e) => run.error("brute force", e),
                }
                run.checks.push(Check::equals(format!("golden g={} uncovered cells", row.g), row.uncovered_cells, 0));
            }
        }
        Err(e) => run.error("golden study", e),
    }
    let rational = Theta::parse("3/8").expect("theta");
    match convergence_study(&rational, &ks, &grids, 2) {
        Ok(rows) => {
            let tail: Vec<&StudyRow> = rows.iter().filter(|r| r.g > 8).collect();
            let floor = tail.iter().map(|r| r.eps_exact).fold(f64::INFINITY, f64::min);
            run.notes.push(format!("3/8 ε_exact {:?}", rows.iter().map(|r| r.eps_exact).collect::<Vec<_>>()));
            run.checks.push(Check::holds(format!("3/8 positive floor for g > 8 (min ε {floor:.4})"), floor > 0.1));
            run.checks.push(Check::holds("3/8 uncovered cells for g > 8", tail.iter().all(|r| r.uncovered_cells > 0)));
        }
        Err(e) => run.error("3/8 study", e),
    }
    run.finish(Some(60.0))
}

pub fn criterion(id: u8, profile: Profile) -> Option<CriterionResult> {
    Some(match id {
        1 => criterion_1(profile),
        2 => criterion_2(profile),
        3 => criterion_3(profile),
        4 => criterion_4(profile),
        5 => criterion_5(profile),
        6 => criterion_6(profile),
        7 => criterion_7(profile),
        8 => criterion_8(profile),
        _ => return None,
    })
}

pub fn run_suite(profile: Profile) -> Vec<CriterionResult> {
    (1..=8).filter_map(|id| criterion(id, profile)).collect()
}
