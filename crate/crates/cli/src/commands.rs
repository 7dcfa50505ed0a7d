//! Subcommand implementations. Each returns the checks it ran, a JSON
//! payload for the report, a human summary and an optional artifact file.

use std::fmt;
use std::path::{Path, PathBuf};

use ccr_core::approx::{
    build_grid_partition, certify_epsilon, convergence_study, parse_window, sample_orbit, three_distance_window,
    SampleAssignment, Theta,
};
use ccr_core::character::{check_conditions, check_faith, check_iso, check_sym, dual_group, Character};
use ccr_core::heisenberg::{induced_rep, rep_from_pair, trace_distance as heis_trace_distance, HeisenbergGroup, HEIS_CAP};
use ccr_core::pairs::{random_instance, regular, schrodinger, CcrPair, PairFile, Scope};
use ccr_core::ring::{FiniteRing, RingDescriptor};
use ccr_core::svn::{commutant_dim, decompose, svn_intertwiner, trace_distance, DecomposeOptions, TRACE_TOL};
use ccr_core::Error;
use serde_json::{json, Value};

use crate::criteria::{criterion, run_suite, Profile};
use crate::report::Check;

#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments or input files (exit 2).
    Usage(String),
    /// A precondition or check that could not be met (exit 1).
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub output: Value,
    pub human: String,
    /// `(path, contents)` for commands that produce a data file.
    pub artifact: Option<(PathBuf, String)>,
}

pub fn parse_ring(s: &str) -> CliResult<FiniteRing> {
    let desc = RingDescriptor::parse(s).map_err(|e| CliError::Usage(e.to_string()))?;
    FiniteRing::new(&desc).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_lambda(ring: &FiniteRing, s: &str) -> CliResult<Character> {
    Character::parse(ring, s).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn load_pair(path: &Path) -> CliResult<CcrPair> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let file: PairFile =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: malformed pair file: {e}", path.display())))?;
    CcrPair::from_file(&file).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn pair_json(pair: &CcrPair) -> String {
    let mut s = serde_json::to_string(&pair.to_file()).expect("pair file serializes");
    s.push('\n');
    s
}

fn auto_scope(size: usize) -> Scope {
    if size <= 64 {
        Scope::All
    } else {
        Scope::Generators
    }
}

pub fn ring_info(ring: &str) -> CliResult<Outcome> {
    let r = parse_ring(ring)?;
    let mut out = json!({
        "ring": r.descriptor().to_string(),
        "order": r.order(),
        "additive_factors": r.additive_factors(),
        "commutative": r.is_commutative(),
    });
    let mut human = format!(
        "{}: order {}, additive group {:?}, {}\n",
        r.descriptor(),
        r.order(),
        r.additive_factors(),
        if r.is_commutative() { "commutative" } else { "noncommutative" }
    );
    if let Ok(chars) = dual_group(r.additive(), ccr_core::character::CONDITION_CAP) {
        let (mut sym, mut iso, mut faith) = (0, 0, 0);
        for l in &chars {
            sym += usize::from(check_sym(&r, l)?.holds);
            iso += usize::from(check_iso(&r, l)?.holds);
            faith += usize::from(check_faith(&r, l)?.holds);
        }
        out["characters"] = json!({"total": chars.len(), "sym": sym, "isom": iso, "faith": faith});
        human.push_str(&format!("characters: {} total, {sym} (Sym), {iso} (Isom), {faith} (Faith)\n", chars.len()));
    }
    if r.order() <= 64 {
        out["elements"] = json!(r.elements().map(|x| r.label(x)).collect::<Vec<_>>());
    }
    Ok(Outcome {
        output: out,
        human,
        ..Default::default()
    })
}

pub fn char_check(ring: &str, lambda: &str) -> CliResult<Outcome> {
    let r = parse_ring(ring)?;
    let l = parse_lambda(&r, lambda)?;
    let rep = check_conditions(&r, &l)?;
    let labels = |v: &Option<Vec<usize>>| v.as_ref().map(|v| v.iter().map(|&x| r.label(x)).collect::<Vec<_>>());
    let human = format!(
        "(Sym) {}  (Isom) {}  (Faith) {}\n{}{}",
        rep.sym.holds,
        rep.iso.holds,
        rep.faith.holds,
        labels(&rep.iso.kernel).map(|k| format!("ker ∇_λ = {{{}}}\n", k.join(", "))).unwrap_or_default(),
        labels(&rep.faith.witness_ideal).map(|k| format!("ideal in ker λ: {{{}}}\n", k.join(", "))).unwrap_or_default(),
    );
    let mut output = serde_json::to_value(&rep).expect("report serializes");
    output["ring"] = json!(r.descriptor().to_string());
    output["lambda"] = json!(l.exponents());
    Ok(Outcome {
        output,
        human,
        ..Default::default()
    })
}

fn pair_outcome(pair: CcrPair, out: Option<&PathBuf>) -> CliResult<Outcome> {
    let res = pair.verify_ccr(auto_scope(pair.module().size()))?;
    let human = format!(
        "{} pair on {}^{} with dim {}\n",
        if pair.is_monomial() { "monomial" } else { "dense" },
        pair.ring().descriptor(),
        pair.degree(),
        pair.dim()
    );
    Ok(Outcome {
        checks: vec![Check::at_most("CCR residual", res, 1e-10)],
        output: json!({"ring": pair.ring().descriptor().to_string(), "d": pair.degree(), "dim": pair.dim()}),
        human,
        artifact: out.map(|p| (p.clone(), pair_json(&pair))),
    })
}

pub fn pair_build(kind: &str, ring: &str, d: usize, lambda: &str, mult: usize, seed: u64, out: Option<&PathBuf>) -> CliResult<Outcome> {
    let r = parse_ring(ring)?;
    let l = parse_lambda(&r, lambda)?;
    let pair = match kind {
        "schrodinger" => schrodinger(&r, d, &l)?,
        "regular" => regular(&r, d, &l)?,
        _ => random_instance(&r, d, &l, mult, seed)?,
    };
    pair_outcome(pair, out)
}

pub fn verify_ccr(path: &Path, scope: Option<&str>, tol: Option<f64>) -> CliResult<Outcome> {
    let pair = load_pair(path)?;
    let scope = match scope {
        None => auto_scope(pair.module().size()),
        Some("all") => Scope::All,
        Some("generators") => Scope::Generators,
        Some(other) => return Err(CliError::Usage(format!("unknown scope {other:?}"))),
    };
    let tol = tol.unwrap_or(1e-10);
    let ccr = pair.verify_ccr(scope)?;
    let rep = pair.representation_residual(scope)?;
    let unit = pair.unitarity_residual()?;
    Ok(Outcome {
        checks: vec![
            Check::at_most("CCR residual", ccr, tol),
            Check::at_most("representation residual", rep, tol),
            Check::at_most("unitarity residual", unit, tol),
        ],
        output: json!({"dim": pair.dim(), "scope": format!("{scope:?}").to_lowercase()}),
        human: format!("dim {}, scope {scope:?}\n", pair.dim()),
        artifact: None,
    })
}

pub fn svn_intertwine(path: &Path, tol: Option<f64>) -> CliResult<Outcome> {
    let pair = load_pair(path)?;
    let w = svn_intertwiner(&pair)?;
    Ok(Outcome {
        checks: vec![
            Check::at_most("‖W*W − I‖", w.unitarity_defect, tol.unwrap_or(1e-10)),
            Check::at_most("U intertwining residual", w.residual_u, tol.unwrap_or(1e-9)),
            Check::at_most("V intertwining residual", w.residual_v, tol.unwrap_or(1e-9)),
        ],
        output: json!({
            "dim": w.intertwiner.dim(),
            "source_copies": w.source_copies,
            "target_copies": w.target_copies,
            "method": w.method,
        }),
        human: format!(
            "W relates {} copies of the pair to {} copies of the regular pair (dim {}, {:?} residuals)\n",
            w.source_copies,
            w.target_copies,
            w.intertwiner.dim(),
            w.method
        ),
        artifact: None,
    })
}

pub fn svn_decompose(path: &Path, seed: u64, tol: Option<f64>) -> CliResult<Outcome> {
    let pair = load_pair(path)?;
    let dec = decompose(&pair, DecomposeOptions { seed, ..Default::default() })?;
    Ok(Outcome {
        checks: vec![
            Check::at_most("Θ intertwining residual", dec.residual, tol.unwrap_or(1e-8)),
            Check::at_most("‖Θ*Θ − I‖", dec.unitarity_defect, tol.unwrap_or(1e-8)),
        ],
        output: serde_json::to_value(&dec).expect("decomposition serializes"),
        human: format!("multiplicity {} ({} rounds)\n", dec.multiplicity, dec.rounds),
        artifact: None,
    })
}

pub fn svn_commutant(path: &Path, expect: Option<usize>) -> CliResult<Outcome> {
    let pair = load_pair(path)?;
    let dim = commutant_dim(&pair)?;
    Ok(Outcome {
        checks: expect.map(|e| vec![Check::equals("commutant dimension", dim, e)]).unwrap_or_default(),
        output: json!({"commutant_dim": dim}),
        human: format!("commutant dimension {dim}{}\n", if dim == 1 { " (irreducible)" } else { "" }),
        artifact: None,
    })
}

pub fn svn_equivalent(a: &Path, b: &Path, tol: Option<f64>) -> CliResult<Outcome> {
    let (pa, pb) = (load_pair(a)?, load_pair(b)?);
    let dist = trace_distance(&pa, &pb)?;
    let tol = tol.unwrap_or(TRACE_TOL);
    Ok(Outcome {
        checks: vec![Check::at_most("trace-function distance", dist, tol)],
        output: json!({"trace_distance": dist, "equivalent": dist <= tol}),
        human: format!("{}\n", if dist <= tol { "equivalent" } else { "not equivalent" }),
        artifact: None,
    })
}

pub fn heis_table(ring: &str, d: usize, out: Option<&PathBuf>) -> CliResult<Outcome> {
    let r = parse_ring(ring)?;
    let h = HeisenbergGroup::new(&r, d)?;
    let table = h.table(HEIS_CAP)?;
    let labels: Vec<String> = h.elements(HEIS_CAP)?.into_iter().map(|g| h.label(g)).collect();
    let data = json!({"group": format!("H({}, {d})", r.descriptor()), "order": h.order() as u64, "elements": labels, "table": table});
    Ok(Outcome {
        output: json!({"order": h.order() as u64}),
        human: format!("H_{}({}) has order {}\n", 2 * d + 1, r.descriptor(), h.order()),
        artifact: out.map(|p| (p.clone(), format!("{data}\n"))),
        ..Default::default()
    })
}

pub fn heis_rep_check(path: &Path, tol: Option<f64>) -> CliResult<Outcome> {
    let pair = load_pair(path)?;
    let rep = rep_from_pair(&pair)?;
    let scope = if rep.group().order() <= 512 { Scope::All } else { Scope::Generators };
    let tol = tol.unwrap_or(1e-10);
    let hom = rep.homomorphism_residual(scope, HEIS_CAP)?;
    let cen = rep.central_residual()?;
    Ok(Outcome {
        checks: vec![Check::at_most("homomorphism residual", hom, tol), Check::at_most("central character residual", cen, tol)],
        output: json!({"group_order": rep.group().order() as u64, "dim": rep.dim()}),
        human: format!("representation of a group of order {} in dimension {}\n", rep.group().order(), rep.dim()),
        artifact: None,
    })
}

pub fn heis_induce(ring: &str, d: usize, lambda: &str, tol: Option<f64>) -> CliResult<Outcome> {
    let r = parse_ring(ring)?;
    let l = parse_lambda(&r, lambda)?;
    let ind = induced_rep(&r, d, &l)?;
    let reg = rep_from_pair(&regular(&r, d, &l)?)?;
    let scope = if ind.group().order() <= 512 { Scope::All } else { Scope::Generators };
    let tol = tol.unwrap_or(1e-10);
    let dist = heis_trace_distance(&ind, &reg, HEIS_CAP)?;
    Ok(Outcome {
        checks: vec![
            Check::at_most("homomorphism residual", ind.homomorphism_residual(scope, HEIS_CAP)?, tol),
            Check::at_most("central character residual", ind.central_residual()?, tol),
            Check::at_most("trace distance to the regular pair", dist, 1e-8),
        ],
        output: json!({"dim": ind.dim(), "group_order": ind.group().order() as u64}),
        human: format!("induced representation of dimension {}\n", ind.dim()),
        artifact: None,
    })
}

fn default_window(theta: &Theta, g: usize, window: Option<u64>) -> CliResult<u64> {
    if let Some(w) = window {
        return Ok(w);
    }
    Ok(match theta {
        Theta::Rational { q, .. } => *q,
        Theta::Irrational { .. } => three_distance_window(theta, g)
            .ok_or_else(|| CliError::Failure("no covering window below the search cap; pass --window".into()))?,
    })
}

fn assignment(theta: &str, grid: usize, window: Option<u64>, dims: usize) -> CliResult<SampleAssignment> {
    let theta = Theta::parse(theta).map_err(|e| CliError::Usage(e.to_string()))?;
    let part = build_grid_partition(grid, dims)?;
    let w = default_window(&theta, grid, window)?;
    Ok(sample_orbit(&theta, &part, w)?)
}

pub fn approx_sample(theta: &str, grid: usize, window: Option<u64>, dims: usize, out: Option<&PathBuf>) -> CliResult<Outcome> {
    let s = assignment(theta, grid, window, dims)?;
    let membership = s.verify_membership().is_ok();
    let data = serde_json::to_value(&s).expect("assignment serializes");
    Ok(Outcome {
        checks: vec![Check::holds("samples lie in their cells", membership)],
        output: json!({"theta": s.theta.to_string(), "grid": grid, "window": s.window, "uncovered_cells": s.uncovered.len(), "ambiguous": s.ambiguous}),
        human: format!(
            "θ = {}, grid {grid}^{dims}, window {}: {} of {} cells uncovered\n",
            s.theta,
            s.window,
            s.uncovered.len(),
            s.samples.len()
        ),
        artifact: out.map(|p| (p.clone(), format!("{data}\n"))),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn approx_epsilon(
    theta: &str,
    grid: usize,
    window: Option<u64>,
    k: &str,
    dims: usize,
    fallback: bool,
    out: Option<&PathBuf>,
) -> CliResult<Outcome> {
    let mut s = assignment(theta, grid, window, dims)?;
    if fallback && !s.is_covered() {
        s = s.with_nearest_fallback();
    }
    let ks = parse_window(k).map_err(|e| CliError::Usage(e.to_string()))?;
    let cert = certify_epsilon(&s, &ks)?;
    let mut summary = serde_json::to_value(&cert).expect("certificate serializes");
    let full = format!("{summary}\n");
    summary.as_object_mut().expect("object").remove("cells");
    Ok(Outcome {
        checks: vec![Check::at_most("ε_exact − ε_bound", cert.epsilon - cert.epsilon_bound, 0.0)],
        output: summary,
        human: format!(
            "ε = {:.12} (bound {:.12}, δ = {:.6}), {} fallback cells\n",
            cert.epsilon,
            cert.epsilon_bound,
            cert.delta,
            s.uncovered.len()
        ),
        artifact: out.map(|p| (p.clone(), full)),
    })
}

pub fn approx_study(theta: &str, grids: &[usize], k: &str, dims: usize, out: Option<&PathBuf>) -> CliResult<Outcome> {
    let theta = Theta::parse(theta).map_err(|e| CliError::Usage(e.to_string()))?;
    let ks = parse_window(k).map_err(|e| CliError::Usage(e.to_string()))?;
    let rows = convergence_study(&theta, &ks, grids, dims)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| CliError::Failure(e.to_string()))?;
    }
    let csv_text = String::from_utf8(w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?).expect("csv is utf-8");
    let checks = rows
        .iter()
        .map(|r| Check::at_most(format!("g={} ε_exact − ε_bound", r.g), r.eps_exact - r.eps_bound, 0.0))
        .collect();
    let (human, artifact) = match out {
        Some(p) => (format!("{} rows written to {}\n", rows.len(), p.display()), Some((p.clone(), csv_text))),
        None => (csv_text, None),
    };
    Ok(Outcome {
        checks,
        output: serde_json::to_value(&rows).expect("rows serialize"),
        human,
        artifact,
    })
}

pub fn suite(profile: Profile, only: &[u8]) -> CliResult<Outcome> {
    let results = if only.is_empty() {
        run_suite(profile)
    } else {
        let mut out = Vec::new();
        for &id in only {
            out.push(criterion(id, profile).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?);
        }
        out
    };
    let mut checks = Vec::new();
    let mut human = String::new();
    for r in &results {
        human.push_str(&r.line());
        human.push('\n');
        for c in r.checks.iter().filter(|c| !c.pass) {
            human.push_str(&format!("    FAIL {}: {:.3e} (tol {:.1e})\n", c.name, c.residual, c.tolerance));
        }
        for c in &r.checks {
            let mut c = c.clone();
            c.name = format!("c{}: {}", r.id, c.name);
            checks.push(c);
        }
    }
    Ok(Outcome {
        checks,
        output: serde_json::to_value(&results).expect("results serialize"),
        human,
        artifact: None,
    })
}
