use serde::Serialize;

use super::certificate::certify_epsilon;
use super::partition::build_grid_partition;
use super::sample::sample_orbit;
use super::theta::Theta;
use crate::error::{Error, Result};

const GAP_WINDOW_CAP: u64 = 1 << 24;

/// One line of the convergence table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudyRow {
    pub g: usize,
    #[serde(rename = "W")]
    pub w: u64,
    pub eps_exact: f64,
    pub eps_bound: f64,
    #[serde(skip)]
    pub eps_bound_raw: f64,
    pub uncovered_cells: usize,
}

/// Gaps between consecutive points of `{kθ mod 1 : 0 ≤ k ≤ W}` around the circle.
pub fn orbit_gaps(theta: &Theta, window: u64) -> Vec<f64> {
    let mut pts: Vec<f64> = (0..=window as i64).map(|k| theta.orbit_interval(k).0).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut gaps: Vec<f64> = pts.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(1.0 + pts[0] - pts[pts.len() - 1]);
    gaps
}

pub fn max_gap(theta: &Theta, window: u64) -> f64 {
    orbit_gaps(theta, window).into_iter().fold(0.0, f64::max)
}

/// Smallest `W` for which every gap of `{kθ : 0 ≤ k ≤ W}` is below `1/g`,
/// so every arc of length `1/g` contains an orbit point. `None` if no
/// such `W` exists below the search cap (e.g. rational `θ` with `q ≤ g`).
pub fn three_distance_window(theta: &Theta, g: usize) -> Option<u64> {
    let target = 1.0 / g as f64;
    let ok = |w: u64| max_gap(theta, w) < target;
    let mut hi = 1u64;
    while !ok(hi) {
        hi *= 2;
        if hi > GAP_WINDOW_CAP {
            return None;
        }
    }
    let mut lo = hi / 2;
    // max gap is non-increasing in W
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Certified ε for each resolution. Irrational `θ` uses the three-distance
/// window; rational `p/q` searches `[−q, q]` and falls back to the nearest
/// orbit point for cells the finite image misses.
pub fn convergence_study(theta: &Theta, k: &[i64], resolutions: &[usize], dims: usize) -> Result<Vec<StudyRow>> {
    if resolutions.is_empty() || resolutions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("resolutions must be non-empty and strictly ascending".into()));
    }
    let mut rows = Vec::with_capacity(resolutions.len());
    for &g in resolutions {
        let partition = build_grid_partition(g, dims)?;
        let window = match theta {
            Theta::Rational { q, .. } => *q,
            Theta::Irrational { .. } => three_distance_window(theta, g)
                .ok_or_else(|| Error::Resource {
                    what: "three-distance window".into(),
                    size: u128::from(GAP_WINDOW_CAP) + 1,
                    cap: u128::from(GAP_WINDOW_CAP),
                })?,
        };
        let mut assignment = sample_orbit(theta, &partition, window)?;
        let uncovered = assignment.uncovered.len();
        if uncovered > 0 {
            assignment = assignment.with_nearest_fallback();
        }
        let cert = certify_epsilon(&assignment, k)?;
        rows.push(StudyRow {
            g,
            w: window,
            eps_exact: cert.epsilon,
            eps_bound: cert.epsilon_bound,
            eps_bound_raw: cert.epsilon_bound_raw,
            uncovered_cells: uncovered,
        });
    }
    Ok(rows)
}
