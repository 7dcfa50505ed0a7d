use serde::Serialize;

use super::partition::TorusPartition;
use super::theta::{Membership, Theta};
use crate::error::{check_cap, Error, Result};

const WINDOW_CAP: u64 = 100_000_000;

/// Integer sample `s = (a_1..a_d, b_1..b_d)` assigned to a cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub coords: Vec<i64>,
    /// False when the image lies outside the cell (nearest-point fallback).
    pub in_cell: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleAssignment {
    #[serde(serialize_with = "ser_display")]
    pub theta: Theta,
    pub convergents: Vec<(i64, u64)>,
    #[serde(skip)]
    pub partition: TorusPartition,
    pub window: u64,
    pub samples: Vec<Option<Sample>>,
    pub uncovered: Vec<usize>,
    /// Orbit points skipped because their enclosure straddled an arc boundary.
    pub ambiguous: usize,
}

fn ser_display<S: serde::Serializer>(t: &Theta, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

/// `(|a|, a)` order: `0, −1, 1, −2, 2, …`.
fn candidates(window: u64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=window as i64).flat_map(|k| [-k, k]))
}

/// Best orbit index per arc. Coordinates decouple, so the
/// `(|a|+|b|, a, b)`-least pair in a box cell is the per-coordinate least.
fn best_per_arc(theta: &Theta, g: usize, window: u64) -> (Vec<Option<i64>>, usize) {
    let mut best = vec![None; g];
    let mut filled = 0;
    let mut ambiguous = 0;
    for a in candidates(window) {
        match theta.arc_of(a, g) {
            Membership::Arc(k) => {
                if best[k].is_none() {
                    best[k] = Some(a);
                    filled += 1;
                    if filled == g {
                        break;
                    }
                }
            }
            Membership::Ambiguous => ambiguous += 1,
        }
    }
    (best, ambiguous)
}

pub fn sample_orbit(theta: &Theta, partition: &TorusPartition, window: u64) -> Result<SampleAssignment> {
    if window == 0 {
        return Err(Error::Invalid("search window must be at least 1".into()));
    }
    check_cap("search window", window as u128, WINDOW_CAP as u128)?;
    let (best, ambiguous) = best_per_arc(theta, partition.resolution, window);
    let mut samples = Vec::with_capacity(partition.cell_count());
    let mut uncovered = Vec::new();
    for cell in 0..partition.cell_count() {
        let coords: Option<Vec<i64>> = partition.coords(cell).into_iter().map(|k| best[k]).collect();
        if coords.is_none() {
            uncovered.push(cell);
        }
        samples.push(coords.map(|coords| Sample { coords, in_cell: true }));
    }
    Ok(SampleAssignment {
        theta: theta.clone(),
        convergents: theta.convergents(12),
        partition: partition.clone(),
        window,
        samples,
        uncovered,
        ambiguous,
    })
}

fn circle_dist(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

impl SampleAssignment {
    pub fn is_covered(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// Fills uncovered cells with the orbit point nearest to the cell,
    /// coordinate by coordinate; `uncovered` keeps listing those cells.
    pub fn with_nearest_fallback(&self) -> SampleAssignment {
        let g = self.partition.resolution;
        let (best, _) = best_per_arc(&self.theta, g, self.window);
        let w = self.partition.width();
        let nearest: Vec<i64> = (0..g)
            .map(|k| {
                best[k].unwrap_or_else(|| {
                    let (lo, hi) = (k as f64 * w, (k + 1) as f64 * w);
                    let dist = |a: i64| {
                        let x = self.theta.orbit_interval(a).0;
                        if lo <= x && x <= hi {
                            0.0
                        } else {
                            circle_dist(x, lo).min(circle_dist(x, hi))
                        }
                    };
                    candidates(self.window)
                        .fold((f64::INFINITY, 0), |(bd, ba), a| {
                            let d = dist(a);
                            if d < bd {
                                (d, a)
                            } else {
                                (bd, ba)
                            }
                        })
                        .1
                })
            })
            .collect();
        let mut out = self.clone();
        for (cell, slot) in out.samples.iter_mut().enumerate() {
            if slot.is_none() {
                *slot = Some(Sample {
                    coords: self.partition.coords(cell).into_iter().map(|k| nearest[k]).collect(),
                    in_cell: false,
                });
            }
        }
        out
    }

    /// Re-checks every in-cell sample against its cell.
    pub fn verify_membership(&self) -> Result<()> {
        let g = self.partition.resolution;
        for (cell, s) in self.samples.iter().enumerate() {
            let Some(s) = s else { continue };
            if !s.in_cell {
                continue;
            }
            for (&a, k) in s.coords.iter().zip(self.partition.coords(cell)) {
                if self.theta.arc_of(a, g) != Membership::Arc(k) {
                    return Err(Error::Numeric(format!("sample {a} of cell {cell} lies outside arc {k}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::build_grid_partition;

    #[test]
    fn half_leaves_most_cells_empty() {
        let p = build_grid_partition(8, 2).unwrap();
        let s = sample_orbit(&Theta::parse("1/2").unwrap(), &p, 50).unwrap();
        assert_eq!(s.uncovered.len(), 60);
        let covered: Vec<usize> = (0..64).filter(|c| s.samples[*c].is_some()).collect();
        assert_eq!(covered, vec![0, 4, 32, 36]);
        assert_eq!(s.samples[36].as_ref().unwrap().coords, vec![-1, -1]);
    }

    #[test]
    fn golden_covers_grid_8() {
        let p = build_grid_partition(8, 2).unwrap();
        let s = sample_orbit(&Theta::golden(), &p, 50).unwrap();
        assert!(s.is_covered());
        assert_eq!(s.ambiguous, 0);
        s.verify_membership().unwrap();
        assert_eq!(s.samples[0].as_ref().unwrap().coords, vec![0, 0]);
    }

    #[test]
    fn samples_are_least_in_window() {
        let theta = Theta::golden();
        let p = build_grid_partition(16, 2).unwrap();
        let s = sample_orbit(&theta, &p, 200).unwrap();
        for cell in [0usize, 17, 100, 255] {
            let ks = p.coords(cell);
            let mut pairs: Vec<(i64, i64)> = Vec::new();
            for a in -200i64..=200 {
                for b in -200i64..=200 {
                    let x = [theta.orbit_interval(a).0, theta.orbit_interval(b).0];
                    if p.contains(cell, &x) {
                        pairs.push((a, b));
                    }
                }
            }
            let want = pairs.into_iter().min_by_key(|&(a, b)| (a.abs() + b.abs(), a, b)).unwrap();
            assert_eq!(s.samples[cell].as_ref().unwrap().coords, vec![want.0, want.1], "cell {ks:?}");
        }
    }

    #[test]
    fn fallback_fills_rational_gaps() {
        let p = build_grid_partition(16, 2).unwrap();
        let s = sample_orbit(&Theta::parse("3/8").unwrap(), &p, 8).unwrap();
        assert_eq!(s.uncovered.len(), 256 - 64);
        let f = s.with_nearest_fallback();
        assert!(f.samples.iter().all(Option::is_some));
        f.verify_membership().unwrap();
    }

    #[test]
    fn four_dimensional_grid() {
        let p = build_grid_partition(4, 4).unwrap();
        let s = sample_orbit(&Theta::golden(), &p, 20).unwrap();
        assert!(s.is_covered());
        s.verify_membership().unwrap();
    }
}
