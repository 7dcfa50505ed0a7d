use std::f64::consts::PI;

use serde::Serialize;

use super::sample::SampleAssignment;
use super::theta::Theta;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CellEps {
    pub cell: usize,
    pub sample: Vec<i64>,
    /// `sup_{x ∈ arc_j, a ∈ K} 2|sin(πa(x − α_j))|` per coordinate `j`.
    pub eps: Vec<f64>,
    pub in_cell: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsCertificate {
    pub theta: String,
    pub resolution: usize,
    pub window: u64,
    pub k: Vec<i64>,
    pub epsilon: f64,
    /// `min(2, 2π·max_K|a|·δ)`.
    pub epsilon_bound: f64,
    /// `2π·max_K|a|·δ` before clipping at 2.
    pub epsilon_bound_raw: f64,
    /// Largest distance from a point of a cell to the image of its sample,
    /// taken as the box diameter for samples inside their cell.
    pub delta: f64,
    /// `(cell, coordinate, a)` attaining `epsilon`.
    pub argmax: Option<(usize, usize, i64)>,
    pub cells: Vec<CellEps>,
}

/// Parses `5` as `{−5..5}`, `lo..hi` as an inclusive range, or a comma list.
pub fn parse_window(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Invalid(format!("bad integer window {s:?}"));
    let s = s.trim();
    let mut k: Vec<i64> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if hi < lo || hi - lo > 1_000_000 {
            return Err(bad());
        }
        (lo..=hi).collect()
    } else if s.contains(',') {
        s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    } else {
        let r: i64 = s.parse().map_err(|_| bad())?;
        if !(0..=1_000_000).contains(&r) {
            return Err(bad());
        }
        (-r..=r).collect()
    };
    k.sort_unstable();
    k.dedup();
    if k.is_empty() {
        return Err(bad());
    }
    Ok(k)
}

/// `sup_{t ∈ [lo, hi]} 2|sin(πt)|`: 2 if a half-integer lies in the range,
/// otherwise the larger endpoint value.
pub fn arc_sup(lo: f64, hi: f64) -> f64 {
    if (lo - 0.5).ceil() <= (hi - 0.5).floor() {
        return 2.0;
    }
    2.0 * (PI * lo).sin().abs().max((PI * hi).sin().abs())
}

fn sin_rational(num: i128, den: i128) -> f64 {
    let r = num.rem_euclid(den);
    2.0 * (PI * r as f64 / den as f64).sin().abs()
}

/// Exact sup for `θ = p/q`, sample residue `r`: `t = a(kq − rg)/(gq) … a((k+1)q − rg)/(gq)`.
fn rational_sup(a: i64, k: usize, g: usize, r: u64, q: u64) -> f64 {
    let den = g as i128 * q as i128;
    let a = a as i128;
    let lo0 = k as i128 * q as i128 - r as i128 * g as i128;
    let (mut lo, mut hi) = (a * lo0, a * (lo0 + q as i128));
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    // some m with 2lo ≤ (2m+1)den ≤ 2hi
    let m = (2 * lo - den).div_euclid(2 * den) + i128::from((2 * lo - den).rem_euclid(2 * den) != 0);
    if (2 * m + 1) * den <= 2 * hi {
        return 2.0;
    }
    sin_rational(lo, den).max(sin_rational(hi, den))
}

/// Outward-rounded sup for a float `θ`.
fn float_sup(a: i64, u: f64, w: f64, alpha: (f64, f64)) -> f64 {
    let lo_d = (u - alpha.1).next_down();
    let hi_d = (u + w - alpha.0).next_up();
    let af = a as f64;
    let (x, y) = if a >= 0 { (af * lo_d, af * hi_d) } else { (af * hi_d, af * lo_d) };
    arc_sup(x.next_down(), y.next_up())
}

fn coord_sup(theta: &Theta, s: i64, k: usize, g: usize, a: i64) -> f64 {
    if a == 0 {
        return 0.0;
    }
    match theta.rational_residue(s) {
        Some((r, q)) => rational_sup(a, k, g, r, q),
        None => float_sup(a, k as f64 / g as f64, 1.0 / g as f64, theta.orbit_interval(s)),
    }
}

fn circle_dist(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Largest circular distance from a point of `[u, u+w]` to `α`.
fn arc_far_dist(u: f64, w: f64, alpha: f64) -> f64 {
    let anti = (alpha + 0.5).rem_euclid(1.0);
    if (anti - u).rem_euclid(1.0) <= w {
        0.5
    } else {
        circle_dist(u, alpha).max(circle_dist(u + w, alpha))
    }
}

pub fn certify_epsilon(assignment: &SampleAssignment, k: &[i64]) -> Result<EpsCertificate> {
    let part = &assignment.partition;
    if assignment.samples.iter().any(Option::is_none) {
        return Err(Error::Precondition(format!(
            "{} cell(s) have no sample; widen the window or use the nearest-point fallback",
            assignment.samples.iter().filter(|s| s.is_none()).count()
        )));
    }
    if k.is_empty() {
        return Err(Error::Invalid("empty integer window".into()));
    }
    let g = part.resolution;
    let theta = &assignment.theta;
    let mut cells = Vec::with_capacity(part.cell_count());
    let mut epsilon = 0.0f64;
    let mut argmax = None;
    let mut delta = 0.0f64;
    for (cell, sample) in assignment.samples.iter().enumerate() {
        let sample = sample.as_ref().expect("checked above");
        let arcs = part.coords(cell);
        let mut eps = Vec::with_capacity(arcs.len());
        for (j, (&s, &arc)) in sample.coords.iter().zip(&arcs).enumerate() {
            let mut best = 0.0f64;
            for &a in k {
                let v = coord_sup(theta, s, arc, g, a);
                if v > best {
                    best = v;
                }
                if v > epsilon || argmax.is_none() {
                    epsilon = epsilon.max(v);
                    argmax = Some((cell, j, a));
                }
            }
            eps.push(best);
        }
        let d = if sample.in_cell {
            part.diameter()
        } else {
            sample
                .coords
                .iter()
                .zip(&arcs)
                .map(|(&s, &arc)| arc_far_dist(arc as f64 * part.width(), part.width(), theta.orbit_interval(s).0).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        delta = delta.max(d);
        cells.push(CellEps {
            cell,
            sample: sample.coords.clone(),
            eps,
            in_cell: sample.in_cell,
        });
    }
    let kmax = k.iter().map(|a| a.unsigned_abs()).max().unwrap_or(0) as f64;
    let raw = 2.0 * PI * kmax * delta;
    Ok(EpsCertificate {
        theta: theta.to_string(),
        resolution: g,
        window: assignment.window,
        k: k.to_vec(),
        epsilon,
        epsilon_bound: raw.min(2.0),
        epsilon_bound_raw: raw,
        delta,
        argmax,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{build_grid_partition, sample_orbit};
    use num_complex::Complex64;

    /// Brute-force sup of `|e^{2πixa} − e^{2πiαa}|` over an evenly spaced closed-arc grid.
    fn brute(u: f64, w: f64, alpha: f64, ks: &[i64], n: usize) -> f64 {
        let mut best = 0.0f64;
        for i in 0..=n {
            let x = u + w * i as f64 / n as f64;
            for &a in ks {
                let z = Complex64::cis(2.0 * PI * x * a as f64) - Complex64::cis(2.0 * PI * alpha * a as f64);
                best = best.max(z.norm());
            }
        }
        best
    }

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("2").unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(parse_window("-1..1").unwrap(), vec![-1, 0, 1]);
        assert_eq!(parse_window("3, 0,3").unwrap(), vec![0, 3]);
        assert!(parse_window("x").is_err());
        assert!(parse_window("3..1").is_err());
    }

    #[test]
    fn trivial_windows() {
        let p = build_grid_partition(1, 2).unwrap();
        let s = sample_orbit(&Theta::golden(), &p, 1).unwrap();
        assert_eq!(certify_epsilon(&s, &[0]).unwrap().epsilon, 0.0);
        let c = certify_epsilon(&s, &[1]).unwrap();
        assert_eq!(s.samples[0].as_ref().unwrap().coords, vec![0, 0]);
        assert_eq!(c.epsilon, 2.0);
        let s = sample_orbit(&Theta::parse("1/3").unwrap(), &p, 1).unwrap();
        assert_eq!(certify_epsilon(&s, &[1]).unwrap().epsilon, 2.0);
    }

    #[test]
    fn uncovered_is_refused() {
        let p = build_grid_partition(8, 2).unwrap();
        let s = sample_orbit(&Theta::parse("1/2").unwrap(), &p, 4).unwrap();
        assert!(matches!(certify_epsilon(&s, &[1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn closed_form_matches_brute_force_arcs() {
        let ks: Vec<i64> = (-7..=7).collect();
        for (u, w, alpha) in [(0.0, 0.25, 0.1), (0.3, 0.05, 0.33), (0.9, 0.1, 0.95), (0.2, 0.1, 0.7), (0.0, 1.0, 0.0)] {
            let exact = ks.iter().map(|&a| float_sup(a, u, w, (alpha, alpha))).fold(0.0, f64::max);
            let b = brute(u, w, alpha, &ks, 200_000);
            assert!((exact - b).abs() < 1e-8, "{u} {w} {alpha}: {exact} vs {b}");
        }
    }

    #[test]
    fn rational_and_float_paths_agree() {
        for (a, k, g, r, q) in [(5i64, 3usize, 8usize, 3u64, 8u64), (-3, 0, 16, 5, 8), (2, 7, 16, 1, 3), (7, 1, 4, 0, 5)] {
            let exact = rational_sup(a, k, g, r, q);
            let alpha = r as f64 / q as f64;
            let float = float_sup(a, k as f64 / g as f64, 1.0 / g as f64, (alpha, alpha));
            assert!((exact - float).abs() < 1e-12, "{a} {k} {g} {r}/{q}");
        }
    }

    #[test]
    fn golden_64_against_oracle() {
        let theta = Theta::golden();
        let p = build_grid_partition(64, 2).unwrap();
        let s = sample_orbit(&theta, &p, 10_000).unwrap();
        assert!(s.is_covered());
        let ks = parse_window("5").unwrap();
        let c = certify_epsilon(&s, &ks).unwrap();
        assert!(c.epsilon <= c.epsilon_bound);
        assert!(c.epsilon <= 2.0 * (5.0 * PI / 64.0).sin() + 1e-12);
        // one coordinate suffices: both use the same arcs and samples
        let mut oracle = 0.0f64;
        for arc in 0..64 {
            let a = s.samples[arc].as_ref().unwrap().coords[1];
            oracle = oracle.max(brute(arc as f64 / 64.0, 1.0 / 64.0, theta.orbit_interval(a).0, &ks, 15_625));
        }
        assert!((c.epsilon - oracle).abs() < 1e-9, "{} vs {oracle}", c.epsilon);
    }

    #[test]
    fn exact_below_crude_per_cell() {
        for th in ["golden", "sqrt2", "3/8"] {
            let theta = Theta::parse(th).unwrap();
            for g in [4usize, 16, 32] {
                let p = build_grid_partition(g, 2).unwrap();
                let s = sample_orbit(&theta, &p, 2000).unwrap().with_nearest_fallback();
                let c = certify_epsilon(&s, &parse_window("4").unwrap()).unwrap();
                assert!(c.cells.iter().flat_map(|e| &e.eps).all(|&e| e <= c.epsilon_bound + 1e-12), "{th} {g}");
            }
        }
    }
}
