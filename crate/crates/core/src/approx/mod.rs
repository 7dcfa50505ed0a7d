//! Certified error bounds for the approximate equivalence construction over
//! `ℤ^d` with `λ_θ(k) = e^{2πiθk}`.
//!
//! The dual torus is cut into grid cells, each cell receives an integer
//! sample whose image under `k ↦ θk mod 1` lies in it, and the resulting
//! intertwining error `sup |χ(a) − λ_θ(s·a)|` is computed in closed form.

mod certificate;
mod lemma;
mod partition;
mod sample;
mod study;
mod theta;

pub use certificate::{arc_sup, certify_epsilon, parse_window, CellEps, EpsCertificate};
pub use lemma::{lemma_partition, LemmaPartition};
pub use partition::{build_grid_partition, TorusPartition, CELL_CAP};
pub use sample::{sample_orbit, Sample, SampleAssignment};
pub use study::{convergence_study, max_gap, three_distance_window, StudyRow};
pub use theta::{Membership, Theta};
