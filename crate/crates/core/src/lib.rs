//! Dynamics of the singularly perturbed power maps
//! `f_λ(z) = zⁿ + λ²/(zⁿ − λ)`, `λ ≠ 0`.
//!
//! The two free critical values `v0 = −λ` and `v1 = 3λ` decide the topology
//! of the Julia set. This crate evaluates the map on the Riemann sphere,
//! follows critical orbits against a trap disk and an escape radius, detects
//! attracting cycles, and turns the results into a verdict with evidence.

pub mod classify;
pub mod cycles;
pub mod error;
pub mod escape;
pub mod golden;
pub mod grid;
pub mod map;
pub mod parse;
pub mod sphere;

pub use classify::{classify, Classification, Evidence, JuliaKind, Subcase};
pub use cycles::{attractor_inventory, find_cycle, CycleInfo, CycleKind};
pub use error::{Error, Result};
pub use escape::{
    escape_radius, iterate_orbit, trap_disk, trap_threshold, Disk, OrbitOutcome, OrbitResult,
    OrbitRun, Targets, DEFAULT_CLASSIFY_BUDGET, DEFAULT_RENDER_BUDGET, TRAP_KAPPA,
};
pub use grid::{classify_grid, classify_points, write_csv, GridRow, Window};
pub use map::MapParams;
pub use num_complex::Complex64;
pub use parse::parse_complex;
pub use sphere::SpherePoint;
