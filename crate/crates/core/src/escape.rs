//! Trap disk around `−λ`, the escape region near infinity, and the orbit
//! engine that tests a seed against both.
//!
//! For `|λ|` under [`trap_threshold`] the closed disk `D̄(−λ, κ|λ|)` is mapped
//! into its own interior, so an orbit that enters it is captured by the
//! attracting basin around `−λ`. Conversely every `|z| ≥ escape_radius`
//! satisfies `|f(z)| ≥ 2|z|`, so an orbit that reaches that region tends to
//! infinity.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::MapParams;
use crate::sphere::SpherePoint;

/// Trap-disk ratio used by the classifier and renderers.
pub const TRAP_KAPPA: f64 = 0.2;

/// Iteration budget for classification.
pub const DEFAULT_CLASSIFY_BUDGET: usize = 5000;

/// Iteration budget for rendering.
pub const DEFAULT_RENDER_BUDGET: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
    /// Set when the disk is a certified trap disk `D(−λ, κ|λ|)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Self {
        debug_assert!(radius > 0.0);
        Disk {
            center,
            radius,
            kappa: None,
        }
    }

    /// Closed-disk membership.
    #[inline]
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }
}

/// Upper bound on `|λ|` below which `D̄(−λ, κ|λ|)` maps into its interior:
///
/// `1/(1+κ) · (2κ / ((1+κ)(√(κ²+4κ)+κ)))^{1/(n−1)}`
pub fn trap_threshold(n: u32, kappa: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::InvalidKappa(kappa));
    }
    let base = 2.0 * kappa / ((1.0 + kappa) * ((kappa * kappa + 4.0 * kappa).sqrt() + kappa));
    Ok(base.powf(1.0 / (n as f64 - 1.0)) / (1.0 + kappa))
}

/// The trap disk `D(−λ, κ|λ|)` when `|λ|` is under the threshold, else `None`.
/// An out-of-range `kappa` also gives `None`.
pub fn trap_disk(params: &MapParams, kappa: f64) -> Option<Disk> {
    let threshold = trap_threshold(params.n(), kappa).ok()?;
    let modulus = params.lambda().norm();
    (modulus < threshold).then(|| Disk {
        center: params.v0(),
        radius: kappa * modulus,
        kappa: Some(kappa),
    })
}

/// `max(4^{1/(n−1)}, (2|λ|)^{1/n}, 3|λ|)`.
///
/// On `|z| ≥ R` the perturbing term is at most `|λ| ≤ |z|ⁿ/2` and
/// `|z|^{n−1} ≥ 4`, which together give `|f(z)| ≥ 2|z|`.
pub fn escape_radius(params: &MapParams) -> f64 {
    let n = params.n() as f64;
    let m = params.lambda().norm();
    4f64.powf(1.0 / (n - 1.0))
        .max((2.0 * m).powf(1.0 / n))
        .max(3.0 * m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitOutcome {
    Escaped,
    Trapped,
    CycleConverged,
    BudgetExhausted,
}

impl OrbitOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitOutcome::Escaped => "escaped",
            OrbitOutcome::Trapped => "trapped",
            OrbitOutcome::CycleConverged => "cycle_converged",
            OrbitOutcome::BudgetExhausted => "budget_exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitResult {
    pub outcome: OrbitOutcome,
    /// Number of applications of `f` before the outcome was detected.
    pub steps: usize,
    #[serde(rename = "final")]
    pub final_point: SpherePoint,
    /// Index of the target that was reached, for `CycleConverged`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<SpherePoint>,
}

impl OrbitResult {
    pub fn escaped(&self) -> bool {
        self.outcome == OrbitOutcome::Escaped
    }
}

/// Attracting points an orbit may converge to, with the index reported back
/// in [`OrbitResult::target`].
#[derive(Clone, Copy, Debug)]
pub struct Targets<'a> {
    pub points: &'a [(Complex64, usize)],
    pub tolerance: f64,
}

/// Configurable orbit iteration. [`iterate_orbit`] covers the common case.
#[derive(Clone, Copy, Debug)]
pub struct OrbitRun<'a> {
    pub params: &'a MapParams,
    pub budget: usize,
    pub trap: Option<&'a Disk>,
    pub targets: Option<Targets<'a>>,
    pub trace_len: usize,
    /// Precomputed [`escape_radius`]; computed on demand when `None`.
    pub escape_radius: Option<f64>,
}

impl<'a> OrbitRun<'a> {
    pub fn new(params: &'a MapParams, budget: usize) -> Self {
        OrbitRun {
            params,
            budget,
            trap: None,
            targets: None,
            trace_len: 0,
            escape_radius: None,
        }
    }

    pub fn trap(mut self, trap: Option<&'a Disk>) -> Self {
        self.trap = trap;
        self
    }

    pub fn targets(mut self, targets: Targets<'a>) -> Self {
        self.targets = Some(targets);
        self
    }

    pub fn trace(mut self, len: usize) -> Self {
        self.trace_len = len;
        self
    }

    pub fn with_escape_radius(mut self, r: f64) -> Self {
        self.escape_radius = Some(r);
        self
    }

    /// Iterates from `seed`. The seed is tested at step 0; each later step
    /// tests the image after one more application. Tests run in the order
    /// escape, trap, targets.
    pub fn run(&self, seed: SpherePoint) -> OrbitResult {
        let radius = self
            .escape_radius
            .unwrap_or_else(|| escape_radius(self.params));
        let mut trace = Vec::with_capacity(self.trace_len.min(self.budget + 1));
        let mut z = seed;
        let mut step = 0;
        loop {
            if trace.len() < self.trace_len {
                trace.push(z);
            }
            let finish = |outcome, target, trace| OrbitResult {
                outcome,
                steps: step,
                final_point: z,
                target,
                trace,
            };
            let w = match z {
                SpherePoint::Infinity => return finish(OrbitOutcome::Escaped, None, trace),
                SpherePoint::Finite(w) => w,
            };
            if w.norm() >= radius {
                return finish(OrbitOutcome::Escaped, None, trace);
            }
            if self.trap.is_some_and(|d| d.contains(w)) {
                return finish(OrbitOutcome::Trapped, None, trace);
            }
            if let Some(t) = &self.targets {
                if let Some(&(_, idx)) = t
                    .points
                    .iter()
                    .find(|(p, _)| (w - p).norm() <= t.tolerance)
                {
                    return finish(OrbitOutcome::CycleConverged, Some(idx), trace);
                }
            }
            if step == self.budget {
                return finish(OrbitOutcome::BudgetExhausted, None, trace);
            }
            z = self.params.eval_finite(w);
            step += 1;
        }
    }
}

/// Iterates `seed` under `f` for at most `budget` steps, stopping on escape
/// or on entry into the closed `trap` disk.
pub fn iterate_orbit(
    params: &MapParams,
    seed: SpherePoint,
    budget: usize,
    trap: Option<&Disk>,
) -> OrbitResult {
    OrbitRun::new(params, budget).trap(trap).run(seed)
}
