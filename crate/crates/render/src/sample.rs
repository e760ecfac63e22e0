//! Per-pixel dynamics, independent of colouring.

use bubbledyn_core::{
    escape_radius, trap_disk, Complex64, CycleInfo, Disk, MapParams, OrbitOutcome, OrbitRun,
    SpherePoint, Targets, TRAP_KAPPA,
};

/// Distance at which a dynamical-plane orbit counts as converged to a cycle.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-6;

/// Budget multiplier for `v1` in the parameter plane.
pub const V1_BUDGET_FACTOR: usize = 10;

/// What happened to the two free critical orbits at one λ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSample {
    pub v0_bounded: bool,
    pub v1_bounded: bool,
    /// Smooth escape time of `v0` (0 when bounded or `λ = 0`).
    pub v0_nu: f64,
}

/// Follows `v0` for `budget` steps and `v1` for `10·budget`. For `n ≥ 3`
/// entry into the trap disk certifies boundedness.
pub fn sample_parameter(n: u32, lambda: Complex64, budget: usize) -> ParamSample {
    let Ok(params) = MapParams::new(n, lambda) else {
        return ParamSample {
            v0_bounded: false,
            v1_bounded: false,
            v0_nu: 0.0,
        };
    };
    let trap = if params.is_experimental() {
        None
    } else {
        trap_disk(&params, TRAP_KAPPA)
    };
    let radius = escape_radius(&params);
    let v0 = OrbitRun::new(&params, budget)
        .trap(trap.as_ref())
        .with_escape_radius(radius)
        .run(params.v0().into());
    let v1 = OrbitRun::new(&params, budget.saturating_mul(V1_BUDGET_FACTOR))
        .trap(trap.as_ref())
        .with_escape_radius(radius)
        .run(params.v1().into());
    let v0_nu = if v0.escaped() {
        crate::style::smooth_escape(v0.steps, v0.final_point.finite().map(|z| z.norm()), radius, n as f64)
    } else {
        0.0
    };
    ParamSample {
        v0_bounded: !v0.escaped(),
        v1_bounded: !v1.escaped(),
        v0_nu,
    }
}

/// Fate of one point of the dynamical plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DynSample {
    Escaped { steps: usize, nu: f64 },
    /// Reached attractor `index` (directly or through the trap disk).
    Attracted { index: usize, steps: usize },
    Unresolved,
}

/// Shared, read-only state for sampling one dynamical plane.
#[derive(Clone, Debug)]
pub struct DynamicalContext {
    params: MapParams,
    budget: usize,
    radius: f64,
    trap: Option<Disk>,
    trap_attractor: usize,
    targets: Vec<(Complex64, usize)>,
}

impl DynamicalContext {
    pub fn new(params: MapParams, budget: usize, attractors: &[CycleInfo]) -> Self {
        let trap = if params.is_experimental() {
            None
        } else {
            trap_disk(&params, TRAP_KAPPA)
        };
        // Orbits entering the trap disk belong to the attractor inside it.
        let trap_attractor = trap
            .and_then(|d| {
                attractors
                    .iter()
                    .position(|a| a.points.iter().any(|p| d.contains(*p)))
            })
            .unwrap_or(attractors.len());
        let targets = attractors
            .iter()
            .enumerate()
            .flat_map(|(i, a)| a.points.iter().map(move |p| (*p, i)))
            .collect();
        DynamicalContext {
            radius: escape_radius(&params),
            params,
            budget,
            trap,
            trap_attractor,
            targets,
        }
    }

    pub fn params(&self) -> &MapParams {
        &self.params
    }

    pub fn sample(&self, z: Complex64) -> DynSample {
        let r = OrbitRun::new(&self.params, self.budget)
            .trap(self.trap.as_ref())
            .targets(Targets {
                points: &self.targets,
                tolerance: CONVERGENCE_TOLERANCE,
            })
            .with_escape_radius(self.radius)
            .run(SpherePoint::Finite(z));
        match r.outcome {
            OrbitOutcome::Escaped => DynSample::Escaped {
                steps: r.steps,
                nu: crate::style::smooth_escape(
                    r.steps,
                    r.final_point.finite().map(|w| w.norm()),
                    self.radius,
                    self.params.n() as f64,
                ),
            },
            OrbitOutcome::Trapped => DynSample::Attracted {
                index: self.trap_attractor,
                steps: r.steps,
            },
            OrbitOutcome::CycleConverged => DynSample::Attracted {
                index: r.target.unwrap_or(0),
                steps: r.steps,
            },
            OrbitOutcome::BudgetExhausted => DynSample::Unresolved,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bubbledyn_core::attractor_inventory;
    use std::f64::consts::PI;

    #[test]
    fn parameter_examples() {
        let s = sample_parameter(3, Complex64::new(0.16, 0.0), 500);
        assert!(s.v1_bounded && s.v0_bounded);

        let s = sample_parameter(3, Complex64::new(0.0, -1.0), 500);
        assert!(!s.v1_bounded && !s.v0_bounded);

        let s = sample_parameter(3, Complex64::from_polar(1.0, PI / 3.0), 500);
        assert!(!s.v1_bounded && s.v0_bounded);

        let s = sample_parameter(3, Complex64::new(0.0, 0.0), 500);
        assert!(!s.v1_bounded && !s.v0_bounded);
    }

    #[test]
    fn dynamical_examples() {
        let p = MapParams::new(3, Complex64::new(6f64.sqrt() / 9.0, 0.0)).unwrap();
        let inv = attractor_inventory(&p, 5000);
        let ctx = DynamicalContext::new(p, 500, &inv);
        let fixed = inv.iter().position(|c| c.period == 1 && c.multiplier.norm() < 1e-8).unwrap();
        match ctx.sample(Complex64::new(6f64.sqrt() / 3.0, 0.0)) {
            DynSample::Attracted { index, steps } => {
                assert_eq!(index, fixed);
                assert_eq!(steps, 0);
            }
            other => panic!("{other:?}"),
        }

        let p = MapParams::new(3, Complex64::new(0.0, -1.0)).unwrap();
        let ctx = DynamicalContext::new(p, 500, &attractor_inventory(&p, 5000));
        assert!(matches!(ctx.sample(Complex64::new(0.0, 0.0)), DynSample::Escaped { steps: 2, .. }));

        let far = Complex64::from_polar(10.0 * escape_radius(&p), 0.7);
        assert!(matches!(ctx.sample(far), DynSample::Escaped { steps: 0, .. }));
    }

    #[test]
    fn trap_entries_use_the_trapped_attractor() {
        let p = MapParams::new(3, Complex64::new(0.16, 0.0)).unwrap();
        let inv = attractor_inventory(&p, 5000);
        let ctx = DynamicalContext::new(p, 500, &inv);
        assert!(matches!(
            ctx.sample(Complex64::new(-0.16, 0.001)),
            DynSample::Attracted { index: 0, steps: 0 }
        ));
    }
}
