//! Finite-budget Julia-set classification from the two free critical orbits.
//!
//! The verdict follows where `v0 = −λ` and `v1 = 3λ` end up:
//!
//! | v0            | v1                                | verdict                      |
//! |---------------|-----------------------------------|------------------------------|
//! | escapes       | (escapes)                         | Cantor set (case 1)          |
//! | bounded       | escapes                           | connected (case 2)           |
//! | in trap basin | enters the trap disk              | Cantor bubbles (case 3b)     |
//! | in trap basin | attracted to a cycle off the trap | connected (case 3a)          |
//!
//! Anything the budget cannot settle is `Unresolved`.

use serde::Serialize;

use crate::cycles::{find_cycle, CycleInfo, DEFAULT_CYCLE_EPS};
use crate::error::{Error, Result};
use crate::escape::{iterate_orbit, trap_disk, trap_threshold, Disk, OrbitResult, TRAP_KAPPA};
use crate::map::MapParams;

pub const MIN_CLASSIFY_BUDGET: usize = 100;
/// A case-3a cycle must clear the closed trap disk by this much.
pub const TRAP_CLEARANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JuliaKind {
    CantorSet,
    Connected,
    CantorBubbles,
    Unresolved,
}

impl JuliaKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            JuliaKind::CantorSet => "cantor_set",
            JuliaKind::Connected => "connected",
            JuliaKind::CantorBubbles => "cantor_bubbles",
            JuliaKind::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subcase {
    Case1,
    Case2,
    Case3a,
    Case3b,
    None,
}

impl Subcase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Subcase::Case1 => "case1",
            Subcase::Case2 => "case2",
            Subcase::Case3a => "case3a",
            Subcase::Case3b => "case3b",
            Subcase::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub trap_active: bool,
    /// `trap_threshold(n, 1/5)`; reported as 0 for `n = 2`, where the trap
    /// argument does not apply.
    pub threshold: f64,
    pub v0_result: OrbitResult,
    pub v1_result: OrbitResult,
    pub cycles: Vec<CycleInfo>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub n: u32,
    pub lambda: num_complex::Complex64,
    pub kind: JuliaKind,
    pub subcase: Subcase,
    /// For case 2, whether `v1` lies in the immediate basin of infinity.
    /// Always `"unknown"`: there is no finite test for it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v1_basin: Option<&'static str>,
    pub evidence: Evidence,
    pub budget_used: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

struct Verdict {
    kind: JuliaKind,
    subcase: Subcase,
}

const UNRESOLVED: Verdict = Verdict {
    kind: JuliaKind::Unresolved,
    subcase: Subcase::None,
};

/// Classifies the Julia set of `f_λ` within `budget` iterations per orbit.
pub fn classify(params: &MapParams, budget: usize) -> Result<Classification> {
    if budget < MIN_CLASSIFY_BUDGET {
        return Err(Error::InvalidBudget {
            min: MIN_CLASSIFY_BUDGET,
            got: budget,
        });
    }
    let experimental = params.is_experimental();
    let (threshold, trap) = if experimental {
        (0.0, None)
    } else {
        (
            trap_threshold(params.n(), TRAP_KAPPA)?,
            trap_disk(params, TRAP_KAPPA),
        )
    };

    let mut warnings = Vec::new();
    if experimental {
        warnings.push("n = 2 is outside the proven range; trap machinery disabled".to_string());
    }
    let mut cycles = Vec::new();
    let mut budget_used = 0;

    let (verdict, v0_result, v1_result) = match &trap {
        None => {
            let v0 = iterate_orbit(params, params.v0().into(), budget, None);
            let v1 = iterate_orbit(params, params.v1().into(), budget, None);
            budget_used += v0.steps + v1.steps;
            let verdict = if v0.escaped() {
                if v1.escaped() {
                    Verdict {
                        kind: JuliaKind::CantorSet,
                        subcase: Subcase::Case1,
                    }
                } else {
                    warnings.push(format!(
                        "v0 escaped but v1 did not within {budget} steps; budget too small"
                    ));
                    UNRESOLVED
                }
            } else if v1.escaped() {
                // v0 survived the budget; it only counts as bounded once it
                // is seen settling onto an attracting cycle.
                budget_used += budget;
                match find_cycle(params, params.v0(), budget, DEFAULT_CYCLE_EPS) {
                    Some(cycle) => {
                        cycles.push(cycle);
                        Verdict {
                            kind: JuliaKind::Connected,
                            subcase: Subcase::Case2,
                        }
                    }
                    None => {
                        warnings.push(
                            "v1 escaped but v0 neither escaped nor settled on a cycle".to_string(),
                        );
                        UNRESOLVED
                    }
                }
            } else {
                if !experimental {
                    warnings.push(format!(
                        "v1 did not escape within {budget} steps although |lambda| >= threshold"
                    ));
                }
                UNRESOLVED
            };
            (verdict, v0, v1)
        }
        Some(disk) => {
            let v0 = iterate_orbit(params, params.v0().into(), budget, Some(disk));
            let v1 = iterate_orbit(params, params.v1().into(), budget, Some(disk));
            budget_used += v0.steps + v1.steps;
            let verdict = if v1.escaped() {
                Verdict {
                    kind: JuliaKind::Connected,
                    subcase: Subcase::Case2,
                }
            } else if v1.outcome == crate::escape::OrbitOutcome::Trapped {
                Verdict {
                    kind: JuliaKind::CantorBubbles,
                    subcase: Subcase::Case3b,
                }
            } else {
                budget_used += budget;
                match find_cycle(params, params.v1(), budget, DEFAULT_CYCLE_EPS) {
                    Some(cycle) => {
                        let clear = clears_disk(&cycle, disk);
                        cycles.push(cycle);
                        if clear {
                            Verdict {
                                kind: JuliaKind::Connected,
                                subcase: Subcase::Case3a,
                            }
                        } else {
                            warnings.push("v1 cycle touches the trap disk".to_string());
                            UNRESOLVED
                        }
                    }
                    None => UNRESOLVED,
                }
            };
            (verdict, v0, v1)
        }
    };

    Ok(Classification {
        n: params.n(),
        lambda: params.lambda(),
        kind: verdict.kind,
        subcase: verdict.subcase,
        v1_basin: (verdict.subcase == Subcase::Case2).then_some("unknown"),
        evidence: Evidence {
            trap_active: trap.is_some(),
            threshold,
            v0_result,
            v1_result,
            cycles,
        },
        budget_used,
        warnings,
    })
}

fn clears_disk(cycle: &CycleInfo, disk: &Disk) -> bool {
    cycle
        .points
        .iter()
        .all(|p| (p - disk.center).norm() > disk.radius + TRAP_CLEARANCE)
}
