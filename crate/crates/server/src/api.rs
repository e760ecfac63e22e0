//! JSON endpoints: classification, orbits, reference examples.

use axum::extract::Query as QueryExtract;
use axum::Json;
use bubbledyn_core::golden::{golden_examples, GoldenExample};
use bubbledyn_core::{
    classify, trap_disk, Classification, MapParams, OrbitOutcome, OrbitRun, SpherePoint,
    DEFAULT_CLASSIFY_BUDGET, TRAP_KAPPA,
};
use serde::Serialize;

use crate::error::ApiError;
use crate::query::{budget, finite, lambda, opt, Query};

pub const MAX_BUDGET: usize = 1_000_000;
pub const DEFAULT_TRACE: usize = 64;
pub const MAX_TRACE: usize = 10_000;

fn params(q: &Query) -> Result<MapParams, ApiError> {
    let n: u32 = opt(q, "n")?.unwrap_or(3);
    Ok(MapParams::new(n, lambda(q)?)?)
}

pub async fn classify_handler(
    QueryExtract(q): QueryExtract<Query>,
) -> Result<Json<Classification>, ApiError> {
    let p = params(&q)?;
    let b = budget(&q, DEFAULT_CLASSIFY_BUDGET, MAX_BUDGET)?;
    Ok(Json(classify(&p, b)?))
}

#[derive(Debug, Serialize)]
pub struct OrbitResponse {
    pub trace: Vec<SpherePoint>,
    pub outcome: OrbitOutcome,
    pub steps: usize,
    #[serde(rename = "final")]
    pub final_point: SpherePoint,
    pub seed: &'static str,
}

pub async fn orbit_handler(
    QueryExtract(q): QueryExtract<Query>,
) -> Result<Json<OrbitResponse>, ApiError> {
    let p = params(&q)?;
    let b = budget(&q, DEFAULT_CLASSIFY_BUDGET, MAX_BUDGET)?;
    let max: usize = opt(&q, "max")?.unwrap_or(DEFAULT_TRACE);
    if max > MAX_TRACE {
        return Err(ApiError::bad_request(format!("max above {MAX_TRACE}")));
    }
    let (seed, z) = match q.get("seed").map(String::as_str).unwrap_or("v1") {
        "v0" => ("v0", p.v0()),
        "v1" => ("v1", p.v1()),
        "custom" => (
            "custom",
            bubbledyn_core::Complex64::new(finite(&q, "zre")?, finite(&q, "zim")?),
        ),
        other => return Err(ApiError::bad_request(format!("unknown seed {other:?}"))),
    };
    let trap = if p.is_experimental() {
        None
    } else {
        trap_disk(&p, TRAP_KAPPA)
    };
    let r = OrbitRun::new(&p, b).trap(trap.as_ref()).trace(max).run(z.into());
    Ok(Json(OrbitResponse {
        trace: r.trace,
        outcome: r.outcome,
        steps: r.steps,
        final_point: r.final_point,
        seed,
    }))
}

pub async fn examples_handler() -> Json<Vec<GoldenExample>> {
    Json(golden_examples())
}
