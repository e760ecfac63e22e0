//! Attracting periodic orbits found from critical-orbit tails.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_complex::Complex64;
use serde::Serialize;

use crate::escape::escape_radius;
use crate::map::MapParams;
use crate::sphere::SpherePoint;

pub const MAX_PERIOD: usize = 64;
pub const DEFAULT_CYCLE_EPS: f64 = 1e-10;
/// Point sets closer than this are the same cycle.
pub const DEDUP_TOLERANCE: f64 = 1e-6;

const SUPERATTRACTING_BELOW: f64 = 1e-8;
const ATTRACTING_BELOW: f64 = 1.0 - 1e-6;
const REFINE_PERIODS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    Superattracting,
    Attracting,
    Indeterminate,
}

impl CycleKind {
    pub fn from_multiplier(m: Complex64) -> Self {
        let a = m.norm();
        if a < SUPERATTRACTING_BELOW {
            CycleKind::Superattracting
        } else if a < ATTRACTING_BELOW {
            CycleKind::Attracting
        } else {
            CycleKind::Indeterminate
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleInfo {
    /// One period, starting at the point of smallest modulus (ties by argument).
    pub points: Vec<Complex64>,
    pub period: usize,
    pub multiplier: Complex64,
    pub kind: CycleKind,
}

impl CycleInfo {
    /// Same period and every point of `self` has a partner in `other`.
    pub fn coincides_with(&self, other: &CycleInfo, tol: f64) -> bool {
        self.period == other.period
            && self
                .points
                .iter()
                .all(|p| other.points.iter().any(|q| (p - q).norm() <= tol))
    }

    /// Smallest distance from any cycle point to `z`.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        self.points
            .iter()
            .map(|p| (p - z).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Looks for an attracting cycle of period ≤ 64 in the orbit of `seed`.
///
/// The first `budget/2` iterates are burn-in. The rest are searched for the
/// smallest `p` with `|z_{k+p} − z_k| < eps·(1+|z_k|)` holding at `p`
/// consecutive offsets. Returns `None` if the orbit escapes, no period is
/// found, or the preconditions (`budget ≥ 100`, `0 < eps ≤ 1e−6`) fail.
pub fn find_cycle(params: &MapParams, seed: Complex64, budget: usize, eps: f64) -> Option<CycleInfo> {
    if budget < 100 || !(eps > 0.0 && eps <= 1e-6) {
        return None;
    }
    let radius = escape_radius(params);
    let step = |z: Complex64| -> Option<Complex64> {
        match params.eval_finite(z) {
            SpherePoint::Finite(w) if w.norm() < radius => Some(w),
            _ => None,
        }
    };

    let mut z = seed;
    if z.norm() >= radius {
        return None;
    }
    let burn_in = budget / 2;
    for _ in 0..burn_in {
        z = step(z)?;
    }

    let window = 2 * MAX_PERIOD;
    let mut tail: VecDeque<Complex64> = VecDeque::with_capacity(window + 1);
    tail.push_back(z);
    let mut found = None;
    for _ in 0..(budget - burn_in) {
        z = step(z)?;
        if tail.len() == window {
            tail.pop_front();
        }
        tail.push_back(z);
        if let Some(p) = detect_period(&tail, eps) {
            found = Some(p);
            break;
        }
    }
    let period = found?;

    // Polish by whole periods, stopping once a period closes to rounding.
    let mut anchor = *tail.back()?;
    for _ in 0..REFINE_PERIODS {
        let mut w = anchor;
        for _ in 0..period {
            w = step(w)?;
        }
        let settled = (w - anchor).norm() <= 4.0 * f64::EPSILON * (1.0 + w.norm());
        anchor = w;
        if settled {
            break;
        }
    }

    let mut points = Vec::with_capacity(period);
    let mut w = anchor;
    for _ in 0..period {
        points.push(w);
        w = step(w)?;
    }
    let mut multiplier = Complex64::new(1.0, 0.0);
    for p in &points {
        multiplier *= params.deriv(*p).ok()?;
    }
    let start = points
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| order_key(**a, **b))
        .map(|(i, _)| i)?;
    points.rotate_left(start);

    Some(CycleInfo {
        period,
        kind: CycleKind::from_multiplier(multiplier),
        points,
        multiplier,
    })
}

fn order_key(a: Complex64, b: Complex64) -> Ordering {
    let (ma, mb) = (a.norm(), b.norm());
    if (ma - mb).abs() <= 1e-12 * ma.max(mb) {
        a.arg().total_cmp(&b.arg())
    } else {
        ma.total_cmp(&mb)
    }
}

/// Smallest period that closes on the newest `2p` tail entries.
fn detect_period(tail: &VecDeque<Complex64>, eps: f64) -> Option<usize> {
    let len = tail.len();
    (1..=MAX_PERIOD).take_while(|p| 2 * p <= len).find(|&p| {
        (0..p).all(|j| {
            let a = tail[len - 2 * p + j];
            let b = tail[len - p + j];
            (b - a).norm() < eps * (1.0 + a.norm())
        })
    })
}

/// Distinct attracting cycles reached from the free critical values `v0`, `v1`.
pub fn attractor_inventory(params: &MapParams, budget: usize) -> Vec<CycleInfo> {
    let mut out: Vec<CycleInfo> = Vec::new();
    for seed in [params.v0(), params.v1()] {
        if let Some(cycle) = find_cycle(params, seed, budget, DEFAULT_CYCLE_EPS) {
            if !out.iter().any(|c| c.coincides_with(&cycle, DEDUP_TOLERANCE)) {
                out.push(cycle);
            }
        }
    }
    out
}
