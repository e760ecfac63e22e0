//! Reference parameters with known Julia-set types (degree 3), and a
//! self-check that re-derives each verdict.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::classify::{classify, JuliaKind, Subcase};
use crate::map::MapParams;
use crate::sphere::SpherePoint;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenExample {
    pub label: &'static str,
    pub n: u32,
    pub re: f64,
    pub im: f64,
    pub kind: JuliaKind,
    pub subcase: Subcase,
    pub note: &'static str,
}

impl GoldenExample {
    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn params(&self) -> MapParams {
        MapParams::new(self.n, self.lambda()).expect("golden parameters are valid")
    }
}

/// The five reference parameters, in a fixed order.
pub fn golden_examples() -> Vec<GoldenExample> {
    let rot = Complex64::from_polar(1.0, PI / 3.0);
    vec![
        GoldenExample {
            label: "λ = −i",
            n: 3,
            re: 0.0,
            im: -1.0,
            kind: JuliaKind::CantorSet,
            subcase: Subcase::Case1,
            note: "v0 is a pole, so both critical values escape",
        },
        GoldenExample {
            label: "λ = e^{iπ/3}",
            n: 3,
            re: rot.re,
            im: rot.im,
            kind: JuliaKind::Connected,
            subcase: Subcase::Case2,
            note: "0 → v0 → 0 is a super-attracting 2-cycle; v1 escapes",
        },
        GoldenExample {
            label: "λ = √3/9",
            n: 3,
            re: 3f64.sqrt() / 9.0,
            im: 0.0,
            kind: JuliaKind::Connected,
            subcase: Subcase::Case2,
            note: "v1 is a pole; v0 stays in the trap basin",
        },
        GoldenExample {
            label: "λ = √6/9",
            n: 3,
            re: 6f64.sqrt() / 9.0,
            im: 0.0,
            kind: JuliaKind::Connected,
            subcase: Subcase::Case3a,
            note: "v1 = c1 is a super-attracting fixed point apart from the trap basin",
        },
        GoldenExample {
            label: "λ = 4/25",
            n: 3,
            re: 0.16,
            im: 0.0,
            kind: JuliaKind::CantorBubbles,
            subcase: Subcase::Case3b,
            note: "f∘2(v1) lands in the trap disk around −λ",
        },
    ]
}

/// `|f∘2(v1) + λ| / |λ|` for `n = 3`, `λ = 4/25`.
pub fn second_iterate_ratio() -> f64 {
    let p = MapParams::new(3, Complex64::new(0.16, 0.0)).expect("valid");
    match p.eval(p.eval(p.v1().into())) {
        SpherePoint::Finite(z) => (z + p.lambda()).norm() / p.lambda().norm(),
        SpherePoint::Infinity => f64::INFINITY,
    }
}

pub const RATIO_EXPECTED: f64 = 0.125;
pub const RATIO_TOLERANCE: f64 = 0.005;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Runs the five reference classifications at `budget` and the ratio check
/// at `ratio_tol`.
pub fn verify(budget: usize, ratio_tol: f64) -> Vec<CheckRow> {
    let mut rows: Vec<CheckRow> = golden_examples()
        .into_iter()
        .map(|ex| {
            let expected = format!("{}/{}", ex.kind.as_str(), ex.subcase.as_str());
            let (actual, pass) = match classify(&ex.params(), budget) {
                Ok(c) => {
                    let actual = format!("{}/{}", c.kind.as_str(), c.subcase.as_str());
                    (actual, c.kind == ex.kind && c.subcase == ex.subcase)
                }
                Err(e) => (format!("error: {e}"), false),
            };
            CheckRow {
                name: format!("classify n=3 {}", ex.label),
                expected,
                actual,
                pass,
            }
        })
        .collect();
    let ratio = second_iterate_ratio();
    rows.push(CheckRow {
        name: "|f∘2(v1)+λ|/|λ| at λ = 4/25".to_string(),
        expected: format!("{RATIO_EXPECTED} ± {ratio_tol}"),
        actual: format!("{ratio:.6}"),
        pass: (ratio - RATIO_EXPECTED).abs() <= ratio_tol,
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let rows = verify(5000, RATIO_TOLERANCE);
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.pass), "{rows:#?}");
    }

    #[test]
    fn loose_ratio_tolerance_still_passes() {
        assert!(verify(5000, 1e-1)[5].pass);
    }

    #[test]
    fn tiny_budget_fails_orbit_checks() {
        let rows = verify(1, RATIO_TOLERANCE);
        assert!(rows[..5].iter().all(|r| !r.pass));
        assert!(rows[5].pass);
    }

    #[test]
    fn ratio_value() {
        // 40-digit evaluation: 0.12576980452205468...
        assert!((second_iterate_ratio() - 0.125_769_804_522_054_7).abs() < 1e-12);
    }
}
