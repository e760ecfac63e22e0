//! The family `f(z) = z^n + λ²/(zⁿ − λ)` and its critical-point algebra.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sphere::SpherePoint;

/// Below this relative size of `zⁿ − λ` the combined rational form is used.
pub const FORM_SWITCH_REL: f64 = 1e-12;

/// `zⁿ − λ` within this many ulps (relative to `max(|zⁿ|, |λ|)`) is a pole:
/// the sign and size of the difference are rounding noise at that point.
const POLE_REL: f64 = 64.0 * f64::EPSILON;

/// One member of the family: the degree `n` and the parameter `λ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MapParams {
    n: u32,
    lambda: Complex64,
    #[serde(skip)]
    omega: Complex64,
}

impl MapParams {
    pub fn new(n: u32, lambda: Complex64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDegree(n));
        }
        if !(lambda.re.is_finite() && lambda.im.is_finite()) || lambda == Complex64::new(0.0, 0.0)
        {
            return Err(Error::ZeroLambda);
        }
        Ok(MapParams {
            n,
            lambda,
            omega: Complex64::from_polar(1.0, 2.0 * PI / n as f64),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// Primitive n-th root of unity `e^{2πi/n}`.
    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    /// `ω^k`, computed directly from the angle rather than by repeated products.
    pub fn omega_pow(&self, k: u32) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * (k % self.n) as f64 / self.n as f64)
    }

    /// Critical value of the origin, `−λ`.
    pub fn v0(&self) -> Complex64 {
        -self.lambda
    }

    /// Common critical value of the `c_k`, `3λ`.
    pub fn v1(&self) -> Complex64 {
        self.lambda * 3.0
    }

    /// Classification guarantees only cover `n ≥ 3`.
    pub fn is_experimental(&self) -> bool {
        self.n < 3
    }

    pub fn eval(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => SpherePoint::Infinity,
            SpherePoint::Finite(z) => self.eval_finite(z),
        }
    }

    /// `f(z)` for finite `z`, total on the sphere.
    pub fn eval_finite(&self, z: Complex64) -> SpherePoint {
        let zn = z.powu(self.n);
        if !(zn.re.is_finite() && zn.im.is_finite()) {
            return SpherePoint::Infinity;
        }
        let den = zn - self.lambda;
        let den_abs = den.norm();
        let zn_abs = zn.norm();
        if den_abs <= POLE_REL * zn_abs.max(self.lambda.norm()) {
            return SpherePoint::Infinity;
        }
        let w = if den_abs < FORM_SWITCH_REL * zn_abs.max(1.0) {
            combined_form(zn, self.lambda, den)
        } else {
            two_term_form(zn, self.lambda, den)
        };
        SpherePoint::from_complex(w)
    }

    /// Both algebraic forms evaluated at `z`, for cross-checking.
    pub fn eval_both_forms(&self, z: Complex64) -> (Complex64, Complex64) {
        let zn = z.powu(self.n);
        let den = zn - self.lambda;
        (
            two_term_form(zn, self.lambda, den),
            combined_form(zn, self.lambda, den),
        )
    }

    /// `f'(z) = n z^{2n−1} (zⁿ − 2λ) / (zⁿ − λ)²`.
    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        let zn = z.powu(self.n);
        let den = zn - self.lambda;
        let den_sq = den * den;
        if den_sq.norm_sqr() == 0.0 || !den_sq.norm_sqr().is_normal() {
            return Err(Error::Pole);
        }
        if z == Complex64::new(0.0, 0.0) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let z_odd = z.powu(2 * self.n - 1);
        Ok(z_odd * (zn - self.lambda * 2.0) * self.n as f64 / den_sq)
    }

    /// The `n + 2` critical points in the fixed order `0, ∞, c_1, …, c_n`
    /// with `c_k = ω^{k−1}·(2λ)^{1/n}` (principal root).
    pub fn critical_points(&self) -> Vec<SpherePoint> {
        let mut out = Vec::with_capacity(self.n as usize + 2);
        out.push(SpherePoint::Finite(Complex64::new(0.0, 0.0)));
        out.push(SpherePoint::Infinity);
        out.extend(self.free_critical_points().into_iter().map(SpherePoint::Finite));
        out
    }

    /// `c_1, …, c_n`.
    pub fn free_critical_points(&self) -> Vec<Complex64> {
        let root = (self.lambda * 2.0).powf(1.0 / self.n as f64);
        (0..self.n).map(|k| self.omega_pow(k) * root).collect()
    }

    /// The `n` poles, roots of `zⁿ = λ`.
    pub fn poles(&self) -> Vec<Complex64> {
        let root = self.lambda.powf(1.0 / self.n as f64);
        (0..self.n).map(|k| self.omega_pow(k) * root).collect()
    }
}

#[inline]
fn two_term_form(zn: Complex64, lambda: Complex64, den: Complex64) -> Complex64 {
    zn + lambda * lambda / den
}

#[inline]
fn combined_form(zn: Complex64, lambda: Complex64, den: Complex64) -> Complex64 {
    (zn * zn - lambda * zn + lambda * lambda) / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn approx(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn rejects_bad_params() {
        assert_eq!(MapParams::new(1, c(0.5, 0.0)), Err(Error::InvalidDegree(1)));
        assert_eq!(MapParams::new(3, c(0.0, 0.0)), Err(Error::ZeroLambda));
        assert_eq!(MapParams::new(3, c(f64::NAN, 0.0)), Err(Error::ZeroLambda));
        assert!(MapParams::new(2, c(0.25, 0.0)).unwrap().is_experimental());
    }

    #[test]
    fn omega_is_primitive() {
        for n in 2..=12 {
            let p = MapParams::new(n, c(0.3, 0.1)).unwrap();
            assert!((p.omega().powu(n) - 1.0).norm() < 1e-12);
            for k in 1..n {
                assert!((p.omega().powu(k) - 1.0).norm() > 1e-3);
            }
        }
    }

    #[test]
    fn eval_examples() {
        let p = MapParams::new(3, c(0.5, 0.0)).unwrap();
        assert_eq!(p.eval_finite(c(0.0, 0.0)), SpherePoint::Finite(c(-0.5, 0.0)));
        assert_eq!(p.eval(SpherePoint::Infinity), SpherePoint::Infinity);

        let lam = 3f64.sqrt() / 9.0;
        let p = MapParams::new(3, c(lam, 0.0)).unwrap();
        assert_eq!(p.eval_finite(c(3f64.sqrt() / 3.0, 0.0)), SpherePoint::Infinity);

        let p = MapParams::new(3, c(0.25, 0.0)).unwrap();
        let w = p.eval_finite(c(1.0, 0.0)).finite().unwrap();
        assert!(approx(w, c(1.0 + (1.0 / 16.0) / 0.75, 0.0), 1e-15));
    }

    #[test]
    fn deriv_examples() {
        let p = MapParams::new(3, c(0.37, -0.2)).unwrap();
        assert_eq!(p.deriv(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));

        let p = MapParams::new(3, c(0.5, 0.0)).unwrap();
        assert!(p.deriv(c(1.0, 0.0)).unwrap().norm() < 1e-15);

        let p = MapParams::new(3, c(0.25, 0.0)).unwrap();
        let d = p.deriv(c(1.0, 0.0)).unwrap();
        assert!((d - c(3.0 * 0.5 / (0.75 * 0.75), 0.0)).norm() < 1e-9);

        let root = c(0.25, 0.0).powf(1.0 / 3.0);
        let p = MapParams::new(3, c(0.25, 0.0)).unwrap();
        let exact_pole = p.poles()[0];
        assert!((exact_pole - root).norm() < 1e-15);
        assert_eq!(
            MapParams::new(2, c(4.0, 0.0)).unwrap().deriv(c(2.0, 0.0)),
            Err(Error::Pole)
        );
    }

    #[test]
    fn critical_points_for_half() {
        let p = MapParams::new(3, c(0.5, 0.0)).unwrap();
        let cps = p.critical_points();
        assert_eq!(cps.len(), 5);
        assert_eq!(cps[0], SpherePoint::Finite(c(0.0, 0.0)));
        assert_eq!(cps[1], SpherePoint::Infinity);
        let w = p.omega();
        let expected = [c(1.0, 0.0), w, w * w];
        for (got, want) in cps[2..].iter().zip(expected) {
            assert!(approx(got.finite().unwrap(), want, 1e-14));
        }
    }

    #[test]
    fn first_critical_point_is_v1_at_sqrt6_over_9() {
        let lam = 6f64.sqrt() / 9.0;
        let p = MapParams::new(3, c(lam, 0.0)).unwrap();
        let c1 = p.free_critical_points()[0];
        assert!(approx(c1, c(6f64.sqrt() / 3.0, 0.0), 1e-14));
        assert!(approx(c1, p.v1(), 1e-14));
    }

    #[test]
    fn poles_map_to_infinity() {
        for n in 2..=9 {
            let p = MapParams::new(n, c(0.41, -0.73)).unwrap();
            for z in p.poles() {
                assert_eq!(p.eval_finite(z), SpherePoint::Infinity, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn near_pole_uses_combined_form() {
        let p = MapParams::new(3, c(0.25, 0.0)).unwrap();
        let pole = p.poles()[0];
        let z = pole * (1.0 + 1e-13);
        let w = p.eval_finite(z).finite().unwrap();
        let (two, comb) = p.eval_both_forms(z);
        assert_eq!(w, comb);
        assert!((two - comb).norm() <= 1e-9 * comb.norm());
    }
}
