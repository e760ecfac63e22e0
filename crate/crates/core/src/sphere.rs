//! Points of the Riemann sphere.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Magnitude cap for either coordinate of a finite point. Anything at or
/// beyond it is treated as the point at infinity.
pub const OVERFLOW_CAP: f64 = 1e150;

/// A point of the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    /// Normalizes a raw arithmetic result: non-finite values and values past
    /// [`OVERFLOW_CAP`] become [`SpherePoint::Infinity`].
    pub fn from_complex(z: Complex64) -> Self {
        if z.re.is_finite()
            && z.im.is_finite()
            && z.re.abs() < OVERFLOW_CAP
            && z.im.abs() < OVERFLOW_CAP
        {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Modulus, `f64::INFINITY` for the point at infinity.
    pub fn norm(&self) -> f64 {
        match self {
            SpherePoint::Finite(z) => z.norm(),
            SpherePoint::Infinity => f64::INFINITY,
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::from_complex(z)
    }
}

impl std::fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{}", z),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

// Finite points serialize as {"re", "im"}, infinity as the string "infinity".
impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => {
                let mut s = serializer.serialize_struct("SpherePoint", 2)?;
                s.serialize_field("re", &z.re)?;
                s.serialize_field("im", &z.im)?;
                s.end()
            }
            SpherePoint::Infinity => serializer.serialize_str("infinity"),
        }
    }
}
