//! Parsing of complex literals of the form `a+bi`, `a-bi`, `a`, `bi`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub fn parse_complex(input: &str) -> Result<Complex64> {
    let err = || Error::ParseComplex(input.to_string());
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re = parse_real(&s).ok_or_else(err)?;
        return Ok(Complex64::new(re, 0.0));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k]).ok_or_else(err)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(err)?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    // Rust accepts "inf"/"nan"; those are not valid coordinates here.
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}
