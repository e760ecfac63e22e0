//! Query-string helpers shared by the handlers.

use std::collections::HashMap;
use std::str::FromStr;

use bubbledyn_core::Complex64;

use crate::error::ApiError;

pub type Query = HashMap<String, String>;

/// Optional parameter; present but unparsable is a 422.
pub fn opt<T: FromStr>(q: &Query, key: &str) -> Result<Option<T>, ApiError> {
    match q.get(key) {
        None => Ok(None),
        Some(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| ApiError::unparsable(format!("{key}={s:?} is not a number"))),
    }
}

pub fn req<T: FromStr>(q: &Query, key: &str) -> Result<T, ApiError> {
    opt(q, key)?.ok_or_else(|| ApiError::bad_request(format!("missing parameter {key}")))
}

pub fn finite(q: &Query, key: &str) -> Result<f64, ApiError> {
    let x: f64 = req(q, key)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ApiError::unparsable(format!("{key} must be finite")))
    }
}

/// `re` and `im`, both required.
pub fn lambda(q: &Query) -> Result<Complex64, ApiError> {
    Ok(Complex64::new(finite(q, "re")?, finite(q, "im")?))
}

pub fn budget(q: &Query, default: usize, max: usize) -> Result<usize, ApiError> {
    let b = opt(q, "budget")?.unwrap_or(default);
    if b > max {
        return Err(ApiError::bad_request(format!("budget above {max}")));
    }
    Ok(b)
}
