//! Connectivity window, isolated-vertex counts, and the simple-graph
//! disconnection exponent.
//!
//! Connectivity of the multigraph process is decided on the polynomial
//! scale `t ~ x (L + R)^(1 + 1/min(alpha, beta))`: by that time everything
//! outside a small set of isolated vertices has merged into one component,
//! and the isolated count on each side is asymptotically Poisson. The side
//! with the smaller attachment weight keeps isolated vertices the longest
//! and therefore decides the limit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Params, Side};

/// Connectivity time scale `tau = (L + R)^(1 + 1/(alpha /\ beta))`.
pub fn connectivity_threshold(params: &Params) -> f64 {
    let m = params.alpha().min(params.beta());
    (params.total_count() as f64).powf(1.0 + 1.0 / m)
}

/// Mean of the limiting Poisson number of isolated vertices on `side`
/// when `t / (L + R)^(1 + 1/rho(side)) -> x`:
/// `lambda = (rho/x)^rho * zeta(side)^(-(1 + rho))`.
pub fn isolated_mean(params: &Params, side: Side, x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::invalid(format!("x must be positive and finite, got {x}")));
    }
    let rho = params.rho(side);
    Ok((rho / x).powf(rho) * params.zeta(side).powf(-(1.0 + rho)))
}

/// Limiting probability that the multigraph process is connected at
/// `t ~ x * tau` with `tau` from [`connectivity_threshold`].
///
/// For `alpha != beta` only the smaller-weight side still has isolated
/// vertices on this scale; at `alpha = beta` both sides contribute.
pub fn connectivity_limit(params: &Params, x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::invalid(format!("x must be positive and finite, got {x}")));
    }
    let (a, b) = (params.alpha(), params.beta());
    let g = params.gamma();
    if a == b {
        let rate = (a / x).powf(a)
            * ((1.0 + g).powf(-(1.0 + a)) + (1.0 + 1.0 / g).powf(-(1.0 + a)));
        Ok((-rate).exp())
    } else {
        let m = a.min(b);
        let side = if a < b { Side::Left } else { Side::Right };
        let rate = (m / x).powf(m) * params.zeta(side).powf(-(1.0 + m));
        Ok((-rate).exp())
    }
}

/// Everything the connectivity experiment compares against, at one `x`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConnectivityPrediction {
    pub tau: f64,
    pub x: f64,
    /// Poisson mean for isolated left vertices at this scale (0 when the
    /// right side is the strict bottleneck, i.e. the left side is already
    /// exhausted).
    #[serde(rename = "lambda_L")]
    pub lambda_left: f64,
    #[serde(rename = "lambda_R")]
    pub lambda_right: f64,
    /// Limiting connectivity probability, `exp(-(lambda_L + lambda_R))`.
    pub limit: f64,
}

pub fn connectivity_prediction(params: &Params, x: f64) -> Result<ConnectivityPrediction> {
    let (a, b) = (params.alpha(), params.beta());
    let (lambda_left, lambda_right) = if a == b {
        (
            isolated_mean(params, Side::Left, x)?,
            isolated_mean(params, Side::Right, x)?,
        )
    } else if a < b {
        (isolated_mean(params, Side::Left, x)?, 0.0)
    } else {
        (0.0, isolated_mean(params, Side::Right, x)?)
    };
    Ok(ConnectivityPrediction {
        tau: connectivity_threshold(params),
        x,
        lambda_left,
        lambda_right,
        limit: connectivity_limit(params, x)?,
    })
}

/// Exponent `Z(alpha, beta)`: the simple-graph process is disconnected at
/// `t = (L + R)^(1 + delta)` with probability tending to one for every
/// `delta < Z`.
pub fn sg_disconnect_exponent(alpha: f64, beta: f64) -> f64 {
    let first = (0.5 / (1.0 + alpha)).min(0.5 / (1.0 + beta));
    let second = (1.0 / (4.0 + alpha))
        .min(1.0 / beta)
        .max((1.0 / (4.0 + beta)).min(1.0 / alpha));
    first.min(second)
}
