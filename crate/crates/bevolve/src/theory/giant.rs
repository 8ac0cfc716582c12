//! Giant-component threshold, fixed point, and size prediction.
//!
//! In the linear regime `t = c (L + R)` the process behaves like a
//! configuration model whose side degrees are negative binomial. A giant
//! component exists iff the product of the two shifted size-biased mean
//! degrees exceeds one, which pins the critical density
//!
//! ```text
//! t_c = sqrt(gamma) / ((gamma + 1) sqrt((1 + 1/alpha)(1 + 1/beta))) .
//! ```
//!
//! Above the threshold the asymptotic component fraction comes from the
//! standard two-type extinction fixed point of the size-biased pgfs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Params, Side};
use crate::theory::negbin::{degree_model, NegBin};

/// Tolerance used by [`giant_fraction`] when solving the fixed point.
pub const DEFAULT_FIXED_POINT_TOL: f64 = 1e-12;

/// Iteration cap for the fixed point; exceeding it is a numerical error
/// (the iteration slows down without bound as `epsilon` approaches 0).
pub const MAX_FIXED_POINT_ITERATIONS: usize = 100_000;

/// Critical edges-per-vertex density for the giant component: a giant
/// emerges in `B_t` (either variant) once `t / (L + R)` exceeds this.
pub fn giant_threshold(params: &Params) -> f64 {
    let g = params.gamma();
    let prod = (1.0 + 1.0 / params.alpha()) * (1.0 + 1.0 / params.beta());
    g.sqrt() / ((g + 1.0) * prod.sqrt())
}

/// Limiting negative-binomial success probabilities `(p_L, p_R)` of the
/// two side degree laws at `t = (1 + epsilon) t_c (L + R)`.
///
/// Matched to the degree model: at that `t` the mean left degree tends to
/// `m_L = (1 + epsilon) t_c (1 + gamma)`, and a negative binomial with
/// shape `alpha` has mean `m_L` exactly when `p = m_L / (m_L + alpha)`
/// (symmetrically on the right). Consistency check: at `epsilon = 0` the
/// product of the two shifted size-biased means is exactly 1.
///
/// Requires `epsilon > -1` so the step count stays positive.
pub fn supercritical_probs(params: &Params, epsilon: f64) -> Result<(f64, f64)> {
    if !(epsilon.is_finite() && epsilon > -1.0) {
        return Err(Error::invalid(format!(
            "epsilon must be a finite number above -1, got {epsilon}"
        )));
    }
    let t_c = giant_threshold(params);
    let g = params.gamma();
    let m_l = (1.0 + epsilon) * t_c * (1.0 + g);
    let m_r = (1.0 + epsilon) * t_c * (1.0 + 1.0 / g);
    Ok((m_l / (m_l + params.alpha()), m_r / (m_r + params.beta())))
}

/// Smallest fixed point `eta_L` of the composed size-biased pgfs, together
/// with `eta_R`.
///
/// `eta_L` solves `eta = G_R(G_L(eta))` where `G_L` is the pgf of
/// `NB(alpha + 1, p_L)` and `G_R` of `NB(beta + 1, p_R)`; then
/// `eta_R = G_L(eta_L)`. Iterating from 0 converges monotonically to the
/// smallest solution; in the subcritical case that solution is 1.
///
/// Fails if `tol` is not positive or the iteration cap is hit.
pub fn solve_eta(params: &Params, epsilon: f64, tol: f64) -> Result<(f64, f64)> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let (p_l, p_r) = supercritical_probs(params, epsilon)?;
    let gl = NegBin::new(params.alpha() + 1.0, p_l)?;
    let gr = NegBin::new(params.beta() + 1.0, p_r)?;
    let mut eta = 0.0f64;
    for _ in 0..MAX_FIXED_POINT_ITERATIONS {
        let next = gr.pgf(gl.pgf(eta));
        if (next - eta).abs() < tol {
            return Ok((next, gl.pgf(next)));
        }
        eta = next;
    }
    Err(Error::numerical(format!(
        "eta fixed point did not converge to {tol} within {MAX_FIXED_POINT_ITERATIONS} iterations \
         (epsilon = {epsilon})"
    )))
}

/// Full giant-component prediction at `t = (1 + epsilon) t_c (L + R)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GiantPrediction {
    pub t_c: f64,
    pub epsilon: f64,
    #[serde(rename = "p_L")]
    pub p_l: f64,
    #[serde(rename = "p_R")]
    pub p_r: f64,
    #[serde(rename = "eta_L")]
    pub eta_l: f64,
    #[serde(rename = "eta_R")]
    pub eta_r: f64,
    #[serde(rename = "xi_L")]
    pub xi_l: f64,
    #[serde(rename = "xi_R")]
    pub xi_r: f64,
    /// Limit of |largest component| / (L + R).
    pub fraction: f64,
}

/// Predicts the scaled size of the largest component: `xi_side` is the
/// probability that a uniform vertex of that side lies in the giant,
/// `1 - G_side(eta_side)` with `G_side` the pgf of the plain (unshifted)
/// degree law, and the overall fraction weights the sides by their share
/// of the vertices.
pub fn giant_fraction(params: &Params, epsilon: f64) -> Result<GiantPrediction> {
    let (p_l, p_r) = supercritical_probs(params, epsilon)?;
    let (eta_l, eta_r) = solve_eta(params, epsilon, DEFAULT_FIXED_POINT_TOL)?;
    let dl = NegBin::new(params.alpha(), p_l)?;
    let dr = NegBin::new(params.beta(), p_r)?;
    let xi_l = 1.0 - dl.pgf(eta_l);
    let xi_r = 1.0 - dr.pgf(eta_r);
    let g = params.gamma();
    Ok(GiantPrediction {
        t_c: giant_threshold(params),
        epsilon,
        p_l,
        p_r,
        eta_l,
        eta_r,
        xi_l,
        xi_r,
        fraction: (xi_l + g * xi_r) / (1.0 + g),
    })
}

/// `E[shifted-size-biased left degree] * E[shifted-size-biased right degree] - 1`
/// at finite `t`: positive exactly when `t` is past the giant threshold.
pub fn supercriticality_margin(params: &Params, t: u64) -> f64 {
    if t == 0 {
        // Both degree laws are degenerate at zero.
        return -1.0;
    }
    let mean = |side: Side| {
        degree_model(params, t, side)
            .shifted_size_bias()
            .expect("t > 0 gives p > 0")
            .mean()
    };
    mean(Side::Left) * mean(Side::Right) - 1.0
}
