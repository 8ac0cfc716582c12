//! Negative-binomial distribution with real shape parameter.
//!
//! `NegBin { shape, p }` puts mass
//! `pmf(k) = (shape)_k / k! * (1 - p)^shape * p^k` on `k = 0, 1, 2, ...`
//! where `(shape)_k` is the rising factorial. With `shape = 1` this is the
//! geometric law. The degree of a fixed vertex in the multigraph process is
//! of exactly this form, which is why the pgf and the shifted size-bias
//! transform below carry the whole giant-component analysis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Params, Side};
use crate::theory::rising::{log_factorial, log_rising_factorial};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NegBin {
    shape: f64,
    p: f64,
}

impl NegBin {
    /// `shape` must be positive and finite; `p` lies in `[0, 1)`. `p = 0`
    /// is the point mass at zero.
    pub fn new(shape: f64, p: f64) -> Result<NegBin> {
        if !(shape.is_finite() && shape > 0.0) {
            return Err(Error::invalid(format!("shape must be positive, got {shape}")));
        }
        if !(p.is_finite() && (0.0..1.0).contains(&p)) {
            return Err(Error::invalid(format!("p must lie in [0, 1), got {p}")));
        }
        Ok(NegBin { shape, p })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn pmf(&self, k: u64) -> f64 {
        if self.p == 0.0 {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        let log = log_rising_factorial(self.shape, k).expect("shape is positive")
            - log_factorial(k)
            + self.shape * (1.0 - self.p).ln()
            + k as f64 * self.p.ln();
        log.exp()
    }

    /// Probability generating function `E[z^Y] = ((1-p) / (1-pz))^shape`,
    /// for `z` in `[0, 1]`.
    pub fn pgf(&self, z: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&z), "pgf evaluated outside [0, 1]: {z}");
        ((1.0 - self.p) / (1.0 - self.p * z)).powf(self.shape)
    }

    pub fn mean(&self) -> f64 {
        self.shape * self.p / (1.0 - self.p)
    }

    /// Falling-factorial moment `E[Y (Y-1) ... (Y-k+1)] = (shape)_k (p/(1-p))^k`.
    ///
    /// Equivalently `(EY)^k * prod_{j=1}^{k-1} (1 + j/shape)`: differentiating
    /// the pgf `k` times at 1 gives `(shape)_k (p/(1-p))^k`, and dividing by
    /// `mean^k = shape^k (p/(1-p))^k` leaves `prod_{j=0}^{k-1} (shape+j)/shape`,
    /// whose `j = 0` factor is 1. (A product running to `j = k` would already
    /// fail the `k = 1` case, where the moment must reduce to the mean.)
    pub fn falling_moment(&self, k: u32) -> f64 {
        let r = self.p / (1.0 - self.p);
        let mut acc = 1.0;
        for j in 0..k {
            acc *= (self.shape + j as f64) * r;
        }
        acc
    }

    /// The shifted size-bias transform: if `Y ~ NB(shape, p)` with positive
    /// mean, the size-biased variable minus one is `NB(shape + 1, p)`.
    /// Undefined when `p = 0` (mass degenerate at zero).
    pub fn shifted_size_bias(&self) -> Result<NegBin> {
        if self.p == 0.0 {
            return Err(Error::invalid(
                "size-bias of a distribution degenerate at zero is undefined",
            ));
        }
        NegBin::new(self.shape + 1.0, self.p)
    }
}

/// Degree law of a fixed vertex on `side` after `t` steps of the
/// multigraph process: `NB(rho(side), t / (t + rho(side) |side|))`.
///
/// Exact for each fixed vertex at every finite `t` (not only in the limit);
/// the degrees within one side are exchangeable but not independent.
pub fn degree_model(params: &Params, t: u64, side: Side) -> NegBin {
    let rho = params.rho(side);
    let n = f64::from(params.side_count(side));
    let t = t as f64;
    NegBin::new(rho, t / (t + rho * n)).expect("parameters validated on construction")
}
