//! Experiment configuration shared by all runners.

use serde::{Deserialize, Serialize};

use crate::params::{Params, Side};
use crate::samplers::Variant;

/// What to run and how many times. Fields a given experiment does not use
/// are ignored; fields it needs but that are `None` fall back to the
/// documented defaults of that runner.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub params: Params,
    /// Process variant; each runner has a natural default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub replicas: u32,
    pub master_seed: u64,
    /// Distance from the giant-component threshold, `t = (1 + epsilon) t_c n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Multiple of the connectivity scale, `t = x tau`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    /// Exponent offset for the disconnection experiment, `t = n^(1 + delta)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Side whose degrees are observed, where relevant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    /// Explicit step count, overriding the scale the experiment would
    /// otherwise derive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
}

impl ExperimentConfig {
    pub fn new(params: Params) -> ExperimentConfig {
        ExperimentConfig {
            params,
            variant: None,
            replicas: 100,
            master_seed: 0,
            epsilon: None,
            x: None,
            delta: None,
            side: None,
            t: None,
        }
    }

    pub fn replicas(mut self, replicas: u32) -> Self {
        self.replicas = replicas;
        self
    }

    pub fn master_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn variant(mut self, variant: Variant) -> Self {
        self.variant = Some(variant);
        self
    }

    pub fn epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn x(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn side(mut self, side: Side) -> Self {
        self.side = Some(side);
        self
    }

    pub fn t(mut self, t: u64) -> Self {
        self.t = Some(t);
        self
    }
}
