//! Model parameters and side bookkeeping.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two vertex classes of the bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            other => Err(Error::invalid(format!(
                "side must be 'left' or 'right', got '{other}'"
            ))),
        }
    }
}

/// Parameters of the evolution: attachment weights `alpha` (left) and
/// `beta` (right), and the two part sizes.
///
/// Both weights must be positive and finite; both parts must be non-empty.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Params {
    alpha: f64,
    beta: f64,
    left_count: u32,
    right_count: u32,
}

// Hand-written so deserialized parameters go through the same validation
// as [`Params::new`].
impl<'de> Deserialize<'de> for Params {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Params, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            alpha: f64,
            beta: f64,
            left_count: u32,
            right_count: u32,
        }
        let raw = Raw::deserialize(deserializer)?;
        Params::new(raw.alpha, raw.beta, raw.left_count, raw.right_count)
            .map_err(serde::de::Error::custom)
    }
}

impl Params {
    pub fn new(alpha: f64, beta: f64, left_count: u32, right_count: u32) -> Result<Params> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::invalid(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::invalid(format!("beta must be positive, got {beta}")));
        }
        if left_count == 0 || right_count == 0 {
            return Err(Error::invalid("both parts must be non-empty"));
        }
        Ok(Params { alpha, beta, left_count, right_count })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn left_count(&self) -> u32 {
        self.left_count
    }

    pub fn right_count(&self) -> u32 {
        self.right_count
    }

    /// Total number of vertices `L + R`.
    pub fn total_count(&self) -> u64 {
        u64::from(self.left_count) + u64::from(self.right_count)
    }

    /// Part-size ratio `R / L`.
    pub fn gamma(&self) -> f64 {
        f64::from(self.right_count) / f64::from(self.left_count)
    }

    /// Attachment weight of `side`: `alpha` on the left, `beta` on the right.
    pub fn rho(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.alpha,
            Side::Right => self.beta,
        }
    }

    /// Size factor of `side`: `(L + R) / |side|`, i.e. `1 + gamma` on the
    /// left and `1 + 1/gamma` on the right.
    pub fn zeta(&self, side: Side) -> f64 {
        match side {
            Side::Left => 1.0 + self.gamma(),
            Side::Right => 1.0 + 1.0 / self.gamma(),
        }
    }

    pub fn side_count(&self, side: Side) -> u32 {
        match side {
            Side::Left => self.left_count,
            Side::Right => self.right_count,
        }
    }

    /// The side whose attachment weight is smaller (left on ties). Sparse
    /// events such as late isolated vertices concentrate on this side.
    pub fn bottleneck_side(&self) -> Side {
        if self.alpha <= self.beta {
            Side::Left
        } else {
            Side::Right
        }
    }
}
