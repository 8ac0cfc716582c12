//! Seeded replica experiments comparing simulation against the theory
//! module, with CSV/JSON reports and explicit pass/fail gates.

mod config;
mod report;
mod runners;
pub mod stats;

pub use config::ExperimentConfig;
pub use report::{ExperimentReport, GateCheck, ReplicaRow};
pub use runners::{
    run_connectivity, run_degrees, run_giant, run_isolated, run_sg_disconnect,
};
