//! Bipartite random graphs evolving by degrees.
//!
//! A bipartite (multi)graph on parts `L` and `R` grows one edge per step:
//! the pair `(u, v)` is chosen with probability proportional to
//! `(deg u + alpha) * (deg v + beta)`. The *simple* variant restricts the
//! choice to currently non-adjacent pairs; the *multigraph* variant does not
//! and factorizes into two independent urn processes, one per side.
//!
//! The crate provides:
//!
//! * [`graph`] — the multigraph container, component summaries, traces;
//! * [`samplers`] — exact seeded samplers for both variants, the bipartite
//!   configuration model, and a continuous-time birth embedding;
//! * [`theory`] — negative-binomial degree laws, the giant-component
//!   threshold and fixed point, connectivity limits, and exact log-space
//!   probability formulas;
//! * [`oracle`] — brute-force enumeration of the exact process law on tiny
//!   instances, used to certify the samplers and the closed forms;
//! * [`experiments`] — seeded replica harnesses comparing simulation
//!   against the theory module, with CSV/JSON reports.
//!
//! ```
//! use bevolve::{Params, samplers, theory};
//!
//! let params = Params::new(1.0, 1.0, 1000, 1000).unwrap();
//! let trace = samplers::sample_multigraph_process(&params, 500, 7);
//! let graph = trace.replay().unwrap();
//! assert_eq!(graph.edge_count(), 500);
//!
//! // Critical edge density for the emergence of a giant component.
//! let t_c = theory::giant_threshold(&params);
//! assert!((t_c - 0.25).abs() < 1e-12);
//! ```

pub mod error;
pub mod experiments;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod samplers;
pub mod theory;
pub mod trace;
mod util;

pub use error::{Error, Result};
pub use graph::{BipartiteMultigraph, ComponentSummary};
pub use params::{Params, Side};
pub use samplers::Variant;
pub use trace::Trace;

// The book's code samples double as doc-tests so the guide cannot drift
// out of sync with the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/degrees.md")]
    mod degrees {}
    #[doc = include_str!("../../../book/src/giant-component.md")]
    mod giant_component {}
    #[doc = include_str!("../../../book/src/connectivity.md")]
    mod connectivity {}
    #[doc = include_str!("../../../book/src/exact-laws.md")]
    mod exact_laws {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
