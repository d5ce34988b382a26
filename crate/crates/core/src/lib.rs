//! Deterministic opinion dynamics on graphs.
//!
//! Five synchronous update rules (r-threshold, r-monotone, α-threshold,
//! α-monotone, majority), certification of dynamos, monotone dynamos,
//! robust and eternal sets, exact minimum-set solvers for small graphs, the
//! extremal graph constructions, and a catalog of bounds to check them
//! against.
//!
//! ```
//! use tdl_core::{construct, solve, ModelSpec, Role};
//!
//! let k6 = construct::complete(6).unwrap();
//! let model: ModelSpec = "rthresh:r=2".parse().unwrap();
//! let best = solve::min_set(&k6, &model, Role::Dynamo, Default::default()).unwrap();
//! assert_eq!(best.minimum_size, 2);
//! assert_eq!(best.witness, vec![0, 1]);
//! ```

pub mod bounds;
pub mod certify;
pub mod config;
pub mod construct;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod io;
mod kernel;
pub mod model;
mod par;
pub mod solve;

pub use bounds::{BoundReport, Target};
pub use certify::{Certificate, Role};
pub use config::Configuration;
pub use dynamics::{simulate, step, Trajectory};
pub use error::{Error, Result};
pub use graph::Graph;
pub use model::{Alpha, ModelSpec};
pub use par::Exec;
pub use solve::{min_set, SolveOptions, SolveResult};
