//! Monte Carlo benchmarks, scene files and the planning loop behind the
//! `ccd-bench` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod avoid;
pub mod error;
pub mod forest;
pub mod random_sphere;
pub mod report;
pub mod rng;
pub mod scene;

pub use error::{BenchError, Result};
