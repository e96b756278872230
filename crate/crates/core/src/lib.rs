//! Random graphs on a ring whose edge probabilities decay with distance.
//!
//! The family interpolates between the Erdős–Rényi graph (`alpha = 0`),
//! long-range percolation (`alpha > 1`) and nearest-neighbour bond
//! percolation (`alpha = inf`). Every model is normalised so that the
//! expected vertex degree equals `c`.
//!
//! The crate provides exact edge probabilities ([`model`]), samplers
//! ([`sampler`]), connectivity analysis ([`components`]), Galton–Watson
//! survival probabilities ([`branching`]) and Monte Carlo drivers
//! ([`experiments`]). Replicates run on rayon when the `parallel` feature is
//! enabled and sequentially otherwise; results are identical either way.

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod branching;
pub mod cli;
pub mod components;
mod error;
pub mod experiments;
pub mod io;
pub mod model;
pub mod par;
pub mod rng;
pub mod sampler;

pub use error::{Error, Result};
pub use model::{EdgeModel, KernelSpec, ModelParams, Normalizer};
pub use sampler::{Filtration, Graph};
