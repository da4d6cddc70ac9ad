//! Numerical core for turning positive linear time-invariant realizations
//! `(A, B, C)` into phase-type distributions.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values, so it can be shared freely across threads.
//!
//! * [`matnum`]: dense matrices, linear solves, `expm`, powers and power iteration.
//! * [`possys`]: positive SISO realizations, structural checks and simulation.
//! * [`phtype`]: continuous and discrete phase-type distributions.
//! * [`xform`]: realization to CPH/DPH transforms.
//! * [`equiv`]: output equivalence between a system and its phase-type cdf.
//! * [`scenarios`]: builders for the worked examples (student flow, supply chain, ...).
#![no_std]

extern crate alloc;

pub mod equiv;
pub mod error;
pub mod matnum;
pub mod phtype;
pub mod possys;
pub mod scenarios;
pub mod xform;

pub use error::{Error, Result};
pub use matnum::{Matrix, Vector};
pub use phtype::{ContPH, DiscPH, PhaseType, SampleSet};
pub use possys::{Kind, Realization, Trajectory};
pub use xform::{Similarity, TransformResult};
