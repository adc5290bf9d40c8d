//! Quaternion-valued associative memories.
//!
//! Three families of recurrent networks on the unit quaternion hypersphere:
//!
//! - continuous-valued quaternionic Hopfield networks with Hebbian or projection weights,
//! - quaternionic recurrent correlation networks (QRCNN),
//! - quaternionic recurrent projection networks (QRPNN).
//!
//! The [`experiments`] module holds a seeded Monte-Carlo harness that measures
//! recall probability against input noise.

pub mod error;
pub mod experiments;
pub mod linalg;
pub mod models;
pub mod quaternion;

pub use error::{Error, Result};
pub use models::{
    ActivationKernel, FundamentalMemorySet, NetworkState, RunOutcome, TrainedMemory, UpdateMode,
};
pub use quaternion::Quaternion;
