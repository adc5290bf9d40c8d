//! Hopfield, recurrent correlation and recurrent projection networks on unit quaternions.

mod kernel;
mod memory;
mod network;

pub use kernel::{ActivationKernel, DEFAULT_EPSILON_P};
pub use memory::FundamentalMemorySet;
pub use network::{
    kernel_weights, run, step, train_hebbian, train_projection, train_qrcnn, train_qrpnn,
    HopfieldRule, ModelKind, NetworkState, RunOutcome, TrainedMemory, UpdateMode,
    DEFAULT_MAX_ITERS, DEFAULT_TOL,
};
