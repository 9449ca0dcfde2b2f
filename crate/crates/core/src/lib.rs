//! Simulation and security analysis of device-independent bit commitment
//! and coin flipping built on the three-party GHZ paradox.
//!
//! The crate is layered bottom-up:
//!
//! * [`quantum`]: exact pure-state mechanics for up to three qubits.
//! * [`behaviors`]: black-box conditional distributions `P(r | s)` for
//!   binary-input/binary-output boxes, with quantum, local-deterministic and
//!   PR-box constructors.
//! * [`protocol`]: executable commit/reveal and coin-flipping sessions.
//! * [`adversaries`]: dishonest parties and exact evaluation of their success.
//! * [`analysis`]: independent derivations of every security bound.

pub mod adversaries;
pub mod analysis;
pub mod behaviors;
mod bit;
mod error;
pub mod protocol;
pub mod quantum;
pub mod rng;

pub use bit::Bit;
pub use error::{Error, Result};

/// `cos²(π/8)`: the maximal CHSH winning probability for quantum boxes.
pub const TSIRELSON_WIN_PROBABILITY: f64 = 0.853_553_390_593_273_8;

/// Bob's maximal information gain against the commitment.
pub const NO_SIGNALING_GAIN: f64 = 0.75;

/// Maximal fraction of GHZ input triples a local deterministic model satisfies.
pub const CLASSICAL_GHZ_VALUE: f64 = 0.75;

/// Reference values of prior device-dependent constructions. Documentation
/// only; nothing in the crate derives them.
pub mod reference {
    /// Control and gain of the best known trusted-device bit commitment.
    pub const DEVICE_DEPENDENT_BC: f64 = 0.75;
    /// Optimal strong coin-flipping bias with trusted devices.
    pub const DEVICE_DEPENDENT_COIN_BIAS: f64 = 0.207;
}
