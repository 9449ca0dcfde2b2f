//! Dishonest parties: strategy descriptions, their exact success
//! probabilities, and executable cheaters that plug into the protocol engine.

mod alice;
mod bob;
mod parties;

pub use alice::{
    alice_branch_acceptance, alice_control, control_functional, garbage_reveal, honest_as_cheat,
    optimal_alice_ghz, reveal_acceptance, AliceCheatStrategy, AliceStrategyDescriptor,
    DeterministicAliceReport,
};
pub use bob::{
    bob_gain, bob_gain_by_bit, constant_guess, optimal_bob_ghz, outcome_index,
    AncillaMeasurement, BobCheatStrategy, BobStrategyDescriptor,
};
pub use parties::{AliceCheater, BobCheater, CheatGoal, CheatingPlayer};

use crate::{Error, Result};

/// Names accepted by [`alice_strategy`].
pub const ALICE_STRATEGIES: [&str; 3] = ["ghz-optimal", "honest-as-cheat", "garbage"];

/// Names accepted by [`bob_strategy`].
pub const BOB_STRATEGIES: [&str; 2] = ["ghz-optimal", "constant-guess"];

pub fn alice_strategy(name: &str) -> Result<AliceCheatStrategy> {
    match name {
        "ghz-optimal" => Ok(optimal_alice_ghz()),
        "honest-as-cheat" => Ok(honest_as_cheat()),
        "garbage" => Ok(garbage_reveal()),
        other => Err(Error::MalformedStrategy(format!("unknown Alice strategy {other:?}"))),
    }
}

pub fn bob_strategy(name: &str) -> Result<BobCheatStrategy> {
    match name {
        "ghz-optimal" => Ok(optimal_bob_ghz()),
        "constant-guess" => Ok(constant_guess()),
        other => Err(Error::MalformedStrategy(format!("unknown Bob strategy {other:?}"))),
    }
}
