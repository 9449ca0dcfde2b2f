//! Executable bit-commitment and coin-flipping sessions.
//!
//! Alice's single box is box 0; Bob's two boxes are boxes 1 and 2. In a
//! coin-flipping repetition the committer always holds box 0 and the
//! receiver boxes 1 and 2, whichever party plays which role.

mod devices;
mod honest;
mod session;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::{Bit, Result};

pub use devices::{Devices, QuantumBox, QuantumDevices, TableDevices, LOAD_NO_SIGNALING_TOLERANCE};
pub use honest::{HonestCommitter, HonestPlayer, HonestReceiver};
pub use session::{
    run_bc, run_bc_with_table, run_coinflip, run_iterated_coinflip, BcSession, CoinFlipRecord,
    IteratedRecord, Phase,
};

/// Index of the committer's box.
pub const COMMITTER_BOX: usize = 0;
/// Indices of the receiver's two boxes.
pub const RECEIVER_BOXES: [usize; 2] = [1, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitMessage {
    pub c: Bit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealMessage {
    pub s_a: Bit,
    pub r_a: Bit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    AbortCommitmentMismatch,
    AbortGhzViolation,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }
}

/// Inputs and outputs of the receiver's two boxes in the reveal-phase test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhzTest {
    pub s_b: Bit,
    pub s_c: Bit,
    pub r_b: Bit,
    pub r_c: Bit,
}

/// What the receiver concluded from a reveal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub verdict: Verdict,
    pub ghz_test: Option<GhzTest>,
}

/// Full record of one commit/reveal execution. Receiver-box fields are
/// absent when the receiver did not run the GHZ test (a commitment mismatch
/// aborts first; a dishonest receiver may skip it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcTranscript {
    pub committed_bit: Bit,
    pub a: Option<Bit>,
    pub c: Bit,
    pub s_a: Bit,
    pub r_a: Bit,
    pub s_b: Option<Bit>,
    pub s_c: Option<Bit>,
    pub r_b: Option<Bit>,
    pub r_c: Option<Bit>,
    pub verdict: Verdict,
}

impl BcTranscript {
    /// The three acceptance conditions, evaluated on the recorded values.
    /// Returns `None` when the receiver-box fields are missing.
    pub fn checks_hold(&self) -> Option<bool> {
        let (s_b, s_c, r_b, r_c) = (self.s_b?, self.s_c?, self.r_b?, self.r_c?);
        let commitment = self.c == self.r_a || self.c == self.r_a ^ self.s_a;
        let inputs = s_b ^ s_c == Bit::ONE ^ self.s_a;
        let parity = self.r_a ^ r_b ^ r_c == (self.s_a & s_b & s_c) ^ Bit::ONE;
        Some(commitment && inputs && parity)
    }
}

/// Transcript as written by record/replay: the session plus what is needed
/// to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordedSession {
    pub seed: u64,
    pub session: u64,
    pub table: String,
    #[serde(flatten)]
    pub transcript: BcTranscript,
}

/// Result of one coin flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoinResult {
    Outcome(Bit),
    Aborted { by: Party, verdict: Verdict },
}

impl CoinResult {
    pub fn outcome(self) -> Option<Bit> {
        match self {
            CoinResult::Outcome(b) => Some(b),
            CoinResult::Aborted { .. } => None,
        }
    }
}

/// The committing side of a session. Honest implementations query box 0;
/// dishonest ones may instead measure ancillas of devices they prepared.
pub trait Committer {
    /// The bit to commit to when flipping a coin.
    fn choose_bit(&mut self, rng: &mut dyn RngCore) -> Bit;

    fn commit(
        &mut self,
        bit: Bit,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<CommitMessage>;

    /// `receiver_bit` is the receiver's coin bit when the session is a coin
    /// flip, `None` for plain bit commitment.
    fn reveal(
        &mut self,
        receiver_bit: Option<Bit>,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<RevealMessage>;

    /// The masking bit `a`, when the committer has one to report.
    fn mask_bit(&self) -> Option<Bit> {
        None
    }

    /// Devices this party insists on supplying (a cheater prepares all boxes).
    fn supply_devices(&self) -> Option<Box<dyn Devices>> {
        None
    }
}

/// The verifying side of a session, holding boxes 1 and 2.
pub trait Receiver {
    fn on_commit(
        &mut self,
        msg: CommitMessage,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<()>;

    /// The receiver's coin bit, sent after the commitment arrives.
    fn choose_bit(&mut self, rng: &mut dyn RngCore) -> Bit;

    fn verify(
        &mut self,
        reveal: RevealMessage,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<Verification>;

    fn supply_devices(&self) -> Option<Box<dyn Devices>> {
        None
    }
}

/// A participant in the iterated coin flip, able to play either role.
pub trait Player {
    fn committer(&mut self) -> &mut dyn Committer;
    fn receiver(&mut self) -> &mut dyn Receiver;
}
