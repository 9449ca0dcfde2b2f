use rand::{Rng, RngCore};

use super::{
    CommitMessage, Committer, Devices, GhzTest, Player, Receiver, RevealMessage, Verdict,
    Verification, COMMITTER_BOX, RECEIVER_BOXES,
};
use crate::{Bit, Error, Result};

fn uniform_bit(rng: &mut dyn RngCore) -> Bit {
    Bit::new(rng.gen::<bool>())
}

/// Follows the commit phase exactly: feed the bit into box 0, draw the mask
/// `a`, send `c = r_A` or `c = r_A ⊕ s_A`.
#[derive(Clone, Debug, Default)]
pub struct HonestCommitter {
    opened: Option<(Bit, Bit, Bit)>,
}

impl HonestCommitter {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Committer for HonestCommitter {
    fn choose_bit(&mut self, rng: &mut dyn RngCore) -> Bit {
        uniform_bit(rng)
    }

    fn commit(
        &mut self,
        bit: Bit,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<CommitMessage> {
        let r_a = devices.query(COMMITTER_BOX, bit, rng)?;
        let a = uniform_bit(rng);
        let c = if a.as_bool() { r_a ^ bit } else { r_a };
        self.opened = Some((bit, r_a, a));
        Ok(CommitMessage { c })
    }

    fn reveal(
        &mut self,
        _receiver_bit: Option<Bit>,
        _devices: &mut dyn Devices,
        _rng: &mut dyn RngCore,
    ) -> Result<RevealMessage> {
        let (s_a, r_a, _) = self.opened.ok_or(Error::OutOfOrder("reveal before commit"))?;
        Ok(RevealMessage { s_a, r_a })
    }

    fn mask_bit(&self) -> Option<Bit> {
        self.opened.map(|(_, _, a)| a)
    }
}

/// Checks the commitment, then runs the GHZ test on boxes 1 and 2 with
/// `(s_B, s_C)` uniform among the two pairs satisfying `s_B ⊕ s_C = 1 ⊕ s_A`.
#[derive(Clone, Debug, Default)]
pub struct HonestReceiver {
    commitment: Option<Bit>,
}

impl HonestReceiver {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Commitment-consistency check: `c = r_A` or `c = r_A ⊕ s_A`.
pub(crate) fn commitment_consistent(c: Bit, reveal: &RevealMessage) -> bool {
    c == reveal.r_a || c == reveal.r_a ^ reveal.s_a
}

impl Receiver for HonestReceiver {
    fn on_commit(
        &mut self,
        msg: CommitMessage,
        _devices: &mut dyn Devices,
        _rng: &mut dyn RngCore,
    ) -> Result<()> {
        self.commitment = Some(msg.c);
        Ok(())
    }

    fn choose_bit(&mut self, rng: &mut dyn RngCore) -> Bit {
        uniform_bit(rng)
    }

    fn verify(
        &mut self,
        reveal: RevealMessage,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<Verification> {
        let c = self
            .commitment
            .ok_or(Error::OutOfOrder("verify before commit"))?;
        if !commitment_consistent(c, &reveal) {
            return Ok(Verification {
                verdict: Verdict::AbortCommitmentMismatch,
                ghz_test: None,
            });
        }
        let s_b = uniform_bit(rng);
        let s_c = s_b ^ Bit::ONE ^ reveal.s_a;
        let r_b = devices.query(RECEIVER_BOXES[0], s_b, rng)?;
        let r_c = devices.query(RECEIVER_BOXES[1], s_c, rng)?;
        let holds = reveal.r_a ^ r_b ^ r_c == (reveal.s_a & s_b & s_c) ^ Bit::ONE;
        Ok(Verification {
            verdict: if holds {
                Verdict::Accept
            } else {
                Verdict::AbortGhzViolation
            },
            ghz_test: Some(GhzTest { s_b, s_c, r_b, r_c }),
        })
    }
}

/// Plays both roles honestly.
#[derive(Clone, Debug, Default)]
pub struct HonestPlayer {
    committer: HonestCommitter,
    receiver: HonestReceiver,
}

impl HonestPlayer {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Player for HonestPlayer {
    fn committer(&mut self) -> &mut dyn Committer {
        &mut self.committer
    }

    fn receiver(&mut self) -> &mut dyn Receiver {
        &mut self.receiver
    }
}
