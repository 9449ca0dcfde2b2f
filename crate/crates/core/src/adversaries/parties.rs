use rand::{Rng, RngCore};

use super::{AliceCheatStrategy, BobCheatStrategy};
use crate::bit::bits_to_index;
use crate::protocol::{
    CommitMessage, Committer, Devices, Player, QuantumBox, QuantumDevices, Receiver,
    RevealMessage, Verdict, Verification, COMMITTER_BOX, RECEIVER_BOXES,
};
use crate::{Bit, Error, Result};

/// What a cheating committer tries to open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheatGoal {
    /// Plain commitment: open this bit.
    RevealBit(Bit),
    /// Coin flipping: open whatever makes `s_A ⊕ b` equal this outcome.
    CoinOutcome(Bit),
}

/// Runs an [`AliceCheatStrategy`] as the committer of a session.
#[derive(Clone, Debug)]
pub struct AliceCheater {
    strategy: AliceCheatStrategy,
    goal: CheatGoal,
    outcome: Option<Bit>,
}

impl AliceCheater {
    pub fn new(strategy: AliceCheatStrategy, goal: CheatGoal) -> Self {
        AliceCheater {
            strategy,
            goal,
            outcome: None,
        }
    }

    pub fn set_goal(&mut self, goal: CheatGoal) {
        self.goal = goal;
    }
}

impl Committer for AliceCheater {
    fn choose_bit(&mut self, _rng: &mut dyn RngCore) -> Bit {
        // nothing is really committed
        Bit::ZERO
    }

    fn commit(
        &mut self,
        _bit: Bit,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<CommitMessage> {
        let o = devices.measure_ancilla(0, self.strategy.alice_measurement(), rng)?;
        self.outcome = Some(o);
        Ok(CommitMessage {
            c: self.strategy.commit_for(o),
        })
    }

    fn reveal(
        &mut self,
        receiver_bit: Option<Bit>,
        _devices: &mut dyn Devices,
        _rng: &mut dyn RngCore,
    ) -> Result<RevealMessage> {
        let o = self.outcome.ok_or(Error::OutOfOrder("reveal before commit"))?;
        let target = match (self.goal, receiver_bit) {
            (CheatGoal::RevealBit(t), _) => t,
            (CheatGoal::CoinOutcome(want), Some(b)) => want ^ b,
            (CheatGoal::CoinOutcome(_), None) => {
                return Err(Error::OutOfOrder("coin goal needs the receiver's bit"))
            }
        };
        Ok(self.strategy.reveal_for(o, target))
    }

    fn supply_devices(&self) -> Option<Box<dyn Devices>> {
        let b = self.strategy.bob_boxes();
        let boxes = vec![
            QuantumBox {
                box_id: RECEIVER_BOXES[0],
                qubit: 1,
                assignment: b[0],
            },
            QuantumBox {
                box_id: RECEIVER_BOXES[1],
                qubit: 2,
                assignment: b[1],
            },
        ];
        let devices = QuantumDevices::new(self.strategy.prepared_state().clone(), boxes, vec![0])
            .expect("strategy layout is validated");
        Some(Box::new(devices))
    }
}

/// Runs a [`BobCheatStrategy`] as the receiver of a session. He checks the
/// commitment but holds no honest boxes, so he never runs the GHZ test.
#[derive(Clone, Debug)]
pub struct BobCheater {
    strategy: BobCheatStrategy,
    goal: Option<Bit>,
    commitment: Option<Bit>,
    guess: Option<Bit>,
}

impl BobCheater {
    /// `goal` is the coin outcome he steers towards, if any.
    pub fn new(strategy: BobCheatStrategy, goal: Option<Bit>) -> Self {
        BobCheater {
            strategy,
            goal,
            commitment: None,
            guess: None,
        }
    }

    /// His guess of the committed bit, available after the commit phase.
    pub fn guess(&self) -> Option<Bit> {
        self.guess
    }
}

impl Receiver for BobCheater {
    fn on_commit(
        &mut self,
        msg: CommitMessage,
        devices: &mut dyn Devices,
        rng: &mut dyn RngCore,
    ) -> Result<()> {
        let meas = self.strategy.measurement(msg.c).clone();
        let mut outcomes = Vec::with_capacity(meas.settings.len());
        for (q, d) in &meas.settings {
            outcomes.push(devices.measure_ancilla(*q, d, rng)?);
        }
        let result = meas.result_map[bits_to_index(&outcomes)];
        self.commitment = Some(msg.c);
        self.guess = Some(self.strategy.guess(msg.c, result));
        Ok(())
    }

    fn choose_bit(&mut self, rng: &mut dyn RngCore) -> Bit {
        match (self.goal, self.guess) {
            (Some(want), Some(g)) => want ^ g,
            _ => Bit::new(rng.gen::<bool>()),
        }
    }

    fn verify(
        &mut self,
        reveal: RevealMessage,
        _devices: &mut dyn Devices,
        _rng: &mut dyn RngCore,
    ) -> Result<Verification> {
        let c = self
            .commitment
            .ok_or(Error::OutOfOrder("verify before commit"))?;
        let verdict = if c == reveal.r_a || c == reveal.r_a ^ reveal.s_a {
            Verdict::Accept
        } else {
            Verdict::AbortCommitmentMismatch
        };
        Ok(Verification {
            verdict,
            ghz_test: None,
        })
    }

    fn supply_devices(&self) -> Option<Box<dyn Devices>> {
        let boxes = vec![QuantumBox {
            box_id: COMMITTER_BOX,
            qubit: 0,
            assignment: *self.strategy.alice_box(),
        }];
        let devices = QuantumDevices::new(
            self.strategy.joint_state().clone(),
            boxes,
            self.strategy.ancillas(),
        )
        .expect("strategy layout is validated");
        Some(Box::new(devices))
    }
}

/// A player who cheats in both roles towards the same coin outcome.
#[derive(Clone, Debug)]
pub struct CheatingPlayer {
    committer: AliceCheater,
    receiver: BobCheater,
}

impl CheatingPlayer {
    pub fn new(
        as_committer: AliceCheatStrategy,
        as_receiver: BobCheatStrategy,
        goal: Bit,
    ) -> Self {
        CheatingPlayer {
            committer: AliceCheater::new(as_committer, CheatGoal::CoinOutcome(goal)),
            receiver: BobCheater::new(as_receiver, Some(goal)),
        }
    }
}

impl Player for CheatingPlayer {
    fn committer(&mut self) -> &mut dyn Committer {
        &mut self.committer
    }

    fn receiver(&mut self) -> &mut dyn Receiver {
        &mut self.receiver
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::{optimal_alice_ghz, optimal_bob_ghz};
    use crate::protocol::{run_bc, HonestCommitter, HonestReceiver};
    use crate::rng::session_rng;

    #[test]
    fn cheating_alice_always_sends_consistent_opening() {
        let mut rng = session_rng(8, 0);
        for t in 0..400 {
            let target = Bit::new(t % 2 == 0);
            let mut alice = AliceCheater::new(optimal_alice_ghz(), CheatGoal::RevealBit(target));
            let mut devices = alice.supply_devices().unwrap();
            let mut bob = HonestReceiver::new();
            let tr = run_bc(&mut alice, &mut bob, devices.as_mut(), Bit::ZERO, &mut rng).unwrap();
            assert_eq!(tr.s_a, target);
            assert_ne!(tr.verdict, Verdict::AbortCommitmentMismatch);
            if tr.verdict == Verdict::Accept {
                assert_eq!(tr.checks_hold(), Some(true));
            }
        }
    }

    #[test]
    fn cheating_bob_is_always_right_when_alice_commits_zero() {
        let mut rng = session_rng(9, 0);
        for _ in 0..200 {
            let mut bob = BobCheater::new(optimal_bob_ghz(), None);
            let mut devices = bob.supply_devices().unwrap();
            let mut alice = HonestCommitter::new();
            let tr = run_bc(&mut alice, &mut bob, devices.as_mut(), Bit::ZERO, &mut rng).unwrap();
            assert_eq!(tr.verdict, Verdict::Accept);
            assert_eq!(bob.guess(), Some(Bit::ZERO));
        }
    }
}
