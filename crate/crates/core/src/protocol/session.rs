use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{
    BcTranscript, CoinResult, CommitMessage, Committer, Devices, HonestCommitter, HonestReceiver,
    Party, Player, Receiver, TableDevices,
};
use crate::behaviors::BehaviorTable;
use crate::rng::session_rng;
use crate::{Bit, Error, Result};

/// Where a session stands. Messages must arrive in this order; the receiver
/// bit is only exchanged when the session is a coin flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    AwaitingCommit,
    Committed,
    ReceiverBitSent,
    Finished,
}

/// One commit/reveal execution between two parties over shared devices.
pub struct BcSession<'a> {
    committer: &'a mut dyn Committer,
    receiver: &'a mut dyn Receiver,
    devices: &'a mut dyn Devices,
    phase: Phase,
    committed_bit: Bit,
    commitment: Option<CommitMessage>,
    receiver_bit: Option<Bit>,
}

impl<'a> BcSession<'a> {
    pub fn new(
        committer: &'a mut dyn Committer,
        receiver: &'a mut dyn Receiver,
        devices: &'a mut dyn Devices,
    ) -> Self {
        BcSession {
            committer,
            receiver,
            devices,
            phase: Phase::AwaitingCommit,
            committed_bit: Bit::ZERO,
            commitment: None,
            receiver_bit: None,
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Commit phase: the committer sends `c` and the receiver records it.
    pub fn commit(&mut self, bit: Bit, rng: &mut dyn RngCore) -> Result<CommitMessage> {
        if self.phase != Phase::AwaitingCommit {
            return Err(Error::OutOfOrder("commit sent twice"));
        }
        let msg = self.committer.commit(bit, self.devices, rng)?;
        self.receiver.on_commit(msg, self.devices, rng)?;
        self.committed_bit = bit;
        self.commitment = Some(msg);
        self.phase = Phase::Committed;
        Ok(msg)
    }

    /// Coin flipping only: the receiver's bit, strictly after `c`.
    pub fn send_receiver_bit(&mut self, rng: &mut dyn RngCore) -> Result<Bit> {
        if self.phase != Phase::Committed {
            return Err(Error::OutOfOrder("receiver bit must follow the commitment"));
        }
        let b = self.receiver.choose_bit(rng);
        self.receiver_bit = Some(b);
        self.phase = Phase::ReceiverBitSent;
        Ok(b)
    }

    /// Reveal phase and verification.
    pub fn reveal(&mut self, rng: &mut dyn RngCore) -> Result<BcTranscript> {
        if !matches!(self.phase, Phase::Committed | Phase::ReceiverBitSent) {
            return Err(Error::OutOfOrder("reveal requires a commitment"));
        }
        let commitment = self.commitment.expect("committed phase holds a commitment");
        let reveal = self.committer.reveal(self.receiver_bit, self.devices, rng)?;
        let verification = self.receiver.verify(reveal, self.devices, rng)?;
        self.phase = Phase::Finished;
        let test = verification.ghz_test;
        Ok(BcTranscript {
            committed_bit: self.committed_bit,
            a: self.committer.mask_bit(),
            c: commitment.c,
            s_a: reveal.s_a,
            r_a: reveal.r_a,
            s_b: test.map(|t| t.s_b),
            s_c: test.map(|t| t.s_c),
            r_b: test.map(|t| t.r_b),
            r_c: test.map(|t| t.r_c),
            verdict: verification.verdict,
        })
    }

    pub fn receiver_bit(&self) -> Option<Bit> {
        self.receiver_bit
    }
}

/// Runs the full commit/reveal protocol for `bit`.
pub fn run_bc(
    committer: &mut dyn Committer,
    receiver: &mut dyn Receiver,
    devices: &mut dyn Devices,
    bit: Bit,
    rng: &mut dyn RngCore,
) -> Result<BcTranscript> {
    let mut session = BcSession::new(committer, receiver, devices);
    session.commit(bit, rng)?;
    session.reveal(rng)
}

/// Honest commit/reveal over a behavior table, seeded. Signaling tables are
/// rejected before anything runs.
pub fn run_bc_with_table(table: &BehaviorTable, bit: Bit, seed: u64) -> Result<BcTranscript> {
    let mut devices = TableDevices::new(table.clone())?;
    let mut rng = session_rng(seed, 0);
    run_bc(
        &mut HonestCommitter::new(),
        &mut HonestReceiver::new(),
        &mut devices,
        bit,
        &mut rng,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinFlipRecord {
    pub committer: Party,
    pub transcript: BcTranscript,
    pub receiver_bit: Bit,
    pub result: CoinResult,
}

fn flip(
    committer_party: Party,
    committer: &mut dyn Committer,
    receiver: &mut dyn Receiver,
    devices: &mut dyn Devices,
    rng: &mut dyn RngCore,
) -> Result<CoinFlipRecord> {
    let bit = committer.choose_bit(rng);
    let mut session = BcSession::new(committer, receiver, devices);
    session.commit(bit, rng)?;
    let b = session.send_receiver_bit(rng)?;
    let transcript = session.reveal(rng)?;
    let result = if transcript.verdict.is_accept() {
        CoinResult::Outcome(transcript.s_a ^ b)
    } else {
        CoinResult::Aborted {
            by: committer_party.other(),
            verdict: transcript.verdict,
        }
    };
    Ok(CoinFlipRecord {
        committer: committer_party,
        transcript,
        receiver_bit: b,
        result,
    })
}

/// Coin flipping from bit commitment: Alice commits to a bit, Bob answers
/// with his bit after seeing `c`, Alice reveals, the coin is `a ⊕ b`.
pub fn run_coinflip(
    committer: &mut dyn Committer,
    receiver: &mut dyn Receiver,
    devices: &mut dyn Devices,
    rng: &mut dyn RngCore,
) -> Result<CoinFlipRecord> {
    flip(Party::Alice, committer, receiver, devices, rng)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IteratedRecord {
    pub rounds: Vec<CoinFlipRecord>,
    pub result: CoinResult,
}

/// `n` chained coin flips. Alice commits first; after each round outcome 0
/// hands the next commitment to Alice and outcome 1 to Bob. The last round's
/// outcome is the result and any abort ends the chain.
///
/// Devices for a round come from a cheating committer, else a cheating
/// receiver, else `honest_devices(round)`.
pub fn run_iterated_coinflip(
    n: usize,
    alice: &mut dyn Player,
    bob: &mut dyn Player,
    honest_devices: &mut dyn FnMut(usize) -> Result<Box<dyn Devices>>,
    rng: &mut dyn RngCore,
) -> Result<IteratedRecord> {
    if n == 0 {
        return Err(Error::NoRepetitions);
    }
    let mut rounds = Vec::with_capacity(n);
    let mut committer_party = Party::Alice;
    for round in 0..n {
        let (committer, receiver) = match committer_party {
            Party::Alice => (alice.committer(), bob.receiver()),
            Party::Bob => (bob.committer(), alice.receiver()),
        };
        let mut devices = match committer
            .supply_devices()
            .or_else(|| receiver.supply_devices())
        {
            Some(d) => d,
            None => honest_devices(round)?,
        };
        let record = flip(committer_party, committer, receiver, devices.as_mut(), rng)?;
        let result = record.result;
        rounds.push(record);
        match result {
            CoinResult::Aborted { .. } => return Ok(IteratedRecord { rounds, result }),
            CoinResult::Outcome(o) => {
                committer_party = if o.as_bool() { Party::Bob } else { Party::Alice };
            }
        }
    }
    let result = rounds.last().expect("n >= 1").result;
    Ok(IteratedRecord { rounds, result })
}
