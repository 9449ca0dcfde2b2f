use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversaries::{
    optimal_alice_ghz, optimal_bob_ghz, AliceCheatStrategy, AliceCheater, BobCheatStrategy,
    BobCheater, CheatGoal, CheatingPlayer,
};
use crate::behaviors::BehaviorTable;
use crate::protocol::{
    run_bc, run_coinflip, run_iterated_coinflip, BcTranscript, Committer, CoinResult, Devices, HonestCommitter,
    HonestPlayer, HonestReceiver, Party, Player, Receiver, TableDevices,
};
use crate::rng::{session_rng, SessionRng};
use crate::{Bit, Error, Result};

/// Empirical frequency of a Bernoulli event.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn new(successes: u64, trials: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        let mean = successes as f64 / trials as f64;
        Ok(Estimate {
            successes,
            trials,
            mean,
            std_error: (mean * (1.0 - mean) / trials as f64).sqrt(),
        })
    }

    /// Binomial standard deviation of the mean under `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Whether the mean lies within `k` standard deviations of `p`; the
    /// deviation is taken under `p`, so `p ∈ {0, 1}` demands exact agreement.
    pub fn agrees_with(&self, p: f64, k: f64) -> bool {
        (self.mean - p).abs() <= k * self.sigma_at(p) + 1e-15
    }
}

/// Runs `trials` independent trials in parallel; trial `i` draws from the
/// stream `(seed, i)`, so the estimate is independent of scheduling.
pub fn monte_carlo<F>(trials: u64, seed: u64, trial: F) -> Result<Estimate>
where
    F: Fn(&mut SessionRng) -> Result<bool> + Sync,
{
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| trial(&mut session_rng(seed, i)).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Estimate::new(successes, trials)
}

fn uniform_bit(rng: &mut dyn RngCore) -> Bit {
    Bit::new(rng.gen::<bool>())
}

/// Cheating Alice against honest Bob, target bit uniform per trial.
pub fn alice_control_mc(strategy: &AliceCheatStrategy, trials: u64, seed: u64) -> Result<Estimate> {
    monte_carlo(trials, seed, |rng| {
        let target = uniform_bit(rng);
        let mut alice = AliceCheater::new(strategy.clone(), CheatGoal::RevealBit(target));
        let mut devices = alice.supply_devices().expect("cheater prepares devices");
        let t = run_bc(&mut alice, &mut HonestReceiver::new(), devices.as_mut(), target, rng)?;
        Ok(t.verdict.is_accept() && t.s_a == target)
    })
}

/// Honest Alice with a uniform bit against cheating Bob.
pub fn bob_gain_mc(strategy: &BobCheatStrategy, trials: u64, seed: u64) -> Result<Estimate> {
    monte_carlo(trials, seed, |rng| {
        let bit = uniform_bit(rng);
        let mut bob = BobCheater::new(strategy.clone(), None);
        let mut devices = bob.supply_devices().expect("cheater prepares devices");
        run_bc(&mut HonestCommitter::new(), &mut bob, devices.as_mut(), bit, rng)?;
        Ok(bob.guess() == Some(bit))
    })
}

fn honest_run(template: &TableDevices, rng: &mut SessionRng) -> Result<BcTranscript> {
    let bit = uniform_bit(rng);
    let mut devices = template.clone();
    run_bc(
        &mut HonestCommitter::new(),
        &mut HonestReceiver::new(),
        &mut devices,
        bit,
        rng,
    )
}

/// Session `index` of [`honest_accept_mc`], reproduced on its own.
pub fn honest_session(template: &TableDevices, seed: u64, index: u64) -> Result<BcTranscript> {
    honest_run(template, &mut session_rng(seed, index))
}

/// Honest parties over `table`, committing a uniform bit; counts accepts.
pub fn honest_accept_mc(table: &BehaviorTable, trials: u64, seed: u64) -> Result<Estimate> {
    let template = TableDevices::new(table.clone())?;
    monte_carlo(trials, seed, |rng| {
        Ok(honest_run(&template, rng)?.verdict.is_accept())
    })
}

/// Outcome counts of repeated single coin flips.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinFlipStats {
    pub zeros: u64,
    pub ones: u64,
    pub aborts: u64,
}

impl CoinFlipStats {
    pub fn trials(&self) -> u64 {
        self.zeros + self.ones + self.aborts
    }

    fn add(self, other: Self) -> Self {
        CoinFlipStats {
            zeros: self.zeros + other.zeros,
            ones: self.ones + other.ones,
            aborts: self.aborts + other.aborts,
        }
    }

    fn record(result: CoinResult) -> Self {
        match result.outcome() {
            Some(b) if b.as_bool() => CoinFlipStats { ones: 1, ..Self::default() },
            Some(_) => CoinFlipStats { zeros: 1, ..Self::default() },
            None => CoinFlipStats { aborts: 1, ..Self::default() },
        }
    }
}

/// Who, if anyone, cheats in a coin-flip simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cheater {
    None,
    Alice,
    Bob,
}

impl Cheater {
    /// The outcome a cheater steers towards: Alice wants 0, Bob wants 1.
    pub fn goal(self) -> Option<Bit> {
        match self {
            Cheater::None => None,
            Cheater::Alice => Some(Bit::ZERO),
            Cheater::Bob => Some(Bit::ONE),
        }
    }

    fn player(self, me: Party) -> Box<dyn Player> {
        match (self, me) {
            (Cheater::Alice, Party::Alice) | (Cheater::Bob, Party::Bob) => Box::new(
                CheatingPlayer::new(optimal_alice_ghz(), optimal_bob_ghz(), self.goal().expect("cheater")),
            ),
            _ => Box::new(HonestPlayer::new()),
        }
    }
}

fn table_factory(template: &TableDevices) -> impl FnMut(usize) -> Result<Box<dyn Devices>> + '_ {
    move |_| Ok(Box::new(template.clone()) as Box<dyn Devices>)
}

/// Single coin flips, Alice committing; cheaters use the optimal GHZ
/// strategies.
pub fn coinflip_mc(table: &BehaviorTable, cheater: Cheater, trials: u64, seed: u64) -> Result<CoinFlipStats> {
    iterated_mc(1, table, cheater, trials, seed)
}

/// `n` chained flips; counts final outcomes and aborts.
pub fn iterated_mc(
    n: usize,
    table: &BehaviorTable,
    cheater: Cheater,
    trials: u64,
    seed: u64,
) -> Result<CoinFlipStats> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let template = TableDevices::new(table.clone())?;
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = session_rng(seed, i);
            let mut alice = cheater.player(Party::Alice);
            let mut bob = cheater.player(Party::Bob);
            let rec = if n == 1 {
                let mut factory = table_factory(&template);
                let (c, r): (&mut dyn Committer, &mut dyn Receiver) = (alice.committer(), bob.receiver());
                let mut devices = match c.supply_devices().or_else(|| r.supply_devices()) {
                    Some(d) => d,
                    None => factory(0)?,
                };
                run_coinflip(c, r, devices.as_mut(), &mut rng)?.result
            } else {
                run_iterated_coinflip(
                    n,
                    alice.as_mut(),
                    bob.as_mut(),
                    &mut table_factory(&template),
                    &mut rng,
                )?
                .result
            };
            Ok(CoinFlipStats::record(rec))
        })
        .try_reduce(CoinFlipStats::default, |a, b| Ok(a.add(b)))
}

/// Frequency with which `cheater` obtains their preferred outcome.
pub fn cheat_success(stats: &CoinFlipStats, cheater: Cheater) -> Result<Estimate> {
    let wins = match cheater.goal() {
        Some(b) if b.as_bool() => stats.ones,
        Some(_) => stats.zeros,
        None => return Err(Error::MalformedStrategy("no cheater".into())),
    };
    Estimate::new(wins, stats.trials())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behaviors::ghz_table;

    #[test]
    fn estimates_are_reproducible() {
        let a = honest_accept_mc(&ghz_table(), 500, 3).unwrap();
        let b = honest_accept_mc(&ghz_table(), 500, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.successes, 500);
        assert!(a.agrees_with(1.0, 3.0));
        let template = TableDevices::new(ghz_table()).unwrap();
        assert_eq!(
            honest_session(&template, 3, 7).unwrap(),
            honest_session(&template, 3, 7).unwrap()
        );
    }

    #[test]
    fn zero_trials_rejected() {
        assert_eq!(monte_carlo(0, 0, |_| Ok(true)).unwrap_err(), Error::NoTrials);
    }

    #[test]
    fn honest_flip_is_balanced() {
        let s = coinflip_mc(&ghz_table(), Cheater::None, 4000, 1).unwrap();
        assert_eq!(s.aborts, 0);
        let e = Estimate::new(s.ones, s.trials()).unwrap();
        assert!(e.agrees_with(0.5, 4.0));
    }
}
