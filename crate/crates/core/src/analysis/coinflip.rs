use std::time::Instant;

use super::{BoundReport, Method, Quantity};
use crate::{Error, Result, NO_SIGNALING_GAIN, TSIRELSON_WIN_PROBABILITY};

/// `(C_n, R_n)`: a cheater's winning probability after `n` chained flips
/// when the first round has them committing (`C`) or receiving (`R`).
/// `control` bounds a cheating committer, `gain` a cheating receiver.
pub fn iterated_values(n: usize, control: f64, gain: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::NoRepetitions);
    }
    let (mut c, mut r) = (control, gain);
    for _ in 1..n {
        (c, r) = (control * c + (1.0 - control) * r, gain * c + (1.0 - gain) * r);
    }
    Ok((c, r))
}

/// Fixed point of the recurrence, `g / (g + 1 − c)`.
pub fn iterated_limit(control: f64, gain: f64) -> f64 {
    gain / (gain + 1.0 - control)
}

/// Upper bounds on Alice's and Bob's cheating probability over `n`
/// repetitions with the quantum control and gain.
pub fn iterated_bias(n: usize) -> Result<(BoundReport, BoundReport)> {
    let started = Instant::now();
    let (c, r) = iterated_values(n, TSIRELSON_WIN_PROBABILITY, NO_SIGNALING_GAIN)?;
    let report = |q, v| {
        BoundReport::new(q, v, Method::Recurrence, 1e-12).map(|b| b.with_runtime(started))
    };
    Ok((
        report(Quantity::IteratedBiasAlice(n), c)?,
        report(Quantity::IteratedBiasBob(n), r)?,
    ))
}

/// One row of the bias table: `(n, Alice bound, Bob bound, max bias)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BiasRow {
    pub n: usize,
    pub alice: f64,
    pub bob: f64,
    pub max_bias: f64,
}

pub fn bias_table(max_n: usize) -> Result<Vec<BiasRow>> {
    (1..=max_n)
        .map(|n| {
            let (alice, bob) = iterated_values(n, TSIRELSON_WIN_PROBABILITY, NO_SIGNALING_GAIN)?;
            Ok(BiasRow {
                n,
                alice,
                bob,
                max_bias: alice.max(bob) - 0.5,
            })
        })
        .collect()
}
