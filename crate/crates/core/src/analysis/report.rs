use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which security quantity a report bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Quantity {
    ClassicalGhz,
    AliceControl,
    BobGain,
    PrControl,
    IteratedBiasAlice(usize),
    IteratedBiasBob(usize),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::ClassicalGhz => f.write_str("classical_ghz"),
            Quantity::AliceControl => f.write_str("alice_control"),
            Quantity::BobGain => f.write_str("bob_gain"),
            Quantity::PrControl => f.write_str("pr_control"),
            Quantity::IteratedBiasAlice(n) => write!(f, "iterated_bias_alice({n})"),
            Quantity::IteratedBiasBob(n) => write!(f, "iterated_bias_bob({n})"),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Io(format!("unknown quantity {s:?}"));
        let with_n = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        Ok(match s {
            "classical_ghz" => Quantity::ClassicalGhz,
            "alice_control" => Quantity::AliceControl,
            "bob_gain" => Quantity::BobGain,
            "pr_control" => Quantity::PrControl,
            _ => {
                if let Some(n) = with_n("iterated_bias_alice(") {
                    Quantity::IteratedBiasAlice(n)
                } else if let Some(n) = with_n("iterated_bias_bob(") {
                    Quantity::IteratedBiasBob(n)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl From<Quantity> for String {
    fn from(q: Quantity) -> Self {
        q.to_string()
    }
}

impl TryFrom<String> for Quantity {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    VertexEnumeration,
    NumericOptimization,
    Recurrence,
    ClosedForm,
}

/// A computed security quantity with how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: Quantity,
    pub value: f64,
    pub method: Method,
    pub tolerance: f64,
    pub runtime_ms: f64,
}

impl BoundReport {
    pub fn new(quantity: Quantity, value: f64, method: Method, tolerance: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::OutOfRange {
                name: "bound value",
                value,
                min: 0.0,
                max: 1.0,
            });
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::OutOfRange {
                name: "tolerance",
                value: tolerance,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            });
        }
        Ok(BoundReport {
            quantity,
            value,
            method,
            tolerance,
            runtime_ms: 0.0,
        })
    }

    /// Cheating advantage over a fair coin, `value − ½`.
    pub fn bias(&self) -> f64 {
        self.value - 0.5
    }

    pub fn with_runtime(mut self, started: Instant) -> Self {
        self.runtime_ms = started.elapsed().as_secs_f64() * 1e3;
        self
    }
}

/// CSV header: `quantity,value,method,tolerance,runtime_ms`.
pub fn write_csv<W: Write>(reports: &[BoundReport], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for r in reports {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}
