use serde::{Deserialize, Serialize};

use crate::behaviors::{BehaviorTable, GHZ_ASSIGNMENT};
use crate::bit::{bits_to_index, index_to_bits};
use crate::quantum::{ghz_state, joint_probability, BlochDirection, Setting, StateVector};
use crate::{Bit, Error, Result};

/// Projective measurement of some of Bob's ancillas, coarse-grained to one
/// bit through `result_map` (indexed by the outcome tuple, first setting most
/// significant).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AncillaMeasurement {
    pub settings: Vec<(usize, BlochDirection)>,
    pub result_map: Vec<Bit>,
}

impl AncillaMeasurement {
    /// Measure each listed qubit; the result is the parity of the outcomes.
    pub fn parity(settings: Vec<(usize, BlochDirection)>) -> Self {
        let k = settings.len();
        let result_map = (0..1usize << k)
            .map(|i| Bit::new(i.count_ones() % 2 == 1))
            .collect();
        AncillaMeasurement {
            settings,
            result_map,
        }
    }

    fn validate(&self, qubits: usize) -> Result<()> {
        let mut seen = vec![false; qubits];
        for &(q, _) in &self.settings {
            if q == 0 || q >= qubits {
                return Err(Error::MalformedStrategy(format!(
                    "qubit {q} is not one of Bob's ancillas"
                )));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        if self.result_map.len() != 1 << self.settings.len() {
            return Err(Error::MalformedStrategy(format!(
                "result map has {} entries for {} settings",
                self.result_map.len(),
                self.settings.len()
            )));
        }
        Ok(())
    }
}

/// A dishonest receiver who hands Alice a box entangled with his ancillas.
///
/// Qubit 0 of `joint_state` is Alice's box, measuring `alice_box[s]` on
/// input `s`; the remaining one or two qubits are Bob's. On commitment `c`
/// Bob runs `measurements[c]` and guesses `guess_rule[c][result]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BobStrategyDescriptor", into = "BobStrategyDescriptor")]
pub struct BobCheatStrategy {
    joint_state: StateVector,
    alice_box: [BlochDirection; 2],
    measurements: [AncillaMeasurement; 2],
    guess_rule: [[Bit; 2]; 2],
}

/// Serialized form of [`BobCheatStrategy`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BobStrategyDescriptor {
    pub joint_state: StateVector,
    pub alice_box: [BlochDirection; 2],
    pub measurements: [AncillaMeasurement; 2],
    pub guess_rule: [[Bit; 2]; 2],
}

impl TryFrom<BobStrategyDescriptor> for BobCheatStrategy {
    type Error = Error;

    fn try_from(d: BobStrategyDescriptor) -> Result<Self> {
        BobCheatStrategy::new(d.joint_state, d.alice_box, d.measurements, d.guess_rule)
    }
}

impl From<BobCheatStrategy> for BobStrategyDescriptor {
    fn from(s: BobCheatStrategy) -> Self {
        BobStrategyDescriptor {
            joint_state: s.joint_state,
            alice_box: s.alice_box,
            measurements: s.measurements,
            guess_rule: s.guess_rule,
        }
    }
}

impl BobCheatStrategy {
    pub fn new(
        joint_state: StateVector,
        alice_box: [BlochDirection; 2],
        measurements: [AncillaMeasurement; 2],
        guess_rule: [[Bit; 2]; 2],
    ) -> Result<Self> {
        let n = joint_state.qubit_count();
        if !(2..=3).contains(&n) {
            return Err(Error::MalformedStrategy(format!(
                "joint state needs Alice's qubit plus one or two ancillas, got {n} qubits"
            )));
        }
        for m in &measurements {
            m.validate(n)?;
        }
        Ok(BobCheatStrategy {
            joint_state,
            alice_box,
            measurements,
            guess_rule,
        })
    }

    pub fn joint_state(&self) -> &StateVector {
        &self.joint_state
    }

    pub fn alice_box(&self) -> &[BlochDirection; 2] {
        &self.alice_box
    }

    pub fn measurement(&self, c: Bit) -> &AncillaMeasurement {
        &self.measurements[c.as_usize()]
    }

    pub fn guess(&self, c: Bit, result: Bit) -> Bit {
        self.guess_rule[c.as_usize()][result.as_usize()]
    }

    /// Qubits Bob keeps.
    pub fn ancillas(&self) -> Vec<usize> {
        (1..self.joint_state.qubit_count()).collect()
    }

    /// `P(r_A, g_B | s_A, m_B)`: Alice's box against Bob's guess when he
    /// runs branch `m_B`.
    pub fn behavior(&self) -> BehaviorTable {
        BehaviorTable::from_fn(2, |inputs, outputs| {
            let (s_a, m) = (inputs[0], inputs[1]);
            let (r_a, g) = (outputs[0], outputs[1]);
            let meas = self.measurement(m);
            let k = meas.settings.len();
            (0..1usize << k)
                .filter(|&o| self.guess(m, meas.result_map[o]) == g)
                .map(|o| self.outcome_probability(s_a, r_a, m, o))
                .sum()
        })
        .expect("quantum behaviors are normalized")
    }

    /// `P(r_A, outcomes | s_A, branch m)`.
    fn outcome_probability(&self, s_a: Bit, r_a: Bit, m: Bit, outcomes: usize) -> f64 {
        let meas = self.measurement(m);
        let bits = index_to_bits(outcomes, meas.settings.len());
        let mut settings = vec![Setting::new(0, self.alice_box[s_a.as_usize()], r_a)];
        settings.extend(
            meas.settings
                .iter()
                .zip(&bits)
                .map(|(&(q, d), &b)| Setting::new(q, d, b)),
        );
        joint_probability(&self.joint_state, &settings).expect("validated layout")
    }
}

/// Probability Bob guesses correctly, conditioned on Alice's bit `s_A`.
/// Alice's mask `a` is uniform and `c = r_A ⊕ (s_A · a)`.
pub fn bob_gain_by_bit(strategy: &BobCheatStrategy) -> [f64; 2] {
    Bit::both().map(|s_a| {
        let mut total = 0.0;
        for a in Bit::both() {
            for r_a in Bit::both() {
                let c = r_a ^ (s_a & a);
                let meas = strategy.measurement(c);
                for o in 0..1usize << meas.settings.len() {
                    if strategy.guess(c, meas.result_map[o]) == s_a {
                        total += strategy.outcome_probability(s_a, r_a, c, o);
                    }
                }
            }
        }
        total / 2.0
    })
}

/// Bob's information gain: probability his guess equals Alice's bit, with
/// her bit and mask uniform.
pub fn bob_gain(strategy: &BobCheatStrategy) -> f64 {
    let [g0, g1] = bob_gain_by_bit(strategy);
    (g0 + g1) / 2.0
}

/// GHZ shared with Alice's box measuring `σ_y`/`σ_x`; Bob measures `y` on
/// one ancilla and `x` on the other. Correlated outcomes with `c = 0` ⇒ guess
/// 1, with `c = 1` ⇒ guess 0; anti-correlated ⇒ the reverse.
pub fn optimal_bob_ghz() -> BobCheatStrategy {
    let meas = AncillaMeasurement::parity(vec![(1, BlochDirection::Y), (2, BlochDirection::X)]);
    // result 0 = correlated
    let (o, i) = (Bit::ZERO, Bit::ONE);
    BobCheatStrategy::new(
        ghz_state(),
        GHZ_ASSIGNMENT,
        [meas.clone(), meas],
        [[i, o], [o, i]],
    )
    .expect("valid layout")
}

/// Ignores everything and guesses 0.
pub fn constant_guess() -> BobCheatStrategy {
    let meas = AncillaMeasurement {
        settings: vec![],
        result_map: vec![Bit::ZERO],
    };
    BobCheatStrategy::new(
        ghz_state(),
        GHZ_ASSIGNMENT,
        [meas.clone(), meas],
        [[Bit::ZERO; 2]; 2],
    )
    .expect("valid layout")
}

/// Index of an outcome tuple, for callers assembling result maps.
pub fn outcome_index(bits: &[Bit]) -> usize {
    bits_to_index(bits)
}
