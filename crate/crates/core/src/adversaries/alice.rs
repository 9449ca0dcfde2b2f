use serde::{Deserialize, Serialize};

use crate::behaviors::{from_quantum, BehaviorTable, GHZ_ASSIGNMENT};
use crate::bit::index_to_bits;
use crate::protocol::RevealMessage;
use crate::quantum::{ghz_state, BlochDirection, StateVector};
use crate::{Bit, Error, Result};

/// A dishonest committer who prepares Bob's two boxes.
///
/// Qubit 0 of `prepared_state` is Alice's private ancilla; qubits 1 and 2 sit
/// in Bob's boxes B and C, which measure `bob_boxes[i][s]` on input `s`.
/// Alice measures her ancilla along `alice_measurement`, fixes `c` from the
/// outcome, and later answers each target bit from `reveal_rule`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AliceStrategyDescriptor", into = "AliceStrategyDescriptor")]
pub struct AliceCheatStrategy {
    prepared_state: StateVector,
    alice_measurement: BlochDirection,
    bob_boxes: [[BlochDirection; 2]; 2],
    /// `c` sent after ancilla outcome `o`.
    commit_rule: [Bit; 2],
    /// Reveal for ancilla outcome `o` and target bit `t`: `reveal_rule[o][t]`.
    reveal_rule: [[RevealMessage; 2]; 2],
}

/// Serialized form of [`AliceCheatStrategy`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AliceStrategyDescriptor {
    pub prepared_state: StateVector,
    pub alice_measurement: BlochDirection,
    pub bob_boxes: [[BlochDirection; 2]; 2],
    pub commit_rule: [Bit; 2],
    pub reveal_rule: [[RevealMessage; 2]; 2],
}

impl TryFrom<AliceStrategyDescriptor> for AliceCheatStrategy {
    type Error = Error;

    fn try_from(d: AliceStrategyDescriptor) -> Result<Self> {
        AliceCheatStrategy::new(
            d.prepared_state,
            d.alice_measurement,
            d.bob_boxes,
            d.commit_rule,
            d.reveal_rule,
        )
    }
}

impl From<AliceCheatStrategy> for AliceStrategyDescriptor {
    fn from(s: AliceCheatStrategy) -> Self {
        AliceStrategyDescriptor {
            prepared_state: s.prepared_state,
            alice_measurement: s.alice_measurement,
            bob_boxes: s.bob_boxes,
            commit_rule: s.commit_rule,
            reveal_rule: s.reveal_rule,
        }
    }
}

impl AliceCheatStrategy {
    pub fn new(
        prepared_state: StateVector,
        alice_measurement: BlochDirection,
        bob_boxes: [[BlochDirection; 2]; 2],
        commit_rule: [Bit; 2],
        reveal_rule: [[RevealMessage; 2]; 2],
    ) -> Result<Self> {
        if prepared_state.qubit_count() != 3 {
            return Err(Error::MalformedStrategy(format!(
                "Alice prepares 3 qubits, got {}",
                prepared_state.qubit_count()
            )));
        }
        Ok(AliceCheatStrategy {
            prepared_state,
            alice_measurement,
            bob_boxes,
            commit_rule,
            reveal_rule,
        })
    }

    pub fn prepared_state(&self) -> &StateVector {
        &self.prepared_state
    }

    pub fn alice_measurement(&self) -> &BlochDirection {
        &self.alice_measurement
    }

    pub fn bob_boxes(&self) -> &[[BlochDirection; 2]; 2] {
        &self.bob_boxes
    }

    pub fn commit_for(&self, outcome: Bit) -> Bit {
        self.commit_rule[outcome.as_usize()]
    }

    pub fn reveal_for(&self, outcome: Bit, target: Bit) -> RevealMessage {
        self.reveal_rule[outcome.as_usize()][target.as_usize()]
    }

    /// The same strategy after `c → c⊕1`, `r_A → r_A⊕1`, `r_B → r_B⊕1`.
    /// Flipping box B's outputs is flipping both of its observables.
    pub fn relabeled(&self) -> Self {
        let mut out = self.clone();
        for c in out.commit_rule.iter_mut() {
            *c = !*c;
        }
        for row in out.reveal_rule.iter_mut() {
            for rev in row.iter_mut() {
                rev.r_a = !rev.r_a;
            }
        }
        for d in out.bob_boxes[0].iter_mut() {
            *d = d.flipped();
        }
        out
    }

    /// Probability of each ancilla outcome with the behavior it leaves in
    /// Bob's boxes. Zero-probability branches are omitted.
    pub fn branches(&self) -> Vec<(Bit, f64, BehaviorTable)> {
        Bit::both()
            .into_iter()
            .filter_map(|o| {
                let (p, rest) = self
                    .prepared_state
                    .condition(0, &self.alice_measurement, o)
                    .ok()?;
                let table = from_quantum(&rest, &self.bob_boxes).expect("two boxes, two qubits");
                Some((o, p, table))
            })
            .collect()
    }
}

/// Probability that honest Bob, whose boxes behave as `bob_boxes`, accepts
/// `reveal` against commitment `c`: commitment check, then the GHZ test over
/// his uniform choice of `(s_B, s_C)` with `s_B ⊕ s_C = 1 ⊕ s_A`.
pub fn reveal_acceptance(bob_boxes: &BehaviorTable, c: Bit, reveal: RevealMessage) -> f64 {
    if !(c == reveal.r_a || c == reveal.r_a ^ reveal.s_a) {
        return 0.0;
    }
    Bit::both()
        .into_iter()
        .map(|s_b| {
            let s_c = s_b ^ Bit::ONE ^ reveal.s_a;
            let want = (reveal.s_a & s_b & s_c) ^ Bit::ONE ^ reveal.r_a;
            (0..4)
                .map(|r| index_to_bits(r, 2))
                .filter(|r| r[0] ^ r[1] == want)
                .map(|r| bob_boxes.prob(&[s_b, s_c], &r))
                .sum::<f64>()
        })
        .sum::<f64>()
        / 2.0
}

/// Exact acceptance probability for target bit 0 and for target bit 1. A
/// reveal whose `s_A` differs from the target counts as failure.
pub fn alice_branch_acceptance(strategy: &AliceCheatStrategy) -> [f64; 2] {
    let branches = strategy.branches();
    Bit::both().map(|target| {
        branches
            .iter()
            .map(|(o, p, table)| {
                let rev = strategy.reveal_for(*o, target);
                if rev.s_a != target {
                    return 0.0;
                }
                p * reveal_acceptance(table, strategy.commit_for(*o), rev)
            })
            .sum()
    })
}

/// Average over the target bit of the probability that honest Bob accepts.
pub fn alice_control(strategy: &AliceCheatStrategy) -> f64 {
    let [p0, p1] = alice_branch_acceptance(strategy);
    (p0 + p1) / 2.0
}

/// Alice's reported `r_A` for `s_A = 1` in ±1 form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterministicAliceReport {
    x_a: i8,
}

impl DeterministicAliceReport {
    pub fn new(x_a: i8) -> Result<Self> {
        Bit::from_sign(x_a)?;
        Ok(DeterministicAliceReport { x_a })
    }

    pub fn both() -> [DeterministicAliceReport; 2] {
        [
            DeterministicAliceReport { x_a: 1 },
            DeterministicAliceReport { x_a: -1 },
        ]
    }

    pub fn x_a(&self) -> i8 {
        self.x_a
    }
}

/// Alice's control with `c = 0` against Bob's boxes, written as the four
/// correlator events: `¼[P(y_B x_C = −1) + P(x_B y_C = −1) + P(x_A y_B y_C
/// = −1) + P(x_A x_B x_C = 1)]`. Input 0 of a box is its `y`, input 1 its
/// `x`.
pub fn control_functional(bob_boxes: &BehaviorTable, report: DeterministicAliceReport) -> Result<f64> {
    if bob_boxes.party_count() != 2 {
        return Err(Error::PartyCountMismatch {
            expected: 2,
            got: bob_boxes.party_count(),
        });
    }
    let (y, x) = (Bit::ZERO, Bit::ONE);
    let x_a = f64::from(report.x_a);
    // P(sign_B · sign_C = product) on inputs (s_B, s_C)
    let event = |s_b: Bit, s_c: Bit, product: f64| -> f64 {
        (0..4)
            .map(|r| index_to_bits(r, 2))
            .filter(|r| r[0].sign() * r[1].sign() == product)
            .map(|r| bob_boxes.prob(&[s_b, s_c], &r))
            .sum()
    };
    Ok(0.25
        * (event(y, x, -1.0)
            + event(x, y, -1.0)
            + event(y, y, -x_a)
            + event(x, x, x_a)))
}

fn rule(s_a: Bit, r_a: Bit) -> RevealMessage {
    RevealMessage { s_a, r_a }
}

/// Measure the GHZ ancilla along `(x̂ + ŷ)/√2`; outcome `o` ⇒ `c = o`,
/// reveal 0 as `(0, o)` and reveal 1 as `(1, o)`.
pub fn optimal_alice_ghz() -> AliceCheatStrategy {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (o, i) = (Bit::ZERO, Bit::ONE);
    AliceCheatStrategy::new(
        ghz_state(),
        BlochDirection::new(h, h, 0.0).expect("unit vector"),
        [GHZ_ASSIGNMENT; 2],
        [o, i],
        [[rule(o, o), rule(i, o)], [rule(o, i), rule(i, i)]],
    )
    .expect("three qubits")
}

/// Honest Alice committing to 0 with mask `a = 0` (measure `σ_y`, send
/// `c = r_A`), then opening either bit with her true `r_A`.
pub fn honest_as_cheat() -> AliceCheatStrategy {
    let (o, i) = (Bit::ZERO, Bit::ONE);
    AliceCheatStrategy::new(
        ghz_state(),
        GHZ_ASSIGNMENT[0],
        [GHZ_ASSIGNMENT; 2],
        [o, i],
        [[rule(o, o), rule(i, o)], [rule(o, i), rule(i, i)]],
    )
    .expect("three qubits")
}

/// Like [`honest_as_cheat`] but always reporting the wrong `r_A`, so any
/// reveal of 0 fails the commitment check.
pub fn garbage_reveal() -> AliceCheatStrategy {
    let (o, i) = (Bit::ZERO, Bit::ONE);
    AliceCheatStrategy::new(
        ghz_state(),
        GHZ_ASSIGNMENT[0],
        [GHZ_ASSIGNMENT; 2],
        [o, i],
        [[rule(o, i), rule(i, i)], [rule(o, o), rule(i, o)]],
    )
    .expect("three qubits")
}
