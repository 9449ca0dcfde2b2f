//! Black-box behaviors: conditional distributions `P(r | s)` over `n`
//! binary-input, binary-output boxes.
//!
//! Input and output tuples are indexed as bit strings with party 0 most
//! significant, matching the qubit convention of [`crate::quantum`].

mod json;
mod noise;
mod sampling;

use serde::{Deserialize, Serialize};

use crate::bit::{bits_to_index, index_to_bits, parity};
use crate::quantum::{joint_probability, BlochDirection, Setting, StateVector};
use crate::{Bit, Error, Result};

pub use json::TableDocument;
pub use noise::NoiseModel;

/// Row-sum tolerance accepted at construction.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Entries below zero by more than this are rejected rather than clamped.
pub const NEGATIVE_TOLERANCE: f64 = 1e-12;

/// Largest number of boxes in one table.
pub const MAX_PARTIES: usize = 4;

/// `P(outputs | inputs)` for `party_count` boxes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableDocument", into = "TableDocument")]
pub struct BehaviorTable {
    party_count: usize,
    // probabilities[s * 2^n + r]
    probabilities: Vec<f64>,
}

impl BehaviorTable {
    /// Builds a table from a flat vector indexed `s * 2^n + r`. Each input
    /// row must sum to one within [`NORMALIZATION_TOLERANCE`]; tiny negative
    /// entries are clamped and rows renormalized.
    pub fn new(party_count: usize, mut probabilities: Vec<f64>) -> Result<Self> {
        if party_count == 0 || party_count > MAX_PARTIES {
            return Err(Error::MalformedTable(format!(
                "unsupported party count {party_count}"
            )));
        }
        let dim = 1usize << party_count;
        if probabilities.len() != dim * dim {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, got {}",
                dim * dim,
                probabilities.len()
            )));
        }
        for (s, row) in probabilities.chunks_mut(dim).enumerate() {
            for p in row.iter_mut() {
                if !p.is_finite() || *p < -NEGATIVE_TOLERANCE || *p > 1.0 + NORMALIZATION_TOLERANCE {
                    return Err(Error::MalformedTable(format!(
                        "entry {p} in input row {s} is not a probability"
                    )));
                }
                *p = p.max(0.0);
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(Error::MalformedTable(format!(
                    "input row {s} sums to {total}"
                )));
            }
            row.iter_mut().for_each(|p| *p /= total);
        }
        Ok(BehaviorTable {
            party_count,
            probabilities,
        })
    }

    /// Builds a table entry by entry from `f(inputs, outputs)`.
    pub fn from_fn<F>(party_count: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[Bit], &[Bit]) -> f64,
    {
        let dim = 1usize << party_count.min(MAX_PARTIES + 1);
        let mut probabilities = Vec::with_capacity(dim * dim);
        for s in 0..dim {
            let inputs = index_to_bits(s, party_count);
            for r in 0..dim {
                probabilities.push(f(&inputs, &index_to_bits(r, party_count)));
            }
        }
        Self::new(party_count, probabilities)
    }

    pub fn party_count(&self) -> usize {
        self.party_count
    }

    pub(crate) fn dim(&self) -> usize {
        1 << self.party_count
    }

    /// `P(outputs | inputs)`.
    pub fn prob(&self, inputs: &[Bit], outputs: &[Bit]) -> f64 {
        debug_assert_eq!(inputs.len(), self.party_count);
        debug_assert_eq!(outputs.len(), self.party_count);
        self.prob_index(bits_to_index(inputs), bits_to_index(outputs))
    }

    pub fn prob_index(&self, inputs: usize, outputs: usize) -> f64 {
        self.probabilities[inputs * self.dim() + outputs]
    }

    /// Output distribution for one input tuple.
    pub fn row(&self, inputs: usize) -> &[f64] {
        let dim = self.dim();
        &self.probabilities[inputs * dim..(inputs + 1) * dim]
    }

    pub fn entries(&self) -> &[f64] {
        &self.probabilities
    }

    /// Probability that the boxes in `fixed` (party, input, output) produce
    /// the named outputs, with every other box fed input 0 and its output
    /// summed out. Well defined for no-signaling tables.
    pub fn marginal(&self, fixed: &[(usize, Bit, Bit)]) -> Result<f64> {
        let (inputs, mask, wanted) = self.pattern(fixed)?;
        let s = bits_to_index(&inputs);
        Ok((0..self.dim())
            .filter(|r| r & mask == wanted)
            .map(|r| self.prob_index(s, r))
            .sum())
    }

    /// Full input tuple plus an output mask/value selecting the fixed boxes.
    fn pattern(&self, fixed: &[(usize, Bit, Bit)]) -> Result<(Vec<Bit>, usize, usize)> {
        let n = self.party_count;
        let mut inputs = vec![Bit::ZERO; n];
        let mut mask = 0usize;
        let mut wanted = 0usize;
        for &(party, input, output) in fixed {
            if party >= n {
                return Err(Error::PartyCountMismatch {
                    expected: n,
                    got: party + 1,
                });
            }
            let bit = 1 << (n - 1 - party);
            if mask & bit != 0 {
                return Err(Error::DuplicateParty(party));
            }
            mask |= bit;
            if output.as_bool() {
                wanted |= bit;
            }
            inputs[party] = input;
        }
        Ok((inputs, mask, wanted))
    }

    /// Convex combination `λ·self + (1-λ)·other`.
    pub fn mix(&self, lambda: f64, other: &BehaviorTable) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange {
                name: "mixing weight",
                value: lambda,
                min: 0.0,
                max: 1.0,
            });
        }
        if self.party_count != other.party_count {
            return Err(Error::PartyCountMismatch {
                expected: self.party_count,
                got: other.party_count,
            });
        }
        let probabilities = self
            .probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        Self::new(self.party_count, probabilities)
    }

    /// True iff, for every proper subset of boxes, the subset's output
    /// marginal does not depend on the inputs of the remaining boxes.
    pub fn is_no_signaling(&self, tol: f64) -> bool {
        let n = self.party_count;
        let dim = self.dim();
        let full = dim - 1;
        for subset in 1..full {
            let rest = full & !subset;
            for s in 0..dim {
                let reference = s & !rest;
                if reference == s {
                    continue;
                }
                for r_sub in 0..dim {
                    if r_sub & !subset != 0 {
                        continue;
                    }
                    let marginal = |input: usize| -> f64 {
                        (0..dim)
                            .filter(|r| r & subset == r_sub)
                            .map(|r| self.prob_index(input, r))
                            .sum()
                    };
                    if (marginal(s) - marginal(reference)).abs() > tol {
                        return false;
                    }
                }
            }
        }
        debug_assert!(n >= 1);
        true
    }
}

/// Output rule of one local deterministic box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Response {
    pub on_zero: Bit,
    pub on_one: Bit,
}

impl Response {
    pub const fn new(on_zero: Bit, on_one: Bit) -> Self {
        Response { on_zero, on_one }
    }

    /// The four functions `{0,1} → {0,1}` in lexicographic order: constant 0,
    /// identity, negation, constant 1.
    pub fn all() -> [Response; 4] {
        [
            Response::new(Bit::ZERO, Bit::ZERO),
            Response::new(Bit::ZERO, Bit::ONE),
            Response::new(Bit::ONE, Bit::ZERO),
            Response::new(Bit::ONE, Bit::ONE),
        ]
    }

    pub fn respond(&self, input: Bit) -> Bit {
        if input.as_bool() {
            self.on_one
        } else {
            self.on_zero
        }
    }
}

/// One response function per box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalDeterministicStrategy {
    pub responses: Vec<Response>,
}

impl LocalDeterministicStrategy {
    pub fn new(responses: Vec<Response>) -> Self {
        LocalDeterministicStrategy { responses }
    }

    /// All `4^parties` strategies, lexicographic with party 0 most
    /// significant.
    pub fn enumerate(parties: usize) -> impl Iterator<Item = LocalDeterministicStrategy> {
        let all = Response::all();
        (0..4usize.pow(parties as u32)).map(move |mut code| {
            let mut responses = vec![all[0]; parties];
            for slot in responses.iter_mut().rev() {
                *slot = all[code % 4];
                code /= 4;
            }
            LocalDeterministicStrategy { responses }
        })
    }

    pub fn outputs(&self, inputs: &[Bit]) -> Vec<Bit> {
        self.responses
            .iter()
            .zip(inputs)
            .map(|(resp, &s)| resp.respond(s))
            .collect()
    }
}

/// `P(r|s) = Tr(ρ ⊗ Π_{r_i|s_i})` for a pure state with one qubit per box;
/// `assignment[i][s]` is the observable box `i` measures on input `s`.
pub fn from_quantum(state: &StateVector, assignment: &[[BlochDirection; 2]]) -> Result<BehaviorTable> {
    let n = assignment.len();
    if state.qubit_count() != n {
        return Err(Error::PartyCountMismatch {
            expected: state.qubit_count(),
            got: n,
        });
    }
    let mut settings = Vec::with_capacity(n);
    BehaviorTable::from_fn(n, |inputs, outputs| {
        settings.clear();
        settings.extend(
            (0..n).map(|q| Setting::new(q, assignment[q][inputs[q].as_usize()], outputs[q])),
        );
        joint_probability(state, &settings).expect("qubit indices are distinct and in range")
    })
}

/// Unit-mass table realizing a local deterministic strategy.
pub fn from_local_deterministic(strategy: &LocalDeterministicStrategy) -> BehaviorTable {
    let n = strategy.responses.len();
    BehaviorTable::from_fn(n, |inputs, outputs| {
        if strategy.outputs(inputs) == outputs {
            1.0
        } else {
            0.0
        }
    })
    .expect("deterministic tables are normalized")
}

/// Bipartite box with `r_1 ⊕ r_2 = (s_1 ⊕ α)(s_2 ⊕ β) ⊕ γ` and uniform
/// marginals. `(0, 0, 0)` is the standard PR box.
pub fn pr_box_relabeled(alpha: Bit, beta: Bit, gamma: Bit) -> BehaviorTable {
    BehaviorTable::from_fn(2, |s, r| {
        if r[0] ^ r[1] == ((s[0] ^ alpha) & (s[1] ^ beta)) ^ gamma {
            0.5
        } else {
            0.0
        }
    })
    .expect("PR boxes are normalized")
}

/// Standard PR box: `r_1 ⊕ r_2 = s_1 · s_2`.
pub fn pr_box() -> BehaviorTable {
    pr_box_relabeled(Bit::ZERO, Bit::ZERO, Bit::ZERO)
}

/// The four input triples with `s_A ⊕ s_B ⊕ s_C = 1`, in lexicographic order.
pub fn ghz_input_triples() -> [[Bit; 3]; 4] {
    let (o, i) = (Bit::ZERO, Bit::ONE);
    [[o, o, i], [o, i, o], [i, o, o], [i, i, i]]
}

/// The parity `r_A ⊕ r_B ⊕ r_C` the GHZ relation demands on `inputs`.
pub fn ghz_required_parity(inputs: &[Bit; 3]) -> Bit {
    (inputs[0] & inputs[1] & inputs[2]) ^ Bit::ONE
}

/// Uniform average over the four valid input triples of the probability that
/// `r_A ⊕ r_B ⊕ r_C = s_A s_B s_C ⊕ 1`.
pub fn ghz_satisfaction(table: &BehaviorTable) -> Result<f64> {
    if table.party_count() != 3 {
        return Err(Error::PartyCountMismatch {
            expected: 3,
            got: table.party_count(),
        });
    }
    let total: f64 = ghz_input_triples()
        .iter()
        .map(|inputs| {
            let want = ghz_required_parity(inputs);
            let s = bits_to_index(inputs);
            (0..8)
                .filter(|&r| parity(&index_to_bits(r, 3)) == want)
                .map(|r| table.prob_index(s, r))
                .sum::<f64>()
        })
        .sum();
    Ok(total / 4.0)
}

/// Honest-device assignment: input 0 measures `σ_y`, input 1 measures `σ_x`.
pub const GHZ_ASSIGNMENT: [BlochDirection; 2] = [BlochDirection::Y, BlochDirection::X];

/// Behavior of three boxes measuring `σ_y`/`σ_x` on the GHZ state.
pub fn ghz_table() -> BehaviorTable {
    from_quantum(&crate::quantum::ghz_state(), &[GHZ_ASSIGNMENT; 3])
        .expect("GHZ assignment matches qubit count")
}

/// Output flip on every box with probability `flip`.
pub fn apply_noise(table: &BehaviorTable, noise: &NoiseModel) -> Result<BehaviorTable> {
    noise::apply(table, noise)
}
