//! Exact pure-state quantum mechanics for one to three qubits.
//!
//! Conventions used throughout the crate:
//!
//! * qubit 0 is the most significant bit of an amplitude index, so for three
//!   qubits `|q0 q1 q2⟩` sits at index `4·q0 + 2·q1 + q2`;
//! * measuring `n̂·σ` yields outcome bit `r` for eigenvalue `(-1)^r`;
//! * Pauli matrices are the standard ones, `σ_y = [[0, -i], [i, 0]]`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Bit, Error, Result};

/// Tolerance used for normalization and probability sanity checks.
pub const TOLERANCE: f64 = 1e-12;

/// Largest register this module simulates.
pub const MAX_QUBITS: usize = 3;

/// Normalized amplitude vector over `qubit_count` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateDescriptor", into = "StateDescriptor")]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    qubit_count: usize,
}

/// JSON form of a state: amplitudes as `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateDescriptor {
    pub amplitudes: Vec<[f64; 2]>,
}

impl TryFrom<StateDescriptor> for StateVector {
    type Error = Error;

    fn try_from(desc: StateDescriptor) -> Result<Self> {
        StateVector::new(
            desc.amplitudes
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<StateVector> for StateDescriptor {
    fn from(state: StateVector) -> Self {
        StateDescriptor {
            amplitudes: state.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            len,
            qubits: len.max(1).ilog2() as usize,
        });
    }
    let qubits = len.trailing_zeros() as usize;
    if qubits > MAX_QUBITS {
        return Err(Error::UnsupportedQubitCount(qubits));
    }
    Ok(qubits)
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

impl StateVector {
    /// Wraps an amplitude vector that must already be normalized within
    /// [`TOLERANCE`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let qubit_count = qubits_for_len(amplitudes.len())?;
        let n = norm_sqr(&amplitudes);
        if !n.is_finite() || (n - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized(n));
        }
        Ok(StateVector {
            amplitudes,
            qubit_count,
        })
    }

    /// Rescales an arbitrary non-zero amplitude vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let qubit_count = qubits_for_len(amplitudes.len())?;
        let n = norm_sqr(&amplitudes);
        if !n.is_finite() || n <= TOLERANCE {
            return Err(Error::NotNormalized(n));
        }
        let scale = n.sqrt().recip();
        Ok(StateVector {
            amplitudes: amplitudes.into_iter().map(|a| a * scale).collect(),
            qubit_count,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(qubit_count: usize, index: usize) -> Result<Self> {
        if qubit_count == 0 || qubit_count > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(qubit_count));
        }
        let dim = 1 << qubit_count;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                len: index + 1,
                qubits: qubit_count,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            amplitudes,
            qubit_count,
        })
    }

    /// `cos θ |00⟩ + e^{iφ} sin θ |11⟩`.
    pub fn two_qubit_schmidt(theta: f64, phase: f64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        StateVector {
            amplitudes: vec![
                Complex64::new(theta.cos(), 0.0),
                zero,
                zero,
                Complex64::from_polar(theta.sin(), phase),
            ],
            qubit_count: 2,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let factor = Complex64::from_polar(1.0, phase);
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
            qubit_count: self.qubit_count,
        }
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        if self.qubit_count != other.qubit_count {
            return 0.0;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }

    /// Equality of rays: the states agree up to a global phase.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        self.qubit_count == other.qubit_count && (1.0 - self.fidelity(other)).abs() <= tol
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.qubit_count {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                qubits: self.qubit_count,
            });
        }
        Ok(())
    }

    fn bit_position(&self, qubit: usize) -> usize {
        self.qubit_count - 1 - qubit
    }

    /// Applies the rank-one projector for `outcome` along `direction` on
    /// `qubit` without renormalizing.
    fn projected_amplitudes(
        amplitudes: &mut [Complex64],
        position: usize,
        direction: &BlochDirection,
        outcome: Bit,
    ) {
        let p = direction.projector(outcome);
        let mask = 1 << position;
        for i in 0..amplitudes.len() {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (a0, a1) = (amplitudes[i], amplitudes[j]);
            amplitudes[i] = p[0][0] * a0 + p[0][1] * a1;
            amplitudes[j] = p[1][0] * a0 + p[1][1] * a1;
        }
    }

    /// Projects `qubit` onto `outcome` along `direction` and renormalizes.
    /// Returns the Born probability of the branch with the post-measurement
    /// state.
    pub fn project(
        &self,
        qubit: usize,
        direction: &BlochDirection,
        outcome: Bit,
    ) -> Result<(f64, StateVector)> {
        self.check_qubit(qubit)?;
        let mut amplitudes = self.amplitudes.clone();
        Self::projected_amplitudes(&mut amplitudes, self.bit_position(qubit), direction, outcome);
        let probability = norm_sqr(&amplitudes);
        if probability <= TOLERANCE {
            return Err(Error::ZeroProbabilityBranch);
        }
        let scale = probability.sqrt().recip();
        amplitudes.iter_mut().for_each(|a| *a *= scale);
        Ok((
            probability.min(1.0),
            StateVector {
                amplitudes,
                qubit_count: self.qubit_count,
            },
        ))
    }

    /// State of the remaining qubits after `qubit` was found in `outcome`
    /// along `direction`: `⟨n_r|_qubit |ψ⟩`, renormalized.
    pub fn condition(
        &self,
        qubit: usize,
        direction: &BlochDirection,
        outcome: Bit,
    ) -> Result<(f64, StateVector)> {
        self.check_qubit(qubit)?;
        if self.qubit_count == 1 {
            return Err(Error::UnsupportedQubitCount(0));
        }
        let eigen = direction.eigenvector(outcome);
        let position = self.bit_position(qubit);
        let low_mask = (1 << position) - 1;
        let reduced_dim = self.amplitudes.len() / 2;
        let mut reduced = vec![Complex64::new(0.0, 0.0); reduced_dim];
        for (k, slot) in reduced.iter_mut().enumerate() {
            let high = (k & !low_mask) << 1;
            let low = k & low_mask;
            for (b, e) in eigen.iter().enumerate() {
                *slot += e.conj() * self.amplitudes[high | (b << position) | low];
            }
        }
        let probability = norm_sqr(&reduced);
        if probability <= TOLERANCE {
            return Err(Error::ZeroProbabilityBranch);
        }
        Ok((probability.min(1.0), StateVector::normalized(reduced)?))
    }
}

/// Three-qubit GHZ state `(|000⟩ + |111⟩)/√2`.
pub fn ghz_state() -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = Complex64::new(h, 0.0);
    amplitudes[7] = Complex64::new(h, 0.0);
    StateVector {
        amplitudes,
        qubit_count: 3,
    }
}

/// Unit vector on the Bloch sphere naming the observable `n̂·σ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochDirection {
    x: f64,
    y: f64,
    z: f64,
}

impl TryFrom<[f64; 3]> for BlochDirection {
    type Error = Error;

    fn try_from([x, y, z]: [f64; 3]) -> Result<Self> {
        BlochDirection::new(x, y, z)
    }
}

impl From<BlochDirection> for [f64; 3] {
    fn from(d: BlochDirection) -> Self {
        [d.x, d.y, d.z]
    }
}

impl BlochDirection {
    pub const X: BlochDirection = BlochDirection { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: BlochDirection = BlochDirection { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: BlochDirection = BlochDirection { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = x * x + y * y + z * z;
        if !n.is_finite() || (n - 1.0).abs() > TOLERANCE {
            return Err(Error::NotUnitDirection { x, y, z });
        }
        Ok(BlochDirection { x, y, z })
    }

    /// Direction with polar angle `theta` from +z and azimuth `phi` from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        BlochDirection {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    /// Direction in the x–y plane at azimuth `phi`.
    pub fn equatorial(phi: f64) -> Self {
        BlochDirection {
            x: phi.cos(),
            y: phi.sin(),
            z: 0.0,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `-n̂`: the same measurement with outcomes relabeled.
    pub fn flipped(&self) -> Self {
        BlochDirection {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// `(I + (-1)^r n̂·σ) / 2`.
    pub fn projector(&self, outcome: Bit) -> [[Complex64; 2]; 2] {
        let s = outcome.sign();
        [
            [
                Complex64::new(0.5 * (1.0 + s * self.z), 0.0),
                Complex64::new(0.5 * s * self.x, -0.5 * s * self.y),
            ],
            [
                Complex64::new(0.5 * s * self.x, 0.5 * s * self.y),
                Complex64::new(0.5 * (1.0 - s * self.z), 0.0),
            ],
        ]
    }

    /// Unit eigenvector of `n̂·σ` with eigenvalue `(-1)^outcome`, fixed up to
    /// phase by taking the heavier column of the projector.
    pub fn eigenvector(&self, outcome: Bit) -> [Complex64; 2] {
        let p = self.projector(outcome);
        let col0 = p[0][0].norm_sqr() + p[1][0].norm_sqr();
        let col1 = p[0][1].norm_sqr() + p[1][1].norm_sqr();
        let (v, n) = if col0 >= col1 {
            ([p[0][0], p[1][0]], col0)
        } else {
            ([p[0][1], p[1][1]], col1)
        };
        let scale = n.sqrt().recip();
        [v[0] * scale, v[1] * scale]
    }
}

/// One factor of a joint measurement: qubit, observable and outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Setting {
    pub qubit: usize,
    pub direction: BlochDirection,
    pub outcome: Bit,
}

impl Setting {
    pub fn new(qubit: usize, direction: BlochDirection, outcome: Bit) -> Self {
        Setting {
            qubit,
            direction,
            outcome,
        }
    }
}

/// Born probability `‖(⊗ Π) ψ‖²` of the joint outcome named by `settings`.
/// Qubits not mentioned are left unmeasured.
pub fn joint_probability(state: &StateVector, settings: &[Setting]) -> Result<f64> {
    let mut seen = [false; MAX_QUBITS];
    for s in settings {
        state.check_qubit(s.qubit)?;
        if std::mem::replace(&mut seen[s.qubit], true) {
            return Err(Error::DuplicateQubit(s.qubit));
        }
    }
    let mut amplitudes = state.amplitudes.clone();
    for s in settings {
        StateVector::projected_amplitudes(
            &mut amplitudes,
            state.bit_position(s.qubit),
            &s.direction,
            s.outcome,
        );
    }
    Ok(norm_sqr(&amplitudes).clamp(0.0, 1.0))
}

/// Samples a projective measurement of `qubit` along `direction` and returns
/// the outcome with the renormalized post-measurement state.
pub fn measure_and_collapse<R: Rng + ?Sized>(
    state: &StateVector,
    qubit: usize,
    direction: &BlochDirection,
    rng: &mut R,
) -> Result<(Bit, StateVector)> {
    state.check_qubit(qubit)?;
    let p0 = joint_probability(state, &[Setting::new(qubit, *direction, Bit::ZERO)])?;
    let outcome = if rng.gen::<f64>() < p0 {
        Bit::ZERO
    } else {
        Bit::ONE
    };
    let (_, collapsed) = state.project(qubit, direction, outcome)?;
    Ok((outcome, collapsed))
}
