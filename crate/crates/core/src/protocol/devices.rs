use rand::RngCore;

use crate::behaviors::BehaviorTable;
use crate::quantum::{measure_and_collapse, BlochDirection, StateVector};
use crate::{Bit, Error, Result};

/// Physical boxes shared by the two parties of one session. Each box may be
/// queried at most once; queries happen at different times, so outputs are
/// drawn conditionally on everything already observed.
pub trait Devices {
    fn query(&mut self, box_id: usize, input: Bit, rng: &mut dyn RngCore) -> Result<Bit>;

    /// Measures a qubit held privately by whoever prepared the devices.
    fn measure_ancilla(
        &mut self,
        qubit: usize,
        _direction: &BlochDirection,
        _rng: &mut dyn RngCore,
    ) -> Result<Bit> {
        Err(Error::NoAncilla(qubit))
    }
}

/// Boxes described only by their behavior table.
#[derive(Clone, Debug)]
pub struct TableDevices {
    table: BehaviorTable,
    observed: Vec<(usize, Bit, Bit)>,
}

/// Tolerance for the no-signaling check at load time.
pub const LOAD_NO_SIGNALING_TOLERANCE: f64 = 1e-9;

impl TableDevices {
    /// Rejects signaling tables: sequential querying is only well defined
    /// when marginals ignore the other boxes' inputs.
    pub fn new(table: BehaviorTable) -> Result<Self> {
        if !table.is_no_signaling(LOAD_NO_SIGNALING_TOLERANCE) {
            return Err(Error::Signaling);
        }
        Ok(TableDevices {
            table,
            observed: Vec::with_capacity(3),
        })
    }

    pub fn table(&self) -> &BehaviorTable {
        &self.table
    }
}

impl Devices for TableDevices {
    fn query(&mut self, box_id: usize, input: Bit, rng: &mut dyn RngCore) -> Result<Bit> {
        if box_id >= self.table.party_count() {
            return Err(Error::NoSuchBox(box_id));
        }
        if self.observed.iter().any(|&(b, _, _)| b == box_id) {
            return Err(Error::BoxAlreadyQueried(box_id));
        }
        let out = self
            .table
            .sample_remaining(&self.observed, &[(box_id, input)], rng)?[0];
        self.observed.push((box_id, input, out));
        Ok(out)
    }
}

/// A box backed by one qubit of a shared pure state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumBox {
    pub box_id: usize,
    pub qubit: usize,
    /// Observable measured on input 0 and on input 1.
    pub assignment: [BlochDirection; 2],
}

/// Boxes realized as measurements on a pure state, possibly entangled with
/// ancilla qubits kept by the party who prepared them.
#[derive(Clone, Debug)]
pub struct QuantumDevices {
    state: StateVector,
    boxes: Vec<QuantumBox>,
    ancillas: Vec<usize>,
    measured: Vec<bool>,
}

impl QuantumDevices {
    pub fn new(state: StateVector, boxes: Vec<QuantumBox>, ancillas: Vec<usize>) -> Result<Self> {
        let n = state.qubit_count();
        let mut used = vec![false; n];
        for q in boxes.iter().map(|b| b.qubit).chain(ancillas.iter().copied()) {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, qubits: n });
            }
            if std::mem::replace(&mut used[q], true) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(QuantumDevices {
            state,
            boxes,
            ancillas,
            measured: vec![false; n],
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    fn measure(&mut self, qubit: usize, direction: &BlochDirection, rng: &mut dyn RngCore) -> Result<Bit> {
        if std::mem::replace(&mut self.measured[qubit], true) {
            return Err(Error::DuplicateQubit(qubit));
        }
        let (outcome, collapsed) = measure_and_collapse(&self.state, qubit, direction, rng)?;
        self.state = collapsed;
        Ok(outcome)
    }
}

impl Devices for QuantumDevices {
    fn query(&mut self, box_id: usize, input: Bit, rng: &mut dyn RngCore) -> Result<Bit> {
        let qb = *self
            .boxes
            .iter()
            .find(|b| b.box_id == box_id)
            .ok_or(Error::NoSuchBox(box_id))?;
        if self.measured[qb.qubit] {
            return Err(Error::BoxAlreadyQueried(box_id));
        }
        self.measure(qb.qubit, &qb.assignment[input.as_usize()], rng)
    }

    fn measure_ancilla(
        &mut self,
        qubit: usize,
        direction: &BlochDirection,
        rng: &mut dyn RngCore,
    ) -> Result<Bit> {
        if !self.ancillas.contains(&qubit) {
            return Err(Error::NoAncilla(qubit));
        }
        self.measure(qubit, direction, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behaviors::{ghz_table, BehaviorTable, GHZ_ASSIGNMENT};
    use crate::quantum::ghz_state;
    use crate::rng::session_rng;

    #[test]
    fn table_devices_reject_signaling_and_double_queries() {
        let signaling = BehaviorTable::from_fn(2, |s, r| {
            // box 1 copies box 0's input
            if r[1] == s[0] && r[0] == Bit::ZERO {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert!(matches!(TableDevices::new(signaling), Err(Error::Signaling)));

        let mut d = TableDevices::new(ghz_table()).unwrap();
        let mut rng = session_rng(0, 0);
        d.query(0, Bit::ZERO, &mut rng).unwrap();
        assert_eq!(d.query(0, Bit::ONE, &mut rng), Err(Error::BoxAlreadyQueried(0)));
        assert_eq!(d.query(3, Bit::ONE, &mut rng), Err(Error::NoSuchBox(3)));
        assert_eq!(
            d.measure_ancilla(0, &BlochDirection::X, &mut rng),
            Err(Error::NoAncilla(0))
        );
    }

    #[test]
    fn quantum_devices_respect_ghz_relation() {
        let mut rng = session_rng(21, 0);
        for _ in 0..100 {
            let boxes = (0..3)
                .map(|q| QuantumBox {
                    box_id: q,
                    qubit: q,
                    assignment: GHZ_ASSIGNMENT,
                })
                .collect();
            let mut d = QuantumDevices::new(ghz_state(), boxes, vec![]).unwrap();
            let r: Vec<Bit> = [Bit::ONE, Bit::ZERO, Bit::ZERO]
                .iter()
                .enumerate()
                .map(|(b, &s)| d.query(b, s, &mut rng).unwrap())
                .collect();
            assert_eq!(r[0] ^ r[1] ^ r[2], Bit::ONE);
        }
    }

    #[test]
    fn quantum_devices_validate_layout() {
        let b = |q| QuantumBox {
            box_id: 0,
            qubit: q,
            assignment: GHZ_ASSIGNMENT,
        };
        assert!(QuantumDevices::new(ghz_state(), vec![b(0)], vec![0]).is_err());
        assert!(QuantumDevices::new(ghz_state(), vec![b(3)], vec![]).is_err());
        let mut d = QuantumDevices::new(ghz_state(), vec![b(0)], vec![1]).unwrap();
        let mut rng = session_rng(0, 0);
        assert!(d.measure_ancilla(2, &BlochDirection::X, &mut rng).is_err());
        d.measure_ancilla(1, &BlochDirection::X, &mut rng).unwrap();
        assert!(d.measure_ancilla(1, &BlochDirection::X, &mut rng).is_err());
    }
}
