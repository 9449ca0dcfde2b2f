use serde::{Deserialize, Serialize};

use super::BehaviorTable;
use crate::{Error, Result};

/// Independent symmetric output flips, one probability per box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    flips: Vec<f64>,
}

impl NoiseModel {
    pub fn new(flips: Vec<f64>) -> Result<Self> {
        for &eta in &flips {
            check_flip(eta)?;
        }
        Ok(NoiseModel { flips })
    }

    /// The same flip probability on each of `parties` boxes.
    pub fn uniform(parties: usize, eta: f64) -> Result<Self> {
        check_flip(eta)?;
        Ok(NoiseModel {
            flips: vec![eta; parties],
        })
    }

    pub fn flips(&self) -> &[f64] {
        &self.flips
    }
}

fn check_flip(eta: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "flip probability",
            value: eta,
            min: 0.0,
            max: 0.5,
        });
    }
    Ok(())
}

/// `P'(r|s) = Σ_e Π_i η_i^{e_i} (1-η_i)^{1-e_i} P(r ⊕ e | s)`, computed one
/// box at a time.
pub(super) fn apply(table: &BehaviorTable, noise: &NoiseModel) -> Result<BehaviorTable> {
    let n = table.party_count();
    if noise.flips.len() != n {
        return Err(Error::PartyCountMismatch {
            expected: n,
            got: noise.flips.len(),
        });
    }
    let dim = table.dim();
    let mut probabilities = table.entries().to_vec();
    for (party, &eta) in noise.flips.iter().enumerate() {
        if eta == 0.0 {
            continue;
        }
        let bit = 1 << (n - 1 - party);
        for row in probabilities.chunks_mut(dim) {
            for r in 0..dim {
                if r & bit != 0 {
                    continue;
                }
                let (p0, p1) = (row[r], row[r | bit]);
                row[r] = (1.0 - eta) * p0 + eta * p1;
                row[r | bit] = eta * p0 + (1.0 - eta) * p1;
            }
        }
    }
    BehaviorTable::new(n, probabilities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behaviors::{ghz_satisfaction, ghz_table};

    #[test]
    fn zero_noise_is_identity() {
        let t = ghz_table();
        assert_eq!(apply(&t, &NoiseModel::uniform(3, 0.0).unwrap()).unwrap(), t);
    }

    #[test]
    fn half_noise_randomizes_outputs() {
        let t = apply(&ghz_table(), &NoiseModel::uniform(3, 0.5).unwrap()).unwrap();
        assert!(t.entries().iter().all(|&p| (p - 0.125).abs() < 1e-15));
        assert!((ghz_satisfaction(&t).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range_and_mismatch() {
        assert!(NoiseModel::uniform(3, 0.6).is_err());
        assert!(NoiseModel::new(vec![0.1, -0.1]).is_err());
        let two = NoiseModel::uniform(2, 0.1).unwrap();
        assert!(apply(&ghz_table(), &two).is_err());
    }
}
