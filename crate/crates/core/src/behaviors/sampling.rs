use rand::Rng;

use super::BehaviorTable;
use crate::bit::{bits_to_index, index_to_bits};
use crate::{Bit, Error, Result};

fn pick<R: Rng + ?Sized>(weights: impl Iterator<Item = f64>, total: f64, rng: &mut R) -> usize {
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, w) in weights.enumerate() {
        if w > 0.0 {
            last_positive = i;
        }
        acc += w;
        if target < acc {
            return i;
        }
    }
    last_positive
}

impl BehaviorTable {
    /// Samples an output tuple for `inputs`.
    pub fn sample_outputs<R: Rng + ?Sized>(&self, inputs: &[Bit], rng: &mut R) -> Result<Vec<Bit>> {
        if inputs.len() != self.party_count() {
            return Err(Error::PartyCountMismatch {
                expected: self.party_count(),
                got: inputs.len(),
            });
        }
        let row = self.row(bits_to_index(inputs));
        let r = pick(row.iter().copied(), 1.0, rng);
        Ok(index_to_bits(r, self.party_count()))
    }

    /// Samples outputs for the boxes in `remaining` (party, input), given
    /// that the boxes in `fixed` (party, input, output) were already queried.
    /// Boxes in neither list are marginalized out. Requires a no-signaling
    /// table for the conditional to be independent of query order.
    pub fn sample_remaining<R: Rng + ?Sized>(
        &self,
        fixed: &[(usize, Bit, Bit)],
        remaining: &[(usize, Bit)],
        rng: &mut R,
    ) -> Result<Vec<Bit>> {
        let n = self.party_count();
        let mut pattern: Vec<(usize, Bit, Bit)> = fixed.to_vec();
        pattern.extend(remaining.iter().map(|&(p, s)| (p, s, Bit::ZERO)));
        let (inputs, _, _) = self.pattern(&pattern)?;
        let (_, fixed_mask, fixed_wanted) = self.pattern(fixed)?;
        let s = bits_to_index(&inputs);
        let row = self.row(s);
        let slots: Vec<usize> = remaining.iter().map(|&(p, _)| n - 1 - p).collect();

        let k = remaining.len();
        let mut weights = vec![0.0; 1 << k];
        for (r, &p) in row.iter().enumerate() {
            if r & fixed_mask != fixed_wanted {
                continue;
            }
            let key = slots
                .iter()
                .fold(0usize, |acc, &pos| (acc << 1) | ((r >> pos) & 1));
            weights[key] += p;
        }
        let total: f64 = weights.iter().sum();
        if total <= super::NEGATIVE_TOLERANCE {
            return Err(Error::ZeroProbabilityBranch);
        }
        let chosen = pick(weights.iter().copied(), total, rng);
        Ok(index_to_bits(chosen, k))
    }
}

#[cfg(test)]
mod tests {
    use crate::behaviors::{
        from_local_deterministic, ghz_table, LocalDeterministicStrategy, Response,
    };
    use crate::rng::session_rng;
    use crate::{Bit, Error};

    #[test]
    fn deterministic_sampling() {
        let st = LocalDeterministicStrategy::new(vec![
            Response::new(Bit::ONE, Bit::ZERO),
            Response::new(Bit::ZERO, Bit::ONE),
        ]);
        let t = from_local_deterministic(&st);
        let mut rng = session_rng(3, 0);
        for _ in 0..20 {
            let out = t.sample_outputs(&[Bit::ZERO, Bit::ONE], &mut rng).unwrap();
            assert_eq!(out, vec![Bit::ONE, Bit::ONE]);
        }
    }

    #[test]
    fn ghz_conditional_obeys_relation() {
        let t = ghz_table();
        let mut rng = session_rng(11, 0);
        for _ in 0..200 {
            let out = t
                .sample_remaining(
                    &[(0, Bit::ZERO, Bit::ZERO)],
                    &[(1, Bit::ZERO), (2, Bit::ONE)],
                    &mut rng,
                )
                .unwrap();
            assert_eq!(out[0] ^ out[1], Bit::ONE);
        }
    }

    #[test]
    fn zero_probability_conditioning_fails() {
        let t = from_local_deterministic(&LocalDeterministicStrategy::new(vec![
            Response::new(Bit::ZERO, Bit::ZERO);
            2
        ]));
        let mut rng = session_rng(0, 0);
        assert_eq!(
            t.sample_remaining(&[(0, Bit::ZERO, Bit::ONE)], &[(1, Bit::ZERO)], &mut rng),
            Err(Error::ZeroProbabilityBranch)
        );
    }
}
