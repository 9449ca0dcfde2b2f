use std::time::Instant;

use super::{BoundReport, Method, Quantity};
use crate::behaviors::{ghz_input_triples, ghz_required_parity, LocalDeterministicStrategy};
use crate::bit::parity;

/// One local deterministic triple and which GHZ input triples it satisfies.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalEntry {
    pub strategy: LocalDeterministicStrategy,
    pub satisfied: [bool; 4],
}

impl ClassicalEntry {
    pub fn count(&self) -> u8 {
        self.satisfied.iter().filter(|&&s| s).count() as u8
    }
}

/// All 64 local deterministic strategies, in lexicographic order.
pub fn enumerate_classical_ghz() -> Vec<ClassicalEntry> {
    let triples = ghz_input_triples();
    LocalDeterministicStrategy::enumerate(3)
        .map(|strategy| {
            let satisfied = triples.map(|t| parity(&strategy.outputs(&t)) == ghz_required_parity(&t));
            ClassicalEntry {
                strategy,
                satisfied,
            }
        })
        .collect()
}

/// Strategies attaining the maximal count, first-found order preserved.
pub fn classical_argmax() -> Vec<ClassicalEntry> {
    let all = enumerate_classical_ghz();
    let best = all.iter().map(ClassicalEntry::count).max().unwrap_or(0);
    all.into_iter().filter(|e| e.count() == best).collect()
}

pub fn classical_ghz_bound() -> BoundReport {
    let started = Instant::now();
    let best = enumerate_classical_ghz()
        .iter()
        .map(ClassicalEntry::count)
        .max()
        .unwrap_or(0);
    BoundReport::new(
        Quantity::ClassicalGhz,
        f64::from(best) / 4.0,
        Method::BruteForce,
        f64::EPSILON,
    )
    .expect("count out of four")
    .with_runtime(started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behaviors::{from_local_deterministic, ghz_satisfaction};

    #[test]
    fn three_quarters_exactly() {
        assert_eq!(classical_ghz_bound().value, 0.75);
        assert_eq!(classical_ghz_bound().method, Method::BruteForce);
    }

    #[test]
    fn enumeration_extremes() {
        let all = enumerate_classical_ghz();
        assert_eq!(all.len(), 64);
        assert_eq!(all.iter().map(ClassicalEntry::count).min(), Some(1));
        let arg = classical_argmax();
        assert!(!arg.is_empty());
        assert!(arg.iter().all(|e| e.count() == 3));
    }

    #[test]
    fn counts_match_table_route() {
        for e in enumerate_classical_ghz() {
            let v = ghz_satisfaction(&from_local_deterministic(&e.strategy)).unwrap();
            assert_eq!(v, f64::from(e.count()) / 4.0);
        }
    }
}
