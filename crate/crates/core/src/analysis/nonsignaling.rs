use std::time::Instant;

use super::{BoundReport, Method, Quantity};
use crate::adversaries::{control_functional, DeterministicAliceReport};
use crate::behaviors::{from_local_deterministic, pr_box_relabeled, BehaviorTable, LocalDeterministicStrategy};
use crate::{Bit, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Deterministic,
    /// `r₁ ⊕ r₂ = (s₁ ⊕ α)(s₂ ⊕ β) ⊕ γ`.
    PrBox { alpha: Bit, beta: Bit, gamma: Bit },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NsVertex {
    pub kind: VertexKind,
    pub table: BehaviorTable,
}

/// Extreme points of the bipartite binary no-signaling set.
#[derive(Clone, Debug, PartialEq)]
pub struct NsVertexSet {
    pub vertices: Vec<NsVertex>,
}

impl NsVertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn deterministic(&self) -> impl Iterator<Item = &NsVertex> {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Deterministic)
    }

    pub fn pr_boxes(&self) -> impl Iterator<Item = &NsVertex> {
        self.vertices
            .iter()
            .filter(|v| v.kind != VertexKind::Deterministic)
    }

    /// `⟨v, v⟩ − max_{w ≠ v} ⟨v, w⟩` with the vertex's own table as the
    /// functional. Positive means `v` is not a mixture of the others.
    pub fn separating_margin(&self, index: usize) -> f64 {
        let v = self.vertices[index].table.entries();
        let dot = |w: &[f64]| v.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
        let own = dot(v);
        let rival = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != index)
            .map(|(_, w)| dot(w.table.entries()))
            .fold(f64::NEG_INFINITY, f64::max);
        own - rival
    }
}

pub fn ns_vertices() -> NsVertexSet {
    let mut vertices: Vec<NsVertex> = LocalDeterministicStrategy::enumerate(2)
        .map(|s| NsVertex {
            kind: VertexKind::Deterministic,
            table: from_local_deterministic(&s),
        })
        .collect();
    for alpha in Bit::both() {
        for beta in Bit::both() {
            for gamma in Bit::both() {
                vertices.push(NsVertex {
                    kind: VertexKind::PrBox { alpha, beta, gamma },
                    table: pr_box_relabeled(alpha, beta, gamma),
                });
            }
        }
    }
    NsVertexSet { vertices }
}

fn require_bipartite(table: &BehaviorTable) -> Result<()> {
    if table.party_count() != 2 {
        return Err(Error::PartyCountMismatch {
            expected: 2,
            got: table.party_count(),
        });
    }
    Ok(())
}

/// Bob's success probability as a linear functional of `P(r_A, g | s_A, m)`:
/// party 0 is Alice's box, party 1 is Bob's branch `m` and guess `g`. The
/// bit and mask are uniform and Bob's branch is the commitment `c`.
pub fn gain_objective(table: &BehaviorTable) -> Result<f64> {
    require_bipartite(table)?;
    let mut total = 0.0;
    for s in Bit::both() {
        for r in Bit::both() {
            total += table.prob(&[s, r], &[r, s]);
            total += table.prob(&[s, r ^ s], &[r, s]);
        }
    }
    Ok(total / 4.0)
}

/// Left-hand sides of the three gain inequalities, each at most 1 for a
/// no-signaling table: `P(k,0|0,k)+P(0,1|1,k)+P(1,1|1,k)` for `k = 0, 1`
/// and `P(0,0|0,0)+P(1,0|0,1)`.
pub fn gain_inequalities(table: &BehaviorTable) -> Result<[f64; 3]> {
    require_bipartite(table)?;
    let p = |r: u8, g: u8, s: u8, m: u8| {
        table.prob(
            &[Bit::new(s == 1), Bit::new(m == 1)],
            &[Bit::new(r == 1), Bit::new(g == 1)],
        )
    };
    let family = |k: u8| p(k, 0, 0, k) + p(0, 1, 1, k) + p(1, 1, 1, k);
    Ok([family(0), family(1), p(0, 0, 0, 0) + p(1, 0, 0, 1)])
}

/// Largest objective over the given vertices; ties go to the first.
pub fn max_over<'a, F>(vertices: impl IntoIterator<Item = &'a NsVertex>, mut f: F) -> Result<(f64, usize)>
where
    F: FnMut(&BehaviorTable) -> Result<f64>,
{
    let mut best: Option<(f64, usize)> = None;
    for (i, v) in vertices.into_iter().enumerate() {
        let value = f(&v.table)?;
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, i));
        }
    }
    best.ok_or(Error::MalformedTable("no vertices".into()))
}

pub fn bob_gain_bound() -> BoundReport {
    let started = Instant::now();
    let (value, _) = max_over(&ns_vertices().vertices, gain_objective).expect("bipartite vertices");
    BoundReport::new(Quantity::BobGain, value, Method::VertexEnumeration, f64::EPSILON)
        .expect("probability")
        .with_runtime(started)
}

/// Alice's control when Bob's two boxes behave as `table`, maximized over
/// her deterministic report.
pub fn control_best(table: &BehaviorTable) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for report in DeterministicAliceReport::both() {
        best = best.max(control_functional(table, report)?);
    }
    Ok(best)
}

/// Alice's control if Bob's boxes could be any PR-type vertex.
pub fn pr_control() -> BoundReport {
    let started = Instant::now();
    let (value, _) = max_over(ns_vertices().pr_boxes(), control_best).expect("bipartite vertices");
    BoundReport::new(Quantity::PrControl, value, Method::VertexEnumeration, f64::EPSILON)
        .expect("probability")
        .with_runtime(started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behaviors::pr_box;

    #[test]
    fn twenty_four_distinct_vertices() {
        let set = ns_vertices();
        assert_eq!(set.len(), 24);
        assert_eq!(set.deterministic().count(), 16);
        for (i, v) in set.vertices.iter().enumerate() {
            assert!(v.table.is_no_signaling(1e-12));
            for w in &set.vertices[i + 1..] {
                assert_ne!(v.table, w.table);
            }
        }
        assert!(set.vertices.iter().any(|v| v.table == pr_box()));
    }

    #[test]
    fn every_vertex_is_exposed() {
        let set = ns_vertices();
        for i in 0..set.len() {
            assert!(set.separating_margin(i) >= 0.5, "vertex {i}");
        }
    }

    #[test]
    fn gain_bound_and_inequalities() {
        assert_eq!(bob_gain_bound().value, 0.75);
        let set = ns_vertices();
        let (det, _) = max_over(set.deterministic(), gain_objective).unwrap();
        assert_eq!(det, 0.75);
        for v in &set.vertices {
            for lhs in gain_inequalities(&v.table).unwrap() {
                assert!(lhs <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn pr_boxes_give_full_control() {
        assert_eq!(pr_control().value, 1.0);
        let (det, _) = max_over(ns_vertices().deterministic(), control_best).unwrap();
        assert_eq!(det, 0.75);
    }

    #[test]
    fn objective_rejects_tripartite() {
        assert!(gain_objective(&crate::behaviors::ghz_table()).is_err());
    }
}
