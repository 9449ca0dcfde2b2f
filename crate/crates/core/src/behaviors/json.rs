use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::BehaviorTable;
use crate::bit::index_to_bits;
use crate::{Error, Result};

/// JSON form of a behavior:
/// `{"parties": n, "table": {"s-bits": {"r-bits": prob}}}`, bit strings with
/// party 0 first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub parties: usize,
    pub table: BTreeMap<String, BTreeMap<String, f64>>,
}

fn bit_string(index: usize, len: usize) -> String {
    index_to_bits(index, len)
        .into_iter()
        .map(|b| if b.as_bool() { '1' } else { '0' })
        .collect()
}

fn parse_bits(key: &str, len: usize) -> Result<usize> {
    if key.len() != len || !key.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::MalformedTable(format!(
            "key {key:?} is not a {len}-bit string"
        )));
    }
    Ok(usize::from_str_radix(key, 2).expect("validated bit string"))
}

impl From<BehaviorTable> for TableDocument {
    fn from(t: BehaviorTable) -> Self {
        let n = t.party_count();
        let table = (0..t.dim())
            .map(|s| {
                let row = (0..t.dim())
                    .map(|r| (bit_string(r, n), t.prob_index(s, r)))
                    .collect();
                (bit_string(s, n), row)
            })
            .collect();
        TableDocument { parties: n, table }
    }
}

impl TryFrom<TableDocument> for BehaviorTable {
    type Error = Error;

    /// Missing output keys read as zero; every input tuple must be present.
    fn try_from(doc: TableDocument) -> Result<Self> {
        let n = doc.parties;
        if n == 0 || n > super::MAX_PARTIES {
            return Err(Error::MalformedTable(format!("unsupported party count {n}")));
        }
        let dim = 1usize << n;
        if doc.table.len() != dim {
            return Err(Error::MalformedTable(format!(
                "expected {dim} input tuples, got {}",
                doc.table.len()
            )));
        }
        let mut probabilities = vec![0.0; dim * dim];
        for (s_key, row) in &doc.table {
            let s = parse_bits(s_key, n)?;
            for (r_key, &p) in row {
                let r = parse_bits(r_key, n)?;
                probabilities[s * dim + r] = p;
            }
        }
        BehaviorTable::new(n, probabilities)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behaviors::{ghz_table, pr_box};

    #[test]
    fn schema_uses_party_zero_first_keys() {
        let v = serde_json::to_value(pr_box()).unwrap();
        assert_eq!(v["parties"], 2);
        assert_eq!(v["table"]["11"]["01"], 0.5);
        assert_eq!(v["table"]["11"]["00"], 0.0);
        assert_eq!(v["table"]["01"]["00"], 0.5);
    }

    #[test]
    fn round_trip_and_sparse_rows() {
        let t = ghz_table();
        let back: BehaviorTable = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        for (a, b) in t.entries().iter().zip(back.entries()) {
            assert!((a - b).abs() < 1e-15);
        }
        let sparse = r#"{"parties":1,"table":{"0":{"1":1.0},"1":{"0":0.25,"1":0.75}}}"#;
        let t: BehaviorTable = serde_json::from_str(sparse).unwrap();
        assert_eq!(t.prob_index(0, 1), 1.0);
    }

    #[test]
    fn rejects_bad_documents() {
        for bad in [
            r#"{"parties":1,"table":{"0":{"1":1.0}}}"#,
            r#"{"parties":1,"table":{"0":{"2":1.0},"1":{"0":1.0}}}"#,
            r#"{"parties":1,"table":{"0":{"1":0.5},"1":{"0":1.0}}}"#,
        ] {
            assert!(serde_json::from_str::<BehaviorTable>(bad).is_err(), "{bad}");
        }
    }
}
