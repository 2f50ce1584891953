//! Classifier-vs-oracle cross-checking over exhaustively enumerated small
//! labelled graphs, plus seeded random document generation for fuzzing.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier;
use crate::document::{GraphDocument, LabelSpec, VertexDecl};
use crate::error::{Error, Result};
use crate::labels::{EndsClass, GroupLabel, LabelledGraph};
use crate::oracle::{self, OracleVerdict};

pub const CROSSCHECK_N_MAX_BOUND: usize = 5;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossCheckRecord {
    pub graph_hash: String,
    pub classifier: EndsClass,
    pub oracle: OracleVerdict,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossCheckSummary {
    pub total: usize,
    pub conclusive: usize,
    pub agreements: usize,
    pub inconclusive: usize,
    pub records: Vec<CrossCheckRecord>,
    pub disagreements: Vec<String>,
}

/// Canonical encoding of a labelled graph: the minimum, over all vertex
/// permutations, of (adjacency bits, permuted labels).
fn canonical_encoding(n: usize, edge_bits: u32, labels: &[u64]) -> Vec<u64> {
    let pair_index = |i: usize, j: usize| {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // position of pair (i,j), i<j, in row-major upper-triangle order
        let mut idx = 0;
        for a in 0..i {
            idx += n - 1 - a;
        }
        idx + (j - i - 1)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut enc = Vec::with_capacity(1 + n);
        let mut bits: u64 = 0;
        for i in 0..n {
            for j in i + 1..n {
                if edge_bits >> pair_index(p[i], p[j]) & 1 == 1 {
                    bits |= 1 << pair_index(i, j);
                }
            }
        }
        enc.push(bits);
        for i in 0..n {
            enc.push(labels[p[i]]);
        }
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

fn fnv1a(data: &[u64]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &word in data {
        for byte in word.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("{h:016x}")
}

fn graph_from_bits(n: usize, edge_bits: u32, labels: &[u64]) -> LabelledGraph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if edge_bits >> idx & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    let labels: Vec<GroupLabel> = labels
        .iter()
        .map(|&o| GroupLabel::cyclic(o).unwrap())
        .collect();
    LabelledGraph::from_parts(&labels, &edges).unwrap()
}

/// Runs the symbolic classifier and the Cayley oracle on every labelled graph
/// with at most `n_max` vertices and labels drawn from `pool` (cyclic
/// orders), deduplicated up to label-preserving isomorphism. Every conclusive
/// oracle verdict must agree with the classifier.
pub fn crosscheck(
    n_max: usize,
    pool: &[u64],
    r_max: u32,
    margin: u32,
    cap: usize,
) -> Result<CrossCheckSummary> {
    if n_max > CROSSCHECK_N_MAX_BOUND {
        return Err(Error::Parse(format!(
            "crosscheck is bounded at n_max <= {CROSSCHECK_N_MAX_BOUND} (got {n_max})"
        )));
    }
    for &o in pool {
        if o != 2 && o != 3 {
            return Err(Error::Parse(format!(
                "crosscheck label pool is restricted to cyclic orders 2 and 3 (got {o})"
            )));
        }
    }
    if pool.is_empty() {
        return Err(Error::Parse("crosscheck label pool is empty".into()));
    }

    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut cases: Vec<(String, LabelledGraph)> = Vec::new();
    for n in 0..=n_max {
        let pairs = n * (n.max(1) - 1) / 2;
        for edge_bits in 0u32..1 << pairs {
            let mut labels = vec![pool[0]; n];
            loop {
                let enc = canonical_encoding(n, edge_bits, &labels);
                if seen.insert(enc.clone()) {
                    cases.push((fnv1a(&enc), graph_from_bits(n, edge_bits, &labels)));
                }
                // next label assignment in pool^n
                let mut pos = 0;
                while pos < n {
                    let cur = pool.iter().position(|&o| o == labels[pos]).unwrap();
                    if cur + 1 < pool.len() {
                        labels[pos] = pool[cur + 1];
                        break;
                    }
                    labels[pos] = pool[0];
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }

    let mut records = Vec::new();
    let mut disagreements = Vec::new();
    for (hash, lg) in cases {
        let symbolic = classifier::ends(&lg).ends;
        let report = oracle::ends_estimate(&lg, r_max, margin, cap)?;
        let agree = if report.verdict.is_conclusive() {
            Some(report.verdict.matches_class(symbolic))
        } else {
            None
        };
        if agree == Some(false) {
            disagreements.push(hash.clone());
        }
        records.push(CrossCheckRecord {
            graph_hash: hash,
            classifier: symbolic,
            oracle: report.verdict,
            agree,
        });
    }
    records.sort_by(|a, b| a.graph_hash.cmp(&b.graph_hash));

    let conclusive = records.iter().filter(|r| r.agree.is_some()).count();
    let agreements = records.iter().filter(|r| r.agree == Some(true)).count();
    let inconclusive = records.len() - conclusive;
    Ok(CrossCheckSummary {
        total: records.len(),
        conclusive,
        agreements,
        inconclusive,
        records,
        disagreements,
    })
}

fn corpus_label(rng: &mut impl Rng) -> LabelSpec {
    match rng.gen_range(0..7) {
        0 => LabelSpec::Cyclic { cyclic: 2 },
        1 => LabelSpec::Cyclic { cyclic: 3 },
        2 => LabelSpec::Cyclic { cyclic: 5 },
        3 => LabelSpec::Finite { finite: 6 },
        4 => LabelSpec::Named("two_ended".into()),
        5 => LabelSpec::Named("one_ended".into()),
        _ => LabelSpec::Named("infinite_ended".into()),
    }
}

/// Deterministic stream of random graph documents: the same seed yields the
/// same documents.
pub fn corpus(count: usize, n: usize, edge_prob: f64, seed: u64) -> Result<Vec<GraphDocument>> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::Parse(format!(
            "edge probability must be in [0, 1] (got {edge_prob})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut docs = Vec::with_capacity(count);
    for k in 0..count {
        let vertices = (0..n)
            .map(|i| VertexDecl {
                id: format!("v{i}"),
                group: corpus_label(&mut rng),
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(edge_prob) {
                    edges.push((format!("v{i}"), format!("v{j}")));
                }
            }
        }
        docs.push(GraphDocument {
            name: format!("corpus-{seed}-{k}"),
            vertices,
            edges,
        });
    }
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_crosscheck_all_agree() {
        // 0, 1 and 2 vertices over {Z2}: 4 iso classes, all conclusive
        let summary = crosscheck(2, &[2], 3, 2, 100_000).unwrap();
        assert_eq!(summary.total, 4);
        assert_eq!(summary.conclusive, summary.total);
        assert_eq!(summary.agreements, summary.conclusive);
        assert!(summary.disagreements.is_empty());
    }

    #[test]
    fn single_z3_is_zero_ended_everywhere() {
        let summary = crosscheck(1, &[3], 3, 2, 100_000).unwrap();
        let rec = summary
            .records
            .iter()
            .find(|r| r.classifier == EndsClass::Zero && r.oracle == OracleVerdict::Zero);
        assert!(rec.is_some());
    }

    #[test]
    fn crosscheck_rejects_out_of_bounds() {
        assert!(crosscheck(6, &[2], 3, 2, 1000).is_err());
        assert!(crosscheck(2, &[4], 3, 2, 1000).is_err());
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = corpus(2, 4, 0.5, 7).unwrap();
        let b = corpus(2, 4, 0.5, 7).unwrap();
        assert_eq!(a, b);

        let empty = corpus(1, 0, 0.0, 1).unwrap();
        assert!(empty[0].vertices.is_empty());

        let complete = corpus(3, 5, 1.0, 2).unwrap();
        assert_eq!(complete.len(), 3);
        for doc in complete {
            assert_eq!(doc.edges.len(), 10);
        }
    }

    #[test]
    fn isomorphic_graphs_deduplicate() {
        // path 0-1-2 and path 1-0-2 over one label must collapse
        let summary = crosscheck(3, &[2], 3, 2, 100_000).unwrap();
        // 3-vertex simple graphs up to iso: empty, one edge, path, triangle,
        // plus the four 0/1/2-vertex cases
        assert_eq!(summary.total, 4 + 4);
    }
}
