//! Independent brute-force oracles shared by the integration tests. These
//! deliberately avoid the library's own algorithms.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::{BTreeSet, VecDeque};

use graph_product_ends::labels::LabelledGraph;
use graph_product_ends::oracle::Syllable;

/// Adjacency bitmask rows for a graph on `n <= 64` vertices.
pub fn bitmask_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for &(u, w) in edges {
        adj[u] |= 1 << w;
        adj[w] |= 1 << u;
    }
    adj
}

/// True iff the vertex subset `mask` induces a single cycle: all induced
/// degrees are exactly 2 and the subset is connected.
fn induces_cycle(adj: &[u64], mask: u64) -> bool {
    if mask.count_ones() < 3 {
        return false;
    }
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if (adj[v] & mask).count_ones() != 2 {
            return false;
        }
    }
    // connectivity by bit-frontier expansion
    let start = 1u64 << mask.trailing_zeros();
    let mut seen = start;
    loop {
        let mut next = seen;
        let mut m = seen;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            next |= adj[v] & mask;
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen == mask
}

/// Brute-force search for an induced cycle with at least `min_len` vertices.
pub fn has_induced_cycle_at_least(adj: &[u64], n: usize, min_len: u32) -> bool {
    for mask in 0u64..1 << n {
        if mask.count_ones() >= min_len && induces_cycle(adj, mask) {
            return true;
        }
    }
    false
}

/// Brute-force search for an induced 4-cycle.
pub fn has_induced_c4_bruteforce(adj: &[u64], n: usize) -> bool {
    for mask in 0u64..1 << n {
        if mask.count_ones() == 4 && induces_cycle(adj, mask) {
            return true;
        }
    }
    false
}

/// Brute-force search for a complete separating subset of `allowed`:
/// enumerates every subset and checks completeness and separation directly
/// on bitmasks.
pub fn complete_separator_exists_bruteforce(adj: &[u64], n: usize, allowed: u64) -> bool {
    'subsets: for mask in 0u64..1 << n {
        if mask & !allowed != 0 {
            continue;
        }
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if (adj[v] & mask).count_ones() != mask.count_ones() - 1 {
                continue 'subsets;
            }
        }
        // count components of the complement
        let rest = !mask & ((1u64 << n) - 1);
        let mut unvisited = rest;
        let mut components = 0;
        while unvisited != 0 {
            components += 1;
            let mut seen = 1u64 << unvisited.trailing_zeros();
            loop {
                let mut next = seen;
                let mut m = seen;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    next |= adj[v] & rest;
                }
                if next == seen {
                    break;
                }
                seen = next;
            }
            unvisited &= !seen;
        }
        if components >= 2 {
            return true;
        }
    }
    false
}

/// Exhaustive rewriting closure: all words reachable from `word` by merging
/// adjacent same-vertex syllables, dropping trivial syllables, and swapping
/// adjacent commuting syllables. The normal form is the lexicographically
/// least word of minimal length. Only feasible for short words.
pub fn normal_form_bruteforce(lg: &LabelledGraph, word: &[Syllable]) -> Vec<Syllable> {
    let order = |v: usize| lg.label(v).unwrap().cyclic_order().unwrap();
    let reduce = |w: &[Syllable]| -> Vec<Syllable> {
        w.iter()
            .filter(|s| s.exponent % order(s.vertex) != 0)
            .map(|s| Syllable {
                vertex: s.vertex,
                exponent: s.exponent % order(s.vertex),
            })
            .collect()
    };
    let start = reduce(word);
    let mut seen: BTreeSet<Vec<Syllable>> = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            if a.vertex == b.vertex {
                let mut next = w.clone();
                let merged = (a.exponent + b.exponent) % order(a.vertex);
                next.remove(i + 1);
                if merged == 0 {
                    next.remove(i);
                } else {
                    next[i].exponent = merged;
                }
                queue.push_back(next);
            } else if lg.graph.has_edge(a.vertex, b.vertex) {
                let mut next = w.clone();
                next.swap(i, i + 1);
                queue.push_back(next);
            }
        }
    }
    let min_len = seen.iter().map(Vec::len).min().unwrap();
    seen.into_iter()
        .filter(|w| w.len() == min_len)
        .min_by(|a, b| {
            let ka: Vec<_> = a.iter().map(|s| (s.vertex, s.exponent)).collect();
            let kb: Vec<_> = b.iter().map(|s| (s.vertex, s.exponent)).collect();
            ka.cmp(&kb)
        })
        .unwrap()
}
