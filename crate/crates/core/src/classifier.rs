//! Symbolic end count of a graph product from the shape of its defining
//! graph, plus the finite-vertex-group dictionary checks (hyperbolicity,
//! virtual freeness).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::labels::{EndsClass, LabelledGraph};

/// Structural evidence backing an end-count verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// Complete graph, all vertex groups finite: the product is finite.
    CompleteAllFinite,
    /// Complete graph, exactly one vertex group with more than one end and
    /// all others finite: the product is quasi-isometric to that group.
    CompleteOneMultiEnded { vertex: Vertex },
    /// Join of a complete all-finite part with two non-adjacent Z2 vertices:
    /// virtually infinite cyclic.
    JoinTwoZ2 { universal: VertexSet, pair: VertexSet },
    /// Complete separating set with finite vertex groups: the product splits
    /// as a non-trivial amalgam over a finite subgroup.
    FiniteCliqueSeparator { separator: VertexSet },
    /// Connected, not complete, no finite clique separator: one end.
    OneEndedNoSeparator,
    /// Complete graph, exactly one one-ended vertex group, rest finite.
    CompleteOneOneEnded { vertex: Vertex },
    /// Complete graph with at least two infinite vertex groups: a direct
    /// product of infinite groups, hence one end.
    CompleteManyInfinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndsVerdict {
    pub ends: EndsClass,
    pub witness: Witness,
}

/// The graph product is finite iff the graph is complete and every vertex
/// group is finite. The empty graph gives the trivial group.
pub fn is_finite_group(lg: &LabelledGraph) -> bool {
    lg.graph.is_complete() && lg.all_finite()
}

/// More-than-one-end criterion: either the graph is complete with exactly one
/// multi-ended vertex group (all others finite), or a complete separating set
/// with finite vertex groups exists.
pub fn has_more_than_one_end(lg: &LabelledGraph) -> Option<Witness> {
    if lg.graph.is_complete() {
        let multi: Vec<Vertex> = lg
            .labels()
            .filter(|(_, l)| l.has_more_than_one_end())
            .map(|(v, _)| v)
            .collect();
        let rest_finite = lg
            .labels()
            .filter(|(v, _)| !multi.contains(v))
            .all(|(_, l)| l.is_finite());
        if multi.len() == 1 && rest_finite {
            return Some(Witness::CompleteOneMultiEnded { vertex: multi[0] });
        }
        return None;
    }
    let allowed = lg.finite_vertices();
    lg.graph
        .clique_separator(&allowed)
        .expect("finite vertices are a valid subset")
        .map(|separator| Witness::FiniteCliqueSeparator { separator })
}

/// Two-ended (virtually infinite cyclic) criterion: a complete graph with one
/// two-ended vertex group and finite rest, or a join of a complete all-finite
/// part with exactly two non-adjacent Z2 vertices.
pub fn is_two_ended(lg: &LabelledGraph) -> Option<Witness> {
    if lg.graph.is_complete() {
        let two: Vec<Vertex> = lg
            .labels()
            .filter(|(_, l)| **l == crate::labels::GroupLabel::TwoEnded)
            .map(|(v, _)| v)
            .collect();
        let rest_finite = lg
            .labels()
            .filter(|(v, _)| !two.contains(v))
            .all(|(_, l)| l.is_finite());
        if two.len() == 1 && rest_finite {
            return Some(Witness::CompleteOneMultiEnded { vertex: two[0] });
        }
        return None;
    }
    let universal = lg.graph.universal_vertices();
    let pair: VertexSet = lg
        .graph
        .vertices()
        .filter(|v| !universal.contains(v))
        .collect();
    // universal vertices always induce a complete subgraph
    let universal_finite = universal.iter().all(|&v| lg.label(v).unwrap().is_finite());
    if !universal_finite || pair.len() != 2 {
        return None;
    }
    let mut it = pair.iter();
    let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
    if lg.graph.has_edge(a, b) {
        return None;
    }
    if lg.label(a).unwrap().is_order_two() && lg.label(b).unwrap().is_order_two() {
        return Some(Witness::JoinTwoZ2 { universal, pair });
    }
    None
}

/// Exact end count. Resolution order is fixed: zero, two, infinitely many,
/// one, so that the two-ended join configuration (which also has a finite
/// clique separator) reports two ends.
pub fn ends(lg: &LabelledGraph) -> EndsVerdict {
    if is_finite_group(lg) {
        return EndsVerdict {
            ends: EndsClass::Zero,
            witness: Witness::CompleteAllFinite,
        };
    }
    if let Some(witness) = is_two_ended(lg) {
        return EndsVerdict {
            ends: EndsClass::Two,
            witness,
        };
    }
    if let Some(witness) = has_more_than_one_end(lg) {
        return EndsVerdict {
            ends: EndsClass::InfinitelyMany,
            witness,
        };
    }
    let witness = if lg.graph.is_complete() {
        let infinite: Vec<Vertex> = lg
            .labels()
            .filter(|(_, l)| !l.is_finite())
            .map(|(v, _)| v)
            .collect();
        if infinite.len() == 1 {
            Witness::CompleteOneOneEnded { vertex: infinite[0] }
        } else {
            Witness::CompleteManyInfinite
        }
    } else {
        Witness::OneEndedNoSeparator
    };
    EndsVerdict {
        ends: EndsClass::One,
        witness,
    }
}

fn require_all_finite(lg: &LabelledGraph) -> Result<()> {
    if let Some((v, l)) = lg.labels().find(|(_, l)| !l.is_finite()) {
        return Err(Error::UnsupportedLabel(format!(
            "dictionary checks apply to finite vertex groups only; vertex {v} is {l}"
        )));
    }
    Ok(())
}

/// Dictionary row for finite vertex groups: hyperbolic iff the graph has no
/// induced square.
pub fn is_hyperbolic(lg: &LabelledGraph) -> Result<bool> {
    require_all_finite(lg)?;
    Ok(!lg.graph.has_induced_c4())
}

/// Dictionary row for finite vertex groups: virtually free iff the graph has
/// no induced cycle of length >= 4.
pub fn is_virtually_free(lg: &LabelledGraph) -> Result<bool> {
    require_all_finite(lg)?;
    Ok(lg.graph.is_chordal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::GroupLabel;

    fn z(n: u64) -> GroupLabel {
        GroupLabel::cyclic(n).unwrap()
    }

    fn complete_edges(n: usize) -> Vec<(Vertex, Vertex)> {
        let mut e = Vec::new();
        for u in 0..n {
            for w in u + 1..n {
                e.push((u, w));
            }
        }
        e
    }

    fn cycle_edges(n: usize) -> Vec<(Vertex, Vertex)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    fn square_of_z2() -> LabelledGraph {
        LabelledGraph::from_parts(&[z(2); 4], &cycle_edges(4)).unwrap()
    }

    fn five_cycle() -> LabelledGraph {
        LabelledGraph::from_parts(&[z(3), z(2), z(6), z(5), z(4)], &cycle_edges(5)).unwrap()
    }

    #[test]
    fn finiteness() {
        let k4 = LabelledGraph::from_parts(&[z(2); 4], &complete_edges(4)).unwrap();
        assert!(is_finite_group(&k4));
        assert!(!is_finite_group(&square_of_z2()));
        let empty = LabelledGraph::from_parts(&[], &[]).unwrap();
        assert!(is_finite_group(&empty));
    }

    #[test]
    fn more_than_one_end_cases() {
        let single = LabelledGraph::from_parts(&[GroupLabel::InfiniteEnded], &[]).unwrap();
        assert_eq!(
            has_more_than_one_end(&single),
            Some(Witness::CompleteOneMultiEnded { vertex: 0 })
        );

        let path = LabelledGraph::from_parts(&[z(2), z(3), z(5)], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            has_more_than_one_end(&path),
            Some(Witness::FiniteCliqueSeparator {
                separator: [1].into_iter().collect()
            })
        );

        assert_eq!(has_more_than_one_end(&five_cycle()), None);
    }

    #[test]
    fn two_ended_cases() {
        let d_inf = LabelledGraph::from_parts(&[z(2), z(2)], &[]).unwrap();
        assert_eq!(
            is_two_ended(&d_inf),
            Some(Witness::JoinTwoZ2 {
                universal: VertexSet::new(),
                pair: [0, 1].into_iter().collect(),
            })
        );

        let k1 = LabelledGraph::from_parts(&[GroupLabel::TwoEnded], &[]).unwrap();
        assert_eq!(
            is_two_ended(&k1),
            Some(Witness::CompleteOneMultiEnded { vertex: 0 })
        );

        let path = LabelledGraph::from_parts(&[z(2), z(3), z(5)], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(is_two_ended(&path), None);
    }

    #[test]
    fn end_counts_for_paper_examples() {
        assert_eq!(ends(&five_cycle()).ends, EndsClass::One);

        // hexagon with alternating finite / infinite-ended groups
        let hexagon = LabelledGraph::from_parts(
            &[
                GroupLabel::InfiniteEnded,
                z(2),
                GroupLabel::InfiniteEnded,
                z(2),
                GroupLabel::InfiniteEnded,
                z(2),
            ],
            &cycle_edges(6),
        )
        .unwrap();
        assert_eq!(ends(&hexagon).ends, EndsClass::One);

        assert_eq!(ends(&square_of_z2()).ends, EndsClass::One);

        let edgeless = LabelledGraph::from_parts(
            &[
                GroupLabel::finite(6).unwrap(),
                GroupLabel::finite(23).unwrap(),
                z(2),
                GroupLabel::InfiniteEnded,
            ],
            &[],
        )
        .unwrap();
        assert_eq!(ends(&edgeless).ends, EndsClass::InfinitelyMany);

        let raag_k4 =
            LabelledGraph::from_parts(&[GroupLabel::TwoEnded; 4], &complete_edges(4)).unwrap();
        let verdict = ends(&raag_k4);
        assert_eq!(verdict.ends, EndsClass::One);
        assert_eq!(verdict.witness, Witness::CompleteManyInfinite);
    }

    #[test]
    fn complete_with_unique_infinite_ended_group() {
        let labels = [GroupLabel::InfiniteEnded, z(2), z(3)];
        let lg = LabelledGraph::from_parts(&labels, &complete_edges(3)).unwrap();
        let verdict = ends(&lg);
        assert_eq!(verdict.ends, EndsClass::InfinitelyMany);
        assert_eq!(verdict.witness, Witness::CompleteOneMultiEnded { vertex: 0 });
    }

    #[test]
    fn complete_with_unique_one_ended_group() {
        let labels = [z(2), GroupLabel::OneEnded, z(3)];
        let lg = LabelledGraph::from_parts(&labels, &complete_edges(3)).unwrap();
        let verdict = ends(&lg);
        assert_eq!(verdict.ends, EndsClass::One);
        assert_eq!(verdict.witness, Witness::CompleteOneOneEnded { vertex: 1 });
    }

    #[test]
    fn dictionary_checks() {
        use crate::graph::SimplicialGraph;
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = SimplicialGraph::from_edges(10, &edges).unwrap();
        let labels = (0..10).map(|v| (v, z(3))).collect();
        let petersen = LabelledGraph::new(petersen, labels).unwrap();
        assert!(is_hyperbolic(&petersen).unwrap());
        assert!(!is_virtually_free(&petersen).unwrap());

        assert!(!is_hyperbolic(&square_of_z2()).unwrap());
        assert!(!is_virtually_free(&five_cycle()).unwrap());

        let k4 = LabelledGraph::from_parts(&[z(2); 4], &complete_edges(4)).unwrap();
        assert!(is_hyperbolic(&k4).unwrap());

        let tree = LabelledGraph::from_parts(&[z(2), z(3), z(5)], &[(0, 1), (1, 2)]).unwrap();
        assert!(is_virtually_free(&tree).unwrap());

        let raag = LabelledGraph::from_parts(&[GroupLabel::TwoEnded], &[]).unwrap();
        assert!(matches!(is_hyperbolic(&raag), Err(Error::UnsupportedLabel(_))));
        assert!(matches!(is_virtually_free(&raag), Err(Error::UnsupportedLabel(_))));
    }

    #[test]
    fn zero_iff_finite_on_small_graphs() {
        // exhaustive over 3-vertex graphs with labels in {Z2, infinite-ended}
        for mask in 0u32..8 {
            for lbits in 0u32..8 {
                let edges: Vec<(Vertex, Vertex)> = [(0, 1), (1, 2), (0, 2)]
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e)
                    .collect();
                let labels: Vec<GroupLabel> = (0..3)
                    .map(|i| {
                        if lbits >> i & 1 == 1 {
                            GroupLabel::InfiniteEnded
                        } else {
                            z(2)
                        }
                    })
                    .collect();
                let lg = LabelledGraph::from_parts(&labels, &edges).unwrap();
                assert_eq!(ends(&lg).ends == EndsClass::Zero, is_finite_group(&lg));
                if is_two_ended(&lg).is_some() {
                    assert!(has_more_than_one_end(&lg).is_some());
                }
            }
        }
    }
}
