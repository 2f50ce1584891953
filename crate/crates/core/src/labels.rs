//! Vertex-group descriptors, the four-valued end count, and finiteness of
//! special subgroups.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex, VertexSet};

/// Quasi-isometry-class descriptor of a vertex group. Vertex groups are
/// non-trivial, so finite orders are always >= 2. `cyclic` marks labels that
/// carry a concrete cyclic presentation the Cayley oracle can realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupLabel {
    Finite { order: u64, cyclic: bool },
    TwoEnded,
    OneEnded,
    InfiniteEnded,
}

impl GroupLabel {
    pub fn finite(order: u64) -> Result<Self> {
        if order < 2 {
            return Err(Error::Parse(format!(
                "vertex groups are non-trivial; finite order {order} < 2"
            )));
        }
        Ok(GroupLabel::Finite { order, cyclic: false })
    }

    pub fn cyclic(order: u64) -> Result<Self> {
        if order < 2 {
            return Err(Error::Parse(format!(
                "vertex groups are non-trivial; cyclic order {order} < 2"
            )));
        }
        Ok(GroupLabel::Finite { order, cyclic: true })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupLabel::Finite { .. })
    }

    pub fn finite_order(&self) -> Option<u64> {
        match self {
            GroupLabel::Finite { order, .. } => Some(*order),
            _ => None,
        }
    }

    pub fn cyclic_order(&self) -> Option<u64> {
        match self {
            GroupLabel::Finite { order, cyclic: true } => Some(*order),
            _ => None,
        }
    }

    pub fn is_order_two(&self) -> bool {
        self.finite_order() == Some(2)
    }

    /// Number of ends of the vertex group itself.
    pub fn ends(&self) -> EndsClass {
        match self {
            GroupLabel::Finite { .. } => EndsClass::Zero,
            GroupLabel::OneEnded => EndsClass::One,
            GroupLabel::TwoEnded => EndsClass::Two,
            GroupLabel::InfiniteEnded => EndsClass::InfinitelyMany,
        }
    }

    pub fn has_more_than_one_end(&self) -> bool {
        matches!(self, GroupLabel::TwoEnded | GroupLabel::InfiniteEnded)
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Finite { order, cyclic: true } => write!(f, "Z{order}"),
            GroupLabel::Finite { order, cyclic: false } => write!(f, "F{order}"),
            GroupLabel::TwoEnded => write!(f, "2-ended"),
            GroupLabel::OneEnded => write!(f, "1-ended"),
            GroupLabel::InfiniteEnded => write!(f, "inf-ended"),
        }
    }
}

/// Number of ends of a finitely generated group: always 0, 1, 2 or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EndsClass {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "infinity")]
    InfinitelyMany,
}

impl fmt::Display for EndsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndsClass::Zero => write!(f, "0"),
            EndsClass::One => write!(f, "1"),
            EndsClass::Two => write!(f, "2"),
            EndsClass::InfinitelyMany => write!(f, "infinity"),
        }
    }
}

/// A finite simplicial graph together with a total vertex-group labelling;
/// the defining data of a graph product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    pub graph: SimplicialGraph,
    labels: BTreeMap<Vertex, GroupLabel>,
}

impl LabelledGraph {
    pub fn new(graph: SimplicialGraph, labels: BTreeMap<Vertex, GroupLabel>) -> Result<Self> {
        for v in graph.vertices() {
            if !labels.contains_key(&v) {
                return Err(Error::Parse(format!("vertex {v} has no group label")));
            }
        }
        for &v in labels.keys() {
            if !graph.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(LabelledGraph { graph, labels })
    }

    /// Convenience constructor on vertices `0..labels.len()`.
    pub fn from_parts(labels: &[GroupLabel], edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let graph = SimplicialGraph::from_edges(labels.len(), edges)?;
        let map = labels.iter().copied().enumerate().collect();
        LabelledGraph::new(graph, map)
    }

    pub fn label(&self, v: Vertex) -> Result<&GroupLabel> {
        self.labels.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn labels(&self) -> impl Iterator<Item = (Vertex, &GroupLabel)> {
        self.labels.iter().map(|(&v, l)| (v, l))
    }

    pub fn induced(&self, s: &VertexSet) -> Result<LabelledGraph> {
        let graph = self.graph.induced_subgraph(s)?;
        let labels = s.iter().map(|&v| (v, self.labels[&v])).collect();
        Ok(LabelledGraph { graph, labels })
    }

    /// Vertices whose group is finite.
    pub fn finite_vertices(&self) -> VertexSet {
        self.labels
            .iter()
            .filter(|(_, l)| l.is_finite())
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn all_finite(&self) -> bool {
        self.labels.values().all(GroupLabel::is_finite)
    }

    pub fn all_cyclic(&self) -> bool {
        self.labels.values().all(|l| l.cyclic_order().is_some())
    }

    /// The special subgroup on `s` is finite iff `s` induces a complete graph
    /// and every vertex group in `s` is finite. Trivially true for the empty
    /// set (the trivial subgroup).
    pub fn special_subgroup_is_finite(&self, s: &VertexSet) -> Result<bool> {
        for &v in s {
            if !self.graph.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(self.graph.is_clique(s)? && s.iter().all(|&v| self.labels[&v].is_finite()))
    }

    /// Order of the special subgroup on `s` when finite (the product of the
    /// vertex-group orders); absent when the subgroup is infinite.
    pub fn special_subgroup_order(&self, s: &VertexSet) -> Result<Option<u128>> {
        if !self.special_subgroup_is_finite(s)? {
            return Ok(None);
        }
        let mut order: u128 = 1;
        for &v in s {
            order *= u128::from(self.labels[&v].finite_order().unwrap());
        }
        Ok(Some(order))
    }
}

/// Ends of the free product of two vertex groups: two ends exactly for
/// Z2 * Z2 (the infinite dihedral group), infinitely many otherwise.
pub fn free_product_ends(a: &GroupLabel, b: &GroupLabel) -> EndsClass {
    if a.is_order_two() && b.is_order_two() {
        EndsClass::Two
    } else {
        EndsClass::InfinitelyMany
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupLabel {
        GroupLabel::cyclic(n).unwrap()
    }

    #[test]
    fn ends_of_labels() {
        assert_eq!(GroupLabel::finite(5).unwrap().ends(), EndsClass::Zero);
        assert_eq!(GroupLabel::TwoEnded.ends(), EndsClass::Two);
        assert_eq!(GroupLabel::InfiniteEnded.ends(), EndsClass::InfinitelyMany);
        assert_eq!(GroupLabel::OneEnded.ends(), EndsClass::One);
    }

    #[test]
    fn trivial_labels_rejected() {
        assert!(GroupLabel::finite(1).is_err());
        assert!(GroupLabel::cyclic(0).is_err());
    }

    #[test]
    fn special_subgroup_finiteness() {
        // triangle Z2, Z3, Z5
        let k3 = LabelledGraph::from_parts(&[z(2), z(3), z(5)], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let all = k3.graph.vertex_set();
        assert!(k3.special_subgroup_is_finite(&all).unwrap());
        assert_eq!(k3.special_subgroup_order(&all).unwrap(), Some(30));

        // two non-adjacent finite vertices generate an infinite free product
        let free = LabelledGraph::from_parts(&[z(2), z(2)], &[]).unwrap();
        let both = free.graph.vertex_set();
        assert!(!free.special_subgroup_is_finite(&both).unwrap());
        assert_eq!(free.special_subgroup_order(&both).unwrap(), None);

        let empty = VertexSet::new();
        assert!(k3.special_subgroup_is_finite(&empty).unwrap());
        assert_eq!(k3.special_subgroup_order(&empty).unwrap(), Some(1));
    }

    #[test]
    fn free_product_end_counts() {
        assert_eq!(free_product_ends(&z(2), &z(2)), EndsClass::Two);
        assert_eq!(free_product_ends(&z(2), &z(3)), EndsClass::InfinitelyMany);
        assert_eq!(
            free_product_ends(&GroupLabel::TwoEnded, &GroupLabel::OneEnded),
            EndsClass::InfinitelyMany
        );
        // symmetric and never 0- or 1-ended
        let pool = [
            z(2),
            z(3),
            GroupLabel::finite(6).unwrap(),
            GroupLabel::TwoEnded,
            GroupLabel::OneEnded,
            GroupLabel::InfiniteEnded,
        ];
        for a in &pool {
            for b in &pool {
                let e = free_product_ends(a, b);
                assert_eq!(e, free_product_ends(b, a));
                assert!(e == EndsClass::Two || e == EndsClass::InfinitelyMany);
            }
        }
    }

    #[test]
    fn ends_class_serialization() {
        assert_eq!(serde_json::to_string(&EndsClass::Zero).unwrap(), "\"0\"");
        assert_eq!(
            serde_json::to_string(&EndsClass::InfinitelyMany).unwrap(),
            "\"infinity\""
        );
    }

    use std::collections::BTreeMap;
    use crate::graph::SimplicialGraph;

    #[test]
    fn total_labelling_required() {
        let g = SimplicialGraph::new(0..2);
        let mut labels = BTreeMap::new();
        labels.insert(0, z(2));
        assert!(LabelledGraph::new(g, labels).is_err());
    }
}
