//! Amalgam witnesses over finite clique separators and the recursive
//! tree-of-groups decomposition, with DOT rendering.

use serde::{Deserialize, Serialize};

use crate::graph::{Vertex, VertexSet};
use crate::labels::{GroupLabel, LabelledGraph};

/// A two-factor amalgam split of the graph product: the special subgroups on
/// `left` and `right` amalgamated over the finite special subgroup on
/// `separator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamSplit {
    pub separator: VertexSet,
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Tree of groups: nodes are vertex sets of the host graph (full subgraphs),
/// edges carry the separator they were split over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTree {
    pub nodes: Vec<VertexSet>,
    pub edges: Vec<TreeEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub label: VertexSet,
}

/// Splits the graph product over a finite clique separator, if one exists.
/// The left factor takes the component with the smallest vertex id; the
/// right factor takes the separator plus all remaining components.
pub fn amalgam_split(lg: &LabelledGraph) -> Option<AmalgamSplit> {
    let allowed = lg.finite_vertices();
    let separator = lg
        .graph
        .clique_separator(&allowed)
        .expect("finite vertices are a valid subset")?;
    let rest: VertexSet = lg
        .graph
        .vertices()
        .filter(|v| !separator.contains(v))
        .collect();
    let comps = lg
        .graph
        .induced_subgraph(&rest)
        .expect("rest is a valid subset")
        .connected_components();
    debug_assert!(comps.len() >= 2);
    let left: VertexSet = separator.union(&comps[0]).copied().collect();
    let mut right = separator.clone();
    for comp in &comps[1..] {
        right.extend(comp.iter().copied());
    }
    Some(AmalgamSplit { separator, left, right })
}

/// Recursively splits over finite clique separators until no factor splits
/// further. Every tree node is an unsplittable full subgraph; edges whose
/// label equals an endpoint node are collapsed.
pub fn tree_of_groups(lg: &LabelledGraph) -> GroupTree {
    let mut tree = build_tree(lg);
    collapse_trivial_edges(&mut tree);
    tree
}

fn build_tree(lg: &LabelledGraph) -> GroupTree {
    match amalgam_split(lg) {
        None => GroupTree {
            nodes: vec![lg.graph.vertex_set()],
            edges: Vec::new(),
        },
        Some(split) => {
            let left = build_tree(&lg.induced(&split.left).unwrap());
            let right = build_tree(&lg.induced(&split.right).unwrap());
            let li = attach_node(&left, &split.separator);
            let ri = attach_node(&right, &split.separator);
            let offset = left.nodes.len();
            let mut nodes = left.nodes;
            nodes.extend(right.nodes);
            let mut edges = left.edges;
            edges.extend(right.edges.into_iter().map(|e| TreeEdge {
                a: e.a + offset,
                b: e.b + offset,
                label: e.label,
            }));
            edges.push(TreeEdge {
                a: li,
                b: ri + offset,
                label: split.separator,
            });
            GroupTree { nodes, edges }
        }
    }
}

/// Node to hang the amalgam edge on: the lex-least node containing the whole
/// separator. One always exists because adjacent vertices are never split
/// apart, so the subtrees of the separator's vertices pairwise intersect.
fn attach_node(tree: &GroupTree, separator: &VertexSet) -> usize {
    tree.nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| separator.is_subset(n))
        .min_by(|(_, a), (_, b)| {
            let av: Vec<_> = a.iter().collect();
            let bv: Vec<_> = b.iter().collect();
            av.cmp(&bv)
        })
        .map(|(i, _)| i)
        .expect("some node contains the separator")
}

fn collapse_trivial_edges(tree: &mut GroupTree) {
    loop {
        let pos = tree.edges.iter().position(|e| {
            tree.nodes[e.a] == e.label || tree.nodes[e.b] == e.label
        });
        let Some(pos) = pos else { return };
        let edge = tree.edges.remove(pos);
        let (gone, kept) = if tree.nodes[edge.a] == edge.label {
            (edge.a, edge.b)
        } else {
            (edge.b, edge.a)
        };
        for e in &mut tree.edges {
            if e.a == gone {
                e.a = kept;
            }
            if e.b == gone {
                e.b = kept;
            }
        }
        tree.nodes.remove(gone);
        for e in &mut tree.edges {
            if e.a > gone {
                e.a -= 1;
            }
            if e.b > gone {
                e.b -= 1;
            }
        }
    }
}

impl GroupTree {
    /// Connected-subtree check: for every vertex of the host graph, the tree
    /// nodes containing it span a connected subtree.
    pub fn vertex_subtrees_connected(&self, lg: &LabelledGraph) -> bool {
        for v in lg.graph.vertices() {
            let holding: Vec<usize> = (0..self.nodes.len())
                .filter(|&i| self.nodes[i].contains(&v))
                .collect();
            if holding.is_empty() {
                return false;
            }
            // BFS inside the restriction of the tree to `holding`
            let mut seen = vec![false; self.nodes.len()];
            let mut queue = vec![holding[0]];
            seen[holding[0]] = true;
            while let Some(i) = queue.pop() {
                for e in &self.edges {
                    for (x, y) in [(e.a, e.b), (e.b, e.a)] {
                        if x == i && !seen[y] && self.nodes[y].contains(&v) {
                            seen[y] = true;
                            queue.push(y);
                        }
                    }
                }
            }
            if holding.iter().any(|&i| !seen[i]) {
                return false;
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        if self.edges.len() != self.nodes.len() - 1 {
            return false;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(i) = queue.pop() {
            for e in &self.edges {
                for (x, y) in [(e.a, e.b), (e.b, e.a)] {
                    if x == i && !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn label_text(lg: &LabelledGraph, v: Vertex, namer: &dyn Fn(Vertex) -> String) -> String {
    let label = lg.label(v).map(GroupLabel::to_string).unwrap_or_default();
    format!("{}:{}", namer(v), label)
}

/// Deterministic Graphviz rendering of a tree of groups.
pub fn render_dot(tree: &GroupTree, lg: &LabelledGraph) -> String {
    render_dot_with(tree, lg, &|v| format!("v{v}"))
}

pub fn render_dot_with(
    tree: &GroupTree,
    lg: &LabelledGraph,
    namer: &dyn Fn(Vertex) -> String,
) -> String {
    let mut out = String::from("digraph group_tree {\n  node [shape=box];\n");
    for (i, node) in tree.nodes.iter().enumerate() {
        let text = if node.is_empty() {
            "trivial".to_string()
        } else {
            node.iter()
                .map(|&v| label_text(lg, v, namer))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let order = lg
            .special_subgroup_order(node)
            .ok()
            .flatten()
            .map(|o| format!(" (order {o})"))
            .unwrap_or_default();
        out.push_str(&format!("  n{i} [label=\"{{{text}}}{order}\"];\n"));
    }
    for e in &tree.edges {
        let text = e
            .label
            .iter()
            .map(|&v| label_text(lg, v, namer))
            .collect::<Vec<_>>()
            .join(", ");
        let order = lg
            .special_subgroup_order(&e.label)
            .ok()
            .flatten()
            .map(|o| format!(" (order {o})"))
            .unwrap_or_default();
        out.push_str(&format!(
            "  n{} -> n{} [dir=none, label=\"{{{text}}}{order}\"];\n",
            e.a, e.b
        ));
    }
    out.push_str("}\n");
    out
}
