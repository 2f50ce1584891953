//! JSON graph documents: the on-disk description of a vertex-labelled graph.
//! String vertex ids are mapped to dense integers in declaration order; the
//! mapping is kept for output.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex};
use crate::labels::{GroupLabel, LabelledGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub name: String,
    pub vertices: Vec<VertexDecl>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDecl {
    pub id: String,
    pub group: LabelSpec,
}

/// One of `{"finite": n}`, `{"cyclic": n}`, `"two_ended"`, `"one_ended"`,
/// `"infinite_ended"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelSpec {
    Finite { finite: u64 },
    Cyclic { cyclic: u64 },
    Named(String),
}

impl LabelSpec {
    pub fn to_label(&self, id: &str) -> Result<GroupLabel> {
        match self {
            LabelSpec::Finite { finite } => GroupLabel::finite(*finite)
                .map_err(|_| Error::Parse(format!("vertex \"{id}\": finite order must be >= 2"))),
            LabelSpec::Cyclic { cyclic } => GroupLabel::cyclic(*cyclic)
                .map_err(|_| Error::Parse(format!("vertex \"{id}\": cyclic order must be >= 2"))),
            LabelSpec::Named(name) => match name.as_str() {
                "two_ended" => Ok(GroupLabel::TwoEnded),
                "one_ended" => Ok(GroupLabel::OneEnded),
                "infinite_ended" => Ok(GroupLabel::InfiniteEnded),
                other => Err(Error::Parse(format!(
                    "vertex \"{id}\": unknown label spec \"{other}\""
                ))),
            },
        }
    }

    pub fn from_label(label: &GroupLabel) -> LabelSpec {
        match label {
            GroupLabel::Finite { order, cyclic: true } => LabelSpec::Cyclic { cyclic: *order },
            GroupLabel::Finite { order, cyclic: false } => LabelSpec::Finite { finite: *order },
            GroupLabel::TwoEnded => LabelSpec::Named("two_ended".into()),
            GroupLabel::OneEnded => LabelSpec::Named("one_ended".into()),
            GroupLabel::InfiniteEnded => LabelSpec::Named("infinite_ended".into()),
        }
    }
}

/// Declaration-order vertex names of a parsed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameMap(pub Vec<String>);

impl NameMap {
    pub fn name(&self, v: Vertex) -> &str {
        &self.0[v]
    }

    pub fn names(&self, s: &crate::graph::VertexSet) -> Vec<String> {
        s.iter().map(|&v| self.0[v].clone()).collect()
    }
}

impl GraphDocument {
    pub fn to_labelled_graph(&self) -> Result<(LabelledGraph, NameMap)> {
        let mut ids: BTreeMap<&str, Vertex> = BTreeMap::new();
        let mut labels: BTreeMap<Vertex, GroupLabel> = BTreeMap::new();
        for (i, decl) in self.vertices.iter().enumerate() {
            if ids.insert(&decl.id, i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id \"{}\"", decl.id)));
            }
            labels.insert(i, decl.group.to_label(&decl.id)?);
        }
        let mut graph = SimplicialGraph::new(0..self.vertices.len());
        for (pos, (a, b)) in self.edges.iter().enumerate() {
            let &u = ids
                .get(a.as_str())
                .ok_or_else(|| Error::Parse(format!("edge #{pos}: unknown vertex id \"{a}\"")))?;
            let &w = ids
                .get(b.as_str())
                .ok_or_else(|| Error::Parse(format!("edge #{pos}: unknown vertex id \"{b}\"")))?;
            if u == w {
                return Err(Error::Parse(format!("edge #{pos}: self-loop at \"{a}\"")));
            }
            graph.add_edge(u, w)?;
        }
        let lg = LabelledGraph::new(graph, labels)?;
        let names = NameMap(self.vertices.iter().map(|d| d.id.clone()).collect());
        Ok((lg, names))
    }

    pub fn from_labelled_graph(name: &str, lg: &LabelledGraph, names: &NameMap) -> GraphDocument {
        let vertices = lg
            .labels()
            .map(|(v, l)| VertexDecl {
                id: names.name(v).to_string(),
                group: LabelSpec::from_label(l),
            })
            .collect();
        let edges = lg
            .graph
            .edges()
            .into_iter()
            .map(|(u, w)| (names.name(u).to_string(), names.name(w).to_string()))
            .collect();
        GraphDocument {
            name: name.to_string(),
            vertices,
            edges,
        }
    }
}

pub fn parse_graph_document(text: &str) -> Result<(LabelledGraph, NameMap, String)> {
    let doc: GraphDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed graph document: {e}")))?;
    let (lg, names) = doc.to_labelled_graph()?;
    Ok((lg, names, doc.name))
}
