//! Finite simplicial graphs and the combinatorial queries the end-count
//! characterizations reduce to: completeness, separation, universal vertices,
//! induced-C4 detection, chordality and complete (clique) separators.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Undirected simple graph. No self-loops, no multi-edges; vertex ids are
/// arbitrary (induced subgraphs keep the ids of their host).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl SimplicialGraph {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        SimplicialGraph {
            adj: vertices.into_iter().map(|v| (v, BTreeSet::new())).collect(),
        }
    }

    /// Graph on vertices `0..n` with the given edge list.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = SimplicialGraph::new(0..n);
        for &(u, w) in edges {
            g.add_edge(u, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, w: Vertex) -> Result<()> {
        if u == w {
            return Err(Error::Parse(format!("self-loop at vertex {u}")));
        }
        if !self.adj.contains_key(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.adj.contains_key(&w) {
            return Err(Error::UnknownVertex(w));
        }
        self.adj.get_mut(&u).unwrap().insert(w);
        self.adj.get_mut(&w).unwrap().insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, w: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|nb| nb.contains(&w))
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (&v, nb) in &self.adj {
            for &w in nb.range(v + 1..) {
                out.push((v, w));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|nb| nb.len()).sum::<usize>() / 2
    }

    /// Neighbors of `v` (the link of `v`).
    pub fn link(&self, v: Vertex) -> Result<VertexSet> {
        self.adj
            .get(&v)
            .cloned()
            .ok_or(Error::UnknownVertex(v))
    }

    fn check_subset(&self, s: &VertexSet) -> Result<()> {
        for &v in s {
            if !self.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(())
    }

    /// True iff every pair of distinct vertices is joined by an edge.
    /// Vacuously true for the empty graph and singletons.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.values().all(|nb| nb.len() == n - 1)
    }

    /// True iff the vertices of `s` induce a complete subgraph.
    pub fn is_clique(&self, s: &VertexSet) -> Result<bool> {
        self.check_subset(s)?;
        for &u in s {
            for &w in s.range(u + 1..) {
                if !self.has_edge(u, w) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<SimplicialGraph> {
        self.check_subset(s)?;
        let adj = s
            .iter()
            .map(|&v| (v, self.adj[&v].intersection(s).copied().collect()))
            .collect();
        Ok(SimplicialGraph { adj })
    }

    /// Maximal connected pieces, ordered by their smallest vertex id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([v]);
            seen.insert(v);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in &self.adj[&u] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// True iff removing `s` leaves at least two connected components.
    /// The empty set separates a disconnected graph.
    pub fn is_separating(&self, s: &VertexSet) -> Result<bool> {
        self.check_subset(s)?;
        let rest: VertexSet = self.vertices().filter(|v| !s.contains(v)).collect();
        Ok(self.induced_subgraph(&rest)?.connected_components().len() >= 2)
    }

    /// Vertices adjacent to every other vertex. With `U` the result, the graph
    /// is the join of `U` and its complement.
    pub fn universal_vertices(&self) -> VertexSet {
        let n = self.vertex_count();
        self.adj
            .iter()
            .filter(|(_, nb)| nb.len() == n - 1)
            .map(|(&v, _)| v)
            .collect()
    }

    /// True iff some 4 vertices induce a chordless square.
    pub fn has_induced_c4(&self) -> bool {
        let vs: Vec<Vertex> = self.vertices().collect();
        let n = vs.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let quad = [vs[a], vs[b], vs[c], vs[d]];
                        // induced C4 <=> 4 vertices, 4 edges, all degrees 2
                        let deg = |x: Vertex| {
                            quad.iter().filter(|&&y| self.has_edge(x, y)).count()
                        };
                        if quad.iter().all(|&x| deg(x) == 2) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// True iff the graph has no induced cycle of length >= 4, decided by a
    /// perfect-elimination-ordering search (repeatedly delete a simplicial
    /// vertex).
    pub fn is_chordal(&self) -> bool {
        let mut g = self.clone();
        while g.vertex_count() > 0 {
            let simplicial = g.vertices().find(|&v| {
                let nb = g.adj[&v].clone();
                g.is_clique(&nb).unwrap()
            });
            match simplicial {
                Some(v) => g.remove_vertex(v),
                None => return false,
            }
        }
        true
    }

    fn remove_vertex(&mut self, v: Vertex) {
        if let Some(nb) = self.adj.remove(&v) {
            for w in nb {
                self.adj.get_mut(&w).unwrap().remove(&v);
            }
        }
    }

    /// Searches for a complete separating set `S` contained in `allowed`.
    ///
    /// The returned set is inclusion-minimal among complete separating subsets
    /// of `allowed` and, among the minimal ones, lexicographically least in
    /// vertex ids. The empty set qualifies when the graph is disconnected.
    pub fn clique_separator(&self, allowed: &VertexSet) -> Result<Option<VertexSet>> {
        self.check_subset(allowed)?;
        let candidates = if allowed.len() <= 20 {
            self.separating_cliques_exhaustive(allowed)?
        } else {
            self.separating_cliques_heuristic(allowed)?
        };
        // keep inclusion-minimal candidates, then take the lex-least
        let minimal: Vec<&VertexSet> = candidates
            .iter()
            .filter(|s| !candidates.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
            .collect();
        Ok(minimal
            .into_iter()
            .min_by(|a, b| {
                let av: Vec<_> = a.iter().collect();
                let bv: Vec<_> = b.iter().collect();
                av.cmp(&bv)
            })
            .cloned())
    }

    /// All cliques inside `allowed` (the empty set included) that separate the
    /// graph. Feasible because `allowed` is small at the call sites.
    fn separating_cliques_exhaustive(&self, allowed: &VertexSet) -> Result<Vec<VertexSet>> {
        let pool: Vec<Vertex> = allowed.iter().copied().collect();
        let mut found = Vec::new();
        let mut stack: Vec<(VertexSet, usize)> = vec![(VertexSet::new(), 0)];
        while let Some((clique, from)) = stack.pop() {
            if self.is_separating(&clique)? {
                found.push(clique.clone());
            }
            for i in from..pool.len() {
                let v = pool[i];
                if clique.iter().all(|&u| self.has_edge(u, v)) {
                    let mut next = clique.clone();
                    next.insert(v);
                    stack.push((next, i + 1));
                }
            }
        }
        Ok(found)
    }

    /// Component-neighborhood candidates for large `allowed` sets: N(C) for C
    /// a component of the graph minus a closed neighborhood, refined to
    /// inclusion-minimal separating sets by greedy vertex removal.
    fn separating_cliques_heuristic(&self, allowed: &VertexSet) -> Result<Vec<VertexSet>> {
        let mut candidates: BTreeSet<VertexSet> = BTreeSet::new();
        if !self.is_connected() {
            candidates.insert(VertexSet::new());
        }
        for v in self.vertices() {
            let mut closed = self.adj[&v].clone();
            closed.insert(v);
            let rest: VertexSet = self.vertices().filter(|u| !closed.contains(u)).collect();
            for comp in self.induced_subgraph(&rest)?.connected_components() {
                let nbhd: VertexSet = comp
                    .iter()
                    .flat_map(|&u| self.adj[&u].iter().copied())
                    .filter(|u| !comp.contains(u))
                    .collect();
                candidates.insert(nbhd);
            }
        }
        let mut found = Vec::new();
        'cand: for mut s in candidates {
            if !s.is_subset(allowed) || !self.is_clique(&s)? {
                continue;
            }
            if !self.is_separating(&s)? {
                continue 'cand;
            }
            loop {
                let drop = s.iter().copied().find(|&v| {
                    let mut t = s.clone();
                    t.remove(&v);
                    self.is_separating(&t).unwrap()
                });
                match drop {
                    Some(v) => {
                        s.remove(&v);
                    }
                    None => break,
                }
            }
            found.push(s);
        }
        Ok(found)
    }
}
