//! Desk-scale empirical end-count estimator. Realizes the graph product of
//! concrete finite cyclic vertex groups through shuffle-normal words, builds
//! Cayley balls by BFS (generating set: all non-trivial vertex-group
//! elements), and counts components of a punctured ball that reach the
//! outermost sphere.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::labels::LabelledGraph;

/// Default ball size cap: keeps estimator runs at seconds-to-a-minute scale.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;
pub const DEFAULT_R_MAX: u32 = 4;
pub const DEFAULT_MARGIN: u32 = 3;

/// A power of one cyclic vertex generator: exponent is always in
/// `1..order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub vertex: Vertex,
    pub exponent: u64,
}

/// Shuffle-reduced, lexicographically least syllable sequence; the unique
/// representative of a graph-product element. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalWord(pub Vec<Syllable>);

impl CanonicalWord {
    pub fn identity() -> Self {
        CanonicalWord(Vec::new())
    }

    pub fn syllable_count(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

/// Cyclic orders per vertex; fails on any label without a concrete cyclic
/// presentation.
fn cyclic_orders(lg: &LabelledGraph) -> Result<BTreeMap<Vertex, u64>> {
    let mut orders = BTreeMap::new();
    for (v, l) in lg.labels() {
        match l.cyclic_order() {
            Some(n) => {
                orders.insert(v, n);
            }
            None => {
                return Err(Error::UnsupportedLabel(format!(
                    "the Cayley oracle needs concrete cyclic labels; vertex {v} is {l}"
                )))
            }
        }
    }
    Ok(orders)
}

/// Normal-form context for one labelled graph.
pub struct WordContext<'a> {
    lg: &'a LabelledGraph,
    orders: BTreeMap<Vertex, u64>,
}

impl<'a> WordContext<'a> {
    pub fn new(lg: &'a LabelledGraph) -> Result<Self> {
        Ok(WordContext {
            lg,
            orders: cyclic_orders(lg)?,
        })
    }

    pub fn order(&self, v: Vertex) -> u64 {
        self.orders[&v]
    }

    /// All non-trivial vertex-group elements, the oracle's generating set.
    pub fn generators(&self) -> Vec<Syllable> {
        let mut gens = Vec::new();
        for (&v, &order) in &self.orders {
            for exponent in 1..order {
                gens.push(Syllable { vertex: v, exponent });
            }
        }
        gens
    }

    /// Appends one syllable, restoring the shuffle-normal form: the syllable
    /// moves left through commuting (adjacent-in-graph) syllables, merges
    /// with an earlier same-vertex syllable when reachable, and otherwise
    /// settles at the lexicographically least admissible position.
    fn push(&self, word: &mut Vec<Syllable>, s: Syllable) {
        let exponent = s.exponent % self.order(s.vertex);
        if exponent == 0 {
            return;
        }
        let v = s.vertex;
        // leftmost index p such that everything in word[p..] commutes with v
        let mut p = word.len();
        while p > 0 && self.lg.graph.has_edge(word[p - 1].vertex, v) {
            p -= 1;
        }
        if p > 0 && word[p - 1].vertex == v {
            let merged = (word[p - 1].exponent + exponent) % self.order(v);
            if merged == 0 {
                word.remove(p - 1);
                // the freed-up tail may now shuffle and merge further left
                let tail = word.split_off(p - 1);
                for t in tail {
                    self.push(word, t);
                }
            } else {
                word[p - 1].exponent = merged;
            }
            return;
        }
        let mut q = p;
        while q < word.len() && word[q].vertex < v {
            q += 1;
        }
        word.insert(q, Syllable { vertex: v, exponent });
    }

    pub fn canonicalize(&self, syllables: &[Syllable]) -> Result<CanonicalWord> {
        for s in syllables {
            if !self.orders.contains_key(&s.vertex) {
                return Err(Error::UnknownVertex(s.vertex));
            }
        }
        let mut word = Vec::with_capacity(syllables.len());
        for &s in syllables {
            self.push(&mut word, s);
        }
        Ok(CanonicalWord(word))
    }

    pub fn multiply(&self, a: &CanonicalWord, b: &CanonicalWord) -> CanonicalWord {
        let mut word = a.0.clone();
        for &s in &b.0 {
            self.push(&mut word, s);
        }
        CanonicalWord(word)
    }

    pub fn apply(&self, a: &CanonicalWord, s: Syllable) -> CanonicalWord {
        let mut word = a.0.clone();
        self.push(&mut word, s);
        CanonicalWord(word)
    }

    /// Reversed sequence with exponents negated mod order.
    pub fn inverse(&self, w: &CanonicalWord) -> CanonicalWord {
        let inv: Vec<Syllable> = w
            .0
            .iter()
            .rev()
            .map(|s| Syllable {
                vertex: s.vertex,
                exponent: self.order(s.vertex) - s.exponent,
            })
            .collect();
        self.canonicalize(&inv).expect("inverse syllables are in range")
    }
}

/// Ball of a Cayley graph around the identity, built layer by layer.
pub struct CayleyBall {
    pub words: Vec<CanonicalWord>,
    pub index: HashMap<CanonicalWord, u32>,
    pub layer: Vec<u32>,
    pub adjacency: Vec<Vec<u32>>,
    pub sphere_sizes: Vec<usize>,
    pub radius_reached: u32,
    /// The whole group was enumerated before the radius ran out.
    pub saturated: bool,
}

/// BFS ball of the given radius. Errors with `ResourceCap` when the element
/// count would exceed `cap`; the error reports the last complete radius.
pub fn ball(lg: &LabelledGraph, radius: u32, cap: usize) -> Result<CayleyBall> {
    let ctx = WordContext::new(lg)?;
    ball_with_context(&ctx, radius, cap)
}

pub fn ball_with_context(ctx: &WordContext<'_>, radius: u32, cap: usize) -> Result<CayleyBall> {
    let generators = ctx.generators();
    let mut words = vec![CanonicalWord::identity()];
    let mut index = HashMap::new();
    index.insert(CanonicalWord::identity(), 0u32);
    let mut layer = vec![0u32];
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new()];
    let mut sphere_sizes = vec![1usize];
    let mut frontier: Vec<u32> = vec![0];
    let mut r = 0u32;
    let mut saturated = false;

    while r < radius && !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            let word = words[i as usize].clone();
            for &g in &generators {
                let neighbor = ctx.apply(&word, g);
                let j = match index.get(&neighbor) {
                    Some(&j) => j,
                    None => {
                        let j = words.len() as u32;
                        if words.len() + 1 > cap {
                            return Err(Error::ResourceCap {
                                partial_radius: r,
                                elements: words.len(),
                            });
                        }
                        words.push(neighbor.clone());
                        index.insert(neighbor, j);
                        layer.push(r + 1);
                        adjacency.push(Vec::new());
                        next.push(j);
                        j
                    }
                };
                if !adjacency[i as usize].contains(&j) {
                    adjacency[i as usize].push(j);
                    adjacency[j as usize].push(i);
                }
            }
        }
        if next.is_empty() {
            saturated = true;
            break;
        }
        sphere_sizes.push(next.len());
        frontier = next;
        r += 1;
    }
    if r == radius && !frontier.is_empty() {
        // complete the edge relation on the outermost sphere; if nothing new
        // would appear beyond it, the group is fully enumerated
        let mut all_present = true;
        for &i in &frontier {
            let word = words[i as usize].clone();
            for &g in &generators {
                let neighbor = ctx.apply(&word, g);
                match index.get(&neighbor) {
                    Some(&j) => {
                        if !adjacency[i as usize].contains(&j) {
                            adjacency[i as usize].push(j);
                            adjacency[j as usize].push(i);
                        }
                    }
                    None => all_present = false,
                }
            }
        }
        saturated = saturated || all_present;
    }
    Ok(CayleyBall {
        words,
        index,
        layer,
        adjacency,
        sphere_sizes,
        radius_reached: r,
        saturated,
    })
}

/// Exact group order by BFS saturation, or `None` when the ball outgrows the
/// cap (not finite within cap).
pub fn exact_order_if_finite(lg: &LabelledGraph, cap: usize) -> Result<Option<u128>> {
    let ctx = WordContext::new(lg)?;
    match ball_with_context(&ctx, u32::MAX, cap) {
        Ok(b) => {
            debug_assert!(b.saturated);
            Ok(Some(b.words.len() as u128))
        }
        Err(Error::ResourceCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleVerdict {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "infinity")]
    InfinitelyMany,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl OracleVerdict {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, OracleVerdict::Inconclusive)
    }

    pub fn matches_class(&self, ends: crate::labels::EndsClass) -> bool {
        use crate::labels::EndsClass;
        matches!(
            (self, ends),
            (OracleVerdict::Zero, EndsClass::Zero)
                | (OracleVerdict::One, EndsClass::One)
                | (OracleVerdict::Two, EndsClass::Two)
                | (OracleVerdict::InfinitelyMany, EndsClass::InfinitelyMany)
        )
    }
}

impl std::fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleVerdict::Zero => write!(f, "0"),
            OracleVerdict::One => write!(f, "1"),
            OracleVerdict::Two => write!(f, "2"),
            OracleVerdict::InfinitelyMany => write!(f, "infinity"),
            OracleVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Output of the empirical ends estimator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub inner_radius: u32,
    pub outer_radius: u32,
    pub sphere_sizes: Vec<usize>,
    /// Components of ball(R) minus ball(r) that reach the outermost sphere,
    /// for r in 1..=inner_radius.
    pub shell_component_counts: Vec<usize>,
    pub verdict: OracleVerdict,
    pub element_count: Option<u128>,
    /// True when the ball build hit the size cap before reaching the outer
    /// radius; the report then carries partial data only.
    pub capped: bool,
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n as u32).collect())
    }
    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.0[root as usize] != root {
            root = self.0[root as usize];
        }
        let mut cur = x;
        while self.0[cur as usize] != root {
            let next = self.0[cur as usize];
            self.0[cur as usize] = root;
            cur = next;
        }
        root
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra as usize] = rb;
        }
    }
}

/// Components of the ball minus the closed ball of radius `r` that contain an
/// element of the outermost computed sphere.
fn shell_components(ball: &CayleyBall, r: u32, outer: u32) -> usize {
    let n = ball.words.len();
    let mut dsu = Dsu::new(n);
    for i in 0..n as u32 {
        if ball.layer[i as usize] <= r {
            continue;
        }
        for &j in &ball.adjacency[i as usize] {
            if ball.layer[j as usize] > r {
                dsu.union(i, j);
            }
        }
    }
    let mut roots = std::collections::BTreeSet::new();
    for i in 0..n as u32 {
        if ball.layer[i as usize] == outer {
            roots.insert(dsu.find(i));
        }
    }
    roots.len()
}

/// Empirical end count per the ball-puncturing definition: remove the closed
/// ball of radius r from the ball of radius R = r_max + margin and count the
/// components that touch the outermost sphere (finite proxy for
/// "unbounded"). Misclassification risk lands in `Inconclusive`.
pub fn ends_estimate(
    lg: &LabelledGraph,
    r_max: u32,
    margin: u32,
    cap: usize,
) -> Result<EstimateReport> {
    if r_max < 2 || margin < 2 {
        return Err(Error::Parse(format!(
            "ends_estimate needs r_max >= 2 and margin >= 2 (got {r_max}, {margin})"
        )));
    }
    let ctx = WordContext::new(lg)?;
    let outer = r_max + margin;
    let ball = match ball_with_context(&ctx, outer, cap) {
        Ok(b) => b,
        Err(Error::ResourceCap { partial_radius, .. }) => {
            // partial data: a truncated ball cannot certify any verdict
            let partial = ball_with_context(&ctx, partial_radius, cap)?;
            return Ok(EstimateReport {
                inner_radius: r_max,
                outer_radius: outer,
                sphere_sizes: partial.sphere_sizes,
                shell_component_counts: Vec::new(),
                verdict: OracleVerdict::Inconclusive,
                element_count: None,
                capped: true,
            });
        }
        Err(e) => return Err(e),
    };

    let mut sphere_sizes = ball.sphere_sizes.clone();
    sphere_sizes.resize(outer as usize + 1, 0);

    if ball.saturated {
        return Ok(EstimateReport {
            inner_radius: r_max,
            outer_radius: outer,
            sphere_sizes,
            shell_component_counts: Vec::new(),
            verdict: OracleVerdict::Zero,
            element_count: Some(ball.words.len() as u128),
            capped: false,
        });
    }

    let counts: Vec<usize> = (1..=r_max)
        .map(|r| shell_components(&ball, r, outer))
        .collect();

    let two_consecutive_increases = counts
        .windows(3)
        .any(|w| w[0] < w[1] && w[1] < w[2]);
    let reaches_three = counts.iter().any(|&c| c >= 3);
    // verdicts read off the stable top half of the radius window
    let top_half = &counts[(r_max as usize) / 2..];
    let verdict = if reaches_three || two_consecutive_increases {
        OracleVerdict::InfinitelyMany
    } else if top_half.iter().all(|&c| c == 1) {
        OracleVerdict::One
    } else if top_half.iter().all(|&c| c == 2) {
        OracleVerdict::Two
    } else {
        OracleVerdict::Inconclusive
    };

    Ok(EstimateReport {
        inner_radius: r_max,
        outer_radius: outer,
        sphere_sizes,
        shell_component_counts: counts,
        verdict,
        element_count: None,
        capped: false,
    })
}

/// CSV emission of sphere sizes and shell component counts.
pub fn report_csv(report: &EstimateReport) -> String {
    let mut out = String::from("radius,sphere_size,shell_components\n");
    for (r, &size) in report.sphere_sizes.iter().enumerate() {
        let shell = if r >= 1 && r <= report.shell_component_counts.len() {
            report.shell_component_counts[r - 1].to_string()
        } else {
            String::new()
        };
        out.push_str(&format!("{r},{size},{shell}\n"));
    }
    out
}

/// Restricts oracle use to concrete cyclic labels; exposed for the CLI.
pub fn require_cyclic(lg: &LabelledGraph) -> Result<()> {
    cyclic_orders(lg).map(|_| ())
}

/// Vertex set helper used by cross-module checks.
pub fn all_vertices(lg: &LabelledGraph) -> VertexSet {
    lg.graph.vertex_set()
}
