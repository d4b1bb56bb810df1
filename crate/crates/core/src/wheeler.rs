//! Wheeler graphs restricted to forests of out-trees: properness
//! validation, constructive proper orderings, the induced BWT string, and
//! brute-force source ordering.
//!
//! A vertex order is proper when sources (in-degree 0) come first, targets
//! of smaller labels precede targets of larger labels, and equal-label edges
//! never cross. For a forest these constraints leave exactly two freedoms:
//! the source order and the relative order of equal-label siblings.

use thiserror::Error;

use crate::bwt::count_runs;
use crate::cao::tuple::greedy_arrange;
use crate::perm::{factorial, for_each_permutation};
use crate::reductions::IncidenceGadget;

/// Errors from Wheeler graph operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WheelerError {
    /// An edge referenced a vertex outside `0..n`.
    #[error("edge ({0}, {1}, {2}) references an unknown vertex")]
    UnknownVertex(u32, u32, u32),
    /// Parallel edges must carry distinct labels.
    #[error("parallel edges ({0}, {1}) with equal label {2}")]
    ParallelSameLabel(u32, u32, u32),
    /// The operation supports forests of out-trees only.
    #[error("graph is not a forest of out-trees: {0}")]
    UnsupportedShape(String),
    /// An ordering argument was rejected.
    #[error("ordering is not a bijection onto 0..{0}")]
    NotBijective(usize),
    /// The ordering argument is not proper.
    #[error("ordering is not proper: {0}")]
    ImproperOrdering(String),
    /// Too many sources for brute force.
    #[error("{sources} sources need {needed} permutations > limit {limit}")]
    LimitExceeded {
        /// Source count.
        sources: usize,
        /// Permutations required.
        needed: u128,
        /// Configured cap.
        limit: u128,
    },
}

/// The first properness violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The rank assignment is not a bijection.
    NotBijective,
    /// A source is ranked after a non-source.
    SourceNotFirst {
        /// The offending source.
        source: u32,
        /// A non-source placed before it.
        other: u32,
    },
    /// Condition (i): a smaller label's target must precede a larger
    /// label's target.
    LabelOrder {
        /// Edge with the smaller label.
        first: (u32, u32, u32),
        /// Edge with the larger label.
        second: (u32, u32, u32),
    },
    /// Condition (ii): equal-label edges may not cross.
    SameLabelCrossing {
        /// Edge from the earlier source.
        first: (u32, u32, u32),
        /// Edge from the later source.
        second: (u32, u32, u32),
    },
}

/// An edge-labeled directed graph with identified sources.
#[derive(Clone, Debug)]
pub struct WheelerGraph {
    n: usize,
    edges: Vec<(u32, u32, u32)>,
}

impl WheelerGraph {
    /// Validate vertex ids and parallel-edge labels.
    pub fn new(n_vertices: usize, edges: Vec<(u32, u32, u32)>) -> Result<Self, WheelerError> {
        for &(u, v, k) in &edges {
            if u as usize >= n_vertices || v as usize >= n_vertices {
                return Err(WheelerError::UnknownVertex(u, v, k));
            }
        }
        let mut seen = edges.clone();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(WheelerError::ParallelSameLabel(w[0].0, w[0].1, w[0].2));
            }
        }
        Ok(WheelerGraph {
            n: n_vertices,
            edges,
        })
    }

    /// Vertex count.
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    /// Vertices with in-degree 0, ascending.
    pub fn sources(&self) -> Vec<u32> {
        let mut indeg = vec![0usize; self.n];
        for &(_, v, _) in &self.edges {
            indeg[v as usize] += 1;
        }
        (0..self.n as u32)
            .filter(|&v| indeg[v as usize] == 0)
            .collect()
    }
}

/// A candidate vertex ordering: `rank[v]` is the position of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperOrdering {
    rank: Vec<u32>,
}

impl ProperOrdering {
    /// Wrap a rank assignment (validated lazily by [`validate`]).
    pub fn new(rank: Vec<u32>) -> Self {
        ProperOrdering { rank }
    }

    /// Rank of a vertex.
    pub fn rank(&self, v: u32) -> u32 {
        self.rank[v as usize]
    }

    /// Ranks indexed by vertex.
    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Vertices in rank order.
    pub fn vertices_in_order(&self) -> Vec<u32> {
        let mut order = vec![0u32; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            order[r as usize] = v as u32;
        }
        order
    }
}

/// Check sources-first plus conditions (i) and (ii); reports the first
/// violation in edge insertion order.
pub fn validate(g: &WheelerGraph, phi: &ProperOrdering) -> Result<(), Violation> {
    let n = g.n_vertices();
    if phi.rank.len() != n {
        return Err(Violation::NotBijective);
    }
    let mut seen = vec![false; n];
    for &r in &phi.rank {
        if r as usize >= n || seen[r as usize] {
            return Err(Violation::NotBijective);
        }
        seen[r as usize] = true;
    }

    let sources = g.sources();
    let is_source = {
        let mut v = vec![false; n];
        for &s in &sources {
            v[s as usize] = true;
        }
        v
    };
    let max_source_rank = sources.iter().map(|&s| phi.rank(s)).max();
    if let Some(max_source_rank) = max_source_rank {
        for v in 0..n as u32 {
            if !is_source[v as usize] && phi.rank(v) < max_source_rank {
                let source = sources
                    .iter()
                    .copied()
                    .find(|&s| phi.rank(s) > phi.rank(v))
                    .expect("some source ranks above v");
                return Err(Violation::SourceNotFirst { source, other: v });
            }
        }
    }

    for (a, &(u, v, k)) in g.edges().iter().enumerate() {
        for &(u2, v2, k2) in &g.edges()[a + 1..] {
            // Condition (i), both directions of the pair.
            if k < k2 && phi.rank(v) >= phi.rank(v2) {
                return Err(Violation::LabelOrder {
                    first: (u, v, k),
                    second: (u2, v2, k2),
                });
            }
            if k2 < k && phi.rank(v2) >= phi.rank(v) {
                return Err(Violation::LabelOrder {
                    first: (u2, v2, k2),
                    second: (u, v, k),
                });
            }
            // Condition (ii).
            if k == k2 {
                if phi.rank(u) < phi.rank(u2) && phi.rank(v) > phi.rank(v2) {
                    return Err(Violation::SameLabelCrossing {
                        first: (u, v, k),
                        second: (u2, v2, k2),
                    });
                }
                if phi.rank(u2) < phi.rank(u) && phi.rank(v2) > phi.rank(v) {
                    return Err(Violation::SameLabelCrossing {
                        first: (u2, v2, k2),
                        second: (u, v, k),
                    });
                }
            }
        }
    }
    Ok(())
}

struct Forest {
    // (parent, label, edge index) per vertex; sources have none.
    parent: Vec<Option<(u32, u32, u32)>>,
    sources: Vec<u32>,
}

fn forest_shape(g: &WheelerGraph) -> Result<Forest, WheelerError> {
    let n = g.n_vertices();
    let mut parent: Vec<Option<(u32, u32, u32)>> = vec![None; n];
    for (idx, &(u, v, k)) in g.edges().iter().enumerate() {
        if parent[v as usize].is_some() {
            return Err(WheelerError::UnsupportedShape(format!(
                "vertex {v} has in-degree > 1"
            )));
        }
        parent[v as usize] = Some((u, k, idx as u32));
    }
    let sources = g.sources();
    // Walking parents from every vertex must reach a source; a cycle would
    // exceed n steps.
    for v in 0..n as u32 {
        let mut cur = v;
        let mut steps = 0usize;
        while let Some((p, _, _)) = parent[cur as usize] {
            cur = p;
            steps += 1;
            if steps > n {
                return Err(WheelerError::UnsupportedShape("cycle detected".into()));
            }
        }
    }
    Ok(Forest { parent, sources })
}

/// Order a forest properly: sources first in the given order, every other
/// vertex by (incoming label, predecessor rank), ties by edge insertion.
pub fn proper_order(
    g: &WheelerGraph,
    source_order: &[u32],
) -> Result<ProperOrdering, WheelerError> {
    let forest = forest_shape(g)?;
    let n = g.n_vertices();
    if source_order.len() != forest.sources.len() {
        return Err(WheelerError::NotBijective(forest.sources.len()));
    }
    let mut source_pos = vec![usize::MAX; n];
    for (pos, &s) in source_order.iter().enumerate() {
        if s as usize >= n || forest.parent[s as usize].is_some() {
            return Err(WheelerError::NotBijective(forest.sources.len()));
        }
        if source_pos[s as usize] != usize::MAX {
            return Err(WheelerError::NotBijective(forest.sources.len()));
        }
        source_pos[s as usize] = pos;
    }

    fn compare(
        a: u32,
        b: u32,
        parent: &[Option<(u32, u32, u32)>],
        source_pos: &[usize],
    ) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if a == b {
            return Ordering::Equal;
        }
        match (parent[a as usize], parent[b as usize]) {
            (None, None) => source_pos[a as usize].cmp(&source_pos[b as usize]),
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some((pa, la, ia)), Some((pb, lb, ib))) => la
                .cmp(&lb)
                .then_with(|| compare(pa, pb, parent, source_pos))
                .then_with(|| ia.cmp(&ib)),
        }
    }

    let mut non_sources: Vec<u32> = (0..n as u32)
        .filter(|&v| forest.parent[v as usize].is_some())
        .collect();
    non_sources.sort_by(|&a, &b| compare(a, b, &forest.parent, &source_pos));

    let mut rank = vec![0u32; n];
    for (pos, &s) in source_order.iter().enumerate() {
        rank[s as usize] = pos as u32;
    }
    for (offset, &v) in non_sources.iter().enumerate() {
        rank[v as usize] = (source_order.len() + offset) as u32;
    }
    Ok(ProperOrdering { rank })
}

/// The BWT string induced by a Wheeler graph under a proper ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WgBwt {
    /// Departing labels, vertex by vertex in rank order, each vertex's
    /// labels arranged to minimize total runs.
    pub string: Vec<u32>,
    /// Run count of `string`.
    pub runs: usize,
}

/// Compute the induced BWT string: per-vertex departing label multisets
/// with duplicates grouped, group order chosen by the tuple-ordering greedy
/// over the whole vertex sequence.
pub fn wg_bwt(g: &WheelerGraph, phi: &ProperOrdering) -> Result<WgBwt, WheelerError> {
    validate(g, phi).map_err(|v| WheelerError::ImproperOrdering(format!("{v:?}")))?;
    let n = g.n_vertices();
    let mut out_labels: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, _, k) in g.edges() {
        out_labels[u as usize].push(k);
    }

    let order = phi.vertices_in_order();
    let mut tuples: Vec<Vec<u32>> = Vec::new();
    let mut multiplicity: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        let labels = &mut out_labels[v as usize];
        if labels.is_empty() {
            continue;
        }
        labels.sort_unstable();
        let mut distinct = Vec::new();
        let mut counts = Vec::new();
        for &k in labels.iter() {
            if distinct.last() == Some(&k) {
                *counts.last_mut().unwrap() += 1;
            } else {
                distinct.push(k);
                counts.push(1);
            }
        }
        tuples.push(distinct);
        multiplicity.push(counts);
    }

    let arrangement = greedy_arrange(&tuples);
    let mut string = Vec::new();
    for (t, (arranged, original)) in arrangement.tuples.iter().zip(tuples.iter()).enumerate() {
        for &label in arranged {
            let at = original.binary_search(&label).expect("label present");
            string.extend(std::iter::repeat_n(label, multiplicity[t][at]));
        }
    }
    let runs = count_runs(&string);
    debug_assert_eq!(runs, arrangement.runs());
    Ok(WgBwt { string, runs })
}

/// Build the source-ordering gadget of a padded incidence matrix: one
/// source per column binding a shared 0-labeled spine, a 1-labeled exit at
/// depth `i + 1` for each 1 in (1-based) row `i`, and the spine running to
/// depth `m + 2*ell + 2` for the all-zero path. Source `j`'s vertex id is
/// `j`, matching its column.
pub fn build_so_gadget(gad: &IncidenceGadget) -> WheelerGraph {
    let n_cols = gad.n_cols();
    let spine_len = gad.n_rows() + 2;
    let mut edges = Vec::new();
    let mut next_vertex = n_cols as u32;
    for col in 0..n_cols as u32 {
        let mut prev = col;
        let mut spine = Vec::with_capacity(spine_len);
        for _ in 0..spine_len {
            let v = next_vertex;
            next_vertex += 1;
            edges.push((prev, v, 0));
            spine.push(v);
            prev = v;
        }
        for r in 0..gad.n_rows() {
            if gad.row_ones(r).contains(&col) {
                // 1-based row r+1: the exit leaves the spine at depth r+2.
                let leaf = next_vertex;
                next_vertex += 1;
                edges.push((spine[r + 1], leaf, 1));
            }
        }
    }
    WheelerGraph::new(next_vertex as usize, edges).expect("gadget edges are fresh")
}

/// Result of a brute-force source ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoResult {
    /// Best source order found (lexicographically smallest among ties).
    pub source_order: Vec<u32>,
    /// Its run count.
    pub runs: usize,
    /// Source permutations evaluated.
    pub explored: u64,
}

/// Minimize runs over all source permutations via `proper_order` + `wg_bwt`.
pub fn so_brute_force(g: &WheelerGraph, limit: u128) -> Result<SoResult, WheelerError> {
    let sources = g.sources();
    let needed = factorial(sources.len()).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(WheelerError::LimitExceeded {
            sources: sources.len(),
            needed,
            limit,
        });
    }
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut explored = 0u64;
    let mut failure: Option<WheelerError> = None;
    for_each_permutation(&sources, |perm| {
        if failure.is_some() {
            return;
        }
        let result = proper_order(g, perm).and_then(|phi| wg_bwt(g, &phi));
        match result {
            Ok(bwt) => {
                explored += 1;
                if best.as_ref().is_none_or(|(r, _)| bwt.runs < *r) {
                    best = Some((bwt.runs, perm.to_vec()));
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (runs, source_order) = best.expect("at least one source order");
    Ok(SoResult {
        source_order,
        runs,
        explored,
    })
}
