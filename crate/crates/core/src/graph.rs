//! Undirected graphs on canonical root indices, oriented by index order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::RootSet;

/// A simple graph on `r` vertices, every edge directed from the lower to
/// the higher canonical index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGraph {
    r: usize,
    edges: Vec<(usize, usize)>,
    in_degrees: Vec<usize>,
    total_degrees: Vec<usize>,
}

impl RootGraph {
    /// Validates and orients. Rejects loops, repeated edges (in either
    /// direction) and out-of-range indices.
    pub fn new(r: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut oriented = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            for k in [i, j] {
                if k >= r {
                    return Err(Error::IndexOutOfRange { index: k, len: r });
                }
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
            }
            let e = (i.min(j), i.max(j));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{i}, {j}}}")));
            }
            oriented.push(e);
        }
        oriented.sort_unstable();
        let mut in_degrees = vec![0; r];
        let mut total_degrees = vec![0; r];
        for &(a, b) in &oriented {
            in_degrees[b] += 1;
            total_degrees[a] += 1;
            total_degrees[b] += 1;
        }
        Ok(Self { r, edges: oriented, in_degrees, total_degrees })
    }

    /// Number of vertices `r`.
    pub fn vertex_count(&self) -> usize {
        self.r
    }

    /// Oriented edges `(alpha, beta)`, `alpha < beta`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn in_degrees(&self) -> &[usize] {
        &self.in_degrees
    }

    pub fn total_degrees(&self) -> &[usize] {
        &self.total_degrees
    }

    /// Tails `alpha(k)` of the edges finishing in `j`.
    pub fn sources(&self, j: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.1 == j).map(|e| e.0).collect()
    }

    pub fn reorient(&self) -> Result<Self> {
        RootGraph::new(self.r, &self.edges)
    }

    /// Kahn's algorithm; `true` when every vertex gets removed.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = self.in_degrees.clone();
        let mut queue: VecDeque<usize> = (0..self.r).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &(a, b) in &self.edges {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        queue.push_back(b);
                    }
                }
            }
        }
        seen == self.r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson { edges: self.edges.iter().map(|&(a, b)| [a, b]).collect() })
            .expect("graph serializes")
    }
}

/// Validates `edges` against the distinct roots of `roots`.
pub fn orient(edges: &[(usize, usize)], roots: &RootSet) -> Result<RootGraph> {
    RootGraph::new(roots.distinct_count(), edges)
}

/// The three hypotheses of the classical bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    /// `|v_i| <= |v_j|` along every edge.
    pub cond1: bool,
    pub cond2: bool,
    /// In-degree at most 1 everywhere.
    pub cond3: bool,
}

impl Admissibility {
    pub fn all(&self) -> bool {
        self.cond1 && self.cond2 && self.cond3
    }
}

pub fn check_classical_admissible(g: &RootGraph) -> Admissibility {
    Admissibility {
        cond1: g.edges.iter().all(|&(a, b)| a < b),
        cond2: g.is_acyclic(),
        cond3: g.in_degrees.iter().all(|&d| d <= 1),
    }
}

/// `min_j d~_j`; 0 when some vertex is isolated.
pub fn min_total_degree(g: &RootGraph) -> usize {
    g.total_degrees.iter().copied().min().unwrap_or(0)
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    edges: Vec<[usize; 2]>,
}

/// Parses `{"edges": [[i, j], ...]}`.
pub fn parse_graph_json(text: &str) -> Result<Vec<(usize, usize)>> {
    let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))?;
    Ok(g.edges.into_iter().map(|[a, b]| (a, b)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Path,
    StarMax,
    Complete,
    NearestNeighbor,
    Random,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Path, Preset::StarMax, Preset::Complete, Preset::NearestNeighbor, Preset::Random];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Path => "path",
            Preset::StarMax => "star_max",
            Preset::Complete => "complete",
            Preset::NearestNeighbor => "nearest_neighbor",
            Preset::Random => "random",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown preset '{s}'")))
    }
}

pub fn path_edges(r: usize) -> Vec<(usize, usize)> {
    (1..r).map(|j| (j - 1, j)).collect()
}

/// Every vertex joined to the one of largest modulus.
pub fn star_max_edges(r: usize) -> Vec<(usize, usize)> {
    (0..r.saturating_sub(1)).map(|i| (i, r - 1)).collect()
}

pub fn complete_edges(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect()
}

/// Each vertex joined to its `sep` partner; repeated edges kept once.
pub fn nearest_neighbor_edges(roots: &RootSet) -> Result<Vec<(usize, usize)>> {
    let r = roots.distinct_count();
    if r < 2 {
        return Ok(Vec::new());
    }
    let mut set = BTreeSet::new();
    for j in 0..r {
        let (_, k) = roots.sep(j)?;
        set.insert((j.min(k), j.max(k)));
    }
    Ok(set.into_iter().collect())
}

/// Each pair kept with probability 1/2; at least one edge when `r >= 2`.
pub fn random_edges<R: Rng>(r: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let all = complete_edges(r);
    let mut out: Vec<_> = all.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if out.is_empty() && !all.is_empty() {
        out.push(all[rng.gen_range(0..all.len())]);
    }
    out
}

pub fn preset_edges<R: Rng>(preset: Preset, roots: &RootSet, rng: &mut R) -> Result<Vec<(usize, usize)>> {
    let r = roots.distinct_count();
    Ok(match preset {
        Preset::Path => path_edges(r),
        Preset::StarMax => star_max_edges(r),
        Preset::Complete => complete_edges(r),
        Preset::NearestNeighbor => nearest_neighbor_edges(roots)?,
        Preset::Random => random_edges(r, rng),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::roots::find_roots;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orient_examples() {
        let roots = find_roots(&parse_polynomial("x^2-1", 128).unwrap(), 128).unwrap();
        let g = orient(&[(1, 0)], &roots).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.in_degrees(), &[0, 1]);

        let g = RootGraph::new(3, &complete_edges(3)).unwrap();
        assert_eq!(g.in_degrees(), &[0, 1, 2]);

        let g = RootGraph::new(4, &[]).unwrap();
        assert_eq!(g.in_degrees(), &[0; 4]);
        assert_eq!(g.total_degrees(), &[0; 4]);
    }

    #[test]
    fn orient_errors() {
        assert!(matches!(RootGraph::new(3, &[(1, 1)]), Err(Error::InvalidGraph(m)) if m.contains("loop")));
        assert!(matches!(RootGraph::new(3, &[(0, 1), (1, 0)]), Err(Error::InvalidGraph(m)) if m.contains("{1, 0}")));
        assert!(matches!(RootGraph::new(2, &[(0, 2)]), Err(Error::IndexOutOfRange { index: 2, len: 2 })));
    }

    #[test]
    fn admissibility_examples() {
        let a = check_classical_admissible(&RootGraph::new(3, &path_edges(3)).unwrap());
        assert_eq!((a.cond1, a.cond2, a.cond3), (true, true, true));
        let star = RootGraph::new(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(star.in_degrees()[2], 2);
        let a = check_classical_admissible(&star);
        assert_eq!((a.cond1, a.cond2, a.cond3), (true, true, false));
        let a = check_classical_admissible(&RootGraph::new(3, &complete_edges(3)).unwrap());
        assert_eq!((a.cond1, a.cond2, a.cond3), (true, true, false));
    }

    #[test]
    fn min_total_degree_examples() {
        assert_eq!(min_total_degree(&RootGraph::new(3, &complete_edges(3)).unwrap()), 2);
        assert_eq!(min_total_degree(&RootGraph::new(3, &[(0, 1)]).unwrap()), 0);
        assert_eq!(min_total_degree(&RootGraph::new(3, &path_edges(3)).unwrap()), 1);
    }

    #[test]
    fn presets() {
        let roots = find_roots(&parse_polynomial("x^3-x", 128).unwrap(), 128).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(preset_edges(Preset::StarMax, &roots, &mut rng).unwrap(), vec![(0, 2), (1, 2)]);
        // roots 0, -1, 1: both outer roots are closest to 0
        assert_eq!(preset_edges(Preset::NearestNeighbor, &roots, &mut rng).unwrap(), vec![(0, 1), (0, 2)]);
        assert_eq!("star_max".parse::<Preset>().unwrap(), Preset::StarMax);
        assert!("wheel".parse::<Preset>().is_err());
        for _ in 0..20 {
            assert!(!random_edges(2, &mut rng).is_empty());
        }
    }

    #[test]
    fn json_round_trip() {
        let edges = parse_graph_json(r#"{"edges": [[0, 1], [2, 1]]}"#).unwrap();
        assert_eq!(edges, vec![(0, 1), (2, 1)]);
        let g = RootGraph::new(3, &edges).unwrap();
        assert_eq!(parse_graph_json(&g.to_json()).unwrap(), vec![(0, 1), (1, 2)]);
        assert!(parse_graph_json("{\"edges\": [[0]]}").is_err());
    }

    fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..10).prop_flat_map(|r| {
            let pairs = complete_edges(r);
            let n = pairs.len();
            (Just(r), prop::collection::vec(any::<bool>(), n), Just(pairs)).prop_map(|(r, keep, pairs)| {
                let edges = pairs
                    .into_iter()
                    .zip(keep)
                    .filter(|(_, k)| *k)
                    .map(|((a, b), _)| if (a + b) % 2 == 0 { (b, a) } else { (a, b) })
                    .collect();
                (r, edges)
            })
        })
    }

    proptest! {
        #[test]
        fn oriented_graphs_are_acyclic((r, edges) in graph_strategy()) {
            let g = RootGraph::new(r, &edges).unwrap();
            prop_assert!(g.is_acyclic());
            prop_assert!(check_classical_admissible(&g).cond1);
        }

        #[test]
        fn degree_sums((r, edges) in graph_strategy()) {
            let g = RootGraph::new(r, &edges).unwrap();
            prop_assert_eq!(g.in_degrees().iter().sum::<usize>(), g.edge_count());
            prop_assert_eq!(g.total_degrees().iter().sum::<usize>(), 2 * g.edge_count());
            prop_assert_eq!(g.in_degrees()[0], 0);
            prop_assert!(g.in_degrees().iter().all(|&d| d < r));
        }

        #[test]
        fn reorient_is_idempotent((r, edges) in graph_strategy()) {
            let g = RootGraph::new(r, &edges).unwrap();
            prop_assert_eq!(g.reorient().unwrap(), g);
        }
    }
}
