//! Breadth-first enumeration of exchange graphs.
//!
//! Vertices are deduplicated by the unordered cluster. When a mutation lands
//! on a known cluster, the matrix data is compared under the induced
//! position map and any disagreement is reported as an error.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::rational::RationalFunction;
use super::seed::{GeometricSeed, Seed, SplitPolicy};
use crate::{Error, Result};

/// What the enumerator needs from a seed type.
pub trait PatternSeed: Clone + Send + Sync {
    fn rank(&self) -> usize;
    fn cluster(&self) -> &[RationalFunction];
    fn mutate_at(&self, k: usize) -> Result<Self>;
    /// True if `other` is this seed with position `i` moved to `perm[i]`,
    /// as far as the non-cluster data is concerned.
    fn agrees_under(&self, other: &Self, perm: &[usize]) -> bool;
    fn to_json(&self) -> Value;
}

impl PatternSeed for GeometricSeed {
    fn rank(&self) -> usize {
        GeometricSeed::rank(self)
    }
    fn cluster(&self) -> &[RationalFunction] {
        GeometricSeed::cluster(self)
    }
    fn mutate_at(&self, k: usize) -> Result<Self> {
        self.mutate(k)
    }
    fn agrees_under(&self, other: &Self, perm: &[usize]) -> bool {
        &self.ext().permuted(perm) == other.ext()
    }
    fn to_json(&self) -> Value {
        GeometricSeed::to_json(self)
    }
}

/// Non-normalized seeds are enumerated with [`SplitPolicy::KeepMinus`].
/// Coefficient pairs depend on the path taken, so only the exchange
/// matrices are compared when two paths meet.
impl PatternSeed for Seed {
    fn rank(&self) -> usize {
        Seed::rank(self)
    }
    fn cluster(&self) -> &[RationalFunction] {
        Seed::cluster(self)
    }
    fn mutate_at(&self, k: usize) -> Result<Self> {
        self.mutate(k, SplitPolicy::KeepMinus)
    }
    fn agrees_under(&self, other: &Self, perm: &[usize]) -> bool {
        &self.matrix().permuted(perm) == other.matrix()
    }
    fn to_json(&self) -> Value {
        Seed::to_json(self)
    }
}

/// An edge out of a vertex: the neighbour and the position map, so that
/// position `y` here corresponds to position `perm[y]` at the neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbor {
    pub vertex: usize,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph<S> {
    pub vertices: Vec<S>,
    /// `neighbors[v][k]` is the result of mutating vertex `v` at position `k`.
    pub neighbors: Vec<Vec<Option<Neighbor>>>,
    /// BFS tree: the vertex and direction each vertex was first reached from.
    pub parents: Vec<Option<(usize, usize)>>,
    /// Distinct cluster variables, sorted.
    pub variables: Vec<RationalFunction>,
    /// True when the bound stopped the closure before it completed.
    pub truncated: bool,
}

fn cluster_key(c: &[RationalFunction]) -> Vec<RationalFunction> {
    let mut k = c.to_vec();
    k.sort();
    k
}

fn position_map(from: &[RationalFunction], to: &[RationalFunction]) -> Result<Vec<usize>> {
    from.iter()
        .map(|x| {
            to.iter()
                .position(|y| y == x)
                .ok_or_else(|| Error::Inconsistent("clusters with equal keys differ".into()))
        })
        .collect()
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Mutation closure of `start`, stopping once `max_seeds` vertices exist.
pub fn enumerate_exchange_graph<S: PatternSeed>(start: &S, max_seeds: usize) -> Result<ExchangeGraph<S>> {
    if max_seeds == 0 {
        return Err(Error::Domain("seed bound must be at least 1".into()));
    }
    let n = start.rank();
    let mut g = ExchangeGraph {
        vertices: vec![start.clone()],
        neighbors: vec![vec![None; n]],
        parents: vec![None],
        variables: Vec::new(),
        truncated: false,
    };
    let mut index: HashMap<Vec<RationalFunction>, usize> = HashMap::new();
    index.insert(cluster_key(start.cluster()), 0);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&v| (0..n).map(move |k| (v, k)))
            .filter(|&(v, k)| g.neighbors[v][k].is_none())
            .collect();
        let vertices = &g.vertices;
        let results: Vec<Result<S>> = jobs.par_iter().map(|&(v, k)| vertices[v].mutate_at(k)).collect();
        let mut next = Vec::new();
        for (&(v, k), mutated) in jobs.iter().zip(results) {
            if g.neighbors[v][k].is_some() {
                continue;
            }
            let mutated = mutated?;
            let key = cluster_key(mutated.cluster());
            let target = match index.get(&key) {
                Some(&w) => Some((w, position_map(mutated.cluster(), g.vertices[w].cluster())?)),
                None if g.vertices.len() < max_seeds => {
                    let w = g.vertices.len();
                    index.insert(key, w);
                    g.vertices.push(mutated.clone());
                    g.neighbors.push(vec![None; n]);
                    g.parents.push(Some((v, k)));
                    next.push(w);
                    Some((w, (0..n).collect()))
                }
                None => {
                    g.truncated = true;
                    None
                }
            };
            let Some((w, perm)) = target else { continue };
            if !mutated.agrees_under(&g.vertices[w], &perm) {
                return Err(Error::Inconsistent(format!(
                    "mutating vertex {v} at {k} reaches vertex {w} with different matrix data"
                )));
            }
            let back = invert(&perm);
            let k_there = perm[k];
            if g.neighbors[w][k_there].is_none() {
                g.neighbors[w][k_there] = Some(Neighbor { vertex: v, perm: back });
            }
            g.neighbors[v][k] = Some(Neighbor { vertex: w, perm });
        }
        frontier = next;
    }
    let mut vars: Vec<RationalFunction> = g.vertices.iter().flat_map(|s| s.cluster().iter().cloned()).collect();
    vars.sort();
    vars.dedup();
    g.variables = vars;
    Ok(g)
}

impl<S: PatternSeed> ExchangeGraph<S> {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Undirected edges `(v, k, w)` with `v ≤ w`, each listed once.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (v, row) in self.neighbors.iter().enumerate() {
            for (k, nb) in row.iter().enumerate() {
                if let Some(nb) = nb {
                    let back = self.neighbors[nb.vertex][nb.perm[k]].as_ref().map(|b| b.vertex);
                    debug_assert!(back.is_none() || back == Some(v));
                    if v < nb.vertex || (v == nb.vertex && k <= nb.perm[k]) {
                        out.push((v, k, nb.vertex));
                    }
                }
            }
        }
        out
    }

    /// Mutation sequence from the start vertex to `v` along the BFS tree.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some((p, k)) = self.parents[cur] {
            path.push(k);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Follows a mutation sequence from `v`. Directions refer to the positions
    /// of the seed at `v`, carried along the way. Returns the final vertex
    /// and the map from positions at `v` to positions there.
    pub fn walk(&self, v: usize, seq: &[usize]) -> Option<(usize, Vec<usize>)> {
        let n = self.neighbors.first().map(|r| r.len()).unwrap_or(0);
        let mut cur = v;
        let mut perm: Vec<usize> = (0..n).collect();
        for &k in seq {
            let nb = self.neighbors[cur].get(*perm.get(k)?)?.as_ref()?;
            perm = perm.iter().map(|&p| nb.perm[p]).collect();
            cur = nb.vertex;
        }
        Some((cur, perm))
    }

    /// Converts every vertex, keeping the graph structure.
    pub fn map<T, F>(&self, f: F) -> Result<ExchangeGraph<T>>
    where
        F: Fn(&S) -> Result<T>,
    {
        Ok(ExchangeGraph {
            vertices: self.vertices.iter().map(f).collect::<Result<_>>()?,
            neighbors: self.neighbors.clone(),
            parents: self.parents.clone(),
            variables: self.variables.clone(),
            truncated: self.truncated,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertex_count": self.vertices.len(),
            "edge_count": self.edges().len(),
            "truncated": self.truncated,
            "variables": self.variables.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "vertices": self.vertices.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "edges": self.edges().iter().map(|&(v, k, w)| json!([v, k, w])).collect::<Vec<_>>(),
        })
    }

    /// Graphviz rendering. Vertex labels are the sorted cluster, cut at 60 characters.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for (v, s) in self.vertices.iter().enumerate() {
            let mut label = cluster_key(s.cluster())
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            if label.chars().count() > 60 {
                label = label.chars().take(60).collect();
            }
            out.push_str(&format!("  v{v} [label=\"{}\"];\n", label.replace('"', "\\\"")));
        }
        for (v, k, w) in self.edges() {
            out.push_str(&format!("  v{v} -- v{w} [label=\"{k}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::matrix::{ExchangeMatrix, ExtendedMatrix};

    #[test]
    fn a2_pentagon() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let g = enumerate_exchange_graph(&Seed::trivial(b.clone()), 100).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.variables.len(), 5);
        assert_eq!(g.edges().len(), 5);
        assert!(!g.truncated);
        let gp = enumerate_exchange_graph(&GeometricSeed::initial(ExtendedMatrix::principal(&b)), 100).unwrap();
        assert_eq!(gp.vertex_count(), 5);
        assert_eq!(gp.walk(0, &[0, 1, 0, 1, 0]).unwrap().0, 0);
    }

    #[test]
    fn bound_truncates() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let g = enumerate_exchange_graph(&Seed::trivial(b), 3).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.truncated);
    }
}
