//! Closure of a tagged triangulation under flips.

use std::collections::HashMap;

use super::triangulation::{ArcId, Encoding, TaggedTriangulation};
use crate::exchange::Neighbor;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct FlipGraph {
    pub vertices: Vec<TaggedTriangulation>,
    /// `neighbors[v][k]`: the flip of vertex `v` at position `k`, with the
    /// position map into the neighbour.
    pub neighbors: Vec<Vec<Option<Neighbor>>>,
    pub parents: Vec<Option<(usize, usize)>>,
    pub truncated: bool,
}

/// Breadth-first flip closure of `t0`, deduplicated by the arc-identifier
/// encoding, with at most `max_vertices` vertices.
pub fn flip_graph(t0: &TaggedTriangulation, max_vertices: usize) -> Result<FlipGraph> {
    if max_vertices == 0 {
        return Err(Error::Domain("vertex bound must be at least 1".into()));
    }
    let n = t0.arc_count();
    let mut g = FlipGraph {
        vertices: vec![t0.clone()],
        neighbors: vec![vec![None; n]],
        parents: vec![None],
        truncated: false,
    };
    let mut index: HashMap<Encoding, usize> = HashMap::from([(t0.key_encoding(), 0)]);
    let mut v = 0;
    while v < g.vertices.len() {
        for k in 0..n {
            if g.neighbors[v][k].is_some() {
                continue;
            }
            let flipped = g.vertices[v].flip_at(k)?.triangulation;
            let enc = flipped.key_encoding();
            let w = match index.get(&enc) {
                Some(&w) => w,
                None if g.vertices.len() < max_vertices => {
                    let w = g.vertices.len();
                    index.insert(enc, w);
                    g.vertices.push(flipped.clone());
                    g.neighbors.push(vec![None; n]);
                    g.parents.push(Some((v, k)));
                    w
                }
                None => {
                    g.truncated = true;
                    continue;
                }
            };
            let target = &g.vertices[w];
            let perm = flipped
                .arc_ids()
                .iter()
                .map(|id| target.position_of(id))
                .collect::<Result<Vec<usize>>>()
                .map_err(|_| Error::Inconsistent(format!("vertex {w} lacks an arc of the flip of {v} at {k}")))?;
            let mut back = vec![0; n];
            for (i, &p) in perm.iter().enumerate() {
                back[p] = i;
            }
            if g.neighbors[w][perm[k]].is_none() {
                g.neighbors[w][perm[k]] = Some(Neighbor { vertex: v, perm: back });
            }
            g.neighbors[v][k] = Some(Neighbor { vertex: w, perm });
        }
        v += 1;
    }
    Ok(g)
}

impl FlipGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        let directed: usize = self.neighbors.iter().map(|r| r.iter().flatten().count()).sum();
        directed / 2
    }

    /// All arc identifiers occurring anywhere in the graph, sorted.
    pub fn arcs(&self) -> Vec<ArcId> {
        let mut all: Vec<ArcId> = self.vertices.iter().flat_map(|t| t.arc_ids().iter().cloned()).collect();
        all.sort();
        all.dedup();
        all
    }

    /// Flip positions from the root to `v` along the BFS tree. New vertices
    /// keep their parent's positions, so these are root positions too.
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

    /// Every vertex has all `n` neighbours.
    pub fn is_regular(&self) -> bool {
        self.neighbors.iter().all(|r| r.iter().all(Option::is_some))
    }
}
