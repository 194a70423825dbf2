//! Integral laminations in shear coordinates.
//!
//! A lamination is stored as its shear vector with respect to a reference
//! triangulation. Any integer vector is admissible, so no curve data is kept.
//! Across a flip the vector mutates like an extra row of the extended matrix;
//! across a tag change it is carried over unchanged, which amounts to
//! following the lamination with its spiralling reversed at that puncture.

use std::collections::{HashMap, VecDeque};

use serde_json::{json, Value};

use crate::exchange::{ExchangeMatrix, ExtendedMatrix, GeometricSeed};
use crate::surface::{flip_graph, ArcId, Encoding, MarkedPoint, TaggedTriangulation};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Lamination {
    pub reference: TaggedTriangulation,
    pub name: Option<String>,
    pub shear: Vec<i64>,
}

/// An ordered family of laminations sharing one reference.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MultiLamination {
    pub laminations: Vec<Lamination>,
}

/// One step of a path in the tagged flip graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    Flip(usize),
    ChangeTags(MarkedPoint),
}

/// Parses a comma-separated path such as `f0,t2`: `fK` flips position `K`,
/// `tP` changes the tags at puncture `P`.
pub fn parse_path(s: &str) -> Result<Vec<PathStep>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (kind, rest) = t.split_at(1);
            let v: u32 = rest.parse().map_err(|_| Error::Parse(format!("bad path step {t:?}")))?;
            match kind {
                "f" => Ok(PathStep::Flip(v as usize)),
                "t" => Ok(PathStep::ChangeTags(v)),
                _ => Err(Error::Parse(format!("path step {t:?} must start with f or t"))),
            }
        })
        .collect()
}

/// The lamination with the given shear vector at `reference`.
pub fn lamination_from_shear(reference: &TaggedTriangulation, shear: Vec<i64>) -> Result<Lamination> {
    if shear.len() != reference.arc_count() {
        return Err(Error::Dimension(format!(
            "shear vector of length {} for {} arcs",
            shear.len(),
            reference.arc_count()
        )));
    }
    Ok(Lamination {
        reference: reference.clone(),
        name: None,
        shear,
    })
}

/// Mutates a shear vector as a coefficient row under a flip of `t` at `k`.
fn mutate_row(b: &ExchangeMatrix, row: &[i64], k: usize) -> Result<Vec<i64>> {
    let mut rows = b.rows();
    rows.push(row.to_vec());
    let m = ExtendedMatrix::new(rows)?.mutate(k)?;
    Ok(m.bottom_rows().pop().expect("one coefficient row"))
}

/// Reorders a vector indexed by the positions of `from` into the positions
/// of `to`, which must consist of the same arcs.
fn reindex(from: &TaggedTriangulation, to: &TaggedTriangulation, v: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0; v.len()];
    for (i, id) in from.arc_ids().iter().enumerate() {
        out[to.position_of(id)?] = v[i];
    }
    Ok(out)
}

/// The triangulation reached from `t` by following `path`.
pub fn apply_path(t: &TaggedTriangulation, path: &[PathStep]) -> Result<TaggedTriangulation> {
    let mut cur = t.clone();
    for &step in path {
        cur = match step {
            PathStep::Flip(k) => cur.flip_at(k)?.triangulation,
            PathStep::ChangeTags(p) => cur.change_tags(p)?,
        };
    }
    Ok(cur)
}

/// Shear coordinates of `l` at `target`, transported along `path`.
pub fn shear_coords(l: &Lamination, target: &TaggedTriangulation, path: &[PathStep]) -> Result<Vec<i64>> {
    let mut cur = l.reference.clone();
    let mut v = l.shear.clone();
    for &step in path {
        match step {
            PathStep::Flip(k) => {
                v = mutate_row(&cur.signed_adjacency(), &v, k)?;
                cur = cur.flip_at(k)?.triangulation;
            }
            PathStep::ChangeTags(p) => cur = cur.change_tags(p)?,
        }
    }
    if cur.key_encoding() != target.key_encoding() {
        return Err(Error::PathMismatch(format!("path of {} steps ends elsewhere", path.len())));
    }
    reindex(&cur, target, &v)
}

/// A shortest flip path from `from` to `to`, searching at most `bound` triangulations.
pub fn find_flip_path(from: &TaggedTriangulation, to: &TaggedTriangulation, bound: usize) -> Result<Vec<PathStep>> {
    let goal = to.key_encoding();
    let mut seen: HashMap<Encoding, Vec<PathStep>> = HashMap::from([(from.key_encoding(), Vec::new())]);
    let mut queue = VecDeque::from([(from.clone(), Vec::new())]);
    if from.key_encoding() == goal {
        return Ok(Vec::new());
    }
    while let Some((t, path)) = queue.pop_front() {
        for k in 0..t.arc_count() {
            let next = t.flip_at(k)?.triangulation;
            let enc = next.key_encoding();
            if seen.contains_key(&enc) {
                continue;
            }
            let mut p = path.clone();
            p.push(PathStep::Flip(k));
            if enc == goal {
                return Ok(p);
            }
            if seen.len() >= bound {
                return Err(Error::PathMismatch(format!("no flip path within {bound} triangulations")));
            }
            seen.insert(enc, p.clone());
            queue.push_back((next, p));
        }
    }
    Err(Error::PathMismatch("triangulations lie in different flip-graph components".into()))
}

const PATH_SEARCH_BOUND: usize = 100_000;

/// `B(t)` stacked over the shear vectors of the laminations at `t`.
pub fn assemble_extended(t: &TaggedTriangulation, ml: &MultiLamination) -> Result<ExtendedMatrix> {
    let b = t.signed_adjacency();
    let mut rows = Vec::with_capacity(ml.laminations.len());
    let mut path: Option<Vec<PathStep>> = None;
    for l in &ml.laminations {
        let p = match &path {
            Some(p) => p.clone(),
            None => {
                let p = find_flip_path(&l.reference, t, PATH_SEARCH_BOUND)?;
                path = Some(p.clone());
                p
            }
        };
        rows.push(shear_coords(l, t, &p)?);
    }
    ExtendedMatrix::from_parts(&b, &rows)
}

/// The lamination whose shear vector at `t` is the unit vector at `arc`.
pub fn elementary_lamination(t: &TaggedTriangulation, arc: &ArcId) -> Result<Lamination> {
    let k = t.position_of(arc)?;
    let mut v = vec![0; t.arc_count()];
    v[k] = 1;
    Ok(Lamination {
        reference: t.clone(),
        name: Some(format!("elementary {}", t.arc_name(k))),
        shear: v,
    })
}

/// The seed with principal coefficients at `b`.
pub fn principal_seed(b: &ExchangeMatrix) -> GeometricSeed {
    GeometricSeed::initial(ExtendedMatrix::principal(b))
}

/// Elementary laminations of every tagged arc reachable from `t`, expressed
/// at `t`, one per arc in identifier order.
pub fn universal_multilamination(t: &TaggedTriangulation, bound: usize) -> Result<MultiLamination> {
    let g = flip_graph(t, bound)?;
    if g.truncated {
        return Err(Error::FiniteTypeViolation(bound));
    }
    let mut first: HashMap<ArcId, (usize, usize)> = HashMap::new();
    for (v, tri) in g.vertices.iter().enumerate() {
        for (k, id) in tri.arc_ids().iter().enumerate() {
            first.entry(id.clone()).or_insert((v, k));
        }
    }
    let mut laminations = Vec::new();
    for id in g.arcs() {
        let (v, _) = first[&id];
        let el = elementary_lamination(&g.vertices[v], &id)?;
        let back: Vec<PathStep> = g.path_to(v).into_iter().rev().map(PathStep::Flip).collect();
        let shear = shear_coords(&el, t, &back)?;
        laminations.push(Lamination {
            reference: t.clone(),
            name: el.name,
            shear,
        });
    }
    Ok(MultiLamination { laminations })
}

impl Lamination {
    pub fn to_json(&self, reference_name: &str) -> Value {
        json!({ "reference": reference_name, "shear": self.shear })
    }
}

impl MultiLamination {
    pub fn new(laminations: Vec<Lamination>) -> Result<Self> {
        if let Some(first) = laminations.first() {
            if laminations.iter().any(|l| l.reference != first.reference) {
                return Err(Error::Domain("laminations must share one reference".into()));
            }
        }
        Ok(MultiLamination { laminations })
    }

    pub fn to_json(&self, reference_name: &str) -> Value {
        Value::Array(self.laminations.iter().map(|l| l.to_json(reference_name)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_parsing() {
        assert_eq!(
            parse_path("f0, t2,f1").unwrap(),
            vec![PathStep::Flip(0), PathStep::ChangeTags(2), PathStep::Flip(1)]
        );
        assert!(parse_path("x1").is_err());
        assert!(parse_path("").unwrap().is_empty());
    }
}
