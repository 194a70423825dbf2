//! Tagged triangulations as gluing complexes of oriented triangles.
//!
//! A tagged triangulation is stored as an ideal triangulation (the base)
//! together with the set of punctures at which every arc end is notched.
//! Positions `0..n` index the tagged arcs. When the base has a self-folded
//! triangle with radius `r` and loop `ℓ` around a puncture `p`, the position
//! holding `ℓ` stands for the radius notched at `p`; such a `p` is never in
//! the notched set.
//!
//! Each triangulation also carries a frame relative to the root it was
//! built from: the c-vectors of its positions. The g-vector of a position
//! (a row of the inverse c-matrix) does not depend on the flip path taken,
//! and serves as the arc's persistent identifier.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::marked::{validate_surface, MarkedPoint, MarkedSurface};
use crate::exchange::{ExchangeMatrix, ExtendedMatrix};
use crate::{Error, Result};

/// One side of a triangle: an interior arc (by position) or a boundary segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(usize),
    Boundary(usize),
}

/// A counterclockwise triangle. Side `i` runs from `corners[i]` to `corners[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub corners: [MarkedPoint; 3],
    pub sides: [Side; 3],
}

impl Triangle {
    pub fn new(corners: [MarkedPoint; 3], sides: [Side; 3]) -> Self {
        Triangle { corners, sides }
    }

    /// The same triangle with side `r` moved to slot 0.
    pub fn rotated(&self, r: usize) -> Self {
        Triangle {
            corners: [0, 1, 2].map(|i| self.corners[(i + r) % 3]),
            sides: [0, 1, 2].map(|i| self.sides[(i + r) % 3]),
        }
    }

    pub fn endpoints(&self, i: usize) -> (MarkedPoint, MarkedPoint) {
        (self.corners[i], self.corners[(i + 1) % 3])
    }

    /// For a self-folded triangle: `(loop, radius, enclosed puncture)`.
    pub fn self_folded(&self) -> Option<(usize, usize, MarkedPoint)> {
        for i in 0..3 {
            let (a, b) = (self.sides[(i + 1) % 3], self.sides[(i + 2) % 3]);
            if let (Side::Arc(r), Side::Arc(r2), Side::Arc(l)) = (a, b, self.sides[i]) {
                if r == r2 {
                    return Some((l, r, self.corners[(i + 2) % 3]));
                }
            }
        }
        None
    }

    fn map_arcs(&self, f: impl Fn(usize) -> usize) -> Self {
        Triangle {
            corners: self.corners,
            sides: self.sides.map(|s| match s {
                Side::Arc(k) => Side::Arc(f(k)),
                b => b,
            }),
        }
    }

    fn min_rotation_by<K: Ord>(&self, key: impl Fn(&Triangle) -> K) -> Triangle {
        (0..3).map(|r| self.rotated(r)).min_by_key(|t| key(t)).expect("three rotations")
    }
}

/// Persistent arc identifier: the g-vector of the tagged arc relative to the
/// root triangulation, in the basis of the root's positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub Vec<i64>);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "g({})", parts.join(","))
    }
}

/// Whether a flip happens inside a once-punctured digon or a quadrilateral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipKind {
    D,
    Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlipResult {
    pub triangulation: TaggedTriangulation,
    pub position: usize,
    pub replaced_arc: ArcId,
    pub new_arc: ArcId,
    pub kind: FlipKind,
}

/// Endpoints of a tagged arc with the tag at each end (`true` = notched).
/// Endpoints are sorted; a loop never appears since loops stand for
/// notched radii.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedArc {
    pub ends: [MarkedPoint; 2],
    pub notched: [bool; 2],
}

impl fmt::Display for TaggedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |i: usize| format!("{}{}", self.ends[i], if self.notched[i] { "*" } else { "" });
        write!(f, "{}-{}", end(0), end(1))
    }
}

/// A side as it appears in a position-independent encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SideCode {
    Boundary(usize),
    Arc(usize),
    Key(ArcId),
}

/// Structural encoding used for equality and deduplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Encoding {
    pub triangles: Vec<([SideCode; 3], [MarkedPoint; 3])>,
    pub notched: Vec<MarkedPoint>,
    pub twist: Vec<MarkedPoint>,
}

#[derive(Clone, Debug)]
pub struct TaggedTriangulation {
    surface: MarkedSurface,
    n: usize,
    triangles: Vec<Triangle>,
    notched: BTreeSet<MarkedPoint>,
    /// c-vectors: rows are root positions, columns are positions here.
    c_matrix: Vec<Vec<i64>>,
    /// Punctures whose tags were changed relative to the root.
    twist: BTreeSet<MarkedPoint>,
    root_labels: Vec<String>,
    keys: Vec<ArcId>,
}

impl PartialEq for TaggedTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface
            && self.notched == other.notched
            && self.c_matrix == other.c_matrix
            && self.twist == other.twist
            && self.position_encoding() == other.position_encoding()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Rows of `C⁻¹` for a unimodular integer matrix.
fn g_vectors(c: &[Vec<i64>]) -> Result<Vec<ArcId>> {
    let n = c.len();
    let mut a: Vec<Vec<BigRational>> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Inconsistent("singular c-matrix".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(pivot_row) {
                    *v = &*v - &f * p;
                }
            }
        }
    }
    // The inverse occupies the right half; its row j is the g-vector of position j.
    let inverse: Vec<Vec<i64>> = a
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|v| {
                    if v.is_integer() {
                        v.to_integer().to_i64().ok_or(Error::Overflow("g-vector"))
                    } else {
                        Err(Error::Inconsistent("c-matrix is not unimodular".into()))
                    }
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    // inverse[i][j] with i = position, j = root position.
    Ok(inverse.into_iter().map(ArcId).collect())
}

impl TaggedTriangulation {
    /// Builds and validates a triangulation; it becomes its own root.
    pub fn new(
        surface: MarkedSurface,
        triangles: Vec<Triangle>,
        notched: impl IntoIterator<Item = MarkedPoint>,
        root_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = validate_surface(&surface)?;
        let labels = root_labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::Dimension(format!("{} labels for {n} arcs", labels.len())));
        }
        let t = TaggedTriangulation {
            surface,
            n,
            triangles,
            notched: notched.into_iter().collect(),
            c_matrix: identity(n),
            twist: BTreeSet::new(),
            root_labels: labels,
            keys: Vec::new(),
        };
        t.validate()?;
        t.with_keys()
    }

    fn with_keys(mut self) -> Result<Self> {
        self.keys = g_vectors(&self.c_matrix)?;
        Ok(self)
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn arc_count(&self) -> usize {
        self.n
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn notched(&self) -> &BTreeSet<MarkedPoint> {
        &self.notched
    }

    pub fn twist(&self) -> &BTreeSet<MarkedPoint> {
        &self.twist
    }

    pub fn c_matrix(&self) -> &[Vec<i64>] {
        &self.c_matrix
    }

    pub fn root_labels(&self) -> &[String] {
        &self.root_labels
    }

    pub fn arc_id(&self, pos: usize) -> &ArcId {
        &self.keys[pos]
    }

    pub fn arc_ids(&self) -> &[ArcId] {
        &self.keys
    }

    pub fn position_of(&self, arc: &ArcId) -> Result<usize> {
        self.keys
            .iter()
            .position(|k| k == arc)
            .ok_or_else(|| Error::UnknownArc(arc.to_string()))
    }

    /// Human-readable name of a position: the root label if the arc belongs
    /// to the root, its g-vector otherwise.
    pub fn arc_name(&self, pos: usize) -> String {
        let g = &self.keys[pos].0;
        if self.twist.is_empty() {
            if let Some(j) = (0..self.n).find(|&j| g.iter().enumerate().all(|(i, &v)| v == i64::from(i == j))) {
                return self.root_labels[j].clone();
            }
        }
        self.keys[pos].to_string()
    }

    /// Every `(triangle, side)` slot holding arc `k`.
    fn slots_of(&self, k: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2);
        for (t, tri) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                if tri.sides[i] == Side::Arc(k) {
                    out.push((t, i));
                }
            }
        }
        out
    }

    /// Self-folded triangles as `(loop, radius, puncture)`.
    pub fn self_folded(&self) -> Vec<(usize, usize, MarkedPoint)> {
        self.triangles.iter().filter_map(Triangle::self_folded).collect()
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        let s = &self.surface;
        let c = s.segment_count();
        let points = s.point_count();
        if 3 * self.triangles.len() != 2 * self.n + c {
            return bad(format!("{} triangles for {} arcs and {c} segments", self.triangles.len(), self.n));
        }
        let mut arc_slots: Vec<Vec<(MarkedPoint, MarkedPoint)>> = vec![Vec::new(); self.n];
        let mut seg_seen = vec![false; c];
        for tri in &self.triangles {
            if tri.corners.iter().any(|&p| p >= points) {
                return bad(format!("corner label out of range in {tri:?}"));
            }
            for i in 0..3 {
                let ends = tri.endpoints(i);
                match tri.sides[i] {
                    Side::Arc(k) if k < self.n => arc_slots[k].push(ends),
                    Side::Arc(k) => return bad(format!("arc position {k} out of range")),
                    Side::Boundary(seg) => {
                        if seg >= c || seg_seen[seg] {
                            return bad(format!("boundary segment {seg} missing or repeated"));
                        }
                        seg_seen[seg] = true;
                        if s.segment_endpoints(seg) != Some(ends) {
                            return bad(format!("boundary segment {seg} has endpoints {ends:?}"));
                        }
                    }
                }
            }
        }
        for (k, slots) in arc_slots.iter().enumerate() {
            match slots.as_slice() {
                [(a, b), (c2, d)] if a == d && b == c2 => {}
                _ => return bad(format!("arc {k} is not glued from two reversed sides: {slots:?}")),
            }
        }
        if seg_seen.iter().any(|&x| !x) {
            return bad("a boundary segment is not used".into());
        }
        // Corners meeting at a vertex: across a glued side from corner i to
        // corner i+1, the corners swap.
        let nt = self.triangles.len();
        let mut uf = UnionFind::new(3 * nt);
        let mut tri_uf = UnionFind::new(nt);
        for k in 0..self.n {
            let slots = self.slots_of(k);
            let ((t, i), (u, j)) = (slots[0], slots[1]);
            uf.union(3 * t + i, 3 * u + (j + 1) % 3);
            uf.union(3 * t + (i + 1) % 3, 3 * u + j);
            tri_uf.union(t, u);
        }
        let mut class_label: std::collections::HashMap<usize, MarkedPoint> = Default::default();
        for (t, tri) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                let root = uf.find(3 * t + i);
                if *class_label.entry(root).or_insert(tri.corners[i]) != tri.corners[i] {
                    return bad(format!("corner classes disagree at triangle {t}"));
                }
            }
        }
        let labels: BTreeSet<MarkedPoint> = class_label.values().copied().collect();
        if class_label.len() != points as usize || labels.len() != points as usize {
            return bad(format!(
                "{} vertex classes with {} distinct labels for {points} marked points",
                class_label.len(),
                labels.len()
            ));
        }
        let v = points as i64;
        let e = (self.n + c) as i64;
        let f = nt as i64;
        if v - e + f != s.euler_characteristic() {
            return bad(format!("Euler characteristic {} instead of {}", v - e + f, s.euler_characteristic()));
        }
        if (1..nt).any(|t| tri_uf.find(t) != tri_uf.find(0)) {
            return bad("complex is not connected".into());
        }
        for &p in &self.notched {
            if !s.is_puncture(p) {
                return bad(format!("notched point {p} is not a puncture"));
            }
        }
        for (_, _, p) in self.self_folded() {
            if self.notched.contains(&p) {
                return bad(format!("puncture {p} is enclosed by a self-folded triangle and also notched"));
            }
        }
        Ok(())
    }

    /// The tagged arc at a position.
    pub fn tagged_arc(&self, pos: usize) -> TaggedArc {
        let slots = self.slots_of(pos);
        let (t, i) = slots[0];
        let tri = &self.triangles[t];
        let (a, b) = tri.endpoints(i);
        let folded = self.self_folded();
        let (u, v, forced): (MarkedPoint, MarkedPoint, Option<MarkedPoint>) =
            match folded.iter().find(|(l, _, _)| *l == pos) {
                Some(&(_, _, p)) => (a, p, Some(p)),
                None => (a, b, None),
            };
        let tag = |x: MarkedPoint| Some(x) == forced || self.notched.contains(&x);
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        TaggedArc { ends: [u, v], notched: [tag(u), tag(v)] }
    }

    /// True if the tagged arc at `pos` has `p` as an endpoint.
    pub fn is_incident(&self, pos: usize, p: MarkedPoint) -> bool {
        self.tagged_arc(pos).ends.contains(&p)
    }

    /// Contributions `b°` of the non-self-folded triangles, indexed by arcs
    /// `0..n` followed by boundary segments.
    fn raw_adjacency(&self) -> Vec<Vec<i64>> {
        let c = self.surface.segment_count();
        let size = self.n + c;
        let idx = |s: Side| match s {
            Side::Arc(k) => k,
            Side::Boundary(seg) => self.n + seg,
        };
        let mut b = vec![vec![0i64; size]; size];
        for tri in self.triangles.iter().filter(|t| t.self_folded().is_none()) {
            for k in 0..3 {
                let cur = idx(tri.sides[k]);
                let prev = idx(tri.sides[(k + 2) % 3]);
                b[cur][prev] += 1;
                b[prev][cur] -= 1;
            }
        }
        b
    }

    /// `π`: a radius maps to its loop, everything else to itself.
    fn pi(&self) -> Vec<usize> {
        let mut pi: Vec<usize> = (0..self.n).collect();
        for (l, r, _) in self.self_folded() {
            pi[r] = l;
        }
        pi
    }

    /// The signed adjacency matrix `B(T)`.
    pub fn signed_adjacency(&self) -> ExchangeMatrix {
        let raw = self.raw_adjacency();
        let pi = self.pi();
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| raw[pi[i]][pi[j]]).collect())
            .collect();
        ExchangeMatrix::new(rows).expect("signed adjacency is skew-symmetric")
    }

    /// `B(T)` with one extra row per boundary segment.
    pub fn boundary_extended_matrix(&self) -> ExtendedMatrix {
        let raw = self.raw_adjacency();
        let pi = self.pi();
        let c = self.surface.segment_count();
        let mut rows: Vec<Vec<i64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| raw[pi[i]][pi[j]]).collect())
            .collect();
        rows.extend((0..c).map(|s| (0..self.n).map(|j| raw[self.n + s][pi[j]]).collect()));
        ExtendedMatrix::new(rows).expect("valid extended matrix")
    }

    fn with_triangles(&self, triangles: Vec<Triangle>, notched: BTreeSet<MarkedPoint>) -> Self {
        TaggedTriangulation {
            triangles,
            notched,
            ..self.clone()
        }
    }

    /// Flip of the tagged arc at position `k`.
    pub fn flip_at(&self, k: usize) -> Result<FlipResult> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k, size: self.n });
        }
        let before: BTreeSet<usize> = self.self_folded().iter().flat_map(|&(l, r, _)| [l, r]).collect();
        let mut notched = self.notched.clone();
        let triangles = match self.self_folded().into_iter().find(|&(_, r, _)| r == k) {
            Some((l, r, p)) => {
                // The radius: flip the loop as an ordinary arc, then let the
                // old loop slot carry the radius and notch everything at p.
                let flipped = ordinary_flip(&self.triangles, l)?;
                notched.insert(p);
                swap_positions(&flipped, l, r)
            }
            None => {
                let mut flipped = ordinary_flip(&self.triangles, k)?;
                for tri in flipped.clone() {
                    if let Some((l, r, p)) = tri.self_folded() {
                        if notched.remove(&p) {
                            flipped = swap_positions(&flipped, l, r);
                        }
                    }
                }
                flipped
            }
        };
        let b = self.signed_adjacency();
        let mut out = self.with_triangles(triangles, notched);
        out.c_matrix = mutate_c(&b, &self.c_matrix, k)?;
        out = out.with_keys()?;
        debug_assert!(out.validate().is_ok(), "{:?}", out.validate());
        let after: BTreeSet<usize> = out.self_folded().iter().flat_map(|&(l, r, _)| [l, r]).collect();
        let kind = if before.contains(&k) || after.contains(&k) { FlipKind::D } else { FlipKind::Q };
        Ok(FlipResult {
            replaced_arc: self.keys[k].clone(),
            new_arc: out.keys[k].clone(),
            triangulation: out,
            position: k,
            kind,
        })
    }

    /// Flip of the tagged arc with the given identifier.
    pub fn flip(&self, arc: &ArcId) -> Result<FlipResult> {
        self.flip_at(self.position_of(arc)?)
    }

    /// Changes every tag at the puncture `p`.
    pub fn change_tags(&self, p: MarkedPoint) -> Result<Self> {
        if !self.surface.is_puncture(p) {
            return Err(Error::NotAPuncture(p));
        }
        let mut out = match self.self_folded().into_iter().find(|&(_, _, q)| q == p) {
            Some((l, r, _)) => self.with_triangles(swap_positions(&self.triangles, l, r), self.notched.clone()),
            None => {
                let mut notched = self.notched.clone();
                if !notched.remove(&p) {
                    notched.insert(p);
                }
                self.with_triangles(self.triangles.clone(), notched)
            }
        };
        if !out.twist.remove(&p) {
            out.twist.insert(p);
        }
        Ok(out)
    }

    /// Encoding with arcs named by position: equal for identical labelled complexes.
    pub fn position_encoding(&self) -> Encoding {
        self.encoding_with(|s| match s {
            Side::Arc(k) => SideCode::Arc(k),
            Side::Boundary(b) => SideCode::Boundary(b),
        })
    }

    /// Encoding with arcs named by identifier: independent of positions.
    pub fn key_encoding(&self) -> Encoding {
        self.encoding_with(|s| match s {
            Side::Arc(k) => SideCode::Key(self.keys[k].clone()),
            Side::Boundary(b) => SideCode::Boundary(b),
        })
    }

    fn encoding_with(&self, code: impl Fn(Side) -> SideCode) -> Encoding {
        let mut triangles: Vec<([SideCode; 3], [MarkedPoint; 3])> = self
            .triangles
            .iter()
            .map(|t| {
                let best = t.min_rotation_by(|r| (r.sides.map(&code), r.corners));
                (best.sides.map(&code), best.corners)
            })
            .collect();
        triangles.sort();
        Encoding {
            triangles,
            notched: self.notched.iter().copied().collect(),
            twist: self.twist.iter().copied().collect(),
        }
    }

    /// Encoding up to renaming of arcs, ignoring frames: two triangulations
    /// have the same shape iff they consist of the same tagged arcs.
    pub fn shape_encoding(&self) -> Encoding {
        let nt = self.triangles.len();
        let starts: Vec<(usize, usize)> = match (0..nt)
            .flat_map(|t| (0..3).map(move |i| (t, i)))
            .find(|&(t, i)| self.triangles[t].sides[i] == Side::Boundary(0))
        {
            Some(s) => vec![s],
            None => (0..nt).flat_map(|t| (0..3).map(move |i| (t, i))).collect(),
        };
        let best = starts
            .into_iter()
            .map(|s| self.traverse_from(s))
            .min()
            .expect("at least one triangle");
        Encoding {
            triangles: best,
            notched: self.notched.iter().copied().collect(),
            twist: Vec::new(),
        }
    }

    /// Breadth-first traversal from a slot, naming arcs by first appearance.
    fn traverse_from(&self, start: (usize, usize)) -> Vec<([SideCode; 3], [MarkedPoint; 3])> {
        let nt = self.triangles.len();
        let mut names: Vec<Option<usize>> = vec![None; self.n];
        let mut next_name = 0;
        let mut seen = vec![false; nt];
        let mut out = Vec::with_capacity(nt);
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start.0] = true;
        while let Some((t, r)) = queue.pop_front() {
            let tri = self.triangles[t].rotated(r);
            let mut codes = Vec::with_capacity(3);
            for s in tri.sides {
                codes.push(match s {
                    Side::Boundary(b) => SideCode::Boundary(b),
                    Side::Arc(k) => {
                        let name = *names[k].get_or_insert_with(|| {
                            next_name += 1;
                            next_name - 1
                        });
                        SideCode::Arc(name)
                    }
                });
            }
            out.push(([codes[0].clone(), codes[1].clone(), codes[2].clone()], tri.corners));
            for s in tri.sides {
                if let Side::Arc(k) = s {
                    for (u, j) in self.slots_of(k) {
                        if !seen[u] {
                            seen[u] = true;
                            queue.push_back((u, j));
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether both triangulations consist of the same tagged arcs.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.surface == other.surface && self.shape_encoding() == other.shape_encoding()
    }

    /// Makes this triangulation a root: identity frame, no twist.
    pub fn reroot(&self, labels: Option<Vec<String>>) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| (0..self.n).map(|k| self.arc_name(k)).collect());
        TaggedTriangulation::new(
            self.surface.clone(),
            self.triangles.clone(),
            self.notched.iter().copied(),
            Some(labels),
        )
    }

    pub fn to_json(&self) -> Value {
        let slot = |t: usize, i: usize| 3 * t + i;
        let gluing: Vec<Value> = (0..self.n)
            .map(|k| {
                let s = self.slots_of(k);
                json!([slot(s[0].0, s[0].1), slot(s[1].0, s[1].1)])
            })
            .collect();
        let boundary: Vec<Value> = self
            .triangles
            .iter()
            .enumerate()
            .flat_map(|(t, tri)| {
                (0..3).filter_map(move |i| match tri.sides[i] {
                    Side::Boundary(b) => Some(json!([slot(t, i), b])),
                    _ => None,
                })
            })
            .collect();
        json!({
            "surface": self.surface.to_json(),
            "triangles": (0..self.triangles.len()).map(|t| json!([slot(t, 0), slot(t, 1), slot(t, 2)])).collect::<Vec<_>>(),
            "corners": self.triangles.iter().map(|t| json!(t.corners)).collect::<Vec<_>>(),
            "gluing": gluing,
            "boundary": boundary,
            "arc_ids": (0..self.n).map(|k| self.arc_name(k)).collect::<Vec<_>>(),
            "notched": self.notched.iter().collect::<Vec<_>>(),
        })
    }

    /// Reads the JSON form. Arc positions follow the order of `gluing`,
    /// and `arc_ids` become the root labels.
    pub fn from_json(v: &Value) -> Result<Self> {
        let surface = MarkedSurface::from_json(&v["surface"])?;
        let corners: Vec<[MarkedPoint; 3]> = serde_json::from_value(v["corners"].clone())?;
        let tris: Vec<[usize; 3]> = serde_json::from_value(v["triangles"].clone())?;
        let gluing: Vec<[usize; 2]> = serde_json::from_value(v["gluing"].clone())?;
        let boundary: Vec<[usize; 2]> = serde_json::from_value(v["boundary"].clone())?;
        let notched: Vec<MarkedPoint> = serde_json::from_value(v["notched"].clone())?;
        let labels: Option<Vec<String>> = serde_json::from_value(v["arc_ids"].clone()).ok();
        if corners.len() != tris.len() {
            return Err(Error::Json("one corner triple per triangle is required".into()));
        }
        let total = 3 * tris.len();
        let mut side_of: Vec<Option<Side>> = vec![None; total];
        for (k, pair) in gluing.iter().enumerate() {
            for &s in pair {
                *side_of.get_mut(s).ok_or_else(|| Error::Json(format!("slot {s} out of range")))? = Some(Side::Arc(k));
            }
        }
        for &[s, b] in &boundary {
            *side_of.get_mut(s).ok_or_else(|| Error::Json(format!("slot {s} out of range")))? = Some(Side::Boundary(b));
        }
        let triangles = tris
            .iter()
            .zip(&corners)
            .map(|(slots, &c)| {
                let sides = slots
                    .iter()
                    .map(|&s| side_of.get(s).copied().flatten().ok_or_else(|| Error::Json(format!("slot {s} is unassigned"))))
                    .collect::<Result<Vec<Side>>>()?;
                Ok(Triangle::new(c, [sides[0], sides[1], sides[2]]))
            })
            .collect::<Result<Vec<_>>>()?;
        TaggedTriangulation::new(surface, triangles, notched, labels)
    }
}

/// The bottom block of `mutate([B; C], k)`.
fn mutate_c(b: &ExchangeMatrix, c: &[Vec<i64>], k: usize) -> Result<Vec<Vec<i64>>> {
    let mut rows = b.rows();
    rows.extend(c.iter().cloned());
    let m = ExtendedMatrix::new(rows)?.mutate(k)?;
    Ok(m.bottom_rows())
}

fn swap_positions(triangles: &[Triangle], a: usize, b: usize) -> Vec<Triangle> {
    triangles
        .iter()
        .map(|t| t.map_arcs(|k| if k == a { b } else if k == b { a } else { k }))
        .collect()
}

/// Replaces arc `k`, the diagonal of the quadrilateral formed by its two
/// triangles, with the other diagonal. The new arc keeps position `k`.
fn ordinary_flip(triangles: &[Triangle], k: usize) -> Result<Vec<Triangle>> {
    let slots: Vec<(usize, usize)> = triangles
        .iter()
        .enumerate()
        .flat_map(|(t, tri)| (0..3).filter(move |&i| tri.sides[i] == Side::Arc(k)).map(move |i| (t, i)))
        .collect();
    let [(t, i), (u, j)] = slots[..] else {
        return Err(Error::UnknownArc(format!("position {k}")));
    };
    if t == u {
        return Err(Error::InvalidTriangulation(format!("arc {k} is the radius of a self-folded triangle")));
    }
    let tt = triangles[t].rotated(i);
    let uu = triangles[u].rotated(j);
    let [a, b, c] = tt.corners;
    let [_, s1, s2] = tt.sides;
    let [_, _, d] = uu.corners;
    let [_, s1p, s2p] = uu.sides;
    debug_assert_eq!((uu.corners[0], uu.corners[1]), (b, a));
    let mut out = triangles.to_vec();
    out[t] = Triangle::new([c, a, d], [s2, s1p, Side::Arc(k)]);
    out[u] = Triangle::new([d, b, c], [s2p, s1, Side::Arc(k)]);
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut cur = x;
        while self.parent[cur] != r {
            let next = self.parent[cur];
            self.parent[cur] = r;
            cur = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
