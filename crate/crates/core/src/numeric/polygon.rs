//! Decorated ideal polygons in the upper half-plane.
//!
//! A finite ideal point `x` carries a horocycle given by its Euclidean
//! diameter `d`; the point at infinity carries a horizontal horocycle at
//! height `h`. The lambda length of the geodesic between two decorated
//! points is `exp(l/2)` where `l` is the signed distance between the
//! horocycles, which works out to `|x_i − x_j| / √(d_i d_j)` for two finite
//! points and `√(h/d)` when one end is at infinity.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::{Error, Result};

/// Relative tolerance for internal consistency checks.
const CHECK_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecoratedIdealPolygon {
    points: Vec<IdealPoint>,
    sizes: Vec<f64>,
}

/// Length of a horocyclic segment measured two ways.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorocyclicSegment {
    /// Arc length of the horocycle between the two sides, from the metric.
    pub length: f64,
    /// `λ_pq / (λ_pr λ_qr)`.
    pub predicted: f64,
    pub relative_residual: f64,
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

impl DecoratedIdealPolygon {
    pub fn new(points: Vec<IdealPoint>, sizes: Vec<f64>) -> Result<Self> {
        if points.len() != sizes.len() {
            return Err(Error::Dimension(format!("{} points but {} horocycle sizes", points.len(), sizes.len())));
        }
        if sizes.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(Error::Domain("horocycle sizes must be positive".into()));
        }
        let mut finite = Vec::new();
        let mut infinite = 0;
        for p in &points {
            match p {
                IdealPoint::Finite(x) if x.is_finite() => finite.push(*x),
                IdealPoint::Finite(x) => return Err(Error::Domain(format!("ideal point {x} is not finite"))),
                IdealPoint::Infinity => infinite += 1,
            }
        }
        if infinite > 1 {
            return Err(Error::Degenerate("more than one ideal point at infinity".into()));
        }
        finite.sort_by(f64::total_cmp);
        if finite.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate("two ideal points coincide".into()));
        }
        Ok(DecoratedIdealPolygon { points, sizes })
    }

    /// Convenience constructor: finite points, with `None` meaning infinity.
    pub fn from_parts(points: &[Option<f64>], sizes: &[f64]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.map_or(IdealPoint::Infinity, IdealPoint::Finite))
            .collect();
        Self::new(pts, sizes.to_vec())
    }

    /// The polygon whose decorated points correspond to the given vectors:
    /// `(p, q)` with `q ≠ 0` is the point `p/q` with diameter `1/q²`, and
    /// `(p, 0)` is infinity at height `p²`.
    pub fn from_vectors(vectors: &[[f64; 2]]) -> Result<Self> {
        let mut points = Vec::with_capacity(vectors.len());
        let mut sizes = Vec::with_capacity(vectors.len());
        for &[p, q] in vectors {
            if q == 0.0 {
                if p == 0.0 {
                    return Err(Error::Degenerate("zero vector".into()));
                }
                points.push(IdealPoint::Infinity);
                sizes.push(p * p);
            } else {
                points.push(IdealPoint::Finite(p / q));
                sizes.push(1.0 / (q * q));
            }
        }
        Self::new(points, sizes)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[IdealPoint] {
        &self.points
    }

    pub fn sizes(&self) -> &[f64] {
        &self.sizes
    }

    /// Replaces the horocycle size at `i`.
    pub fn with_size(&self, i: usize, size: f64) -> Result<Self> {
        self.check_index(i)?;
        let mut sizes = self.sizes.clone();
        sizes[i] = size;
        Self::new(self.points.clone(), sizes)
    }

    /// A representative vector in the light cone, inverse to [`Self::from_vectors`].
    pub fn vector(&self, i: usize) -> Result<[f64; 2]> {
        self.check_index(i)?;
        Ok(match self.points[i] {
            IdealPoint::Finite(x) => {
                let s = self.sizes[i].sqrt();
                [x / s, 1.0 / s]
            }
            IdealPoint::Infinity => [self.sizes[i].sqrt(), 0.0],
        })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.points.len() {
            return Err(Error::IndexOutOfRange { index: i, size: self.points.len() });
        }
        Ok(())
    }

    pub fn lambda_length(&self, i: usize, j: usize) -> Result<f64> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::Degenerate(format!("lambda length of point {i} with itself")));
        }
        let (di, dj) = (self.sizes[i], self.sizes[j]);
        Ok(match (self.points[i], self.points[j]) {
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => (a - b).abs() / (di * dj).sqrt(),
            (IdealPoint::Infinity, IdealPoint::Finite(_)) => (di / dj).sqrt(),
            (IdealPoint::Finite(_), IdealPoint::Infinity) => (dj / di).sqrt(),
            (IdealPoint::Infinity, IdealPoint::Infinity) => unreachable!("construction allows one point at infinity"),
        })
    }

    /// Position on the boundary circle used for cyclic-order checks:
    /// the real line in increasing order, then infinity.
    fn boundary_position(&self, i: usize) -> f64 {
        match self.points[i] {
            IdealPoint::Finite(x) => x,
            IdealPoint::Infinity => f64::INFINITY,
        }
    }

    fn in_cyclic_order(&self, idx: &[usize]) -> bool {
        let pos: Vec<f64> = idx.iter().map(|&i| self.boundary_position(i)).collect();
        let descents = (0..pos.len()).filter(|&a| pos[a] > pos[(a + 1) % pos.len()]).count();
        descents == 1 || descents + 1 == pos.len()
    }

    /// Relative residual of the Ptolemy relation on the quadrilateral
    /// `quad = [a, b, c, d]`, listed in cyclic order around the boundary
    /// (either direction):
    /// `λ_ac λ_bd = λ_ab λ_cd + λ_ad λ_bc`.
    pub fn verify_ptolemy(&self, quad: [usize; 4]) -> Result<f64> {
        for &i in &quad {
            self.check_index(i)?;
        }
        let mut sorted = quad;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Degenerate("quadrilateral indices must be distinct".into()));
        }
        if !self.in_cyclic_order(&quad) {
            return Err(Error::Degenerate(format!("indices {quad:?} are not in cyclic order")));
        }
        let l = |i, j| self.lambda_length(i, j);
        let [a, b, c, d] = quad;
        let diagonals = l(a, c)? * l(b, d)?;
        let sides = l(a, b)? * l(c, d)? + l(a, d)? * l(b, c)?;
        Ok((diagonals - sides).abs() / diagonals)
    }

    /// Hyperbolic length of the horocycle at `vertex` between the geodesics
    /// to the other two corners of `triangle`, compared with
    /// `λ_pq / (λ_pr λ_qr)`.
    pub fn horocyclic_segment(&self, triangle: [usize; 3], vertex: usize) -> Result<HorocyclicSegment> {
        for &i in &triangle {
            self.check_index(i)?;
        }
        if triangle[0] == triangle[1] || triangle[1] == triangle[2] || triangle[0] == triangle[2] {
            return Err(Error::Degenerate("triangle corners must be distinct".into()));
        }
        let mut others = triangle.iter().copied().filter(|&i| i != vertex);
        let (Some(p), Some(q), None) = (others.next(), others.next(), others.next()) else {
            return Err(Error::Domain(format!("vertex {vertex} is not a corner of {triangle:?}")));
        };
        let length = match self.points[vertex] {
            IdealPoint::Infinity => {
                // A horizontal segment at height h between two vertical geodesics.
                let (IdealPoint::Finite(a), IdealPoint::Finite(b)) = (self.points[p], self.points[q]) else {
                    unreachable!("only one point at infinity")
                };
                (a - b).abs() / self.sizes[vertex]
            }
            IdealPoint::Finite(x) => {
                // Along the horocycle of diameter d at x, the point at angle θ
                // from x has hyperbolic speed 1/(1 − cos θ), with primitive
                // −cot(θ/2). The geodesic from x towards a meets it where
                // cot(θ/2) = d/(a − x); a geodesic to infinity meets the top.
                let d = self.sizes[vertex];
                let cot_half = |i: usize| match self.points[i] {
                    IdealPoint::Finite(a) => d / (a - x),
                    IdealPoint::Infinity => 0.0,
                };
                let theta = |c: f64| 2.0 * (1.0f64).atan2(c);
                let (tp, tq) = (theta(cot_half(p)), theta(cot_half(q)));
                let primitive = |t: f64| -1.0 / (t / 2.0).tan();
                (primitive(tp) - primitive(tq)).abs()
            }
        };
        let predicted = self.lambda_length(p, q)? / (self.lambda_length(p, vertex)? * self.lambda_length(q, vertex)?);
        Ok(HorocyclicSegment {
            length,
            predicted,
            relative_residual: relative(length, predicted),
        })
    }
}

/// `√(−2⟨w₁, w₂⟩)` for the rank-one matrices `w = v vᵀ`, where `⟨,⟩` is the
/// polarization of the negated determinant. Returns the value and its
/// relative gap to `|det[v₁ v₂]|`.
///
/// The pairing cancels heavily for nearly parallel vectors, so it is
/// evaluated exactly on the binary values of the inputs.
pub fn grassmann_lambda(v1: [f64; 2], v2: [f64; 2]) -> Result<(f64, f64)> {
    if v1.iter().chain(&v2).any(|x| !x.is_finite()) {
        return Err(Error::Domain("vector entries must be finite".into()));
    }
    let det = v1[0] * v2[1] - v1[1] * v2[0];
    let scale = (v1[0].hypot(v1[1])) * (v2[0].hypot(v2[1]));
    if !(det.abs() > 1e-14 * scale) {
        return Err(Error::Degenerate("vectors are linearly dependent".into()));
    }
    let exact = |x: f64| BigRational::from_float(x).expect("finite");
    let w = |v: [f64; 2]| {
        let (p, q) = (exact(v[0]), exact(v[1]));
        [[&p * &p, &p * &q], [&q * &p, &q * &q]]
    };
    let (a, b) = (w(v1), w(v2));
    let half = BigRational::new(1.into(), 2.into());
    let pairing = -half * (&a[0][0] * &b[1][1] + &a[1][1] * &b[0][0] - &a[0][1] * &b[1][0] - &a[1][0] * &b[0][1]);
    let squared = (-BigRational::from_integer(2.into()) * pairing).to_f64().unwrap_or(f64::NAN);
    let lambda = squared.max(0.0).sqrt();
    let exact_det = (&exact(v1[0]) * &exact(v2[1]) - &exact(v1[1]) * &exact(v2[0])).abs();
    Ok((lambda, relative(lambda, exact_det.to_f64().unwrap_or(f64::NAN))))
}

/// Lambda length of an arc at a puncture measured from the conjugate
/// horocycle, given the loop `λ_qq` and the plain arc `λ_pq` of a
/// punctured monogon. Returns the value and the residual of
/// `L(h) L(h̄) = 1`, where each horocycle length comes from the
/// horocyclic-segment formula on the self-folded triangle.
pub fn conjugate_lambda(lambda_qq: f64, lambda_pq: f64) -> Result<(f64, f64)> {
    if !(lambda_qq > 0.0 && lambda_pq > 0.0) {
        return Err(Error::Domain("lambda lengths must be positive".into()));
    }
    let conjugate = lambda_qq / lambda_pq;
    let l_h = lambda_qq / (lambda_pq * lambda_pq);
    let l_bar = lambda_qq / (conjugate * conjugate);
    Ok((conjugate, (l_h * l_bar - 1.0).abs()))
}

/// Builds a decorated `N`-gon from the lambda lengths of a fan
/// triangulation at vertex 0: `sides[i] = λ(i, i+1 mod N)` and
/// `diagonals[j − 2] = λ(0, j)` for `2 ≤ j ≤ N − 2`.
///
/// Vertices 0, 1, 2 go to 0, 1, ∞. The remaining vertices lie on the
/// negative axis in increasing order, each one fixed by its two fan
/// lambda lengths.
pub fn reconstruct_polygon(sides: &[f64], diagonals: &[f64]) -> Result<DecoratedIdealPolygon> {
    let n = sides.len();
    if n < 3 || diagonals.len() != n - 3 {
        return Err(Error::Dimension(format!(
            "{n} sides need {} fan diagonals, got {}",
            n.saturating_sub(3),
            diagonals.len()
        )));
    }
    if sides.iter().chain(diagonals).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Domain("lambda lengths must be positive".into()));
    }
    // λ(0, j) for every j ≥ 2, the last one being a side.
    let fan = |j: usize| if j == n - 1 { sides[n - 1] } else { diagonals[j - 2] };
    let (l01, l12, l02) = (sides[0], sides[1], fan(2));
    let d0 = l12 / (l02 * l01);
    let d1 = l02 / (l12 * l01);
    let h = l02 * l12 / l01;
    let mut points = vec![IdealPoint::Finite(0.0), IdealPoint::Finite(1.0), IdealPoint::Infinity];
    let mut sizes = vec![d0, d1, h];
    if n > 3 {
        let d3 = h / (sides[2] * sides[2]);
        points.push(IdealPoint::Finite(-fan(3) * (d0 * d3).sqrt()));
        sizes.push(d3);
    }
    for j in 4..n {
        let IdealPoint::Finite(prev) = points[j - 1] else { unreachable!() };
        let s = -prev / (fan(j) * d0.sqrt() + sides[j - 1] * sizes[j - 1].sqrt());
        points.push(IdealPoint::Finite(-fan(j) * d0.sqrt() * s));
        sizes.push(s * s);
    }
    let polygon = DecoratedIdealPolygon::new(points, sizes)?;
    let mut worst = 0.0f64;
    for i in 0..n {
        worst = worst.max(relative(polygon.lambda_length(i, (i + 1) % n)?, sides[i]));
    }
    for j in 2..n - 1 {
        worst = worst.max(relative(polygon.lambda_length(0, j)?, fan(j)));
    }
    if worst > CHECK_TOL {
        return Err(Error::Numerical(format!("reconstructed polygon misses its inputs by {worst:e}")));
    }
    Ok(polygon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_points() {
        let p = DecoratedIdealPolygon::from_parts(&[Some(0.0), Some(2.0)], &[1.0, 1.0]).unwrap();
        assert_eq!(p.lambda_length(0, 1).unwrap(), 2.0);
    }

    #[test]
    fn tangent_triangle() {
        let p = DecoratedIdealPolygon::from_parts(&[Some(0.0), Some(1.0), None], &[1.0, 1.0, 1.0]).unwrap();
        let seg = p.horocyclic_segment([0, 1, 2], 2).unwrap();
        assert!((seg.length - 1.0).abs() < 1e-12);
        for v in 0..3 {
            assert!(p.horocyclic_segment([0, 1, 2], v).unwrap().relative_residual < 1e-12);
        }
    }

    #[test]
    fn square_diagonal() {
        let p = reconstruct_polygon(&[1.0; 4], &[1.0]).unwrap();
        assert!((p.lambda_length(1, 3).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn conjugate_product() {
        let (bar, residual) = conjugate_lambda(3.0, 1.5).unwrap();
        assert!((bar * 1.5 - 3.0).abs() < 1e-15);
        assert!(residual < 1e-15);
    }
}
