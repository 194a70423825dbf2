//! Bordered surfaces with marked points.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Index of a marked point. Boundary points come first, component by
/// component in counterclockwise order, followed by the punctures.
pub type MarkedPoint = u32;

/// An oriented surface of genus `genus` with boundary components carrying
/// the listed numbers of marked points, and `punctures` interior marked points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub genus: u32,
    pub boundary: Vec<u32>,
    pub punctures: u32,
}

impl MarkedSurface {
    pub fn new(genus: u32, boundary: Vec<u32>, punctures: u32) -> Result<Self> {
        let s = MarkedSurface { genus, boundary, punctures };
        validate_surface(&s)?;
        Ok(s)
    }

    /// A disk with `c` marked points on its boundary and `p` punctures.
    pub fn disk(c: u32, p: u32) -> Result<Self> {
        Self::new(0, vec![c], p)
    }

    pub fn boundary_point_count(&self) -> u32 {
        self.boundary.iter().sum()
    }

    pub fn point_count(&self) -> u32 {
        self.boundary_point_count() + self.punctures
    }

    pub fn segment_count(&self) -> usize {
        self.boundary_point_count() as usize
    }

    pub fn is_puncture(&self, p: MarkedPoint) -> bool {
        p >= self.boundary_point_count() && p < self.point_count()
    }

    pub fn punctures(&self) -> impl Iterator<Item = MarkedPoint> {
        self.boundary_point_count()..self.point_count()
    }

    /// Start and end of boundary segment `seg`, in the direction that keeps
    /// the surface on the left.
    pub fn segment_endpoints(&self, seg: usize) -> Option<(MarkedPoint, MarkedPoint)> {
        let mut offset = 0u32;
        let mut rest = seg as u32;
        for &c in &self.boundary {
            if rest < c {
                return Some((offset + rest, offset + (rest + 1) % c));
            }
            rest -= c;
            offset += c;
        }
        None
    }

    /// Number of arcs in any triangulation.
    pub fn arc_count(&self) -> i64 {
        let b = self.boundary.len() as i64;
        let c = self.boundary_point_count() as i64;
        6 * self.genus as i64 + 3 * b + 3 * self.punctures as i64 + c - 6
    }

    /// Euler characteristic `2 − 2g − b` of the underlying surface.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("surface serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let s: MarkedSurface = serde_json::from_value(v.clone())?;
        validate_surface(&s)?;
        Ok(s)
    }
}

/// Rejects the excluded surfaces and returns the arc count
/// `n = 6g + 3b + 3p + c − 6`.
pub fn validate_surface(s: &MarkedSurface) -> Result<usize> {
    if s.boundary.iter().any(|&c| c == 0) {
        return Err(Error::ExcludedSurface("every boundary component needs a marked point".into()));
    }
    let closed = s.boundary.is_empty();
    if s.genus == 0 && closed && s.punctures <= 3 {
        return Err(Error::ExcludedSurface(format!("sphere with {} punctures", s.punctures)));
    }
    if s.genus == 0 && s.boundary.len() == 1 && s.punctures == 0 && s.boundary[0] <= 3 {
        return Err(Error::ExcludedSurface(format!("unpunctured disk with {} marked points", s.boundary[0])));
    }
    if s.genus == 0 && s.boundary == [1] && s.punctures == 1 {
        return Err(Error::ExcludedSurface("once-punctured monogon".into()));
    }
    let n = s.arc_count();
    if n <= 0 {
        return Err(Error::ExcludedSurface(format!("arc count {n} is not positive")));
    }
    Ok(n as usize)
}
