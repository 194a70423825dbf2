//! Tropical degeneration: running exchange relations with `⊕_k` in place
//! of ordinary addition and watching the values approach the solution of
//! the min-plus relations as `k → −∞`.

use serde_json::{json, Value};

use crate::exchange::GeometricSeed;
use crate::semifields::deformed_add;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationRow {
    pub k: f64,
    /// Propagated values, one per step of the mutation path.
    pub values: Vec<f64>,
    /// Largest relative distance to the tropical values.
    pub max_relative_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationReport {
    /// Values from propagation with `min` as addition.
    pub tropical: Vec<f64>,
    pub rows: Vec<DegenerationRow>,
    /// True when the error never grows along the schedule.
    pub monotone: bool,
}

impl DegenerationReport {
    pub fn final_error(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.max_relative_error)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tropical": self.tropical,
            "monotone": self.monotone,
            "rows": self.rows.iter().map(|r| json!({
                "k": r.k,
                "values": r.values,
                "max_relative_error": r.max_relative_error,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Propagates along `path` using `add` for the sum of the two exchange
/// terms, returning the new value produced at each step.
fn propagate<F>(seed: &GeometricSeed, x: &[f64], q: &[f64], path: &[usize], add: F) -> Result<Vec<f64>>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let mut x = x.to_vec();
    let mut ext = seed.ext().clone();
    let n = x.len();
    let mut out = Vec::with_capacity(path.len());
    for &k in path {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        let (mut up, mut down) = (1.0f64, 1.0f64);
        for i in 0..ext.rows_count() {
            let v = if i < n { x[i] } else { q[i - n] };
            let b = ext.get(i, k);
            if b > 0 {
                up *= v.powi(b as i32);
            } else if b < 0 {
                down *= v.powi(-b as i32);
            }
        }
        x[k] = add(up, down)? / x[k];
        out.push(x[k]);
        ext = ext.mutate(k)?;
    }
    Ok(out)
}

/// Runs the exchange relations along `path` once with `min` and once per
/// `k` in `schedule` with `⊕_k`, where `y ⊕_k z = (y^k + z^k)^{1/k}`.
pub fn degeneration_experiment(
    seed: &GeometricSeed,
    x: &[f64],
    q: &[f64],
    path: &[usize],
    schedule: &[f64],
) -> Result<DegenerationReport> {
    if x.len() != seed.rank() || q.len() != seed.ext().coefficient_rows() {
        return Err(Error::Dimension("assignment does not match the seed".into()));
    }
    if x.iter().chain(q).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Domain("degeneration needs positive inputs".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Domain("the k-schedule must be strictly decreasing".into()));
    }
    let tropical = propagate(seed, x, q, path, |a, b| Ok(a.min(b)))?;
    let mut rows = Vec::with_capacity(schedule.len());
    for &k in schedule {
        let values = propagate(seed, x, q, path, |a, b| deformed_add(k, a, b))?;
        let max_relative_error = values
            .iter()
            .zip(&tropical)
            .map(|(v, t)| (v - t).abs() / t)
            .fold(0.0, f64::max);
        rows.push(DegenerationRow {
            k,
            values,
            max_relative_error,
        });
    }
    let monotone = rows.windows(2).all(|w| w[1].max_relative_error <= w[0].max_relative_error);
    Ok(DegenerationReport { tropical, rows, monotone })
}
