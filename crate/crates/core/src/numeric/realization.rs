use std::collections::HashMap;

use crate::exchange::{ExtendedMatrix, GeometricSeed};
use crate::{Error, Result};

/// Positive values for the initial cluster and the coefficient symbols of a
/// seed of geometric type, extended lazily to any seed reachable by mutation.
#[derive(Clone, Debug)]
pub struct Realization {
    seed: GeometricSeed,
    q: Vec<f64>,
    /// Reduced mutation path -> (cluster values, extended matrix there).
    cache: HashMap<Vec<usize>, (Vec<f64>, ExtendedMatrix)>,
}

fn positive(v: &[f64]) -> bool {
    v.iter().all(|x| *x > 0.0 && x.is_finite())
}

/// Starts a realization. Every value must be strictly positive.
pub fn realize(seed: &GeometricSeed, x: &[f64], q: &[f64]) -> Result<Realization> {
    if x.len() != seed.rank() || q.len() != seed.ext().coefficient_rows() {
        return Err(Error::Dimension(format!(
            "assignment of {} cluster and {} coefficient values for rank {} with {} coefficient rows",
            x.len(),
            q.len(),
            seed.rank(),
            seed.ext().coefficient_rows()
        )));
    }
    if !positive(x) || !positive(q) {
        return Err(Error::Domain("assignment values must be strictly positive".into()));
    }
    let mut cache = HashMap::new();
    cache.insert(Vec::new(), (x.to_vec(), seed.ext().clone()));
    Ok(Realization {
        seed: seed.clone(),
        q: q.to_vec(),
        cache,
    })
}

/// Drops consecutive repeated directions, which cancel in pairs.
fn reduce(path: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(path.len());
    for &k in path {
        if out.last() == Some(&k) {
            out.pop();
        } else {
            out.push(k);
        }
    }
    out
}

impl Realization {
    pub fn seed(&self) -> &GeometricSeed {
        &self.seed
    }

    pub fn coefficient_values(&self) -> &[f64] {
        &self.q
    }

    /// Cluster values after applying the mutation sequence `path`.
    pub fn values_at(&mut self, path: &[usize]) -> Result<Vec<f64>> {
        let path = reduce(path);
        let mut known = path.len();
        while !self.cache.contains_key(&path[..known]) {
            known -= 1;
        }
        let (mut x, mut ext) = self.cache[&path[..known]].clone();
        for i in known..path.len() {
            let k = path[i];
            if k >= x.len() {
                return Err(Error::IndexOutOfRange { index: k, size: x.len() });
            }
            x[k] = self.exchange(&x, &ext, k)?;
            ext = ext.mutate(k)?;
            self.cache.insert(path[..=i].to_vec(), (x.clone(), ext.clone()));
        }
        Ok(x)
    }

    /// Subtraction-free exchange: both terms are products of positive numbers.
    fn exchange(&self, x: &[f64], ext: &ExtendedMatrix, k: usize) -> Result<f64> {
        let n = x.len();
        let (mut up, mut down) = (1.0f64, 1.0f64);
        for i in 0..ext.rows_count() {
            let v = if i < n { x[i] } else { self.q[i - n] };
            let b = ext.get(i, k);
            if b > 0 {
                up *= v.powi(b as i32);
            } else if b < 0 {
                down *= v.powi(-b as i32);
            }
        }
        let value = (up + down) / x[k];
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Numerical(format!("nonpositive or infinite value {value} in direction {k}")));
        }
        Ok(value)
    }

    /// Largest relative gap between the propagated values at `path` and the
    /// exact cluster variables there, evaluated at the same assignment.
    pub fn symbolic_residual(&mut self, path: &[usize]) -> Result<f64> {
        let numeric = self.values_at(path)?;
        let exact = self.seed.mutate_sequence(path)?;
        let x0 = self.cache[&Vec::new()].0.clone();
        let mut worst = 0.0f64;
        for (f, v) in exact.cluster().iter().zip(&numeric) {
            let e = f.evaluate(&x0, &self.q)?;
            worst = worst.max((e - v).abs() / v.abs());
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::ExchangeMatrix;

    #[test]
    fn sl2_value() {
        let ext = ExtendedMatrix::new(vec![vec![0], vec![1], vec![1]]).unwrap();
        let mut r = realize(&GeometricSeed::initial(ext), &[2.0], &[1.0, 1.0]).unwrap();
        assert_eq!(r.values_at(&[0]).unwrap(), vec![1.0]);
    }

    #[test]
    fn pentagon_periodicity() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let ext = ExtendedMatrix::from_parts(&b, &[]).unwrap();
        let mut r = realize(&GeometricSeed::initial(ext), &[1.0, 1.0], &[]).unwrap();
        let v = r.values_at(&[0, 1, 0, 1, 0]).unwrap();
        assert!(v.iter().all(|x| (x - 1.0).abs() < 1e-12));
        assert!(r.symbolic_residual(&[0, 1, 0]).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive() {
        let ext = ExtendedMatrix::new(vec![vec![0], vec![1]]).unwrap();
        assert!(realize(&GeometricSeed::initial(ext), &[0.0], &[1.0]).is_err());
    }
}
