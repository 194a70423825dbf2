//! The ŷ-quantities: ratios of the two terms of each exchange relation.

use super::matrix::ExtendedMatrix;
use super::rational::RationalFunction;
use super::seed::{GeometricSeed, Seed, SplitPolicy};
use crate::{Error, Result};

/// `ŷ_e = (p⁺_e / p⁻_e) ∏_f x_f^{b_fe}` for every position `e`.
pub fn yhat(s: &Seed) -> Result<Vec<RationalFunction>> {
    let n = s.rank();
    (0..n)
        .map(|e| {
            let first = &s.cluster()[0];
            let mut acc = RationalFunction::one(first.nx(), first.nq()).mul_tropical(&s.ratio(e))?;
            for (f, x) in s.cluster().iter().enumerate() {
                let b = s.matrix().get(f, e);
                if b != 0 {
                    acc = acc.mul(&x.pow(b)?);
                }
            }
            Ok(acc)
        })
        .collect()
}

pub fn yhat_geometric(s: &GeometricSeed) -> Result<Vec<RationalFunction>> {
    yhat(&s.to_seed())
}

/// Outcome of comparing ŷ after a mutation with the value the mutation rule predicts.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct YhatReport {
    /// Positions where the rule failed.
    pub failures: Vec<usize>,
    /// Largest relative deviation seen (numeric mode only).
    pub max_relative_error: f64,
}

impl YhatReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `ŷ'_f` predicted from the ŷ-tuple before mutating at `k`.
fn predicted(y: &[RationalFunction], b_kf: i64, f: usize, k: usize) -> Result<RationalFunction> {
    if f == k {
        return y[k].inv();
    }
    let one = RationalFunction::one(y[k].nx(), y[k].nq());
    Ok(y[f].mul(&y[k].pow(b_kf.max(0))?).mul(&y[k].add(&one).pow(-b_kf)?))
}

/// Symbolic check of the ŷ mutation rule at `k`.
pub fn check_yhat_mutation(s: &Seed, k: usize, policy: SplitPolicy) -> Result<YhatReport> {
    let before = yhat(s)?;
    let after = yhat(&s.mutate(k, policy)?)?;
    let mut report = YhatReport::default();
    for f in 0..s.rank() {
        if predicted(&before, s.matrix().get(k, f), f, k)? != after[f] {
            report.failures.push(f);
        }
    }
    Ok(report)
}

/// A seed of geometric type evaluated at positive reals.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSeed {
    pub x: Vec<f64>,
    pub q: Vec<f64>,
    pub ext: ExtendedMatrix,
}

impl NumericSeed {
    pub fn new(x: Vec<f64>, q: Vec<f64>, ext: ExtendedMatrix) -> Result<Self> {
        if x.len() != ext.rank() || q.len() != ext.coefficient_rows() {
            return Err(Error::Dimension(format!(
                "{} cluster and {} coefficient values for a {}x{} extended matrix",
                x.len(),
                q.len(),
                ext.rows_count(),
                ext.rank()
            )));
        }
        if x.iter().chain(&q).any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::Domain("numeric seed values must be positive and finite".into()));
        }
        Ok(NumericSeed { x, q, ext })
    }

    /// The two terms `(p⁺ ∏ x^{[b]+}, p⁻ ∏ x^{[−b]+})` of the relation at `k`.
    pub fn terms(&self, k: usize) -> (f64, f64) {
        let (mut up, mut down) = (1.0, 1.0);
        let n = self.ext.rank();
        for i in 0..self.ext.rows_count() {
            let b = self.ext.get(i, k);
            let v = if i < n { self.x[i] } else { self.q[i - n] };
            if b > 0 {
                up *= v.powi(b as i32);
            } else if b < 0 {
                down *= v.powi((-b) as i32);
            }
        }
        (up, down)
    }

    pub fn yhat(&self) -> Vec<f64> {
        (0..self.ext.rank())
            .map(|k| {
                let (u, d) = self.terms(k);
                u / d
            })
            .collect()
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let (u, d) = self.terms(k);
        let mut x = self.x.clone();
        x[k] = (u + d) / self.x[k];
        Ok(NumericSeed {
            x,
            q: self.q.clone(),
            ext: self.ext.mutate(k)?,
        })
    }
}

/// Numeric check of the ŷ mutation rule at `k`, with relative tolerance `tol`.
pub fn check_yhat_mutation_numeric(s: &NumericSeed, k: usize, tol: f64) -> Result<YhatReport> {
    let before = s.yhat();
    let after = s.mutate(k)?.yhat();
    let mut report = YhatReport::default();
    for f in 0..before.len() {
        let b = s.ext.get(k, f);
        let expected = if f == k {
            1.0 / before[k]
        } else {
            before[f] * before[k].powi(b.max(0) as i32) * (before[k] + 1.0).powi(-b as i32)
        };
        let rel = (after[f] - expected).abs() / expected.abs();
        report.max_relative_error = report.max_relative_error.max(rel);
        if !(rel <= tol) {
            report.failures.push(f);
        }
    }
    Ok(report)
}
