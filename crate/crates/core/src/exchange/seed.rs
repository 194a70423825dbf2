//! Seeds and seed mutation.
//!
//! [`Seed`] carries an explicit coefficient pair `(p⁺, p⁻)` per position in
//! the tropical semifield, which is enough to express patterns that are not
//! normalized. [`GeometricSeed`] is the normalized special case where the
//! pairs are read off the coefficient rows of an extended matrix.

use serde_json::{json, Value};

use super::expr;
use super::matrix::{ExchangeMatrix, ExtendedMatrix};
use super::rational::{RationalFunction, SymbolNames};
use crate::semifields::TropicalElement;
use crate::{Error, Result};

/// How to split the mandated ratio `p̄⁺_y / p̄⁻_y` into a concrete pair for
/// the positions `y ≠ k` when mutating a non-normalized seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SplitPolicy {
    /// Keep `p̄⁻_y = p⁻_y` and solve for `p̄⁺_y`. Involutive.
    #[default]
    KeepMinus,
    /// `p̄⁺ = r/(r ⊕ 1)`, `p̄⁻ = 1/(r ⊕ 1)`, so every pair is normalized.
    Normalized,
}

/// A seed `(x, p, B)` with coefficients in a tropical semifield.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    cluster: Vec<RationalFunction>,
    coeffs: Vec<(TropicalElement, TropicalElement)>,
    matrix: ExchangeMatrix,
    labels: Vec<String>,
}

/// A seed of geometric type: a cluster together with an extended matrix.
/// Labels name positions and travel with them under mutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeometricSeed {
    cluster: Vec<RationalFunction>,
    ext: ExtendedMatrix,
    labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_labels(labels: &[String], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::Dimension(format!("{} labels for rank {n}", labels.len())));
    }
    let mut sorted: Vec<&String> = labels.iter().collect();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != n {
        return Err(Error::Domain("labels are not pairwise distinct".into()));
    }
    Ok(())
}

fn check_cluster(cluster: &[RationalFunction], n: usize, nq: usize) -> Result<()> {
    if cluster.len() != n {
        return Err(Error::Dimension(format!("cluster of size {} for rank {n}", cluster.len())));
    }
    if let Some(f) = cluster.iter().find(|f| f.nq() != nq || f.nx() != cluster[0].nx()) {
        return Err(Error::Dimension(format!(
            "cluster variable over {} + {} symbols, expected {} + {nq}",
            f.nx(),
            f.nq(),
            cluster[0].nx()
        )));
    }
    if cluster.iter().any(|f| f.is_zero()) {
        return Err(Error::Domain("zero cluster variable".into()));
    }
    let mut sorted: Vec<&RationalFunction> = cluster.iter().collect();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != n {
        return Err(Error::Domain("cluster variables are not pairwise distinct".into()));
    }
    Ok(())
}

/// `∏_j x_j^{e_j}` over the cluster, for a column of exponents.
fn cluster_monomial(cluster: &[RationalFunction], exps: impl Iterator<Item = i64>) -> Result<RationalFunction> {
    let first = &cluster[0];
    let mut acc = RationalFunction::one(first.nx(), first.nq());
    for (x, e) in cluster.iter().zip(exps) {
        if e != 0 {
            acc = acc.mul(&x.pow(e)?);
        }
    }
    Ok(acc)
}

/// The right-hand side `p⁺ ∏ x^{[b]+} + p⁻ ∏ x^{[−b]+}` of the exchange
/// relation in direction `k`, divided by `x_k`.
fn exchange(
    cluster: &[RationalFunction],
    column: &[i64],
    plus: &TropicalElement,
    minus: &TropicalElement,
    k: usize,
) -> Result<RationalFunction> {
    let up = cluster_monomial(cluster, column.iter().map(|&b| b.max(0)))?.mul_tropical(plus)?;
    let down = cluster_monomial(cluster, column.iter().map(|&b| (-b).max(0)))?.mul_tropical(minus)?;
    up.add(&down).div(&cluster[k])
}

/// The coefficient pair encoded by column `k` of the coefficient rows.
pub fn column_coefficients(ext: &ExtendedMatrix, k: usize) -> (TropicalElement, TropicalElement) {
    let n = ext.rank();
    let bottom: Vec<i64> = (n..ext.rows_count()).map(|i| ext.get(i, k)).collect();
    let plus: Vec<i64> = bottom.iter().map(|&b| b.max(0)).collect();
    let minus: Vec<i64> = bottom.iter().map(|&b| (-b).max(0)).collect();
    (
        TropicalElement::from_exponents(&plus).expect("integer exponents"),
        TropicalElement::from_exponents(&minus).expect("integer exponents"),
    )
}

fn cluster_strings(cluster: &[RationalFunction]) -> Vec<String> {
    cluster.iter().map(|f| f.to_string()).collect()
}

fn parse_cluster(v: &Value, nx: usize, nq: usize) -> Result<Vec<RationalFunction>> {
    let strings: Vec<String> = serde_json::from_value(v.clone())?;
    strings.iter().map(|s| expr::parse(s, nx, nq)).collect()
}

fn parse_labels(v: Option<&Value>, n: usize) -> Result<Vec<String>> {
    match v {
        None | Some(Value::Null) => Ok(default_labels(n)),
        Some(v) => {
            let labels: Vec<Value> = serde_json::from_value(v.clone())?;
            labels
                .into_iter()
                .map(|l| match l {
                    Value::String(s) => Ok(s),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(Error::Json(format!("label {other} is neither string nor number"))),
                })
                .collect()
        }
    }
}

impl Seed {
    pub fn new(
        cluster: Vec<RationalFunction>,
        coeffs: Vec<(TropicalElement, TropicalElement)>,
        matrix: ExchangeMatrix,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = matrix.rank();
        let nq = cluster.first().map(|f| f.nq()).unwrap_or(0);
        check_cluster(&cluster, n, nq)?;
        check_labels(&labels, n)?;
        if coeffs.len() != n {
            return Err(Error::Dimension(format!("{} coefficient pairs for rank {n}", coeffs.len())));
        }
        if coeffs.iter().any(|(a, b)| a.gens() != nq || b.gens() != nq) {
            return Err(Error::Dimension("coefficient generators do not match the cluster's".into()));
        }
        Ok(Seed { cluster, coeffs, matrix, labels })
    }

    /// Initial cluster `x1..xn` over `nq` coefficient symbols.
    pub fn initial(matrix: ExchangeMatrix, coeffs: Vec<(TropicalElement, TropicalElement)>) -> Result<Self> {
        let n = matrix.rank();
        let nq = coeffs.first().map(|(a, _)| a.gens()).unwrap_or(0);
        let cluster = (0..n).map(|i| RationalFunction::x(n, nq, i)).collect();
        Seed::new(cluster, coeffs, matrix, default_labels(n))
    }

    /// Initial seed with all coefficients equal to 1.
    pub fn trivial(matrix: ExchangeMatrix) -> Self {
        let n = matrix.rank();
        Seed::initial(matrix, vec![(TropicalElement::one(0), TropicalElement::one(0)); n]).expect("valid trivial seed")
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn cluster(&self) -> &[RationalFunction] {
        &self.cluster
    }

    pub fn coefficients(&self) -> &[(TropicalElement, TropicalElement)] {
        &self.coeffs
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `p⁺_k ⊕ p⁻_k = 1` at every position.
    pub fn is_normalized(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(a, b)| a.trop_add(b).map(|s| s.is_one()).unwrap_or(false))
    }

    /// `p⁺_e / p⁻_e`.
    pub fn ratio(&self, e: usize) -> TropicalElement {
        let (a, b) = &self.coeffs[e];
        a.trop_div(b).expect("matching generators")
    }

    /// The new variable `x̄_k` from the exchange relation.
    pub fn exchange(&self, k: usize) -> Result<RationalFunction> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        let column: Vec<i64> = (0..n).map(|i| self.matrix.get(i, k)).collect();
        let (plus, minus) = &self.coeffs[k];
        exchange(&self.cluster, &column, plus, minus, k)
    }

    /// Seed mutation in direction `k`.
    pub fn mutate(&self, k: usize, policy: SplitPolicy) -> Result<Self> {
        let n = self.rank();
        let new_x = self.exchange(k)?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new_x;
        let (pk_plus, pk_minus) = &self.coeffs[k];
        let rk = self.ratio(k);
        let mut coeffs = Vec::with_capacity(n);
        for y in 0..n {
            if y == k {
                coeffs.push((pk_minus.clone(), pk_plus.clone()));
                continue;
            }
            let bky = self.matrix.get(k, y);
            let r = self
                .ratio(y)
                .trop_mul(&rk.pow(bky.max(0))?)?
                .trop_mul(&pk_minus.pow(bky)?)?;
            let pair = match policy {
                SplitPolicy::KeepMinus => {
                    let minus = self.coeffs[y].1.clone();
                    (r.trop_mul(&minus)?, minus)
                }
                SplitPolicy::Normalized => {
                    let s = r.trop_add(&TropicalElement::one(r.gens()))?;
                    (r.trop_div(&s)?, s.inv())
                }
            };
            coeffs.push(pair);
        }
        Ok(Seed {
            cluster,
            coeffs,
            matrix: self.matrix.mutate(k)?,
            labels: self.labels.clone(),
        })
    }

    /// Replaces the cluster and coefficients, keeping the matrix and labels.
    pub fn with_data(&self, cluster: Vec<RationalFunction>, coeffs: Vec<(TropicalElement, TropicalElement)>) -> Result<Self> {
        Seed::new(cluster, coeffs, self.matrix.clone(), self.labels.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.rank(),
            "nq": self.cluster[0].nq(),
            "labels": self.labels,
            "matrix": self.matrix.to_json(),
            "coeffs": self.coeffs.iter().map(|(a, b)| json!([a.to_json(), b.to_json()])).collect::<Vec<_>>(),
            "cluster": cluster_strings(&self.cluster),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows: Vec<Vec<i64>> = serde_json::from_value(v["matrix"].clone())?;
        let matrix = ExchangeMatrix::new(rows)?;
        let n = matrix.rank();
        let nq = v["nq"].as_u64().map(|m| m as usize).unwrap_or_else(|| {
            v["coeffs"][0][0]["exp"]
                .as_object()
                .and_then(|o| o.keys().filter_map(|k| k.parse::<usize>().ok()).max())
                .map(|m| m + 1)
                .unwrap_or(0)
        });
        let pairs: Vec<Vec<Value>> = serde_json::from_value(v["coeffs"].clone())?;
        let coeffs = pairs
            .iter()
            .map(|p| match p.as_slice() {
                [a, b] => Ok((TropicalElement::from_json(a, nq)?, TropicalElement::from_json(b, nq)?)),
                _ => Err(Error::Json("coefficient pair must have two entries".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let cluster = parse_cluster(&v["cluster"], n, nq)?;
        Seed::new(cluster, coeffs, matrix, parse_labels(v.get("labels"), n)?)
    }
}

/// Non-normalized seed mutation with an explicit splitting policy.
pub fn mutate_seed_nonnormalized(s: &Seed, k: usize, split: SplitPolicy) -> Result<Seed> {
    s.mutate(k, split)
}

/// Mutation of a seed of geometric type.
pub fn mutate_seed_geometric(s: &GeometricSeed, k: usize) -> Result<GeometricSeed> {
    s.mutate(k)
}

impl GeometricSeed {
    pub fn new(cluster: Vec<RationalFunction>, ext: ExtendedMatrix, labels: Vec<String>) -> Result<Self> {
        let n = ext.rank();
        check_cluster(&cluster, n, ext.coefficient_rows())?;
        check_labels(&labels, n)?;
        Ok(GeometricSeed { cluster, ext, labels })
    }

    /// Initial cluster `x1..xn` over one symbol per coefficient row.
    pub fn initial(ext: ExtendedMatrix) -> Self {
        let n = ext.rank();
        let nq = ext.coefficient_rows();
        let cluster = (0..n).map(|i| RationalFunction::x(n, nq, i)).collect();
        GeometricSeed::new(cluster, ext, default_labels(n)).expect("initial cluster is valid")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_labels(&labels, self.rank())?;
        self.labels = labels;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.ext.rank()
    }

    pub fn cluster(&self) -> &[RationalFunction] {
        &self.cluster
    }

    pub fn ext(&self) -> &ExtendedMatrix {
        &self.ext
    }

    pub fn matrix(&self) -> ExchangeMatrix {
        self.ext.principal_part()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `(p⁺_k, p⁻_k)` from the coefficient rows; always normalized.
    pub fn coefficients(&self, k: usize) -> (TropicalElement, TropicalElement) {
        let pair = column_coefficients(&self.ext, k);
        debug_assert!(pair.0.trop_add(&pair.1).expect("same generators").is_one());
        pair
    }

    pub fn exchange(&self, k: usize) -> Result<RationalFunction> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        let column: Vec<i64> = (0..n).map(|i| self.ext.get(i, k)).collect();
        let (plus, minus) = self.coefficients(k);
        exchange(&self.cluster, &column, &plus, &minus, k)
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let new_x = self.exchange(k)?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new_x;
        Ok(GeometricSeed {
            cluster,
            ext: self.ext.mutate(k)?,
            labels: self.labels.clone(),
        })
    }

    /// Applies mutations left to right.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Self> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// The same seed with explicit coefficient pairs.
    pub fn to_seed(&self) -> Seed {
        let coeffs = (0..self.rank()).map(|k| self.coefficients(k)).collect();
        Seed::new(self.cluster.clone(), coeffs, self.matrix(), self.labels.clone()).expect("geometric seed is a seed")
    }

    /// The exchange relation in direction `k` as printable sides, with the
    /// given symbol names: `(x_k * x̄_k, right-hand side)`.
    pub fn exchange_relation(&self, k: usize, names: &SymbolNames) -> Result<(String, String)> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        let new_x = self.exchange(k)?;
        let lhs = format!(
            "({})*({})",
            self.cluster[k].format_with(names),
            new_x.format_with(names)
        );
        let rhs = self.cluster[k].mul(&new_x).format_with(names);
        Ok((lhs, rhs))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.rank(),
            "labels": self.labels,
            "ext": self.ext.to_json(),
            "cluster": cluster_strings(&self.cluster),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ext = ExtendedMatrix::from_json(&v["ext"])?;
        let n = ext.rank();
        if let Some(declared) = v["n"].as_u64() {
            if declared as usize != n {
                return Err(Error::Dimension(format!("declared n = {declared} but matrix has {n} columns")));
            }
        }
        let cluster = match v.get("cluster") {
            None | Some(Value::Null) => GeometricSeed::initial(ext.clone()).cluster,
            Some(c) => parse_cluster(c, n, ext.coefficient_rows())?,
        };
        GeometricSeed::new(cluster, ext, parse_labels(v.get("labels"), n)?)
    }
}
