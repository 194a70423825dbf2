//! Exchange matrices and their extended versions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::{Error, Result};

/// A square skew-symmetrizable integer matrix `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

/// An `m × n` integer matrix whose top `n × n` block is an exchange matrix.
/// Rows below the top block record coefficients: `p⁺/p⁻ = ∏ q_i^{b_{ie}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedMatrix {
    n: usize,
    m: usize,
    entries: Vec<i64>,
}

fn checked_entry(a: i64, b: i64, c: i64) -> Result<i64> {
    // a + b * c
    b.checked_mul(c)
        .and_then(|p| a.checked_add(p))
        .ok_or(Error::Overflow("matrix mutation"))
}

/// The mutated entry `b̄_xy` in direction `k`, given the needed entries.
fn mutated_entry(bxy: i64, bxk: i64, bky: i64, on_k: bool) -> Result<i64> {
    if on_k {
        return bxy.checked_neg().ok_or(Error::Overflow("matrix mutation"));
    }
    let t = checked_entry(bxy, bky.max(0), bxk)?;
    checked_entry(t, bky, (-bxk).max(0))
}

fn rows_from(entries: &[i64], cols: usize) -> Vec<Vec<i64>> {
    entries.chunks(cols.max(1)).map(|c| c.to_vec()).collect()
}

impl ExchangeMatrix {
    /// Validates squareness and skew-symmetrizability.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("exchange matrix must have positive rank".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("exchange matrix must be square".into()));
        }
        let b = ExchangeMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        b.symmetrizer()?;
        Ok(b)
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        rows_from(&self.entries, self.n)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Smallest positive integers `d` with `d_i b_ij = -d_j b_ji`, normalised
    /// to gcd 1 on each connected component.
    pub fn symmetrizer(&self) -> Result<Vec<i64>> {
        let n = self.n;
        let mut d: Vec<Option<BigRational>> = vec![None; n];
        let mut component = vec![usize::MAX; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(BigRational::one());
            component[start] = start;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    let (bij, bji) = (self.get(i, j), self.get(j, i));
                    if i == j {
                        if bij != 0 {
                            return Err(Error::NotSkewSymmetrizable(format!("nonzero diagonal entry at {i}")));
                        }
                        continue;
                    }
                    if (bij == 0) != (bji == 0) || (bij != 0 && bij.signum() == bji.signum()) {
                        return Err(Error::NotSkewSymmetrizable(format!("entries ({i},{j}) and ({j},{i}) are not sign-opposite")));
                    }
                    if bij == 0 {
                        continue;
                    }
                    let di = d[i].clone().expect("visited");
                    let dj = di * BigRational::from_integer(BigInt::from(-bij)) / BigRational::from_integer(BigInt::from(bji));
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            component[j] = start;
                            stack.push(j);
                        }
                        Some(existing) if *existing != dj => {
                            return Err(Error::NotSkewSymmetrizable(format!("inconsistent symmetrizer along ({i},{j})")));
                        }
                        _ => {}
                    }
                }
            }
        }
        let mut out = vec![0i64; n];
        for root in 0..n {
            let members: Vec<usize> = (0..n).filter(|&i| component[i] == root).collect();
            if members.is_empty() {
                continue;
            }
            let lcm = members
                .iter()
                .fold(BigInt::one(), |acc, &i| acc.lcm(d[i].as_ref().expect("assigned").denom()));
            let scaled: Vec<BigInt> = members
                .iter()
                .map(|&i| (d[i].clone().expect("assigned") * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            for (&i, v) in members.iter().zip(&scaled) {
                let v = (v / &g).abs();
                out[i] = v.to_i64().ok_or(Error::Overflow("symmetrizer"))?;
            }
        }
        Ok(out)
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k, size: self.n });
        }
        let n = self.n;
        let mut entries = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[x * n + y] = mutated_entry(self.get(x, y), self.get(x, k), self.get(k, y), x == k || y == k)?;
            }
        }
        Ok(ExchangeMatrix { n, entries })
    }

    /// `P B P^{-1}` for the position map `perm` (row/column `i` moves to `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        ExchangeMatrix { n, entries }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.rows()).expect("integer rows serialize")
    }
}

impl ExtendedMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 || m < n {
            return Err(Error::Dimension(format!("extended matrix with {m} rows and {n} columns")));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("ragged extended matrix".into()));
        }
        ExchangeMatrix::new(rows[..n].to_vec())?;
        Ok(ExtendedMatrix {
            n,
            m,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Stacks `B` on top of the given coefficient rows.
    pub fn from_parts(b: &ExchangeMatrix, bottom: &[Vec<i64>]) -> Result<Self> {
        let mut rows = b.rows();
        rows.extend(bottom.iter().cloned());
        Self::new(rows)
    }

    /// `[B; I]`: principal coefficients.
    pub fn principal(b: &ExchangeMatrix) -> Self {
        let n = b.rank();
        let identity: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::from_parts(b, &identity).expect("principal extension is valid")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn rows_count(&self) -> usize {
        self.m
    }

    /// Number of coefficient rows.
    pub fn coefficient_rows(&self) -> usize {
        self.m - self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        rows_from(&self.entries, self.n)
    }

    pub fn bottom_rows(&self) -> Vec<Vec<i64>> {
        self.rows()[self.n..].to_vec()
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        (0..self.m).map(|i| self.get(i, k)).collect()
    }

    pub fn principal_part(&self) -> ExchangeMatrix {
        ExchangeMatrix {
            n: self.n,
            entries: self.entries[..self.n * self.n].to_vec(),
        }
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k, size: self.n });
        }
        let (n, m) = (self.n, self.m);
        let mut entries = vec![0; m * n];
        for x in 0..m {
            for y in 0..n {
                entries[x * n + y] = mutated_entry(self.get(x, y), self.get(x, k), self.get(k, y), x == k || y == k)?;
            }
        }
        Ok(ExtendedMatrix { n, m, entries })
    }

    /// Permutes the top block's rows and all columns by the position map
    /// `perm`; coefficient rows keep their order.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let (n, m) = (self.n, self.m);
        let mut entries = vec![0; m * n];
        for i in 0..m {
            let target = if i < n { perm[i] } else { i };
            for j in 0..n {
                entries[target * n + perm[j]] = self.get(i, j);
            }
        }
        ExtendedMatrix { n, m, entries }
    }

    /// Keeps only the listed coefficient rows (indices relative to the bottom block).
    pub fn select_coefficient_rows(&self, keep: &[usize]) -> Result<Self> {
        let mut rows = self.principal_part().rows();
        let bottom = self.bottom_rows();
        for &i in keep {
            rows.push(
                bottom
                    .get(i)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange { index: i, size: bottom.len() })?,
            );
        }
        Self::new(rows)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.rows()).expect("integer rows serialize")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows: Vec<Vec<i64>> = serde_json::from_value(v.clone())?;
        Self::new(rows)
    }
}

/// Matrix mutation `μ_k(B)`.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    b.mutate(k)
}

/// Mutation of an extended matrix: the same rule on every row.
pub fn mutate_extended(bt: &ExtendedMatrix, k: usize) -> Result<ExtendedMatrix> {
    bt.mutate(k)
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<i64>]) -> fmt::Result {
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| format!("{v:>3}")).collect();
        writeln!(f, "[{}]", cells.join(""))?;
    }
    Ok(())
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows())
    }
}

impl fmt::Display for ExtendedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_mutation_flips_signs() {
        let b = ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().rows(), vec![vec![0, 1], vec![-1, 0]]);
        let b = ExchangeMatrix::new(vec![vec![0, -2], vec![1, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().rows(), vec![vec![0, 2], vec![-1, 0]]);
        assert_eq!(b.symmetrizer().unwrap(), vec![1, 2]);
    }

    #[test]
    fn zero_matrix_is_fixed() {
        let z = ExchangeMatrix::zero(3);
        for k in 0..3 {
            assert_eq!(z.mutate(k).unwrap(), z);
        }
    }

    #[test]
    fn rejects_non_symmetrizable() {
        assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![1]]).is_err());
        // A 3-cycle whose symmetrizer would have to be inconsistent.
        assert!(ExchangeMatrix::new(vec![vec![0, 1, -1], vec![-2, 0, 1], vec![1, -1, 0]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap().mutate(2).is_err());
    }

    #[test]
    fn extended_mutation_uses_the_same_rule() {
        let bt = ExtendedMatrix::new(vec![vec![0], vec![1], vec![1]]).unwrap();
        assert_eq!(bt.mutate(0).unwrap().rows(), vec![vec![0], vec![-1], vec![-1]]);
        let p = ExtendedMatrix::principal(&ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap());
        assert_eq!(p.rows_count(), 4);
        assert_eq!(p.mutate(0).unwrap().mutate(0).unwrap(), p);
    }
}
