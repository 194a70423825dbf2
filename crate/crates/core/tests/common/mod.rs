//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the crate's mutation or enumeration code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

/// A random skew-symmetrizable matrix `D⁻¹S` with `S` skew-symmetric and
/// entries clamped to `[−bound, bound]` by zeroing pairs that overflow.
pub fn random_skew_symmetrizable<R: Rng>(rng: &mut R, n: usize, bound: i64) -> (Vec<Vec<i64>>, Vec<i64>) {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let l = lcm(d[i], d[j]);
            let t = rng.gen_range(-3i64..=3);
            let (bij, bji) = (t * l / d[i], -t * l / d[j]);
            if bij.abs() <= bound && bji.abs() <= bound {
                b[i][j] = bij;
                b[j][i] = bji;
            }
        }
    }
    (b, d)
}

fn lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Matrix mutation in the five-case form, for any number of rows.
pub fn mutate_rows(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b[0].len();
    (0..b.len())
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == k || j == k {
                        -b[i][j]
                    } else if b[i][k] > 0 && b[k][j] > 0 {
                        b[i][j] + b[i][k] * b[k][j]
                    } else if b[i][k] < 0 && b[k][j] < 0 {
                        b[i][j] - b[i][k] * b[k][j]
                    } else {
                        b[i][j]
                    }
                })
                .collect()
        })
        .collect()
}

pub fn is_symmetrized_by(b: &[Vec<i64>], d: &[i64]) -> bool {
    let n = d.len();
    (0..n).all(|i| (0..n).all(|j| d[i] * b[i][j] == -d[j] * b[j][i]))
}

/// Counts of an exchange graph with trivial coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub seeds: usize,
    pub variables: usize,
    pub edges: usize,
}

/// Breadth-first mutation closure evaluated at a fixed rational point.
/// Cluster variables are identified by their value there; seeds by the set
/// of values. The starting point is generic enough for small ranks.
pub fn count_by_evaluation(b: &[Vec<i64>], bound: usize) -> Option<Counts> {
    let n = b.len();
    let start: Vec<BigRational> = (0..n)
        .map(|i| BigRational::new(BigInt::from(PRIMES[i]), BigInt::from(PRIMES[i + n])))
        .collect();
    let key = |x: &[BigRational]| x.iter().cloned().collect::<BTreeSet<_>>();
    let mut seen: HashMap<BTreeSet<BigRational>, usize> = HashMap::new();
    let mut variables: BTreeSet<BigRational> = start.iter().cloned().collect();
    let mut queue = VecDeque::from([(start.clone(), b.to_vec())]);
    seen.insert(key(&start), 0);
    let mut directed = 0usize;
    while let Some((x, m)) = queue.pop_front() {
        for k in 0..n {
            directed += 1;
            let (mut up, mut down) = (BigRational::one(), BigRational::one());
            for (i, xi) in x.iter().enumerate() {
                let e = m[i][k];
                if e > 0 {
                    up *= num_traits::pow(xi.clone(), e as usize);
                } else if e < 0 {
                    down *= num_traits::pow(xi.clone(), (-e) as usize);
                }
            }
            let mut y = x.clone();
            y[k] = (up + down) / &x[k];
            variables.insert(y[k].clone());
            let kk = key(&y);
            if !seen.contains_key(&kk) {
                if seen.len() >= bound {
                    return None;
                }
                seen.insert(kk, seen.len());
                queue.push_back((y, mutate_rows(&m, k)));
            }
        }
    }
    Some(Counts {
        seeds: seen.len(),
        variables: variables.len(),
        edges: directed / 2,
    })
}

const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Relative difference `|a − b| / max(|a|, |b|)`.
pub fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
