//! Sparse multivariate polynomials over the integers with nonnegative
//! exponents, plus an exact greatest common divisor.
//!
//! Terms are kept sorted in strictly decreasing lexicographic order of their
//! exponent vectors (variable 0 most significant) with nonzero coefficients,
//! so derived equality and hashing are structural.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial.
pub type Exps = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exps, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(vec![0; nvars], c)],
        }
    }

    pub fn monomial(exps: Exps, c: BigInt) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, c)] }
    }

    pub fn var(nvars: usize, index: usize, power: i32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        Self::monomial(e, BigInt::one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, BigInt)>) -> Self {
        let mut acc: BTreeMap<Exps, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_sorted_map(nvars, acc)
    }

    fn from_sorted_map(nvars: usize, acc: BTreeMap<Exps, BigInt>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    /// Coefficient of the lexicographically largest term.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Exps, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let mut terms: Vec<(Exps, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Multiplies by `c · x^exps`; exponents may be negative as long as the
    /// result stays a polynomial.
    pub fn mul_term(&self, exps: &[i32], c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), k * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k / c)).collect(),
        }
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Exps {
        let mut m: Option<Exps> = None;
        for (e, _) in &self.terms {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Shifts all exponents down by `m` (which must not exceed any term).
    pub fn shift_down(&self, m: &[i32]) -> Self {
        if m.iter().all(|&x| x == 0) {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] != 0)
    }

    fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.uses_var(v))
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if divisor.terms.len() == 1 {
            let (de, dc) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                let ne: Exps = e.iter().zip(de).map(|(a, b)| a - b).collect();
                if ne.iter().any(|&x| x < 0) {
                    return None;
                }
                terms.push((ne, q));
            }
            return Some(Poly {
                nvars: self.nvars,
                terms,
            });
        }
        for v in 0..self.nvars {
            if divisor.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (lead_e, lead_c) = &divisor.terms[0];
        let mut rem: BTreeMap<Exps, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exps = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            for (de, dc) in &divisor.terms {
                let te: Exps = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let updated = rem.get(&te).cloned().unwrap_or_default() - dc * &qc;
                if updated.is_zero() {
                    rem.remove(&te);
                } else {
                    rem.insert(te, updated);
                }
            }
            quotient.push((qe, qc));
        }
        Some(Poly {
            nvars: self.nvars,
            terms: quotient,
        })
    }

    /// Sign-normalised copy with a positive leading coefficient.
    pub fn with_positive_lead(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Sets variable `v` to the integer `value`.
    pub fn substitute(&self, v: usize, value: &BigInt) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| {
                let mut ne = e.clone();
                let p = ne[v];
                ne[v] = 0;
                (ne, c * num_traits::pow(value.clone(), p as usize))
            }),
        )
    }

    /// Evaluates at real values; `weights[v]` scales exponents of variable `v`.
    pub fn eval_f64(&self, values: &[f64], weights: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = bigint_to_f64(c);
                for (v, &p) in e.iter().enumerate() {
                    if p != 0 {
                        t *= values[v].powf(p as f64 * weights[v]);
                    }
                }
                t
            })
            .sum()
    }

    fn to_univariate(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let d = ne[v] as usize;
            ne[v] = 0;
            buckets[d].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_unstable_by(|x, y| y.0.cmp(&x.0));
                Poly {
                    nvars: self.nvars,
                    terms: ts,
                }
            })
            .collect()
    }

    fn from_univariate(coeffs: &[Poly], v: usize, nvars: usize) -> Poly {
        let mut terms = Vec::new();
        for (d, c) in coeffs.iter().enumerate() {
            for (e, k) in &c.terms {
                let mut ne = e.clone();
                ne[v] += d as i32;
                terms.push((ne, k.clone()));
            }
        }
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Poly { nvars, terms }
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

/// Greatest common divisor in `Z[x_0, ..., x_{n-1}]`, normalised to a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.with_positive_lead();
    }
    if b.is_zero() {
        return a.with_positive_lead();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m: Exps = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let core = gcd_core(&a.shift_down(&ma), &b.shift_down(&mb));
    core.mul_term(&m, &BigInt::one())
}

/// Gcd of two nonzero polynomials that are not divisible by any variable.
fn gcd_core(a: &Poly, b: &Poly) -> Poly {
    let nvars = a.nvars;
    if a.is_constant() || b.is_constant() {
        return Poly::constant(nvars, a.content().gcd(&b.content()));
    }
    if a == b || *a == b.neg() {
        return a.with_positive_lead();
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.with_positive_lead();
    }
    let v = a.highest_var().max(b.highest_var()).expect("nonconstant polynomial uses a variable");
    if !a.uses_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = list_gcd(&ua);
    let cb = list_gcd(&ub);
    let c = gcd(&ca, &cb);
    let pa = divide_all(&ua, &ca);
    let pb = divide_all(&ub, &cb);
    let g = primitive_prs(pa, pb);
    let g = Poly::from_univariate(&g, v, nvars);
    g.mul(&c).with_positive_lead()
}

fn content_in(p: &Poly, v: usize) -> Poly {
    list_gcd(&p.to_univariate(v))
}

fn list_gcd(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero(coeffs.first().map(|c| c.nvars).unwrap_or(0));
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_all(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    if d.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(u: &mut Vec<Poly>) {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
    if u.len() == 1 && u[0].is_zero() {
        u.clear();
    }
}

fn primitive(u: Vec<Poly>) -> Vec<Poly> {
    let c = list_gcd(&u);
    let mut p = divide_all(&u, &c);
    if p.last().and_then(|l| l.leading_coeff()).is_some_and(|c| c.is_negative()) {
        p = p.iter().map(|c| c.neg()).collect();
    }
    p
}

/// Pseudo-remainder of `f` by `g` as univariate polynomials over a ring of
/// polynomials.
fn prem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r: Vec<Poly> = f.to_vec();
    trim(&mut r);
    let mut e = (f.len() as i64) - (g.len() as i64) + 1;
    while !r.is_empty() && r.len() > dg {
        let d = r.len() - 1;
        let c = r[d].clone();
        for coeff in r.iter_mut() {
            *coeff = coeff.mul(lc);
        }
        let shift = d - dg;
        for (j, gj) in g.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&gj.mul(&c));
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let factor = lc.pow(e as u32);
        for coeff in r.iter_mut() {
            *coeff = coeff.mul(&factor);
        }
    }
    r
}

/// Primitive polynomial remainder sequence gcd of two primitive univariate
/// polynomials of positive degree.
fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let nvars = a[0].nvars;
    let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = prem(&f, &g);
        if r.is_empty() {
            return primitive(g);
        }
        if r.len() == 1 {
            return vec![Poly::one(nvars)];
        }
        f = g;
        g = primitive(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[i32], i64)]) -> Poly {
        Poly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn arithmetic_and_exact_division() {
        let x = Poly::var(2, 0, 1);
        let y = Poly::var(2, 1, 1);
        let one = Poly::one(2);
        let a = x.add(&one);
        let b = x.sub(&y);
        let ab = a.mul(&b);
        assert_eq!(ab, p(2, &[(&[2, 0], 1), (&[1, 1], -1), (&[1, 0], 1), (&[0, 1], -1)]));
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(ab.div_exact(&x.add(&y)), None);
        assert_eq!(a.pow(3).div_exact(&a.pow(2)), Some(a.clone()));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let x = Poly::var(3, 0, 1);
        let y = Poly::var(3, 1, 1);
        let z = Poly::var(3, 2, 1);
        let one = Poly::one(3);
        let common = x.mul(&y).add(&z).add(&one);
        let f = common.mul(&x.sub(&z)).mul(&y);
        let g = common.mul(&y.add(&z.pow(2))).scale(&BigInt::from(-3));
        assert_eq!(gcd(&f, &g), common);
        assert!(gcd(&x.add(&one), &y.add(&one)).is_one());
        let six = Poly::constant(3, BigInt::from(6));
        let four_x = x.scale(&BigInt::from(4));
        assert_eq!(gcd(&six, &four_x), Poly::constant(3, BigInt::from(2)));
        assert_eq!(gcd(&x.mul(&y), &x.pow(2)), x);
    }

    #[test]
    fn gcd_with_univariate_prs() {
        // (x^2 + y)(x + 1) and (x^2 + y)(x - y): the common factor only shows
        // after a remainder sequence.
        let x = Poly::var(2, 0, 1);
        let y = Poly::var(2, 1, 1);
        let one = Poly::one(2);
        let c = x.pow(2).add(&y);
        let f = c.mul(&x.add(&one));
        let g = c.mul(&x.sub(&y));
        assert_eq!(gcd(&f, &g), c);
    }
}
