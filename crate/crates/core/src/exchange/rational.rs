//! Exact rational functions in cluster symbols `x_1..x_n` with coefficients
//! in the group ring of a tropical semifield on `q_1..q_m`.
//!
//! A value is stored as `m · P / Q` where `m` is a Laurent monomial, `P` and
//! `Q` are coprime integer polynomials not divisible by any variable, and the
//! leading coefficient of `Q` is positive. Exponents of the `q` symbols are
//! stored doubled so that half-integer powers of coefficients are exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{gcd, Exps, Poly};
use crate::semifields::TropicalElement;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    nx: usize,
    nq: usize,
    mono: Exps,
    num: Poly,
    den: Poly,
}

/// Display names for the cluster and coefficient symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolNames {
    pub x: Vec<String>,
    pub q: Vec<String>,
}

impl SymbolNames {
    pub fn standard(nx: usize, nq: usize) -> Self {
        SymbolNames {
            x: (1..=nx).map(|i| format!("x{i}")).collect(),
            q: (1..=nq).map(|i| format!("q{i}")).collect(),
        }
    }
}

impl RationalFunction {
    fn nvars(&self) -> usize {
        self.nx + self.nq
    }

    pub fn zero(nx: usize, nq: usize) -> Self {
        RationalFunction {
            nx,
            nq,
            mono: vec![0; nx + nq],
            num: Poly::zero(nx + nq),
            den: Poly::one(nx + nq),
        }
    }

    pub fn one(nx: usize, nq: usize) -> Self {
        Self::constant(nx, nq, 1)
    }

    pub fn constant(nx: usize, nq: usize, c: i64) -> Self {
        Self::from_poly(nx, nq, Poly::constant(nx + nq, BigInt::from(c)))
    }

    /// The cluster symbol `x_{index+1}`.
    pub fn x(nx: usize, nq: usize, index: usize) -> Self {
        let mut mono = vec![0; nx + nq];
        mono[index] = 1;
        RationalFunction {
            nx,
            nq,
            mono,
            num: Poly::one(nx + nq),
            den: Poly::one(nx + nq),
        }
    }

    /// The coefficient monomial given by a tropical element.
    pub fn q_monomial(nx: usize, t: &TropicalElement) -> Result<Self> {
        let nq = t.gens();
        let mut mono = vec![0; nx + nq];
        for (i, h) in t.halves() {
            mono[nx + i] = i32::try_from(h).map_err(|_| Error::Overflow("coefficient exponent"))?;
        }
        Ok(RationalFunction {
            nx,
            nq,
            mono,
            num: Poly::one(nx + nq),
            den: Poly::one(nx + nq),
        })
    }

    /// A Laurent monomial `c · x^ex · q^(hq/2)`.
    pub fn monomial(nx: usize, nq: usize, x_exps: &[i32], q_halves: &[i32]) -> Self {
        let mut mono = x_exps.to_vec();
        mono.extend_from_slice(q_halves);
        debug_assert_eq!(mono.len(), nx + nq);
        RationalFunction {
            nx,
            nq,
            mono,
            num: Poly::one(nx + nq),
            den: Poly::one(nx + nq),
        }
    }

    /// Wraps a polynomial whose exponents are in internal units.
    pub fn from_poly(nx: usize, nq: usize, p: Poly) -> Self {
        Self::from_parts(nx, nq, vec![0; nx + nq], p, Poly::one(nx + nq))
    }

    /// Reduces `x^mono · num / den` to canonical form.
    pub fn from_parts(nx: usize, nq: usize, mono: Exps, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero(nx, nq);
        }
        let mn = num.monomial_content();
        let md = den.monomial_content();
        let mut num = num.shift_down(&mn);
        let mut den = den.shift_down(&md);
        let mono: Exps = mono.iter().zip(mn.iter().zip(&md)).map(|(m, (a, b))| m + a - b).collect();
        if !den.is_constant() || !den.is_one() {
            let g = gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
            if den.leading_coeff().is_some_and(|c| c.is_negative()) {
                num = num.neg();
                den = den.neg();
            }
        }
        RationalFunction { nx, nq, mono, num, den }
    }

    /// Builds from parts that are already coprime and monomial-free.
    fn from_reduced(nx: usize, nq: usize, mono: Exps, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(nx, nq);
        }
        RationalFunction { nx, nq, mono, num, den }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nq(&self) -> usize {
        self.nq
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one() && self.mono.iter().all(|&e| e == 0)
    }

    /// Laurent monomial factor (cluster exponents, then doubled coefficient exponents).
    pub fn monomial_part(&self) -> &[i32] {
        &self.mono
    }

    pub fn numerator_poly(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_poly(&self) -> &Poly {
        &self.den
    }

    /// True iff the reduced denominator is a Laurent monomial, i.e. the value
    /// is a Laurent polynomial in the cluster symbols over the coefficient group ring.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            (self.nx, self.nq),
            (other.nx, other.nq),
            "rational functions over different symbol sets"
        );
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nx, self.nq);
        }
        let mono: Exps = self.mono.iter().zip(&other.mono).map(|(a, b)| a + b).collect();
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (other.num.clone(), other.den.clone());
        if !d2.is_one() {
            cancel(&mut n1, &mut d2);
        }
        if !d1.is_one() {
            cancel(&mut n2, &mut d1);
        }
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        Self::from_reduced(self.nx, self.nq, mono, num, den)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m: Exps = self.mono.iter().zip(&other.mono).map(|(a, b)| *a.min(b)).collect();
        let sa: Exps = self.mono.iter().zip(&m).map(|(a, b)| a - b).collect();
        let sb: Exps = other.mono.iter().zip(&m).map(|(a, b)| a - b).collect();
        let one = BigInt::one();
        if self.den == other.den {
            let num = self.num.mul_term(&sa, &one).add(&other.num.mul_term(&sb, &one));
            if self.den.is_one() {
                if num.is_zero() {
                    return Self::zero(self.nx, self.nq);
                }
                let mc = num.monomial_content();
                let mono = m.iter().zip(&mc).map(|(a, b)| a + b).collect();
                return Self::from_reduced(self.nx, self.nq, mono, num.shift_down(&mc), self.den.clone());
            }
            return Self::from_parts(self.nx, self.nq, m, num, self.den.clone());
        }
        let num = self
            .num
            .mul(&other.den)
            .mul_term(&sa, &one)
            .add(&other.num.mul(&self.den).mul_term(&sb, &one));
        let den = self.den.mul(&other.den);
        Self::from_parts(self.nx, self.nq, m, num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mono = self.mono.iter().map(|e| -e).collect();
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Ok(RationalFunction {
            nx: self.nx,
            nq: self.nq,
            mono,
            num,
            den,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e32 = u32::try_from(e).map_err(|_| Error::Overflow("power"))?;
        if e == 0 {
            return Ok(Self::one(self.nx, self.nq));
        }
        let mono = self
            .mono
            .iter()
            .map(|&m| (m as i64).checked_mul(e).and_then(|v| i32::try_from(v).ok()))
            .collect::<Option<Exps>>()
            .ok_or(Error::Overflow("power"))?;
        Ok(RationalFunction {
            nx: self.nx,
            nq: self.nq,
            mono,
            num: self.num.pow(e32),
            den: self.den.pow(e32),
        })
    }

    /// Multiplies by a coefficient monomial.
    pub fn mul_tropical(&self, t: &TropicalElement) -> Result<Self> {
        if t.gens() != self.nq {
            return Err(Error::Dimension(format!(
                "coefficient over {} generators applied to functions over {}",
                t.gens(),
                self.nq
            )));
        }
        let mut out = self.clone();
        if out.is_zero() {
            return Ok(out);
        }
        for (i, h) in t.halves() {
            let slot = &mut out.mono[self.nx + i];
            *slot = slot
                .checked_add(i32::try_from(h).map_err(|_| Error::Overflow("coefficient exponent"))?)
                .ok_or(Error::Overflow("coefficient exponent"))?;
        }
        Ok(out)
    }

    /// Sets the coefficient symbol `q_{index+1}` to 1.
    pub fn specialize_coefficient(&self, index: usize) -> Self {
        let v = self.nx + index;
        let one = BigInt::one();
        let mut mono = self.mono.clone();
        mono[v] = 0;
        Self::from_parts(self.nx, self.nq, mono, self.num.substitute(v, &one), self.den.substitute(v, &one))
    }

    /// Drops a coefficient symbol that does not occur, shrinking the symbol set.
    pub fn remove_coefficient_symbol(&self, index: usize) -> Result<Self> {
        let v = self.nx + index;
        let occurs = self.mono[v] != 0
            || self.num.terms().iter().any(|(e, _)| e[v] != 0)
            || self.den.terms().iter().any(|(e, _)| e[v] != 0);
        if occurs {
            return Err(Error::Domain(format!("coefficient q{} still occurs", index + 1)));
        }
        let strip = |p: &Poly| {
            Poly::from_terms(
                p.nvars() - 1,
                p.terms().iter().map(|(e, c)| {
                    let mut e = e.clone();
                    e.remove(v);
                    (e, c.clone())
                }),
            )
        };
        let mut mono = self.mono.clone();
        mono.remove(v);
        Ok(RationalFunction {
            nx: self.nx,
            nq: self.nq - 1,
            mono,
            num: strip(&self.num),
            den: strip(&self.den),
        })
    }

    /// Substitutes values for all symbols.
    pub fn evaluate(&self, x: &[f64], q: &[f64]) -> Result<f64> {
        if x.len() != self.nx || q.len() != self.nq {
            return Err(Error::Dimension(format!(
                "evaluation at {} + {} values for {} + {} symbols",
                x.len(),
                q.len(),
                self.nx,
                self.nq
            )));
        }
        let values: Vec<f64> = x.iter().chain(q).copied().collect();
        let weights: Vec<f64> = (0..self.nvars()).map(|v| if v < self.nx { 1.0 } else { 0.5 }).collect();
        let mono: f64 = self
            .mono
            .iter()
            .enumerate()
            .map(|(v, &e)| values[v].powf(e as f64 * weights[v]))
            .product();
        let den = self.den.eval_f64(&values, &weights);
        if den == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(mono * self.num.eval_f64(&values, &weights) / den)
    }

    /// Canonical string with the given symbol names.
    pub fn format_with(&self, names: &SymbolNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let pos: Exps = self.mono.iter().map(|&e| e.max(0)).collect();
        let neg: Exps = self.mono.iter().map(|&e| (-e).max(0)).collect();
        let one = BigInt::one();
        let top = self.num.mul_term(&pos, &one);
        let bottom = self.den.mul_term(&neg, &one);
        let top_s = format_poly(&top, self.nx, names);
        if bottom.is_one() {
            return top_s;
        }
        let bottom_s = format_poly(&bottom, self.nx, names);
        let top_s = if top.len() > 1 { format!("({top_s})") } else { top_s };
        let bottom_atomic = bottom.len() == 1 && {
            let (e, c) = &bottom.terms()[0];
            let factors = e.iter().filter(|&&x| x != 0).count() + usize::from(!c.is_one());
            factors <= 1 && e.iter().enumerate().all(|(v, &x)| x == 0 || exponent_text(v, x, self.nx).is_empty())
        };
        if bottom_atomic {
            format!("{top_s}/{bottom_s}")
        } else {
            format!("{top_s}/({bottom_s})")
        }
    }
}

/// Removes the gcd of `a` and `b` from both.
fn cancel(a: &mut Poly, b: &mut Poly) {
    let g = gcd(a, b);
    if !g.is_one() {
        *a = a.div_exact(&g).expect("gcd divides");
        *b = b.div_exact(&g).expect("gcd divides");
    }
}

fn exponent_text(v: usize, e: i32, nx: usize) -> String {
    if v < nx {
        if e == 1 {
            String::new()
        } else {
            format!("^{e}")
        }
    } else if e == 2 {
        String::new()
    } else if e % 2 == 0 {
        format!("^{}", e / 2)
    } else {
        format!("^({e}/2)")
    }
}

fn format_poly(p: &Poly, nx: usize, names: &SymbolNames) -> String {
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (v, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = if v < nx { &names.x[v] } else { &names.q[v - nx] };
            factors.push(format!("{name}{}", exponent_text(v, x, nx)));
        }
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(&SymbolNames::standard(self.nx, self.nq)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RationalFunction {
        RationalFunction::x(3, 1, i)
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        let one = RationalFunction::one(3, 1);
        let a = x(0).add(&one);
        let b = x(1).add(&x(2));
        let f = a.mul(&b).div(&a.mul(&x(2))).unwrap();
        let g = b.div(&x(2)).unwrap();
        assert_eq!(f, g);
        assert!(g.is_laurent());
        assert!(!one.div(&a).unwrap().is_laurent());
        assert_eq!(f.sub(&g), RationalFunction::zero(3, 1));
    }

    #[test]
    fn sign_convention_puts_sign_in_numerator() {
        let one = RationalFunction::one(3, 1);
        let a = one.sub(&x(0));
        let f = one.div(&a).unwrap();
        let g = one.neg().div(&x(0).sub(&one)).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.to_string(), "-1/(x1 - 1)");
    }

    #[test]
    fn display_of_laurent_and_rational_values() {
        let one = RationalFunction::one(3, 1);
        let f = x(1).add(&one).div(&x(0)).unwrap();
        assert_eq!(f.to_string(), "(x2 + 1)/x1");
        let g = x(1).div(&x(0).mul(&x(2))).unwrap();
        assert_eq!(g.to_string(), "x2/(x1*x3)");
        let q = RationalFunction::q_monomial(3, &TropicalElement::from_halves(1, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(q.to_string(), "q1^(1/2)");
    }

    #[test]
    fn evaluation_respects_half_exponents() {
        let q = RationalFunction::q_monomial(3, &TropicalElement::from_halves(1, [(0, 3)]).unwrap()).unwrap();
        let f = q.mul(&x(0)).add(&RationalFunction::one(3, 1));
        let v = f.evaluate(&[2.0, 1.0, 1.0], &[4.0]).unwrap();
        assert!((v - 17.0).abs() < 1e-12);
    }

    #[test]
    fn specialization_sets_coefficient_to_one() {
        let q = RationalFunction::q_monomial(3, &TropicalElement::generator(1, 0).unwrap()).unwrap();
        let f = q.mul(&x(1)).add(&x(2)).div(&x(0)).unwrap();
        let s = f.specialize_coefficient(0);
        assert_eq!(s, x(1).add(&x(2)).div(&x(0)).unwrap());
    }
}
