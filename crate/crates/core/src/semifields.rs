//! Coefficient semifields.
//!
//! The workhorse is [`TropicalElement`], a Laurent monomial in generators
//! `q_0, q_1, ...` whose exponents are integers or half-integers. Tropical
//! addition is the componentwise minimum of exponents and multiplication adds
//! them. Positive reals, the deformed sums `y ⊕_k z = (y^k + z^k)^{1/k}` and
//! finite products of semifields are available through [`SemifieldDescriptor`].

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::{Error, Result};

/// A Laurent monomial in a fixed number of tropical generators.
///
/// Exponents are stored doubled, so `halves[i] = 2 * exponent(q_i)`. Zero
/// exponents are never stored, which makes derived equality structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropicalElement {
    gens: usize,
    halves: BTreeMap<usize, i64>,
}

impl TropicalElement {
    /// The empty monomial, the multiplicative unit.
    pub fn one(gens: usize) -> Self {
        TropicalElement {
            gens,
            halves: BTreeMap::new(),
        }
    }

    /// The generator `q_index`.
    pub fn generator(gens: usize, index: usize) -> Result<Self> {
        Self::from_halves(gens, [(index, 2)])
    }

    /// Builds a monomial from integer exponents, one per generator.
    pub fn from_exponents(exponents: &[i64]) -> Result<Self> {
        let mut halves = BTreeMap::new();
        for (i, &e) in exponents.iter().enumerate() {
            if e != 0 {
                halves.insert(i, e.checked_mul(2).ok_or(Error::Overflow("tropical exponent"))?);
            }
        }
        Ok(TropicalElement {
            gens: exponents.len(),
            halves,
        })
    }

    /// Builds a monomial from doubled exponents `(generator, 2·exponent)`.
    pub fn from_halves<I: IntoIterator<Item = (usize, i64)>>(gens: usize, entries: I) -> Result<Self> {
        let mut halves: BTreeMap<usize, i64> = BTreeMap::new();
        for (i, h) in entries {
            if i >= gens {
                return Err(Error::IndexOutOfRange { index: i, size: gens });
            }
            let slot = halves.entry(i).or_insert(0);
            *slot = slot.checked_add(h).ok_or(Error::Overflow("tropical exponent"))?;
        }
        halves.retain(|_, h| *h != 0);
        Ok(TropicalElement { gens, halves })
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn is_one(&self) -> bool {
        self.halves.is_empty()
    }

    /// Twice the exponent of `q_index`.
    pub fn half_exponent(&self, index: usize) -> i64 {
        self.halves.get(&index).copied().unwrap_or(0)
    }

    pub fn exponent(&self, index: usize) -> Rational64 {
        Rational64::new(self.half_exponent(index), 2)
    }

    /// Nonzero doubled exponents in generator order.
    pub fn halves(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.halves.iter().map(|(&i, &h)| (i, h))
    }

    /// True when every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.halves.values().all(|h| h % 2 == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.gens != other.gens {
            return Err(Error::Dimension(format!(
                "tropical elements over {} and {} generators",
                self.gens, other.gens
            )));
        }
        Ok(())
    }

    /// Tropical addition: componentwise minimum of exponents.
    pub fn trop_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let keys = self.halves.keys().chain(other.halves.keys());
        let entries: Vec<(usize, i64)> = keys
            .map(|&i| (i, self.half_exponent(i).min(other.half_exponent(i))))
            .collect();
        let mut halves = BTreeMap::new();
        for (i, h) in entries {
            if h != 0 {
                halves.insert(i, h);
            }
        }
        Ok(TropicalElement {
            gens: self.gens,
            halves,
        })
    }

    /// Multiplication: exponents add.
    pub fn trop_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Self::from_halves(self.gens, self.halves().chain(other.halves()))
    }

    pub fn inv(&self) -> Self {
        TropicalElement {
            gens: self.gens,
            halves: self.halves.iter().map(|(&i, &h)| (i, -h)).collect(),
        }
    }

    pub fn trop_div(&self, other: &Self) -> Result<Self> {
        self.trop_mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut halves = BTreeMap::new();
        for (&i, &h) in &self.halves {
            let v = h.checked_mul(e).ok_or(Error::Overflow("tropical power"))?;
            if v != 0 {
                halves.insert(i, v);
            }
        }
        Ok(TropicalElement {
            gens: self.gens,
            halves,
        })
    }

    /// Evaluates the monomial at positive real values of the generators.
    pub fn evaluate(&self, q: &[f64]) -> Result<f64> {
        if q.len() != self.gens {
            return Err(Error::Dimension(format!(
                "{} generator values for {} generators",
                q.len(),
                self.gens
            )));
        }
        Ok(self
            .halves
            .iter()
            .map(|(&i, &h)| q[i].powf(h as f64 / 2.0))
            .product())
    }

    /// JSON form `{"exp": {"<index>": "<num>/<den>"}}`.
    pub fn to_json(&self) -> Value {
        let exp: serde_json::Map<String, Value> = self
            .halves
            .iter()
            .map(|(&i, &h)| {
                let r = Rational64::new(h, 2);
                (i.to_string(), Value::String(format!("{}/{}", r.numer(), r.denom())))
            })
            .collect();
        json!({ "exp": exp })
    }

    pub fn from_json(value: &Value, gens: usize) -> Result<Self> {
        let exp = value
            .get("exp")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Json("tropical element needs an \"exp\" object".into()))?;
        let mut entries = Vec::new();
        for (k, v) in exp {
            let index: usize = k
                .parse()
                .map_err(|_| Error::Json(format!("bad generator index {k:?}")))?;
            let text = v
                .as_str()
                .ok_or_else(|| Error::Json(format!("exponent of generator {k} must be a string")))?;
            let r: Rational64 = text
                .parse()
                .map_err(|_| Error::Json(format!("bad exponent {text:?}")))?;
            if *r.denom() != 1 && *r.denom() != 2 {
                return Err(Error::Json(format!("exponent {text} has denominator other than 1 or 2")));
            }
            entries.push((index, r.numer() * (2 / r.denom())));
        }
        Self::from_halves(gens, entries)
    }
}

impl fmt::Display for TropicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.halves.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&i, &h) in &self.halves {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "q{}", i + 1)?;
            if h != 2 {
                if h % 2 == 0 {
                    if h > 0 {
                        write!(f, "^{}", h / 2)?;
                    } else {
                        write!(f, "^({})", h / 2)?;
                    }
                } else {
                    write!(f, "^({}/2)", h)?;
                }
            }
        }
        Ok(())
    }
}

/// `(y^k + z^k)^{1/k}` for positive `y`, `z` and nonzero `k`.
///
/// Evaluated in log space, so large `|k|` neither overflows nor underflows.
pub fn deformed_add(k: f64, y: f64, z: f64) -> Result<f64> {
    if k == 0.0 || !k.is_finite() {
        return Err(Error::Domain(format!("deformation parameter k = {k} must be finite and nonzero")));
    }
    if !(y > 0.0 && y.is_finite() && z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("deformed addition needs positive inputs, got {y} and {z}")));
    }
    let a = k * y.ln();
    let b = k * z.ln();
    let hi = a.max(b);
    let log_sum = hi + (-(a - b).abs()).exp().ln_1p();
    Ok((log_sum / k).exp())
}

/// The kinds of coefficient semifield supported by the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum SemifieldDescriptor {
    Tropical(usize),
    PositiveReal,
    DeformedReal(f64),
    Product(Vec<SemifieldDescriptor>),
    Trivial,
}

/// An element of one of the semifields described by [`SemifieldDescriptor`].
#[derive(Clone, Debug, PartialEq)]
pub enum SemifieldValue {
    Tropical(TropicalElement),
    Real(f64),
    Tuple(Vec<SemifieldValue>),
}

impl SemifieldDescriptor {
    pub fn one(&self) -> SemifieldValue {
        match self {
            SemifieldDescriptor::Tropical(g) => SemifieldValue::Tropical(TropicalElement::one(*g)),
            SemifieldDescriptor::Trivial => SemifieldValue::Tropical(TropicalElement::one(0)),
            SemifieldDescriptor::PositiveReal | SemifieldDescriptor::DeformedReal(_) => SemifieldValue::Real(1.0),
            SemifieldDescriptor::Product(parts) => SemifieldValue::Tuple(parts.iter().map(|p| p.one()).collect()),
        }
    }

    /// Checks that `v` is an element of this semifield.
    pub fn contains(&self, v: &SemifieldValue) -> bool {
        match (self, v) {
            (SemifieldDescriptor::Tropical(g), SemifieldValue::Tropical(t)) => t.gens() == *g,
            (SemifieldDescriptor::Trivial, SemifieldValue::Tropical(t)) => t.gens() == 0,
            (SemifieldDescriptor::PositiveReal | SemifieldDescriptor::DeformedReal(_), SemifieldValue::Real(x)) => {
                *x > 0.0 && x.is_finite()
            }
            (SemifieldDescriptor::Product(parts), SemifieldValue::Tuple(vs)) => {
                parts.len() == vs.len() && parts.iter().zip(vs).all(|(p, v)| p.contains(v))
            }
            _ => false,
        }
    }

    fn check(&self, v: &SemifieldValue) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{v:?} is not an element of {self:?}")))
        }
    }

    /// The semifield addition ⊕.
    pub fn add(&self, a: &SemifieldValue, b: &SemifieldValue) -> Result<SemifieldValue> {
        self.check(a)?;
        self.check(b)?;
        self.add_unchecked(a, b)
    }

    fn add_unchecked(&self, a: &SemifieldValue, b: &SemifieldValue) -> Result<SemifieldValue> {
        Ok(match (self, a, b) {
            (SemifieldDescriptor::Tropical(_) | SemifieldDescriptor::Trivial, SemifieldValue::Tropical(x), SemifieldValue::Tropical(y)) => {
                SemifieldValue::Tropical(x.trop_add(y)?)
            }
            (SemifieldDescriptor::PositiveReal, SemifieldValue::Real(x), SemifieldValue::Real(y)) => SemifieldValue::Real(x + y),
            (SemifieldDescriptor::DeformedReal(k), SemifieldValue::Real(x), SemifieldValue::Real(y)) => {
                SemifieldValue::Real(deformed_add(*k, *x, *y)?)
            }
            (SemifieldDescriptor::Product(parts), SemifieldValue::Tuple(xs), SemifieldValue::Tuple(ys)) => SemifieldValue::Tuple(
                parts
                    .iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(p, (x, y))| p.add_unchecked(x, y))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Dimension("operands do not match the semifield".into())),
        })
    }

    pub fn mul(&self, a: &SemifieldValue, b: &SemifieldValue) -> Result<SemifieldValue> {
        self.check(a)?;
        self.check(b)?;
        self.mul_unchecked(a, b)
    }

    fn mul_unchecked(&self, a: &SemifieldValue, b: &SemifieldValue) -> Result<SemifieldValue> {
        Ok(match (self, a, b) {
            (_, SemifieldValue::Tropical(x), SemifieldValue::Tropical(y)) => SemifieldValue::Tropical(x.trop_mul(y)?),
            (_, SemifieldValue::Real(x), SemifieldValue::Real(y)) => SemifieldValue::Real(x * y),
            (SemifieldDescriptor::Product(parts), SemifieldValue::Tuple(xs), SemifieldValue::Tuple(ys)) => SemifieldValue::Tuple(
                parts
                    .iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(p, (x, y))| p.mul_unchecked(x, y))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Dimension("operands do not match the semifield".into())),
        })
    }

    pub fn inv(&self, a: &SemifieldValue) -> Result<SemifieldValue> {
        self.check(a)?;
        Ok(invert(a))
    }
}

fn invert(a: &SemifieldValue) -> SemifieldValue {
    match a {
        SemifieldValue::Tropical(t) => SemifieldValue::Tropical(t.inv()),
        SemifieldValue::Real(x) => SemifieldValue::Real(1.0 / x),
        SemifieldValue::Tuple(vs) => SemifieldValue::Tuple(vs.iter().map(invert).collect()),
    }
}
