//! Exact coefficient arithmetic.
//!
//! The universal coefficient ring of the crate is [`ScalarK`]: Laurent
//! polynomials in a formal symbol τ over the Gaussian rationals, where τ
//! stands for 2πi.  Keeping τ formal makes every normalization of the form
//! 1/(2πi)ᵏ exact; the single opt-in evaluation τ ↦ 2πi produces a complex
//! float for display only.
//!
//! [`CircleValue`] is a [`ScalarK`] reduced modulo ℤ.  Since
//! {1, i} ∪ {τᵏ, iτᵏ : k ≠ 0} are linearly independent over ℚ (π is
//! transcendental), the reduction touches only the rational-real part of the
//! τ⁰ component, and equality is decidable componentwise.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational; always reduced, denominator positive.
pub type Rational = BigRational;

/// `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the `"p/q"` wire format (also bare integers `"p"`).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let mk_err = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().map_err(|_| mk_err())?;
            let den: BigInt = q.trim().parse().map_err(|_| mk_err())?;
            if den.is_zero() {
                return Err(mk_err());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussRat { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        GaussRat::from_rational(Rational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRat { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `i^m` for any integer `m`.
    pub fn i_pow(m: i64) -> Self {
        match m.rem_euclid(4) {
            0 => GaussRat::one(),
            1 => GaussRat::i(),
            2 => GaussRat::one().neg(),
            _ => GaussRat::i().neg(),
        }
    }
}

/// A Laurent polynomial in τ (= 2πi formally) over the Gaussian rationals.
///
/// Sparse map τ-exponent → coefficient; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ScalarK {
    terms: BTreeMap<i64, GaussRat>,
}

impl ScalarK {
    pub fn zero() -> Self {
        ScalarK::default()
    }

    pub fn one() -> Self {
        ScalarK::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        ScalarK::from_coeff(0, GaussRat::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        ScalarK::from_rational(rat_int(n))
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        ScalarK::from_coeff(0, g)
    }

    /// Single term `c·τᵏ`.
    pub fn from_coeff(k: i64, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        ScalarK { terms }
    }

    /// The monomial τᵏ (k may be negative; τ is invertible).
    pub fn tau_pow(k: i64) -> Self {
        ScalarK::from_coeff(k, GaussRat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> GaussRat {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &GaussRat)> {
        self.terms.iter()
    }

    fn insert(&mut self, k: i64, c: GaussRat) {
        if !c.is_zero() {
            self.terms.insert(k, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let sum = out.coeff(*k).add(c);
            if sum.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, sum);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        ScalarK { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ScalarK::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k = ka + kb;
                let sum = out.coeff(k).add(&ca.mul(cb));
                if sum.is_zero() {
                    out.terms.remove(&k);
                } else {
                    out.terms.insert(k, sum);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return ScalarK::zero();
        }
        let mut out = ScalarK::zero();
        for (k, v) in &self.terms {
            out.insert(*k, v.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussRat::from_rational(r.clone()))
    }

    /// Exact division by a nonzero rational.
    pub fn div_rational(&self, r: &Rational) -> Self {
        assert!(!r.is_zero(), "division by zero rational");
        self.scale_rational(&(Rational::one() / r))
    }

    /// Multiplication by τᵏ (shift of exponents).
    pub fn mul_tau_pow(&self, k: i64) -> Self {
        ScalarK { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// True iff the value is a plain rational (real τ⁰ part only).
    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1
                && self.terms.contains_key(&0)
                && self.terms[&0].im.is_zero())
    }

    /// The rational value, when [`is_rational`](Self::is_rational) holds.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.terms.get(&0).map(|c| c.re.clone()).unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Evaluation hook τ ↦ 2πi; returns `(re, im)` as floats.
    pub fn eval_complex(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0_f64, 0.0_f64);
        for (k, c) in &self.terms {
            // (2πi)^k = (2π)^k · i^k
            let mag = (2.0 * std::f64::consts::PI).powi(*k as i32);
            let (cr, ci) = (c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN));
            let (tr, ti) = match k.rem_euclid(4) {
                0 => (mag, 0.0),
                1 => (0.0, mag),
                2 => (-mag, 0.0),
                _ => (0.0, -mag),
            };
            re += cr * tr - ci * ti;
            im += cr * ti + ci * tr;
        }
        (re, im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Display for ScalarK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})τ")?,
                _ => write!(f, "({c})τ^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ScalarK {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            #[derive(Serialize)]
            struct Coeff {
                re: String,
                im: String,
            }
            map.serialize_entry(
                &format!("τ^{k}"),
                &Coeff { re: c.re.to_string(), im: c.im.to_string() },
            )?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ScalarK {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Coeff {
            re: String,
            #[serde(default)]
            im: Option<String>,
        }
        let raw: BTreeMap<String, Coeff> = BTreeMap::deserialize(de)?;
        let mut out = ScalarK::zero();
        for (key, c) in raw {
            let k: i64 = key
                .strip_prefix("τ^")
                .or_else(|| key.strip_prefix("tau^"))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| serde::de::Error::custom(format!("bad τ-exponent key {key:?}")))?;
            let re = parse_rational(&c.re).map_err(serde::de::Error::custom)?;
            let im = match c.im {
                Some(s) => parse_rational(&s).map_err(serde::de::Error::custom)?,
                None => Rational::zero(),
            };
            out.insert(k, GaussRat::new(re, im));
        }
        Ok(out)
    }
}

/// An element of ℂ/ℤ, stored as the canonical [`ScalarK`] representative
/// whose rational-real τ⁰ part lies in `[0, 1)`.  Serializes identically to
/// [`ScalarK`], with the [0, 1) convention.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct CircleValue {
    rep: ScalarK,
}

impl<'de> Deserialize<'de> for CircleValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(circle_reduce(&ScalarK::deserialize(de)?))
    }
}

impl CircleValue {
    pub fn zero() -> Self {
        circle_reduce(&ScalarK::zero())
    }

    /// The canonical representative.
    pub fn representative(&self) -> &ScalarK {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        circle_reduce(&self.rep.add(&other.rep))
    }

    pub fn neg(&self) -> Self {
        circle_reduce(&self.rep.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        circle_reduce(&self.rep.sub(&other.rep))
    }

    pub fn scale_int(&self, m: i64) -> Self {
        circle_reduce(&self.rep.scale_rational(&rat_int(m)))
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Reduction ℂ → ℂ/ℤ in canonical form: subtracts the floor of the
/// rational-real τ⁰ part. Integers are exactly the kernel.
pub fn circle_reduce(x: &ScalarK) -> CircleValue {
    let mut rep = x.clone();
    let c0 = rep.coeff(0);
    let reduced = &c0.re - c0.re.floor();
    rep.terms.remove(&0);
    rep.insert(0, GaussRat::new(reduced, c0.im));
    CircleValue { rep }
}

/// Convenience: reduce a plain rational.
pub fn circle_reduce_rational(r: &Rational) -> CircleValue {
    circle_reduce(&ScalarK::from_rational(r.clone()))
}

/// Least `m ≥ 1` with `m·v = 0` in ℂ/ℤ, when `v` is rational torsion.
///
/// `None` when `v` has an imaginary or τ-graded part (those never cancel
/// against ℤ).
pub fn torsion_order(v: &CircleValue) -> Option<BigInt> {
    let r = v.rep.as_rational()?;
    Some(r.denom().clone())
}

/// Order of a tuple of circle values: the lcm of the component orders.
pub fn torsion_order_all(vs: &[CircleValue]) -> Option<BigInt> {
    let mut acc = BigInt::one();
    for v in vs {
        acc = acc.lcm(&torsion_order(v)?);
    }
    Some(acc)
}

/// The n-th Bernoulli number with the convention B₁ = −1/2.
///
/// Computed from the defining recurrence Σₖ C(n+1,k)·Bₖ = 0.
pub fn bernoulli(n: usize) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        // binomials C(m+1, k) built incrementally
        let mut acc = Rational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, bk) in b.iter().enumerate().take(m) {
            if k > 0 {
                binom = &binom * BigInt::from(m + 2 - k) / BigInt::from(k);
            }
            acc += Rational::from_integer(binom.clone()) * bk;
        }
        // C(m+1, m) = m+1
        b.push(-acc / rat_int(m as i64 + 1));
    }
    b.pop().expect("n+1 entries")
}
