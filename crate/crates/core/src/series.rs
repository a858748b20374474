//! Truncated univariate formal power series over ℚ and the named genus
//! series: Todd, the Â factor, cannibalistic classes ρᵏ, the representation
//! characters of SU(2), and the three higher e-invariant series.
//!
//! Every series carries its truncation order explicitly; binary operations
//! record the minimum of the input truncations, so a coefficient is only ever
//! reported when it is exact.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalars::{rat, rat_int, Rational};

/// Default truncation order carried by CLI computations.
pub const DEFAULT_ORDER: usize = 16;

/// A power series Σ aₖ xᵏ known exactly for k ≤ truncation order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Series from coefficients a₀..a_N; the truncation order is N.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial xᵏ.
    pub fn x_pow(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order.max(k));
        s.coeffs[k] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of xᵏ; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    /// Division; the divisor's constant term must be a unit (nonzero).
    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::DivisorNotUnit(b0.to_string()));
        }
        let n = self.order().min(other.order());
        let mut q = vec![Rational::zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for (j, qj) in q.iter().enumerate().take(k) {
                acc -= qj * &other.coeffs[k - j];
            }
            q[k] = acc / b0;
        }
        Ok(PowerSeries { coeffs: q })
    }

    /// Composition `self(inner)`; the inner constant term must vanish.
    pub fn compose(&self, inner: &Self) -> Result<Self, Error> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ComposeConstantTerm(inner.coeffs[0].to_string()));
        }
        let n = self.order().min(inner.order());
        let mut acc = PowerSeries::constant(self.coeffs[0].clone(), n);
        let inner = inner.truncated(n);
        let mut pow = PowerSeries::one(n);
        for k in 1..=n {
            pow = pow.mul(&inner);
            acc = acc.add(&pow.scale(&self.coeffs[k]));
        }
        Ok(acc)
    }

    /// exp of a series with vanishing constant term.  A nonzero constant is
    /// rejected; the caller splits it off to stay inside ℚ.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut y = vec![Rational::zero(); n + 1];
        y[0] = Rational::one();
        // y' = a'·y  ⟹  k·yₖ = Σ_{j=1..k} j·aⱼ·y_{k−j}
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += rat_int(j as i64) * &self.coeffs[j] * &y[k - j];
                }
            }
            y[k] = acc / rat_int(k as i64);
        }
        Ok(PowerSeries { coeffs: y })
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut y = vec![Rational::zero(); n + 1];
        // a·y' = a'  ⟹  k·yₖ = k·aₖ − Σ_{j=1..k−1} j·yⱼ·a_{k−j}
        for k in 1..=n {
            let mut acc = rat_int(k as i64) * &self.coeffs[k];
            for (j, yj) in y.iter().enumerate().take(k).skip(1) {
                acc -= rat_int(j as i64) * yj * &self.coeffs[k - j];
            }
            y[k] = acc / rat_int(k as i64);
        }
        Ok(PowerSeries { coeffs: y })
    }

    /// Exact division by xᵖ; the first p coefficients must vanish.
    /// The truncation order drops by p.
    pub fn div_by_x_pow(&self, p: usize) -> Result<Self, Error> {
        if p > self.order() {
            return Err(Error::InsufficientTruncation { need: p, got: self.order() });
        }
        for (i, c) in self.coeffs.iter().enumerate().take(p) {
            if !c.is_zero() {
                return Err(Error::NotDivisibleByX { power: p, index: i, coeff: c.to_string() });
            }
        }
        Ok(PowerSeries { coeffs: self.coeffs[p..].to_vec() })
    }

    /// Substitution x ↦ c·x.
    pub fn scale_var(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a * &pow;
                pow *= c;
                out
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// Zeroes the odd-degree coefficients.
    pub fn even_part(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.clone() } else { Rational::zero() })
            .collect();
        PowerSeries { coeffs }
    }

    /// Fiber integration over the CP¹ fiber: x^{2n+1} ↦ x^{2n}, even powers
    /// are killed.  The truncation order drops by one.
    pub fn cp1_fiber_integrate(&self) -> Self {
        let n = self.order().saturating_sub(1);
        let coeffs = (0..=n)
            .map(|k| if k % 2 == 0 { self.coeffs[k + 1].clone() } else { Rational::zero() })
            .collect();
        PowerSeries { coeffs }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}·x")?,
                _ if a.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "{a}·x^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    trunc: usize,
    coeffs: Vec<String>,
}

impl Serialize for PowerSeries {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SeriesWire {
            trunc: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = SeriesWire::deserialize(de)?;
        if wire.coeffs.len() != wire.trunc + 1 {
            return Err(serde::de::Error::custom("coeffs length must be trunc+1"));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| crate::scalars::parse_rational(s))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(PowerSeries { coeffs })
    }
}

/// (e^{cx} − 1)/x = Σ_{k≥0} c^{k+1} xᵏ/(k+1)!.
pub fn expm1_div_x(c: &Rational, order: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = Rational::one();
    let mut cpow = c.clone();
    for k in 0..=order {
        fact *= rat_int(k as i64 + 1);
        coeffs.push(&cpow / &fact);
        cpow *= c;
    }
    PowerSeries::from_coeffs(coeffs)
}

/// sinh(cx)/x = (e^{cx} − e^{−cx})/(2x) = Σ_{k≥0} c^{2k+1} x^{2k}/(2k+1)!.
pub fn sinh_div_x(c: &Rational, order: usize) -> PowerSeries {
    let a = expm1_div_x(c, order);
    let b = expm1_div_x(&-c.clone(), order);
    a.sub(&b).scale(&rat(1, 2))
}

/// e^{cx} to the given order.
pub fn exp_cx(c: &Rational, order: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    for k in 0..=order {
        if k > 0 {
            term = term * c / rat_int(k as i64);
        }
        coeffs.push(term.clone());
    }
    PowerSeries::from_coeffs(coeffs)
}

/// The Todd series x/(eˣ − 1); the coefficient of xᵏ is Bₖ/k!.
pub fn todd_series(order: usize) -> PowerSeries {
    PowerSeries::one(order)
        .div(&expm1_div_x(&Rational::one(), order))
        .expect("(e^x−1)/x has constant term 1")
}

/// The Â factor (x/2)/sinh(x/2); an even series.
pub fn ahat_factor(order: usize) -> PowerSeries {
    let denom = sinh_div_x(&rat(1, 2), order).scale(&rat_int(2));
    PowerSeries::one(order).div(&denom).expect("sinh(x/2)/(x/2) has constant term 1")
}

/// The structure group of the fiberwise framing in the higher e-invariant
/// computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EGroup {
    S1,
    SU2,
    SO3,
}

impl EGroup {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "S1" => Ok(EGroup::S1),
            "SU2" | "SU(2)" => Ok(EGroup::SU2),
            "SO3" | "SO(3)" => Ok(EGroup::SO3),
            _ => Err(Error::Invalid(format!("unknown group {s:?}"))),
        }
    }
}

impl fmt::Display for EGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EGroup::S1 => write!(f, "S1"),
            EGroup::SU2 => write!(f, "SU2"),
            EGroup::SO3 => write!(f, "SO3"),
        }
    }
}

/// The higher e-invariant series.
///
/// * S¹:    (1/x)(1 − Td(x))
/// * SU(2): ∫_r of (1/x)(1 − Td(x)·Td(2x)) over the CP¹ fiber
/// * SO(3): ∫_r of (1/x)(1 − Td(x)²) over the CP¹ fiber
///
/// The fiber integration x^{2n+1} ↦ x^{2n} realizes the Gysin map of the
/// sphere bundle and agrees with taking the even part of the quotient by x².
pub fn e_series(group: EGroup, order: usize) -> PowerSeries {
    let pad = order + 2;
    match group {
        EGroup::S1 => {
            let h = PowerSeries::one(pad).sub(&todd_series(pad));
            h.div_by_x_pow(1).expect("1 − Td has no constant term").truncated(order)
        }
        EGroup::SU2 => {
            let td = todd_series(pad);
            let td2 = todd_series(pad).scale_var(&rat_int(2));
            let h = PowerSeries::one(pad).sub(&td.mul(&td2));
            h.div_by_x_pow(1)
                .expect("1 − Td(x)Td(2x) has no constant term")
                .cp1_fiber_integrate()
                .truncated(order)
        }
        EGroup::SO3 => {
            let td = todd_series(pad);
            let h = PowerSeries::one(pad).sub(&td.mul(&td));
            h.div_by_x_pow(1)
                .expect("1 − Td(x)² has no constant term")
                .cp1_fiber_integrate()
                .truncated(order)
        }
    }
}

/// Chern character of the cannibalistic class ρᵏ on the universal line
/// bundle: (1/k)(e^{kx} − 1)/(eˣ − 1).
pub fn rho_ch(k: u32, order: usize) -> PowerSeries {
    assert!(k >= 1, "ρᵏ needs k ≥ 1");
    let num = expm1_div_x(&rat_int(k as i64), order);
    let den = expm1_div_x(&Rational::one(), order);
    num.div(&den).expect("unit constant term").scale(&rat(1, k as i64))
}

/// Chern character of the SU(2)-representation Vₙ:
/// sinh((n + 1/2)x)/sinh(x/2).
///
/// The constant term is 2n+1, the character dimension of Vₙ (despite the
/// common labeling of Vₙ by highest weight n as "dimension n+1"); the
/// quotient formula is implemented literally.
pub fn su2_rep_ch(n: u32, order: usize) -> PowerSeries {
    let num = sinh_div_x(&(rat_int(n as i64) + rat(1, 2)), order);
    let den = sinh_div_x(&rat(1, 2), order);
    num.div(&den).expect("sinh(x/2)/x has constant term 1/2")
}

/// The multiplicative genus of CPⁿ with characteristic series Q: the
/// coefficient of xⁿ in Q(x)^{n+1}, via the splitting c(TCPⁿ) = (1+c)^{n+1}.
pub fn genus_cpn(q: &PowerSeries, n: usize) -> Result<Rational, Error> {
    if q.order() < n {
        return Err(Error::InsufficientTruncation { need: n, got: q.order() });
    }
    let q = q.truncated(n);
    let mut acc = PowerSeries::one(n);
    for _ in 0..=n {
        acc = acc.mul(&q);
    }
    Ok(acc.coeff(n).cloned().expect("coefficient within truncation"))
}

/// The L-genus characteristic series x/tanh(x) to the given order.
pub fn l_genus_series(order: usize) -> PowerSeries {
    // x/tanh x = x·cosh x / sinh x = cosh x / (sinh x / x)
    let e = exp_cx(&Rational::one(), order);
    let em = exp_cx(&rat_int(-1), order);
    let cosh = e.add(&em).scale(&rat(1, 2));
    let sinh_over_x = sinh_div_x(&Rational::one(), order);
    cosh.div(&sinh_over_x).expect("sinh x/x has constant term 1")
}

/// The Todd characteristic series in the form x/(1 − e^{−x}).
pub fn todd_genus_series(order: usize) -> PowerSeries {
    // x/(1−e^{−x}) = 1/((1 − e^{−x})/x)
    let den = expm1_div_x(&rat_int(-1), order).neg();
    PowerSeries::one(order).div(&den).expect("constant term 1")
}
