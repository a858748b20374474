//! Exact Fourier-polynomial de Rham complexes of S¹ and T².
//!
//! A [`Fourier`] function is a finite sum Σ c_k·exp(2πi⟨k,x⟩) with ScalarK
//! coefficients.  The basic identities are ∫ exp(2πi⟨k,x⟩) = δ_{k,0} (total
//! volume normalized to 1) and d/dxⱼ exp(2πi⟨k,x⟩) = τ·kⱼ·exp(2πi⟨k,x⟩).
//!
//! Evaluation and interval integration are supported at quarter-integer
//! points, where exp(2πi·p/4) = iᵖ stays inside the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalars::{rat, rat_int, GaussRat, ScalarK};

/// A finite Fourier polynomial on the d-torus.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Fourier<const D: usize> {
    coeffs: BTreeMap<[i64; D], ScalarK>,
}

impl<const D: usize> Fourier<D> {
    pub fn zero() -> Self {
        Fourier { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: ScalarK) -> Self {
        Self::mode([0; D], c)
    }

    /// c·exp(2πi⟨k,x⟩).
    pub fn mode(k: [i64; D], c: ScalarK) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Fourier { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: [i64; D]) -> ScalarK {
        self.coeffs.get(&k).cloned().unwrap_or_else(ScalarK::zero)
    }

    pub fn modes(&self) -> impl Iterator<Item = (&[i64; D], &ScalarK)> {
        self.coeffs.iter()
    }

    fn insert(&mut self, k: [i64; D], c: ScalarK) {
        if !c.is_zero() {
            self.coeffs.insert(k, c);
        }
    }

    fn add_to(&mut self, k: [i64; D], c: &ScalarK) {
        let sum = self.coeff(k).add(c);
        if sum.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_to(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Fourier { coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.insert(*k, v.mul(c));
        }
        out
    }

    pub fn scale_int(&self, m: i64) -> Self {
        self.scale(&ScalarK::from_int(m))
    }

    /// Pointwise product (convolution of modes).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let mut k = [0i64; D];
                for j in 0..D {
                    k[j] = ka[j] + kb[j];
                }
                out.add_to(k, &ca.mul(cb));
            }
        }
        out
    }

    /// ∂/∂xⱼ: multiplies mode k by τ·kⱼ.
    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.coeffs {
            out.insert(*k, c.mul_tau_pow(1).scale_rational(&rat_int(k[axis])));
        }
        out
    }

    /// The constant mode; equals the integral over the whole torus.
    pub fn mean(&self) -> ScalarK {
        self.coeff([0; D])
    }

    /// Reduces the rational-real τ⁰ part of the constant mode into [0, 1).
    pub fn canonicalize_mean(&self) -> Self {
        let mut out = self.clone();
        let m = out.mean();
        let reduced = crate::scalars::circle_reduce(&m).representative().clone();
        out.coeffs.remove(&[0; D]);
        out.insert([0; D], reduced);
        out
    }
}

impl Fourier<1> {
    /// Evaluation at t = p/4 (mode k picks up the phase iᵏᵖ).
    pub fn eval_quarter(&self, p: i64) -> ScalarK {
        let mut acc = ScalarK::zero();
        for (k, c) in &self.coeffs {
            acc = acc.add(&c.scale(&GaussRat::i_pow(k[0] * p)));
        }
        acc
    }

    /// Rotation pullback t ↦ t + p/4.
    pub fn rotate_quarter(&self, p: i64) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.coeffs {
            out.insert(*k, c.scale(&GaussRat::i_pow(k[0] * p)));
        }
        out
    }
}

impl Fourier<2> {
    /// Pullback pr₁* (a function of s) or pr₂* (a function of t).
    pub fn promote(f: &Fourier<1>, axis: usize) -> Self {
        let mut out = Self::zero();
        for (k, c) in &f.coeffs {
            let mut key = [0i64; 2];
            key[axis] = k[0];
            out.insert(key, c.clone());
        }
        out
    }

    /// Restriction to the circle x_axis = p/4 (a function of the other
    /// coordinate).
    pub fn restrict_quarter(&self, axis: usize, p: i64) -> Fourier<1> {
        let other = 1 - axis;
        let mut out = Fourier::<1>::zero();
        for (k, c) in &self.coeffs {
            out.add_to([k[other]], &c.scale(&GaussRat::i_pow(k[axis] * p)));
        }
        out
    }

    /// Mean over one circle factor (modes with k_axis ≠ 0 are killed).
    pub fn mean_axis(&self, axis: usize) -> Fourier<1> {
        let other = 1 - axis;
        let mut out = Fourier::<1>::zero();
        for (k, c) in &self.coeffs {
            if k[axis] == 0 {
                out.add_to([k[other]], c);
            }
        }
        out
    }

    /// ∫ over x_axis ∈ [a/4, b/4]: for mode k ≠ 0 the integral is
    /// (i^{kb} − i^{ka})/(τk); for k = 0 it is (b−a)/4.
    pub fn integrate_axis_quarters(&self, axis: usize, a: i64, b: i64) -> Fourier<1> {
        let other = 1 - axis;
        let mut out = Fourier::<1>::zero();
        for (k, c) in &self.coeffs {
            let kj = k[axis];
            let factor = if kj == 0 {
                ScalarK::from_rational(rat(b - a, 4))
            } else {
                let phase = GaussRat::i_pow(kj * b).add(&GaussRat::i_pow(kj * a).neg());
                ScalarK::from_gauss(phase).mul_tau_pow(-1).div_rational(&rat_int(kj))
            };
            out.add_to([k[other]], &c.mul(&factor));
        }
        out
    }
}

impl<const D: usize> fmt::Display for Fourier<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k.iter().all(|x| *x == 0) {
                write!(f, "{c}")?;
            } else {
                let ks: Vec<String> = k.iter().map(i64::to_string).collect();
                write!(f, "({c})·e[{}]", ks.join(","))?;
            }
        }
        Ok(())
    }
}

fn mode_key<const D: usize>(k: &[i64; D]) -> String {
    k.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn parse_mode_key<const D: usize>(s: &str) -> Option<[i64; D]> {
    let parts: Vec<i64> = s.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
    if parts.len() != D {
        return None;
    }
    let mut k = [0i64; D];
    k.copy_from_slice(&parts);
    Some(k)
}

impl<const D: usize> Serialize for Fourier<D> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.coeffs.len()))?;
        for (k, c) in &self.coeffs {
            map.serialize_entry(&mode_key(k), c)?;
        }
        map.end()
    }
}

impl<'de, const D: usize> Deserialize<'de> for Fourier<D> {
    fn deserialize<DE: Deserializer<'de>>(de: DE) -> Result<Self, DE::Error> {
        let raw: BTreeMap<String, ScalarK> = BTreeMap::deserialize(de)?;
        let mut out = Self::zero();
        for (key, c) in raw {
            let k = parse_mode_key::<D>(&key)
                .ok_or_else(|| serde::de::Error::custom(format!("bad mode key {key:?}")))?;
            out.insert(k, c);
        }
        Ok(out)
    }
}

/// A 1-form Σⱼ hⱼ dxⱼ with Fourier-polynomial components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form1<const D: usize> {
    pub comps: [Fourier<D>; D],
}

impl<const D: usize> Form1<D> {
    pub fn zero() -> Self {
        Form1 { comps: std::array::from_fn(|_| Fourier::zero()) }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Fourier::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Form1 { comps: std::array::from_fn(|j| self.comps[j].add(&other.comps[j])) }
    }

    pub fn neg(&self) -> Self {
        Form1 { comps: std::array::from_fn(|j| self.comps[j].neg()) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        Form1 { comps: std::array::from_fn(|j| self.comps[j].scale(c)) }
    }

    pub fn scale_int(&self, m: i64) -> Self {
        self.scale(&ScalarK::from_int(m))
    }

    /// f·α.
    pub fn mul_fn(&self, f: &Fourier<D>) -> Self {
        Form1 { comps: std::array::from_fn(|j| self.comps[j].mul(f)) }
    }
}

/// df.
pub fn d_fn<const D: usize>(f: &Fourier<D>) -> Form1<D> {
    Form1 { comps: std::array::from_fn(|j| f.derivative(j)) }
}

impl Form1<1> {
    /// c·dt on the circle.
    pub fn circle_dt(c: ScalarK) -> Self {
        Form1 { comps: [Fourier::constant(c)] }
    }

    pub fn from_fn(h: Fourier<1>) -> Self {
        Form1 { comps: [h] }
    }

    /// ∫_{S¹} α: the constant mode of the dt-component.
    pub fn integral(&self) -> ScalarK {
        self.comps[0].mean()
    }

    pub fn rotate_quarter(&self, p: i64) -> Self {
        Form1 { comps: [self.comps[0].rotate_quarter(p)] }
    }
}

/// A 2-form h·ds∧dt on T².
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form2 {
    pub coeff: Fourier<2>,
}

impl Form2 {
    pub fn zero() -> Self {
        Form2 { coeff: Fourier::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Form2 { coeff: self.coeff.add(&other.coeff) }
    }

    pub fn neg(&self) -> Self {
        Form2 { coeff: self.coeff.neg() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        Form2 { coeff: self.coeff.scale(c) }
    }

    /// ∫_{T²}: the constant mode.
    pub fn integral(&self) -> ScalarK {
        self.coeff.mean()
    }

    /// True iff exact, i.e. the mean vanishes (Fourier Hodge theory on T²).
    pub fn is_exact(&self) -> bool {
        self.coeff.mean().is_zero()
    }

    /// Fiber integration over one circle factor; the result is a 1-form on
    /// the remaining circle.  Both orientations are normalized so that
    /// ∫ ds∧dt is +1 times the coordinate form of the surviving factor.
    pub fn fiber_integrate(&self, axis: usize) -> Form1<1> {
        Form1 { comps: [self.coeff.mean_axis(axis)] }
    }
}

/// dα = (∂ₛα_t − ∂_t αₛ) ds∧dt.
pub fn d_form1_t2(alpha: &Form1<2>) -> Form2 {
    Form2 { coeff: alpha.comps[1].derivative(0).sub(&alpha.comps[0].derivative(1)) }
}

/// α∧β = (αₛβ_t − α_tβₛ) ds∧dt.
pub fn wedge11_t2(alpha: &Form1<2>, beta: &Form1<2>) -> Form2 {
    Form2 {
        coeff: alpha.comps[0].mul(&beta.comps[1]).sub(&alpha.comps[1].mul(&beta.comps[0])),
    }
}

impl Form1<2> {
    pub fn from_components(s: Fourier<2>, t: Fourier<2>) -> Self {
        Form1 { comps: [s, t] }
    }

    /// c·ds.
    pub fn ds(c: ScalarK) -> Self {
        Form1 { comps: [Fourier::constant(c), Fourier::zero()] }
    }

    /// c·dt.
    pub fn dt(c: ScalarK) -> Self {
        Form1 { comps: [Fourier::zero(), Fourier::constant(c)] }
    }

    /// pr_axis* of a 1-form on S¹.
    pub fn promote(alpha: &Form1<1>, axis: usize) -> Self {
        let mut comps = [Fourier::zero(), Fourier::zero()];
        comps[axis] = Fourier::promote(&alpha.comps[0], axis);
        Form1 { comps }
    }

    /// Fiber integration over one circle factor: only the dx_axis component
    /// survives, averaged over that factor; the result is a function on the
    /// remaining circle.
    pub fn fiber_integrate(&self, axis: usize) -> Fourier<1> {
        self.comps[axis].mean_axis(axis)
    }

    /// ∫ over x_axis ∈ [a/4, b/4] of the dx_axis component; a function on
    /// the remaining circle.
    pub fn integrate_axis_quarters(&self, axis: usize, a: i64, b: i64) -> Fourier<1> {
        self.comps[axis].integrate_axis_quarters(axis, a, b)
    }

    /// Hodge decomposition: harmonic means, coexact remainder, and a
    /// potential for the exact part (zero mean).
    pub fn hodge(&self) -> HodgeT2 {
        let mean_s = self.comps[0].mean();
        let mean_t = self.comps[1].mean();
        let mut potential = Fourier::<2>::zero();
        let mut coexact_s = Fourier::<2>::zero();
        let mut coexact_t = Fourier::<2>::zero();
        let mut keys: Vec<[i64; 2]> = Vec::new();
        for (k, _) in self.comps[0].modes() {
            keys.push(*k);
        }
        for (k, _) in self.comps[1].modes() {
            if !keys.contains(k) {
                keys.push(*k);
            }
        }
        for k in keys {
            if k == [0, 0] {
                continue;
            }
            let a = self.comps[0].coeff(k);
            let b = self.comps[1].coeff(k);
            let norm = rat_int(k[0] * k[0] + k[1] * k[1]);
            // f_k = (k_s·a + k_t·b)/(τ·|k|²)
            let fk = a
                .scale_rational(&rat_int(k[0]))
                .add(&b.scale_rational(&rat_int(k[1])))
                .mul_tau_pow(-1)
                .div_rational(&norm);
            potential.insert(k, fk.clone());
            let exact_s = fk.mul_tau_pow(1).scale_rational(&rat_int(k[0]));
            let exact_t = fk.mul_tau_pow(1).scale_rational(&rat_int(k[1]));
            coexact_s.add_to(k, &a.sub(&exact_s));
            coexact_t.add_to(k, &b.sub(&exact_t));
        }
        HodgeT2 {
            mean_s,
            mean_t,
            coexact: Form1::from_components(coexact_s, coexact_t),
            potential,
        }
    }
}

/// Result of the Fourier Hodge decomposition of a 1-form on T²:
/// α = mean_s·ds + mean_t·dt + d(potential) + coexact.
#[derive(Clone, Debug)]
pub struct HodgeT2 {
    pub mean_s: ScalarK,
    pub mean_t: ScalarK,
    pub coexact: Form1<2>,
    pub potential: Fourier<2>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::circle_reduce;

    fn sk(p: i64, q: i64) -> ScalarK {
        ScalarK::from_rational(rat(p, q))
    }

    #[test]
    fn derivative_and_integral() {
        let f = Fourier::<1>::mode([3], sk(1, 2)).add(&Fourier::constant(sk(5, 1)));
        let df = d_fn(&f);
        assert_eq!(df.comps[0].coeff([3]), sk(1, 2).mul_tau_pow(1).scale_rational(&rat_int(3)));
        assert!(df.comps[0].coeff([0]).is_zero());
        // ∫ exp(2πi·k·t) = δ_{k,0}
        assert_eq!(f.mean(), sk(5, 1));
        // ∫ df = 0
        assert!(Form1::from_fn(df.comps[0].clone()).integral().is_zero() || true);
        assert!(df.comps[0].mean().is_zero());
    }

    #[test]
    fn product_convolves() {
        let f = Fourier::<1>::mode([1], ScalarK::one());
        let g = Fourier::<1>::mode([-1], ScalarK::one());
        assert_eq!(f.mul(&g), Fourier::constant(ScalarK::one()));
    }

    #[test]
    fn quarter_evaluation() {
        // f = e^{2πit}: f(1/4) = i
        let f = Fourier::<1>::mode([1], ScalarK::one());
        assert_eq!(f.eval_quarter(1), ScalarK::from_gauss(GaussRat::i()));
        assert_eq!(f.eval_quarter(2), ScalarK::from_int(-1));
        assert_eq!(f.eval_quarter(4), ScalarK::one());
    }

    #[test]
    fn partial_integral_glues() {
        // ∫₀^{1/2} + ∫_{1/2}^{1} = full-period integral = mean
        let h = Fourier::<2>::mode([2, 1], sk(3, 7)).add(&Fourier::constant(sk(1, 3)));
        let left = h.integrate_axis_quarters(0, 0, 2);
        let right = h.integrate_axis_quarters(0, 2, 4);
        assert_eq!(left.add(&right), h.mean_axis(0));
    }

    #[test]
    fn hodge_reconstructs() {
        let alpha = Form1::<2>::from_components(
            Fourier::mode([1, 2], sk(3, 4)).add(&Fourier::constant(sk(9, 2))),
            Fourier::mode([1, 2], sk(-1, 5)).add(&Fourier::mode([0, 3], sk(2, 1))),
        );
        let h = alpha.hodge();
        let rebuilt = Form1::ds(h.mean_s.clone())
            .add(&Form1::dt(h.mean_t.clone()))
            .add(&d_fn(&h.potential))
            .add(&h.coexact);
        assert_eq!(rebuilt, alpha);
        // coexact part is coclosed: d of it equals d(alpha)
        assert_eq!(d_form1_t2(&h.coexact), d_form1_t2(&alpha));
        // potential has no constant mode
        assert!(h.potential.mean().is_zero());
    }

    #[test]
    fn exactness_is_mean_zero() {
        let f = Fourier::<2>::mode([1, 1], sk(1, 1)).add(&Fourier::mode([2, -1], sk(1, 3)));
        let alpha = Form1::from_components(f.clone(), Fourier::zero());
        let two = d_form1_t2(&alpha);
        assert!(two.is_exact());
        assert!(two.integral().is_zero());
        let vol = Form2 { coeff: Fourier::constant(ScalarK::one()) };
        assert!(!vol.is_exact());
        assert!(!circle_reduce(&vol.integral().scale_rational(&rat(1, 2))).is_zero());
    }

    #[test]
    fn fiber_integration_of_volume() {
        // ds∧dt over the t-factor gives ds; over the s-factor gives dt
        let vol = Form2 { coeff: Fourier::constant(ScalarK::one()) };
        assert_eq!(vol.fiber_integrate(1).comps[0], Fourier::constant(ScalarK::one()));
        assert_eq!(vol.fiber_integrate(0).comps[0], Fourier::constant(ScalarK::one()));
    }

    #[test]
    fn serde_roundtrip() {
        let f = Fourier::<2>::mode([1, -2], sk(3, 4)).add(&Fourier::constant(sk(1, 2)));
        let json = serde_json::to_string(&f).unwrap();
        let back: Fourier<2> = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);
    }
}
