//! Differential cohomology of the 2-torus with coordinates (s, t).
//!
//! Degree-1 classes are n₁·pr₁*ê + n₂·pr₂*ê + a(f); degree-2 classes are
//! k·P + a(α) with P := pr₁*ê ∪ pr₂*ê, the class of the Poincaré bundle.
//! The canonical form of a degree-2 class drops the exact part of α and
//! reduces the harmonic means mod ℤ, which makes equality in Ĥ² decidable.
//!
//! Generator products are fixed by pr₁ê∪pr₂ê = P, pr_iê∪pr_iê = a(du_i/2)
//! (pulled back from ev(ê∪ê) = [1/2] on S¹) and the module rule
//! a(α)∪y = a(α∧R(y)).  With these conventions ev(P∪pr_iê) = [−1/2]; the
//! opposite sign agrees mod ℤ, so the residual global choice is
//! unobservable in ℂ/ℤ.

use serde::{Deserialize, Serialize};

use crate::scalars::{circle_reduce, rat, rat_int, CircleValue, ScalarK};

use super::derham::{d_fn, d_form1_t2, wedge11_t2, Form1, Form2, Fourier};
use super::s1::DC1S1;

/// A circle factor of T²; factor 1 carries the coordinate s, factor 2 the
/// coordinate t.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Factor {
    One,
    Two,
}

impl Factor {
    fn axis(self) -> usize {
        match self {
            Factor::One => 0,
            Factor::Two => 1,
        }
    }
}

/// A class n₁·pr₁*ê + n₂·pr₂*ê + a(f) in Ĥ¹(T²;ℤ).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DC1T2 {
    n1: i64,
    n2: i64,
    f: Fourier<2>,
}

impl DC1T2 {
    pub fn new(n1: i64, n2: i64, f: Fourier<2>) -> Self {
        DC1T2 { n1, n2, f: f.canonicalize_mean() }
    }

    pub fn pr1_e() -> Self {
        DC1T2::new(1, 0, Fourier::zero())
    }

    pub fn pr2_e() -> Self {
        DC1T2::new(0, 1, Fourier::zero())
    }

    /// Pullback pr_factor* of a circle class.
    pub fn pullback(x: &DC1S1, factor: Factor) -> Self {
        let f = Fourier::promote(x.f(), factor.axis());
        match factor {
            Factor::One => DC1T2::new(x.i_map(), 0, f),
            Factor::Two => DC1T2::new(0, x.i_map(), f),
        }
    }

    /// I: the pair of winding numbers in H¹(T²;ℤ) ≅ ℤ².
    pub fn i_map(&self) -> (i64, i64) {
        (self.n1, self.n2)
    }

    pub fn f(&self) -> &Fourier<2> {
        &self.f
    }

    /// R: n₁·ds + n₂·dt + df.
    pub fn r_map(&self) -> Form1<2> {
        Form1::ds(ScalarK::from_int(self.n1))
            .add(&Form1::dt(ScalarK::from_int(self.n2)))
            .add(&d_fn(&self.f))
    }

    pub fn add(&self, other: &Self) -> Self {
        DC1T2::new(self.n1 + other.n1, self.n2 + other.n2, self.f.add(&other.f))
    }

    pub fn neg(&self) -> Self {
        DC1T2::new(-self.n1, -self.n2, self.f.neg())
    }

    pub fn scale_int(&self, m: i64) -> Self {
        DC1T2::new(self.n1 * m, self.n2 * m, self.f.scale_int(m))
    }

    /// Restriction along i_{s₀}: S¹ → T², t ↦ (s₀, t) at s₀ = p/4.
    /// pr₁*ê restricts to the constant class [s₀]; pr₂*ê restricts to ê.
    pub fn restrict_s_quarter(&self, p: i64) -> DC1S1 {
        let constant = Fourier::constant(ScalarK::from_rational(rat(self.n1 * p, 4)));
        DC1S1::new(self.n2, self.f.restrict_quarter(0, p).add(&constant))
    }
}

/// a on functions: Ω⁰/im(d) → Ĥ¹(T²;ℤ).
pub fn a_map_t2_1(f: &Fourier<2>) -> DC1T2 {
    DC1T2::new(0, 0, f.clone())
}

/// A class k·P + a(α) in Ĥ²(T²;ℤ), kept canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DC2T2 {
    k: i64,
    alpha: Form1<2>,
}

#[derive(Serialize, Deserialize)]
struct DC2Wire {
    k: i64,
    alpha_s: Fourier<2>,
    alpha_t: Fourier<2>,
}

impl Serialize for DC2T2 {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        DC2Wire {
            k: self.k,
            alpha_s: self.alpha.comps[0].clone(),
            alpha_t: self.alpha.comps[1].clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DC2T2 {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = DC2Wire::deserialize(de)?;
        Ok(DC2T2::new(wire.k, Form1::from_components(wire.alpha_s, wire.alpha_t)))
    }
}

impl DC2T2 {
    /// k·P + a(α), canonicalized via the Fourier Hodge decomposition: the
    /// exact part of α is dropped, the harmonic means are reduced mod ℤ.
    pub fn new(k: i64, alpha: Form1<2>) -> Self {
        let h = alpha.hodge();
        let mean_s = circle_reduce(&h.mean_s).representative().clone();
        let mean_t = circle_reduce(&h.mean_t).representative().clone();
        let canon = Form1::ds(mean_s).add(&Form1::dt(mean_t)).add(&h.coexact);
        DC2T2 { k, alpha: canon }
    }

    /// P = pr₁*ê ∪ pr₂*ê.
    pub fn p_class() -> Self {
        DC2T2::new(1, Form1::zero())
    }

    pub fn zero() -> Self {
        DC2T2::new(0, Form1::zero())
    }

    /// I: the multiple of the generator of H²(T²;ℤ).
    pub fn i_map(&self) -> i64 {
        self.k
    }

    pub fn alpha(&self) -> &Form1<2> {
        &self.alpha
    }

    /// R: k·ds∧dt + dα.
    pub fn r_map(&self) -> Form2 {
        let vol = Form2 { coeff: Fourier::constant(ScalarK::from_int(self.k)) };
        vol.add(&d_form1_t2(&self.alpha))
    }

    pub fn add(&self, other: &Self) -> Self {
        DC2T2::new(self.k + other.k, self.alpha.add(&other.alpha))
    }

    pub fn neg(&self) -> Self {
        DC2T2::new(-self.k, self.alpha.neg())
    }

    pub fn scale_int(&self, m: i64) -> Self {
        DC2T2::new(self.k * m, self.alpha.scale_int(m))
    }
}

/// a on 1-forms: Ω¹/im(d) → Ĥ²(T²;ℤ).
pub fn a_map_t2_2(alpha: &Form1<2>) -> DC2T2 {
    DC2T2::new(0, alpha.clone())
}

/// ev on a-images of 2-forms (top degree): ev(a(ω)) = [∫_{T²} ω].
pub fn ev_a_form_t2(omega: &Form2) -> CircleValue {
    circle_reduce(&omega.integral())
}

/// Cup product Ĥ¹ × Ĥ¹ → Ĥ²(T²;ℤ).
///
/// Bilinear extension of the generator products with the module rule:
/// (X + a(f)) ∪ (Y + a(g)) = X∪Y − a(g·R(X)) + a(f∧R(y)).
pub fn cup_t2_11(x: &DC1T2, y: &DC1T2) -> DC2T2 {
    let (n1, n2) = (x.n1, x.n2);
    let (m1, m2) = (y.n1, y.n2);
    let k = n1 * m2 - n2 * m1;
    // pr_iê ∪ pr_iê = a(du_i/2)
    let squares = Form1::ds(ScalarK::from_rational(rat(n1 * m1, 2)))
        .add(&Form1::dt(ScalarK::from_rational(rat(n2 * m2, 2))));
    // a(f) ∪ y = a(f∧R(y)) with R(y) = m₁ds + m₂dt + dg
    let f_part = y.r_map().mul_fn(&x.f);
    // X ∪ a(g) = −a(g·R(X))
    let g_part = Form1::ds(ScalarK::from_int(n1))
        .add(&Form1::dt(ScalarK::from_int(n2)))
        .mul_fn(&y.f)
        .neg();
    DC2T2::new(k, squares.add(&f_part).add(&g_part))
}

/// Cup product Ĥ² × Ĥ¹ → Ĥ³(T²;ℤ) ≅ ℂ/ℤ.
///
/// ev(kP + a(α)) ∪ (m₁p₁ + m₂p₂ + a(g)) =
/// [−k(m₁+m₂)/2 + k·∫g + ∫ α∧R(y)].
pub fn cup_t2_21(w: &DC2T2, y: &DC1T2) -> CircleValue {
    let (m1, m2) = (y.n1, y.n2);
    // ev(P∪pr_iê) = [−1/2] in this convention (±1/2 agree mod ℤ)
    let gen_part = ScalarK::from_rational(rat(-w.k * (m1 + m2), 2));
    // P ∪ a(g) = a(g·R(P)) = a(g·ds∧dt): integrates to the mean of g
    let p_times_g = y.f.mean().scale_rational(&rat_int(w.k));
    // a(α) ∪ y = a(α∧R(y))
    let alpha_part = wedge11_t2(&w.alpha, &y.r_map()).integral();
    circle_reduce(&gen_part.add(&p_times_g).add(&alpha_part))
}

/// Fiber integration Ĥ²(T²) → Ĥ¹(S¹) over one circle factor.
///
/// Orientation conventions are fixed by the integration axioms (the square
/// with R and a commutes, with d∘∫ = ∫∘d at form level): integrating over
/// factor 2 sends P to ê on the first circle; integrating over factor 1
/// sends P to −ê on the second.
pub fn fiber_int_dc2(w: &DC2T2, factor: Factor) -> DC1S1 {
    let axis = factor.axis();
    let f = w.alpha.fiber_integrate(axis);
    match factor {
        Factor::Two => DC1S1::new(w.k, f),
        Factor::One => DC1S1::new(-w.k, f),
    }
}

/// Fiber integration Ĥ¹(T²) → Ĥ⁰(S¹) ≅ ℤ: the winding number along the
/// integrated factor.  Kills pullbacks from the other factor.
pub fn fiber_int_dc1(x: &DC1T2, factor: Factor) -> i64 {
    match factor {
        Factor::One => x.n1,
        Factor::Two => x.n2,
    }
}

/// Both sides of the homotopy formula on the slab [a/4, b/4] × S¹ ⊂ T²:
///
/// i_b*x̂ − i_a*x̂  and  a(∫_{slab/S¹} R(x̂)).
pub fn homotopy_slab(x: &DC1T2, a: i64, b: i64) -> (DC1S1, DC1S1) {
    let lhs = x.restrict_s_quarter(b).sub(&x.restrict_s_quarter(a));
    let rhs = super::s1::a_map_s1(&x.r_map().integrate_axis_quarters(0, a, b));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::circle_reduce_rational;

    fn sk(p: i64, q: i64) -> ScalarK {
        ScalarK::from_rational(rat(p, q))
    }

    #[test]
    fn structure_maps() {
        let p = DC2T2::p_class();
        assert_eq!(p.i_map(), 1);
        assert_eq!(p.r_map(), Form2 { coeff: Fourier::constant(ScalarK::one()) });
        let alpha = Form1::from_components(Fourier::mode([0, 1], sk(1, 2)), Fourier::zero());
        let a = a_map_t2_2(&alpha);
        assert_eq!(a.i_map(), 0);
        assert_eq!(a.r_map(), d_form1_t2(&alpha));
    }

    #[test]
    fn canonicalization_drops_exact_and_reduces_means() {
        // α and α + df + (integers)·(ds,dt) give the same class
        let f = Fourier::mode([2, -1], sk(3, 5));
        let alpha = Form1::from_components(
            Fourier::mode([1, 1], sk(1, 3)).add(&Fourier::constant(sk(7, 2))),
            Fourier::constant(sk(-1, 4)),
        );
        let shifted = alpha
            .add(&d_fn(&f))
            .add(&Form1::ds(ScalarK::from_int(4)))
            .add(&Form1::dt(ScalarK::from_int(-2)));
        assert_eq!(DC2T2::new(3, alpha.clone()), DC2T2::new(3, shifted));
        // R is insensitive to canonicalization
        assert_eq!(
            DC2T2::new(3, alpha.clone()).r_map(),
            Form2 { coeff: Fourier::constant(sk(3, 1)) }.add(&d_form1_t2(&alpha))
        );
    }

    #[test]
    fn poincare_class_from_generators() {
        let p = cup_t2_11(&DC1T2::pr1_e(), &DC1T2::pr2_e());
        assert_eq!(p, DC2T2::p_class());
        // anticommutativity: pr₂ê∪pr₁ê = −P
        let q = cup_t2_11(&DC1T2::pr2_e(), &DC1T2::pr1_e());
        assert_eq!(q, DC2T2::p_class().neg());
    }

    #[test]
    fn cup_11_graded_anticommutes() {
        let x = DC1T2::new(2, -1, Fourier::mode([1, 0], sk(1, 3)));
        let y = DC1T2::new(1, 3, Fourier::mode([0, 2], sk(2, 7)));
        assert_eq!(cup_t2_11(&x, &y), cup_t2_11(&y, &x).neg());
    }

    #[test]
    fn may0111_products() {
        // ev((kP) ∪ (n·pr₁ê + m·pr₂ê)) = [k(n+m)/2] mod ℤ
        for k in -5i64..=5 {
            for n in -5i64..=5 {
                for m in -5i64..=5 {
                    let w = DC2T2::p_class().scale_int(k);
                    let y = DC1T2::new(n, m, Fourier::zero());
                    let got = cup_t2_21(&w, &y);
                    let expected = circle_reduce_rational(&rat(k * (n + m), 2));
                    assert_eq!(got, expected, "k={k} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn p_cup_function_is_mean() {
        let g = Fourier::constant(sk(2, 7)).add(&Fourier::mode([1, 1], sk(5, 3)));
        let got = cup_t2_21(&DC2T2::p_class(), &a_map_t2_1(&g));
        assert_eq!(got, circle_reduce_rational(&rat(2, 7)));
    }

    #[test]
    fn a_module_rule_at_ev_level() {
        // ev(a(α)∪y) = [∫ α∧R(y)]
        let alpha = Form1::from_components(
            Fourier::mode([0, -1], sk(1, 2)),
            Fourier::mode([2, 0], sk(1, 5)),
        );
        let y = DC1T2::new(2, 1, Fourier::mode([-2, 1], sk(3, 4)));
        let got = cup_t2_21(&a_map_t2_2(&alpha), &y);
        let expected = circle_reduce(&wedge11_t2(&alpha, &y.r_map()).integral());
        assert_eq!(got, expected);
    }

    #[test]
    fn fiber_integration_examples() {
        // ∫_{factor 2} P = ê on the first circle
        let p = DC2T2::p_class();
        assert_eq!(fiber_int_dc2(&p, Factor::Two), DC1S1::e_hat());
        assert_eq!(fiber_int_dc2(&p, Factor::One), DC1S1::e_hat().neg());
        // a(α) ↦ a(∫ α)
        let alpha = Form1::from_components(
            Fourier::zero(),
            Fourier::mode([1, 0], sk(1, 3)).add(&Fourier::constant(sk(1, 4))),
        );
        let got = fiber_int_dc2(&a_map_t2_2(&alpha), Factor::Two);
        let expected_f = Fourier::<1>::mode([1], sk(1, 3)).add(&Fourier::constant(sk(1, 4)));
        assert_eq!(got, super::super::s1::a_map_s1(&expected_f));
        // pullbacks from the other factor die
        let from_t = DC1S1::new(3, Fourier::mode([2], sk(1, 2)));
        assert_eq!(fiber_int_dc1(&DC1T2::pullback(&from_t, Factor::Two), Factor::One), 0);
        assert_eq!(fiber_int_dc1(&DC1T2::pullback(&from_t, Factor::One), Factor::Two), 0);
    }

    #[test]
    fn fiber_integration_commutes_with_r_and_i() {
        let alpha = Form1::from_components(
            Fourier::mode([1, 2], sk(2, 3)),
            Fourier::mode([0, 1], sk(1, 2)).add(&Fourier::constant(sk(5, 4))),
        );
        let w = DC2T2::new(4, alpha);
        for factor in [Factor::One, Factor::Two] {
            let down = fiber_int_dc2(&w, factor);
            // R commutes: ∫_fiber R(w) = R(∫ w), with the factor-1
            // orientation flip at form level
            let rw = w.r_map();
            let integrated = match factor {
                Factor::Two => rw.fiber_integrate(1),
                Factor::One => rw.fiber_integrate(0).neg(),
            };
            assert_eq!(down.r_map(), integrated, "{factor:?}");
            // I commutes with the slant product
            let i_down = down.i_map();
            let expected_i = match factor {
                Factor::Two => w.i_map(),
                Factor::One => -w.i_map(),
            };
            assert_eq!(i_down, expected_i);
        }
    }

    #[test]
    fn homotopy_formula_on_slabs() {
        let x = DC1T2::new(2, -3, Fourier::mode([1, 1], sk(1, 2)).add(&Fourier::mode([2, 0], sk(2, 5))));
        for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 4), (0, 4)] {
            let (lhs, rhs) = homotopy_slab(&x, a, b);
            assert_eq!(lhs, rhs, "slab [{a}/4, {b}/4]");
        }
    }

    #[test]
    fn serde_roundtrip() {
        let w = DC2T2::new(
            2,
            Form1::from_components(Fourier::mode([1, 0], sk(1, 2)), Fourier::zero()),
        );
        let json = serde_json::to_string(&w).unwrap();
        let back: DC2T2 = serde_json::from_str(&json).unwrap();
        assert_eq!(w, back);
    }
}
