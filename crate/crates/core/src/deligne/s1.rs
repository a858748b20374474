//! Degree-1 differential cohomology of the circle.
//!
//! Every class is n·ê + a(f) where ê is the canonical class with R(ê) = dt
//! vanishing at the base point, and f is a Fourier polynomial whose constant
//! mode is defined mod ℤ.

use serde::{Deserialize, Serialize};

use crate::scalars::{circle_reduce, rat, rat_int, CircleValue, ScalarK};

use super::derham::{d_fn, Form1, Fourier};

/// A class n·ê + a(f) in Ĥ¹(S¹; ℤ).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DC1S1 {
    n: i64,
    f: Fourier<1>,
}

impl DC1S1 {
    /// n·ê + a(f), canonicalized (constant mode of f reduced mod ℤ).
    pub fn new(n: i64, f: Fourier<1>) -> Self {
        DC1S1 { n, f: f.canonicalize_mean() }
    }

    /// The canonical class ê.
    pub fn e_hat() -> Self {
        DC1S1 { n: 1, f: Fourier::zero() }
    }

    pub fn zero() -> Self {
        DC1S1 { n: 0, f: Fourier::zero() }
    }

    /// The underlying-class map I.
    pub fn i_map(&self) -> i64 {
        self.n
    }

    pub fn f(&self) -> &Fourier<1> {
        &self.f
    }

    /// The curvature map R: n·dt + df.
    pub fn r_map(&self) -> Form1<1> {
        Form1::circle_dt(ScalarK::from_int(self.n)).add(&d_fn(&self.f))
    }

    pub fn add(&self, other: &Self) -> Self {
        DC1S1::new(self.n + other.n, self.f.add(&other.f))
    }

    pub fn neg(&self) -> Self {
        DC1S1::new(-self.n, self.f.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale_int(&self, m: i64) -> Self {
        DC1S1::new(self.n * m, self.f.scale_int(m))
    }

    /// Restriction to the point t = p/4, in Ĥ¹(pt) ≅ ℂ/ℤ: [n·p/4 + f(p/4)].
    pub fn restrict_quarter(&self, p: i64) -> CircleValue {
        let point = ScalarK::from_rational(rat(self.n * p, 4));
        circle_reduce(&point.add(&self.f.eval_quarter(p)))
    }

    /// Pullback along the rotation t ↦ t + p/4.  ê picks up the constant
    /// class a(p/4); Fourier modes pick up phases.
    pub fn rotate_quarter(&self, p: i64) -> Self {
        let shift = Fourier::constant(ScalarK::from_rational(rat(self.n * p, 4)));
        DC1S1::new(self.n, self.f.rotate_quarter(p).add(&shift))
    }
}

/// a: Ω⁰/im(d) → Ĥ¹(S¹;ℤ); I∘a = 0 and R∘a = d.
pub fn a_map_s1(f: &Fourier<1>) -> DC1S1 {
    DC1S1::new(0, f.clone())
}

/// ev on the top group Ĥ²(S¹;ℤ) ≅ ℂ/ℤ for a-images: ev(a(α)) = [∫ α].
pub fn ev_a_form_s1(alpha: &Form1<1>) -> CircleValue {
    circle_reduce(&alpha.integral())
}

/// The cup product Ĥ¹ × Ĥ¹ → Ĥ²(S¹;ℤ) ≅ ℂ/ℤ:
///
/// ev(x∪y) = [nm/2 + ∫ (fm − ng) dt + ∫ f·dg].
pub fn cup_s1(x: &DC1S1, y: &DC1S1) -> CircleValue {
    let (n, m) = (x.n, y.n);
    let half_nm = ScalarK::from_rational(rat(n * m, 2));
    let linear =
        x.f.mean().scale_rational(&rat_int(m)).sub(&y.f.mean().scale_rational(&rat_int(n)));
    // ∫ f·dg = mean of f·g′
    let fg = x.f.mul(&y.f.derivative(0)).mean();
    circle_reduce(&half_nm.add(&linear).add(&fg))
}

/// The holonomy exponent of d + α on S¹: hol = exp(−∫ α), so the exponent
/// is −∫ α.
pub fn holonomy_exponent(alpha: &Form1<1>) -> ScalarK {
    alpha.integral().neg()
}

/// ĉ₁(d + α) under Ĥ²(S¹;ℤ) ≅ ℂ/ℤ: [−τ⁻¹ ∫ α].  Satisfies
/// τ·(representative) ≡ holonomy exponent modulo τ·ℤ.
pub fn holonomy_c1hat(alpha: &Form1<1>) -> CircleValue {
    circle_reduce(&alpha.integral().mul_tau_pow(-1).neg())
}
