//! Catalog of explicit bundles-with-connection: the tautological line bundle
//! on CPⁿ, the Poincaré bundle on T², the SU(2) Hopf bundle on S⁴, flat line
//! bundles on S¹, and the unit circle bundles of powers of the tautological
//! bundle (the lens-space route).
//!
//! Volume forms are stored normalized (total integral 1).  Curvatures known
//! only at the level of characteristic forms (the Hopf bundle on S⁴) are
//! stored as characteristic-form data rather than a connection matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::Error;
use crate::forms::{curvature, AlgebraPresentation, ConnectionMatrix, Form, FormMatrix, Generator};
use crate::scalars::{rat_int, Rational, ScalarK};

/// Geometric data carried by a catalog entry.
#[derive(Clone, Debug)]
pub enum ModelData {
    /// A connection matrix A with ∇ = d + A; curvature is computed.
    Connection(ConnectionMatrix),
    /// An explicit curvature matrix (no usable global connection matrix).
    Curvature(FormMatrix),
    /// Characteristic forms known at class level, keyed by name ("c1", "c2").
    CharForms(BTreeMap<String, Form>),
    /// Unit circle bundle of L^{⊗k} → CPⁿ with its canonical flat connection.
    ///
    /// `fiber_alpha_integral` is ∫_{M/CPⁿ} α = τ/k for the connection 1-form
    /// α = du/(ku) on the fiber.  `c1_power_integral` is ⟨c₁(∇)ⁿ, [CPⁿ]⟩ in
    /// the unit-normalized generator orientation used by the disc-bundle
    /// computation.
    CircleBundle { k: u32, fiber_alpha_integral: ScalarK, c1_power_integral: Rational },
}

/// A catalog entry: base presentation, bundle data, and the fundamental
/// class as the exponent vector of the normalized top monomial.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    pub name: String,
    pub base: Arc<AlgebraPresentation>,
    pub data: ModelData,
    fundamental: Vec<u32>,
}

impl ModelBundle {
    /// The curvature matrix, when the model stores one or a connection.
    pub fn curvature_matrix(&self) -> Option<FormMatrix> {
        match &self.data {
            ModelData::Connection(a) => Some(curvature(a)),
            ModelData::Curvature(r) => Some(r.clone()),
            _ => None,
        }
    }

    pub fn char_form(&self, key: &str) -> Option<&Form> {
        match &self.data {
            ModelData::CharForms(map) => map.get(key),
            _ => None,
        }
    }

    /// The normalized volume monomial as a form.
    pub fn volume_form(&self) -> Form {
        let mut acc = Form::one(self.base.clone());
        for (i, e) in self.fundamental.iter().enumerate() {
            for _ in 0..*e {
                acc = acc.wedge(&Form::generator(self.base.clone(), i));
            }
        }
        acc
    }

    /// Exports the base presentation in the JSON format of the forms module.
    pub fn presentation_json(&self) -> String {
        self.base.to_json()
    }
}

/// Names accepted by [`catalog`].
#[derive(Clone, Debug)]
pub enum ModelName {
    /// Tautological line bundle L → CPⁿ with its invariant connection.
    CpnTaut(u32),
    /// Poincaré bundle over T² = J(S¹)×S¹.
    PoincareT2,
    /// SU(2) Hopf bundle over S⁴ (characteristic-form data only).
    HopfSu2S4,
    /// Trivial line bundle on S¹ with connection d + c·du.
    FlatS1(ScalarK),
    /// Unit circle bundle of L^{⊗k} → CPⁿ.
    LensCircle { n: u32, k: u32 },
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelName::CpnTaut(n) => write!(f, "cpn_taut({n})"),
            ModelName::PoincareT2 => write!(f, "poincare_t2"),
            ModelName::HopfSu2S4 => write!(f, "hopf_su2_s4"),
            ModelName::FlatS1(c) => write!(f, "flat_s1({c})"),
            ModelName::LensCircle { n, k } => write!(f, "lens_circle({n},{k})"),
        }
    }
}

/// The CPⁿ presentation: one degree-2 generator w with wⁿ⁺¹ = 0, top degree
/// 2n, normalized so that ∫ wⁿ = 1.
pub fn cpn_presentation(n: u32) -> Arc<AlgebraPresentation> {
    AlgebraPresentation::constants(vec![Generator::new("w", 2, n + 1)], 2 * n as usize)
}

/// Returns the model with its curvature data installed.
pub fn catalog(name: &ModelName) -> Result<ModelBundle, Error> {
    match name {
        ModelName::CpnTaut(n) => {
            if *n == 0 {
                return Err(Error::UnknownModel("cpn_taut(0)".into()));
            }
            let base = cpn_presentation(*n);
            let w = Form::gen_named(&base, "w");
            // R^{∇L} = 2πi·vol = τ·w
            let r = FormMatrix::scalar_matrix(w.scale(&ScalarK::tau_pow(1)));
            Ok(ModelBundle {
                name: name.to_string(),
                base,
                data: ModelData::Curvature(r),
                fundamental: vec![*n],
            })
        }
        ModelName::PoincareT2 => {
            // coordinates (y, x): y on the Jacobian circle, x on the original;
            // orientation dy∧dx, R^{∇P} = −2πi·dy∧dx
            let base = AlgebraPresentation::constants(
                vec![Generator::new("dy", 1, 1), Generator::new("dx", 1, 1)],
                2,
            );
            let dy = Form::gen_named(&base, "dy");
            let dx = Form::gen_named(&base, "dx");
            let r =
                FormMatrix::scalar_matrix(dy.wedge(&dx).scale(&ScalarK::tau_pow(1)).neg());
            Ok(ModelBundle {
                name: name.to_string(),
                base,
                data: ModelData::Curvature(r),
                fundamental: vec![1, 1],
            })
        }
        ModelName::HopfSu2S4 => {
            let base =
                AlgebraPresentation::constants(vec![Generator::new("vol", 4, 2)], 4);
            let vol = Form::gen_named(&base, "vol");
            let mut forms = BTreeMap::new();
            forms.insert("c1".to_string(), Form::zero(base.clone()));
            forms.insert("c2".to_string(), vol);
            Ok(ModelBundle {
                name: name.to_string(),
                base,
                data: ModelData::CharForms(forms),
                fundamental: vec![1],
            })
        }
        ModelName::FlatS1(c) => {
            let base =
                AlgebraPresentation::constants(vec![Generator::new("du", 1, 1)], 1);
            let du = Form::gen_named(&base, "du");
            let a = FormMatrix::scalar_matrix(du.scale(c));
            Ok(ModelBundle {
                name: name.to_string(),
                base,
                data: ModelData::Connection(a),
                fundamental: vec![1],
            })
        }
        ModelName::LensCircle { n, k } => {
            if *n == 0 || *k == 0 {
                return Err(Error::UnknownModel(name.to_string()));
            }
            let base = cpn_presentation(*n);
            // α = du/(ku) on the fiber: ∫_{M/CPⁿ} α = 2πi/k = τ/k
            let fiber = ScalarK::tau_pow(1).div_rational(&rat_int(*k as i64));
            Ok(ModelBundle {
                name: name.to_string(),
                base,
                data: ModelData::CircleBundle {
                    k: *k,
                    fiber_alpha_integral: fiber,
                    c1_power_integral: Rational::one(),
                },
                fundamental: vec![*n],
            })
        }
    }
}

/// ⟨x, [M]⟩: the coefficient of the normalized volume monomial.  Lower-degree
/// terms integrate to 0.
pub fn integrate_fund(x: &Form, m: &ModelBundle) -> ScalarK {
    assert!(Arc::ptr_eq(x.presentation(), &m.base), "form does not live on the model base");
    x.coefficient(&m.fundamental)
}

/// A rational multiple of a power of c₁, the value format of the disc-bundle
/// transgression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct C1Class {
    pub coeff: Rational,
    pub power: u32,
}

impl fmt::Display for C1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}·c₁", self.coeff),
            p => write!(f, "{}·c₁^{}", self.coeff, p),
        }
    }
}

impl C1Class {
    /// Pairs c₁^power against the fundamental class of CP^power in the
    /// unit-normalized generator orientation (⟨c₁ᵐ, [CPᵐ]⟩ = 1).
    pub fn integral_over_cp(&self) -> Rational {
        self.coeff.clone()
    }
}

/// The fiberwise integral [∫_{Z/B} c₁(∇̃)ⁿ] over the unit disc bundle of the
/// κ-th power line bundle, with the boundary connection trivialized:
/// −κⁿ·c₁ⁿ⁻¹(∇).
pub fn disc_transgression(kappa: i64, n: u32) -> C1Class {
    assert!(n >= 1, "disc transgression needs n ≥ 1");
    let mut coeff = Rational::one();
    for _ in 0..n {
        coeff *= rat_int(kappa);
    }
    C1Class { coeff: -coeff, power: n - 1 }
}
