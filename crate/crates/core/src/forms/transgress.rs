//! Transgression along the affine path of connections.
//!
//! For connections A₀, A₁ the path is Ã = (1−t)A₀ + tA₁ on the cylinder;
//! the transgression of a characteristic form ω is the fiber integral of
//! ω(Ã) over [0,1], i.e. the dt-component with its t-polynomial integrated.
//! The defining relation d ω̃ = ω(A₁) − ω(A₀) is asserted on every call.

use crate::error::Error;
use super::form::{Form, TPoly};
use super::matrix::{ch_form, chern_k, chern_total, curvature, pontryagin, ConnectionMatrix, FormMatrix};

/// Which characteristic form to transgress.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransgressSelector {
    /// cₖ
    Chern(usize),
    /// ch_{2k}, the degree-2k component of the Chern character
    Ch(usize),
    /// pₖ of a complexified real connection
    Pontryagin(usize),
    /// c₁ⁿ
    ChernPower(usize),
}

impl TransgressSelector {
    /// Evaluates the selected characteristic form on a curvature matrix.
    pub fn apply(&self, r: &FormMatrix) -> Result<Form, Error> {
        match *self {
            TransgressSelector::Chern(k) => chern_k(r, k),
            TransgressSelector::Ch(k) => Ok(ch_form(r)?.degree_part(2 * k)),
            TransgressSelector::Pontryagin(k) => pontryagin(r, k),
            TransgressSelector::ChernPower(n) => {
                let c1 = chern_total(r)?.degree_part(2);
                Ok(c1.wedge_pow(n))
            }
        }
    }
}

/// Transgression ω̃(A₁, A₀) of the selected characteristic form along the
/// affine path of connections.
///
/// Postcondition (checked): d(result) = ω(A₁) − ω(A₀).
pub fn transgress(
    a0: &ConnectionMatrix,
    a1: &ConnectionMatrix,
    selector: TransgressSelector,
) -> Result<Form, Error> {
    assert_eq!(a0.size(), a1.size(), "connections of different rank");
    assert!(
        std::sync::Arc::ptr_eq(a0.presentation(), a1.presentation()),
        "connections over different presentations"
    );
    let path = a0.mul_tpoly(&TPoly::one_minus_t()).add(&a1.mul_tpoly(&TPoly::t()));
    let omega_path = selector.apply(&curvature(&path))?;
    let result = omega_path.integrate_dt();

    let omega1 = selector.apply(&curvature(a1))?;
    let omega0 = selector.apply(&curvature(a0))?;
    let defect = result.d().sub(&omega1.sub(&omega0));
    assert!(
        defect.is_zero(),
        "transgression d-relation violated: d ω̃ − (ω(A₁) − ω(A₀)) = {defect}"
    );
    Ok(result)
}
