//! Differential (Deligne) cohomology of the circle and the 2-torus in the
//! (integer part, form part) presentation.
//!
//! Smooth functions are modeled as finite Fourier polynomials: sparse maps
//! ℤᵈ → ScalarK, the coefficient of exp(2πi⟨k,x⟩).  Products, the exterior
//! differential and fiber integration are then exact, and ev-values live in
//! (ℚ + τ·ℚ(i)) mod ℤ where equality is decidable.
//!
//! Degree-1 classes are written n·ê + a(f) with R(ê) = dt; degree-2 classes
//! on the torus are written k·P + a(α) with P = pr₁*ê ∪ pr₂*ê.  Equality in
//! Ĥ² is decided through the Fourier Hodge decomposition: the exact part of
//! α is dropped, the harmonic means are reduced mod ℤ.

pub mod derham;
mod s1;
mod t2;

pub use derham::{d_fn, d_form1_t2, wedge11_t2, Form1, Form2, Fourier, HodgeT2};
pub use s1::{a_map_s1, cup_s1, ev_a_form_s1, holonomy_c1hat, holonomy_exponent, DC1S1};
pub use t2::{
    a_map_t2_1, a_map_t2_2, cup_t2_11, cup_t2_21, ev_a_form_t2, fiber_int_dc1, fiber_int_dc2,
    homotopy_slab, Factor, DC1T2, DC2T2,
};
