//! Exact-arithmetic Chern–Weil calculus and differential cohomology on
//! explicit models.
//!
//! The crate computes, over exact coefficient rings (big rationals, Gaussian
//! rationals, Laurent polynomials in a formal τ = 2πi):
//!
//! - characteristic forms of matrix connections (Chern forms, Chern
//!   character, Newton and Pontryagin classes) and their transgressions
//!   ([`forms`]),
//! - a catalog of explicit bundles with connection data ([`models`]),
//! - Deligne cohomology of the circle and the 2-torus with Fourier-polynomial
//!   functions, structure maps, cup products and fiber integration
//!   ([`deligne`]),
//! - Chern–Simons-type secondary invariants of lens spaces, circle bundles
//!   and flat line bundles ([`secondary`]),
//! - the genus power series (Todd, Â, cannibalistic classes, the higher
//!   e-invariant series) and genus evaluation on projective spaces
//!   ([`series`]),
//! - integer cohomology of cellular complexes via Smith normal form, with
//!   ℤ/m and ℚ/ℤ coefficients and the Bockstein ([`homology`]).
//!
//! All values are immutable and freely shareable across threads.  Parameter
//! sweeps go through [`par`], which uses rayon when the default `parallel`
//! feature is enabled and falls back to sequential iteration otherwise.

pub mod deligne;
pub mod error;
pub mod forms;
pub mod homology;
pub mod models;
pub mod par;
pub mod scalars;
pub mod secondary;
pub mod series;

pub use error::Error;
pub use scalars::{CircleValue, GaussRat, Rational, ScalarK};
pub use series::PowerSeries;
