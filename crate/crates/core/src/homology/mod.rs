//! Integer linear algebra backend: Smith normal form, cellular cohomology
//! with ℤ, ℤ/m and ℚ/ℤ coefficients, and the Bockstein.

mod complex;
mod snf;

pub use complex::{
    bockstein, cohomology, CellComplex, CohomologyClass, CohomologyGroup, Coefficients,
};
pub use snf::{snf, IntMat, SnfResult};
