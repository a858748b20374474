//! Cellular chain complexes, cohomology with ℤ, ℤ/m and ℚ/ℤ coefficients,
//! and the Bockstein of 0 → ℤ → ℚ → ℚ/ℤ → 0.
//!
//! Input is cellular (boundary matrices directly): lens and projective
//! spaces have tiny cellular models where triangulations would be enormous.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalars::Rational;

use super::snf::{snf, IntMat, SnfResult};

/// A cellular chain complex: boundary matrices ∂_d: C_d → C_{d−1} for
/// d = 1..=dim, with ∂∘∂ = 0 checked at construction.
#[derive(Clone, Debug)]
pub struct CellComplex {
    /// cells[d] = number of d-cells
    cells: Vec<usize>,
    /// boundaries[d−1] = ∂_d, a cells[d−1] × cells[d] matrix
    boundaries: Vec<IntMat>,
}

impl CellComplex {
    pub fn new(cells: Vec<usize>, boundaries: Vec<IntMat>) -> Result<Self, Error> {
        if cells.is_empty() {
            return Err(Error::Dimension("complex needs at least dimension 0".into()));
        }
        if boundaries.len() + 1 != cells.len() {
            return Err(Error::Dimension(format!(
                "{} cell ranks need {} boundary matrices, got {}",
                cells.len(),
                cells.len() - 1,
                boundaries.len()
            )));
        }
        for (d, b) in boundaries.iter().enumerate() {
            if b.rows() != cells[d] || b.cols() != cells[d + 1] {
                return Err(Error::Dimension(format!(
                    "∂_{} must be {}×{}, got {}×{}",
                    d + 1,
                    cells[d],
                    cells[d + 1],
                    b.rows(),
                    b.cols()
                )));
            }
        }
        for d in 0..boundaries.len().saturating_sub(1) {
            if !boundaries[d].mul(&boundaries[d + 1]).is_zero() {
                return Err(Error::Dimension(format!("∂_{}∘∂_{} ≠ 0", d + 1, d + 2)));
            }
        }
        Ok(CellComplex { cells, boundaries })
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, d: usize) -> usize {
        self.cells.get(d).copied().unwrap_or(0)
    }

    /// The coboundary δ_d = ∂_{d+1}ᵀ: Cᵈ → Cᵈ⁺¹ (zero beyond the dimension).
    pub fn coboundary(&self, d: usize) -> IntMat {
        if d < self.boundaries.len() {
            self.boundaries[d].transpose()
        } else {
            IntMat::zero(self.cells(d + 1), self.cells(d))
        }
    }

    /// S¹: one 0-cell, one 1-cell, ∂ = 0.
    pub fn circle() -> Self {
        CellComplex::new(vec![1, 1], vec![IntMat::zero(1, 1)]).expect("valid")
    }

    /// RPⁿ: one cell per dimension, boundary maps alternating 0, 2, 0, 2, …
    pub fn real_projective(n: usize) -> Self {
        let cells = vec![1; n + 1];
        let boundaries = (1..=n)
            .map(|d| {
                let v = if d % 2 == 0 { 2 } else { 0 };
                IntMat::from_rows(&[vec![v]])
            })
            .collect();
        CellComplex::new(cells, boundaries).expect("valid")
    }

    /// The lens space L³_k = S³/μ_k: cells (1,1,1,1), ∂ = (0, ·k, 0).
    pub fn lens3(k: i64) -> Self {
        CellComplex::new(
            vec![1, 1, 1, 1],
            vec![
                IntMat::zero(1, 1),
                IntMat::from_rows(&[vec![k]]),
                IntMat::zero(1, 1),
            ],
        )
        .expect("valid")
    }

    /// T²: one 0-cell, two 1-cells, one 2-cell, all boundaries zero.
    pub fn torus2() -> Self {
        CellComplex::new(vec![1, 2, 1], vec![IntMat::zero(1, 2), IntMat::zero(2, 1)])
            .expect("valid")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, n)| if d % 2 == 0 { *n as i64 } else { -(*n as i64) })
            .sum()
    }
}

/// Wire format: {"cells":[…], "boundaries":[[[…]]]} with row-major matrices.
#[derive(Serialize, Deserialize)]
struct ComplexWire {
    cells: Vec<usize>,
    boundaries: Vec<Vec<Vec<i64>>>,
}

impl CellComplex {
    pub fn from_json(json: &str) -> Result<Self, Error> {
        let wire: ComplexWire = serde_json::from_str(json)?;
        let boundaries = wire
            .boundaries
            .iter()
            .enumerate()
            .map(|(d, rows)| {
                if rows.is_empty() {
                    IntMat::zero(wire.cells[d], wire.cells[d + 1])
                } else {
                    IntMat::from_rows(rows)
                }
            })
            .collect();
        CellComplex::new(wire.cells, boundaries)
    }
}

/// Coefficient systems for [`cohomology`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coefficients {
    Z,
    ZMod(u64),
    QZ,
}

/// One cohomology group: a free part and cyclic torsion factors.
///
/// For ℤ the free part is ℤ^rank; for ℤ/m it counts (ℤ/m)-summands; for ℚ/ℤ
/// it counts ℚ/ℤ-summands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyGroup {
    pub coeff: Coefficients,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Serialize for CohomologyGroup {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            free_rank: usize,
            torsion: Vec<String>,
            display: &'a str,
        }
        Wire {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(BigInt::to_string).collect(),
            display: &self.to_string(),
        }
        .serialize(ser)
    }
}

impl std::fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let unit = match self.coeff {
            Coefficients::Z => "Z",
            Coefficients::ZMod(_) => "Z/m",
            Coefficients::QZ => "Q/Z",
        };
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            let base = if let Coefficients::ZMod(m) = self.coeff {
                format!("Z/{m}")
            } else {
                unit.to_string()
            };
            parts.push(if self.free_rank == 1 {
                base
            } else if base.contains('/') {
                format!("({base})^{}", self.free_rank)
            } else {
                format!("{base}^{}", self.free_rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn integral_cohomology(c: &CellComplex) -> Vec<CohomologyGroup> {
    let dim = c.dim();
    // rank and invariant factors of each coboundary
    let snfs: Vec<SnfResult> = (0..=dim).map(|d| snf(&c.coboundary(d))).collect();
    (0..=dim)
        .map(|d| {
            let rank_d = snfs[d].rank();
            let rank_prev = if d == 0 { 0 } else { snfs[d - 1].rank() };
            let betti = c.cells(d) - rank_d - rank_prev;
            let torsion = if d == 0 {
                Vec::new()
            } else {
                snfs[d - 1]
                    .invariant_factors()
                    .into_iter()
                    .filter(|f| f > &BigInt::one())
                    .collect()
            };
            CohomologyGroup { coeff: Coefficients::Z, free_rank: betti, torsion }
        })
        .collect()
}

/// Cohomology of the complex with the requested coefficients, one group per
/// degree 0..=dim.
///
/// ℤ/m and ℚ/ℤ are produced from the integral answer by universal
/// coefficients: H^d(;A) = H^d⊗A ⊕ Tor(H^{d+1}, A).
pub fn cohomology(c: &CellComplex, coeff: Coefficients) -> Vec<CohomologyGroup> {
    let integral = integral_cohomology(c);
    match coeff {
        Coefficients::Z => integral,
        Coefficients::ZMod(m_raw) => {
            let m = BigInt::from(m_raw);
            (0..integral.len())
                .map(|d| {
                    let mut torsion = Vec::new();
                    // H^d ⊗ ℤ/m: torsion factors become ℤ/gcd(f, m)
                    for f in &integral[d].torsion {
                        let g = f.gcd(&m);
                        if g > BigInt::one() {
                            torsion.push(g);
                        }
                    }
                    // Tor(H^{d+1}, ℤ/m)
                    if let Some(next) = integral.get(d + 1) {
                        for f in &next.torsion {
                            let g = f.gcd(&m);
                            if g > BigInt::one() {
                                torsion.push(g);
                            }
                        }
                    }
                    torsion.sort();
                    CohomologyGroup {
                        coeff: Coefficients::ZMod(m_raw),
                        free_rank: integral[d].free_rank,
                        torsion,
                    }
                })
                .collect()
        }
        Coefficients::QZ => (0..integral.len())
            .map(|d| {
                // ℚ/ℤ is divisible: H^d⊗ℚ/ℤ = (ℚ/ℤ)^betti; Tor(H^{d+1}, ℚ/ℤ)
                // is the torsion of H^{d+1}
                let torsion = integral
                    .get(d + 1)
                    .map(|g| g.torsion.clone())
                    .unwrap_or_default();
                CohomologyGroup {
                    coeff: Coefficients::QZ,
                    free_rank: integral[d].free_rank,
                    torsion,
                }
            })
            .collect(),
    }
}

/// A cohomology class in coordinates adapted to the group decomposition:
/// one residue per torsion factor and one integer per free generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyClass {
    /// (modulus, residue) pairs with 0 ≤ residue < modulus
    pub torsion_coords: Vec<(BigInt, BigInt)>,
    pub free_coords: Vec<BigInt>,
}

impl Serialize for CohomologyClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            torsion: Vec<(String, String)>,
            free: Vec<String>,
        }
        Wire {
            torsion: self
                .torsion_coords
                .iter()
                .map(|(m, r)| (m.to_string(), r.to_string()))
                .collect(),
            free: self.free_coords.iter().map(BigInt::to_string).collect(),
        }
        .serialize(ser)
    }
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.torsion_coords.iter().all(|(_, r)| r.is_zero())
            && self.free_coords.iter().all(Zero::is_zero)
    }
}

/// Expresses an integer cocycle z ∈ ker δ_d in the canonical coordinates of
/// H^d(;ℤ) = ker δ_d / im δ_{d−1}.
fn class_in_cohomology(c: &CellComplex, d: usize, z: &[BigInt]) -> Result<CohomologyClass, Error> {
    let delta_d = c.coboundary(d);
    let n = c.cells(d);
    assert_eq!(z.len(), n, "cochain length mismatch");
    // kernel basis: columns of V beyond rank(δ_d)
    let s = snf(&delta_d);
    let r = s.rank();
    let kernel_dim = n - r;
    let w = s.v_inv.mul_vec(z);
    for (i, x) in w.iter().enumerate().take(r) {
        if !x.is_zero() {
            return Err(Error::NotACocycle(i));
        }
    }
    let kernel_coords: Vec<BigInt> = w[r..].to_vec();

    // image of δ_{d−1} expressed in the kernel basis
    let prev = if d == 0 {
        IntMat::zero(n, 0)
    } else {
        c.coboundary(d - 1)
    };
    let mut b = IntMat::zero(kernel_dim, prev.cols());
    for col in 0..prev.cols() {
        let image_col: Vec<BigInt> = (0..n).map(|i| prev.get(i, col).clone()).collect();
        let coords = s.v_inv.mul_vec(&image_col);
        debug_assert!(coords[..r].iter().all(Zero::is_zero), "image not inside kernel");
        for (i, val) in coords[r..].iter().enumerate() {
            b.set(i, col, val.clone());
        }
    }
    // quotient coordinates via SNF of the relation matrix
    let sb = snf(&b);
    let y = sb.u.mul_vec(&kernel_coords);
    let mut torsion_coords = Vec::new();
    let mut free_coords = Vec::new();
    for (i, val) in y.iter().enumerate() {
        let factor = if i < sb.rank() { sb.d.get(i, i).clone() } else { BigInt::zero() };
        if factor.is_one() {
            continue;
        }
        if factor.is_zero() {
            free_coords.push(val.clone());
        } else {
            torsion_coords.push((factor.clone(), val.mod_floor(&factor)));
        }
    }
    Ok(CohomologyClass { torsion_coords, free_coords })
}

/// The Bockstein H^d(;ℚ/ℤ) → H^{d+1}(;ℤ) of 0 → ℤ → ℚ → ℚ/ℤ → 0.
///
/// The input class is a ℚ/ℤ cochain given by a rational representative q on
/// the d-cells; it must satisfy δq ≡ 0 mod ℤ.  The output is [δq̃] for the
/// rational lift q̃ = q, expressed in the canonical coordinates of
/// H^{d+1}(;ℤ); it lands in the torsion.
pub fn bockstein(c: &CellComplex, d: usize, q: &[Rational]) -> Result<CohomologyClass, Error> {
    if q.len() != c.cells(d) {
        return Err(Error::Dimension(format!(
            "cochain has {} entries, need {}",
            q.len(),
            c.cells(d)
        )));
    }
    let delta = c.coboundary(d);
    let mut z = Vec::with_capacity(c.cells(d + 1));
    for i in 0..delta.rows() {
        let mut acc = Rational::zero();
        for (j, qj) in q.iter().enumerate().take(delta.cols()) {
            acc += Rational::from_integer(delta.get(i, j).clone()) * qj;
        }
        if !acc.is_integer() {
            return Err(Error::NotACocycle(i));
        }
        z.push(acc.to_integer());
    }
    class_in_cohomology(c, d + 1, &z)
}
