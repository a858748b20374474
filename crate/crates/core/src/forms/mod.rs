//! Sparse graded-commutative algebra of differential forms over [`ScalarK`],
//! with an auxiliary path parameter t, matrix connections, curvature,
//! Chern–Weil forms and transgression.
//!
//! An [`AlgebraPresentation`] fixes a finite list of generators with degrees,
//! nilpotency exponents and differentials, and a top degree beyond which
//! every monomial vanishes.  The distinguished degree-0 path parameter t and
//! its differential dt (a degree-1 odd symbol with dt∧dt = 0) are built into
//! every presentation; they carry the affine path of connections used by the
//! transgression machinery.
//!
//! Monomials are kept in canonical order dt ∧ g₀^{e₀} ∧ g₁^{e₁} ∧ …, with the
//! Koszul sign rule: odd generators anticommute and square to zero.
//!
//! [`ScalarK`]: crate::scalars::ScalarK

mod form;
mod matrix;
mod transgress;

pub use form::Form;
pub use matrix::{
    bianchi_defect, ch_form, chern_k, chern_total, curvature, det_leibniz, det_one_plus,
    newton_class, pontryagin, ConnectionMatrix, FormMatrix,
};
pub use transgress::{transgress, TransgressSelector};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalars::ScalarK;

/// A generator of the algebra: name, form degree and nilpotency exponent
/// (the least power that vanishes).  Odd-degree generators always square to
/// zero; the exponent matters for even-degree and degree-0 generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    pub nilpotency: u32,
}

impl Generator {
    pub fn new(name: &str, degree: usize, nilpotency: u32) -> Self {
        Generator { name: name.to_string(), degree, nilpotency }
    }

    fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A canonical monomial dt^ε ∧ ∏ gᵢ^{eᵢ}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial {
    dt: bool,
    exps: Vec<u32>,
}

impl Monomial {
    fn unit(ngens: usize) -> Self {
        Monomial { dt: false, exps: vec![0; ngens] }
    }

    pub fn has_dt(&self) -> bool {
        self.dt
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }
}

/// Raw term list used to describe generator differentials before the
/// presentation exists: pairs of coefficient and exponent vector.
type RawForm = Vec<(ScalarK, Vec<u32>)>;

/// A finitely presented graded-commutative algebra with differential.
#[derive(Debug)]
pub struct AlgebraPresentation {
    generators: Vec<Generator>,
    top_degree: usize,
    differential: Vec<RawForm>,
}

impl AlgebraPresentation {
    /// Builds and validates a presentation.
    ///
    /// `differential` gives d(gᵢ) as a list of (coefficient, exponent vector)
    /// terms; an empty list means d(gᵢ) = 0.  Homogeneity of each d(gᵢ) in
    /// degree deg(gᵢ)+1 and d∘d = 0 on generators are checked here.
    pub fn new(
        generators: Vec<Generator>,
        top_degree: usize,
        differential: Vec<RawForm>,
    ) -> Result<Arc<Self>, Error> {
        if differential.len() != generators.len() {
            return Err(Error::BadPresentation(format!(
                "{} generators but {} differentials",
                generators.len(),
                differential.len()
            )));
        }
        let ngens = generators.len();
        for g in &generators {
            if g.nilpotency == 0 {
                return Err(Error::BadPresentation(format!(
                    "generator {} needs nilpotency exponent ≥ 1",
                    g.name
                )));
            }
        }
        for (i, terms) in differential.iter().enumerate() {
            for (_, exps) in terms {
                if exps.len() != ngens {
                    return Err(Error::BadPresentation(format!(
                        "d({}) term has {} exponents, expected {}",
                        generators[i].name,
                        exps.len(),
                        ngens
                    )));
                }
                let deg: usize =
                    exps.iter().zip(&generators).map(|(e, g)| *e as usize * g.degree).sum();
                if deg != generators[i].degree + 1 {
                    return Err(Error::BadPresentation(format!(
                        "d({}) term has degree {}, expected {}",
                        generators[i].name,
                        deg,
                        generators[i].degree + 1
                    )));
                }
            }
        }
        let pres = Arc::new(AlgebraPresentation { generators, top_degree, differential });
        for i in 0..ngens {
            let dg = pres.differential_of(&pres, i);
            if !dg.d().is_zero() {
                return Err(Error::BadPresentation(format!(
                    "d∘d ≠ 0 on generator {}",
                    pres.generators[i].name
                )));
            }
        }
        Ok(pres)
    }

    /// A presentation with all differentials zero.
    pub fn constants(generators: Vec<Generator>, top_degree: usize) -> Arc<Self> {
        let n = generators.len();
        Self::new(generators, top_degree, vec![Vec::new(); n])
            .expect("zero differentials are always consistent")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// d(gᵢ) as a form over this presentation.
    fn differential_of(&self, me: &Arc<Self>, i: usize) -> Form {
        let mut out = Form::zero(me.clone());
        for (c, exps) in &self.differential[i] {
            let m = Monomial { dt: false, exps: exps.clone() };
            out = out.add(&Form::from_monomial(me.clone(), m, c.clone()));
        }
        out
    }

    fn base_degree_of(&self, m: &Monomial) -> usize {
        m.exps.iter().zip(&self.generators).map(|(e, g)| *e as usize * g.degree).sum()
    }

    fn degree_of(&self, m: &Monomial) -> usize {
        self.base_degree_of(m) + usize::from(m.dt)
    }

    /// True when the monomial survives nilpotency and top-degree truncation.
    /// The cap applies to the base degree: dt lives on the cylinder [0,1]×M
    /// and contributes one degree above the top of M.
    fn admissible(&self, m: &Monomial) -> bool {
        if self.base_degree_of(m) > self.top_degree {
            return false;
        }
        m.exps.iter().zip(&self.generators).all(|(e, g)| {
            if g.is_odd() {
                *e <= 1
            } else {
                *e < g.nilpotency || *e == 0
            }
        })
    }

    /// Koszul sign for merging canonical words u·v.
    ///
    /// Every odd symbol of v crosses the odd symbols of u sitting at a later
    /// canonical position; each crossing contributes −1.  Returns `None` when
    /// an odd symbol (or dt) would appear twice.
    fn merge_sign(&self, u: &Monomial, v: &Monomial) -> Option<(Monomial, bool)> {
        if u.dt && v.dt {
            return None;
        }
        let parity = |idx: usize| -> u32 {
            if idx == 0 {
                1 // dt is odd
            } else {
                (self.generators[idx - 1].degree % 2) as u32
            }
        };
        let count = |m: &Monomial, idx: usize| -> u32 {
            if idx == 0 {
                u32::from(m.dt)
            } else {
                m.exps[idx - 1]
            }
        };
        let n = self.generators.len() + 1;
        let mut crossings: u64 = 0;
        let mut odd_suffix_u: u64 = 0; // odd symbols of u at position > j
        for j in (0..n).rev() {
            let vj = (count(v, j) * parity(j)) as u64;
            crossings += vj * odd_suffix_u;
            odd_suffix_u += (count(u, j) * parity(j)) as u64;
        }
        let merged = Monomial {
            dt: u.dt || v.dt,
            exps: u.exps.iter().zip(&v.exps).map(|(a, b)| a + b).collect(),
        };
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_odd() && merged.exps[i] > 1 {
                return None;
            }
        }
        Some((merged, crossings % 2 == 1))
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        if m.dt {
            parts.push("dt".to_string());
        }
        for (e, g) in m.exps.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("∧")
        }
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} (deg {})", g.name, g.degree)?;
        }
        write!(f, " | top {}⟩", self.top_degree)
    }
}

/// Wire format for presentations.
#[derive(Serialize, Deserialize)]
struct PresentationWire {
    generators: Vec<Generator>,
    top_degree: usize,
    /// generator name → list of terms {coeff, monomial (list of generator names)}
    differential: std::collections::BTreeMap<String, Vec<DiffTermWire>>,
}

#[derive(Serialize, Deserialize)]
struct DiffTermWire {
    coeff: ScalarK,
    monomial: Vec<String>,
}

impl AlgebraPresentation {
    pub fn from_json(json: &str) -> Result<Arc<Self>, Error> {
        let wire: PresentationWire = serde_json::from_str(json)?;
        let ngens = wire.generators.len();
        let name_index = |name: &str| {
            wire.generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| Error::BadPresentation(format!("unknown generator {name:?}")))
        };
        let mut differential = vec![Vec::new(); ngens];
        for (gen, terms) in &wire.differential {
            let gi = name_index(gen)?;
            for term in terms {
                let mut exps = vec![0u32; ngens];
                for name in &term.monomial {
                    exps[name_index(name)?] += 1;
                }
                differential[gi].push((term.coeff.clone(), exps));
            }
        }
        Self::new(wire.generators, wire.top_degree, differential)
    }

    pub fn to_json(&self) -> String {
        let mut differential = std::collections::BTreeMap::new();
        for (i, terms) in self.differential.iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let wire_terms = terms
                .iter()
                .map(|(c, exps)| {
                    let mut monomial = Vec::new();
                    for (j, e) in exps.iter().enumerate() {
                        for _ in 0..*e {
                            monomial.push(self.generators[j].name.clone());
                        }
                    }
                    DiffTermWire { coeff: c.clone(), monomial }
                })
                .collect();
            differential.insert(self.generators[i].name.clone(), wire_terms);
        }
        serde_json::to_string_pretty(&PresentationWire {
            generators: self.generators.clone(),
            top_degree: self.top_degree,
            differential,
        })
        .expect("presentation serializes")
    }
}
