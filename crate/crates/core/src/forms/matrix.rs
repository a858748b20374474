//! Square matrices of forms: connections, curvature and characteristic
//! forms.
//!
//! Curvature is kept raw, R = dA + A∧A; the 1/(2πi) normalization enters the
//! Chern and Chern-character forms only through τ⁻¹.

use std::sync::Arc;

use crate::error::Error;
use crate::scalars::{rat_int, Rational, ScalarK};

use super::form::Form;
use super::AlgebraPresentation;

/// A square matrix of forms over one presentation.
#[derive(Clone, Debug)]
pub struct FormMatrix {
    pres: Arc<AlgebraPresentation>,
    size: usize,
    entries: Vec<Form>, // row-major
}

impl PartialEq for FormMatrix {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pres, &other.pres)
            && self.size == other.size
            && self.entries == other.entries
    }
}

impl Eq for FormMatrix {}

/// A matrix A of degree-1 forms presenting the connection ∇ = d + A.
pub type ConnectionMatrix = FormMatrix;

impl FormMatrix {
    pub fn zero(pres: Arc<AlgebraPresentation>, size: usize) -> Self {
        let entries = (0..size * size).map(|_| Form::zero(pres.clone())).collect();
        FormMatrix { pres, size, entries }
    }

    pub fn identity(pres: Arc<AlgebraPresentation>, size: usize) -> Self {
        let mut m = Self::zero(pres.clone(), size);
        for i in 0..size {
            m.set(i, i, Form::one(pres.clone()));
        }
        m
    }

    pub fn from_entries(pres: Arc<AlgebraPresentation>, size: usize, entries: Vec<Form>) -> Self {
        assert_eq!(entries.len(), size * size, "need size² entries");
        for e in &entries {
            assert!(Arc::ptr_eq(e.presentation(), &pres), "mixed presentations");
        }
        FormMatrix { pres, size, entries }
    }

    /// 1×1 matrix.
    pub fn scalar_matrix(form: Form) -> Self {
        let pres = form.presentation().clone();
        FormMatrix { pres, size: 1, entries: vec![form] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.pres
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Form) {
        assert!(Arc::ptr_eq(f.presentation(), &self.pres), "mixed presentations");
        self.entries[i * self.size + j] = f;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        FormMatrix { pres: self.pres.clone(), size: self.size, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FormMatrix {
            pres: self.pres.clone(),
            size: self.size,
            entries: self.entries.iter().map(Form::neg).collect(),
        }
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        FormMatrix {
            pres: self.pres.clone(),
            size: self.size,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub(super) fn mul_tpoly(&self, q: &super::form::TPoly) -> Self {
        FormMatrix {
            pres: self.pres.clone(),
            size: self.size,
            entries: self.entries.iter().map(|e| e.mul_tpoly(q)).collect(),
        }
    }

    /// Matrix product with wedge multiplication of entries.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zero(self.pres.clone(), n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Form::zero(self.pres.clone());
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).wedge(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Entrywise exterior differential.
    pub fn d(&self) -> Self {
        FormMatrix {
            pres: self.pres.clone(),
            size: self.size,
            entries: self.entries.iter().map(Form::d).collect(),
        }
    }

    pub fn trace(&self) -> Form {
        let mut acc = Form::zero(self.pres.clone());
        for i in 0..self.size {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// Block direct sum.
    pub fn block_sum(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.pres, &other.pres), "mixed presentations");
        let n = self.size + other.size;
        let mut out = Self::zero(self.pres.clone(), n);
        for i in 0..self.size {
            for j in 0..self.size {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.size {
            for j in 0..other.size {
                out.set(self.size + i, self.size + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn eval_t(&self, t0: &Rational) -> Self {
        FormMatrix {
            pres: self.pres.clone(),
            size: self.size,
            entries: self.entries.iter().map(|e| e.eval_t(t0)).collect(),
        }
    }
}

/// Curvature R = dA + A∧A of the connection ∇ = d + A.
pub fn curvature(a: &ConnectionMatrix) -> FormMatrix {
    a.d().add(&a.mul(a))
}

/// The Bianchi defect dR + A∧R − R∧A; identically zero for R = curvature(A).
pub fn bianchi_defect(a: &ConnectionMatrix, r: &FormMatrix) -> FormMatrix {
    r.d().add(&a.mul(r)).sub(&r.mul(a))
}

fn check_even_positive(phi: &FormMatrix) -> Result<(), Error> {
    for i in 0..phi.size() {
        for j in 0..phi.size() {
            for deg in phi.get(i, j).degrees() {
                if deg == 0 || deg % 2 != 0 {
                    return Err(Error::NonEvenEntry(deg));
                }
            }
        }
    }
    Ok(())
}

/// det(1 + Φ) = exp(Tr log(1 + Φ)) for a matrix Φ of positive even-degree
/// (hence nilpotent) forms; a finite sum.
pub fn det_one_plus(phi: &FormMatrix) -> Result<Form, Error> {
    check_even_positive(phi)?;
    // log(1+Φ) = Σ (−1)^{n−1} Φⁿ/n, truncated once Φⁿ = 0
    let mut log = FormMatrix::zero(phi.presentation().clone(), phi.size());
    let mut power = phi.clone();
    let mut n = 1i64;
    while !power.is_zero() {
        let coeff = ScalarK::from_rational(Rational::new(
            (if n % 2 == 1 { 1 } else { -1 }).into(),
            n.into(),
        ));
        log = log.add(&power.scale(&coeff));
        power = power.mul(phi);
        n += 1;
    }
    let tr = log.trace();
    // exp of an even nilpotent form
    let mut acc = Form::one(phi.presentation().clone());
    let mut term = Form::one(phi.presentation().clone());
    let mut k = 1i64;
    loop {
        term = term.wedge(&tr).scale_rational(&Rational::new(1.into(), k.into()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
        k += 1;
    }
    Ok(acc)
}

/// Leibniz-expansion determinant of (1 + Φ); the independent route used to
/// cross-check [`det_one_plus`].  Entries of even degree commute, so the
/// product order is immaterial.
pub fn det_leibniz(phi: &FormMatrix) -> Form {
    let n = phi.size();
    let one = Form::one(phi.presentation().clone());
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = Form::zero(phi.presentation().clone());
    // Heap's algorithm over permutations with explicit parity tracking
    fn visit(
        phi: &FormMatrix,
        one: &Form,
        perm: &mut Vec<usize>,
        k: usize,
        parity: bool,
        acc: &mut Form,
    ) {
        let n = perm.len();
        if k == n {
            let mut prod = Form::one(phi.presentation().clone());
            for (i, &j) in perm.iter().enumerate() {
                let mut entry = phi.get(i, j).clone();
                if i == j {
                    entry = entry.add(one);
                }
                prod = prod.wedge(&entry);
                if prod.is_zero() {
                    break;
                }
            }
            *acc = if parity { acc.sub(&prod) } else { acc.add(&prod) };
            return;
        }
        for idx in k..n {
            perm.swap(k, idx);
            visit(phi, one, perm, k + 1, parity ^ (idx != k), acc);
            perm.swap(k, idx);
        }
    }
    visit(phi, &one, &mut perm, 0, false, &mut acc);
    acc
}

/// The total Chern form det(1 − τ⁻¹R).
pub fn chern_total(r: &FormMatrix) -> Result<Form, Error> {
    det_one_plus(&r.scale(&ScalarK::tau_pow(-1).neg()))
}

/// The k-th Chern form: the degree-2k part of the total Chern form.
pub fn chern_k(r: &FormMatrix, k: usize) -> Result<Form, Error> {
    Ok(chern_total(r)?.degree_part(2 * k))
}

/// The Chern character form Tr exp(−τ⁻¹R); a finite sum by nilpotency.
pub fn ch_form(r: &FormMatrix) -> Result<Form, Error> {
    let phi = r.scale(&ScalarK::tau_pow(-1).neg());
    check_even_positive(&phi)?;
    let rank = ScalarK::from_int(phi.size() as i64);
    let mut acc = Form::scalar(phi.presentation().clone(), rank);
    let mut power = phi.clone();
    let mut inv_factorial = Rational::new(1.into(), 1.into());
    let mut n = 1i64;
    while !power.is_zero() {
        acc = acc.add(&power.trace().scale_rational(&inv_factorial));
        power = power.mul(&phi);
        n += 1;
        inv_factorial /= rat_int(n);
    }
    Ok(acc)
}

/// The Newton class sₙ = n!·ch_{2n}.
pub fn newton_class(r: &FormMatrix, n: usize) -> Result<Form, Error> {
    let mut fact = Rational::new(1.into(), 1.into());
    for j in 1..=n {
        fact *= rat_int(j as i64);
    }
    Ok(ch_form(r)?.degree_part(2 * n).scale_rational(&fact))
}

/// The Pontryagin form pₖ = (−1)ᵏ c_{2k} of a complexified real connection.
pub fn pontryagin(r_complexified: &FormMatrix, k: usize) -> Result<Form, Error> {
    let c2k = chern_k(r_complexified, 2 * k)?;
    Ok(if k % 2 == 1 { c2k.neg() } else { c2k })
}
