//! Forms: sparse maps canonical monomial → polynomial in t over ScalarK.
//!
//! t is the degree-0 path parameter, dt its degree-1 differential; dt appears
//! at most to the first power in any monomial.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::scalars::{rat_int, Rational, ScalarK};

use super::{AlgebraPresentation, Monomial};

/// Polynomial in t with ScalarK coefficients. Invariant: no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(super) struct TPoly {
    coeffs: Vec<ScalarK>,
}

impl TPoly {
    pub(super) fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub(super) fn constant(c: ScalarK) -> Self {
        let mut p = TPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The polynomial t.
    pub(super) fn t() -> Self {
        TPoly { coeffs: vec![ScalarK::zero(), ScalarK::one()] }
    }

    /// The polynomial 1 − t.
    pub(super) fn one_minus_t() -> Self {
        TPoly { coeffs: vec![ScalarK::one(), ScalarK::from_int(-1)] }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ScalarK::is_zero) {
            self.coeffs.pop();
        }
    }

    pub(super) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(super) fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub(super) fn constant_part(&self) -> ScalarK {
        self.coeffs.first().cloned().unwrap_or_else(ScalarK::zero)
    }

    pub(super) fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(ScalarK::zero);
            let b = other.coeffs.get(k).cloned().unwrap_or_else(ScalarK::zero);
            coeffs.push(a.add(&b));
        }
        let mut p = TPoly { coeffs };
        p.trim();
        p
    }

    pub(super) fn neg(&self) -> Self {
        TPoly { coeffs: self.coeffs.iter().map(ScalarK::neg).collect() }
    }

    pub(super) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs = vec![ScalarK::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        let mut p = TPoly { coeffs };
        p.trim();
        p
    }

    pub(super) fn scale(&self, c: &ScalarK) -> Self {
        let mut p = TPoly { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() };
        p.trim();
        p
    }

    /// d/dt.
    pub(super) fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_rational(&rat_int(k as i64)))
            .collect();
        let mut p = TPoly { coeffs };
        p.trim();
        p
    }

    /// ∫₀¹ p(t) dt.
    pub(super) fn integrate_unit(&self) -> ScalarK {
        let mut acc = ScalarK::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&c.div_rational(&rat_int(k as i64 + 1)));
        }
        acc
    }

    /// Evaluation at a rational t.
    pub(super) fn eval(&self, t: &Rational) -> ScalarK {
        let mut acc = ScalarK::zero();
        let mut pow = Rational::one();
        for c in &self.coeffs {
            acc = acc.add(&c.scale_rational(&pow));
            pow *= t;
        }
        acc
    }
}

/// A differential form over an [`AlgebraPresentation`].
#[derive(Clone, Debug)]
pub struct Form {
    pres: Arc<AlgebraPresentation>,
    terms: BTreeMap<Monomial, TPoly>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pres, &other.pres) && self.terms == other.terms
    }
}

impl Eq for Form {}

impl Form {
    pub fn zero(pres: Arc<AlgebraPresentation>) -> Self {
        Form { pres, terms: BTreeMap::new() }
    }

    pub fn one(pres: Arc<AlgebraPresentation>) -> Self {
        Form::scalar(pres, ScalarK::one())
    }

    pub fn scalar(pres: Arc<AlgebraPresentation>, c: ScalarK) -> Self {
        let ngens = pres.generators().len();
        Form::from_monomial(pres, Monomial::unit(ngens), c)
    }

    /// The i-th generator as a form.
    pub fn generator(pres: Arc<AlgebraPresentation>, i: usize) -> Self {
        let ngens = pres.generators().len();
        let mut m = Monomial::unit(ngens);
        m.exps[i] = 1;
        Form::from_monomial(pres, m, ScalarK::one())
    }

    /// Generator by name; panics on unknown names.
    pub fn gen_named(pres: &Arc<AlgebraPresentation>, name: &str) -> Self {
        let i = pres
            .generator_index(name)
            .unwrap_or_else(|| panic!("unknown generator {name:?} in {pres}"));
        Form::generator(pres.clone(), i)
    }

    /// The path parameter t (degree 0).
    pub fn t(pres: Arc<AlgebraPresentation>) -> Self {
        let ngens = pres.generators().len();
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::unit(ngens), TPoly::t());
        Form { pres, terms }
    }

    /// The distinguished 1-form dt.
    pub fn dt(pres: Arc<AlgebraPresentation>) -> Self {
        let ngens = pres.generators().len();
        let m = Monomial { dt: true, exps: vec![0; ngens] };
        Form::from_monomial(pres, m, ScalarK::one())
    }

    pub(super) fn from_monomial(
        pres: Arc<AlgebraPresentation>,
        m: Monomial,
        c: ScalarK,
    ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && pres.admissible(&m) {
            terms.insert(m, TPoly::constant(c));
        }
        Form { pres, terms }
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.pres
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.pres, &other.pres),
            "forms over different presentations"
        );
    }

    fn insert(&mut self, m: Monomial, p: TPoly) {
        if p.is_zero() || !self.pres.admissible(&m) {
            return;
        }
        self.terms.insert(m, p);
    }

    fn add_term(&mut self, m: Monomial, p: TPoly) {
        if p.is_zero() || !self.pres.admissible(&m) {
            return;
        }
        match self.terms.get(&m) {
            Some(old) => {
                let sum = old.add(&p);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, p);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(m.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Form {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(m, p)| (m.clone(), p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ScalarK) -> Self {
        if c.is_zero() {
            return Form::zero(self.pres.clone());
        }
        let mut out = Form::zero(self.pres.clone());
        for (m, p) in &self.terms {
            out.insert(m.clone(), p.scale(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&ScalarK::from_rational(r.clone()))
    }

    pub(super) fn mul_tpoly(&self, q: &TPoly) -> Self {
        let mut out = Form::zero(self.pres.clone());
        for (m, p) in &self.terms {
            out.insert(m.clone(), p.mul(q));
        }
        out
    }

    /// Wedge product with the Koszul sign rule.
    pub fn wedge(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Form::zero(self.pres.clone());
        for (mu, pu) in &self.terms {
            for (mv, pv) in &other.terms {
                let Some((merged, negate)) = self.pres.merge_sign(mu, mv) else {
                    continue;
                };
                if !self.pres.admissible(&merged) {
                    continue;
                }
                let prod = pu.mul(pv);
                out.add_term(merged, if negate { prod.neg() } else { prod });
            }
        }
        out
    }

    /// Power under the wedge product.
    pub fn wedge_pow(&self, n: usize) -> Self {
        let mut acc = Form::one(self.pres.clone());
        for _ in 0..n {
            acc = acc.wedge(self);
        }
        acc
    }

    /// The exterior differential: graded Leibniz extension of the
    /// presentation's differential, with d(t) = dt and d(dt) = 0.
    pub fn d(&self) -> Self {
        let mut out = Form::zero(self.pres.clone());
        for (m, p) in &self.terms {
            // c'(t)·dt ∧ m
            let dp = p.derivative();
            if !dp.is_zero() && !m.dt {
                let with_dt = Monomial { dt: true, exps: m.exps.clone() };
                out.add_term(with_dt, dp);
            }
            // c(t)·d(m): one Leibniz term per generator occurrence
            let mut prefix_parity = u32::from(m.dt); // dt is odd and leftmost
            for (i, e) in m.exps.iter().enumerate() {
                let g = &self.pres.generators()[i];
                if *e > 0 && !self.pres.differential[i].is_empty() {
                    // split m = prefix ∧ g ∧ suffix with g's remaining power
                    // folded into the suffix (even g: all occurrences give
                    // the same sign, multiplicity e)
                    let mut prefix = Monomial { dt: m.dt, exps: vec![0; m.exps.len()] };
                    prefix.exps[..i].copy_from_slice(&m.exps[..i]);
                    let mut suffix = Monomial { dt: false, exps: vec![0; m.exps.len()] };
                    suffix.exps[i] = e - 1;
                    suffix.exps[i + 1..].copy_from_slice(&m.exps[i + 1..]);

                    let dg = self.pres.differential_of(&self.pres, i);
                    let mut term = Form::from_monomial(
                        self.pres.clone(),
                        prefix,
                        ScalarK::from_int(*e as i64),
                    )
                    .wedge(&dg)
                    .wedge(&Form::from_monomial(self.pres.clone(), suffix, ScalarK::one()));
                    if prefix_parity % 2 == 1 {
                        term = term.neg();
                    }
                    term = term.mul_tpoly(p);
                    out = out.add(&term);
                }
                prefix_parity += e * (g.degree % 2) as u32;
            }
        }
        out
    }

    /// The homogeneous component of the given total degree (dt counts 1).
    pub fn degree_part(&self, degree: usize) -> Self {
        let mut out = Form::zero(self.pres.clone());
        for (m, p) in &self.terms {
            if self.pres.degree_of(m) == degree {
                out.insert(m.clone(), p.clone());
            }
        }
        out
    }

    /// Degrees of the monomials present.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|m| self.pres.degree_of(m)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| self.pres.degree_of(m) == degree)
    }

    /// Restriction t ↦ t₀, dt ↦ 0.
    pub fn eval_t(&self, t0: &Rational) -> Self {
        let mut out = Form::zero(self.pres.clone());
        for (m, p) in &self.terms {
            if m.dt {
                continue;
            }
            out.add_term(m.clone(), TPoly::constant(p.eval(t0)));
        }
        out
    }

    /// Extracts the dt-component and integrates its t-polynomial over [0,1]:
    /// dt∧β(t) ↦ ∫₀¹ β(t) dt.  This is fiber integration over the path.
    pub fn integrate_dt(&self) -> Self {
        let mut out = Form::zero(self.pres.clone());
        for (m, p) in &self.terms {
            if !m.dt {
                continue;
            }
            let stripped = Monomial { dt: false, exps: m.exps.clone() };
            out.add_term(stripped, TPoly::constant(p.integrate_unit()));
        }
        out
    }

    /// True when no term involves t or dt.
    pub fn is_t_free(&self) -> bool {
        self.terms.iter().all(|(m, p)| !m.dt && p.is_constant())
    }

    /// The ScalarK coefficient of a monomial given by generator exponents
    /// (requires a t-constant coefficient).
    pub fn coefficient(&self, exps: &[u32]) -> ScalarK {
        let m = Monomial { dt: false, exps: exps.to_vec() };
        match self.terms.get(&m) {
            Some(p) => {
                assert!(p.is_constant(), "coefficient of {m:?} depends on t");
                p.constant_part()
            }
            None => ScalarK::zero(),
        }
    }

    /// Iterates (monomial, constant coefficient) for t-free forms.
    pub fn terms_t_free(&self) -> impl Iterator<Item = (&Monomial, ScalarK)> {
        self.terms.iter().map(|(m, p)| {
            assert!(!m.dt && p.is_constant(), "form involves t");
            (m, p.constant_part())
        })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = self.pres.format_monomial(m);
            if p.is_constant() {
                let c = p.constant_part();
                if mono == "1" {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})·{mono}")?;
                }
            } else {
                let coeffs: Vec<String> = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| if k == 0 { format!("{c}") } else { format!("({c})t^{k}") })
                    .collect();
                write!(f, "[{}]·{mono}", coeffs.join(" + "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Generator;
    use crate::scalars::rat;

    fn poly_plane() -> Arc<AlgebraPresentation> {
        // x, y degree-0 coordinates with dx, dy
        AlgebraPresentation::new(
            vec![
                Generator::new("x", 0, 5),
                Generator::new("y", 0, 5),
                Generator::new("dx", 1, 1),
                Generator::new("dy", 1, 1),
            ],
            4,
            vec![
                vec![(ScalarK::one(), vec![0, 0, 1, 0])],
                vec![(ScalarK::one(), vec![0, 0, 0, 1])],
                vec![],
                vec![],
            ],
        )
        .unwrap()
    }

    #[test]
    fn wedge_anticommutes_on_odd() {
        let p = poly_plane();
        let dx = Form::gen_named(&p, "dx");
        let dy = Form::gen_named(&p, "dy");
        assert_eq!(dx.wedge(&dy), dy.wedge(&dx).neg());
        assert!(dx.wedge(&dx).is_zero());
    }

    #[test]
    fn dt_squares_to_zero_and_t_commutes() {
        let p = poly_plane();
        let dt = Form::dt(p.clone());
        assert!(dt.wedge(&dt).is_zero());
        let t = Form::t(p.clone());
        let dx = Form::gen_named(&p, "dx");
        assert_eq!(t.wedge(&dx), dx.wedge(&t));
        assert_eq!(t.d(), dt);
        assert!(dt.d().is_zero());
    }

    #[test]
    fn leibniz_on_product() {
        let p = poly_plane();
        let x = Form::gen_named(&p, "x");
        let y = Form::gen_named(&p, "y");
        let dx = Form::gen_named(&p, "dx");
        let dy = Form::gen_named(&p, "dy");
        // d(x·y) = dx·y + x·dy
        let lhs = x.wedge(&y).d();
        let rhs = dx.wedge(&y).add(&x.wedge(&dy));
        assert_eq!(lhs, rhs);
        // d(x·dy) = dx∧dy
        assert_eq!(x.wedge(&dy).d(), dx.wedge(&dy));
        // d(t·x) = dt·x + t·dx  (Leibniz with dt)
        let t = Form::t(p.clone());
        let dt = Form::dt(p.clone());
        assert_eq!(t.wedge(&x).d(), dt.wedge(&x).add(&t.wedge(&dx)));
    }

    #[test]
    fn d_squared_zero_on_samples() {
        let p = poly_plane();
        let x = Form::gen_named(&p, "x");
        let y = Form::gen_named(&p, "y");
        let dx = Form::gen_named(&p, "dx");
        let dy = Form::gen_named(&p, "dy");
        let t = Form::t(p.clone());
        let samples = [
            x.wedge(&y).wedge(&dx),
            x.wedge(&x).wedge(&dy).scale_rational(&rat(3, 2)),
            t.wedge(&x).wedge(&dy).add(&y.wedge(&dx)),
            x.add(&y.wedge(&y)).wedge(&dx.add(&dy)),
        ];
        for s in samples {
            assert!(s.d().d().is_zero(), "d² ≠ 0 on {s}");
        }
    }

    #[test]
    fn top_degree_truncates() {
        // cap at base degree 2: x·dx∧dy survives, degree-3 monomials die,
        // and dt rides one degree above the cap
        let p = AlgebraPresentation::new(
            vec![
                Generator::new("x", 0, 5),
                Generator::new("dx", 1, 1),
                Generator::new("dy", 1, 1),
                Generator::new("dz", 1, 1),
            ],
            2,
            vec![vec![(ScalarK::one(), vec![0, 1, 0, 0])], vec![], vec![], vec![]],
        )
        .unwrap();
        let x = Form::gen_named(&p, "x");
        let dx = Form::gen_named(&p, "dx");
        let dy = Form::gen_named(&p, "dy");
        let dz = Form::gen_named(&p, "dz");
        let dt = Form::dt(p.clone());
        let vol = dx.wedge(&dy);
        assert!(!x.wedge(&vol).is_zero());
        assert!(vol.wedge(&dz).is_zero(), "base degree 3 exceeds the cap");
        assert!(!vol.wedge(&dt).is_zero(), "dt adds cylinder degree above the cap");
        assert!(vol.wedge(&dz).wedge(&dt).is_zero());
    }

    #[test]
    fn integrate_dt_extracts_and_integrates() {
        let p = poly_plane();
        let dt = Form::dt(p.clone());
        let t = Form::t(p.clone());
        let dx = Form::gen_named(&p, "dx");
        // ∫ dt∧(2t·dx) = dx
        let two_t = t.scale_rational(&rat(2, 1));
        let form = dt.wedge(&two_t.wedge(&dx));
        assert_eq!(form.integrate_dt(), dx);
        // no dt part → zero
        assert!(dx.integrate_dt().is_zero());
    }

    #[test]
    fn eval_t_endpoints() {
        let p = poly_plane();
        let t = Form::t(p.clone());
        let x = Form::gen_named(&p, "x");
        let one_minus_t = Form::one(p.clone()).sub(&t);
        let path = one_minus_t.wedge(&x); // (1−t)·x
        assert_eq!(path.eval_t(&rat(0, 1)), x);
        assert!(path.eval_t(&rat(1, 1)).is_zero());
    }
}
