//! Shared helpers for the integration suites: seeded random generators for
//! sparse connections, scalars and Fourier data, plus the independent SNF
//! oracle via determinantal divisors.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use chernweil::deligne::Fourier;
use chernweil::forms::{AlgebraPresentation, Form, FormMatrix, Generator};
use chernweil::homology::IntMat;
use chernweil::scalars::{rat, GaussRat, ScalarK};

/// Exterior algebra Λ(a, b, c) with three closed degree-1 generators.
pub fn exterior3() -> Arc<AlgebraPresentation> {
    AlgebraPresentation::constants(
        vec![Generator::new("a", 1, 1), Generator::new("b", 1, 1), Generator::new("c", 1, 1)],
        3,
    )
}

/// Four polynomial coordinates x, y, u, v with their differentials.
pub fn poly4() -> Arc<AlgebraPresentation> {
    AlgebraPresentation::new(
        vec![
            Generator::new("x", 0, 4),
            Generator::new("y", 0, 4),
            Generator::new("u", 0, 4),
            Generator::new("v", 0, 4),
            Generator::new("dx", 1, 1),
            Generator::new("dy", 1, 1),
            Generator::new("du", 1, 1),
            Generator::new("dv", 1, 1),
        ],
        6,
        vec![
            vec![(ScalarK::one(), vec![0, 0, 0, 0, 1, 0, 0, 0])],
            vec![(ScalarK::one(), vec![0, 0, 0, 0, 0, 1, 0, 0])],
            vec![(ScalarK::one(), vec![0, 0, 0, 0, 0, 0, 1, 0])],
            vec![(ScalarK::one(), vec![0, 0, 0, 0, 0, 0, 0, 1])],
            vec![],
            vec![],
            vec![],
            vec![],
        ],
    )
    .expect("consistent presentation")
}

pub fn random_rational(rng: &mut StdRng) -> chernweil::Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_scalar(rng: &mut StdRng) -> ScalarK {
    let mut out = ScalarK::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let c = GaussRat::new(random_rational(rng), random_rational(rng));
        out = out.add(&ScalarK::from_coeff(rng.gen_range(-1..=1), c));
    }
    out
}

/// A random sparse degree-1 form: a combination of the degree-1 generators,
/// each optionally multiplied by a degree-0 coordinate when one exists.
pub fn random_one_form(pres: &Arc<AlgebraPresentation>, rng: &mut StdRng) -> Form {
    let gens = pres.generators();
    let one_forms: Vec<usize> =
        (0..gens.len()).filter(|i| gens[*i].degree == 1).collect();
    let functions: Vec<usize> =
        (0..gens.len()).filter(|i| gens[*i].degree == 0).collect();
    let mut acc = Form::zero(pres.clone());
    for &i in &one_forms {
        if rng.gen_bool(0.5) {
            continue;
        }
        let mut term = Form::generator(pres.clone(), i).scale(&random_scalar(rng));
        if !functions.is_empty() && rng.gen_bool(0.5) {
            let f = functions[rng.gen_range(0..functions.len())];
            term = Form::generator(pres.clone(), f).wedge(&term);
        }
        acc = acc.add(&term);
    }
    acc
}

/// A random sparse connection matrix of the given rank.
pub fn random_connection(
    pres: &Arc<AlgebraPresentation>,
    rank: usize,
    rng: &mut StdRng,
) -> FormMatrix {
    let mut a = FormMatrix::zero(pres.clone(), rank);
    for i in 0..rank {
        for j in 0..rank {
            a.set(i, j, random_one_form(pres, rng));
        }
    }
    a
}

pub fn random_fourier2(rng: &mut StdRng, modes: usize) -> Fourier<2> {
    let mut f = Fourier::zero();
    for _ in 0..modes {
        let k = [rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        f = f.add(&Fourier::mode(k, random_scalar(rng)));
    }
    f
}

pub fn random_fourier1(rng: &mut StdRng, modes: usize) -> Fourier<1> {
    let mut f = Fourier::zero();
    for _ in 0..modes {
        f = f.add(&Fourier::mode([rng.gen_range(-3..=3)], random_scalar(rng)));
    }
    f
}

pub fn random_int_matrix(rng: &mut StdRng, max_dim: usize, max_entry: i64) -> IntMat {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-max_entry..=max_entry)).collect())
        .collect();
    IntMat::from_rows(&rows)
}

/// Determinantal-divisor oracle for the Smith normal form: the product
/// d₁ ⋯ dₖ of invariant factors equals the gcd of all k×k minors.
pub fn determinantal_divisors(m: &IntMat) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    let mut divisors = Vec::new();
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                let mut sub = IntMat::zero(k, k);
                for (si, &i) in rows.iter().enumerate() {
                    for (sj, &j) in cols.iter().enumerate() {
                        sub.set(si, sj, m.get(i, j).clone());
                    }
                }
                g = g.gcd(&sub.det());
            }
        }
        divisors.push(g);
    }
    divisors
}

/// Invariant factors from the determinantal divisors: dₖ = gₖ/g_{k−1},
/// stopping at the first zero divisor (rank boundary).
pub fn invariant_factors_oracle(m: &IntMat) -> Vec<BigInt> {
    let divisors = determinantal_divisors(m);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for g in divisors {
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
