//! Smith normal form against the determinantal-divisor oracle on random
//! small integer matrices, plus unimodularity and divisibility checks.

mod common;

use chernweil::homology::{snf, IntMat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{invariant_factors_oracle, random_int_matrix};

fn verify_one(m: &IntMat) {
    let s = snf(m);
    // U·M·V = D
    assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U·M·V ≠ D:\n{m}");
    // unimodularity
    assert_eq!(s.u.det().abs(), BigInt::one(), "U not unimodular");
    assert_eq!(s.v.det().abs(), BigInt::one(), "V not unimodular");
    // diagonal, nonnegative, divisibility chain
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d.get(i, j).is_zero(), "off-diagonal entry:\n{}", s.d);
            }
        }
    }
    let factors = s.invariant_factors();
    for w in factors.windows(2) {
        assert!((&w[1] % &w[0]).is_zero(), "chain broken: {factors:?}");
    }
    // the independent oracle: gcds of k×k minors
    assert_eq!(factors, invariant_factors_oracle(m), "oracle mismatch:\n{m}");
}

#[test]
fn snf_against_determinantal_oracle_500_matrices() {
    let mut rng = StdRng::seed_from_u64(0x5f5f);
    for _ in 0..500 {
        let m = random_int_matrix(&mut rng, 4, 9);
        verify_one(&m);
    }
}

#[test]
fn snf_edge_shapes() {
    verify_one(&IntMat::zero(3, 5));
    verify_one(&IntMat::identity(4));
    verify_one(&IntMat::from_rows(&[vec![0, 0, 7]]));
    verify_one(&IntMat::from_rows(&[vec![4], vec![6], vec![10]]));
    verify_one(&IntMat::from_rows(&[vec![2, 4], vec![6, 8]]));
}
