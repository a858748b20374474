//! Dense integer matrices and Smith normal form with unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense matrix over ℤ, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|x| BigInt::from(*x)).collect();
        IntMat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(idx(k, j), idx(p, j));
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(k, k)] * &a[idx(i, j)] - &a[idx(i, k)] * &a[idx(k, j)];
                    a[idx(i, j)] = num / &prev;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        sign * a[idx(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i ← row_i + c·row_k
    fn add_row(&mut self, i: usize, k: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(i, j) + c * self.get(k, j);
            self.set(i, j, v);
        }
    }

    /// col_j ← col_j + c·col_k
    fn add_col(&mut self, j: usize, k: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, j) + c * self.get(i, k);
            self.set(i, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// U·M·V = D with U, V unimodular and D diagonal with dᵢ | dᵢ₊₁, dᵢ ≥ 0.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub u_inv: IntMat,
    pub v_inv: IntMat,
}

impl SnfResult {
    /// The positive diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with deterministic pivoting: the smallest-magnitude
/// nonzero entry of the working block, leftmost column then topmost row on
/// ties.
pub fn snf(m: &IntMat) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // row op on D: same on U; inverse op accumulated on U⁻¹ from the right.
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! row_add {
        ($i:expr, $k:expr, $c:expr) => {{
            let c: BigInt = $c;
            d.add_row($i, $k, &c);
            u.add_row($i, $k, &c);
            u_inv.add_col($k, $i, &(-&c));
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! col_add {
        ($j:expr, $k:expr, $c:expr) => {{
            let c: BigInt = $c;
            d.add_col($j, $k, &c);
            v.add_col($j, $k, &c);
            v_inv.add_row($k, $j, &(-&c));
        }};
    }

    let limit = rows.min(cols);
    for k in 0..limit {
        // deterministic pivot: (|value|, column, row) lexicographic minimum
        let find_pivot = |d: &IntMat| -> Option<(usize, usize)> {
            let mut best: Option<(BigInt, usize, usize)> = None;
            for j in k..cols {
                for i in k..rows {
                    let a = d.get(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    let mag = a.abs();
                    let better = match &best {
                        None => true,
                        Some((bm, bj, bi)) => (&mag, j, i) < (bm, *bj, *bi),
                    };
                    if better {
                        best = Some((mag, j, i));
                    }
                }
            }
            best.map(|(_, j, i)| (i, j))
        };

        // re-pivot until the block below/right of (k,k) is clean and divisible
        while let Some((pi, pj)) = find_pivot(&d) {
            row_swap!(k, pi);
            col_swap!(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if !d.get(i, k).is_zero() {
                    let q = d.get(i, k) / d.get(k, k);
                    row_add!(i, k, -q);
                    if !d.get(i, k).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !d.get(k, j).is_zero() {
                    let q = d.get(k, j) / d.get(k, k);
                    col_add!(j, k, -q);
                    if !d.get(k, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue; // smaller remainders exist; re-pivot
            }
            // enforce divisibility of the remaining block by the pivot
            let pivot = d.get(k, k).clone();
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    row_add!(k, i, BigInt::one());
                }
                None => break,
            }
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
    }
    SnfResult { u, d, v, u_inv, v_inv }
}

impl IntMat {
    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMat) {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U·M·V ≠ D for\n{m}");
        assert_eq!(s.u.mul(&s.u_inv), IntMat::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMat::identity(m.cols()));
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken: {f:?}");
        }
    }

    #[test]
    fn basic_examples() {
        let m = IntMat::from_rows(&[vec![2]]);
        assert_eq!(snf(&m).d.get(0, 0), &BigInt::from(2));
        check(&m);

        // diag(2,3) → diag(1,6)
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
        check(&m);

        let z = IntMat::zero(3, 2);
        assert!(snf(&z).d.is_zero());
        check(&z);
    }

    #[test]
    fn known_matrix() {
        let m = IntMat::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = snf(&m);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::one(), BigInt::from(3), BigInt::from(21)]
        );
        check(&m);
    }

    #[test]
    fn determinant() {
        let m = IntMat::from_rows(&[vec![2, 3], vec![1, 4]]);
        assert_eq!(m.det(), BigInt::from(5));
        let m = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), BigInt::from(-1));
        let m = IntMat::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(m.det(), BigInt::zero());
    }
}
