//! Smith normal form over the integers with recorded transforms.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, `d_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` diagonal entries.
    pub diagonal: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

/// Smith normal form of a `rows x cols` matrix (rows given as vectors of
/// length `cols`).
pub fn smith_normal_form(m: &Matrix, cols: usize) -> SmithForm {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let k = rows.min(cols);

    fn swap_cols(a: &mut Matrix, i: usize, j: usize) {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
    // row_dst -= q * row_src
    fn sub_row(a: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
        let src_row = a[src].clone();
        for (x, y) in a[dst].iter_mut().zip(src_row.iter()) {
            *x -= q * y;
        }
    }
    fn sub_col(a: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
        for row in a.iter_mut() {
            let y = row[src].clone();
            row[dst] -= q * y;
        }
    }

    for t in 0..k {
        // smallest non-zero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let pivot = a[t][t].clone();
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&pivot);
                    sub_row(&mut a, i, t, &q);
                    sub_row(&mut u, i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&pivot);
                    sub_col(&mut a, j, t, &q);
                    sub_col(&mut v, j, t, &q);
                }
            }
            // a smaller remainder in the pivot row or column takes over
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if !a[i][t].is_zero() && smaller.is_none_or(|(si, sj)| a[i][t].abs() < a[si][sj].abs()) {
                    smaller = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && smaller.is_none_or(|(si, sj)| a[t][j].abs() < a[si][sj].abs()) {
                    smaller = Some((t, j));
                }
            }
            if let Some((si, sj)) = smaller {
                if si != t {
                    a.swap(t, si);
                    u.swap(t, si);
                } else {
                    swap_cols(&mut a, t, sj);
                    swap_cols(&mut v, t, sj);
                }
                continue;
            }
            // enforce divisibility of the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    sub_row(&mut a, t, i, &minus_one);
                    sub_row(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..k).map(|i| a[i][i].clone()).collect();
    SmithForm { diagonal, u, v }
}

/// Invariant factors of the cokernel `Z^cols / rowspace(M)`: diagonal
/// entries other than 1, followed by a 0 for each free summand.
pub fn invariant_factors(m: &Matrix, cols: usize) -> Vec<BigInt> {
    let snf = smith_normal_form(m, cols);
    let mut out: Vec<BigInt> = snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
    let free = cols.saturating_sub(m.len());
    out.extend(vec![BigInt::zero(); free]);
    out
}

/// Order of the cokernel, `0` when infinite.
pub fn cokernel_order(m: &Matrix, cols: usize) -> BigInt {
    invariant_factors(m, cols).iter().fold(BigInt::one(), |acc, d| acc * d)
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
