//! Smith normal form over the integers.
//!
//! Convention: `U · A · V = D`, with `U`, `V` unimodular and `D` diagonal,
//! `d₁ | d₂ | … | d_rank`, all positive, the remaining diagonal zero.
//! Pivots are chosen as the entry of smallest nonzero absolute value in the
//! remaining block, ties broken in row-major order, so the output is a
//! deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int_matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries `d₁ | … | d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Diagonal entry `i`, zero past the end of the diagonal.
    pub fn diagonal(&self, i: usize) -> BigInt {
        if i < self.d.rows().min(self.d.cols()) {
            self.d.get(i, i).clone()
        } else {
            BigInt::zero()
        }
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }
    fn row_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.row_axpy(dst, src, f);
        self.u.row_axpy(dst, src, f);
        self.u_inv.col_axpy(src, dst, &-f);
    }
    fn col_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.col_axpy(dst, src, f);
        self.v.col_axpy(dst, src, f);
        self.v_inv.row_axpy(src, dst, &-f);
    }
    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, k) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(k),
        v_inv: IntMatrix::identity(k),
    };
    let mut rank = 0;
    for t in 0..m.min(k) {
        if w.a.max_abs_is_zero_from(t) {
            break;
        }
        loop {
            let (pi, pj) = smallest_entry(&w.a, t);
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.a.get(t, t).clone();
            let mut remainder = false;
            for i in t + 1..m {
                let x = w.a.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let (q, r) = x.div_rem(&pivot);
                w.row_axpy(i, t, &-q);
                remainder |= !r.is_zero();
            }
            for j in t + 1..k {
                let x = w.a.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let (q, r) = x.div_rem(&pivot);
                w.col_axpy(j, t, &-q);
                remainder |= !r.is_zero();
            }
            if remainder {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..k).any(|j| !w.a.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = bad_row {
                w.row_axpy(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        rank += 1;
    }
    SmithDecomposition { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv, rank }
}

fn smallest_entry(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a.get(i, j).is_zero() {
                continue;
            }
            let v = a.abs_at(i, j);
            if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                best = Some((v, i, j));
            }
        }
    }
    let (_, i, j) = best.expect("nonzero block has a pivot");
    (i, j)
}

/// Basis (as columns) of the integer kernel `{x ∈ ℤᵏ : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let k = a.cols();
    let cols: Vec<Vec<BigInt>> = (s.rank..k).map(|j| s.v.column(j)).collect();
    IntMatrix::from_columns(k, &cols)
}

/// Some integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    solve_with(&smith_normal_form(a), b)
}

/// Solves `A·x = b` reusing a precomputed decomposition of `A`.
pub fn solve_with(s: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); s.v.rows()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank {
            let d = s.d.get(i, i);
            if !c.is_multiple_of(d) {
                return None;
            }
            y[i] = c / d;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}
