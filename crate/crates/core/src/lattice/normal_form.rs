//! Hermite and Smith normal forms with explicit unimodular transforms.
//!
//! Both use extended-gcd row/column combinations over `BigInt`, so the
//! transforms stay unimodular at every step.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{xgcd, IntMatrix};
use super::UnimodularMatrix;

/// `U·M = H` with `H` in row Hermite normal form.
///
/// `H` is in row echelon form; each pivot is positive and every entry above
/// a pivot lies in `[0, pivot)`. Zero rows sit at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteFactorization {
    pub u: UnimodularMatrix,
    pub h: IntMatrix,
}

impl HermiteFactorization {
    /// `(row, column)` of every pivot, top to bottom.
    pub fn pivots(&self) -> Vec<(usize, usize)> {
        let h = &self.h;
        let mut out = Vec::new();
        for i in 0..h.rows() {
            if let Some(j) = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.pivots().len()
    }
}

/// `U·M·V = S` with `S` diagonal, nonnegative, and `sᵢ | sᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithFactorization {
    pub u: UnimodularMatrix,
    pub v: UnimodularMatrix,
    pub s: IntMatrix,
}

impl SmithFactorization {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

pub fn hermite(m: &IntMatrix) -> HermiteFactorization {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            if !a.is_zero() && b.is_multiple_of(&a) {
                let q = -(&b / &a);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                continue;
            }
            let (g, s, t) = xgcd(&a, &b);
            let p = -(&b / &g);
            let q = &a / &g;
            h.combine_rows(r, i, &s, &t, &p, &q);
            u.combine_rows(r, i, &s, &t, &p, &q);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for k in 0..r {
            let q = h[(k, c)].div_floor(&pivot);
            if !q.is_zero() {
                let neg = -q;
                h.add_row_multiple(k, r, &neg);
                u.add_row_multiple(k, r, &neg);
            }
        }
        r += 1;
    }
    HermiteFactorization {
        u: UnimodularMatrix::new(u).expect("row transform is unimodular by construction"),
        h,
    }
}

pub fn smith(m: &IntMatrix) -> SmithFactorization {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, v, s);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = true;
            while dirty {
                dirty = false;
                for i in t + 1..rows {
                    if s[(i, t)].is_zero() {
                        continue;
                    }
                    let (a, b) = (s[(t, t)].clone(), s[(i, t)].clone());
                    if b.is_multiple_of(&a) {
                        let q = -(&b / &a);
                        s.add_row_multiple(i, t, &q);
                        u.add_row_multiple(i, t, &q);
                    } else {
                        let (g, x, y) = xgcd(&a, &b);
                        let (p, q) = (-(&b / &g), &a / &g);
                        s.combine_rows(t, i, &x, &y, &p, &q);
                        u.combine_rows(t, i, &x, &y, &p, &q);
                    }
                }
                for j in t + 1..cols {
                    if s[(t, j)].is_zero() {
                        continue;
                    }
                    let (a, b) = (s[(t, t)].clone(), s[(t, j)].clone());
                    if b.is_multiple_of(&a) {
                        let q = -(&b / &a);
                        s.add_col_multiple(j, t, &q);
                        v.add_col_multiple(j, t, &q);
                    } else {
                        let (g, x, y) = xgcd(&a, &b);
                        let (p, q) = (-(&b / &g), &a / &g);
                        s.combine_cols(t, j, &x, &y, &p, &q);
                        v.combine_cols(t, j, &x, &y, &p, &q);
                        dirty = true;
                    }
                }
            }

            // Pivot must divide the whole trailing block.
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, v, s)
}

fn finish(u: IntMatrix, v: IntMatrix, s: IntMatrix) -> SmithFactorization {
    SmithFactorization {
        u: UnimodularMatrix::new(u).expect("row transform is unimodular by construction"),
        v: UnimodularMatrix::new(v).expect("column transform is unimodular by construction"),
        s,
    }
}
