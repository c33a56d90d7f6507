//! Test-side reference oracles, written without the library's decision code.
#![allow(dead_code)]

use circuit_feas::{BigInt, BigRational, SparsePolynomial};
use num_traits::{One, Pow, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Whether `c1 + c2 x^p + c3 x^q` (`0 < p < q`) has a root in `(0, ∞)`.
///
/// The only critical point satisfies `x^k = r` with `k = q − p` and
/// `r = −p c2 / (q c3)`, and there `f = (c2 k / q)(x^p − s)` with
/// `s = −c1 q / (c2 k)`. The sign of `x^p − s` follows from comparing `r^p`
/// with `s^k`.
pub fn trinomial_has_positive_root(c1: i64, c2: i64, c3: i64, p: u32, q: u32) -> bool {
    let at_zero = c1.signum();
    let at_inf = c3.signum();
    if at_zero != at_inf {
        return true;
    }
    let k = q - p;
    let r = rat(-(p as i64) * c2, q as i64 * c3);
    if !r.is_positive() {
        // Monotone on (0, ∞) and both ends share a sign.
        return false;
    }
    let s = rat(-c1 * q as i64, c2 * k as i64);
    let diff_sign = if !s.is_positive() {
        1
    } else {
        let lhs: BigRational = Pow::pow(&r, p);
        let rhs: BigRational = Pow::pow(&s, k);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    };
    let value_sign = diff_sign * c2.signum();
    value_sign == 0 || value_sign != at_zero
}

/// Whether the critical value of the trinomial is exactly zero.
pub fn trinomial_has_double_root(c1: i64, c2: i64, c3: i64, p: u32, q: u32) -> bool {
    let k = q - p;
    let r = rat(-(p as i64) * c2, q as i64 * c3);
    let s = rat(-c1 * q as i64, c2 * k as i64);
    r.is_positive() && s.is_positive() && Pow::pow(&r, p) == Pow::pow(&s, k)
}

pub fn trinomial(c1: i64, c2: i64, c3: i64, p: i64, q: i64) -> SparsePolynomial {
    SparsePolynomial::from_i64(1, &[(c1, &[0]), (c2, &[p]), (c3, &[q])]).unwrap()
}

/// `x^a` at a rational point, with negative exponents allowed.
pub fn monomial(point: &[BigRational], a: &[i64]) -> BigRational {
    let mut v = BigRational::one();
    for (x, &e) in point.iter().zip(a) {
        if e != 0 {
            v *= Pow::pow(x, e as i32);
        }
    }
    v
}

/// Evaluation term by term, independent of the library's evaluator.
pub fn eval(f: &SparsePolynomial, point: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for t in f.terms() {
        acc += BigRational::from(t.coeff.clone()) * monomial(point, &t.exponent.0);
    }
    acc
}
