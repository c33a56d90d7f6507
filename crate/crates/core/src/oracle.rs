//! Brute-force checks used to cross-examine the deciders.
//!
//! Sampling can prove feasibility (an exact zero, or two points of opposite
//! sign in a connected box) but never infeasibility; that needs the
//! one-sign coefficient certificate. Univariate inputs also get an exact
//! Sturm count.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::SparsePolynomial;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Zero(Vec<BigRational>),
    /// `f` is positive at the first point and negative at the second.
    SignChange(Vec<BigRational>, Vec<BigRational>),
}

impl Witness {
    /// Re-evaluates the witness exactly.
    pub fn verify(&self, f: &SparsePolynomial) -> Result<bool, Error> {
        Ok(match self {
            Witness::Zero(p) => f.evaluate_at_rational(p)?.is_zero(),
            Witness::SignChange(p, q) => {
                f.evaluate_at_rational(p)?.is_positive() && f.evaluate_at_rational(q)?.is_negative()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    FeasibleWitness(Witness),
    InfeasibleExhausted,
    Inconclusive,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn floor_log2(x: &BigRational) -> i64 {
    let (n, d) = (x.numer().magnitude(), x.denom().magnitude());
    let mut k = n.bits() as i64 - d.bits() as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let pow = |k: i64| {
        if k >= 0 {
            num_traits::Pow::pow(&two, k as u64)
        } else {
            num_traits::Pow::pow(&two, (-k) as u64).recip()
        }
    };
    while pow(k) > *x {
        k -= 1;
    }
    while pow(k + 1) <= *x {
        k += 1;
    }
    k
}

/// About `count` points spread geometrically over `[lo, hi] ⊂ (0, ∞)`:
/// each octave `[2^k, 2^{k+1}]` gets evenly spaced dyadic points, plus the
/// endpoints and 1 when it lies inside.
fn geometric_points(lo: &BigRational, hi: &BigRational, count: usize) -> Vec<BigRational> {
    let (klo, khi) = (floor_log2(lo), floor_log2(hi));
    let octaves = (khi - klo + 1) as usize;
    let per = count.div_ceil(octaves).max(1) as i64;
    let mut pts = alloc::vec![lo.clone(), hi.clone()];
    if lo <= &BigRational::one() && &BigRational::one() <= hi {
        pts.push(BigRational::one());
    }
    for k in klo..=khi {
        let base = if k >= 0 {
            rat(1 << k.min(62), 1)
        } else {
            rat(1, 1 << (-k).min(62))
        };
        for j in 0..per {
            let x = &base * rat(per + j, per);
            if &x >= lo && &x <= hi {
                pts.push(x);
            }
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

fn axis_points(lo: &BigRational, hi: &BigRational, count: usize) -> Vec<BigRational> {
    if lo.is_positive() {
        geometric_points(lo, hi, count)
    } else if hi.is_negative() {
        let mut v: Vec<BigRational> = geometric_points(&-hi, &-lo, count)
            .into_iter()
            .map(|x| -x)
            .collect();
        v.sort();
        v
    } else {
        let steps = count.max(2) as i64 - 1;
        let mut v: Vec<BigRational> = (0..=steps)
            .map(|j| lo + (hi - lo) * rat(j, steps))
            .collect();
        for special in [BigRational::zero(), BigRational::one(), -BigRational::one()] {
            if &special >= lo && &special <= hi {
                v.push(special);
            }
        }
        v.sort();
        v.dedup();
        v
    }
}

fn census<I>(f: &SparsePolynomial, points: I) -> Result<Option<Witness>, Error>
where
    I: IntoIterator<Item = Vec<BigRational>>,
{
    let mut pos: Option<Vec<BigRational>> = None;
    let mut neg: Option<Vec<BigRational>> = None;
    for p in points {
        let v = f.evaluate_at_rational(&p)?;
        match v.cmp(&BigRational::zero()) {
            Ordering::Equal => return Ok(Some(Witness::Zero(p))),
            Ordering::Greater if pos.is_none() => pos = Some(p),
            Ordering::Less if neg.is_none() => neg = Some(p),
            _ => {}
        }
        if let (Some(a), Some(b)) = (&pos, &neg) {
            return Ok(Some(Witness::SignChange(a.clone(), b.clone())));
        }
    }
    Ok(None)
}

fn exhausted_or_inconclusive(f: &SparsePolynomial, in_open_orthant: bool) -> OracleVerdict {
    if in_open_orthant && f.coefficients_same_sign() {
        OracleVerdict::InfeasibleExhausted
    } else {
        OracleVerdict::Inconclusive
    }
}

/// Sign scan of a univariate `f` over `[lo, hi] ⊂ (0, ∞)` on about `grid`
/// geometrically spaced points.
pub fn univariate_sign_scan(
    f: &SparsePolynomial,
    lo: &BigRational,
    hi: &BigRational,
    grid: usize,
) -> Result<OracleVerdict, Error> {
    if f.nvars() != 1 {
        return Err(Error::InvalidInput(
            "sign scan needs a univariate polynomial".into(),
        ));
    }
    if !lo.is_positive() || lo >= hi || grid < 2 {
        return Err(Error::InvalidInput(
            "scan interval must satisfy 0 < lo < hi".into(),
        ));
    }
    let pts = geometric_points(lo, hi, grid);
    Ok(match census(f, pts.into_iter().map(|x| alloc::vec![x]))? {
        Some(w) => OracleVerdict::FeasibleWitness(w),
        None => exhausted_or_inconclusive(f, true),
    })
}

/// Sign census of `f` on a product grid over `bounds` (at most 4 axes).
pub fn grid_sample(
    f: &SparsePolynomial,
    bounds: &[(BigRational, BigRational)],
    per_axis: usize,
) -> Result<OracleVerdict, Error> {
    let n = f.nvars();
    if bounds.len() != n || n > 4 {
        return Err(Error::InvalidInput(
            "grid sampling needs one interval per variable, n ≤ 4".into(),
        ));
    }
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Err(Error::InvalidInput("empty box".into()));
    }
    if f.has_negative_exponents()
        && bounds
            .iter()
            .any(|(lo, hi)| !lo.is_positive() && !hi.is_negative())
    {
        return Err(Error::InvalidInput("box meets a pole".into()));
    }
    let axes: Vec<Vec<BigRational>> = bounds
        .iter()
        .map(|(lo, hi)| axis_points(lo, hi, per_axis))
        .collect();
    let total: usize = axes.iter().map(Vec::len).product();
    let points = (0..total).map(|mut idx| {
        axes.iter()
            .map(|axis| {
                let x = axis[idx % axis.len()].clone();
                idx /= axis.len();
                x
            })
            .collect::<Vec<_>>()
    });
    let positive_box = bounds.iter().all(|(lo, _)| lo.is_positive());
    Ok(match census(f, points)? {
        Some(w) => OracleVerdict::FeasibleWitness(w),
        None => exhausted_or_inconclusive(f, positive_box),
    })
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
type Dense = Vec<BigRational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `f / x^k` as a dense polynomial with nonzero constant term.
fn dense_positive_part(f: &SparsePolynomial) -> Result<Dense, Error> {
    if f.nvars() != 1 {
        return Err(Error::InvalidInput("univariate polynomial expected".into()));
    }
    let exps: Vec<i64> = f.terms().iter().map(|t| t.exponent.0[0]).collect();
    let Some(&low) = exps.iter().min() else {
        return Ok(Vec::new());
    };
    let high = *exps.iter().max().expect("nonempty");
    let mut p = alloc::vec![BigRational::zero(); (high - low + 1) as usize];
    for t in f.terms() {
        p[(t.exponent.0[0] - low) as usize] = BigRational::from_integer(t.coeff.clone());
    }
    Ok(p)
}

fn derivative(p: &Dense) -> Dense {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let q = r.last().expect("nonempty") / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn sign_changes(values: impl Iterator<Item = Ordering>) -> usize {
    let mut last = None;
    let mut count = 0;
    for s in values.filter(|s| *s != Ordering::Equal) {
        if last.is_some_and(|l| l != s) {
            count += 1;
        }
        last = Some(s);
    }
    count
}

/// Number of distinct roots in `(0, ∞)` of a dense polynomial with
/// nonzero constant term, by Sturm's theorem.
fn sturm_positive(p: &Dense) -> usize {
    if p.len() < 2 {
        return 0;
    }
    let mut seq = alloc::vec![p.clone(), derivative(p)];
    loop {
        let k = seq.len();
        if seq[k - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = rem(&seq[k - 2], &seq[k - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let zero = BigRational::zero();
    let at_zero = sign_changes(seq.iter().map(|q| q[0].cmp(&zero)));
    let at_inf = sign_changes(seq.iter().map(|q| q.last().expect("nonzero").cmp(&zero)));
    at_zero - at_inf
}

/// Distinct positive real roots of a univariate polynomial.
pub fn positive_root_count(f: &SparsePolynomial) -> Result<usize, Error> {
    Ok(sturm_positive(&dense_positive_part(f)?))
}

/// Whether `f` has a repeated root in `(0, ∞)`.
pub fn has_positive_multiple_root(f: &SparsePolynomial) -> Result<bool, Error> {
    let p = dense_positive_part(f)?;
    let g = gcd(&p, &derivative(&p));
    Ok(sturm_positive(&g) > 0)
}
