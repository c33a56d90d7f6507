//! Polynomial encodings of 3-SAT.
//!
//! A variable `Xᵢ` becomes `xᵢ ∈ {1, 2}` (false, true), forced by
//! `b(x) = (x − 1)(x − 2)`. A clause becomes the product of one factor per
//! literal: `x − 2` for `Xᵢ`, `1 − x` for `¬Xᵢ`. The padding pairs
//! `(uᵢ − 1)(vᵢ − 1)` make the system square, and `t_M` pads the variable
//! count of the single-polynomial encodings.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{size_of, ExponentVector, SizeMetric, SparsePolynomial};
use crate::Error;

/// A 3-CNF formula. Literals are nonzero, 1-based, negative for negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    n: usize,
    clauses: Vec<[i64; 3]>,
}

fn binomial3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

impl SatInstance {
    pub fn new(n: usize, clauses: Vec<[i64; 3]>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidInput("at least one variable".into()));
        }
        for (k, c) in clauses.iter().enumerate() {
            let vars: Vec<u64> = c.iter().map(|l| l.unsigned_abs()).collect();
            if vars.iter().any(|&v| v == 0 || v > n as u64) {
                return Err(Error::InvalidInput(alloc::format!(
                    "clause {} has a literal out of range",
                    k + 1
                )));
            }
            if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
                return Err(Error::InvalidInput(alloc::format!(
                    "clause {} repeats a variable",
                    k + 1
                )));
            }
        }
        let big_n = clauses.len();
        if big_n < n.div_ceil(3) || big_n > 8 * binomial3(n) {
            return Err(Error::InvalidInput(alloc::format!(
                "{big_n} clauses over {n} variables is outside [⌈n/3⌉, 8·C(n,3)]"
            )));
        }
        Ok(SatInstance { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[[i64; 3]] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = assignment[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }

    /// Exhaustive search; fine for the small `n` used in verification.
    pub fn is_satisfiable(&self) -> bool {
        (0..1u64 << self.n).any(|mask| {
            let a: Vec<bool> = (0..self.n).map(|i| mask >> i & 1 == 1).collect();
            self.is_satisfied_by(&a)
        })
    }
}

/// Polynomials sharing one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSystem {
    pub nvars: usize,
    pub polynomials: Vec<SparsePolynomial>,
}

impl PolynomialSystem {
    pub fn term_count(&self) -> usize {
        self.polynomials.iter().map(SparsePolynomial::len).sum()
    }

    /// Sum of the sizes of the polynomials, each written over only the
    /// variables it uses.
    pub fn size(&self) -> SizeMetric {
        SizeMetric(
            self.polynomials
                .iter()
                .map(|p| size_of(&compact(p)).0)
                .sum(),
        )
    }
}

/// `p` over its occurring variables only.
fn compact(p: &SparsePolynomial) -> SparsePolynomial {
    let occ = p.occurring_variables();
    let terms = p.terms().iter().map(|t| {
        (
            t.coeff.clone(),
            ExponentVector(occ.iter().map(|&k| t.exponent.0[k]).collect()),
        )
    });
    SparsePolynomial::new(
        occ.len().max(1),
        terms.map(|(c, mut e)| {
            if e.0.is_empty() {
                e.0.push(0);
            }
            (c, e)
        }),
    )
    .expect("consistent lengths")
}

fn mul(a: &SparsePolynomial, b: &SparsePolynomial) -> SparsePolynomial {
    let n = a.nvars();
    let mut terms = Vec::with_capacity(a.len() * b.len());
    for s in a.terms() {
        for t in b.terms() {
            let e: Vec<i64> = s
                .exponent
                .0
                .iter()
                .zip(&t.exponent.0)
                .map(|(x, y)| x + y)
                .collect();
            terms.push((&s.coeff * &t.coeff, ExponentVector(e)));
        }
    }
    SparsePolynomial::new(n, terms).expect("same variable count")
}

fn add(a: &SparsePolynomial, b: &SparsePolynomial) -> SparsePolynomial {
    let terms = a
        .terms()
        .iter()
        .chain(b.terms())
        .map(|t| (t.coeff.clone(), t.exponent.clone()));
    SparsePolynomial::new(a.nvars(), terms).expect("same variable count")
}

/// `Σ coeff · x_var^exp` terms as a polynomial in `n` variables.
fn poly(n: usize, terms: &[(i64, &[(usize, i64)])]) -> SparsePolynomial {
    SparsePolynomial::new(
        n,
        terms.iter().map(|(c, vars)| {
            let mut e = alloc::vec![0i64; n];
            for &(v, k) in vars.iter() {
                e[v] += k;
            }
            (BigInt::from(*c), ExponentVector(e))
        }),
    )
    .expect("valid shape")
}

/// Moves `p` into `n` variables, sending variable `k` to `map[k]`.
fn embed(p: &SparsePolynomial, n: usize, map: impl Fn(usize) -> usize) -> SparsePolynomial {
    SparsePolynomial::new(
        n,
        p.terms().iter().map(|t| {
            let mut e = alloc::vec![0i64; n];
            for (k, &x) in t.exponent.0.iter().enumerate() {
                if x != 0 {
                    e[map(k)] += x;
                }
            }
            (t.coeff.clone(), ExponentVector(e))
        }),
    )
    .expect("valid shape")
}

fn literal_factor(n: usize, lit: i64) -> SparsePolynomial {
    let v = (lit.unsigned_abs() - 1) as usize;
    if lit > 0 {
        poly(n, &[(1, &[(v, 1)]), (-2, &[])])
    } else {
        poly(n, &[(1, &[]), (-1, &[(v, 1)])])
    }
}

fn b_poly(n: usize, v: usize) -> SparsePolynomial {
    poly(n, &[(1, &[(v, 2)]), (-3, &[(v, 1)]), (2, &[])])
}

/// The `4N` clause polynomials over `x₁, …, xₙ`: for each clause the
/// product of its literal factors followed by `b` of its three variables.
fn clause_polynomials(inst: &SatInstance) -> Vec<SparsePolynomial> {
    let n = inst.n;
    let mut out = Vec::with_capacity(4 * inst.clauses.len());
    for c in &inst.clauses {
        let prod = c
            .iter()
            .map(|&l| literal_factor(n, l))
            .reduce(|a, b| mul(&a, &b))
            .expect("three literals");
        out.push(prod);
        for &l in c {
            out.push(b_poly(n, (l.unsigned_abs() - 1) as usize));
        }
    }
    out
}

/// `F_B`: `8N − n` polynomials in `x`, `u`, `v` (`8N − n` variables).
pub fn build_fb_system(inst: &SatInstance) -> Result<PolynomialSystem, Error> {
    let n = inst.n;
    let big_n = inst.clauses.len();
    let pad = 4 * big_n - n;
    let total = n + 2 * pad;
    let mut polys: Vec<SparsePolynomial> = clause_polynomials(inst)
        .iter()
        .map(|p| embed(p, total, |k| k))
        .collect();
    for i in 0..pad {
        let (u, v) = (n + i, n + pad + i);
        polys.push(poly(
            total,
            &[
                (1, &[(u, 1), (v, 1)]),
                (-1, &[(u, 1)]),
                (-1, &[(v, 1)]),
                (1, &[]),
            ],
        ));
    }
    Ok(PolynomialSystem {
        nvars: total,
        polynomials: polys,
    })
}

/// `t_M(z) = 1 + z₁^{M+1} + … + z_M^{M+1} − (M+1) z₁⋯z_M`.
pub fn build_tm(m: usize) -> Result<SparsePolynomial, Error> {
    if m == 0 {
        return Err(Error::InvalidInput("t_M needs M ≥ 1".into()));
    }
    let top = m as i64 + 1;
    let mut terms = Vec::with_capacity(m + 2);
    terms.push((BigInt::one(), ExponentVector::zeros(m)));
    for i in 0..m {
        let mut e = alloc::vec![0i64; m];
        e[i] = top;
        terms.push((BigInt::one(), ExponentVector(e)));
    }
    terms.push((-BigInt::from(top), ExponentVector(alloc::vec![1; m])));
    SparsePolynomial::new(m, terms)
}

/// `⌈(max(0, k) + 2)^{1/ε}⌉` for rational `0 < ε ≤ 1`.
pub fn padding_count(k: i64, epsilon: &BigRational, cap: usize) -> Result<usize, Error> {
    if !epsilon.is_positive() || *epsilon > BigRational::one() {
        return Err(Error::InvalidInput("ε must lie in (0, 1]".into()));
    }
    let base = BigUint::from((k.max(0) + 2) as u64);
    // (base)^{q/p} with ε = p/q
    let p = epsilon
        .numer()
        .to_u32()
        .ok_or_else(|| Error::InvalidInput("ε numerator too large".into()))?;
    let q = epsilon
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidInput("ε denominator too large".into()))?;
    // Reject early when even the floor bound exceeds the cap.
    let power = num_traits::Pow::pow(&base, q);
    let mut root = power.nth_root(p);
    if num_traits::Pow::pow(&root, p) < power {
        root += 1u32;
    }
    match root.to_usize() {
        Some(m) if m <= cap => Ok(m),
        _ => Err(Error::ResourceLimit(alloc::format!(
            "M = {root} exceeds the cap of {cap}"
        ))),
    }
}

fn square(p: &SparsePolynomial) -> SparsePolynomial {
    mul(p, p)
}

fn sum_of_squares(inst: &SatInstance, total: usize) -> SparsePolynomial {
    clause_polynomials(inst)
        .iter()
        .map(|p| embed(&square(p), total, |k| k))
        .fold(SparsePolynomial::zero(total), |acc, p| add(&acc, &p))
}

/// `g_B(x, z) = Σ fᵢ² + t_M(z)` with `M = ⌈(max(0, 42N − n) + 2)^{1/ε}⌉`.
pub fn build_gb(
    inst: &SatInstance,
    epsilon: &BigRational,
    cap_m: usize,
) -> Result<SparsePolynomial, Error> {
    let m = padding_count(
        42 * inst.clauses.len() as i64 - inst.n as i64,
        epsilon,
        cap_m,
    )?;
    let total = inst.n + m;
    let t = embed(&build_tm(m)?, total, |k| inst.n + k);
    Ok(add(&sum_of_squares(inst, total), &t))
}

/// As [`build_gb`] with `t_M(z₁², …, z_M²)`.
pub fn build_hb(
    inst: &SatInstance,
    epsilon: &BigRational,
    cap_m: usize,
) -> Result<SparsePolynomial, Error> {
    let m = padding_count(
        42 * inst.clauses.len() as i64 - inst.n as i64,
        epsilon,
        cap_m,
    )?;
    let total = inst.n + m;
    let t = build_tm(m)?;
    let t_sq = SparsePolynomial::new(
        m,
        t.terms().iter().map(|tm| {
            (
                tm.coeff.clone(),
                ExponentVector(tm.exponent.0.iter().map(|e| 2 * e).collect()),
            )
        }),
    )?;
    let t = embed(&t_sq, total, |k| inst.n + k);
    Ok(add(&sum_of_squares(inst, total), &t))
}

/// `f_B = f₁ + λ₁f₂ + … + λ_{K−1}f_K + λ_K t_M(z)` with `K = 8N − n`,
/// variables ordered `x, u, v, λ, z` and `M = ⌈(max(0, 17N − 2n) + 2)^{1/ε}⌉`.
pub fn build_fb(
    inst: &SatInstance,
    epsilon: &BigRational,
    cap_m: usize,
) -> Result<SparsePolynomial, Error> {
    let system = build_fb_system(inst)?;
    let k = system.nvars;
    let m = padding_count(
        17 * inst.clauses.len() as i64 - 2 * inst.n as i64,
        epsilon,
        cap_m,
    )?;
    let total = 2 * k + m;
    let lambda = |i: usize| poly(total, &[(1, &[(k + i, 1)])]);
    let mut acc = embed(&system.polynomials[0], total, |j| j);
    for (i, p) in system.polynomials.iter().enumerate().skip(1) {
        acc = add(&acc, &mul(&lambda(i - 1), &embed(p, total, |j| j)));
    }
    let t = embed(&build_tm(m)?, total, |j| 2 * k + j);
    Ok(add(&acc, &mul(&lambda(k - 1), &t)))
}

/// Whether `g` has a zero on `{1, 2}ⁿ × {1}^{rest}` exactly when the
/// formula is satisfiable (`n ≤ 10`).
pub fn verify_sat_equivalence(inst: &SatInstance, g: &SparsePolynomial) -> Result<bool, Error> {
    if inst.n > 10 {
        return Err(Error::ResourceLimit(
            "verification enumerates at most 10 variables".into(),
        ));
    }
    if g.nvars() < inst.n {
        return Err(Error::InvalidInput(
            "polynomial has fewer variables than the formula".into(),
        ));
    }
    let mut point = alloc::vec![BigInt::one(); g.nvars()];
    let mut has_root = false;
    for mask in 0..1u64 << inst.n {
        for (i, x) in point.iter_mut().enumerate().take(inst.n) {
            *x = BigInt::from(1 + (mask >> i & 1) as i64);
        }
        if g.evaluate_at_integer(&point)?.is_zero() {
            has_root = true;
            break;
        }
    }
    Ok(has_root == inst.is_satisfiable())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_clause() -> SatInstance {
        SatInstance::new(3, alloc::vec![[1, 2, 3]]).unwrap()
    }

    #[test]
    fn fb_shape() {
        let s = build_fb_system(&one_clause()).unwrap();
        assert_eq!(s.nvars, 5);
        assert_eq!(s.polynomials.len(), 5);
        assert_eq!(s.term_count(), 21);
        let pt: Vec<BigInt> = [2, 1, 1, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        for p in &s.polynomials {
            assert!(p.evaluate_at_integer(&pt).unwrap().is_zero());
        }
    }

    #[test]
    fn tm_small() {
        let t = build_tm(1).unwrap();
        assert_eq!(
            t,
            SparsePolynomial::from_i64(1, &[(1, &[0]), (-2, &[1]), (1, &[2])]).unwrap()
        );
    }

    #[test]
    fn padding_counts() {
        let one = BigRational::one();
        assert_eq!(padding_count(42 - 3, &one, 4096).unwrap(), 41);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(padding_count(1, &half, 4096).unwrap(), 9);
        assert!(matches!(
            padding_count(1000, &half, 4096),
            Err(Error::ResourceLimit(_))
        ));
        assert!(padding_count(1, &BigRational::from_integer(2.into()), 10).is_err());
    }

    #[test]
    fn gb_roots_match_satisfiability() {
        let b = one_clause();
        let g = build_gb(&b, &BigRational::one(), 4096).unwrap();
        assert_eq!(g.nvars(), 3 + 41);
        assert!(verify_sat_equivalence(&b, &g).unwrap());
        let mut pt = alloc::vec![BigInt::one(); g.nvars()];
        pt[0] = BigInt::from(2);
        assert!(g.evaluate_at_integer(&pt).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_clauses() {
        assert!(SatInstance::new(3, alloc::vec![[1, 1, 2]]).is_err());
        assert!(SatInstance::new(3, alloc::vec![[1, 2, 4]]).is_err());
        assert!(SatInstance::new(6, alloc::vec![[1, 2, 3]]).is_err());
    }
}
