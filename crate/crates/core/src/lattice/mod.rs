//! Integer lattice tools on exponent vectors.
//!
//! A polynomial whose support spans an affine subspace of dimension `d < n`
//! is rewritten by a unimodular monomial change of variables `x = y^U` into
//! an honest `d`-variate polynomial with the same number of terms. The
//! change maps `ℝⁿ₊` onto itself and permutes the open orthants, so positive
//! and nonzero-orthant feasibility are both preserved.

mod matrix;
mod normal_form;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

pub use matrix::IntMatrix;
pub use normal_form::{hermite, smith, HermiteFactorization, SmithFactorization};

use crate::poly::{ExponentVector, SparsePolynomial};
use crate::Error;

/// Square integer matrix with determinant exactly `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMatrix(IntMatrix);

impl UnimodularMatrix {
    /// Checks the determinant exactly.
    pub fn new(m: IntMatrix) -> Result<Self, Error> {
        if !m.is_square() {
            return Err(Error::InvalidInput(
                "unimodular matrix must be square".into(),
            ));
        }
        let det = m.determinant();
        if det.abs().is_one() {
            Ok(UnimodularMatrix(m))
        } else {
            Err(Error::InvalidInput(alloc::format!(
                "determinant {det} is not ±1"
            )))
        }
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMatrix(IntMatrix::identity(n))
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

fn difference_matrix(support: &[ExponentVector], base: &ExponentVector) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = support
        .iter()
        .map(|a| {
            a.0.iter()
                .zip(&base.0)
                .map(|(x, y)| BigInt::from(*x) - *y)
                .collect()
        })
        .collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, base.len())
    } else {
        IntMatrix::from_rows(&rows)
    }
}

/// Dimension of the affine span of `support` (0 for a single point).
pub fn affine_dimension(support: &[ExponentVector]) -> usize {
    match support.first() {
        None => 0,
        Some(base) => difference_matrix(&support[1..], base).rank(),
    }
}

/// Output of [`reduce_to_honest`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HonestReduction {
    /// Honest polynomial in `dimension` variables.
    pub g: SparsePolynomial,
    /// Monomial change `x = y^U`, i.e. `x_j = Π_i y_i^{U_ij}`, so that
    /// `x^a = y^{U·a}`.
    pub u: UnimodularMatrix,
    pub dimension: usize,
    /// Exponent factored out before the change (zero vector when unchanged).
    pub base: ExponentVector,
}

/// Rewrites `f` as an honest polynomial in `d = affine_dimension(Supp f)`
/// variables.
///
/// With `a₁` the lexicographically smallest exponent, `f(y^U) =
/// y^{U·a₁}·g(y₁,…,y_d)`, where `U` is the Hermite transform that sends
/// every `aᵢ − a₁` into the first `d` coordinates. Honest input comes back
/// unchanged with `U = I`.
pub fn reduce_to_honest(f: &SparsePolynomial) -> Result<HonestReduction, Error> {
    let n = f.nvars();
    let support = f.support();
    let d = affine_dimension(&support);
    if d == n {
        return Ok(HonestReduction {
            g: f.clone(),
            u: UnimodularMatrix::identity(n),
            dimension: n,
            base: ExponentVector::zeros(n),
        });
    }
    let base = support
        .iter()
        .min_by(|a, b| a.0.cmp(&b.0))
        .cloned()
        .expect("d < n implies a nonempty support");
    let diffs = difference_matrix(&support, &base).transpose();
    let hf = hermite(&diffs);
    debug_assert_eq!(hf.rank(), d);
    let mut terms = Vec::with_capacity(f.len());
    for (col, t) in f.terms().iter().enumerate() {
        let mut e = Vec::with_capacity(d);
        for row in 0..d {
            e.push(hf.h[(row, col)].to_i64().ok_or(Error::ExponentOverflow)?);
        }
        terms.push((t.coeff.clone(), ExponentVector(e)));
    }
    let g = SparsePolynomial::new(d, terms)?;
    debug_assert_eq!(g.len(), f.len());
    Ok(HonestReduction {
        g,
        u: hf.u,
        dimension: d,
        base,
    })
}

/// Applies the monomial change `x = y^U` to a point `y`.
pub fn monomial_map(u: &UnimodularMatrix, y: &[BigRational]) -> Result<Vec<BigRational>, Error> {
    let m = u.as_matrix();
    let n = m.rows();
    if y.len() != n {
        return Err(Error::InvalidInput("point length mismatch".into()));
    }
    let mut x = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = BigRational::one();
        for (i, yi) in y.iter().enumerate() {
            let e = m[(i, j)].to_i32().ok_or(Error::ExponentOverflow)?;
            if e != 0 {
                if num_traits::Zero::is_zero(yi) && e < 0 {
                    return Err(Error::DivisionByZero);
                }
                v *= yi.pow(e);
            }
        }
        x.push(v);
    }
    Ok(x)
}

/// Sign data of the canonical form `γ + x₁ + … + x_ℓ − x_{ℓ+1} − … − xₙ`
/// of an honest `(n+1)`-nomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSimplex {
    pub ell: usize,
    pub gamma: BigRational,
    /// Whether `−f` rather than `f` was normalized.
    pub negated: bool,
    /// The positive-then-negative ordering of `a₂ − a₁, …` has negative
    /// determinant, so two same-sign terms would need swapping for an
    /// orientation-preserving change of variables. Not used downstream.
    pub orientation_swap: bool,
}

/// `ℓ` and `γ` for an honest `(n+1)`-nomial.
///
/// The basepoint `a₁` is the lexicographically smallest exponent; `f` is
/// multiplied by `sign(c₁)`, so `γ = |c₁|` and `ℓ` counts the remaining
/// coefficients that are then positive.
pub fn canonical_simplex_form(f: &SparsePolynomial) -> Result<CanonicalSimplex, Error> {
    let n = f.nvars();
    if f.len() != n + 1 {
        return Err(Error::WrongCardinality {
            expected: n + 1,
            found: f.len(),
        });
    }
    let support = f.support();
    let d = affine_dimension(&support);
    if d != n {
        return Err(Error::NotHonest {
            dimension: d,
            variables: n,
        });
    }
    let first = (0..f.len())
        .min_by(|&i, &j| support[i].0.cmp(&support[j].0))
        .expect("n + 1 ≥ 1 terms");
    let c1 = &f.terms()[first].coeff;
    let negated = c1.is_negative();
    let normalized = |c: &BigInt| if negated { -c } else { c.clone() };

    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for (i, t) in f.terms().iter().enumerate() {
        if i == first {
            continue;
        }
        if normalized(&t.coeff).is_positive() {
            positives.push(i);
        } else {
            negatives.push(i);
        }
    }
    let ell = positives.len();
    let order: Vec<usize> = positives.into_iter().chain(negatives).collect();
    let cols: Vec<ExponentVector> = order.iter().map(|&i| support[i].clone()).collect();
    let b = difference_matrix(&cols, &support[first]).transpose();
    let orientation_swap = n > 0 && b.determinant().is_negative();

    Ok(CanonicalSimplex {
        ell,
        gamma: BigRational::from_integer(c1.abs()),
        negated,
        orientation_swap,
    })
}
