//! Circuits: supports of `d + 2` points spanning dimension `d`.
//!
//! The affine relation `Σ bᵢ aᵢ = 0, Σ bᵢ = 0` is read off from the signed
//! maximal minors of `Â = [1 … 1; a₁ … a_{d+2}]`. For a non-degenerate
//! circuit the 𝒜-discriminant is, up to a monomial, `Π (cᵢ/bᵢ)^{bᵢ} − 1`;
//! for a degenerate one it is identically 1.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{product_compare, products_equal, SignedProduct};
use crate::lattice::{affine_dimension, IntMatrix};
use crate::poly::{ExponentVector, SparsePolynomial};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircuitKind {
    NonDegenerateCircuit,
    DegenerateCircuit,
    /// The points span `d < n`; `b` is still the affine relation.
    NotHonest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitData {
    pub kind: CircuitKind,
    /// Primitive affine relation, first nonzero entry positive.
    pub b: Vec<BigInt>,
    /// gcd of the signed maximal minors.
    pub beta: BigInt,
    /// Indices with `bᵢ ≠ 0`.
    pub subcircuit: Vec<usize>,
    /// The unique negative (or unique positive) entry of `b`, if any.
    pub interior_index: Option<usize>,
}

impl CircuitData {
    pub fn is_degenerate(&self) -> bool {
        self.kind == CircuitKind::DegenerateCircuit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiscriminantSign {
    Negative,
    Zero,
    Positive,
    Undefined,
}

impl DiscriminantSign {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => DiscriminantSign::Negative,
            Ordering::Equal => DiscriminantSign::Zero,
            Ordering::Greater => DiscriminantSign::Positive,
        }
    }
}

/// Rows of `Â` that already have full row rank `d + 1`: the row of ones
/// followed by coordinates chosen greedily.
fn independent_rows(support: &[ExponentVector], d: usize) -> IntMatrix {
    let n = support[0].len();
    let mut rows: Vec<Vec<BigInt>> = alloc::vec![alloc::vec![BigInt::one(); support.len()]];
    for k in 0..n {
        if rows.len() == d + 1 {
            break;
        }
        let mut candidate = rows.clone();
        candidate.push(support.iter().map(|a| BigInt::from(a.0[k])).collect());
        if IntMatrix::from_rows(&candidate).rank() == candidate.len() {
            rows = candidate;
        }
    }
    IntMatrix::from_rows(&rows)
}

fn without_column(m: &IntMatrix, j: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

pub fn classify_circuit(support: &[ExponentVector]) -> Result<CircuitData, Error> {
    let Some(first) = support.first() else {
        return Err(Error::WrongCardinality {
            expected: 2,
            found: 0,
        });
    };
    let n = first.len();
    if support.iter().any(|a| a.len() != n) {
        return Err(Error::InvalidInput(
            "exponent vectors of different lengths".into(),
        ));
    }
    let d = affine_dimension(support);
    if support.len() != d + 2 {
        return Err(Error::WrongCardinality {
            expected: d + 2,
            found: support.len(),
        });
    }

    let a_hat = independent_rows(support, d);
    let mut minors: Vec<BigInt> = (0..support.len())
        .map(|j| {
            let det = without_column(&a_hat, j).determinant();
            if j % 2 == 1 {
                -det
            } else {
                det
            }
        })
        .collect();
    let beta = minors.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    debug_assert!(beta.is_positive(), "rank d + 1 forces a nonzero minor");
    let flip = minors
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in &mut minors {
        *x /= &beta;
        if flip {
            *x = -core::mem::take(x);
        }
    }
    let b = minors;

    let subcircuit: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
    let kind = if d < n {
        CircuitKind::NotHonest
    } else if subcircuit.len() < b.len() {
        CircuitKind::DegenerateCircuit
    } else {
        CircuitKind::NonDegenerateCircuit
    };
    let negatives: Vec<usize> = subcircuit
        .iter()
        .copied()
        .filter(|&i| b[i].is_negative())
        .collect();
    let positives: Vec<usize> = subcircuit
        .iter()
        .copied()
        .filter(|&i| b[i].is_positive())
        .collect();
    let interior_index = if negatives.len() == 1 {
        Some(negatives[0])
    } else if positives.len() == 1 {
        Some(positives[0])
    } else {
        None
    };
    Ok(CircuitData {
        kind,
        b,
        beta,
        subcircuit,
        interior_index,
    })
}

fn honest_circuit(f: &SparsePolynomial) -> Result<CircuitData, Error> {
    let n = f.nvars();
    if f.len() != n + 2 {
        return Err(Error::WrongCardinality {
            expected: n + 2,
            found: f.len(),
        });
    }
    let c = classify_circuit(&f.support())?;
    if c.kind == CircuitKind::NotHonest {
        return Err(Error::NotHonest {
            dimension: f.len() - 2,
            variables: n,
        });
    }
    Ok(c)
}

/// `(Num, Den)` with `Π (cᵢ/bᵢ)^{bᵢ} = Num/Den`.
pub(crate) fn discriminant_products(b: &[BigInt], c: &[BigInt]) -> (SignedProduct, SignedProduct) {
    let mut num = SignedProduct::one();
    let mut den = SignedProduct::one();
    for (bi, ci) in b.iter().zip(c) {
        let e: BigUint = bi.magnitude().clone();
        match bi.sign() {
            num_bigint::Sign::Plus => {
                num.push(ci.clone(), e.clone())
                    .expect("nonzero coefficient");
                den.push(bi.clone(), e).expect("nonzero b");
            }
            num_bigint::Sign::Minus => {
                num.push(bi.clone(), e.clone()).expect("nonzero b");
                den.push(ci.clone(), e).expect("nonzero coefficient");
            }
            num_bigint::Sign::NoSign => {}
        }
    }
    (num, den)
}

/// Whether `Δ_𝒜(c) = 0`. Degenerate circuits have `Δ ≡ 1`.
pub fn adisc_vanishes(f: &SparsePolynomial) -> Result<bool, Error> {
    let data = honest_circuit(f)?;
    if data.is_degenerate() {
        return Ok(false);
    }
    let (num, den) = discriminant_products(&data.b, &f.coefficients());
    Ok(products_equal(&num, &den))
}

/// All `sign(bᵢcᵢ)` over the subcircuit agree.
pub fn signs_coherent(b: &[BigInt], c: &[BigInt]) -> bool {
    let mut signs = b
        .iter()
        .zip(c)
        .filter(|(bi, _)| !bi.is_zero())
        .map(|(bi, ci)| bi.sign() == ci.sign());
    match signs.next() {
        None => true,
        Some(s) => signs.all(|t| t == s),
    }
}

/// Sign of `Π (cᵢ/bᵢ)^{bᵢ} − 1`.
///
/// With `geometric` set the answer is `Undefined` unless all `sign(bᵢcᵢ)`
/// agree, since only then does a zero of `Δ` mean a degenerate positive
/// root. Degenerate circuits give `Undefined` (`Δ ≡ 1`).
pub fn adisc_sign(f: &SparsePolynomial, geometric: bool) -> Result<DiscriminantSign, Error> {
    let data = honest_circuit(f)?;
    if data.is_degenerate() {
        return Ok(DiscriminantSign::Undefined);
    }
    let c = f.coefficients();
    if geometric && !signs_coherent(&data.b, &c) {
        return Ok(DiscriminantSign::Undefined);
    }
    let (num, den) = discriminant_products(&data.b, &c);
    let mut o = product_compare(&num, &den);
    if den.sign() == Ordering::Less {
        o = o.reverse();
    }
    Ok(DiscriminantSign::from_ordering(o))
}

/// Simplices of a triangulation, each as point indices.
pub type Triangulation = Vec<Vec<usize>>;

/// The two triangulations: `T₊ = {𝒜∖{aᵢ} : bᵢ > 0}`, `T₋ = {𝒜∖{aᵢ} : bᵢ < 0}`,
/// each simplex given by its point indices.
pub fn circuit_triangulations(c: &CircuitData) -> Result<(Triangulation, Triangulation), Error> {
    if c.kind == CircuitKind::NotHonest {
        return Err(Error::InvalidInput(
            "triangulations need an honest circuit".into(),
        ));
    }
    let m = c.b.len();
    let simplex = |i: usize| (0..m).filter(|&k| k != i).collect::<Vec<_>>();
    let plus = (0..m)
        .filter(|&i| c.b[i].is_positive())
        .map(simplex)
        .collect();
    let minus = (0..m)
        .filter(|&i| c.b[i].is_negative())
        .map(simplex)
        .collect();
    Ok((plus, minus))
}
