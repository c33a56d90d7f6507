//! Sparse integer polynomials: data model, exact evaluation and bit size.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::Error;

/// Integer exponent vector of one monomial.
///
/// Ordered graded-lexicographically: total degree first, then the entries
/// left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zeros(n: usize) -> Self {
        ExponentVector(alloc::vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    fn degree(&self) -> i128 {
        self.0.iter().map(|&e| e as i128).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub exponent: ExponentVector,
}

/// A polynomial `Σ cᵢ x^{aᵢ}` with nonzero integer coefficients and
/// pairwise distinct exponent vectors, stored in graded-lex order.
///
/// The zero polynomial (no terms) is representable; it only arises from
/// restricting to coordinate subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: Vec<Term>,
}

impl SparsePolynomial {
    /// Builds a normalized polynomial: duplicate exponents are combined and
    /// zero coefficients dropped. Every exponent must have length `nvars`.
    pub fn new<I>(nvars: usize, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (BigInt, ExponentVector)>,
    {
        let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (c, a) in terms {
            if a.len() != nvars {
                return Err(Error::InvalidInput(alloc::format!(
                    "exponent vector of length {} in a {}-variate polynomial",
                    a.len(),
                    nvars
                )));
            }
            *acc.entry(a).or_insert_with(BigInt::zero) += c;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, coeff)| Term { coeff, exponent })
            .collect();
        Ok(SparsePolynomial { nvars, terms })
    }

    /// Convenience constructor from small integer data.
    pub fn from_i64(nvars: usize, terms: &[(i64, &[i64])]) -> Result<Self, Error> {
        Self::new(
            nvars,
            terms
                .iter()
                .map(|(c, a)| (BigInt::from(*c), ExponentVector(a.to_vec()))),
        )
    }

    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    pub fn coefficients(&self) -> Vec<BigInt> {
        self.terms.iter().map(|t| t.coeff.clone()).collect()
    }

    /// `true` when all coefficients share one sign (vacuously for zero).
    pub fn coefficients_same_sign(&self) -> bool {
        let mut signs = self.terms.iter().map(|t| t.coeff.sign());
        match signs.next() {
            None => true,
            Some(first) => signs.all(|s| s == first),
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.iter().any(|t| !t.exponent.is_nonnegative())
    }

    /// Variables that occur with a nonzero exponent in some term.
    pub fn occurring_variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.iter().any(|t| t.exponent.0[i] != 0))
            .collect()
    }

    pub fn neg(&self) -> Self {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    exponent: t.exponent.clone(),
                })
                .collect(),
        }
    }

    /// Exact value at a rational point.
    pub fn evaluate_at_rational(&self, point: &[BigRational]) -> Result<BigRational, Error> {
        if point.len() != self.nvars {
            return Err(Error::InvalidInput(alloc::format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for t in &self.terms {
            let mut tn = t.coeff.clone();
            let mut td = BigInt::one();
            for (x, &e) in point.iter().zip(&t.exponent.0) {
                if e == 0 {
                    continue;
                }
                let (p, q) = (x.numer(), x.denom());
                if e > 0 {
                    tn *= Pow::pow(p, e as u64);
                    td *= Pow::pow(q, e as u64);
                } else {
                    if p.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    let k = e.unsigned_abs();
                    tn *= Pow::pow(q, k);
                    td *= Pow::pow(p, k);
                }
            }
            // num/den + tn/td
            num = num * &td + tn * &den;
            den *= td;
        }
        Ok(BigRational::new(num, den))
    }

    /// Value at an integer point with nonnegative exponents only.
    pub fn evaluate_at_integer(&self, point: &[BigInt]) -> Result<BigInt, Error> {
        if point.len() != self.nvars {
            return Err(Error::InvalidInput("point length mismatch".into()));
        }
        if self.has_negative_exponents() {
            return Err(Error::InvalidInput(
                "integer evaluation needs nonnegative exponents".into(),
            ));
        }
        let mut acc = BigInt::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &e) in point.iter().zip(&t.exponent.0) {
                if e != 0 {
                    v *= Pow::pow(x, e as u64);
                }
            }
            acc += v;
        }
        Ok(acc)
    }
}

/// Polynomial bit size in bits: `Σ size(cᵢ) + size(aᵢ)` with
/// `size(k) = 1 + ⌈log₂(1 + |k|)⌉` and vectors summed entrywise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SizeMetric(pub u64);

/// `1 + ⌈log₂(1 + |k|)⌉`, which equals `1 + bitlen(|k|)`.
pub fn integer_size(k: &BigInt) -> u64 {
    1 + k.magnitude().bits()
}

fn i64_size(k: i64) -> u64 {
    1 + (64 - k.unsigned_abs().leading_zeros()) as u64
}

pub fn size_of(f: &SparsePolynomial) -> SizeMetric {
    let total = f
        .terms
        .iter()
        .map(|t| integer_size(&t.coeff) + t.exponent.0.iter().map(|&e| i64_size(e)).sum::<u64>())
        .sum();
    SizeMetric(total)
}

impl fmt::Display for SparsePolynomial {
    /// Writes the text grammar accepted by [`crate::parse_polynomial`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.sign() == Sign::Minus;
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = t.coeff.abs();
            let vars: Vec<(usize, i64)> = t
                .exponent
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| (i + 1, e))
                .collect();
            let mut first = true;
            if !mag.is_one() || vars.is_empty() {
                write!(f, "{mag}")?;
                first = false;
            }
            for (i, e) in vars {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "x{i}")?;
                } else {
                    write!(f, "x{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
