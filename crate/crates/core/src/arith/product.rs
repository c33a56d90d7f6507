use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Signed, Zero};

use super::baker::baker_bound;
use super::gcd_free::gcd_free_basis_unsigned;
use super::interval::{ln_integer, DyadicInterval};
use crate::Error;

const START_BITS: u32 = 64;

/// `Π αᵢ^{uᵢ}` with nonzero integer bases and nonnegative exponents.
/// The empty product is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedProduct {
    factors: Vec<(BigInt, BigUint)>,
}

impl SignedProduct {
    pub fn one() -> Self {
        SignedProduct::default()
    }

    pub fn new(factors: impl IntoIterator<Item = (BigInt, BigUint)>) -> Result<Self, Error> {
        let mut p = SignedProduct::one();
        for (base, exp) in factors {
            p.push(base, exp)?;
        }
        Ok(p)
    }

    /// Panics on a zero base.
    pub fn from_i64(factors: &[(i64, u64)]) -> Self {
        Self::new(
            factors
                .iter()
                .map(|&(b, e)| (BigInt::from(b), BigUint::from(e))),
        )
        .expect("nonzero bases")
    }

    pub fn push(&mut self, base: BigInt, exp: BigUint) -> Result<(), Error> {
        if base.is_zero() {
            return Err(Error::InvalidInput("zero base in a power product".into()));
        }
        self.factors.push((base, exp));
        Ok(())
    }

    pub fn factors(&self) -> &[(BigInt, BigUint)] {
        &self.factors
    }

    /// `Less` for a negative product, `Greater` otherwise.
    pub fn sign(&self) -> Ordering {
        let negative = self
            .factors
            .iter()
            .filter(|(b, e)| b.is_negative() && e.bit(0))
            .count();
        if negative % 2 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Multiplies the product out.
    pub fn evaluate(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (b, e)| acc * Pow::pow(b, e))
    }
}

/// How [`product_compare_with_stats`] reached its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareMethod {
    /// The two sides have different signs.
    Sign,
    /// Exact equality through the gcd-free basis.
    Equal,
    /// All net exponents over the gcd-free basis share one sign.
    Basis,
    /// A log-linear interval excluded zero.
    Interval,
    /// Precision reached the Baker cap; products were multiplied out.
    ExactFallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompareStats {
    pub method: CompareMethod,
    /// Fractional bits of the last interval evaluation, 0 if none ran.
    pub bits: u32,
    pub cap_bits: Option<u64>,
}

/// Pairwise coprime `γ` and net exponents `d` with `|lhs|/|rhs| = Π γⱼ^{dⱼ}`.
fn net_exponents(lhs: &SignedProduct, rhs: &SignedProduct) -> (Vec<BigUint>, Vec<BigInt>) {
    let mags: Vec<BigUint> = lhs
        .factors
        .iter()
        .chain(&rhs.factors)
        .map(|(b, _)| b.magnitude().clone())
        .collect();
    let basis = gcd_free_basis_unsigned(&mags);
    let mut d = alloc::vec![BigInt::zero(); basis.gamma.len()];
    let split = lhs.factors.len();
    for (i, (_, u)) in lhs.factors.iter().chain(&rhs.factors).enumerate() {
        for (j, &e) in basis.exponents[i].iter().enumerate() {
            if e == 0 {
                continue;
            }
            let t = BigInt::from(u * e);
            if i < split {
                d[j] += t;
            } else {
                d[j] -= t;
            }
        }
    }
    (basis.gamma, d)
}

/// Whether the two products are equal as integers.
pub fn products_equal(lhs: &SignedProduct, rhs: &SignedProduct) -> bool {
    lhs.sign() == rhs.sign() && net_exponents(lhs, rhs).1.iter().all(Zero::is_zero)
}

/// Sign of `lhs − rhs`.
pub fn product_compare(lhs: &SignedProduct, rhs: &SignedProduct) -> Ordering {
    product_compare_with_stats(lhs, rhs).0
}

pub fn product_compare_with_stats(
    lhs: &SignedProduct,
    rhs: &SignedProduct,
) -> (Ordering, CompareStats) {
    let stats = |method, bits, cap_bits| CompareStats {
        method,
        bits,
        cap_bits,
    };
    let (sl, sr) = (lhs.sign(), rhs.sign());
    if sl != sr {
        return (sl, stats(CompareMethod::Sign, 0, None));
    }
    let (gamma, d) = net_exponents(lhs, rhs);
    let flip = |o: Ordering| if sl == Ordering::Less { o.reverse() } else { o };

    if d.iter().all(Zero::is_zero) {
        return (Ordering::Equal, stats(CompareMethod::Equal, 0, None));
    }
    if d.iter().all(|x| !x.is_negative()) {
        return (
            flip(Ordering::Greater),
            stats(CompareMethod::Basis, 0, None),
        );
    }
    if d.iter().all(|x| !x.is_positive()) {
        return (flip(Ordering::Less), stats(CompareMethod::Basis, 0, None));
    }

    let (alphas, betas): (Vec<_>, Vec<_>) = gamma
        .iter()
        .zip(&d)
        .filter(|(_, e)| !e.is_zero())
        .partition(|(_, e)| e.is_positive());
    let u = d
        .iter()
        .map(|x| x.magnitude().clone())
        .max()
        .expect("nonempty");
    let bound = baker_bound(
        alphas.len(),
        betas.len(),
        &u,
        &alphas.iter().map(|(g, _)| (*g).clone()).collect::<Vec<_>>(),
        &betas.iter().map(|(g, _)| (*g).clone()).collect::<Vec<_>>(),
    )
    .expect("gcd-free basis elements are ≥ 2");
    let cap = bound.cap_bits();
    let cap_w = cap.min(u32::MAX as u64) as u32;

    let mut w = START_BITS.min(cap_w);
    loop {
        let mut acc = DyadicInterval::zero(w);
        for (g, e) in gamma.iter().zip(&d) {
            if !e.is_zero() {
                acc = acc.add(&ln_integer(g, w).scale(e));
            }
        }
        match acc.sign() {
            Some(o) if o != Ordering::Equal => {
                return (flip(o), stats(CompareMethod::Interval, w, Some(cap)));
            }
            _ => {}
        }
        if w >= cap_w {
            break;
        }
        w = w.saturating_mul(2).min(cap_w);
    }

    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (g, e) in gamma.iter().zip(&d) {
        let p: BigUint = Pow::pow(g, e.magnitude());
        match e.sign() {
            Sign::Plus => num *= p,
            Sign::Minus => den *= p,
            Sign::NoSign => {}
        }
    }
    (
        flip(num.cmp(&den)),
        stats(CompareMethod::ExactFallback, w, Some(cap)),
    )
}
