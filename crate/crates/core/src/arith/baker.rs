//! Precision cap from the Baker/Nesterenko lower bound on linear forms in
//! logarithms.
//!
//! Natural logarithms throughout; the leading `1/ln 2` turns the bound on
//! `ln |1/Λ|` into bits. Every factor is replaced by a rational upper bound,
//! so `E` here is never smaller than the real-valued formula.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::interval::{ln2, ln_integer};
use crate::Error;

const WORK_BITS: u32 = 96;

/// Upper bounds, in bits, for the smallest possible `|Λ|` of a nonzero form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BakerBound {
    /// `(2.9/ln 2)(2e)^{2M+2N+6}(1 + ln U)·Π ln αᵢ·Π ln βᵢ`.
    pub algorithm: BigRational,
    /// `(2.9/ln 2)(M+N+2)^{9/2}(2e)^{2M+2N+6}(2 + ln U)·Π ln αᵢ·Π ln βᵢ`.
    pub nesterenko: BigRational,
    pub m: usize,
    pub n: usize,
}

impl BakerBound {
    /// The larger of the two formulas.
    pub fn e(&self) -> &BigRational {
        if self.algorithm >= self.nesterenko {
            &self.algorithm
        } else {
            &self.nesterenko
        }
    }

    /// `⌈2 + E + log₂ max(M, N)⌉` fractional bits, saturating at `u64::MAX`.
    pub fn cap_bits(&self) -> u64 {
        let e = self.e().ceil().to_integer();
        let k = self.m.max(self.n).max(1) as u64;
        let log2k = 64 - (k - 1).leading_zeros() as u64;
        e.to_u64()
            .and_then(|e| e.checked_add(2 + log2k))
            .unwrap_or(u64::MAX)
    }
}

fn upper(iv_hi: &BigInt, w: u32) -> BigRational {
    BigRational::new(iv_hi.clone(), BigInt::one() << w)
}

/// Rational upper bound on `√k`.
fn sqrt_upper(k: u64) -> BigRational {
    let scaled = BigUint::from(k) << (2 * WORK_BITS);
    let r = scaled.sqrt() + 1u32;
    BigRational::new(BigInt::from(r), BigInt::one() << WORK_BITS)
}

pub fn baker_bound(
    m: usize,
    n: usize,
    u: &BigUint,
    alphas: &[BigUint],
    betas: &[BigUint],
) -> Result<BakerBound, Error> {
    if m == 0 || n == 0 || u.is_zero() {
        return Err(Error::InvalidInput("baker bound needs M, N, U ≥ 1".into()));
    }
    let two = BigUint::from(2u32);
    if let Some(bad) = alphas.iter().chain(betas).find(|a| **a < two) {
        return Err(Error::InvalidInput(alloc::format!(
            "baker bound needs bases ≥ 2, got {bad}"
        )));
    }

    let w = WORK_BITS;
    let ln2_lo = BigRational::new(ln2(w).lo, BigInt::one() << w);
    let prefactor = BigRational::new(BigInt::from(29), BigInt::from(10)) / ln2_lo;
    let e_hi = BigRational::new(
        BigInt::from(2_718_281_829u64),
        BigInt::from(1_000_000_000u64),
    );
    let two_e = e_hi * BigInt::from(2);
    let power = num_traits::Pow::pow(&two_e, (2 * m + 2 * n + 6) as u32);
    let ln_u = upper(&ln_integer(u, w).hi, w);
    let logs: Vec<BigRational> = alphas
        .iter()
        .chain(betas)
        .map(|a| upper(&ln_integer(a, w).hi, w))
        .collect();
    let log_product = logs.iter().fold(BigRational::one(), |acc, l| acc * l);

    let common = &prefactor * &power * &log_product;
    let algorithm = &common * (BigRational::one() + &ln_u);

    let k = (m + n + 2) as u64;
    let k_pow = BigRational::from_integer(BigInt::from(k).pow(4u32)) * sqrt_upper(k);
    let nesterenko = &common * k_pow * (BigRational::from_integer(BigInt::from(2)) + ln_u);

    Ok(BakerBound {
        algorithm,
        nesterenko,
        m,
        n,
    })
}
