//! Rigorous dyadic enclosures of natural logarithms.
//!
//! `ln α = k·ln 2 + 2·atanh(t)` with `2^k ≤ α < 2^{k+1}` and
//! `t = (α − 2^k)/(α + 2^k) ∈ [0, 1/3)`. The atanh series is summed twice in
//! fixed point, once rounding every step down and once rounding up, and the
//! tail is bounded by `t²/(1 − t²) ≤ 1/8` of the last term.

use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The closed interval `[lo, hi]·2^{-frac_bits}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub frac_bits: u32,
}

impl DyadicInterval {
    pub fn zero(frac_bits: u32) -> Self {
        DyadicInterval {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn point(v: BigInt, frac_bits: u32) -> Self {
        DyadicInterval {
            lo: v.clone(),
            hi: v,
            frac_bits,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.frac_bits, other.frac_bits);
        DyadicInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            frac_bits: self.frac_bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.frac_bits, other.frac_bits);
        DyadicInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
            frac_bits: self.frac_bits,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            DyadicInterval {
                lo: b,
                hi: a,
                frac_bits: self.frac_bits,
            }
        } else {
            DyadicInterval {
                lo: a,
                hi: b,
                frac_bits: self.frac_bits,
            }
        }
    }

    /// `Some(sign)` when the interval excludes zero or is exactly `{0}`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn contains_rational(&self, num: &BigInt, den: &BigInt) -> bool {
        // lo/2^w ≤ num/den ≤ hi/2^w, den > 0
        let scaled = num << self.frac_bits;
        &self.lo * den <= scaled && scaled <= &self.hi * den
    }
}

/// Enclosure of `2·atanh(num/den)` for `0 ≤ num/den ≤ 1/3`.
fn two_atanh(num: &BigUint, den: &BigUint, w: u32) -> (BigInt, BigInt) {
    debug_assert!(num * 3u32 <= *den);
    if num.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let scaled = num << w;
    let (t_lo, rem) = scaled.div_rem(den);
    let t_hi = if rem.is_zero() {
        t_lo.clone()
    } else {
        &t_lo + 1u32
    };

    let t2_lo = (&t_lo * &t_lo) >> w;
    let t2_hi = ceil_shift(&(&t_hi * &t_hi), w);

    let mut p_lo = t_lo.clone();
    let mut p_hi = t_hi.clone();
    let mut s_lo = t_lo;
    let mut s_hi = t_hi;
    let mut j = 1u32;
    while p_hi > BigUint::one() {
        p_lo = (&p_lo * &t2_lo) >> w;
        p_hi = ceil_shift(&(&p_hi * &t2_hi), w);
        let d = BigUint::from(2 * j + 1);
        s_lo += &p_lo / &d;
        s_hi += ceil_div(&p_hi, &d);
        j += 1;
    }
    // Tail after the last term is at most an eighth of it, i.e. < 1 ulp.
    s_hi += 1u32;
    (BigInt::from(s_lo) << 1, BigInt::from(s_hi) << 1)
}

fn ceil_shift(x: &BigUint, w: u32) -> BigUint {
    let q = x >> w;
    if (&q << w) == *x {
        q
    } else {
        q + 1u32
    }
}

fn ceil_div(x: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = x.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// `ln 2 = 2·atanh(1/3)`.
pub fn ln2(frac_bits: u32) -> DyadicInterval {
    let (lo, hi) = two_atanh(&BigUint::one(), &BigUint::from(3u32), frac_bits);
    DyadicInterval { lo, hi, frac_bits }
}

/// Enclosure of `ln α` for an integer `α ≥ 1`, `frac_bits` fractional bits.
pub fn ln_integer(alpha: &BigUint, frac_bits: u32) -> DyadicInterval {
    assert!(!alpha.is_zero(), "ln of zero");
    let k = alpha.bits() - 1;
    let pow = BigUint::one() << k;
    let (s_lo, s_hi) = two_atanh(&(alpha - &pow), &(alpha + &pow), frac_bits);
    if k == 0 {
        return DyadicInterval {
            lo: s_lo,
            hi: s_hi,
            frac_bits,
        };
    }
    let l2 = ln2(frac_bits).scale(&BigInt::from(k));
    DyadicInterval {
        lo: l2.lo + s_lo,
        hi: l2.hi + s_hi,
        frac_bits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(x: &BigInt, w: u32) -> f64 {
        let s: alloc::string::String = alloc::format!("{x}");
        s.parse::<f64>().unwrap() / 2f64.powi(w as i32)
    }

    #[test]
    fn ln2_matches_known_digits() {
        let iv = ln2(200);
        // ln 2 = 0.693147180559945309417232121458176568...
        let num: BigInt = "693147180559945309417232121458176568".parse().unwrap();
        let den: BigInt = BigInt::from(10u32).pow(36);
        // ln 2 lies in [num, num + 1]/den, so the enclosure must too.
        let scale = BigInt::one() << 200u32;
        assert!(&iv.lo * &den >= &num * &scale);
        assert!(&iv.hi * &den <= (&num + 1) * &scale);
        assert!(iv.width() < BigInt::from(512));
    }

    #[test]
    fn ln_of_small_integers_contains_float_value() {
        for a in 1u32..2000 {
            let iv = ln_integer(&BigUint::from(a), 80);
            let lo = to_f64(&iv.lo, 80);
            let hi = to_f64(&iv.hi, 80);
            let v = (a as f64).ln();
            assert!(
                lo <= v + 1e-12 && v - 1e-12 <= hi,
                "a={a}: [{lo}, {hi}] vs {v}"
            );
            assert!(iv.width() < BigInt::from(4096));
        }
    }

    #[test]
    fn ln_one_is_exact_zero() {
        let iv = ln_integer(&BigUint::one(), 64);
        assert_eq!(iv.sign(), Some(Ordering::Equal));
    }

    #[test]
    fn powers_of_two_are_consistent() {
        // ln(2^40) encloses 40·ln 2 computed independently.
        let a = ln_integer(&(BigUint::one() << 40u32), 128);
        let b = ln2(128).scale(&BigInt::from(40));
        assert!(a.lo <= b.hi && b.lo <= a.hi);
    }
}
