use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Pairwise coprime `gamma` with `values[i] = Π_j gamma[j]^{exponents[i][j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdFreeBasis {
    pub gamma: Vec<BigUint>,
    pub exponents: Vec<Vec<u64>>,
}

impl GcdFreeBasis {
    pub fn reconstruct(&self, i: usize) -> BigUint {
        self.gamma
            .iter()
            .zip(&self.exponents[i])
            .fold(BigUint::one(), |acc, (g, &e)| {
                acc * num_traits::Pow::pow(g, e)
            })
    }
}

/// Factor refinement: split any two non-coprime elements `a, b` with
/// `g = gcd(a, b)` into `a/g, g, b/g` until the list is pairwise coprime.
pub fn gcd_free_basis(values: &[BigInt]) -> Result<GcdFreeBasis, Error> {
    let mut mags = Vec::with_capacity(values.len());
    for v in values {
        if !v.is_positive() {
            return Err(Error::InvalidInput(alloc::format!(
                "gcd-free basis needs positive integers, got {v}"
            )));
        }
        mags.push(v.magnitude().clone());
    }
    Ok(gcd_free_basis_unsigned(&mags))
}

pub(crate) fn gcd_free_basis_unsigned(values: &[BigUint]) -> GcdFreeBasis {
    let mut list: Vec<BigUint> = Vec::new();
    for v in values {
        push_unique(&mut list, v.clone());
    }
    'refine: loop {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let g = list[i].gcd(&list[j]);
                if g.is_one() {
                    continue;
                }
                let b = list.swap_remove(j);
                let a = list.swap_remove(i);
                push_unique(&mut list, &a / &g);
                push_unique(&mut list, &b / &g);
                push_unique(&mut list, g);
                continue 'refine;
            }
        }
        break;
    }
    list.sort();

    let exponents = values
        .iter()
        .map(|v| {
            let mut rest = v.clone();
            list.iter()
                .map(|g| {
                    let mut e = 0u64;
                    loop {
                        let (q, r) = rest.div_rem(g);
                        if !r.is_zero() {
                            break;
                        }
                        rest = q;
                        e += 1;
                    }
                    e
                })
                .collect()
        })
        .collect();
    GcdFreeBasis {
        gamma: list,
        exponents,
    }
}

fn push_unique(list: &mut Vec<BigUint>, v: BigUint) {
    if v > BigUint::one() && !list.contains(&v) {
        list.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn check(values: &[i64]) -> GcdFreeBasis {
        let vals: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let basis = gcd_free_basis(&vals).unwrap();
        for i in 0..basis.gamma.len() {
            assert!(basis.gamma[i] >= BigUint::from(2u32));
            for j in i + 1..basis.gamma.len() {
                assert!(basis.gamma[i].gcd(&basis.gamma[j]).is_one());
            }
        }
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(BigInt::from(basis.reconstruct(i)), *v);
        }
        basis
    }

    #[test]
    fn six_fifteen() {
        let b = check(&[6, 15]);
        let gamma: Vec<u32> = b.gamma.iter().map(|g| g.try_into().unwrap()).collect();
        assert_eq!(gamma, vec![2, 3, 5]);
        assert_eq!(b.exponents, vec![vec![1, 1, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn one_has_empty_basis() {
        let b = check(&[1]);
        assert!(b.gamma.is_empty());
        assert_eq!(b.exponents, vec![Vec::<u64>::new()]);
    }

    #[test]
    fn coprime_inputs_and_powers() {
        check(&[8, 9]);
        check(&[4, 8, 12, 18, 27, 1]);
        check(&[1024, 729, 1000, 7, 49]);
    }

    #[test]
    fn nonpositive_rejected() {
        assert!(gcd_free_basis(&[BigInt::from(0)]).is_err());
        assert!(gcd_free_basis(&[BigInt::from(-3)]).is_err());
    }
}
