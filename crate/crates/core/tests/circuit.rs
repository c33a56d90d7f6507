mod common;

use circuit_feas::circuit::{
    adisc_sign, adisc_vanishes, circuit_triangulations, classify_circuit, signs_coherent,
    CircuitKind, DiscriminantSign,
};
use circuit_feas::lattice::{affine_dimension, IntMatrix};
use circuit_feas::oracle::has_positive_multiple_root;
use circuit_feas::{BigInt, ExponentVector, SparsePolynomial};
use common::{trinomial, trinomial_has_double_root};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Honest circuits: `n + 2` distinct points spanning `ℝⁿ`.
fn arb_circuit() -> impl Strategy<Value = Vec<ExponentVector>> {
    (1usize..4).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0i64..7, n), n + 2).prop_filter_map(
            "honest",
            move |pts| {
                let mut sorted = pts.clone();
                sorted.sort();
                sorted.dedup();
                let pts: Vec<ExponentVector> = pts.into_iter().map(ExponentVector).collect();
                (sorted.len() == n + 2 && affine_dimension(&pts) == n).then_some(pts)
            },
        )
    })
}

/// `|det(a_k − a_first)|` over the points of `simplex`.
fn volume(pts: &[ExponentVector], simplex: &[usize]) -> BigInt {
    let base = &pts[simplex[0]].0;
    let rows: Vec<Vec<i64>> = simplex[1..]
        .iter()
        .map(|&k| pts[k].0.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    IntMatrix::from_rows(&rows).determinant().abs()
}

#[test]
fn pentanomial_golden() {
    let pts: Vec<ExponentVector> = [
        [0, 0, 0],
        [999, 0, 0],
        [73, 0, 19],
        [0, 2009, 0],
        [74, 293, 1],
    ]
    .iter()
    .map(|a| ExponentVector(a.to_vec()))
    .collect();
    let c = classify_circuit(&pts).unwrap();
    let abs: Vec<BigInt> = c.b.iter().map(|x| x.abs()).collect();
    let want: Vec<BigInt> = [27886408i64, 2677997, 2006991, 5561433, 38132829]
        .iter()
        .map(|&v| v.into())
        .collect();
    assert_eq!(abs, want);
    assert!(c.b[..4].iter().all(|x| x.signum() == c.b[0].signum()));
    assert_eq!(c.b[4].signum(), -c.b[0].signum());
}

proptest! {
    #[test]
    fn relation_is_primitive_and_affine(pts in arb_circuit()) {
        let c = classify_circuit(&pts).unwrap();
        prop_assert_ne!(c.kind, CircuitKind::NotHonest);
        let sum: BigInt = c.b.iter().sum();
        prop_assert!(sum.is_zero());
        for k in 0..pts[0].len() {
            let s: BigInt = c.b.iter().zip(&pts).map(|(b, a)| b * a.0[k]).sum();
            prop_assert!(s.is_zero());
        }
        let g = c.b.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        prop_assert_eq!(g, BigInt::from(1));
        prop_assert_eq!(c.is_degenerate(), c.b.iter().any(Zero::is_zero));
    }

    #[test]
    fn relation_matches_simplex_volumes(pts in arb_circuit()) {
        let c = classify_circuit(&pts).unwrap();
        let m = pts.len();
        let vols: Vec<BigInt> = (0..m).map(|i| {
            let s: Vec<usize> = (0..m).filter(|&k| k != i).collect();
            volume(&pts, &s)
        }).collect();
        for i in 0..m {
            for j in 0..m {
                prop_assert_eq!(&vols[i] * c.b[j].abs(), &vols[j] * c.b[i].abs());
            }
        }
        let (plus, minus) = circuit_triangulations(&c).unwrap();
        let total = |t: &[Vec<usize>]| t.iter().map(|s| volume(&pts, s)).sum::<BigInt>();
        prop_assert_eq!(total(&plus), total(&minus));
    }

    #[test]
    fn vanishing_matches_zero_sign(pts in arb_circuit(), cs in proptest::collection::vec(-6i64..7, 5)) {
        prop_assume!(cs[..pts.len()].iter().all(|&c| c != 0));
        let f = SparsePolynomial::new(
            pts[0].len(),
            pts.iter().zip(&cs).map(|(a, &c)| (BigInt::from(c), a.clone())),
        ).unwrap();
        let vanishes = adisc_vanishes(&f).unwrap();
        let sign = adisc_sign(&f, false).unwrap();
        prop_assert_eq!(vanishes, sign == DiscriminantSign::Zero);
    }

    #[test]
    fn univariate_vanishing_means_double_root(
        p in 1i64..6, dq in 1i64..5,
        c1 in -9i64..10, c2 in -9i64..10, c3 in -9i64..10,
    ) {
        prop_assume!(c1 != 0 && c2 != 0 && c3 != 0);
        let q = p + dq;
        let f = trinomial(c1, c2, c3, p, q);
        let c = classify_circuit(&f.support()).unwrap();
        let coeffs = f.coefficients();
        let both = adisc_vanishes(&f).unwrap() && signs_coherent(&c.b, &coeffs);
        if both {
            prop_assert!(has_positive_multiple_root(&f).unwrap());
        }
        prop_assert_eq!(both, trinomial_has_double_root(c1, c2, c3, p as u32, q as u32));
    }
}
