mod common;

use circuit_feas::oracle::{
    grid_sample, positive_root_count, univariate_sign_scan, OracleVerdict, Witness,
};
use circuit_feas::{BigInt, ExponentVector, SparsePolynomial};
use common::{eval, rat, trinomial};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = SparsePolynomial> {
    (1usize..4).prop_flat_map(|n| {
        proptest::collection::vec((-9i64..10, proptest::collection::vec(0i64..6, n)), 1..5)
            .prop_filter_map("nonzero", move |terms| {
                let f = SparsePolynomial::new(
                    n,
                    terms
                        .into_iter()
                        .map(|(c, a)| (BigInt::from(c), ExponentVector(a))),
                )
                .ok()?;
                (!f.is_zero()).then_some(f)
            })
    })
}

proptest! {
    #[test]
    fn witnesses_are_sound(f in arb_poly(), lo in -8i64..2) {
        let bounds = vec![(rat(lo, 4), rat(9, 2)); f.nvars()];
        match grid_sample(&f, &bounds, 7).unwrap() {
            OracleVerdict::FeasibleWitness(w) => {
                prop_assert!(w.verify(&f).unwrap());
                match w {
                    Witness::Zero(p) => prop_assert!(eval(&f, &p).is_zero()),
                    Witness::SignChange(p, q) => {
                        prop_assert!(eval(&f, &p).is_positive());
                        prop_assert!(eval(&f, &q).is_negative());
                    }
                }
            }
            OracleVerdict::InfeasibleExhausted => {
                prop_assert!(lo > 0);
                prop_assert!(f.coefficients_same_sign());
            }
            OracleVerdict::Inconclusive => {}
        }
    }

    /// Roots of `(x − r)(x − s)·x^k` counted by the Sturm sequence.
    #[test]
    fn root_count_of_products(r in 1i64..9, s in 1i64..9, k in 0i64..3) {
        let f = SparsePolynomial::from_i64(1, &[(r * s, &[k]), (-(r + s), &[k + 1]), (1, &[k + 2])]).unwrap();
        let want = if r == s { 1 } else { 2 };
        prop_assert_eq!(positive_root_count(&f).unwrap(), want);
    }
}

#[test]
fn trinomial_scan_sees_sign_change() {
    let f = trinomial(1, 7, -43, 1, 99);
    assert_eq!(
        f.evaluate_at_integer(&[BigInt::from(1)]).unwrap(),
        BigInt::from(-35)
    );
    let v = univariate_sign_scan(&f, &rat(1, 1024), &rat(2, 1), 32).unwrap();
    assert!(matches!(v, OracleVerdict::FeasibleWitness(ref w) if w.verify(&f).unwrap()));
    assert!(!f
        .evaluate_at_integer(&[BigInt::zero()])
        .unwrap()
        .is_negative());
}
