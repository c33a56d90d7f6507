mod common;

use circuit_feas::reductions::{
    build_fb_system, build_gb, build_hb, build_tm, verify_sat_equivalence, SatInstance,
};
use circuit_feas::{BigInt, BigRational};
use common::{eval, rat};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_instance() -> impl Strategy<Value = SatInstance> {
    (3usize..5).prop_flat_map(|n| {
        let clause = (
            proptest::sample::subsequence((1..=n as i64).collect::<Vec<_>>(), 3),
            any::<[bool; 3]>(),
        )
            .prop_map(|(vars, signs)| {
                let mut c = [0i64; 3];
                for k in 0..3 {
                    c[k] = if signs[k] { vars[k] } else { -vars[k] };
                }
                c
            });
        proptest::collection::vec(clause, n.div_ceil(3)..=6)
            .prop_map(move |cs| SatInstance::new(n, cs).unwrap())
    })
}

/// Brute-force satisfiability, independent of the library.
fn satisfied(clauses: &[[i64; 3]], mask: u32) -> bool {
    clauses.iter().all(|c| {
        c.iter()
            .any(|&l| (mask >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))
    })
}

fn one() -> BigRational {
    rat(1, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gb_roots_are_satisfying_assignments(inst in arb_instance()) {
        let eps = rat(1, 1);
        for g in [build_gb(&inst, &eps, 4096).unwrap(), build_hb(&inst, &eps, 4096).unwrap()] {
            prop_assert!(verify_sat_equivalence(&inst, &g).unwrap());
            let n = inst.n();
            for mask in 0..1u32 << n {
                // x = 2 makes a positive literal true.
                let mut point = vec![one(); g.nvars()];
                for (i, x) in point.iter_mut().take(n).enumerate() {
                    *x = rat(1 + (mask >> i & 1) as i64, 1);
                }
                prop_assert_eq!(eval(&g, &point).is_zero(), satisfied(inst.clauses(), mask));
            }
        }
    }

    #[test]
    fn fb_system_shape(inst in arb_instance()) {
        let sys = build_fb_system(&inst).unwrap();
        let (big_n, n) = (inst.num_clauses(), inst.n());
        prop_assert_eq!(sys.polynomials.len(), 8 * big_n - n);
        prop_assert_eq!(sys.nvars, 8 * big_n - n);
        prop_assert!(sys.term_count() <= 33 * big_n - 4 * n);
    }
}

#[test]
fn single_clause_term_count() {
    for clause in [[1, 2, 3], [1, -2, 3], [-1, -2, -3]] {
        let inst = SatInstance::new(3, vec![clause]).unwrap();
        assert_eq!(build_fb_system(&inst).unwrap().term_count(), 33 - 4 * 3);
    }
}

/// Exact partial derivative of `f` at the all-ones point.
fn gradient_at_one(f: &circuit_feas::SparsePolynomial) -> Vec<BigInt> {
    (0..f.nvars())
        .map(|k| f.terms().iter().map(|t| &t.coeff * t.exponent.0[k]).sum())
        .collect()
}

#[test]
fn tm_vanishes_to_second_order_at_one() {
    for m in 1..=8 {
        let t = build_tm(m).unwrap();
        assert!(eval(&t, &vec![one(); m]).is_zero());
        assert!(gradient_at_one(&t).iter().all(Zero::is_zero));
    }
}

#[test]
fn tm_is_positive_off_one() {
    let axis: Vec<BigRational> = [
        rat(1, 8),
        rat(1, 4),
        rat(1, 2),
        rat(1, 1),
        rat(2, 1),
        rat(4, 1),
        rat(8, 1),
    ]
    .to_vec();
    for m in 1..=3usize {
        let t = build_tm(m).unwrap();
        let mut idx = vec![0usize; m];
        loop {
            let p: Vec<BigRational> = idx.iter().map(|&i| axis[i].clone()).collect();
            let v = eval(&t, &p);
            if p.iter().all(|x| *x == one()) {
                assert!(v.is_zero());
            } else {
                assert!(v.is_positive(), "t_{m} at {p:?}");
            }
            let mut k = 0;
            while k < m && idx[k] == axis.len() - 1 {
                idx[k] = 0;
                k += 1;
            }
            if k == m {
                break;
            }
            idx[k] += 1;
        }
    }
}
