mod common;

use circuit_feas::lattice::{
    affine_dimension, hermite, monomial_map, reduce_to_honest, smith, IntMatrix,
};
use circuit_feas::{BigInt, BigRational, ExponentVector, SparsePolynomial};
use common::{eval, monomial, rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

/// Checks the Hermite shape of `h` independently of the library.
fn is_row_hermite(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
            None => seen_zero_row = true,
            Some(j) => {
                if seen_zero_row || last_pivot.is_some_and(|p| j <= p) || !h[(i, j)].is_positive() {
                    return false;
                }
                for k in 0..i {
                    if h[(k, j)].is_negative() || h[(k, j)] >= h[(i, j)] {
                        return false;
                    }
                }
                last_pivot = Some(j);
            }
        }
    }
    true
}

fn is_unit(d: &BigInt) -> bool {
    d.abs() == BigInt::from(1)
}

proptest! {
    #[test]
    fn hermite_invariants(m in arb_matrix(6, 1000)) {
        let hf = hermite(&m);
        prop_assert!(is_unit(&hf.u.as_matrix().determinant()));
        prop_assert_eq!(hf.u.as_matrix().mul(&m), hf.h.clone());
        prop_assert!(is_row_hermite(&hf.h));
        prop_assert_eq!(hf.rank(), m.rank());
        // Uniqueness: any row-equivalent input has the same form.
        prop_assert_eq!(hermite(&hf.h).h, hf.h.clone());
    }

    #[test]
    fn smith_invariants(m in arb_matrix(5, 1000)) {
        let sf = smith(&m);
        prop_assert!(is_unit(&sf.u.as_matrix().determinant()));
        prop_assert!(is_unit(&sf.v.as_matrix().determinant()));
        prop_assert_eq!(sf.u.as_matrix().mul(&m).mul(sf.v.as_matrix()), sf.s.clone());
        for i in 0..sf.s.rows() {
            for j in 0..sf.s.cols() {
                if i != j {
                    prop_assert!(sf.s[(i, j)].is_zero());
                }
            }
        }
        let d = sf.diagonal();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(smith(&sf.s).s, sf.s.clone());
    }

    #[test]
    fn hadamard_bound(m in (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(-50i64..=50, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })) {
        let det = m.determinant();
        let mut bound_sq = BigInt::from(1);
        for i in 0..m.rows() {
            let row: BigInt = m.row(i).iter().map(|x| x * x).sum();
            bound_sq *= row;
        }
        prop_assert!(&det * &det <= bound_sq);
    }

    /// `f(y^U) = y^{U·base}·g(y)` at random nonzero rational points.
    #[test]
    fn reduction_identity(
        dirs in proptest::collection::vec(proptest::collection::vec(-3i64..4, 3), 1..3),
        coeffs in proptest::collection::vec((1i64..20, 0i64..4, 0i64..4), 2..5),
        y in proptest::collection::vec((1i64..5, 1i64..4), 3),
    ) {
        let offset = [5i64, 5, 5];
        let terms: Vec<(BigInt, ExponentVector)> = coeffs
            .iter()
            .map(|&(c, s, t)| {
                let a: Vec<i64> = (0..3)
                    .map(|k| offset[k] + s * dirs[0][k] + t * dirs.get(1).map_or(0, |d| d[k]))
                    .collect();
                (BigInt::from(c), ExponentVector(a))
            })
            .collect();
        let f = SparsePolynomial::new(3, terms).unwrap();
        prop_assume!(!f.has_negative_exponents() && f.len() >= 2);
        let r = reduce_to_honest(&f).unwrap();
        prop_assert_eq!(r.dimension, affine_dimension(&f.support()));
        prop_assert_eq!(r.g.nvars(), r.dimension);
        let y: Vec<BigRational> = y.iter().map(|&(p, q)| rat(p, q)).collect();
        let x = monomial_map(&r.u, &y).unwrap();
        let u = r.u.as_matrix();
        let shift: Vec<i64> = (0..3)
            .map(|i| (0..3).map(|j| (&u[(i, j)] * r.base.0[j]).try_into().unwrap_or(0i64)).sum())
            .collect();
        let lhs = eval(&f, &x);
        let rhs = monomial(&y, &shift) * eval(&r.g, &y[..r.dimension]);
        prop_assert_eq!(lhs, rhs);
    }
}
