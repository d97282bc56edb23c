use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use slicealg::exact::{cokernel, homology, smith_normal_form, IntegerMatrix, TwoLocal};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn shaped() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn permuted(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> Vec<Vec<i64>> {
    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_factorization(rows in shaped()) {
        let m = IntegerMatrix::from_rows(&rows);
        let (u, d, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
        prop_assert_eq!(v.determinant().unwrap().abs(), BigInt::one());
        let n = d.rows().min(d.cols());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d[(i, j)].is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..n).map(|i| d[(i, i)].clone()).filter(|x| !x.is_zero()).collect();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "{:?}", diag);
        }
    }

    #[test]
    fn cokernel_ignores_order_and_unimodular_changes(
        rows in shaped(),
        seed in any::<u64>(),
        k in -3i64..=3,
    ) {
        let m = IntegerMatrix::from_rows(&rows);
        let g = cokernel(&m);
        let (r, c) = (rows.len(), rows[0].len());
        let mut ri: Vec<usize> = (0..r).collect();
        let mut ci: Vec<usize> = (0..c).collect();
        ri.rotate_left((seed % r as u64) as usize);
        ci.rotate_left(((seed >> 8) % c as u64) as usize);
        if r > 1 { ri.swap(0, r - 1); }
        prop_assert!(cokernel(&IntegerMatrix::from_rows(&permuted(&rows, &ri, &ci))).isomorphic(&g));
        // add k times row 0 to the last row, and k times column 0 to the last column
        let mut e = IntegerMatrix::identity(r);
        if r > 1 { e[(r - 1, 0)] = BigInt::from(k); }
        let mut f = IntegerMatrix::identity(c);
        if c > 1 { f[(0, c - 1)] = BigInt::from(k); }
        let changed = e.mul(&m).unwrap().mul(&f).unwrap();
        prop_assert!(cokernel(&changed).isomorphic(&g));
    }

    #[test]
    fn homology_degenerate_cases(rows in shaped()) {
        let m = IntegerMatrix::from_rows(&rows);
        let (r, c) = (m.rows(), m.cols());
        // B = 0: the kernel of Z, free of rank cols - rank
        let (_, d, _) = smith_normal_form(&m);
        let rank = (0..r.min(c)).filter(|&i| !d[(i, i)].is_zero()).count();
        let h = homology(&m, &IntegerMatrix::zero(c, 0)).unwrap();
        prop_assert_eq!(h.free_rank, c - rank);
        prop_assert!(h.invariant_factors.is_empty());
        // Z = 0: the cokernel of B
        let h = homology(&IntegerMatrix::zero(0, r), &m).unwrap();
        prop_assert!(h.isomorphic(&cokernel(&m)));
    }
}

fn odd_fraction() -> impl Strategy<Value = (i64, i64)> {
    (-50i64..=50, 0i64..20).prop_map(|(n, d)| (n, 2 * d + 1))
}

fn rational((n, d): (i64, i64)) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn two_local_matches_rationals(x in odd_fraction(), y in odd_fraction(), z in odd_fraction()) {
        let (a, b, c) = (TwoLocal::frac(x.0, x.1), TwoLocal::frac(y.0, y.1), TwoLocal::frac(z.0, z.1));
        let (p, q, r) = (rational(x), rational(y), rational(z));
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        let lhs = a.clone() * b.clone() - c.clone();
        prop_assert_eq!(lhs.as_rational(), &(&p * &q - &r));
        prop_assert!((a * b + c).denom() % BigInt::from(2) != BigInt::zero());
    }
}
