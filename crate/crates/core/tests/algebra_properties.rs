use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use slicealg::algebra::{Degree, DegreeWindow, GradedGroups, Monomial, PolyElement};
use slicealg::ss::bp::Schedule;
use slicealg::ss::ko::ko_homology_ring;
use slicealg::ss::{groups_on, region_audit};

fn schedule() -> &'static Schedule {
    static S: OnceLock<Schedule> = OnceLock::new();
    S.get_or_init(|| Schedule::new(2, &DegreeWindow::new(12, 2, 8).unwrap()).unwrap())
}

/// Sums of a few monomials in the first `n` generators.
fn element(n: usize) -> impl Strategy<Value = PolyElement<BigInt>> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -3i64..=3), 1..4).prop_map(|terms| {
        PolyElement::from_terms(terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), BigInt::from(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn assignment_is_a_ring_map(x in element(6), y in element(6)) {
        let f = &schedule().assignment;
        prop_assert_eq!(f.apply(&x.add(&y)), f.apply(&x).add(&f.apply(&y)));
        prop_assert_eq!(f.apply(&x.mul(&y)), f.apply(&x).mul(&f.apply(&y)));
    }
}

#[test]
fn hilbert_function_counts_monomials() {
    let ring = ko_homology_ring(3).unwrap();
    let w = DegreeWindow::integer_part(24);
    let h = ring.hilbert_function(&w).unwrap();
    for c in 0..=24i64 {
        let mut count = 0;
        for t3 in 0..=c / 14 {
            for t2 in 0..=c / 6 {
                for cc in 0..=c / 4 {
                    let rest = c - 14 * t3 - 6 * t2 - 4 * cc;
                    if rest >= 0 && rest % 2 == 0 {
                        count += 1;
                    }
                }
            }
        }
        let g = h.get(&Degree::new(c, 0, 0)).cloned().unwrap_or_else(slicealg::exact::AbelianGroup::trivial);
        assert_eq!(g.free_rank, count, "stem {c}");
        assert!(g.invariant_factors.is_empty());
    }
}

#[test]
fn e2_region() {
    for n in 1..=3 {
        let w = DegreeWindow::new(16, 2, 16).unwrap();
        let s = Schedule::new(n, &w).unwrap();
        assert!(region_audit(s.e2.as_ref(), &w).unwrap().passed());
    }
}

#[test]
fn pages_restrict_along_window_inclusion() {
    let big = DegreeWindow::new(16, 2, 10).unwrap();
    let small = DegreeWindow::new(10, 1, 6).unwrap();
    let a = Schedule::new(2, &big).unwrap();
    let b = Schedule::new(2, &small).unwrap();
    let ga = groups_on(a.e8.as_ref() as &dyn GradedGroups, &small).unwrap();
    let gb = groups_on(b.e8.as_ref() as &dyn GradedGroups, &small).unwrap();
    assert_eq!(ga.len(), gb.len());
    for (d, g) in &gb {
        assert!(ga[d].isomorphic(g), "{d}");
    }
}
