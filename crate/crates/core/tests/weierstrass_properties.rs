use std::sync::OnceLock;

use proptest::prelude::*;

use slicealg::algebra::Monomial;
use slicealg::exact::TwoLocal;
use slicealg::weierstrass::{transform_curve, Algebroid, Comodule, Hopf, Poly, UnipotentTransformation, WeierstrassCurve};

fn hopf() -> &'static Hopf {
    static H: OnceLock<Hopf> = OnceLock::new();
    H.get_or_init(|| Hopf::new(Algebroid::build().unwrap()).unwrap())
}

/// A few terms with exponents below `e` and odd-denominator coefficients.
fn poly_e(vars: usize, max_terms: usize, e: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..e, vars), -4i64..=4, 0i64..2), 0..=max_terms).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|(e, n, d)| (Monomial::from_exponents(e), TwoLocal::frac(n, 2 * d + 1))))
    })
}

fn poly(vars: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_e(vars, max_terms, 3)
}

fn curve() -> impl Strategy<Value = WeierstrassCurve> {
    prop::collection::vec(poly(4, 2), 5).prop_map(|a| WeierstrassCurve::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone()))
}

fn transformation() -> impl Strategy<Value = UnipotentTransformation> {
    (poly(4, 2), poly(4, 2), poly(4, 2)).prop_map(|(r, s, t)| UnipotentTransformation::new(r, s, t))
}

/// Elements of `Γ` of internal degree at most 16, in normal form.
fn gamma_element() -> impl Strategy<Value = Poly> {
    poly_e(4, 3, 2).prop_map(|p| hopf().g.nf(&p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transformations_act_on_the_right(c in curve(), f in transformation(), g in transformation()) {
        let both = transform_curve(&c, &f.compose(&g)).unwrap();
        let stepwise = transform_curve(&transform_curve(&c, &f).unwrap(), &g).unwrap();
        prop_assert_eq!(both, stepwise);
        let back = transform_curve(&transform_curve(&c, &f).unwrap(), &f.invert()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn gamma_is_an_involution_fixing_res_tr(x in gamma_element(), y in gamma_element()) {
        let h = hopf();
        let g = &h.g;
        prop_assert_eq!(h.gamma(&h.gamma(&x).unwrap()).unwrap(), x.clone());
        let xy = g.nf(&x.mul(&y)).unwrap();
        let gx_gy = g.nf(&h.gamma(&x).unwrap().mul(&h.gamma(&y).unwrap())).unwrap();
        prop_assert_eq!(h.gamma(&xy).unwrap(), gx_gy);
        let rt = h.res_tr(&x).unwrap();
        prop_assert_eq!(h.gamma(&rt).unwrap(), rt);
    }

    #[test]
    fn normal_form_is_idempotent_and_a_linear(x in poly(4, 3), alpha in poly(2, 2)) {
        let g = &hopf().g;
        let n = g.nf(&x).unwrap();
        prop_assert_eq!(g.nf(&n).unwrap(), n.clone());
        prop_assert_eq!(g.nf(&alpha.mul(&x)).unwrap(), g.nf(&alpha.mul(&n)).unwrap());
        for (_, c) in n.terms() {
            prop_assert!(c.denom() % 2u32 == 1u32.into());
        }
    }
}

#[test]
fn gamma_preserves_relations_and_basis() {
    let h = hopf();
    let g = &h.g;
    for r in [&g.r1, &g.r2] {
        assert!(g.nf(&h.gamma(r).unwrap()).unwrap().is_zero());
    }
    for b in 0..8 {
        let p = g.basis_poly(b);
        assert_eq!(g.nf(&p).unwrap(), p);
    }
    for a in ["a1", "a3"] {
        let x = g.parse(a).unwrap();
        assert_eq!(h.gamma(&x).unwrap(), x);
    }
}

#[test]
fn coactions_are_counital_and_coassociative() {
    let h = hopf();
    let m = Comodule::new(h).unwrap();
    for i in 0..6 {
        let psi = h.delta(&m.e[i]).unwrap();
        assert_eq!(h.counit_left(&psi).unwrap(), m.e[i]);
        assert_eq!(h.delta_at(&psi, 0).unwrap(), h.delta_at(&psi, 1).unwrap());
        for c in psi.terms.values().flat_map(|p| p.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>()) {
            assert!(c.denom() % 2u32 == 1u32.into());
        }
    }
}
