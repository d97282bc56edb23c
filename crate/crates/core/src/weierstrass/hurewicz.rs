//! The mod 2 composite of the cusp isomorphism `(u, v)` with the `(s, t)` isomorphism.

use super::algebroid::{Algebroid, A1, A3, S, T};
use super::curve::{substitute, transform_curve, Poly, UnipotentTransformation, WeierstrassCurve};
use crate::algebra::{parse_poly, PolyElement};
use crate::error::Result;
use crate::exact::scalar::{TwoLocal, F2};
use crate::report::Outcome;

type P2 = PolyElement<F2>;

// joint variables for the exact composite
const U: usize = 4;
const V: usize = 5;

/// `F2[u, v, z1sq, z2sq]` with `u^4 = v^2 = z1sq^4 = z2sq^2 = 0`.
const TARGET: [&str; 4] = ["u", "v", "z1sq", "z2sq"];
const CAPS: [u32; 4] = [4, 2, 4, 2];

fn target_names() -> Vec<String> {
    TARGET.iter().map(|s| s.to_string()).collect()
}

fn truncate(p: &P2) -> P2 {
    P2::from_terms(
        p.terms()
            .filter(|(m, _)| (0..4).all(|i| m.exponent(i) < CAPS[i]))
            .map(|(m, c)| (m.clone(), *c)),
    )
}

fn parse2(s: &str) -> Result<P2> {
    parse_poly(s, &target_names())
}

/// Mod 2 reduction.
fn reduce(p: &Poly) -> P2 {
    P2::from_terms(p.terms().map(|(m, c)| (m.clone(), c.reduce())))
}

/// Applies `x_i -> images[i]` to `p`, truncating as it goes.
fn apply(p: &P2, images: &[P2]) -> P2 {
    let mut out = P2::zero();
    for (m, c) in p.terms() {
        let mut acc = P2::constant(*c);
        for (i, img) in images.iter().enumerate() {
            for _ in 0..m.exponent(i) {
                acc = truncate(&acc.mul(img));
            }
        }
        out = out.add(&acc);
    }
    truncate(&out)
}

fn joint_names() -> Vec<String> {
    ["a1", "a3", "s", "t", "u", "v"].iter().map(|s| s.to_string()).collect()
}

pub fn hurewicz_check(g: &Algebroid) -> Result<Outcome> {
    let mut out = Outcome::new();
    let names = joint_names();
    let tn = target_names();
    let (u, v) = (Poly::var(U), Poly::var(V));

    // the cusp isomorphism: r from the a2 constraint
    let raw = transform_curve(&WeierstrassCurve::cusp(), &UnipotentTransformation::new(Poly::var(S), u.clone(), v.clone()))?;
    let r_f = super::curve::solve_linear(raw.a2(), S)?;
    let f = UnipotentTransformation::new(r_f.clone(), u.clone(), v.clone());
    let c = transform_curve(&WeierstrassCurve::cusp(), &f)?;
    out.detail(None, "r of the cusp isomorphism", "1/3*u^2", r_f.fmt_with(&names));
    out.detail(None, "a1 of the target curve", "2*u", c.a1().fmt_with(&names));
    out.detail(None, "a3 of the target curve", "2*v", c.a3().fmt_with(&names));
    out.detail(None, "a1, a3 vanish mod 2", "0, 0", format!("{}, {}", reduce(c.a1()).fmt_with(&names), reduce(c.a3()).fmt_with(&names)));

    // then (s, t) starting at that curve
    let r_g = substitute(&substitute(&g.r, A1, c.a1()), A3, c.a3());
    let comp = f.compose(&UnipotentTransformation::new(r_g, Poly::var(S), Poly::var(T)));
    out.detail(None, "s-parameter of the composite", "s + u", comp.s.fmt_with(&names));
    let expected_t = Poly::var(T)
        .add(&v)
        .add(&u.mul(&Poly::var(S).pow(2)).scale(&TwoLocal::frac(1, 3)))
        .add(&u.pow(2).mul(&Poly::var(S)).scale(&TwoLocal::frac(2, 3)));
    out.detail(None, "t-parameter of the composite", expected_t.fmt_with(&names), comp.t.fmt_with(&names));

    // dual assignments z1sq -> u + s, z2sq -> u s^2 + v + t, written in F2[u, v, s, t]
    let dual_1 = reduce(&comp.s);
    let dual_2 = reduce(&comp.t);
    out.detail(None, "z1sq -> (mod 2)", "s + u", dual_1.fmt_with(&names));
    let shown2: P2 = parse_poly("u*s^2 + v + t", &names)?;
    out.detail(None, "z2sq -> (mod 2)", shown2.fmt_with(&names), dual_2.fmt_with(&names));

    // h: F2[a1, a3, s, t] -> target
    let zero = P2::zero();
    let h_images = [zero.clone(), zero.clone(), parse2("u + z1sq")?, parse2("u^3 + v + u*z1sq^2 + z2sq")?];
    let h = |p: &Poly| apply(&reduce(p), &h_images);
    out.detail(None, "h(1)", "1", h(&Poly::one()).fmt_with(&tn));
    out.detail(None, "h(s)", "u + z1sq", h(&Poly::var(S)).fmt_with(&tn));
    out.detail(None, "h(t)", parse2("u^3 + v + u*z1sq^2 + z2sq")?.fmt_with(&tn), h(&Poly::var(T)).fmt_with(&tn));

    // h inverts the dual assignments: substitute the duals (u, v fixed) and apply h
    let joint_images = [zero.clone(), zero.clone(), h_images[2].clone(), h_images[3].clone(), parse2("u")?, parse2("v")?];
    let back1 = apply(&dual_1, &joint_images);
    let back2 = apply(&dual_2, &joint_images);
    out.detail(None, "h(u + s)", "z1sq", back1.fmt_with(&tn));
    out.detail(None, "h(u s^2 + v + t)", "z2sq", back2.fmt_with(&tn));

    // h kills the relations, and is nonzero on the transferred classes
    out.detail(None, "h(R1)", "0", h(&g.r1).fmt_with(&tn));
    out.detail(None, "h(R2)", "0", h(&g.r2).fmt_with(&tn));
    for x in ["s^2", "s^3", "t", "s*t", "s^2*t", "s^3*t"] {
        let img = h(&g.parse(x)?);
        let shown = img.fmt_with(&tn);
        if img.is_zero() {
            out.fail(None, format!("h({x}) nonzero"), "nonzero", shown);
        } else {
            out.detail(None, format!("h({x}) nonzero"), "nonzero", "nonzero");
            out.note(format!("h({x}) = {shown}"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_formulas() {
        let g = Algebroid::build().unwrap();
        let o = hurewicz_check(&g).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().collect::<Vec<_>>());
    }
}
