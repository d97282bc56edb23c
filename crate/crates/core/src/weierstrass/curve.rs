//! Cubic curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` and the unipotent coordinate
//! changes `x -> x + r`, `y -> y + s x + t` between them.

use num_traits::{One, Zero};

use crate::algebra::{Degree, GeneratorTable, Monomial, PolyElement};
use crate::error::{Error, Result};
use crate::exact::scalar::{Coeff, TwoLocal};

pub type Poly = PolyElement<TwoLocal>;

/// Coefficients `(a1, a2, a3, a4, a6)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve {
    pub a: [Poly; 5],
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnipotentTransformation {
    pub r: Poly,
    pub s: Poly,
    pub t: Poly,
}

impl WeierstrassCurve {
    pub fn new(a1: Poly, a2: Poly, a3: Poly, a4: Poly, a6: Poly) -> Self {
        WeierstrassCurve { a: [a1, a2, a3, a4, a6] }
    }

    pub fn cusp() -> Self {
        let z = Poly::zero();
        Self::new(z.clone(), z.clone(), z.clone(), z.clone(), z)
    }

    pub fn a1(&self) -> &Poly {
        &self.a[0]
    }
    pub fn a2(&self) -> &Poly {
        &self.a[1]
    }
    pub fn a3(&self) -> &Poly {
        &self.a[2]
    }
    pub fn a4(&self) -> &Poly {
        &self.a[3]
    }
    pub fn a6(&self) -> &Poly {
        &self.a[4]
    }
}

impl UnipotentTransformation {
    pub fn new(r: Poly, s: Poly, t: Poly) -> Self {
        UnipotentTransformation { r, s, t }
    }

    pub fn identity() -> Self {
        Self::new(Poly::zero(), Poly::zero(), Poly::zero())
    }

    /// First `self`, then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            self.r.add(&other.r),
            self.s.add(&other.s),
            self.t.add(&other.t).add(&self.s.mul(&other.r)),
        )
    }

    pub fn invert(&self) -> Self {
        Self::new(self.r.neg(), self.s.neg(), self.t.neg().add(&self.s.mul(&self.r)))
    }
}

/// Index of the first variable not used by any coefficient; `x` and `y` go there.
fn fresh_index(polys: &[&Poly]) -> usize {
    polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.exponents().len()))
        .max()
        .unwrap_or(0)
}

/// The defining polynomial `y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6` with `x`, `y` the
/// variables at `ix`, `ix + 1`.
fn equation(c: &WeierstrassCurve, x: &Poly, y: &Poly) -> Poly {
    y.mul(y)
        .add(&c.a1().mul(x).mul(y))
        .add(&c.a3().mul(y))
        .sub(&x.pow(3))
        .sub(&c.a2().mul(&x.mul(x)))
        .sub(&c.a4().mul(x))
        .sub(c.a6())
}

/// Coefficient of `x^i y^j`, as a polynomial in the remaining variables.
fn coefficient(p: &Poly, ix: usize, i: u32, j: u32) -> Poly {
    Poly::from_terms(p.terms().filter_map(|(m, c)| {
        if m.exponent(ix) != i || m.exponent(ix + 1) != j {
            return None;
        }
        let mut e = m.exponents().to_vec();
        e.truncate(ix);
        Some((Monomial::from_exponents(e), c.clone()))
    }))
}

/// Substitutes `x -> x + r`, `y -> y + s x + t` in the equation of `c` and reads off the new
/// coefficients, checking that the result is again in Weierstrass form.
pub fn transform_curve(c: &WeierstrassCurve, phi: &UnipotentTransformation) -> Result<WeierstrassCurve> {
    let ix = fresh_index(&[&c.a[0], &c.a[1], &c.a[2], &c.a[3], &c.a[4], &phi.r, &phi.s, &phi.t]);
    let x = Poly::var(ix);
    let y = Poly::var(ix + 1);
    let f = equation(c, &x.add(&phi.r), &y.add(&phi.s.mul(&x)).add(&phi.t));
    let out = WeierstrassCurve::new(
        coefficient(&f, ix, 1, 1),
        coefficient(&f, ix, 2, 0).neg(),
        coefficient(&f, ix, 0, 1),
        coefficient(&f, ix, 1, 0).neg(),
        coefficient(&f, ix, 0, 0).neg(),
    );
    if equation(&out, &x, &y) != f {
        return Err(Error::NotHomogeneous("substituted equation is not in Weierstrass form".into()));
    }
    Ok(out)
}

/// Solves `p = 0` for the variable `i`, assuming `p` is `unit * var_i + rest` with `rest` free of it.
pub fn solve_linear(p: &Poly, i: usize) -> Result<Poly> {
    let mut coef = TwoLocal::zero();
    let mut rest = Poly::zero();
    for (m, c) in p.terms() {
        match m.exponent(i) {
            0 => rest.add_term(m.clone(), c.clone()),
            1 if m == &Monomial::var(i) => coef = c.clone(),
            _ => return Err(Error::EliminationFailure {
                degree: 0,
                monomial: format!("{m:?}"),
            }),
        }
    }
    let inv = TwoLocal::one().try_div(&coef).ok_or_else(|| Error::EliminationFailure {
        degree: 0,
        monomial: format!("coefficient {coef}"),
    })?;
    Ok(rest.scale(&-inv))
}

/// Replaces the variable `i` by `value`.
pub fn substitute(p: &Poly, i: usize, value: &Poly) -> Poly {
    let mut out = Poly::zero();
    let mut powers: Vec<Poly> = vec![Poly::one()];
    for (m, c) in p.terms() {
        let e = m.exponent(i) as usize;
        while powers.len() <= e {
            let next = powers.last().expect("nonempty").mul(value);
            powers.push(next);
        }
        let mut rest = m.exponents().to_vec();
        if i < rest.len() {
            rest[i] = 0;
        }
        let term = Poly::term(c.clone(), Monomial::from_exponents(rest));
        out = out.add(&term.mul(&powers[e]));
    }
    out
}

/// Grading used throughout: a single internal degree, stored as the first component.
pub fn internal(d: i64) -> Degree {
    Degree::new(d, 0, 0)
}

pub fn table(gens: &[(&str, i64)]) -> GeneratorTable {
    GeneratorTable::new(gens.iter().map(|(n, d)| (n.to_string(), internal(*d))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn cusp_under_translation() {
        // u = var 0, v = var 1
        let phi = UnipotentTransformation::new(Poly::zero(), v(0), v(1));
        let c = transform_curve(&WeierstrassCurve::cusp(), &phi).unwrap();
        let two = TwoLocal::frac(2, 1);
        assert_eq!(c.a1(), &v(0).scale(&two));
        assert_eq!(c.a2(), &v(0).mul(&v(0)).neg());
        assert_eq!(c.a3(), &v(1).scale(&two));
        assert_eq!(c.a4(), &v(0).mul(&v(1)).scale(&-two.clone()));
        assert_eq!(c.a6(), &v(1).mul(&v(1)).neg());
    }

    #[test]
    fn identity_fixes_curve() {
        let c = WeierstrassCurve::new(v(0), v(1), v(2), v(3), v(4));
        assert_eq!(transform_curve(&c, &UnipotentTransformation::identity()).unwrap(), c);
    }

    #[test]
    fn composition_is_a_right_action() {
        let c = WeierstrassCurve::new(v(0), v(1), v(2), v(3), v(4));
        let p1 = UnipotentTransformation::new(v(5), v(6), v(7));
        let p2 = UnipotentTransformation::new(v(8), v(9), v(10));
        let lhs = transform_curve(&c, &p1.compose(&p2)).unwrap();
        let rhs = transform_curve(&transform_curve(&c, &p1).unwrap(), &p2).unwrap();
        assert_eq!(lhs, rhs);
        let id = p1.compose(&p1.invert());
        assert_eq!(id, UnipotentTransformation::identity());
        assert_eq!(p1.invert().compose(&p1), UnipotentTransformation::identity());
        assert_eq!(p1.compose(&p2).invert(), p2.invert().compose(&p1.invert()));
    }
}
