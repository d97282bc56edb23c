//! Tensor powers of `Γ` over `A`, the coproduct, counit, antipode and the `C2` action.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::algebroid::{monomials, split, weight, Algebroid, A1, A3, S, T};
use super::curve::{substitute, Poly};
use crate::algebra::Monomial;
use crate::error::Result;
use crate::exact::scalar::TwoLocal;
use crate::report::Outcome;

/// An element of the `k`-fold tensor power in left normal form: the key lists the basis
/// elements of factors `2..k`, the value is the first factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub k: usize,
    pub terms: BTreeMap<Vec<u8>, Poly>,
}

impl Tensor {
    pub fn zero(k: usize) -> Self {
        Tensor { k, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_at(&mut self, key: Vec<u8>, p: &Poly) {
        let e = self.terms.entry(key.clone()).or_insert_with(Poly::zero);
        *e = e.add(p);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_at(k.clone(), v);
        }
        out
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        self.add(&o.scale(&-TwoLocal::one()))
    }

    pub fn scale(&self, c: &TwoLocal) -> Tensor {
        let mut out = Tensor::zero(self.k);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v.scale(c));
        }
        out
    }
}

/// Which factor of `Γ ⊗ Γ` carries the first of two composed transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    FirstLeft,
    FirstRight,
}

/// `Γ` with its coproduct.
#[derive(Debug)]
pub struct Hopf {
    pub g: Algebroid,
    pub orientation: Orientation,
    /// `Δ(s)`, `Δ(t)` as polynomials in `a1, a3, s1, t1, s2, t2`.
    pub delta_s: Poly,
    pub delta_t: Poly,
    delta_cache: Mutex<HashMap<Monomial, Tensor>>,
}

// variables of the two-factor polynomial ring
const S1: usize = 2;
const T1: usize = 3;
const S2: usize = 4;
const T2: usize = 5;

impl Hopf {
    pub fn new(g: Algebroid) -> Result<Hopf> {
        Self::with_orientation(g, Orientation::FirstLeft)
    }

    /// Derives `Δ(s)`, `Δ(t)` from the composite of two transformations, the second starting
    /// at the target curve of the first.
    pub fn with_orientation(g: Algebroid, orientation: Orientation) -> Result<Hopf> {
        let (s1, t1, s2, t2) = (Poly::var(S1), Poly::var(T1), Poly::var(S2), Poly::var(T2));
        let (first, second) = match orientation {
            Orientation::FirstLeft => ((s1, t1), (s2, t2)),
            Orientation::FirstRight => ((s2, t2), (s1, t1)),
        };
        let phi1 = g.transformation(&first.0, &first.1);
        let a1_mid = substitute(&g.eta_r_a1, S, &first.0);
        let r2 = substitute(&substitute(&g.r, S, &second.0), A1, &a1_mid);
        let phi2 = super::curve::UnipotentTransformation::new(r2, second.0.clone(), second.1.clone());
        let comp = phi1.compose(&phi2);
        Ok(Hopf {
            g,
            orientation,
            delta_s: comp.s,
            delta_t: comp.t,
            delta_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Normal form of the pure tensor `xs[0] ⊗ ... ⊗ xs[k-1]`.
    pub fn tensor(&self, xs: &[Poly]) -> Result<Tensor> {
        let k = xs.len();
        let mut out = Tensor::zero(k);
        if k == 1 {
            let nf = self.g.nf(&xs[0])?;
            if !nf.is_zero() {
                out.terms.insert(Vec::new(), nf);
            }
            return Ok(out);
        }
        for (b, alpha) in self.g.decompose(&xs[k - 1])? {
            let mut prefix = xs[..k - 1].to_vec();
            prefix[k - 2] = prefix[k - 2].mul(&self.g.eta_r(&alpha)?);
            for (mut key, v) in self.tensor(&prefix)?.terms {
                key.push(b as u8);
                out.add_at(key, &v);
            }
        }
        Ok(out)
    }

    /// `(L1) ⊗ b2 ⊗ ...`, terms in key order; `0` when empty.
    pub fn fmt_tensor(&self, x: &Tensor) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let names = self.g.names();
        x.terms
            .iter()
            .map(|(key, left)| {
                let mut f = vec![format!("({})", self.g.fmt(left))];
                f.extend(key.iter().map(|&b| self.g.basis_poly(b as usize).fmt_with(&names)));
                f.join(" ⊗ ")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The factors of one normal-form term.
    fn factors(&self, key: &[u8], left: &Poly) -> Vec<Poly> {
        let mut f = vec![left.clone()];
        f.extend(key.iter().map(|&b| self.g.basis_poly(b as usize)));
        f
    }

    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(x.k);
        for (kx, lx) in &x.terms {
            for (ky, ly) in &y.terms {
                let mut f = vec![lx.mul(ly)];
                for (a, b) in kx.iter().zip(ky) {
                    f.push(self.g.basis_poly(*a as usize).mul(&self.g.basis_poly(*b as usize)));
                }
                out = out.add(&self.tensor(&f)?);
            }
        }
        Ok(out)
    }

    /// A polynomial in `a1, a3, s1, t1, s2, t2` read as an element of `Γ ⊗ Γ`.
    fn split_to_tensor(&self, p: &Poly) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (m, c) in p.terms() {
            let left = Poly::term(
                c.clone(),
                Monomial::from_exponents(vec![m.exponent(A1), m.exponent(A3), m.exponent(S1), m.exponent(T1)]),
            );
            let right = Poly::term(
                TwoLocal::one(),
                Monomial::from_exponents(vec![0, 0, m.exponent(S2), m.exponent(T2)]),
            );
            out = out.add(&self.tensor(&[left, right])?);
        }
        Ok(out)
    }

    fn delta_var(&self, i: usize) -> Result<Tensor> {
        match i {
            S => self.split_to_tensor(&self.delta_s),
            T => self.split_to_tensor(&self.delta_t),
            _ => self.tensor(&[Poly::var(i), Poly::one()]),
        }
    }

    fn delta_monomial(&self, m: &Monomial) -> Result<Tensor> {
        if let Some(x) = self.delta_cache.lock().expect("delta cache").get(m) {
            return Ok(x.clone());
        }
        let out = if m.is_one() {
            self.tensor(&[Poly::one(), Poly::one()])?
        } else {
            let i = (0..4).find(|&i| m.exponent(i) > 0).expect("nonconstant");
            let rest = m.div(&Monomial::var(i)).expect("divisible");
            self.mul(&self.delta_var(i)?, &self.delta_monomial(&rest)?)?
        };
        self.delta_cache.lock().expect("delta cache").insert(m.clone(), out.clone());
        Ok(out)
    }

    /// `Δ` on any polynomial representative.
    pub fn delta(&self, p: &Poly) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (m, c) in p.terms() {
            out = out.add(&self.delta_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// `Δ(x) - x ⊗ 1 - 1 ⊗ x`.
    pub fn delta_bar(&self, p: &Poly) -> Result<Tensor> {
        Ok(self
            .delta(p)?
            .sub(&self.tensor(&[p.clone(), Poly::one()])?)
            .sub(&self.tensor(&[Poly::one(), p.clone()])?))
    }

    /// Applies `Δ` to factor `i` of a `k`-fold tensor.
    pub fn delta_at(&self, x: &Tensor, i: usize) -> Result<Tensor> {
        let mut out = Tensor::zero(x.k + 1);
        for (key, left) in &x.terms {
            let f = self.factors(key, left);
            for (k2, l2) in &self.delta(&f[i])?.terms {
                let mut g: Vec<Poly> = f[..i].to_vec();
                g.push(l2.clone());
                g.push(self.g.basis_poly(k2[0] as usize));
                g.extend(f[i + 1..].iter().cloned());
                out = out.add(&self.tensor(&g)?);
            }
        }
        Ok(out)
    }

    /// `(ε ⊗ id)` on `Γ ⊗ Γ`.
    pub fn counit_left(&self, x: &Tensor) -> Result<Poly> {
        let mut out = Poly::zero();
        for (key, left) in &x.terms {
            out = out.add(&self.g.epsilon(left).mul(&self.g.basis_poly(key[0] as usize)));
        }
        self.g.nf(&out)
    }

    /// `(id ⊗ ε)` on `Γ ⊗ Γ`.
    pub fn counit_right(&self, x: &Tensor) -> Poly {
        x.terms.get(&vec![0u8]).cloned().unwrap_or_else(Poly::zero)
    }

    fn ring_map(&self, p: &Poly, images: &[Poly; 4]) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut acc = Poly::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    acc = self.g.nf(&acc.mul(&img.pow(e)))?;
                }
            }
            out = out.add(&acc);
        }
        self.g.nf(&out)
    }

    /// The antipode, from the inverse transformation.
    pub fn antipode(&self, p: &Poly) -> Result<Poly> {
        let inv = self.g.transformation(&Poly::var(S), &Poly::var(T)).invert();
        let images = [self.g.eta_r_a1.clone(), self.g.eta_r_a3.clone(), inv.s, inv.t];
        self.ring_map(p, &images)
    }

    /// The `C2` action: `a1, a3` fixed, `s -> s - η_R(a1)`, `t -> t - η_R(a3)`.
    pub fn gamma(&self, p: &Poly) -> Result<Poly> {
        let images = [
            Poly::var(A1),
            Poly::var(A3),
            Poly::var(S).sub(&self.g.eta_r_a1),
            Poly::var(T).sub(&self.g.eta_r_a3),
        ];
        self.ring_map(p, &images)
    }

    /// `res ∘ tr = 1 + γ`.
    pub fn res_tr(&self, p: &Poly) -> Result<Poly> {
        self.g.nf(&p.add(&self.gamma(p)?))
    }

    /// Basis of `Γ` over `Z(2)` through degree `maxdeg`: `A`-monomials times basis elements.
    pub fn z2_basis(&self, maxdeg: i64) -> Vec<Poly> {
        (0..=maxdeg)
            .step_by(2)
            .flat_map(|d| monomials(d).into_iter().filter(|m| split(m).1.is_some()))
            .map(|m| Poly::term(TwoLocal::one(), m))
            .collect()
    }

    /// Hopf algebroid axioms through internal degree `maxdeg`.
    pub fn axiom_check(&self, maxdeg: i64) -> Result<Outcome> {
        let mut out = Outcome::new();
        let g = &self.g;
        let show = |t: &Tensor| self.fmt_tensor(t);
        for (name, rel) in [("R1", &g.r1), ("R2", &g.r2)] {
            let d = self.delta(rel)?;
            out.detail(None, format!("Δ({name})"), "0", show(&d));
            let c = self.antipode(rel)?;
            out.detail(None, format!("c({name})"), "0", g.fmt(&c));
            let y = self.gamma(rel)?;
            out.detail(None, format!("γ({name})"), "0", g.fmt(&y));
        }
        for (name, eta) in [("a1", &g.eta_r_a1), ("a3", &g.eta_r_a3)] {
            let lhs = self.delta(eta)?;
            let rhs = self.tensor(&[Poly::one(), eta.clone()])?;
            out.detail(None, format!("Δ(η_R({name})) = 1 ⊗ η_R({name})"), show(&rhs), show(&lhs));
            out.detail(None, format!("ε(η_R({name}))"), name.to_string(), g.fmt(&g.epsilon(eta)));
        }
        for x in self.z2_basis(maxdeg) {
            let d = x.terms().next().map_or(0, |(m, _)| weight(m));
            let name = g.fmt(&x);
            let dx = self.delta(&x)?;
            let left = self.counit_left(&dx)?;
            out.detail(None, format!("(ε⊗id)Δ({name}) [deg {d}]"), name.clone(), g.fmt(&left));
            let right = self.counit_right(&dx);
            out.detail(None, format!("(id⊗ε)Δ({name}) [deg {d}]"), name.clone(), g.fmt(&right));
            let l3 = self.delta_at(&dx, 0)?;
            let r3 = self.delta_at(&dx, 1)?;
            let same = l3 == r3;
            out.detail(
                None,
                format!("coassociativity on {name} [deg {d}]"),
                "equal",
                if same { "equal".to_string() } else { format!("{} vs {}", show(&l3), show(&r3)) },
            );
            let eps = g.epsilon(&x);
            let mut cl = Poly::zero();
            let mut cr = Poly::zero();
            for (key, l) in &dx.terms {
                let b = g.basis_poly(key[0] as usize);
                cl = cl.add(&self.antipode(l)?.mul(&b));
                cr = cr.add(&l.mul(&self.antipode(&b)?));
            }
            let cl = g.nf(&cl)?;
            let cr = g.nf(&cr)?;
            out.detail(None, format!("μ(c⊗id)Δ({name}) = η_Rε"), g.fmt(&g.eta_r(&eps)?), g.fmt(&cl));
            out.detail(None, format!("μ(id⊗c)Δ({name}) = η_Lε"), g.fmt(&eps), g.fmt(&cr));
            let cc = self.antipode(&self.antipode(&x)?)?;
            out.detail(None, format!("c(c({name}))"), name.clone(), g.fmt(&cc));
        }
        Ok(out)
    }

    /// `γ` is an involution fixing `A`, and `res ∘ tr` lands in the fixed ring.
    pub fn action_check(&self, maxdeg: i64) -> Result<Outcome> {
        let mut out = Outcome::new();
        let g = &self.g;
        for x in self.z2_basis(maxdeg) {
            let name = g.fmt(&x);
            let yy = self.gamma(&self.gamma(&x)?)?;
            out.detail(None, format!("γ(γ({name}))"), name.clone(), g.fmt(&yy));
            let rt = self.res_tr(&x)?;
            let fixed = self.gamma(&rt)?;
            out.detail(None, format!("γ(res tr({name}))"), g.fmt(&rt), g.fmt(&fixed));
        }
        for a in ["a1", "a3"] {
            let x = g.parse(a)?;
            out.detail(None, format!("γ({a})"), a.to_string(), g.fmt(&self.gamma(&x)?));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> Hopf {
        Hopf::new(Algebroid::build().unwrap()).unwrap()
    }

    #[test]
    fn coproduct_of_generators() {
        let h = hopf();
        let g = &h.g;
        let ds = h.delta(&g.parse("s").unwrap()).unwrap();
        let expect = h
            .tensor(&[g.parse("s").unwrap(), Poly::one()])
            .unwrap()
            .add(&h.tensor(&[Poly::one(), g.parse("s").unwrap()]).unwrap());
        assert_eq!(ds, expect);
        let dt = h.delta(&g.parse("t").unwrap()).unwrap();
        let expect = h
            .tensor(&[g.parse("t").unwrap(), Poly::one()])
            .unwrap()
            .add(&h.tensor(&[Poly::one(), g.parse("t").unwrap()]).unwrap())
            .add(&h.tensor(&[g.parse("s").unwrap(), g.r.clone()]).unwrap());
        assert_eq!(dt, expect);
        assert_eq!(h.counit_left(&dt).unwrap(), g.parse("t").unwrap());
    }

    #[test]
    fn action_on_generators() {
        let h = hopf();
        let g = &h.g;
        assert_eq!(h.gamma(&g.parse("s").unwrap()).unwrap(), g.parse("-s - a1").unwrap());
        assert_eq!(h.res_tr(&Poly::one()).unwrap(), Poly::int(2));
        assert_eq!(h.res_tr(&g.parse("s^2").unwrap()).unwrap(), g.parse("a1^2 + 2*a1*s + 2*s^2").unwrap());
    }

    #[test]
    fn axioms_in_low_degrees() {
        let h = hopf();
        let o = h.axiom_check(12).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().take(3).collect::<Vec<_>>());
        let o = h.action_check(12).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().take(3).collect::<Vec<_>>());
    }
}
