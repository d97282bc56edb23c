//! The comodule algebra `M = A{1, e4, e6, e8, e10, e12}` inside `Γ`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::algebroid::{a_monomials, weight};
use super::curve::Poly;
use super::hopf::{Hopf, Tensor};
use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::exact::group::{Lattice, Subquotient};
use crate::exact::local::solve_local;
use crate::exact::matrix::{SparseMatrix, SparseVec};
use crate::exact::scalar::{common_denominator, Coeff, TwoLocal};
use crate::report::Outcome;

pub const E_NAMES: [&str; 6] = ["1", "e4", "e6", "e8", "e10", "e12"];
pub const E_DEGREES: [i64; 6] = [0, 4, 6, 8, 10, 12];

const E_FORMS: [&str; 6] = [
    "1",
    "2*s^2 + 2*s*a1",
    "a1^2*s + a1*s^2",
    "2*s*t + a1*t + a3*s + a1^2*s^2/3 + a1*s^3/3",
    "a1*a3*s + a3*s^2",
    "2*s^3*t - a1^2*a3*s + a3*s^3 + a1^3*t + 4*a1^2*s*t + 5*a1*s^2*t",
];

/// `res tr(x)` as displayed.
pub const RESTRICTIONS: [(&str, &str); 6] = [
    ("s^2", "a1^2 + 2*a1*s + 2*s^2"),
    ("s^3", "-a1^3 - 3*a1^2*s - 3*a1*s^2"),
    ("t", "-a3 - a1^2*s/3 - a1*s^2/3"),
    ("s*t", "a1*a3 + a1^3*s/3 + a3*s + 2*a1^2*s^2/3 + a1*s^3/3 + a1*t + 2*s*t"),
    (
        "s^2*t",
        "-a1^2*a3 - a1^4*s/3 - 3*a1*a3*s - a1^3*s^2 - a3*s^2 - 2*a1^2*s^3/3 - 2*a1^2*t - 4*a1*s*t",
    ),
    (
        "s^3*t",
        "a1^3*a3 + a1^5*s/3 + 6*a1^2*a3*s + 4*a1^4*s^2/3 + 4*a1*a3*s^2 + a1^3*s^3 + a3*s^3 + 4*a1^3*t \
         + 10*a1^2*s*t + 5*a1*s^2*t + 2*s^3*t",
    ),
];

/// `ψ(e_i)` as displayed: pairs (left factor, module generator).
pub const COACTIONS: [(&str, &[(&str, &str)]); 5] = [
    ("e4", &[("1", "e4"), ("e4", "1")]),
    ("e6", &[("1", "e6"), ("-s", "e4"), ("e6", "1")]),
    ("e8", &[("1", "e8"), ("2*s", "e6"), ("-s^2/3", "e4"), ("e8", "1")]),
    ("e10", &[("1", "e10"), ("s^2 - s*a1/3", "e6"), ("t - s^3/3", "e4"), ("e10", "1")]),
    (
        "e12",
        &[
            ("1", "e12"),
            ("5*s", "e10"),
            ("3*s^2 + 3*a1*s", "e8"),
            ("5*t + 44/9*s^3 + 16/9*a1*s^2 + 2/3*a1^2*s", "e6"),
            ("a1*s^3 - 3*a3*s - 3*a1*t - 11*s*t", "e4"),
            ("e12", "1"),
        ],
    ),
];

/// `(coefficient, symbol)` pairs: `sum c_k alpha_k symbol_k`.
pub type Combination = Vec<(String, String)>;

pub fn fmt_combination(c: &Combination) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter().map(|(a, s)| format!("({a})*{s}")).collect::<Vec<_>>().join(" + ")
}

pub struct Comodule<'a> {
    pub h: &'a Hopf,
    pub e: Vec<Poly>,
}

impl<'a> Comodule<'a> {
    pub fn new(h: &'a Hopf) -> Result<Self> {
        let e = E_FORMS.iter().map(|f| h.g.parse(f)).collect::<Result<Vec<_>>>()?;
        Ok(Comodule { h, e })
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        E_NAMES
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::Parse { input: name.to_string(), message: "unknown module generator".into() })
    }

    /// Realization of `sum alpha_i e_i`.
    pub fn realize(&self, coeffs: &[Poly]) -> Result<Poly> {
        let mut out = Poly::zero();
        for (c, e) in coeffs.iter().zip(&self.e) {
            out = out.add(&c.mul(e));
        }
        self.h.g.nf(&out)
    }

    /// The six displayed restrictions.
    pub fn restriction_check(&self) -> Result<Outcome> {
        let g = &self.h.g;
        let mut out = Outcome::new();
        let one = self.h.res_tr(&Poly::one())?;
        out.detail(None, "res tr(1)", "2", g.fmt(&one));
        for (x, display) in RESTRICTIONS {
            let computed = self.h.res_tr(&g.parse(x)?)?;
            let expected = g.nf(&g.parse(display)?)?;
            out.detail(None, format!("res tr({x})"), g.fmt(&expected), g.fmt(&computed));
        }
        Ok(out)
    }

    /// Writes each `e_i` as a `Z(2)`-combination of `alpha * res tr(x)` and `A`-monomials.
    pub fn e_class_combinations(&self) -> Result<(Outcome, BTreeMap<String, Combination>)> {
        let g = &self.h.g;
        let mut out = Outcome::new();
        let mut table = BTreeMap::new();
        let sources: Vec<(&str, Poly)> = RESTRICTIONS
            .iter()
            .map(|(x, _)| Ok((*x, self.h.res_tr(&g.parse(x)?)?)))
            .collect::<Result<_>>()?;
        for i in 1..6 {
            let d = E_DEGREES[i];
            // columns: alpha * res tr(x), then A-monomials
            let mut labels: Vec<(Poly, String)> = Vec::new();
            let mut cols = Vec::new();
            for (x, rt) in &sources {
                let dx = weight(g.parse(x)?.leading().expect("monomial").0);
                for alpha in a_monomials(d - dx) {
                    let a = Poly::term(TwoLocal::one(), alpha);
                    cols.push(g.coords(&a.mul(rt), d)?);
                    labels.push((a, format!("res tr({x})")));
                }
            }
            for alpha in a_monomials(d) {
                let a = Poly::term(TwoLocal::one(), alpha);
                cols.push(g.coords(&a, d)?);
                labels.push((a, "1".into()));
            }
            let target = g.coords(&self.e[i], d)?;
            let name = E_NAMES[i];
            match solve_local(&cols, &target) {
                Some(x) => {
                    let comb: Combination = x
                        .iter()
                        .zip(&labels)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, (a, s))| (g.fmt(&a.scale(c)), s.clone()))
                        .collect();
                    out.detail(None, format!("{name} in the span of restrictions"), "yes", "yes");
                    out.note(format!("{name} = {}", fmt_combination(&comb)));
                    table.insert(name.to_string(), comb);
                }
                None => out.fail(None, format!("{name} in the span of restrictions"), "yes", "no"),
            }
        }
        for (e, lhs) in [("e4", "res tr(s^2) - a1^2"), ("e6", "(-res tr(s^3) - a1^3)/3")] {
            let rt = |x: &str| -> Result<Poly> { self.h.res_tr(&g.parse(x)?) };
            let v = match e {
                "e4" => rt("s^2")?.sub(&g.parse("a1^2")?),
                _ => rt("s^3")?.neg().sub(&g.parse("a1^3")?).scale(&TwoLocal::frac(1, 3)),
            };
            let i = self.index(e)?;
            out.detail(None, format!("{e} = {lhs}"), g.fmt(&self.e[i]), g.fmt(&g.nf(&v)?));
        }
        Ok((out, table))
    }

    /// Generators `(i, alpha)` of `A^6` in degree `d`.
    fn free_generators(&self, d: i64) -> Vec<(usize, Monomial)> {
        (0..6)
            .flat_map(|i| a_monomials(d - E_DEGREES[i]).into_iter().map(move |m| (i, m)))
            .collect()
    }

    /// The three relations, as `(coefficient, generator index)` lists.
    fn relations(&self) -> Result<Vec<(&'static str, Vec<(Poly, usize)>)>> {
        let g = &self.h.g;
        let p = |s: &str| g.parse(s);
        Ok(vec![
            ("a1*e4 - 2*e6", vec![(p("a1")?, 1), (p("-2")?, 2)]),
            ("a3*e4 - 2*e10", vec![(p("a3")?, 1), (p("-2")?, 4)]),
            ("a3*e6 - a1*e10", vec![(p("a3")?, 2), (p("-a1")?, 4)]),
        ])
    }

    /// Relations hold in `Γ`, and generate the kernel of `A^6 -> Γ` through `maxdeg` (2-locally).
    pub fn module_check(&self, maxdeg: i64) -> Result<Outcome> {
        let g = &self.h.g;
        let mut out = Outcome::new();
        let rels = self.relations()?;
        for (name, rel) in &rels {
            let mut coeffs = vec![Poly::zero(); 6];
            for (c, i) in rel {
                coeffs[*i] = coeffs[*i].add(c);
            }
            out.detail(None, format!("{name} in Γ"), "0", g.fmt(&self.realize(&coeffs)?));
        }
        for d in (0..=maxdeg).step_by(2) {
            let gens = self.free_generators(d);
            if gens.is_empty() {
                continue;
            }
            let index: HashMap<&(usize, Monomial), usize> = gens.iter().enumerate().map(|(k, x)| (x, k)).collect();
            let cols: Vec<Vec<TwoLocal>> = gens
                .iter()
                .map(|(i, m)| g.coords(&Poly::term(TwoLocal::one(), m.clone()).mul(&self.e[*i]), d))
                .collect::<Result<_>>()?;
            let den = common_denominator(cols.iter().flatten());
            let rows = g.gamma_basis(d).len();
            let m = SparseMatrix::new(
                rows,
                cols.iter()
                    .map(|c| SparseVec::from_dense(&c.iter().map(|x| x.numerator_scaled(&den)).collect::<Vec<_>>()))
                    .collect(),
            );
            let kernel = Lattice::kernel(&m);
            let mut rel_vecs = Vec::new();
            for (_, rel) in &rels {
                let shift = rel.iter().map(|(c, i)| E_DEGREES[*i] + poly_weight(c)).next().unwrap_or(0);
                for beta in a_monomials(d - shift) {
                    let mut v = vec![BigInt::zero(); gens.len()];
                    for (c, i) in rel {
                        for (cm, cc) in c.terms() {
                            let k = index[&(*i, cm.mul(&beta))];
                            v[k] += cc.numerator_scaled(&BigInt::one());
                        }
                    }
                    rel_vecs.push(SparseVec::from_dense(&v));
                }
            }
            let item = format!("kernel of A^6 -> Γ modulo the relations in degree {d}");
            match Subquotient::new(kernel.clone(), &rel_vecs) {
                Ok(q) => {
                    let local = q.group().localized_at_two();
                    out.detail(None, item, "0", local.to_string());
                }
                Err(_) => out.fail(None, item, "relations in the kernel", "a relation is not in the kernel"),
            }
            // rank of the image equals the rank of M_d
            let image_rank = gens.len() - kernel.rank();
            let m_rank = gens.len() - Lattice::span(gens.len(), &rel_vecs).rank();
            out.detail(
                None,
                format!("rank of M -> Γ in degree {d}"),
                m_rank.to_string(),
                image_rank.to_string(),
            );
        }
        Ok(out)
    }

    /// `ψ(e_i) = Δ(e_i)`.
    pub fn coaction(&self, i: usize) -> Result<Tensor> {
        self.h.delta(&self.e[i])
    }

    pub fn display_tensor(&self, pairs: &[(&str, &str)]) -> Result<Tensor> {
        let mut t = Tensor::zero(2);
        for (l, r) in pairs {
            let left = self.product(l)?;
            let right = self.e[self.index(r)?].clone();
            t = t.add(&self.h.tensor(&[left, right])?);
        }
        Ok(t)
    }

    /// Coordinates of a degree-`d` element of `Γ ⊗ Γ`, right basis element by right basis element.
    fn tensor_coords(&self, x: &Tensor, d: i64) -> Result<Vec<TwoLocal>> {
        let g = &self.h.g;
        let mut v = Vec::new();
        for b in 0..8u8 {
            let wb = weight(&g.basis[b as usize]);
            match x.terms.get(&vec![b]) {
                Some(l) => v.extend(g.coords(l, d - wb)?),
                None => v.extend(std::iter::repeat_n(TwoLocal::zero(), g.gamma_basis(d - wb).len())),
            }
        }
        Ok(v)
    }

    /// Writes `x` of degree `d` in `Γ ⊗ Γ` as `sum c_j ⊗ e_j` with `c_j` in `Γ`, if possible.
    pub fn as_display(&self, x: &Tensor, d: i64) -> Result<Option<Combination>> {
        let g = &self.h.g;
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for j in 0..6 {
            for m in g.gamma_basis(d - E_DEGREES[j]) {
                let c = Poly::term(TwoLocal::one(), m);
                cols.push(self.tensor_coords(&self.h.tensor(&[c.clone(), self.e[j].clone()])?, d)?);
                labels.push((c, j));
            }
        }
        let target = self.tensor_coords(x, d)?;
        Ok(solve_local(&cols, &target).map(|sol| {
            let mut by_gen: BTreeMap<usize, Poly> = BTreeMap::new();
            for (c, (p, j)) in sol.iter().zip(&labels) {
                if !c.is_zero() {
                    let e = by_gen.entry(*j).or_insert_with(Poly::zero);
                    *e = e.add(&p.scale(c));
                }
            }
            by_gen
                .into_iter()
                .rev()
                .map(|(j, c)| (g.fmt(&c), E_NAMES[j].to_string()))
                .collect()
        }))
    }

    /// Displayed coactions against `Δ`, and the comodule axioms on all six generators.
    pub fn coaction_check(&self) -> Result<Outcome> {
        let g = &self.h.g;
        let mut out = Outcome::new();
        let psi1 = self.coaction(0)?;
        out.detail(None, "ψ(1)", "(1) ⊗ 1", self.h.fmt_tensor(&psi1));
        for (name, pairs) in COACTIONS {
            let i = self.index(name)?;
            let computed = self.coaction(i)?;
            let expected = self.display_tensor(pairs)?;
            out.detail(None, format!("ψ({name})"), self.h.fmt_tensor(&expected), self.h.fmt_tensor(&computed));
            if expected != computed {
                let shown = self.as_display(&computed, E_DEGREES[i])?;
                out.note(format!(
                    "computed ψ({name}) = {}",
                    shown.as_ref().map_or("outside Γ ⊗ M".to_string(), fmt_combination)
                ));
            }
        }
        for (i, name) in E_NAMES.iter().enumerate() {
            let psi = self.coaction(i)?;
            let counit = self.h.counit_left(&psi)?;
            out.detail(None, format!("(ε⊗id)ψ({name})"), g.fmt(&self.e[i]), g.fmt(&counit));
            let l = self.h.delta_at(&psi, 0)?;
            let r = self.h.delta_at(&psi, 1)?;
            let same = l == r;
            out.detail(
                None,
                format!("coassociativity of ψ({name})"),
                "equal",
                if same { "equal".to_string() } else { "different".to_string() },
            );
        }
        Ok(out)
    }

    /// Writes `x` of degree `d` as `sum alpha_k e_k`.
    pub fn express(&self, x: &Poly, d: i64) -> Result<Option<Combination>> {
        let g = &self.h.g;
        let gens = self.free_generators(d);
        let cols: Vec<Vec<TwoLocal>> = gens
            .iter()
            .map(|(i, m)| g.coords(&Poly::term(TwoLocal::one(), m.clone()).mul(&self.e[*i]), d))
            .collect::<Result<_>>()?;
        let target = g.coords(x, d)?;
        Ok(solve_local(&cols, &target).map(|sol| {
            let mut by_gen: BTreeMap<usize, Poly> = BTreeMap::new();
            for (c, (i, m)) in sol.iter().zip(&gens) {
                if !c.is_zero() {
                    let e = by_gen.entry(*i).or_insert_with(Poly::zero);
                    *e = e.add(&Poly::term(c.clone(), m.clone()));
                }
            }
            by_gen
                .into_iter()
                .map(|(i, c)| (g.fmt(&c), E_NAMES[i].to_string()))
                .collect()
        }))
    }

    /// Products `e_i e_j` of degree at most `maxdeg` re-expressed in `M`.
    pub fn closure_check(&self, maxdeg: i64) -> Result<(Outcome, BTreeMap<String, Combination>)> {
        let g = &self.h.g;
        let mut out = Outcome::new();
        let mut table = BTreeMap::new();
        for i in 1..6 {
            for j in i..6 {
                let d = E_DEGREES[i] + E_DEGREES[j];
                if d > maxdeg {
                    continue;
                }
                let p = g.nf(&self.e[i].mul(&self.e[j]))?;
                let key = format!("{}*{}", E_NAMES[i], E_NAMES[j]);
                match self.express(&p, d)? {
                    Some(c) => {
                        out.detail(None, format!("{key} in M"), "yes", "yes");
                        table.insert(key, c);
                    }
                    None => {
                        out.fail(None, format!("{key} in M"), "yes", "no");
                        out.witness(None, format!("{key} = {}", g.fmt(&p)));
                    }
                }
            }
        }
        for (lhs, rhs) in [("e4*e4", "12*e8"), ("e4*e6", "6*a1*e8")] {
            let l = self.product(lhs)?;
            let r = self.product(rhs)?;
            out.detail(None, format!("{lhs} = {rhs}"), g.fmt(&r), g.fmt(&l));
        }
        Ok((out, table))
    }

    /// Realizes a product of module generators and `A` elements such as `6*a1*e8`.
    fn product(&self, s: &str) -> Result<Poly> {
        if let Ok(i) = self.index(s.trim()) {
            return Ok(self.e[i].clone());
        }
        let mut acc = Poly::one();
        let mut rest = Vec::new();
        for f in s.split('*') {
            match self.index(f.trim()) {
                Ok(i) => acc = acc.mul(&self.e[i]),
                Err(_) => rest.push(f),
            }
        }
        if !rest.is_empty() {
            acc = acc.mul(&self.h.g.parse(&rest.join("*"))?);
        }
        self.h.g.nf(&acc)
    }
}

fn poly_weight(p: &Poly) -> i64 {
    p.leading().map_or(0, |(m, _)| weight(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::Algebroid;

    #[test]
    fn comodule_structure() {
        let h = Hopf::new(Algebroid::build().unwrap()).unwrap();
        let m = Comodule::new(&h).unwrap();
        let o = m.restriction_check().unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().collect::<Vec<_>>());
        let (o, _) = m.e_class_combinations().unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().collect::<Vec<_>>());
        let o = m.coaction_check().unwrap();
        let bad: Vec<&str> = o.failing_details().map(|d| d.item.as_str()).collect();
        assert_eq!(bad, ["ψ(e8)", "ψ(e10)", "ψ(e12)"]);
        let o = m.module_check(12).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().collect::<Vec<_>>());
        let (o, _) = m.closure_check(16).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().collect::<Vec<_>>());
    }
}
