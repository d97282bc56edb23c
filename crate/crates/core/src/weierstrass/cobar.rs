//! Cohomology of the reduced cobar complex `Γ̄^{⊗s} ⊗_A M` in low degrees.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::algebroid::{a_monomials, weight};
use super::comodule::{Comodule, E_DEGREES};
use super::curve::Poly;
use super::hopf::{Hopf, Tensor};
use crate::error::Result;
use crate::exact::group::{AbelianGroup, Lattice, Subquotient};
use crate::exact::matrix::{SparseMatrix, SparseVec};
use crate::exact::scalar::{common_denominator, Coeff, TwoLocal};
use crate::report::Outcome;

/// `Z(2)`, `Z(2)^2 + Z/2`, `0`.
pub fn fmt_local(g: &AbelianGroup) -> String {
    if g.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("Z(2)".to_string()),
        r => parts.push(format!("Z(2)^{r}")),
    }
    for d in &g.invariant_factors {
        parts.push(format!("Z/{d}"));
    }
    parts.join(" + ")
}

/// Keys (right basis indices of factors `2..k`) of total weight at most `d`.
fn keys(h: &Hopf, k: usize, d: i64) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 1..k {
        let mut next = Vec::new();
        for key in &out {
            let w: i64 = key.iter().map(|&b| weight(&h.g.basis[b as usize])).sum();
            for b in 0..8u8 {
                if w + weight(&h.g.basis[b as usize]) <= d {
                    let mut k2 = key.clone();
                    k2.push(b);
                    next.push(k2);
                }
            }
        }
        out = next;
    }
    out
}

struct Ambient {
    slots: Vec<(Vec<u8>, i64, usize)>,
    len: usize,
}

impl Ambient {
    fn new(h: &Hopf, k: usize, d: i64) -> Ambient {
        let mut slots = Vec::new();
        let mut len = 0;
        for key in keys(h, k, d) {
            let w: i64 = key.iter().map(|&b| weight(&h.g.basis[b as usize])).sum();
            slots.push((key, d - w, len));
            len += h.g.gamma_basis(d - w).len();
        }
        Ambient { slots, len }
    }

    fn coords(&self, h: &Hopf, x: &Tensor) -> Result<Vec<TwoLocal>> {
        let mut v = vec![TwoLocal::zero(); self.len];
        for (key, dl, off) in &self.slots {
            if let Some(l) = x.terms.get(key) {
                for (i, c) in h.g.coords(l, *dl)?.into_iter().enumerate() {
                    v[off + i] = c;
                }
            }
        }
        Ok(v)
    }
}

pub struct Cobar<'a> {
    pub m: &'a Comodule<'a>,
}

impl<'a> Cobar<'a> {
    fn h(&self) -> &Hopf {
        self.m.h
    }

    /// `α b1 ⊗ ... ⊗ bs ⊗ e_i` of internal degree `d`, with every `b_j ≠ 1`.
    fn generators(&self, s: usize, d: i64) -> Result<Vec<Tensor>> {
        let h = self.h();
        let mut out = Vec::new();
        for (i, &ei) in E_DEGREES.iter().enumerate() {
            for key in keys(h, s + 1, d - ei) {
                if key.contains(&0) {
                    continue;
                }
                let w: i64 = key.iter().map(|&b| weight(&h.g.basis[b as usize])).sum();
                for alpha in a_monomials(d - ei - w) {
                    let mut f: Vec<Poly> = Vec::with_capacity(s + 1);
                    for &b in &key {
                        f.push(h.g.basis_poly(b as usize));
                    }
                    f.push(self.m.e[i].clone());
                    let a = Poly::term(TwoLocal::one(), alpha);
                    f[0] = a.mul(&f[0]);
                    out.push(h.tensor(&f)?);
                }
            }
        }
        Ok(out)
    }

    /// Inserts `1` as factor `j`.
    fn insert_one(&self, x: &Tensor, j: usize) -> Result<Tensor> {
        let h = self.h();
        let mut out = Tensor::zero(x.k + 1);
        for (key, left) in &x.terms {
            let mut f = vec![left.clone()];
            f.extend(key.iter().map(|&b| h.g.basis_poly(b as usize)));
            f.insert(j, Poly::one());
            out = out.add(&h.tensor(&f)?);
        }
        Ok(out)
    }

    /// The cobar differential on `Γ̄^{⊗s} ⊗ M`, embedded in `Γ^{⊗(s+1)}`.
    pub fn differential(&self, x: &Tensor) -> Result<Tensor> {
        let h = self.h();
        let s = x.k - 1;
        let mut out = Tensor::zero(x.k + 1);
        for i in 0..s {
            let bar = h
                .delta_at(x, i)?
                .sub(&self.insert_one(x, i)?)
                .sub(&self.insert_one(x, i + 1)?);
            out = if i % 2 == 0 { out.sub(&bar) } else { out.add(&bar) };
        }
        let last = h.delta_at(x, s)?.sub(&self.insert_one(x, s)?);
        Ok(if s % 2 == 0 { out.sub(&last) } else { out.add(&last) })
    }

    fn to_integer(cols: &[Vec<TwoLocal>], den: &BigInt) -> Vec<SparseVec> {
        cols.iter()
            .map(|c| SparseVec::from_dense(&c.iter().map(|x| x.numerator_scaled(den)).collect::<Vec<_>>()))
            .collect()
    }

    /// `Ext^{s,d}`, localized at 2.
    pub fn ext(&self, s: usize, d: i64) -> Result<AbelianGroup> {
        if d % 2 != 0 {
            return Ok(AbelianGroup::trivial());
        }
        let h = self.h();
        let gens = self.generators(s, d)?;
        if gens.is_empty() {
            return Ok(AbelianGroup::trivial());
        }
        let here = Ambient::new(h, s + 1, d);
        let next = Ambient::new(h, s + 2, d);
        let g: Vec<Vec<TwoLocal>> = gens.iter().map(|x| here.coords(h, x)).collect::<Result<_>>()?;
        let dg: Vec<Vec<TwoLocal>> = gens
            .iter()
            .map(|x| next.coords(h, &self.differential(x)?))
            .collect::<Result<_>>()?;
        let dden = common_denominator(dg.iter().flatten());
        let kernel = Lattice::kernel(&SparseMatrix::new(next.len, Self::to_integer(&dg, &dden)));
        let cycles: Vec<Vec<TwoLocal>> = kernel
            .basis
            .iter()
            .map(|k| {
                let mut v = vec![TwoLocal::zero(); here.len];
                for (j, col) in g.iter().enumerate() {
                    let c = k.get(j);
                    if c.is_zero() {
                        continue;
                    }
                    let c = TwoLocal::new(c, BigInt::one()).expect("integer");
                    for (x, y) in v.iter_mut().zip(col) {
                        *x = x.clone() + c.clone() * y.clone();
                    }
                }
                v
            })
            .collect();
        let boundaries: Vec<Vec<TwoLocal>> = if s == 0 {
            Vec::new()
        } else {
            self.generators(s - 1, d)?
                .iter()
                .map(|x| here.coords(h, &self.differential(x)?))
                .collect::<Result<_>>()?
        };
        let den = common_denominator(cycles.iter().chain(&boundaries).flatten());
        let zi = Self::to_integer(&cycles, &den);
        let bi = Self::to_integer(&boundaries, &den);
        // boundaries are cycles only 2-locally; adding them changes the cycle lattice by odd index
        let mut all = zi;
        all.extend(bi.iter().cloned());
        let q = Subquotient::new(Lattice::span(here.len, &all), &bi)?;
        Ok(q.group().localized_at_two())
    }

    /// `Ext^{s,t}` for `s <= s_max`, `t <= t_max`.
    pub fn table(&self, s_max: usize, t_max: i64) -> Result<BTreeMap<(usize, i64), AbelianGroup>> {
        let cells: Vec<(usize, i64)> = (0..=s_max).flat_map(|s| (0..=t_max).map(move |t| (s, t))).collect();
        let groups: Vec<Result<AbelianGroup>> = cells.par_iter().map(|&(s, t)| self.ext(s, t)).collect();
        cells.into_iter().zip(groups).map(|(c, g)| Ok((c, g?))).collect()
    }
}

pub fn cobar_check(m: &Comodule, s_max: usize, t_max: i64) -> Result<(Outcome, BTreeMap<(usize, i64), AbelianGroup>)> {
    let c = Cobar { m };
    let table = c.table(s_max, t_max)?;
    let mut out = Outcome::new();
    let get = |s, t| table.get(&(s, t)).cloned().unwrap_or_else(AbelianGroup::trivial);
    out.detail(None, "Ext^{0,0}", "Z(2)", fmt_local(&get(0, 0)));
    for t in 1..=3 {
        out.detail(None, format!("Ext^{{0,{t}}}"), "0", fmt_local(&get(0, t)));
    }
    let g14 = get(1, 4);
    if g14.is_zero() {
        out.fail(None, "Ext^{1,4} nonzero", "nonzero", "0");
    } else {
        out.detail(None, "Ext^{1,4} nonzero", "nonzero", "nonzero");
    }
    for ((s, t), g) in &table {
        if !g.is_zero() {
            out.note(format!("Ext^{{{s},{t}}} = {}", fmt_local(g)));
        }
    }
    Ok((out, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::Algebroid;

    #[test]
    fn low_ext() {
        let h = Hopf::new(Algebroid::build().unwrap()).unwrap();
        let m = Comodule::new(&h).unwrap();
        let c = Cobar { m: &m };
        assert_eq!(fmt_local(&c.ext(0, 0).unwrap()), "Z(2)");
        // d^2 = 0 on the cobar complex
        for x in c.generators(1, 6).unwrap() {
            assert!(c.differential(&c.differential(&x).unwrap()).unwrap().is_zero());
        }
        for x in c.generators(0, 8).unwrap() {
            assert!(c.differential(&c.differential(&x).unwrap()).unwrap().is_zero());
        }
    }
}
