//! The Hopf algebroid `(A, Γ)` with `A = Z(2)[a1, a3]` and `Γ = A[s, t]` modulo the relations
//! that keep the transformed curve in the family `y^2 + a1 xy + a3 y = x^3`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::curve::{solve_linear, substitute, table, transform_curve, Poly, UnipotentTransformation, WeierstrassCurve};
use crate::algebra::{parse_poly, GeneratorTable, Monomial};
use crate::error::{Error, Result};
use crate::exact::scalar::{Coeff, TwoLocal};
use crate::report::Outcome;

pub const A1: usize = 0;
pub const A3: usize = 1;
pub const S: usize = 2;
pub const T: usize = 3;
const R: usize = 4;

pub fn weight(m: &Monomial) -> i64 {
    2 * m.exponent(A1) as i64 + 6 * m.exponent(A3) as i64 + 2 * m.exponent(S) as i64 + 6 * m.exponent(T) as i64
}

/// All monomials in `a1, a3, s, t` of internal degree `d`.
pub fn monomials(d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 || d % 2 != 0 {
        return out;
    }
    let w = d / 2;
    for heavy in 0..=w / 3 {
        let light = w - 3 * heavy;
        for e3 in 0..=heavy {
            for e2 in 0..=light {
                out.push(Monomial::from_exponents(vec![
                    (light - e2) as u32,
                    (heavy - e3) as u32,
                    e2 as u32,
                    e3 as u32,
                ]));
            }
        }
    }
    out.sort();
    out
}

/// Monomials in `a1, a3` only.
pub fn a_monomials(d: i64) -> Vec<Monomial> {
    monomials(d)
        .into_iter()
        .filter(|m| m.exponent(S) == 0 && m.exponent(T) == 0)
        .collect()
}

pub fn is_basis_type(m: &Monomial) -> bool {
    m.exponent(S) <= 3 && m.exponent(T) <= 1
}

/// Splits a monomial into its `A` part and its index in the right basis (or `None`).
pub fn split(m: &Monomial) -> (Monomial, Option<usize>) {
    let a = Monomial::from_exponents(vec![m.exponent(A1), m.exponent(A3)]);
    let (i, j) = (m.exponent(S), m.exponent(T));
    let b = (i <= 3 && j <= 1).then(|| (i + 4 * j) as usize);
    (a, b)
}

#[derive(Debug)]
pub struct Algebroid {
    pub table: GeneratorTable,
    /// `r` as forced by the `a2` coefficient.
    pub r: Poly,
    pub r1: Poly,
    pub r2: Poly,
    pub eta_r_a1: Poly,
    pub eta_r_a3: Poly,
    /// `s^i t^j`, `i ≤ 3`, `j ≤ 1`, indexed by `i + 4j`.
    pub basis: Vec<Monomial>,
    reductions: Mutex<HashMap<i64, Arc<HashMap<Monomial, Poly>>>>,
    eta_cache: Mutex<HashMap<Monomial, Poly>>,
}

impl Algebroid {
    /// Derives `r`, the relations and `η_R` from the transformation of `(a1, 0, a3, 0, 0)`.
    pub fn build() -> Result<Algebroid> {
        let t_ = table(&[("a1", 2), ("a3", 6), ("s", 2), ("t", 6)]);
        let (a1, a3, s, t, r) = (Poly::var(A1), Poly::var(A3), Poly::var(S), Poly::var(T), Poly::var(R));
        let curve = WeierstrassCurve::new(a1.clone(), Poly::zero(), a3.clone(), Poly::zero(), Poly::zero());
        let moved = transform_curve(&curve, &UnipotentTransformation::new(r, s.clone(), t.clone()))?;
        let r_sol = solve_linear(moved.a2(), R)?;
        let fix = |p: &Poly| substitute(p, R, &r_sol);
        let alg = Algebroid {
            table: t_,
            r1: fix(moved.a4()),
            r2: fix(moved.a6()),
            eta_r_a1: fix(moved.a1()),
            eta_r_a3: fix(moved.a3()),
            r: r_sol,
            basis: (0..8u32)
                .map(|k| Monomial::from_exponents(vec![0, 0, k % 4, k / 4]))
                .collect(),
            reductions: Mutex::new(HashMap::new()),
            eta_cache: Mutex::new(HashMap::new()),
        };
        let check = transform_curve(&curve, &alg.transformation(&s, &t))?;
        if !check.a2().is_zero() || check.a4() != &alg.r1 || check.a6() != &alg.r2 {
            return Err(Error::NotHomogeneous("derived relations do not reproduce the transform".into()));
        }
        Ok(alg)
    }

    /// The transformation with parameters `s`, `t` and the forced `r`.
    pub fn transformation(&self, s: &Poly, t: &Poly) -> UnipotentTransformation {
        let r = substitute(&self.r, S, s);
        UnipotentTransformation::new(r, s.clone(), t.clone())
    }

    pub fn names(&self) -> Vec<String> {
        self.table.names()
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        parse_poly(s, &self.names())
    }

    pub fn fmt(&self, p: &Poly) -> String {
        p.fmt_with(&self.names())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(i)
    }

    pub fn basis_poly(&self, b: usize) -> Poly {
        Poly::term(TwoLocal::one(), self.basis[b].clone())
    }

    /// Normal forms of every non-basis monomial of degree `d`, by linear elimination against
    /// the relations in that degree.
    fn reductions(&self, d: i64) -> Result<Arc<HashMap<Monomial, Poly>>> {
        if let Some(r) = self.reductions.lock().expect("reduction cache").get(&d) {
            return Ok(r.clone());
        }
        let rows = monomials(d);
        let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let non_basis: Vec<usize> = (0..rows.len()).filter(|&i| !is_basis_type(&rows[i])).collect();
        let mut cols: Vec<Vec<TwoLocal>> = Vec::new();
        for (rel, dr) in [(&self.r1, 8), (&self.r2, 12)] {
            for m in monomials(d - dr) {
                let mut v = vec![TwoLocal::zero(); rows.len()];
                for (mm, c) in rel.mul_monomial(&m).terms() {
                    v[index[mm]] = c.clone();
                }
                cols.push(v);
            }
        }
        let mut pivot_col: HashMap<usize, usize> = HashMap::new();
        let mut used = vec![false; cols.len()];
        let mut open: Vec<usize> = non_basis.clone();
        while !open.is_empty() {
            let mut best: Option<(u64, usize, usize)> = None;
            for &i in &open {
                for (j, c) in cols.iter().enumerate() {
                    if used[j] {
                        continue;
                    }
                    if let Some(k) = c[i].valuation() {
                        if best.is_none_or(|b| (k, i, j) < b) {
                            best = Some((k, i, j));
                        }
                    }
                }
            }
            let (k, i, j) = match best {
                Some(b) if b.0 == 0 => b,
                _ => {
                    let i = best.map_or(open[0], |b| b.1);
                    return Err(Error::EliminationFailure {
                        degree: d,
                        monomial: rows[i].fmt_with(&self.names()),
                    });
                }
            };
            debug_assert_eq!(k, 0);
            let inv = TwoLocal::one().try_div(&cols[j][i]).expect("unit pivot");
            for x in cols[j].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let pivot = cols[j].clone();
            for (jj, c) in cols.iter_mut().enumerate() {
                if jj == j || c[i].is_zero() {
                    continue;
                }
                let f = c[i].clone();
                for (x, p) in c.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *x = x.clone() - f.clone() * p.clone();
                    }
                }
            }
            used[j] = true;
            pivot_col.insert(i, j);
            open.retain(|&x| x != i);
        }
        let basis_rows: Vec<usize> = (0..rows.len()).filter(|&i| is_basis_type(&rows[i])).collect();
        let leftover: Vec<Vec<TwoLocal>> = cols
            .iter()
            .zip(&used)
            .filter(|(c, u)| !**u && c.iter().any(|x| !x.is_zero()))
            .map(|(c, _)| basis_rows.iter().map(|&i| c[i].clone()).collect())
            .collect();
        if !leftover.is_empty() {
            let lost = rational_rank(leftover);
            return Err(Error::BasisRankFailure {
                degree: d,
                expected: basis_rows.len(),
                found: basis_rows.len() - lost,
            });
        }
        let mut out = HashMap::new();
        for (&i, &j) in &pivot_col {
            let nf = Poly::from_terms(
                basis_rows
                    .iter()
                    .filter(|&&b| !cols[j][b].is_zero())
                    .map(|&b| (rows[b].clone(), -cols[j][b].clone())),
            );
            out.insert(rows[i].clone(), nf);
        }
        let out = Arc::new(out);
        self.reductions.lock().expect("reduction cache").insert(d, out.clone());
        Ok(out)
    }

    /// The unique `A`-combination of the basis equal to `p` in `Γ`.
    pub fn nf(&self, p: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        let mut by_degree: HashMap<i64, Arc<HashMap<Monomial, Poly>>> = HashMap::new();
        for (m, c) in p.terms() {
            if is_basis_type(m) {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let d = weight(m);
            if !by_degree.contains_key(&d) {
                by_degree.insert(d, self.reductions(d)?);
            }
            out = out.add(&by_degree[&d][m].scale(c));
        }
        Ok(out)
    }

    /// Normal form split as `Σ α_b b`, `α_b ∈ A`, sorted by `b`.
    pub fn decompose(&self, p: &Poly) -> Result<Vec<(usize, Poly)>> {
        let nf = self.nf(p)?;
        let mut parts: Vec<Poly> = vec![Poly::zero(); 8];
        for (m, c) in nf.terms() {
            let (a, b) = split(m);
            parts[b.expect("normal form")].add_term(a, c.clone());
        }
        Ok(parts.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect())
    }

    /// `η_R` on an element of `A`.
    pub fn eta_r(&self, alpha: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in alpha.terms() {
            let cached = self.eta_cache.lock().expect("eta cache").get(m).cloned();
            let img = match cached {
                Some(x) => x,
                None => {
                    let x = self.nf(
                        &self
                            .eta_r_a1
                            .pow(m.exponent(A1))
                            .mul(&self.eta_r_a3.pow(m.exponent(A3))),
                    )?;
                    self.eta_cache.lock().expect("eta cache").insert(m.clone(), x.clone());
                    x
                }
            };
            out = out.add(&img.scale(c));
        }
        Ok(out)
    }

    /// `ε`: `s, t -> 0`.
    pub fn epsilon(&self, p: &Poly) -> Poly {
        Poly::from_terms(
            p.terms()
                .filter(|(m, _)| m.exponent(S) == 0 && m.exponent(T) == 0)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Basis-type monomials of degree `d`: a `Z(2)`-basis of `Γ_d`.
    pub fn gamma_basis(&self, d: i64) -> Vec<Monomial> {
        monomials(d).into_iter().filter(is_basis_type).collect()
    }

    /// Coordinates of a degree-`d` element in [`Self::gamma_basis`].
    pub fn coords(&self, p: &Poly, d: i64) -> Result<Vec<TwoLocal>> {
        let basis = self.gamma_basis(d);
        let nf = self.nf(p)?;
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![TwoLocal::zero(); basis.len()];
        for (m, c) in nf.terms() {
            let i = index
                .get(m)
                .ok_or_else(|| Error::NotHomogeneous(format!("{} outside degree {d}", m.fmt_with(&self.names()))))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    /// `Γ` is free over `A` on the basis: checked by elimination in every degree up to `maxdeg`.
    pub fn freeness_check(&self, maxdeg: i64) -> Result<Outcome> {
        let mut out = Outcome::new();
        for d in (0..=maxdeg).step_by(2) {
            let expected: usize = (0..8).map(|b| a_monomials(d - weight(&self.basis[b])).len()).sum();
            let found = match self.reductions(d) {
                Ok(_) => self.gamma_basis(d).len(),
                Err(Error::BasisRankFailure { found, .. }) => found,
                Err(e) => return Err(e),
            };
            out.detail(None, format!("rank of Γ in degree {d}"), expected.to_string(), found.to_string());
        }
        Ok(out)
    }
}

/// Rank over Q of a list of vectors.
pub fn rational_rank(rows: Vec<Vec<TwoLocal>>) -> usize {
    let mut rows: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.as_rational().clone()).collect())
        .collect();
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len());
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = &*x - &f * y;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_structure_maps() {
        let g = Algebroid::build().unwrap();
        assert_eq!(g.eta_r_a1, g.parse("a1 + 2*s").unwrap());
        assert_eq!(g.eta_r_a3, g.parse("a3 + a1*s^2/3 + a1^2*s/3 + 2*t").unwrap());
        assert_eq!(g.r, g.parse("(s^2 + a1*s)/3").unwrap());
    }

    #[test]
    fn normal_forms_of_spec_examples() {
        let g = Algebroid::build().unwrap();
        let s4 = g.nf(&g.parse("s^4").unwrap()).unwrap();
        assert_eq!(s4, g.parse("-a1*s^3 + 3*a3*s + 3*a1*t + 6*s*t").unwrap());
        let t2 = g.nf(&g.parse("t^2").unwrap()).unwrap();
        let raw = g.parse("-a3*t - (a1*s^2 + a1^2*s)*t/3 + (s^2 + a1*s)^3/27").unwrap();
        assert_eq!(t2, g.nf(&raw).unwrap());
        assert_eq!(g.nf(&g.parse("s").unwrap()).unwrap(), g.parse("s").unwrap());
        for b in 0..8 {
            assert_eq!(g.nf(&g.basis_poly(b)).unwrap(), g.basis_poly(b));
        }
    }

    #[test]
    fn free_of_rank_eight() {
        let g = Algebroid::build().unwrap();
        let o = g.freeness_check(20).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().collect::<Vec<_>>());
    }
}
