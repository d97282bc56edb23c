//! Monomials of a fixed degree.
//!
//! Exponents are chosen generator by generator under the λ budget; a branch is abandoned as
//! soon as the remaining degree leaves the real cone spanned by the generators still to come.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::degree::Degree;
use super::poly::{GeneratorTable, Monomial};
use crate::error::Result;

type V3 = [i128; 3];

fn v3(d: Degree) -> V3 {
    [d.c as i128, d.w as i128, d.s as i128]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: V3, b: V3) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn is_zero(a: V3) -> bool {
    a == [0, 0, 0]
}

/// Closed convex cone in Z³ as `{p : e·p = 0 for e in eq, n·p ≥ 0 for n in ineq}`.
#[derive(Clone, Debug)]
struct Cone {
    eq: Vec<V3>,
    ineq: Vec<V3>,
}

impl Cone {
    fn spanned_by(gens: &[V3]) -> Cone {
        let mut eq = Vec::new();
        let mut ineq = Vec::new();
        let Some(&g) = gens.first() else {
            return Cone {
                eq: vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                ineq,
            };
        };
        let plane = gens.iter().map(|&h| cross(g, h)).find(|c| !is_zero(*c));
        let Some(normal) = plane else {
            for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
                let c = cross(g, e);
                if !is_zero(c) {
                    eq.push(c);
                }
            }
            ineq.push(g);
            return Cone { eq, ineq };
        };
        let flat = gens.iter().all(|&h| dot(normal, h) == 0);
        let candidates: Vec<V3> = if flat {
            eq.push(normal);
            gens.iter().map(|&h| cross(normal, h)).collect()
        } else {
            let mut c = Vec::new();
            for (i, &a) in gens.iter().enumerate() {
                for &b in &gens[i + 1..] {
                    c.push(cross(a, b));
                }
            }
            c
        };
        for n in candidates {
            if is_zero(n) {
                continue;
            }
            if gens.iter().all(|&h| dot(n, h) >= 0) {
                ineq.push(n);
            } else if gens.iter().all(|&h| dot(n, h) <= 0) {
                ineq.push([-n[0], -n[1], -n[2]]);
            }
        }
        ineq.sort();
        ineq.dedup();
        Cone { eq, ineq }
    }

    fn contains(&self, p: V3) -> bool {
        self.eq.iter().all(|&e| dot(e, p) == 0) && self.ineq.iter().all(|&n| dot(n, p) >= 0)
    }
}

/// Enumerates and caches the monomials of each degree for a generator table.
#[derive(Debug)]
pub struct MonomialEnumerator {
    table: GeneratorTable,
    weights: Vec<i64>,
    degrees: Vec<V3>,
    suffix_cones: Vec<Cone>,
    cache: RwLock<HashMap<Degree, Arc<Vec<Monomial>>>>,
}

impl MonomialEnumerator {
    pub fn new(table: &GeneratorTable) -> Result<Self> {
        table.validate()?;
        let degrees: Vec<V3> = table.gens.iter().map(|g| v3(g.degree)).collect();
        let weights = table.gens.iter().map(|g| table.weight(g.degree)).collect();
        let suffix_cones = (0..=degrees.len())
            .map(|i| {
                let mut suffix: Vec<V3> = degrees[i..].to_vec();
                suffix.sort();
                suffix.dedup();
                Cone::spanned_by(&suffix)
            })
            .collect();
        Ok(MonomialEnumerator {
            table: table.clone(),
            weights,
            degrees,
            suffix_cones,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    /// The monomials of degree `d`, ascending in the monomial order.
    pub fn monomials(&self, d: Degree) -> Arc<Vec<Monomial>> {
        if let Some(v) = self.cache.read().expect("cache lock").get(&d) {
            return v.clone();
        }
        let mut out = Vec::new();
        let n = self.degrees.len();
        if self.suffix_cones[0].contains(v3(d)) {
            let mut exps = vec![0u32; n];
            self.recurse(0, v3(d), self.table.weight(d), &mut exps, &mut out);
        }
        out.sort();
        let out = Arc::new(out);
        self.cache
            .write()
            .expect("cache lock")
            .insert(d, out.clone());
        out
    }

    fn recurse(&self, i: usize, rem: V3, budget: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = self.degrees.len();
        if i == n {
            if is_zero(rem) {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let g = self.degrees[i];
        let w = self.weights[i];
        if i + 1 == n {
            if budget % w != 0 {
                return;
            }
            let k = budget / w;
            let kk = k as i128;
            if [g[0] * kk, g[1] * kk, g[2] * kk] == rem {
                exps[i] = k as u32;
                out.push(Monomial::from_exponents(exps.clone()));
                exps[i] = 0;
            }
            return;
        }
        let max = budget / w;
        for e in 0..=max {
            let ee = e as i128;
            let next = [rem[0] - g[0] * ee, rem[1] - g[1] * ee, rem[2] - g[2] * ee];
            if !self.suffix_cones[i + 1].contains(next) {
                continue;
            }
            exps[i] = e as u32;
            self.recurse(i + 1, next, budget - w * e, exps, out);
        }
        exps[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive search over the box of exponents allowed by the λ budget.
    fn brute(table: &GeneratorTable, d: Degree) -> Vec<Monomial> {
        let budget = table.weight(d);
        let mut out = Vec::new();
        let mut exps = vec![0u32; table.len()];
        fn go(t: &GeneratorTable, i: usize, left: i64, d: Degree, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == t.len() {
                let m = Monomial::from_exponents(exps.clone());
                if m.degree(t) == d {
                    out.push(m);
                }
                return;
            }
            let w = t.weight(t.degree_of(i));
            for e in 0..=(left / w) {
                exps[i] = e as u32;
                go(t, i + 1, left - w * e, d, exps, out);
            }
            exps[i] = 0;
        }
        if budget >= 0 {
            go(table, 0, budget, d, &mut exps, &mut out);
        }
        out.sort();
        out
    }

    fn e2_table() -> GeneratorTable {
        GeneratorTable::new([
            ("a", Degree::new(0, -1, 1)),
            ("u", Degree::new(2, -2, 0)),
            ("v1", Degree::new(1, 1, 0)),
            ("v2", Degree::new(3, 3, 0)),
            ("t1", Degree::new(2, 0, -2)),
            ("t2", Degree::new(6, 0, -6)),
        ])
    }

    #[test]
    fn matches_exhaustive_search() {
        let t = e2_table();
        let e = MonomialEnumerator::new(&t).unwrap();
        for c in 0..9 {
            for w in -4..=4 {
                for s in -8..=8 {
                    let d = Degree::new(c, w, s);
                    assert_eq!(*e.monomials(d), brute(&t, d), "degree {d}");
                }
            }
        }
    }

    #[test]
    fn small_degrees() {
        let t = e2_table();
        let e = MonomialEnumerator::new(&t).unwrap();
        assert_eq!(*e.monomials(Degree::ZERO), vec![Monomial::one()]);
        assert_eq!(*e.monomials(Degree::new(2, 0, -2)), vec![Monomial::var(4)]);
        let av1 = Monomial::var(0).mul(&Monomial::var(2));
        assert_eq!(*e.monomials(Degree::new(1, 0, 1)), vec![av1]);
    }

    #[test]
    fn empty_table() {
        let t = GeneratorTable::new(Vec::<(String, Degree)>::new());
        let e = MonomialEnumerator::new(&t).unwrap();
        assert_eq!(e.monomials(Degree::ZERO).len(), 1);
        assert!(e.monomials(Degree::new(1, 0, 0)).is_empty());
    }
}
