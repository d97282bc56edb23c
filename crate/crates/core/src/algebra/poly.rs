use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::degree::{Degree, Positivity};
use crate::error::{Error, Result};
use crate::exact::scalar::{Coeff, RingTag};

/// Exponent vector with trailing zeros stripped.
///
/// Ordered graded reverse-lexicographically: first by total exponent, then the monomial with
/// the smaller exponent in the last differing variable is the larger one.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial::from_exponents(v)
    }

    pub fn from_exponents(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::from_exponents(v)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut v = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if self.exponent(i) < e {
                return None;
            }
            v[i] -= e;
        }
        Some(Monomial::from_exponents(v))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    pub fn degree(&self, table: &GeneratorTable) -> Degree {
        self.0
            .iter()
            .enumerate()
            .fold(Degree::ZERO, |acc, (i, &e)| acc + table.gens[i].degree * i64::from(e))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, &e)| {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in (0..n).rev() {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: Degree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTable {
    pub gens: Vec<Generator>,
    #[serde(default)]
    pub positivity: Positivity,
}

impl GeneratorTable {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, Degree)>) -> Self {
        GeneratorTable {
            gens: gens
                .into_iter()
                .map(|(name, degree)| Generator {
                    name: name.into(),
                    degree,
                })
                .collect(),
            positivity: Positivity::default(),
        }
    }

    pub fn with_positivity(mut self, p: Positivity) -> Self {
        self.positivity = p;
        self
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn degree_of(&self, i: usize) -> Degree {
        self.gens[i].degree
    }

    pub fn weight(&self, d: Degree) -> i64 {
        self.positivity.eval(d)
    }

    /// Checks λ-positivity and uniqueness of names.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            let w = self.weight(g.degree);
            if w <= 0 {
                return Err(Error::NonPositiveGenerator {
                    name: g.name.clone(),
                    weight: w,
                });
            }
            if self.gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Config {
                    path: "generators".into(),
                    message: format!("duplicate generator name {}", g.name),
                });
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with coefficients in `R`.
#[derive(Clone, PartialEq, Default)]
pub struct PolyElement<R> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Coeff> PolyElement<R> {
    pub fn zero() -> Self {
        PolyElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }

    pub fn var(i: usize) -> Self {
        Self::term(R::one(), Monomial::var(i))
    }

    pub fn term(c: R, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyElement { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> RingTag {
        R::TAG
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Largest monomial in the order, with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &R)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        PolyElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone() * k.clone());
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        PolyElement {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                p.add_term(m.mul(n), c.clone() * d.clone());
            }
        }
        p
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The single degree of a homogeneous element; `None` for zero.
    pub fn degree(&self, table: &GeneratorTable) -> Result<Option<Degree>> {
        let mut it = self.terms.keys().map(|m| m.degree(table));
        let Some(d) = it.next() else {
            return Ok(None);
        };
        if it.any(|e| e != d) {
            return Err(Error::NotHomogeneous(self.fmt_with(&table.names())));
        }
        Ok(Some(d))
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> PolyElement<S> {
        PolyElement::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Leading term first.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut cs = c.to_string();
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = m.fmt_with(names);
            if m.is_one() {
                s.push_str(&cs);
            } else if cs == "1" {
                s.push_str(&body);
            } else {
                s.push_str(&format!("{cs}*{body}"));
            }
        }
        s
    }
}

impl<R: Coeff> fmt::Debug for PolyElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

impl PolyElement<BigInt> {
    /// Gcd of the coefficients with the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return BigInt::one();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        // x0^2 > x0*x1 > x1^2 in grevlex with x0 > x1
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 2]);
        assert!(a > b && b > c);
        // the higher total degree wins
        assert!(Monomial::var(0) < Monomial::from_exponents(vec![0, 0, 2]));
        // same total: x0*x2 < x1^2 since x2 has the larger last exponent
        assert!(Monomial::from_exponents(vec![1, 0, 1]) < Monomial::from_exponents(vec![0, 2]));
    }

    #[test]
    fn arithmetic() {
        let x = PolyElement::<BigInt>::var(0);
        let y = PolyElement::<BigInt>::var(1);
        let s = x.add(&y);
        let sq = s.pow(2);
        let expect = x.pow(2).add(&x.mul(&y).scale(&BigInt::from(2))).add(&y.pow(2));
        assert_eq!(sq, expect);
        assert!(s.sub(&s).is_zero());
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(sq.fmt_with(&names), "x^2 + 2*x*y + y^2");
        assert_eq!(x.sub(&y).scale(&BigInt::from(-3)).fmt_with(&names), "-3*x + 3*y");
    }

    #[test]
    fn homogeneity() {
        let t = GeneratorTable::new([("a", Degree::new(0, -1, 1)), ("u", Degree::new(2, -2, 0))]);
        let a = PolyElement::<BigInt>::var(0);
        let u = PolyElement::<BigInt>::var(1);
        assert_eq!(a.mul(&u).degree(&t).unwrap(), Some(Degree::new(2, -3, 1)));
        assert!(a.add(&u).degree(&t).is_err());
        assert_eq!(PolyElement::<BigInt>::zero().degree(&t).unwrap(), None);
    }

    #[test]
    fn positivity_is_enforced() {
        let t = GeneratorTable::new([("x", Degree::new(-1, 0, 1))]);
        assert!(matches!(t.validate(), Err(Error::NonPositiveGenerator { .. })));
    }
}
