use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Degree, GeneratorTable, Monomial, PolyElement};
use crate::error::{Error, Result};
use crate::report::Outcome;

/// A `d_r` given on generators; unassigned generators map to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialSpec {
    pub r: i64,
    pub images: Vec<PolyElement<BigInt>>,
}

/// Serializable form: generator name to target expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialTable {
    pub r: i64,
    pub assignments: Vec<(String, String)>,
}

impl DifferentialSpec {
    pub fn zero(r: i64, table: &GeneratorTable) -> Self {
        DifferentialSpec {
            r,
            images: vec![PolyElement::zero(); table.len()],
        }
    }

    pub fn from_table(t: &DifferentialTable, table: &GeneratorTable) -> Result<Self> {
        let mut spec = Self::zero(t.r, table);
        let names = table.names();
        for (g, expr) in &t.assignments {
            let i = table
                .index(g)
                .ok_or_else(|| Error::UnknownGenerator(g.clone()))?;
            spec.images[i] = crate::algebra::parse_poly(expr, &names)?;
        }
        Ok(spec)
    }

    pub fn to_table(&self, table: &GeneratorTable) -> DifferentialTable {
        let names = table.names();
        DifferentialTable {
            r: self.r,
            assignments: self
                .images
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(i, p)| (names[i].clone(), p.fmt_with(&names)))
                .collect(),
        }
    }

    pub fn shift(&self) -> Degree {
        Degree::differential(self.r)
    }

    pub fn set(&mut self, table: &GeneratorTable, name: &str, target: &str) -> Result<()> {
        let i = table
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        self.images[i] = crate::algebra::parse_poly(target, &table.names())?;
        Ok(())
    }

    pub fn remove(&mut self, table: &GeneratorTable, name: &str) -> Result<()> {
        let i = table
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        self.images[i] = PolyElement::zero();
        Ok(())
    }
}

/// Every assigned image must sit in degree `deg(g) + (-1, 0, r)`.
pub fn degree_audit(spec: &DifferentialSpec, table: &GeneratorTable) -> Outcome {
    let mut out = Outcome::new();
    let names = table.names();
    for (i, img) in spec.images.iter().enumerate() {
        if img.is_zero() {
            continue;
        }
        let src = table.degree_of(i);
        let want = src + spec.shift();
        let item = format!("d{}({}) = {}", spec.r, names[i], img.fmt_with(&names));
        match img.degree(table) {
            Ok(Some(d)) if d == want => out.detail(Some(src), item, want.to_string(), d.to_string()),
            Ok(Some(d)) => out.fail(Some(src), item, want.to_string(), d.to_string()),
            Ok(None) => {}
            Err(_) => out.fail(Some(src), item, want.to_string(), "inhomogeneous"),
        }
    }
    out
}

fn parity(d: Degree) -> bool {
    (d.c + d.w).rem_euclid(2) == 1
}

/// Derivation extension with the sign `(-1)^(c+w)` of the left factor.
///
/// A monomial is read as the ordered product of its generators, each repeated by its exponent.
pub fn leibniz_monomial(spec: &DifferentialSpec, table: &GeneratorTable, m: &Monomial) -> PolyElement<BigInt> {
    let mut out = PolyElement::zero();
    let mut prefix_odd = false;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let odd = parity(table.degree_of(i));
        let img = &spec.images[i];
        if !img.is_zero() {
            // sum over the e copies of the sign of the preceding factors
            let count: i64 = if odd {
                i64::from(e % 2 == 1)
            } else {
                i64::from(e)
            };
            let sign = if prefix_odd { -count } else { count };
            if sign != 0 {
                let rest = m.div(&Monomial::var(i)).expect("generator divides monomial");
                out = out.add(&img.mul_monomial(&rest).scale(&BigInt::from(sign)));
            }
        }
        if odd && e % 2 == 1 {
            prefix_odd = !prefix_odd;
        }
    }
    out
}

pub fn extend_leibniz(spec: &DifferentialSpec, table: &GeneratorTable, x: &PolyElement<BigInt>) -> PolyElement<BigInt> {
    let mut out = PolyElement::zero();
    for (m, c) in x.terms() {
        if c.is_zero() {
            continue;
        }
        out = out.add(&leibniz_monomial(spec, table, m).scale(c));
    }
    out
}

/// Audited form of [`extend_leibniz`].
pub fn extend_leibniz_checked(
    spec: &DifferentialSpec,
    table: &GeneratorTable,
    x: &PolyElement<BigInt>,
) -> Result<PolyElement<BigInt>> {
    let audit = degree_audit(spec, table);
    if !audit.passed() {
        let w: Vec<String> = audit.failing_details().map(|d| d.item.clone()).collect();
        return Err(Error::DegreeAuditFailed(w.join("; ")));
    }
    Ok(extend_leibniz(spec, table, x))
}
