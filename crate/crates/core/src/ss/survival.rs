use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::bp::Schedule;
use crate::algebra::{Degree, DegreeGroup, GradedGroups, Monomial, PolyElement};
use crate::error::{Error, Result};
use crate::exact::group::Lattice;
use crate::exact::matrix::{SparseVec};
use crate::report::{Assumption, Outcome, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Disposition {
    Zero,
    Marked,
    SupportsDifferential(String),
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceEntry {
    pub r: i64,
    pub degree: Degree,
    pub page: String,
    /// `E_4` group as computed, named by `E_2` lifts.
    pub group: String,
    /// The same group in the generators of the `E_4` presentation.
    pub presented: String,
    pub generators: Vec<(String, Disposition)>,
    /// What is left of `E_8` after dividing out marked classes.
    pub unmarked_e8: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivalCertificate {
    pub target: String,
    pub degree: Degree,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub killed: Option<String>,
    pub sources: Vec<SourceEntry>,
    pub assumptions: Vec<Assumption>,
}

impl SurvivalCertificate {
    pub fn status(&self) -> Status {
        self.outcome().status()
    }

    pub fn unresolved(&self) -> impl Iterator<Item = (&SourceEntry, &str)> {
        self.sources.iter().flat_map(|s| {
            s.generators
                .iter()
                .filter(|(_, d)| *d == Disposition::Unresolved)
                .map(move |(g, _)| (s, g.as_str()))
        })
    }

    pub fn outcome(&self) -> Outcome {
        let mut out = Outcome::new();
        out.assumptions = self.assumptions.clone();
        if let Some(k) = &self.killed {
            out.fail(Some(self.degree), format!("{} survives", self.target), "nonzero", k.clone());
            return out;
        }
        out.detail(Some(self.degree), format!("{} nonzero on E8", self.target), "nonzero", "nonzero");
        for s in &self.sources {
            let item = format!("d{} sources at {} not marked", s.r, s.degree);
            if s.unmarked_e8 == "0" {
                out.detail(Some(s.degree), item, "0", "0");
            } else {
                out.unresolved = true;
                out.witness(Some(s.degree), format!("{item}: {}", s.unmarked_e8));
            }
        }
        for (s, g) in self.unresolved() {
            out.note(format!("unresolved generator {g} at {}", s.degree));
        }
        out
    }
}

fn vector_of(g: &DegreeGroup, p: &PolyElement<BigInt>) -> Result<SparseVec> {
    g.vector(p)
        .ok_or_else(|| Error::NotHomogeneous(format!("element outside degree {}", g.degree)))
}

/// Finds a generator-free description of a boundary: a single source monomial whose image is
/// `±target`, if there is one.
fn name_preimage(page: &super::Page, target: &PolyElement<BigInt>, d: Degree) -> String {
    let names = page.ring.names();
    let src = d - page.differential.shift();
    let hit = page.ring.monomials(src).iter().find_map(|m: &Monomial| {
        let x = PolyElement::term(BigInt::one(), m.clone());
        let y = page.d(&x);
        (y == *target || y.neg() == *target).then(|| m.fmt_with(&names))
    });
    match hit {
        Some(m) => format!("killed by d{}({m})", page.r()),
        None => format!("killed by d{}", page.r()),
    }
}

/// Examines every possible source of a `d_r` (8 ≤ r ≤ r_max) hitting `target`.
///
/// `target` is parsed in the `E_4` presentation when possible, otherwise in `E_2`. Markers are
/// presentation elements asserted to generate (as an ideal) permanent cycles.
pub fn survival_check(s: &Schedule, target: &str, markers: &[Assumption], r_max: i64) -> Result<SurvivalCertificate> {
    let p = &s.e4_presentation;
    let (p_target, e2_target) = match p.parse(target) {
        Ok(x) => {
            let img = s.assignment.apply(&x);
            (Some(x), img)
        }
        Err(_) => (None, s.e2.parse(target)?),
    };
    let Some(degree) = e2_target.degree(&s.e2.table)? else {
        return Err(Error::TargetNotCycle(format!("{target} is zero")));
    };
    let mut cert = SurvivalCertificate {
        target: target.to_string(),
        degree,
        killed: None,
        sources: Vec::new(),
        assumptions: markers.to_vec(),
    };
    let g4 = s.e4.group_at(degree)?;
    match g4.is_zero_class(&e2_target) {
        None => return Err(Error::TargetNotCycle(format!("{target} is not a d3-cycle"))),
        Some(true) => {
            cert.killed = Some(name_preimage(&s.d3, &e2_target, degree));
            return Ok(cert);
        }
        Some(false) => {}
    }
    if let Some(x) = &p_target {
        let g8 = s.e8.group_at(degree)?;
        match g8.is_zero_class(x) {
            None => return Err(Error::TargetNotCycle(format!("{target} is not a d7-cycle"))),
            Some(true) => {
                cert.killed = Some(name_preimage(&s.d7, x, degree));
                return Ok(cert);
            }
            Some(false) => {}
        }
    }

    let marker_polys: Vec<PolyElement<BigInt>> = markers
        .iter()
        .map(|m| p.parse(&m.class))
        .collect::<Result<_>>()?;
    let names = p.names();
    for r in 8..=r_max {
        let src = degree + Degree::new(1, 0, -r);
        if src.w == 0 && src.s.abs() > src.c {
            continue;
        }
        let e4 = s.e4.group_at(src)?;
        let pg = p.group_at(src)?;
        let e8 = s.e8.group_at(src)?;
        let mut entry = SourceEntry {
            r,
            degree: src,
            page: "E4".into(),
            group: e4.group().to_string(),
            presented: pg.group().to_string(),
            generators: Vec::new(),
            unmarked_e8: "0".into(),
        };
        if pg.is_zero() {
            entry.generators.push(("0".into(), Disposition::Zero));
            cert.sources.push(entry);
            continue;
        }
        // the ideal generated by the markers, plus relations
        let mut ideal = p.relation_vectors(src);
        for mk in &marker_polys {
            let Some(dm) = mk.degree(&p.table)? else {
                continue;
            };
            for m in p.monomials(src - dm).iter() {
                let prod = mk.mul_monomial(m);
                ideal.push(vector_of(&pg, &prod)?);
            }
        }
        let ideal = Lattice::span(pg.dim(), &ideal);
        let marked = e8.sq.cycles.intersection(&ideal);
        let marked_polys: Vec<PolyElement<BigInt>> = marked.basis.iter().map(|v| pg.poly(v)).collect();
        let d7_target = src + s.d7.differential.shift();
        let g7 = p.group_at(d7_target)?;
        for (label, rep) in pg.labels.iter().zip(&pg.named_representatives) {
            let x = pg.poly(rep);
            let dx = s.d7.d(&x);
            let disp = if g7.is_zero_class(&dx) == Some(false) {
                Disposition::SupportsDifferential(format!("d7 = {}", dx.fmt_with(&names)))
            } else if ideal.contains(rep) {
                Disposition::Marked
            } else {
                Disposition::Unresolved
            };
            entry.generators.push((label.clone(), disp));
        }
        let rest = e8
            .quotient_by(&marked_polys)
            .ok_or_else(|| Error::NotClosed("marked classes are not cycles".into()))?;
        if !rest.is_zero() {
            let mut leftover = Vec::new();
            let base = rest.clone();
            for (label, rep) in e8.labels.iter().zip(&e8.named_representatives) {
                let mut with = marked_polys.clone();
                with.push(e8.poly(rep));
                let q = e8.quotient_by(&with).expect("cycles");
                if !q.isomorphic(&base) || base.is_zero() {
                    leftover.push(label.clone());
                }
            }
            entry.unmarked_e8 = format!("{rest} {leftover:?}");
        }
        cert.sources.push(entry);
    }
    Ok(cert)
}
