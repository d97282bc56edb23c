use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::differential::{leibniz_monomial, DifferentialSpec};
use crate::algebra::{Degree, DegreeGroup, DegreeWindow, GeneratorTable, GradedGroups, Monomial, PolyElement, RingPresentation};
use crate::error::{Error, Result};
use crate::exact::group::{AbelianGroup, Lattice};
use crate::exact::matrix::{SparseMatrix, SparseVec};
use crate::report::Outcome;

/// A page `E_r` given by a ring presentation with a differential `d_r` on it.
#[derive(Debug)]
pub struct Page {
    pub name: String,
    pub ring: Arc<RingPresentation<BigInt>>,
    pub differential: DifferentialSpec,
}

fn vector_in(basis: &[Monomial], p: &PolyElement<BigInt>) -> Result<SparseVec> {
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut map = BTreeMap::new();
    for (m, c) in p.terms() {
        let i = index
            .get(m)
            .ok_or_else(|| Error::NotHomogeneous(format!("{m:?} outside the target degree")))?;
        map.insert(*i, c.clone());
    }
    Ok(SparseVec::from_map(map))
}

impl Page {
    pub fn new(name: impl Into<String>, ring: Arc<RingPresentation<BigInt>>, differential: DifferentialSpec) -> Self {
        Page {
            name: name.into(),
            ring,
            differential,
        }
    }

    pub fn r(&self) -> i64 {
        self.differential.r
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.ring.table
    }

    pub fn d(&self, x: &PolyElement<BigInt>) -> PolyElement<BigInt> {
        super::differential::extend_leibniz(&self.differential, &self.ring.table, x)
    }

    /// Matrix of `d_r` from degree `d` to `d + shift` in the monomial bases.
    pub fn matrix(&self, d: Degree) -> Result<SparseMatrix> {
        let src = self.ring.monomials(d);
        let tgt = self.ring.monomials(d + self.differential.shift());
        let cols: Result<Vec<SparseVec>> = src
            .iter()
            .map(|m| vector_in(&tgt, &leibniz_monomial(&self.differential, &self.ring.table, m)))
            .collect();
        Ok(SparseMatrix::new(tgt.len(), cols?))
    }

    /// The page's own group in degree `d` (before taking homology).
    pub fn group_at(&self, d: Degree) -> Result<Arc<DegreeGroup>> {
        self.ring.group_at(d)
    }

    /// Lattice of `x` with `d x` in the relation span of the target degree.
    pub fn cycles(&self, d: Degree) -> Result<Lattice> {
        let n = self.ring.monomials(d).len();
        let dm = self.matrix(d)?;
        let target_rels = self.ring.relation_vectors(d + self.differential.shift());
        if target_rels.is_empty() {
            return Ok(Lattice::kernel(&dm));
        }
        let mut cols = dm.columns.clone();
        cols.extend(target_rels);
        let k = Lattice::kernel(&SparseMatrix::new(dm.rows, cols));
        let projected: Vec<SparseVec> = k
            .basis
            .iter()
            .map(|v| SparseVec(v.0.iter().filter(|(i, _)| *i < n).cloned().collect()))
            .collect();
        Ok(Lattice::span(n, &projected))
    }

    /// Relations together with images of `d_r` landing in degree `d`.
    pub fn boundaries(&self, d: Degree) -> Result<Vec<SparseVec>> {
        let mut rels = self.ring.relation_vectors(d);
        let incoming = self.matrix(d - self.differential.shift())?;
        rels.extend(incoming.columns.into_iter().filter(|c| !c.is_zero()));
        Ok(rels)
    }

    /// `E_{r+1}` in degree `d`.
    pub fn homology_at(&self, d: Degree) -> Result<DegreeGroup> {
        let basis = self.ring.monomials(d);
        let z = self.cycles(d)?;
        let b = self.boundaries(d)?;
        DegreeGroup::new(d, basis, z, &b, &self.ring.names())
    }

    /// `d` must carry relations of the ring into relations: checked on the relation generators.
    pub fn well_defined_audit(&self) -> Result<Outcome> {
        let mut out = Outcome::new();
        let names = self.ring.names();
        for r in &self.ring.relations {
            let Some(deg) = r.degree(&self.ring.table)? else {
                continue;
            };
            let img = self.d(r);
            let t = deg + self.differential.shift();
            let g = self.ring.group_at(t)?;
            let zero = g.is_zero_class(&img) == Some(true);
            let item = format!("d{}({}) is a relation", self.r(), r.fmt_with(&names));
            if zero {
                out.detail(Some(deg), item, "0", "0");
            } else {
                out.fail(Some(deg), item, "0", img.fmt_with(&names));
            }
        }
        Ok(out)
    }
}

/// `d∘d` lands in the relations in every window degree.
pub fn d_squared_audit(page: &Page, w: &DegreeWindow) -> Result<Outcome> {
    let shift = page.differential.shift();
    let names = page.ring.names();
    let parts: Result<Vec<Outcome>> = w
        .degrees()
        .par_iter()
        .map(|&d| {
            let mut out = Outcome::new();
            let target = d + shift + shift;
            let g = page.ring.group_at(target)?;
            for m in page.ring.monomials(d).iter() {
                let dd = page.d(&page.d(&PolyElement::term(BigInt::from(1), m.clone())));
                if dd.is_zero() {
                    continue;
                }
                if g.is_zero_class(&dd) != Some(true) {
                    out.fail(Some(d), format!("d(d({}))", m.fmt_with(&names)), "0", dd.fmt_with(&names));
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Outcome::new();
    for p in parts? {
        out.merge(p);
    }
    if out.details.is_empty() {
        out.note(format!("d{}∘d{} vanishes on {} degrees", page.r(), page.r(), w.degrees().len()));
    }
    Ok(out)
}

/// Homology of a page, computed lazily and cached per degree.
#[derive(Debug)]
pub struct HomologyPage {
    pub name: String,
    pub source: Arc<Page>,
    cache: Mutex<HashMap<Degree, Arc<DegreeGroup>>>,
}

impl HomologyPage {
    pub fn new(name: impl Into<String>, source: Arc<Page>) -> Self {
        HomologyPage {
            name: name.into(),
            source,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn groups(&self, w: &DegreeWindow) -> Result<BTreeMap<Degree, AbelianGroup>> {
        let v: Result<Vec<(Degree, AbelianGroup)>> = w
            .degrees()
            .par_iter()
            .map(|&d| Ok((d, self.group_at(d)?.group())))
            .collect();
        Ok(v?.into_iter().collect())
    }
}

impl GradedGroups for HomologyPage {
    fn table(&self) -> &GeneratorTable {
        &self.source.ring.table
    }

    fn group_at(&self, d: Degree) -> Result<Arc<DegreeGroup>> {
        if let Some(g) = self.cache.lock().expect("homology cache").get(&d) {
            return Ok(g.clone());
        }
        let g = Arc::new(self.source.homology_at(d)?);
        self.cache.lock().expect("homology cache").insert(d, g.clone());
        Ok(g)
    }
}

/// Degreewise groups of any graded source over a window.
pub fn groups_on(src: &dyn GradedGroups, w: &DegreeWindow) -> Result<BTreeMap<Degree, AbelianGroup>> {
    let v: Result<Vec<(Degree, AbelianGroup)>> = w
        .degrees()
        .par_iter()
        .map(|&d| Ok((d, src.group_at(d)?.group())))
        .collect();
    Ok(v?.into_iter().collect())
}
