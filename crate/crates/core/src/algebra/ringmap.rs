use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::degree::Degree;
use super::enumerate::MonomialEnumerator;
use super::poly::{GeneratorTable, Monomial, PolyElement};
use super::presentation::{GradedGroups, RingPresentation};
use super::window::DegreeWindow;
use crate::error::{Error, Result};
use crate::exact::scalar::Coeff;
use crate::report::Outcome;

/// A ring map out of a polynomial ring over Z, given by the images of the generators.
#[derive(Debug)]
pub struct RingMap<S: Coeff> {
    pub source: GeneratorTable,
    pub target: GeneratorTable,
    pub images: Vec<PolyElement<S>>,
    powers: Mutex<HashMap<(usize, u32), Arc<PolyElement<S>>>>,
}

impl<S: Coeff> RingMap<S> {
    /// Fails with a degree mismatch if some image is not homogeneous of its generator's degree.
    pub fn new(source: GeneratorTable, target: GeneratorTable, images: Vec<PolyElement<S>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Shape(format!(
                "{} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        for (g, img) in source.gens.iter().zip(&images) {
            if let Some(d) = img.degree(&target)? {
                if d != g.degree {
                    return Err(Error::DegreeMismatch {
                        what: format!("image of {}", g.name),
                        expected: g.degree,
                        found: d,
                    });
                }
            }
        }
        Ok(RingMap {
            source,
            target,
            images,
            powers: Mutex::new(HashMap::new()),
        })
    }

    /// Builds the map from `name ↦ expression` pairs parsed in the target; unlisted generators map to 0.
    pub fn from_strings(source: &GeneratorTable, target: &GeneratorTable, assignment: &[(&str, &str)]) -> Result<Self> {
        let names = target.names();
        let mut images = vec![PolyElement::zero(); source.len()];
        for (name, expr) in assignment {
            let i = source
                .index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            images[i] = super::parse::parse_poly(expr, &names)?;
        }
        Self::new(source.clone(), target.clone(), images)
    }

    fn power(&self, i: usize, e: u32) -> Arc<PolyElement<S>> {
        if let Some(p) = self.powers.lock().expect("power cache").get(&(i, e)) {
            return p.clone();
        }
        let p = Arc::new(self.images[i].pow(e));
        self.powers.lock().expect("power cache").insert((i, e), p.clone());
        p
    }

    pub fn apply_monomial(&self, m: &Monomial) -> PolyElement<S> {
        let mut acc = PolyElement::one();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                acc = acc.mul(&self.power(i, e));
                if acc.is_zero() {
                    break;
                }
            }
        }
        acc
    }

    pub fn apply(&self, x: &PolyElement<BigInt>) -> PolyElement<S> {
        let mut out = PolyElement::zero();
        for (m, c) in x.terms() {
            let img = self.apply_monomial(m);
            out = out.add(&img.scale(&S::from_int(c)));
        }
        out
    }
}

/// Images of relations must vanish in the target presentation in their own degree; enough for
/// every degree of the window since the relation ideal is generated by them.
pub fn verify_ring_map<S: Coeff>(
    map: &RingMap<S>,
    relations: &[PolyElement<BigInt>],
    target: &RingPresentation<S>,
    w: &DegreeWindow,
) -> Result<Outcome> {
    let mut out = Outcome::new();
    let names = map.source.names();
    for r in relations {
        let Some(d) = r.degree(&map.source)? else {
            continue;
        };
        if !w.contains(d) {
            continue;
        }
        let img = map.apply(r);
        let zero = target.vanishes(&img, d)?;
        let item = format!("image of relation {}", r.fmt_with(&names));
        if zero {
            out.detail(Some(d), item, "0", "0");
        } else {
            out.fail(Some(d), item, "0", img.fmt_with(&target.names()));
        }
    }
    Ok(out)
}

/// Whether an element is zero in a presentation.
pub trait ImageCheck<S: Coeff> {
    fn vanishes(&self, x: &PolyElement<S>, d: Degree) -> Result<bool>;
}

impl<S: Coeff> ImageCheck<S> for RingPresentation<S> {
    fn vanishes(&self, x: &PolyElement<S>, d: Degree) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        if self.relations.is_empty() {
            return Ok(false);
        }
        let basis = self.monomials(d);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let scale = x
            .terms()
            .fold(BigInt::from(1), |acc, (_, c)| num_integer::Integer::lcm(&acc, &c.denominator()));
        let mut map = BTreeMap::new();
        for (m, c) in x.terms() {
            let Some(&i) = index.get(m) else {
                return Err(Error::NotHomogeneous(format!("term outside degree {d}")));
            };
            map.insert(i, c.numerator_scaled(&scale));
        }
        let v = crate::exact::matrix::SparseVec::from_map(map);
        let g = self.group_at(d)?;
        Ok(g.sq.is_zero_class(&v).unwrap_or(false))
    }
}

/// Compares a ring presentation with computed degreewise groups through a generator assignment.
///
/// In each degree: relations of the presentation must map to zero, images must span, and the
/// invariants must agree (a surjection between isomorphic finitely generated groups is an
/// isomorphism).
pub fn verify_presentation_iso(
    computed: &dyn GradedGroups,
    claimed: &RingPresentation<BigInt>,
    assignment: &RingMap<BigInt>,
    w: &DegreeWindow,
) -> Result<Outcome> {
    w.validate()?;
    let degrees = w.degrees();
    let names = claimed.names();
    let per_degree: Result<Vec<Outcome>> = degrees
        .par_iter()
        .map(|&d| {
            let mut out = Outcome::new();
            let hg = computed.group_at(d)?;
            let cg = claimed.group_at(d)?;
            let h = hg.group();
            let c = cg.group();
            let mut images = Vec::new();
            for m in cg.basis.iter() {
                let img = assignment.apply_monomial(m);
                if hg.class(&img).is_none() {
                    out.fail(
                        Some(d),
                        format!("image of {} is a cycle", m.fmt_with(&names)),
                        "cycle",
                        "not a cycle",
                    );
                    return Ok(out);
                }
                images.push(img);
            }
            for rel in claimed.relation_vectors(d) {
                let poly = cg.poly(&rel);
                let img = assignment.apply(&poly);
                if hg.is_zero_class(&img) != Some(true) {
                    out.fail(
                        Some(d),
                        format!("relation {} maps to zero", poly.fmt_with(&names)),
                        "0",
                        format!("[{}]", img.fmt_with(&computed.table().names())),
                    );
                }
            }
            let spans = hg.spans(&images).unwrap_or(false);
            if !spans {
                out.fail(Some(d), "assignment is surjective", "surjective", "not surjective");
            }
            if h.isomorphic(&c) {
                out.detail(Some(d), "group", c.to_string(), h.to_string());
            } else {
                out.fail(Some(d), "group", c.to_string(), h.to_string());
            }
            Ok(out)
        })
        .collect();
    let mut out = Outcome::new();
    for o in per_degree? {
        out.merge(o);
    }
    Ok(out)
}

/// Checks that products of `classes` span every group of the window.
pub fn generation_check(
    groups: &dyn GradedGroups,
    classes: &[PolyElement<BigInt>],
    w: &DegreeWindow,
) -> Result<Outcome> {
    let ambient = groups.table();
    let names = ambient.names();
    let mut gens = Vec::new();
    let mut kept = Vec::new();
    for (k, c) in classes.iter().enumerate() {
        let Some(d) = c.degree(ambient)? else {
            continue;
        };
        if d == Degree::ZERO {
            continue;
        }
        gens.push((format!("g{k}"), d));
        kept.push(c.clone());
    }
    let table = GeneratorTable::new(gens).with_positivity(ambient.positivity);
    let enumerator = MonomialEnumerator::new(&table)?;
    let map = RingMap::new(table, ambient.clone(), kept)?;
    let per_degree: Result<Vec<Outcome>> = w
        .degrees()
        .par_iter()
        .map(|&d| {
            let mut out = Outcome::new();
            let g = groups.group_at(d)?;
            if g.is_zero() {
                return Ok(out);
            }
            let products: Vec<PolyElement<BigInt>> = enumerator
                .monomials(d)
                .iter()
                .map(|m| map.apply_monomial(m))
                .collect();
            match g.quotient_by(&products) {
                Some(q) if q.is_zero() => {
                    out.detail(Some(d), "unspanned quotient", "0", "0");
                }
                Some(q) => {
                    out.fail(Some(d), "unspanned quotient", "0", q.to_string());
                }
                None => {
                    let bad = products
                        .iter()
                        .find(|p| g.class(p).is_none())
                        .map(|p| p.fmt_with(&names))
                        .unwrap_or_default();
                    out.fail(Some(d), format!("product {bad} is a cycle"), "cycle", "not a cycle");
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Outcome::new();
    for o in per_degree? {
        out.merge(o);
    }
    Ok(out)
}
