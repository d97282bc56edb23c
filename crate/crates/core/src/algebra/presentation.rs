use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::degree::Degree;
use super::enumerate::MonomialEnumerator;
use super::poly::{GeneratorTable, Monomial, PolyElement};
use super::window::DegreeWindow;
use crate::error::{Error, Result};
use crate::exact::group::{format_combination_with, AbelianGroup, Lattice, Subquotient};
use crate::exact::matrix::{SparseMatrix, SparseVec};
use crate::exact::scalar::{Coeff, RingTag};
use crate::exact::snf::{Snf, Track};

/// A source of degreewise groups whose elements are integer polynomials in a fixed table.
pub trait GradedGroups: Sync {
    fn table(&self) -> &GeneratorTable;
    fn group_at(&self, d: Degree) -> Result<Arc<DegreeGroup>>;
}

/// The group in one degree: a subquotient of the free group on the degree's monomials.
#[derive(Clone, Debug)]
pub struct DegreeGroup {
    pub degree: Degree,
    pub basis: Arc<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    pub sq: Subquotient,
    /// Named generators: free ones first, then torsion.
    pub labels: Vec<String>,
    pub named_representatives: Vec<SparseVec>,
}

impl DegreeGroup {
    pub fn new(
        degree: Degree,
        basis: Arc<Vec<Monomial>>,
        cycles: Lattice,
        relations: &[SparseVec],
        names: &[String],
    ) -> Result<DegreeGroup> {
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let sq = Subquotient::new(cycles, relations)?;
        let mut g = DegreeGroup {
            degree,
            basis,
            index,
            sq,
            labels: Vec::new(),
            named_representatives: Vec::new(),
        };
        g.name_generators(names);
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.sq.num_generators() == 0
    }

    pub fn vector(&self, p: &PolyElement<BigInt>) -> Option<SparseVec> {
        let mut map = BTreeMap::new();
        for (m, c) in p.terms() {
            map.insert(*self.index.get(m)?, c.clone());
        }
        Some(SparseVec::from_map(map))
    }

    pub fn poly(&self, v: &SparseVec) -> PolyElement<BigInt> {
        PolyElement::from_terms(v.0.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())))
    }

    /// Class coordinates of a cycle; `None` if `p` is not a cycle of this degree.
    pub fn class(&self, p: &PolyElement<BigInt>) -> Option<Vec<BigInt>> {
        self.sq.class_of(&self.vector(p)?)
    }

    pub fn is_zero_class(&self, p: &PolyElement<BigInt>) -> Option<bool> {
        self.sq.is_zero_class(&self.vector(p)?)
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.sq.free_rank(),
            invariant_factors: self.sq.torsion(),
            generator_labels: self.labels.clone(),
        }
    }

    /// Quotient of this group by the subgroup generated by the given cycles.
    pub fn quotient_by(&self, xs: &[PolyElement<BigInt>]) -> Option<AbelianGroup> {
        let n = self.sq.num_generators();
        let nf = self.sq.free_rank();
        let mut cols = Vec::new();
        for x in xs {
            cols.push(SparseVec::from_dense(&self.class(x)?));
        }
        for (k, d) in self.sq.torsion().iter().enumerate() {
            cols.push(SparseVec(vec![(nf + k, d.clone())]));
        }
        let rel = SparseMatrix::new(n, cols);
        let q = Subquotient::new(Lattice::full(n), &rel.columns).ok()?;
        Some(q.group())
    }

    pub fn spans(&self, xs: &[PolyElement<BigInt>]) -> Option<bool> {
        let vs: Option<Vec<SparseVec>> = xs.iter().map(|x| self.vector(x)).collect();
        self.sq.spans(&vs?)
    }

    pub fn spans_locally(&self, xs: &[PolyElement<BigInt>]) -> Option<bool> {
        let vs: Option<Vec<SparseVec>> = xs.iter().map(|x| self.vector(x)).collect();
        self.sq.spans_locally(&vs?)
    }

    /// Picks readable generator names: multiples `k·m` of single monomials, smallest first,
    /// falling back to the reduction's own representatives.
    fn name_generators(&mut self, names: &[String]) {
        let n = self.sq.num_generators();
        if n == 0 {
            return;
        }
        let nf = self.sq.free_rank();
        let torsion = self.sq.torsion();
        let mut candidates: Vec<(SparseVec, Vec<BigInt>, String)> = Vec::new();
        for i in 0..self.basis.len() {
            let Some(k) = self.sq.cycles.minimal_multiple(i) else {
                continue;
            };
            let v = SparseVec(vec![(i, k.clone())]);
            let Some(class) = self.sq.class_of(&v) else {
                continue;
            };
            if class.iter().all(|c| c.is_zero()) {
                continue;
            }
            let m = self.basis[i].fmt_with(names);
            let label = if k.is_one() { m } else { format!("[{k}{m}]") };
            candidates.push((v, class, label));
        }
        let reps = if torsion.is_empty() {
            greedy_basis(n, &candidates)
        } else if n == 1 {
            let d = &torsion[0];
            candidates
                .iter()
                .find(|(_, c, _)| c[0].gcd(d).is_one())
                .map(|x| vec![x.clone()])
        } else {
            None
        };
        if let Some(chosen) = reps {
            self.labels = chosen.iter().map(|x| x.2.clone()).collect();
            self.named_representatives = chosen.into_iter().map(|x| x.0).collect();
            return;
        }
        // match each reduction generator exactly, up to sign
        let mut labels = Vec::new();
        for rep in &self.sq.representatives {
            let own = self.sq.class_of(rep).expect("representative is a cycle");
            let found = candidates.iter().find(|(_, c, _)| {
                let neg: Vec<BigInt> = c
                    .iter()
                    .enumerate()
                    .map(|(j, x)| if j < nf { -x } else { (-x).mod_floor(&torsion[j - nf]) })
                    .collect();
                *c == own || neg == own
            });
            let label = match found {
                Some(x) => x.2.clone(),
                None => {
                    let rep = match rep.0.first() {
                        Some((_, c)) if c.is_negative() => rep.scale(&-BigInt::one()),
                        _ => rep.clone(),
                    };
                    let p = format_combination_with(&rep, |i| self.basis[i].fmt_with(names));
                    format!("[{p}]")
                }
            };
            labels.push(label);
        }
        self.labels = labels;
        self.named_representatives = self.sq.representatives.clone();
    }
}

/// Greedy choice of candidates forming a basis of a free group of rank `n`.
fn greedy_basis(
    n: usize,
    candidates: &[(SparseVec, Vec<BigInt>, String)],
) -> Option<Vec<(SparseVec, Vec<BigInt>, String)>> {
    let mut chosen: Vec<(SparseVec, Vec<BigInt>, String)> = Vec::new();
    for cand in candidates {
        if chosen.len() == n {
            break;
        }
        let mut cols: Vec<SparseVec> = chosen.iter().map(|x| SparseVec::from_dense(&x.1)).collect();
        cols.push(SparseVec::from_dense(&cand.1));
        let snf = Snf::compute(&SparseMatrix::new(n, cols.clone()), Track::NONE);
        if snf.rank() == cols.len() && snf.pivots.iter().all(|p| p.is_one()) {
            chosen.push(cand.clone());
        }
    }
    (chosen.len() == n).then_some(chosen)
}

/// A commutative ring `R[generators]/(relations)` graded by `Degree`.
#[derive(Debug)]
pub struct RingPresentation<R: Coeff> {
    pub table: GeneratorTable,
    pub relations: Vec<PolyElement<R>>,
    relation_degrees: Vec<Degree>,
    enumerator: Arc<MonomialEnumerator>,
    groups: Mutex<HashMap<Degree, Arc<DegreeGroup>>>,
}

impl<R: Coeff> Clone for RingPresentation<R> {
    fn clone(&self) -> Self {
        RingPresentation {
            table: self.table.clone(),
            relations: self.relations.clone(),
            relation_degrees: self.relation_degrees.clone(),
            enumerator: self.enumerator.clone(),
            groups: Mutex::new(HashMap::new()),
        }
    }
}

impl<R: Coeff> RingPresentation<R> {
    pub fn new(table: GeneratorTable, relations: Vec<PolyElement<R>>) -> Result<Self> {
        let enumerator = Arc::new(MonomialEnumerator::new(&table)?);
        let mut relation_degrees = Vec::new();
        let mut kept = Vec::new();
        for r in relations {
            let Some(d) = r.degree(&table)? else {
                continue;
            };
            if table.weight(d) <= 0 {
                return Err(Error::NotHomogeneous(format!(
                    "relation {} has non-positive weight",
                    r.fmt_with(&table.names())
                )));
            }
            relation_degrees.push(d);
            kept.push(r);
        }
        Ok(RingPresentation {
            table,
            relations: kept,
            relation_degrees,
            enumerator,
            groups: Mutex::new(HashMap::new()),
        })
    }

    pub fn free(table: GeneratorTable) -> Result<Self> {
        Self::new(table, Vec::new())
    }

    pub fn ring(&self) -> RingTag {
        R::TAG
    }

    pub fn names(&self) -> Vec<String> {
        self.table.names()
    }

    pub fn var(&self, name: &str) -> Result<PolyElement<R>> {
        self.table
            .index(name)
            .map(PolyElement::var)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn parse(&self, s: &str) -> Result<PolyElement<R>> {
        super::parse::parse_poly(s, &self.names())
    }

    pub fn fmt(&self, p: &PolyElement<R>) -> String {
        p.fmt_with(&self.names())
    }

    pub fn enumerator(&self) -> &Arc<MonomialEnumerator> {
        &self.enumerator
    }

    pub fn monomials(&self, d: Degree) -> Arc<Vec<Monomial>> {
        self.enumerator.monomials(d)
    }

    /// Integer vectors spanning the relations in degree `d`, in the monomial basis of `d`.
    pub fn relation_vectors(&self, d: Degree) -> Vec<SparseVec> {
        let basis = self.monomials(d);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Vec::new();
        for (r, e) in self.relations.iter().zip(&self.relation_degrees) {
            for m in self.monomials(d - *e).iter() {
                let p = r.mul_monomial(m);
                let scale = common_denominator_of(&p);
                let v = SparseVec::from_map(
                    p.terms()
                        .map(|(n, c)| (index[n], c.numerator_scaled(&scale)))
                        .collect(),
                );
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
        if R::TAG == RingTag::F2 {
            for i in 0..basis.len() {
                out.push(SparseVec(vec![(i, BigInt::from(2))]));
            }
        }
        out
    }

    pub fn group_at(&self, d: Degree) -> Result<Arc<DegreeGroup>> {
        if let Some(g) = self.groups.lock().expect("group cache").get(&d) {
            return Ok(g.clone());
        }
        let basis = self.monomials(d);
        let rels = self.relation_vectors(d);
        let g = Arc::new(DegreeGroup::new(
            d,
            basis.clone(),
            Lattice::full(basis.len()),
            &rels,
            &self.names(),
        )?);
        self.groups.lock().expect("group cache").insert(d, g.clone());
        Ok(g)
    }

    /// The group in degree `d`; tensored with `Z_(2)` when the coefficients are 2-local.
    pub fn degreewise_group(&self, d: Degree) -> Result<AbelianGroup> {
        let g = self.group_at(d)?.group();
        Ok(match R::TAG {
            RingTag::TwoLocal => g.localized_at_two(),
            _ => g,
        })
    }

    pub fn hilbert_function(&self, w: &DegreeWindow) -> Result<BTreeMap<Degree, AbelianGroup>> {
        w.validate()?;
        let degrees = w.degrees();
        let groups: Result<Vec<(Degree, AbelianGroup)>> = degrees
            .par_iter()
            .map(|&d| Ok((d, self.degreewise_group(d)?)))
            .collect();
        Ok(groups?.into_iter().collect())
    }
}

fn common_denominator_of<R: Coeff>(p: &PolyElement<R>) -> BigInt {
    p.terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(&c.denominator()))
}

impl GradedGroups for RingPresentation<BigInt> {
    fn table(&self) -> &GeneratorTable {
        &self.table
    }

    fn group_at(&self, d: Degree) -> Result<Arc<DegreeGroup>> {
        RingPresentation::group_at(self, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2(n: usize) -> RingPresentation<BigInt> {
        let mut gens = vec![
            ("a".to_string(), Degree::new(0, -1, 1)),
            ("u".to_string(), Degree::new(2, -2, 0)),
        ];
        for i in 1..=n {
            let k = (1 << i) - 1;
            gens.push((format!("v{i}"), Degree::new(k, k, 0)));
        }
        for i in 1..=3 {
            let k = (1 << i) - 1;
            gens.push((format!("t{i}"), Degree::new(2 * k, 0, -2 * k)));
        }
        let t = GeneratorTable::new(gens);
        let two_a = PolyElement::var(0).scale(&BigInt::from(2));
        RingPresentation::new(t, vec![two_a]).unwrap()
    }

    #[test]
    fn eta_degree_is_two_torsion() {
        let p = e2(1);
        let g = p.degreewise_group(Degree::new(1, 0, 1)).unwrap();
        assert_eq!(g.to_string(), "Z/2");
        assert_eq!(g.generator_labels, vec!["a*v1".to_string()]);
        assert_eq!(p.degreewise_group(Degree::ZERO).unwrap().to_string(), "Z");
    }

    #[test]
    fn polynomial_ring_matches_monomial_count() {
        let t = GeneratorTable::new([
            ("b", Degree::new(2, 0, 0)),
            ("c", Degree::new(4, 0, 0)),
            ("t2", Degree::new(6, 0, 0)),
            ("t3", Degree::new(14, 0, 0)),
        ]);
        let p = RingPresentation::<BigInt>::free(t).unwrap();
        let ranks: Vec<usize> = (0..=8)
            .map(|c| p.degreewise_group(Degree::new(c, 0, 0)).unwrap().free_rank)
            .collect();
        assert_eq!(ranks, vec![1, 0, 1, 0, 2, 0, 3, 0, 4]);
    }

    #[test]
    fn trivial_ring() {
        let t = GeneratorTable::new(Vec::<(String, Degree)>::new());
        let p = RingPresentation::<BigInt>::free(t).unwrap();
        let w = DegreeWindow::new(3, 1, 2).unwrap();
        for (d, g) in p.hilbert_function(&w).unwrap() {
            assert_eq!(g.free_rank, usize::from(d == Degree::ZERO));
            assert!(g.invariant_factors.is_empty());
        }
    }
}
