//! Finitely generated abelian groups: lattices, subquotients, cokernels and homology.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntegerMatrix, SparseMatrix, SparseVec};
use super::scalar::{two_adic_valuation, two_part, TwoLocal};
use super::snf::{Snf, Track};
use crate::error::{Error, Result};

/// `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | … | d_k`, each `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    /// Free generators first, then one label per invariant factor.
    pub generator_labels: Vec<String>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
            generator_labels: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
            generator_labels: (0..rank).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Same invariants up to isomorphism (labels ignored).
    pub fn isomorphic(&self, other: &AbelianGroup) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }

    /// Tensor with `Z_(2)`: odd torsion disappears and each factor keeps its 2-part.
    pub fn localized_at_two(&self) -> AbelianGroup {
        let mut labels: Vec<String> = self.generator_labels[..self.free_rank].to_vec();
        let mut factors = Vec::new();
        for (k, d) in self.invariant_factors.iter().enumerate() {
            let p = two_part(d);
            if !p.is_one() {
                factors.push(p);
                labels.push(self.generator_labels[self.free_rank + k].clone());
            }
        }
        AbelianGroup {
            free_rank: self.free_rank,
            invariant_factors: factors,
            generator_labels: labels,
        }
    }

    pub fn has_odd_torsion(&self) -> bool {
        self.invariant_factors
            .iter()
            .any(|d| two_adic_valuation(d).is_some_and(|v| !(d >> v).is_one()))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A subgroup of `Z^dim` with a basis and exact coordinates.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub dim: usize,
    pub basis: Vec<SparseVec>,
    coords: Coordinates,
}

#[derive(Clone, Debug)]
enum Coordinates {
    /// The whole ambient lattice with the standard basis.
    Full,
    /// `c_k = (row_k · x) / divisor_k`; `constraint · x = 0` for membership.
    Functionals {
        rows: Vec<SparseVec>,
        divisors: Vec<BigInt>,
        constraints: Vec<SparseVec>,
    },
}

impl Lattice {
    pub fn full(dim: usize) -> Lattice {
        Lattice {
            dim,
            basis: (0..dim).map(SparseVec::unit).collect(),
            coords: Coordinates::Full,
        }
    }

    /// The subgroup spanned by `gens`.
    pub fn span(dim: usize, gens: &[SparseVec]) -> Lattice {
        let m = SparseMatrix::new(dim, gens.to_vec());
        let snf = Snf::compute(
            &m,
            Track {
                u: true,
                u_inv: true,
                ..Track::NONE
            },
        );
        let mut basis = Vec::new();
        let mut rows = Vec::new();
        for (k, &r) in snf.pivot_rows.iter().enumerate() {
            basis.push(snf.u_inv_col(r).scale(&snf.pivots[k]));
            rows.push(snf.u_row(r));
        }
        let constraints = snf.non_pivot_rows().into_iter().map(|r| snf.u_row(r)).collect();
        Lattice {
            dim,
            basis,
            coords: Coordinates::Functionals {
                rows,
                divisors: snf.pivots.clone(),
                constraints,
            },
        }
    }

    /// The kernel of `m` (a subgroup of `Z^{m.cols()}`).
    pub fn kernel(m: &SparseMatrix) -> Lattice {
        let snf = Snf::compute(
            m,
            Track {
                v: true,
                v_inv: true,
                ..Track::NONE
            },
        );
        let free = snf.non_pivot_cols();
        let basis = free.iter().map(|&c| snf.v_col(c)).collect();
        let rows = free.iter().map(|&c| snf.v_inv_row(c)).collect();
        let constraints = snf.pivot_cols.iter().map(|&c| snf.v_inv_row(c)).collect();
        Lattice {
            dim: m.cols(),
            basis,
            coords: Coordinates::Functionals {
                rows,
                divisors: vec![BigInt::one(); free.len()],
                constraints,
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in the basis, or `None` if `x` is not in the lattice.
    pub fn coordinates(&self, x: &SparseVec) -> Option<Vec<BigInt>> {
        match &self.coords {
            Coordinates::Full => Some(x.to_dense(self.dim)),
            Coordinates::Functionals {
                rows,
                divisors,
                constraints,
            } => {
                if constraints.iter().any(|c| !c.dot(x).is_zero()) {
                    return None;
                }
                let mut out = Vec::with_capacity(rows.len());
                for (r, d) in rows.iter().zip(divisors) {
                    let (q, rem) = r.dot(x).div_rem(d);
                    if !rem.is_zero() {
                        return None;
                    }
                    out.push(q);
                }
                Some(out)
            }
        }
    }

    /// Smallest `k > 0` with `k·e_i` in the lattice, if any.
    pub fn minimal_multiple(&self, i: usize) -> Option<BigInt> {
        match &self.coords {
            Coordinates::Full => Some(BigInt::one()),
            Coordinates::Functionals {
                rows,
                divisors,
                constraints,
            } => {
                if constraints.iter().any(|c| !c.get(i).is_zero()) {
                    return None;
                }
                let mut k = BigInt::one();
                for (r, d) in rows.iter().zip(divisors) {
                    let v = r.get(i);
                    if !v.is_zero() {
                        k = k.lcm(&(d / v.gcd(d)));
                    }
                }
                Some(k)
            }
        }
    }

    pub fn contains(&self, x: &SparseVec) -> bool {
        self.coordinates(x).is_some()
    }

    /// Coordinates over `Z_(2)`: `x` lies in the `Z_(2)`-span iff some odd multiple lies in the lattice.
    pub fn coordinates_local(&self, x: &SparseVec) -> Option<Vec<TwoLocal>> {
        match &self.coords {
            Coordinates::Full => Some(
                x.to_dense(self.dim)
                    .iter()
                    .map(|v| TwoLocal::new(v.clone(), BigInt::one()).expect("integer"))
                    .collect(),
            ),
            Coordinates::Functionals {
                rows,
                divisors,
                constraints,
            } => {
                if constraints.iter().any(|c| !c.dot(x).is_zero()) {
                    return None;
                }
                let mut out = Vec::with_capacity(rows.len());
                for (r, d) in rows.iter().zip(divisors) {
                    let v = r.dot(x);
                    if !v.is_zero() && two_adic_valuation(&v) < two_adic_valuation(d) {
                        return None;
                    }
                    out.push(TwoLocal::new(v, d.clone()).ok()?);
                }
                Some(out)
            }
        }
    }

    /// `self ∩ other` (same ambient dimension).
    pub fn intersection(&self, other: &Lattice) -> Lattice {
        let r = self.rank();
        let mut cols: Vec<SparseVec> = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.scale(&-BigInt::one())));
        let k = Lattice::kernel(&SparseMatrix::new(self.dim, cols));
        let gens: Vec<SparseVec> = k
            .basis
            .iter()
            .map(|v| {
                let c: Vec<BigInt> = (0..r).map(|i| v.get(i)).collect();
                self.combine(&c)
            })
            .collect();
        Lattice::span(self.dim, &gens)
    }

    /// Recombines basis coordinates into an ambient vector.
    pub fn combine(&self, coords: &[BigInt]) -> SparseVec {
        let mut acc = SparseVec::new();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.axpy(c, b);
            }
        }
        acc
    }
}

/// The quotient `Z/N` of a lattice `Z` by a subgroup `N ⊆ Z`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub cycles: Lattice,
    snf: Snf,
    /// Indices (rows of the relation SNF) carrying the free part, then the torsion part.
    free_rows: Vec<usize>,
    torsion: Vec<(usize, BigInt)>,
    pub representatives: Vec<SparseVec>,
}

impl Subquotient {
    /// Fails with a shape error if some relation is not in `cycles`.
    pub fn new(cycles: Lattice, relations: &[SparseVec]) -> Result<Subquotient> {
        let r = cycles.rank();
        let mut coords = Vec::with_capacity(relations.len());
        for (j, rel) in relations.iter().enumerate() {
            let c = cycles
                .coordinates(rel)
                .ok_or(Error::BoundariesNotCycles { column: j })?;
            coords.push(SparseVec::from_dense(&c));
        }
        let snf = Snf::compute(
            &SparseMatrix::new(r, coords),
            Track {
                u: true,
                u_inv: true,
                ..Track::NONE
            },
        );
        let free_rows = snf.non_pivot_rows();
        let torsion: Vec<(usize, BigInt)> = snf
            .pivot_rows
            .iter()
            .zip(&snf.pivots)
            .filter(|(_, d)| !d.is_one())
            .map(|(r, d)| (*r, d.clone()))
            .collect();
        let representatives = free_rows
            .iter()
            .chain(torsion.iter().map(|(r, _)| r))
            .map(|&row| {
                let c = snf.u_inv_col(row).to_dense(r);
                cycles.combine(&c)
            })
            .collect();
        Ok(Subquotient {
            cycles,
            snf,
            free_rows,
            torsion,
            representatives,
        })
    }

    pub fn group_with(&self, label: impl Fn(&SparseVec) -> String) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.free_rows.len(),
            invariant_factors: self.torsion.iter().map(|(_, d)| d.clone()).collect(),
            generator_labels: self.representatives.iter().map(label).collect(),
        }
    }

    pub fn group(&self) -> AbelianGroup {
        self.group_with(format_combination)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rows.len()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.torsion.iter().map(|(_, d)| d.clone()).collect()
    }

    pub fn num_generators(&self) -> usize {
        self.representatives.len()
    }

    /// Class of a cycle in the generator coordinates (torsion coordinates reduced mod `d`).
    pub fn class_of(&self, x: &SparseVec) -> Option<Vec<BigInt>> {
        let c = SparseVec::from_dense(&self.cycles.coordinates(x)?);
        let mut out: Vec<BigInt> = self
            .free_rows
            .iter()
            .map(|&r| self.snf.u_row(r).dot(&c))
            .collect();
        for (r, d) in &self.torsion {
            out.push(self.snf.u_row(*r).dot(&c).mod_floor(d));
        }
        Some(out)
    }

    pub fn is_zero_class(&self, x: &SparseVec) -> Option<bool> {
        Some(self.class_of(x)?.iter().all(|c| c.is_zero()))
    }

    /// Order of the class (`None` for non-cycles, `Some(0)` for infinite order).
    pub fn order_of(&self, x: &SparseVec) -> Option<BigInt> {
        let c = self.class_of(x)?;
        let nf = self.free_rows.len();
        if c[..nf].iter().any(|v| !v.is_zero()) {
            return Some(BigInt::zero());
        }
        let mut order = BigInt::one();
        for (v, (_, d)) in c[nf..].iter().zip(&self.torsion) {
            if !v.is_zero() {
                let o = d / v.gcd(d);
                order = order.lcm(&o);
            }
        }
        Some(order)
    }

    /// Rank of the subgroup generated by the classes of `xs` after tensoring with `Z_(2)`,
    /// together with whether those classes span `H ⊗ Z_(2)`.
    pub fn spans_locally(&self, xs: &[SparseVec]) -> Option<bool> {
        let n = self.num_generators();
        let nf = self.free_rows.len();
        let mut cols = Vec::new();
        for x in xs {
            cols.push(SparseVec::from_dense(&self.class_of(x)?));
        }
        // relations of H: torsion factors
        for (k, (_, d)) in self.torsion.iter().enumerate() {
            cols.push(SparseVec(vec![(nf + k, d.clone())]));
        }
        let snf = Snf::compute(&SparseMatrix::new(n, cols), Track::NONE);
        if snf.rank() < n {
            return Some(false);
        }
        // the span is everything after inverting odd numbers iff all pivots are odd
        Some(snf.pivots.iter().all(|d| d.is_odd()))
    }

    /// Whether the classes of `xs` generate `H` itself.
    pub fn spans(&self, xs: &[SparseVec]) -> Option<bool> {
        let n = self.num_generators();
        let nf = self.free_rows.len();
        let mut cols = Vec::new();
        for x in xs {
            cols.push(SparseVec::from_dense(&self.class_of(x)?));
        }
        for (k, (_, d)) in self.torsion.iter().enumerate() {
            cols.push(SparseVec(vec![(nf + k, d.clone())]));
        }
        let snf = Snf::compute(&SparseMatrix::new(n, cols), Track::NONE);
        Some(snf.rank() == n && snf.pivots.iter().all(|d| d.is_one()))
    }
}

/// `e0 + 2e1 - e3` style label for an integer combination of ambient basis vectors.
pub fn format_combination(v: &SparseVec) -> String {
    format_combination_with(v, |i| format!("e{i}"))
}

pub fn format_combination_with(v: &SparseVec, name: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (i, c)) in v.0.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&a.to_string());
            s.push('*');
        }
        s.push_str(&name(*i));
    }
    s
}

/// `Z^rows / column-span(M)`.
pub fn cokernel(m: &IntegerMatrix) -> AbelianGroup {
    let sp = m.to_sparse();
    Subquotient::new(Lattice::full(m.rows()), &sp.columns)
        .expect("full lattice contains every column")
        .group()
}

/// `ker(Z) / im(B)`.
pub fn homology(z: &IntegerMatrix, b: &IntegerMatrix) -> Result<AbelianGroup> {
    Ok(homology_subquotient(&z.to_sparse(), &b.to_sparse())?.group())
}

pub fn homology_subquotient(z: &SparseMatrix, b: &SparseMatrix) -> Result<Subquotient> {
    if z.cols() != b.rows {
        return Err(Error::Shape(format!(
            "Z has {} columns but B has {} rows",
            z.cols(),
            b.rows
        )));
    }
    for (j, col) in b.columns.iter().enumerate() {
        if !z.apply_sparse(col).is_zero() {
            return Err(Error::BoundariesNotCycles { column: j });
        }
    }
    Subquotient::new(Lattice::kernel(z), &b.columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_cokernel() {
        let g = cokernel(&IntegerMatrix::from_rows(&[vec![2]]));
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.invariant_factors, ints(&[2]));
        assert_eq!(g.generator_labels.len(), 1);
    }

    #[test]
    fn coprime_factors_merge() {
        let g = cokernel(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.invariant_factors, ints(&[6]));
    }

    #[test]
    fn empty_relations() {
        let g = cokernel(&IntegerMatrix::empty_columns(2));
        assert_eq!(g.free_rank, 2);
        assert!(g.invariant_factors.is_empty());
    }

    #[test]
    fn homology_examples() {
        let h = homology(
            &IntegerMatrix::zero(1, 1),
            &IntegerMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        assert_eq!(h.to_string(), "Z/2");
        let h = homology(
            &IntegerMatrix::from_rows(&[vec![0, 0]]),
            &IntegerMatrix::empty_columns(2),
        )
        .unwrap();
        assert_eq!(h.to_string(), "Z^2");
        let h = homology(
            &IntegerMatrix::from_rows(&[vec![1, 0]]),
            &IntegerMatrix::empty_columns(2),
        )
        .unwrap();
        assert_eq!(h.to_string(), "Z");
        assert_eq!(h.generator_labels, vec!["e1".to_string()]);
    }

    #[test]
    fn boundaries_must_be_cycles() {
        let err = homology(
            &IntegerMatrix::from_rows(&[vec![1]]),
            &IntegerMatrix::from_rows(&[vec![1]]),
        )
        .unwrap_err();
        assert_eq!(err, Error::BoundariesNotCycles { column: 0 });
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::span(2, &[SparseVec::from_dense(&ints(&[2, 0])), SparseVec::from_dense(&ints(&[0, 6]))]);
        assert!(l.contains(&SparseVec::from_dense(&ints(&[4, 6]))));
        assert!(!l.contains(&SparseVec::from_dense(&ints(&[1, 0]))));
        assert!(l.coordinates_local(&SparseVec::from_dense(&ints(&[0, 2]))).is_some());
        assert!(l.coordinates_local(&SparseVec::from_dense(&ints(&[0, 3]))).is_none());
    }

    #[test]
    fn class_orders() {
        let sq = Subquotient::new(Lattice::full(2), &[SparseVec::from_dense(&ints(&[4, 0]))]).unwrap();
        assert_eq!(sq.order_of(&SparseVec::from_dense(&ints(&[2, 0]))), Some(BigInt::from(2)));
        assert_eq!(sq.order_of(&SparseVec::from_dense(&ints(&[0, 1]))), Some(BigInt::zero()));
        assert_eq!(sq.is_zero_class(&SparseVec::from_dense(&ints(&[8, 0]))), Some(true));
    }

    #[test]
    fn localization_drops_odd_torsion() {
        let g = cokernel(&IntegerMatrix::from_rows(&[vec![3, 0], vec![0, 12]]));
        assert_eq!(g.invariant_factors, ints(&[3, 12]));
        assert!(g.has_odd_torsion());
        let l = g.localized_at_two();
        assert_eq!(l.invariant_factors, ints(&[4]));
    }
}
