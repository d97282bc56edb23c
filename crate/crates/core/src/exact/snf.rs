//! Smith normal form over the integers with explicit transformation tracking.
//!
//! The elimination works on a sparse copy of the matrix. The pivot is always an entry of
//! smallest absolute value, ties broken by the lowest `(row, col)`; the row and column
//! operations performed are replayed on whichever of `U`, `U⁻¹`, `V`, `V⁻¹` were requested.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntegerMatrix, SparseMatrix, SparseVec};

/// Which transformation matrices to accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const ALL: Track = Track {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const NONE: Track = Track {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
}

#[derive(Clone, Debug)]
struct RowStore(Vec<BTreeMap<usize, BigInt>>);

impl RowStore {
    fn identity(n: usize) -> Self {
        RowStore(
            (0..n)
                .map(|i| BTreeMap::from([(i, BigInt::one())]))
                .collect(),
        )
    }

    /// row[target] += c * row[source]
    fn add(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let src: Vec<(usize, BigInt)> = self.0[source]
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        let row = &mut self.0[target];
        for (k, v) in src {
            let e = row.entry(k).or_insert_with(BigInt::zero);
            *e += c * v;
            if e.is_zero() {
                row.remove(&k);
            }
        }
    }

    fn negate(&mut self, i: usize) {
        for v in self.0[i].values_mut() {
            *v = -v.clone();
        }
    }

    fn row(&self, i: usize) -> SparseVec {
        SparseVec(self.0[i].iter().map(|(k, v)| (*k, v.clone())).collect())
    }
}

/// Result of a Smith normal form computation.
///
/// Pivot `k` sits at original position `(pivot_rows[k], pivot_cols[k])` with positive value
/// `pivots[k]`; pivots form a divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    pub pivots: Vec<BigInt>,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    u: Option<RowStore>,
    u_inv_t: Option<RowStore>,
    v_t: Option<RowStore>,
    v_inv: Option<RowStore>,
}

struct Work {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
    active_rows: BTreeSet<usize>,
    u: Option<RowStore>,
    u_inv_t: Option<RowStore>,
    v_t: Option<RowStore>,
    v_inv: Option<RowStore>,
}

impl Work {
    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let src: Vec<(usize, BigInt)> = self.rows[source]
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for (j, v) in src {
            let cur = self.rows[target].get(&j).cloned().unwrap_or_default();
            self.set(target, j, cur + c * v);
        }
        if let Some(u) = &mut self.u {
            u.add(target, source, c);
        }
        if let Some(ui) = &mut self.u_inv_t {
            ui.add(source, target, &-c);
        }
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let src: Vec<usize> = self.cols[source].iter().copied().collect();
        for i in src {
            let v = self.rows[i][&source].clone();
            let cur = self.rows[i].get(&target).cloned().unwrap_or_default();
            self.set(i, target, cur + c * v);
        }
        if let Some(v) = &mut self.v_t {
            v.add(target, source, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add(source, target, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.rows[i].values_mut() {
            *v = -v.clone();
        }
        if let Some(u) = &mut self.u {
            u.negate(i);
        }
        if let Some(ui) = &mut self.u_inv_t {
            ui.negate(i);
        }
    }

    fn smallest_entry(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for &i in &self.active_rows {
            for (j, v) in &self.rows[i] {
                let a = v.abs();
                if a.is_one() {
                    return Some((i, *j));
                }
                if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                    best = Some((a, i, *j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn first_non_multiple(&self, pivot_row: usize, pivot_col: usize, p: &BigInt) -> Option<usize> {
        for &i in &self.active_rows {
            if i == pivot_row {
                continue;
            }
            for (j, v) in &self.rows[i] {
                if *j != pivot_col && !v.is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }

    /// Clears row `i` and column `j` around the pivot; returns a new pivot position when a
    /// nonzero remainder smaller than the pivot appeared.
    fn clear_cross(&mut self, i: usize, j: usize) -> Option<(usize, usize)> {
        let p = self.rows[i][&j].clone();
        let others: Vec<(usize, BigInt)> = self.rows[i]
            .iter()
            .filter(|(l, _)| **l != j)
            .map(|(l, v)| (*l, v.clone()))
            .collect();
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (l, a) in others {
            let q = &a / &p;
            self.add_col(l, j, &-q);
            if let Some(r) = self.rows[i].get(&l) {
                let ra = r.abs();
                if best.as_ref().is_none_or(|(b, _, _)| ra < *b) {
                    best = Some((ra, i, l));
                }
            }
        }
        if let Some((_, a, b)) = best {
            return Some((a, b));
        }
        let others: Vec<(usize, BigInt)> = self.cols[j]
            .iter()
            .filter(|k| **k != i)
            .map(|k| (*k, self.rows[*k][&j].clone()))
            .collect();
        for (k, a) in others {
            let q = &a / &p;
            self.add_row(k, i, &-q);
            if let Some(r) = self.rows[k].get(&j) {
                let ra = r.abs();
                if best.as_ref().is_none_or(|(b, _, _)| ra < *b) {
                    best = Some((ra, k, j));
                }
            }
        }
        best.map(|(_, a, b)| (a, b))
    }
}

impl Snf {
    pub fn compute(m: &SparseMatrix, track: Track) -> Snf {
        let rows = m.rows;
        let cols = m.cols();
        let mut w = Work {
            rows: vec![BTreeMap::new(); rows],
            cols: vec![BTreeSet::new(); cols],
            active_rows: (0..rows).collect(),
            u: track.u.then(|| RowStore::identity(rows)),
            u_inv_t: track.u_inv.then(|| RowStore::identity(rows)),
            v_t: track.v.then(|| RowStore::identity(cols)),
            v_inv: track.v_inv.then(|| RowStore::identity(cols)),
        };
        for (j, col) in m.columns.iter().enumerate() {
            for (i, v) in &col.0 {
                w.set(*i, j, v.clone());
            }
        }
        let mut pivots = Vec::new();
        let mut pivot_rows = Vec::new();
        let mut pivot_cols = Vec::new();
        while let Some((mut i, mut j)) = w.smallest_entry() {
            loop {
                if let Some((a, b)) = w.clear_cross(i, j) {
                    i = a;
                    j = b;
                    continue;
                }
                let p = w.rows[i][&j].abs();
                if !p.is_one() {
                    if let Some(k) = w.first_non_multiple(i, j, &p) {
                        w.add_row(i, k, &BigInt::one());
                        continue;
                    }
                }
                break;
            }
            if w.rows[i][&j].is_negative() {
                w.negate_row(i);
            }
            pivots.push(w.rows[i][&j].clone());
            pivot_rows.push(i);
            pivot_cols.push(j);
            w.active_rows.remove(&i);
            // the pivot row and column now hold only the pivot
            w.rows[i].clear();
            w.cols[j].clear();
        }
        Snf {
            rows,
            cols,
            pivots,
            pivot_rows,
            pivot_cols,
            u: w.u,
            u_inv_t: w.u_inv_t,
            v_t: w.v_t,
            v_inv: w.v_inv,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Row `i` of `U` (original row labelling), so `(U x)_i = u_row(i)·x`.
    pub fn u_row(&self, i: usize) -> SparseVec {
        self.u.as_ref().expect("U not tracked").row(i)
    }

    /// Column `i` of `U⁻¹`.
    pub fn u_inv_col(&self, i: usize) -> SparseVec {
        self.u_inv_t.as_ref().expect("U⁻¹ not tracked").row(i)
    }

    /// Column `j` of `V`.
    pub fn v_col(&self, j: usize) -> SparseVec {
        self.v_t.as_ref().expect("V not tracked").row(j)
    }

    /// Row `j` of `V⁻¹`.
    pub fn v_inv_row(&self, j: usize) -> SparseVec {
        self.v_inv.as_ref().expect("V⁻¹ not tracked").row(j)
    }

    pub fn non_pivot_rows(&self) -> Vec<usize> {
        let p: BTreeSet<usize> = self.pivot_rows.iter().copied().collect();
        (0..self.rows).filter(|i| !p.contains(i)).collect()
    }

    pub fn non_pivot_cols(&self) -> Vec<usize> {
        let p: BTreeSet<usize> = self.pivot_cols.iter().copied().collect();
        (0..self.cols).filter(|j| !p.contains(j)).collect()
    }

    /// Row order placing pivots first, in pivot order.
    pub fn row_order(&self) -> Vec<usize> {
        let mut order = self.pivot_rows.clone();
        order.extend(self.non_pivot_rows());
        order
    }

    pub fn col_order(&self) -> Vec<usize> {
        let mut order = self.pivot_cols.clone();
        order.extend(self.non_pivot_cols());
        order
    }

    /// Dense `(U, D, V)` with the pivots moved onto the leading diagonal.
    pub fn dense_triple(&self) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
        let ro = self.row_order();
        let co = self.col_order();
        let mut u = IntegerMatrix::zero(self.rows, self.rows);
        for (new, &old) in ro.iter().enumerate() {
            for (k, v) in self.u_row(old).0 {
                u[(new, k)] = v;
            }
        }
        let mut v = IntegerMatrix::zero(self.cols, self.cols);
        for (new, &old) in co.iter().enumerate() {
            for (k, x) in self.v_col(old).0 {
                v[(k, new)] = x;
            }
        }
        let mut d = IntegerMatrix::zero(self.rows, self.cols);
        for (k, p) in self.pivots.iter().enumerate() {
            d[(k, k)] = p.clone();
        }
        (u, d, v)
    }
}

/// `(U, D, V)` with `U·M·V = D`, `U`, `V` unimodular and `D` diagonal with a divisibility chain.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let track = Track {
        u: true,
        u_inv: false,
        v: true,
        v_inv: false,
    };
    Snf::compute(&m.to_sparse(), track).dense_triple()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) -> IntegerMatrix {
        let (u, d, v) = smith_normal_form(m);
        assert_eq!(u.mul(m).unwrap().mul(&v).unwrap(), d);
        assert!(u.determinant().unwrap().abs().is_one());
        assert!(v.determinant().unwrap().abs().is_one());
        d
    }

    #[test]
    fn identity_is_fixed() {
        let i = IntegerMatrix::identity(2);
        let (u, d, v) = smith_normal_form(&i);
        assert_eq!(u, i);
        assert_eq!(d, i);
        assert_eq!(v, i);
    }

    #[test]
    fn two_by_two() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let d = check(&m);
        assert_eq!(d, IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn zero_matrix() {
        let m = IntegerMatrix::zero(3, 2);
        let d = check(&m);
        assert!(d.is_zero());
    }

    #[test]
    fn coprime_diagonal() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let d = check(&m);
        assert_eq!(d, IntegerMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn inverses_are_consistent() {
        let m = IntegerMatrix::from_rows(&[vec![3, 5, 7], vec![2, 2, 4], vec![9, 1, 0]]);
        let s = Snf::compute(&m.to_sparse(), Track::ALL);
        for i in 0..3 {
            for j in 0..3 {
                let dot = s.u_row(i).dot(&s.u_inv_col(j));
                assert_eq!(dot, BigInt::from(i64::from(i == j)));
                let dot = s.v_inv_row(i).dot(&s.v_col(j));
                assert_eq!(dot, BigInt::from(i64::from(i == j)));
            }
        }
    }
}
