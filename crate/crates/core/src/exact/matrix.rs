//! Dense and sparse integer matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVec(pub Vec<(usize, BigInt)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, BigInt::one())])
    }

    pub fn from_map(map: BTreeMap<usize, BigInt>) -> Self {
        SparseVec(map.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn from_dense(v: &[BigInt]) -> Self {
        SparseVec(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for (i, v) in &self.0 {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> BigInt {
        match self.0.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(p) => self.0[p].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn dot(&self, other: &SparseVec) -> BigInt {
        let (mut i, mut j) = (0, 0);
        let mut acc = BigInt::zero();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &self.0[i].1 * &other.0[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &BigInt, other: &SparseVec) -> SparseVec {
        let mut map: BTreeMap<usize, BigInt> = self.0.iter().cloned().collect();
        for (i, v) in &other.0 {
            let e = map.entry(*i).or_insert_with(BigInt::zero);
            *e += c * v;
        }
        SparseVec::from_map(map)
    }

    pub fn scale(&self, c: &BigInt) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }
}

/// Integer matrix stored column by column in sparse form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.0.iter().all(|(i, _)| *i < rows)));
        SparseMatrix { rows, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in &col.0 {
                out[*i] += v * &x[j];
            }
        }
        out
    }

    pub fn apply_sparse(&self, x: &SparseVec) -> SparseVec {
        let mut map = BTreeMap::new();
        for (j, c) in &x.0 {
            for (i, v) in &self.columns[*j].0 {
                *map.entry(*i).or_insert_with(BigInt::zero) += v * c;
            }
        }
        SparseVec::from_map(map)
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(SparseMatrix::new(
            self.rows,
            other.columns.iter().map(|c| self.apply_sparse(c)).collect(),
        ))
    }

    pub fn hcat(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hcat with different row counts".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(SparseMatrix::new(self.rows, columns))
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in &col.0 {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }
}

/// Dense integer matrix (row-major).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntegerMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// A matrix with `rows` rows and no columns (an empty relation matrix).
    pub fn empty_columns(rows: usize) -> Self {
        Self::zero(rows, 0)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let columns = (0..self.cols)
            .map(|j| {
                SparseVec(
                    (0..self.rows)
                        .filter(|&i| !self[(i, j)].is_zero())
                        .map(|i| (i, self[(i, j)].clone()))
                        .collect(),
                )
            })
            .collect();
        SparseMatrix::new(self.rows, columns)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    let t = a[(k, j)].clone();
                    a[(k, j)] = a[(p, j)].clone();
                    a[(p, j)] = t;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is `self[(rp[i], cp[j])]`.
    pub fn permuted(&self, rp: &[usize], cp: &[usize]) -> IntegerMatrix {
        let mut out = IntegerMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(rp[i], cp[j])].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
