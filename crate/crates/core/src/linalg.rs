//! Dense matrices over any [`Field`], with reduced row echelon form,
//! nullspaces and an incremental nullspace tracker.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::scalar::ExactScalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type ExactMatrix = Matrix<ExactScalar>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G>(&self, f: impl FnMut(&F) -> Option<G>) -> Option<Matrix<G>> {
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Option<Vec<_>>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(F::neg_ref)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj_ref())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.star()
    }

    /// `A B - B A`
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Pivots are the first nonzero entry in each column, so the
    /// result is canonical.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(prow, sel);
            let inv = self[(prow, col)].inv_ref().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self[(prow, c)].mul_ref(&inv);
                self[(prow, c)] = v;
            }
            let pivot_row: Vec<F> = self.row(prow)[col..].to_vec();
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let factor = self[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        self[(r, col + off)].sub_mul_assign(&factor, pv);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace `{x : M x = 0}`, one vector per free
    /// column, with the free variable set to 1.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        nullspace_from_rref(&m, &pivots)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    /// Determinant by elimination without row exchanges; returns the
    /// sequence of pivots (whose running products are the leading principal
    /// minors), or `None` if some leading minor vanishes.
    pub fn leading_pivots(&self) -> Option<Vec<F>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let p = m[(k, k)].clone();
            let inv = p.inv_ref()?;
            for r in k + 1..n {
                let f = m[(r, k)].mul_ref(&inv);
                if f.is_zero() {
                    continue;
                }
                for c in k..n {
                    let v = m[(k, c)].clone();
                    m[(r, c)].sub_mul_assign(&f, &v);
                }
            }
            out.push(p);
        }
        Some(out)
    }
}

fn nullspace_from_rref<F: Field>(m: &Matrix<F>, pivots: &[usize]) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); m.cols];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = m[(r, free)].neg_ref();
        }
        out.push(v);
    }
    out
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl Serialize for Matrix<ExactScalar> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<ExactScalar> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<ExactScalar>>::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_rows(rows))
    }
}

/// A batch of linear constraints stored column by column: `cols[v]` lists
/// the `(row, coefficient)` pairs of variable `v`.
#[derive(Clone, Debug)]
pub struct SparseColumns<F> {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseColumns<F> {
    pub fn new(nrows: usize, nvars: usize) -> Self {
        Self {
            nrows,
            cols: vec![Vec::new(); nvars],
        }
    }

    pub fn push(&mut self, var: usize, row: usize, value: F) {
        if !value.is_zero() {
            self.cols[var].push((row, value));
        }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::<F>::zeros(self.nrows, self.cols.len());
        for (v, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                m[(*r, v)] = m[(*r, v)].add_ref(x);
            }
        }
        m
    }
}

/// Tracks `{x : C_1 x = 0, ..., C_j x = 0}` as constraint batches arrive.
///
/// The solution space is kept as an explicit basis; each new batch is
/// restricted to that basis, so the work per batch scales with the current
/// dimension rather than with the total number of constraints seen.
#[derive(Clone, Debug)]
pub struct NullspaceTracker<F> {
    nvars: usize,
    /// `None` while no constraint has cut the space down.
    basis: Option<Vec<Vec<F>>>,
}

impl<F: Field> NullspaceTracker<F> {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, basis: None }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.basis.as_ref().map_or(self.nvars, Vec::len)
    }

    pub fn impose(&mut self, c: &SparseColumns<F>) {
        assert_eq!(c.cols.len(), self.nvars);
        if c.nrows == 0 || self.dim() == 0 {
            return;
        }
        let restricted = match &self.basis {
            None => c.to_dense(),
            Some(basis) => {
                let d = basis.len();
                let mut m = Matrix::<F>::zeros(c.nrows, d);
                for (var, col) in c.cols.iter().enumerate() {
                    for (row, val) in col {
                        for (j, b) in basis.iter().enumerate() {
                            let bv = &b[var];
                            if !bv.is_zero() {
                                m[(*row, j)].add_mul_assign(val, bv);
                            }
                        }
                    }
                }
                m
            }
        };
        let mut reduced = restricted;
        let pivots = reduced.rref();
        if pivots.is_empty() {
            return;
        }
        let kernel = nullspace_from_rref(&reduced, &pivots);
        let next = match &self.basis {
            None => kernel,
            Some(basis) => kernel
                .iter()
                .map(|k| {
                    let mut v = vec![F::zero(); self.nvars];
                    for (j, kj) in k.iter().enumerate() {
                        if kj.is_zero() {
                            continue;
                        }
                        for (x, b) in v.iter_mut().zip(&basis[j]) {
                            if !b.is_zero() {
                                x.add_mul_assign(kj, b);
                            }
                        }
                    }
                    v
                })
                .collect(),
        };
        self.basis = Some(next);
    }

    /// The solution space as the rows of a matrix in reduced row echelon
    /// form, together with the pivot columns.
    pub fn echelon_basis(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        match &self.basis {
            None => {
                let rows = (0..self.nvars)
                    .map(|k| {
                        let mut v = vec![F::zero(); self.nvars];
                        v[k] = F::one();
                        v
                    })
                    .collect();
                (rows, (0..self.nvars).collect())
            }
            Some(b) if b.is_empty() => (Vec::new(), Vec::new()),
            Some(b) => {
                let mut m = Matrix::from_rows(b.clone());
                let pivots = m.rref();
                (m.to_rows().into_iter().take(pivots.len()).collect(), pivots)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ExactScalar::from_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_nullspace_and_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let x = Matrix::from_rows(ns.to_vec()).transpose();
        assert!(a.mul(&x).is_zero());

        let b = m(&[&[2, 1], &[1, 1]]);
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv), Matrix::identity(2));
        assert!(a.inverse().is_none());
    }

    #[test]
    fn leading_pivots_give_minors() {
        let h = m(&[&[3, 1], &[1, 1]]);
        let p = h.leading_pivots().unwrap();
        assert_eq!(p, vec![ExactScalar::from_int(3), q(2, 3)]);
    }

    #[test]
    fn tracker_matches_stacked_nullspace() {
        let c1 = m(&[&[1, 1, 0, 0]]);
        let c2 = m(&[&[0, 1, 1, 0], &[0, 2, 2, 0]]);
        let to_sparse = |d: &ExactMatrix| {
            let mut s = SparseColumns::new(d.rows(), d.cols());
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    s.push(c, r, d[(r, c)].clone());
                }
            }
            s
        };
        let mut t = NullspaceTracker::new(4);
        t.impose(&to_sparse(&c1));
        assert_eq!(t.dim(), 3);
        t.impose(&to_sparse(&c2));
        assert_eq!(t.dim(), 2);
        let stacked = m(&[&[1, 1, 0, 0], &[0, 1, 1, 0]]);
        let (rows, _) = t.echelon_basis();
        let mut direct = Matrix::from_rows(stacked.nullspace());
        let p = direct.rref();
        assert_eq!(rows, direct.to_rows()[..p.len()].to_vec());
    }
}
