//! Square matrices of polynomials, stored as polynomials with matrix
//! coefficients.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::poly::Poly;
use crate::scalar::ExactScalar;

/// An `n x n` matrix polynomial `sum_k C_k t^k`. Trailing zero coefficient
/// matrices are trimmed.
#[derive(Clone, PartialEq)]
pub struct MatPoly {
    n: usize,
    coeffs: Vec<ExactMatrix>,
}

impl MatPoly {
    pub fn from_coeffs(n: usize, mut coeffs: Vec<ExactMatrix>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.rows() == n && c.cols() == n),
            "coefficient shape"
        );
        while coeffs.last().is_some_and(ExactMatrix::is_zero) {
            coeffs.pop();
        }
        Self { n, coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(ExactMatrix::identity(n))
    }

    pub fn constant(m: ExactMatrix) -> Self {
        let n = m.rows();
        Self::from_coeffs(n, vec![m])
    }

    /// `m * t^k`
    pub fn monomial(m: ExactMatrix, k: usize) -> Self {
        let n = m.rows();
        let mut c = vec![ExactMatrix::zeros(n, n); k];
        c.push(m);
        Self::from_coeffs(n, c)
    }

    /// `t^k I`
    pub fn t_pow(n: usize, k: usize) -> Self {
        Self::monomial(ExactMatrix::identity(n), k)
    }

    pub fn from_entries(entries: &[Vec<Poly>]) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n), "matrix polynomial must be square");
        let len = entries.iter().flatten().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let coeffs = (0..len)
            .map(|k| ExactMatrix::from_fn(n, n, |r, c| entries[r][c].coeff(k)))
            .collect();
        Self::from_coeffs(n, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[ExactMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactMatrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.n, self.n))
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        Poly::new(self.coeffs.iter().map(|m| m[(r, c)].clone()).collect())
    }

    pub fn entries(&self) -> Vec<Vec<Poly>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `t` with a nonzero coefficient matrix.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|m| !m.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&ExactMatrix> {
        self.coeffs.last()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("{} vs {}", self.n, o.n)))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("matrix polynomial dimensions");
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs(self.n, (0..len).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o).expect("matrix polynomial dimensions");
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs(self.n, (0..len).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(ExactMatrix::neg).collect())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o).expect("matrix polynomial dimensions");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = vec![ExactMatrix::zeros(self.n, self.n); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(self.n, out)
    }

    /// `m * self`
    pub fn left_mul(&self, m: &ExactMatrix) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|c| m.mul(c)).collect())
    }

    /// `self * m`
    pub fn right_mul(&self, m: &ExactMatrix) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|c| c.mul(m)).collect())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![ExactMatrix::zeros(self.n, self.n); k];
        c.extend(self.coeffs.iter().cloned());
        Self { n: self.n, coeffs: c }
    }

    /// Divides by `t^k`, failing if some coefficient below `t^k` is nonzero.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|m| !m.is_zero()) {
            return Err(Error::NotDivisible(format!("matrix polynomial by t^{k}")));
        }
        Ok(Self::from_coeffs(self.n, self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.n,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&ExactScalar::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, m: usize) -> Self {
        if m == 0 {
            return self.clone();
        }
        Self::from_coeffs(
            self.n,
            self.coeffs
                .iter()
                .enumerate()
                .skip(m)
                .map(|(k, c)| c.scale(&ExactScalar::from_int(falling(k, m))))
                .collect(),
        )
    }

    /// Conjugate transpose with coefficient-wise conjugation; `t` is real.
    pub fn star(&self) -> Self {
        Self::from_coeffs(self.n, self.coeffs.iter().map(ExactMatrix::star).collect())
    }

    pub fn eval(&self, t: &ExactScalar) -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(self.n, self.n);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t).add(c);
        }
        acc
    }

    pub fn eval_c64(&self, t: f64) -> Vec<Vec<Complex64>> {
        let mut acc = vec![vec![Complex64::new(0.0, 0.0); self.n]; self.n];
        for c in self.coeffs.iter().rev() {
            for (r, row) in acc.iter_mut().enumerate() {
                for (col, x) in row.iter_mut().enumerate() {
                    *x = *x * t + c[(r, col)].to_c64();
                }
            }
        }
        acc
    }
}

/// Falling factorial `k (k-1) ... (k-m+1)`; zero when `m > k`.
pub fn falling(k: usize, m: usize) -> i64 {
    if m > k {
        return 0;
    }
    ((k - m + 1)..=k).map(|v| v as i64).product()
}

impl fmt::Display for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.entries().iter().enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, p) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = Vec::<Vec<Poly>>::deserialize(d)?;
        if e.is_empty() || e.iter().any(|r| r.len() != e.len()) {
            return Err(serde::de::Error::custom(
                "matrix polynomial must be square and nonempty",
            ));
        }
        Ok(MatPoly::from_entries(&e))
    }
}
