//! Dense univariate polynomials over the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// `coeffs[k]` is the coefficient of `t^k`. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<ExactScalar>", from = "Vec<ExactScalar>")]
pub struct Poly {
    coeffs: Vec<ExactScalar>,
}

impl From<Poly> for Vec<ExactScalar> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl From<Vec<ExactScalar>> for Poly {
    fn from(c: Vec<ExactScalar>) -> Self {
        Poly::new(c)
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(ExactScalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        let mut v = vec![ExactScalar::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| ExactScalar::from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ExactScalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(ExactScalar::conj).collect())
    }

    pub fn eval(&self, t: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn eval_c64(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c.to_c64())
    }

    /// Quotient and remainder of long division by a nonzero `q`.
    pub fn div_rem(&self, q: &Poly) -> Result<(Poly, Poly)> {
        let dq = q
            .degree()
            .ok_or_else(|| Error::Invalid("division by the zero polynomial".into()))?;
        let lead_inv = q.coeffs[dq].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactScalar::zero(); self.coeffs.len().saturating_sub(dq)];
        while rem.len() > dq && !rem.is_empty() {
            let k = rem.len() - 1;
            let f = &rem[k] * &lead_inv;
            if !f.is_zero() {
                for (j, qc) in q.coeffs.iter().enumerate() {
                    rem[k - dq + j] -= &(&f * qc);
                }
                quot[k - dq] = f;
            }
            rem.pop();
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Returns `r` with `self = q * r`, failing if the division leaves a
    /// remainder.
    pub fn exact_divide(&self, q: &Poly) -> Result<Poly> {
        let (quot, rem) = self.div_rem(q)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible(format!("({self}) / ({q}) leaves remainder {rem}")))
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![ExactScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += &(a * b);
                }
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
