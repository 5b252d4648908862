//! Matrix functions that stay polynomial thanks to nilpotency.

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::matpoly::MatPoly;
use crate::scalar::{q, ExactScalar};

/// `e^{At} = sum_{k<N} (At)^k / k!` for nilpotent `A`.
pub fn exp_nilpotent(a: &ExactMatrix) -> Result<MatPoly> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("exp of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut power = ExactMatrix::identity(n);
    let mut coeffs = Vec::with_capacity(n);
    let mut fact: i64 = 1;
    for k in 0..n {
        if k > 0 {
            power = power.mul(a);
            fact *= k as i64;
        }
        coeffs.push(power.scale(&q(1, fact)));
    }
    if !power.mul(a).is_zero() {
        return Err(Error::NotNilpotent);
    }
    Ok(MatPoly::from_coeffs(n, coeffs))
}

/// `ad_A^n Y`, with `ad_A^0 Y = Y` and `ad_A^{k+1} Y = [A, ad_A^k Y]`.
pub fn ad_power(a: &ExactMatrix, y: &ExactMatrix, n: usize) -> Result<ExactMatrix> {
    if !a.is_square() || (a.rows(), a.cols()) != (y.rows(), y.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "ad of {}x{} on {}x{}",
            a.rows(),
            a.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok((0..n).fold(y.clone(), |acc, _| a.commutator(&acc)))
}

/// `sum_{n>=0} t^n/n! ad_A^n Y` for nilpotent `A`; the series stops once a
/// term vanishes, since every later term is a commutator of it.
pub fn ad_exp_series(a: &ExactMatrix, y: &ExactMatrix) -> Result<MatPoly> {
    let n = a.rows();
    let mut term = y.clone();
    let mut coeffs = Vec::new();
    let mut fact: i64 = 1;
    for k in 0..(2 * n) {
        if k > 0 {
            term = ad_power(a, &term, 1)?;
            fact *= k as i64;
        }
        if term.is_zero() {
            return Ok(MatPoly::from_coeffs(n, coeffs));
        }
        coeffs.push(term.scale(&q(1, fact)));
    }
    Err(Error::NotNilpotent)
}

/// The nilpotent matrix with `nu` on the superdiagonal.
pub fn shift_matrix(nu: &[ExactScalar]) -> ExactMatrix {
    let n = nu.len() + 1;
    ExactMatrix::from_fn(
        n,
        n,
        |r, c| {
            if c == r + 1 {
                nu[r].clone()
            } else {
                ExactScalar::zero()
            }
        },
    )
}

/// `diag(N-1, N-2, ..., 1, 0)`
pub fn j_matrix(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |r, c| {
        if r == c {
            ExactScalar::from_int((n - 1 - r) as i64)
        } else {
            ExactScalar::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn exp_examples() {
        let a = shift_matrix(&[ExactScalar::from_int(3)]);
        let e = exp_nilpotent(&a).unwrap();
        assert_eq!(e.entry(0, 1), Poly::from_ints(&[0, 3]));
        assert_eq!(e.entry(0, 0), Poly::from_ints(&[1]));
        assert_eq!(exp_nilpotent(&ExactMatrix::zeros(1, 1)).unwrap(), MatPoly::identity(1));

        let a3 = shift_matrix(&[ExactScalar::one(), ExactScalar::one()]);
        let e3 = exp_nilpotent(&a3).unwrap();
        assert_eq!(e3.entry(0, 2), Poly::new(vec![q(0, 1), q(0, 1), q(1, 2)]));
        assert_eq!(e3.entry(1, 2), Poly::from_ints(&[0, 1]));
        // term-by-term: e^{At} e^{-At} = I
        let minus = exp_nilpotent(&a3.neg()).unwrap();
        assert_eq!(e3.mul(&minus), MatPoly::identity(3));

        let full = ExactMatrix::from_rows(vec![
            vec![ExactScalar::zero(), ExactScalar::one()],
            vec![ExactScalar::one(), ExactScalar::zero()],
        ]);
        assert_eq!(exp_nilpotent(&full), Err(Error::NotNilpotent));
    }

    #[test]
    fn ad_examples() {
        let a = shift_matrix(&[q(2, 3), q(-1, 5), ExactScalar::i()]);
        let b = j_matrix(4).scale(&q(1, 2));
        assert_eq!(ad_power(&a, &b, 0).unwrap(), b);
        assert!(ad_power(&a, &b, 2).unwrap().is_zero());
        assert!(!ad_power(&a, &b, 1).unwrap().is_zero());
        let i4 = ExactMatrix::identity(4);
        assert!(ad_power(&a, &i4, 1).unwrap().is_zero());
        assert!(ad_power(&a, &ExactMatrix::identity(3), 1).is_err());
    }
}
