//! Quasi-polynomials `t^beta e^{-t} P(t)` with rational `beta` and matrix
//! polynomial `P`. The family is closed under differentiation, which is all
//! the symmetry equations and the Rodrigues formula need.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matpoly::MatPoly;
use crate::scalar::ExactScalar;

#[derive(Clone, PartialEq, Debug)]
pub struct QuasiPoly {
    beta: BigRational,
    poly: MatPoly,
}

impl Serialize for QuasiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuasiPoly", 2)?;
        st.serialize_field("beta", &self.beta.to_string())?;
        st.serialize_field("poly", &self.poly)?;
        st.end()
    }
}

impl QuasiPoly {
    /// Builds `t^beta e^{-t} poly` in canonical form: common powers of `t`
    /// are moved into the exponent, and zero carries exponent 0.
    pub fn new(beta: BigRational, poly: MatPoly) -> Self {
        match poly.min_degree() {
            None => Self {
                beta: BigRational::zero(),
                poly,
            },
            Some(0) => Self { beta, poly },
            Some(k) => Self {
                beta: beta + BigRational::from_integer(BigInt::from(k)),
                poly: poly.unshift(k).expect("divisible by construction"),
            },
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(BigRational::zero(), MatPoly::zero(n))
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn poly(&self) -> &MatPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `d/dt [t^b e^{-t} P] = t^{b-1} e^{-t} (b P + t P' - t P)`
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let b = ExactScalar::real(self.beta.clone());
        let p = &self.poly;
        let inner = p.scale(&b).add(&p.derivative().sub(p).shift(1));
        Self::new(&self.beta - BigRational::from_integer(1.into()), inner)
    }

    pub fn nth_derivative(&self, times: usize) -> Self {
        (0..times).fold(self.clone(), |f, _| f.derivative())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::new(self.beta.clone(), self.poly.scale(s))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.beta.clone(), self.poly.neg())
    }

    /// `m * self`
    pub fn left_mul(&self, m: &MatPoly) -> Self {
        Self::new(self.beta.clone(), m.mul(&self.poly))
    }

    /// `self * m`
    pub fn right_mul(&self, m: &MatPoly) -> Self {
        Self::new(self.beta.clone(), self.poly.mul(m))
    }

    /// Rewrites `self` with exponent `target <= beta`, which must differ
    /// from `beta` by an integer.
    fn lowered_to(&self, target: &BigRational) -> Result<MatPoly> {
        let diff = &self.beta - target;
        if !diff.is_integer() || diff.is_negative() {
            return Err(Error::ExponentMismatch(format!(
                "cannot align t^{} with t^{}",
                self.beta, target
            )));
        }
        Ok(self.poly.shift(diff.to_integer().to_usize().expect("small shift")))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let low = if self.beta <= o.beta { &self.beta } else { &o.beta }.clone();
        let p = self.lowered_to(&low)?.add(&o.lowered_to(&low)?);
        Ok(Self::new(low, p))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Whether the value tends to zero as `t -> 0+`.
    pub fn vanishes_at_zero(&self) -> bool {
        match self.poly.min_degree() {
            None => true,
            Some(k) => (&self.beta + BigRational::from_integer(BigInt::from(k))).is_positive(),
        }
    }

    /// The exponential factor dominates any power, so every quasi-polynomial
    /// decays at infinity.
    pub fn vanishes_at_infinity(&self) -> bool {
        true
    }

    pub fn eval_c64(&self, t: f64) -> Vec<Vec<Complex64>> {
        let beta = self.beta.to_f64().unwrap_or(f64::NAN);
        let pref = t.powf(beta) * (-t).exp();
        self.poly
            .eval_c64(t)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x * pref).collect())
            .collect()
    }
}
