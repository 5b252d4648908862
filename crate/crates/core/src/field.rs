//! The minimal field interface shared by the exact engine and the modular
//! engine used to accelerate nullspace searches.

use std::fmt::Debug;

use crate::scalar::ExactScalar;

/// A field with a conjugation (the identity for fields without one).
///
/// Method names carry a `_ref` suffix so they never collide with the
/// `std::ops` implementations on concrete types.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv_ref(&self) -> Option<Self>;
    fn conj_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add_ref(&a.mul_ref(b));
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub_ref(&a.mul_ref(b));
    }
}

impl Field for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn from_i64(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Option<Self> {
        self.inv()
    }
    fn conj_ref(&self) -> Self {
        self.conj()
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += &(a * b);
        }
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= &(a * b);
        }
    }
}
