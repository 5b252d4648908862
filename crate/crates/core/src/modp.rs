//! Gaussian integers modulo a prime `p ≡ 3 (mod 4)`.
//!
//! For such primes `x^2 + 1` is irreducible over `F_p`, so `F_p[i]` is the
//! field with `p^2` elements and every Gaussian rational whose denominators
//! avoid `p` reduces into it without losing the real/imaginary split. That
//! split is what makes rational reconstruction of complex results possible.
//!
//! Arithmetic runs in Montgomery form; all primes are just below `2^62`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::Field;
use crate::scalar::ExactScalar;

/// Primes `p ≡ 3 (mod 4)`, descending from `2^62`.
pub const PRIMES: [u64; 48] = [
    4611686018427387847,
    4611686018427387787,
    4611686018427387751,
    4611686018427387631,
    4611686018427387587,
    4611686018427387323,
    4611686018427387271,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387091,
    4611686018427386923,
    4611686018427386911,
    4611686018427386903,
    4611686018427386887,
    4611686018427386707,
    4611686018427386663,
    4611686018427386611,
    4611686018427386551,
    4611686018427386471,
    4611686018427386351,
    4611686018427386323,
    4611686018427386287,
    4611686018427386231,
    4611686018427386207,
    4611686018427386203,
    4611686018427386023,
    4611686018427385831,
    4611686018427385763,
    4611686018427385687,
    4611686018427385619,
    4611686018427385507,
    4611686018427385483,
    4611686018427385363,
    4611686018427385243,
    4611686018427385151,
    4611686018427385127,
    4611686018427385111,
    4611686018427385043,
    4611686018427384863,
    4611686018427384683,
    4611686018427384647,
    4611686018427384587,
    4611686018427384527,
    4611686018427384383,
    4611686018427384367,
    4611686018427384359,
    4611686018427384199,
];

const fn neg_inv_mod_2_64(p: u64) -> u64 {
    let mut inv: u64 = 1;
    let mut k = 0;
    while k < 7 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        k += 1;
    }
    inv.wrapping_neg()
}

/// An element `re + im*i` of `F_{p^2}`, both parts in Montgomery form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf<const P: u64> {
    re: u64,
    im: u64,
}

impl<const P: u64> Gf<P> {
    const NINV: u64 = neg_inv_mod_2_64(P);
    const R1: u64 = ((1u128 << 64) % P as u128) as u64;
    const R2: u64 = ((Self::R1 as u128 * Self::R1 as u128) % P as u128) as u64;

    #[inline]
    fn redc(t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(Self::NINV);
        let u = ((t + m as u128 * P as u128) >> 64) as u64;
        if u >= P {
            u - P
        } else {
            u
        }
    }

    #[inline]
    fn mmul(a: u64, b: u64) -> u64 {
        Self::redc(a as u128 * b as u128)
    }

    #[inline]
    fn madd(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    #[inline]
    fn msub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + P - b
        }
    }

    fn to_mont(v: u64) -> u64 {
        Self::mmul(v % P, Self::R2)
    }

    fn from_mont(v: u64) -> u64 {
        Self::redc(v as u128)
    }

    pub fn new(re: u64, im: u64) -> Self {
        Self {
            re: Self::to_mont(re),
            im: Self::to_mont(im),
        }
    }

    /// Standard (non-Montgomery) residues of the two parts.
    pub fn parts(&self) -> (u64, u64) {
        (Self::from_mont(self.re), Self::from_mont(self.im))
    }

    fn pow_base(mut b: u64, mut e: u64) -> u64 {
        let mut acc = Self::R1;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mmul(acc, b);
            }
            b = Self::mmul(b, b);
            e >>= 1;
        }
        acc
    }

    fn reduce_bigint(v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(P));
        r.to_u64().expect("residue fits in u64")
    }

    fn reduce_rational(v: &BigRational) -> Option<u64> {
        let den = Self::reduce_bigint(v.denom());
        if den == 0 {
            return None;
        }
        let num = Self::to_mont(Self::reduce_bigint(v.numer()));
        let den_inv = Self::pow_base(Self::to_mont(den), P - 2);
        Some(Self::mmul(num, den_inv))
    }

    /// Reduction of a Gaussian rational; `None` when a denominator is
    /// divisible by `P`.
    pub fn from_exact(v: &ExactScalar) -> Option<Self> {
        Some(Self {
            re: Self::reduce_rational(&v.re)?,
            im: Self::reduce_rational(&v.im)?,
        })
    }
}

impl<const P: u64> fmt::Debug for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.parts();
        write!(f, "{a}+{b}i (mod {P})")
    }
}

impl<const P: u64> Field for Gf<P> {
    fn zero() -> Self {
        Self { re: 0, im: 0 }
    }
    fn one() -> Self {
        Self { re: Self::R1, im: 0 }
    }
    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(P as i64) as u64;
        Self::new(r, 0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    fn add_ref(&self, o: &Self) -> Self {
        Self {
            re: Self::madd(self.re, o.re),
            im: Self::madd(self.im, o.im),
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Self {
            re: Self::msub(self.re, o.re),
            im: Self::msub(self.im, o.im),
        }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im == 0 && o.im == 0 {
            return Self {
                re: Self::mmul(self.re, o.re),
                im: 0,
            };
        }
        let ac = Self::mmul(self.re, o.re);
        let bd = Self::mmul(self.im, o.im);
        let cross = Self::mmul(Self::madd(self.re, self.im), Self::madd(o.re, o.im));
        Self {
            re: Self::msub(ac, bd),
            im: Self::msub(Self::msub(cross, ac), bd),
        }
    }
    fn neg_ref(&self) -> Self {
        Self::zero().sub_ref(self)
    }
    fn inv_ref(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + bi)^-1 = (a - bi) / (a^2 + b^2); the norm is nonzero because
        // -1 is not a square mod P.
        let norm = Self::madd(Self::mmul(self.re, self.re), Self::mmul(self.im, self.im));
        let ninv = Self::pow_base(norm, P - 2);
        Some(Self {
            re: Self::mmul(self.re, ninv),
            im: Self::mmul(Self::msub(0, self.im), ninv),
        })
    }
    fn conj_ref(&self) -> Self {
        Self {
            re: self.re,
            im: Self::msub(0, self.im),
        }
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add_ref(&a.mul_ref(b));
    }
}

/// A computation that is generic over the modulus. `run_with_prime`
/// dispatches a runtime prime index to the matching monomorphization.
pub trait PrimeTask: Sync {
    type Output: Send;
    fn run<const P: u64>(&self) -> Self::Output;
}

macro_rules! dispatch {
    ($idx:expr, $task:expr; $($i:literal)*) => {
        match $idx {
            $($i => $task.run::<{ PRIMES[$i] }>(),)*
            other => panic!("prime index {other} out of range"),
        }
    };
}

pub fn run_with_prime<T: PrimeTask>(index: usize, task: &T) -> T::Output {
    dispatch!(index, task;
        0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23
        24 25 26 27 28 29 30 31 32 33 34 35 36 37 38 39 40 41 42 43 44 45 46 47)
}

/// Incremental Chinese remaindering of one residue per prime.
#[derive(Clone, Debug)]
pub struct Crt {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl Default for Crt {
    fn default() -> Self {
        Self {
            value: BigInt::zero(),
            modulus: BigInt::one(),
        }
    }
}

impl Crt {
    pub fn push(&mut self, residue: u64, prime: u64) {
        let p = BigInt::from(prime);
        let a = self.value.mod_floor(&p);
        let diff = (BigInt::from(residue) - a).mod_floor(&p);
        let minv = self.modulus.mod_floor(&p).modpow(&BigInt::from(prime - 2), &p);
        let k = (diff * minv).mod_floor(&p);
        self.value += &self.modulus * k;
        self.modulus *= p;
    }
}

/// Wang's rational reconstruction: the unique `n/d` with `|n|, d` below
/// `sqrt(m/2)` congruent to `u` modulo `m`, if one exists.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (qt, rem) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, rem);
        let nt = &t0 - &qt * &t1;
        t0 = std::mem::replace(&mut t1, nt);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.sign() == Sign::Minus {
        Some(BigRational::new(-r1, -t1))
    } else {
        Some(BigRational::new(r1, t1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn is_prime(n: u64) -> bool {
        // deterministic Miller-Rabin for 64-bit inputs
        if n < 2 {
            return false;
        }
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            r
        };
        let (mut d, mut s) = (n - 1, 0);
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if a % n == 0 {
                continue;
            }
            let mut x = powmod(a, d);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mulmod(x, x);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    #[test]
    fn prime_table_is_valid() {
        for p in PRIMES {
            assert!(is_prime(p), "{p}");
            assert_eq!(p % 4, 3);
            assert!(p < 1 << 62);
        }
    }

    type G = Gf<{ PRIMES[0] }>;

    #[test]
    fn gaussian_field_arithmetic() {
        let a = G::new(3, 5);
        let b = G::new(7, PRIMES[0] - 2);
        let inv = a.inv_ref().unwrap();
        assert!(a.mul_ref(&inv).is_one());
        // (3+5i)(7-2i) = 31 + 29i
        assert_eq!(a.mul_ref(&b).parts(), (31, 29));
        assert_eq!(G::from_i64(-1).add_ref(&G::one()), G::zero());
        let half = G::from_exact(&q(1, 2)).unwrap();
        assert!(half.add_ref(&half).is_one());
    }

    #[test]
    fn crt_and_reconstruction_recover_a_fraction() {
        let target = BigRational::new(BigInt::from(-123456789i64), BigInt::from(987654321i64));
        let mut crt = Crt::default();
        for p in PRIMES.iter().take(2) {
            let num = target.numer().mod_floor(&BigInt::from(*p));
            let den = target.denom().mod_floor(&BigInt::from(*p));
            let den_inv = den.modpow(&BigInt::from(p - 2), &BigInt::from(*p));
            let r = (num * den_inv).mod_floor(&BigInt::from(*p));
            crt.push(r.to_u64().unwrap(), *p);
        }
        assert_eq!(rational_reconstruct(&crt.value, &crt.modulus), Some(target));
    }
}
