//! Orthogonal matrix polynomial sequences: the monic family for any `N`
//! by block Gram–Schmidt, and for `N = 2` the Rodrigues-normalized family
//! together with its recurrence and norms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::diffops::DiffOperator;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::matpoly::MatPoly;
use crate::par::{map_range, Execution};
use crate::poly::Poly;
use crate::quasi::QuasiPoly;
use crate::scalar::ExactScalar;
use crate::weights::{rising_products, MomentSequence, WeightSpec};

#[derive(Clone, Debug)]
pub struct MonicOPSequence {
    moments: MomentSequence,
    polys: Vec<MatPoly>,
    norms: Vec<ExactMatrix>,
}

impl MonicOPSequence {
    pub fn weight(&self) -> &WeightSpec {
        self.moments.weight()
    }

    pub fn moments(&self) -> &MomentSequence {
        &self.moments
    }

    pub fn polys(&self) -> &[MatPoly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> &MatPoly {
        &self.polys[n]
    }

    /// `<P_n, P_n>`
    pub fn norms(&self) -> &[ExactMatrix] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Appends monic polynomials until `count` are available.
    pub fn extend_to(&mut self, count: usize) -> Result<()> {
        let n = self.weight().n();
        self.moments.extend_to(2 * count);
        while self.polys.len() < count {
            let deg = self.polys.len();
            // P_deg = t^deg I - sum_j <t^deg I, P_j> H_j^{-1} P_j
            let mut p = MatPoly::t_pow(n, deg);
            let tn = MatPoly::t_pow(n, deg);
            for (pj, hj) in self.polys.iter().zip(&self.norms) {
                let c = self.moments.inner(&tn, pj)?;
                if c.is_zero() {
                    continue;
                }
                let hinv = hj.inverse().ok_or(Error::SingularMomentMatrix(deg))?;
                p = p.sub(&pj.left_mul(&c.mul(&hinv)));
            }
            let h = self.moments.inner(&p, &tn)?;
            if h.inverse().is_none() {
                return Err(Error::SingularMomentMatrix(deg));
            }
            self.polys.push(p);
            self.norms.push(h);
        }
        Ok(())
    }

    /// Pairwise orthogonality and Hermitian positive norms, rechecked from
    /// the moments.
    pub fn verify(&self) -> Result<bool> {
        for (i, p) in self.polys.iter().enumerate() {
            for q in &self.polys[..i] {
                if !self.moments.inner(p, q)?.is_zero() {
                    return Ok(false);
                }
            }
            let h = self.moments.inner(p, p)?;
            if h != self.norms[i] || !crate::weights::is_positive_definite(&h) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Monic orthogonal polynomials `P_0, ..., P_{count-1}`.
pub fn monic_ops(w: &WeightSpec, count: usize) -> Result<MonicOPSequence> {
    if count == 0 {
        return Err(Error::Invalid("count must be at least 1".into()));
    }
    let mut seq = MonicOPSequence {
        moments: MomentSequence::new(w.clone()),
        polys: Vec::new(),
        norms: Vec::new(),
    };
    seq.extend_to(count)?;
    Ok(seq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Monic,
    Rodrigues,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub n: usize,
    pub gamma: ExactMatrix,
    pub family: Family,
}

/// The `Gamma` with `l(P) = Gamma P`, read from the leading coefficients
/// and then verified on the whole polynomial. `None` when `P` is not an
/// eigenfunction of `l`.
pub fn eigenvalue_of(l: &DiffOperator, p: &MatPoly, family: Family) -> Result<Option<Eigenvalue>> {
    let lp = l.apply(p)?;
    let Some(deg) = p.degree() else {
        return Err(Error::Invalid("eigenfunction candidate is zero".into()));
    };
    let Some(lead_inv) = p.coeff(deg).inverse() else {
        return Err(Error::Invalid("leading coefficient is singular".into()));
    };
    if lp.degree().is_some_and(|d| d > deg) {
        return Ok(None);
    }
    let gamma = lp.coeff(deg).mul(&lead_inv);
    Ok((p.left_mul(&gamma) == lp).then_some(Eigenvalue { n: deg, gamma, family }))
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn sc(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

/// `gamma_{n,a} = 1 + n|a|^2`
pub fn gamma_n(n: i64, a: &ExactScalar) -> ExactScalar {
    ExactScalar::real(big(1) + big(n) * a.norm_sqr())
}

/// Leading coefficient of the Rodrigues polynomial of degree `n`:
/// `(-1)^n [[1, -a(1+n+alpha)], [0, 1]]`.
pub fn lambda_n(n: usize, alpha: &BigRational, a: &ExactScalar) -> ExactMatrix {
    let s = sc(if n.is_multiple_of(2) { 1 } else { -1 });
    let c = -(a * &ExactScalar::real(alpha + big(1 + n as i64)));
    ExactMatrix::from_rows(vec![vec![sc(1), c], vec![sc(0), sc(1)]]).scale(&s)
}

fn r_a(a: &ExactScalar) -> MatPoly {
    let s = ExactScalar::real(a.norm_sqr());
    MatPoly::from_entries(&[
        vec![Poly::new(vec![sc(0), sc(1), s]), Poly::monomial(a.clone(), 1)],
        vec![Poly::monomial(a.conj(), 1), Poly::from_ints(&[1])],
    ])
}

/// `adj(R_a) = t R_a^{-1}`
fn adj_r_a(a: &ExactScalar) -> MatPoly {
    let s = ExactScalar::real(a.norm_sqr());
    MatPoly::from_entries(&[
        vec![Poly::from_ints(&[1]), Poly::monomial(-a, 1)],
        vec![Poly::monomial(-a.conj(), 1), Poly::new(vec![sc(0), sc(1), s])],
    ])
}

/// `P_n = Phi_n [t^{alpha+n} e^{-t} (R_a + X_n)]^{(n)} R_a^{-1} t^{-alpha} e^t`
/// for `N = 2`, computed exactly. Fails loudly if the exponent does not
/// return to `alpha` or the division by `t` leaves a remainder.
pub fn rodrigues_p(n: usize, alpha: &BigRational, a: &ExactScalar) -> Result<MatPoly> {
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    let c01 = -(a * &ExactScalar::real(alpha + big(1)));
    if n == 0 {
        return Ok(MatPoly::constant(ExactMatrix::from_rows(vec![
            vec![sc(1), c01],
            vec![sc(0), sc(1)],
        ])));
    }
    let gn = gamma_n(n as i64, a);
    let phi = ExactMatrix::from_rows(vec![vec![sc(1), c01], vec![sc(0), gn.inv().expect("gamma_n > 0")]]);
    let mut x = ExactMatrix::zeros(2, 2);
    x[(0, 1)] = -(a * &sc(n as i64));
    let base = r_a(a).add(&MatPoly::constant(x));
    let q = QuasiPoly::new(alpha + big(n as i64), base).nth_derivative(n);
    let body = q.poly().mul(&adj_r_a(a));
    // t^{beta} e^{-t} body / t * t^{-alpha} e^t = t^{beta - alpha - 1} body
    let s = q.beta() - alpha - big(1);
    if !s.is_integer() {
        return Err(Error::ExponentMismatch(format!(
            "Rodrigues exponent {} does not return to alpha = {alpha}",
            q.beta()
        )));
    }
    let s = s.to_integer().to_i64().expect("small exponent");
    let poly = if s >= 0 {
        body.shift(s as usize)
    } else {
        body.unshift((-s) as usize)?
    };
    Ok(poly.left_mul(&phi))
}

/// `P_0, ..., P_{count-1}`; each degree is independent of the others.
pub fn rodrigues_sequence(count: usize, alpha: &BigRational, a: &ExactScalar, exec: Execution) -> Result<Vec<MatPoly>> {
    map_range(exec, 0..count, |n| rodrigues_p(n, alpha, a))
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recurrence {
    pub d: ExactMatrix,
    pub e: ExactMatrix,
    pub f: ExactMatrix,
}

/// `t P_n = D_n P_{n+1} + E_n P_n + F_n P_{n-1}` for the Rodrigues family;
/// `F_0 = 0`.
pub fn recurrence_matrices(n: usize, alpha: &BigRational, a: &ExactScalar) -> Result<Recurrence> {
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    let ni = n as i64;
    let al = ExactScalar::real(alpha.clone());
    let ab = a.conj();
    let g0 = gamma_n(ni, a);
    let g1 = gamma_n(ni + 1, a);
    let gm = gamma_n(ni - 1, a);
    let inv = |x: &ExactScalar| x.inv().expect("gamma_n > 0");

    let d = ExactMatrix::from_rows(vec![vec![sc(-1), -a], vec![sc(0), sc(-1)]]);
    let e = ExactMatrix::from_rows(vec![
        vec![
            &(&(&g1 * &(&sc(2 * ni + 3) + &al)) - &sc(1)) * &inv(&g1),
            a * &(&sc(1 + ni) + &al),
        ],
        vec![
            &ab * &inv(&(&g1 * &g0)),
            &(&(&g0 * &(&sc(2 * ni) + &al)) + &sc(1)) * &inv(&g0),
        ],
    ]);
    let f = ExactMatrix::from_rows(vec![
        vec![&(&sc(ni) * &g1) * &(&sc(1 + ni) + &al), sc(0)],
        vec![&(&sc(ni) * &ab) * &inv(&g0), &(&sc(ni) * &gm) * &(&sc(ni) + &al)],
    ])
    .scale(&-inv(&g0));
    Ok(Recurrence { d, e, f })
}

/// The Rodrigues family regenerated from `P_0` by the recurrence alone.
pub fn recurrence_sequence(count: usize, alpha: &BigRational, a: &ExactScalar) -> Result<Vec<MatPoly>> {
    let mut out = vec![rodrigues_p(0, alpha, a)?];
    let mut prev = MatPoly::zero(2);
    while out.len() < count {
        let n = out.len() - 1;
        let r = recurrence_matrices(n, alpha, a)?;
        let cur = &out[n];
        let rhs = cur.shift(1).sub(&cur.left_mul(&r.e)).sub(&prev.left_mul(&r.f));
        let next = rhs.left_mul(&r.d.inverse().expect("D_n is invertible"));
        prev = cur.clone();
        out.push(next);
    }
    Ok(out)
}

/// `<P_n, P_n> / Gamma(alpha+1) = n! diag(g_{n+1} gamma_{n+1}, g_n / gamma_n)`
/// with `g_k = (alpha+1)...(alpha+k)`.
pub fn norm_matrix(n: usize, alpha: &BigRational, a: &ExactScalar) -> ExactMatrix {
    let g = rising_products(alpha, n + 1);
    let fact: BigRational = (1..=n as i64).map(big).fold(BigRational::one(), |x, y| x * y);
    let ni = n as i64;
    let d0 = ExactScalar::real(&fact * &g[n + 1]) * gamma_n(ni + 1, a);
    let d1 = ExactScalar::real(&fact * &g[n]) * gamma_n(ni, a).inv().expect("gamma_n > 0");
    ExactMatrix::from_rows(vec![vec![d0, sc(0)], vec![sc(0), d1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::{make_l21, make_l22};
    use crate::scalar::{q, rat};
    use crate::weights::{build_weight, inner_product};

    fn m(rows: [[i64; 2]; 2]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect())
    }

    #[test]
    fn first_monic_polynomials() {
        let w = build_weight(2, rat(0, 1), vec![q(1, 1)]).unwrap();
        let seq = monic_ops(&w, 4).unwrap();
        assert_eq!(seq.get(0), &MatPoly::identity(2));
        // mu_1 from gamma integrals, see weights tests
        let mu0 = m([[3, 1], [1, 1]]);
        let mu1 = m([[8, 2], [2, 1]]);
        let p1 = MatPoly::t_pow(2, 1).sub(&MatPoly::constant(mu1.mul(&mu0.inverse().unwrap())));
        assert_eq!(seq.get(1), &p1);
        assert!(inner_product(seq.get(2), seq.get(1), &w).unwrap().is_zero());
        assert!(seq.verify().unwrap());
    }

    #[test]
    fn rodrigues_examples() {
        let a: ExactScalar = "1+1*i".parse().unwrap();
        let al = rat(1, 2);
        let p0 = rodrigues_p(0, &al, &a).unwrap();
        assert_eq!(p0.coeff(0)[(0, 1)], -(&a * &q(3, 2)));
        let p3 = rodrigues_p(3, &al, &a).unwrap();
        assert_eq!(p3.degree(), Some(3));
        assert_eq!(p3.coeff(3), lambda_n(3, &al, &a));
        assert_eq!(lambda_n(3, &al, &a)[(0, 1)], &a * &q(9, 2));
        assert_eq!(rodrigues_p(1, &al, &q(0, 1)), Err(Error::ZeroA));
    }

    #[test]
    fn recurrence_example() {
        let r = recurrence_matrices(0, &rat(0, 1), &q(1, 1)).unwrap();
        assert_eq!(
            r.e,
            ExactMatrix::from_rows(vec![vec![q(5, 2), q(1, 1)], vec![q(1, 2), q(1, 1)]])
        );
        assert!(r.f.is_zero());
        assert_eq!(r.d, recurrence_matrices(7, &rat(0, 1), &q(1, 1)).unwrap().d);
        // t P_0 = D_0 P_1 + E_0 P_0
        let (al, a) = (rat(0, 1), q(1, 1));
        let p0 = rodrigues_p(0, &al, &a).unwrap();
        let p1 = rodrigues_p(1, &al, &a).unwrap();
        assert_eq!(p0.shift(1), p1.left_mul(&r.d).add(&p0.left_mul(&r.e)));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_matrix(0, &rat(0, 1), &q(1, 1)), m([[2, 0], [0, 1]]));
        let a: ExactScalar = "2/3-1*i".parse().unwrap();
        assert_eq!(norm_matrix(0, &rat(5, 7), &a)[(1, 1)], q(1, 1));
        let w = build_weight(2, rat(1, 3), vec![a.clone()]).unwrap();
        for n in 0..4 {
            let p = rodrigues_p(n, &rat(1, 3), &a).unwrap();
            assert_eq!(inner_product(&p, &p, &w).unwrap(), norm_matrix(n, &rat(1, 3), &a));
        }
    }

    #[test]
    fn eigenvalues_on_both_families() {
        let a: ExactScalar = "1+1*i".parse().unwrap();
        let al = rat(1, 2);
        let w = build_weight(2, al.clone(), vec![a.clone()]).unwrap();
        let l21 = make_l21(2, &al, std::slice::from_ref(&a)).unwrap();
        let l22 = make_l22(2, &al, std::slice::from_ref(&a)).unwrap();
        let seq = monic_ops(&w, 5).unwrap();
        let s_inv = ExactScalar::real(a.norm_sqr()).inv().unwrap();
        for n in 0..5 {
            let p = rodrigues_p(n, &al, &a).unwrap();
            let ni = n as i64;
            let e = eigenvalue_of(&l21, &p, Family::Rodrigues).unwrap().unwrap();
            assert_eq!(e.gamma, m([[-ni - 1, 0], [0, -ni]]));
            let e = eigenvalue_of(&l22, &p, Family::Rodrigues).unwrap().unwrap();
            assert_eq!(
                e.gamma,
                ExactMatrix::from_rows(vec![vec![s_inv.clone(), q(0, 1)], vec![q(0, 1), q(-ni, 1)]])
            );
            let em = eigenvalue_of(&l21, seq.get(n), Family::Monic).unwrap().unwrap();
            assert_eq!(em.gamma, l21.monic_eigenvalue(n));
            let lam = lambda_n(n, &al, &a);
            assert_eq!(
                lam.mul(&em.gamma).mul(&lam.inverse().unwrap()),
                m([[-ni - 1, 0], [0, -ni]])
            );
        }
        let d1 = DiffOperator::derivative_power(2, 1);
        assert_eq!(eigenvalue_of(&d1, seq.get(2), Family::Monic).unwrap(), None);
    }
}
