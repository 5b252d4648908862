//! The weight family `t^alpha e^{-t} e^{At} t^{J/2} t^{J*/2} e^{A* t}`:
//! construction, the modulus constraints on the `nu` parameters, moments
//! and the matrix inner product.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::matfun::{exp_nilpotent, j_matrix, shift_matrix};
use crate::matpoly::MatPoly;
use crate::scalar::{rat, ExactScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSpec {
    n: usize,
    alpha: BigRational,
    nu: Vec<ExactScalar>,
    /// Exponent parameter of the N = 2 family; `1/2` for the main family.
    u: ExactScalar,
    /// Diagonal gauge `sigma` in `e^{At} diag(sigma_i t^{N-i}) e^{A* t}`;
    /// all ones for the canonical form.
    scale: Vec<BigRational>,
    qpart: MatPoly,
}

#[derive(Serialize)]
struct WeightJson<'a> {
    schema: &'static str,
    #[serde(rename = "N")]
    n: usize,
    alpha: String,
    nu: &'a [ExactScalar],
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<Vec<String>>,
    nu_moduli_sq: Vec<String>,
    u: &'a ExactScalar,
    qpart: &'a MatPoly,
}

impl WeightSpec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn alpha_scalar(&self) -> ExactScalar {
        ExactScalar::real(self.alpha.clone())
    }

    pub fn nu(&self) -> &[ExactScalar] {
        &self.nu
    }

    pub fn u(&self) -> &ExactScalar {
        &self.u
    }

    pub fn scale(&self) -> &[BigRational] {
        &self.scale
    }

    pub fn is_canonical(&self) -> bool {
        self.scale.iter().all(One::is_one)
    }

    /// `|nu_i|^2` of the canonical weight this one is congruent to:
    /// `|nu_i'|^2 sigma_{i+1} / sigma_i`.
    pub fn nu_moduli_sq(&self) -> Vec<BigRational> {
        self.nu
            .iter()
            .enumerate()
            .map(|(i, v)| v.norm_sqr() * &self.scale[i + 1] / &self.scale[i])
            .collect()
    }

    /// The modulus constraints for the canonical weight.
    pub fn constraints(&self) -> ConstraintCheck {
        check_moduli(self.n, &self.nu_moduli_sq())
    }

    /// Polynomial part of the weight: `W(t) = t^alpha e^{-t} qpart(t)`.
    pub fn qpart(&self) -> &MatPoly {
        &self.qpart
    }

    pub fn a_matrix(&self) -> ExactMatrix {
        shift_matrix(&self.nu)
    }

    pub fn j_matrix(&self) -> ExactMatrix {
        j_matrix(self.n)
    }

    /// `|nu_{N-1}|^2`; `None` for N = 1.
    pub fn last_modulus_sq(&self) -> Option<BigRational> {
        self.nu_moduli_sq().pop()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WeightJson {
            schema: "mop.weight.v1",
            n: self.n,
            alpha: self.alpha.to_string(),
            nu: &self.nu,
            scale: (!self.is_canonical()).then(|| self.scale.iter().map(ToString::to_string).collect()),
            nu_moduli_sq: self.nu_moduli_sq().iter().map(ToString::to_string).collect(),
            u: &self.u,
            qpart: &self.qpart,
        })
        .expect("weight serializes")
    }

    /// Exact positive-definiteness of `qpart(t0)` via leading principal
    /// minors. A spot check only; positivity on `t > 0` follows from the
    /// factorized form.
    pub fn is_positive_definite_at(&self, t0: &BigRational) -> bool {
        is_positive_definite(&self.qpart.eval(&ExactScalar::real(t0.clone())))
    }

    pub fn moments(&self, count: usize) -> MomentSequence {
        let mut m = MomentSequence::new(self.clone());
        m.extend_to(count);
        m
    }

    /// Normalized moment `int t^n W(t) dt / Gamma(alpha + 1)`.
    pub fn moment(&self, n: usize) -> ExactMatrix {
        let deg = self.qpart.degree().unwrap_or(0);
        let g = rising_products(&self.alpha, n + deg);
        moment_with(&self.qpart, &g, n)
    }
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    if *alpha <= -BigRational::one() {
        return Err(Error::BadAlpha(alpha.to_string()));
    }
    Ok(())
}

/// `W_{alpha, nu}` with `qpart = e^{At} diag(t^{N-1}, ..., t, 1) e^{A* t}`.
pub fn build_weight(n: usize, alpha: BigRational, nu: Vec<ExactScalar>) -> Result<WeightSpec> {
    assemble(n, alpha, nu, vec![BigRational::one(); n.max(1)])
}

/// The weight `S W_{alpha, nu} S*` with `S = diag(s_i)` chosen so that every
/// `nu_i` becomes 1, for prescribed moduli `|nu_i|^2`. It has rational
/// entries even when the `|nu_i|` are irrational, and its orthogonal
/// polynomials and eigenoperators are those of `W` conjugated by `S`.
pub fn build_weight_moduli(n: usize, alpha: BigRational, moduli: &[BigRational]) -> Result<WeightSpec> {
    if n == 0 {
        return Err(Error::Invalid("dimension N must be at least 1".into()));
    }
    if moduli.len() != n - 1 {
        return Err(Error::WrongNuCount {
            n,
            expected: n - 1,
            got: moduli.len(),
        });
    }
    if let Some(k) = moduli.iter().position(|m| !m.is_positive()) {
        return Err(Error::ZeroNu(k + 1));
    }
    let mut scale = vec![BigRational::one()];
    for m in moduli {
        let next = scale.last().expect("nonempty") * m;
        scale.push(next);
    }
    assemble(n, alpha, vec![ExactScalar::one(); n - 1], scale)
}

fn assemble(n: usize, alpha: BigRational, nu: Vec<ExactScalar>, scale: Vec<BigRational>) -> Result<WeightSpec> {
    if n == 0 {
        return Err(Error::Invalid("dimension N must be at least 1".into()));
    }
    check_alpha(&alpha)?;
    if nu.len() != n - 1 {
        return Err(Error::WrongNuCount {
            n,
            expected: n - 1,
            got: nu.len(),
        });
    }
    if let Some(k) = nu.iter().position(ExactScalar::is_zero) {
        return Err(Error::ZeroNu(k + 1));
    }
    let e = exp_nilpotent(&shift_matrix(&nu))?;
    let mut diag = diag_t_powers(&(0..n).map(|r| n - 1 - r).collect::<Vec<_>>());
    if scale.iter().any(|x| !x.is_one()) {
        let s = ExactMatrix::from_fn(n, n, |r, c| {
            if r == c {
                ExactScalar::real(scale[r].clone())
            } else {
                ExactScalar::zero()
            }
        });
        diag = diag.left_mul(&s);
    }
    let qpart = e.mul(&diag).mul(&e.star());
    Ok(WeightSpec {
        n,
        alpha,
        nu,
        u: ExactScalar::from_ratio(1, 2),
        scale,
        qpart,
    })
}

/// The N = 2 family `t^alpha e^{-t} e^{At} t^B t^{B*} e^{A* t}` with
/// `B = diag(u, 0)` and `A = [[0, v], [0, 0]]`. Only `2 Re(u)` enters the
/// weight, and it must be a nonnegative integer to stay polynomial.
pub fn build_weight_u(alpha: BigRational, u: ExactScalar, v: ExactScalar) -> Result<WeightSpec> {
    check_alpha(&alpha)?;
    if v.is_zero() {
        return Err(Error::ZeroNu(1));
    }
    let power = exponent_power(&u)?;
    let e = exp_nilpotent(&shift_matrix(std::slice::from_ref(&v)))?;
    let qpart = e.mul(&diag_t_powers(&[power, 0])).mul(&e.star());
    Ok(WeightSpec {
        n: 2,
        alpha,
        nu: vec![v],
        u,
        scale: vec![BigRational::one(); 2],
        qpart,
    })
}

/// `2 Re(u)` as a nonnegative integer.
pub(crate) fn exponent_power(u: &ExactScalar) -> Result<usize> {
    let two_re = &u.re * rat(2, 1);
    if !two_re.is_integer() || two_re.is_negative() {
        return Err(Error::InexactExponent(u.to_string()));
    }
    two_re
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::InexactExponent(u.to_string()))
}

fn diag_t_powers(powers: &[usize]) -> MatPoly {
    let n = powers.len();
    let mut acc = MatPoly::zero(n);
    for (r, &p) in powers.iter().enumerate() {
        let mut e = ExactMatrix::zeros(n, n);
        e[(r, r)] = ExactScalar::one();
        acc = acc.add(&MatPoly::monomial(e, p));
    }
    acc
}

/// `g_k(alpha) = (alpha+1)(alpha+2)...(alpha+k)` for `k = 0..=max`.
pub fn rising_products(alpha: &BigRational, max: usize) -> Vec<BigRational> {
    let mut g = Vec::with_capacity(max + 1);
    g.push(BigRational::one());
    for k in 1..=max {
        let next = &g[k - 1] * (alpha + BigRational::from_integer(BigInt::from(k)));
        g.push(next);
    }
    g
}

fn moment_with(qpart: &MatPoly, g: &[BigRational], n: usize) -> ExactMatrix {
    let dim = qpart.dim();
    let mut acc = ExactMatrix::zeros(dim, dim);
    for (m, c) in qpart.coeffs().iter().enumerate() {
        acc = acc.add(&c.map(|x| x.scale_rational(&g[n + m])));
    }
    acc
}

/// Entry-wise moments `i(N-i) |nu_{N-1}|^2 = (N-1)|nu_i|^2 + (N-i-1)|nu_i|^2 |nu_{N-1}|^2`
/// solved for `|nu_i|^2`. Returns all `N-1` moduli; the last one is the
/// input.
pub fn solve_modulus_constraints(n: usize, last_modulus_sq: &BigRational) -> Result<Vec<BigRational>> {
    if n < 2 {
        return Err(Error::Invalid("modulus constraints need N >= 2".into()));
    }
    if !last_modulus_sq.is_positive() {
        return Err(Error::Invalid("|nu_{N-1}|^2 must be positive".into()));
    }
    let r = last_modulus_sq;
    let big = |v: usize| BigRational::from_integer(BigInt::from(v));
    let mut out: Vec<BigRational> = (1..n - 1)
        .map(|i| big(i * (n - i)) * r / (big(n - 1) + big(n - i - 1) * r))
        .collect();
    out.push(r.clone());
    Ok(out)
}

/// Both equivalent forms of the modulus constraints, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    /// consecutive form: `i(N-i)|nu_{i+1}|^2 = (i+1)(N-i-1)|nu_i|^2 + |nu_i|^2 |nu_{i+1}|^2`
    pub consecutive: bool,
    /// anchored form, every `nu_i` against `nu_{N-1}`
    pub anchored: bool,
}

impl ConstraintCheck {
    pub fn holds(&self) -> bool {
        self.consecutive && self.anchored
    }
}

pub fn check_constraints(n: usize, nu: &[ExactScalar]) -> ConstraintCheck {
    assert_eq!(nu.len() + 1, n.max(1), "need N-1 nu parameters");
    check_moduli(n, &nu.iter().map(ExactScalar::norm_sqr).collect::<Vec<_>>())
}

/// The constraints in terms of the moduli `|nu_i|^2`.
pub fn check_moduli(n: usize, m: &[BigRational]) -> ConstraintCheck {
    let big = |v: usize| BigRational::from_integer(BigInt::from(v));
    let consecutive = (1..n.saturating_sub(1)).all(|i| {
        let (mi, mi1) = (&m[i - 1], &m[i]);
        big(i * (n - i)) * mi1 == big((i + 1) * (n - i - 1)) * mi + mi * mi1
    });
    let anchored = (1..n.saturating_sub(1)).all(|i| {
        let (mi, last) = (&m[i - 1], &m[n - 2]);
        big(i * (n - i)) * last == big(n - 1) * mi + big(n - i - 1) * mi * last
    });
    ConstraintCheck { consecutive, anchored }
}

/// A Gaussian rational `x + iy` with `x^2 + y^2 = target`, preferring a real
/// value and then the smallest imaginary part. `None` when the target is not
/// a sum of two rational squares (or too large to search).
pub fn gaussian_with_norm(target: &BigRational) -> Option<ExactScalar> {
    if !target.is_positive() {
        return None;
    }
    let den = target.denom().clone();
    let m = target.numer() * &den;
    let m64 = m.to_u64().filter(|&v| v < 1 << 44)?;
    let mut y = 0u64;
    while 2 * y * y <= m64 {
        let rest = m64 - y * y;
        let x = rest.sqrt();
        if x * x == rest {
            let d = den.clone();
            return Some(ExactScalar::new(
                BigRational::new(BigInt::from(x), d.clone()),
                BigRational::new(BigInt::from(y), d),
            ));
        }
        y += 1;
    }
    None
}

/// `nu` satisfying the modulus constraints with `|nu_{N-1}|^2 = r`, each
/// entry a Gaussian rational; `None` if some modulus is not a sum of two
/// rational squares.
pub fn constrained_nu(n: usize, r: &BigRational) -> Option<Vec<ExactScalar>> {
    solve_modulus_constraints(n, r)
        .ok()?
        .iter()
        .map(gaussian_with_norm)
        .collect()
}

pub fn is_positive_definite(m: &ExactMatrix) -> bool {
    m.is_hermitian()
        && m.leading_pivots()
            .is_some_and(|p| p.iter().all(|x| x.is_real() && x.re.is_positive()))
}

/// Normalized moments `mu_0, mu_1, ...` of a weight. Built incrementally,
/// then shared read-only.
#[derive(Clone, Debug)]
pub struct MomentSequence {
    weight: WeightSpec,
    moments: Vec<ExactMatrix>,
}

impl MomentSequence {
    pub fn new(weight: WeightSpec) -> Self {
        Self {
            weight,
            moments: Vec::new(),
        }
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn extend_to(&mut self, count: usize) {
        if count <= self.moments.len() {
            return;
        }
        let deg = self.weight.qpart.degree().unwrap_or(0);
        let g = rising_products(&self.weight.alpha, count + deg);
        for n in self.moments.len()..count {
            self.moments.push(moment_with(&self.weight.qpart, &g, n));
        }
    }

    pub fn get(&self, n: usize) -> &ExactMatrix {
        &self.moments[n]
    }

    pub fn as_slice(&self) -> &[ExactMatrix] {
        &self.moments
    }

    /// `<P, Q> = int P W Q* dt / Gamma(alpha+1) = sum_{a,b} P_a mu_{a+b} Q_b*`.
    pub fn inner(&self, p: &MatPoly, q: &MatPoly) -> Result<ExactMatrix> {
        let n = self.weight.n;
        if p.dim() != n || q.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "inner product of {}x{} and {}x{} against an {n}x{n} weight",
                p.dim(),
                p.dim(),
                q.dim(),
                q.dim()
            )));
        }
        let need = p.coeffs().len() + q.coeffs().len();
        if need > self.moments.len() + 1 {
            return Err(Error::Invalid(format!(
                "inner product needs {} moments, only {} available",
                need - 1,
                self.moments.len()
            )));
        }
        let qs: Vec<ExactMatrix> = q.coeffs().iter().map(ExactMatrix::star).collect();
        let mut acc = ExactMatrix::zeros(n, n);
        for (a, pa) in p.coeffs().iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, qb) in qs.iter().enumerate() {
                if !qb.is_zero() {
                    acc = acc.add(&pa.mul(&self.moments[a + b]).mul(qb));
                }
            }
        }
        Ok(acc)
    }

    /// The `(m+1)N x (m+1)N` block Hankel matrix `(mu_{i+j})`.
    pub fn block_hankel(&self, m: usize) -> ExactMatrix {
        let n = self.weight.n;
        ExactMatrix::from_fn((m + 1) * n, (m + 1) * n, |r, c| {
            self.moments[r / n + c / n][(r % n, c % n)].clone()
        })
    }

    /// All leading principal minors of the block Hankel matrix are positive.
    pub fn hankel_positive(&self, m: usize) -> bool {
        is_positive_definite(&self.block_hankel(m))
    }

    /// Dimension of `{T : T mu_k = mu_k T for all loaded k}`. A value of 1
    /// means only multiples of the identity commute with every moment, so
    /// the weight is not a direct sum of smaller weights.
    pub fn commutant_dimension(&self) -> usize {
        let n = self.weight.n;
        let mut rows = Vec::new();
        for mu in &self.moments {
            for r in 0..n {
                for c in 0..n {
                    let mut row = vec![ExactScalar::zero(); n * n];
                    for k in 0..n {
                        row[r * n + k] += &mu[(k, c)];
                        row[k * n + c] -= &mu[(r, k)];
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return n * n;
        }
        n * n - ExactMatrix::from_rows(rows).rank()
    }
}

/// `<P, Q>` with the moments it needs computed on the fly.
pub fn inner_product(p: &MatPoly, q: &MatPoly, w: &WeightSpec) -> Result<ExactMatrix> {
    let need = p.coeffs().len() + q.coeffs().len();
    w.moments(need.max(1)).inner(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::q;

    #[test]
    fn two_by_two_weight_matches_closed_form() {
        let a: ExactScalar = "1/2+1*i".parse().unwrap();
        let w = build_weight(2, rat(1, 2), vec![a.clone()]).unwrap();
        let a2 = a.norm_sqr();
        let t = Poly::from_ints(&[0, 1]);
        let expected = MatPoly::from_entries(&[
            vec![Poly::new(vec![q(0, 1), q(1, 1), ExactScalar::real(a2)]), t.scale(&a)],
            vec![t.scale(&a.conj()), Poly::from_ints(&[1])],
        ]);
        assert_eq!(w.qpart(), &expected);
        assert_eq!(w.qpart().star(), *w.qpart());
    }

    #[test]
    fn scalar_case_is_laguerre() {
        let w = build_weight(1, rat(3, 2), vec![]).unwrap();
        assert_eq!(w.qpart(), &MatPoly::identity(1));
        // g_3(3/2) = (5/2)(7/2)(9/2)
        assert_eq!(w.moment(3)[(0, 0)], ExactScalar::real(rat(315, 8)));
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            build_weight(2, rat(-1, 1), vec![q(1, 1)]),
            Err(Error::BadAlpha(_))
        ));
        assert!(matches!(
            build_weight(3, rat(0, 1), vec![q(1, 1), q(0, 1)]),
            Err(Error::ZeroNu(2))
        ));
        assert!(matches!(
            build_weight(3, rat(0, 1), vec![q(1, 1)]),
            Err(Error::WrongNuCount { .. })
        ));
    }

    #[test]
    fn three_by_three_is_positive_definite() {
        let w = build_weight(3, rat(0, 1), vec![q(1, 1), q(1, 1)]).unwrap();
        for t0 in [rat(1, 2), rat(1, 1), rat(2, 1)] {
            assert!(w.is_positive_definite_at(&t0));
        }
    }

    #[test]
    fn modulus_constraints() {
        let m = solve_modulus_constraints(3, &rat(1, 1)).unwrap();
        assert_eq!(m, vec![rat(2, 3), rat(1, 1)]);
        let m = solve_modulus_constraints(3, &rat(2, 1)).unwrap();
        assert_eq!(m[0], rat(1, 1));

        assert!(check_constraints(2, &[q(5, 1)]).holds());
        assert!(!check_constraints(3, &[q(1, 1), q(1, 1)]).consecutive);
        assert!(!check_constraints(3, &[q(1, 1), q(1, 1)]).anchored);
        let nu = constrained_nu(3, &rat(2, 1)).unwrap();
        assert!(check_constraints(3, &nu).holds());
    }

    #[test]
    fn gauged_weight_is_congruent() {
        // |nu_1|^2 = 2/3 has no Gaussian rational square root
        let m = solve_modulus_constraints(3, &rat(1, 1)).unwrap();
        let w = build_weight_moduli(3, rat(1, 2), &m).unwrap();
        assert_eq!(w.nu_moduli_sq(), m);
        assert!(w.constraints().holds());
        assert!(!w.is_canonical());
        // same moduli through a Gaussian nu: S W S* with S = diag(1, nu_1, nu_1 nu_2)
        let nu = constrained_nu(3, &rat(2, 1)).unwrap();
        let canon = build_weight(3, rat(1, 2), nu.clone()).unwrap();
        let gauged = build_weight_moduli(3, rat(1, 2), &canon.nu_moduli_sq()).unwrap();
        let s = [q(1, 1), nu[0].clone(), &nu[0] * &nu[1]];
        let sm = ExactMatrix::from_fn(3, 3, |r, c| if r == c { s[r].clone() } else { q(0, 1) });
        assert_eq!(gauged.moment(2), sm.mul(&canon.moment(2)).mul(&sm.star()));
    }

    #[test]
    fn sums_of_two_squares() {
        assert_eq!(gaussian_with_norm(&rat(1, 1)), Some(q(1, 1)));
        let z = gaussian_with_norm(&rat(2, 5)).unwrap();
        assert_eq!(z.norm_sqr(), rat(2, 5));
        assert_eq!(gaussian_with_norm(&rat(2, 3)), None);
        assert_eq!(gaussian_with_norm(&rat(3, 1)), None);
    }

    #[test]
    fn gamma_integral_moments() {
        // alpha = 0, a = 1: int t^k e^{-t} = k!
        let w = build_weight(2, rat(0, 1), vec![q(1, 1)]).unwrap();
        let m0 = w.moment(0);
        let ints =
            |v: [[i64; 2]; 2]| ExactMatrix::from_rows(v.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect());
        // (t + t^2) -> 1! + 2!, t -> 1!, 1 -> 0!
        assert_eq!(m0, ints([[3, 1], [1, 1]]));
        // t(t + t^2) -> 2! + 3!, t*t -> 2!, t*1 -> 1!
        assert_eq!(w.moment(1), ints([[8, 2], [2, 1]]));
    }

    #[test]
    fn inner_product_examples() {
        let w = build_weight(2, rat(0, 1), vec![q(1, 1)]).unwrap();
        let i = MatPoly::identity(2);
        assert_eq!(inner_product(&i, &i, &w).unwrap(), w.moment(0));
        assert_eq!(inner_product(&MatPoly::t_pow(2, 1), &i, &w).unwrap(), w.moment(1));
        let p0 = MatPoly::constant(ExactMatrix::from_rows(vec![
            vec![q(1, 1), q(-1, 1)],
            vec![q(0, 1), q(1, 1)],
        ]));
        let norm = inner_product(&p0, &p0, &w).unwrap();
        assert_eq!(
            norm,
            ExactMatrix::from_rows(vec![vec![q(2, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]])
        );
        assert!(inner_product(&MatPoly::identity(3), &i, &w).is_err());
    }
}
