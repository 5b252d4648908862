//! Differential operators `l = sum_i D^i A_i(t)` whose coefficients act on
//! the right: `l(P) = sum_i P^{(i)} A_i`.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::matfun::{ad_exp_series, ad_power, j_matrix, shift_matrix};
use crate::matpoly::{falling, MatPoly};
use crate::poly::Poly;
use crate::scalar::ExactScalar;
use crate::weights::{build_weight, exponent_power, WeightSpec};

#[derive(Clone, PartialEq, Debug)]
pub struct DiffOperator {
    n: usize,
    coeffs: Vec<MatPoly>,
}

#[derive(Serialize)]
struct OperatorJson<'a> {
    schema: &'static str,
    #[serde(rename = "N")]
    n: usize,
    order: usize,
    coeffs: &'a [MatPoly],
}

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Bounded falling factorial `[n]_i = n(n-1)...(n-i+1)`, zero when `i > n`.
pub fn bounded_factorial(n: usize, i: usize) -> i64 {
    falling(n, i)
}

impl DiffOperator {
    /// Trailing zero coefficients are dropped, so `order()` is exact.
    pub fn new(n: usize, mut coeffs: Vec<MatPoly>) -> Self {
        assert!(coeffs.iter().all(|c| c.dim() == n), "coefficient dimension");
        while coeffs.last().is_some_and(MatPoly::is_zero) {
            coeffs.pop();
        }
        Self { n, coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, ExactScalar::one())
    }

    pub fn scalar(n: usize, c: ExactScalar) -> Self {
        Self::new(n, vec![MatPoly::constant(ExactMatrix::scalar(n, c))])
    }

    /// `D^k I`
    pub fn derivative_power(n: usize, k: usize) -> Self {
        let mut c = vec![MatPoly::zero(n); k];
        c.push(MatPoly::identity(n));
        Self::new(n, c)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Highest `i` with `A_i != 0`; the zero operator has order 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[MatPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> MatPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| MatPoly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `deg A_i <= i` for every `i`, the shape required of members of the
    /// algebra attached to a weight.
    pub fn has_bounded_degrees(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, a)| a.degree().is_none_or(|d| d <= i))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "operators of size {} and {}",
                self.n, o.n
            )))
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&MatPoly, &MatPoly) -> MatPoly) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.n, (0..len).map(|i| f(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o).expect("operator dimensions");
        self.zip(o, MatPoly::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o).expect("operator dimensions");
        self.zip(o, MatPoly::sub)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.n, self.coeffs.iter().map(MatPoly::neg).collect())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.n, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `l(P) = sum_i P^{(i)} A_i`
    pub fn apply(&self, p: &MatPoly) -> Result<MatPoly> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "operator of size {} applied to a {}x{} polynomial",
                self.n,
                p.dim(),
                p.dim()
            )));
        }
        let mut acc = MatPoly::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&p.nth_derivative(i).mul(a));
            }
        }
        Ok(acc)
    }

    /// The product `self * o`, which applies `self` first:
    /// `P (l1 l2) = (P l1) l2`. With this convention the eigenvalue map is
    /// multiplicative in the written order.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.n));
        }
        // (sum_i P^{(i)} A_i)^{(j)} B_j = sum_{i,m} C(j,m) P^{(i+m)} A_i^{(j-m)} B_j
        let mut out = vec![MatPoly::zero(self.n); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for m in 0..=j {
                    let da = a.nth_derivative(j - m);
                    if da.is_zero() {
                        continue;
                    }
                    let term = da.mul(b).scale(&ExactScalar::from_int(binom(j, m)));
                    out[i + m] = out[i + m].add(&term);
                }
            }
        }
        Ok(Self::new(self.n, out))
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        Ok(self.compose(o)?.sub(&o.compose(self)?))
    }

    /// Left eigenvalue on a monic polynomial of degree `n`, read off the
    /// leading coefficients: `sum_i [n]_i (t^i coefficient of A_i)`.
    pub fn monic_eigenvalue(&self, n: usize) -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(self.n, self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            let f = falling(n, i);
            if f != 0 {
                acc = acc.add(&a.coeff(i).scale(&ExactScalar::from_int(f)));
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(OperatorJson {
            schema: "mop.operator.v1",
            n: self.n,
            order: self.order(),
            coeffs: &self.coeffs,
        })
        .expect("operator serializes")
    }
}

fn poly(c: Vec<ExactScalar>) -> Poly {
    Poly::new(c)
}

fn mat2(e: [[Vec<ExactScalar>; 2]; 2]) -> MatPoly {
    let [[a, b], [c, d]] = e;
    MatPoly::from_entries(&[vec![poly(a), poly(b)], vec![poly(c), poly(d)]])
}

fn check_nu(n: usize, nu: &[ExactScalar]) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("dimension N must be at least 1".into()));
    }
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
    Ok(())
}

/// `l_{2,1} = D^2 tI + D^1[(alpha+1)I + J + t(A - I)] + D^0[(J + alpha I)A - J]`
pub fn make_l21(n: usize, alpha: &BigRational, nu: &[ExactScalar]) -> Result<DiffOperator> {
    check_nu(n, nu)?;
    let al = ExactScalar::real(alpha.clone());
    let a = shift_matrix(nu);
    let j = j_matrix(n);
    let id = ExactMatrix::identity(n);
    let a2 = MatPoly::t_pow(n, 1);
    let a1 = MatPoly::from_coeffs(n, vec![id.scale(&(&al + &ExactScalar::one())).add(&j), a.sub(&id)]);
    let a0 = MatPoly::constant(j.add(&id.scale(&al)).mul(&a).sub(&j));
    Ok(DiffOperator::new(n, vec![a0, a1, a2]))
}

/// Subdiagonal `Y` with `Y_{i+1,i} = i(N-i)/nu_i`.
fn y_matrix(nu: &[ExactScalar]) -> ExactMatrix {
    let n = nu.len() + 1;
    let mut y = ExactMatrix::zeros(n, n);
    for (k, v) in nu.iter().enumerate() {
        let i = k + 1;
        y[(k + 1, k)] = ExactScalar::from_int((i * (n - i)) as i64) * v.inv().expect("nonzero nu");
    }
    y
}

/// `Y*` carried through the diagonal gauge: superdiagonal entries
/// `i(N-i) nu_i / |nu_i|^2`, where `|nu_i|^2` are the canonical moduli.
fn y_dagger(nu: &[ExactScalar], moduli: &[BigRational]) -> ExactMatrix {
    let n = nu.len() + 1;
    let mut y = ExactMatrix::zeros(n, n);
    for (k, (v, m)) in nu.iter().zip(moduli).enumerate() {
        let i = k + 1;
        let c = BigRational::from_integer(((i * (n - i)) as i64).into()) / m;
        y[(k, k + 1)] = v.scale_rational(&c);
    }
    y
}

/// The second-order operator `l_{2,2}`; requires the modulus constraints.
pub fn make_l22(n: usize, alpha: &BigRational, nu: &[ExactScalar]) -> Result<DiffOperator> {
    check_nu(n, nu)?;
    make_l22_for(&build_weight(n, alpha.clone(), nu.to_vec())?)
}

/// `l_{2,1}` for any weight of the family, gauged or not.
pub fn make_l21_for(w: &WeightSpec) -> Result<DiffOperator> {
    make_l21(w.n(), w.alpha(), w.nu())
}

/// `l_{2,2}` for any weight of the family. For a gauged weight `S W S*` this
/// is the conjugate `S l S^{-1}` coefficientwise, which keeps every entry
/// rational.
pub fn make_l22_for(w: &WeightSpec) -> Result<DiffOperator> {
    let n = w.n();
    if n < 2 {
        return Err(Error::Invalid("l_{2,2} needs N >= 2".into()));
    }
    if !w.constraints().holds() {
        return Err(Error::ConstraintViolated);
    }
    let nu = w.nu();
    let moduli = w.nu_moduli_sq();
    let al = w.alpha_scalar();
    let one = ExactScalar::one();
    let a = shift_matrix(nu);
    let j = j_matrix(n);
    let id = ExactMatrix::identity(n);
    let y = y_matrix(nu);

    let a2 = MatPoly::from_coeffs(n, vec![ExactMatrix::zeros(n, n), j.clone(), a.neg()]);
    let c0 = id.scale(&(&one + &al)).add(&j).mul(&j).add(&y);
    let c1 = j
        .add(&a.scale(&(&al + &ExactScalar::from_int(2))))
        .add(&y_dagger(nu, &moduli))
        .sub(&ad_power(&a, &y, 1)?);
    let a1 = MatPoly::from_coeffs(n, vec![c0, c1.neg()]);
    let f = ExactScalar::real(BigRational::from_integer((n as i64 - 1).into()) / &moduli[n - 2]);
    let a0 = MatPoly::constant(j.sub(&id.scale(&al).add(&j).mul(&a)).scale(&f));
    Ok(DiffOperator::new(n, vec![a0, a1, a2]))
}

struct ThirdOrderParams {
    al: ExactScalar,
    a: ExactScalar,
    ab: ExactScalar,
    s: ExactScalar,
    inv_a: ExactScalar,
    inv_ab: ExactScalar,
}

fn third_order_params(alpha: &BigRational, a: &ExactScalar) -> Result<ThirdOrderParams> {
    let inv_a = a.inv().ok_or(Error::ZeroA)?;
    Ok(ThirdOrderParams {
        al: ExactScalar::real(alpha.clone()),
        a: a.clone(),
        ab: a.conj(),
        s: ExactScalar::real(a.norm_sqr()),
        inv_ab: inv_a.conj(),
        inv_a,
    })
}

fn int(v: i64) -> ExactScalar {
    ExactScalar::from_int(v)
}

/// The third-order symmetric operator `l_{3,1}` for N = 2.
pub fn make_l31(alpha: &BigRational, a: &ExactScalar) -> Result<DiffOperator> {
    let ThirdOrderParams {
        al,
        a,
        ab,
        s,
        inv_a,
        inv_ab,
    } = third_order_params(alpha, a)?;
    let z = ExactScalar::zero;
    let one = int(1);
    let al1 = &al + &one;
    let al2 = &al + &int(2);
    let al5 = &al + &int(5);

    let d3 = mat2([
        [vec![z(), z(), -&s], vec![z(), z(), a.clone(), &a * &s]],
        [vec![z(), -&ab], vec![z(), z(), s.clone()]],
    ]);
    let d2 = mat2([
        [
            vec![z(), -(&int(2) + &(&s * &al5))],
            vec![z(), &a * &(&int(2) * &al2), &a * &(&one + &(&s * &al5))],
        ],
        [vec![-(&ab * &al2)], vec![z(), &int(2) + &(&s * &al2)]],
    ]);
    let d1 = mat2([
        [vec![-(&(&int(2) * &al2) * &(&one + &s)), one.clone()], {
            let c0 = &(&(&s * &al1) * &al2) * &inv_ab;
            let c1 = &(&one + &(&int(2) * &s * (&one + &(&s * &al2)))) * &inv_ab;
            vec![c0, c1]
        }],
        [vec![-&inv_a], vec![&int(2) * &al1, -&one]],
    ]);
    let d0 = mat2([
        [vec![al1.clone()], vec![-(&(&inv_ab * &al1) * &(&(&s * &al) - &one))]],
        [vec![inv_a.clone()], vec![-&al1]],
    ]);
    Ok(DiffOperator::new(2, vec![d0, d1, d2, d3]))
}

/// The third-order skew-symmetric operator `l_{3,2}` for N = 2. The
/// `(1,2)` entry of the `D^3` coefficient is `a t^2 (1 - |a|^2 t)`.
pub fn make_l32(alpha: &BigRational, a: &ExactScalar) -> Result<DiffOperator> {
    let ThirdOrderParams {
        al,
        a,
        ab,
        s,
        inv_a,
        inv_ab,
    } = third_order_params(alpha, a)?;
    let z = ExactScalar::zero;
    let one = int(1);
    let al1 = &al + &one;
    let al2 = &al + &int(2);
    let al5 = &al + &int(5);

    let d3 = mat2([
        [vec![z(), z(), s.clone()], vec![z(), z(), a.clone(), -(&a * &s)]],
        [vec![z(), ab.clone()], vec![z(), z(), -&s]],
    ]);
    let d2 = mat2([
        [
            vec![z(), &s * &al5],
            vec![z(), &a * &(&int(2) * &al2), -(&a * &(&int(3) + &(&s * &al5)))],
        ],
        [vec![&ab * &al2], vec![z(), -(&s * &al2)]],
    ]);
    let d1 = mat2([
        [vec![&(&int(2) * &s) * &al2, one.clone()], {
            let c0 = &(&a * &al1) * &al2;
            let c1 = -(&inv_ab + &(&(&(&int(2) * &a) * &(&int(2) + &s)) * &al2));
            vec![c0, c1]
        }],
        [vec![-&inv_a], vec![z(), -&one]],
    ]);
    let d0 = mat2([
        [vec![al1.clone()], vec![-(&(&inv_ab * &al1) * &(&one + &(&s * &al2)))]],
        [vec![inv_a.clone()], vec![-&al1]],
    ]);
    Ok(DiffOperator::new(2, vec![d0, d1, d2, d3]))
}

/// `t(At -/+ sum_n t^n/n! ad_A^n A*)`: the leading coefficients of the two
/// third-order operators, with `sign = -1` for `l_{3,1}` and `+1` for `l_{3,2}`.
pub fn third_order_leading(a: &ExactMatrix, sign: i64) -> Result<MatPoly> {
    let n = a.rows();
    let series = ad_exp_series(a, &a.star())?;
    let at = MatPoly::monomial(a.clone(), 1);
    Ok(at.add(&series.scale(&int(sign))).mul(&MatPoly::t_pow(n, 1)))
}

/// The N = 2 second-order operator attached to `B = diag(u, 0)`:
/// `D^2 tI + D^1[[2u+alpha+1-t, 2tv(1-u)], [0, alpha+1-t]] + D^0[[-1, v(1+alpha)], [0, 0]]`.
pub fn make_l2_general_u(alpha: &BigRational, u: &ExactScalar, v: &ExactScalar) -> Result<DiffOperator> {
    exponent_power(u)?;
    if v.is_zero() {
        return Err(Error::ZeroNu(1));
    }
    let al1 = ExactScalar::real(alpha.clone()) + int(1);
    let z = ExactScalar::zero;
    let d2 = MatPoly::t_pow(2, 1);
    let d1 = mat2([
        [
            vec![&(&int(2) * u) + &al1, int(-1)],
            vec![z(), &(&int(2) * v) * &(&int(1) - u)],
        ],
        [vec![], vec![al1.clone(), int(-1)]],
    ]);
    let d0 = mat2([[vec![int(-1)], vec![v * &al1]], [vec![], vec![]]]);
    Ok(DiffOperator::new(2, vec![d0, d1, d2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, rat};

    fn a11() -> ExactScalar {
        "1+1*i".parse().unwrap()
    }

    #[test]
    fn combinatorics() {
        assert_eq!(bounded_factorial(5, 2), 20);
        assert_eq!(bounded_factorial(3, 4), 0);
        assert_eq!(bounded_factorial(9, 0), 1);
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(8, 8), 1);
    }

    #[test]
    fn apply_examples() {
        let p = MatPoly::t_pow(2, 2);
        assert_eq!(DiffOperator::identity(2).apply(&p).unwrap(), p);
        let d = DiffOperator::derivative_power(2, 1);
        assert_eq!(d.apply(&p).unwrap(), MatPoly::t_pow(2, 1).scale(&q(2, 1)));
        assert!(d.apply(&MatPoly::identity(3)).is_err());
    }

    #[test]
    fn l21_two_by_two_display() {
        let a = a11();
        let al = rat(1, 2);
        let l = make_l21(2, &al, std::slice::from_ref(&a)).unwrap();
        let alq = ExactScalar::real(al.clone());
        let expected_a1 = mat2([
            [vec![&alq + &q(2, 1), q(-1, 1)], vec![q(0, 1), a.clone()]],
            [vec![], vec![&alq + &q(1, 1), q(-1, 1)]],
        ]);
        assert_eq!(l.coeff(1), expected_a1);
        let expected_a0 = mat2([[vec![q(-1, 1)], vec![&a * &(&alq + &q(1, 1))]], [vec![], vec![]]]);
        assert_eq!(l.coeff(0), expected_a0);
        let p0 = MatPoly::constant(ExactMatrix::from_rows(vec![
            vec![q(1, 1), -(&a * &(&alq + &q(1, 1)))],
            vec![q(0, 1), q(1, 1)],
        ]));
        let gamma0 = ExactMatrix::from_rows(vec![vec![q(-1, 1), q(0, 1)], vec![q(0, 1), q(0, 1)]]);
        assert_eq!(l.apply(&p0).unwrap(), p0.left_mul(&gamma0));
    }

    #[test]
    fn scalar_laguerre() {
        let l = make_l21(1, &rat(3, 1), &[]).unwrap();
        let x = |c: &[i64]| MatPoly::from_entries(&[vec![Poly::from_ints(c)]]);
        assert_eq!(l.coeff(2), x(&[0, 1]));
        assert_eq!(l.coeff(1), x(&[4, -1]));
        assert!(l.coeff(0).is_zero());
    }

    #[test]
    fn l22_two_by_two_display() {
        let a = a11();
        let al = rat(1, 3);
        let l = make_l22(2, &al, std::slice::from_ref(&a)).unwrap();
        let alq = ExactScalar::real(al);
        let s = ExactScalar::real(a.norm_sqr());
        let inv_ab = a.conj().inv().unwrap();
        assert_eq!(
            l.coeff(2),
            mat2([[vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(0, 1), -&a]], [vec![], vec![]]])
        );
        let a1 = mat2([
            [
                vec![&alq + &q(2, 1)],
                vec![q(0, 1), -(&inv_ab * &(&q(1, 1) + &(&s * &(&alq + &q(2, 1)))))],
            ],
            [vec![a.inv().unwrap()], vec![q(0, 1), q(-1, 1)]],
        ]);
        assert_eq!(l.coeff(1), a1);
        let a0 = mat2([
            [vec![s.inv().unwrap()], vec![-(&(&q(1, 1) + &alq) * &inv_ab)]],
            [vec![], vec![]],
        ]);
        assert_eq!(l.coeff(0), a0);
    }

    #[test]
    fn l22_requires_constraints() {
        assert_eq!(
            make_l22(3, &rat(0, 1), &[q(1, 1), q(1, 1)]),
            Err(Error::ConstraintViolated)
        );
        assert!(make_l22(3, &rat(0, 1), &[q(1, 1), "1+1*i".parse().unwrap()]).is_ok());
    }

    #[test]
    fn third_order_leading_coefficients() {
        let a = a11();
        let s = ExactScalar::real(a.norm_sqr());
        let am = shift_matrix(std::slice::from_ref(&a));
        let l31 = make_l31(&rat(1, 2), &a).unwrap();
        let l32 = make_l32(&rat(1, 2), &a).unwrap();
        let expected31 = mat2([
            [vec![q(0, 1), q(0, 1), -&s], vec![q(0, 1), q(0, 1), a.clone(), &a * &s]],
            [vec![q(0, 1), -a.conj()], vec![q(0, 1), q(0, 1), s.clone()]],
        ]);
        assert_eq!(l31.coeff(3), expected31);
        assert_eq!(third_order_leading(&am, -1).unwrap(), l31.coeff(3));
        assert_eq!(third_order_leading(&am, 1).unwrap(), l32.coeff(3));
        assert_eq!(make_l31(&rat(0, 1), &q(0, 1)), Err(Error::ZeroA));
    }

    #[test]
    fn general_u_matches_l21_at_one_half() {
        let a = a11();
        for al in [rat(0, 1), rat(2, 5)] {
            let lu = make_l2_general_u(&al, &q(1, 2), &a).unwrap();
            assert_eq!(lu, make_l21(2, &al, std::slice::from_ref(&a)).unwrap());
        }
        assert!(matches!(
            make_l2_general_u(&rat(0, 1), &q(1, 3), &a),
            Err(Error::InexactExponent(_))
        ));
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let a = a11();
        let l1 = make_l21(2, &rat(1, 2), std::slice::from_ref(&a)).unwrap();
        let l2 = make_l31(&rat(1, 2), &a).unwrap();
        let p = MatPoly::from_entries(&[
            vec![
                Poly::from_ints(&[1, 2, 0, 1]),
                Poly::new(vec![a.clone(), q(0, 1), q(1, 3)]),
            ],
            vec![Poly::from_ints(&[0, 5]), Poly::from_ints(&[2, 0, 0, 0, 1])],
        ]);
        let c = l1.compose(&l2).unwrap();
        assert_eq!(c.apply(&p).unwrap(), l2.apply(&l1.apply(&p).unwrap()).unwrap());
        assert_eq!(DiffOperator::identity(2).compose(&l2).unwrap(), l2);
        assert!(l1.commutator(&l1).unwrap().is_zero());
    }

    #[test]
    fn eigenvalue_is_multiplicative() {
        let a = a11();
        let l1 = make_l21(2, &rat(1, 2), std::slice::from_ref(&a)).unwrap();
        let l2 = make_l22(2, &rat(1, 2), std::slice::from_ref(&a)).unwrap();
        let c = l1.compose(&l2).unwrap();
        for n in 0..6 {
            assert_eq!(
                c.monic_eigenvalue(n),
                l1.monic_eigenvalue(n).mul(&l2.monic_eigenvalue(n))
            );
        }
    }
}
