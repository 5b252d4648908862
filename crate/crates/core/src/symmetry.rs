//! Symmetry of an operator with respect to a weight, decided two ways: by
//! the differential symmetry equations with their boundary terms, and by
//! the equivalent identities on the moments.

use serde::Serialize;

use crate::diffops::{binom, DiffOperator};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::matpoly::{falling, MatPoly};
use crate::quasi::QuasiPoly;
use crate::scalar::ExactScalar;
use crate::weights::{MomentSequence, WeightSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Symmetric,
    SkewSymmetric,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryTerm {
    pub p: usize,
    pub l: usize,
    pub value: QuasiPoly,
    pub vanishes_at_zero: bool,
    pub vanishes_at_infinity: bool,
}

/// Residuals and boundary terms are those of `l` itself; the verdict also
/// covers `i*l`.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub order: usize,
    /// `residuals[l]` is LHS minus RHS of the `l`-th symmetry equation.
    pub residuals: Vec<QuasiPoly>,
    pub boundary: Vec<BoundaryTerm>,
    pub verdict: Verdict,
}

impl SymmetryReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = "mop.symmetry.v1".into();
        v
    }
}

fn weight_quasi(w: &WeightSpec) -> QuasiPoly {
    QuasiPoly::new(w.alpha().clone(), w.qpart().clone())
}

struct Equations {
    residuals: Vec<QuasiPoly>,
    boundary: Vec<BoundaryTerm>,
}

impl Equations {
    fn holds(&self) -> bool {
        self.residuals.iter().all(QuasiPoly::is_zero)
            && self
                .boundary
                .iter()
                .all(|b| b.vanishes_at_zero && b.vanishes_at_infinity)
    }
}

fn equations(l: &DiffOperator, w: &WeightSpec) -> Result<Equations> {
    if l.dim() != w.n() {
        return Err(Error::DimensionMismatch(format!(
            "operator of size {} against a weight of size {}",
            l.dim(),
            w.n()
        )));
    }
    let k = l.order();
    let wq = weight_quasi(w);
    // derivs[j][m] = (A_j W)^{(m)} for m <= j
    let derivs: Vec<Vec<QuasiPoly>> = (0..=k)
        .map(|j| {
            let mut v = vec![wq.left_mul(&l.coeff(j))];
            for m in 1..=j {
                let next = v[m - 1].derivative();
                v.push(next);
            }
            v
        })
        .collect();
    let sign = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };

    let mut residuals = Vec::with_capacity(k + 1);
    for lidx in 0..=k {
        let mut acc = QuasiPoly::zero(w.n());
        for i in 0..=k - lidx {
            let c = sign(k - i - lidx) * binom(k - i, lidx);
            if c != 0 {
                acc = acc.add(&derivs[k - i][k - i - lidx].scale(&ExactScalar::from_int(c)))?;
            }
        }
        let rhs = wq
            .right_mul(&l.coeff(lidx).star())
            .scale(&ExactScalar::from_int(sign(lidx)));
        residuals.push(acc.sub(&rhs)?);
    }

    let mut boundary = Vec::new();
    for p in 1..=k {
        for lidx in 0..=k - p {
            let mut acc = QuasiPoly::zero(w.n());
            for i in 0..p {
                let c = sign(k - i + p - 1) * binom(k - i, lidx);
                if c != 0 {
                    acc = acc.add(&derivs[k - i][p - 1 - i].scale(&ExactScalar::from_int(c)))?;
                }
            }
            boundary.push(BoundaryTerm {
                p,
                l: lidx,
                vanishes_at_zero: acc.vanishes_at_zero(),
                vanishes_at_infinity: acc.vanishes_at_infinity(),
                value: acc,
            });
        }
    }
    Ok(Equations { residuals, boundary })
}

/// Decides symmetry of `l` with respect to `w` from the differential
/// symmetry equations and their boundary terms. Skew-symmetry is detected
/// by testing `i*l`.
pub fn check_symmetry(l: &DiffOperator, w: &WeightSpec) -> Result<SymmetryReport> {
    let eq = equations(l, w)?;
    let verdict = if eq.holds() {
        Verdict::Symmetric
    } else if equations(&l.scale(&ExactScalar::i()), w)?.holds() {
        Verdict::SkewSymmetric
    } else {
        Verdict::Neither
    };
    Ok(SymmetryReport {
        order: l.order(),
        residuals: eq.residuals,
        boundary: eq.boundary,
        verdict,
    })
}

/// `B_n^l = sum_{i=0}^{l} A^l_{l-i} mu_{n-i}`, the moment of `t^{n-l} A_l W`.
fn b_moment(l: &DiffOperator, mu: &MomentSequence, lidx: usize, n: usize) -> ExactMatrix {
    let a = l.coeff(lidx);
    let mut acc = ExactMatrix::zeros(l.dim(), l.dim());
    for i in 0..=lidx.min(n) {
        let c = a.coeff(lidx - i);
        if !c.is_zero() {
            acc = acc.add(&c.mul(mu.get(n - i)));
        }
    }
    acc
}

fn moment_conditions_hold(l: &DiffOperator, mu: &MomentSequence, n_max: usize) -> bool {
    let k = l.order();
    for lidx in 0..=k {
        for n in lidx..=n_max {
            let mut lhs = ExactMatrix::zeros(l.dim(), l.dim());
            for i in 0..=k - lidx {
                let c = binom(k - i, lidx) * falling(n - lidx, k - lidx - i);
                if c != 0 {
                    lhs = lhs.add(&b_moment(l, mu, k - i, n).scale(&ExactScalar::from_int(c)));
                }
            }
            let mut rhs = b_moment(l, mu, lidx, n).star();
            if lidx % 2 == 1 {
                rhs = rhs.neg();
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Symmetry decided from the moments alone, for `n <= n_max`. Requires
/// `deg A_i <= i`.
pub fn check_symmetry_moments(l: &DiffOperator, w: &WeightSpec, n_max: usize) -> Result<bool> {
    if l.dim() != w.n() {
        return Err(Error::DimensionMismatch(format!(
            "operator of size {} against a weight of size {}",
            l.dim(),
            w.n()
        )));
    }
    if !l.has_bounded_degrees() {
        return Err(Error::Invalid("moment criterion needs deg A_i <= i".into()));
    }
    Ok(moment_conditions_hold(l, &w.moments(n_max + 1), n_max))
}

/// Verdict of the moment criterion, with skew-symmetry detected on `i*l`.
pub fn moment_verdict(l: &DiffOperator, w: &WeightSpec, n_max: usize) -> Result<Verdict> {
    Ok(if check_symmetry_moments(l, w, n_max)? {
        Verdict::Symmetric
    } else if check_symmetry_moments(&l.scale(&ExactScalar::i()), w, n_max)? {
        Verdict::SkewSymmetric
    } else {
        Verdict::Neither
    })
}

/// Both sides of `sum_i [n]_{k-i} B_{n+m}^{k-i} = sum_i [m]_{k-i} (B_{n+m}^{k-i})^*`,
/// which equal `<l(t^n I), t^m I>` and `<t^n I, l(t^m I)>`.
pub fn moment_identity_sides(l: &DiffOperator, mu: &MomentSequence, n: usize, m: usize) -> (ExactMatrix, ExactMatrix) {
    let k = l.order();
    let dim = l.dim();
    let mut lhs = ExactMatrix::zeros(dim, dim);
    let mut rhs = ExactMatrix::zeros(dim, dim);
    for j in 0..=k {
        if j > n + m {
            continue;
        }
        let b = b_moment(l, mu, j, n + m);
        let fl = falling(n, j);
        if fl != 0 {
            lhs = lhs.add(&b.scale(&ExactScalar::from_int(fl)));
        }
        let fr = falling(m, j);
        if fr != 0 {
            rhs = rhs.add(&b.star().scale(&ExactScalar::from_int(fr)));
        }
    }
    (lhs, rhs)
}

/// Expands `<l(t^n I), t^m I>` directly through the inner product.
pub fn direct_pairing(l: &DiffOperator, mu: &MomentSequence, n: usize, m: usize) -> Result<ExactMatrix> {
    let dim = l.dim();
    mu.inner(&l.apply(&MatPoly::t_pow(dim, n))?, &MatPoly::t_pow(dim, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::{make_l21, make_l22, make_l2_general_u, make_l31, make_l32};
    use crate::diffops::{make_l21_for, make_l22_for};
    use crate::scalar::{q, rat};
    use crate::weights::{build_weight, build_weight_u, constrained_nu};

    fn a() -> ExactScalar {
        "1+1*i".parse().unwrap()
    }

    #[test]
    fn second_order_operators_are_symmetric() {
        let al = rat(1, 2);
        let w = build_weight(2, al.clone(), vec![a()]).unwrap();
        for l in [make_l21(2, &al, &[a()]).unwrap(), make_l22(2, &al, &[a()]).unwrap()] {
            let r = check_symmetry(&l, &w).unwrap();
            assert_eq!(r.verdict, Verdict::Symmetric);
            assert!(check_symmetry_moments(&l, &w, 10).unwrap());
        }
    }

    #[test]
    fn third_order_operators() {
        let al = rat(1, 3);
        let w = build_weight(2, al.clone(), vec![a()]).unwrap();
        let l31 = make_l31(&al, &a()).unwrap();
        let l32 = make_l32(&al, &a()).unwrap();
        assert_eq!(check_symmetry(&l31, &w).unwrap().verdict, Verdict::Symmetric);
        assert_eq!(check_symmetry(&l32, &w).unwrap().verdict, Verdict::SkewSymmetric);
        assert_eq!(moment_verdict(&l31, &w, 11).unwrap(), Verdict::Symmetric);
        assert_eq!(moment_verdict(&l32, &w, 11).unwrap(), Verdict::SkewSymmetric);
    }

    #[test]
    fn flipped_leading_entry_breaks_skew_symmetry() {
        let al = rat(1, 3);
        let w = build_weight(2, al.clone(), vec![a()]).unwrap();
        let l32 = make_l32(&al, &a()).unwrap();
        let mut c = l32.coeffs().to_vec();
        let mut e = c[3].entries();
        e[0][1] = -&e[0][1];
        c[3] = MatPoly::from_entries(&e);
        let flipped = DiffOperator::new(2, c);
        assert_eq!(check_symmetry(&flipped, &w).unwrap().verdict, Verdict::Neither);
        assert_eq!(moment_verdict(&flipped, &w, 11).unwrap(), Verdict::Neither);
    }

    #[test]
    fn first_derivative_is_neither() {
        let w = build_weight(2, rat(0, 1), vec![q(1, 1)]).unwrap();
        let d = DiffOperator::derivative_power(2, 1);
        assert_eq!(check_symmetry(&d, &w).unwrap().verdict, Verdict::Neither);
        assert_eq!(moment_verdict(&d, &w, 9).unwrap(), Verdict::Neither);
    }

    #[test]
    fn three_by_three_l22() {
        let nu = constrained_nu(3, &rat(2, 1)).unwrap();
        let al = rat(1, 2);
        let w = build_weight(3, al.clone(), nu.clone()).unwrap();
        let l = make_l22(3, &al, &nu).unwrap();
        assert_eq!(check_symmetry(&l, &w).unwrap().verdict, Verdict::Symmetric);
        assert!(check_symmetry_moments(&l, &w, 10).unwrap());
    }

    #[test]
    fn general_u_family() {
        let v = q(1, 1);
        for u in [q(0, 1), q(1, 2), q(1, 1)] {
            let w = build_weight_u(rat(0, 1), u.clone(), v.clone()).unwrap();
            let l = make_l2_general_u(&rat(0, 1), &u, &v).unwrap();
            assert_eq!(check_symmetry(&l, &w).unwrap().verdict, Verdict::Symmetric, "u = {u}");
            assert!(check_symmetry_moments(&l, &w, 10).unwrap());
        }
    }

    #[test]
    fn moment_identity_matches_direct_expansion() {
        let al = rat(1, 2);
        let w = build_weight(2, al.clone(), vec![a()]).unwrap();
        let l = make_l31(&al, &a()).unwrap();
        let mu = w.moments(20);
        for (n, m) in [(0, 0), (1, 3), (4, 2), (5, 5), (0, 6)] {
            let (lhs, rhs) = moment_identity_sides(&l, &mu, n, m);
            assert_eq!(lhs, direct_pairing(&l, &mu, n, m).unwrap());
            assert_eq!(rhs, direct_pairing(&l, &mu, m, n).unwrap().star());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn second_order_equations_specialize() {
        // k = 2: A2 W = W A2*, 2(A2 W)' = W A1* + A1 W, (A2 W)'' - (A1 W)' + A0 W = W A0*
        let al = rat(1, 2);
        let w = build_weight(2, al.clone(), vec![a()]).unwrap();
        let l = make_l21(2, &al, &[a()]).unwrap();
        let wq = weight_quasi(&w);
        let aw = |i: usize| wq.left_mul(&l.coeff(i));
        let wa = |i: usize| wq.right_mul(&l.coeff(i).star());
        assert!(aw(2).sub(&wa(2)).unwrap().is_zero());
        let e2 = aw(2)
            .derivative()
            .scale(&q(2, 1))
            .sub(&wa(1).add(&aw(1)).unwrap())
            .unwrap();
        assert!(e2.is_zero());
        let e3 = aw(2)
            .nth_derivative(2)
            .sub(&aw(1).derivative())
            .unwrap()
            .add(&aw(0))
            .unwrap()
            .sub(&wa(0))
            .unwrap();
        assert!(e3.is_zero());
    }

    #[test]
    fn gauged_weights_keep_symmetry() {
        for (n, r) in [(3, rat(1, 1)), (4, rat(3, 1))] {
            let m = crate::weights::solve_modulus_constraints(n, &r).unwrap();
            let w = crate::weights::build_weight_moduli(n, rat(1, 2), &m).unwrap();
            for l in [make_l21_for(&w).unwrap(), make_l22_for(&w).unwrap()] {
                assert_eq!(check_symmetry(&l, &w).unwrap().verdict, Verdict::Symmetric);
                assert!(check_symmetry_moments(&l, &w, 10).unwrap());
            }
        }
    }
}
