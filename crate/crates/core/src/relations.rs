//! Identities in the operator algebra: the basis `L_1..L_4` for `N = 2`,
//! its quadratic, permutational and cubic relations, and the product
//! relation between the two second-order operators for general `N`.
//!
//! A relation is a linear combination of words in the generators. Each
//! one is checked twice: as an operator identity (by composition) and on
//! the eigenvalues of the Rodrigues family, where words become matrix
//! products in the same order.

use num_rational::BigRational;
use serde::Serialize;

use crate::diffops::{make_l21, make_l21_for, make_l22, make_l22_for, make_l31, make_l32, DiffOperator};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::orthopoly::gamma_n;
use crate::par::{map_slice, Execution};
use crate::scalar::ExactScalar;
use crate::weights::{build_weight, WeightSpec};

/// `(L_1, L_2, L_3, L_4)` for `N = 2`.
#[derive(Clone, Debug)]
pub struct LBasis {
    pub l: [DiffOperator; 4],
}

pub fn make_l_basis(alpha: &BigRational, a: &ExactScalar) -> Result<LBasis> {
    let s_inv = ExactScalar::real(a.norm_sqr()).inv().ok_or(Error::ZeroA)?;
    let nu = std::slice::from_ref(a);
    let l21 = make_l21(2, alpha, nu)?;
    let l22 = make_l22(2, alpha, nu)?;
    let shift = DiffOperator::scalar(2, s_inv);
    let l1 = l21.sub(&shift);
    let l2 = l22.scale(&ExactScalar::from_int(2)).sub(&l21).sub(&shift);
    Ok(LBasis {
        l: [l1, l2, make_l31(alpha, a)?, make_l32(alpha, a)?],
    })
}

/// Eigenvalues of `L_1..L_4` on the Rodrigues polynomial of degree `n`.
pub fn l_basis_eigenvalues(n: usize, alpha: &BigRational, a: &ExactScalar) -> Result<[ExactMatrix; 4]> {
    let s_inv = ExactScalar::real(a.norm_sqr()).inv().ok_or(Error::ZeroA)?;
    let ni = n as i64;
    let (g0, g1) = (gamma_n(ni, a), gamma_n(ni + 1, a));
    let z = ExactScalar::zero;
    let diag = |x: ExactScalar, y: ExactScalar| ExactMatrix::from_rows(vec![vec![x, z()], vec![z(), y]]).scale(&s_inv);
    let top = &(a * &(ExactScalar::real(alpha.clone()) + ExactScalar::from_int(1 + ni))) * &(&g0 * &g1);
    let anti = |x: ExactScalar| ExactMatrix::from_rows(vec![vec![z(), x], vec![a.conj(), z()]]).scale(&s_inv);
    Ok([diag(-&g1, -&g0), diag(g1.clone(), -&g0), anti(top.clone()), anti(-&top)])
}

/// Operations shared by operators and eigenvalue matrices.
pub trait Algebra: Clone + Send + Sync {
    fn one(dim: usize) -> Self;
    fn zero(dim: usize) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, c: &ExactScalar) -> Self;
    fn vanishes(&self) -> bool;
}

impl Algebra for DiffOperator {
    fn one(dim: usize) -> Self {
        DiffOperator::identity(dim)
    }
    fn zero(dim: usize) -> Self {
        DiffOperator::zero(dim)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.compose(o).expect("same dimension")
    }
    fn scaled(&self, c: &ExactScalar) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Algebra for ExactMatrix {
    fn one(dim: usize) -> Self {
        ExactMatrix::identity(dim)
    }
    fn zero(dim: usize) -> Self {
        ExactMatrix::zeros(dim, dim)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, c: &ExactScalar) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

/// `sum_k c_k w_k` where each word `w_k` lists generator indices (1-based)
/// multiplied left to right; the empty word is the identity.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(ExactScalar, Vec<usize>)>,
}

impl Relation {
    pub fn new(name: &str, terms: Vec<(ExactScalar, Vec<usize>)>) -> Self {
        Self {
            name: name.to_string(),
            terms,
        }
    }

    pub fn evaluate<T: Algebra>(&self, gens: &[T], dim: usize) -> T {
        let mut acc = T::zero(dim);
        for (c, word) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let prod = word.iter().fold(T::one(dim), |p, &g| p.times(&gens[g - 1]));
            acc = acc.plus(&prod.scaled(c));
        }
        acc
    }
}

fn int(v: i64) -> ExactScalar {
    ExactScalar::from_int(v)
}

/// The fourteen relations among `L_1..L_4`, written as expressions that
/// must vanish.
pub fn basis_relations() -> Vec<Relation> {
    let p = || int(1);
    let m = || int(-1);
    vec![
        Relation::new("L1L1 = L2L2", vec![(p(), vec![1, 1]), (m(), vec![2, 2])]),
        Relation::new("L3L3 = -L4L4", vec![(p(), vec![3, 3]), (p(), vec![4, 4])]),
        Relation::new("L1L2 = L2L1", vec![(p(), vec![1, 2]), (m(), vec![2, 1])]),
        Relation::new("L3L4 = -L4L3", vec![(p(), vec![3, 4]), (p(), vec![4, 3])]),
        Relation::new("L1L3 - L2L4 = 0", vec![(p(), vec![1, 3]), (m(), vec![2, 4])]),
        Relation::new("L2L3 - L1L4 = 0", vec![(p(), vec![2, 3]), (m(), vec![1, 4])]),
        Relation::new("L3L2 + L4L1 = 0", vec![(p(), vec![3, 2]), (p(), vec![4, 1])]),
        Relation::new("L3L1 + L4L2 = 0", vec![(p(), vec![3, 1]), (p(), vec![4, 2])]),
        Relation::new(
            "L3 = L1L4 - L4L1",
            vec![(p(), vec![3]), (m(), vec![1, 4]), (p(), vec![4, 1])],
        ),
        Relation::new(
            "L4 = L1L3 - L3L1",
            vec![(p(), vec![4]), (m(), vec![1, 3]), (p(), vec![3, 1])],
        ),
        Relation::new(
            "L3 = L2L3 + L3L2",
            vec![(p(), vec![3]), (m(), vec![2, 3]), (m(), vec![3, 2])],
        ),
        Relation::new(
            "L4 = L2L4 + L4L2",
            vec![(p(), vec![4]), (m(), vec![2, 4]), (m(), vec![4, 2])],
        ),
        Relation::new("L1L3L3 = L3L3L1", vec![(p(), vec![1, 3, 3]), (m(), vec![3, 3, 1])]),
        Relation::new("L2L3L3 = L3L3L2", vec![(p(), vec![2, 3, 3]), (m(), vec![3, 3, 2])]),
    ]
}

/// Coefficient of `L_2` in the cubic relation,
/// `[|a|^2(2+alpha) - 1][|a|^2(alpha-1) - 1]`.
pub fn cubic_leading(alpha: &BigRational, a: &ExactScalar) -> ExactScalar {
    let s = ExactScalar::real(a.norm_sqr());
    let al = ExactScalar::real(alpha.clone());
    let f1 = &(&s * &(&int(2) + &al)) - &int(1);
    let f2 = &(&s * &(&al - &int(1))) - &int(1);
    &f1 * &f2
}

/// Right-hand side of the cubic relation expressing `c L_2` through `L_1`
/// and `L_3`.
pub fn cubic_rhs(alpha: &BigRational, a: &ExactScalar) -> Relation {
    let s = ExactScalar::real(a.norm_sqr());
    let al = ExactScalar::real(alpha.clone());
    let k = &(&s * &(&(&int(2) * &al) + &int(1))) - &int(2);
    let s2 = &s * &s;
    let quad = &(&(&s2 * &(&(&(&al * &al) + &al) - &int(5))) - &(&s * &(&(&int(2) * &al) + &int(1)))) + &int(1);
    let half = ExactScalar::from_ratio(1, 2);
    Relation::new(
        "cubic right-hand side",
        vec![
            (&(&int(2) * &s) * &k, vec![1]),
            (quad, vec![1, 1]),
            (-(&(&int(2) * &s) * &k), vec![1, 1, 1]),
            (&int(3) * &s2, vec![1, 1, 1, 1]),
            (-(&half * &k), vec![3, 3]),
            (&ExactScalar::from_ratio(15, 2) * &s, vec![3, 3, 1]),
            (&ExactScalar::from_ratio(-9, 2) * &s, vec![3, 1, 3]),
        ],
    )
}

/// `c L_2 - rhs`, which must vanish.
pub fn cubic_relation(alpha: &BigRational, a: &ExactScalar) -> Relation {
    let mut r = cubic_rhs(alpha, a);
    for t in &mut r.terms {
        t.0 = -&t.0;
    }
    r.terms.push((cubic_leading(alpha, a), vec![2]));
    r.name = "cubic: c L2 = rhs(L1, L3)".into();
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    /// Holds on the Rodrigues eigenvalues for every tested degree.
    pub holds_on_eigenvalues: bool,
    pub residual: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub alpha: String,
    pub a: ExactScalar,
    pub exceptional: bool,
    pub eigen_degrees: usize,
    pub relations: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds && r.holds_on_eigenvalues)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = "mop.relations.v1".into();
        v
    }
}

/// Every basis relation, the cubic, and the `N = 2` product relation, as
/// operator identities and on eigenvalues for `n <= 12`.
pub fn verify_relations(alpha: &BigRational, a: &ExactScalar, exec: Execution) -> Result<RelationReport> {
    const DEGREES: usize = 12;
    let basis = make_l_basis(alpha, a)?;
    let eig: Vec<[ExactMatrix; 4]> = (0..=DEGREES)
        .map(|n| l_basis_eigenvalues(n, alpha, a))
        .collect::<Result<_>>()?;
    let mut rels = basis_relations();
    rels.push(cubic_relation(alpha, a));
    let mut checks = map_slice(exec, &rels, |r| {
        let res = r.evaluate(&basis.l, 2);
        RelationCheck {
            name: r.name.clone(),
            holds: res.is_zero(),
            holds_on_eigenvalues: eig.iter().all(|e| r.evaluate(e, 2).is_zero()),
            residual: res.to_json(),
        }
    });
    let fact = verify_fact_relation(&build_weight(2, alpha.clone(), vec![a.clone()])?, true)?;
    checks.push(RelationCheck {
        name: "(-l22 + I/|a|^2)(l21 - l22) = 0".into(),
        holds: fact.operator_holds == Some(true),
        holds_on_eigenvalues: fact.eigen_holds,
        residual: fact.residual.clone().unwrap_or(serde_json::Value::Null),
    });
    Ok(RelationReport {
        alpha: alpha.to_string(),
        a: a.clone(),
        exceptional: cubic_leading(alpha, a).is_zero(),
        eigen_degrees: DEGREES,
        relations: checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactReport {
    #[serde(rename = "N")]
    pub n: usize,
    /// `None` when only the eigenvalue check was requested.
    pub operator_holds: Option<bool>,
    pub residual: Option<serde_json::Value>,
    /// The product of the factor eigenvalues vanishes for `n <= 12`.
    pub eigen_holds: bool,
    /// The `i`-th factor has a zero `(i,i)` entry for every tested degree.
    pub diagonal_zeros: bool,
}

impl FactReport {
    pub fn holds(&self) -> bool {
        self.operator_holds != Some(false) && self.eigen_holds && self.diagonal_zeros
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = "mop.fact.v1".into();
        v
    }
}

/// `prod_{i=1}^{N} ((i-1) l21 - l22 + c_i I) = 0` with
/// `c_i = (N-1)(N-i)/|nu_{N-1}|^2 + (i-1)(N-i)`.
pub fn fact_factors(w: &WeightSpec) -> Result<Vec<DiffOperator>> {
    let n = w.n();
    if n < 2 || !w.constraints().holds() {
        return Err(Error::ConstraintViolated);
    }
    let l21 = make_l21_for(w)?;
    let l22 = make_l22_for(w)?;
    let r_inv = ExactScalar::real(w.last_modulus_sq().expect("N >= 2"))
        .inv()
        .expect("nonzero nu");
    Ok((1..=n)
        .map(|i| {
            let c = &(&int(((n - 1) * (n - i)) as i64) * &r_inv) + &int(((i - 1) * (n - i)) as i64);
            l21.scale(&int(i as i64 - 1)).sub(&l22).add(&DiffOperator::scalar(n, c))
        })
        .collect())
}

pub fn verify_fact_relation(w: &WeightSpec, operator_level: bool) -> Result<FactReport> {
    let n = w.n();
    let factors = fact_factors(w)?;
    let mut eigen_holds = true;
    let mut diagonal_zeros = true;
    for deg in 0..=12 {
        let deltas: Vec<ExactMatrix> = factors.iter().map(|f| f.monic_eigenvalue(deg)).collect();
        diagonal_zeros &= deltas.iter().enumerate().all(|(i, d)| d[(i, i)].is_zero());
        let prod = deltas.iter().fold(ExactMatrix::identity(n), |p, d| p.mul(d));
        eigen_holds &= prod.is_zero();
    }
    let (operator_holds, residual) = if operator_level {
        let prod = factors
            .iter()
            .try_fold(DiffOperator::identity(n), |p, f| p.compose(f))?;
        (Some(prod.is_zero()), Some(prod.to_json()))
    } else {
        (None, None)
    };
    Ok(FactReport {
        n,
        operator_holds,
        residual,
        eigen_holds,
        diagonal_zeros,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalReport {
    pub alpha: String,
    pub a: ExactScalar,
    pub leading: ExactScalar,
    pub exceptional: bool,
    /// At exceptional values: whether the cubic's right-hand side is the
    /// zero operator too.
    pub rhs_vanishes: Option<bool>,
}

impl ExceptionalReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = "mop.exceptional.v1".into();
        v
    }
}

pub fn exceptional_alpha_report(alpha: &BigRational, a: &ExactScalar) -> Result<ExceptionalReport> {
    let basis = make_l_basis(alpha, a)?;
    let leading = cubic_leading(alpha, a);
    let exceptional = leading.is_zero();
    let rhs_vanishes = exceptional.then(|| cubic_rhs(alpha, a).evaluate(&basis.l, 2).is_zero());
    Ok(ExceptionalReport {
        alpha: alpha.to_string(),
        a: a.clone(),
        leading,
        exceptional,
        rhs_vanishes,
    })
}

/// Rank of the operators' coefficient vectors.
pub fn operator_rank(ops: &[DiffOperator]) -> usize {
    let Some(first) = ops.first() else { return 0 };
    let n = first.dim();
    let order = ops.iter().map(DiffOperator::order).max().unwrap_or(0);
    let rows: Vec<Vec<ExactScalar>> = ops
        .iter()
        .map(|o| {
            let mut v = Vec::new();
            for i in 0..=order {
                let c = o.coeff(i);
                for p in 0..=order {
                    let m = c.coeff(p);
                    for r in 0..n {
                        for col in 0..n {
                            v.push(m[(r, col)].clone());
                        }
                    }
                }
            }
            v
        })
        .collect();
    ExactMatrix::from_rows(rows).rank()
}
