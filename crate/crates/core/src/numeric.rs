//! Floating-point cross-checks: generalized Gauss–Laguerre quadrature for
//! `int f(t) t^alpha e^{-t} dt / Gamma(alpha+1)`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::linalg::ExactMatrix;
use crate::matpoly::MatPoly;
use crate::weights::WeightSpec;

type CMat = Vec<Vec<Complex64>>;

#[derive(Clone, Debug)]
pub struct GaussLaguerre {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    /// Normalized so that the weights sum to 1.
    pub weights: Vec<f64>,
}

/// `(L_n^{(alpha)}(x), L_{n-1}^{(alpha)}(x))` by the three-term recurrence.
fn laguerre_pair(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

impl GaussLaguerre {
    /// `n`-point rule: Golub–Welsch eigenvalues, polished by Newton steps
    /// on `L_n^{(alpha)}`, with weights from the derivative formula.
    pub fn new(n: usize, alpha: f64) -> Self {
        assert!(n >= 1 && alpha > -1.0);
        let jac = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                2.0 * i as f64 + alpha + 1.0
            } else if i + 1 == j || j + 1 == i {
                let k = i.max(j) as f64;
                (k * (k + alpha)).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
        nodes.sort_by(f64::total_cmp);
        let nf = n as f64;
        let deriv = |x: f64| {
            let (ln, lm) = laguerre_pair(n, alpha, x);
            (ln, (nf * ln - (nf + alpha) * lm) / x)
        };
        for x in &mut nodes {
            for _ in 0..4 {
                let (ln, d) = deriv(*x);
                let step = ln / d;
                *x -= step;
                if step.abs() <= 1e-16 * x.abs() {
                    break;
                }
            }
        }
        // Gamma(n+alpha+1) / (n! Gamma(alpha+1)) = prod_j (alpha+j)/j
        let c: f64 = (1..=n).map(|j| (alpha + j as f64) / j as f64).product();
        let weights = nodes
            .iter()
            .map(|&x| {
                let (_, d) = deriv(x);
                c / (x * d * d)
            })
            .collect();
        Self { alpha, nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    fn integrate_matrix(&self, dim: usize, f: impl Fn(f64) -> CMat) -> CMat {
        let mut acc = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            for (r, row) in acc.iter_mut().enumerate() {
                for (c, e) in row.iter_mut().enumerate() {
                    *e += v[r][c] * w;
                }
            }
        }
        acc
    }
}

/// A quadrature value with an entrywise magnitude scale: the quadrature
/// of the integrand with every coefficient and product replaced by its
/// absolute value. Rounding error is relative to this scale.
#[derive(Clone, Debug)]
pub struct Approx {
    pub value: CMat,
    pub scale: Vec<Vec<f64>>,
}

fn mat_c64(m: &ExactMatrix) -> CMat {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)].to_c64()).collect())
        .collect()
}

fn abs_eval(p: &MatPoly, x: f64) -> Vec<Vec<f64>> {
    let n = p.dim();
    let mut acc = vec![vec![0.0; n]; n];
    for c in p.coeffs().iter().rev() {
        for (r, row) in acc.iter_mut().enumerate() {
            for (col, e) in row.iter_mut().enumerate() {
                *e = *e * x + c[(r, col)].to_c64().norm();
            }
        }
    }
    acc
}

fn cmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
        .collect()
}

fn rmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
        .collect()
}

fn conj_transpose(a: &CMat) -> CMat {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| a[c][r].conj()).collect()).collect()
}

fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| a[c][r]).collect()).collect()
}

/// `<P, Q>` by quadrature, normalized like the exact moments.
pub fn inner_product_c64(rule: &GaussLaguerre, p: &MatPoly, q: &MatPoly, w: &WeightSpec) -> Approx {
    let n = w.n();
    let value = rule.integrate_matrix(n, |x| {
        let pw = cmul(&p.eval_c64(x), &w.qpart().eval_c64(x));
        cmul(&pw, &conj_transpose(&q.eval_c64(x)))
    });
    let mut scale = vec![vec![0.0; n]; n];
    for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let v = rmul(
            &rmul(&abs_eval(p, x), &abs_eval(w.qpart(), x)),
            &transpose(&abs_eval(q, x)),
        );
        for (r, row) in scale.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e += wt * v[r][c];
            }
        }
    }
    Approx { value, scale }
}

/// The `k`-th normalized moment by quadrature.
pub fn moment_c64(rule: &GaussLaguerre, w: &WeightSpec, k: usize) -> Approx {
    let n = w.n();
    inner_product_c64(rule, &MatPoly::t_pow(n, k), &MatPoly::identity(n), w)
}

/// Largest entrywise `|approx - exact| / max(|exact|, scale)`.
pub fn relative_error(approx: &Approx, exact: &ExactMatrix) -> f64 {
    let e = mat_c64(exact);
    let mut worst: f64 = 0.0;
    for (r, row) in approx.value.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let denom = e[r][c].norm().max(approx.scale[r][c]).max(f64::MIN_POSITIVE);
            worst = worst.max((v - e[r][c]).norm() / denom);
        }
    }
    worst
}

/// 64-node rule for the weight's `alpha`.
pub fn rule_for(w: &WeightSpec) -> GaussLaguerre {
    GaussLaguerre::new(64, w.alpha().to_f64().expect("finite alpha"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, rat};
    use crate::weights::{build_weight, inner_product};

    #[test]
    fn integrates_monomials_exactly() {
        for alpha in [0.0, 0.5, 1.0 / 3.0, -0.5] {
            let rule = GaussLaguerre::new(64, alpha);
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            // int t^k t^a e^{-t} / Gamma(a+1) = (a+1)...(a+k)
            for k in [1usize, 5, 20, 60, 100] {
                let exact: f64 = (1..=k).map(|j| alpha + j as f64).product();
                let got = rule.integrate(|x| x.powi(k as i32));
                assert!(((got - exact) / exact).abs() < 1e-10, "alpha {alpha} k {k}");
            }
        }
    }

    #[test]
    fn agrees_with_exact_moments() {
        let w = build_weight(3, rat(1, 2), vec![q(1, 1), "1+1*i".parse().unwrap()]).unwrap();
        let rule = rule_for(&w);
        for k in [0, 3, 17, 40] {
            assert!(relative_error(&moment_c64(&rule, &w, k), &w.moment(k)) < 1e-8);
        }
        let p = MatPoly::t_pow(3, 2);
        let exact = inner_product(&p, &MatPoly::identity(3), &w).unwrap();
        assert!(relative_error(&inner_product_c64(&rule, &p, &MatPoly::identity(3), &w), &exact) < 1e-8);
    }
}
