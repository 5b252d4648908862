//! Order-by-order computation of the algebra of differential operators
//! having the monic orthogonal polynomials of a weight as eigenfunctions.
//!
//! Unknowns are the entries of the coefficients `A_i` (with `deg A_i <= i`),
//! ordered lexicographically by `(i, row, col, power)`. Degree `n`
//! contributes the equations `l(P_n) - Gamma_n P_n = 0` below `t^n`, where
//! `Gamma_n = sum_i [n]_i (t^i coefficient of A_i)` is itself linear in the
//! unknowns. The solution space is tracked incrementally as `n` grows and
//! reported once it has been constant over a window of `k + 2` degrees.
//!
//! Large systems are solved modulo several primes `p = 3 mod 4` (so that
//! `Z[i]/p` is a field), lifted by Chinese remaindering and rational
//! reconstruction, and then certified exactly: every lifted operator is
//! checked against every imposed degree. Since the rank over the Gaussian
//! rationals is at least the rank modulo `p`, that many verified,
//! independent operators pin the exact dimension.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diffops::DiffOperator;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{ExactMatrix, Matrix, NullspaceTracker, SparseColumns};
use crate::matpoly::{falling, MatPoly};
use crate::modp::{rational_reconstruct, run_with_prime, Crt, Gf, PrimeTask, PRIMES};
use crate::orthopoly::{monic_ops, MonicOPSequence};
use crate::par::{map_range, map_slice, Execution};
use crate::relations::{make_l_basis, Relation};
use crate::scalar::{rat, ExactScalar};
use crate::weights::{build_weight, build_weight_moduli, gaussian_with_norm, solve_modulus_constraints, WeightSpec};

/// Variable layout for operators of order `<= k` on `N x N` matrices.
#[derive(Clone, Copy, Debug)]
pub struct Layout {
    pub n: usize,
    pub k: usize,
}

impl Layout {
    pub fn nvars(&self) -> usize {
        self.n * self.n * (self.k + 1) * (self.k + 2) / 2
    }

    fn offset(&self, i: usize) -> usize {
        self.n * self.n * i * (i + 1) / 2
    }

    /// Index of the `t^s` coefficient of `(A_i)_{r,c}`.
    pub fn index(&self, i: usize, r: usize, c: usize, s: usize) -> usize {
        self.offset(i) + (r * self.n + c) * (i + 1) + s
    }

    pub fn to_operator(&self, v: &[ExactScalar]) -> DiffOperator {
        let n = self.n;
        let coeffs = (0..=self.k)
            .map(|i| {
                let mats = (0..=i)
                    .map(|s| ExactMatrix::from_fn(n, n, |r, c| v[self.index(i, r, c, s)].clone()))
                    .collect();
                MatPoly::from_coeffs(n, mats)
            })
            .collect();
        DiffOperator::new(n, coeffs)
    }

    pub fn to_vector(&self, l: &DiffOperator) -> Result<Vec<ExactScalar>> {
        if l.dim() != self.n || l.order() > self.k || !l.has_bounded_degrees() {
            return Err(Error::Invalid("operator does not fit the layout".into()));
        }
        let mut v = vec![ExactScalar::zero(); self.nvars()];
        for i in 0..=l.order() {
            let a = l.coeff(i);
            for s in 0..=i {
                let m = a.coeff(s);
                for r in 0..self.n {
                    for c in 0..self.n {
                        v[self.index(i, r, c, s)] = m[(r, c)].clone();
                    }
                }
            }
        }
        Ok(v)
    }
}

/// Equations contributed by the monic polynomial of degree `n`, given by
/// its coefficient matrices `p[0..=n]`: one row per entry of each power
/// `t^0 .. t^{n-1}` of the residual.
pub fn degree_constraints<F: Field>(layout: &Layout, n: usize, p: &[Matrix<F>]) -> SparseColumns<F> {
    let dim = layout.n;
    let nn = dim * dim;
    let mut cols = SparseColumns::new(nn * n, layout.nvars());
    for i in 0..=layout.k {
        let gamma_factor = falling(n, i);
        for r in 0..dim {
            for c in 0..dim {
                for s in 0..=i {
                    let var = layout.index(i, r, c, s);
                    // P^{(i)} E_{rc} t^s
                    for (m, cm) in p.iter().enumerate().skip(i) {
                        let f = falling(m, i);
                        let power = m - i + s;
                        if f == 0 || power >= n {
                            continue;
                        }
                        let f = F::from_i64(f);
                        for x in 0..dim {
                            let e = &cm[(x, r)];
                            if !e.is_zero() {
                                cols.push(var, power * nn + x * dim + c, f.mul_ref(e));
                            }
                        }
                    }
                    // -[n]_i E_{rc} P
                    if s == i && gamma_factor != 0 {
                        let g = F::from_i64(-gamma_factor);
                        for (m, cm) in p.iter().enumerate().take(n) {
                            for y in 0..dim {
                                let e = &cm[(c, y)];
                                if !e.is_zero() {
                                    cols.push(var, m * nn + r * dim + y, g.mul_ref(e));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    cols
}

/// Monic polynomials of a weight, generated on demand and shared between
/// concurrent searches.
pub struct MonicCache {
    seq: Mutex<MonicOPSequence>,
}

impl MonicCache {
    pub fn new(w: &WeightSpec) -> Result<Self> {
        Ok(Self {
            seq: Mutex::new(monic_ops(w, 1)?),
        })
    }

    pub fn weight(&self) -> WeightSpec {
        self.seq.lock().expect("cache lock").weight().clone()
    }

    pub fn get(&self, n: usize) -> Result<MatPoly> {
        let mut seq = self.seq.lock().expect("cache lock");
        seq.extend_to(n + 1)?;
        Ok(seq.get(n).clone())
    }

    pub fn norm(&self, n: usize) -> Result<ExactMatrix> {
        let mut seq = self.seq.lock().expect("cache lock");
        seq.extend_to(n + 1)?;
        Ok(seq.norms()[n].clone())
    }
}

/// Result of the stabilization loop over one field.
#[derive(Clone, Debug)]
struct Solved<F> {
    trend: Vec<usize>,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

fn window_reached(trend: &[usize], k: usize) -> bool {
    // trend[j] is the dimension after imposing degree j + 1
    let n = trend.len();
    let w = k + 2;
    if n < w {
        return false;
    }
    let n0 = n + 1 - w;
    n0 >= k.max(1) && trend[n - w..].iter().all(|&d| d == trend[n - 1])
}

fn solve_generic<F: Field>(
    layout: &Layout,
    cache: &MonicCache,
    budget: usize,
    conv: impl Fn(&ExactScalar) -> Option<F>,
) -> Result<Option<Solved<F>>> {
    let mut tracker = NullspaceTracker::<F>::new(layout.nvars());
    let mut trend = Vec::new();
    for n in 1..=budget {
        let p = cache.get(n)?;
        let mut pc = Vec::with_capacity(n + 1);
        for m in 0..=n {
            match p.coeff(m).try_map(&conv) {
                Some(x) => pc.push(x),
                None => return Ok(None),
            }
        }
        tracker.impose(&degree_constraints(layout, n, &pc));
        let d = tracker.dim();
        debug_assert!(trend.last().is_none_or(|&prev| d <= prev), "dimension grew");
        trend.push(d);
        if window_reached(&trend, layout.k) {
            let (rows, pivots) = tracker.echelon_basis();
            return Ok(Some(Solved { trend, rows, pivots }));
        }
    }
    Err(Error::NotStabilized {
        order: layout.k,
        budget,
        trend,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Exact below a size threshold, modular with certification above it.
    #[default]
    Auto,
    Exact,
    Modular,
}

#[derive(Clone, Copy, Debug)]
pub struct ExplorerOptions {
    pub engine: Engine,
    pub exec: Execution,
    /// Largest eigenfunction degree to impose; defaults to `4k + 12`.
    pub budget: Option<usize>,
    /// Primes solved per round of the modular engine.
    pub prime_batch: usize,
}

impl Default for ExplorerOptions {
    fn default() -> Self {
        Self {
            engine: Engine::Auto,
            exec: Execution::default(),
            budget: None,
            prime_batch: 4,
        }
    }
}

const EXACT_THRESHOLD: usize = 60;

#[derive(Clone, Debug, Serialize)]
pub struct OperatorSpaceReport {
    pub order: usize,
    pub cumulative_dim: usize,
    /// Rank of the order-`k` coefficients over the space: the number of
    /// new operators modulo lower order.
    pub new_dim: usize,
    #[serde(skip)]
    pub basis: Vec<DiffOperator>,
    /// Highest eigenfunction degree imposed.
    pub degrees_used: usize,
    pub stabilization_window: usize,
    /// Dimension after each imposed degree `1..=degrees_used`.
    pub trend: Vec<usize>,
    pub engine: Engine,
    /// Primes whose results were combined (modular engine only).
    pub primes_used: usize,
}

struct ModTask<'a> {
    layout: Layout,
    cache: &'a MonicCache,
    budget: usize,
}

type ModSolved = Result<Option<Solved<(u64, u64)>>>;

impl PrimeTask for ModTask<'_> {
    type Output = ModSolved;
    fn run<const P: u64>(&self) -> ModSolved {
        let solved = solve_generic::<Gf<P>>(&self.layout, self.cache, self.budget, Gf::<P>::from_exact)?;
        Ok(solved.map(|s| Solved {
            trend: s.trend,
            rows: s.rows.iter().map(|r| r.iter().map(Gf::parts).collect()).collect(),
            pivots: s.pivots,
        }))
    }
}

fn lift(results: &[(u64, &Solved<(u64, u64)>)]) -> Option<Vec<Vec<ExactScalar>>> {
    let first = results[0].1;
    let mut out = Vec::with_capacity(first.rows.len());
    for (ri, row) in first.rows.iter().enumerate() {
        let mut v = Vec::with_capacity(row.len());
        for ci in 0..row.len() {
            let (mut cre, mut cim) = (Crt::default(), Crt::default());
            for (p, s) in results {
                let (re, im) = s.rows[ri][ci];
                cre.push(re, *p);
                cim.push(im, *p);
            }
            let re = rational_reconstruct(&cre.value, &cre.modulus)?;
            let im = rational_reconstruct(&cim.value, &cim.modulus)?;
            v.push(ExactScalar::new(re, im));
        }
        out.push(v);
    }
    Some(out)
}

/// Every operator satisfies `l(P_n) = Gamma_n P_n` for `n <= upto`.
fn certify(ops: &[DiffOperator], cache: &MonicCache, upto: usize, exec: Execution) -> Result<bool> {
    let polys: Vec<MatPoly> = (0..=upto).map(|n| cache.get(n)).collect::<Result<_>>()?;
    let ok = map_slice(exec, ops, |l| {
        polys
            .iter()
            .enumerate()
            .all(|(n, p)| l.apply(p).is_ok_and(|lp| lp == p.left_mul(&l.monic_eigenvalue(n))))
    });
    Ok(ok.into_iter().all(|b| b))
}

fn new_dim_of(layout: &Layout, basis: &[Vec<ExactScalar>]) -> usize {
    let k = layout.k;
    let lo = layout.index(k, 0, 0, 0);
    if basis.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(basis.iter().map(|v| v[lo..].to_vec()).collect()).rank()
}

fn report(
    layout: Layout,
    rows: Vec<Vec<ExactScalar>>,
    trend: Vec<usize>,
    engine: Engine,
    primes_used: usize,
) -> OperatorSpaceReport {
    OperatorSpaceReport {
        order: layout.k,
        cumulative_dim: rows.len(),
        new_dim: new_dim_of(&layout, &rows),
        basis: rows.iter().map(|v| layout.to_operator(v)).collect(),
        degrees_used: trend.len(),
        stabilization_window: layout.k + 2,
        trend,
        engine,
        primes_used,
    }
}

fn find_exact(layout: Layout, cache: &MonicCache, budget: usize) -> Result<OperatorSpaceReport> {
    let solved = solve_generic::<ExactScalar>(&layout, cache, budget, |x| Some(x.clone()))?
        .expect("exact conversion never fails");
    Ok(report(layout, solved.rows, solved.trend, Engine::Exact, 0))
}

fn find_modular(
    layout: Layout,
    cache: &MonicCache,
    budget: usize,
    opts: &ExplorerOptions,
) -> Result<OperatorSpaceReport> {
    let task = ModTask { layout, cache, budget };
    let batch = opts.prime_batch.max(1);
    let mut done: Vec<(u64, Solved<(u64, u64)>)> = Vec::new();
    let mut next = 0;
    while next < PRIMES.len() {
        let end = (next + batch).min(PRIMES.len());
        let fresh = map_range(opts.exec, next..end, |i| (PRIMES[i], run_with_prime(i, &task)));
        next = end;
        for (p, r) in fresh {
            if let Some(s) = r? {
                done.push((p, s));
            }
        }
        if done.is_empty() {
            continue;
        }
        // Primes that see a larger space or different pivots are unlucky;
        // keep the most common outcome.
        let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for (idx, (_, s)) in done.iter().enumerate() {
            groups.entry((s.trend.clone(), s.pivots.clone())).or_default().push(idx);
        }
        let members = groups.values().max_by_key(|v| v.len()).expect("nonempty").clone();
        let chosen: Vec<(u64, &Solved<(u64, u64)>)> = members.iter().map(|&i| (done[i].0, &done[i].1)).collect();
        let Some(rows) = lift(&chosen) else { continue };
        let trend = chosen[0].1.trend.clone();
        let ops: Vec<DiffOperator> = rows.iter().map(|v| layout.to_operator(v)).collect();
        if certify(&ops, cache, trend.len(), opts.exec)? {
            return Ok(report(layout, rows, trend, Engine::Modular, chosen.len()));
        }
    }
    Err(Error::NotCertified(format!(
        "order {} did not lift after {} primes",
        layout.k,
        PRIMES.len()
    )))
}

/// The operators of order `<= k` having the weight's monic polynomials as
/// eigenfunctions, with a deterministic reduced-echelon basis.
pub fn find_operator_space(w: &WeightSpec, k: usize, opts: &ExplorerOptions) -> Result<OperatorSpaceReport> {
    find_operator_space_cached(&MonicCache::new(w)?, k, opts)
}

pub fn find_operator_space_cached(cache: &MonicCache, k: usize, opts: &ExplorerOptions) -> Result<OperatorSpaceReport> {
    let layout = Layout {
        n: cache.weight().n(),
        k,
    };
    let budget = opts.budget.unwrap_or(4 * k + 12);
    let exact = match opts.engine {
        Engine::Exact => true,
        Engine::Modular => false,
        Engine::Auto => layout.nvars() <= EXACT_THRESHOLD,
    };
    if exact {
        find_exact(layout, cache, budget)
    } else {
        find_modular(layout, cache, budget, opts)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub order: usize,
    pub new_dim: usize,
    pub cumulative_dim: usize,
    pub leading_rank: usize,
    pub degrees_used: usize,
    pub stabilization_window: usize,
    pub engine: Engine,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionTable {
    pub params: DrawParams,
    pub rows: Vec<DimensionRow>,
}

impl DimensionTable {
    pub fn new_dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.new_dim).collect()
    }
}

/// New operators per order `0..=k_max`: `new_dim(k) = cumulative(k) - cumulative(k-1)`.
/// Orders run concurrently against one shared polynomial cache.
pub fn dimension_table(w: &WeightSpec, k_max: usize, opts: &ExplorerOptions) -> Result<DimensionTable> {
    let cache = MonicCache::new(w)?;
    // warm the cache sequentially so concurrent orders do not queue on it
    cache.get(2 * k_max + 4)?;
    let reports = map_range(opts.exec, 0..k_max + 1, |k| find_operator_space_cached(&cache, k, opts));
    let mut rows = Vec::with_capacity(reports.len());
    let mut prev = 0;
    for r in reports {
        let r = r?;
        rows.push(DimensionRow {
            order: r.order,
            new_dim: r.cumulative_dim - prev.min(r.cumulative_dim),
            cumulative_dim: r.cumulative_dim,
            leading_rank: r.new_dim,
            degrees_used: r.degrees_used,
            stabilization_window: r.stabilization_window,
            engine: r.engine,
        });
        prev = r.cumulative_dim;
    }
    Ok(DimensionTable {
        params: DrawParams::of(w),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrawParams {
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: String,
    pub nu: Vec<ExactScalar>,
    /// Diagonal gauge, present when `nu` has no Gaussian rational form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<Vec<String>>,
    pub nu_moduli_sq: Vec<String>,
    pub constraints_hold: bool,
}

impl DrawParams {
    pub fn of(w: &WeightSpec) -> Self {
        Self {
            n: w.n(),
            alpha: w.alpha().to_string(),
            nu: w.nu().to_vec(),
            scale: (!w.is_canonical()).then(|| w.scale().iter().map(ToString::to_string).collect()),
            nu_moduli_sq: w.nu_moduli_sq().iter().map(ToString::to_string).collect(),
            constraints_hold: w.constraints().holds(),
        }
    }
}

/// `alpha` values used for generic draws.
pub fn draw_alphas() -> Vec<BigRational> {
    vec![rat(1, 3), rat(1, 2), rat(2, 5)]
}

/// Values of `|nu_{N-1}|^2` used for generic draws.
pub fn draw_last_moduli() -> Vec<BigRational> {
    vec![
        rat(1, 2),
        rat(2, 3),
        rat(1, 1),
        rat(3, 2),
        rat(2, 1),
        rat(5, 2),
        rat(3, 1),
        rat(8, 1),
    ]
}

/// A constrained weight with `|nu_{N-1}|^2 = r`: Gaussian `nu` times the
/// given phases when every modulus is a sum of two squares, otherwise the
/// congruent gauged form.
pub fn constrained_weight(n: usize, alpha: BigRational, r: &BigRational, phase: &[ExactScalar]) -> Result<WeightSpec> {
    let moduli = solve_modulus_constraints(n, r)?;
    match moduli.iter().map(gaussian_with_norm).collect::<Option<Vec<_>>>() {
        Some(nu) => {
            let nu = nu.iter().zip(phase.iter().cycle()).map(|(v, p)| v * p).collect();
            build_weight(n, alpha, nu)
        }
        None => build_weight_moduli(n, alpha, &moduli),
    }
}

fn phases() -> Vec<ExactScalar> {
    vec![
        ExactScalar::one(),
        ExactScalar::i(),
        ExactScalar::new(rat(3, 5), rat(4, 5)),
        ExactScalar::new(rat(5, 13), rat(-12, 13)),
    ]
}

/// Seeded weights with constrained, generic-looking parameters.
pub fn draw_weights(n: usize, draws: usize, seed: u64) -> Result<Vec<WeightSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas = draw_alphas();
    let moduli = draw_last_moduli();
    let ph = phases();
    let mut out: Vec<WeightSpec> = Vec::with_capacity(draws);
    let mut attempts = 0;
    while out.len() < draws {
        attempts += 1;
        if attempts > 1000 {
            return Err(Error::Invalid("could not draw distinct parameters".into()));
        }
        let alpha = alphas.choose(&mut rng).expect("nonempty").clone();
        let w = if n >= 2 {
            let r = moduli.choose(&mut rng).expect("nonempty");
            let phase: Vec<ExactScalar> = (1..n).map(|_| ph.choose(&mut rng).expect("nonempty").clone()).collect();
            constrained_weight(n, alpha, r, &phase)?
        } else {
            build_weight(n, alpha, Vec::new())?
        };
        if !out
            .iter()
            .any(|o| o.alpha() == w.alpha() && o.nu_moduli_sq() == w.nu_moduli_sq())
        {
            out.push(w);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsensusEntry {
    pub order: usize,
    /// Value agreed on by at least two draws, if any.
    pub new_dim: Option<usize>,
    pub values: Vec<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DrawnTable {
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub tables: Vec<DimensionTable>,
    pub consensus: Vec<ConsensusEntry>,
}

impl DrawnTable {
    pub fn consensus_row(&self) -> Vec<Option<usize>> {
        self.consensus.iter().map(|c| c.new_dim).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("table serializes");
        v["schema"] = "mop.dims.v1".into();
        v
    }
}

/// Dimension tables for several seeded parameter draws and their
/// per-order consensus. Disagreements are reported, never resolved.
pub fn dimension_table_draws(
    n: usize,
    k_max: usize,
    draws: usize,
    seed: u64,
    opts: &ExplorerOptions,
) -> Result<DrawnTable> {
    let ws = draw_weights(n, draws.max(1), seed)?;
    let tables: Vec<DimensionTable> = map_slice(opts.exec, &ws, |w| dimension_table(w, k_max, opts))
        .into_iter()
        .collect::<Result<_>>()?;
    let consensus = (0..=k_max)
        .map(|k| {
            let values: Vec<usize> = tables.iter().map(|t| t.rows[k].new_dim).collect();
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for v in &values {
                *counts.entry(*v).or_default() += 1;
            }
            let best = counts.iter().max_by_key(|(_, c)| **c).map(|(v, c)| (*v, *c));
            ConsensusEntry {
                order: k,
                new_dim: best.filter(|(_, c)| *c >= 2 || values.len() == 1).map(|(v, _)| v),
                agree: counts.len() == 1,
                values,
            }
        })
        .collect();
    Ok(DrawnTable {
        n,
        seed,
        tables,
        consensus,
    })
}

/// Whether `candidates` are members of the order-`k` space and, together
/// with the order-`(k-1)` space, account for every new operator of order `k`.
pub fn spans_new_operators(
    lower: &OperatorSpaceReport,
    upper: &OperatorSpaceReport,
    candidates: &[DiffOperator],
) -> Result<bool> {
    let layout = Layout {
        n: upper.basis.first().map_or(1, DiffOperator::dim),
        k: upper.order,
    };
    let vec_of = |l: &DiffOperator| layout.to_vector(l);
    let lower_v: Vec<Vec<ExactScalar>> = lower.basis.iter().map(vec_of).collect::<Result<_>>()?;
    let upper_v: Vec<Vec<ExactScalar>> = upper.basis.iter().map(vec_of).collect::<Result<_>>()?;
    let cand_v: Vec<Vec<ExactScalar>> = candidates.iter().map(vec_of).collect::<Result<_>>()?;
    let rank = |rows: Vec<Vec<ExactScalar>>| {
        if rows.is_empty() {
            0
        } else {
            ExactMatrix::from_rows(rows).rank()
        }
    };
    let inside = rank([upper_v.clone(), cand_v.clone()].concat()) == upper_v.len();
    let fills = rank([lower_v.clone(), cand_v].concat()) == upper_v.len();
    Ok(inside && fills && lower_v.len() + candidates.len() == upper_v.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternCheck {
    pub order: usize,
    pub candidates: Vec<String>,
    pub spans: bool,
}

/// Products of `L_1..L_4` proposed as the new operators of orders 4, 5
/// and 7 for N = 2, each checked against the computed spaces.
pub fn basis_patterns() -> Vec<(usize, Vec<Relation>)> {
    let one = ExactScalar::one;
    let word = |name: &str, terms: Vec<(ExactScalar, Vec<usize>)>| Relation::new(name, terms);
    vec![
        (
            4,
            vec![
                word("L1L1", vec![(one(), vec![1, 1])]),
                word("L1L2", vec![(one(), vec![1, 2])]),
            ],
        ),
        (
            5,
            vec![
                word("L1L3+L3L1", vec![(one(), vec![1, 3]), (one(), vec![3, 1])]),
                word("L2L3-L3L2", vec![(one(), vec![2, 3]), (-one(), vec![3, 2])]),
            ],
        ),
        (
            7,
            vec![
                word("L1L1L3-L3L1L1", vec![(one(), vec![1, 1, 3]), (-one(), vec![3, 1, 1])]),
                word("L2L2L3+L3L2L2", vec![(one(), vec![2, 2, 3]), (one(), vec![3, 2, 2])]),
            ],
        ),
    ]
}

pub fn basis_pattern_evidence(
    alpha: &BigRational,
    a: &ExactScalar,
    opts: &ExplorerOptions,
) -> Result<Vec<PatternCheck>> {
    let w = build_weight(2, alpha.clone(), vec![a.clone()])?;
    let cache = MonicCache::new(&w)?;
    let gens = make_l_basis(alpha, a)?.l;
    basis_patterns()
        .into_iter()
        .map(|(k, words)| {
            let lower = find_operator_space_cached(&cache, k - 1, opts)?;
            let upper = find_operator_space_cached(&cache, k, opts)?;
            let ops: Vec<DiffOperator> = words.iter().map(|r| r.evaluate(&gens, 2)).collect();
            Ok(PatternCheck {
                order: k,
                candidates: words.iter().map(|r| r.name.clone()).collect(),
                spans: spans_new_operators(&lower, &upper, &ops)?,
            })
        })
        .collect()
}

/// The adjoint `l^+` of a member of the space, found inside the space from
/// its eigenvalues `H_n Gamma_n^* H_n^{-1}` over the imposed degrees.
pub fn adjoint_in_space(
    l: &DiffOperator,
    space: &OperatorSpaceReport,
    cache: &MonicCache,
) -> Result<Option<DiffOperator>> {
    let n = l.dim();
    let degrees = space.degrees_used;
    // unknown c_j with sum_j c_j Gamma_n(B_j) = H_n Gamma_n(l)^* H_n^{-1}
    let d = space.basis.len();
    let mut rows: Vec<Vec<ExactScalar>> = Vec::new();
    for deg in 0..=degrees {
        let h = cache.norm(deg)?;
        let hinv = h.inverse().ok_or(Error::SingularMomentMatrix(deg))?;
        let target = h.mul(&l.monic_eigenvalue(deg).star()).mul(&hinv);
        let gs: Vec<ExactMatrix> = space.basis.iter().map(|b| b.monic_eigenvalue(deg)).collect();
        for r in 0..n {
            for c in 0..n {
                let mut row: Vec<ExactScalar> = gs.iter().map(|g| g[(r, c)].clone()).collect();
                row.push(-&target[(r, c)]);
                rows.push(row);
            }
        }
    }
    let mut m = ExactMatrix::from_rows(rows);
    let pivots = m.rref();
    if pivots.contains(&d) {
        return Ok(None);
    }
    let mut coeffs = vec![ExactScalar::zero(); d];
    for (ri, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = -&m[(ri, d)];
    }
    let mut adj = DiffOperator::zero(n);
    for (c, b) in coeffs.iter().zip(&space.basis) {
        if !c.is_zero() {
            adj = adj.add(&b.scale(c));
        }
    }
    Ok(Some(adj))
}

/// `l = l_sym + i l_skew` with both parts symmetric: `l_sym = (l + l^+)/2`,
/// `l_skew = (l - l^+)/(2i)`.
pub fn symmetric_split(
    l: &DiffOperator,
    space: &OperatorSpaceReport,
    cache: &MonicCache,
) -> Result<Option<(DiffOperator, DiffOperator)>> {
    let Some(adj) = adjoint_in_space(l, space, cache)? else {
        return Ok(None);
    };
    let half = ExactScalar::from_ratio(1, 2);
    let sym = l.add(&adj).scale(&half);
    let skew = l
        .sub(&adj)
        .scale(&(&half * &ExactScalar::i().inv().expect("i is invertible")));
    Ok(Some((sym, skew)))
}
