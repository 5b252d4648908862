//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use mop_core::diffops::{make_l21, make_l21_for, make_l22_for, make_l2_general_u, make_l31, make_l32, DiffOperator};
use mop_core::explorer::{dimension_table_draws, draw_weights, ExplorerOptions};
use mop_core::numeric::{inner_product_c64, moment_c64, relative_error, rule_for};
use mop_core::orthopoly::{
    lambda_n, monic_ops, norm_matrix, recurrence_matrices, recurrence_sequence, rodrigues_sequence,
};
use mop_core::par::Execution;
use mop_core::relations::{
    cubic_leading, exceptional_alpha_report, l_basis_eigenvalues, verify_fact_relation, verify_relations,
};
use mop_core::scalar::{rat, ExactScalar};
use mop_core::symmetry::{check_symmetry, check_symmetry_moments, Verdict};
use mop_core::weights::{
    build_weight, build_weight_moduli, build_weight_u, constrained_nu, solve_modulus_constraints, WeightSpec,
};
use mop_core::{ExactMatrix, MatPoly};
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 2024;
const DRAWS: usize = 2;
const K_MAX: usize = 8;

fn gs(s: &str) -> ExactScalar {
    s.parse().expect("valid scalar")
}

fn fail_on<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{what}: {e}")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// N = 2 parameters shared by the structural criteria.
fn pairs() -> Vec<(BigRational, ExactScalar)> {
    vec![
        (rat(1, 2), gs("1+1*i")),
        (rat(1, 3), gs("2")),
        (rat(0, 1), gs("1/2+1/3*i")),
    ]
}

fn constrained(n: usize) -> WeightSpec {
    match n {
        3 => build_weight(3, rat(1, 2), constrained_nu(3, &rat(2, 1)).expect("2 is admissible")).expect("weight"),
        _ => {
            let m = solve_modulus_constraints(n, &rat(3, 1)).expect("moduli");
            build_weight_moduli(n, rat(1, 3), &m).expect("weight")
        }
    }
}

fn format_row(row: &[Option<usize>]) -> String {
    row.iter()
        .map(|v| v.map_or("?".to_string(), |d| d.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

fn dimension_tables() -> Outcome {
    let expected: [(usize, [usize; 9]); 3] = [
        (2, [1, 0, 2, 2, 2, 2, 2, 2, 2]),
        (3, [1, 0, 2, 0, 3, 4, 5, 6, 16]),
        (4, [1, 0, 2, 0, 3, 0, 4, 6, 9]),
    ];
    let opts = ExplorerOptions::default();
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, want) in expected {
        let t = dimension_table_draws(n, K_MAX, DRAWS, SEED, &opts).map_err(fail_on("dims"))?;
        let got = t.consensus_row();
        let matches = got.iter().zip(want).all(|(g, w)| *g == Some(w));
        ok &= matches;
        notes.push(format!(
            "N={n} got ({}) want ({})",
            format_row(&got),
            want.map(|d| d.to_string()).join(",")
        ));
    }
    let detail = notes.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn symmetric_both_ways(label: &str, l: &DiffOperator, w: &WeightSpec) -> Result<(), String> {
    let v = check_symmetry(l, w).map_err(fail_on(label))?.verdict;
    ensure(v == Verdict::Symmetric, || format!("{label}: verdict {v:?}"))?;
    let m = check_symmetry_moments(l, w, l.order() + 8).map_err(fail_on(label))?;
    ensure(m, || format!("{label}: moment criterion disagrees"))
}

fn symmetry_suite() -> Outcome {
    let mut count = 0;
    let nu4 = vec![gs("1"), gs("1+1*i"), gs("2")];
    for (n, w) in [
        (
            2,
            build_weight(2, rat(1, 2), vec![gs("1+1*i")]).map_err(fail_on("weight"))?,
        ),
        (
            3,
            build_weight(3, rat(1, 3), vec![gs("1"), gs("3/2")]).map_err(fail_on("weight"))?,
        ),
        (4, build_weight(4, rat(2, 5), nu4).map_err(fail_on("weight"))?),
    ] {
        let l = make_l21(n, w.alpha(), w.nu()).map_err(fail_on("l21"))?;
        symmetric_both_ways(&format!("l21 N={n}"), &l, &w)?;
        count += 1;
    }
    for n in [2, 3, 4] {
        let w = if n == 2 {
            build_weight(2, rat(1, 2), vec![gs("1+1*i")]).map_err(fail_on("weight"))?
        } else {
            constrained(n)
        };
        let l = make_l22_for(&w).map_err(fail_on("l22"))?;
        symmetric_both_ways(&format!("l22 N={n}"), &l, &w)?;
        count += 1;
    }
    for (alpha, a) in pairs() {
        let w = build_weight(2, alpha.clone(), vec![a.clone()]).map_err(fail_on("weight"))?;
        symmetric_both_ways("l31", &make_l31(&alpha, &a).map_err(fail_on("l31"))?, &w)?;
        let il32 = make_l32(&alpha, &a).map_err(fail_on("l32"))?.scale(&ExactScalar::i());
        symmetric_both_ways("i l32", &il32, &w)?;
        count += 2;
    }
    for u in ["0", "1/2", "1"] {
        let (alpha, v) = (rat(1, 2), gs("1+1*i"));
        let w = build_weight_u(alpha.clone(), gs(u), v.clone()).map_err(fail_on("weight"))?;
        let l = make_l2_general_u(&alpha, &gs(u), &v).map_err(fail_on("l2(u)"))?;
        symmetric_both_ways(&format!("l2 u={u}"), &l, &w)?;
        count += 1;
    }
    Ok(format!("{count} operators symmetric under both criteria"))
}

fn commutation_and_fact() -> Outcome {
    for n in [2, 3, 4] {
        let w = if n == 2 {
            build_weight(2, rat(1, 2), vec![gs("1+1*i")]).map_err(fail_on("weight"))?
        } else {
            constrained(n)
        };
        let l21 = make_l21_for(&w).map_err(fail_on("l21"))?;
        let l22 = make_l22_for(&w).map_err(fail_on("l22"))?;
        let c = l21.commutator(&l22).map_err(fail_on("commutator"))?;
        ensure(c.is_zero(), || format!("[l21, l22] != 0 for N={n}"))?;
        let r = verify_fact_relation(&w, n <= 3).map_err(fail_on("fact"))?;
        ensure(r.holds(), || format!("product relation fails for N={n}"))?;
    }
    Ok("commutators vanish for N=2,3,4; product is the zero operator for N=2,3 and zero on eigenvalues (n<=12) for N=4".into())
}

fn rodrigues_eigenvalues(n: usize, alpha: &BigRational, a: &ExactScalar) -> Result<[ExactMatrix; 4], String> {
    let z = ExactScalar::zero;
    let ni = ExactScalar::from_int(n as i64);
    let s_inv = ExactScalar::real(a.norm_sqr()).inv().ok_or("a = 0")?;
    let l21 = ExactMatrix::from_rows(vec![vec![-(&ni + &ExactScalar::one()), z()], vec![z(), -&ni]]);
    let l22 = ExactMatrix::from_rows(vec![vec![s_inv, z()], vec![z(), -&ni]]);
    let [_, _, l31, l32] = l_basis_eigenvalues(n, alpha, a).map_err(fail_on("eigenvalues"))?;
    Ok([l21, l22, l31, l32])
}

fn eigenfunction_identities() -> Outcome {
    const N_MAX: usize = 10;
    for (alpha, a) in pairs() {
        let nu = std::slice::from_ref(&a);
        let w = build_weight(2, alpha.clone(), vec![a.clone()]).map_err(fail_on("weight"))?;
        let ops = [
            make_l21(2, &alpha, nu).map_err(fail_on("l21"))?,
            make_l22_for(&w).map_err(fail_on("l22"))?,
            make_l31(&alpha, &a).map_err(fail_on("l31"))?,
            make_l32(&alpha, &a).map_err(fail_on("l32"))?,
        ];
        let rod = rodrigues_sequence(N_MAX + 1, &alpha, &a, Execution::default()).map_err(fail_on("rodrigues"))?;
        let monic = monic_ops(&w, N_MAX + 1).map_err(fail_on("monic"))?;
        for (n, p) in rod.iter().enumerate() {
            let gammas = rodrigues_eigenvalues(n, &alpha, &a)?;
            let lam = lambda_n(n, &alpha, &a);
            let lam_inv = lam.inverse().ok_or("singular leading coefficient")?;
            for (l, g) in ops.iter().zip(&gammas) {
                let lp = l.apply(p).map_err(fail_on("apply"))?;
                ensure(lp == p.left_mul(g), || {
                    format!("Rodrigues eigenvalue at n={n}, order {}", l.order())
                })?;
                let g_monic = lam_inv.mul(g).mul(&lam);
                ensure(l.monic_eigenvalue(n) == g_monic, || {
                    format!("conjugated eigenvalue at n={n}")
                })?;
                let q = monic.get(n);
                ensure(l.apply(q).map_err(fail_on("apply"))? == q.left_mul(&g_monic), || {
                    format!("monic eigenfunction at n={n}")
                })?;
            }
        }
    }
    Ok(format!("4 operators, {} parameter pairs, n<=10", pairs().len()))
}

fn structural_formulas() -> Outcome {
    for (alpha, a) in pairs() {
        let w = build_weight(2, alpha.clone(), vec![a.clone()]).map_err(fail_on("weight"))?;
        let rod = rodrigues_sequence(10, &alpha, &a, Execution::default()).map_err(fail_on("rodrigues"))?;
        let rec = recurrence_sequence(9, &alpha, &a).map_err(fail_on("recurrence"))?;
        let monic = monic_ops(&w, 9).map_err(fail_on("monic"))?;
        for n in 0..=8 {
            let via_gs = monic.get(n).left_mul(&lambda_n(n, &alpha, &a));
            ensure(rod[n] == via_gs, || format!("Rodrigues vs Gram-Schmidt at n={n}"))?;
            ensure(rod[n] == rec[n], || format!("Rodrigues vs recurrence at n={n}"))?;
            let r = recurrence_matrices(n, &alpha, &a).map_err(fail_on("recurrence"))?;
            let prev = if n == 0 { MatPoly::zero(2) } else { rod[n - 1].clone() };
            let residual = rod[n]
                .shift(1)
                .sub(&rod[n + 1].left_mul(&r.d))
                .sub(&rod[n].left_mul(&r.e))
                .sub(&prev.left_mul(&r.f));
            ensure(residual.is_zero(), || format!("recurrence residual at n={n}"))?;
        }
        let mu = w.moments(16);
        for (n, p) in rod.iter().enumerate().take(7) {
            let h = mu.inner(p, p).map_err(fail_on("inner"))?;
            ensure(h == norm_matrix(n, &alpha, &a), || format!("norm at n={n}"))?;
        }
    }
    Ok(format!(
        "{} parameter pairs: sequences agree for n<=8, norms for n<=6",
        pairs().len()
    ))
}

fn algebra_relations() -> Outcome {
    let mut relations = 0;
    for (alpha, a) in pairs() {
        let r = verify_relations(&alpha, &a, Execution::default()).map_err(fail_on("relations"))?;
        ensure(!r.exceptional, || "test pair is exceptional".into())?;
        let failed: Vec<&str> = r
            .relations
            .iter()
            .filter(|c| !(c.holds && c.holds_on_eigenvalues))
            .map(|c| c.name.as_str())
            .collect();
        ensure(failed.is_empty(), || format!("alpha={alpha}, a={a}: {failed:?}"))?;
        relations = r.relations.len();
    }
    // |a|^2 (2 + alpha) = 1 and |a|^2 (alpha - 1) = 1 on the first two
    for (alpha, a) in [
        (rat(2, 1), gs("1/2")),
        (rat(2, 1), gs("1")),
        (rat(3, 1), gs("1/2+1/2*i")),
    ] {
        let r = exceptional_alpha_report(&alpha, &a).map_err(fail_on("exceptional"))?;
        ensure(r.exceptional, || format!("alpha={alpha}, a={a} should be exceptional"))?;
        ensure(r.rhs_vanishes == Some(true), || {
            format!("cubic right side survives at alpha={alpha}, a={a}")
        })?;
    }
    for (alpha, a) in pairs().into_iter().chain([(rat(2, 1), gs("2")), (rat(1, 1), gs("1"))]) {
        ensure(!cubic_leading(&alpha, &a).is_zero(), || {
            format!("alpha={alpha}, a={a} flagged exceptional")
        })?;
    }
    Ok(format!(
        "{relations} identities hold for {} pairs; cubic leading term vanishes exactly on the exceptional set",
        pairs().len()
    ))
}

/// Every weight whose moments or inner products feed the exact criteria,
/// with the largest polynomial degree used against it.
fn fixtures() -> Result<Vec<(String, WeightSpec, usize)>, String> {
    let mut out = Vec::new();
    for (alpha, a) in pairs() {
        let w = build_weight(2, alpha.clone(), vec![a.clone()]).map_err(fail_on("weight"))?;
        out.push((format!("N=2 alpha={alpha} a={a}"), w, 10));
        let wu = build_weight_u(alpha.clone(), gs("1"), a.clone()).map_err(fail_on("weight"))?;
        out.push((format!("N=2 u=1 alpha={alpha}"), wu, 10));
    }
    for n in [3, 4] {
        out.push((format!("N={n} constrained"), constrained(n), 12));
    }
    for n in [2, 3, 4] {
        for (i, w) in draw_weights(n, DRAWS, SEED)
            .map_err(fail_on("draws"))?
            .into_iter()
            .enumerate()
        {
            out.push((format!("N={n} draw {i}"), w, 2 * K_MAX + 2));
        }
    }
    Ok(out)
}

fn cross_validation() -> Outcome {
    const TOL: f64 = 1e-8;
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for (label, w, deg) in fixtures()? {
        let rule = rule_for(&w);
        let mu = w.moments(2 * deg + 1);
        for k in 0..=2 * deg {
            let e = relative_error(&moment_c64(&rule, &w, k), mu.get(k));
            worst = worst.max(e);
            ensure(e < TOL, || format!("{label}: moment {k} off by {e:e}"))?;
            checked += 1;
        }
        let seq = monic_ops(&w, deg + 1).map_err(fail_on("monic"))?;
        for n in 0..=deg {
            let p = seq.get(n);
            let e = relative_error(&inner_product_c64(&rule, p, p, &w), &seq.norms()[n]);
            worst = worst.max(e);
            ensure(e < TOL, || format!("{label}: norm {n} off by {e:e}"))?;
            if n > 0 {
                let q = seq.get(n - 1);
                let zero = ExactMatrix::zeros(w.n(), w.n());
                let e = relative_error(&inner_product_c64(&rule, p, q, &w), &zero);
                worst = worst.max(e);
                ensure(e < TOL, || format!("{label}: <P{n}, P{}> off by {e:e}", n - 1))?;
            }
            checked += 2;
        }
    }
    Ok(format!(
        "{checked} exact values within {TOL:e}; worst relative error {worst:.2e}"
    ))
}

fn irreducibility() -> Outcome {
    let mut dims = Vec::new();
    for w in [
        build_weight(2, rat(1, 2), vec![gs("1+1*i")]).map_err(fail_on("weight"))?,
        constrained(3),
        build_weight(3, rat(0, 1), vec![gs("1"), gs("1")]).map_err(fail_on("weight"))?,
        constrained(4),
        build_weight(4, rat(2, 5), vec![gs("1"), gs("1+1*i"), gs("2")]).map_err(fail_on("weight"))?,
    ] {
        let d = w.moments(11).commutant_dimension();
        ensure(d == 1, || format!("N={} commutant dimension {d}", w.n()))?;
        dims.push(d);
    }
    Ok(format!("commutant dimension 1 for {} weights (N=2,3,4)", dims.len()))
}

fn main() -> ExitCode {
    mop_core::par::init_from_env();
    let criteria: [Criterion; 8] = [
        ("dimension tables", dimension_tables),
        ("symmetry suite", symmetry_suite),
        ("commutation and product relation", commutation_and_fact),
        ("eigenfunction identities", eigenfunction_identities),
        ("structural formulas", structural_formulas),
        ("algebra relations", algebra_relations),
        ("quadrature cross-validation", cross_validation),
        ("irreducibility", irreducibility),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
