use anyhow::Result;
use mop_core::explorer::DrawParams;
use mop_core::orthopoly::{
    lambda_n, monic_ops, norm_matrix, recurrence_matrices, recurrence_sequence, rodrigues_sequence,
};
use mop_core::weights::is_positive_definite;
use mop_core::{MatPoly, WeightSpec};
use serde_json::{json, Value};

use crate::cli::{FamilyArg, Params, PolyCmd};
use crate::commands::ops::family_name;
use crate::report::{check_report, header, matpoly_rows, matrix_text, Check, Report};

/// Whether `(alpha, a)` closed forms apply to this weight.
pub fn closed_form_applies(p: &Params, w: &WeightSpec) -> Result<bool> {
    Ok(w.n() == 2 && w.is_canonical() && p.u()?.is_none_or(|u| u.is_zero()))
}

/// Rodrigues polynomials agree with the rescaled monic ones.
pub fn rodrigues_matches(p: &Params, w: &WeightSpec, count: usize) -> Result<bool> {
    let (alpha, a) = p.pair()?;
    let rod = rodrigues_sequence(count, &alpha, &a, p.exec())?;
    let monic = monic_ops(w, count)?;
    Ok(rod
        .iter()
        .enumerate()
        .all(|(n, r)| *r == monic.get(n).left_mul(&lambda_n(n, &alpha, &a))))
}

fn sequence(p: &Params, w: &WeightSpec, count: usize, family: FamilyArg) -> Result<Vec<MatPoly>> {
    Ok(match family {
        FamilyArg::Monic => monic_ops(w, count)?.polys()[..count].to_vec(),
        FamilyArg::Rodrigues => {
            let (alpha, a) = p.pair()?;
            rodrigues_sequence(count, &alpha, &a, p.exec())?
        }
    })
}

pub fn run(p: &Params, cmd: &PolyCmd) -> Result<Report> {
    let w = p.weight()?;
    let params = serde_json::to_value(DrawParams::of(&w))?;
    Ok(match *cmd {
        PolyCmd::Generate { count, family, check } => {
            let polys = sequence(p, &w, count, family)?;
            let checked = if check {
                Some(match family {
                    FamilyArg::Monic => monic_ops(&w, count)?.verify()?,
                    FamilyArg::Rodrigues => rodrigues_matches(p, &w, count)? && monic_ops(&w, count)?.verify()?,
                })
            } else {
                None
            };
            let json = json!({
                "schema": "mop.polys.v1",
                "family": family_name(family),
                "params": params,
                "polys": polys.iter().enumerate().map(|(n, q)| json!({"n": n, "coeffs": q})).collect::<Vec<_>>(),
                "orthogonality_checked": checked,
            });
            let mut text: String = polys
                .iter()
                .enumerate()
                .map(|(n, q)| format!("P_{n} = {q}\n"))
                .collect();
            if let Some(c) = checked {
                text.push_str(&format!("orthogonality: {c}\n"));
            }
            let mut csv = vec![header(&["n", "row", "col", "power", "coefficient"])];
            for (n, q) in polys.iter().enumerate() {
                csv.extend(matpoly_rows(&n.to_string(), q));
            }
            Report::new(json, text, csv).asserting(checked != Some(false))
        }
        PolyCmd::Check { count } => {
            let seq = monic_ops(&w, count)?;
            let mut checks = vec![
                Check::new("monic orthogonality", seq.verify()?, Value::Null),
                Check::new(
                    "norms positive definite",
                    seq.norms().iter().take(count).all(is_positive_definite),
                    Value::Null,
                ),
            ];
            if closed_form_applies(p, &w)? {
                checks.push(Check::new(
                    "Rodrigues = Lambda_n monic",
                    rodrigues_matches(p, &w, count)?,
                    Value::Null,
                ));
                let (alpha, a) = p.pair()?;
                let rec = recurrence_sequence(count, &alpha, &a)?;
                let rod = rodrigues_sequence(count, &alpha, &a, p.exec())?;
                checks.push(Check::new("recurrence = Rodrigues", rec == rod, Value::Null));
            }
            check_report("mop.polycheck.v1", params, checks)
        }
        PolyCmd::Recurrence { count } => {
            if !closed_form_applies(p, &w)? {
                return Err(crate::params::usage(
                    "recurrence matrices are available for N = 2 with u = 0",
                ));
            }
            let (alpha, a) = p.pair()?;
            let rod = rodrigues_sequence(count + 1, &alpha, &a, p.exec())?;
            let mut entries = Vec::new();
            let mut text = String::new();
            let mut csv = vec![header(&["n", "matrix", "row", "col", "value"])];
            let mut ok = true;
            for n in 0..count {
                let r = recurrence_matrices(n, &alpha, &a)?;
                let prev = if n == 0 { MatPoly::zero(2) } else { rod[n - 1].clone() };
                let residual = rod[n]
                    .shift(1)
                    .sub(&rod[n + 1].left_mul(&r.d))
                    .sub(&rod[n].left_mul(&r.e))
                    .sub(&prev.left_mul(&r.f));
                ok &= residual.is_zero();
                text.push_str(&format!(
                    "n = {n}: D = {}, E = {}, F = {}, residual zero: {}\n",
                    matrix_text(&r.d),
                    matrix_text(&r.e),
                    matrix_text(&r.f),
                    residual.is_zero()
                ));
                for (name, m) in [("D", &r.d), ("E", &r.e), ("F", &r.f)] {
                    for row in crate::report::matrix_rows(name, m) {
                        csv.push([vec![n.to_string()], row].concat());
                    }
                }
                entries.push(json!({"n": n, "d": r.d, "e": r.e, "f": r.f, "residual": residual}));
            }
            let json = json!({"schema": "mop.recurrence.v1", "params": params, "recurrence": entries, "all_hold": ok});
            Report::new(json, text, csv).asserting(ok)
        }
        PolyCmd::Norms { count } => {
            let mut entries = Vec::new();
            let mut text = String::new();
            let mut csv = vec![header(&["n", "matrix", "row", "col", "value"])];
            let mut ok = true;
            if closed_form_applies(p, &w)? {
                let (alpha, a) = p.pair()?;
                let rod = rodrigues_sequence(count, &alpha, &a, p.exec())?;
                let mu = w.moments(2 * count + 1);
                for (n, r) in rod.iter().enumerate() {
                    let exact = mu.inner(r, r)?;
                    let closed = norm_matrix(n, &alpha, &a);
                    let agree = exact == closed;
                    ok &= agree;
                    text.push_str(&format!(
                        "n = {n}: {} (closed form agrees: {agree})\n",
                        matrix_text(&exact)
                    ));
                    for row in crate::report::matrix_rows("norm", &exact) {
                        csv.push([vec![n.to_string()], row].concat());
                    }
                    entries.push(json!({"n": n, "norm": exact, "closed_form": closed, "agree": agree}));
                }
            } else {
                let seq = monic_ops(&w, count)?;
                for (n, h) in seq.norms().iter().take(count).enumerate() {
                    let pd = is_positive_definite(h);
                    ok &= pd;
                    text.push_str(&format!("n = {n}: {} (positive definite: {pd})\n", matrix_text(h)));
                    for row in crate::report::matrix_rows("norm", h) {
                        csv.push([vec![n.to_string()], row].concat());
                    }
                    entries.push(json!({"n": n, "norm": h, "positive_definite": pd}));
                }
            }
            let family = if closed_form_applies(p, &w)? {
                "rodrigues"
            } else {
                "monic"
            };
            let json = json!({"schema": "mop.norms.v1", "params": params, "family": family, "norms": entries});
            Report::new(json, text, csv).asserting(ok)
        }
    })
}
