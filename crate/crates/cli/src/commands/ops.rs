use anyhow::Result;
use mop_core::diffops::{make_l21_for, make_l22_for, make_l2_general_u, make_l31, make_l32};
use mop_core::orthopoly::{eigenvalue_of, monic_ops, rodrigues_p, Family};
use mop_core::symmetry::{check_symmetry, moment_verdict, Verdict};
use mop_core::{DiffOperator, MatPoly, WeightSpec};
use serde_json::{json, Value};

use crate::cli::{FamilyArg, OpName, OpsCmd, Params};
use crate::params::usage;
use crate::report::{header, matpoly_rows, matrix_text, Report};

pub fn op_label(op: OpName) -> &'static str {
    match op {
        OpName::L21 => "l21",
        OpName::L22 => "l22",
        OpName::L31 => "l31",
        OpName::L32 => "l32",
        OpName::L2u => "l2u",
    }
}

pub fn build(p: &Params, op: OpName) -> Result<DiffOperator> {
    let u_set = p.u()?.is_some_and(|u| !u.is_zero());
    if u_set && op != OpName::L2u {
        return Err(usage(format!("{} is defined for u = 0 only", op_label(op))));
    }
    Ok(match op {
        OpName::L21 => make_l21_for(&p.weight()?)?,
        OpName::L22 => make_l22_for(&p.weight()?)?,
        OpName::L31 => {
            let (alpha, a) = p.pair()?;
            make_l31(&alpha, &a)?
        }
        OpName::L32 => {
            let (alpha, a) = p.pair()?;
            make_l32(&alpha, &a)?
        }
        OpName::L2u => make_l2_general_u(&p.alpha()?, &p.u()?.unwrap_or_default(), &p.a_value()?)?,
    })
}

pub fn expected_verdict(op: OpName) -> Verdict {
    if op == OpName::L32 {
        Verdict::SkewSymmetric
    } else {
        Verdict::Symmetric
    }
}

fn operator_text(l: &DiffOperator) -> String {
    l.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("D^{i}: {c}\n"))
        .collect()
}

pub fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Monic => "monic",
        FamilyArg::Rodrigues => "rodrigues",
    }
}

pub fn polynomial(p: &Params, w: &WeightSpec, n: usize, family: FamilyArg) -> Result<MatPoly> {
    Ok(match family {
        FamilyArg::Monic => monic_ops(w, n + 1)?.get(n).clone(),
        FamilyArg::Rodrigues => {
            let (alpha, a) = p.pair()?;
            rodrigues_p(n, &alpha, &a)?
        }
    })
}

pub fn run(p: &Params, cmd: &OpsCmd) -> Result<Report> {
    Ok(match *cmd {
        OpsCmd::Build { op } => {
            let l = build(p, op)?;
            let mut csv = vec![header(&["derivative", "row", "col", "power", "coefficient"])];
            for (i, c) in l.coeffs().iter().enumerate() {
                csv.extend(matpoly_rows(&i.to_string(), c));
            }
            let mut json = l.to_json();
            json["name"] = op_label(op).into();
            Report::new(json, operator_text(&l), csv)
        }
        OpsCmd::Apply { op, degree, family } => {
            let l = build(p, op)?;
            let w = p.weight()?;
            let poly = polynomial(p, &w, degree, family)?;
            let fam = match family {
                FamilyArg::Monic => Family::Monic,
                FamilyArg::Rodrigues => Family::Rodrigues,
            };
            let eig = eigenvalue_of(&l, &poly, fam)?;
            let image = l.apply(&poly)?;
            let gamma = eig.as_ref().map(|e| e.gamma.clone());
            let json = json!({
                "schema": "mop.apply.v1",
                "op": op_label(op),
                "n": degree,
                "family": family_name(family),
                "eigenfunction": eig.is_some(),
                "gamma": gamma,
                "image": image,
            });
            let text = match &gamma {
                Some(g) => format!(
                    "{}(P_{degree}) = Gamma P_{degree}\nGamma = {}\n",
                    op_label(op),
                    matrix_text(g)
                ),
                None => format!("P_{degree} is not an eigenfunction of {}\n", op_label(op)),
            };
            let mut csv = vec![header(&["entry", "row", "col", "power", "coefficient"])];
            csv.extend(matpoly_rows("image", &image));
            Report::new(json, text, csv).asserting(eig.is_some())
        }
        OpsCmd::Symmetry { op } => {
            let l = build(p, op)?;
            let w = p.weight()?;
            let report = check_symmetry(&l, &w)?;
            let moments = moment_verdict(&l, &w, l.order() + 8)?;
            let expected = expected_verdict(op);
            let ok = report.verdict == expected && moments == expected;
            let mut json = report.to_json();
            json["op"] = op_label(op).into();
            json["moment_verdict"] = serde_json::to_value(moments)?;
            json["expected"] = serde_json::to_value(expected)?;
            let name = |v: Verdict| {
                serde_json::to_value(v)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default()
            };
            let text = format!(
                "{}: differential criterion {}, moment criterion {}, expected {}\n",
                op_label(op),
                name(report.verdict),
                name(moments),
                name(expected)
            );
            let csv = vec![
                header(&["op", "differential", "moments", "expected"]),
                vec![op_label(op).into(), name(report.verdict), name(moments), name(expected)],
            ];
            Report::new(json, text, csv).asserting(ok)
        }
        OpsCmd::Compose { op, with } => {
            let (l1, l2) = (build(p, op)?, build(p, with)?);
            let c = l1.compose(&l2)?;
            let multiplicative: Vec<Value> = (0..=8)
                .map(|n| {
                    let holds = c.monic_eigenvalue(n) == l1.monic_eigenvalue(n).mul(&l2.monic_eigenvalue(n));
                    json!({"n": n, "holds": holds})
                })
                .collect();
            let ok = multiplicative.iter().all(|v| v["holds"] == true);
            let json = json!({
                "schema": "mop.compose.v1",
                "first": op_label(op),
                "then": op_label(with),
                "operator": c.to_json(),
                "eigenvalue_multiplicative": multiplicative,
            });
            let text = format!(
                "{} then {} has order {}\n{}eigenvalues multiply for n <= 8: {ok}\n",
                op_label(op),
                op_label(with),
                c.order(),
                operator_text(&c)
            );
            let mut csv = vec![header(&["derivative", "row", "col", "power", "coefficient"])];
            for (i, co) in c.coeffs().iter().enumerate() {
                csv.extend(matpoly_rows(&i.to_string(), co));
            }
            Report::new(json, text, csv).asserting(ok)
        }
    })
}
