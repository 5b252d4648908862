use anyhow::Result;
use mop_core::diffops::{make_l21_for, make_l22_for, make_l2_general_u, make_l31, make_l32};
use mop_core::explorer::DrawParams;
use mop_core::orthopoly::{eigenvalue_of, monic_ops, Family, MonicOPSequence};
use mop_core::par::map_slice;
use mop_core::relations::{verify_fact_relation, verify_relations};
use mop_core::scalar::rat;
use mop_core::symmetry::{check_symmetry, moment_verdict, Verdict};
use mop_core::{DiffOperator, ExactScalar, WeightSpec};
use serde_json::{json, Value};

use crate::cli::{Params, VerifyCmd};
use crate::commands::poly::{closed_form_applies, rodrigues_matches};
use crate::report::{check_report, Check, Report};

type Task<'a> = Box<dyn Fn() -> Result<Check> + Send + Sync + 'a>;

fn symmetric(name: &str, l: &DiffOperator, w: &WeightSpec) -> Result<Check> {
    let differential = check_symmetry(l, w)?.verdict;
    let moments = moment_verdict(l, w, l.order() + 8)?;
    Ok(Check::new(
        format!("{name} symmetric"),
        differential == Verdict::Symmetric && moments == Verdict::Symmetric,
        json!({"differential": differential, "moments": moments}),
    ))
}

fn eigenfunctions(name: &str, l: &DiffOperator, seq: &MonicOPSequence, degree: usize) -> Result<Check> {
    let mut failing = Vec::new();
    for n in 0..=degree {
        if eigenvalue_of(l, seq.get(n), Family::Monic)?.is_none() {
            failing.push(n);
        }
    }
    Ok(Check::new(
        format!("{name} eigenfunctions n <= {degree}"),
        failing.is_empty(),
        json!({"failing_degrees": failing}),
    ))
}

pub fn run(p: &Params, cmd: &VerifyCmd) -> Result<Report> {
    let VerifyCmd::All { degree } = *cmd;
    let weight = p.weight()?;
    let w = &weight;
    let monic = monic_ops(w, degree + 1)?;
    let seq = &monic;
    let u = p.u()?.filter(|u| !u.is_zero());
    let mut tasks: Vec<Task> = vec![
        Box::new(|| {
            let mu = w.moments(2 * degree + 2);
            let pd = w.is_positive_definite_at(&rat(1, 1)) && mu.hankel_positive(degree.min(4) + 1);
            Ok(Check::new("weight positive definite", pd, Value::Null))
        }),
        Box::new(|| {
            let d = w.moments(2 * degree + 2).commutant_dimension();
            Ok(Check::new(
                "weight irreducible",
                d == 1,
                json!({"commutant_dimension": d}),
            ))
        }),
        Box::new(|| {
            Ok(Check::new(
                format!("monic orthogonality n <= {degree}"),
                seq.verify()?,
                Value::Null,
            ))
        }),
    ];
    if let Some(u) = &u {
        let (alpha, v) = (p.alpha()?, p.a_value()?);
        let l = make_l2_general_u(&alpha, u, &v)?;
        let l2 = l.clone();
        tasks.push(Box::new(move || symmetric("l2u", &l, w)));
        tasks.push(Box::new(move || eigenfunctions("l2u", &l2, seq, degree)));
    } else if w.n() >= 2 {
        let l21 = make_l21_for(w)?;
        tasks.push(Box::new({
            let l21 = l21.clone();
            move || symmetric("l21", &l21, w)
        }));
        tasks.push(Box::new({
            let l21 = l21.clone();
            move || eigenfunctions("l21", &l21, seq, degree)
        }));
        if w.constraints().holds() {
            let l22 = make_l22_for(w)?;
            tasks.push(Box::new({
                let l22 = l22.clone();
                move || symmetric("l22", &l22, w)
            }));
            tasks.push(Box::new({
                let l22 = l22.clone();
                move || eigenfunctions("l22", &l22, seq, degree)
            }));
            tasks.push(Box::new(move || {
                let c = l21.commutator(&l22)?;
                Ok(Check::new(
                    "[l21, l22] = 0",
                    c.is_zero(),
                    if c.is_zero() { Value::Null } else { c.to_json() },
                ))
            }));
            tasks.push(Box::new(move || {
                let r = verify_fact_relation(w, w.n() <= 3)?;
                Ok(Check::new("product relation", r.holds(), r.to_json()))
            }));
        }
    }
    if u.is_none() && closed_form_applies(p, w)? {
        let (alpha, a) = p.pair()?;
        let l31 = make_l31(&alpha, &a)?;
        let il32 = make_l32(&alpha, &a)?.scale(&ExactScalar::i());
        tasks.push(Box::new({
            let l31 = l31.clone();
            move || symmetric("l31", &l31, w)
        }));
        tasks.push(Box::new({
            let il32 = il32.clone();
            move || symmetric("i l32", &il32, w)
        }));
        tasks.push(Box::new(move || eigenfunctions("l31", &l31, seq, degree)));
        tasks.push(Box::new(move || eigenfunctions("l32", &il32, seq, degree)));
        tasks.push(Box::new(move || {
            Ok(Check::new(
                "Rodrigues = Lambda_n monic",
                rodrigues_matches(p, w, degree + 1)?,
                Value::Null,
            ))
        }));
        tasks.push(Box::new(move || {
            let r = verify_relations(&alpha, &a, p.exec())?;
            let failing: Vec<&str> = r
                .relations
                .iter()
                .filter(|c| !(c.holds && c.holds_on_eigenvalues))
                .map(|c| c.name.as_str())
                .collect();
            Ok(Check::new(
                format!("{} algebra relations", r.relations.len()),
                r.all_hold(),
                json!({"failing": failing}),
            ))
        }));
    }
    let checks = map_slice(p.exec(), &tasks, |t| t())
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(check_report(
        "mop.verify.v1",
        serde_json::to_value(DrawParams::of(w))?,
        checks,
    ))
}
