use anyhow::Result;
use mop_core::explorer::{
    basis_pattern_evidence, dimension_table, dimension_table_draws, DimensionTable, Engine, ExplorerOptions,
};
use mop_core::relations::{exceptional_alpha_report, verify_fact_relation, verify_relations};
use serde_json::json;

use crate::cli::{AlgebraCmd, EngineArg, Params};
use crate::report::{header, with_schema, Report};

fn options(p: &Params, engine: EngineArg) -> ExplorerOptions {
    ExplorerOptions {
        engine: match engine {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Exact => Engine::Exact,
            EngineArg::Modular => Engine::Modular,
        },
        exec: p.exec(),
        ..Default::default()
    }
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| "?".into(), |d| d.to_string())
}

/// `label  v0 v1 ...` with right-aligned columns.
fn aligned(label: &str, values: &[String]) -> String {
    let cols: String = values.iter().map(|v| format!(" {v:>3}")).collect();
    format!("{label:<12}{cols}\n")
}

fn table_text(t: &DimensionTable) -> String {
    let orders: Vec<String> = t.rows.iter().map(|r| r.order.to_string()).collect();
    let new: Vec<String> = t.rows.iter().map(|r| r.new_dim.to_string()).collect();
    let cum: Vec<String> = t.rows.iter().map(|r| r.cumulative_dim.to_string()).collect();
    let nu: Vec<String> = t.params.nu_moduli_sq.clone();
    format!(
        "N = {}, alpha = {}, |nu_i|^2 = [{}]\n{}{}{}",
        t.params.n,
        t.params.alpha,
        nu.join(", "),
        aligned("order", &orders),
        aligned("new", &new),
        aligned("cumulative", &cum)
    )
}

fn dims_csv(n: usize, kmax: usize, row: &[Option<usize>]) -> Vec<Vec<String>> {
    let mut head = vec!["N".to_string()];
    head.extend((0..=kmax).map(|k| k.to_string()));
    let mut line = vec![n.to_string()];
    line.extend(row.iter().map(|v| v.map_or_else(String::new, |d| d.to_string())));
    vec![head, line]
}

pub fn run(p: &Params, cmd: &AlgebraCmd) -> Result<Report> {
    Ok(match *cmd {
        AlgebraCmd::Dims {
            kmax,
            draws,
            seed,
            engine,
        } => {
            let opts = options(p, engine);
            let draws = draws.or((p.n >= 3 && !p.weight_given()).then_some(2));
            match draws {
                Some(d) => {
                    if d == 0 {
                        return Err(crate::params::usage("--draws must be positive"));
                    }
                    let t = dimension_table_draws(p.n, kmax, d, seed, &opts)?;
                    let row = t.consensus_row();
                    let mut json = t.to_json();
                    json["row"] = serde_json::to_value(&row)?;
                    let mut text: String = t.tables.iter().map(table_text).collect();
                    let cells: Vec<String> = row.iter().map(|v| cell(*v)).collect();
                    text.push_str(&format!("consensus over {d} draws (seed {seed})\n"));
                    text.push_str(&aligned("new", &cells));
                    Report::new(json, text, dims_csv(p.n, kmax, &row))
                }
                None => {
                    let t = dimension_table(&p.weight()?, kmax, &opts)?;
                    let row: Vec<Option<usize>> = t.new_dims().into_iter().map(Some).collect();
                    let mut json = with_schema(serde_json::to_value(&t)?, "mop.dims.v1");
                    json["N"] = p.n.into();
                    json["row"] = serde_json::to_value(&row)?;
                    Report::new(json, table_text(&t), dims_csv(p.n, kmax, &row))
                }
            }
        }
        AlgebraCmd::Relations => {
            let (alpha, a) = p.pair()?;
            let r = verify_relations(&alpha, &a, p.exec())?;
            let mut text = format!("alpha = {alpha}, a = {a}, exceptional: {}\n", r.exceptional);
            let mut csv = vec![header(&["relation", "holds", "holds_on_eigenvalues"])];
            for c in &r.relations {
                let tag = if c.holds && c.holds_on_eigenvalues {
                    "PASS"
                } else {
                    "FAIL"
                };
                text.push_str(&format!("{tag} {}\n", c.name));
                csv.push(vec![
                    c.name.clone(),
                    c.holds.to_string(),
                    c.holds_on_eigenvalues.to_string(),
                ]);
            }
            Report::new(r.to_json(), text, csv).asserting(r.all_hold())
        }
        AlgebraCmd::Fact { eigen_only } => {
            let w = p.weight()?;
            let r = verify_fact_relation(&w, !eigen_only && w.n() <= 3)?;
            let op = r.operator_holds.map_or_else(|| "not checked".into(), |b| b.to_string());
            let text = format!(
                "N = {}\noperator product vanishes: {op}\neigenvalue product vanishes: {}\ndiagonal zeros: {}\n",
                r.n, r.eigen_holds, r.diagonal_zeros
            );
            let csv = vec![
                header(&["N", "operator_holds", "eigen_holds", "diagonal_zeros"]),
                vec![
                    r.n.to_string(),
                    op,
                    r.eigen_holds.to_string(),
                    r.diagonal_zeros.to_string(),
                ],
            ];
            Report::new(r.to_json(), text, csv).asserting(r.holds())
        }
        AlgebraCmd::Exceptional => {
            let (alpha, a) = p.pair()?;
            let r = exceptional_alpha_report(&alpha, &a)?;
            let ok = !r.exceptional || r.rhs_vanishes == Some(true);
            let rhs = r.rhs_vanishes.map_or_else(|| "n/a".into(), |b| b.to_string());
            let text = format!(
                "alpha = {alpha}, a = {a}\ncubic leading coefficient = {}\nexceptional: {}\nright side vanishes: {rhs}\n",
                r.leading, r.exceptional
            );
            let csv = vec![
                header(&["alpha", "a", "leading", "exceptional", "rhs_vanishes"]),
                vec![
                    alpha.to_string(),
                    a.to_string(),
                    r.leading.to_string(),
                    r.exceptional.to_string(),
                    rhs,
                ],
            ];
            Report::new(r.to_json(), text, csv).asserting(ok)
        }
        AlgebraCmd::Patterns { engine } => {
            let (alpha, a) = p.pair()?;
            let checks = basis_pattern_evidence(&alpha, &a, &options(p, engine))?;
            let mut text = String::new();
            let mut csv = vec![header(&["order", "candidates", "spans"])];
            for c in &checks {
                text.push_str(&format!(
                    "order {}: {} span: {}\n",
                    c.order,
                    c.candidates.join(", "),
                    c.spans
                ));
                csv.push(vec![c.order.to_string(), c.candidates.join(" "), c.spans.to_string()]);
            }
            let json = json!({
                "schema": "mop.patterns.v1",
                "alpha": alpha.to_string(),
                "a": a,
                "patterns": checks,
            });
            Report::new(json, text, csv)
        }
    })
}
