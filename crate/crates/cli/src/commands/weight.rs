use anyhow::Result;
use serde_json::json;

use crate::cli::{Params, WeightCmd};
use crate::report::{header, matpoly_rows, matrix_rows, matrix_text, Report};

pub fn run(p: &Params, cmd: &WeightCmd) -> Result<Report> {
    let w = p.weight()?;
    Ok(match cmd {
        WeightCmd::Show => {
            let mut text = format!("N = {}\nalpha = {}\n", w.n(), w.alpha());
            if !w.nu().is_empty() {
                let nu: Vec<String> = w.nu().iter().map(ToString::to_string).collect();
                text.push_str(&format!("nu = [{}]\n", nu.join(", ")));
            }
            if !w.u().is_zero() {
                text.push_str(&format!("u = {}\n", w.u()));
            }
            text.push_str(&format!("qpart = {}\n", w.qpart()));
            let mut csv = vec![header(&["entry", "row", "col", "power", "coefficient"])];
            csv.extend(matpoly_rows("qpart", w.qpart()));
            Report::new(w.to_json(), text, csv)
        }
        WeightCmd::Moments { count } => {
            let mu = w.moments(*count);
            let text: String = (0..*count)
                .map(|k| format!("mu_{k} = {}\n", matrix_text(mu.get(k))))
                .collect();
            let mut csv = vec![header(&["n", "row", "col", "value"])];
            for k in 0..*count {
                csv.extend(matrix_rows(&k.to_string(), mu.get(k)));
            }
            let json = json!({
                "schema": "mop.moments.v1",
                "weight": w.to_json(),
                "normalization": "Gamma(alpha+1)",
                "moments": mu.as_slice(),
            });
            Report::new(json, text, csv)
        }
        WeightCmd::Constraints => {
            let c = w.constraints();
            let moduli: Vec<String> = w.nu_moduli_sq().iter().map(ToString::to_string).collect();
            let json = json!({
                "schema": "mop.constraints.v1",
                "N": w.n(),
                "nu_moduli_sq": moduli,
                "consecutive": c.consecutive,
                "anchored": c.anchored,
                "holds": c.holds(),
            });
            let text = format!(
                "|nu_i|^2 = [{}]\nconsecutive form: {}\nanchored form: {}\n",
                moduli.join(", "),
                c.consecutive,
                c.anchored
            );
            let csv = vec![
                header(&["consecutive", "anchored", "holds"]),
                vec![c.consecutive.to_string(), c.anchored.to_string(), c.holds().to_string()],
            ];
            Report::new(json, text, csv).asserting(c.holds())
        }
    })
}
