//! CSV rows for tube formulas: key, coefficient, sn-exponent, cs-exponent, integrals.

use std::collections::BTreeMap;

use crate::scalar::{Lambda, LambdaScalar, TrigPoly};

pub const HEADER: &str = "key,coefficient,sn,cs,integrals";

/// One row per TrigPoly monomial. With `numeric` a float column for the
/// coefficient is appended, evaluated at `lambda_value` for formal λ.
pub fn tube_csv<K: std::fmt::Display>(
    entries: &BTreeMap<K, TrigPoly>,
    numeric: bool,
    lambda_value: f64,
) -> String {
    let mut out = String::from(HEADER);
    if numeric {
        out.push_str(",value");
    }
    out.push('\n');
    for (k, p) in entries {
        for (m, c) in p.terms() {
            let atoms: Vec<String> = m.atoms.iter().map(|(a, b)| format!("int(sn^{a} cs^{b})")).collect();
            out.push_str(&format!("{k},\"{c}\",{},{},{}", m.sn, m.cs, atoms.join(" ")));
            if numeric {
                let lam = match p.lambda() {
                    Lambda::Formal => lambda_value,
                    l => l.to_f64().unwrap_or(lambda_value),
                };
                out.push_str(&format!(",{:.15e}", c.to_f64(lam)));
            }
            out.push('\n');
        }
    }
    out
}

/// Rows of `key,coefficient` (plus `value` with `numeric`) for elements and tensors.
pub fn coefficient_csv(
    rows: impl IntoIterator<Item = (String, LambdaScalar)>,
    numeric: bool,
    lambda: &Lambda,
    lambda_value: f64,
) -> String {
    let mut out = String::from("key,coefficient");
    if numeric {
        out.push_str(",value");
    }
    out.push('\n');
    let lam = lambda.to_f64().unwrap_or(lambda_value);
    for (k, c) in rows {
        out.push_str(&format!("\"{k}\",\"{c}\""));
        if numeric {
            out.push_str(&format!(",{:.15e}", c.to_f64(lam)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tube::global_tube;
    use crate::valuation::ValAlgebra;

    #[test]
    fn rows_and_header() {
        let alg = ValAlgebra::finite(1, Lambda::zero());
        let csv = tube_csv(&global_tube(&alg).unwrap(), true, 0.0);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("key,coefficient,sn,cs,integrals,value"));
        assert!(csv.contains("mu[0,0],\"pi\",2,0,,"));
    }
}
