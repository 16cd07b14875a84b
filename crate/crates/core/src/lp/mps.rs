//! Fixed-format MPS export for cross-checking with external solvers.
//!
//! Row and column names are replaced by 8-character codes (`R0000001`,
//! `C0000001`); the original names are listed in leading comment lines.
//! MPS minimizes, so maximization objectives are written negated.

use std::fmt::Write;

use num_traits::ToPrimitive;

use super::{LinearProgram, Relation, Sense};
use crate::rational::Rational;

fn number(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let v = r.to_f64().unwrap_or(f64::NAN);
    let text = format!("{v:.6e}");
    if text.len() <= 12 {
        text
    } else {
        format!("{v:.4e}")
    }
}

pub fn to_mps(lp: &LinearProgram, name: &str) -> String {
    let mut out = String::new();
    let row = |i: usize| format!("R{:07}", i + 1);
    let col = |j: usize| format!("C{:07}", j + 1);
    for (j, v) in lp.variables.iter().enumerate() {
        let _ = writeln!(out, "* {} = {}", col(j), v.name);
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let _ = writeln!(out, "* {} = {}", row(i), c.name);
    }
    if lp.sense == Sense::Maximize {
        let _ = writeln!(out, "* objective negated (original sense: maximize)");
    }
    let _ = writeln!(out, "NAME          {}", name.chars().take(8).collect::<String>());
    let _ = writeln!(out, "ROWS");
    let _ = writeln!(out, " N  OBJ");
    for (i, c) in lp.constraints.iter().enumerate() {
        let kind = match c.relation {
            Relation::Le => "L",
            Relation::Ge => "G",
            Relation::Eq => "E",
        };
        let _ = writeln!(out, " {kind}  {}", row(i));
    }
    let _ = writeln!(out, "COLUMNS");
    for j in 0..lp.variables.len() {
        let mut entries: Vec<(String, Rational)> = Vec::new();
        for (v, a) in &lp.objective {
            if v.0 == j {
                let a = if lp.sense == Sense::Maximize { -a.clone() } else { a.clone() };
                entries.push(("OBJ".to_string(), a));
            }
        }
        for (i, c) in lp.constraints.iter().enumerate() {
            for (v, a) in &c.terms {
                if v.0 == j {
                    entries.push((row(i), a.clone()));
                }
            }
        }
        for (r, a) in entries {
            let _ = writeln!(out, "    {:<8}  {:<8}  {:>12}", col(j), r, number(&a));
        }
    }
    let _ = writeln!(out, "RHS");
    for (i, c) in lp.constraints.iter().enumerate() {
        let _ = writeln!(out, "    {:<8}  {:<8}  {:>12}", "RHS", row(i), number(&c.rhs));
    }
    let bounded: Vec<_> = lp.variables.iter().enumerate().filter(|(_, v)| v.upper.is_some()).collect();
    if !bounded.is_empty() {
        let _ = writeln!(out, "BOUNDS");
        for (j, v) in bounded {
            let upper = v.upper.as_ref().unwrap();
            let _ = writeln!(out, " UP {:<8}  {:<8}  {:>12}", "BND", col(j), number(upper));
        }
    }
    let _ = writeln!(out, "ENDATA");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{LinearProgram, Relation, Sense};
    use crate::rational::{int, ratio};

    #[test]
    fn exports_sections_in_order() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_bounded_var("x", int(4));
        let y = lp.add_var("y");
        lp.add_constraint("cap", vec![(x, int(1)), (y, ratio(1, 2))], Relation::Le, int(3));
        lp.set_objective(vec![(x, int(1)), (y, int(1))]);
        let text = to_mps(&lp, "demo");
        let order: Vec<usize> = ["NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains(" L  R0000001"));
        assert!(text.contains("    C0000001  OBJ                 -1"));
        assert!(text.contains("5.000000e-1"));
    }
}
