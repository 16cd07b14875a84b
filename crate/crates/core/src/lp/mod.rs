//! Linear programs over exact rationals.
//!
//! All variables are nonnegative with an optional finite upper bound. The
//! solver is a dense two-phase tableau simplex using Bland's rule, so each
//! pivot costs `O(rows * columns)` rational operations. It is meant for
//! desk-scale programs of at most a few hundred rows and columns.

mod mps;
mod simplex;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use mps::to_mps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub upper: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(VarId, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<(VarId, Rational)>,
    pub sense: Sense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Meaningful only when `status == Optimal`; zero otherwise.
    pub objective: Rational,
    pub values: Vec<Rational>,
    pub pivots: usize,
}

impl LpSolution {
    pub fn value(&self, var: VarId) -> &Rational {
        &self.values[var.0]
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram { variables: Vec::new(), constraints: Vec::new(), objective: Vec::new(), sense }
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> VarId {
        self.variables.push(Variable { name: name.into(), upper: None });
        VarId(self.variables.len() - 1)
    }

    pub fn add_bounded_var(&mut self, name: impl Into<String>, upper: Rational) -> VarId {
        self.variables.push(Variable { name: name.into(), upper: Some(upper) });
        VarId(self.variables.len() - 1)
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(VarId, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint { name: name.into(), terms, relation, rhs });
    }

    pub fn set_objective(&mut self, terms: Vec<(VarId, Rational)>) {
        self.objective = terms;
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.variables.len();
        let dangling = |terms: &[(VarId, Rational)], ctx: &str| {
            terms.iter().find(|(v, _)| v.0 >= n).map(|(v, _)| {
                Error::MalformedProgram(format!("{ctx} references undeclared variable #{}", v.0))
            })
        };
        if let Some(err) = dangling(&self.objective, "objective") {
            return Err(err);
        }
        for c in &self.constraints {
            if let Some(err) = dangling(&c.terms, &format!("constraint `{}`", c.name)) {
                return Err(err);
            }
        }
        for v in &self.variables {
            if let Some(u) = &v.upper {
                if u < &Rational::zero() {
                    return Err(Error::MalformedProgram(format!("negative upper bound on `{}`", v.name)));
                }
            }
        }
        Ok(())
    }

    /// Largest absolute violation of any constraint or bound by `values`.
    pub fn max_violation(&self, values: &[Rational]) -> Rational {
        let mut worst = Rational::zero();
        for c in &self.constraints {
            let lhs = c.terms.iter().fold(Rational::zero(), |acc, (v, a)| acc + a * &values[v.0]);
            let gap = match c.relation {
                Relation::Le => &lhs - &c.rhs,
                Relation::Ge => &c.rhs - &lhs,
                Relation::Eq => {
                    let d = &lhs - &c.rhs;
                    if d < Rational::zero() {
                        -d
                    } else {
                        d
                    }
                }
            };
            if gap > worst {
                worst = gap;
            }
        }
        for (v, x) in self.variables.iter().zip(values) {
            if x < &Rational::zero() && -x > worst {
                worst = -x;
            }
            if let Some(u) = &v.upper {
                if x > u && x - u > worst {
                    worst = x - u;
                }
            }
        }
        worst
    }

    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        self.objective.iter().fold(Rational::zero(), |acc, (v, a)| acc + a * &values[v.0])
    }
}

/// Solves `lp` exactly. Infeasibility and unboundedness are statuses, not errors.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.check()?;
    Ok(simplex::solve(lp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn single_bounded_variable() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var("x");
        lp.add_constraint("cap", vec![(x, int(1))], Relation::Le, ratio(3, 2));
        lp.set_objective(vec![(x, int(1))]);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective, ratio(3, 2));
    }

    #[test]
    fn two_variables_sharing_a_row() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var("x");
        let y = lp.add_var("y");
        lp.add_constraint("sum", vec![(x, int(1)), (y, int(1))], Relation::Le, int(2));
        lp.add_constraint("x", vec![(x, int(1))], Relation::Le, int(1));
        lp.set_objective(vec![(x, int(1)), (y, int(1))]);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.objective, int(2));
        assert_eq!(lp.max_violation(&sol.values), int(0));
    }

    #[test]
    fn unbounded_and_infeasible_are_statuses() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var("x");
        lp.add_constraint("nonneg", vec![(x, int(1))], Relation::Ge, int(0));
        lp.set_objective(vec![(x, int(1))]);
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Unbounded);

        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var("x");
        lp.add_constraint("hi", vec![(x, int(1))], Relation::Ge, int(2));
        lp.add_constraint("lo", vec![(x, int(1))], Relation::Le, int(1));
        lp.set_objective(vec![(x, int(1))]);
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn dangling_variable_is_malformed() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        lp.add_var("x");
        lp.add_constraint("bad", vec![(VarId(3), int(1))], Relation::Le, int(1));
        assert!(matches!(solve(&lp), Err(Error::MalformedProgram(_))));
    }

    #[test]
    fn upper_bounds_and_equalities() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_bounded_var("x", int(4));
        let y = lp.add_var("y");
        lp.add_constraint("eq", vec![(x, int(1)), (y, int(1))], Relation::Eq, int(10));
        lp.set_objective(vec![(x, int(-1)), (y, int(2))]);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.objective, int(8));
        assert_eq!(sol.value(x), &int(4));
        assert_eq!(sol.value(y), &int(6));
    }

    #[test]
    fn negative_rhs_rows_are_normalized() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var("x");
        let y = lp.add_var("y");
        // -x - y >= -3  <=>  x + y <= 3
        lp.add_constraint("a", vec![(x, int(-1)), (y, int(-1))], Relation::Ge, int(-3));
        lp.add_constraint("b", vec![(x, int(1)), (y, int(-1))], Relation::Le, int(-1));
        lp.set_objective(vec![(x, int(2)), (y, int(1))]);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.objective, int(4));
        assert_eq!(sol.value(x), &int(1));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example cycles under the textbook largest-coefficient rule.
        let mut lp = LinearProgram::new(Sense::Maximize);
        let v: Vec<_> = (0..4).map(|i| lp.add_var(format!("x{i}"))).collect();
        lp.add_constraint(
            "r1",
            vec![(v[0], ratio(1, 4)), (v[1], int(-60)), (v[2], ratio(-1, 25)), (v[3], int(9))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(
            "r2",
            vec![(v[0], ratio(1, 2)), (v[1], int(-90)), (v[2], ratio(-1, 50)), (v[3], int(3))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint("r3", vec![(v[2], int(1))], Relation::Le, int(1));
        lp.set_objective(vec![(v[0], ratio(3, 4)), (v[1], int(-150)), (v[2], ratio(1, 50)), (v[3], int(-6))]);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective, ratio(1, 20));
    }
}
