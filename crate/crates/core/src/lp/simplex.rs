use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpSolution, LpStatus, Relation, Sense};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// Each row holds `ncols` coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, row: usize) -> &Rational {
        &self.rows[row][self.ncols()]
    }

    fn pivot(&mut self, r: usize, c: usize, reduced: &mut [Rational]) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let support: Vec<usize> = (0..self.rows[r].len()).filter(|&k| !self.rows[r][k].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &k in &support {
                row[k] -= &factor * &pivot_row[k];
            }
        }
        if !reduced[c].is_zero() {
            let factor = reduced[c].clone();
            for &k in &support {
                if k < reduced.len() {
                    reduced[k] -= &factor * &pivot_row[k];
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for a maximization objective.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                if !row[j].is_zero() {
                    *dj -= cb * &row[j];
                }
            }
        }
        d
    }

    /// Primal simplex with Bland's rule: lowest-index improving column enters,
    /// ratio ties leave by lowest basic column index.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Outcome {
        let mut reduced = self.reduced_costs(cost);
        loop {
            let Some(enter) = (0..self.ncols()).find(|&j| allowed[j] && reduced[j].is_positive()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((best_row, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_row])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Outcome::Unbounded;
            };
            self.pivot(row, enter, &mut reduced);
        }
    }
}

pub(super) fn solve(lp: &LinearProgram) -> LpSolution {
    let n = lp.variables.len();

    // Normalized rows: dense structural coefficients, relation, nonnegative rhs.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); n];
        for (v, a) in &c.terms {
            coeffs[v.0] += a;
        }
        let (coeffs, relation, rhs) = if c.rhs.is_negative() {
            let flipped = match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            (coeffs.into_iter().map(|a| -a).collect(), flipped, -c.rhs.clone())
        } else {
            (coeffs, c.relation, c.rhs.clone())
        };
        rows.push((coeffs, relation, rhs));
    }
    for (j, var) in lp.variables.iter().enumerate() {
        if let Some(upper) = &var.upper {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[j] = Rational::one();
            rows.push((coeffs, Relation::Le, upper.clone()));
        }
    }

    let mut kinds = vec![ColumnKind::Structural; n];
    let mut extra: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows.len()];
    let mut basis = vec![usize::MAX; rows.len()];
    for (i, (_, relation, _)) in rows.iter().enumerate() {
        match relation {
            Relation::Le => {
                kinds.push(ColumnKind::Slack);
                extra[i].push((kinds.len() - 1, Rational::one()));
                basis[i] = kinds.len() - 1;
            }
            Relation::Ge => {
                kinds.push(ColumnKind::Slack);
                extra[i].push((kinds.len() - 1, -Rational::one()));
                kinds.push(ColumnKind::Artificial);
                extra[i].push((kinds.len() - 1, Rational::one()));
                basis[i] = kinds.len() - 1;
            }
            Relation::Eq => {
                kinds.push(ColumnKind::Artificial);
                extra[i].push((kinds.len() - 1, Rational::one()));
                basis[i] = kinds.len() - 1;
            }
        }
    }
    let ncols = kinds.len();
    let table: Vec<Vec<Rational>> = rows
        .into_iter()
        .zip(extra)
        .map(|((mut coeffs, _, rhs), extra)| {
            coeffs.resize(ncols + 1, Rational::zero());
            for (col, v) in extra {
                coeffs[col] = v;
            }
            coeffs[ncols] = rhs;
            coeffs
        })
        .collect();
    let mut tab = Tableau { rows: table, basis, kinds, pivots: 0 };

    let infeasible = |pivots| LpSolution {
        status: LpStatus::Infeasible,
        objective: Rational::zero(),
        values: vec![Rational::zero(); n],
        pivots,
    };

    // Phase 1: maximize -(sum of artificials).
    if tab.kinds.contains(&ColumnKind::Artificial) {
        let cost: Vec<Rational> = tab
            .kinds
            .iter()
            .map(|k| if *k == ColumnKind::Artificial { -Rational::one() } else { Rational::zero() })
            .collect();
        let allowed = vec![true; ncols];
        tab.optimize(&cost, &allowed);
        let residual = (0..tab.rows.len())
            .filter(|&i| tab.kinds[tab.basis[i]] == ColumnKind::Artificial)
            .any(|i| !tab.rhs(i).is_zero());
        if residual {
            return infeasible(tab.pivots);
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.kinds[tab.basis[i]] != ColumnKind::Artificial {
                i += 1;
                continue;
            }
            let replacement =
                (0..ncols).find(|&j| tab.kinds[j] != ColumnKind::Artificial && !tab.rows[i][j].is_zero());
            match replacement {
                Some(j) => {
                    let mut scratch = vec![Rational::zero(); ncols];
                    tab.pivot(i, j, &mut scratch);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                }
            }
        }
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); ncols];
    for (v, a) in &lp.objective {
        match lp.sense {
            Sense::Maximize => cost[v.0] += a,
            Sense::Minimize => cost[v.0] -= a,
        }
    }
    let allowed: Vec<bool> = tab.kinds.iter().map(|k| *k != ColumnKind::Artificial).collect();
    let outcome = tab.optimize(&cost, &allowed);

    let mut values = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            values[b] = tab.rhs(i).clone();
        }
    }
    match outcome {
        Outcome::Unbounded => LpSolution {
            status: LpStatus::Unbounded,
            objective: Rational::zero(),
            values,
            pivots: tab.pivots,
        },
        Outcome::Optimal => {
            let objective = lp.evaluate(&values);
            LpSolution { status: LpStatus::Optimal, objective, values, pivots: tab.pivots }
        }
    }
}
