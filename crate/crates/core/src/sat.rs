//! Positive 3-SAT formulas under the exactly-one-true-literal semantics.

use crate::error::{Error, Result};

/// Clauses are triples of distinct 0-based variable indices; every literal
/// is positive and every variable occurs in at most three clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatFormula {
    n_vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl SatFormula {
    pub fn new(n_vars: usize, clauses: Vec<[usize; 3]>) -> Result<SatFormula> {
        let mut count = vec![0usize; n_vars];
        for (c, clause) in clauses.iter().enumerate() {
            for (s, &x) in clause.iter().enumerate() {
                if x >= n_vars {
                    return Err(Error::Formula(format!(
                        "clause {} uses variable {} but there are only {n_vars}",
                        c + 1,
                        x + 1
                    )));
                }
                if clause[..s].contains(&x) {
                    return Err(Error::Formula(format!(
                        "clause {} repeats variable {}",
                        c + 1,
                        x + 1
                    )));
                }
                count[x] += 1;
            }
        }
        if let Some(x) = count.iter().position(|&k| k > 3) {
            return Err(Error::Formula(format!(
                "variable {} occurs in {} clauses (at most 3 allowed)",
                x + 1,
                count[x]
            )));
        }
        Ok(SatFormula { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// For each variable, its occurrences as `(clause, slot)` in clause
    /// order, then slot order.
    pub fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::new(); self.n_vars];
        for (c, clause) in self.clauses.iter().enumerate() {
            for (s, &x) in clause.iter().enumerate() {
                occ[x].push((c, s));
            }
        }
        occ
    }

    pub fn has_exactly_three_occurrences(&self) -> bool {
        self.occurrences().iter().all(|o| o.len() == 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    /// Ok iff the assignment covers every variable and sets exactly one
    /// literal true in each clause.
    pub fn check_one_in_three(&self, formula: &SatFormula) -> Result<()> {
        if self.0.len() != formula.n_vars() {
            return Err(Error::Assignment(format!(
                "assignment has {} values for {} variables",
                self.0.len(),
                formula.n_vars()
            )));
        }
        for (c, clause) in formula.clauses().iter().enumerate() {
            let t = clause.iter().filter(|&&x| self.0[x]).count();
            if t != 1 {
                return Err(Error::Assignment(format!(
                    "clause {} has {t} true literals",
                    c + 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_one_in_three(&self, formula: &SatFormula) -> bool {
        self.check_one_in_three(formula).is_ok()
    }
}
