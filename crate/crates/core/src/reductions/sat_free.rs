use crate::error::{Error, Result};
use crate::instance::{Edge, RestrictedEdgeSets, Side};
use crate::master::MasterList;
use crate::matching::Matching;
use crate::sat::{Assignment, SatFormula};
use crate::stability::{verify_stable, StabilityLevel};

use super::{Builder, EdgeTag, ReductionOutput, Registry, Role};

/// Output of [`reduce_sat_to_ssmti_free`] together with the vertex layout.
///
/// Men: for variable `i`, `z(i, 0..3)` then `w(i, 0..3)` at `6i..6i+6`;
/// then `b(k)` at `6n + k`. Women: `y(i, j)` at `3i + j`; `c(k)` at
/// `3n + 2k` and `a(k)` at `3n + 2k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatReduction {
    pub formula: SatFormula,
    /// For each variable, the clause of its occurrence `0`, `1`, `2`.
    pub occurrence_clauses: Vec<[usize; 3]>,
    pub output: ReductionOutput,
}

impl SatReduction {
    fn n(&self) -> usize {
        self.formula.n_vars()
    }

    pub fn z(&self, var: usize, copy: usize) -> usize {
        6 * var + copy
    }

    pub fn w(&self, var: usize, copy: usize) -> usize {
        6 * var + 3 + copy
    }

    pub fn b(&self, clause: usize) -> usize {
        6 * self.n() + clause
    }

    pub fn y(&self, var: usize, copy: usize) -> usize {
        3 * var + copy
    }

    pub fn c(&self, clause: usize) -> usize {
        3 * self.n() + 2 * clause
    }

    pub fn a(&self, clause: usize) -> usize {
        3 * self.n() + 2 * clause + 1
    }

    /// The interconnecting edge of occurrence `copy` of variable `var`.
    pub fn interconnecting(&self, var: usize, copy: usize) -> Edge {
        Edge::new(self.w(var, copy), self.c(self.occurrence_clauses[var][copy]))
    }

    pub fn free_edge(&self, var: usize, copy: usize) -> Edge {
        Edge::new(self.z(var, copy), self.y(var, copy))
    }
}

/// Builds the bounded-degree free-edge instance for a positive 1-in-3
/// 3-SAT formula in which every variable occurs exactly three times.
///
/// * clause `k`: `a_k – b_k – c_k`; `a_k` has only `b_k`, `b_k` ties
///   `a_k` and `c_k`, `c_k` ranks `b_k` last (rank 2).
/// * variable `i`, copy `j`: free edge `z_ij y_ij` (rank 1 at both ends);
///   edges `w_il y_ij` for all `l, j`, rank 2 at `y_ij` and rank 1 at
///   `w_il` iff `l = j`, else 2.
/// * interconnecting edge `w_il c_k` for the clause `k` of occurrence `l`
///   (occurrences ordered by clause, then slot): rank 1 at `c_k`, rank 3 at
///   `w_il`.
///
/// Women's lists conform to the master list `{z} > {w} > {b}`.
pub fn reduce_sat_to_ssmti_free(formula: &SatFormula) -> Result<SatReduction> {
    let occurrences = formula.occurrences();
    let mut occurrence_clauses = Vec::with_capacity(formula.n_vars());
    for (x, occ) in occurrences.iter().enumerate() {
        if occ.len() != 3 {
            return Err(Error::Precondition(format!(
                "variable {} occurs {} times; the construction needs exactly three",
                x + 1,
                occ.len()
            )));
        }
        occurrence_clauses.push([occ[0].0, occ[1].0, occ[2].0]);
    }
    let n = formula.n_vars();
    let m = formula.n_clauses();
    let mut red = SatReduction {
        formula: formula.clone(),
        occurrence_clauses,
        output: ReductionOutput {
            instance: crate::instance::Instance::from_lists(&[], &[])?,
            restricted: RestrictedEdgeSets::new(),
            registry: Registry::default(),
            master: None,
        },
    };

    let mut b = Builder::default();
    let mut free = Vec::with_capacity(3 * n);
    for i in 0..n {
        for j in 0..3 {
            let e = red.free_edge(i, j);
            b.edge(e, 1, 1, EdgeTag::Free);
            free.push(e);
            for l in 0..3 {
                let at_w = if l == j { 1 } else { 2 };
                b.edge(Edge::new(red.w(i, l), red.y(i, j)), at_w, 2, EdgeTag::Variable);
            }
        }
        for l in 0..3 {
            b.edge(red.interconnecting(i, l), 3, 1, EdgeTag::Interconnecting);
        }
    }
    for k in 0..m {
        b.edge(Edge::new(red.b(k), red.a(k)), 1, 1, EdgeTag::Clause);
        b.edge(Edge::new(red.b(k), red.c(k)), 1, 2, EdgeTag::Clause);
    }
    let (instance, tags) = b.build(6 * n + m, 3 * n + 2 * m)?;

    let mut men = Vec::with_capacity(6 * n + m);
    for var in 0..n {
        men.extend((0..3).map(|copy| Role::VarZ { var, copy }));
        men.extend((0..3).map(|copy| Role::VarW { var, copy }));
    }
    men.extend((0..m).map(Role::ClauseB));
    let mut women = Vec::with_capacity(3 * n + 2 * m);
    for var in 0..n {
        women.extend((0..3).map(|copy| Role::VarY { var, copy }));
    }
    for k in 0..m {
        women.extend([Role::ClauseC(k), Role::ClauseA(k)]);
    }
    let registry = Registry {
        men,
        women,
        edges: tags,
    };

    let groups: Vec<Vec<usize>> = [
        (0..n).flat_map(|i| (0..3).map(move |j| 6 * i + j)).collect::<Vec<_>>(),
        (0..n).flat_map(|i| (0..3).map(move |j| 6 * i + 3 + j)).collect(),
        (0..m).map(|k| 6 * n + k).collect(),
    ]
    .into_iter()
    .filter(|g| !g.is_empty())
    .collect();
    let master = MasterList::new(Side::Men, 6 * n + m, groups)?;

    red.output = ReductionOutput {
        instance: instance.with_labels(registry.labels()),
        restricted: RestrictedEdgeSets::new().with_free(free),
        registry,
        master: Some((Side::Women, master)),
    };
    Ok(red)
}

/// Matching built from an exactly-one-in-three assignment: for a true
/// variable its interconnecting and free edges, for a false one the edges
/// `w_il y_il`; plus `a_k b_k` for every clause.
pub fn sat_forward_witness(red: &SatReduction, assignment: &Assignment) -> Result<Matching> {
    assignment.check_one_in_three(&red.formula)?;
    let inst = &red.output.instance;
    let mut m = Matching::for_instance(inst);
    for i in 0..red.formula.n_vars() {
        for l in 0..3 {
            if assignment.get(i) {
                m.insert(red.interconnecting(i, l))?;
                m.insert(red.free_edge(i, l))?;
            } else {
                m.insert(Edge::new(red.w(i, l), red.y(i, l)))?;
            }
        }
    }
    for k in 0..red.formula.n_clauses() {
        m.insert(Edge::new(red.b(k), red.a(k)))?;
    }
    Ok(m)
}

/// Reads the assignment off a strongly stable (with free edges) matching:
/// `x_i` is true iff all three of its interconnecting edges are matched.
pub fn sat_backward_witness(red: &SatReduction, matching: &Matching) -> Result<Assignment> {
    let out = &red.output;
    let v = verify_stable(&out.instance, &out.restricted, matching, StabilityLevel::Strong);
    if !v.is_stable() {
        return Err(Error::Witness(format!(
            "matching is not strongly stable with free edges ({} violations)",
            v.violations.len()
        )));
    }
    let mut values = Vec::with_capacity(red.formula.n_vars());
    for i in 0..red.formula.n_vars() {
        let k = (0..3).filter(|&l| matching.contains(red.interconnecting(i, l))).count();
        match k {
            0 => values.push(false),
            3 => values.push(true),
            _ => {
                return Err(Error::Witness(format!(
                    "internal: stable matching holds {k} of the 3 interconnecting edges of variable {}",
                    i + 1
                )))
            }
        }
    }
    let assignment = Assignment(values);
    assignment
        .check_one_in_three(&red.formula)
        .map_err(|e| Error::Witness(format!("internal: recovered assignment fails: {e}")))?;
    Ok(assignment)
}
