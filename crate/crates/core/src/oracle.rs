//! Exhaustive ground truth for small instances.
//!
//! Matchings are enumerated in lexicographic order of their sorted edge-id
//! lists (the empty matching first). The existence oracles walk the same
//! order and only skip subtrees in which every completion provably fails,
//! so the witness they return is always the first one the plain enumeration
//! would produce.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::instance::{Edge, Instance, RestrictedEdgeSets, Vertex};
use crate::matching::{is_perfect, Matching};
use crate::sat::{Assignment, SatFormula};
use crate::stability::{blocks, verify_stable, Relation, StabilityLevel};

/// Iterator over every matching of an instance, each exactly once.
pub struct MatchingEnumerator<'a> {
    instance: &'a Instance,
    stack: Vec<usize>,
    cursor: usize,
    man_used: Vec<bool>,
    woman_used: Vec<bool>,
    started: bool,
}

pub fn enumerate_matchings(instance: &Instance) -> MatchingEnumerator<'_> {
    MatchingEnumerator {
        instance,
        stack: Vec::new(),
        cursor: 0,
        man_used: vec![false; instance.n_men()],
        woman_used: vec![false; instance.n_women()],
        started: false,
    }
}

impl MatchingEnumerator<'_> {
    fn current(&self) -> Matching {
        Matching::from_edges(
            self.instance.n_men(),
            self.instance.n_women(),
            self.stack.iter().map(|&id| self.instance.edge(id)),
        )
        .expect("enumerator keeps endpoints disjoint")
    }

    fn set_used(&mut self, id: usize, used: bool) {
        let e = self.instance.edge(id);
        self.man_used[e.man] = used;
        self.woman_used[e.woman] = used;
    }
}

impl Iterator for MatchingEnumerator<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        let edges = self.instance.edges();
        loop {
            let next = (self.cursor..edges.len())
                .find(|&j| !self.man_used[edges[j].man] && !self.woman_used[edges[j].woman]);
            if let Some(j) = next {
                self.stack.push(j);
                self.set_used(j, true);
                self.cursor = j + 1;
                return Some(self.current());
            }
            let top = self.stack.pop()?;
            self.set_used(top, false);
            self.cursor = top + 1;
        }
    }
}

const BETTER: u8 = 1;
const EQUAL: u8 = 2;
const WORSE: u8 = 4;

fn bit(r: Relation) -> u8 {
    match r {
        Relation::StrictlyBetter => BETTER,
        Relation::Equal => EQUAL,
        Relation::StrictlyWorse => WORSE,
    }
}

fn relations(mask: u8) -> impl Iterator<Item = Relation> {
    [
        (BETTER, Relation::StrictlyBetter),
        (EQUAL, Relation::Equal),
        (WORSE, Relation::StrictlyWorse),
    ]
    .into_iter()
    .filter(move |(b, _)| mask & b != 0)
    .map(|(_, r)| r)
}

/// Lexicographic depth-first walk with sound subtree cut-offs.
struct LexSearch<'a> {
    instance: &'a Instance,
    restricted: &'a RestrictedEdgeSets,
    level: StabilityLevel,
    perfect_only: bool,
    forbidden: Vec<bool>,
    forced: Vec<usize>,
    free: Vec<bool>,
    man_edge: Vec<Option<usize>>,
    woman_edge: Vec<Option<usize>>,
    chosen: Vec<usize>,
}

impl<'a> LexSearch<'a> {
    fn new(
        instance: &'a Instance,
        restricted: &'a RestrictedEdgeSets,
        level: StabilityLevel,
        perfect_only: bool,
    ) -> Self {
        let flag = |set: &BTreeSet<Edge>| {
            instance.edges().iter().map(|e| set.contains(e)).collect::<Vec<_>>()
        };
        let forced = restricted
            .forced
            .iter()
            .filter_map(|&e| instance.edge_id(e))
            .collect();
        LexSearch {
            instance,
            restricted,
            level,
            perfect_only,
            forbidden: flag(&restricted.forbidden),
            forced,
            free: flag(&restricted.free),
            man_edge: vec![None; instance.n_men()],
            woman_edge: vec![None; instance.n_women()],
            chosen: Vec::new(),
        }
    }

    fn matched_edge(&self, v: Vertex) -> Option<usize> {
        match v {
            Vertex::Man(i) => self.man_edge[i],
            Vertex::Woman(j) => self.woman_edge[j],
        }
    }

    fn is_free_vertex(&self, v: Vertex) -> bool {
        self.matched_edge(v).is_none()
    }

    /// Relations `v` may end up having towards edge `id` in any completion
    /// that only adds edges with id `>= boundary`.
    fn possible(&self, v: Vertex, id: usize, boundary: usize) -> u8 {
        let side = v.side();
        let rank = self.instance.rank_at_side(side, id);
        if let Some(me) = self.matched_edge(v) {
            let r = Relation::compare(rank, Some(self.instance.rank_at_side(side, me)));
            return bit(r);
        }
        let mut mask = BETTER;
        for &other in self.instance.incident(v) {
            if other < boundary || self.forbidden[other] {
                continue;
            }
            let far = match v {
                Vertex::Man(_) => Vertex::Woman(self.instance.edge(other).woman),
                Vertex::Woman(_) => Vertex::Man(self.instance.edge(other).man),
            };
            if self.is_free_vertex(far) {
                let r = Relation::compare(rank, Some(self.instance.rank_at_side(side, other)));
                mask |= bit(r);
            }
        }
        mask
    }

    fn doomed(&self, boundary: usize) -> bool {
        let inst = self.instance;
        for &f in &self.forced {
            let e = inst.edge(f);
            let man_ok = self.man_edge[e.man].is_none_or(|x| x == f);
            let woman_ok = self.woman_edge[e.woman].is_none_or(|x| x == f);
            if !man_ok || !woman_ok || (f < boundary && self.man_edge[e.man] != Some(f)) {
                return true;
            }
        }
        if self.perfect_only {
            for v in inst.vertices() {
                if !self.is_free_vertex(v) {
                    continue;
                }
                let reachable = inst.incident(v).iter().any(|&id| {
                    let e = inst.edge(id);
                    id >= boundary
                        && !self.forbidden[id]
                        && self.man_edge[e.man].is_none()
                        && self.woman_edge[e.woman].is_none()
                });
                if !reachable {
                    return true;
                }
            }
        }
        for id in 0..boundary.min(inst.n_edges()) {
            let e = inst.edge(id);
            if self.free[id] || self.man_edge[e.man] == Some(id) {
                continue;
            }
            let a = self.possible(Vertex::Man(e.man), id, boundary);
            let b = self.possible(Vertex::Woman(e.woman), id, boundary);
            let certain = relations(a).all(|ra| relations(b).all(|rb| blocks(self.level, ra, rb)));
            if certain {
                return true;
            }
        }
        false
    }

    fn current(&self) -> Matching {
        Matching::from_edges(
            self.instance.n_men(),
            self.instance.n_women(),
            self.chosen.iter().map(|&id| self.instance.edge(id)),
        )
        .expect("search keeps endpoints disjoint")
    }

    /// Returns true once `visit` asks to stop.
    fn walk(&mut self, boundary: usize, visit: &mut dyn FnMut(Matching) -> bool) -> bool {
        if self.doomed(boundary) {
            return false;
        }
        let m = self.current();
        let accept = (!self.perfect_only || is_perfect(self.instance, &m))
            && verify_stable(self.instance, self.restricted, &m, self.level).is_stable();
        if accept && visit(m) {
            return true;
        }
        for j in boundary..self.instance.n_edges() {
            let e = self.instance.edge(j);
            if self.forbidden[j] || self.man_edge[e.man].is_some() || self.woman_edge[e.woman].is_some() {
                continue;
            }
            self.man_edge[e.man] = Some(j);
            self.woman_edge[e.woman] = Some(j);
            self.chosen.push(j);
            let stop = self.walk(j + 1, visit);
            self.chosen.pop();
            self.man_edge[e.man] = None;
            self.woman_edge[e.woman] = None;
            if stop {
                return true;
            }
        }
        false
    }
}

/// The first matching in enumeration order that is stable at `level` with
/// the given restricted edges, or `None` if there is none.
pub fn oracle_exists(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    level: StabilityLevel,
) -> Result<Option<Matching>> {
    restricted.validate(instance)?;
    let mut found = None;
    LexSearch::new(instance, restricted, level, false).walk(0, &mut |m| {
        found = Some(m);
        true
    });
    Ok(found)
}

/// The first perfect weakly stable matching, if any.
pub fn oracle_perfect_weak(instance: &Instance) -> Option<Matching> {
    let none = RestrictedEdgeSets::new();
    let mut found = None;
    LexSearch::new(instance, &none, StabilityLevel::Weak, true).walk(0, &mut |m| {
        found = Some(m);
        true
    });
    found
}

/// Every matching stable at `level` with the given restrictions, in
/// enumeration order.
pub fn stable_matchings(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    level: StabilityLevel,
) -> Result<Vec<Matching>> {
    restricted.validate(instance)?;
    let mut all = Vec::new();
    LexSearch::new(instance, restricted, level, false).walk(0, &mut |m| {
        all.push(m);
        false
    });
    Ok(all)
}

/// `{ |M| : M stable at level }` for an unrestricted instance.
pub fn stable_cardinalities(instance: &Instance, level: StabilityLevel) -> BTreeSet<usize> {
    stable_matchings(instance, &RestrictedEdgeSets::new(), level)
        .expect("empty restrictions are always valid")
        .iter()
        .map(Matching::len)
        .collect()
}

/// First exactly-one-in-three assignment in ascending bitmask order, where
/// bit `i` is the value of variable `i` (so `x1 = true` alone comes first).
pub fn solve_1in3_bruteforce(formula: &SatFormula) -> Option<Assignment> {
    let n = formula.n_vars();
    assert!(n < 64, "brute force limited to fewer than 64 variables");
    (0..1u64 << n).find_map(|mask| {
        let ok = formula
            .clauses()
            .iter()
            .all(|c| c.iter().filter(|&&x| mask >> x & 1 == 1).count() == 1);
        ok.then(|| Assignment((0..n).map(|x| mask >> x & 1 == 1).collect()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n_men: usize, n_women: usize) -> Instance {
        let men: Vec<_> = (0..n_men).map(|_| vec![(0..n_women).collect()]).collect();
        let women: Vec<_> = (0..n_women).map(|_| vec![(0..n_men).collect()]).collect();
        Instance::from_lists(&men, &women).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_matchings(&complete(1, 1)).count(), 2);
        assert_eq!(enumerate_matchings(&complete(2, 2)).count(), 7);
        assert_eq!(enumerate_matchings(&complete(3, 3)).count(), 34);
        assert_eq!(enumerate_matchings(&complete(0, 0)).count(), 1);
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let inst = complete(2, 2);
        let lists: Vec<Vec<usize>> = enumerate_matchings(&inst)
            .map(|m| m.edges().iter().map(|&e| inst.edge_id(e).unwrap()).collect())
            .collect();
        let mut sorted = lists.clone();
        sorted.sort();
        assert_eq!(lists, sorted);
        assert_eq!(lists[0], Vec::<usize>::new());
    }

    #[test]
    fn oracle_small_cases() {
        let one = complete(1, 1);
        let e = Edge::new(0, 0);
        let w = oracle_exists(&one, &RestrictedEdgeSets::new(), StabilityLevel::Weak).unwrap();
        assert_eq!(w.unwrap().edges(), vec![e]);
        let p = RestrictedEdgeSets::new().with_forbidden([e]);
        assert_eq!(oracle_exists(&one, &p, StabilityLevel::Weak).unwrap(), None);
        let f = RestrictedEdgeSets::new().with_free([e]);
        let got = oracle_exists(&one, &f, StabilityLevel::Super).unwrap().unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn perfect_weak_cases() {
        assert!(oracle_perfect_weak(&complete(3, 3)).is_some());
        // w1: m1 > m2, m2 has no other edge: nothing perfect
        let path = Instance::from_lists(&[vec![vec![0]], vec![vec![0]]], &[vec![vec![0], vec![1]]]).unwrap();
        assert_eq!(oracle_perfect_weak(&path), None);
    }

    #[test]
    fn cardinalities() {
        assert_eq!(stable_cardinalities(&complete(1, 1), StabilityLevel::Weak), BTreeSet::from([1]));
        // all-tied K22 has no super-stable matching
        assert!(stable_cardinalities(&complete(2, 2), StabilityLevel::Super).is_empty());
    }

    #[test]
    fn one_in_three_bruteforce() {
        let f = SatFormula::new(3, vec![[0, 1, 2]]).unwrap();
        assert_eq!(solve_1in3_bruteforce(&f), Some(Assignment(vec![true, false, false])));
        let f = SatFormula::new(3, vec![[0, 1, 2]; 3]).unwrap();
        assert_eq!(solve_1in3_bruteforce(&f), Some(Assignment(vec![true, false, false])));
        // all four triples over four variables: any true variable leaves the
        // triple without it at zero
        let f = SatFormula::new(4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(solve_1in3_bruteforce(&f), None);
    }
}
