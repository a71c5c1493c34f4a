//! Exact backtracking over the partner choice of each man.
//!
//! Men are decided in id order. After each decision every non-free edge of
//! an already decided man is examined: its man side is fixed, and the woman
//! side is bounded by the partners she can still receive from undecided
//! men. If the edge blocks under every outcome the branch is abandoned.
//! Complete assignments are accepted only after a full
//! [`verify_stable`](crate::stability::verify_stable) check.

use crate::instance::{Instance, RestrictedEdgeSets, Vertex};
use crate::matching::Matching;
use crate::stability::{blocks, verify_stable, Relation, StabilityLevel};

pub(crate) fn exact_search(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    level: StabilityLevel,
) -> Option<Matching> {
    let mut s = Search::new(instance, restricted, level);
    if s.dfs(0) {
        Some(s.matching())
    } else {
        None
    }
}

struct Search<'a> {
    inst: &'a Instance,
    restricted: &'a RestrictedEdgeSets,
    level: StabilityLevel,
    forbidden: Vec<bool>,
    free: Vec<bool>,
    man_forced: Vec<Option<usize>>,
    woman_forced: Vec<Option<usize>>,
    // per man: candidate edge ids, None = stay single
    options: Vec<Vec<Option<usize>>>,
    man_edge: Vec<Option<usize>>,
    woman_edge: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, restricted: &'a RestrictedEdgeSets, level: StabilityLevel) -> Self {
        let m = inst.n_edges();
        let mut forbidden = vec![false; m];
        let mut free = vec![false; m];
        let mut man_forced = vec![None; inst.n_men()];
        let mut woman_forced = vec![None; inst.n_women()];
        for (id, e) in inst.edges().iter().enumerate() {
            forbidden[id] = restricted.forbidden.contains(e);
            free[id] = restricted.free.contains(e);
            if restricted.forced.contains(e) {
                man_forced[e.man] = Some(id);
                woman_forced[e.woman] = Some(id);
            }
        }
        let options = (0..inst.n_men())
            .map(|u| match man_forced[u] {
                Some(f) => vec![Some(f)],
                None => inst
                    .incident(Vertex::Man(u))
                    .iter()
                    .filter(|&&id| !forbidden[id] && woman_forced[inst.edge(id).woman].is_none())
                    .map(|&id| Some(id))
                    .chain(std::iter::once(None))
                    .collect(),
            })
            .collect();
        Search {
            inst,
            restricted,
            level,
            forbidden,
            free,
            man_forced,
            woman_forced,
            options,
            man_edge: vec![None; inst.n_men()],
            woman_edge: vec![None; inst.n_women()],
        }
    }

    fn matching(&self) -> Matching {
        Matching::from_edges(
            self.inst.n_men(),
            self.inst.n_women(),
            self.man_edge.iter().flatten().map(|&id| self.inst.edge(id)),
        )
        .expect("search keeps endpoints disjoint")
    }

    fn dfs(&mut self, u: usize) -> bool {
        if u == self.inst.n_men() {
            let m = self.matching();
            return verify_stable(self.inst, self.restricted, &m, self.level).is_stable();
        }
        for k in 0..self.options[u].len() {
            let opt = self.options[u][k];
            if let Some(id) = opt {
                let w = self.inst.edge(id).woman;
                if self.woman_edge[w].is_some() {
                    continue;
                }
                self.man_edge[u] = Some(id);
                self.woman_edge[w] = Some(id);
            }
            if !self.dead_end(u + 1) && self.dfs(u + 1) {
                return true;
            }
            if let Some(id) = opt {
                self.man_edge[u] = None;
                self.woman_edge[self.inst.edge(id).woman] = None;
            }
        }
        false
    }

    /// Whether some non-free edge of a decided man blocks no matter how the
    /// men from `undecided` onwards choose.
    fn dead_end(&self, undecided: usize) -> bool {
        let inst = self.inst;
        for u in 0..undecided {
            let own = self.man_edge[u].map(|me| inst.man_rank(me));
            for &id in inst.incident(Vertex::Man(u)) {
                if self.free[id] || self.man_edge[u] == Some(id) {
                    continue;
                }
                let at_man = Relation::compare(inst.man_rank(id), own);
                let w = inst.edge(id).woman;
                let rank = inst.woman_rank(id);
                let certain = self
                    .woman_outcomes(w, undecided)
                    .all(|matched| blocks(self.level, at_man, Relation::compare(rank, matched)));
                if certain {
                    return true;
                }
            }
        }
        false
    }

    /// Ranks (None = single) the woman may end up holding.
    fn woman_outcomes(&self, w: usize, undecided: usize) -> impl Iterator<Item = Option<u32>> + '_ {
        let inst = self.inst;
        let fixed = self.woman_edge[w].map(|id| inst.woman_rank(id));
        let pending_forced = self.woman_forced[w]
            .filter(|&f| self.woman_edge[w].is_none() && inst.edge(f).man >= undecided);
        let open = self.woman_edge[w].is_none() && pending_forced.is_none();

        let settled = self.woman_edge[w].is_some() || pending_forced.is_some();
        let single = (!settled).then_some(None);
        let fixed = fixed.map(Some);
        let forced = pending_forced.map(|f| Some(inst.woman_rank(f)));
        let later = inst
            .incident(Vertex::Woman(w))
            .iter()
            .filter(move |&&id| {
                let man = inst.edge(id).man;
                open && man >= undecided
                    && !self.forbidden[id]
                    && self.man_forced[man].is_none()
            })
            .map(move |&id| Some(inst.woman_rank(id)));
        fixed.into_iter().chain(forced).chain(single).chain(later)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;

    #[test]
    fn forced_edge_is_honoured() {
        // strict 2x2 where the stable matching is m1-w1, m2-w2
        let inst = Instance::from_lists(
            &[vec![vec![0], vec![1]], vec![vec![1], vec![0]]],
            &[vec![vec![0], vec![1]], vec![vec![1], vec![0]]],
        )
        .unwrap();
        let none = RestrictedEdgeSets::new();
        let m = exact_search(&inst, &none, StabilityLevel::Super).unwrap();
        assert_eq!(m.edges(), vec![Edge::new(0, 0), Edge::new(1, 1)]);
        let q = RestrictedEdgeSets::new().with_forced([Edge::new(0, 1)]);
        assert_eq!(exact_search(&inst, &q, StabilityLevel::Weak), None);
    }
}
