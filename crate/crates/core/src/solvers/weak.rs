use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, Vertex};
use crate::matching::Matching;

/// A weakly stable matching, which always exists.
///
/// Ties are broken by ascending vertex id on both sides and man-proposing
/// deferred acceptance is run on the resulting strict lists. Any matching
/// stable for a linear extension of the lists is weakly stable for the
/// original lists.
pub fn solve_weak(instance: &Instance) -> Matching {
    let n_men = instance.n_men();
    let mut next = vec![0usize; n_men];
    let mut held: Vec<Option<usize>> = vec![None; instance.n_women()];
    let mut queue: VecDeque<usize> = (0..n_men).collect();
    let woman_key = |id: usize| (instance.woman_rank(id), instance.edge(id).man);

    while let Some(u) = queue.pop_front() {
        // incident lists are sorted by (rank, woman id)
        let list = instance.incident(Vertex::Man(u));
        let Some(&id) = list.get(next[u]) else {
            continue;
        };
        next[u] += 1;
        let w = instance.edge(id).woman;
        match held[w] {
            None => held[w] = Some(id),
            Some(cur) if woman_key(id) < woman_key(cur) => {
                held[w] = Some(id);
                queue.push_back(instance.edge(cur).man);
            }
            Some(_) => queue.push_back(u),
        }
    }

    Matching::from_edges(
        n_men,
        instance.n_women(),
        held.iter().flatten().map(|&id| instance.edge(id)),
    )
    .expect("deferred acceptance yields a matching")
}

/// A matching whose weakly blocking edges all lie in `free`. A weakly
/// stable matching qualifies, so this is [`solve_weak`] after checking that
/// the free edges belong to the instance.
pub fn solve_weak_with_free(instance: &Instance, free: &BTreeSet<Edge>) -> Result<Matching> {
    if let Some(&edge) = free.iter().find(|&&e| !instance.contains_edge(e)) {
        return Err(Error::RestrictedNotInGraph {
            edge,
            kind: crate::instance::RestrictionKind::Free,
        });
    }
    Ok(solve_weak(instance))
}
