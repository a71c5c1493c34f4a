//! Bipartite preference systems with ties.
//!
//! Vertex ids are dense per side (`0..n_men`, `0..n_women`). Every edge
//! carries one rank per endpoint; lower ranks are better and equal ranks at
//! a vertex form a tie. Ranks are always kept normalized: at each vertex the
//! used values are exactly `1..=k` for `k` distinct tie-groups.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Men,
    Women,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Men => Side::Women,
            Side::Women => Side::Men,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Men => f.write_str("men"),
            Side::Women => f.write_str("women"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Man(usize),
    Woman(usize),
}

impl Vertex {
    pub fn new(side: Side, index: usize) -> Vertex {
        match side {
            Side::Men => Vertex::Man(index),
            Side::Women => Vertex::Woman(index),
        }
    }

    pub fn side(self) -> Side {
        match self {
            Vertex::Man(_) => Side::Men,
            Vertex::Woman(_) => Side::Women,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Vertex::Man(i) | Vertex::Woman(i) => i,
        }
    }
}

/// Displays 1-based, e.g. `m1`, `w3`.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Man(i) => write!(f, "m{}", i + 1),
            Vertex::Woman(i) => write!(f, "w{}", i + 1),
        }
    }
}

/// An unordered man–woman pair. Ordered by man first, then woman.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub man: usize,
    pub woman: usize,
}

impl Edge {
    pub fn new(man: usize, woman: usize) -> Edge {
        Edge { man, woman }
    }

    pub fn endpoint(self, side: Side) -> Vertex {
        match side {
            Side::Men => Vertex::Man(self.man),
            Side::Women => Vertex::Woman(self.woman),
        }
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (Vertex::Man(self.man), Vertex::Woman(self.woman))
    }

    pub fn is_incident(self, v: Vertex) -> bool {
        match v {
            Vertex::Man(i) => self.man == i,
            Vertex::Woman(j) => self.woman == j,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}-w{}", self.man + 1, self.woman + 1)
    }
}

/// A preference list as a sequence of tie-groups of opposite-side ids.
pub type TieGroups = Vec<Vec<usize>>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    pub men: Vec<String>,
    pub women: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n_men: usize,
    n_women: usize,
    edges: Vec<Edge>,
    man_rank: Vec<u32>,
    woman_rank: Vec<u32>,
    // edge ids per vertex, sorted by (rank, other endpoint)
    men_adj: Vec<Vec<usize>>,
    women_adj: Vec<Vec<usize>>,
    index: HashMap<Edge, usize>,
    labels: Option<Labels>,
}

impl Instance {
    /// Builds an instance from per-vertex preference lists. An edge exists
    /// iff both endpoints list each other.
    pub fn from_lists(men_lists: &[TieGroups], women_lists: &[TieGroups]) -> Result<Instance> {
        let n_men = men_lists.len();
        let n_women = women_lists.len();
        let men_ranks = collect_list_ranks(Side::Men, men_lists, n_women)?;
        let women_ranks = collect_list_ranks(Side::Women, women_lists, n_men)?;

        let mut items = Vec::new();
        for (&(man, woman), &mr) in &men_ranks {
            match women_ranks.get(&(woman, man)) {
                Some(&wr) => items.push((Edge::new(man, woman), mr, wr)),
                None => {
                    return Err(Error::NonReciprocal {
                        from: Vertex::Man(man),
                        to: Vertex::Woman(woman),
                    })
                }
            }
        }
        for &(woman, man) in women_ranks.keys() {
            if !men_ranks.contains_key(&(man, woman)) {
                return Err(Error::NonReciprocal {
                    from: Vertex::Woman(woman),
                    to: Vertex::Man(man),
                });
            }
        }
        Instance::from_ranked_edges(n_men, n_women, items)
    }

    /// Builds an instance from edges with raw ranks `(edge, rank at man,
    /// rank at woman)`. Raw ranks only need to be positive; they are
    /// compressed to contiguous values per vertex.
    pub fn from_ranked_edges<I>(n_men: usize, n_women: usize, items: I) -> Result<Instance>
    where
        I: IntoIterator<Item = (Edge, u32, u32)>,
    {
        let mut items: Vec<(Edge, u32, u32)> = items.into_iter().collect();
        items.sort_by_key(|&(e, _, _)| e);
        for w in items.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateEdge(w[0].0));
            }
        }
        for &(e, mr, wr) in &items {
            if e.man >= n_men {
                return Err(Error::UnknownVertex {
                    vertex: Vertex::Woman(e.woman),
                    listed: Vertex::Man(e.man),
                });
            }
            if e.woman >= n_women {
                return Err(Error::UnknownVertex {
                    vertex: Vertex::Man(e.man),
                    listed: Vertex::Woman(e.woman),
                });
            }
            if mr == 0 || wr == 0 {
                return Err(Error::ZeroRank(e));
            }
        }

        let edges: Vec<Edge> = items.iter().map(|&(e, _, _)| e).collect();
        let mut men_adj = vec![Vec::new(); n_men];
        let mut women_adj = vec![Vec::new(); n_women];
        for (id, e) in edges.iter().enumerate() {
            men_adj[e.man].push(id);
            women_adj[e.woman].push(id);
        }
        let raw_man: Vec<u32> = items.iter().map(|&(_, r, _)| r).collect();
        let raw_woman: Vec<u32> = items.iter().map(|&(_, _, r)| r).collect();
        let man_rank = normalize(&men_adj, &raw_man, edges.len());
        let woman_rank = normalize(&women_adj, &raw_woman, edges.len());

        for adj in &mut men_adj {
            adj.sort_by_key(|&id| (man_rank[id], edges[id].woman));
        }
        for adj in &mut women_adj {
            adj.sort_by_key(|&id| (woman_rank[id], edges[id].man));
        }
        let index = edges.iter().enumerate().map(|(id, &e)| (e, id)).collect();

        Ok(Instance {
            n_men,
            n_women,
            edges,
            man_rank,
            woman_rank,
            men_adj,
            women_adj,
            index,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Labels) -> Instance {
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn n_men(&self) -> usize {
        self.n_men
    }

    pub fn n_women(&self) -> usize {
        self.n_women
    }

    pub fn n_vertices(&self) -> usize {
        self.n_men + self.n_women
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Men => self.n_men,
            Side::Women => self.n_women,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n_men)
            .map(Vertex::Man)
            .chain((0..self.n_women).map(Vertex::Woman))
    }

    /// All edges, sorted. Edge ids are positions in this slice.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.index.contains_key(&e)
    }

    pub fn man_rank(&self, id: usize) -> u32 {
        self.man_rank[id]
    }

    pub fn woman_rank(&self, id: usize) -> u32 {
        self.woman_rank[id]
    }

    pub fn rank_at_side(&self, side: Side, id: usize) -> u32 {
        match side {
            Side::Men => self.man_rank[id],
            Side::Women => self.woman_rank[id],
        }
    }

    /// `rank(v, e)`, or `None` when `e` is not an edge incident to `v`.
    pub fn rank(&self, v: Vertex, e: Edge) -> Option<u32> {
        if !e.is_incident(v) {
            return None;
        }
        let id = self.edge_id(e)?;
        Some(self.rank_at_side(v.side(), id))
    }

    /// Edge ids incident to `v`, best first.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        match v {
            Vertex::Man(i) => &self.men_adj[i],
            Vertex::Woman(j) => &self.women_adj[j],
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of tie-groups in `v`'s list (0 for an isolated vertex).
    pub fn max_rank(&self, v: Vertex) -> u32 {
        self.incident(v)
            .last()
            .map(|&id| self.rank_at_side(v.side(), id))
            .unwrap_or(0)
    }

    /// The neighbour on the other side of edge `id` as seen from `v`.
    pub fn other_end(&self, v: Vertex, id: usize) -> usize {
        let e = self.edges[id];
        match v {
            Vertex::Man(_) => e.woman,
            Vertex::Woman(_) => e.man,
        }
    }

    /// `v`'s list as tie-groups of opposite-side ids, members ascending.
    pub fn preference_list(&self, v: Vertex) -> TieGroups {
        let mut groups: TieGroups = Vec::new();
        let mut last_rank = 0;
        for &id in self.incident(v) {
            let r = self.rank_at_side(v.side(), id);
            if r != last_rank {
                groups.push(Vec::new());
                last_rank = r;
            }
            groups.last_mut().unwrap().push(self.other_end(v, id));
        }
        groups
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n_men * self.n_women
    }

    /// Length of the longest tie over all lists on `side`.
    pub fn max_tie_length(&self, side: Side) -> usize {
        (0..self.side_len(side))
            .flat_map(|i| self.preference_list(Vertex::new(side, i)))
            .map(|g| g.len())
            .max()
            .unwrap_or(0)
    }

    /// Returns a copy without the given edges, ranks re-normalized.
    pub fn without_edges(&self, removed: &BTreeSet<Edge>) -> Instance {
        let items = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !removed.contains(e))
            .map(|(id, &e)| (e, self.man_rank[id], self.woman_rank[id]));
        let mut out = Instance::from_ranked_edges(self.n_men, self.n_women, items)
            .expect("sub-instance of a valid instance is valid");
        out.labels = self.labels.clone();
        out
    }

    /// Ranked edges `(edge, man rank, woman rank)` in edge-id order.
    pub fn ranked_edges(&self) -> impl Iterator<Item = (Edge, u32, u32)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .map(|(id, &e)| (e, self.man_rank[id], self.woman_rank[id]))
    }
}

fn collect_list_ranks(
    side: Side,
    lists: &[TieGroups],
    n_other: usize,
) -> Result<BTreeMap<(usize, usize), u32>> {
    let mut out = BTreeMap::new();
    for (v, groups) in lists.iter().enumerate() {
        let vertex = Vertex::new(side, v);
        let mut rank = 0u32;
        for group in groups.iter().filter(|g| !g.is_empty()) {
            rank += 1;
            for &o in group {
                let listed = Vertex::new(side.opposite(), o);
                if o >= n_other {
                    return Err(Error::UnknownVertex { vertex, listed });
                }
                if out.insert((v, o), rank).is_some() {
                    return Err(Error::DuplicateListing { vertex, listed });
                }
            }
        }
    }
    Ok(out)
}

fn normalize(adj: &[Vec<usize>], raw: &[u32], n_edges: usize) -> Vec<u32> {
    let mut out = vec![0; n_edges];
    for ids in adj {
        let mut values: Vec<u32> = ids.iter().map(|&id| raw[id]).collect();
        values.sort_unstable();
        values.dedup();
        for &id in ids {
            out[id] = values.binary_search(&raw[id]).unwrap() as u32 + 1;
        }
    }
    out
}

/// Convenience wrapper over [`Instance::from_lists`].
pub fn build_instance(men_lists: &[TieGroups], women_lists: &[TieGroups]) -> Result<Instance> {
    Instance::from_lists(men_lists, women_lists)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RestrictionKind {
    Forbidden,
    Forced,
    Free,
}

impl fmt::Display for RestrictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictionKind::Forbidden => f.write_str("forbidden"),
            RestrictionKind::Forced => f.write_str("forced"),
            RestrictionKind::Free => f.write_str("free"),
        }
    }
}

/// The forbidden (P), forced (Q) and free (F) edge sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RestrictedEdgeSets {
    pub forbidden: BTreeSet<Edge>,
    pub forced: BTreeSet<Edge>,
    pub free: BTreeSet<Edge>,
}

impl RestrictedEdgeSets {
    pub fn new() -> RestrictedEdgeSets {
        RestrictedEdgeSets::default()
    }

    pub fn with_forbidden<I: IntoIterator<Item = Edge>>(mut self, edges: I) -> Self {
        self.forbidden.extend(edges);
        self
    }

    pub fn with_forced<I: IntoIterator<Item = Edge>>(mut self, edges: I) -> Self {
        self.forced.extend(edges);
        self
    }

    pub fn with_free<I: IntoIterator<Item = Edge>>(mut self, edges: I) -> Self {
        self.free.extend(edges);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.forbidden.is_empty() && self.forced.is_empty() && self.free.is_empty()
    }

    pub fn set(&self, kind: RestrictionKind) -> &BTreeSet<Edge> {
        match kind {
            RestrictionKind::Forbidden => &self.forbidden,
            RestrictionKind::Forced => &self.forced,
            RestrictionKind::Free => &self.free,
        }
    }

    pub fn set_mut(&mut self, kind: RestrictionKind) -> &mut BTreeSet<Edge> {
        match kind {
            RestrictionKind::Forbidden => &mut self.forbidden,
            RestrictionKind::Forced => &mut self.forced,
            RestrictionKind::Free => &mut self.free,
        }
    }

    pub fn kind_of(&self, e: Edge) -> Option<RestrictionKind> {
        KINDS.into_iter().find(|&k| self.set(k).contains(&e))
    }

    pub fn validate(&self, instance: &Instance) -> Result<()> {
        validate_restrictions(instance, self)
    }
}

const KINDS: [RestrictionKind; 3] = [
    RestrictionKind::Forbidden,
    RestrictionKind::Forced,
    RestrictionKind::Free,
];

/// Checks that P, Q, F are pairwise disjoint subsets of E and that Q is a
/// matching.
pub fn validate_restrictions(instance: &Instance, restricted: &RestrictedEdgeSets) -> Result<()> {
    for (i, &a) in KINDS.iter().enumerate() {
        for &b in &KINDS[i + 1..] {
            if let Some(&edge) = restricted.set(a).intersection(restricted.set(b)).next() {
                return Err(Error::Overlap {
                    edge,
                    first: a,
                    second: b,
                });
            }
        }
    }
    for kind in KINDS {
        for &edge in restricted.set(kind) {
            if !instance.contains_edge(edge) {
                return Err(Error::RestrictedNotInGraph { edge, kind });
            }
        }
    }
    let mut seen: HashMap<Vertex, Edge> = HashMap::new();
    for &e in &restricted.forced {
        let (u, w) = e.endpoints();
        for v in [u, w] {
            if let Some(&first) = seen.get(&v) {
                return Err(Error::ForcedConflict {
                    vertex: v,
                    first,
                    second: e,
                });
            }
            seen.insert(v, e);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_edge() -> Instance {
        Instance::from_lists(&[vec![vec![0]]], &[vec![vec![0]]]).unwrap()
    }

    #[test]
    fn single_edge_instance() {
        let inst = one_edge();
        assert_eq!(inst.n_edges(), 1);
        let e = Edge::new(0, 0);
        assert_eq!(inst.rank(Vertex::Man(0), e), Some(1));
        assert_eq!(inst.rank(Vertex::Woman(0), e), Some(1));
    }

    #[test]
    fn tie_at_man() {
        let inst =
            Instance::from_lists(&[vec![vec![0, 1]]], &[vec![vec![0]], vec![vec![0]]]).unwrap();
        assert_eq!(inst.n_edges(), 2);
        assert_eq!(inst.rank(Vertex::Man(0), Edge::new(0, 0)), Some(1));
        assert_eq!(inst.rank(Vertex::Man(0), Edge::new(0, 1)), Some(1));
        assert_eq!(inst.preference_list(Vertex::Man(0)), vec![vec![0, 1]]);
    }

    #[test]
    fn non_reciprocal_rejected() {
        let err = Instance::from_lists(&[vec![vec![0], vec![1]]], &[vec![vec![0]], vec![]])
            .unwrap_err();
        assert_eq!(
            err,
            Error::NonReciprocal {
                from: Vertex::Man(0),
                to: Vertex::Woman(1)
            }
        );
        let err = Instance::from_lists(&[vec![]], &[vec![vec![0]]]).unwrap_err();
        assert!(matches!(err, Error::NonReciprocal { .. }));
    }

    #[test]
    fn duplicates_and_wrong_side() {
        let err = Instance::from_lists(&[vec![vec![0], vec![0]]], &[vec![vec![0]]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateListing { .. }));
        let err = Instance::from_lists(&[vec![vec![3]]], &[vec![vec![0]]]).unwrap_err();
        assert!(matches!(err, Error::UnknownVertex { .. }));
    }

    #[test]
    fn ranks_are_normalized() {
        let inst = Instance::from_ranked_edges(
            1,
            3,
            [
                (Edge::new(0, 0), 7, 4),
                (Edge::new(0, 1), 3, 9),
                (Edge::new(0, 2), 7, 1),
            ],
        )
        .unwrap();
        assert_eq!(inst.preference_list(Vertex::Man(0)), vec![vec![1], vec![0, 2]]);
        assert_eq!(inst.max_rank(Vertex::Man(0)), 2);
        assert_eq!(inst.max_rank(Vertex::Woman(1)), 1);
    }

    #[test]
    fn restrictions_validation() {
        let inst = one_edge();
        let e = Edge::new(0, 0);
        assert!(validate_restrictions(&inst, &RestrictedEdgeSets::new().with_forbidden([e])).is_ok());
        let both = RestrictedEdgeSets::new().with_forbidden([e]).with_forced([e]);
        assert!(matches!(
            validate_restrictions(&inst, &both),
            Err(Error::Overlap { .. })
        ));
        let missing = RestrictedEdgeSets::new().with_free([Edge::new(0, 1)]);
        assert!(matches!(
            validate_restrictions(&inst, &missing),
            Err(Error::RestrictedNotInGraph { .. })
        ));

        let fan = Instance::from_lists(&[vec![vec![0, 1]]], &[vec![vec![0]], vec![vec![0]]]).unwrap();
        let q = RestrictedEdgeSets::new().with_forced([Edge::new(0, 0), Edge::new(0, 1)]);
        assert_eq!(
            validate_restrictions(&fan, &q),
            Err(Error::ForcedConflict {
                vertex: Vertex::Man(0),
                first: Edge::new(0, 0),
                second: Edge::new(0, 1)
            })
        );
    }
}
