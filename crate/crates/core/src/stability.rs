//! Blocking edges under weak, strong and super stability, and verification
//! of a matching against restricted edge sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, RestrictedEdgeSets, Vertex};
use crate::matching::Matching;

/// Ordered by strictness: a matching stable at a level is stable at every
/// lower level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StabilityLevel {
    Weak,
    Strong,
    Super,
}

impl StabilityLevel {
    pub const ALL: [StabilityLevel; 3] = [
        StabilityLevel::Weak,
        StabilityLevel::Strong,
        StabilityLevel::Super,
    ];
}

impl fmt::Display for StabilityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityLevel::Weak => "weak",
            StabilityLevel::Strong => "strong",
            StabilityLevel::Super => "super",
        })
    }
}

impl FromStr for StabilityLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weak" => Ok(StabilityLevel::Weak),
            "strong" => Ok(StabilityLevel::Strong),
            "super" => Ok(StabilityLevel::Super),
            other => Err(Error::Unsupported(format!("unknown stability level `{other}`"))),
        }
    }
}

/// How a vertex sees a candidate edge relative to its current situation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    StrictlyBetter,
    Equal,
    StrictlyWorse,
}

impl Relation {
    /// Compares the rank of a candidate edge with the rank of the matching
    /// edge; `None` means unmatched, which is worse than any edge.
    pub fn compare(candidate: u32, matched: Option<u32>) -> Relation {
        match matched {
            None => Relation::StrictlyBetter,
            Some(r) if candidate < r => Relation::StrictlyBetter,
            Some(r) if candidate == r => Relation::Equal,
            Some(_) => Relation::StrictlyWorse,
        }
    }

    fn at_least_as_good(self) -> bool {
        self != Relation::StrictlyWorse
    }
}

/// Whether a non-matching edge whose endpoints see it as `a` and `b`
/// blocks at `level`.
pub fn blocks(level: StabilityLevel, a: Relation, b: Relation) -> bool {
    use Relation::StrictlyBetter as B;
    match level {
        StabilityLevel::Weak => a == B && b == B,
        StabilityLevel::Strong => {
            (a == B && b.at_least_as_good()) || (b == B && a.at_least_as_good())
        }
        StabilityLevel::Super => a.at_least_as_good() && b.at_least_as_good(),
    }
}

fn matched_rank(instance: &Instance, matching: &Matching, v: Vertex) -> Result<Option<u32>> {
    match matching.edge_at(v) {
        None => Ok(None),
        Some(me) => instance
            .rank(v, me)
            .map(Some)
            .ok_or(Error::NotAnEdge(me)),
    }
}

pub fn relation_at(
    instance: &Instance,
    vertex: Vertex,
    edge: Edge,
    matching: &Matching,
) -> Result<Relation> {
    if !edge.is_incident(vertex) {
        return Err(Error::NotIncident { vertex, edge });
    }
    let rank = instance.rank(vertex, edge).ok_or(Error::NotAnEdge(edge))?;
    Ok(Relation::compare(rank, matched_rank(instance, matching, vertex)?))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Blocking {
    pub weak: bool,
    pub strong: bool,
    pub super_: bool,
}

impl Blocking {
    pub fn from_relations(a: Relation, b: Relation) -> Blocking {
        Blocking {
            weak: blocks(StabilityLevel::Weak, a, b),
            strong: blocks(StabilityLevel::Strong, a, b),
            super_: blocks(StabilityLevel::Super, a, b),
        }
    }

    pub fn at(&self, level: StabilityLevel) -> bool {
        match level {
            StabilityLevel::Weak => self.weak,
            StabilityLevel::Strong => self.strong,
            StabilityLevel::Super => self.super_,
        }
    }
}

pub fn classify_edge(instance: &Instance, matching: &Matching, edge: Edge) -> Result<Blocking> {
    if matching.contains(edge) {
        return Err(Error::EdgeInMatching(edge));
    }
    let (u, w) = edge.endpoints();
    let a = relation_at(instance, u, edge, matching)?;
    let b = relation_at(instance, w, edge, matching)?;
    Ok(Blocking::from_relations(a, b))
}

/// Per-edge classification of every non-matching edge, plus the three
/// aggregate blocking sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockingReport {
    pub edges: Vec<(Edge, Blocking)>,
    pub weak: BTreeSet<Edge>,
    pub strong: BTreeSet<Edge>,
    pub super_: BTreeSet<Edge>,
}

impl BlockingReport {
    pub fn blocking(&self, level: StabilityLevel) -> &BTreeSet<Edge> {
        match level {
            StabilityLevel::Weak => &self.weak,
            StabilityLevel::Strong => &self.strong,
            StabilityLevel::Super => &self.super_,
        }
    }
}

pub fn blocking_report(instance: &Instance, matching: &Matching) -> Result<BlockingReport> {
    matching.check_against(instance)?;
    let mut report = BlockingReport::default();
    for &e in instance.edges() {
        if matching.contains(e) {
            continue;
        }
        let b = classify_edge(instance, matching, e)?;
        if b.weak {
            report.weak.insert(e);
        }
        if b.strong {
            report.strong.insert(e);
        }
        if b.super_ {
            report.super_.insert(e);
        }
        report.edges.push((e, b));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    /// A matching pair that is not an edge of the instance.
    NotAnEdge(Edge),
    ForbiddenInMatching(Edge),
    ForcedMissing(Edge),
    /// A non-free edge blocking at the requested level.
    Blocking(Edge),
}

impl Violation {
    pub fn edge(&self) -> Edge {
        match *self {
            Violation::NotAnEdge(e)
            | Violation::ForbiddenInMatching(e)
            | Violation::ForcedMissing(e)
            | Violation::Blocking(e) => e,
        }
    }

    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::NotAnEdge(_) => "not_an_edge",
            Violation::ForbiddenInMatching(_) => "forbidden_in_matching",
            Violation::ForcedMissing(_) => "forced_missing",
            Violation::Blocking(_) => "blocking",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAnEdge(e) => write!(f, "matching pair {e} is not an edge"),
            Violation::ForbiddenInMatching(e) => write!(f, "forbidden edge {e} is in the matching"),
            Violation::ForcedMissing(e) => write!(f, "forced edge missing: {e}"),
            Violation::Blocking(e) => write!(f, "blocking edge {e} is not free"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub level: StabilityLevel,
    pub violations: Vec<Violation>,
}

impl Verification {
    pub fn is_stable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `M ∩ P = ∅`, `Q ⊆ M` and that every edge blocking `M` at `level`
/// is free. Violations are listed in a fixed order: invalid pairs,
/// forbidden, forced, blocking; edges ascending within each group.
pub fn verify_stable(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    matching: &Matching,
    level: StabilityLevel,
) -> Verification {
    let mut violations = Vec::new();
    let mut valid = true;
    for e in matching.edges() {
        if !instance.contains_edge(e) {
            violations.push(Violation::NotAnEdge(e));
            valid = false;
        }
    }
    for e in matching.edges() {
        if restricted.forbidden.contains(&e) {
            violations.push(Violation::ForbiddenInMatching(e));
        }
    }
    for &e in &restricted.forced {
        if !matching.contains(e) {
            violations.push(Violation::ForcedMissing(e));
        }
    }
    if valid {
        for (id, &e) in instance.edges().iter().enumerate() {
            if matching.contains(e) || restricted.free.contains(&e) {
                continue;
            }
            let a = Relation::compare(
                instance.man_rank(id),
                matching
                    .edge_at(Vertex::Man(e.man))
                    .and_then(|me| instance.rank(Vertex::Man(e.man), me)),
            );
            let b = Relation::compare(
                instance.woman_rank(id),
                matching
                    .edge_at(Vertex::Woman(e.woman))
                    .and_then(|me| instance.rank(Vertex::Woman(e.woman), me)),
            );
            if blocks(level, a, b) {
                violations.push(Violation::Blocking(e));
            }
        }
    }
    Verification { level, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Relation::*;

    fn one_edge() -> Instance {
        Instance::from_lists(&[vec![vec![0]]], &[vec![vec![0]]]).unwrap()
    }

    #[test]
    fn relation_rules() {
        // m1: (w1 w2) w3
        let inst = Instance::from_lists(
            &[vec![vec![0, 1], vec![2]]],
            &[vec![vec![0]], vec![vec![0]], vec![vec![0]]],
        )
        .unwrap();
        let empty = Matching::for_instance(&inst);
        let u = Vertex::Man(0);
        assert_eq!(relation_at(&inst, u, Edge::new(0, 2), &empty).unwrap(), StrictlyBetter);
        let m = Matching::from_edges(1, 3, [Edge::new(0, 0)]).unwrap();
        assert_eq!(relation_at(&inst, u, Edge::new(0, 0), &m).unwrap(), Equal);
        assert_eq!(relation_at(&inst, u, Edge::new(0, 1), &m).unwrap(), Equal);
        assert_eq!(relation_at(&inst, u, Edge::new(0, 2), &m).unwrap(), StrictlyWorse);
        assert!(matches!(
            relation_at(&inst, Vertex::Woman(1), Edge::new(0, 0), &m),
            Err(Error::NotIncident { .. })
        ));
    }

    #[test]
    fn classification_cases() {
        // both unmatched
        let inst = one_edge();
        let b = classify_edge(&inst, &Matching::for_instance(&inst), Edge::new(0, 0)).unwrap();
        assert_eq!((b.weak, b.strong, b.super_), (true, true, true));

        // m1 strictly prefers w1 over w2 (his partner), w1 ties m1 with her partner m2
        let inst = Instance::from_lists(
            &[vec![vec![0], vec![1]], vec![vec![0]]],
            &[vec![vec![0, 1]], vec![vec![0]]],
        )
        .unwrap();
        let m = Matching::from_edges(2, 2, [Edge::new(0, 1), Edge::new(1, 0)]).unwrap();
        let b = classify_edge(&inst, &m, Edge::new(0, 0)).unwrap();
        assert_eq!((b.weak, b.strong, b.super_), (false, true, true));

        // both indifferent
        let inst = Instance::from_lists(
            &[vec![vec![0, 1]], vec![vec![0, 1]]],
            &[vec![vec![0, 1]], vec![vec![0, 1]]],
        )
        .unwrap();
        let m = Matching::from_edges(2, 2, [Edge::new(0, 0), Edge::new(1, 1)]).unwrap();
        let b = classify_edge(&inst, &m, Edge::new(0, 1)).unwrap();
        assert_eq!((b.weak, b.strong, b.super_), (false, false, true));
        assert_eq!(
            classify_edge(&inst, &m, Edge::new(0, 0)),
            Err(Error::EdgeInMatching(Edge::new(0, 0)))
        );
    }

    #[test]
    fn report_on_empty_matching() {
        let inst = one_edge();
        let r = blocking_report(&inst, &Matching::for_instance(&inst)).unwrap();
        for level in StabilityLevel::ALL {
            assert_eq!(r.blocking(level).iter().copied().collect::<Vec<_>>(), vec![Edge::new(0, 0)]);
        }
    }

    #[test]
    fn verify_definition_clauses() {
        let inst = one_edge();
        let e = Edge::new(0, 0);
        let empty = Matching::for_instance(&inst);

        let q = RestrictedEdgeSets::new().with_forced([e]);
        let v = verify_stable(&inst, &q, &empty, StabilityLevel::Weak);
        assert!(!v.is_stable());
        assert!(v.violations.contains(&Violation::ForcedMissing(e)));

        let f = RestrictedEdgeSets::new().with_free([e]);
        assert!(verify_stable(&inst, &f, &empty, StabilityLevel::Super).is_stable());

        let p = RestrictedEdgeSets::new().with_forbidden([e]);
        let full = Matching::from_edges(1, 1, [e]).unwrap();
        assert_eq!(
            verify_stable(&inst, &p, &full, StabilityLevel::Weak).violations,
            vec![Violation::ForbiddenInMatching(e)]
        );
        assert_eq!(
            verify_stable(&inst, &p, &empty, StabilityLevel::Weak).violations,
            vec![Violation::Blocking(e)]
        );
    }

    #[test]
    fn invalid_pairs_reported() {
        let inst = one_edge();
        let m = Matching::from_edges(1, 2, [Edge::new(0, 1)]).unwrap();
        assert!(!verify_stable(&inst, &RestrictedEdgeSets::new(), &m, StabilityLevel::Weak).is_stable());
    }

    #[test]
    fn level_parse_and_order() {
        assert_eq!("Strong".parse::<StabilityLevel>().unwrap(), StabilityLevel::Strong);
        assert!("medium".parse::<StabilityLevel>().is_err());
        assert!(StabilityLevel::Weak < StabilityLevel::Strong);
        assert!(StabilityLevel::Strong < StabilityLevel::Super);
    }

    #[test]
    fn blocking_chain_over_all_relation_pairs() {
        let rels = [StrictlyBetter, Equal, StrictlyWorse];
        for a in rels {
            for b in rels {
                let x = Blocking::from_relations(a, b);
                assert!(!x.weak || x.strong);
                assert!(!x.strong || x.super_);
            }
        }
    }
}
