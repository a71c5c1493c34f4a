use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, RestrictedEdgeSets, Vertex};
use crate::matching::{is_perfect, Matching};
use crate::stability::{verify_stable, StabilityLevel};

use super::{Builder, EdgeTag, ReductionOutput, Registry, Role};

/// Output of [`reduce_perfect_to_forbidden1`].
///
/// Source men keep ids `0..p` and source women `0..q`; the added vertices
/// are `u1 = p`, `u2 = p + 1`, `w1 = q`, `w2 = q + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forbidden1Reduction {
    pub source: Instance,
    pub output: ReductionOutput,
}

impl Forbidden1Reduction {
    pub fn u1(&self) -> usize {
        self.source.n_men()
    }

    pub fn u2(&self) -> usize {
        self.source.n_men() + 1
    }

    pub fn w1(&self) -> usize {
        self.source.n_women()
    }

    pub fn w2(&self) -> usize {
        self.source.n_women() + 1
    }

    pub fn forbidden_edge(&self) -> Edge {
        Edge::new(self.u2(), self.w2())
    }
}

/// Embeds `source` into a complete bipartite instance on two extra men and
/// two extra women with the single forbidden edge `u2 w2`.
///
/// Every list ranks the edge groups in stage order: 0 source edges (source
/// ranks kept), 1 edges to `w1`/from `u1`, 2 source non-edges, 3 edges to
/// `w2`/from `u2`, 4 `u1 w1` and `u2 w2`. Wherever the construction leaves
/// the order free it is ascending vertex id, strict.
///
/// The equivalence with perfect weakly stable matchings of the source
/// relies on both sides having equal size; the builder accepts any sizes.
pub fn reduce_perfect_to_forbidden1(source: &Instance) -> Result<Forbidden1Reduction> {
    let p = source.n_men();
    let q = source.n_women();
    let (u1, u2, w1, w2) = (p, p + 1, q, q + 1);
    let mut b = Builder::default();

    for (id, &e) in source.edges().iter().enumerate() {
        b.edge(e, source.man_rank(id), source.woman_rank(id), EdgeTag::Stage(0));
    }

    // source men
    for u in 0..p {
        let man = Vertex::Man(u);
        let mut r = source.max_rank(man);
        r += 1;
        b.rank_at(man, w1, r);
        for w in (0..q).filter(|&w| !source.contains_edge(Edge::new(u, w))) {
            r += 1;
            b.rank_at(man, w, r);
        }
        r += 1;
        b.rank_at(man, w2, r);
    }
    // source women
    for w in 0..q {
        let woman = Vertex::Woman(w);
        let mut r = source.max_rank(woman);
        r += 1;
        b.rank_at(woman, u1, r);
        for u in (0..p).filter(|&u| !source.contains_edge(Edge::new(u, w))) {
            r += 1;
            b.rank_at(woman, u, r);
        }
        r += 1;
        b.rank_at(woman, u2, r);
    }
    for u in 0..p {
        b.tag(Edge::new(u, w1), EdgeTag::Stage(1));
        b.tag(Edge::new(u, w2), EdgeTag::Stage(3));
        for w in (0..q).filter(|&w| !source.contains_edge(Edge::new(u, w))) {
            b.tag(Edge::new(u, w), EdgeTag::Stage(2));
        }
    }
    for w in 0..q {
        b.tag(Edge::new(u1, w), EdgeTag::Stage(1));
        b.tag(Edge::new(u2, w), EdgeTag::Stage(3));
    }

    // u1: W ascending, then w2, then w1
    let (m1, m2) = (Vertex::Man(u1), Vertex::Man(u2));
    for w in 0..q {
        b.rank_at(m1, w, w as u32 + 1);
        b.rank_at(m2, w, w as u32 + 1);
    }
    let q32 = q as u32;
    b.rank_at(m1, w2, q32 + 1);
    b.rank_at(m1, w1, q32 + 2);
    // u2: W ascending, then w1, then w2
    b.rank_at(m2, w1, q32 + 1);
    b.rank_at(m2, w2, q32 + 2);

    let (f1, f2) = (Vertex::Woman(w1), Vertex::Woman(w2));
    for u in 0..p {
        b.rank_at(f1, u, u as u32 + 1);
        b.rank_at(f2, u, u as u32 + 1);
    }
    let p32 = p as u32;
    b.rank_at(f1, u2, p32 + 1);
    b.rank_at(f1, u1, p32 + 2);
    b.rank_at(f2, u1, p32 + 1);
    b.rank_at(f2, u2, p32 + 2);

    b.tag(Edge::new(u2, w1), EdgeTag::Stage(3));
    b.tag(Edge::new(u1, w2), EdgeTag::Stage(3));
    b.tag(Edge::new(u1, w1), EdgeTag::Stage(4));
    b.tag(Edge::new(u2, w2), EdgeTag::Stage(4));

    let (instance, tags) = b.build(p + 2, q + 2)?;
    let mut men: Vec<Role> = (0..p).map(Role::Original).collect();
    men.extend([Role::U1, Role::U2]);
    let mut women: Vec<Role> = (0..q).map(Role::Original).collect();
    women.extend([Role::W1, Role::W2]);
    let registry = Registry {
        men,
        women,
        edges: tags,
    };
    let instance = instance.with_labels(registry.labels());
    let restricted = RestrictedEdgeSets::new().with_forbidden([Edge::new(u2, w2)]);
    Ok(Forbidden1Reduction {
        source: source.clone(),
        output: ReductionOutput {
            instance,
            restricted,
            registry,
            master: None,
        },
    })
}

/// `M' = M ∪ {u1 w2, u2 w1}` for a perfect weakly stable matching `M` of
/// the source.
pub fn forbidden1_forward_witness(red: &Forbidden1Reduction, source_matching: &Matching) -> Result<Matching> {
    let src = &red.source;
    source_matching.check_against(src)?;
    if !is_perfect(src, source_matching) {
        return Err(Error::Witness("source matching is not perfect".into()));
    }
    let v = verify_stable(src, &RestrictedEdgeSets::new(), source_matching, StabilityLevel::Weak);
    if !v.is_stable() {
        return Err(Error::Witness("source matching is not weakly stable".into()));
    }
    let out = &red.output.instance;
    let mut m = Matching::from_edges(out.n_men(), out.n_women(), source_matching.edges())?;
    m.insert(Edge::new(red.u1(), red.w2()))?;
    m.insert(Edge::new(red.u2(), red.w1()))?;
    Ok(m)
}

/// `M = M' ∖ {u1 w2, u2 w1}` for a weakly stable `M'` avoiding `u2 w2`;
/// the result is a perfect weakly stable matching of the source.
pub fn forbidden1_backward_witness(red: &Forbidden1Reduction, matching: &Matching) -> Result<Matching> {
    let out = &red.output;
    if matching.contains(red.forbidden_edge()) {
        return Err(Error::Witness(format!(
            "matching contains the forbidden edge {}",
            red.forbidden_edge()
        )));
    }
    let v = verify_stable(&out.instance, &out.restricted, matching, StabilityLevel::Weak);
    if !v.is_stable() {
        return Err(Error::Witness(format!(
            "matching is not weakly stable in the constructed instance ({} violations)",
            v.violations.len()
        )));
    }
    let mut rest = matching.clone();
    for e in [Edge::new(red.u1(), red.w2()), Edge::new(red.u2(), red.w1())] {
        if !rest.remove(e) {
            return Err(Error::Witness(format!("stable matching lacks {e}")));
        }
    }
    let src = &red.source;
    let edges = rest.edges();
    if let Some(&e) = edges.iter().find(|&&e| !src.contains_edge(e)) {
        return Err(Error::Witness(format!("edge {e} is not a source edge")));
    }
    let m = Matching::from_edges(src.n_men(), src.n_women(), edges)?;
    if !is_perfect(src, &m) {
        return Err(Error::Witness(
            "recovered matching is not perfect (source sides differ in size?)".into(),
        ));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_source() -> Instance {
        // three men and women, five edges:
        // m1: w1 w2, m2: w1, m3: w3 w2 (strict), women reciprocate
        Instance::from_lists(
            &[vec![vec![0], vec![1]], vec![vec![0]], vec![vec![2], vec![1]]],
            &[vec![vec![0], vec![1]], vec![vec![0, 2]], vec![vec![2]]],
        )
        .unwrap()
    }

    #[test]
    fn figure_sized_example() {
        let red = reduce_perfect_to_forbidden1(&figure_source()).unwrap();
        let out = &red.output;
        assert_eq!(out.instance.n_men(), 5);
        assert_eq!(out.instance.n_edges(), 25);
        assert!(out.instance.is_complete());
        out.registry.check(&out.instance).unwrap();
        let count = |s| out.registry.edges.values().filter(|&&t| t == EdgeTag::Stage(s)).count();
        // 5 source, 3+3 stage one, 9-5 stage two, 4+4 stage three, 2 stage four
        assert_eq!([count(0), count(1), count(2), count(3), count(4)], [5, 6, 4, 8, 2]);
        assert_eq!(out.restricted.forbidden.len(), 1);
    }

    #[test]
    fn degenerate_source() {
        let empty = Instance::from_lists(&[], &[]).unwrap();
        let red = reduce_perfect_to_forbidden1(&empty).unwrap();
        assert_eq!(red.output.instance.n_edges(), 4);
        assert_eq!(red.forbidden_edge(), Edge::new(1, 1));
        let m = forbidden1_forward_witness(&red, &Matching::empty(0, 0)).unwrap();
        assert_eq!(m.edges(), vec![Edge::new(0, 1), Edge::new(1, 0)]);
        let back = forbidden1_backward_witness(&red, &m).unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn backward_rejects_forbidden_edge() {
        let empty = Instance::from_lists(&[], &[]).unwrap();
        let red = reduce_perfect_to_forbidden1(&empty).unwrap();
        let m = Matching::from_edges(2, 2, [Edge::new(1, 1), Edge::new(0, 0)]).unwrap();
        assert!(matches!(forbidden1_backward_witness(&red, &m), Err(Error::Witness(_))));
    }
}
