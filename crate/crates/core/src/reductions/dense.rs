use crate::error::{Error, Result};
use crate::instance::{Instance, RestrictedEdgeSets};

/// Deletes the single forbidden edge of a complete instance whose forbidden
/// edge sits in the last tie-group of both endpoints. The result has no
/// restricted edges and every other rank is kept.
pub fn reduce_forbidden1_to_dense(instance: &Instance, restricted: &RestrictedEdgeSets) -> Result<Instance> {
    restricted.validate(instance)?;
    if !instance.is_complete() {
        return Err(Error::Precondition("instance is not complete bipartite".into()));
    }
    if !restricted.forced.is_empty() || !restricted.free.is_empty() {
        return Err(Error::Precondition("only a forbidden edge may be restricted".into()));
    }
    let mut forbidden = restricted.forbidden.iter();
    let (Some(&e), None) = (forbidden.next(), forbidden.next()) else {
        return Err(Error::Precondition("exactly one forbidden edge is required".into()));
    };
    let (u, w) = e.endpoints();
    for v in [u, w] {
        if instance.rank(v, e) != Some(instance.max_rank(v)) {
            return Err(Error::Precondition(format!("forbidden edge {e} is not ranked last by {v}")));
        }
    }
    Ok(instance.without_edges(&restricted.forbidden))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;
    use crate::reductions::reduce_perfect_to_forbidden1;

    #[test]
    fn degenerate_case_has_three_edges() {
        let red = reduce_perfect_to_forbidden1(&Instance::from_lists(&[], &[]).unwrap()).unwrap();
        let dense = reduce_forbidden1_to_dense(&red.output.instance, &red.output.restricted).unwrap();
        assert_eq!(dense.n_edges(), 3);
        assert!(!dense.contains_edge(red.forbidden_edge()));
    }

    #[test]
    fn forbidden_edge_must_be_last() {
        // complete 1x2, m1: w1 > w2; forbid m1-w1
        let inst = Instance::from_lists(&[vec![vec![0], vec![1]]], &[vec![vec![0]], vec![vec![0]]]).unwrap();
        let p = RestrictedEdgeSets::new().with_forbidden([Edge::new(0, 0)]);
        assert!(matches!(reduce_forbidden1_to_dense(&inst, &p), Err(Error::Precondition(_))));
        let p = RestrictedEdgeSets::new().with_forbidden([Edge::new(0, 1)]);
        assert_eq!(reduce_forbidden1_to_dense(&inst, &p).unwrap().n_edges(), 1);
    }
}
