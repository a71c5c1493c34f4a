use crate::instance::{Edge, Instance, RestrictedEdgeSets, Vertex};

use super::{EdgeTag, Registry, Role};

/// Adds every missing man–woman pair as a free edge. At each vertex the
/// added edges share one new tie-group ranked after all existing edges.
pub fn complete_with_free(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
) -> (Instance, RestrictedEdgeSets) {
    let mut items: Vec<(Edge, u32, u32)> = instance.ranked_edges().collect();
    let mut out = restricted.clone();
    for u in 0..instance.n_men() {
        let man_last = instance.max_rank(Vertex::Man(u)) + 1;
        for w in 0..instance.n_women() {
            let e = Edge::new(u, w);
            if !instance.contains_edge(e) {
                items.push((e, man_last, instance.max_rank(Vertex::Woman(w)) + 1));
                out.free.insert(e);
            }
        }
    }
    let mut completed = Instance::from_ranked_edges(instance.n_men(), instance.n_women(), items)
        .expect("completion of a valid instance is valid");
    if let Some(labels) = instance.labels() {
        completed = completed.with_labels(labels.clone());
    }
    (completed, out)
}

/// Registry of a completion: every vertex keeps its role as an original
/// vertex, and edges are tagged original or completion.
pub fn completion_registry(original: &Instance, completed: &Instance) -> Registry {
    Registry {
        men: (0..completed.n_men()).map(Role::Original).collect(),
        women: (0..completed.n_women()).map(Role::Original).collect(),
        edges: completed
            .edges()
            .iter()
            .map(|&e| {
                let tag = if original.contains_edge(e) { EdgeTag::Original } else { EdgeTag::Completion };
                (e, tag)
            })
            .collect(),
    }
}
