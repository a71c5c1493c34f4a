use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, Vertex};

/// A set of vertex-disjoint man–woman pairs with O(1) partner lookup.
///
/// A matching is sized for a vertex set but is not tied to a particular
/// edge set, so it can be carried across instances that share vertex ids
/// (sub-instances, reductions). Use [`Matching::check_against`] to confirm
/// that every pair is an edge of a given instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    men: Vec<Option<usize>>,
    women: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n_men: usize, n_women: usize) -> Matching {
        Matching {
            men: vec![None; n_men],
            women: vec![None; n_women],
        }
    }

    pub fn for_instance(instance: &Instance) -> Matching {
        Matching::empty(instance.n_men(), instance.n_women())
    }

    pub fn from_edges<I>(n_men: usize, n_women: usize, edges: I) -> Result<Matching>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut m = Matching::empty(n_men, n_women);
        for e in edges {
            m.insert(e)?;
        }
        Ok(m)
    }

    pub fn n_men(&self) -> usize {
        self.men.len()
    }

    pub fn n_women(&self) -> usize {
        self.women.len()
    }

    /// Adds `e`. Re-inserting an edge already present is a no-op.
    pub fn insert(&mut self, e: Edge) -> Result<()> {
        if e.man >= self.men.len() || e.woman >= self.women.len() {
            return Err(Error::DimensionMismatch {
                expected_men: self.men.len(),
                expected_women: self.women.len(),
                men: e.man + 1,
                women: e.woman + 1,
            });
        }
        if let Some(w) = self.men[e.man] {
            if w != e.woman {
                return Err(Error::MatchingConflict {
                    vertex: Vertex::Man(e.man),
                    first: Edge::new(e.man, w),
                    second: e,
                });
            }
        }
        if let Some(u) = self.women[e.woman] {
            if u != e.man {
                return Err(Error::MatchingConflict {
                    vertex: Vertex::Woman(e.woman),
                    first: Edge::new(u, e.woman),
                    second: e,
                });
            }
        }
        self.men[e.man] = Some(e.woman);
        self.women[e.woman] = Some(e.man);
        Ok(())
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        if self.contains(e) {
            self.men[e.man] = None;
            self.women[e.woman] = None;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.men.get(e.man).copied().flatten() == Some(e.woman)
    }

    pub fn partner(&self, v: Vertex) -> Option<usize> {
        match v {
            Vertex::Man(i) => self.men.get(i).copied().flatten(),
            Vertex::Woman(j) => self.women.get(j).copied().flatten(),
        }
    }

    /// The matching edge covering `v`, if any.
    pub fn edge_at(&self, v: Vertex) -> Option<Edge> {
        self.partner(v).map(|p| match v {
            Vertex::Man(i) => Edge::new(i, p),
            Vertex::Woman(j) => Edge::new(p, j),
        })
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.partner(v).is_some()
    }

    /// Edges sorted by man.
    pub fn edges(&self) -> Vec<Edge> {
        self.men
            .iter()
            .enumerate()
            .filter_map(|(u, w)| w.map(|w| Edge::new(u, w)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.men.iter().filter(|w| w.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Verifies dimensions and that every pair is an edge of `instance`.
    pub fn check_against(&self, instance: &Instance) -> Result<()> {
        if self.n_men() != instance.n_men() || self.n_women() != instance.n_women() {
            return Err(Error::DimensionMismatch {
                expected_men: instance.n_men(),
                expected_women: instance.n_women(),
                men: self.n_men(),
                women: self.n_women(),
            });
        }
        match self.edges().into_iter().find(|&e| !instance.contains_edge(e)) {
            Some(e) => Err(Error::NotAnEdge(e)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// True iff every vertex of `instance` is matched.
pub fn is_perfect(instance: &Instance, matching: &Matching) -> bool {
    instance.vertices().all(|v| matching.is_matched(v))
}
