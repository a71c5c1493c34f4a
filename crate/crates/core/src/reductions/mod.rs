//! Hardness reductions as executable constructions.
//!
//! * [`reduce_perfect_to_forbidden1`]: perfect weakly stable matching in an
//!   incomplete instance → weakly stable matching avoiding a single
//!   forbidden edge in a complete instance.
//! * [`reduce_forbidden1_to_dense`]: drop that forbidden edge, giving a
//!   complete bipartite graph minus one edge.
//! * [`reduce_sat_to_ssmti_free`]: positive 1-in-3 3-SAT → strong/super
//!   stability with free edges, max degree four.
//! * [`complete_with_free`]: pad any instance to a complete one with free
//!   edges ranked last.
//!
//! Each construction returns a [`Registry`] naming the role of every
//! constructed vertex and tagging every edge with the part of the
//! construction it comes from.

mod complete;
mod dense;
mod forbidden1;
pub mod generate;
mod sat_free;

use std::collections::BTreeMap;
use std::fmt;

pub use complete::{complete_with_free, completion_registry};
pub use dense::reduce_forbidden1_to_dense;
pub use forbidden1::{
    forbidden1_backward_witness, forbidden1_forward_witness, reduce_perfect_to_forbidden1,
    Forbidden1Reduction,
};
pub use sat_free::{reduce_sat_to_ssmti_free, sat_backward_witness, sat_forward_witness, SatReduction};

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, Labels, RestrictedEdgeSets, Side, Vertex};
use crate::master::MasterList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// A vertex copied from the source instance, with its source id.
    Original(usize),
    U1,
    U2,
    W1,
    W2,
    ClauseA(usize),
    ClauseB(usize),
    ClauseC(usize),
    /// `y`, `z`, `w` vertices of variable `var`, copy `copy` (0..3).
    VarY { var: usize, copy: usize },
    VarZ { var: usize, copy: usize },
    VarW { var: usize, copy: usize },
}

/// Names are 1-based: `orig3`, `u1`, `a2`, `y1.3`, ...
impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Original(i) => write!(f, "orig{}", i + 1),
            Role::U1 => f.write_str("u1"),
            Role::U2 => f.write_str("u2"),
            Role::W1 => f.write_str("w1"),
            Role::W2 => f.write_str("w2"),
            Role::ClauseA(k) => write!(f, "a{}", k + 1),
            Role::ClauseB(k) => write!(f, "b{}", k + 1),
            Role::ClauseC(k) => write!(f, "c{}", k + 1),
            Role::VarY { var, copy } => write!(f, "y{}.{}", var + 1, copy + 1),
            Role::VarZ { var, copy } => write!(f, "z{}.{}", var + 1, copy + 1),
            Role::VarW { var, copy } => write!(f, "w{}.{}", var + 1, copy + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {
    /// Construction stage 0..=4 of the single-forbidden-edge reduction.
    Stage(u8),
    Clause,
    Variable,
    Interconnecting,
    Free,
    /// An input edge kept by [`complete_with_free`].
    Original,
    /// Added by [`complete_with_free`].
    Completion,
}

impl fmt::Display for EdgeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeTag::Stage(s) => write!(f, "{s}"),
            EdgeTag::Clause => f.write_str("clause"),
            EdgeTag::Variable => f.write_str("variable"),
            EdgeTag::Interconnecting => f.write_str("interconnecting"),
            EdgeTag::Free => f.write_str("free"),
            EdgeTag::Original => f.write_str("original"),
            EdgeTag::Completion => f.write_str("completion"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    pub men: Vec<Role>,
    pub women: Vec<Role>,
    pub edges: BTreeMap<Edge, EdgeTag>,
}

impl Registry {
    pub fn role(&self, v: Vertex) -> Option<Role> {
        match v {
            Vertex::Man(i) => self.men.get(i).copied(),
            Vertex::Woman(j) => self.women.get(j).copied(),
        }
    }

    pub fn tag(&self, e: Edge) -> Option<EdgeTag> {
        self.edges.get(&e).copied()
    }

    /// Roles cover every vertex and tags cover exactly the edge set.
    pub fn check(&self, instance: &Instance) -> Result<()> {
        if self.men.len() != instance.n_men() || self.women.len() != instance.n_women() {
            return Err(Error::Precondition("registry does not cover every vertex".into()));
        }
        if self.edges.len() != instance.n_edges()
            || instance.edges().iter().any(|e| !self.edges.contains_key(e))
        {
            return Err(Error::Precondition("registry tags do not match the edge set".into()));
        }
        Ok(())
    }

    pub fn labels(&self) -> Labels {
        Labels {
            men: self.men.iter().map(Role::to_string).collect(),
            women: self.women.iter().map(Role::to_string).collect(),
        }
    }
}

/// A constructed instance with its restrictions and gadget registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub restricted: RestrictedEdgeSets,
    pub registry: Registry,
    /// Master list the lists of `master_side` conform to, if the
    /// construction provides one.
    pub master: Option<(Side, MasterList)>,
}

/// Accumulates per-endpoint ranks and tags for a construction.
#[derive(Default)]
struct Builder {
    man_rank: BTreeMap<Edge, u32>,
    woman_rank: BTreeMap<Edge, u32>,
    tags: BTreeMap<Edge, EdgeTag>,
}

impl Builder {
    fn rank_at(&mut self, v: Vertex, other: usize, rank: u32) {
        match v {
            Vertex::Man(u) => self.man_rank.insert(Edge::new(u, other), rank),
            Vertex::Woman(w) => self.woman_rank.insert(Edge::new(other, w), rank),
        };
    }

    fn tag(&mut self, e: Edge, tag: EdgeTag) {
        self.tags.insert(e, tag);
    }

    fn edge(&mut self, e: Edge, man_rank: u32, woman_rank: u32, tag: EdgeTag) {
        self.man_rank.insert(e, man_rank);
        self.woman_rank.insert(e, woman_rank);
        self.tags.insert(e, tag);
    }

    fn build(self, n_men: usize, n_women: usize) -> Result<(Instance, BTreeMap<Edge, EdgeTag>)> {
        let mut items = Vec::with_capacity(self.man_rank.len());
        for (&e, &mr) in &self.man_rank {
            let wr = *self
                .woman_rank
                .get(&e)
                .ok_or_else(|| Error::Precondition(format!("edge {e} ranked by one side only")))?;
            items.push((e, mr, wr));
        }
        if items.len() != self.woman_rank.len() || items.len() != self.tags.len() {
            return Err(Error::Precondition("inconsistent construction".into()));
        }
        Ok((Instance::from_ranked_edges(n_men, n_women, items)?, self.tags))
    }
}
