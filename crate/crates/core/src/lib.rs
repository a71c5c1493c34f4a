//! Stable marriage with ties and restricted edges.
//!
//! An [`Instance`] is a bipartite graph with weakly ordered preference
//! lists. Edges may be forbidden, forced or free ([`RestrictedEdgeSets`]),
//! and a matching is checked for weak, strong or super stability with
//! [`verify_stable`]. The crate provides existence solvers, an exhaustive
//! oracle for small instances, and executable hardness reductions together
//! with their witness mappings.

pub mod bench;
pub mod error;
pub mod instance;
pub mod io;
pub mod master;
pub mod matching;
pub mod oracle;
pub mod reductions;
pub mod sat;
pub mod solvers;
pub mod stability;

pub use error::{Error, Result};
pub use instance::{
    build_instance, validate_restrictions, Edge, Instance, Labels, RestrictedEdgeSets,
    RestrictionKind, Side, TieGroups, Vertex,
};
pub use master::{conforms_to_master_list, MasterList};
pub use matching::{is_perfect, Matching};
pub use sat::{Assignment, SatFormula};
pub use stability::{
    blocking_report, classify_edge, relation_at, verify_stable, Blocking, BlockingReport,
    Relation, StabilityLevel, Verification, Violation,
};
