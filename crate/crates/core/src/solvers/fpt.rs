//! Strong/super stability with free edges by enumerating which free edges
//! end up in the matching.
//!
//! For a subset `S` of the free edges, the edges of `S` become forced and
//! the other free edges are deleted. A stable matching of that derived
//! instance is stable with free edges in the original one (only free edges
//! were removed), and a stable-with-free-edges matching `M` is a solution of
//! the derived instance for `S = M ∩ F`. So the answer is "none" exactly
//! when all `2^|F|` derived instances fail.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, RestrictedEdgeSets};
use crate::matching::Matching;
use crate::stability::StabilityLevel;

use super::{solve_strong, solve_super};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FptOptions {
    /// Evaluate subsets on the rayon pool. The reported witness is still
    /// the one of the lowest subset bitmask.
    pub parallel: bool,
    /// Pass forbidden and forced edges of the input through to every
    /// subproblem instead of rejecting them.
    pub allow_forced_forbidden: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptOutcome {
    pub matching: Option<Matching>,
    /// Subproblems evaluated.
    pub calls: u64,
    /// Bitmask of the subset that produced the witness; bit `i` is the
    /// `i`-th smallest free edge.
    pub witness_subset: Option<u64>,
}

/// Largest number of free edges accepted.
pub const MAX_FREE_EDGES: usize = 40;

/// The derived instance for subset `mask` of `free` (sorted ascending):
/// free edges in the subset are forced, the rest deleted.
pub fn fpt_subproblem(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    free: &[Edge],
    mask: u64,
) -> (Instance, RestrictedEdgeSets) {
    let (kept, dropped): (Vec<(usize, &Edge)>, Vec<(usize, &Edge)>) =
        free.iter().enumerate().partition(|(i, _)| mask >> i & 1 == 1);
    let dropped: BTreeSet<Edge> = dropped.into_iter().map(|(_, &e)| e).collect();
    let sub = instance.without_edges(&dropped);
    let mut sub_restricted = RestrictedEdgeSets {
        forbidden: restricted.forbidden.clone(),
        forced: restricted.forced.clone(),
        free: BTreeSet::new(),
    };
    sub_restricted.forced.extend(kept.into_iter().map(|(_, &e)| e));
    (sub, sub_restricted)
}

fn evaluate(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    free: &[Edge],
    level: StabilityLevel,
    mask: u64,
) -> Option<Matching> {
    let (sub, sub_restricted) = fpt_subproblem(instance, restricted, free, mask);
    // a subset whose forced edges collide has no solution
    let result = match level {
        StabilityLevel::Strong => solve_strong(&sub, &sub_restricted),
        _ => solve_super(&sub, &sub_restricted),
    };
    result.ok().flatten()
}

pub fn solve_free_fpt(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    level: StabilityLevel,
    options: &FptOptions,
) -> Result<FptOutcome> {
    if level == StabilityLevel::Weak {
        return Err(Error::Unsupported(
            "subset enumeration is for strong or super stability; use solve_weak_with_free".into(),
        ));
    }
    restricted.validate(instance)?;
    if !options.allow_forced_forbidden
        && (!restricted.forbidden.is_empty() || !restricted.forced.is_empty())
    {
        return Err(Error::Unsupported(
            "forced/forbidden edges together with free edges need allow_forced_forbidden".into(),
        ));
    }
    let free: Vec<Edge> = restricted.free.iter().copied().collect();
    if free.len() > MAX_FREE_EDGES {
        return Err(Error::Unsupported(format!(
            "{} free edges exceed the limit of {MAX_FREE_EDGES}",
            free.len()
        )));
    }
    let subsets = 1u64 << free.len();

    let calls = AtomicU64::new(0);
    let run = |mask: u64| {
        calls.fetch_add(1, Ordering::Relaxed);
        evaluate(instance, restricted, &free, level, mask).map(|m| (mask, m))
    };
    let found = if options.parallel {
        (0..subsets).into_par_iter().find_map_first(run)
    } else {
        (0..subsets).find_map(run)
    };

    Ok(FptOutcome {
        witness_subset: found.as_ref().map(|(mask, _)| *mask),
        matching: found.map(|(_, m)| m),
        calls: calls.into_inner(),
    })
}
