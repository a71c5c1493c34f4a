//! Existence solvers.
//!
//! [`solve_weak`] always succeeds. [`solve_strong`] and [`solve_super`]
//! decide existence with forced and forbidden edges by exact search, and
//! [`solve_free_fpt`] handles free edges by enumerating subsets of them.

mod fpt;
mod search;
mod weak;

pub use fpt::{fpt_subproblem, solve_free_fpt, FptOptions, FptOutcome, MAX_FREE_EDGES};
pub use weak::{solve_weak, solve_weak_with_free};

use crate::error::{Error, Result};
use crate::instance::{Instance, RestrictedEdgeSets};
use crate::matching::Matching;
use crate::stability::StabilityLevel;

fn solve_with_forced_forbidden(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    level: StabilityLevel,
) -> Result<Option<Matching>> {
    restricted.validate(instance)?;
    if !restricted.free.is_empty() {
        return Err(Error::Unsupported(
            "free edges are handled by solve_free_fpt".into(),
        ));
    }
    Ok(search::exact_search(instance, restricted, level))
}

/// A super-stable matching avoiding P and containing Q, or `None` if no
/// such matching exists.
pub fn solve_super(instance: &Instance, restricted: &RestrictedEdgeSets) -> Result<Option<Matching>> {
    solve_with_forced_forbidden(instance, restricted, StabilityLevel::Super)
}

/// A strongly stable matching avoiding P and containing Q, or `None`.
pub fn solve_strong(instance: &Instance, restricted: &RestrictedEdgeSets) -> Result<Option<Matching>> {
    solve_with_forced_forbidden(instance, restricted, StabilityLevel::Strong)
}

/// Dispatches on `level`. Weak stability ignores P and Q only when both are
/// empty; with them the problem is NP-hard and is answered by exact search.
pub fn solve(
    instance: &Instance,
    restricted: &RestrictedEdgeSets,
    level: StabilityLevel,
) -> Result<Option<Matching>> {
    match level {
        StabilityLevel::Weak if restricted.forbidden.is_empty() && restricted.forced.is_empty() => {
            solve_weak_with_free(instance, &restricted.free).map(Some)
        }
        StabilityLevel::Weak => {
            restricted.validate(instance)?;
            Ok(search::exact_search(instance, restricted, level))
        }
        StabilityLevel::Strong | StabilityLevel::Super if !restricted.free.is_empty() => {
            let options = FptOptions {
                allow_forced_forbidden: true,
                ..Default::default()
            };
            solve_free_fpt(instance, restricted, level, &options).map(|o| o.matching)
        }
        StabilityLevel::Strong => solve_strong(instance, restricted),
        StabilityLevel::Super => solve_super(instance, restricted),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;
    use crate::oracle::oracle_exists;
    use crate::stability::verify_stable;

    fn one_edge() -> Instance {
        Instance::from_lists(&[vec![vec![0]]], &[vec![vec![0]]]).unwrap()
    }

    #[test]
    fn one_edge_instance() {
        let none = RestrictedEdgeSets::new();
        for level in StabilityLevel::ALL {
            let m = solve(&one_edge(), &none, level).unwrap().unwrap();
            assert_eq!(m.edges(), vec![Edge::new(0, 0)]);
        }
        let p = RestrictedEdgeSets::new().with_forbidden([Edge::new(0, 0)]);
        assert_eq!(solve_super(&one_edge(), &p).unwrap(), None);
        assert_eq!(solve(&one_edge(), &p, StabilityLevel::Weak).unwrap(), None);
    }

    #[test]
    fn all_tied_two_by_two_has_no_super_stable_matching() {
        let tie = vec![vec![0, 1]];
        let inst = Instance::from_lists(&[tie.clone(), tie.clone()], &[tie.clone(), tie]).unwrap();
        assert_eq!(solve_super(&inst, &RestrictedEdgeSets::new()).unwrap(), None);
        assert!(solve_strong(&inst, &RestrictedEdgeSets::new()).unwrap().is_some());
    }

    #[test]
    fn strong_two_by_two_matches_oracle() {
        // both men strictly prefer w1; both women tie the men
        let men = vec![vec![vec![0], vec![1]]; 2];
        let women = vec![vec![vec![0, 1]]; 2];
        let inst = Instance::from_lists(&men, &women).unwrap();
        let none = RestrictedEdgeSets::new();
        let got = solve_strong(&inst, &none).unwrap();
        assert_eq!(got.is_some(), oracle_exists(&inst, &none, StabilityLevel::Strong).unwrap().is_some());
        assert!(got.is_none());
    }

    #[test]
    fn fpt_without_free_edges_is_one_call() {
        let tie = vec![vec![0, 1]];
        let inst = Instance::from_lists(&[tie.clone(), tie.clone()], &[tie.clone(), tie]).unwrap();
        let none = RestrictedEdgeSets::new();
        for level in [StabilityLevel::Strong, StabilityLevel::Super] {
            let out = solve_free_fpt(&inst, &none, level, &FptOptions::default()).unwrap();
            assert_eq!(out.calls, 1);
            assert_eq!(out.matching, solve(&inst, &none, level).unwrap());
        }
    }

    #[test]
    fn fpt_rejects_unsupported_inputs() {
        let inst = one_edge();
        let none = RestrictedEdgeSets::new();
        assert!(solve_free_fpt(&inst, &none, StabilityLevel::Weak, &FptOptions::default()).is_err());
        let q = RestrictedEdgeSets::new().with_forced([Edge::new(0, 0)]);
        assert!(solve_free_fpt(&inst, &q, StabilityLevel::Strong, &FptOptions::default()).is_err());
        let allow = FptOptions {
            allow_forced_forbidden: true,
            ..Default::default()
        };
        let out = solve_free_fpt(&inst, &q, StabilityLevel::Strong, &allow).unwrap();
        assert!(verify_stable(&inst, &q, out.matching.as_ref().unwrap(), StabilityLevel::Strong).is_stable());
        let f = RestrictedEdgeSets::new().with_free([Edge::new(0, 0)]);
        assert!(matches!(solve_strong(&inst, &f), Err(Error::Unsupported(_))));
    }
}
