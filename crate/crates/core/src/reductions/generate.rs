//! Seeded random generators for test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, RestrictedEdgeSets, TieGroups};
use crate::matching::Matching;
use crate::sat::SatFormula;

const MAX_1IN3_TRIES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmtiParams {
    pub n_men: usize,
    pub n_women: usize,
    pub density: f64,
    pub tie_probability: f64,
    /// Largest tie-group allowed; `0` means unbounded.
    pub max_tie: usize,
}

impl SmtiParams {
    pub fn new(n_men: usize, n_women: usize, density: f64, tie_probability: f64) -> SmtiParams {
        SmtiParams {
            n_men,
            n_women,
            density,
            tie_probability,
            max_tie: 0,
        }
    }

    pub fn with_max_tie(mut self, max_tie: usize) -> SmtiParams {
        self.max_tie = max_tie;
        self
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn group(rng: &mut ChaCha8Rng, mut order: Vec<usize>, tie_probability: f64, max_tie: usize) -> TieGroups {
    order.shuffle(rng);
    let mut groups: TieGroups = Vec::new();
    for x in order {
        match groups.last_mut() {
            Some(g) if (max_tie == 0 || g.len() < max_tie) && rng.random_bool(tie_probability) => g.push(x),
            _ => groups.push(vec![x]),
        }
    }
    groups
}

pub fn gen_smti(params: &SmtiParams, seed: u64) -> Result<Instance> {
    let SmtiParams {
        n_men,
        n_women,
        density,
        tie_probability,
        max_tie,
    } = *params;
    if n_men == 0 || n_women == 0 {
        return Err(Error::Generator("both sides need at least one vertex".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Generator(format!("density {density} not in (0, 1]")));
    }
    if !(0.0..=1.0).contains(&tie_probability) {
        return Err(Error::Generator(format!("tie probability {tie_probability} not in [0, 1]")));
    }
    let mut rng = rng(seed);
    let mut men_adj = vec![Vec::new(); n_men];
    let mut women_adj = vec![Vec::new(); n_women];
    for (u, adj) in men_adj.iter_mut().enumerate() {
        for (w, wadj) in women_adj.iter_mut().enumerate() {
            if rng.random_bool(density) {
                adj.push(w);
                wadj.push(u);
            }
        }
    }
    let men: Vec<TieGroups> = men_adj
        .into_iter()
        .map(|a| group(&mut rng, a, tie_probability, max_tie))
        .collect();
    let women: Vec<TieGroups> = women_adj
        .into_iter()
        .map(|a| group(&mut rng, a, tie_probability, max_tie))
        .collect();
    Instance::from_lists(&men, &women)
}

/// Random instance with independent edges of probability `edge_density`
/// and ties formed by merging adjacent rank groups with probability
/// `tie_probability`. Reproducible for a given seed.
pub fn gen_random_smti(
    n_men: usize,
    n_women: usize,
    edge_density: f64,
    tie_probability: f64,
    seed: u64,
) -> Result<Instance> {
    gen_smti(&SmtiParams::new(n_men, n_women, edge_density, tie_probability), seed)
}

/// An `n × n` source for the perfect-matching reduction: men's lists are
/// strict, and with probability `tie_probability` a woman ties her first
/// two entries.
pub fn gen_perfect_source(n: usize, density: f64, tie_probability: f64, seed: u64) -> Result<Instance> {
    let base = gen_smti(&SmtiParams::new(n, n, density, 0.0), seed)?;
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let men: Vec<TieGroups> = (0..n)
        .map(|u| base.preference_list(crate::instance::Vertex::Man(u)))
        .collect();
    let women: Vec<TieGroups> = (0..n)
        .map(|w| {
            let mut list = base.preference_list(crate::instance::Vertex::Woman(w));
            if list.len() >= 2 && rng.random_bool(tie_probability) {
                let second = list.remove(1);
                list[0].extend(second);
            }
            list
        })
        .collect();
    Instance::from_lists(&men, &women)
}

/// Positive 1-in-3 formula on `n >= 3` variables, each occurring exactly
/// three times, hence `n` clauses.
pub fn gen_random_1in3(n: usize, seed: u64) -> Result<SatFormula> {
    if n < 3 {
        return Err(Error::Generator(format!("need at least 3 variables, got {n}")));
    }
    let mut rng = rng(seed);
    let mut pool: Vec<usize> = (0..n).flat_map(|x| [x, x, x]).collect();
    for _ in 0..MAX_1IN3_TRIES {
        pool.shuffle(&mut rng);
        let clauses: Vec<[usize; 3]> = pool.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        if clauses.iter().all(|c| c[0] != c[1] && c[0] != c[2] && c[1] != c[2]) {
            return SatFormula::new(n, clauses);
        }
    }
    Err(Error::Generator(format!(
        "no valid formula for n = {n} after {MAX_1IN3_TRIES} shuffles"
    )))
}

/// Greedy matching over the edges in random order, keeping each usable
/// edge with probability 0.7.
pub fn random_matching(instance: &Instance, seed: u64) -> Matching {
    let mut rng = rng(seed);
    let mut edges = instance.edges().to_vec();
    edges.shuffle(&mut rng);
    let mut m = Matching::for_instance(instance);
    for e in edges {
        if rng.random_bool(0.7) {
            // fails only when an endpoint is taken
            let _ = m.insert(e);
        }
    }
    m
}

/// Per-edge probabilities of each restriction kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestrictionMix {
    pub forbidden: f64,
    pub forced: f64,
    pub free: f64,
}

impl RestrictionMix {
    pub const NONE: RestrictionMix = RestrictionMix {
        forbidden: 0.0,
        forced: 0.0,
        free: 0.0,
    };
}

/// Assigns each edge at most one kind. Forced edges stay a matching: an
/// edge drawn as forced next to an existing forced edge is left plain.
pub fn random_restrictions(instance: &Instance, mix: RestrictionMix, seed: u64) -> RestrictedEdgeSets {
    let mut rng = rng(seed);
    let mut out = RestrictedEdgeSets::new();
    let mut forced = Matching::for_instance(instance);
    for &e in instance.edges() {
        let x: f64 = rng.random();
        if x < mix.forbidden {
            out.forbidden.insert(e);
        } else if x < mix.forbidden + mix.forced {
            if forced.insert(e).is_ok() {
                out.forced.insert(e);
            }
        } else if x < mix.forbidden + mix.forced + mix.free {
            out.free.insert(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Side;

    #[test]
    fn determinism() {
        let a = gen_random_smti(4, 5, 0.6, 0.3, 7).unwrap();
        let b = gen_random_smti(4, 5, 0.6, 0.3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(gen_random_1in3(6, 3).unwrap(), gen_random_1in3(6, 3).unwrap());
    }

    #[test]
    fn density_one_is_complete() {
        assert!(gen_random_smti(3, 4, 1.0, 0.5, 1).unwrap().is_complete());
    }

    #[test]
    fn zero_ties_is_strict() {
        let inst = gen_random_smti(5, 5, 0.8, 0.0, 2).unwrap();
        assert_eq!(inst.max_tie_length(Side::Men), 1);
        assert_eq!(inst.max_tie_length(Side::Women), 1);
    }

    #[test]
    fn bad_parameters() {
        assert!(gen_random_smti(0, 3, 0.5, 0.0, 0).is_err());
        assert!(gen_random_smti(2, 3, 0.0, 0.0, 0).is_err());
        assert!(gen_random_smti(2, 3, 0.5, 1.5, 0).is_err());
        assert!(gen_random_1in3(2, 0).is_err());
    }

    #[test]
    fn max_tie_respected() {
        let p = SmtiParams::new(6, 6, 1.0, 0.9).with_max_tie(3);
        for seed in 0..20 {
            let inst = gen_smti(&p, seed).unwrap();
            assert!(inst.max_tie_length(Side::Men) <= 3);
        }
    }

    #[test]
    fn formulas_have_three_occurrences() {
        for n in 3..8 {
            let f = gen_random_1in3(n, n as u64).unwrap();
            assert_eq!(f.n_clauses(), n);
            assert!(f.has_exactly_three_occurrences());
        }
    }

    #[test]
    fn perfect_source_shape() {
        for seed in 0..20 {
            let inst = gen_perfect_source(4, 0.7, 0.5, seed).unwrap();
            assert_eq!(inst.max_tie_length(Side::Men), 1);
            assert!(inst.max_tie_length(Side::Women) <= 2);
        }
    }

    #[test]
    fn restrictions_are_valid() {
        let inst = gen_random_smti(5, 5, 0.8, 0.3, 4).unwrap();
        let mix = RestrictionMix {
            forbidden: 0.2,
            forced: 0.3,
            free: 0.2,
        };
        for seed in 0..20 {
            random_restrictions(&inst, mix, seed).validate(&inst).unwrap();
            random_matching(&inst, seed).check_against(&inst).unwrap();
        }
    }
}
