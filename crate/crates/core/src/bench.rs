//! Call-count and timing runs of the free-edge FPT solver.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, RestrictedEdgeSets};
use crate::reductions::generate::gen_random_smti;
use crate::solvers::{solve_free_fpt, FptOptions};
use crate::stability::StabilityLevel;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub calls: u64,
    pub found: bool,
    pub elapsed: Duration,
}

/// Runs the solver once per `k`, on `family(k)`.
pub fn bench_fpt<F>(
    family: F,
    ks: impl IntoIterator<Item = usize>,
    level: StabilityLevel,
    options: &FptOptions,
) -> Result<Vec<BenchRow>>
where
    F: Fn(usize) -> Result<(Instance, RestrictedEdgeSets)>,
{
    let mut rows = Vec::new();
    for k in ks {
        let (instance, restricted) = family(k)?;
        let start = Instant::now();
        let out = solve_free_fpt(&instance, &restricted, level, options)?;
        rows.push(BenchRow {
            k,
            calls: out.calls,
            found: out.matching.is_some(),
            elapsed: start.elapsed(),
        });
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("k,calls,found,seconds\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{:.6}\n", r.k, r.calls, r.found, r.elapsed.as_secs_f64()));
    }
    out
}

/// 8 + 8 instance with exactly `k <= 42` free edges and neither a strongly
/// nor a super-stable matching.
///
/// Man 1 ties women 1 and 2, each of whom accepts only him; whichever one
/// he gets, the other blocks. Men 2..8 and women 3..8 form a complete
/// strict 7 × 6 block whose edges supply the free ones.
pub fn unsat_free_family(k: usize, seed: u64) -> Result<(Instance, RestrictedEdgeSets)> {
    let block = gen_random_smti(7, 6, 1.0, 0.0, seed)?;
    if k > block.n_edges() {
        return Err(Error::Generator(format!("at most {} free edges, asked for {k}", block.n_edges())));
    }
    let mut items: Vec<(Edge, u32, u32)> = vec![(Edge::new(0, 0), 1, 1), (Edge::new(0, 1), 1, 1)];
    items.extend(
        block
            .ranked_edges()
            .map(|(e, mr, wr)| (Edge::new(e.man + 1, e.woman + 2), mr, wr)),
    );
    let instance = Instance::from_ranked_edges(8, 8, items)?;
    let mut candidates: Vec<Edge> = instance.edges()[2..].to_vec();
    candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let restricted = RestrictedEdgeSets::new().with_free(candidates.into_iter().take(k));
    Ok((instance, restricted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calls_double() {
        let rows = bench_fpt(|k| unsat_free_family(k, 1), 0..=4, StabilityLevel::Strong, &FptOptions::default()).unwrap();
        for r in &rows {
            assert!(!r.found);
            assert_eq!(r.calls, 1 << r.k);
        }
        assert!(rows_to_csv(&rows).starts_with("k,calls,found,seconds\n0,1,false,"));
    }

    #[test]
    fn family_shape() {
        let (inst, r) = unsat_free_family(10, 3).unwrap();
        assert_eq!((inst.n_men(), inst.n_women()), (8, 8));
        assert_eq!(r.free.len(), 10);
        assert!(unsat_free_family(43, 0).is_err());
    }
}
