//! `smti`: solve, verify and reduce stable marriage instances with ties.
//!
//! Exit status: 0 for a witness or OK, 1 for NONE or a violation, 2 for
//! any input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use smti_core::bench::{bench_fpt, rows_to_csv, unsat_free_family};
use smti_core::io::{
    parse_formula, parse_instance, parse_matching, serialize_formula, serialize_instance,
    serialize_matching, serialize_registry,
};
use smti_core::oracle::{oracle_exists, oracle_perfect_weak, solve_1in3_bruteforce};
use smti_core::reductions::generate::{gen_random_1in3, gen_smti, random_restrictions, RestrictionMix, SmtiParams};
use smti_core::reductions::{
    complete_with_free, completion_registry, reduce_forbidden1_to_dense, reduce_perfect_to_forbidden1,
    reduce_sat_to_ssmti_free,
};
use smti_core::solvers::{solve, solve_free_fpt, FptOptions};
use smti_core::{blocking_report, verify_stable, Edge, Instance, Matching, RestrictedEdgeSets, StabilityLevel};

#[derive(Parser)]
#[command(name = "smti", version, about = "Stable marriage with ties and restricted edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a stable matching or report NONE.
    Solve(SolveArgs),
    /// Check a matching; prints OK or the violations.
    Verify(VerifyArgs),
    /// Exhaustive search on small instances or formulas.
    Oracle(OracleArgs),
    /// Build a reduction instance.
    Reduce(ReduceArgs),
    /// Generate a random instance or formula.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Subset-enumeration call counts on a family without solutions; CSV.
    Bench(BenchArgs),
}

fn parse_level(s: &str) -> std::result::Result<StabilityLevel, String> {
    s.parse().map_err(|e: smti_core::Error| e.to_string())
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_level)]
    level: StabilityLevel,
    #[arg(long)]
    instance: PathBuf,
    /// Use free-edge subset enumeration (strong or super only).
    #[arg(long)]
    fpt_free: bool,
    /// Print the number of subproblems evaluated; implies --fpt-free.
    #[arg(long)]
    count_calls: bool,
    /// Evaluate subsets in parallel.
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_level)]
    level: StabilityLevel,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    matching: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_parser = parse_level, required_unless_present = "formula")]
    level: Option<StabilityLevel>,
    #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
    instance: Option<PathBuf>,
    /// Search for a perfect weakly stable matching.
    #[arg(long, conflicts_with = "formula")]
    perfect: bool,
    /// Brute-force a 1-in-3 formula instead.
    #[arg(long)]
    formula: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    /// Perfect weakly stable matching → single forbidden edge.
    Forbidden1,
    /// Single forbidden edge → complete graph minus one edge.
    Dense,
    /// 1-in-3 formula → strong/super stability with free edges.
    SatFree,
    /// Pad with free edges to a complete instance.
    CompleteFree,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(value_enum)]
    kind: Reduction,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Also write the vertex-role and edge-tag map.
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    Smti(GenSmtiArgs),
    #[command(name = "1in3")]
    OneInThree(Gen1in3Args),
}

#[derive(Args)]
struct GenSmtiArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    men: usize,
    #[arg(long, default_value_t = 5)]
    women: usize,
    #[arg(long, default_value_t = 0.6)]
    density: f64,
    #[arg(long, default_value_t = 0.3)]
    ties: f64,
    /// Largest tie-group; 0 for no bound.
    #[arg(long, default_value_t = 0)]
    max_tie: usize,
    /// Per-edge probability of being forbidden.
    #[arg(long, default_value_t = 0.0)]
    forbidden: f64,
    #[arg(long, default_value_t = 0.0)]
    forced: f64,
    #[arg(long, default_value_t = 0.0)]
    free: f64,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Gen1in3Args {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    vars: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    k_min: usize,
    #[arg(long, default_value_t = 10)]
    k_max: usize,
    #[arg(long, value_parser = parse_level, default_value = "strong")]
    level: StabilityLevel,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Ok,
    None,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<(Instance, RestrictedEdgeSets)> {
    parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn edge_json(e: &Edge) -> Value {
    json!([e.man + 1, e.woman + 1])
}

fn matching_json(m: &Matching) -> Value {
    Value::Array(m.edges().iter().map(edge_json).collect())
}

fn run_solve(a: SolveArgs) -> Result<Verdict> {
    let (inst, restricted) = load_instance(&a.instance)?;
    let (matching, calls) = if a.fpt_free || a.count_calls {
        let options = FptOptions {
            parallel: a.parallel,
            allow_forced_forbidden: true,
        };
        let out = solve_free_fpt(&inst, &restricted, a.level, &options)?;
        (out.matching, Some(out.calls))
    } else {
        (solve(&inst, &restricted, a.level)?, None)
    };
    if a.json {
        let doc = json!({
            "command": "solve",
            "level": a.level.to_string(),
            "status": if matching.is_some() { "witness" } else { "none" },
            "matching": matching.as_ref().map(matching_json),
            "calls": calls,
        });
        println!("{doc}");
    } else {
        match &matching {
            Some(m) => print!("{}", serialize_matching(m)),
            None => println!("NONE"),
        }
        if a.count_calls {
            if let Some(c) = calls {
                println!("calls {c}");
            }
        }
    }
    Ok(if matching.is_some() { Verdict::Ok } else { Verdict::None })
}

fn run_verify(a: VerifyArgs) -> Result<Verdict> {
    let (inst, restricted) = load_instance(&a.instance)?;
    let matching = parse_matching(&read(&a.matching)?, inst.n_men(), inst.n_women())
        .with_context(|| format!("in {}", a.matching.display()))?;
    let v = verify_stable(&inst, &restricted, &matching, a.level);
    if a.json {
        let violations: Vec<Value> = v
            .violations
            .iter()
            .map(|x| json!({ "kind": x.code(), "edge": edge_json(&x.edge()), "message": x.to_string() }))
            .collect();
        let blocking = blocking_report(&inst, &matching).ok().map(|r| {
            json!({
                "weak": r.weak.iter().map(edge_json).collect::<Vec<_>>(),
                "strong": r.strong.iter().map(edge_json).collect::<Vec<_>>(),
                "super": r.super_.iter().map(edge_json).collect::<Vec<_>>(),
            })
        });
        let doc = json!({
            "command": "verify",
            "level": a.level.to_string(),
            "stable": v.is_stable(),
            "violations": violations,
            "blocking": blocking,
        });
        println!("{doc}");
    } else if v.is_stable() {
        println!("OK");
    } else {
        for x in &v.violations {
            println!("{x}");
        }
    }
    Ok(if v.is_stable() { Verdict::Ok } else { Verdict::None })
}

fn run_oracle(a: OracleArgs) -> Result<Verdict> {
    if let Some(path) = &a.formula {
        let f = parse_formula(&read(path)?).with_context(|| format!("in {}", path.display()))?;
        return Ok(match solve_1in3_bruteforce(&f) {
            Some(t) => {
                let trues: Vec<String> = (0..f.n_vars()).filter(|&x| t.get(x)).map(|x| (x + 1).to_string()).collect();
                println!("true {}", trues.join(" "));
                Verdict::Ok
            }
            None => {
                println!("NONE");
                Verdict::None
            }
        });
    }
    let (Some(level), Some(path)) = (a.level, a.instance) else {
        bail!("--level and --instance are required");
    };
    let (inst, restricted) = load_instance(&path)?;
    let found = if a.perfect {
        if level != StabilityLevel::Weak || !restricted.is_empty() {
            bail!("--perfect needs --level weak and an instance without restricted edges");
        }
        oracle_perfect_weak(&inst)
    } else {
        oracle_exists(&inst, &restricted, level)?
    };
    Ok(match found {
        Some(m) => {
            print!("{}", serialize_matching(&m));
            Verdict::Ok
        }
        None => {
            println!("NONE");
            Verdict::None
        }
    })
}

fn run_reduce(a: ReduceArgs) -> Result<Verdict> {
    let (text, registry) = match a.kind {
        Reduction::Forbidden1 => {
            let (inst, restricted) = load_instance(&a.input)?;
            if !restricted.is_empty() {
                bail!("the source instance must not have restricted edges");
            }
            let red = reduce_perfect_to_forbidden1(&inst)?;
            let out = &red.output;
            (
                serialize_instance(&out.instance, &out.restricted),
                Some(serialize_registry(&out.registry, out.master.as_ref())),
            )
        }
        Reduction::Dense => {
            if a.registry.is_some() {
                bail!("the dense reduction has no registry");
            }
            let (inst, restricted) = load_instance(&a.input)?;
            let dense = reduce_forbidden1_to_dense(&inst, &restricted)?;
            (serialize_instance(&dense, &RestrictedEdgeSets::new()), None)
        }
        Reduction::SatFree => {
            let f = parse_formula(&read(&a.input)?).with_context(|| format!("in {}", a.input.display()))?;
            let red = reduce_sat_to_ssmti_free(&f)?;
            let out = &red.output;
            (
                serialize_instance(&out.instance, &out.restricted),
                Some(serialize_registry(&out.registry, out.master.as_ref())),
            )
        }
        Reduction::CompleteFree => {
            let (inst, restricted) = load_instance(&a.input)?;
            let (done, r) = complete_with_free(&inst, &restricted);
            let reg = serialize_registry(&completion_registry(&inst, &done), None);
            (serialize_instance(&done, &r), Some(reg))
        }
    };
    write_out(Some(&a.out), &text)?;
    if let (Some(path), Some(reg)) = (&a.registry, registry) {
        write_out(Some(path), &reg)?;
    }
    Ok(Verdict::Ok)
}

fn run_gen(g: GenCommand) -> Result<Verdict> {
    match g {
        GenCommand::Smti(a) => {
            let params = SmtiParams::new(a.men, a.women, a.density, a.ties).with_max_tie(a.max_tie);
            let inst = gen_smti(&params, a.seed)?;
            let mix = RestrictionMix {
                forbidden: a.forbidden,
                forced: a.forced,
                free: a.free,
            };
            if [mix.forbidden, mix.forced, mix.free].iter().any(|p| !(0.0..=1.0).contains(p))
                || mix.forbidden + mix.forced + mix.free > 1.0
            {
                bail!("restriction probabilities must be in [0, 1] and sum to at most 1");
            }
            let restricted = random_restrictions(&inst, mix, a.seed);
            write_out(a.out.as_deref(), &serialize_instance(&inst, &restricted))?;
        }
        GenCommand::OneInThree(a) => {
            let f = gen_random_1in3(a.vars, a.seed)?;
            write_out(a.out.as_deref(), &serialize_formula(&f))?;
        }
    }
    Ok(Verdict::Ok)
}

fn run_bench(a: BenchArgs) -> Result<Verdict> {
    if a.level == StabilityLevel::Weak {
        bail!("bench runs strong or super stability");
    }
    let options = FptOptions {
        parallel: a.parallel,
        ..Default::default()
    };
    let rows = bench_fpt(|k| unsat_free_family(k, a.seed), a.k_min..=a.k_max, a.level, &options)?;
    write_out(a.out.as_deref(), &rows_to_csv(&rows))?;
    Ok(Verdict::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Gen(g) => run_gen(g),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::None) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
