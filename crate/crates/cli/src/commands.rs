use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rsk_core::construct::{
    base_size, construct_balanced_t, construct_general_t, construct_t1_with_witnesses, general_t_lower_bound, ConstructionWitnesses,
};
use rsk_core::greene::{greene_profile, max_union_increasing, verify_witness, Decomposition};
use rsk_core::metrics::{
    adjacent_distance, anatomy, decompose_blocks, delta, delta_checked, transposition_distance,
};
use rsk_core::rsk::{rsk, shape};
use rsk_core::search::{
    certify_witnesses, exhaustive_t1, general_transposition_sweep, random_walk_sweep,
    verify_simulation_example, ExhaustiveOptions, WalkConfig,
};
use rsk_core::seqlemma::{
    check_bound, continuous_optimum, kkt_residuals, minimize_ratio, reduce_pair, sequence_stats,
    tight_sequence, tightness_ratio, verify_bound_exhaustive, SequencePair,
};
use rsk_core::{Partition, Permutation, Side};

use crate::args::{Cli, Command, SearchMode, SeqMode, Suite};
use crate::render::{block_table, join, render_diagram};
use crate::CliError;

/// One invocation's machine-readable result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub outputs: Value,
    pub version: String,
}

/// Per-trial row of a sweep, as written by `--format csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub trial: usize,
    pub n: usize,
    pub t: usize,
    pub realized_d: u64,
    pub delta: usize,
    pub ratio: f64,
}

pub struct Outcome {
    pub record: ResultRecord,
    pub ascii: String,
    /// Per-trial rows and full records for sweeps.
    pub rows: Option<(Vec<CsvRow>, Vec<Value>)>,
    /// A verification check failed.
    pub failed: bool,
}

fn record(command: &str, params: Value, outputs: Value) -> ResultRecord {
    let params = match params {
        Value::Object(map) => map.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    ResultRecord {
        command: command.to_string(),
        params,
        outputs,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn outcome(record: ResultRecord, ascii: String) -> Outcome {
    Outcome { record, ascii, rows: None, failed: false }
}

fn perm(flag: &str, s: &str) -> Result<Permutation, CliError> {
    s.parse()
        .map_err(|e| CliError::Validation(format!("--{flag}: {e}")))
}

fn partition(flag: &str, s: &str) -> Result<Partition, CliError> {
    s.parse()
        .map_err(|e| CliError::Validation(format!("--{flag}: {e}")))
}

fn u64_list(flag: &str, s: &str) -> Result<Vec<u64>, CliError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Validation(format!("--{flag}: `{t}` is not a nonnegative integer")))
        })
        .collect()
}

fn required<T: Copy>(flag: &str, v: Option<T>) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Validation(format!("--{flag} is required in this mode")))
}

fn required_str<'a>(flag: &str, v: &'a Option<String>) -> Result<&'a str, CliError> {
    v.as_deref()
        .ok_or_else(|| CliError::Validation(format!("--{flag} is required in this mode")))
}

fn half_integer(doubled: usize) -> Value {
    if doubled.is_multiple_of(2) {
        json!(doubled / 2)
    } else {
        json!(doubled as f64 / 2.0)
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let workers = cli.workers;
    match &cli.command {
        Command::Rsk { perm: p } => {
            let pi = perm("perm", p)?;
            let pair = rsk(&pi);
            let sh = pair.shape();
            let ascii = format!("P\n{}\n\nQ\n{}\n\nshape {sh}\n{}", pair.p, pair.q, render_diagram(&sh, None));
            let rec = record(
                "rsk",
                json!({ "perm": pi }),
                json!({ "P": pair.p.rows(), "Q": pair.q.rows(), "shape": sh }),
            );
            Ok(outcome(rec, ascii))
        }
        Command::Delta { lam, mu } => {
            let (lam, mu) = (partition("lam", lam)?, partition("mu", mu)?);
            let report = delta_checked(&lam, &mu);
            let diagram = render_diagram(&lam, Some(&mu));
            let d = half_integer(report.doubled);
            let ascii = format!("Δ = {d}\n{diagram}");
            let rec = record(
                "delta",
                json!({ "lam": lam, "mu": mu }),
                json!({ "delta": d, "sizes_match": report.sizes_match, "diagram": diagram }),
            );
            Ok(outcome(rec, ascii))
        }
        Command::Distance { pi, tau, side } => {
            let (pi, tau) = (perm("pi", pi)?, perm("tau", tau)?);
            let side = Side::from(*side);
            let d = adjacent_distance(&pi, &tau, side)?;
            let cayley = transposition_distance(&pi, &tau)?;
            let rec = record(
                "distance",
                json!({ "pi": pi, "tau": tau, "side": side }),
                json!({ "distance": d, "transpositions": cayley }),
            );
            Ok(outcome(rec, format!("{d}")))
        }
        Command::Construct { n, t, emit_witness, balanced } => construct(*n, *t, *emit_witness, *balanced),
        Command::Blocks { lam, mu } => {
            let (lam, mu) = (partition("lam", lam)?, partition("mu", mu)?);
            let blocks = decompose_blocks(&lam, &mu);
            let a = anatomy(&lam, &mu);
            let diagram = render_diagram(&lam, Some(&mu));
            let ascii = format!("{}\n\n{diagram}", block_table(&blocks));
            let rec = record(
                "blocks",
                json!({ "lam": lam, "mu": mu }),
                json!({
                    "blocks": blocks,
                    "delta": half_integer(a.sym_diff_cells.len()),
                    "intersection_area": a.intersection_area,
                    "diagram": diagram,
                }),
            );
            Ok(outcome(rec, ascii))
        }
        Command::Greene { perm: p, j } => {
            let pi = perm("perm", p)?;
            let profile = greene_profile(&pi);
            let rsk_shape = shape(&pi);
            let mu_j = j.map(|j| max_union_increasing(&pi, j));
            let mut ascii = format!(
                "mu {}\nshape {}\nrsk shape {}",
                join(&profile.mu),
                profile.derived_shape,
                rsk_shape
            );
            if let (Some(j), Some(m)) = (j, mu_j) {
                ascii.push_str(&format!("\nmu_{j} = {m}"));
            }
            let rec = record(
                "greene",
                json!({ "perm": pi, "j": j }),
                json!({
                    "mu": profile.mu,
                    "mu_j": mu_j,
                    "shape": profile.derived_shape,
                    "rsk_shape": rsk_shape,
                }),
            );
            Ok(outcome(rec, ascii))
        }
        Command::Search { n, t, mode, trials, seed, side, prune } => {
            search(*n, *t, *mode, *trials, *seed, Side::from(*side), *prune, workers)
        }
        Command::Seqlemma { mode, k, cap, ell1, ell2, c, a, b, lam, mu } => {
            seqlemma(*mode, *k, *cap, *ell1, *ell2, *c, a, b, lam, mu)
        }
        Command::Verify { suite, seed, trials } => verify(*suite, *seed, *trials, workers),
    }
}

fn witness_json(p: &Permutation, inc: &Decomposition, dec: &Decomposition) -> Result<Value, CliError> {
    let verdict = verify_witness(p, inc, dec)?;
    Ok(json!({
        "increasing": inc.values(p),
        "decreasing": dec.values(p),
        "certified": verdict.certified,
        "shape": verdict.shape,
    }))
}

fn construct(n: usize, t: usize, emit_witness: bool, balanced: bool) -> Result<Outcome, CliError> {
    let (pi, tau, ks) = if balanced {
        let b = construct_balanced_t(n, t)?;
        (b.pi, b.tau, b.ks)
    } else {
        let g = construct_general_t(n, t)?;
        (g.pi, g.tau, vec![g.k; t])
    };
    let (lam, mu) = (shape(&pi), shape(&tau));
    let d = delta(&lam, &mu);
    let dist = adjacent_distance(&pi, &tau, Side::Left)?;
    let sizes: Vec<usize> = ks.iter().map(|&k| base_size(k)).collect();
    let mut outputs = json!({
        "pi": pi,
        "tau": tau,
        "ks": ks,
        "block_sizes": sizes,
        "lam": lam,
        "mu": mu,
        "delta": d,
        "left_distance": dist,
        "lower_bound": general_t_lower_bound(n, t),
    });
    let mut ascii = format!(
        "pi  {pi}\ntau {tau}\nk = {}, block sizes {}\nshapes {lam} / {mu}\nΔ = {d}, left distance {dist}",
        join(&ks),
        join(&sizes)
    );
    if emit_witness {
        if t != 1 {
            return Err(CliError::Validation("--emit-witness needs --t 1".into()));
        }
        let (pi, tau, w): (_, _, ConstructionWitnesses) = construct_t1_with_witnesses(n)?;
        let pw = witness_json(&pi, &w.pi_increasing, &w.pi_decreasing)?;
        let tw = witness_json(&tau, &w.tau_increasing, &w.tau_decreasing)?;
        for (name, dec) in [("d", w.pi_decreasing.values(&pi)), ("f", w.tau_decreasing.values(&tau))] {
            for (i, piece) in dec.iter().enumerate() {
                ascii.push_str(&format!("\n{name}_{} = {}", i + 1, join(piece)));
            }
        }
        outputs["witness"] = json!({ "pi": pw, "tau": tw });
    }
    let rec = record("construct", json!({ "n": n, "t": t, "emit_witness": emit_witness, "balanced": balanced }), outputs);
    Ok(outcome(rec, ascii))
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    t: usize,
    mode: SearchMode,
    trials: usize,
    seed: u64,
    side: Side,
    prune: bool,
    workers: Option<usize>,
) -> Result<Outcome, CliError> {
    match mode {
        SearchMode::Exhaustive => {
            if t != 1 {
                return Err(CliError::Validation("exhaustive search supports --t 1 only".into()));
            }
            let r = exhaustive_t1(n, side, ExhaustiveOptions { prune, workers })?;
            let certified = certify_witnesses(&r);
            let ascii = format!(
                "n = {n}, {side} side: max Δ = {} (cap {:.3}), {} witness classes, {} violations",
                r.max_delta,
                r.bound,
                r.witnesses.len(),
                r.violations
            );
            let rec = record(
                "search",
                json!({ "mode": "exhaustive", "n": n, "t": t, "side": side, "prune": prune }),
                json!({ "result": r, "greene_certified": certified }),
            );
            Ok(outcome(rec, ascii))
        }
        SearchMode::Walk => {
            let sweep = random_walk_sweep(&WalkConfig { n, t, trials, side, seed, workers })?;
            let s = &sweep.summary;
            let ascii = format!(
                "{trials} walks, n = {n}, t = {t}, seed {seed}: max Δ = {}, max ratio {:.4}, mean ratio {:.4}, \
                 max block area {}, failures: prefix {} blocks {} cap {} triangle {}",
                s.max_delta,
                s.max_ratio,
                s.mean_ratio,
                s.max_block_area,
                s.prefix_failures,
                s.block_failures,
                s.cap_failures,
                s.triangle_failures
            );
            let rows = sweep
                .records
                .iter()
                .map(|r| CsvRow { trial: r.trial, n, t, realized_d: r.realized_d, delta: r.delta, ratio: r.ratio })
                .collect();
            let lines = sweep.records.iter().map(|r| json!(r)).collect();
            let rec = record(
                "search",
                json!({ "mode": "walk", "n": n, "t": t, "trials": trials, "seed": seed, "side": side }),
                json!({ "result": sweep.result, "summary": sweep.summary }),
            );
            Ok(Outcome { record: rec, ascii, rows: Some((rows, lines)), failed: false })
        }
        SearchMode::Transpositions => {
            let sweep = general_transposition_sweep(n, t, trials, seed, workers)?;
            let ascii = format!(
                "{trials} walks, n = {n}, t = {t}, seed {seed}: max Δ = {}, max Δ/d {:.4}, \
                 max prefix deviation {}, failures {}",
                sweep.max_delta, sweep.max_delta_per_step, sweep.max_prefix_deviation, sweep.prefix_failures
            );
            let rows = sweep
                .records
                .iter()
                .map(|r| CsvRow {
                    trial: r.trial,
                    n,
                    t,
                    realized_d: r.realized_d as u64,
                    delta: r.delta,
                    ratio: r.delta_per_step,
                })
                .collect();
            let lines = sweep.records.iter().map(|r| json!(r)).collect();
            let rec = record(
                "search",
                json!({ "mode": "transpositions", "n": n, "t": t, "trials": trials, "seed": seed }),
                json!({
                    "max_delta": sweep.max_delta,
                    "max_delta_per_step": sweep.max_delta_per_step,
                    "max_prefix_deviation": sweep.max_prefix_deviation,
                    "prefix_failures": sweep.prefix_failures,
                }),
            );
            Ok(Outcome { record: rec, ascii, rows: Some((rows, lines)), failed: false })
        }
    }
}

fn pair_json(p: &SequencePair) -> Result<Value, CliError> {
    let stats = sequence_stats(p);
    let bound = check_bound(p)?;
    Ok(json!({
        "a": p.a,
        "b": p.b,
        "T": p.t,
        "delta": stats.delta,
        "n_total": stats.n_total,
        "ratio": stats.ratio(),
        "bound": bound.bound,
        "holds": bound.holds,
        "slack": bound.slack,
    }))
}

#[allow(clippy::too_many_arguments)]
fn seqlemma(
    mode: SeqMode,
    k: Option<usize>,
    cap: Option<u64>,
    ell1: usize,
    ell2: usize,
    c: Option<f64>,
    a: &Option<String>,
    b: &Option<String>,
    lam: &Option<String>,
    mu: &Option<String>,
) -> Result<Outcome, CliError> {
    let (params, outputs, ascii) = match mode {
        SeqMode::Enumerate => {
            let (k, cap) = (k.unwrap_or(4), cap.unwrap_or(10));
            let ts: Vec<u64> = (3..=cap).collect();
            let r = verify_bound_exhaustive(k, &ts)?;
            let ascii = format!(
                "{} pairs, {} violations, worst Δ/bound {:.4}",
                r.pairs_checked,
                r.violations.len(),
                r.worst_fraction
            );
            (json!({ "mode": "enumerate", "k": k, "T": cap }), json!(r), ascii)
        }
        SeqMode::Minimize => {
            let (k, cap) = (required("k", k)?, required("T", cap)?);
            let (p, _) = minimize_ratio(k, cap)?;
            let v = pair_json(&p)?;
            let ascii = format!("a = {:?}, b = {:?}, N/Δ² = {}", p.a, p.b, v["ratio"]);
            (json!({ "mode": "minimize", "k": k, "T": cap }), v, ascii)
        }
        SeqMode::Check => {
            let (a, b, cap) = (u64_list("a", required_str("a", a)?)?, u64_list("b", required_str("b", b)?)?, required("T", cap)?);
            let p = SequencePair::new(a, b, cap)?;
            let v = pair_json(&p)?;
            let ascii = format!("Δ = {}, N = {}, bound {:.4}, holds {}", v["delta"], v["n_total"], v["bound"], v["holds"]);
            (json!({ "mode": "check", "a": p.a, "b": p.b, "T": cap }), v, ascii)
        }
        SeqMode::Tight => {
            let k = required("k", k)?;
            let p = tight_sequence(k)?;
            let mut v = pair_json(&p)?;
            v["tightness"] = json!(tightness_ratio(&p));
            let ascii = format!(
                "a = {:?}, b = {:?}, T = {}, Δ = {}, Δ²/(N T ln T) = {:.6}",
                p.a, p.b, p.t, v["delta"], v["tightness"].as_f64().unwrap_or_default()
            );
            (json!({ "mode": "tight", "k": k }), v, ascii)
        }
        SeqMode::Kkt => {
            let (k, c) = (required("k", k)?, required("c", c)?);
            let opt = continuous_optimum(k, ell1, ell2, c)?;
            let residuals = kkt_residuals(&opt);
            let closed = opt.closed_form_t();
            let v = json!({
                "optimum": opt,
                "residuals": residuals,
                "max_residual": residuals.iter().cloned().fold(0.0, f64::max),
                "closed_form_T": closed,
                "T_relative_error": (opt.t - closed).abs() / closed,
                "k_bound_applies": opt.k_bound_applies(),
                "k_bound_holds": opt.k_bound_holds(),
            });
            let ascii = format!("T = {}, residuals {:?}", opt.t, residuals);
            (json!({ "mode": "kkt", "k": k, "ell1": ell1, "ell2": ell2, "c": c }), v, ascii)
        }
        SeqMode::Reduce => {
            let lam = partition("lam", required_str("lam", lam)?)?;
            let mu = partition("mu", required_str("mu", mu)?)?;
            let (r, p) = reduce_pair(&lam, &mu)?;
            let v = json!({
                "reduced": r,
                "sequences": pair_json(&p)?,
            });
            let ascii = format!(
                "a = {:?}, b = {:?}, T = {}\n{}",
                p.a,
                p.b,
                p.t,
                render_diagram(&r.lam, Some(&r.mu))
            );
            (json!({ "mode": "reduce", "lam": lam, "mu": mu }), v, ascii)
        }
    };
    Ok(outcome(record("seqlemma", params, outputs), ascii))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

fn check(name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check { name: name.into(), passed, detail }
}

fn adjacent_cap_checks(workers: Option<usize>) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for side in Side::BOTH {
        for n in 2..=8 {
            let r = exhaustive_t1(n, side, ExhaustiveOptions { prune: false, workers })?;
            out.push(check(
                format!("adjacent-cap n={n} {side}"),
                r.violations == 0,
                json!({ "max_delta": r.max_delta, "cap": r.bound, "pairs": r.examined }),
            ));
        }
    }
    Ok(out)
}

fn block_area_checks(seed: u64, trials: usize, workers: Option<usize>) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for t in 1..=10 {
        let sweep = random_walk_sweep(&WalkConfig { n: 30, t, trials, side: Side::Left, seed, workers })?;
        let s = &sweep.summary;
        out.push(check(
            format!("block-area n=30 t={t}"),
            s.prefix_failures == 0 && s.block_failures == 0 && s.cap_failures == 0,
            json!({
                "max_block_area": s.max_block_area,
                "max_delta": s.max_delta,
                "prefix_failures": s.prefix_failures,
                "block_failures": s.block_failures,
            }),
        ));
    }
    Ok(out)
}

fn sequence_bound_checks() -> Result<Vec<Check>, CliError> {
    let ts: Vec<u64> = (3..=10).collect();
    let r = verify_bound_exhaustive(4, &ts)?;
    Ok(vec![check(
        "sequence-bound k<=4 T<=10",
        r.violations.is_empty(),
        json!({ "pairs": r.pairs_checked, "violations": r.violations.len(), "worst_fraction": r.worst_fraction }),
    )])
}

fn simulation_example_checks() -> Vec<Check> {
    let v = verify_simulation_example();
    vec![check(
        "simulation-example",
        v.holds,
        json!({
            "delta": v.delta,
            "right_distance": v.right_distance,
            "lam": v.lam,
            "mu": v.mu,
            "in_construction_orbit": v.in_construction_orbit,
        }),
    )]
}

fn construction_checks() -> Result<Vec<Check>, CliError> {
    let (pi, tau, w) = construct_t1_with_witnesses(18)?;
    let vp = verify_witness(&pi, &w.pi_increasing, &w.pi_decreasing)?;
    let vt = verify_witness(&tau, &w.tau_increasing, &w.tau_decreasing)?;
    let (lam, mu) = (shape(&pi), shape(&tau));
    let d = delta(&lam, &mu);
    let dist = adjacent_distance(&pi, &tau, Side::Left)?;
    Ok(vec![check(
        "construction n=18",
        vp.certified && vt.certified && d == 3 && dist == 1,
        json!({ "pi": pi, "tau": tau, "lam": lam, "mu": mu, "delta": d, "left_distance": dist }),
    )])
}

fn verify(suite: Suite, seed: u64, trials: usize, workers: Option<usize>) -> Result<Outcome, CliError> {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::AdjacentCap {
        checks.extend(adjacent_cap_checks(workers)?);
    }
    if all || suite == Suite::BlockArea {
        checks.extend(block_area_checks(seed, trials, workers)?);
    }
    if all || suite == Suite::SequenceBound {
        checks.extend(sequence_bound_checks()?);
    }
    if all || suite == Suite::SimulationExample {
        checks.extend(simulation_example_checks());
    }
    if all || suite == Suite::Construction {
        checks.extend(construction_checks()?);
    }
    let passed = checks.iter().all(|c| c.passed);
    let ascii = checks
        .iter()
        .map(|c| format!("{} {}  {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let suite_name = suite.to_possible_value().map(|v| v.get_name().to_string());
    let rec = record(
        "verify",
        json!({ "suite": suite_name, "seed": seed, "trials": trials }),
        json!({ "passed": passed, "checks": checks }),
    );
    Ok(Outcome { record: rec, ascii, rows: None, failed: !passed })
}
