//! `nielsenkit`: fixed point classes and their invariants from JSON instance files.
//!
//! Exit status: 0 every verdict passes, 1 some verdict or expectation fails,
//! 2 input or structure error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nielsenkit::corpus::{
    class_json, emit_corpus, evaluate, report_json, route_json, run_routes, stratum_json, EvalOptions, REPORT_PREFIX,
};
use nielsenkit::json::{fundamental_endo, InstanceJson, RouteJson};
use nielsenkit::nielsen::{analyze, lefschetz_number, Analysis, PipelineOptions};
use nielsenkit::props::{run_props, run_trace_criterion};
use nielsenkit::route::{RouteOptions, FIXED_WORD_LEN, ROUTE_DEPTH};
use nielsenkit::suite::{all_pass, theorem_suite};

#[derive(Parser)]
#[command(name = "nielsenkit", version, about = "Nielsen fixed point invariants of graph selfmaps and free group endomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Depths {
    /// Conjugator length bound for route equivalence.
    #[arg(long, default_value_t = ROUTE_DEPTH)]
    depth: usize,
    /// Word length bound for the fixed-word search.
    #[arg(long, default_value_t = FIXED_WORD_LEN)]
    fixed_word_len: usize,
    /// Length bound for the brute-force Nielsen path partition check.
    #[arg(long, default_value_t = PipelineOptions::default().brute_len)]
    brute_len: usize,
    /// Length bound for the indivisible Nielsen path search.
    #[arg(long, default_value_t = PipelineOptions::default().inp_max_len)]
    inp_len: usize,
}

impl Depths {
    fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            pipeline: PipelineOptions { brute_len: self.brute_len, inp_max_len: self.inp_len, ..PipelineOptions::default() },
            route: RouteOptions { depth: self.depth, fixed_word_len: self.fixed_word_len, generators: None },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance and check that the map is π₁-injective.
    Validate { file: PathBuf },
    /// Subdivide, filter and classify every stratum.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        depths: Depths,
    },
    /// Fixed point classes with ind, rk, a, ichr and the theorem verdicts.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        depths: Depths,
    },
    /// Attracting fixed words of every class.
    Attracting {
        file: PathBuf,
        /// Prefix length to print.
        #[arg(long, default_value_t = REPORT_PREFIX)]
        len: usize,
        #[command(flatten)]
        depths: Depths,
    },
    /// Analyse the class of one route, possibly empty.
    Route {
        file: PathBuf,
        /// Route word, lowercase generators and uppercase inverses.
        #[arg(long)]
        word: String,
        /// Candidate generators of the fixed subgroup, checked before use.
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
        #[command(flatten)]
        depths: Depths,
    },
    /// Lefschetz number against the index sum.
    Lefschetz { file: PathBuf },
    /// Run the theorem checks on one file, a directory, or random instances.
    Verify {
        file: Option<PathBuf>,
        /// Every `*.json` file in this directory.
        #[arg(long, conflicts_with_all = ["file", "props"])]
        suite: Option<PathBuf>,
        /// Seeded random rank-2 instances (seed from NIELSENKIT_SEED).
        #[arg(long, conflicts_with = "file")]
        props: bool,
        /// Number of random instances for --props.
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[command(flatten)]
        depths: Depths,
    },
    /// Write the built-in example corpus.
    EmitCorpus { dir: PathBuf },
}

/// A report and its exit status.
struct Outcome {
    report: Value,
    code: u8,
}

fn outcome(report: Value, code: u8) -> anyhow::Result<Outcome> {
    Ok(Outcome { report, code })
}

fn input_error(file: &Path, e: impl std::fmt::Display) -> Outcome {
    Outcome { report: json!({"file": file.display().to_string(), "error": e.to_string()}), code: 2 }
}

fn read_instance(file: &Path) -> Result<InstanceJson, Outcome> {
    let text = fs::read_to_string(file).map_err(|e| input_error(file, e))?;
    InstanceJson::from_str(&text).map_err(|e| input_error(file, e))
}

fn analysis(file: &Path, inst: &InstanceJson, opts: &PipelineOptions) -> Result<Analysis, Outcome> {
    let (f, levels) = inst.load().map_err(|e| input_error(file, e))?;
    let a = analyze(&f, levels.as_deref(), opts).map_err(|e| input_error(file, e))?;
    let failed = a.failed_strata();
    if failed.is_empty() {
        Ok(a)
    } else {
        let strata: Vec<Value> = failed.iter().map(|(edges, reason)| json!({"edges": edges, "reason": reason})).collect();
        Err(Outcome { report: json!({"file": file.display().to_string(), "error": "unclassifiable stratum", "strata": strata}), code: 2 })
    }
}

fn name_of(inst: &InstanceJson, file: &Path) -> String {
    inst.name.clone().unwrap_or_else(|| file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default())
}

fn validate(file: &Path) -> Result<Outcome, Outcome> {
    let inst = read_instance(file)?;
    let (f, _) = inst.load().map_err(|e| input_error(file, e))?;
    let g = f.graph();
    let rank = fundamental_endo(&f).map_err(|e| input_error(file, e))?.map(|phi| phi.rank());
    Ok(Outcome {
        report: json!({
            "name": name_of(&inst, file),
            "valid": true,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "chi": g.euler_characteristic(),
            "rank": rank,
        }),
        code: 0,
    })
}

fn classify(file: &Path, depths: &Depths) -> Result<Outcome, Outcome> {
    let inst = read_instance(file)?;
    let a = analysis(file, &inst, &depths.eval_options().pipeline)?;
    let g = a.sub.map.graph();
    let levels: Vec<Vec<&str>> = a
        .filtration
        .levels()
        .iter()
        .map(|m| (0..g.edge_count()).filter(|&e| m[e]).map(|e| g.edge_name(e)).collect())
        .collect();
    Ok(Outcome {
        report: json!({
            "name": name_of(&inst, file),
            "subdivided": !a.sub.is_trivial(),
            "vertices": g.vertex_names(),
            "filtration": levels,
            "strata": a.strata.iter().map(|s| stratum_json(&a, s)).collect::<Vec<_>>(),
        }),
        code: 0,
    })
}

fn invariants(file: &Path, depths: &Depths) -> Result<Outcome, Outcome> {
    let inst = read_instance(file)?;
    let ev = evaluate(&inst, &depths.eval_options());
    let mut report = report_json(&ev);
    if ev.name.is_empty() {
        report["name"] = json!(name_of(&inst, file));
    }
    Ok(Outcome { code: ev.exit_code() as u8, report })
}

fn attracting(file: &Path, len: usize, depths: &Depths) -> Result<Outcome, Outcome> {
    let inst = read_instance(file)?;
    let a = analysis(file, &inst, &depths.eval_options().pipeline)?;
    let classes: Vec<Value> = a
        .classes
        .iter()
        .map(|c| {
            let full = class_json(c, len);
            json!({"members": full["members"], "a": full["a"], "delta": c.delta, "attracting": full["attracting"]})
        })
        .collect();
    Ok(Outcome { report: json!({"name": name_of(&inst, file), "classes": classes}), code: 0 })
}

fn route(file: &Path, word: &str, generators: Option<Vec<String>>, depths: &Depths) -> Result<Outcome, Outcome> {
    let inst = read_instance(file)?;
    let opts = depths.eval_options();
    let a = analysis(file, &inst, &opts.pipeline)?;
    let routes = [RouteJson { word: word.to_string(), generators, expect: None }];
    let reports = run_routes(&a, &routes, &opts.route).map_err(|e| input_error(file, e))?;
    let verdicts = theorem_suite(&a, &reports);
    let empty = verdicts.iter().find(|v| v.name == "prop_empty_class").expect("suite has the empty-class check");
    let mut report = route_json(&reports[0]);
    report["name"] = json!(name_of(&inst, file));
    report["verdict"] = json!({"status": empty.status, "detail": empty.detail});
    Ok(Outcome { code: if all_pass(std::slice::from_ref(empty)) { 0 } else { 1 }, report })
}

fn lefschetz(file: &Path) -> Result<Outcome, Outcome> {
    let inst = read_instance(file)?;
    let (f, _) = inst.load().map_err(|e| input_error(file, e))?;
    let l = lefschetz_number(&f).map_err(|e| input_error(file, e))?;
    let a = analysis(file, &inst, &PipelineOptions::default())?;
    let sum = a.index_sum();
    Ok(Outcome {
        report: json!({
            "name": name_of(&inst, file),
            "lefschetz": l,
            "index_sum": sum,
            "indices": a.classes.iter().map(|c| c.ind).collect::<Vec<_>>(),
            "equal": l == sum,
        }),
        code: if l == sum { 0 } else { 1 },
    })
}

fn verify_file(file: &Path, depths: &Depths) -> Outcome {
    match invariants(file, depths) {
        Ok(o) | Err(o) => o,
    }
}

fn suite_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// One thread per file; results are collected in file order.
fn verify_suite(dir: &Path, depths: &Depths) -> anyhow::Result<Outcome> {
    let files = suite_files(dir)?;
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|f| s.spawn(|| verify_file(f, depths))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let code = outcomes.iter().map(|o| o.code).max().unwrap_or(0);
    let instances: Vec<Value> = files
        .iter()
        .zip(&outcomes)
        .map(|(f, o)| {
            json!({
                "file": f.file_name().map(|n| n.to_string_lossy().into_owned()),
                "exit": o.code,
                "verdicts": o.report.get("verdicts"),
                "mismatches": o.report.get("mismatches"),
                "error": o.report.get("error"),
            })
        })
        .collect();
    let count = |c: u8| outcomes.iter().filter(|o| o.code == c).count();
    outcome(
        json!({
            "suite": dir.display().to_string(),
            "files": files.len(),
            "pass": count(0),
            "fail": count(1),
            "error": count(2),
            "instances": instances,
            "exit": code,
        }),
        code,
    )
}

fn verify_props(count: usize) -> anyhow::Result<Outcome> {
    let seed = nielsenkit::props::seed_from_env();
    let props = run_props(seed, count);
    let trace = run_trace_criterion(seed, 100);
    let trace_ok = [&trace.below, &trace.above].iter().all(|s| s.found == s.verified && s.failures.is_empty());
    let ok = props.violations.is_empty() && trace_ok;
    outcome(
        json!({"props": props, "skip_rate": props.skip_rate(), "trace": trace, "exit": if ok { 0 } else { 1 }}),
        if ok { 0 } else { 1 },
    )
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let settle = |r: Result<Outcome, Outcome>| Ok(r.unwrap_or_else(|e| e));
    match &cli.command {
        Command::Validate { file } => settle(validate(file)),
        Command::Classify { file, depths } => settle(classify(file, depths)),
        Command::Invariants { file, depths } => settle(invariants(file, depths)),
        Command::Attracting { file, len, depths } => settle(attracting(file, *len, depths)),
        Command::Route { file, word, generators, depths } => settle(route(file, word, generators.clone(), depths)),
        Command::Lefschetz { file } => settle(lefschetz(file)),
        Command::Verify { suite: Some(dir), depths, .. } => verify_suite(dir, depths),
        Command::Verify { props: true, count, .. } => verify_props(*count),
        Command::Verify { file: Some(file), depths, .. } => Ok(verify_file(file, depths)),
        Command::Verify { .. } => anyhow::bail!("verify needs a file, --suite DIR or --props"),
        Command::EmitCorpus { dir } => {
            let files = emit_corpus(dir)?;
            outcome(json!({"dir": dir.display().to_string(), "files": files}), 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| {
        let text = serde_json::to_string_pretty(&o.report)? + "\n";
        match &cli.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(o.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
