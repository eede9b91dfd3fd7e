//! `vlnc`: validate, verify, search and reproduce vector linear network codes.

mod input;
mod manifest;
mod repro;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use vlnc_core::algebra::Domain;
use vlnc_core::polymatroid::{check_dp_map, induce_from_code};
use vlnc_core::solver::{
    census, n1_recipe, solve, CensusVerdict, Pin, Predicate, RecipeConclusion, SearchConfig, SearchOutcome,
    SearchStats, SearchStatus, SolveError,
};
use vlnc_core::vlnc::{verify_solution, VlncCode};
use vlnc_core::zoo::{self, ZooEntry};

use input::{load_code, load_net, parse_fields, InputDigest};
use manifest::RunManifest;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const INPUT_ERROR: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "vlnc", version, about = "Vector linear network coding workbench")]
struct Cli {
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Check a network for structural problems.
    Validate {
        /// Network file or zoo mnemonic.
        #[arg(long)]
        net: String,
    },
    /// Check that a code solves a network.
    Verify(VerifyArgs),
    /// Search for a solution.
    Solve(SolveArgs),
    /// Check a predicate on every solution.
    Census(CensusArgs),
    /// Solve over several fields.
    Probe(ProbeArgs),
    /// List or emit zoo networks and codes.
    #[command(subcommand)]
    Zoo(ZooCommand),
    /// Two-step argument that N1(q) has no solution at the given field and
    /// dimension.
    Recipe(RecipeArgs),
    /// Run every reproducible claim and print a scoreboard.
    Repro(ReproArgs),
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    net: String,
    /// Code file or `zoo:<name>`.
    #[arg(long)]
    code: String,
    /// Expected domain (`p`, `p^n` or `ring:p,k`); required for zoo codes
    /// other than ring16.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    /// Also check the induced polymatroid against D1-D4.
    #[arg(long)]
    polymatroid: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Serialize, Clone)]
struct SearchArgs {
    /// Network file or zoo mnemonic.
    #[arg(long)]
    net: String,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// `src <source> <edge>=<matrix>|zero|nonzero` or `<source>,<edge>=zero|nonzero`.
    #[arg(long)]
    pin: Vec<String>,
    /// Try only maximal row spaces; verdicts are unchanged. Pass `false`
    /// for the plain enumeration.
    #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = ArgAction::Set)]
    normalize: bool,
    /// Time budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    max_assignments: Option<u64>,
    /// Largest accepted search-space size.
    #[arg(long)]
    ceiling: Option<f64>,
    #[arg(long)]
    json: bool,
    /// Write a found code here.
    #[arg(long)]
    emit_code: Option<PathBuf>,
    /// Print search statistics to stderr while running.
    #[arg(long)]
    progress: bool,
}

#[derive(Args, Serialize)]
struct SolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    search: SearchArgs,
    #[arg(long)]
    field: String,
}

#[derive(Args, Serialize)]
struct CensusArgs {
    #[command(flatten)]
    #[serde(flatten)]
    search: SearchArgs,
    #[arg(long)]
    field: String,
    /// `true`, `zero(<source>,<edge>)` or `nonzero(<source>,<edge>)`.
    #[arg(long)]
    predicate: String,
}

#[derive(Args, Serialize)]
struct ProbeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    search: SearchArgs,
    /// Comma-separated domains, e.g. `2,3,5`.
    #[arg(long)]
    fields: String,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ZooCommand {
    /// List the zoo with known characteristic sets.
    List,
    /// Print a network, or one of its codes with `--code`.
    Emit {
        mnemonic: String,
        #[arg(long)]
        code: Option<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Serialize)]
struct RecipeArgs {
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long)]
    field: String,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Args, Serialize)]
struct ReproArgs {
    #[arg(long)]
    jobs: Option<usize>,
}

/// What a command reports back for the manifest.
struct Outcome {
    summary: String,
    code: u8,
}

impl Outcome {
    fn new(summary: impl Into<String>, code: u8) -> Self {
        Outcome { summary: summary.into(), code }
    }
}

fn domain(text: &str) -> Result<Domain> {
    text.parse::<Domain>().with_context(|| format!("domain `{text}`"))
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn validate(net: &str, inputs: &mut Vec<InputDigest>) -> Result<Outcome> {
    let loaded = load_net(net)?;
    inputs.push(loaded.digest);
    let violations = loaded.net.validate();
    if violations.is_empty() {
        println!("ok: {} ({} nodes, {} edges)", loaded.net.name(), loaded.net.nodes().len(), loaded.net.edges().len());
        return Ok(Outcome::new("valid", PASS));
    }
    for v in &violations {
        println!("{v}");
    }
    let names: Vec<&str> = violations.iter().map(|v| v.name()).collect();
    Ok(Outcome::new(format!("invalid: {}", names.join(",")), FAIL))
}

fn verify(a: &VerifyArgs, inputs: &mut Vec<InputDigest>) -> Result<Outcome> {
    let loaded = load_net(&a.net)?;
    let field = a.field.as_deref().map(domain).transpose()?;
    let (code, digest) = load_code(&a.code, &loaded, field.as_ref(), a.dim)?;
    inputs.push(loaded.digest.clone());
    inputs.push(digest);
    let net = &loaded.net;
    let report = verify_solution(net, &code)?;
    let dp = if a.polymatroid {
        Some(if code.domain().is_field() {
            let (fam, map) = induce_from_code(net, &code)?;
            match check_dp_map(net, code.dim(), &fam, &map)? {
                Ok(()) => "ok".to_string(),
                Err(v) => v.to_string(),
            }
        } else {
            "skipped: polymatroids need a field".to_string()
        })
    } else {
        None
    };
    let dp_ok = dp.as_deref().map_or(true, |s| s == "ok" || s.starts_with("skipped"));
    let pass = report.pass && dp_ok;
    if a.json {
        let terminals: Vec<_> = report
            .terminals
            .iter()
            .map(|t| json!({"terminal": t.terminal, "demands": t.demands, "pass": t.pass, "failed_sources": t.failed_sources}))
            .collect();
        let out = json!({
            "net": net.name(),
            "domain": code.domain().to_string(),
            "dim": code.dim(),
            "terminals": terminals,
            "pass": report.pass,
            "polymatroid": dp,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{} over {}, d={}", net.name(), code.domain(), code.dim());
        println!("{:<12} {:<20} {:<6} failed", "terminal", "demands", "result");
        for t in &report.terminals {
            let verdict = if t.pass { "ok" } else { "FAIL" };
            println!("{:<12} {:<20} {:<6} {}", t.terminal, t.demands.join(","), verdict, t.failed_sources.join(","));
        }
        if let Some(dp) = &dp {
            println!("polymatroid D1-D4: {dp}");
        }
        if report.pass {
            println!("PASS");
        } else {
            println!("FAIL at {}", report.failed_terminals().join(", "));
        }
    }
    let summary = if pass { "PASS".to_string() } else { format!("FAIL at {}", report.failed_terminals().join(",")) };
    Ok(Outcome::new(summary, if pass { PASS } else { FAIL }))
}

fn config(a: &SearchArgs, field: &Domain) -> Result<SearchConfig> {
    let mut cfg = SearchConfig::new(field, a.dim).normalized(a.normalize);
    for p in &a.pin {
        cfg = cfg.pin(Pin::parse(p, field)?);
    }
    if let Some(j) = a.jobs {
        cfg = cfg.jobs(j);
    }
    if let Some(b) = a.budget {
        if !(b.is_finite() && b >= 0.0) {
            bail!("--budget must be a non-negative number of seconds");
        }
        cfg = cfg.budget(Duration::from_secs_f64(b));
    }
    if let Some(n) = a.max_assignments {
        cfg = cfg.max_assignments(n);
    }
    if let Some(c) = a.ceiling {
        cfg = cfg.ceiling(c);
    }
    if a.progress {
        cfg = cfg.progress(Arc::new(|s: &SearchStats| eprintln!("progress {s}")));
    }
    Ok(cfg)
}

fn emit_witness(a: &SearchArgs, code: &VlncCode) -> Result<()> {
    if let Some(p) = &a.emit_code {
        fs::write(p, code.to_text()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn status_code(status: &SearchStatus) -> u8 {
    match status {
        SearchStatus::Solvable(_) => PASS,
        SearchStatus::Unsolvable => FAIL,
        SearchStatus::Inconclusive(_) => INCONCLUSIVE,
    }
}

fn status_json(out: &SearchOutcome) -> serde_json::Value {
    let (code, reason) = match &out.status {
        SearchStatus::Solvable(c) => (Some(c.to_text()), None),
        SearchStatus::Inconclusive(r) => (None, Some(r.clone())),
        SearchStatus::Unsolvable => (None, None),
    };
    json!({"status": out.status.label(), "reason": reason, "code": code, "stats": out.stats.to_json()})
}

fn print_status(out: &SearchOutcome) {
    match &out.status {
        SearchStatus::Inconclusive(r) => println!("INCONCLUSIVE: {r}"),
        s => println!("{}", s.label()),
    }
    println!("{}", out.stats);
    if let SearchStatus::Solvable(c) = &out.status {
        print!("{}", c.to_text());
    }
}

fn cmd_solve(a: &SolveArgs, inputs: &mut Vec<InputDigest>) -> Result<Outcome> {
    let loaded = load_net(&a.search.net)?;
    inputs.push(loaded.digest.clone());
    let field = domain(&a.field)?;
    let out = solve(&loaded.net, &config(&a.search, &field)?)?;
    if let SearchStatus::Solvable(c) = &out.status {
        emit_witness(&a.search, c)?;
    }
    if a.search.json {
        println!("{}", serde_json::to_string_pretty(&status_json(&out))?);
    } else {
        print_status(&out);
    }
    Ok(Outcome::new(out.status.label(), status_code(&out.status)))
}

fn cmd_census(a: &CensusArgs, inputs: &mut Vec<InputDigest>) -> Result<Outcome> {
    let loaded = load_net(&a.search.net)?;
    inputs.push(loaded.digest.clone());
    let field = domain(&a.field)?;
    let predicate = Predicate::parse(&a.predicate)?;
    let out = census(&loaded.net, &config(&a.search, &field)?, &predicate)?;
    let code = match &out.verdict {
        CensusVerdict::AllSatisfy { .. } => PASS,
        CensusVerdict::Counterexample(c) => {
            emit_witness(&a.search, c)?;
            FAIL
        }
        CensusVerdict::Inconclusive(_) => INCONCLUSIVE,
    };
    if a.search.json {
        let (vacuous, witness, reason) = match &out.verdict {
            CensusVerdict::AllSatisfy { vacuous } => (Some(*vacuous), None, None),
            CensusVerdict::Counterexample(c) => (None, Some(c.to_text()), None),
            CensusVerdict::Inconclusive(r) => (None, None, Some(r.clone())),
        };
        let j = json!({
            "verdict": out.verdict.label(),
            "vacuous": vacuous,
            "counterexample": witness,
            "reason": reason,
            "stats": out.stats.to_json(),
        });
        println!("{}", serde_json::to_string_pretty(&j)?);
    } else {
        match &out.verdict {
            CensusVerdict::AllSatisfy { vacuous: true } => println!("ALL-SATISFY (vacuous: no solutions)"),
            CensusVerdict::Inconclusive(r) => println!("INCONCLUSIVE: {r}"),
            v => println!("{}", v.label()),
        }
        println!("{}", out.stats);
        if let CensusVerdict::Counterexample(c) = &out.verdict {
            print!("{}", c.to_text());
        }
    }
    Ok(Outcome::new(out.verdict.label(), code))
}

fn cmd_probe(a: &ProbeArgs, inputs: &mut Vec<InputDigest>) -> Result<Outcome> {
    let loaded = load_net(&a.search.net)?;
    inputs.push(loaded.digest.clone());
    let fields = parse_fields(&a.fields)?;
    if fields.is_empty() {
        bail!("--fields is empty");
    }
    let mut rows = Vec::new();
    for f in &fields {
        // One oversized field does not hide the others.
        let out = match solve(&loaded.net, &config(&a.search, f)?) {
            Err(e @ SolveError::SpaceTooLarge { .. }) => SearchOutcome {
                status: SearchStatus::Inconclusive(e.to_string()),
                stats: SearchStats::default(),
            },
            r => r?,
        };
        rows.push((f.clone(), out));
    }
    let claim = loaded.entry.map(|e| e.claim(a.search.dim));
    if a.search.json {
        let j: Vec<_> = rows
            .iter()
            .map(|(f, out)| {
                let mut v = status_json(out);
                v["domain"] = json!(f.to_string());
                v
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"net": loaded.net.name(), "results": j}))?);
    } else {
        if let Some(c) = claim {
            println!("{}: known characteristic set at d={}: {c}", loaded.net.name(), a.search.dim);
        }
        for (f, out) in &rows {
            let agrees = match (claim.and_then(|c| c.contains(f.characteristic())), &out.status) {
                (Some(false), SearchStatus::Solvable(_)) | (Some(true), SearchStatus::Unsolvable) => "  (disagrees)",
                _ => "",
            };
            match &out.status {
                SearchStatus::Inconclusive(r) => println!("{f}: INCONCLUSIVE: {r}"),
                s => println!("{f}: {}{agrees}  [{}]", s.label(), out.stats),
            }
        }
    }
    let summary: Vec<String> = rows.iter().map(|(f, o)| format!("{f}:{}", o.status.label())).collect();
    let code = if rows.iter().any(|(_, o)| matches!(o.status, SearchStatus::Inconclusive(_))) { INCONCLUSIVE } else { PASS };
    Ok(Outcome::new(summary.join(" "), code))
}

fn cmd_zoo(z: &ZooCommand, inputs: &mut Vec<InputDigest>) -> Result<Outcome> {
    match z {
        ZooCommand::List => {
            println!("{:<10} {:<24} {:<22} {:<22} description", "name", "codes", "d=1", "d=2");
            for e in zoo::catalog() {
                println!(
                    "{:<10} {:<24} {:<22} {:<22} {}",
                    e.mnemonic(),
                    e.code_names().join(","),
                    e.claim(1).to_string(),
                    e.claim(2).to_string(),
                    e.description()
                );
            }
            println!("parameters: char-m:<m>, char-qs:<q>, n1:<q>, n2:<q> for any q >= 2");
            Ok(Outcome::new("listed", PASS))
        }
        ZooCommand::Emit { mnemonic, code, field, dim, out } => {
            let entry = ZooEntry::parse(mnemonic)?;
            let text = match code {
                None => entry.network().to_text(),
                Some(name) => {
                    let loaded = load_net(&entry.mnemonic())?;
                    let field = field.as_deref().map(domain).transpose()?;
                    let (code, digest) = load_code(&format!("zoo:{name}"), &loaded, field.as_ref(), *dim)?;
                    inputs.push(digest);
                    code.to_text()
                }
            };
            write_out(out.as_ref(), &text)?;
            Ok(Outcome::new("emitted", PASS))
        }
    }
}

fn cmd_recipe(a: &RecipeArgs) -> Result<Outcome> {
    let field = domain(&a.field)?;
    let mut cfg = SearchConfig::new(&field, a.dim).normalized(true);
    if let Some(j) = a.jobs {
        cfg = cfg.jobs(j);
    }
    if let Some(b) = a.budget {
        cfg = cfg.budget(Duration::from_secs_f64(b.max(0.0)));
    }
    let report = n1_recipe(a.q, &cfg)?;
    println!("conditional argument for n1:{} over {field}, d={}", a.q, a.dim);
    println!("step 1: census on char-q-y, every solution has a zero y-block on e1: {}", report.census.verdict.label());
    println!("        {}", report.census.stats);
    println!("step 2: M-network with an a-only path into t4: {}", report.pinned.status.label());
    println!("        {}", report.pinned.stats);
    let (summary, code) = match &report.conclusion {
        RecipeConclusion::ConditionallyUnsolvable => ("CONDITIONALLY-UNSOLVABLE".to_string(), FAIL),
        RecipeConclusion::NotApplicable(why) => (format!("NOT-APPLICABLE: {why}"), INCONCLUSIVE),
        RecipeConclusion::Inconclusive(why) => (format!("INCONCLUSIVE: {why}"), INCONCLUSIVE),
    };
    println!("{summary}");
    if code == FAIL {
        println!("(no solution, provided every solution of n1 restricts to solutions of both parts)");
    }
    Ok(Outcome::new(summary, code))
}

fn cmd_repro(a: &ReproArgs) -> Result<Outcome> {
    let mut cfg = SearchConfig::new(&Domain::prime_field(2)?, 1).normalized(true);
    if let Some(j) = a.jobs {
        cfg = cfg.jobs(j);
    }
    let rows = repro::run(&cfg);
    for (i, r) in rows.iter().enumerate() {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("{:>2} {verdict} {:<34} {:>8.2}s  {}", i + 1, r.claim, r.seconds, r.detail);
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    println!("{passed} of {} claims reproduced", rows.len());
    let code = if passed == rows.len() { PASS } else { FAIL };
    Ok(Outcome::new(format!("{passed}/{}", rows.len()), code))
}

fn dispatch(cmd: &Command, inputs: &mut Vec<InputDigest>) -> Result<Outcome> {
    match cmd {
        Command::Validate { net } => validate(net, inputs),
        Command::Verify(a) => verify(a, inputs),
        Command::Solve(a) => cmd_solve(a, inputs),
        Command::Census(a) => cmd_census(a, inputs),
        Command::Probe(a) => cmd_probe(a, inputs),
        Command::Zoo(z) => cmd_zoo(z, inputs),
        Command::Recipe(a) => cmd_recipe(a),
        Command::Repro(a) => cmd_repro(a),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Verify(_) => "verify",
        Command::Solve(_) => "solve",
        Command::Census(_) => "census",
        Command::Probe(_) => "probe",
        Command::Zoo(ZooCommand::List) => "zoo list",
        Command::Zoo(ZooCommand::Emit { .. }) => "zoo emit",
        Command::Recipe(_) => "recipe",
        Command::Repro(_) => "repro",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let params = serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null);
    let mut manifest = RunManifest::new(command_name(&cli.command), params);
    let mut inputs = Vec::new();
    let (summary, code) = match dispatch(&cli.command, &mut inputs) {
        Ok(o) => (o.summary, o.code),
        Err(e) => {
            eprintln!("error: {e:#}");
            // An oversized search space is a limit, not a bad input.
            let limit = matches!(e.downcast_ref::<SolveError>(), Some(SolveError::SpaceTooLarge { .. }));
            (format!("error: {e}"), if limit { INCONCLUSIVE } else { INPUT_ERROR })
        }
    };
    manifest.inputs = inputs;
    manifest.finish(summary, code, start.elapsed());
    if let Err(e) = manifest.emit(cli.manifest.as_deref()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(INPUT_ERROR);
    }
    ExitCode::from(code)
}
