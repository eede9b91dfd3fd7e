//! Exhaustive search for vector linear solutions over a finite field.
//!
//! The search works on row spaces: what an edge carries matters only up to
//! an invertible change of basis, so each edge takes a subspace (dimension
//! at most d) of the span of its tail's inputs. With `normalize` set, only
//! subspaces of the largest possible dimension are tried: enlarging an
//! edge's space never breaks decodability downstream, never turns a nonzero
//! source block into a zero one, and zero-block pins are enforced by
//! shrinking the attainable space first, so the reduced search decides the
//! same solvability and block-zero questions as the full one. Every
//! `Solvable` witness is an explicit code that has passed `verify_solution`.
//!
//! Disconnected networks are split into components and searched one by one.

mod search;
mod space;

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::algebra::{AlgebraError, Domain, Matrix};
use crate::netmodel::{NetError, Network, NodeKind};
use crate::vlnc::{selector, verify_solution, CodingPair, GlobalCoding, VlncCode, VlncError};
use crate::zoo;

use search::{build_code, Ctx, EdgeRule, Goal, Leaf, Shared, WorkResult, Worker};

/// Default bound on the number of enumerable assignments per search space.
pub const DEFAULT_CEILING: f64 = 4_294_967_296.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("search space of about {size:.3e} assignments exceeds the ceiling {ceiling:.3e}")]
    SpaceTooLarge { size: f64, ceiling: f64 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Vlnc(#[from] VlncError),
}

/// Periodic statistics callback.
pub type ProgressSink = Arc<dyn Fn(&SearchStats) + Send + Sync>;

/// Census predicate evaluated on a solution.
pub type SolutionCheck = Arc<dyn Fn(&VlncCode, &GlobalCoding) -> bool + Send + Sync>;

#[derive(Debug, Clone, PartialEq)]
pub enum PinValue {
    Matrix(Matrix),
    Zero,
    Nonzero,
}

/// Constraint on a solution.
#[derive(Debug, Clone, PartialEq)]
pub enum Pin {
    /// Local matrix of a source-to-edge pair.
    Local { pair: CodingPair, value: PinValue },
    /// Block of `source` in the global coding matrix of `edge`
    /// (`Zero` or `Nonzero`).
    Block { edge: String, source: String, value: PinValue },
}

impl Pin {
    /// `src s e=<matrix>|zero|nonzero` or `s,e=zero|nonzero`.
    pub fn parse(text: &str, domain: &Domain) -> Result<Pin, SolveError> {
        let bad = |m: &str| SolveError::InvalidConfig(format!("pin `{text}`: {m}"));
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| bad("expected `<pair>=<value>`"))?;
        let value = match rhs.trim() {
            "zero" => PinValue::Zero,
            "nonzero" => PinValue::Nonzero,
            lit => PinValue::Matrix(Matrix::parse(domain, lit)?),
        };
        let lhs = lhs.trim();
        if let Some((s, e)) = lhs.split_once(',') {
            return Ok(Pin::Block {
                edge: e.trim().into(),
                source: s.trim().into(),
                value,
            });
        }
        let words: Vec<&str> = lhs.split_whitespace().collect();
        match words.as_slice() {
            ["src", s, e] => Ok(Pin::Local {
                pair: CodingPair::src(s, e),
                value,
            }),
            _ => Err(bad("pair must be `src <source> <edge>` or `<source>,<edge>`")),
        }
    }
}

#[derive(Clone)]
pub struct SearchConfig {
    pub domain: Domain,
    pub dim: usize,
    pub pins: Vec<Pin>,
    /// Try only maximal row spaces.
    pub normalize: bool,
    pub max_assignments: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Largest accepted search-space bound.
    pub ceiling: f64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub progress: Option<ProgressSink>,
    pub progress_every: Duration,
}

impl fmt::Debug for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchConfig")
            .field("domain", &self.domain.to_string())
            .field("dim", &self.dim)
            .field("pins", &self.pins)
            .field("normalize", &self.normalize)
            .field("max_assignments", &self.max_assignments)
            .field("time_budget", &self.time_budget)
            .field("ceiling", &self.ceiling)
            .field("jobs", &self.jobs)
            .finish()
    }
}

impl SearchConfig {
    pub fn new(domain: &Domain, dim: usize) -> Self {
        SearchConfig {
            domain: domain.clone(),
            dim,
            pins: Vec::new(),
            normalize: false,
            max_assignments: None,
            time_budget: None,
            ceiling: DEFAULT_CEILING,
            jobs: None,
            progress: None,
            progress_every: Duration::from_secs(1),
        }
    }

    pub fn normalized(mut self, on: bool) -> Self {
        self.normalize = on;
        self
    }

    pub fn pin(mut self, pin: Pin) -> Self {
        self.pins.push(pin);
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }

    pub fn budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn max_assignments(mut self, n: u64) -> Self {
        self.max_assignments = Some(n);
        self
    }

    pub fn ceiling(mut self, c: f64) -> Self {
        self.ceiling = c;
        self
    }

    pub fn progress(mut self, sink: ProgressSink) -> Self {
        self.progress = Some(sink);
        self
    }

    pub fn with_domain(&self, domain: &Domain) -> Self {
        let mut c = self.clone();
        c.domain = domain.clone();
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SearchStats {
    /// Interior row-space assignments tried.
    pub assignments: u64,
    /// Assignments rejected by a terminal check.
    pub prunes: u64,
    /// Returns that skipped at least one level.
    pub backjumps: u64,
    /// Complete assignments reached.
    pub solutions: u64,
    /// Upper bound on the interior search space.
    pub space: f64,
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.assignments += o.assignments;
        self.prunes += o.prunes;
        self.backjumps += o.backjumps;
        self.solutions += o.solutions;
        self.space += o.space;
        self.elapsed += o.elapsed;
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "assignments": self.assignments,
            "prunes": self.prunes,
            "backjumps": self.backjumps,
            "solutions": self.solutions,
            "space": self.space,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "assignments={} prunes={} backjumps={} solutions={} space={:.3e} elapsed={:.3}s",
            self.assignments,
            self.prunes,
            self.backjumps,
            self.solutions,
            self.space,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchStatus {
    Solvable(VlncCode),
    Unsolvable,
    /// A limit stopped the search; the reason is attached.
    Inconclusive(String),
}

impl SearchStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SearchStatus::Solvable(_) => "SOLVABLE",
            SearchStatus::Unsolvable => "UNSOLVABLE",
            SearchStatus::Inconclusive(_) => "INCONCLUSIVE",
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self, SearchStatus::Solvable(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub stats: SearchStats,
}

/// Census question: does every solution satisfy the predicate?
#[derive(Clone)]
pub enum Predicate {
    True,
    /// Block of `source` in the global matrix of `edge` is zero.
    BlockZero { edge: String, source: String },
    BlockNonzero { edge: String, source: String },
    /// Arbitrary check, evaluated on every enumerated solution.
    Custom(SolutionCheck),
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::True => write!(f, "true"),
            Predicate::BlockZero { edge, source } => write!(f, "zero({source},{edge})"),
            Predicate::BlockNonzero { edge, source } => write!(f, "nonzero({source},{edge})"),
            Predicate::Custom(_) => write!(f, "custom"),
        }
    }
}

impl Predicate {
    /// `true`, `zero(s,e)` or `nonzero(s,e)`.
    pub fn parse(text: &str) -> Result<Predicate, SolveError> {
        let t = text.trim();
        if t == "true" {
            return Ok(Predicate::True);
        }
        let parse_args = |inner: &str| -> Option<(String, String)> {
            let inner = inner.strip_suffix(')')?;
            let (s, e) = inner.split_once(',')?;
            Some((s.trim().to_string(), e.trim().to_string()))
        };
        if let Some((source, edge)) = t.strip_prefix("zero(").and_then(parse_args) {
            return Ok(Predicate::BlockZero { edge, source });
        }
        if let Some((source, edge)) = t.strip_prefix("nonzero(").and_then(parse_args) {
            return Ok(Predicate::BlockNonzero { edge, source });
        }
        Err(SolveError::InvalidConfig(format!(
            "predicate `{text}`: expected `true`, `zero(<source>,<edge>)` or `nonzero(<source>,<edge>)`"
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CensusVerdict {
    /// Every solution satisfies the predicate; `vacuous` when there is none.
    AllSatisfy { vacuous: bool },
    Counterexample(VlncCode),
    Inconclusive(String),
}

impl CensusVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CensusVerdict::AllSatisfy { .. } => "ALL-SATISFY",
            CensusVerdict::Counterexample(_) => "COUNTEREXAMPLE",
            CensusVerdict::Inconclusive(_) => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusOutcome {
    pub verdict: CensusVerdict,
    pub stats: SearchStats,
}

/// Weakly connected components, each with nodes and edges in declaration
/// order. A terminal and the sources it demands count as linked. Components
/// are ordered by their first node.
pub fn components(net: &Network) -> Vec<Network> {
    split(net, &[])
}

/// Components with extra (node, node) links on top of edges and demands.
fn split(net: &Network, links: &[(String, String)]) -> Vec<Network> {
    let nodes = net.nodes();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let demand_links = net
        .demands()
        .iter()
        .flat_map(|(t, d)| d.iter().map(move |s| (t.as_str(), s.as_str())));
    let all_links = net
        .edges()
        .iter()
        .map(|e| (e.tail.as_str(), e.head.as_str()))
        .chain(demand_links)
        .chain(links.iter().map(|(a, b)| (a.as_str(), b.as_str())));
    for (x, y) in all_links {
        if let (Some(a), Some(b)) = (net.node_idx(x), net.node_idx(y)) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..nodes.len()).map(|i| find(&mut parent, i)).collect();
    let mut order: Vec<usize> = roots.clone();
    order.sort();
    order.dedup();
    if order.len() <= 1 {
        return vec![net.clone()];
    }
    order
        .iter()
        .enumerate()
        .map(|(ci, &r)| {
            let mut sub = Network::new(format!("{}#{}", net.name(), ci + 1));
            for (_, node) in nodes.iter().enumerate().filter(|(i, _)| roots[*i] == r) {
                sub.add_node(node.id.clone(), node.kind).expect("ids unique in parent");
            }
            for e in net.edges() {
                if sub.node(&e.tail).is_some() {
                    sub.add_edge(e.id.clone(), e.tail.clone(), e.head.clone())
                        .expect("ids unique in parent");
                }
            }
            for (t, d) in net.demands() {
                if sub.node(t).is_some() {
                    sub.set_demand(t.clone(), d.iter().cloned());
                }
            }
            sub
        })
        .collect()
}

/// Translate pins into per-edge rules for `net`; pins naming edges outside
/// `net` are skipped and reported back as unused.
fn rules_for(net: &Network, cfg: &SearchConfig, used: &mut [bool]) -> Result<Vec<EdgeRule>, SolveError> {
    let d = cfg.dim;
    let sources = net.sources();
    let n_src = sources.len();
    let mut rules = vec![EdgeRule::default(); net.edges().len()];
    let src_pos = |s: &str| -> Result<usize, SolveError> {
        sources
            .iter()
            .position(|x| *x == s)
            .ok_or_else(|| SolveError::InvalidConfig(format!("`{s}` is not a source of the edge's component")))
    };
    for (i, pin) in cfg.pins.iter().enumerate() {
        match pin {
            Pin::Local { pair, value } => {
                let CodingPair::Src { source, edge } = pair else {
                    return Err(SolveError::InvalidConfig(format!(
                        "only source-to-edge locals can be pinned (got `{pair}`); pin a global block instead"
                    )));
                };
                let Some(ei) = net.edge_idx(edge) else { continue };
                used[i] = true;
                if net.edges()[ei].tail != *source {
                    return Err(SolveError::InvalidConfig(format!("`{source}` is not the tail of `{edge}`")));
                }
                let p = src_pos(source)?;
                match value {
                    PinValue::Matrix(m) => {
                        if m.shape() != (d, d) || m.domain() != &cfg.domain {
                            return Err(SolveError::InvalidConfig(format!(
                                "pinned local for `{pair}` must be {d}x{d} over {}",
                                cfg.domain
                            )));
                        }
                        rules[ei].fixed = Some(m.mul(&selector(&cfg.domain, d, n_src, p))?);
                    }
                    PinValue::Zero => rules[ei].fixed = Some(Matrix::zeros(&cfg.domain, d, n_src * d)),
                    PinValue::Nonzero => rules[ei].nonzero.push(p),
                }
            }
            Pin::Block { edge, source, value } => {
                let Some(ei) = net.edge_idx(edge) else { continue };
                used[i] = true;
                let p = src_pos(source)?;
                match value {
                    PinValue::Zero => rules[ei].zero.push(p),
                    PinValue::Nonzero => rules[ei].nonzero.push(p),
                    PinValue::Matrix(_) => {
                        return Err(SolveError::InvalidConfig(
                            "global blocks can only be pinned to zero or nonzero".into(),
                        ))
                    }
                }
            }
        }
    }
    Ok(rules)
}

fn check_config(net: &Network, cfg: &SearchConfig) -> Result<(), SolveError> {
    cfg.domain.require_field()?;
    if cfg.dim == 0 {
        return Err(SolveError::InvalidConfig("dimension must be positive".into()));
    }
    net.ensure_valid()?;
    Ok(())
}

enum Found {
    Leaf(Leaf),
    Exhausted,
    Stopped,
}

/// Run one search over `ctx`, splitting the first levels across workers.
fn run(ctx: &Ctx, goal: &Goal, cfg: &SearchConfig, space: f64) -> (Found, SearchStats) {
    let deadline = cfg.time_budget.map(|b| Instant::now() + b);
    let shared = Shared::new(
        cfg.max_assignments,
        deadline,
        cfg.progress.clone().map(|s| (s, cfg.progress_every)),
    );
    let body = || -> Found {
        let mut root = Worker::new(ctx, &shared, goal, 0, space);
        if !root.root_ok() {
            return Found::Exhausted;
        }
        let jobs = cfg.jobs.unwrap_or_else(rayon::current_num_threads).max(1);
        let target = if jobs == 1 { 1 } else { jobs * 8 };
        let mut prefixes: Vec<Vec<space::Sub>> = vec![Vec::new()];
        while prefixes.len() < target && prefixes[0].len() < ctx.num_vars() {
            let mut next = Vec::new();
            for p in &prefixes {
                let mut w = Worker::new(ctx, &shared, goal, 0, space);
                if !w.load_prefix(p) {
                    continue;
                }
                for u in w.extend_prefix(p) {
                    let mut q = p.clone();
                    q.push(u);
                    next.push(q);
                }
            }
            prefixes = next;
            if prefixes.is_empty() {
                return Found::Exhausted;
            }
        }
        let results: Vec<(usize, WorkResult)> = prefixes
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let mut w = Worker::new(ctx, &shared, goal, i, space);
                if !w.load_prefix(p) {
                    return (i, WorkResult::Exhausted);
                }
                let (res, _) = w.run(p.len());
                if matches!(res, WorkResult::Found(_)) {
                    shared.best.fetch_min(i, std::sync::atomic::Ordering::Relaxed);
                }
                (i, res)
            })
            .collect();
        let mut stopped = false;
        for (_, r) in results {
            match r {
                WorkResult::Found(leaf) => return Found::Leaf(leaf),
                WorkResult::Aborted => stopped = true,
                WorkResult::Exhausted => {}
            }
        }
        if stopped {
            Found::Stopped
        } else {
            Found::Exhausted
        }
    };
    let found = match cfg.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(body),
            Err(_) => body(),
        },
        None => body(),
    };
    (found, shared.snapshot(space))
}

fn guard(ctx: &Ctx, cfg: &SearchConfig) -> Result<f64, SolveError> {
    let (p1, p2) = ctx.space_bounds();
    let size = p1.max(p2);
    if size > cfg.ceiling {
        return Err(SolveError::SpaceTooLarge {
            size,
            ceiling: cfg.ceiling,
        });
    }
    Ok(p1)
}

fn limit_reason(cfg: &SearchConfig) -> String {
    match (cfg.max_assignments, cfg.time_budget) {
        (Some(m), Some(b)) => format!("stopped by limits (max {m} assignments, {:.1}s budget)", b.as_secs_f64()),
        (Some(m), None) => format!("stopped after {m} assignments"),
        (None, Some(b)) => format!("time budget of {:.1}s exhausted", b.as_secs_f64()),
        (None, None) => "stopped".into(),
    }
}

fn merge_into(target: &mut VlncCode, part: &VlncCode) -> Result<(), SolveError> {
    for (pair, m) in part.locals() {
        target.set(pair.clone(), m.clone())?;
    }
    Ok(())
}

/// Decide whether `net` has a `cfg.dim`-dimensional solution over
/// `cfg.domain` satisfying the pins.
pub fn solve(net: &Network, cfg: &SearchConfig) -> Result<SearchOutcome, SolveError> {
    check_config(net, cfg)?;
    let mut used = vec![false; cfg.pins.len()];
    let mut stats = SearchStats::default();
    let mut witness = VlncCode::new(format!("{}-witness", net.name()), &cfg.domain, cfg.dim);
    let mut inconclusive = None;
    // A block pin ties its source to the edge even without a path.
    let pin_links: Vec<(String, String)> = cfg
        .pins
        .iter()
        .filter_map(|p| match p {
            Pin::Block { edge, source, .. } => net.edge(edge).map(|e| (e.tail.clone(), source.clone())),
            Pin::Local { .. } => None,
        })
        .collect();
    let comps = split(net, &pin_links);
    // Guard every component before searching any.
    let mut plans = Vec::new();
    for comp in &comps {
        let rules = rules_for(comp, cfg, &mut used)?;
        plans.push(rules);
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(SolveError::InvalidConfig(format!("pin {:?} names an unknown edge", cfg.pins[i])));
    }
    let ctxs: Vec<Ctx> = comps
        .iter()
        .zip(plans)
        .map(|(comp, rules)| Ctx::new(comp, &cfg.domain, cfg.dim, cfg.normalize, rules))
        .collect::<Result<_, _>>()?;
    let spaces: Vec<f64> = ctxs.iter().map(|c| guard(c, cfg)).collect::<Result<_, _>>()?;
    for (ctx, space) in ctxs.iter().zip(spaces) {
        let (found, st) = run(ctx, &Goal::First, cfg, space);
        stats.absorb(&st);
        match found {
            Found::Leaf(leaf) => {
                let code = build_code(ctx, &leaf)?;
                merge_into(&mut witness, &code)?;
            }
            Found::Exhausted => {
                return Ok(SearchOutcome {
                    status: SearchStatus::Unsolvable,
                    stats,
                })
            }
            Found::Stopped => inconclusive = Some(limit_reason(cfg)),
        }
    }
    if let Some(r) = inconclusive {
        return Ok(SearchOutcome {
            status: SearchStatus::Inconclusive(r),
            stats,
        });
    }
    let report = verify_solution(net, &witness)?;
    if !report.pass {
        return Err(SolveError::Internal(format!(
            "witness fails at {:?}",
            report.failed_terminals()
        )));
    }
    Ok(SearchOutcome {
        status: SearchStatus::Solvable(witness),
        stats,
    })
}

/// Decide whether every solution satisfies `predicate`. Block predicates
/// are decided by searching for a solution with the opposite pin; custom
/// predicates are evaluated on every enumerated solution (with `normalize`,
/// on every canonical representative).
pub fn census(net: &Network, cfg: &SearchConfig, predicate: &Predicate) -> Result<CensusOutcome, SolveError> {
    check_config(net, cfg)?;
    let opposite = match predicate {
        Predicate::Custom(check) => return census_enumerate(net, cfg, check.clone()),
        Predicate::True => None,
        Predicate::BlockZero { edge, source } => Some(Pin::Block {
            edge: edge.clone(),
            source: source.clone(),
            value: PinValue::Nonzero,
        }),
        Predicate::BlockNonzero { edge, source } => Some(Pin::Block {
            edge: edge.clone(),
            source: source.clone(),
            value: PinValue::Zero,
        }),
    };
    if let Some(Pin::Block { edge, source, .. }) = &opposite {
        if net.edge(edge).is_none() || net.kind_of(source) != Some(NodeKind::Source) {
            return Err(SolveError::InvalidConfig(format!(
                "predicate refers to unknown edge `{edge}` or source `{source}`"
            )));
        }
    }
    let base = solve(net, cfg)?;
    let mut stats = base.stats;
    match base.status {
        SearchStatus::Unsolvable => {
            return Ok(CensusOutcome {
                verdict: CensusVerdict::AllSatisfy { vacuous: true },
                stats,
            })
        }
        SearchStatus::Inconclusive(r) => {
            return Ok(CensusOutcome {
                verdict: CensusVerdict::Inconclusive(r),
                stats,
            })
        }
        SearchStatus::Solvable(_) => {}
    }
    let Some(pin) = opposite else {
        return Ok(CensusOutcome {
            verdict: CensusVerdict::AllSatisfy { vacuous: false },
            stats,
        });
    };
    let alt = solve(net, &cfg.clone().pin(pin))?;
    stats.absorb(&alt.stats);
    let verdict = match alt.status {
        SearchStatus::Solvable(code) => CensusVerdict::Counterexample(code),
        SearchStatus::Unsolvable => CensusVerdict::AllSatisfy { vacuous: false },
        SearchStatus::Inconclusive(r) => CensusVerdict::Inconclusive(r),
    };
    Ok(CensusOutcome { verdict, stats })
}

fn census_enumerate(net: &Network, cfg: &SearchConfig, check: SolutionCheck) -> Result<CensusOutcome, SolveError> {
    let mut used = vec![false; cfg.pins.len()];
    let rules = rules_for(net, cfg, &mut used)?;
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(SolveError::InvalidConfig(format!("pin {:?} names an unknown edge", cfg.pins[i])));
    }
    let ctx = Ctx::new(net, &cfg.domain, cfg.dim, cfg.normalize, rules)?;
    let space = guard(&ctx, cfg)?;
    let check_ref: &search::LeafCheck = &*check;
    let (found, stats) = run(&ctx, &Goal::Census(check_ref), cfg, space);
    let verdict = match found {
        Found::Leaf(leaf) => CensusVerdict::Counterexample(build_code(&ctx, &leaf)?),
        Found::Exhausted => CensusVerdict::AllSatisfy {
            vacuous: stats.solutions == 0,
        },
        Found::Stopped => CensusVerdict::Inconclusive(limit_reason(cfg)),
    };
    Ok(CensusOutcome { verdict, stats })
}

/// Number of solutions visited by the search (canonical representatives
/// when normalizing).
pub fn count_solutions(net: &Network, cfg: &SearchConfig) -> Result<SearchStats, SolveError> {
    check_config(net, cfg)?;
    let mut used = vec![false; cfg.pins.len()];
    let rules = rules_for(net, cfg, &mut used)?;
    let ctx = Ctx::new(net, &cfg.domain, cfg.dim, cfg.normalize, rules)?;
    let space = guard(&ctx, cfg)?;
    let (_, stats) = run(&ctx, &Goal::Count, cfg, space);
    Ok(stats)
}

/// One row of a characteristic probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeEntry {
    pub domain: Domain,
    pub result: Result<SearchOutcome, SolveError>,
}

impl ProbeEntry {
    pub fn label(&self) -> &'static str {
        match &self.result {
            Ok(o) => o.status.label(),
            Err(_) => "ERROR",
        }
    }

    pub fn is_solvable(&self) -> Option<bool> {
        match &self.result {
            Ok(SearchOutcome {
                status: SearchStatus::Solvable(_),
                ..
            }) => Some(true),
            Ok(SearchOutcome {
                status: SearchStatus::Unsolvable,
                ..
            }) => Some(false),
            _ => None,
        }
    }
}

/// Solve independently over each field; per-field errors are recorded.
pub fn probe_characteristics(net: &Network, cfg: &SearchConfig, fields: &[Domain]) -> Vec<ProbeEntry> {
    fields
        .iter()
        .map(|f| ProbeEntry {
            domain: f.clone(),
            result: solve(net, &cfg.with_domain(f)),
        })
        .collect()
}

/// The M-network with an extra path a -> h -> t4: terminal t4 additionally
/// receives a function of `a` alone.
pub fn m2_with_a_path() -> Network {
    let mut net = zoo::build_m2();
    net.set_name("m2+a-path");
    net.add_node("h", NodeKind::Inner).expect("fresh id");
    net.connect("a", "h").expect("fresh id");
    net.connect("h", "t4").expect("fresh id");
    net
}

#[derive(Debug, Clone, PartialEq)]
pub enum RecipeConclusion {
    /// Both steps came out as required: under the argument that a solution
    /// of N1 restricts to solutions of its two parts, N1 has no solution.
    ConditionallyUnsolvable,
    /// A step returned the other answer; the argument does not apply.
    NotApplicable(String),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecipeReport {
    /// Step (a): on Char-q-y, every solution has a zero y-block on e1.
    pub census: CensusOutcome,
    /// Step (b): the M-network plus an a-only path into t4.
    pub pinned: SearchOutcome,
    pub conclusion: RecipeConclusion,
}

/// Two-step argument for N1(q) at the configured field and dimension:
/// (a) census on the Char-q-y part shows e1 never carries y, so the edge
/// (n1, t4) carries a function of `a` only; (b) the M-network with such an
/// extra input at t4 has no solution.
pub fn n1_recipe(q: usize, cfg: &SearchConfig) -> Result<RecipeReport, SolveError> {
    let char_part = zoo::build_char_q_labeled(q, "a", "y").map_err(|e| SolveError::InvalidConfig(e.to_string()))?;
    let census = census(
        &char_part,
        cfg,
        &Predicate::BlockZero {
            edge: "e1".into(),
            source: "y".into(),
        },
    )?;
    let pinned = solve(&m2_with_a_path(), cfg)?;
    let conclusion = match (&census.verdict, &pinned.status) {
        (CensusVerdict::AllSatisfy { .. }, SearchStatus::Unsolvable) => RecipeConclusion::ConditionallyUnsolvable,
        (CensusVerdict::Inconclusive(r), _) | (_, SearchStatus::Inconclusive(r)) => {
            RecipeConclusion::Inconclusive(r.clone())
        }
        (CensusVerdict::Counterexample(_), _) => {
            RecipeConclusion::NotApplicable("the Char part admits a solution with y on e1".into())
        }
        (_, SearchStatus::Solvable(_)) => {
            RecipeConclusion::NotApplicable("the M-network with an a-only path into t4 is solvable".into())
        }
    };
    Ok(RecipeReport {
        census,
        pinned,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Domain {
        Domain::prime_field(p).unwrap()
    }

    #[test]
    fn single_edge_is_solvable_with_identity() {
        let mut net = Network::new("one");
        net.add_node("s", NodeKind::Source).unwrap();
        net.add_node("t", NodeKind::Terminal).unwrap();
        net.connect("s", "t").unwrap();
        net.set_demand("t", ["s"]);
        let out = solve(&net, &SearchConfig::new(&gf(2), 1)).unwrap();
        let SearchStatus::Solvable(code) = out.status else { panic!("expected a witness") };
        assert!(code.get(&CodingPair::src("s", "s->t")).unwrap().is_identity());
    }

    #[test]
    fn m2_scalar_unsolvable_dim2_solvable() {
        let m2 = zoo::build_m2();
        for p in [2, 3] {
            let cfg = SearchConfig::new(&gf(p), 1).normalized(true);
            assert_eq!(solve(&m2, &cfg).unwrap().status, SearchStatus::Unsolvable);
        }
        let cfg = SearchConfig::new(&gf(2), 2).normalized(true);
        assert!(solve(&m2, &cfg).unwrap().status.is_solvable());
    }

    #[test]
    fn pins_and_predicates_parse() {
        let f = gf(3);
        assert!(matches!(Pin::parse("src s s->m1=[[1]]", &f).unwrap(), Pin::Local { .. }));
        assert!(matches!(Pin::parse("s,e1=nonzero", &f).unwrap(), Pin::Block { .. }));
        assert!(Pin::parse("adj a b=zero", &f).is_err());
        assert!(matches!(Predicate::parse("zero(s,e1)").unwrap(), Predicate::BlockZero { .. }));
        assert!(Predicate::parse("zero(s)").is_err());
    }

    #[test]
    fn components_split_unions() {
        let u = zoo::build_m2().union(&zoo::build_char_m(2).unwrap().renamed("c.")).unwrap();
        let parts = components(&u);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].edges().len(), 20);
    }
}
