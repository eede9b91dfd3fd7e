//! Backjumping search over edge row spaces for one connected network.
//!
//! Interior edges (head not a terminal) are the variables, in canonical edge
//! order; each takes a subspace of the space attainable at its tail. Edges
//! into terminals are never variables: each terminal is checked on its own by
//! choosing maximal subspaces on its in-edges. Unassigned interior edges are
//! relaxed to their full attainable space and checks on partial assignments
//! use only necessary conditions, so a failed check fails every completion.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use std::time::Instant;

use fixedbitset::FixedBitSet;

use super::space::{combine, contains, covers, gaussian_binomial, restrict_zero, sum, Sub};
use super::{ProgressSink, SearchStats, SolveError};
use crate::algebra::{rref_bases, Domain, Matrix};
use crate::netmodel::{Layout, Network, NodeKind};
use crate::vlnc::{decodable_at, evaluate_with_layout, selector, CodingPair, GlobalCoding, VlncCode};

/// Row-space constraints on one edge.
#[derive(Debug, Clone, Default)]
pub(crate) struct EdgeRule {
    /// Exact global coding matrix.
    pub fixed: Option<Matrix>,
    /// Source positions whose block must vanish.
    pub zero: Vec<usize>,
    /// Source positions whose block must not vanish.
    pub nonzero: Vec<usize>,
}

pub(crate) type LeafCheck = dyn Fn(&VlncCode, &GlobalCoding) -> bool + Send + Sync;

pub(crate) struct Ctx<'a> {
    pub net: &'a Network,
    pub layout: Layout,
    pub dom: Domain,
    pub d: usize,
    /// Ambient dimension: sources × d.
    pub n: usize,
    pub maximal: bool,
    /// Variable index → edge index.
    pub vars: Vec<usize>,
    pub var_of: Vec<Option<usize>>,
    /// Per edge: interior edges strictly upstream.
    anc: Vec<FixedBitSet>,
    /// Per terminal slot: interior edges upstream.
    term_anc: Vec<FixedBitSet>,
    /// Per variable: terminal slots downstream.
    affected: Vec<Vec<usize>>,
    /// Terminal slot → node index.
    terms: Vec<usize>,
    /// Node index → terminal slot.
    slot_of: Vec<Option<usize>>,
    demand: Vec<Sub>,
    source_space: Vec<Sub>,
    pub rules: Vec<EdgeRule>,
    fixed_space: Vec<Option<Sub>>,
    coeffs: RwLock<HashMap<(usize, usize), Arc<Vec<Matrix>>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(
        net: &'a Network,
        dom: &Domain,
        d: usize,
        maximal: bool,
        rules: Vec<EdgeRule>,
    ) -> Result<Self, SolveError> {
        let layout = Layout::new(net)?;
        let n_src = layout.num_sources();
        let n = n_src * d;
        let m = net.edges().len();
        let is_term = |v: usize| net.nodes()[v].kind == NodeKind::Terminal;
        let vars: Vec<usize> = layout
            .edge_order
            .iter()
            .copied()
            .filter(|&e| !is_term(layout.head[e]))
            .collect();
        let mut var_of = vec![None; m];
        for (i, &e) in vars.iter().enumerate() {
            var_of[e] = Some(i);
        }
        let nv = vars.len();
        let mut anc = vec![FixedBitSet::with_capacity(nv); m];
        for &e in &layout.edge_order {
            let mut set = FixedBitSet::with_capacity(nv);
            for &f in &layout.in_edges[layout.tail[e]] {
                set.union_with(&anc[f]);
                if let Some(v) = var_of[f] {
                    set.insert(v);
                }
            }
            anc[e] = set;
        }
        let terms = layout.terminals.clone();
        let mut slot_of = vec![None; net.nodes().len()];
        let mut term_anc = Vec::new();
        let mut affected = vec![Vec::new(); nv];
        let mut demand = Vec::new();
        for (slot, &t) in terms.iter().enumerate() {
            slot_of[t] = Some(slot);
            let mut set = FixedBitSet::with_capacity(nv);
            for &f in &layout.in_edges[t] {
                set.union_with(&anc[f]);
            }
            for v in set.ones() {
                affected[v].push(slot);
            }
            term_anc.push(set);
            let parts: Vec<Sub> = layout.demand_pos[t]
                .iter()
                .map(|&p| Sub::from_matrix(&selector(dom, d, n_src, p)))
                .collect();
            demand.push(sum(dom, n, &parts));
        }
        let source_space = (0..n_src)
            .map(|p| Sub::from_matrix(&selector(dom, d, n_src, p)))
            .collect();
        let fixed_space = rules
            .iter()
            .map(|r| r.fixed.as_ref().map(Sub::from_matrix))
            .collect();
        Ok(Ctx {
            net,
            layout,
            dom: dom.clone(),
            d,
            n,
            maximal,
            vars,
            var_of,
            anc,
            term_anc,
            affected,
            terms,
            slot_of,
            demand,
            source_space,
            rules,
            fixed_space,
            coeffs: RwLock::new(HashMap::new()),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    fn coeffs(&self, k: usize, w: usize) -> Arc<Vec<Matrix>> {
        if let Some(c) = self.coeffs.read().expect("lock").get(&(k, w)) {
            return c.clone();
        }
        let list = Arc::new(rref_bases(&self.dom, k, w));
        self.coeffs.write().expect("lock").insert((k, w), list.clone());
        list
    }

    /// Upper bound on the number of full phase-1 assignments and the largest
    /// per-terminal choice count, from attainable dimensions alone.
    pub fn space_bounds(&self) -> (f64, f64) {
        let q = self.dom.size();
        let mut wmax = vec![0usize; self.net.nodes().len()];
        for &v in &self.layout.node_order {
            wmax[v] = if self.layout.source_pos[v].is_some() {
                self.d
            } else {
                let s: usize = self.layout.in_edges[v]
                    .iter()
                    .map(|&f| wmax[self.layout.tail[f]].min(self.d))
                    .sum();
                s.min(self.n)
            };
        }
        let choices = |e: usize, maximal: bool| -> f64 {
            if self.rules[e].fixed.is_some() {
                return 1.0;
            }
            let w = wmax[self.layout.tail[e]];
            let top = w.min(self.d);
            if maximal {
                gaussian_binomial(w, top, q)
            } else {
                (0..=top).map(|k| gaussian_binomial(w, k, q)).sum()
            }
        };
        let phase1 = self.vars.iter().map(|&e| choices(e, self.maximal)).product();
        let phase2 = self
            .terms
            .iter()
            .map(|&t| {
                self.layout.in_edges[t]
                    .iter()
                    .map(|&f| choices(f, true))
                    .product::<f64>()
            })
            .fold(0.0, f64::max);
        (phase1, phase2)
    }

    /// Block columns of source position `p`.
    fn block(&self, p: usize) -> (usize, usize) {
        (p * self.d, self.d)
    }

    fn apply_zero(&self, e: usize, mut w: Sub) -> Sub {
        for &p in &self.rules[e].zero {
            let (s, l) = self.block(p);
            w = restrict_zero(&self.dom, self.n, &w, s, l);
        }
        w
    }

    fn nonzero_ok(&self, e: usize, u: &Sub) -> bool {
        self.rules[e].nonzero.iter().all(|&p| {
            let (s, l) = self.block(p);
            u.block_nonzero(self.n, s, l)
        })
    }

    fn zero_ok(&self, e: usize, u: &Sub) -> bool {
        self.rules[e].zero.iter().all(|&p| {
            let (s, l) = self.block(p);
            !u.block_nonzero(self.n, s, l)
        })
    }

    /// Candidate subspaces for edge `e` inside attainable space `w`.
    fn candidates(&self, e: usize, w: &Sub, maximal: bool) -> Vec<Sub> {
        if let Some(fx) = &self.fixed_space[e] {
            let ok = contains(&self.dom, self.n, w, fx) && self.zero_ok(e, fx) && self.nonzero_ok(e, fx);
            return if ok { vec![fx.clone()] } else { Vec::new() };
        }
        let w = self.apply_zero(e, w.clone());
        let top = w.dim().min(self.d);
        let ks: Vec<usize> = if maximal { vec![top] } else { (0..=top).collect() };
        let mut out = Vec::new();
        for k in ks {
            for c in self.coeffs(k, w.dim()).iter() {
                let u = combine(&self.dom, self.n, c, &w);
                if self.nonzero_ok(e, &u) {
                    out.push(u);
                }
            }
        }
        out
    }
}

/// A full phase-1 assignment with the in-edge choice of every terminal.
#[derive(Debug, Clone)]
pub(crate) struct Leaf {
    pub assign: Vec<Sub>,
    pub choices: Vec<Vec<Sub>>,
}

/// State shared by the workers of one search.
pub(crate) struct Shared {
    /// Lowest work index that has produced a result.
    pub best: AtomicUsize,
    pub stop: AtomicBool,
    pub limit_hit: AtomicBool,
    pub assignments: AtomicU64,
    pub prunes: AtomicU64,
    pub backjumps: AtomicU64,
    pub solutions: AtomicU64,
    pub max_assignments: Option<u64>,
    pub deadline: Option<Instant>,
    pub start: Instant,
    pub progress: Option<(ProgressSink, Mutex<Instant>, std::time::Duration)>,
}

impl Shared {
    pub fn new(
        max_assignments: Option<u64>,
        deadline: Option<Instant>,
        progress: Option<(ProgressSink, std::time::Duration)>,
    ) -> Self {
        let start = Instant::now();
        Shared {
            best: AtomicUsize::new(usize::MAX),
            stop: AtomicBool::new(false),
            limit_hit: AtomicBool::new(false),
            assignments: AtomicU64::new(0),
            prunes: AtomicU64::new(0),
            backjumps: AtomicU64::new(0),
            solutions: AtomicU64::new(0),
            max_assignments,
            deadline,
            start,
            progress: progress.map(|(sink, every)| (sink, Mutex::new(start), every)),
        }
    }

    pub fn snapshot(&self, space: f64) -> SearchStats {
        SearchStats {
            assignments: self.assignments.load(Ordering::Relaxed),
            prunes: self.prunes.load(Ordering::Relaxed),
            backjumps: self.backjumps.load(Ordering::Relaxed),
            solutions: self.solutions.load(Ordering::Relaxed),
            space,
            elapsed: self.start.elapsed(),
        }
    }
}

/// What a leaf means to the caller.
pub(crate) enum Goal<'g> {
    /// Stop at the first solution.
    First,
    /// Visit every solution; stop at the first one failing the check.
    Census(&'g LeafCheck),
    /// Visit every solution.
    Count,
}

enum Flow {
    Conflict(FixedBitSet),
    Stop,
}

/// How a worker ended.
pub(crate) enum WorkResult {
    Found(Leaf),
    Exhausted,
    Aborted,
}

pub(crate) struct Worker<'c, 'a> {
    ctx: &'c Ctx<'a>,
    shared: &'c Shared,
    goal: &'c Goal<'c>,
    idx: usize,
    assign: Vec<Option<Sub>>,
    memo: HashMap<(usize, bool, Vec<Sub>), Option<Option<Vec<Sub>>>>,
    pending: [u64; 4],
    found: Option<Leaf>,
    aborted: bool,
    space: f64,
}

const FLUSH: u64 = 1024;

/// Largest in-edge choice product enumerated by a check on a partial
/// assignment; beyond it only the necessary rank condition is applied.
const EXACT_CHECK_LIMIT: f64 = 4096.0;

/// Necessary condition for choosing subspaces of the hulls, each within its
/// cap, whose sum contains `target`: for every set J of in-edges, what the
/// other hulls leave of the target has dimension at most the caps over J.
fn hall_condition(ctx: &Ctx, hulls: &[Sub], caps: &[usize], target: &Sub) -> bool {
    let k = hulls.len();
    let sets: Vec<u64> = if k <= 16 {
        (0..1u64 << k).collect()
    } else {
        vec![(1u64 << k.min(63)) - 1]
    };
    sets.into_iter().all(|j| {
        let rest: Vec<&Sub> = (0..k).filter(|i| j >> i & 1 == 0).map(|i| &hulls[i]).collect();
        let base = sum(&ctx.dom, ctx.n, rest.iter().copied());
        let with = sum(&ctx.dom, ctx.n, rest.iter().copied().chain([target]));
        let budget: usize = (0..k).filter(|i| j >> i & 1 == 1).map(|i| caps[i]).sum();
        with.dim() - base.dim() <= budget
    })
}

impl<'c, 'a> Worker<'c, 'a> {
    pub fn new(ctx: &'c Ctx<'a>, shared: &'c Shared, goal: &'c Goal<'c>, idx: usize, space: f64) -> Self {
        Worker {
            ctx,
            shared,
            goal,
            idx,
            assign: vec![None; ctx.num_vars()],
            memo: HashMap::new(),
            pending: [0; 4],
            found: None,
            aborted: false,
            space,
        }
    }

    fn flush(&mut self) {
        let s = self.shared;
        let [a, p, b, sol] = std::mem::take(&mut self.pending);
        let total = s.assignments.fetch_add(a, Ordering::Relaxed) + a;
        s.prunes.fetch_add(p, Ordering::Relaxed);
        s.backjumps.fetch_add(b, Ordering::Relaxed);
        s.solutions.fetch_add(sol, Ordering::Relaxed);
        if s.max_assignments.is_some_and(|m| total >= m) || s.deadline.is_some_and(|d| Instant::now() >= d) {
            s.limit_hit.store(true, Ordering::Relaxed);
            s.stop.store(true, Ordering::Relaxed);
        }
        if let Some((sink, last, every)) = &s.progress {
            let mut last = last.lock().expect("lock");
            if last.elapsed() >= *every {
                *last = Instant::now();
                drop(last);
                sink(&s.snapshot(self.space));
            }
        }
    }

    fn should_abort(&self) -> bool {
        self.shared.stop.load(Ordering::Relaxed) || self.shared.best.load(Ordering::Relaxed) < self.idx
    }

    /// Attainable space at node `v` with unassigned interior edges relaxed.
    fn node_space(&self, v: usize, cache: &mut Vec<Option<Sub>>) -> Sub {
        if let Some(s) = &cache[v] {
            return s.clone();
        }
        let ctx = self.ctx;
        let s = if let Some(p) = ctx.layout.source_pos[v] {
            ctx.source_space[p].clone()
        } else {
            let parts: Vec<Sub> = ctx.layout.in_edges[v]
                .iter()
                .map(|&f| self.edge_space(f, cache))
                .collect();
            sum(&ctx.dom, ctx.n, &parts)
        };
        cache[v] = Some(s.clone());
        s
    }

    fn edge_space(&self, f: usize, cache: &mut Vec<Option<Sub>>) -> Sub {
        let ctx = self.ctx;
        if let Some(u) = ctx.var_of[f].and_then(|v| self.assign[v].clone()) {
            return u;
        }
        if let Some(fx) = &ctx.fixed_space[f] {
            return fx.clone();
        }
        let w = self.node_space(ctx.layout.tail[f], cache);
        ctx.apply_zero(f, w)
    }

    /// Whether terminal slot `slot` can still decode. When every interior
    /// edge upstream is set, a passing check carries the in-edge choices.
    fn terminal(&mut self, slot: usize) -> Option<Option<Vec<Sub>>> {
        let ctx = self.ctx;
        let t = ctx.terms[slot];
        let exact = ctx.term_anc[slot].ones().all(|v| self.assign[v].is_some());
        let mut cache = vec![None; ctx.net.nodes().len()];
        let ws: Vec<Sub> = ctx.layout.in_edges[t]
            .iter()
            .map(|&f| self.node_space(ctx.layout.tail[f], &mut cache))
            .collect();
        let key = (slot, exact, ws);
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let result = self.decide_terminal(t, slot, &key.2, exact);
        if self.memo.len() > 1 << 20 {
            self.memo.clear();
        }
        self.memo.insert(key, result.clone());
        result
    }

    fn decide_terminal(&self, t: usize, slot: usize, ws: &[Sub], exact: bool) -> Option<Option<Vec<Sub>>> {
        let ctx = self.ctx;
        let target = &ctx.demand[slot];
        let edges = &ctx.layout.in_edges[t];
        // Reach of each in-edge and the dimension it may use.
        let mut hulls = Vec::with_capacity(edges.len());
        let mut caps = Vec::with_capacity(edges.len());
        for (&f, w) in edges.iter().zip(ws) {
            match &ctx.fixed_space[f] {
                Some(fx) => {
                    if !contains(&ctx.dom, ctx.n, w, fx) {
                        return None;
                    }
                    caps.push(fx.dim());
                    hulls.push(fx.clone());
                }
                None => {
                    let h = ctx.apply_zero(f, w.clone());
                    caps.push(h.dim().min(ctx.d));
                    hulls.push(h);
                }
            }
        }
        if !hall_condition(ctx, &hulls, &caps, target) {
            return None;
        }
        let count: f64 = edges
            .iter()
            .zip(&hulls)
            .zip(&caps)
            .map(|((&f, h), &k)| {
                if ctx.fixed_space[f].is_some() {
                    1.0
                } else {
                    gaussian_binomial(h.dim(), k, ctx.dom.size())
                }
            })
            .product();
        if !exact && count > EXACT_CHECK_LIMIT {
            return Some(None);
        }
        let cands: Vec<Vec<Sub>> = edges
            .iter()
            .zip(ws)
            .map(|(&f, w)| ctx.candidates(f, w, true))
            .collect();
        if cands.iter().any(Vec::is_empty) {
            return None;
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| cands[i].len());
        let mut pick = vec![0usize; edges.len()];
        if self.pick(&order, 0, &cands, &hulls, target, &mut pick) {
            Some(Some(pick.iter().enumerate().map(|(i, &c)| cands[i][c].clone()).collect()))
        } else {
            None
        }
    }

    fn pick(
        &self,
        order: &[usize],
        depth: usize,
        cands: &[Vec<Sub>],
        hulls: &[Sub],
        target: &Sub,
        pick: &mut [usize],
    ) -> bool {
        let ctx = self.ctx;
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for c in 0..cands[i].len() {
            pick[i] = c;
            let mut parts: Vec<&Sub> = order[..=depth].iter().map(|&j| &cands[j][pick[j]]).collect();
            parts.extend(order[depth + 1..].iter().map(|&j| &hulls[j]));
            if covers(&ctx.dom, ctx.n, &parts, target) && self.pick(order, depth + 1, cands, hulls, target, pick) {
                return true;
            }
        }
        false
    }

    /// Candidate values for variable `k`, all of whose ancestors are set.
    fn domain(&self, k: usize) -> Vec<Sub> {
        let ctx = self.ctx;
        let e = ctx.vars[k];
        let mut cache = vec![None; ctx.net.nodes().len()];
        let w = self.node_space(ctx.layout.tail[e], &mut cache);
        ctx.candidates(e, &w, ctx.maximal)
    }

    /// Terminal slots failing after variable `k` was set.
    fn failing(&mut self, k: usize) -> Option<usize> {
        let slots = self.ctx.affected[k].clone();
        slots.into_iter().find(|&s| self.terminal(s).is_none())
    }

    /// Check every terminal with nothing assigned; a failure here is final.
    pub fn root_ok(&mut self) -> bool {
        (0..self.ctx.terms.len()).all(|s| self.terminal(s).is_some())
    }

    /// Assign a prefix; `false` when it is inconsistent.
    pub fn load_prefix(&mut self, prefix: &[Sub]) -> bool {
        for (k, u) in prefix.iter().enumerate() {
            self.assign[k] = Some(u.clone());
            if self.failing(k).is_some() {
                return false;
            }
        }
        true
    }

    /// Extend a consistent prefix by one variable.
    pub fn extend_prefix(&mut self, prefix: &[Sub]) -> Vec<Sub> {
        let k = prefix.len();
        let mut out = Vec::new();
        for u in self.domain(k) {
            self.assign[k] = Some(u.clone());
            if self.failing(k).is_none() {
                out.push(u);
            }
        }
        self.assign[k] = None;
        out
    }

    pub fn run(mut self, start: usize) -> (WorkResult, Self) {
        let flow = self.search(start);
        self.flush();
        let res = match (flow, self.found.take()) {
            (_, Some(leaf)) => WorkResult::Found(leaf),
            (Flow::Stop, None) => WorkResult::Aborted,
            (Flow::Conflict(_), None) if self.aborted => WorkResult::Aborted,
            (Flow::Conflict(_), None) => WorkResult::Exhausted,
        };
        (res, self)
    }

    fn leaf(&mut self) -> Flow {
        let ctx = self.ctx;
        let choices: Vec<Vec<Sub>> = (0..ctx.terms.len())
            .map(|s| self.terminal(s).flatten().expect("exact check passed on assignment"))
            .collect();
        let leaf = Leaf {
            assign: self.assign.iter().map(|u| u.clone().expect("full assignment")).collect(),
            choices,
        };
        self.pending[3] += 1;
        let all = || {
            let mut s = FixedBitSet::with_capacity(ctx.num_vars());
            s.insert_range(..);
            s
        };
        match self.goal {
            Goal::First => {
                self.found = Some(leaf);
                Flow::Stop
            }
            Goal::Count => Flow::Conflict(all()),
            Goal::Census(check) => {
                let code = build_code(ctx, &leaf).expect("leaf assignments are realizable");
                let global = evaluate_with_layout(ctx.net, &ctx.layout, &code);
                if check(&code, &global) {
                    Flow::Conflict(all())
                } else {
                    self.found = Some(leaf);
                    Flow::Stop
                }
            }
        }
    }

    fn search(&mut self, k: usize) -> Flow {
        let ctx = self.ctx;
        if k == ctx.num_vars() {
            return self.leaf();
        }
        let dom_conf = ctx.anc[ctx.vars[k]].clone();
        let mut conf = FixedBitSet::with_capacity(ctx.num_vars());
        for u in self.domain(k) {
            self.pending[0] += 1;
            if self.pending[0] >= FLUSH {
                self.flush();
                if self.should_abort() {
                    self.aborted = true;
                    self.assign[k] = None;
                    return Flow::Stop;
                }
            }
            self.assign[k] = Some(u);
            if let Some(slot) = self.failing(k) {
                self.pending[1] += 1;
                conf.union_with(&ctx.term_anc[slot]);
                conf.set(k, false);
                continue;
            }
            match self.search(k + 1) {
                Flow::Stop => {
                    self.assign[k] = None;
                    return Flow::Stop;
                }
                Flow::Conflict(c) => {
                    if c.contains(k) {
                        conf.union_with(&c);
                        conf.set(k, false);
                    } else {
                        self.pending[2] += 1;
                        self.assign[k] = None;
                        return Flow::Conflict(c);
                    }
                }
            }
        }
        self.assign[k] = None;
        conf.union_with(&dom_conf);
        // Only earlier variables can be blamed.
        for v in k..ctx.num_vars() {
            conf.set(v, false);
        }
        Flow::Conflict(conf)
    }
}

/// Realize a leaf as an explicit code: every edge carries its chosen basis
/// (or its pinned matrix), locals solve for it, decoders come from the
/// terminal check.
pub(crate) fn build_code(ctx: &Ctx, leaf: &Leaf) -> Result<VlncCode, SolveError> {
    let net = ctx.net;
    let lay = &ctx.layout;
    let d = ctx.d;
    let mut code = VlncCode::new(format!("{}-witness", net.name()), &ctx.dom, d);
    let mut globals: Vec<Option<Matrix>> = vec![None; net.edges().len()];
    for &e in &lay.edge_order {
        let u = match ctx.var_of[e] {
            Some(v) => leaf.assign[v].clone(),
            None => {
                let t = lay.head[e];
                let slot = ctx.slot_of[t].expect("head of a non-variable edge is a terminal");
                let pos = lay.in_edges[t].iter().position(|&f| f == e).expect("in-edge");
                leaf.choices[slot][pos].clone()
            }
        };
        let g = match &ctx.rules[e].fixed {
            Some(m) => m.clone(),
            None => u.padded(&ctx.dom, ctx.n, d),
        };
        let eid = &net.edges()[e].id;
        let v = lay.tail[e];
        if let Some(p) = lay.source_pos[v] {
            let local = g.block(0, p * d, d, d)?;
            code.set(CodingPair::src(&net.nodes()[v].id, eid), local)?;
        } else if !g.is_zero() {
            let ins = &lay.in_edges[v];
            let parts: Vec<&Matrix> = ins.iter().map(|&f| globals[f].as_ref().expect("ordered")).collect();
            let stacked = Matrix::vstack(&parts)?;
            let x = stacked
                .solve_left(&g)?
                .ok_or_else(|| SolveError::Internal(format!("edge `{eid}` not realizable")))?;
            for (i, &f) in ins.iter().enumerate() {
                code.set(CodingPair::adj(&net.edges()[f].id, eid), x.block(0, i * d, d, d)?)?;
            }
        }
        globals[e] = Some(g);
    }
    let global = evaluate_with_layout(net, lay, &code);
    for &t in &lay.terminals {
        let decs = decodable_at(net, lay, &global, t)?.ok_or_else(|| {
            SolveError::Internal(format!("terminal `{}` not decodable", net.nodes()[t].id))
        })?;
        for (pair, m) in decs {
            code.set(pair, m)?;
        }
    }
    Ok(code)
}
