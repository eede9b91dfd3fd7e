//! Vector linear network codes.
//!
//! A code of dimension d assigns a d×d local matrix to each coding pair:
//! (source, out-edge of the source), (edge, edge leaving its head) and
//! (edge into a terminal, terminal, demand block). Missing pairs are zero.
//!
//! The vector on an edge is `y_e = Σ A_{s,e} x_s + Σ A_{e',e} y_{e'}`. Its
//! global coding matrix is the d × (|S|·d) matrix `G_e` with
//! `y_e = G_e · [x_1; ...; x_|S|]`, sources in declaration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Domain, Matrix};
use crate::netmodel::{Layout, NetError, Network, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VlncError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("code does not fit the network: {0}")]
    InconsistentCode(String),
    #[error("terminal {terminal} has no decoding matrices for block {block}")]
    IncompleteCode { terminal: String, block: usize },
    #[error("invalid argument: {0}")]
    InvalidArg(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Key of a local coding matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodingPair {
    /// Source to one of its out-edges.
    Src { source: String, edge: String },
    /// Edge `from` into edge `to`, where head(from) = tail(to).
    Adj { from: String, to: String },
    /// Edge into a terminal, contributing to decoded block `block`
    /// (0-based position in the terminal's demand list).
    Dec {
        edge: String,
        terminal: String,
        block: usize,
    },
}

impl CodingPair {
    pub fn src(source: &str, edge: &str) -> Self {
        CodingPair::Src {
            source: source.into(),
            edge: edge.into(),
        }
    }

    pub fn adj(from: &str, to: &str) -> Self {
        CodingPair::Adj {
            from: from.into(),
            to: to.into(),
        }
    }

    pub fn dec(edge: &str, terminal: &str, block: usize) -> Self {
        CodingPair::Dec {
            edge: edge.into(),
            terminal: terminal.into(),
            block,
        }
    }

    /// Check that the pair is adjacent in `net`.
    pub fn check(&self, net: &Network) -> Result<(), VlncError> {
        let bad = |why: String| Err(VlncError::InconsistentCode(format!("{self}: {why}")));
        let edge = |id: &str| {
            net.edge(id)
                .ok_or_else(|| VlncError::InconsistentCode(format!("{self}: no edge {id}")))
        };
        match self {
            CodingPair::Src { source, edge: e } => {
                if net.kind_of(source) != Some(NodeKind::Source) {
                    return bad(format!("{source} is not a source"));
                }
                if edge(e)?.tail != *source {
                    return bad(format!("edge {e} does not leave {source}"));
                }
            }
            CodingPair::Adj { from, to } => {
                if edge(from)?.head != edge(to)?.tail {
                    return bad(format!("edge {from} does not feed edge {to}"));
                }
            }
            CodingPair::Dec {
                edge: e,
                terminal,
                block,
            } => {
                if net.kind_of(terminal) != Some(NodeKind::Terminal) {
                    return bad(format!("{terminal} is not a terminal"));
                }
                if edge(e)?.head != *terminal {
                    return bad(format!("edge {e} does not enter {terminal}"));
                }
                let k = net.demand(terminal).len();
                if *block >= k {
                    return bad(format!("block {block} but {terminal} demands {k} sources"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CodingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodingPair::Src { source, edge } => write!(f, "src {source} {edge}"),
            CodingPair::Adj { from, to } => write!(f, "adj {from} {to}"),
            CodingPair::Dec {
                edge,
                terminal,
                block,
            } => write!(f, "dec {edge} {terminal} {block}"),
        }
    }
}

/// A d-dimensional code: alphabet, dimension and nonzero local matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VlncCode {
    name: String,
    domain: Domain,
    dim: usize,
    locals: BTreeMap<CodingPair, Matrix>,
}

impl VlncCode {
    pub fn new(name: impl Into<String>, domain: &Domain, dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        VlncCode {
            name: name.into(),
            domain: domain.clone(),
            dim,
            locals: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Set a local matrix; zero matrices are dropped.
    pub fn set(&mut self, pair: CodingPair, m: Matrix) -> Result<(), VlncError> {
        self.domain.check_same(m.domain())?;
        if m.shape() != (self.dim, self.dim) {
            return Err(AlgebraError::ShapeError(format!(
                "local matrix for {pair} is {}x{}, expected {d}x{d}",
                m.rows(),
                m.cols(),
                d = self.dim
            ))
            .into());
        }
        if m.is_zero() {
            self.locals.remove(&pair);
        } else {
            self.locals.insert(pair, m);
        }
        Ok(())
    }

    /// Builder-style [`VlncCode::set`] for constructors that own the shapes.
    pub(crate) fn put(&mut self, pair: CodingPair, m: Matrix) {
        self.set(pair, m).expect("constructor produces well-shaped locals");
    }

    pub fn get(&self, pair: &CodingPair) -> Option<&Matrix> {
        self.locals.get(pair)
    }

    pub fn local_or_zero(&self, pair: &CodingPair) -> Matrix {
        self.locals
            .get(pair)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(&self.domain, self.dim, self.dim))
    }

    pub fn locals(&self) -> impl Iterator<Item = (&CodingPair, &Matrix)> {
        self.locals.iter()
    }

    pub fn remove(&mut self, pair: &CodingPair) -> Option<Matrix> {
        self.locals.remove(pair)
    }

    /// Every key must name an adjacent pair of `net`.
    pub fn check_against(&self, net: &Network) -> Result<(), VlncError> {
        for pair in self.locals.keys() {
            pair.check(net)?;
        }
        Ok(())
    }

    /// Dimension k·d code with each local replaced by its k-fold block
    /// diagonal repetition.
    pub fn repeat(&self, k: usize) -> Result<VlncCode, VlncError> {
        if k < 1 {
            return Err(VlncError::InvalidArg("repetition factor must be at least 1".into()));
        }
        let mut out = VlncCode::new(
            if k == 1 {
                self.name.clone()
            } else {
                format!("{}-x{k}", self.name)
            },
            &self.domain,
            self.dim * k,
        );
        for (p, m) in &self.locals {
            out.locals.insert(p.clone(), m.repeat_diag(k));
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("code {} domain={} dim={}\n", self.name, self.domain, self.dim);
        for (p, m) in &self.locals {
            out.push_str(&format!("local {p} {m}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<VlncCode, VlncError> {
        let mut code: Option<VlncCode> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| VlncError::Parse {
                line: line_no,
                message,
            };
            let (head, rest) = take_words(line, 1);
            match head[0] {
                "code" => {
                    if code.is_some() {
                        return Err(err("second `code` header".into()));
                    }
                    let words: Vec<&str> = rest.split_whitespace().collect();
                    let mut name = None;
                    let mut domain = None;
                    let mut dim = None;
                    for w in words {
                        if let Some(v) = w.strip_prefix("domain=") {
                            domain = Some(v.parse::<Domain>().map_err(|e| err(e.to_string()))?);
                        } else if let Some(v) = w.strip_prefix("dim=") {
                            let d: usize = v.parse().map_err(|_| err(format!("bad dimension `{v}`")))?;
                            if d == 0 {
                                return Err(err("dimension must be positive".into()));
                            }
                            dim = Some(d);
                        } else if name.is_none() {
                            name = Some(w.to_string());
                        } else {
                            return Err(err(format!("unexpected `{w}` in header")));
                        }
                    }
                    let domain = domain.ok_or_else(|| err("header lacks domain=".into()))?;
                    let dim = dim.ok_or_else(|| err("header lacks dim=".into()))?;
                    code = Some(VlncCode::new(name.unwrap_or_default(), &domain, dim));
                }
                "local" => {
                    let c = code.as_mut().ok_or_else(|| err("`local` before `code` header".into()))?;
                    let (kind, rest) = take_words(rest, 1);
                    let (pair, literal) = match kind.first().copied() {
                        Some("src") => {
                            let (w, lit) = take_words(rest, 2);
                            if w.len() < 2 {
                                return Err(err("expected `local src <source> <edge> <matrix>`".into()));
                            }
                            (CodingPair::src(w[0], w[1]), lit)
                        }
                        Some("adj") => {
                            let (w, lit) = take_words(rest, 2);
                            if w.len() < 2 {
                                return Err(err("expected `local adj <edge> <edge> <matrix>`".into()));
                            }
                            (CodingPair::adj(w[0], w[1]), lit)
                        }
                        Some("dec") => {
                            let (w, lit) = take_words(rest, 3);
                            if w.len() < 3 {
                                return Err(err(
                                    "expected `local dec <edge> <terminal> <block> <matrix>`".into(),
                                ));
                            }
                            let block: usize =
                                w[2].parse().map_err(|_| err(format!("bad block index `{}`", w[2])))?;
                            (CodingPair::dec(w[0], w[1], block), lit)
                        }
                        _ => return Err(err("expected src, adj or dec".into())),
                    };
                    let m = Matrix::parse(&c.domain, literal).map_err(|e| err(e.to_string()))?;
                    if c.locals.contains_key(&pair) {
                        return Err(err(format!("duplicate entry for {pair}")));
                    }
                    c.set(pair, m).map_err(|e| err(e.to_string()))?;
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        code.ok_or(VlncError::Parse {
            line: 0,
            message: "missing `code` header".into(),
        })
    }
}

impl fmt::Display for VlncCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// First `n` whitespace-separated words and the trimmed remainder.
fn take_words(s: &str, n: usize) -> (Vec<&str>, &str) {
    let mut words = Vec::with_capacity(n);
    let mut rest = s.trim_start();
    for _ in 0..n {
        if rest.is_empty() {
            break;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        words.push(&rest[..end]);
        rest = rest[end..].trim_start();
    }
    (words, rest)
}

/// Dimension k·d code from a d-dimensional one; see [`VlncCode::repeat`].
pub fn repeat_code(code: &VlncCode, k: usize) -> Result<VlncCode, VlncError> {
    code.repeat(k)
}

/// `d × (|S|·d)` matrix selecting source block `pos`.
pub fn selector(domain: &Domain, dim: usize, num_sources: usize, pos: usize) -> Matrix {
    let mut m = Matrix::zeros(domain, dim, num_sources * dim);
    for i in 0..dim {
        m.set(i, pos * dim + i, domain.one());
    }
    m
}

/// Global coding matrices of every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalCoding {
    dim: usize,
    sources: Vec<String>,
    edge_ids: Vec<String>,
    index: HashMap<String, usize>,
    matrices: Vec<Matrix>,
}

impl GlobalCoding {
    pub(crate) fn from_parts(dim: usize, net: &Network, matrices: Vec<Matrix>) -> Self {
        let edge_ids: Vec<String> = net.edges().iter().map(|e| e.id.clone()).collect();
        let index = edge_ids.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        GlobalCoding {
            dim,
            sources: net.sources().iter().map(|s| s.to_string()).collect(),
            edge_ids,
            index,
            matrices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    /// Full `d × (|S|·d)` matrix of an edge.
    pub fn edge(&self, edge: &str) -> Option<&Matrix> {
        self.index.get(edge).map(|&i| &self.matrices[i])
    }

    /// Block `G_{e,s}`.
    pub fn block(&self, edge: &str, source: &str) -> Option<Matrix> {
        let m = self.edge(edge)?;
        let pos = self.sources.iter().position(|s| s == source)?;
        Some(
            m.block(0, pos * self.dim, self.dim, self.dim)
                .expect("block inside global matrix"),
        )
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &Matrix)> {
        self.edge_ids.iter().map(String::as_str).zip(&self.matrices)
    }
}

fn require_domain(net: &Network, code: &VlncCode) -> Result<Layout, VlncError> {
    let layout = Layout::new(net)?;
    code.check_against(net)?;
    Ok(layout)
}

/// Compose local matrices along the canonical edge order.
pub fn evaluate_global(net: &Network, code: &VlncCode) -> Result<GlobalCoding, VlncError> {
    let layout = require_domain(net, code)?;
    Ok(evaluate_with_layout(net, &layout, code))
}

pub(crate) fn evaluate_with_layout(net: &Network, layout: &Layout, code: &VlncCode) -> GlobalCoding {
    let d = code.dim;
    let dom = &code.domain;
    let n_src = layout.num_sources();
    let edges = net.edges();
    let mut globals: Vec<Option<Matrix>> = vec![None; edges.len()];
    for &e in &layout.edge_order {
        let tail = layout.tail[e];
        let mut g = Matrix::zeros(dom, d, n_src * d);
        if let Some(sp) = layout.source_pos[tail] {
            if let Some(a) = code.get(&CodingPair::src(&edges[e].tail, &edges[e].id)) {
                g.set_block(0, sp * d, a).expect("block fits");
            }
        }
        for &pe in &layout.in_edges[tail] {
            if let Some(a) = code.get(&CodingPair::adj(&edges[pe].id, &edges[e].id)) {
                let contrib = a
                    .mul(globals[pe].as_ref().expect("predecessor evaluated first"))
                    .expect("conformable");
                g.add_assign(&contrib);
            }
        }
        globals[e] = Some(g);
    }
    GlobalCoding::from_parts(d, net, globals.into_iter().map(|g| g.expect("all edges evaluated")).collect())
}

/// Outcome for one terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalReport {
    pub terminal: String,
    pub demands: Vec<String>,
    pub pass: bool,
    /// Demanded sources whose decoded block is wrong.
    pub failed_sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub terminals: Vec<TerminalReport>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failed_terminals(&self) -> Vec<&str> {
        self.terminals
            .iter()
            .filter(|t| !t.pass)
            .map(|t| t.terminal.as_str())
            .collect()
    }
}

/// Check that every terminal recovers each demanded source exactly with the
/// declared decoding matrices. Pure identity check, valid over rings.
pub fn verify_solution(net: &Network, code: &VlncCode) -> Result<VerifyReport, VlncError> {
    let layout = require_domain(net, code)?;
    let global = evaluate_with_layout(net, &layout, code);
    let d = code.dim;
    let dom = &code.domain;
    let n_src = layout.num_sources();
    let mut terminals = Vec::new();
    for &t in &layout.terminals {
        let tid = &net.nodes()[t].id;
        let demands = net.demand(tid).to_vec();
        let mut failed = Vec::new();
        for (j, &sp) in layout.demand_pos[t].iter().enumerate() {
            let mut acc = Matrix::zeros(dom, d, n_src * d);
            let mut any = false;
            for &e in &layout.in_edges[t] {
                let eid = &net.edges()[e].id;
                if let Some(a) = code.get(&CodingPair::dec(eid, tid, j)) {
                    any = true;
                    acc.add_assign(&a.mul(&global.matrices[e]).expect("conformable"));
                }
            }
            if !any {
                return Err(VlncError::IncompleteCode {
                    terminal: tid.clone(),
                    block: j,
                });
            }
            if acc != selector(dom, d, n_src, sp) {
                failed.push(demands[j].clone());
            }
        }
        terminals.push(TerminalReport {
            terminal: tid.clone(),
            demands,
            pass: failed.is_empty(),
            failed_sources: failed,
        });
    }
    let pass = terminals.iter().all(|t| t.pass);
    Ok(VerifyReport { terminals, pass })
}

/// Decoding matrices for terminal `t` if its demanded selector rows lie in
/// the row space of its stacked in-edge globals. Fields only.
pub fn decodable(
    net: &Network,
    global: &GlobalCoding,
    terminal: &str,
) -> Result<Option<Vec<(CodingPair, Matrix)>>, VlncError> {
    if net.kind_of(terminal) != Some(NodeKind::Terminal) {
        return Err(NetError::NoSuchNode(terminal.into()).into());
    }
    let layout = Layout::new(net)?;
    let t = net.node_idx(terminal).expect("checked above");
    decodable_at(net, &layout, global, t)
}

pub(crate) fn decodable_at(
    net: &Network,
    layout: &Layout,
    global: &GlobalCoding,
    t: usize,
) -> Result<Option<Vec<(CodingPair, Matrix)>>, VlncError> {
    let d = global.dim;
    let Some(first) = global.matrices.first() else {
        return Ok(if layout.demand_pos[t].is_empty() { Some(Vec::new()) } else { None });
    };
    let dom = first.domain().clone();
    dom.require_field()?;
    let n_src = layout.num_sources();
    let tid = &net.nodes()[t].id;
    let demands = &layout.demand_pos[t];
    if demands.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let ins = &layout.in_edges[t];
    if ins.is_empty() {
        return Ok(None);
    }
    let stack_parts: Vec<&Matrix> = ins.iter().map(|&e| &global.matrices[e]).collect();
    let stack = Matrix::vstack(&stack_parts)?;
    let sels: Vec<Matrix> = demands.iter().map(|&sp| selector(&dom, d, n_src, sp)).collect();
    let sel_refs: Vec<&Matrix> = sels.iter().collect();
    let target = Matrix::vstack(&sel_refs)?;
    let Some(x) = stack.solve_left(&target)? else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for j in 0..demands.len() {
        for (i, &e) in ins.iter().enumerate() {
            let m = x.block(j * d, i * d, d, d)?;
            if !m.is_zero() {
                out.push((CodingPair::dec(&net.edges()[e].id, tid, j), m));
            }
        }
    }
    Ok(Some(out))
}

/// Result of pushing concrete messages through a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    /// Vector carried by each edge.
    pub edges: HashMap<String, Vec<u16>>,
    /// Per terminal, one decoded vector per demand block.
    pub decoded: HashMap<String, Vec<Vec<u16>>>,
}

fn apply(dom: &Domain, m: &Matrix, v: &[u16], acc: &mut [u16]) {
    for (r, slot) in acc.iter_mut().enumerate() {
        for (c, &x) in v.iter().enumerate() {
            *slot = dom.add(*slot, dom.mul(m.get(r, c), x));
        }
    }
}

/// Propagate explicit source vectors (declaration order, length d each)
/// edge by edge and apply the decoding matrices. Independent of the
/// symbolic global computation.
pub fn simulate(net: &Network, code: &VlncCode, messages: &[Vec<u16>]) -> Result<Simulation, VlncError> {
    let layout = require_domain(net, code)?;
    let d = code.dim;
    let dom = &code.domain;
    if messages.len() != layout.num_sources() || messages.iter().any(|m| m.len() != d) {
        return Err(VlncError::InvalidArg(format!(
            "need {} message vectors of length {d}",
            layout.num_sources()
        )));
    }
    let edges = net.edges();
    let mut carried: Vec<Vec<u16>> = vec![Vec::new(); edges.len()];
    for &e in &layout.edge_order {
        let mut y = vec![0u16; d];
        let tail = layout.tail[e];
        if let Some(sp) = layout.source_pos[tail] {
            if let Some(a) = code.get(&CodingPair::src(&edges[e].tail, &edges[e].id)) {
                apply(dom, a, &messages[sp], &mut y);
            }
        }
        for &pe in &layout.in_edges[tail] {
            if let Some(a) = code.get(&CodingPair::adj(&edges[pe].id, &edges[e].id)) {
                apply(dom, a, &carried[pe], &mut y);
            }
        }
        carried[e] = y;
    }
    let mut decoded = HashMap::new();
    for &t in &layout.terminals {
        let tid = &net.nodes()[t].id;
        let blocks = (0..layout.demand_pos[t].len())
            .map(|j| {
                let mut out = vec![0u16; d];
                for &e in &layout.in_edges[t] {
                    if let Some(a) = code.get(&CodingPair::dec(&edges[e].id, tid, j)) {
                        apply(dom, a, &carried[e], &mut out);
                    }
                }
                out
            })
            .collect();
        decoded.insert(tid.clone(), blocks);
    }
    Ok(Simulation {
        edges: edges
            .iter()
            .map(|e| e.id.clone())
            .zip(carried)
            .collect(),
        decoded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relay() -> Network {
        let mut n = Network::new("relay");
        n.add_node("s", NodeKind::Source).unwrap();
        n.add_node("v", NodeKind::Inner).unwrap();
        n.add_node("t", NodeKind::Terminal).unwrap();
        n.connect("s", "v").unwrap();
        n.connect("v", "t").unwrap();
        n.set_demand("t", ["s"]);
        n
    }

    #[test]
    fn zero_code_has_zero_globals() {
        let f = Domain::field(3, 1).unwrap();
        let g = evaluate_global(&relay(), &VlncCode::new("z", &f, 2)).unwrap();
        assert!(g.edges().all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn relay_code_verifies_and_decodes() {
        let f = Domain::field(5, 1).unwrap();
        let net = relay();
        let mut code = VlncCode::new("r", &f, 1);
        let two = Matrix::scalar(&f, 1, 2);
        code.put(CodingPair::src("s", "s->v"), two.clone());
        code.put(CodingPair::adj("s->v", "v->t"), Matrix::identity(&f, 1));
        code.put(CodingPair::dec("v->t", "t", 0), Matrix::scalar(&f, 1, 3));
        assert!(verify_solution(&net, &code).unwrap().pass);
        let g = evaluate_global(&net, &code).unwrap();
        let dec = decodable(&net, &g, "t").unwrap().unwrap();
        assert_eq!(dec, vec![(CodingPair::dec("v->t", "t", 0), Matrix::scalar(&f, 1, 3))]);
    }

    #[test]
    fn missing_decoder_is_incomplete() {
        let f = Domain::field(2, 1).unwrap();
        let code = VlncCode::new("z", &f, 1);
        assert_eq!(
            verify_solution(&relay(), &code),
            Err(VlncError::IncompleteCode {
                terminal: "t".into(),
                block: 0
            })
        );
    }

    #[test]
    fn dangling_pair_is_rejected() {
        let f = Domain::field(2, 1).unwrap();
        let mut code = VlncCode::new("z", &f, 1);
        code.put(CodingPair::adj("v->t", "s->v"), Matrix::identity(&f, 1));
        assert!(matches!(
            evaluate_global(&relay(), &code),
            Err(VlncError::InconsistentCode(_))
        ));
    }

    #[test]
    fn undecodable_without_support() {
        let f = Domain::field(2, 1).unwrap();
        let net = relay();
        let g = evaluate_global(&net, &VlncCode::new("z", &f, 1)).unwrap();
        assert_eq!(decodable(&net, &g, "t").unwrap(), None);
    }

    #[test]
    fn text_roundtrip() {
        let f = Domain::field(3, 2).unwrap();
        let mut code = VlncCode::new("demo", &f, 2);
        code.put(CodingPair::src("s", "s->v"), Matrix::new(&f, 2, 2, vec![1, 4, 0, 8]).unwrap());
        code.put(CodingPair::dec("v->t", "t", 0), Matrix::identity(&f, 2));
        let back = VlncCode::parse(&code.to_text()).unwrap();
        assert_eq!(back, code);
        assert!(matches!(
            VlncCode::parse("local src s e [[1]]"),
            Err(VlncError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn repeat_once_is_identity() {
        let f = Domain::field(2, 1).unwrap();
        let mut code = VlncCode::new("c", &f, 1);
        code.put(CodingPair::src("s", "s->v"), Matrix::identity(&f, 1));
        assert_eq!(code.repeat(1).unwrap(), code);
        assert!(matches!(code.repeat(0), Err(VlncError::InvalidArg(_))));
    }
}
