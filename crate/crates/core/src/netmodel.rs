//! Acyclic coding networks: nodes tagged source / inner / terminal, edges
//! with stable string identifiers (parallel edges allowed), and per-terminal
//! ordered demand lists.
//!
//! Canonical orders, used by every other module:
//!
//! * sources: declaration order;
//! * nodes: Kahn's algorithm, ties broken by smallest identifier;
//! * edges: by topological position of the tail, then by identifier.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("identifier `{0}` is already used")]
    DuplicateId(String),
    #[error("networks are not disjoint: shared identifiers {0:?}")]
    NotDisjoint(Vec<String>),
    #[error("no edge named `{0}`")]
    NoSuchEdge(String),
    #[error("no node named `{0}`")]
    NoSuchNode(String),
    #[error("network is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Source,
    Inner,
    Terminal,
}

impl NodeKind {
    pub fn keyword(self) -> &'static str {
        match self {
            NodeKind::Source => "source",
            NodeKind::Inner => "inner",
            NodeKind::Terminal => "terminal",
        }
    }
}

impl FromStr for NodeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "source" => Ok(NodeKind::Source),
            "inner" | "intermediate" => Ok(NodeKind::Inner),
            "terminal" => Ok(NodeKind::Terminal),
            other => Err(format!("unknown node kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
}

/// A structural problem found by [`Network::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownEndpoint { edge: String, node: String },
    SourceHasInEdge { node: String, edge: String },
    TerminalHasOutEdge { node: String, edge: String },
    CycleDetected { nodes: Vec<String> },
    DemandOnNonTerminal { node: String },
    UnknownDemandSource { terminal: String, source: String },
    DuplicateDemand { terminal: String, source: String },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::UnknownEndpoint { .. } => "UnknownEndpoint",
            Violation::SourceHasInEdge { .. } => "SourceHasInEdge",
            Violation::TerminalHasOutEdge { .. } => "TerminalHasOutEdge",
            Violation::CycleDetected { .. } => "CycleDetected",
            Violation::DemandOnNonTerminal { .. } => "DemandOnNonTerminal",
            Violation::UnknownDemandSource { .. } => "UnknownDemandSource",
            Violation::DuplicateDemand { .. } => "DuplicateDemand",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name())?;
        match self {
            Violation::UnknownEndpoint { edge, node } => write!(f, "edge {edge} references unknown node {node}"),
            Violation::SourceHasInEdge { node, edge } => write!(f, "source {node} has in-edge {edge}"),
            Violation::TerminalHasOutEdge { node, edge } => {
                write!(f, "terminal {node} has out-edge {edge}")
            }
            Violation::CycleDetected { nodes } => write!(f, "nodes on a cycle: {}", nodes.join(", ")),
            Violation::DemandOnNonTerminal { node } => write!(f, "{node} has demands but is not a terminal"),
            Violation::UnknownDemandSource { terminal, source } => {
                write!(f, "terminal {terminal} demands {source}, which is not a source")
            }
            Violation::DuplicateDemand { terminal, source } => {
                write!(f, "terminal {terminal} demands {source} twice")
            }
        }
    }
}

/// Coding network. Built incrementally; structural checks are deferred to
/// [`Network::validate`] so that broken inputs can be reported in full.
#[derive(Debug, Clone, Default)]
pub struct Network {
    name: String,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    demands: Vec<(String, Vec<String>)>,
    node_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.nodes == other.nodes
            && self.edges == other.edges
            && self.demands == other.demands
    }
}

impl Eq for Network {}

impl Network {
    pub fn new(name: impl Into<String>) -> Self {
        Network {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn add_node(&mut self, id: impl Into<String>, kind: NodeKind) -> Result<(), NetError> {
        let id = id.into();
        if self.node_index.contains_key(&id) {
            return Err(NetError::DuplicateId(id));
        }
        self.node_index.insert(id.clone(), self.nodes.len());
        self.nodes.push(Node { id, kind });
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        tail: impl Into<String>,
        head: impl Into<String>,
    ) -> Result<(), NetError> {
        let id = id.into();
        if self.edge_index.contains_key(&id) {
            return Err(NetError::DuplicateId(id));
        }
        self.edge_index.insert(id.clone(), self.edges.len());
        self.edges.push(Edge {
            id,
            tail: tail.into(),
            head: head.into(),
        });
        Ok(())
    }

    /// Edge named `tail->head`.
    pub fn connect(&mut self, tail: &str, head: &str) -> Result<(), NetError> {
        self.add_edge(format!("{tail}->{head}"), tail, head)
    }

    /// Replace the demand list of `terminal`.
    pub fn set_demand<S: Into<String>>(
        &mut self,
        terminal: impl Into<String>,
        sources: impl IntoIterator<Item = S>,
    ) {
        let terminal = terminal.into();
        let sources: Vec<String> = sources.into_iter().map(Into::into).collect();
        match self.demands.iter_mut().find(|(t, _)| *t == terminal) {
            Some(slot) => slot.1 = sources,
            None => self.demands.push((terminal, sources)),
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.node_index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_index.get(id).map(|&i| &self.edges[i])
    }

    pub fn node_idx(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub fn edge_idx(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn kind_of(&self, id: &str) -> Option<NodeKind> {
        self.node(id).map(|n| n.kind)
    }

    /// Demand list of a terminal; empty when none was declared.
    pub fn demand(&self, terminal: &str) -> &[String] {
        self.demands
            .iter()
            .find(|(t, _)| t == terminal)
            .map_or(&[], |(_, s)| s.as_slice())
    }

    /// Declared demands in declaration order.
    pub fn demands(&self) -> &[(String, Vec<String>)] {
        &self.demands
    }

    fn ids_of(&self, kind: NodeKind) -> impl Iterator<Item = &str> {
        self.nodes.iter().filter(move |n| n.kind == kind).map(|n| n.id.as_str())
    }

    pub fn sources(&self) -> Vec<&str> {
        self.ids_of(NodeKind::Source).collect()
    }

    pub fn inner_nodes(&self) -> Vec<&str> {
        self.ids_of(NodeKind::Inner).collect()
    }

    pub fn terminals(&self) -> Vec<&str> {
        self.ids_of(NodeKind::Terminal).collect()
    }

    pub fn in_edges(&self, node: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.head == node).collect()
    }

    pub fn out_edges(&self, node: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.tail == node).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    /// Every structural problem; empty iff the network is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in &self.edges {
            for end in [&e.tail, &e.head] {
                if !self.node_index.contains_key(end) {
                    out.push(Violation::UnknownEndpoint {
                        edge: e.id.clone(),
                        node: end.clone(),
                    });
                }
            }
            if self.kind_of(&e.head) == Some(NodeKind::Source) {
                out.push(Violation::SourceHasInEdge {
                    node: e.head.clone(),
                    edge: e.id.clone(),
                });
            }
            if self.kind_of(&e.tail) == Some(NodeKind::Terminal) {
                out.push(Violation::TerminalHasOutEdge {
                    node: e.tail.clone(),
                    edge: e.id.clone(),
                });
            }
        }
        let (_, leftover) = self.kahn();
        if !leftover.is_empty() {
            out.push(Violation::CycleDetected { nodes: leftover });
        }
        for (t, sources) in &self.demands {
            if self.kind_of(t) != Some(NodeKind::Terminal) {
                out.push(Violation::DemandOnNonTerminal { node: t.clone() });
            }
            let mut seen = BTreeSet::new();
            for s in sources {
                if self.kind_of(s) != Some(NodeKind::Source) {
                    out.push(Violation::UnknownDemandSource {
                        terminal: t.clone(),
                        source: s.clone(),
                    });
                }
                if !seen.insert(s) {
                    out.push(Violation::DuplicateDemand {
                        terminal: t.clone(),
                        source: s.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), NetError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(NetError::Invalid(v))
        }
    }

    /// Kahn's algorithm over known nodes. Returns the order found and the
    /// (sorted) nodes left over, which are exactly those on or behind a cycle.
    fn kahn(&self) -> (Vec<usize>, Vec<String>) {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            if let (Some(&t), Some(&h)) = (self.node_index.get(&e.tail), self.node_index.get(&e.head)) {
                indeg[h] += 1;
                succ[t].push(h);
            }
        }
        let mut heap: BinaryHeap<Reverse<(&str, usize)>> = (0..n)
            .filter(|&i| indeg[i] == 0)
            .map(|i| Reverse((self.nodes[i].id.as_str(), i)))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, i))) = heap.pop() {
            order.push(i);
            for &h in &succ[i] {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    heap.push(Reverse((self.nodes[h].id.as_str(), h)));
                }
            }
        }
        let mut leftover: Vec<String> = (0..n)
            .filter(|&i| indeg[i] > 0)
            .map(|i| self.nodes[i].id.clone())
            .collect();
        leftover.sort();
        (order, leftover)
    }

    /// Node identifiers in canonical topological order.
    pub fn topological_order(&self) -> Result<Vec<&str>, NetError> {
        let (order, leftover) = self.kahn();
        if !leftover.is_empty() {
            return Err(NetError::Invalid(vec![Violation::CycleDetected { nodes: leftover }]));
        }
        Ok(order.into_iter().map(|i| self.nodes[i].id.as_str()).collect())
    }

    /// Sources with a directed path to the tail of `edge`, including the tail
    /// itself when it is a source.
    pub fn source_support(&self, edge: &str) -> Result<BTreeSet<String>, NetError> {
        let e = self.edge(edge).ok_or_else(|| NetError::NoSuchEdge(edge.to_string()))?;
        let mut seen = BTreeSet::new();
        let mut stack = vec![e.tail.as_str()];
        let mut out = BTreeSet::new();
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            if self.kind_of(v) == Some(NodeKind::Source) {
                out.insert(v.to_string());
            }
            for pe in self.edges.iter().filter(|pe| pe.head == v) {
                stack.push(pe.tail.as_str());
            }
        }
        Ok(out)
    }

    /// Disjoint union. Fails when any node or edge identifier is shared.
    pub fn union(&self, other: &Network) -> Result<Network, NetError> {
        let mut shared: Vec<String> = self
            .nodes
            .iter()
            .filter(|n| other.node_index.contains_key(&n.id))
            .map(|n| n.id.clone())
            .chain(
                self.edges
                    .iter()
                    .filter(|e| other.edge_index.contains_key(&e.id))
                    .map(|e| e.id.clone()),
            )
            .collect();
        if !shared.is_empty() {
            shared.sort();
            shared.dedup();
            return Err(NetError::NotDisjoint(shared));
        }
        let name = match (self.name.is_empty(), other.name.is_empty()) {
            (_, true) => self.name.clone(),
            (true, false) => other.name.clone(),
            (false, false) => format!("{}+{}", self.name, other.name),
        };
        let mut out = self.clone();
        out.name = name;
        for n in &other.nodes {
            out.add_node(n.id.clone(), n.kind)?;
        }
        for e in &other.edges {
            out.add_edge(e.id.clone(), e.tail.clone(), e.head.clone())?;
        }
        for (t, s) in &other.demands {
            out.demands.push((t.clone(), s.clone()));
        }
        Ok(out)
    }

    /// Copy with every node and edge identifier prefixed.
    pub fn renamed(&self, prefix: &str) -> Network {
        let p = |s: &str| format!("{prefix}{s}");
        let mut out = Network::new(self.name.clone());
        for n in &self.nodes {
            out.add_node(p(&n.id), n.kind).expect("prefixing keeps ids unique");
        }
        for e in &self.edges {
            out.add_edge(p(&e.id), p(&e.tail), p(&e.head))
                .expect("prefixing keeps ids unique");
        }
        for (t, s) in &self.demands {
            out.demands.push((p(t), s.iter().map(|x| p(x)).collect()));
        }
        out
    }

    /// Canonical text form; parsing it back gives an equal network.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            out.push_str(&format!("name {}\n", self.name));
        }
        for n in &self.nodes {
            out.push_str(&format!("node {} {}\n", n.id, n.kind.keyword()));
        }
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.id, e.tail, e.head));
        }
        for (t, s) in &self.demands {
            out.push_str(&format!("demand {} {}\n", t, s.join(" ")));
        }
        out
    }

    /// Parse the line format. Structural problems (cycles, bad demands) are
    /// left for [`Network::validate`]; only syntax and duplicate identifiers
    /// fail here.
    pub fn parse(text: &str) -> Result<Network, NetError> {
        let mut net = Network::new("");
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| NetError::Parse {
                line: line_no,
                message,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "name" => net.name = words[1..].join(" "),
                "node" => {
                    if words.len() != 3 {
                        return Err(err("expected `node <id> source|inner|terminal`".into()));
                    }
                    let kind: NodeKind = words[2].parse().map_err(err)?;
                    net.add_node(words[1], kind).map_err(|e| err(e.to_string()))?;
                }
                "edge" => {
                    if words.len() != 4 {
                        return Err(err("expected `edge <id> <tail> <head>`".into()));
                    }
                    net.add_edge(words[1], words[2], words[3])
                        .map_err(|e| err(e.to_string()))?;
                }
                "demand" => {
                    if words.len() < 3 {
                        return Err(err("expected `demand <terminal> <source> [...]`".into()));
                    }
                    if net.demands.iter().any(|(t, _)| t == words[1]) {
                        return Err(err(format!("second demand line for {}", words[1])));
                    }
                    net.set_demand(words[1], words[2..].iter().copied());
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        Ok(net)
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Ordered list of edges of one network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut(Vec<String>);

impl EdgeCut {
    pub fn new(net: &Network, edges: impl IntoIterator<Item = impl Into<String>>) -> Result<Self, NetError> {
        let edges: Vec<String> = edges.into_iter().map(Into::into).collect();
        if let Some(bad) = edges.iter().find(|e| net.edge(e).is_none()) {
            return Err(NetError::NoSuchEdge(bad.clone()));
        }
        Ok(EdgeCut(edges))
    }

    pub fn edges(&self) -> &[String] {
        &self.0
    }
}

/// Index view of a valid network in canonical orders.
#[derive(Debug, Clone)]
pub struct Layout {
    /// Node indices in topological order.
    pub node_order: Vec<usize>,
    /// Topological position of each node.
    pub node_pos: Vec<usize>,
    /// Edge indices in canonical edge order.
    pub edge_order: Vec<usize>,
    /// Canonical position of each edge.
    pub edge_pos: Vec<usize>,
    /// Source node indices in declaration order.
    pub sources: Vec<usize>,
    /// Position of a node among the sources.
    pub source_pos: Vec<Option<usize>>,
    /// Terminal node indices in declaration order.
    pub terminals: Vec<usize>,
    /// Per node: in-edge indices in canonical edge order.
    pub in_edges: Vec<Vec<usize>>,
    /// Per node: out-edge indices in canonical edge order.
    pub out_edges: Vec<Vec<usize>>,
    /// Per edge: tail and head node index.
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    /// Per terminal node: demanded sources as source positions.
    pub demand_pos: Vec<Vec<usize>>,
}

impl Layout {
    pub fn new(net: &Network) -> Result<Layout, NetError> {
        net.ensure_valid()?;
        let n = net.nodes.len();
        let (node_order, _) = net.kahn();
        let mut node_pos = vec![0; n];
        for (p, &v) in node_order.iter().enumerate() {
            node_pos[v] = p;
        }
        let tail: Vec<usize> = net.edges.iter().map(|e| net.node_index[&e.tail]).collect();
        let head: Vec<usize> = net.edges.iter().map(|e| net.node_index[&e.head]).collect();
        let mut edge_order: Vec<usize> = (0..net.edges.len()).collect();
        edge_order.sort_by(|&a, &b| {
            (node_pos[tail[a]], &net.edges[a].id).cmp(&(node_pos[tail[b]], &net.edges[b].id))
        });
        let mut edge_pos = vec![0; net.edges.len()];
        for (p, &e) in edge_order.iter().enumerate() {
            edge_pos[e] = p;
        }
        let sources: Vec<usize> = (0..n).filter(|&i| net.nodes[i].kind == NodeKind::Source).collect();
        let mut source_pos = vec![None; n];
        for (p, &s) in sources.iter().enumerate() {
            source_pos[s] = Some(p);
        }
        let terminals: Vec<usize> = (0..n).filter(|&i| net.nodes[i].kind == NodeKind::Terminal).collect();
        let mut in_edges = vec![Vec::new(); n];
        let mut out_edges = vec![Vec::new(); n];
        for &e in &edge_order {
            in_edges[head[e]].push(e);
            out_edges[tail[e]].push(e);
        }
        let mut demand_pos = vec![Vec::new(); n];
        for (t, s) in &net.demands {
            demand_pos[net.node_index[t]] = s
                .iter()
                .map(|x| source_pos[net.node_index[x]].expect("validated demand"))
                .collect();
        }
        Ok(Layout {
            node_order,
            node_pos,
            edge_order,
            edge_pos,
            sources,
            source_pos,
            terminals,
            in_edges,
            out_edges,
            tail,
            head,
            demand_pos,
        })
    }

    pub fn num_sources(&self) -> usize {
        self.sources.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Network {
        let mut n = Network::new("tiny");
        n.add_node("s", NodeKind::Source).unwrap();
        n.add_node("v", NodeKind::Inner).unwrap();
        n.add_node("t", NodeKind::Terminal).unwrap();
        n.connect("s", "v").unwrap();
        n.connect("v", "t").unwrap();
        n.set_demand("t", ["s"]);
        n
    }

    #[test]
    fn terminal_out_edge_is_reported() {
        let mut n = Network::new("bad");
        n.add_node("t", NodeKind::Terminal).unwrap();
        n.add_node("s", NodeKind::Source).unwrap();
        n.add_edge("ts", "t", "s").unwrap();
        let names: Vec<_> = n.validate().iter().map(|v| v.name()).collect();
        assert!(names.contains(&"TerminalHasOutEdge"));
    }

    #[test]
    fn two_cycle_is_reported() {
        let mut n = Network::new("cyc");
        n.add_node("a", NodeKind::Inner).unwrap();
        n.add_node("b", NodeKind::Inner).unwrap();
        n.connect("a", "b").unwrap();
        n.connect("b", "a").unwrap();
        assert_eq!(
            n.validate(),
            vec![Violation::CycleDetected {
                nodes: vec!["a".into(), "b".into()]
            }]
        );
    }

    #[test]
    fn demand_checks() {
        let mut n = tiny();
        n.set_demand("t", ["s", "ghost"]);
        n.set_demand("v", ["s"]);
        let names: Vec<_> = n.validate().iter().map(|v| v.name()).collect();
        assert_eq!(names, vec!["UnknownDemandSource", "DemandOnNonTerminal"]);
    }

    #[test]
    fn union_rules() {
        let n = tiny();
        assert_eq!(n.union(&Network::new("")).unwrap(), n);
        assert!(matches!(n.union(&n), Err(NetError::NotDisjoint(_))));
        let u = n.union(&n.renamed("b.")).unwrap();
        assert!(u.validate().is_empty());
        assert_eq!(u.sources(), vec!["s", "b.s"]);
        assert_eq!(u.demand("b.t"), ["b.s".to_string()]);
    }

    #[test]
    fn direct_edge_support() {
        let n = tiny();
        let want: BTreeSet<String> = ["s".to_string()].into();
        assert_eq!(n.source_support("s->v").unwrap(), want);
        assert_eq!(n.source_support("v->t").unwrap(), want);
        assert_eq!(n.source_support("nope"), Err(NetError::NoSuchEdge("nope".into())));
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let n = tiny();
        assert_eq!(Network::parse(&n.to_text()).unwrap(), n);
        let text = "# comment\nnode s source\nnode s inner\n";
        assert_eq!(
            Network::parse(text),
            Err(NetError::Parse {
                line: 3,
                message: "identifier `s` is already used".into()
            })
        );
        assert!(matches!(
            Network::parse("node x wizard"),
            Err(NetError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn layout_orders() {
        let mut n = Network::new("order");
        n.add_node("z", NodeKind::Source).unwrap();
        n.add_node("a", NodeKind::Source).unwrap();
        n.add_node("m", NodeKind::Inner).unwrap();
        n.add_node("t", NodeKind::Terminal).unwrap();
        n.add_edge("e2", "z", "m").unwrap();
        n.add_edge("e1", "a", "m").unwrap();
        n.add_edge("e0", "m", "t").unwrap();
        n.set_demand("t", ["z"]);
        let l = Layout::new(&n).unwrap();
        assert_eq!(n.topological_order().unwrap(), vec!["a", "z", "m", "t"]);
        let ids: Vec<_> = l.edge_order.iter().map(|&e| n.edges()[e].id.as_str()).collect();
        assert_eq!(ids, vec!["e1", "e2", "e0"]);
        assert_eq!(l.sources, vec![0, 1]);
        assert_eq!(l.demand_pos[3], vec![0]);
    }
}
