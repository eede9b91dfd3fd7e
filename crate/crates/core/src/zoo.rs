//! Named networks and their explicit codes.
//!
//! Identifiers: nodes keep their textbook labels (`a`, `u1`, `m3`, `r5`, ...),
//! the middle edges of the Char constructions are `e1..e{q+3}`, every other
//! edge is `tail->head`. In the combined networks the shared sources are the
//! same node: `x1` becomes `a`, and `s` becomes `y` (N1) or `x` (N2).

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Domain, Matrix};
use crate::netmodel::{Network, NodeKind};
use crate::vlnc::{CodingPair, VlncCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZooError {
    #[error("invalid argument: {0}")]
    InvalidArg(String),
    #[error("unknown zoo entry `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn add_nodes(net: &mut Network, ids: &[String], kind: NodeKind) {
    for id in ids {
        net.add_node(id.clone(), kind).expect("zoo identifiers are unique");
    }
}

fn link(net: &mut Network, tail: &str, head: &str) {
    net.connect(tail, head).expect("zoo identifiers are unique");
}

fn names(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn check_param(what: &str, v: usize) -> Result<(), ZooError> {
    if v < 2 {
        return Err(ZooError::InvalidArg(format!("{what} must be at least 2, got {v}")));
    }
    Ok(())
}

/// Sources of the M-network and their demand pairs.
const M2_DEMANDS: [(&str, [&str; 2]); 4] = [
    ("t1", ["a", "x"]),
    ("t2", ["a", "y"]),
    ("t3", ["b", "x"]),
    ("t4", ["b", "y"]),
];

/// The M-network: 4 sources, 5 inner nodes, 4 terminals, 20 edges.
pub fn build_m2() -> Network {
    let mut net = Network::new("m2");
    m2_into(&mut net);
    net
}

fn m2_into(net: &mut Network) {
    add_nodes(net, &["a", "b", "x", "y"].map(String::from), NodeKind::Source);
    add_nodes(net, &["u1", "u2", "v1", "v2", "v3"].map(String::from), NodeKind::Inner);
    add_nodes(net, &names("t", 1..=4), NodeKind::Terminal);
    for (t, h) in [
        ("a", "u1"),
        ("b", "u1"),
        ("x", "u2"),
        ("y", "u2"),
        ("u1", "v1"),
        ("u1", "v3"),
        ("u2", "v2"),
        ("u2", "v3"),
    ] {
        link(net, t, h);
    }
    for i in 1..=3 {
        for j in 1..=4 {
            link(net, &format!("v{i}"), &format!("t{j}"));
        }
    }
    for (t, d) in M2_DEMANDS {
        net.set_demand(t, d);
    }
}

const M3_TRIPLES: [[&str; 3]; 3] = [["a", "b", "c"], ["r", "s", "w"], ["x", "y", "z"]];

/// Demand of terminal `t{k}` (k from 1) of the generalized M-network:
/// lexicographic over the product of the three triples.
pub fn m3_demand(k: usize) -> [&'static str; 3] {
    let i = k - 1;
    [M3_TRIPLES[0][i / 9], M3_TRIPLES[1][(i / 3) % 3], M3_TRIPLES[2][i % 3]]
}

/// Generalized M-network for m = 3: 9 sources, 8 inner nodes, 27 terminals.
pub fn build_m3() -> Network {
    let mut net = Network::new("m3");
    m3_into(&mut net);
    net
}

fn m3_into(net: &mut Network) {
    let sources: Vec<String> = M3_TRIPLES.iter().flatten().map(|s| s.to_string()).collect();
    add_nodes(net, &sources, NodeKind::Source);
    add_nodes(net, &names("u", 1..=3), NodeKind::Inner);
    add_nodes(net, &names("v", 1..=5), NodeKind::Inner);
    add_nodes(net, &names("t", 1..=27), NodeKind::Terminal);
    for (i, triple) in M3_TRIPLES.iter().enumerate() {
        for s in triple {
            link(net, s, &format!("u{}", i + 1));
        }
    }
    for i in 1..=3 {
        for j in [i, 4, 5] {
            link(net, &format!("u{i}"), &format!("v{j}"));
        }
    }
    for i in 1..=5 {
        for j in 1..=27 {
            link(net, &format!("v{i}"), &format!("t{j}"));
        }
    }
    for k in 1..=27 {
        net.set_demand(format!("t{k}"), m3_demand(k));
    }
}

/// Char-m network: m+2 sources, 2(m+3) inner nodes, m+3 terminals.
pub fn build_char_m(m: usize) -> Result<Network, ZooError> {
    check_param("m", m)?;
    let mut net = Network::new(format!("char-m:{m}"));
    add_nodes(&mut net, &names("x", 1..=m + 2), NodeKind::Source);
    add_nodes(&mut net, &names("u", 1..=m + 3), NodeKind::Inner);
    add_nodes(&mut net, &names("v", 1..=m + 3), NodeKind::Inner);
    add_nodes(&mut net, &names("r", 1..=m + 3), NodeKind::Terminal);
    for i in 1..=m + 2 {
        for j in (1..=m + 3).filter(|&j| j != i) {
            link(&mut net, &format!("x{i}"), &format!("u{j}"));
        }
    }
    for i in 1..=m + 3 {
        net.add_edge(format!("e{i}"), format!("u{i}"), format!("v{i}"))
            .expect("unique");
    }
    for i in 1..=m + 2 {
        link(&mut net, &format!("v{i}"), &format!("r{i}"));
        link(&mut net, &format!("v{}", m + 3), &format!("r{i}"));
    }
    for i in 2..=m + 2 {
        link(&mut net, &format!("v{i}"), &format!("r{}", m + 3));
    }
    for i in 1..=m + 2 {
        net.set_demand(format!("r{i}"), [format!("x{i}")]);
    }
    net.set_demand(format!("r{}", m + 3), ["x1"]);
    Ok(net)
}

/// Node names of a Char-q-s instance; `first` and `spare` stand for x1 and s.
#[derive(Debug, Clone)]
struct CharLabels {
    q: usize,
    first: String,
    spare: String,
}

impl CharLabels {
    fn x(&self, i: usize) -> String {
        if i == 1 {
            self.first.clone()
        } else {
            format!("x{i}")
        }
    }

    fn s(&self) -> &str {
        &self.spare
    }

    fn m(i: usize) -> String {
        format!("m{i}")
    }

    fn n(i: usize) -> String {
        format!("n{i}")
    }

    fn r(i: usize) -> String {
        format!("r{i}")
    }

    fn e(i: usize) -> String {
        format!("e{i}")
    }

    fn edge(t: &str, h: &str) -> String {
        format!("{t}->{h}")
    }

    /// Middle nodes m_j fed by x_i (i ≥ 1).
    fn x_targets(&self, i: usize) -> Vec<usize> {
        let q = self.q;
        if i == 1 {
            (1..=q + 1).chain([q + 3]).collect()
        } else {
            (2..=q + 2).filter(|&j| j != i).chain([q + 3]).collect()
        }
    }

    fn s_targets(&self) -> Vec<usize> {
        [1].into_iter().chain(4..=self.q + 3).collect()
    }
}

fn char_into(net: &mut Network, lab: &CharLabels, with_shared_sources: bool) {
    let q = lab.q;
    if with_shared_sources {
        add_nodes(net, &[lab.x(1), lab.s().to_string()], NodeKind::Source);
    }
    add_nodes(net, &names("x", 2..=q + 2), NodeKind::Source);
    add_nodes(net, &names("m", 1..=q + 3), NodeKind::Inner);
    add_nodes(net, &names("n", 1..=q + 3), NodeKind::Inner);
    add_nodes(net, &names("r", 1..=q + 3), NodeKind::Terminal);
    for i in 1..=q + 2 {
        for j in lab.x_targets(i) {
            link(net, &lab.x(i), &CharLabels::m(j));
        }
    }
    for j in lab.s_targets() {
        link(net, lab.s(), &CharLabels::m(j));
    }
    for i in 1..=q + 3 {
        net.add_edge(CharLabels::e(i), CharLabels::m(i), CharLabels::n(i))
            .expect("unique");
    }
    for i in 1..=q + 2 {
        link(net, &CharLabels::n(i), &CharLabels::r(i));
    }
    for i in 1..=q + 2 {
        link(net, &CharLabels::n(q + 3), &CharLabels::r(i));
        link(net, &CharLabels::n(i), &CharLabels::r(q + 3));
    }
    for i in 2..=q + 1 {
        link(net, &lab.x(i), "r1");
    }
    link(net, &lab.x(1), &CharLabels::r(q + 2));
    link(net, lab.s(), "r2");
    link(net, lab.s(), "r3");
    net.set_demand("r1", [lab.x(q + 2)]);
    for i in 2..=q + 2 {
        net.set_demand(CharLabels::r(i), [lab.x(i)]);
    }
    net.set_demand(CharLabels::r(q + 3), [lab.x(1)]);
}

/// Char-q-s network: q+3 sources (x1..x{q+2} and the undemanded s),
/// 2(q+3) inner nodes, q+3 terminals.
pub fn build_char_qs(q: usize) -> Result<Network, ZooError> {
    check_param("q", q)?;
    let mut net = Network::new(format!("char-qs:{q}"));
    let lab = CharLabels {
        q,
        first: "x1".into(),
        spare: "s".into(),
    };
    // Declaration order keeps x1 first and s last among the sources.
    net.add_node("x1", NodeKind::Source).expect("unique");
    let mut tmp = Network::new("");
    char_into(&mut tmp, &lab, false);
    for n in tmp.nodes().iter().filter(|n| n.kind == NodeKind::Source) {
        net.add_node(n.id.clone(), n.kind).expect("unique");
    }
    net.add_node("s", NodeKind::Source).expect("unique");
    for n in tmp.nodes().iter().filter(|n| n.kind != NodeKind::Source) {
        net.add_node(n.id.clone(), n.kind).expect("unique");
    }
    for e in tmp.edges() {
        net.add_edge(e.id.clone(), e.tail.clone(), e.head.clone())
            .expect("unique");
    }
    for (t, d) in tmp.demands() {
        net.set_demand(t.clone(), d.iter().cloned());
    }
    Ok(net)
}

/// Char-q-s with x1 and s renamed to `first` and `spare`, as embedded in
/// the combined networks.
pub fn build_char_q_labeled(q: usize, first: &str, spare: &str) -> Result<Network, ZooError> {
    check_param("q", q)?;
    if first == spare || [first, spare].iter().any(|s| s.is_empty() || s.contains(char::is_whitespace)) {
        return Err(ZooError::InvalidArg("source labels must be distinct words".into()));
    }
    let mut net = Network::new(format!("char-q-{spare}:{q}"));
    let lab = CharLabels {
        q,
        first: first.into(),
        spare: spare.into(),
    };
    char_into(&mut net, &lab, true);
    Ok(net)
}

/// M-network joined with Char-q-y (x1 = a, s = y) plus the edge (n1, t4).
pub fn build_n1(q: usize) -> Result<Network, ZooError> {
    check_param("q", q)?;
    let mut net = Network::new(format!("n1:{q}"));
    m2_into(&mut net);
    char_into(&mut net, &n1_labels(q), false);
    link(&mut net, "n1", "t4");
    Ok(net)
}

fn n1_labels(q: usize) -> CharLabels {
    CharLabels {
        q,
        first: "a".into(),
        spare: "y".into(),
    }
}

fn n2_labels(q: usize) -> CharLabels {
    CharLabels {
        q,
        first: "a".into(),
        spare: "x".into(),
    }
}

/// Generalized M-network joined with Char-q'-x (x1 = a, s = x) plus the
/// direct edges into t7..t9, t16..t26 and the edge (n1, t25).
pub fn build_n2(q: usize) -> Result<Network, ZooError> {
    check_param("q'", q)?;
    let mut net = Network::new(format!("n2:{q}"));
    m3_into(&mut net);
    char_into(&mut net, &n2_labels(q), false);
    for t in [7, 8, 9, 16, 17, 18] {
        link(&mut net, "w", &format!("t{t}"));
    }
    for t in 19..=24 {
        link(&mut net, "c", &format!("t{t}"));
    }
    link(&mut net, "a", "t25");
    link(&mut net, "y", "t26");
    link(&mut net, "n1", "t25");
    Ok(net)
}

fn ident(dom: &Domain, d: usize) -> Matrix {
    Matrix::identity(dom, d)
}

fn minus_ident(dom: &Domain, d: usize) -> Matrix {
    Matrix::identity(dom, d).neg()
}

/// Additive Char code: e1 = x1, e_j = Σ_{i≥2, i≠j} x_i, decoding by
/// subtraction only. Valid over every field and ring.
fn char_additive_into(code: &mut VlncCode, lab: &CharLabels) {
    let dom = code.domain().clone();
    let d = code.dim();
    let q = lab.q;
    let id = ident(&dom, d);
    let mid = minus_ident(&dom, d);
    let x1 = lab.x(1);
    let first = CharLabels::edge(&x1, "m1");
    code.put(CodingPair::src(&x1, &first), id.clone());
    code.put(CodingPair::adj(&first, "e1"), id.clone());
    for j in 2..=q + 3 {
        for i in (2..=q + 2).filter(|&i| i != j) {
            let edge = CharLabels::edge(&lab.x(i), &CharLabels::m(j));
            code.put(CodingPair::src(&lab.x(i), &edge), id.clone());
            code.put(CodingPair::adj(&edge, &CharLabels::e(j)), id.clone());
        }
    }
    char_forwarding(code, q);
    for i in 2..=q + 1 {
        let edge = CharLabels::edge(&lab.x(i), "r1");
        code.put(CodingPair::src(&lab.x(i), &edge), id.clone());
        code.put(CodingPair::dec(&edge, "r1", 0), mid.clone());
    }
    let top = CharLabels::n(q + 3);
    code.put(CodingPair::dec(&CharLabels::edge(&top, "r1"), "r1", 0), id.clone());
    for i in 2..=q + 2 {
        let r = CharLabels::r(i);
        code.put(CodingPair::dec(&CharLabels::edge(&top, &r), &r, 0), id.clone());
        code.put(
            CodingPair::dec(&CharLabels::edge(&CharLabels::n(i), &r), &r, 0),
            mid.clone(),
        );
    }
    let last = CharLabels::r(q + 3);
    code.put(CodingPair::dec(&CharLabels::edge("n1", &last), &last, 0), id);
}

/// n_i forwards e_i unchanged on every out-edge.
fn char_forwarding(code: &mut VlncCode, q: usize) {
    let id = ident(code.domain(), code.dim());
    for i in 1..=q + 2 {
        let n = CharLabels::n(i);
        code.put(
            CodingPair::adj(&CharLabels::e(i), &CharLabels::edge(&n, &CharLabels::r(i))),
            id.clone(),
        );
        code.put(
            CodingPair::adj(&CharLabels::e(i), &CharLabels::edge(&n, &CharLabels::r(q + 3))),
            id.clone(),
        );
        code.put(
            CodingPair::adj(
                &CharLabels::e(q + 3),
                &CharLabels::edge(&CharLabels::n(q + 3), &CharLabels::r(i)),
            ),
            id.clone(),
        );
    }
}

/// Sum code: every middle edge carries the sum of its inputs, so
/// e1 = x1 + s and e_{q+3} = s + Σ x_i. Terminal r_{q+3} decodes x1 as
/// Σ_{i≤q+2} e_i, which is correct exactly when the characteristic divides q.
fn char_charp_into(code: &mut VlncCode, lab: &CharLabels) {
    let dom = code.domain().clone();
    let d = code.dim();
    let q = lab.q;
    let id = ident(&dom, d);
    let mid = minus_ident(&dom, d);
    for i in 1..=q + 2 {
        for j in lab.x_targets(i) {
            let edge = CharLabels::edge(&lab.x(i), &CharLabels::m(j));
            code.put(CodingPair::src(&lab.x(i), &edge), id.clone());
            code.put(CodingPair::adj(&edge, &CharLabels::e(j)), id.clone());
        }
    }
    for j in lab.s_targets() {
        let edge = CharLabels::edge(lab.s(), &CharLabels::m(j));
        code.put(CodingPair::src(lab.s(), &edge), id.clone());
        code.put(CodingPair::adj(&edge, &CharLabels::e(j)), id.clone());
    }
    char_forwarding(code, q);
    let top = CharLabels::n(q + 3);
    let dec_top = |code: &mut VlncCode, r: &str| {
        code.put(CodingPair::dec(&CharLabels::edge(&top, r), r, 0), id.clone());
    };
    // r1: e_{q+3} - e1 - Σ_{2..q+1} x_i.
    dec_top(code, "r1");
    code.put(CodingPair::dec("n1->r1", "r1", 0), mid.clone());
    for i in 2..=q + 1 {
        let edge = CharLabels::edge(&lab.x(i), "r1");
        code.put(CodingPair::src(&lab.x(i), &edge), id.clone());
        code.put(CodingPair::dec(&edge, "r1", 0), mid.clone());
    }
    // r2, r3: e_{q+3} - e_i - s.
    for i in [2, 3] {
        let r = CharLabels::r(i);
        dec_top(code, &r);
        code.put(
            CodingPair::dec(&CharLabels::edge(&CharLabels::n(i), &r), &r, 0),
            mid.clone(),
        );
        let edge = CharLabels::edge(lab.s(), &r);
        code.put(CodingPair::src(lab.s(), &edge), id.clone());
        code.put(CodingPair::dec(&edge, &r, 0), mid.clone());
    }
    // r4..r{q+1}: e_{q+3} - e_j.
    for j in 4..=q + 1 {
        let r = CharLabels::r(j);
        dec_top(code, &r);
        code.put(
            CodingPair::dec(&CharLabels::edge(&CharLabels::n(j), &r), &r, 0),
            mid.clone(),
        );
    }
    // r{q+2}: e_{q+3} - e_{q+2} - x1.
    let r = CharLabels::r(q + 2);
    dec_top(code, &r);
    code.put(
        CodingPair::dec(&CharLabels::edge(&CharLabels::n(q + 2), &r), &r, 0),
        mid.clone(),
    );
    let edge = CharLabels::edge(&lab.x(1), &r);
    code.put(CodingPair::src(&lab.x(1), &edge), id.clone());
    code.put(CodingPair::dec(&edge, &r, 0), mid);
    // r{q+3}: Σ_{i≤q+2} e_i.
    let last = CharLabels::r(q + 3);
    for i in 1..=q + 2 {
        code.put(
            CodingPair::dec(&CharLabels::edge(&CharLabels::n(i), &last), &last, 0),
            id.clone(),
        );
    }
}

/// Additive code on Char-q-s over any field or ring, any dimension.
pub fn code_char_qs_additive(q: usize, domain: &Domain, dim: usize) -> Result<VlncCode, ZooError> {
    check_param("q", q)?;
    check_dim(dim)?;
    let mut code = VlncCode::new(format!("char-qs-additive:{q}"), domain, dim);
    char_additive_into(
        &mut code,
        &CharLabels {
            q,
            first: "x1".into(),
            spare: "s".into(),
        },
    );
    Ok(code)
}

/// Whether the characteristic of `domain` divides `q`.
pub fn characteristic_divides(q: usize, domain: &Domain) -> bool {
    q % domain.characteristic() as usize == 0
}

/// Scalar sum code on Char-q-s. Always constructible; it verifies only when
/// [`characteristic_divides`] holds, failing at r{q+3} otherwise.
pub fn code_char_qs_charp(q: usize, domain: &Domain) -> Result<VlncCode, ZooError> {
    check_param("q", q)?;
    let mut code = VlncCode::new(format!("char-qs-charp:{q}"), domain, 1);
    char_charp_into(
        &mut code,
        &CharLabels {
            q,
            first: "x1".into(),
            spare: "s".into(),
        },
    );
    Ok(code)
}

fn check_dim(dim: usize) -> Result<(), ZooError> {
    if dim == 0 {
        return Err(ZooError::InvalidArg("dimension must be positive".into()));
    }
    Ok(())
}

/// Coefficients for the M-network constructions: `unit(i, j)` is the
/// matrix unit E_ij (1-based) and `one` the identity, either as field
/// matrices of dimension 2 or 3 or as scalars of the matrix ring.
struct Units<'a> {
    unit: &'a dyn Fn(usize, usize) -> Matrix,
    one: Matrix,
}

fn field_units(dom: &Domain, d: usize) -> (Box<dyn Fn(usize, usize) -> Matrix>, Matrix) {
    let dom2 = dom.clone();
    (
        Box::new(move |i, j| Matrix::unit(&dom2, d, i - 1, j - 1)),
        Matrix::identity(dom, d),
    )
}

/// Row-splitting code on the M-network: u1->v1 = [a1 b1], u1->v3 = [a2 b2],
/// u2->v2 = [x1 y1], u2->v3 = [x2 y2]; v3 sends each terminal the second
/// rows of its two demands.
fn m2_code_into(code: &mut VlncCode, u: &Units) {
    let idx = |s: &str| match s {
        "a" | "x" => 1,
        _ => 2,
    };
    for (s, hub) in [("a", "u1"), ("b", "u1"), ("x", "u2"), ("y", "u2")] {
        let edge = format!("{s}->{hub}");
        code.put(CodingPair::src(s, &edge), u.one.clone());
        let (first, second) = if hub == "u1" { ("u1->v1", "u1->v3") } else { ("u2->v2", "u2->v3") };
        code.put(CodingPair::adj(&edge, first), (u.unit)(idx(s), 1));
        code.put(CodingPair::adj(&edge, second), (u.unit)(idx(s), 2));
    }
    for (t, [alpha, beta]) in M2_DEMANDS {
        code.put(CodingPair::adj("u1->v1", &format!("v1->{t}")), u.one.clone());
        code.put(CodingPair::adj("u2->v2", &format!("v2->{t}")), u.one.clone());
        let v3 = format!("v3->{t}");
        code.put(CodingPair::adj("u1->v3", &v3), (u.unit)(1, idx(alpha)));
        code.put(CodingPair::adj("u2->v3", &v3), (u.unit)(2, idx(beta)));
        code.put(CodingPair::dec(&format!("v1->{t}"), t, 0), (u.unit)(1, idx(alpha)));
        code.put(CodingPair::dec(&v3, t, 0), (u.unit)(2, 1));
        code.put(CodingPair::dec(&format!("v2->{t}"), t, 1), (u.unit)(1, idx(beta)));
        code.put(CodingPair::dec(&v3, t, 1), (u.unit)(2, 2));
    }
}

/// Two-dimensional M-network code over any field.
pub fn code_m2_dim2(domain: &Domain) -> Result<VlncCode, ZooError> {
    domain.require_field()?;
    let mut code = VlncCode::new("m2-dim2", domain, 2);
    let (unit, one) = field_units(domain, 2);
    m2_code_into(&mut code, &Units { unit: &*unit, one });
    Ok(code)
}

/// Two-dimensional code on N1(q) over any field: the M-network code plus
/// the additive Char code with e1 = a.
pub fn code_n1_dim2(q: usize, domain: &Domain) -> Result<VlncCode, ZooError> {
    check_param("q", q)?;
    domain.require_field()?;
    let mut code = VlncCode::new(format!("n1-dim2:{q}"), domain, 2);
    let (unit, one) = field_units(domain, 2);
    m2_code_into(&mut code, &Units { unit: &*unit, one });
    char_additive_into(&mut code, &n1_labels(q));
    Ok(code)
}

/// Scalar code on N1(q): e11 = a, e13 = b, e22 = x, e23 = y, the sum code
/// on the Char part (e1 = a + y), and t4 recovers y from (n1->t4) - (v1->t4).
/// Verifies exactly when the characteristic divides q.
pub fn code_n1_scalar_charp(q: usize, domain: &Domain) -> Result<VlncCode, ZooError> {
    check_param("q", q)?;
    let mut code = VlncCode::new(format!("n1-scalar-charp:{q}"), domain, 1);
    let one = ident(domain, 1);
    for (s, hub, out) in [("a", "u1", "u1->v1"), ("b", "u1", "u1->v3"), ("x", "u2", "u2->v2"), ("y", "u2", "u2->v3")] {
        let edge = format!("{s}->{hub}");
        code.put(CodingPair::src(s, &edge), one.clone());
        code.put(CodingPair::adj(&edge, out), one.clone());
    }
    for t in ["t1", "t2", "t3", "t4"] {
        code.put(CodingPair::adj("u1->v1", &format!("v1->{t}")), one.clone());
        code.put(CodingPair::adj("u2->v2", &format!("v2->{t}")), one.clone());
        let from = if t == "t2" { "u2->v3" } else { "u1->v3" };
        code.put(CodingPair::adj(from, &format!("v3->{t}")), one.clone());
    }
    code.put(CodingPair::dec("v1->t1", "t1", 0), one.clone());
    code.put(CodingPair::dec("v2->t1", "t1", 1), one.clone());
    code.put(CodingPair::dec("v1->t2", "t2", 0), one.clone());
    code.put(CodingPair::dec("v3->t2", "t2", 1), one.clone());
    code.put(CodingPair::dec("v3->t3", "t3", 0), one.clone());
    code.put(CodingPair::dec("v2->t3", "t3", 1), one.clone());
    code.put(CodingPair::dec("v3->t4", "t4", 0), one.clone());
    code.put(CodingPair::adj("e1", "n1->t4"), one.clone());
    code.put(CodingPair::dec("n1->t4", "t4", 1), one.clone());
    code.put(CodingPair::dec("v1->t4", "t4", 1), one.neg());
    char_charp_into(&mut code, &n1_labels(q));
    Ok(code)
}

/// Row-splitting code on the generalized M-network, dimension 3: u_i->v_i,
/// u_i->v4, u_i->v5 carry the first, second and third components of the
/// triple at u_i; v4 and v5 send each terminal the matching components of
/// its three demands.
fn m3_code_into(code: &mut VlncCode) {
    let dom = code.domain().clone();
    let unit = |i: usize, j: usize| Matrix::unit(&dom, 3, i - 1, j - 1);
    let id = ident(&dom, 3);
    let pos = |s: &str| -> usize {
        M3_TRIPLES
            .iter()
            .find_map(|t| t.iter().position(|x| *x == s))
            .expect("source of a triple")
            + 1
    };
    for (i, triple) in M3_TRIPLES.iter().enumerate() {
        let hub = format!("u{}", i + 1);
        for s in triple {
            let edge = format!("{s}->{hub}");
            code.put(CodingPair::src(s, &edge), id.clone());
            for (comp, v) in [(1, i + 1), (2, 4), (3, 5)] {
                code.put(
                    CodingPair::adj(&edge, &format!("{hub}->v{v}")),
                    unit(pos(s), comp),
                );
            }
        }
    }
    for k in 1..=27 {
        let t = format!("t{k}");
        let dem = m3_demand(k);
        for (i, s) in dem.iter().enumerate() {
            let hub = format!("u{}", i + 1);
            let own = format!("v{}", i + 1);
            code.put(
                CodingPair::adj(&format!("{hub}->{own}"), &format!("{own}->{t}")),
                id.clone(),
            );
            for v in [4, 5] {
                code.put(
                    CodingPair::adj(&format!("{hub}->v{v}"), &format!("v{v}->{t}")),
                    unit(i + 1, pos(s)),
                );
            }
            code.put(CodingPair::dec(&format!("{own}->{t}"), &t, i), unit(1, pos(s)));
            code.put(CodingPair::dec(&format!("v4->{t}"), &t, i), unit(2, i + 1));
            code.put(CodingPair::dec(&format!("v5->{t}"), &t, i), unit(3, i + 1));
        }
    }
}

/// Three-dimensional code on the generalized M-network over any field.
pub fn code_m3_dim3(domain: &Domain) -> Result<VlncCode, ZooError> {
    domain.require_field()?;
    let mut code = VlncCode::new("m3-dim3", domain, 3);
    m3_code_into(&mut code);
    Ok(code)
}

/// Three-dimensional code on N2(q') over any field: the generalized
/// M-network code plus the additive Char code with e1 = a.
pub fn code_n2_dim3(q: usize, domain: &Domain) -> Result<VlncCode, ZooError> {
    check_param("q'", q)?;
    domain.require_field()?;
    let mut code = VlncCode::new(format!("n2-dim3:{q}"), domain, 3);
    m3_code_into(&mut code);
    char_additive_into(&mut code, &n2_labels(q));
    Ok(code)
}

/// The alphabet M_2(Z_2) of 2×2 binary matrices.
pub fn ring16() -> Domain {
    Domain::ring(2, 2).expect("M_2(Z_2) is supported")
}

/// Element E_ij (1-based) of M_2(Z_2) as a 1×1 matrix.
pub fn ring16_unit(i: usize, j: usize) -> Matrix {
    let dom = ring16();
    let mut digits = [0u32; 4];
    digits[(i - 1) * 2 + (j - 1)] = 1;
    let v = dom.from_digits(&digits).expect("binary digits");
    Matrix::new(&dom, 1, 1, vec![v]).expect("1x1")
}

/// Scalar code on N1(q) over M_2(Z_2): the M-network row-splitting code
/// with matrix units as scalars, plus the additive Char code with e1 = a.
pub fn code_n1_ring16(q: usize) -> Result<VlncCode, ZooError> {
    check_param("q", q)?;
    let dom = ring16();
    let mut code = VlncCode::new(format!("n1-ring16:{q}"), &dom, 1);
    m2_code_into(
        &mut code,
        &Units {
            unit: &ring16_unit,
            one: Matrix::identity(&dom, 1),
        },
    );
    char_additive_into(&mut code, &n1_labels(q));
    Ok(code)
}

/// Claimed set of characteristics admitting a d-dimensional solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClaim {
    /// Every prime.
    All,
    /// No prime.
    Empty,
    /// Primes dividing the given integer.
    Dividing(usize),
    /// No statement for this dimension.
    Unknown,
}

impl CharClaim {
    pub fn contains(self, p: u32) -> Option<bool> {
        match self {
            CharClaim::All => Some(true),
            CharClaim::Empty => Some(false),
            CharClaim::Dividing(m) => Some(m % p as usize == 0),
            CharClaim::Unknown => None,
        }
    }
}

impl fmt::Display for CharClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharClaim::All => write!(f, "all primes"),
            CharClaim::Empty => write!(f, "no prime"),
            CharClaim::Dividing(m) => write!(f, "primes dividing {m}"),
            CharClaim::Unknown => write!(f, "unknown"),
        }
    }
}

/// A named, parameterized network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZooEntry {
    M2,
    M3,
    CharM(usize),
    CharQs(usize),
    N1(usize),
    N2(usize),
}

impl ZooEntry {
    /// Parse a mnemonic such as `m2`, `char-m:2` or `n1:3`.
    pub fn parse(mnemonic: &str) -> Result<ZooEntry, ZooError> {
        let (head, param) = match mnemonic.split_once(':') {
            Some((h, p)) => {
                let v: usize = p
                    .parse()
                    .map_err(|_| ZooError::InvalidArg(format!("bad parameter in `{mnemonic}`")))?;
                check_param("parameter", v)?;
                (h, Some(v))
            }
            None => (mnemonic, None),
        };
        let need = || param.ok_or_else(|| ZooError::InvalidArg(format!("`{head}` needs a parameter, e.g. `{head}:2`")));
        match head {
            "m2" if param.is_none() => Ok(ZooEntry::M2),
            "m3" if param.is_none() => Ok(ZooEntry::M3),
            "char-m" => Ok(ZooEntry::CharM(need()?)),
            "char-qs" => Ok(ZooEntry::CharQs(need()?)),
            "n1" => Ok(ZooEntry::N1(need()?)),
            "n2" => Ok(ZooEntry::N2(need()?)),
            _ => Err(ZooError::Unknown(mnemonic.into())),
        }
    }

    pub fn mnemonic(&self) -> String {
        match self {
            ZooEntry::M2 => "m2".into(),
            ZooEntry::M3 => "m3".into(),
            ZooEntry::CharM(m) => format!("char-m:{m}"),
            ZooEntry::CharQs(q) => format!("char-qs:{q}"),
            ZooEntry::N1(q) => format!("n1:{q}"),
            ZooEntry::N2(q) => format!("n2:{q}"),
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            ZooEntry::M2 => "M-network (4 sources, 4 terminals)",
            ZooEntry::M3 => "generalized M-network, m = 3 (9 sources, 27 terminals)",
            ZooEntry::CharM(_) => "Char-m network",
            ZooEntry::CharQs(_) => "Char-q-s network (source s is never demanded)",
            ZooEntry::N1(_) => "M-network + Char-q-y + edge (n1, t4)",
            ZooEntry::N2(_) => "generalized M-network + Char-q'-x + direct edges",
        }
    }

    pub fn network(&self) -> Network {
        match *self {
            ZooEntry::M2 => build_m2(),
            ZooEntry::M3 => build_m3(),
            ZooEntry::CharM(m) => build_char_m(m).expect("parameter checked"),
            ZooEntry::CharQs(q) => build_char_qs(q).expect("parameter checked"),
            ZooEntry::N1(q) => build_n1(q).expect("parameter checked"),
            ZooEntry::N2(q) => build_n2(q).expect("parameter checked"),
        }
    }

    /// Known characteristic set for dimension `d`.
    pub fn claim(&self, d: usize) -> CharClaim {
        match *self {
            ZooEntry::M2 if d % 2 == 0 => CharClaim::All,
            ZooEntry::M2 => CharClaim::Empty,
            ZooEntry::M3 if d % 3 == 0 => CharClaim::All,
            ZooEntry::M3 => CharClaim::Empty,
            ZooEntry::CharM(m) => CharClaim::Dividing(m),
            ZooEntry::CharQs(_) => CharClaim::All,
            ZooEntry::N1(_) if d % 2 == 0 => CharClaim::All,
            ZooEntry::N1(q) => CharClaim::Dividing(q),
            ZooEntry::N2(_) if d % 3 == 0 => CharClaim::All,
            ZooEntry::N2(q) if d == 2 || d == 5 => CharClaim::Dividing(q),
            ZooEntry::N2(_) if d == 1 => CharClaim::Empty,
            ZooEntry::N2(_) => CharClaim::Unknown,
        }
    }

    /// Names accepted by [`ZooEntry::code`].
    pub fn code_names(&self) -> &'static [&'static str] {
        match self {
            ZooEntry::M2 => &["dim2"],
            ZooEntry::M3 => &["dim3"],
            ZooEntry::CharM(_) => &[],
            ZooEntry::CharQs(_) => &["additive", "charp"],
            ZooEntry::N1(_) => &["dim2", "scalar-charp", "ring16"],
            ZooEntry::N2(_) => &["dim3"],
        }
    }

    /// Explicit code by name. `domain` is ignored for `ring16`; `dim` is
    /// used only by `additive`.
    pub fn code(&self, name: &str, domain: &Domain, dim: usize) -> Result<VlncCode, ZooError> {
        match (*self, name) {
            (ZooEntry::M2, "dim2") => code_m2_dim2(domain),
            (ZooEntry::M3, "dim3") => code_m3_dim3(domain),
            (ZooEntry::CharQs(q), "additive") => code_char_qs_additive(q, domain, dim),
            (ZooEntry::CharQs(q), "charp") => code_char_qs_charp(q, domain),
            (ZooEntry::N1(q), "dim2") => code_n1_dim2(q, domain),
            (ZooEntry::N1(q), "scalar-charp") => code_n1_scalar_charp(q, domain),
            (ZooEntry::N1(q), "ring16") => code_n1_ring16(q),
            (ZooEntry::N2(q), "dim3") => code_n2_dim3(q, domain),
            _ => Err(ZooError::Unknown(format!("{}/{name}", self.mnemonic()))),
        }
    }
}

/// Representative entries for listings.
pub fn catalog() -> Vec<ZooEntry> {
    vec![
        ZooEntry::M2,
        ZooEntry::M3,
        ZooEntry::CharM(2),
        ZooEntry::CharQs(2),
        ZooEntry::N1(2),
        ZooEntry::N2(2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vlnc::verify_solution;

    #[test]
    fn m2_shape() {
        let n = build_m2();
        assert!(n.validate().is_empty());
        assert_eq!(n.edges().len(), 20);
        assert_eq!(n.demand("t1"), ["a", "x"]);
    }

    #[test]
    fn char_qs_edge_count() {
        let n = build_char_qs(2).unwrap();
        assert!(n.validate().is_empty());
        assert_eq!(n.edges().len(), 38);
        assert_eq!(n.sources(), vec!["x1", "x2", "x3", "x4", "s"]);
    }

    #[test]
    fn params_are_checked() {
        assert!(build_char_m(1).is_err());
        assert!(build_char_qs(0).is_err());
        assert!(ZooEntry::parse("n1").is_err());
        assert!(ZooEntry::parse("m2:3").is_err());
        assert_eq!(ZooEntry::parse("char-qs:3").unwrap(), ZooEntry::CharQs(3));
    }

    #[test]
    fn charp_code_char2() {
        let gf2 = Domain::field(2, 1).unwrap();
        let rep = verify_solution(&build_char_qs(2).unwrap(), &code_char_qs_charp(2, &gf2).unwrap()).unwrap();
        assert!(rep.pass);
    }

    fn passes(net: &Network, code: &VlncCode) -> Vec<String> {
        verify_solution(net, code)
            .unwrap()
            .failed_terminals()
            .into_iter()
            .map(String::from)
            .collect()
    }

    #[test]
    fn every_code_verifies() {
        for p in [2, 3, 5] {
            let f = Domain::prime_field(p).unwrap();
            assert!(passes(&build_m2(), &code_m2_dim2(&f).unwrap()).is_empty());
            assert!(passes(&build_n1(2).unwrap(), &code_n1_dim2(2, &f).unwrap()).is_empty());
            assert!(passes(&build_n2(2).unwrap(), &code_n2_dim3(2, &f).unwrap()).is_empty());
            assert!(passes(&build_m3(), &code_m3_dim3(&f).unwrap()).is_empty());
            for q in [2, 3] {
                let net = build_char_qs(q).unwrap();
                assert!(passes(&net, &code_char_qs_additive(q, &f, 1).unwrap()).is_empty());
            }
        }
        assert!(passes(&build_char_qs(2).unwrap(), &code_char_qs_additive(2, &ring16(), 1).unwrap()).is_empty());
        assert!(passes(&build_n1(2).unwrap(), &code_n1_ring16(2).unwrap()).is_empty());
        let gf2 = Domain::prime_field(2).unwrap();
        let gf3 = Domain::prime_field(3).unwrap();
        assert!(passes(&build_n1(2).unwrap(), &code_n1_scalar_charp(2, &gf2).unwrap()).is_empty());
        assert!(passes(&build_n1(3).unwrap(), &code_n1_scalar_charp(3, &gf3).unwrap()).is_empty());
    }

    #[test]
    fn charp_fails_only_at_last_terminal() {
        let gf3 = Domain::prime_field(3).unwrap();
        assert_eq!(passes(&build_char_qs(2).unwrap(), &code_char_qs_charp(2, &gf3).unwrap()), ["r5"]);
        assert_eq!(passes(&build_n1(2).unwrap(), &code_n1_scalar_charp(2, &gf3).unwrap()), ["r5"]);
        assert!(!characteristic_divides(2, &gf3));
    }

    #[test]
    fn ring_code_swapped_factors_fail() {
        let net = build_n1(2).unwrap();
        let mut code = code_n1_ring16(2).unwrap();
        assert_eq!(code.get(&CodingPair::dec("v3->t1", "t1", 0)), Some(&ring16_unit(2, 1)));
        code.set(CodingPair::dec("v3->t1", "t1", 0), ring16_unit(1, 2)).unwrap();
        assert_eq!(passes(&net, &code), ["t1"]);
    }

    #[test]
    fn builders_validate() {
        for e in catalog().into_iter().chain([ZooEntry::CharM(3), ZooEntry::N1(3), ZooEntry::N2(3)]) {
            let net = e.network();
            assert!(net.validate().is_empty(), "{}", e.mnemonic());
            assert_eq!(ZooEntry::parse(&e.mnemonic()).unwrap(), e);
        }
    }

    #[test]
    fn m3_demand_order() {
        assert_eq!(m3_demand(1), ["a", "r", "x"]);
        assert_eq!(m3_demand(14), ["b", "s", "y"]);
        assert_eq!(m3_demand(27), ["c", "w", "z"]);
    }
}
