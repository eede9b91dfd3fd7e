//! Discrete polymatroids: axioms, membership, representations by subspace
//! families, and the rank conditions a vector linear solution induces.
//!
//! Subsets of the ground set {1..n} are `u64` bitmasks, element i at bit i-1.
//! Oracles over larger ground sets also answer queries on element lists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::matrix::rref_in_place;
use crate::algebra::{rref_bases, AlgebraError, Domain, Matrix};
use crate::netmodel::{Layout, NetError, Network, NodeKind};
use crate::vlnc::{evaluate_with_layout, selector, verify_solution, VlncCode, VlncError};

/// Largest ground set with a materialized rank table.
pub const MAX_TABLE_GROUND: usize = 24;

/// Representability search limits: ground size, ambient dimension, alphabet size.
pub const SEARCH_LIMITS: (usize, usize, usize) = (4, 4, 3);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("rank table has {got} entries, expected {expected}")]
    IncompleteRank { expected: usize, got: usize },
    #[error("not a polymatroid: {0}")]
    NotPolymatroid(AxiomViolation),
    #[error("ground map is not total: missing `{0}`")]
    IncompleteMap(String),
    #[error("code is not a solution; failing terminals: {0:?}")]
    NotASolution(Vec<String>),
    #[error("invalid argument: {0}")]
    InvalidArg(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Vlnc(#[from] VlncError),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// 1-based elements of a bitmask.
pub fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Bitmask of 1-based elements.
pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

fn fmt_set(mask: u64) -> String {
    let parts: Vec<String> = mask_elements(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Anything that answers rank queries on subsets of a ground set.
pub trait RankOracle {
    fn ground_size(&self) -> usize;

    /// Rank of a list of 0-based ground elements.
    fn rank_of(&self, elements: &[usize]) -> u32;

    /// Rank of a bitmask; only for ground sets of at most 64 elements.
    fn rank(&self, mask: u64) -> u32 {
        let elements: Vec<usize> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
        self.rank_of(&elements)
    }
}

/// Full rank table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    n: usize,
    table: Vec<u32>,
}

impl RankFunction {
    /// `table[mask]` is the rank of `mask`; exactly 2^n entries.
    pub fn new(n: usize, table: Vec<u32>) -> Result<Self, PolyError> {
        if n > MAX_TABLE_GROUND {
            return Err(PolyError::InvalidArg(format!(
                "ground size {n} exceeds table limit {MAX_TABLE_GROUND}"
            )));
        }
        if table.len() != 1 << n {
            return Err(PolyError::IncompleteRank {
                expected: 1 << n,
                got: table.len(),
            });
        }
        Ok(RankFunction { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> u32) -> Result<Self, PolyError> {
        Self::new(n, (0..1u64 << n.min(MAX_TABLE_GROUND + 1)).map(f).collect())
    }

    /// Materialize any oracle.
    pub fn from_oracle(oracle: &(impl RankOracle + Sync)) -> Result<Self, PolyError> {
        let n = oracle.ground_size();
        if n > MAX_TABLE_GROUND {
            return Err(PolyError::InvalidArg(format!(
                "ground size {n} exceeds table limit {MAX_TABLE_GROUND}"
            )));
        }
        let table = (0..1u64 << n).into_par_iter().map(|m| oracle.rank(m)).collect();
        Self::new(n, table)
    }

    pub fn zero(n: usize) -> Result<Self, PolyError> {
        Self::from_fn(n, |_| 0)
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `rank <n>` then one `set <mask> <value>` line per subset.
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\n", self.n);
        for (m, v) in self.table.iter().enumerate() {
            out.push_str(&format!("set {m} {v}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut n = None;
        let mut entries: BTreeMap<u64, u32> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| PolyError::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["rank", size] if n.is_none() => {
                    let v: usize = size.parse().map_err(|_| err("bad ground size"))?;
                    if v > MAX_TABLE_GROUND {
                        return Err(err("ground size too large"));
                    }
                    n = Some(v);
                }
                ["set", mask, value] => {
                    let size = n.ok_or_else(|| err("`set` before `rank` header"))?;
                    let m: u64 = mask.parse().map_err(|_| err("bad mask"))?;
                    let v: u32 = value.parse().map_err(|_| err("bad value"))?;
                    if m >> size != 0 {
                        return Err(err("mask outside ground set"));
                    }
                    if entries.insert(m, v).is_some() {
                        return Err(err("subset set twice"));
                    }
                }
                _ => return Err(err("expected `rank <n>` or `set <mask> <value>`")),
            }
        }
        let n = n.ok_or(PolyError::Parse {
            line: 0,
            message: "missing `rank` header".into(),
        })?;
        if entries.len() != 1 << n {
            return Err(PolyError::IncompleteRank {
                expected: 1 << n,
                got: entries.len(),
            });
        }
        Self::new(n, entries.into_values().collect())
    }
}

impl RankOracle for RankFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank_of(&self, elements: &[usize]) -> u32 {
        self.table[elements.iter().fold(0usize, |m, &e| m | 1 << e)]
    }

    fn rank(&self, mask: u64) -> u32 {
        self.table[mask as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// Empty set has rank zero.
    Normalized,
    /// A ⊆ B implies rank(A) ≤ rank(B).
    Monotone,
    /// rank(A) + rank(B) ≥ rank(A ∪ B) + rank(A ∩ B).
    Submodular,
}

/// Failing axiom with its witnessing subsets (A, B).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub a: u64,
    pub b: u64,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at A={}, B={}", self.axiom, fmt_set(self.a), fmt_set(self.b))
    }
}

/// Check normalization, monotonicity and submodularity through their local
/// forms: rank(A) ≤ rank(A+i) and rank(A+i) + rank(A+j) ≥ rank(A+i+j) +
/// rank(A). The first violation in increasing order of A, then i < j, is
/// reported.
pub fn check_axioms(r: &(impl RankOracle + Sync)) -> Result<(), AxiomViolation> {
    if r.rank(0) != 0 {
        return Err(AxiomViolation {
            axiom: Axiom::Normalized,
            a: 0,
            b: 0,
        });
    }
    let n = r.ground_size();
    let local = |a: u64| -> Option<AxiomViolation> {
        let ra = r.rank(a);
        let free: Vec<u64> = (0..n).map(|i| 1u64 << i).filter(|b| a & b == 0).collect();
        for &bi in &free {
            if r.rank(a | bi) < ra {
                return Some(AxiomViolation {
                    axiom: Axiom::Monotone,
                    a,
                    b: a | bi,
                });
            }
        }
        for (x, &bi) in free.iter().enumerate() {
            for &bj in &free[x + 1..] {
                if r.rank(a | bi) + r.rank(a | bj) < r.rank(a | bi | bj) + ra {
                    return Some(AxiomViolation {
                        axiom: Axiom::Submodular,
                        a: a | bi,
                        b: a | bj,
                    });
                }
            }
        }
        None
    };
    let found = if n >= 14 {
        (0..1u64 << n).into_par_iter().find_map_first(local)
    } else {
        (0..1u64 << n).find_map(local)
    };
    found.map_or(Ok(()), Err)
}

/// Whether `x` satisfies |x(A)| ≤ rank(A) for every A.
pub fn is_member(r: &impl RankOracle, x: &[u32]) -> bool {
    let n = r.ground_size();
    x.len() == n
        && (0..1u64 << n).all(|m| {
            let s: u32 = (0..n).filter(|i| m >> i & 1 == 1).map(|i| x[i]).sum();
            s <= r.rank(m)
        })
}

/// All vectors of the polymatroid, in lexicographic order.
pub fn members(r: &RankFunction) -> Result<Vec<Vec<u32>>, PolyError> {
    check_axioms(r).map_err(PolyError::NotPolymatroid)?;
    let n = r.n;
    let caps: Vec<u32> = (0..n).map(|i| r.rank(1 << i)).collect();
    let mut out = Vec::new();
    let mut x = vec![0u32; n];
    loop {
        if is_member(r, &x) {
            out.push(x.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if x[i] < caps[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}

/// One subspace of F^N per ground element, each given by a spanning matrix
/// with N columns (rows need not be independent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceFamily {
    domain: Domain,
    ambient: usize,
    spans: Vec<Matrix>,
}

impl SubspaceFamily {
    pub fn new(domain: &Domain, ambient: usize, spans: Vec<Matrix>) -> Result<Self, PolyError> {
        domain.require_field()?;
        for m in &spans {
            domain.check_same(m.domain())?;
            if m.cols() != ambient {
                return Err(AlgebraError::ShapeError(format!(
                    "span has {} columns, ambient dimension is {ambient}",
                    m.cols()
                ))
                .into());
            }
        }
        Ok(SubspaceFamily {
            domain: domain.clone(),
            ambient,
            spans,
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn spans(&self) -> &[Matrix] {
        &self.spans
    }
}

impl RankOracle for SubspaceFamily {
    fn ground_size(&self) -> usize {
        self.spans.len()
    }

    /// Dimension of the sum of the selected subspaces.
    fn rank_of(&self, elements: &[usize]) -> u32 {
        let mut data = Vec::new();
        let mut rows = 0;
        for &i in elements {
            let m = &self.spans[i];
            data.extend_from_slice(m.data());
            rows += m.rows();
        }
        rref_in_place(&self.domain, &mut data, rows, self.ambient, self.ambient).len() as u32
    }
}

/// Rank table of a subspace family.
pub fn induced_rank(fam: &SubspaceFamily) -> Result<RankFunction, PolyError> {
    RankFunction::from_oracle(fam)
}

/// Map from sources and edges to 0-based ground elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundMap {
    map: BTreeMap<String, usize>,
}

impl GroundMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: impl Into<String>, element: usize) {
        self.map.insert(id.into(), element);
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.map.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.map.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Sorted distinct elements of a list of sources and edges.
    pub fn elements(&self, ids: &[&str]) -> Result<Vec<usize>, PolyError> {
        let set: BTreeSet<usize> = ids
            .iter()
            .map(|id| self.get(id).ok_or_else(|| PolyError::IncompleteMap(id.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(set.into_iter().collect())
    }
}

/// Polymatroid induced by a verified code: ground elements are the sources
/// in declaration order, then the edges in canonical order. A source maps to
/// the row space of its message selector, an edge to the row space of its
/// global coding matrix.
pub fn induce_from_code(net: &Network, code: &VlncCode) -> Result<(SubspaceFamily, GroundMap), PolyError> {
    code.domain().require_field()?;
    let report = verify_solution(net, code)?;
    if !report.pass {
        return Err(PolyError::NotASolution(
            report.failed_terminals().into_iter().map(String::from).collect(),
        ));
    }
    let layout = Layout::new(net)?;
    let global = evaluate_with_layout(net, &layout, code);
    let d = code.dim();
    let n_src = layout.num_sources();
    let mut spans = Vec::new();
    let mut map = GroundMap::new();
    for (pos, &s) in layout.sources.iter().enumerate() {
        map.insert(net.nodes()[s].id.clone(), spans.len());
        spans.push(selector(code.domain(), d, n_src, pos));
    }
    for &e in &layout.edge_order {
        let id = &net.edges()[e].id;
        map.insert(id.clone(), spans.len());
        spans.push(global.edge(id).expect("every edge evaluated").clone());
    }
    let fam = SubspaceFamily::new(code.domain(), n_src * d, spans)?;
    Ok((fam, map))
}

/// Failed condition linking a network, a dimension and a ground map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpViolation {
    /// Two sources share a ground element.
    D1 { first: String, second: String },
    /// The vector d on the elements of these sources exceeds their rank.
    D2 { sources: Vec<String> },
    /// Source rank differs from d, or edge rank exceeds d.
    D3 { id: String, rank: u32 },
    /// A node's outputs (or a terminal's demands) add rank to its inputs.
    D4 { node: String },
}

impl fmt::Display for DpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DpViolation::D1 { first, second } => write!(f, "D1: sources {first} and {second} share an element"),
            DpViolation::D2 { sources } => write!(f, "D2: source vector exceeds rank on {}", sources.join(",")),
            DpViolation::D3 { id, rank } => write!(f, "D3: `{id}` has rank {rank}"),
            DpViolation::D4 { node } => write!(f, "D4: outputs of `{node}` are not determined by its inputs"),
        }
    }
}

/// Check conditions D1-D4 for `f` and `r` on `net` at dimension `d`.
/// `r` must satisfy the axioms; D2 is then checked on subsets of f(S) only.
pub fn check_dp_map(
    net: &Network,
    d: usize,
    r: &impl RankOracle,
    f: &GroundMap,
) -> Result<Result<(), DpViolation>, PolyError> {
    let n = r.ground_size();
    for id in net.sources().into_iter().chain(net.edges().iter().map(|e| e.id.as_str())) {
        match f.get(id) {
            None => return Err(PolyError::IncompleteMap(id.to_string())),
            Some(e) if e >= n => {
                return Err(PolyError::InvalidArg(format!("`{id}` maps outside the ground set")))
            }
            Some(_) => {}
        }
    }
    let sources = net.sources();
    let mut seen: BTreeMap<usize, &str> = BTreeMap::new();
    for &s in &sources {
        let e = f.get(s).expect("checked total");
        if let Some(prev) = seen.insert(e, s) {
            return Ok(Err(DpViolation::D1 {
                first: prev.to_string(),
                second: s.to_string(),
            }));
        }
    }
    if sources.len() > MAX_TABLE_GROUND {
        return Err(PolyError::InvalidArg(format!(
            "{} sources; D2 enumerates subsets of at most {MAX_TABLE_GROUND}",
            sources.len()
        )));
    }
    let src_elems: Vec<(usize, &str)> = seen.into_iter().collect();
    for sub in 1..1u64 << src_elems.len() {
        let picked: Vec<(usize, &str)> = src_elems
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let elems: Vec<usize> = picked.iter().map(|p| p.0).collect();
        if (d as u64) * elems.len() as u64 > u64::from(r.rank_of(&elems)) {
            let mut names: Vec<String> = picked.iter().map(|p| p.1.to_string()).collect();
            names.sort();
            return Ok(Err(DpViolation::D2 { sources: names }));
        }
    }
    for &s in &sources {
        let rank = r.rank_of(&f.elements(&[s])?);
        if rank as usize != d {
            return Ok(Err(DpViolation::D3 { id: s.to_string(), rank }));
        }
    }
    for e in net.edges() {
        let rank = r.rank_of(&f.elements(&[&e.id])?);
        if rank as usize > d {
            return Ok(Err(DpViolation::D3 { id: e.id.clone(), rank }));
        }
    }
    for node in net.nodes().iter().filter(|v| v.kind != NodeKind::Source) {
        let ins: Vec<&str> = net.in_edges(&node.id).iter().map(|e| e.id.as_str()).collect();
        let outs: Vec<&str> = if node.kind == NodeKind::Terminal {
            net.demand(&node.id).iter().map(String::as_str).collect()
        } else {
            net.out_edges(&node.id).iter().map(|e| e.id.as_str()).collect()
        };
        let both: Vec<&str> = ins.iter().chain(&outs).copied().collect();
        if r.rank_of(&f.elements(&ins)?) != r.rank_of(&f.elements(&both)?) {
            return Ok(Err(DpViolation::D4 { node: node.id.clone() }));
        }
    }
    Ok(Ok(()))
}

/// All subspaces of F^N of dimension `k` as canonical bases.
fn subspaces(domain: &Domain, k: usize, ambient: usize) -> Vec<Matrix> {
    if k == 0 {
        vec![Matrix::zeros(domain, 0, ambient)]
    } else {
        rref_bases(domain, k, ambient)
    }
}

/// Search a subspace family of F^N realizing `r`, trying subspaces in
/// canonical order. Limited to [`SEARCH_LIMITS`].
pub fn find_representation(
    r: &RankFunction,
    domain: &Domain,
    ambient: usize,
) -> Result<Option<SubspaceFamily>, PolyError> {
    domain.require_field()?;
    let (max_n, max_dim, max_q) = SEARCH_LIMITS;
    if r.n > max_n || ambient > max_dim || domain.size() > max_q {
        return Err(PolyError::InvalidArg(format!(
            "representation search limited to n ≤ {max_n}, N ≤ {max_dim}, alphabet ≤ {max_q}"
        )));
    }
    let mut options = Vec::new();
    for i in 0..r.n {
        let k = r.rank(1 << i) as usize;
        if k > ambient {
            return Ok(None);
        }
        options.push(subspaces(domain, k, ambient));
    }
    let mut chosen: Vec<Matrix> = Vec::new();
    if search_rep(r, domain, ambient, &options, &mut chosen)? {
        return Ok(Some(SubspaceFamily::new(domain, ambient, chosen)?));
    }
    Ok(None)
}

fn search_rep(
    r: &RankFunction,
    domain: &Domain,
    ambient: usize,
    options: &[Vec<Matrix>],
    chosen: &mut Vec<Matrix>,
) -> Result<bool, PolyError> {
    let i = chosen.len();
    if i == options.len() {
        return Ok(true);
    }
    for cand in &options[i] {
        chosen.push(cand.clone());
        let partial = SubspaceFamily::new(domain, ambient, chosen.clone())?;
        let new_bit = 1u64 << i;
        let consistent = (0..new_bit).all(|m| partial.rank(m | new_bit) == r.rank(m | new_bit));
        if consistent && search_rep(r, domain, ambient, options, chosen)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Ground-element bitmask of a list of sources and edges; elements must
/// lie below 64.
pub fn ground_mask(f: &GroundMap, ids: &[&str]) -> Result<u64, PolyError> {
    f.elements(ids)?.into_iter().try_fold(0u64, |m, e| {
        if e < 64 {
            Ok(m | 1 << e)
        } else {
            Err(PolyError::InvalidArg(format!("element {e} does not fit a bitmask")))
        }
    })
}

/// Distinct ground elements used by `f`.
pub fn image(f: &GroundMap) -> BTreeSet<usize> {
    f.iter().map(|(_, e)| e).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> RankFunction {
        // Indexed by mask: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}.
        RankFunction::new(3, vec![0, 1, 1, 1, 2, 2, 3, 3]).unwrap()
    }

    #[test]
    fn ex1_witness() {
        let v = check_axioms(&ex1()).unwrap_err();
        assert_eq!(v.axiom, Axiom::Submodular);
        assert_eq!((v.a, v.b), (mask_of(&[1, 2]), mask_of(&[1, 3])));
    }

    #[test]
    fn text_round_trip() {
        let r = ex1();
        assert_eq!(RankFunction::parse(&r.to_text()).unwrap(), r);
        assert!(matches!(
            RankFunction::parse("rank 2\nset 0 0\n"),
            Err(PolyError::IncompleteRank { expected: 4, got: 1 })
        ));
    }

    #[test]
    fn normalization_and_monotonicity() {
        let r = RankFunction::new(1, vec![1, 1]).unwrap();
        assert_eq!(check_axioms(&r).unwrap_err().axiom, Axiom::Normalized);
        let r = RankFunction::new(2, vec![0, 2, 1, 1]).unwrap();
        assert_eq!(check_axioms(&r).unwrap_err().axiom, Axiom::Monotone);
    }

    #[test]
    fn small_members() {
        let r = RankFunction::new(1, vec![0, 2]).unwrap();
        assert_eq!(members(&r).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(members(&RankFunction::zero(3).unwrap()).unwrap(), vec![vec![0, 0, 0]]);
    }
}
