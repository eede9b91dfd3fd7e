use proptest::prelude::*;
use vlnc_core::algebra::{Domain, Matrix, MatrixOdometer};
use vlnc_core::netmodel::{Network, NodeKind};
use vlnc_core::polymatroid::{check_dp_map, induce_from_code};
use vlnc_core::solver::{census, solve, Predicate, SearchConfig, SearchStatus};
use vlnc_core::vlnc::{simulate, CodingPair, VlncCode};
use vlnc_core::zoo;

fn gf(p: u32) -> Domain {
    Domain::prime_field(p).unwrap()
}

/// Small random network: sources, at most one inner node, terminals, and
/// up to three edges drawn from forward pairs.
#[derive(Debug, Clone)]
struct Micro {
    sources: usize,
    inner: bool,
    terminals: usize,
    edges: Vec<usize>,
    demands: Vec<u8>,
}

impl Micro {
    fn nodes(&self) -> Vec<(String, NodeKind)> {
        let mut out: Vec<(String, NodeKind)> =
            (0..self.sources).map(|i| (format!("s{i}"), NodeKind::Source)).collect();
        if self.inner {
            out.push(("v".into(), NodeKind::Inner));
        }
        out.extend((0..self.terminals).map(|i| (format!("t{i}"), NodeKind::Terminal)));
        out
    }

    fn network(&self) -> Network {
        let nodes = self.nodes();
        let mut net = Network::new("micro");
        for (id, kind) in &nodes {
            net.add_node(id.clone(), *kind).unwrap();
        }
        let forward = forward_pairs(&nodes);
        for (k, &pick) in self.edges.iter().enumerate() {
            let (t, h) = forward[pick % forward.len()];
            net.add_edge(format!("e{k}"), nodes[t].0.clone(), nodes[h].0.clone()).unwrap();
        }
        for t in 0..self.terminals {
            let mask = self.demands[t];
            let wanted: Vec<String> = (0..self.sources).filter(|s| mask >> s & 1 == 1).map(|s| format!("s{s}")).collect();
            net.set_demand(format!("t{t}"), wanted);
        }
        net
    }
}

fn forward_pairs(nodes: &[(String, NodeKind)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, (_, a)) in nodes.iter().enumerate() {
        for (j, (_, b)) in nodes.iter().enumerate().skip(i + 1) {
            if *a != NodeKind::Terminal && *b != NodeKind::Source {
                out.push((i, j));
            }
        }
    }
    out
}

fn micro() -> impl Strategy<Value = Micro> {
    (1usize..=2, any::<bool>(), 1usize..=2, prop::collection::vec(0usize..16, 1..=3), prop::collection::vec(0u8..4, 2))
        .prop_map(|(sources, inner, terminals, edges, demands)| Micro {
            sources,
            inner,
            terminals,
            edges,
            demands,
        })
}

fn coding_pairs(net: &Network) -> Vec<CodingPair> {
    let mut out = Vec::new();
    for e in net.edges() {
        if net.kind_of(&e.tail) == Some(NodeKind::Source) {
            out.push(CodingPair::src(&e.tail, &e.id));
        } else {
            out.extend(net.in_edges(&e.tail).iter().map(|pe| CodingPair::adj(&pe.id, &e.id)));
        }
        if net.kind_of(&e.head) == Some(NodeKind::Terminal) {
            out.extend((0..net.demand(&e.head).len()).map(|j| CodingPair::dec(&e.id, &e.head, j)));
        }
    }
    out
}

/// Naive oracle: every scalar assignment to every pair, decoders included,
/// checked by pushing every message vector through the code.
fn naive_solvable(net: &Network, f: &Domain) -> bool {
    let pairs = coding_pairs(net);
    let sources = net.sources();
    let q = f.size() as u64;
    let messages: Vec<Vec<Vec<u16>>> = {
        let mut all = Vec::new();
        let mut odo = MatrixOdometer::new(vec![q; sources.len()]);
        loop {
            all.push(odo.digits().iter().map(|&v| vec![v as u16]).collect());
            if !odo.advance() {
                break;
            }
        }
        all
    };
    let mut odo = MatrixOdometer::new(vec![q; pairs.len()]);
    loop {
        let mut code = VlncCode::new("naive", f, 1);
        for (pair, &v) in pairs.iter().zip(odo.digits()) {
            code.set(pair.clone(), Matrix::scalar(f, 1, v as u16)).unwrap();
        }
        let ok = messages.iter().all(|msg| {
            let sim = simulate(net, &code, msg).unwrap();
            net.demands().iter().all(|(t, demand)| {
                demand.iter().enumerate().all(|(j, s)| {
                    let pos = sources.iter().position(|x| x == s).unwrap();
                    sim.decoded[t][j] == msg[pos]
                })
            })
        });
        if ok {
            return true;
        }
        if !odo.advance() {
            return false;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn micro_instances_agree_with_naive_enumeration(m in micro(), normalize: bool, p in prop::sample::select(vec![2u32, 3])) {
        let net = m.network();
        prop_assert!(net.validate().is_empty());
        let f = gf(p);
        let expected = naive_solvable(&net, &f);
        let out = solve(&net, &SearchConfig::new(&f, 1).normalized(normalize)).unwrap();
        match out.status {
            SearchStatus::Solvable(code) => {
                prop_assert!(expected, "solver found a witness the oracle missed");
                let (fam, map) = induce_from_code(&net, &code).unwrap();
                prop_assert_eq!(check_dp_map(&net, 1, &fam, &map).unwrap(), Ok(()));
            }
            SearchStatus::Unsolvable => prop_assert!(!expected, "oracle found a solution"),
            SearchStatus::Inconclusive(r) => prop_assert!(false, "inconclusive: {}", r),
        }
    }
}

#[test]
fn normalization_does_not_change_verdicts() {
    let cases = [
        (zoo::build_m2(), 2, false),
        (zoo::build_char_qs(2).unwrap(), 2, true),
        (zoo::build_char_qs(2).unwrap(), 3, true),
    ];
    for (net, p, solvable) in cases {
        for normalize in [false, true] {
            // The unnormalized space exceeds the default guard; lift it.
            let cfg = SearchConfig::new(&gf(p), 1).normalized(normalize).ceiling(f64::INFINITY);
            let status = solve(&net, &cfg).unwrap().status;
            assert_eq!(status.is_solvable(), solvable, "{} GF({p}) normalize={normalize}", net.name());
            assert_ne!(status.label(), "INCONCLUSIVE");
        }
    }
}

#[test]
fn witnesses_pass_dp_conditions() {
    let cases = [
        (zoo::build_char_qs(2).unwrap(), gf(3), 1),
        (zoo::build_char_m(2).unwrap(), gf(2), 1),
        (zoo::build_m2(), gf(2), 2),
    ];
    for (net, f, d) in cases {
        let out = solve(&net, &SearchConfig::new(&f, d).normalized(true)).unwrap();
        let SearchStatus::Solvable(code) = out.status else { panic!("{} should be solvable", net.name()) };
        let (fam, map) = induce_from_code(&net, &code).unwrap();
        assert_eq!(check_dp_map(&net, d, &fam, &map).unwrap(), Ok(()), "{}", net.name());
    }
}

#[test]
fn parallel_and_sequential_runs_agree() {
    let net = zoo::build_char_qs(2).unwrap();
    let f = gf(3);
    let base = SearchConfig::new(&f, 1).normalized(true);
    let one = solve(&net, &base.clone().jobs(1)).unwrap();
    let again = solve(&net, &base.clone().jobs(1)).unwrap();
    let many = solve(&net, &base.jobs(4)).unwrap();
    assert_eq!(one.status, again.status);
    assert_eq!(one.stats.assignments, again.stats.assignments);
    assert_eq!(one.status, many.status, "lowest-index witness wins");
}

#[test]
fn census_pins_follow_the_predicate() {
    let net = zoo::build_char_qs(2).unwrap();
    let pred = Predicate::parse("nonzero(s,e1)").unwrap();
    let out = census(&net, &SearchConfig::new(&gf(2), 1).normalized(true), &pred).unwrap();
    // Over GF(2) the additive solution has a zero s-block on e1.
    assert_eq!(out.verdict.label(), "COUNTEREXAMPLE");
}
