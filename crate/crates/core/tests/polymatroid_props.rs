use proptest::prelude::*;
use vlnc_core::algebra::{Domain, Matrix, MatrixOdometer};
use vlnc_core::netmodel::Network;
use vlnc_core::polymatroid::{
    check_axioms, check_dp_map, find_representation, induce_from_code, induced_rank, is_member,
    members, DpViolation, GroundMap, RankFunction, RankOracle, SubspaceFamily,
};
use vlnc_core::vlnc::VlncCode;
use vlnc_core::zoo;

fn family() -> impl Strategy<Value = SubspaceFamily> {
    (prop::sample::select(vec![2u32, 3]), 1usize..=3, 1usize..=4).prop_flat_map(|(p, ambient, n)| {
        let f = Domain::prime_field(p).unwrap();
        let span = (0usize..=ambient).prop_flat_map(move |rows| prop::collection::vec(0..p as u16, rows * ambient));
        prop::collection::vec(span, n).prop_map(move |raw| {
            let spans = raw
                .into_iter()
                .map(|data| Matrix::new(&f, data.len() / ambient, ambient, data).unwrap())
                .collect();
            SubspaceFamily::new(&f, ambient, spans).unwrap()
        })
    })
}

/// Direct oracle: x is a member iff |x(A)| ≤ ρ(A) for every A.
fn members_by_inequalities(r: &RankFunction, n: usize) -> Vec<Vec<u32>> {
    let caps: Vec<u64> = (0..n).map(|i| u64::from(r.rank(1 << i)) + 1).collect();
    let mut out = Vec::new();
    let mut odo = MatrixOdometer::new(caps);
    loop {
        let x: Vec<u32> = odo.digits().iter().map(|&v| v as u32).collect();
        let ok = (0..1u64 << n).all(|a| {
            let total: u32 = (0..n).filter(|i| a >> i & 1 == 1).map(|i| x[i]).sum();
            total <= r.rank(a)
        });
        if ok {
            out.push(x);
        }
        if !odo.advance() {
            break;
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn induced_ranks_are_polymatroids(fam in family()) {
        let r = induced_rank(&fam).unwrap();
        prop_assert_eq!(check_axioms(&r), Ok(()));
        let n = fam.ground_size();
        // C ⊆ B: r(A ∪ B) - r(A ∪ C) ≤ r(B) - r(C).
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                let mut c = b;
                loop {
                    let lhs = i64::from(r.rank(a | b)) - i64::from(r.rank(a | c));
                    prop_assert!(lhs <= i64::from(r.rank(b)) - i64::from(r.rank(c)));
                    if c == 0 {
                        break;
                    }
                    c = (c - 1) & b;
                }
            }
        }
    }

    #[test]
    fn members_match_inequality_oracle(fam in family()) {
        let r = induced_rank(&fam).unwrap();
        let n = fam.ground_size();
        let expected = members_by_inequalities(&r, n);
        prop_assert_eq!(members(&r).unwrap(), expected.clone());
        for x in &expected {
            prop_assert!(is_member(&r, x));
        }
    }

    #[test]
    fn representations_are_found_for_represented_ranks(fam in family()) {
        let r = induced_rank(&fam).unwrap();
        let found = find_representation(&r, fam.domain(), fam.ambient()).unwrap().expect("fam itself represents r");
        prop_assert_eq!(induced_rank(&found).unwrap(), r);
    }
}

fn verified() -> Vec<(Network, VlncCode)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        let f = Domain::prime_field(p).unwrap();
        out.push((zoo::build_m2(), zoo::code_m2_dim2(&f).unwrap()));
        out.push((zoo::build_n1(2).unwrap(), zoo::code_n1_dim2(2, &f).unwrap()));
        out.push((zoo::build_char_qs(2).unwrap(), zoo::code_char_qs_additive(2, &f, 2).unwrap()));
    }
    out
}

#[test]
fn induced_ranks_are_additive_over_disjoint_sources() {
    for (net, code) in verified() {
        let (fam, map) = induce_from_code(&net, &code).unwrap();
        let sources = net.sources();
        let k = sources.len();
        let pick_ids = |bits: u32| -> Vec<&str> { (0..k).filter(|i| bits >> i & 1 == 1).map(|i| sources[i]).collect() };
        let g = |ids: &[&str]| fam.rank_of(&map.elements(ids).unwrap());
        for pick in 0..1u32 << k {
            let s1 = pick_ids(pick);
            let mut rest = !pick & ((1 << k) - 1);
            loop {
                let s2 = pick_ids(rest);
                let both: Vec<&str> = s1.iter().chain(&s2).copied().collect();
                assert_eq!(g(&both), g(&s1) + g(&s2), "{}", net.name());
                if rest == 0 {
                    break;
                }
                rest = (rest - 1) & !pick & ((1 << k) - 1);
            }
        }
    }
}

#[test]
fn conditional_additivity_on_m_network_codes() {
    // S1 = {a, b} with E1 = {u1->v1}; S2 = {x, y} with E2 = {u2->v2}.
    let g = |fam: &SubspaceFamily, map: &GroundMap, ids: &[&str]| fam.rank_of(&map.elements(ids).unwrap());
    for (net, code) in verified().into_iter().filter(|(n, _)| n.name() != "char-qs:2") {
        let (fam, map) = induce_from_code(&net, &code).unwrap();
        assert_eq!(g(&fam, &map, &["a", "b", "u1->v1"]), g(&fam, &map, &["a", "b"]));
        assert_eq!(g(&fam, &map, &["x", "y", "u2->v2"]), g(&fam, &map, &["x", "y"]));
        for s1 in [&["a"][..], &["b"], &["a", "b"], &[]] {
            for s2 in [&["x"][..], &["y"], &["x", "y"], &[]] {
                let left: Vec<&str> = s1.iter().copied().chain(["u1->v1"]).collect();
                let right: Vec<&str> = s2.iter().copied().chain(["u2->v2"]).collect();
                let both: Vec<&str> = left.iter().chain(&right).copied().collect();
                assert_eq!(
                    g(&fam, &map, &left) + g(&fam, &map, &right),
                    g(&fam, &map, &both),
                    "{} {left:?} {right:?}",
                    net.name()
                );
            }
        }
    }
}

#[test]
fn broken_maps_are_rejected() {
    let net = zoo::build_m2();
    let f = Domain::prime_field(2).unwrap();
    let (fam, map) = induce_from_code(&net, &zoo::code_m2_dim2(&f).unwrap()).unwrap();
    let mut merged = GroundMap::new();
    for (id, e) in map.iter() {
        merged.insert(id, if id == "b" { map.get("a").unwrap() } else { e });
    }
    assert!(matches!(check_dp_map(&net, 2, &fam, &merged).unwrap(), Err(DpViolation::D1 { .. })));
    // Source ranks are 2, so claiming d = 1 breaks D3 at the first source.
    assert_eq!(
        check_dp_map(&net, 1, &fam, &map).unwrap(),
        Err(DpViolation::D3 { id: "a".into(), rank: 2 })
    );
    let mut partial = GroundMap::new();
    partial.insert("a", 0);
    assert!(check_dp_map(&net, 2, &fam, &partial).is_err());
}
