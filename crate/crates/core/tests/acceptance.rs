//! Acceptance criteria, one line each. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use vlnc_core::algebra::{Domain, Matrix};
use vlnc_core::netmodel::Network;
use vlnc_core::polymatroid::{
    check_axioms, check_dp_map, induce_from_code, induced_rank, members, Axiom, AxiomViolation, RankFunction,
    RankOracle, SubspaceFamily,
};
use vlnc_core::solver::{
    census, n1_recipe, probe_characteristics, solve, CensusVerdict, Predicate, RecipeConclusion, SearchConfig,
    SearchStatus,
};
use vlnc_core::vlnc::{repeat_code, verify_solution, VlncCode};
use vlnc_core::zoo;

type Check = Result<String, String>;

fn gf(p: u32) -> Domain {
    Domain::prime_field(p).unwrap()
}

fn field(q: usize) -> Domain {
    match q {
        4 => Domain::field(2, 2).unwrap(),
        8 => Domain::field(2, 3).unwrap(),
        9 => Domain::field(3, 2).unwrap(),
        p => gf(p as u32),
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, format!("{what} took {took:?}, limit {limit:?}"))
}

/// Every listed code that must verify, with its network.
fn positive_codes() -> Vec<(String, Network, VlncCode)> {
    let mut out = Vec::new();
    for q in [2, 3] {
        let net = zoo::build_char_qs(q).unwrap();
        for size in [2, 3, 4, 5, 7, 8, 9] {
            for d in [1, 2] {
                let code = zoo::code_char_qs_additive(q, &field(size), d).unwrap();
                out.push((format!("char-qs:{q} additive GF({size}) d={d}"), net.clone(), code));
            }
        }
    }
    for (q, size) in [(2, 2), (2, 4), (3, 3)] {
        let code = zoo::code_char_qs_charp(q, &field(size)).unwrap();
        out.push((format!("char-qs:{q} charp GF({size})"), zoo::build_char_qs(q).unwrap(), code));
    }
    for p in [2, 3, 5] {
        let f = gf(p);
        out.push((format!("m2 d=2 GF({p})"), zoo::build_m2(), zoo::code_m2_dim2(&f).unwrap()));
        out.push((format!("n1:2 d=2 GF({p})"), zoo::build_n1(2).unwrap(), zoo::code_n1_dim2(2, &f).unwrap()));
        out.push((format!("n2:2 d=3 GF({p})"), zoo::build_n2(2).unwrap(), zoo::code_n2_dim3(2, &f).unwrap()));
    }
    out.push((
        "n1:2 scalar charp GF(2)".into(),
        zoo::build_n1(2).unwrap(),
        zoo::code_n1_scalar_charp(2, &gf(2)).unwrap(),
    ));
    out.push(("n1:2 ring16".into(), zoo::build_n1(2).unwrap(), zoo::code_n1_ring16(2).unwrap()));
    out
}

fn criterion_codes() -> Check {
    let start = Instant::now();
    let positives = positive_codes();
    for (name, net, code) in &positives {
        let report = verify_solution(net, code).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.pass, format!("{name} fails at {:?}", report.failed_terminals()))?;
    }
    let mut negatives = 0;
    for q in [2, 3] {
        let last = format!("r{}", q + 3);
        for size in [2, 3, 4, 5, 7, 8, 9] {
            let f = field(size);
            if zoo::characteristic_divides(q, &f) {
                continue;
            }
            let code = zoo::code_char_qs_charp(q, &f).unwrap();
            let report = verify_solution(&zoo::build_char_qs(q).unwrap(), &code).map_err(|e| e.to_string())?;
            ensure(
                report.failed_terminals() == [last.as_str()],
                format!("char-qs:{q} charp GF({size}) fails at {:?}", report.failed_terminals()),
            )?;
            negatives += 1;
        }
    }
    for p in [3, 5, 7] {
        let code = zoo::code_n1_scalar_charp(2, &gf(p)).unwrap();
        let report = verify_solution(&zoo::build_n1(2).unwrap(), &code).map_err(|e| e.to_string())?;
        ensure(
            report.failed_terminals() == ["r5"],
            format!("n1:2 scalar charp GF({p}) fails at {:?}", report.failed_terminals()),
        )?;
        negatives += 1;
    }
    within(start, Duration::from_secs(60), "verification")?;
    Ok(format!("{} codes verify, {negatives} non-dividing cases fail only at the last Char terminal", positives.len()))
}

fn criterion_m2_exhaustion() -> Check {
    let net = zoo::build_m2();
    let mut notes = Vec::new();
    for p in [2, 3] {
        let start = Instant::now();
        let out = solve(&net, &SearchConfig::new(&gf(p), 1).normalized(true)).map_err(|e| e.to_string())?;
        ensure(out.status == SearchStatus::Unsolvable, format!("GF({p}): {}", out.status.label()))?;
        within(start, Duration::from_secs(300), &format!("GF({p}) search"))?;
        notes.push(format!("GF({p}) unsolvable after {} assignments", out.stats.assignments));
    }
    Ok(notes.join(", "))
}

fn criterion_block_dichotomy() -> Check {
    let net = zoo::build_char_qs(2).unwrap();
    let pred = Predicate::parse("zero(s,e1)").map_err(|e| e.to_string())?;
    let start = Instant::now();
    let odd = census(&net, &SearchConfig::new(&gf(3), 1).normalized(true), &pred).map_err(|e| e.to_string())?;
    ensure(
        odd.verdict == CensusVerdict::AllSatisfy { vacuous: false },
        format!("GF(3): {}", odd.verdict.label()),
    )?;
    within(start, Duration::from_secs(1800), "GF(3) census")?;
    let even = census(&net, &SearchConfig::new(&gf(2), 1).normalized(true), &pred).map_err(|e| e.to_string())?;
    let CensusVerdict::Counterexample(code) = &even.verdict else {
        return Err(format!("GF(2): {}", even.verdict.label()));
    };
    let g = vlnc_core::vlnc::evaluate_global(&net, code).map_err(|e| e.to_string())?;
    ensure(!g.block("e1", "s").unwrap().is_zero(), "GF(2) counterexample has a zero s-block on e1")?;
    ensure(verify_solution(&net, code).map_err(|e| e.to_string())?.pass, "GF(2) counterexample does not verify")?;
    Ok(format!(
        "GF(3) all solutions have a zero s-block on e1 ({} assignments), GF(2) has a counterexample",
        odd.stats.assignments
    ))
}

fn criterion_probe() -> Check {
    let net = zoo::build_char_m(2).unwrap();
    let fields = [gf(2), gf(3), gf(5)];
    let rows = probe_characteristics(&net, &SearchConfig::new(&gf(2), 1).normalized(true), &fields);
    let got: Vec<Option<bool>> = rows.iter().map(|r| r.is_solvable()).collect();
    ensure(
        got == [Some(true), Some(false), Some(false)],
        format!("{:?}", rows.iter().map(|r| r.label()).collect::<Vec<_>>()),
    )?;
    Ok("char-m:2 solvable over GF(2) only".into())
}

fn criterion_union_law() -> Check {
    let nets = [zoo::build_m2(), zoo::build_char_qs(2).unwrap(), zoo::build_char_m(2).unwrap()];
    let fields = [gf(2), gf(3)];
    let cfg = SearchConfig::new(&gf(2), 1).normalized(true);
    let single: Vec<Vec<Option<bool>>> = nets
        .iter()
        .map(|n| probe_characteristics(n, &cfg, &fields).iter().map(|r| r.is_solvable()).collect())
        .collect();
    let mut pairs = 0;
    for i in 0..nets.len() {
        for j in i + 1..nets.len() {
            let u = nets[i].renamed("l.").union(&nets[j].renamed("r.")).map_err(|e| e.to_string())?;
            let joint: Vec<Option<bool>> = probe_characteristics(&u, &cfg, &fields).iter().map(|r| r.is_solvable()).collect();
            for k in 0..fields.len() {
                let (a, b) = (single[i][k].ok_or("inconclusive")?, single[j][k].ok_or("inconclusive")?);
                ensure(
                    joint[k] == Some(a && b),
                    format!("{} + {} over {}: {:?} vs {a} and {b}", nets[i].name(), nets[j].name(), fields[k], joint[k]),
                )?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} unions match the intersection over GF(2) and GF(3)"))
}

fn criterion_recipe() -> Check {
    let start = Instant::now();
    let report = n1_recipe(2, &SearchConfig::new(&gf(3), 1).normalized(true)).map_err(|e| e.to_string())?;
    ensure(
        matches!(report.census.verdict, CensusVerdict::AllSatisfy { vacuous: false }),
        format!("step (a): {}", report.census.verdict.label()),
    )?;
    ensure(report.pinned.status == SearchStatus::Unsolvable, format!("step (b): {}", report.pinned.status.label()))?;
    ensure(
        report.conclusion == RecipeConclusion::ConditionallyUnsolvable,
        format!("{:?}", report.conclusion),
    )?;
    within(start, Duration::from_secs(3600), "recipe")?;
    Ok(format!("census all-satisfy and pinned solve unsolvable in {:?}", start.elapsed()))
}

fn ex_rank(top: u32) -> RankFunction {
    // Masks 0..8 over {1,2,3}: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}.
    RankFunction::new(3, vec![0, 1, 1, 1, 2, 2, top, top]).unwrap()
}

fn criterion_polymatroids() -> Check {
    let ex1 = ex_rank(3);
    ensure(
        check_axioms(&ex1)
            == Err(AxiomViolation {
                axiom: Axiom::Submodular,
                a: 0b011,
                b: 0b101,
            }),
        format!("ex1: {:?}", check_axioms(&ex1)),
    )?;
    let ex2 = ex_rank(2);
    ensure(check_axioms(&ex2).is_ok(), "ex2 violates an axiom")?;
    let mut listed = vec![
        vec![0, 0, 0],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![0, 0, 2],
        vec![1, 0, 1],
        vec![0, 1, 1],
    ];
    listed.sort();
    ensure(members(&ex2).map_err(|e| e.to_string())? == listed, "ex2 members differ")?;
    for size in [2, 3, 4, 5, 7] {
        let f = field(size);
        let line = Matrix::from_ints(&f, &[&[1, 0]]).unwrap();
        let fam = SubspaceFamily::new(&f, 2, vec![line.clone(), line, Matrix::identity(&f, 2)]).unwrap();
        ensure(induced_rank(&fam).map_err(|e| e.to_string())? == ex2, format!("family over GF({size})"))?;
    }
    let mut checked = 0;
    for (name, net, code) in positive_codes() {
        if !code.domain().is_field() {
            continue;
        }
        let (fam, map) = induce_from_code(&net, &code).map_err(|e| format!("{name}: {e}"))?;
        let dp = check_dp_map(&net, code.dim(), &fam, &map).map_err(|e| format!("{name}: {e}"))?;
        ensure(dp.is_ok(), format!("{name}: {dp:?}"))?;
        checked += 1;
    }
    let net = zoo::build_char_qs(2).unwrap();
    for d in [1, 2] {
        let code = zoo::code_char_qs_additive(2, &gf(3), d).unwrap();
        let (fam, map) = induce_from_code(&net, &code).map_err(|e| e.to_string())?;
        let g = |ids: &[&str]| fam.rank_of(&map.elements(ids).unwrap());
        let sources = net.sources();
        for split in 1..(1u32 << sources.len()) - 1 {
            let (left, right): (Vec<&str>, Vec<&str>) =
                sources.iter().enumerate().fold((vec![], vec![]), |(mut l, mut r), (i, s)| {
                    if split >> i & 1 == 1 {
                        l.push(*s)
                    } else {
                        r.push(*s)
                    }
                    (l, r)
                });
            let both: Vec<&str> = left.iter().chain(&right).copied().collect();
            ensure(g(&both) == g(&left) + g(&right), format!("additivity fails at {left:?} | {right:?}"))?;
        }
        ensure(g(&["e1"]) == g(&["e1", "x1"]), "rank(e1) differs from rank(e1, x1)")?;
        ensure(g(&["x1"]) == g(&["x1", "e1"]), "rank(x1) differs from rank(x1, e1)")?;
    }
    Ok(format!("ex1/ex2/family exact, D1-D4 hold for {checked} field codes, additivity and e1~x1 identity hold"))
}

fn criterion_repeat() -> Check {
    let mut done = Vec::new();
    for p in [2, 3, 5] {
        let f = gf(p);
        let cases = [
            (zoo::build_n1(2).unwrap(), zoo::code_n1_dim2(2, &f).unwrap(), 2),
            (zoo::build_n2(2).unwrap(), zoo::code_n2_dim3(2, &f).unwrap(), 2),
        ];
        for (net, code, k) in cases {
            let big = repeat_code(&code, k).map_err(|e| e.to_string())?;
            ensure(big.dim() == code.dim() * k, "dimension not multiplied")?;
            let report = verify_solution(&net, &big).map_err(|e| e.to_string())?;
            ensure(report.pass, format!("{} d={} over GF({p}) fails", net.name(), big.dim()))?;
            done.push(format!("{} d={}", net.name(), big.dim()));
        }
    }
    done.dedup();
    Ok(format!("repeated codes verify over GF(2), GF(3), GF(5): {}", done[..2].join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("explicit codes verify", criterion_codes),
        ("M-network scalar exhaustion", criterion_m2_exhaustion),
        ("Char-2-s block dichotomy", criterion_block_dichotomy),
        ("Char-m(2) characteristic probe", criterion_probe),
        ("union law", criterion_union_law),
        ("N1 conditional recipe", criterion_recipe),
        ("polymatroid suite", criterion_polymatroids),
        ("repeat closure", criterion_repeat),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS {name} [{took:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name} [{took:.2}s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
