//! Scoreboard of the reproducible claims, one line per claim.

use std::time::Instant;

use anyhow::{anyhow, ensure, Result};
use vlnc_core::algebra::{Domain, Matrix};
use vlnc_core::netmodel::Network;
use vlnc_core::polymatroid::{
    check_axioms, check_dp_map, induce_from_code, induced_rank, members, Axiom, RankFunction, SubspaceFamily,
};
use vlnc_core::solver::{
    census, n1_recipe, probe_characteristics, solve, CensusVerdict, Predicate, RecipeConclusion, SearchConfig,
    SearchStatus,
};
use vlnc_core::vlnc::{repeat_code, verify_solution, VlncCode};
use vlnc_core::zoo;

pub struct Row {
    pub claim: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

fn gf(p: u32) -> Result<Domain> {
    Ok(Domain::prime_field(p)?)
}

fn small_fields() -> Result<Vec<Domain>> {
    [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]
        .into_iter()
        .map(|(p, n)| Domain::field(p, n).map_err(Into::into))
        .collect()
}

fn explicit_codes() -> Result<Vec<(String, Network, VlncCode)>> {
    let mut out = Vec::new();
    for q in [2, 3] {
        let net = zoo::build_char_qs(q)?;
        for f in small_fields()? {
            for d in [1, 2] {
                out.push((format!("char-qs:{q}/additive {f} d={d}"), net.clone(), zoo::code_char_qs_additive(q, &f, d)?));
            }
            if zoo::characteristic_divides(q, &f) && f.size() <= 4 {
                out.push((format!("char-qs:{q}/charp {f}"), net.clone(), zoo::code_char_qs_charp(q, &f)?));
            }
        }
    }
    for p in [2, 3, 5] {
        let f = gf(p)?;
        out.push((format!("m2/dim2 {f}"), zoo::build_m2(), zoo::code_m2_dim2(&f)?));
        out.push((format!("n1:2/dim2 {f}"), zoo::build_n1(2)?, zoo::code_n1_dim2(2, &f)?));
        out.push((format!("n2:2/dim3 {f}"), zoo::build_n2(2)?, zoo::code_n2_dim3(2, &f)?));
    }
    out.push(("n1:2/scalar-charp 2".into(), zoo::build_n1(2)?, zoo::code_n1_scalar_charp(2, &gf(2)?)?));
    out.push(("n1:2/ring16".into(), zoo::build_n1(2)?, zoo::code_n1_ring16(2)?));
    Ok(out)
}

fn codes_verify() -> Result<String> {
    let codes = explicit_codes()?;
    for (name, net, code) in &codes {
        let report = verify_solution(net, code)?;
        ensure!(report.pass, "{name} fails at {:?}", report.failed_terminals());
    }
    let mut negatives = 0;
    for q in [2, 3] {
        let net = zoo::build_char_qs(q)?;
        for f in small_fields()?.into_iter().filter(|f| !zoo::characteristic_divides(q, f)) {
            let report = verify_solution(&net, &zoo::code_char_qs_charp(q, &f)?)?;
            let want = format!("r{}", q + 3);
            ensure!(
                report.failed_terminals() == [want.as_str()],
                "char-qs:{q}/charp over {f} fails at {:?}",
                report.failed_terminals()
            );
            negatives += 1;
        }
    }
    Ok(format!("{} codes pass; {negatives} charp codes off their characteristic fail only at the last terminal", codes.len()))
}

fn m2_scalar(cfg: &SearchConfig) -> Result<String> {
    for p in [2, 3] {
        let out = solve(&zoo::build_m2(), &cfg.with_domain(&gf(p)?))?;
        ensure!(out.status == SearchStatus::Unsolvable, "GF({p}): {}", out.status.label());
    }
    Ok("unsolvable over GF(2) and GF(3) at d=1".into())
}

fn block_dichotomy(cfg: &SearchConfig) -> Result<String> {
    let net = zoo::build_char_qs(2)?;
    let pred = Predicate::parse("zero(s,e1)")?;
    let odd = census(&net, &cfg.with_domain(&gf(3)?), &pred)?;
    ensure!(odd.verdict == CensusVerdict::AllSatisfy { vacuous: false }, "GF(3): {}", odd.verdict.label());
    let even = census(&net, &cfg.with_domain(&gf(2)?), &pred)?;
    ensure!(matches!(even.verdict, CensusVerdict::Counterexample(_)), "GF(2): {}", even.verdict.label());
    Ok("zero s-block on e1 forced over GF(3), not over GF(2)".into())
}

fn char_m_probe(cfg: &SearchConfig) -> Result<String> {
    let rows = probe_characteristics(&zoo::build_char_m(2)?, cfg, &[gf(2)?, gf(3)?, gf(5)?]);
    let got: Vec<Option<bool>> = rows.iter().map(|r| r.is_solvable()).collect();
    ensure!(got == [Some(true), Some(false), Some(false)], "{:?}", rows.iter().map(|r| r.label()).collect::<Vec<_>>());
    Ok("char-m:2 solvable over GF(2) only".into())
}

fn union_law(cfg: &SearchConfig) -> Result<String> {
    let nets = [zoo::build_m2(), zoo::build_char_qs(2)?, zoo::build_char_m(2)?];
    let fields = [gf(2)?, gf(3)?];
    let probe = |n: &Network| -> Result<Vec<bool>> {
        probe_characteristics(n, cfg, &fields)
            .iter()
            .map(|r| r.is_solvable().ok_or_else(|| anyhow!("{} inconclusive over {}", n.name(), r.domain)))
            .collect()
    };
    let single: Vec<Vec<bool>> = nets.iter().map(probe).collect::<Result<_>>()?;
    for i in 0..nets.len() {
        for j in i + 1..nets.len() {
            let joint = probe(&nets[i].renamed("l.").union(&nets[j].renamed("r."))?)?;
            for k in 0..fields.len() {
                ensure!(joint[k] == (single[i][k] && single[j][k]), "{} + {} over {}", nets[i].name(), nets[j].name(), fields[k]);
            }
        }
    }
    Ok("all three pairwise unions match the intersection".into())
}

fn recipe(cfg: &SearchConfig) -> Result<String> {
    let report = n1_recipe(2, &cfg.with_domain(&gf(3)?))?;
    ensure!(report.conclusion == RecipeConclusion::ConditionallyUnsolvable, "{:?}", report.conclusion);
    Ok("census all-satisfy, pinned M-network unsolvable".into())
}

fn polymatroids() -> Result<String> {
    let ex = |top| RankFunction::new(3, vec![0, 1, 1, 1, 2, 2, top, top]);
    let v = check_axioms(&ex(3)?).err().ok_or_else(|| anyhow!("first table passes the axioms"))?;
    ensure!(v.axiom == Axiom::Submodular && (v.a, v.b) == (0b011, 0b101), "first table: {v}");
    let second = ex(2)?;
    let listed = [[0, 0, 0], [0, 0, 1], [0, 0, 2], [0, 1, 0], [0, 1, 1], [1, 0, 0], [1, 0, 1]];
    ensure!(members(&second)? == listed.map(|x| x.to_vec()), "second table members differ");
    let f = gf(3)?;
    let line = Matrix::from_ints(&f, &[&[1, 0]])?;
    let fam = SubspaceFamily::new(&f, 2, vec![line.clone(), line, Matrix::identity(&f, 2)])?;
    ensure!(induced_rank(&fam)? == second, "line/line/plane family");
    let mut checked = 0;
    for (name, net, code) in explicit_codes()? {
        if !code.domain().is_field() {
            continue;
        }
        let (fam, map) = induce_from_code(&net, &code)?;
        let dp = check_dp_map(&net, code.dim(), &fam, &map)?;
        ensure!(dp.is_ok(), "{name}: {}", dp.unwrap_err());
        checked += 1;
    }
    Ok(format!("axioms, members and family exact; D1-D4 hold for {checked} codes"))
}

fn repeats() -> Result<String> {
    for p in [2, 3, 5] {
        let f = gf(p)?;
        let n1 = repeat_code(&zoo::code_n1_dim2(2, &f)?, 2)?;
        let n2 = repeat_code(&zoo::code_n2_dim3(2, &f)?, 2)?;
        ensure!(verify_solution(&zoo::build_n1(2)?, &n1)?.pass, "n1:2 d=4 over {f}");
        ensure!(verify_solution(&zoo::build_n2(2)?, &n2)?.pass, "n2:2 d=6 over {f}");
    }
    Ok("n1:2 d=4 and n2:2 d=6 verify".into())
}

pub fn run(cfg: &SearchConfig) -> Vec<Row> {
    let checks: Vec<(&'static str, Box<dyn Fn() -> Result<String> + '_>)> = vec![
        ("explicit codes verify", Box::new(codes_verify)),
        ("M-network has no scalar solution", Box::new(|| m2_scalar(cfg))),
        ("Char-2-s s-block dichotomy", Box::new(|| block_dichotomy(cfg))),
        ("Char-m(2) characteristic set", Box::new(|| char_m_probe(cfg))),
        ("union law", Box::new(|| union_law(cfg))),
        ("N1 scalar recipe over GF(3)", Box::new(|| recipe(cfg))),
        ("polymatroid suite", Box::new(polymatroids)),
        ("repeated codes", Box::new(repeats)),
    ];
    checks
        .into_iter()
        .map(|(claim, check)| {
            let start = Instant::now();
            let result = check();
            let seconds = start.elapsed().as_secs_f64();
            match result {
                Ok(detail) => Row { claim, pass: true, detail, seconds },
                Err(e) => Row { claim, pass: false, detail: format!("{e:#}"), seconds },
            }
        })
        .collect()
}
