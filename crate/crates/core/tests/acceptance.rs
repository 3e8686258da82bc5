//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use groupkit::gog::{collapse_all_but_one, fundamental_presentation, spanning_tree};
use groupkit::harness::{
    builtin_fixtures, suite_classify, suite_ct, suite_gmnoccur, suite_gog, suite_oracle, suite_witnesses,
    suite_z2, Options, SuiteReport,
};
use groupkit::metabelian::{
    bezout_certificate, csa_violation_witness, two_gen_classify, weak_ah_witness, Classification, Side,
};
use groupkit::Params;

const SEED: u64 = 20240601;

type Outcome = Result<String, String>;

/// Serial reports from criteria 1-7, rerun under criterion 8.
static FIRST_RUN: Mutex<BTreeMap<&'static str, String>> = Mutex::new(BTreeMap::new());

fn keep(name: &'static str, r: SuiteReport) -> SuiteReport {
    FIRST_RUN.lock().unwrap().insert(name, r.to_json());
    r
}

fn g(m: i64, n: i64) -> Params {
    Params::from_ints(m, n).unwrap()
}

fn coprime(lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in lo..=hi {
        for n in lo..=hi {
            if num_integer::gcd(m, n) == 1 {
                out.push((m, n));
            }
        }
    }
    out
}

fn ct_groups() -> Vec<Params> {
    coprime(1, 7).into_iter().filter(|&(m, n)| m < n).map(|(m, n)| g(m, n)).collect()
}

fn require(report: &SuiteReport) -> Outcome {
    if report.passed() {
        Ok(format!("{} trials, 0 failures", report.trials))
    } else {
        Err(format!("{} failures, first: {:?}", report.failures.len(), report.failures.first()))
    }
}

fn oracle(opts: &Options) -> Result<SuiteReport, String> {
    suite_oracle(&[2, 3, 5], 10_000, 30, SEED, opts).map_err(|e| e.to_string())
}

fn ct(opts: &Options) -> Result<SuiteReport, String> {
    suite_ct(&ct_groups(), 10_000, SEED, opts).map_err(|e| e.to_string())
}

fn classify(opts: &Options) -> Result<SuiteReport, String> {
    suite_classify(&[g(2, 3)], 1_000, SEED, opts).map_err(|e| e.to_string())
}

fn z2() -> Result<SuiteReport, String> {
    let grid: Vec<(i64, i64)> = (2..=4).flat_map(|m| (2..=4).map(move |n| (m, n))).collect();
    suite_z2(&grid, 4).map_err(|e| e.to_string())
}

fn witnesses() -> Result<SuiteReport, String> {
    let gs: Vec<Params> = coprime(1, 7).into_iter().map(|(m, n)| g(m, n)).collect();
    suite_witnesses(&gs).map_err(|e| e.to_string())
}

fn gmnoccur() -> Result<SuiteReport, String> {
    suite_gmnoccur(&[g(2, 3), g(3, 5), g(1, 2), g(2, 7)], 5).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let r = keep("oracle", oracle(&Options::default())?);
    if r.trials != 30_000 {
        return Err(format!("ran {} trials", r.trials));
    }
    require(&r)
}

fn criterion_2() -> Outcome {
    let r = keep("z2", z2()?);
    if r.trials != 9 {
        return Err(format!("checked {} groups, expected 9", r.trials));
    }
    require(&r)
}

fn criterion_3() -> Outcome {
    let groups = ct_groups();
    if groups.len() != 17 {
        return Err(format!("{} coprime pairs", groups.len()));
    }
    require(&keep("ct", ct(&Options::default())?))
}

fn criterion_4() -> Outcome {
    for (m, n) in coprime(1, 7) {
        let p = g(m, n);
        match weak_ah_witness(&p) {
            Some(w) if m != n => {
                if !w.verify().map_err(|e| e.to_string())? || w.e1.abs() == w.e2.abs() {
                    return Err(format!("weak-AH witness fails in {p}"));
                }
            }
            None if m == n => {}
            other => return Err(format!("{p}: unexpected weak-AH result {other:?}")),
        }
        match csa_violation_witness(&p) {
            Some(c) if !p.is_abelian() => {
                if !c.verify().map_err(|e| e.to_string())? {
                    return Err(format!("CSA witness fails in {p}"));
                }
            }
            None if p.is_abelian() => {}
            other => return Err(format!("{p}: unexpected CSA result {other:?}")),
        }
    }
    require(&keep("witnesses", witnesses()?))
}

fn criterion_5() -> Outcome {
    for p in [g(2, 3), g(3, 5), g(1, 2), g(2, 7)] {
        for k in 1..=5 {
            for side in [Side::N, Side::M] {
                let c = bezout_certificate(&p, k, side).map_err(|e| e.to_string())?;
                if !(c.bezout_holds() && c.evaluation_holds() && c.word_holds().map_err(|e| e.to_string())?) {
                    return Err(format!("{p} k={k} {side}"));
                }
            }
        }
    }
    let r = keep("gmnoccur", gmnoccur()?);
    if r.trials != 40 {
        return Err(format!("{} certificates", r.trials));
    }
    require(&r)
}

fn criterion_6() -> Outcome {
    let p = g(2, 3);
    let e = |s: &str| p.parse_element(s).unwrap();
    match two_gen_classify(&e("(1/2, 1)"), &e("(1/3, 1)")) {
        Ok(Classification::ContainsGildenhuys { d, base: 1, params }) if d == e("(1/6, 0)") && params == p => {}
        other => return Err(format!("first example: {other:?}")),
    }
    match two_gen_classify(&e("(1, 1)"), &e("(5/3, 2)")) {
        Ok(Classification::CommensurableCyclic { e1: 2, e2: 1, common }) if common == e("(5/3, 2)") => {}
        other => return Err(format!("second example: {other:?}")),
    }
    match two_gen_classify(&e("(1, 0)"), &e("(1/2, 0)")) {
        Ok(Classification::InsideH) => {}
        other => return Err(format!("third example: {other:?}")),
    }
    require(&keep("classify", classify(&Options::default())?))
}

fn criterion_7() -> Outcome {
    let fixtures = builtin_fixtures();
    let find = |name: &str| fixtures.iter().find(|f| f.name == name).unwrap();
    for (name, want) in [("z2_loop", "Z^2"), ("trefoil", "Z")] {
        let gog = &find(name).gog;
        let tree = spanning_tree(&gog.graph).map_err(|e| e.to_string())?;
        let pi = fundamental_presentation(gog, &tree).map_err(|e| e.to_string())?;
        let got = pi.simplified.abelianization().to_string();
        if got != want {
            return Err(format!("{name}: abelianization {got}, expected {want}"));
        }
    }
    for f in &fixtures {
        let base = fundamental_presentation(&f.gog, &spanning_tree(&f.gog.graph).unwrap())
            .map_err(|e| e.to_string())?
            .simplified
            .abelianization();
        for keep in 0..f.gog.graph.pair_count() {
            let ab = collapse_all_but_one(&f.gog, keep)
                .and_then(|s| s.presentation())
                .map_err(|e| e.to_string())?
                .abelianization();
            if ab != base {
                return Err(format!("{}: collapse keeping {keep} gives {ab}, expected {base}", f.name));
            }
        }
    }
    let r = keep("gog", suite_gog(&fixtures).map_err(|e| e.to_string())?);
    require(&r).map(|s| format!("{} fixtures, {s}", fixtures.len()))
}

fn criterion_8() -> Outcome {
    let parallel = Options { jobs: 4, ..Options::default() };
    let reruns: Vec<(&str, Box<dyn Fn() -> Result<SuiteReport, String>>)> = vec![
        ("oracle", Box::new(|| oracle(&parallel))),
        ("ct", Box::new(|| ct(&parallel))),
        ("classify", Box::new(|| classify(&parallel))),
        ("z2", Box::new(z2)),
        ("witnesses", Box::new(witnesses)),
        ("gmnoccur", Box::new(gmnoccur)),
        ("gog", Box::new(|| suite_gog(&builtin_fixtures()).map_err(|e| e.to_string()))),
    ];
    let first = FIRST_RUN.lock().unwrap().clone();
    for (name, rerun) in &reruns {
        let again = rerun()?.to_json();
        match first.get(name) {
            Some(before) if *before == again => {}
            Some(_) => return Err(format!("{name} report differs on rerun with jobs=4")),
            None => {
                // The earlier criterion errored out; compare two fresh runs instead.
                if rerun()?.to_json() != again {
                    return Err(format!("{name} report differs between reruns"));
                }
            }
        }
    }
    Ok(format!("{} suites byte-identical on rerun (seeded suites with jobs=4)", reruns.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle equivalence, BS(1,k) for k in {2,3,5}", criterion_1),
        ("Z^2 subgroup of BS(m,n), 2 <= m,n <= 4", criterion_2),
        ("commutative transitivity, 17 groups G(m,n)", criterion_3),
        ("weak-AH and CSA witnesses, m,n <= 7", criterion_4),
        ("Bezout certificates, k <= 5", criterion_5),
        ("two-generator classification", criterion_6),
        ("fundamental group builder and collapse", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
