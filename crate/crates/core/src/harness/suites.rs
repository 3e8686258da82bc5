use num_bigint::BigInt;
use rand::Rng;
use serde_json::json;

use super::{
    run_streams, sample_element, sample_nonidentity, sample_x, stream_id, trial_rng, Failure, Fixture,
    HarnessError, Options, Sampling, SuiteReport,
};
use crate::britton::{eval_metabelian, is_trivial, z2_witness, BsParams, BsWord};
use crate::exact::Ratio;
use crate::gog::{
    all_spanning_trees, collapse_all_but_one, essential_check, fundamental_presentation, spanning_tree,
};
use crate::metabelian::{
    bezout_certificate, csa_violation_witness, gmn_subgroup_params, two_gen_classify, weak_ah_witness,
    Classification, GmnElement, GmnParams, Side, GEN_A, GEN_T,
};
use crate::words::Abelianization;

/// Re-draws of `h` allowed in one CT trial before it is reported as vacuous.
const MAX_REDRAWS: u32 = 64;

fn names(params: &[GmnParams]) -> Vec<String> {
    params.iter().map(|p| p.to_string()).collect()
}

fn fail(seed: u64, trial: u64, inputs: serde_json::Value, expected: impl Into<String>, got: impl Into<String>) -> Failure {
    Failure { seed, trial, inputs, expected: expected.into(), got: got.into() }
}

/// One commutative-transitivity trial: `h ≠ 1`, then `g`, `k` in its
/// centralizer at random t-exponents; `g` and `k` must commute.
pub fn ct_trial(params: &GmnParams, seed: u64, stream: u64, s: &Sampling) -> Vec<Failure> {
    let mut rng = trial_rng(seed, stream);
    for _ in 0..MAX_REDRAWS {
        let h = sample_nonidentity(&mut rng, params, s);
        for _ in 0..s.retry_budget {
            let (q1, q2) = (rng.gen_range(-s.b..=s.b), rng.gen_range(-s.b..=s.b));
            let (f1, f2) = (sample_x(&mut rng, params, s), sample_x(&mut rng, params, s));
            let g = h.centralizer_sample_with(q1, &f1).expect("h is not the identity");
            let k = h.centralizer_sample_with(q2, &f2).expect("h is not the identity");
            let (Some(g), Some(k)) = (g, k) else { continue };
            let inputs = json!({
                "group": params.to_string(),
                "h": h.to_string(),
                "g": g.to_string(),
                "k": k.to_string(),
            });
            let mut out = Vec::new();
            for (name, x) in [("g", &g), ("k", &k)] {
                if !x.commutes(&h).expect("same group") {
                    out.push(fail(seed, stream, inputs.clone(), format!("[{name}, h] = 1"), "sampler returned a non-commuting element"));
                }
            }
            let c = g.commutator(&k).expect("same group");
            if !c.is_identity() {
                out.push(fail(seed, stream, inputs, "[g, k] = 1", format!("[g, k] = {c}")));
            }
            return out;
        }
    }
    vec![fail(
        seed,
        stream,
        json!({ "group": params.to_string() }),
        "a non-vacuous trial",
        format!("no centralizer pair after {MAX_REDRAWS} draws of h"),
    )]
}

pub fn suite_ct(params: &[GmnParams], trials: u64, seed: u64, opts: &Options) -> Result<SuiteReport, HarnessError> {
    let s = opts.sampling;
    let streams: Vec<u64> = (0..params.len()).flat_map(|g| (0..trials).map(move |t| stream_id(g, t))).collect();
    let failures = run_streams(&streams, opts.jobs, |st| ct_trial(&params[(st >> 32) as usize], seed, st, &s))?;
    let mut notes = Vec::new();
    if params.iter().any(|p| p.is_abelian()) {
        notes.push("G(1,1) is abelian, so its trials hold trivially".to_string());
    }
    let parameters = json!({ "groups": names(params), "trials": trials, "seed": seed, "sampling": s });
    Ok(SuiteReport::new("ct", parameters, params.len() as u64 * trials, failures, notes))
}

fn random_bs_word<R: Rng>(rng: &mut R, max_len: usize) -> BsWord {
    let len = rng.gen_range(0..=max_len);
    let mut w = BsWord::empty();
    for _ in 0..len {
        let e: i64 = if rng.gen() { 1 } else { -1 };
        let letter = if rng.gen() { BsWord::a_pow(BigInt::from(e)) } else { BsWord::t_pow(e) };
        w = w.concat(&letter);
    }
    w
}

fn oracle_compare(k: &BigInt, w: &BsWord, must_be_trivial: bool) -> Result<Option<(String, String)>, HarnessError> {
    let bs = BsParams::new(BigInt::from(1), k.clone())?;
    let britton = is_trivial(w, &bs);
    let meta = eval_metabelian(w, k)?.is_identity();
    if britton != meta {
        return Ok(Some((format!("britton={britton} equals metabelian"), format!("metabelian={meta}"))));
    }
    if must_be_trivial && !britton {
        return Ok(Some(("trivial".to_string(), "nontrivial in both".to_string())));
    }
    Ok(None)
}

/// One oracle trial in `BS(1,k)`: a random word `w`, and `w·r^{±1}·w⁻¹`
/// for the defining relator `r`, which must be trivial.
pub fn oracle_trial(k: &BigInt, max_len: usize, seed: u64, stream: u64) -> Vec<Failure> {
    let mut rng = trial_rng(seed, stream);
    let w = random_bs_word(&mut rng, max_len);
    let bs = BsParams::new(BigInt::from(1), k.clone()).expect("k >= 2");
    let r = bs.relator().pow(if rng.gen() { 1 } else { -1 });
    let conj = w.concat(&r).concat(&w.inverse());
    let mut out = Vec::new();
    for (form, word, must) in [("w", &w, false), ("w r w^-1", &conj, true)] {
        let res = oracle_compare(k, word, must).unwrap_or_else(|e| Some(("no error".into(), e.to_string())));
        if let Some((expected, got)) = res {
            let inputs = json!({ "k": k.to_string(), "form": form, "word": word.to_string() });
            out.push(fail(seed, stream, inputs, expected, got));
        }
    }
    out
}

pub fn suite_oracle(ks: &[i64], trials: u64, max_len: usize, seed: u64, opts: &Options) -> Result<SuiteReport, HarnessError> {
    if let Some(k) = ks.iter().find(|&&k| k < 2) {
        return Err(HarnessError::Param(format!("k = {k}; the oracle needs k >= 2")));
    }
    let ks: Vec<BigInt> = ks.iter().map(|&k| BigInt::from(k)).collect();
    let mut failures = Vec::new();
    for k in &ks {
        let bs = BsParams::new(BigInt::from(1), k.clone())?;
        for (form, w) in [("empty", BsWord::empty()), ("relator", bs.relator())] {
            if let Some((expected, got)) = oracle_compare(k, &w, true)? {
                failures.push(fail(seed, 0, json!({ "k": k.to_string(), "form": form, "word": w.to_string() }), expected, got));
            }
        }
    }
    let streams: Vec<u64> = (0..ks.len()).flat_map(|g| (0..trials).map(move |t| stream_id(g, t))).collect();
    failures.extend(run_streams(&streams, opts.jobs, |st| oracle_trial(&ks[(st >> 32) as usize], max_len, seed, st))?);
    let parameters = json!({
        "k": ks.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "trials": trials,
        "max_len": max_len,
        "seed": seed,
    });
    let notes = vec!["each trial checks w and w r^±1 w^-1; the empty word and relator are checked once per k".to_string()];
    Ok(SuiteReport::new("oracle", parameters, ks.len() as u64 * trials, failures, notes))
}

/// Every `(m, n)` in the grid; pairs with `|m| < 2` or `|n| < 2` are
/// skipped with a note.
pub fn suite_z2(pairs: &[(i64, i64)], bound: u32) -> Result<SuiteReport, HarnessError> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checked = 0;
    for (i, &(m, n)) in pairs.iter().enumerate() {
        if m.abs() < 2 || n.abs() < 2 {
            notes.push(format!("BS({m},{n}) skipped: needs |m|, |n| >= 2"));
            continue;
        }
        checked += 1;
        let r = z2_witness(&BsParams::<BigInt>::from_ints(m, n)?, bound)?;
        if !r.passed {
            failures.push(fail(
                0,
                i as u64,
                json!({ "group": format!("BS({m},{n})"), "bound": bound }),
                "commuting pair with no relation in the box",
                format!("commutator_trivial={} trivial_pairs={:?}", r.commutator_trivial, r.trivial_pairs),
            ));
        }
    }
    notes.push(format!("faithfulness is checked only for exponents within ±{bound}"));
    let parameters = json!({ "groups": pairs.iter().map(|(m, n)| format!("BS({m},{n})")).collect::<Vec<_>>(), "bound": bound });
    Ok(SuiteReport::new("z2", parameters, checked, failures, notes))
}

pub fn suite_witnesses(params: &[GmnParams]) -> Result<SuiteReport, HarnessError> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checks = 0u64;
    for (i, p) in params.iter().enumerate() {
        let trial = i as u64;
        let group = p.to_string();
        match weak_ah_witness(p) {
            None => notes.push(format!("{group}: no weak-AH witness (m = n)")),
            Some(w) => {
                checks += 1;
                let inputs = json!({ "group": group, "witness": "weak-ah", "e1": w.e1, "e2": w.e2 });
                let direct = &(&w.t * &w.x.pow(w.e1)) * &w.t.inv();
                let word = BsWord::from_syllables(BigInt::from(0), vec![(1, BigInt::from(w.e1)), (-1, BigInt::from(-w.e2))]);
                let bs = BsParams::new(p.m().clone(), p.n().clone())?;
                let checks_ok = [
                    ("verify", w.verify()?),
                    ("t x^e1 t^-1 = x^e2", direct == w.x.pow(w.e2)),
                    ("|e1| != |e2|", w.e1.abs() != w.e2.abs()),
                    ("t a^e1 t^-1 a^-e2 trivial in BS(m,n)", is_trivial(&word, &bs)),
                    ("t a^e1 t^-1 a^-e2 evaluates to 1", word.eval_in(p).is_identity()),
                ];
                for (what, ok) in checks_ok {
                    if !ok {
                        failures.push(fail(0, trial, inputs.clone(), what, "false"));
                    }
                }
            }
        }
        match csa_violation_witness(p) {
            None => notes.push(format!("{group}: no CSA witness (abelian)")),
            Some(c) => {
                checks += 1;
                let inputs = json!({ "group": group, "witness": "csa", "h": c.h.to_string(), "g": c.g.to_string() });
                let direct = &(&c.g.inv() * &c.h) * &c.g;
                let n = Ratio::from_integer(p.n().clone());
                let closed = Ratio::new(p.n().clone() * p.n().clone(), p.m().clone()).expect("m >= 1");
                let checks_ok = [
                    ("verify", c.verify()?),
                    ("h = (n, 0)", c.h.in_h() && c.h.x() == &n),
                    ("g not in H", !c.g.in_h()),
                    ("g^-1 h g = (n^2/m, 0)", direct.in_h() && direct.x() == &closed),
                ];
                for (what, ok) in checks_ok {
                    if !ok {
                        failures.push(fail(0, trial, inputs.clone(), what, "false"));
                    }
                }
            }
        }
    }
    Ok(SuiteReport::new("witnesses", json!({ "groups": names(params) }), checks, failures, notes))
}

pub fn suite_gmnoccur(params: &[GmnParams], k_max: u32) -> Result<SuiteReport, HarnessError> {
    if let Some(p) = params.iter().find(|p| p.is_abelian()) {
        return Err(HarnessError::Param(format!("{p} needs max(m, n) > 1")));
    }
    let mut failures = Vec::new();
    let mut checks = 0u64;
    for (i, p) in params.iter().enumerate() {
        for k in 1..=k_max {
            for side in [Side::N, Side::M] {
                checks += 1;
                let c = bezout_certificate(p, k, side)?;
                let inputs = json!({ "group": p.to_string(), "k": k, "side": side.to_string(), "word": c.word_text() });
                let via_britton = BsWord::from_word(&c.word, GEN_A, GEN_T)?.eval_in(p);
                let checks_ok = [
                    ("m^k q + n^k q' = 1", c.bezout_holds()),
                    ("exact evaluation hits the target", c.evaluation_holds()),
                    ("word evaluates to the target", c.word_holds()?),
                    ("independent evaluation agrees", via_britton.in_h() && via_britton.x() == &c.target),
                ];
                for (what, ok) in checks_ok {
                    if !ok {
                        failures.push(fail(0, i as u64, inputs.clone(), what, "false"));
                    }
                }
            }
        }
    }
    let parameters = json!({ "groups": names(params), "k_max": k_max });
    Ok(SuiteReport::new("gmnoccur", parameters, checks, failures, Vec::new()))
}

/// Consistency checks for one classification of `⟨g1, g2⟩`.
fn classify_checks(g1: &GmnElement, g2: &GmnElement) -> Vec<(&'static str, String)> {
    let mut bad = Vec::new();
    let c = match two_gen_classify(g1, g2) {
        Ok(c) => c,
        Err(e) => return vec![("classification succeeds", e.to_string())],
    };
    let (p, q) = (g1.p(), g2.p());
    match &c {
        Classification::InsideH => {
            if p != 0 || q != 0 {
                bad.push(("inside-h only when p = q = 0", format!("p={p} q={q}")));
            }
        }
        Classification::CommensurableCyclic { e1, e2, common } => {
            if (*e1, *e2) != (q, p) {
                bad.push(("(e1, e2) = (q, p)", format!("({e1}, {e2})")));
            }
            if &g1.pow(*e1) != common || &g2.pow(*e2) != common {
                bad.push(("g1^e1 = g2^e2 = common", common.to_string()));
            }
        }
        Classification::ContainsGildenhuys { d, base, params } => {
            if !d.in_h() || d.is_identity() {
                bad.push(("d in H, d != 1", d.to_string()));
            }
            if d != &(&g1.pow(q) * &g2.pow(-p)) {
                bad.push(("d = g1^q g2^-p", d.to_string()));
            }
            let b = if *base == 1 { g1 } else { g2 };
            if b.p() == 0 {
                bad.push(("base has nonzero t-exponent", b.to_string()));
                return bad;
            }
            match gmn_subgroup_params(d.x(), b.p(), g1.params()) {
                Ok(expect) if &expect == params => {}
                other => bad.push(("params from (m/n)^p", format!("{other:?}"))),
            }
            // b acts on d as t acts on a in G(m', n').
            let conj = &(b * d) * &b.inv();
            let ratio = Ratio::new(params.m().clone(), params.n().clone()).expect("n' >= 1");
            if !conj.in_h() || conj.x() != &(d.x() * &ratio) {
                bad.push(("b d b^-1 = d^(m'/n')", conj.to_string()));
            }
            if !params.is_abelian() {
                let cert = bezout_certificate(params, 1, Side::N).expect("nonabelian");
                if !cert.word_holds_in(d, b).unwrap_or(false) {
                    bad.push(("Bezout word realises d/n' inside <d, b>", cert.word_text()));
                }
            }
        }
    }
    bad
}

/// One random classification trial.
pub fn classify_trial(params: &GmnParams, seed: u64, stream: u64, s: &Sampling) -> Vec<Failure> {
    let mut rng = trial_rng(seed, stream);
    let g1 = sample_element(&mut rng, params, s);
    let g2 = sample_element(&mut rng, params, s);
    let inputs = json!({ "group": params.to_string(), "g1": g1.to_string(), "g2": g2.to_string() });
    classify_checks(&g1, &g2)
        .into_iter()
        .map(|(expected, got)| fail(seed, stream, inputs.clone(), expected, got))
        .collect()
}

pub fn suite_classify(params: &[GmnParams], trials: u64, seed: u64, opts: &Options) -> Result<SuiteReport, HarnessError> {
    let s = opts.sampling;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let g23 = GmnParams::from_ints(2, 3)?;
    if params.contains(&g23) {
        let worked = [
            ("(1/2, 1)", "(1/3, 1)", "contains-gildenhuys"),
            ("(1, 1)", "(5/3, 2)", "commensurable-cyclic"),
            ("(1, 0)", "(1/2, 0)", "inside-h"),
        ];
        for (a, b, want) in worked {
            let (g1, g2) = (g23.parse_element(a)?, g23.parse_element(b)?);
            let got = two_gen_classify(&g1, &g2)?.name();
            let inputs = json!({ "group": "G(2,3)", "g1": a, "g2": b });
            if got != want {
                failures.push(fail(seed, 0, inputs.clone(), want, got));
            }
            for (expected, got) in classify_checks(&g1, &g2) {
                failures.push(fail(seed, 0, inputs.clone(), expected, got));
            }
        }
        notes.push("worked examples in G(2,3) checked".to_string());
    }
    let streams: Vec<u64> = (0..params.len()).flat_map(|g| (0..trials).map(move |t| stream_id(g, t))).collect();
    failures.extend(run_streams(&streams, opts.jobs, |st| classify_trial(&params[(st >> 32) as usize], seed, st, &s))?);
    let parameters = json!({ "groups": names(params), "trials": trials, "seed": seed, "sampling": s });
    Ok(SuiteReport::new("classify", parameters, params.len() as u64 * trials, failures, notes))
}

/// Spanning trees enumerated per fixture.
const TREE_LIMIT: usize = 64;

pub fn suite_gog(fixtures: &[Fixture]) -> Result<SuiteReport, HarnessError> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checks = 0u64;
    for (i, fx) in fixtures.iter().enumerate() {
        fx.gog.ensure_valid()?;
        let g = &fx.gog;
        let trial = i as u64;
        let mut push = |what: String, got: String| {
            failures.push(fail(0, trial, json!({ "fixture": fx.name }), what, got));
        };
        let default_tree = spanning_tree(&g.graph)?;
        let mut trees = all_spanning_trees(&g.graph, TREE_LIMIT);
        if !trees.contains(&default_tree) {
            push("BFS tree is a maximal subtree".into(), format!("{default_tree:?}"));
            trees.insert(0, default_tree.clone());
        }
        let reference: Abelianization = fundamental_presentation(g, &default_tree)?.simplified.abelianization();
        if let Some(want) = &fx.expected_abelianization {
            checks += 1;
            if &reference.to_string() != want {
                push(format!("abelianization {want}"), reference.to_string());
            }
        }
        let formula = |t: usize| {
            g.vertex_relators.iter().map(Vec::len).sum::<usize>()
                + g.graph.pair_count()
                + t
                + g.edge_generators.iter().map(Vec::len).sum::<usize>()
        };
        for t in &trees {
            checks += 1;
            let pi = fundamental_presentation(g, t)?;
            if pi.raw.relators().len() != formula(t.len()) {
                push(format!("{} raw relators", formula(t.len())), pi.raw.relators().len().to_string());
            }
            let (raw, simp) = (pi.raw.abelianization(), pi.simplified.abelianization());
            if raw != simp {
                push(format!("raw abelianization equals simplified ({simp})"), raw.to_string());
            }
            if simp != reference {
                push(format!("tree {t:?} gives {reference}"), simp.to_string());
            }
        }
        for keep in 0..g.graph.pair_count() {
            checks += 1;
            let split = collapse_all_but_one(g, keep)?;
            let ab = split.presentation()?.abelianization();
            if ab != reference {
                push(format!("collapse keeping pair {keep} gives {reference}"), ab.to_string());
            }
        }
        let ess = essential_check(g, &fx.meta);
        notes.push(format!(
            "{}: abelianization {reference}, {} tree(s), {} collapse(s), essential={}",
            fx.name,
            trees.len(),
            g.graph.pair_count(),
            ess.essential
        ));
    }
    let parameters = json!({ "fixtures": fixtures.iter().map(|f| f.name.clone()).collect::<Vec<_>>() });
    Ok(SuiteReport::new("gog", parameters, checks, failures, notes))
}
