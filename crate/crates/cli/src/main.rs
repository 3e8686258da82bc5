//! `groupkit`: command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse
//! error, 3 domain precondition error.

mod group;

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use groupkit::britton::{britton_reduce, is_trivial, z2_witness, BsError, BsWord};
use groupkit::gog::{
    collapse_all_but_one, essential_check, fundamental_presentation, spanning_tree, GogError, GogFile,
    GraphOfGroups, OneEdgeSplitting,
};
use groupkit::harness::{
    builtin_fixtures, suite_classify, suite_ct, suite_gmnoccur, suite_gog, suite_oracle, suite_witnesses,
    suite_z2, Fixture, HarnessError, Options, SuiteReport,
};
use groupkit::metabelian::{
    bezout_certificate, csa_violation_witness, egcd, two_gen_classify, weak_ah_witness, Classification, GmnError,
    GmnParams, Side,
};
use groupkit::words::{bs_alphabet, parse_word};

use group::GroupSpec;

#[derive(Parser)]
#[command(name = "groupkit", version, about = "Exact computation in BS(m,n), G(m,n) and graphs of groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    WeakAh,
    Csa,
    Z2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Ct,
    Oracle,
    Z2,
    Witnesses,
    Gmnoccur,
    Classify,
    Gog,
}

#[derive(Subcommand)]
enum Cmd {
    /// Britton-reduce a word in BS(m,n) and decide triviality.
    Reduce {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Evaluate a word over {a, t} in G(m,n).
    Eval {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Classify the subgroup generated by two elements of G(m,n).
    Classify {
        #[arg(long)]
        group: GroupSpec,
        /// Two elements `(x, p)` separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        elems: String,
    },
    /// Produce and re-verify a witness.
    Witness {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long, value_enum)]
        kind: WitnessKind,
        /// Exponent box for the Z² check.
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Bezout certificate for `1/n^k` or `1/m^k` in G(m,n).
    Cert {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        target: String,
    },
    /// Presentations of the fundamental group of a graph of groups.
    Pi1 {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated edge ids forming a maximal subtree.
        #[arg(long)]
        tree: Option<String>,
        /// Collapse every edge but this one.
        #[arg(long)]
        keep: Option<String>,
        /// Report the index of each edge group in its origin vertex group.
        #[arg(long)]
        essential: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Groups to cover, repeatable or `;`-separated.
        #[arg(long = "group", value_delimiter = ';')]
        groups: Vec<GroupSpec>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exponent box (z2) or largest k (gmnoccur).
        #[arg(long)]
        bound: Option<u32>,
        /// Longest random word (oracle).
        #[arg(long, default_value_t = 30)]
        max_len: usize,
        /// Graph-of-groups files (gog); defaults to the built-in fixtures.
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Expected abelianization for each `--input`, in order (gog).
        #[arg(long, value_delimiter = ';')]
        expect: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<GmnError> for CliError {
    fn from(e: GmnError) -> Self {
        match e {
            GmnError::Parse(_) | GmnError::BadParams { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<BsError> for CliError {
    fn from(e: BsError) -> Self {
        match e {
            BsError::ZeroParameter | BsError::ParseParams(_) | BsError::Word(_) => CliError::Usage(e.to_string()),
            BsError::Metabelian(g) => g.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<GogError> for CliError {
    fn from(e: GogError) -> Self {
        match e {
            GogError::Invalid(_)
            | GogError::Disconnected
            | GogError::NotSpanningTree(_)
            | GogError::NoSuchEdge(_) => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Gmn(g) => g.into(),
            HarnessError::Bs(b) => b.into(),
            HarnessError::Gog(g) => g.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

/// A command's result in both output forms; `ok = false` exits with 1.
struct Outcome {
    text: String,
    data: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, data: Value) -> Self {
        Outcome { text, data, ok: true }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn cmd_reduce(group: &GroupSpec, word: &str) -> Result<Outcome, CliError> {
    let params = group.bs().map_err(usage)?;
    let w = BsWord::parse(word)?;
    let reduced = britton_reduce(&w, params);
    let trivial = is_trivial(&w, params);
    let shown = if reduced.is_empty() { "1".to_string() } else { reduced.to_string() };
    Ok(Outcome::ok(
        format!("reduced: {shown}\ntrivial: {trivial}"),
        json!({ "group": params.to_string(), "word": word, "reduced": reduced.to_string(), "trivial": trivial }),
    ))
}

fn cmd_eval(group: &GroupSpec, word: &str) -> Result<Outcome, CliError> {
    let params = group.g().map_err(usage)?;
    let w = parse_word(word, &bs_alphabet()).map_err(|e| usage(e.to_string()))?;
    let g = params.eval(&w)?;
    Ok(Outcome::ok(
        g.to_string(),
        json!({ "group": params.to_string(), "word": word, "element": g.to_string(), "x": g.x().to_string(), "p": g.p() }),
    ))
}

fn cmd_classify(group: &GroupSpec, elems: &str) -> Result<Outcome, CliError> {
    let params = group.g().map_err(usage)?;
    let parts: Vec<&str> = elems.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let [a, b] = parts[..] else {
        return Err(usage(format!("--elems needs exactly two elements, got {}", parts.len())));
    };
    let (g1, g2) = (params.parse_element(a)?, params.parse_element(b)?);
    let c = two_gen_classify(&g1, &g2)?;
    let mut lines = vec![format!("case: {}", c.name())];
    match &c {
        Classification::InsideH => lines.push("both generators lie in H: locally cyclic".into()),
        Classification::CommensurableCyclic { e1, e2, common } => {
            lines.push(format!("e1: {e1}"));
            lines.push(format!("e2: {e2}"));
            lines.push(format!("common: {common}"));
        }
        Classification::ContainsGildenhuys { d, base, params } => {
            lines.push(format!("d: {d}"));
            lines.push(format!("base: g{base}"));
            lines.push(format!("params: {params}"));
        }
    }
    let mut data = serde_json::to_value(&c).expect("classification serializes");
    data["group"] = json!(params.to_string());
    Ok(Outcome::ok(lines.join("\n"), data))
}

fn cmd_witness(group: &GroupSpec, kind: WitnessKind, bound: u32) -> Result<Outcome, CliError> {
    match kind {
        WitnessKind::Z2 => {
            let params = group.bs().map_err(usage)?;
            let r = z2_witness(params, bound)?;
            let text = format!(
                "u = {}\nv = {}\n[u, v] trivial: {}\npairs checked: {} (|i|, |j| <= {})\nrelations found: {:?}\nverified: {} (bounded evidence)",
                r.u, r.v, r.commutator_trivial, r.pairs_checked, r.bound, r.trivial_pairs, r.passed
            );
            let ok = r.passed;
            Ok(Outcome { text, data: serde_json::to_value(&r).expect("report serializes"), ok })
        }
        WitnessKind::WeakAh => {
            let params = group.g().map_err(usage)?;
            let Some(w) = weak_ah_witness(params) else {
                return Ok(Outcome::ok(
                    format!("witness: none ({params} has m = n)"),
                    json!({ "group": params.to_string(), "witness": null }),
                ));
            };
            let lhs = w.x.pow(w.e1).conjugate(&w.t.inv())?;
            let verified = w.verify()?;
            let text = format!(
                "x = {}\nt = {}\ne1 = {}, e2 = {}\nt x^{} t^-1 = {}\nx^{} = {}\nverified: {verified}",
                w.x, w.t, w.e1, w.e2, w.e1, lhs, w.e2, w.x.pow(w.e2)
            );
            let mut data = serde_json::to_value(&w).expect("witness serializes");
            data["group"] = json!(params.to_string());
            data["verified"] = json!(verified);
            Ok(Outcome { text, data, ok: verified })
        }
        WitnessKind::Csa => {
            let params = group.g().map_err(usage)?;
            let Some(c) = csa_violation_witness(params) else {
                return Ok(Outcome::ok(
                    format!("witness: none ({params} is abelian)"),
                    json!({ "group": params.to_string(), "witness": null }),
                ));
            };
            let conj = c.h.conjugate(&c.g)?;
            let verified = c.verify()?;
            let text = format!(
                "h = {} (in H, nontrivial)\ng = {} (not in H)\ng^-1 h g = {} (in H, nontrivial)\nverified: {verified}",
                c.h, c.g, conj
            );
            let mut data = serde_json::to_value(&c).expect("witness serializes");
            data["group"] = json!(params.to_string());
            data["conjugate"] = json!(conj.to_string());
            data["verified"] = json!(verified);
            Ok(Outcome { text, data, ok: verified })
        }
    }
}

/// `1/n^k`, `1/m^k`, `1/n` or `1/m`.
fn parse_target(s: &str) -> Result<(Side, u32), CliError> {
    let bad = || usage(format!("target `{s}` is not of the form 1/n^k or 1/m^k"));
    let rest = s.trim().strip_prefix("1/").ok_or_else(bad)?;
    let (side, exp) = match rest.split_once('^') {
        Some((b, k)) => (b.trim(), k.trim().parse::<u32>().map_err(|_| bad())?),
        None => (rest.trim(), 1),
    };
    match side {
        "n" => Ok((Side::N, exp)),
        "m" => Ok((Side::M, exp)),
        _ => Err(bad()),
    }
}

fn cmd_cert(group: &GroupSpec, target: &str) -> Result<Outcome, CliError> {
    let params = group.g().map_err(usage)?;
    let (side, k) = parse_target(target)?;
    let c = bezout_certificate(params, k, side)?;
    let (bez, ev, word) = (c.bezout_holds(), c.evaluation_holds(), c.word_holds()?);
    let value = params.eval(&c.word)?;
    let text = format!(
        "target: {} ({side}, k = {k})\nq = {}, q' = {}\nm^k q + n^k q' = 1: {bez}\nevaluation identity: {ev}\nword: {}\nword value: {value}\nverified: {}",
        c.target,
        c.q,
        c.q_prime,
        c.word_text(),
        bez && ev && word
    );
    let mut data = serde_json::to_value(&c).expect("certificate serializes");
    data["verified"] = json!(bez && ev && word);
    Ok(Outcome { text, data, ok: bez && ev && word })
}

fn load_gog(path: &PathBuf) -> Result<(GraphOfGroups, groupkit::gog::SplittingMeta), CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let (gog, meta) = GogFile::parse(&text)
        .and_then(|f| f.build())
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((gog, meta))
}

fn pair_by_name(gog: &GraphOfGroups, name: &str) -> Result<usize, CliError> {
    (0..gog.graph.pair_count())
        .find(|&k| gog.graph.half_edges[gog.graph.pair_edge(k)].name == name)
        .ok_or_else(|| usage(format!("no edge `{name}`")))
}

fn splitting_text(s: &OneEdgeSplitting) -> String {
    match s {
        OneEdgeSplitting::Amalgam { edge, a_vertices, a, b_vertices, b, alpha, alpha_bar, .. } => format!(
            "splitting: amalgam over {edge}\nA ({}): {a}\nB ({}): {b}\nalpha: [{}]\nalpha_bar: [{}]",
            a_vertices.join(", "),
            b_vertices.join(", "),
            alpha.iter().map(|w| a.format_word(w)).collect::<Vec<_>>().join(", "),
            alpha_bar.iter().map(|w| b.format_word(w)).collect::<Vec<_>>().join(", ")
        ),
        OneEdgeSplitting::Hnn { edge, base_vertices, base, alpha, alpha_bar, .. } => format!(
            "splitting: hnn over {edge}\nbase ({}): {base}\nalpha: [{}]\nalpha_bar: [{}]",
            base_vertices.join(", "),
            alpha.iter().map(|w| base.format_word(w)).collect::<Vec<_>>().join(", "),
            alpha_bar.iter().map(|w| base.format_word(w)).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn words_json(p: &groupkit::words::Presentation, ws: &[groupkit::words::Word]) -> Value {
    json!(ws.iter().map(|w| p.format_word(w)).collect::<Vec<_>>())
}

fn cmd_pi1(input: &PathBuf, tree: Option<&str>, keep: Option<&str>, essential: bool) -> Result<Outcome, CliError> {
    let (gog, meta) = load_gog(input)?;
    let report = gog.validate();
    if !report.is_valid() {
        return Err(GogError::Invalid(report.violations).into());
    }
    let tree: BTreeSet<usize> = match tree {
        None => spanning_tree(&gog.graph)?,
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| pair_by_name(&gog, name))
            .collect::<Result<_, _>>()?,
    };
    let pi = fundamental_presentation(&gog, &tree)?;
    let tree_names: Vec<String> =
        tree.iter().map(|&k| gog.graph.half_edges[gog.graph.pair_edge(k)].name.clone()).collect();
    let ab = pi.simplified.abelianization();
    let mut lines = vec![
        format!("tree: {{{}}}", tree_names.join(", ")),
        format!("raw: {}", pi.raw),
        format!("simplified: {}", pi.simplified),
        format!("abelianization: {ab}"),
    ];
    lines.extend(report.assumptions.iter().map(|a| format!("assumption: {a}")));
    let mut data = json!({
        "tree": tree_names,
        "raw": pi.raw.to_string(),
        "simplified": pi.simplified.to_string(),
        "abelianization": ab.to_string(),
        "assumptions": report.assumptions,
    });
    if let Some(name) = keep {
        let s = collapse_all_but_one(&gog, pair_by_name(&gog, name)?)?;
        lines.push(splitting_text(&s));
        let (alpha, alpha_bar) = match &s {
            OneEdgeSplitting::Amalgam { a, b, alpha, alpha_bar, .. } => (words_json(a, alpha), words_json(b, alpha_bar)),
            OneEdgeSplitting::Hnn { base, alpha, alpha_bar, .. } => {
                (words_json(base, alpha), words_json(base, alpha_bar))
            }
        };
        let groups = match &s {
            OneEdgeSplitting::Amalgam { a, b, .. } => json!({ "a": a.to_string(), "b": b.to_string() }),
            OneEdgeSplitting::Hnn { base, .. } => json!({ "base": base.to_string() }),
        };
        data["collapse"] = json!({
            "kind": s.kind(),
            "edge": name,
            "groups": groups,
            "alpha": alpha,
            "alpha_bar": alpha_bar,
            "presentation": s.presentation()?.to_string(),
        });
    }
    if essential {
        let r = essential_check(&gog, &meta);
        for end in &r.ends {
            let how = if end.computed { "computed" } else { "declared" };
            lines.push(format!("index of {}: {} ({how})", end.half_edge, end.index));
        }
        lines.push(format!("essential: {}", r.essential));
        data["essential"] = serde_json::to_value(&r).expect("report serializes");
    }
    Ok(Outcome::ok(lines.join("\n"), data))
}

fn coprime_pairs(lo_m: i64, hi: i64, strict: bool) -> Vec<GmnParams> {
    let mut out = Vec::new();
    for n in 1..=hi {
        for m in lo_m..=hi {
            if (strict && m >= n) || egcd(&m, &n).0 != 1 {
                continue;
            }
            out.push(GmnParams::from_ints(m, n).expect("coprime positive"));
        }
    }
    out
}

fn g_groups(groups: &[GroupSpec], default: impl FnOnce() -> Vec<GmnParams>) -> Result<Vec<GmnParams>, CliError> {
    if groups.is_empty() {
        return Ok(default());
    }
    groups.iter().map(|g| g.g().cloned().map_err(usage)).collect()
}

fn bs_pairs(groups: &[GroupSpec]) -> Result<Vec<(i64, i64)>, CliError> {
    groups
        .iter()
        .map(|g| {
            let p = g.bs().map_err(usage)?;
            let small = |v: &groupkit::BigInt| v.to_string().parse::<i64>().map_err(|_| usage("parameter too large"));
            Ok((small(p.m())?, small(p.n())?))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: Suite,
    groups: &[GroupSpec],
    trials: Option<u64>,
    seed: u64,
    bound: Option<u32>,
    max_len: usize,
    input: &[PathBuf],
    expect: &[String],
    jobs: usize,
) -> Result<Outcome, CliError> {
    let opts = Options { jobs, ..Options::default() };
    let report: SuiteReport = match suite {
        Suite::Ct => {
            let gs = g_groups(groups, || coprime_pairs(1, 7, true))?;
            suite_ct(&gs, trials.unwrap_or(10_000), seed, &opts)?
        }
        Suite::Oracle => {
            let ks = if groups.is_empty() {
                vec![2, 3, 5]
            } else {
                bs_pairs(groups)?
                    .into_iter()
                    .map(|(m, k)| if m == 1 { Ok(k) } else { Err(usage("the oracle suite takes groups BS(1,k)")) })
                    .collect::<Result<_, _>>()?
            };
            suite_oracle(&ks, trials.unwrap_or(10_000), max_len, seed, &opts)?
        }
        Suite::Z2 => {
            let pairs = if groups.is_empty() {
                (2..=4).flat_map(|m| (2..=4).map(move |n| (m, n))).collect()
            } else {
                bs_pairs(groups)?
            };
            suite_z2(&pairs, bound.unwrap_or(4))?
        }
        Suite::Witnesses => suite_witnesses(&g_groups(groups, || coprime_pairs(1, 7, false))?)?,
        Suite::Gmnoccur => {
            let gs = g_groups(groups, || {
                [(2, 3), (3, 5), (1, 2), (2, 7)]
                    .iter()
                    .map(|&(m, n)| GmnParams::from_ints(m, n).expect("coprime"))
                    .collect()
            })?;
            suite_gmnoccur(&gs, bound.unwrap_or(5))?
        }
        Suite::Classify => {
            let gs = g_groups(groups, || vec![GmnParams::from_ints(2, 3).expect("coprime")])?;
            suite_classify(&gs, trials.unwrap_or(1_000), seed, &opts)?
        }
        Suite::Gog => {
            if !expect.is_empty() && expect.len() != input.len() {
                return Err(usage("--expect needs one value per --input"));
            }
            let fixtures = if input.is_empty() {
                builtin_fixtures()
            } else {
                input
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let (gog, meta) = load_gog(p)?;
                        let expected_abelianization = expect.get(i).cloned();
                        Ok(Fixture { name: p.display().to_string(), gog, meta, expected_abelianization })
                    })
                    .collect::<Result<_, CliError>>()?
            };
            suite_gog(&fixtures)?
        }
    };
    let ok = report.passed();
    Ok(Outcome { text: report.to_text(), data: serde_json::to_value(&report).expect("report serializes"), ok })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.cmd {
        Cmd::Reduce { group, word } => cmd_reduce(group, word),
        Cmd::Eval { group, word } => cmd_eval(group, word),
        Cmd::Classify { group, elems } => cmd_classify(group, elems),
        Cmd::Witness { group, kind, bound } => cmd_witness(group, *kind, *bound),
        Cmd::Cert { group, target } => cmd_cert(group, target),
        Cmd::Pi1 { input, tree, keep, essential } => cmd_pi1(input, tree.as_deref(), keep.as_deref(), *essential),
        Cmd::Verify { suite, groups, trials, seed, bound, max_len, input, expect, jobs } => {
            cmd_verify(*suite, groups, *trials, *seed, *bound, *max_len, input, expect, *jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Structured => serde_json::to_string_pretty(&out.data).expect("plain data serializes"),
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
