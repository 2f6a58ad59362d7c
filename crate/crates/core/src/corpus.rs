//! The shipped example corpus and the per-instance evaluation behind
//! `invariants` and `verify`.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{GraphError, InputError, InvariantError, WordError};
use crate::json::{ClassExpect, EdgeJson, EndoJson, Expect, GraphMapJson, ImageJson, InstanceJson, RouteExpect, RouteJson};
use crate::nielsen::{analyze, Analysis, FixedPointClass, PipelineOptions, StratumOutcome};
use crate::rtt::{InpSearch, StratumKind};
use crate::route::{analyze_route, base_endomorphism, RouteOptions, RouteReport};
use crate::suite::{all_pass, theorem_suite, Verdict};

fn rose_json(names: &[&str], images: &[&[&str]]) -> GraphMapJson {
    GraphMapJson {
        vertices: vec!["*".into()],
        edges: names.iter().map(|n| EdgeJson { name: n.to_string(), from: "*".into(), to: "*".into() }).collect(),
        vertex_map: BTreeMap::from([("*".to_string(), "*".to_string())]),
        edge_map: names
            .iter()
            .zip(images)
            .map(|(n, img)| {
                let tokens: Vec<String> = img.iter().map(|t| t.to_string()).collect();
                let json = if tokens.is_empty() { ImageJson::At { path: tokens, at: "*".into() } } else { ImageJson::Path(tokens) };
                (n.to_string(), json)
            })
            .collect(),
        filtration: None,
    }
}

fn class(members: &[&str], ind: i64, rk: i64, a: i64) -> ClassExpect {
    ClassExpect { members: members.iter().map(|m| m.to_string()).collect(), ind, rk: Some(rk), a: Some(a) }
}

fn instance(name: &str, graph: GraphMapJson, classes: Vec<ClassExpect>, lefschetz: i64) -> InstanceJson {
    InstanceJson {
        name: Some(name.into()),
        endomorphism: None,
        graph_map: Some(graph),
        expect: Some(Expect { error: None, classes, lefschetz: Some(lefschetz) }),
        routes: Vec::new(),
    }
}

/// Fixed points of `x ↦ x^k` on a circle edge `e` based at `base`, by hand:
/// `t = j/(k − 1)` for `k > 1`, `t = j/(1 − k)` for `k < 0`.
fn circle_classes(edge: &str, base: &str, k: i64) -> Vec<ClassExpect> {
    let n = (1 - k).abs();
    let (ind, rk, a) = match k {
        1 => (0, 1, 0),
        k if k > 1 => (-1, 0, 2),
        _ => (1, 0, 0),
    };
    let mut out = vec![class(&[base], ind, rk, a)];
    for j in 1..n {
        let t = Ratio::new(j, n);
        out.push(class(&[&format!("{edge}@{}/{}", t.numer(), t.denom())], ind, rk, a));
    }
    out
}

fn power(token: &str, k: i64) -> Vec<&str> {
    vec![token; k.unsigned_abs() as usize]
}

/// Every shipped instance; names double as file stems.
pub fn builtin_corpus() -> Vec<InstanceJson> {
    let mut out = Vec::new();
    for n in 1..=3i64 {
        let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let images: Vec<Vec<&str>> = names.iter().map(|&e| vec![e, e]).collect();
        let images: Vec<&[&str]> = images.iter().map(Vec::as_slice).collect();
        out.push(instance(
            &format!("ex6_1_n{n}"),
            rose_json(&names, &images),
            vec![class(&["*"], 1 - 2 * n, 0, 2 * n)],
            1 - 2 * n,
        ));
    }
    out.push(instance(
        "ex6_2",
        rose_json(&["a1", "a2"], &[&["a1"], &["a2-", "a1", "a2"]]),
        vec![class(&["*"], -1, 1, 1), class(&["a2@1/4"], 1, 0, 0)],
        0,
    ));
    let mut ex3 = instance("ex6_3", rose_json(&["a", "b"], &[&["b"], &["a-"]]), vec![class(&["*"], 1, 0, 0)], 1);
    ex3.routes.push(RouteJson {
        word: "a".into(),
        generators: Some(vec!["abAB".into()]),
        expect: Some(RouteExpect { empty: true, rk: 1, a: 0, ichr: 0 }),
    });
    out.push(ex3);
    out.push(instance(
        "ex6_4",
        rose_json(&["a", "b"], &[&["a-"], &["a-", "b", "b"]]),
        vec![class(&["*"], 0, 0, 1), class(&["a@1/2", "b@1/2"], 0, 0, 1)],
        0,
    ));
    out.push(instance("derived_ba", rose_json(&["a", "b"], &[&["a"], &["b", "a"]]), vec![class(&["*"], -1, 2, 0)], -1));
    for k in -5..=5i64 {
        let token = if k < 0 { "e-" } else { "e" };
        let mut graph = rose_json(&["e"], &[&power(token, k)]);
        graph.vertices = vec!["v".into()];
        graph.edges[0] = EdgeJson { name: "e".into(), from: "v".into(), to: "v".into() };
        graph.vertex_map = BTreeMap::from([("v".to_string(), "v".to_string())]);
        if k == 0 {
            graph.edge_map.insert("e".into(), ImageJson::At { path: vec![], at: "v".into() });
        }
        let mut inst = instance(&format!("circle_k{k}"), graph, circle_classes("e", "v", k), 1 - k);
        if k == 0 {
            inst.expect = Some(Expect { error: Some("non-injective".into()), ..Expect::default() });
        }
        out.push(inst);
    }
    for k in -3..=3i64 {
        let word = if k < 0 { "A".repeat((-k) as usize) } else { "a".repeat(k as usize) };
        let expect = if k == 0 {
            Expect { error: Some("non-injective".into()), ..Expect::default() }
        } else {
            Expect { error: None, classes: circle_classes("a", "*", k), lefschetz: Some(1 - k) }
        };
        out.push(InstanceJson {
            name: Some(format!("rank1_k{k}")),
            endomorphism: Some(EndoJson {
                rank: 1,
                letters: vec!["a".into()],
                images: BTreeMap::from([("a".to_string(), word)]),
            }),
            graph_map: None,
            expect: Some(expect),
            routes: Vec::new(),
        });
    }
    out
}

/// Writes `<name>.json` for every shipped instance.
pub fn emit_corpus(dir: &Path) -> Result<Vec<String>, InputError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for inst in builtin_corpus() {
        let name = inst.name.clone().expect("corpus instances are named");
        let file = format!("{name}.json");
        std::fs::write(dir.join(&file), inst.to_pretty())?;
        written.push(file);
    }
    Ok(written)
}

#[derive(Clone, Debug, Default)]
pub struct EvalOptions {
    pub pipeline: PipelineOptions,
    pub route: RouteOptions,
}

/// Everything computed for one instance.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub name: String,
    pub analysis: Option<Analysis>,
    pub routes: Vec<RouteReport>,
    pub verdicts: Vec<Verdict>,
    /// Expectations the results did not meet.
    pub mismatches: Vec<String>,
    pub error: Option<String>,
    /// The input was rejected as its expectation said it would be.
    pub expected_error: bool,
}

impl Evaluation {
    /// 0 all pass, 1 some verdict or expectation fails, 2 input or structure error.
    pub fn exit_code(&self) -> i32 {
        let failed_strata = self.analysis.as_ref().map_or(false, |a| !a.failed_strata().is_empty());
        if (self.error.is_some() && !self.expected_error) || failed_strata {
            2
        } else if !self.mismatches.is_empty() || !all_pass(&self.verdicts) {
            1
        } else {
            0
        }
    }
}

fn is_non_injective(e: &InputError) -> bool {
    matches!(e, InputError::Graph(GraphError::NotInjective) | InputError::Word(WordError::NotInjective))
}

pub fn evaluate(inst: &InstanceJson, opts: &EvalOptions) -> Evaluation {
    let mut ev = Evaluation {
        name: inst.name.clone().unwrap_or_default(),
        analysis: None,
        routes: Vec::new(),
        verdicts: Vec::new(),
        mismatches: Vec::new(),
        error: None,
        expected_error: false,
    };
    let expect = inst.expect.clone().unwrap_or_default();
    let (f, levels) = match inst.load() {
        Ok(x) => x,
        Err(e) => {
            ev.expected_error = expect.error.as_deref() == Some("non-injective") && is_non_injective(&e);
            ev.error = Some(e.to_string());
            return ev;
        }
    };
    if let Some(want) = &expect.error {
        ev.mismatches.push(format!("expected rejection ({want}), input was accepted"));
    }
    let analysis = match analyze(&f, levels.as_deref(), &opts.pipeline) {
        Ok(a) => a,
        Err(e) => {
            ev.error = Some(e.to_string());
            return ev;
        }
    };
    match run_routes(&analysis, &inst.routes, &opts.route) {
        Ok(routes) => ev.routes = routes,
        Err(e) => ev.error = Some(e.to_string()),
    }
    ev.mismatches.extend(compare(&analysis, &expect));
    for (json, report) in inst.routes.iter().zip(&ev.routes) {
        if let Some(want) = &json.expect {
            let got = RouteExpect { empty: report.is_empty_class(), rk: report.rk, a: report.a, ichr: report.ichr() };
            if &got != want {
                ev.mismatches.push(format!("route {}: expected {want:?}, got {got:?}", json.word));
            }
        }
    }
    ev.verdicts = theorem_suite(&analysis, &ev.routes);
    ev.analysis = Some(analysis);
    ev
}

pub fn run_routes(a: &Analysis, routes: &[RouteJson], opts: &RouteOptions) -> Result<Vec<RouteReport>, InvariantError> {
    if routes.is_empty() {
        return Ok(Vec::new());
    }
    let basis = base_endomorphism(a)?.basis().clone();
    routes
        .iter()
        .map(|r| {
            let mut o = opts.clone();
            if let Some(gens) = &r.generators {
                o.generators = Some(gens.iter().map(|g| basis.parse(g)).collect::<Result<_, _>>()?);
            }
            analyze_route(a, &basis.parse(&r.word)?, &o)
        })
        .collect()
}

fn compare(a: &Analysis, expect: &Expect) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(l) = expect.lefschetz {
        if l != a.lefschetz {
            out.push(format!("lefschetz: expected {l}, got {}", a.lefschetz));
        }
    }
    if expect.classes.is_empty() {
        return out;
    }
    if expect.classes.len() != a.classes.len() {
        out.push(format!("expected {} classes, got {}", expect.classes.len(), a.classes.len()));
    }
    for want in &expect.classes {
        let mut names = want.members.clone();
        names.sort();
        let got = a.classes.iter().find(|c| {
            let mut n = c.names.clone();
            n.sort();
            n == names
        });
        let Some(c) = got else {
            out.push(format!("no class with members {:?}", want.members));
            continue;
        };
        let have = (c.ind, c.rk, c.a);
        if have != (want.ind, want.rk.or(c.rk), want.a.or(c.a)) {
            out.push(format!("class {:?}: expected (ind, rk, a) = ({}, {:?}, {:?}), got {have:?}", want.members, want.ind, want.rk, want.a));
        }
    }
    out
}

pub const REPORT_PREFIX: usize = 16;

fn opt_json(x: Option<i64>) -> Value {
    x.map_or(json!("unverified"), |v| json!(v))
}

pub fn stratum_json(a: &Analysis, s: &StratumOutcome) -> Value {
    let g = a.sub.map.graph();
    let names = |edges: &[usize]| edges.iter().map(|&e| g.edge_name(e).to_string()).collect::<Vec<_>>();
    match s {
        StratumOutcome::Failed { edges, reason } => json!({"edges": names(edges), "kind": "unclassified", "reason": reason}),
        StratumOutcome::Classified { stratum, inp } => {
            let mut v = json!({"edges": names(&stratum.edges), "kind": stratum.kind.name()});
            if let StratumKind::Type3(d) = &stratum.kind {
                v["lambda"] = json!(format!("{:.12}", d.lambda));
                v["pf_residual"] = json!(d.residual);
            }
            v["inp"] = match inp {
                InpSearch::Found(i) => json!(g.format_path(&i.path)),
                InpSearch::CertifiedNone => json!("certified-none"),
                InpSearch::NoneWithinBound => json!("none-within-bound"),
            };
            v
        }
    }
}

/// One class with attracting-ray prefixes of length `prefix_len`.
pub fn class_json(c: &FixedPointClass, prefix_len: usize) -> Value {
    let rays: Vec<Value> = c
        .attracting
        .iter()
        .map(|w| {
            let prefix = w.prefix(prefix_len).map(|p| w.basis().format(&p)).unwrap_or_default();
            json!({"ray": w.describe(), "prefix": prefix})
        })
        .collect();
    json!({
        "members": c.names,
        "ind": c.ind,
        "rk": opt_json(c.rk),
        "a": opt_json(c.a),
        "ichr": opt_json(c.ichr()),
        "delta": c.delta,
        "provenance": c.provenance.join(" > "),
        "attracting": rays,
    })
}

pub fn route_json(r: &RouteReport) -> Value {
    let b = r.endo.basis();
    json!({
        "route": b.format(&r.route),
        "endomorphism": r.endo.format_images(),
        "empty": r.is_empty_class(),
        "equivalent_to": r.class.as_ref().map(|(i, u)| json!({"class": i, "conjugator": b.format(u)})),
        "depth": r.depth,
        "ind": r.ind,
        "rk": r.rk,
        "generators": r.generators.iter().map(|g| b.format(g)).collect::<Vec<_>>(),
        "a": r.a,
        "ichr": r.ichr(),
        "candidate_rays": r.candidates,
    })
}

/// The machine-readable report of one evaluation.
pub fn report_json(ev: &Evaluation) -> Value {
    let mut out = json!({"name": ev.name});
    if let Some(e) = &ev.error {
        out["error"] = json!(e);
        out["expected_error"] = json!(ev.expected_error);
    }
    if let Some(a) = &ev.analysis {
        let classes: Vec<Value> = a.classes.iter().map(|c| class_json(c, REPORT_PREFIX)).collect();
        out["classes"] = json!(classes);
        out["lefschetz"] = json!(a.lefschetz);
        out["chi"] = json!(a.chi);
        out["subdivided"] = json!(!a.sub.is_trivial());
        out["strata"] = json!(a.strata.iter().map(|s| stratum_json(a, s)).collect::<Vec<_>>());
    }
    if !ev.routes.is_empty() {
        out["routes"] = json!(ev.routes.iter().map(route_json).collect::<Vec<_>>());
    }
    if !ev.verdicts.is_empty() {
        let status: serde_json::Map<String, Value> =
            ev.verdicts.iter().map(|v| (v.name.to_string(), json!(v.status))).collect();
        let detail: serde_json::Map<String, Value> =
            ev.verdicts.iter().map(|v| (v.name.to_string(), json!(v.detail))).collect();
        out["verdicts"] = Value::Object(status);
        out["verdict_details"] = Value::Object(detail);
    }
    out["mismatches"] = json!(ev.mismatches);
    out["exit"] = json!(ev.exit_code());
    out
}
