//! Instance-level checks of the inequalities relating `ind`, `rk`, `a`, `χ`.

use serde::Serialize;

use crate::nielsen::Analysis;
use crate::route::RouteReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub status: Status,
    /// The instantiated statement.
    pub detail: String,
}

impl Verdict {
    fn new(name: &'static str, ok: bool, detail: String) -> Self {
        Verdict { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
    }

    fn skip(name: &'static str, why: &str) -> Self {
        Verdict { name, status: Status::NotApplicable, detail: why.to_string() }
    }
}

/// `ind ≤ ichr` for every verified class.
fn index_bound(a: &Analysis) -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for c in &a.classes {
        if let Some(ichr) = c.ichr() {
            ok &= c.ind <= ichr;
            parts.push(format!("{} <= {}", c.ind, ichr));
        }
    }
    if parts.is_empty() {
        return Verdict::skip("thm_main_1", "no verified class");
    }
    let mut v = Verdict::new("thm_main_1", ok, parts.join("; "));
    if !ok {
        v.detail.push_str(" (violates a theorem: input invalid or bug)");
    }
    v
}

/// `ind = ichr` for every essential verified class when `χ = −1`.
fn equality_at_chi_minus_one(a: &Analysis) -> Verdict {
    if a.chi != -1 {
        return Verdict::skip("thm_fig8", &format!("chi = {}", a.chi));
    }
    let mut parts = Vec::new();
    let mut ok = true;
    for c in a.classes.iter().filter(|c| c.ind != 0) {
        if let Some(ichr) = c.ichr() {
            ok &= c.ind == ichr;
            parts.push(format!("{} = {}", c.ind, ichr));
        }
    }
    if parts.is_empty() {
        return Verdict::skip("thm_fig8", "no essential verified class");
    }
    Verdict::new("thm_fig8", ok, parts.join("; "))
}

/// `Σ max{0, rk + a/2 − 1} ≤ −χ`, computed in halves.
fn sum_bound(a: &Analysis) -> Verdict {
    if !a.verified() {
        return Verdict::skip("cor_sum_bound", "some class unverified");
    }
    let halves: i64 = a.classes.iter().map(|c| (2 * c.rk.unwrap() + c.a.unwrap() - 2).max(0)).sum();
    let bound = -2 * a.chi;
    Verdict::new("cor_sum_bound", halves <= bound, format!("{} <= {}", halves_str(halves), halves_str(bound)))
}

fn halves_str(h: i64) -> String {
    if h % 2 == 0 {
        (h / 2).to_string()
    } else {
        format!("{h}/2")
    }
}

fn lefschetz(a: &Analysis) -> Verdict {
    let sum = a.index_sum();
    Verdict::new("lefschetz", sum == a.lefschetz, format!("sum ind = {} = {} = L(f)", sum, a.lefschetz))
}

/// `tr(φ^ab) < 1` forces a class with `rk = a = 0`.
fn trace_criterion(a: &Analysis) -> Verdict {
    let trace = 1 - a.lefschetz;
    if trace >= 1 {
        return Verdict::skip("thm_trace", &format!("tr = {trace}"));
    }
    if !a.verified() {
        return Verdict::skip("thm_trace", "some class unverified");
    }
    let hit = a.classes.iter().find(|c| c.rk == Some(0) && c.a == Some(0));
    let detail = match hit {
        Some(c) => format!("tr = {trace} < 1; class {{{}}} has rk = a = 0", c.names.join(", ")),
        None => format!("tr = {trace} < 1; no class has rk = a = 0"),
    };
    Verdict::new("thm_trace", hit.is_some(), detail)
}

/// `0 ≤ ichr ≤ 1` for every analysed route whose class came out empty.
fn empty_classes(routes: &[RouteReport]) -> Verdict {
    let empty: Vec<&RouteReport> = routes.iter().filter(|r| r.is_empty_class()).collect();
    if empty.is_empty() {
        return Verdict::skip("prop_empty_class", "no empty route class");
    }
    let ok = empty.iter().all(|r| (0..=1).contains(&r.ichr()));
    let detail = empty
        .iter()
        .map(|r| format!("route {}: 0 <= {} <= 1", r.endo.basis().format(&r.route), r.ichr()))
        .collect::<Vec<_>>()
        .join("; ");
    Verdict::new("prop_empty_class", ok, detail)
}

pub fn theorem_suite(a: &Analysis, routes: &[RouteReport]) -> Vec<Verdict> {
    vec![
        index_bound(a),
        equality_at_chi_minus_one(a),
        sum_bound(a),
        lefschetz(a),
        trace_criterion(a),
        empty_classes(routes),
    ]
}

pub fn all_pass(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgePath, Graph, GraphMap};
    use crate::nielsen::{analyze, PipelineOptions};

    fn rose_analysis(names: &[&str], images: &[&str]) -> Analysis {
        let g = Graph::rose(names);
        let edge_map = images
            .iter()
            .map(|s| EdgePath { start: 0, edges: s.split_whitespace().map(|t| g.parse_dir(t).unwrap()).collect() })
            .collect();
        analyze(&GraphMap::new(g, vec![0], edge_map).unwrap(), None, &PipelineOptions::default()).unwrap()
    }

    fn find<'a>(vs: &'a [Verdict], name: &str) -> &'a Verdict {
        vs.iter().find(|v| v.name == name).unwrap()
    }

    #[test]
    fn conjugating_edge_instance() {
        let a = rose_analysis(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        let vs = theorem_suite(&a, &[]);
        assert!(all_pass(&vs), "{vs:?}");
        assert_eq!(find(&vs, "cor_sum_bound").detail, "1/2 <= 1");
        assert_eq!(find(&vs, "thm_fig8").detail, "-1 = -1; 1 = 1");
        assert_eq!(find(&vs, "prop_empty_class").status, Status::NotApplicable);
    }

    #[test]
    fn trace_below_one_has_a_trivial_class() {
        let a = rose_analysis(&["a", "b"], &["b", "a-"]);
        let v = trace_criterion(&a);
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.detail, "tr = 0 < 1; class {*} has rk = a = 0");
    }

    #[test]
    fn halves() {
        assert_eq!(halves_str(3), "3/2");
        assert_eq!(halves_str(-4), "-2");
    }
}
