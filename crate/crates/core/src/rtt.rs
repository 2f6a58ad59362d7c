//! Invariant filtrations, stratum types and indivisible Nielsen paths.

use std::collections::HashMap;

use crate::error::RttError;
use crate::graph::{DirEdge, EdgePath, GraphMap, TurnStatus};
use crate::pf::{pf_metric, PF_TOL};

/// Default edge cap for Nielsen path searches.
pub const INP_MAX_LEN: usize = 12;

/// Nested invariant subgraphs as edge masks. `levels[0]` has no edges; every level
/// contains all vertices; the last level is the whole graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    levels: Vec<Vec<bool>>,
}

impl Filtration {
    pub fn levels(&self) -> &[Vec<bool>] {
        &self.levels
    }

    /// Number of strata.
    pub fn strata(&self) -> usize {
        self.levels.len() - 1
    }

    /// Edges of level `i` not in level `i − 1`, for `1 ≤ i ≤ strata()`.
    pub fn stratum(&self, i: usize) -> Vec<usize> {
        (0..self.levels[i].len()).filter(|&e| self.levels[i][e] && !self.levels[i - 1][e]).collect()
    }

    /// Checks a user-supplied chain of cumulative edge sets.
    pub fn validate(f: &GraphMap, levels: &[Vec<usize>]) -> Result<Self, RttError> {
        let n = f.graph().edge_count();
        let mut masks = vec![vec![false; n]];
        for (i, level) in levels.iter().enumerate() {
            let mut m = vec![false; n];
            for &e in level {
                m[e] = true;
            }
            let prev = masks.last().unwrap();
            let grows = m.iter().zip(prev).any(|(a, b)| *a && !*b);
            if prev.iter().zip(&m).any(|(p, c)| *p && !*c) || !grows {
                return Err(RttError::NotNested(i + 1));
            }
            if let Some(e) = (0..n).find(|&e| m[e] && f.edge_images()[e].edges.iter().any(|d| !m[d.edge()])) {
                return Err(RttError::NotInvariant { level: i + 1, edge: f.graph().edge_name(e).to_string() });
            }
            masks.push(m);
        }
        if masks.last().unwrap().iter().any(|&x| !x) {
            let mut all = vec![true; n];
            if n == 0 {
                all.clear();
            }
            if masks.len() == 1 || masks.last() != Some(&all) {
                masks.push(all);
            }
        }
        Ok(Filtration { levels: masks })
    }
}

/// Maximal filtration from the strongly connected components of the digraph
/// `e → edges crossed by f(e)`, lower components first, ties broken by least edge.
pub fn derive_filtration(f: &GraphMap) -> Filtration {
    let n = f.graph().edge_count();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|e| {
            let mut s: Vec<usize> = f.edge_images()[e].edges.iter().map(|d| d.edge()).collect();
            s.sort();
            s.dedup();
            s
        })
        .collect();
    let comp = tarjan(&succ);
    let k = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for e in 0..n {
        members[comp[e]].push(e);
    }
    let mut placed = vec![false; k];
    let mut levels = vec![vec![false; n]];
    for _ in 0..k {
        let ready = (0..k)
            .filter(|&c| !placed[c])
            .filter(|&c| members[c].iter().all(|&e| succ[e].iter().all(|&x| comp[x] == c || placed[comp[x]])))
            .min_by_key(|&c| members[c][0])
            .expect("condensation is acyclic");
        placed[ready] = true;
        let mut m = levels.last().unwrap().clone();
        for &e in &members[ready] {
            m[e] = true;
        }
        levels.push(m);
    }
    Filtration { levels }
}

fn tarjan(succ: &[Vec<usize>]) -> Vec<usize> {
    struct St<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next: usize,
        ncomp: usize,
    }
    fn visit(s: &mut St<'_>, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on[v] = true;
        for i in 0..s.succ[v].len() {
            let w = s.succ[v][i];
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            while let Some(w) = s.stack.pop() {
                s.on[w] = false;
                s.comp[w] = s.ncomp;
                if w == v {
                    break;
                }
            }
            s.ncomp += 1;
        }
    }
    let n = succ.len();
    let mut s = St {
        succ,
        index: vec![None; n],
        low: vec![0; n],
        on: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        next: 0,
        ncomp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.comp
}

#[derive(Clone, Debug, PartialEq)]
pub struct Type3Data {
    pub lambda: f64,
    /// `L` on the stratum edges; zero elsewhere.
    pub metric: HashMap<usize, f64>,
    /// Rows: stratum edges; entry `[j][i]` counts crossings of edge `i` by `f(edge j)`.
    pub transition: Vec<Vec<u64>>,
    pub illegal_turns: Vec<(DirEdge, DirEdge)>,
    pub residual: f64,
}

impl Type3Data {
    pub fn length(&self, p: &[DirEdge]) -> f64 {
        p.iter().map(|d| self.metric.get(&d.edge()).copied().unwrap_or(0.0)).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StratumKind {
    /// The stratum maps into the lower level.
    Type1,
    /// Stratum edges are cyclically permuted, in this order (orientations may flip).
    Type2 { cycle: Vec<DirEdge> },
    /// A single edge with `f(e) = e·u`, `u` a nontrivial path in the lower level.
    Linear { edge: DirEdge, tail: EdgePath },
    Type3(Type3Data),
}

impl StratumKind {
    pub fn name(&self) -> &'static str {
        match self {
            StratumKind::Type1 => "type1",
            StratumKind::Type2 { .. } => "type2",
            StratumKind::Linear { .. } => "linear",
            StratumKind::Type3(_) => "type3",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stratum {
    pub level: usize,
    pub edges: Vec<usize>,
    pub kind: StratumKind,
}

fn unclassifiable(f: &GraphMap, edges: &[usize], reason: &str) -> RttError {
    RttError::Unclassifiable {
        edges: edges.iter().map(|&e| f.graph().edge_name(e).to_string()).collect(),
        reason: reason.to_string(),
    }
}

pub fn classify_stratum(f: &GraphMap, filt: &Filtration, level: usize) -> Result<Stratum, RttError> {
    let edges = filt.stratum(level);
    let in_stratum = |e: usize| edges.contains(&e);
    let images = f.edge_images();
    let done = |kind| Ok(Stratum { level, edges: edges.clone(), kind });

    if edges.iter().all(|&e| images[e].edges.iter().all(|d| !in_stratum(d.edge()))) {
        return done(StratumKind::Type1);
    }
    if edges.iter().all(|&e| images[e].len() == 1 && in_stratum(images[e].edges[0].edge())) {
        let mut cycle = vec![DirEdge::new(edges[0], false)];
        loop {
            let d = *cycle.last().unwrap();
            let next = f.image(d).edges[0];
            if next.edge() == edges[0] {
                break;
            }
            cycle.push(next);
        }
        if cycle.len() != edges.len() {
            return Err(unclassifiable(f, &edges, "permutation has several cycles"));
        }
        return done(StratumKind::Type2 { cycle });
    }
    if let [e] = edges[..] {
        let img = &images[e].edges;
        let hits = img.iter().filter(|d| d.edge() == e).count();
        if hits == 1 {
            let fwd = DirEdge::new(e, false);
            let g = f.graph();
            if img[0] == fwd {
                let tail = EdgePath { start: g.terminus(fwd), edges: img[1..].to_vec() };
                return done(StratumKind::Linear { edge: fwd, tail });
            }
            if *img.last().unwrap() == fwd {
                let rev = fwd.rev();
                let tail = g.reverse(&EdgePath { start: images[e].start, edges: img[..img.len() - 1].to_vec() });
                return done(StratumKind::Linear { edge: rev, tail });
            }
        }
    }
    let index: HashMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut transition = vec![vec![0u64; edges.len()]; edges.len()];
    for (j, &e) in edges.iter().enumerate() {
        for d in &images[e].edges {
            if let Some(&i) = index.get(&d.edge()) {
                transition[j][i] += 1;
            }
        }
    }
    let pf = match pf_metric(&transition, PF_TOL) {
        Ok(pf) => pf,
        Err(e) => return Err(unclassifiable(f, &edges, &e.to_string())),
    };
    for &e in &edges {
        for rev in [false, true] {
            let d = DirEdge::new(e, rev);
            if !f.derivative(d).is_some_and(|x| in_stratum(x.edge())) {
                return Err(unclassifiable(f, &edges, "derivative leaves the stratum"));
            }
        }
    }
    let g = f.graph();
    let bound = f.turn_iteration_bound();
    let mut illegal_turns = Vec::new();
    for v in 0..g.vertex_count() {
        let dirs: Vec<DirEdge> = g.directions_at(v).into_iter().filter(|d| in_stratum(d.edge())).collect();
        for (i, &d1) in dirs.iter().enumerate() {
            for &d2 in &dirs[i + 1..] {
                if f.classify_turn(d1, d2, bound) == TurnStatus::Illegal {
                    illegal_turns.push((d1, d2));
                }
            }
        }
    }
    for &e in &edges {
        for w in images[e].edges.windows(2) {
            let turn = (w[0].rev().min(w[1]), w[0].rev().max(w[1]));
            if illegal_turns.contains(&turn) {
                return Err(unclassifiable(f, &edges, "an edge image crosses an illegal turn"));
            }
        }
    }
    let metric = edges.iter().enumerate().map(|(i, &e)| (e, pf.metric[i])).collect();
    done(StratumKind::Type3(Type3Data {
        lambda: pf.lambda,
        metric,
        transition,
        illegal_turns,
        residual: pf.residual,
    }))
}

/// An indivisible Nielsen path `p = p₁·p̄₂` with `f(pᵢ) = pᵢ·t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inp {
    pub path: EdgePath,
    pub legs: Option<(EdgePath, EdgePath, EdgePath)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InpSearch {
    Found(Inp),
    CertifiedNone,
    NoneWithinBound,
}

/// `[f(p)] = p` for a path between fixed vertices.
pub fn verify_nielsen_path(f: &GraphMap, p: &EdgePath) -> Result<bool, RttError> {
    let g = f.graph();
    g.check_path(p)?;
    if f.vertex_image(p.start) != p.start || f.vertex_image(g.end(p)) != g.end(p) {
        return Err(RttError::EndpointsNotFixed);
    }
    Ok(p.is_tight() && &f.map_path(p) == p)
}

fn is_nielsen(f: &GraphMap, p: &EdgePath) -> bool {
    verify_nielsen_path(f, p).unwrap_or(false)
}

/// Nontrivial Nielsen paths that do not split at an interior fixed vertex into two
/// Nielsen paths.
pub fn is_indivisible(f: &GraphMap, p: &EdgePath) -> bool {
    let g = f.graph();
    !p.is_trivial()
        && (1..p.len()).all(|i| {
            let at = g.terminus(p.edges[i - 1]);
            f.vertex_image(at) != at || !is_nielsen(f, &EdgePath { start: p.start, edges: p.edges[..i].to_vec() })
        })
}

/// All tight Nielsen paths of length `1..=max_len` using only `mask` edges, in
/// order of length then edge sequence.
pub fn brute_force_nielsen_paths(f: &GraphMap, mask: &[bool], max_len: usize) -> Vec<EdgePath> {
    let starts = f.fixed_vertices().into_iter().map(EdgePath::trivial).collect();
    nielsen_paths_from(f, mask, starts, max_len)
}

fn nielsen_paths_from(f: &GraphMap, mask: &[bool], mut layer: Vec<EdgePath>, max_len: usize) -> Vec<EdgePath> {
    let g = f.graph();
    let mut out: Vec<EdgePath> = layer.iter().filter(|p| !p.is_trivial() && is_nielsen(f, p)).cloned().collect();
    for _ in layer.iter().map(|p| p.len()).max().unwrap_or(0)..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for d in g.directions_at(g.end(p)) {
                if !mask[d.edge()] || p.edges.last() == Some(&d.rev()) {
                    continue;
                }
                let mut q = p.clone();
                q.edges.push(d);
                let end = g.end(&q);
                if f.vertex_image(end) == end && is_nielsen(f, &q) {
                    out.push(q.clone());
                }
                next.push(q);
            }
        }
        layer = next;
    }
    out
}

/// Searches the indivisible Nielsen path crossing a stratum.
pub fn find_inp(f: &GraphMap, filt: &Filtration, stratum: &Stratum, max_len: usize) -> Result<InpSearch, RttError> {
    let g = f.graph();
    match &stratum.kind {
        StratumKind::Type1 => Ok(InpSearch::CertifiedNone),
        StratumKind::Type2 { cycle } => {
            if cycle.len() == 1 {
                let e = cycle[0];
                let p = EdgePath { start: g.origin(e), edges: vec![e] };
                if f.vertex_image(p.start) == p.start && is_nielsen(f, &p) {
                    return Ok(InpSearch::Found(Inp { path: p, legs: None }));
                }
                return Ok(InpSearch::NoneWithinBound);
            }
            Ok(InpSearch::CertifiedNone)
        }
        StratumKind::Linear { edge, .. } => {
            // only paths that begin along the linear edge are searched
            let start = g.origin(*edge);
            if f.vertex_image(start) != start {
                return Ok(InpSearch::NoneWithinBound);
            }
            let mask = &filt.levels()[stratum.level];
            let first = vec![EdgePath { start, edges: vec![*edge] }];
            let found = nielsen_paths_from(f, mask, first, max_len.min(BRUTE_NIELSEN_LEN))
                .into_iter()
                .find(|p| is_indivisible(f, p));
            Ok(match found {
                Some(path) => InpSearch::Found(Inp { path, legs: None }),
                None => InpSearch::NoneWithinBound,
            })
        }
        StratumKind::Type3(data) => {
            let found = find_inp_type3(f, stratum, data, max_len)?;
            cross_check(f, filt, stratum, found)
        }
    }
}

/// Edge bound of the exhaustive search that backs up the Type 3 leg search.
pub const BRUTE_NIELSEN_LEN: usize = 8;

/// Short indivisible Nielsen paths crossing the stratum must be the one found; a
/// second one means the map lacks the legal-leg structure of a relative train track.
fn cross_check(f: &GraphMap, filt: &Filtration, stratum: &Stratum, found: InpSearch) -> Result<InpSearch, RttError> {
    let g = f.graph();
    let mask = &filt.levels()[stratum.level];
    let crosses = |p: &EdgePath| p.edges.iter().any(|d| stratum.edges.contains(&d.edge()));
    let known = match &found {
        InpSearch::Found(inp) => Some(&inp.path),
        _ => None,
    };
    let stray = brute_force_nielsen_paths(f, mask, BRUTE_NIELSEN_LEN)
        .into_iter()
        .filter(|p| crosses(p) && is_indivisible(f, p))
        .find(|p| known.map_or(true, |k| p != k && &g.reverse(p) != k));
    match stray {
        Some(p) => Err(RttError::StructureViolation(format!(
            "indivisible Nielsen path `{}` crosses stratum {} without legal legs",
            g.format_path(&p),
            stratum.level
        ))),
        None => Ok(found),
    }
}

fn find_inp_type3(f: &GraphMap, stratum: &Stratum, data: &Type3Data, max_len: usize) -> Result<InpSearch, RttError> {
    let g = f.graph();
    let in_stratum = |d: DirEdge| stratum.edges.contains(&d.edge());
    let one_step_illegal = |d1: DirEdge, d2: DirEdge| d1 != d2 && f.derivative(d1) == f.derivative(d2);
    let has_illegal = (0..g.vertex_count()).any(|v| {
        let dirs: Vec<DirEdge> = g.directions_at(v).into_iter().filter(|&d| in_stratum(d)).collect();
        dirs.iter().any(|&a| dirs.iter().any(|&b| one_step_illegal(a, b)))
    });
    let delta: Vec<DirEdge> = f
        .fixed_vertices()
        .into_iter()
        .flat_map(|v| f.fixed_directions(v, None).unwrap_or_default())
        .filter(|&d| in_stratum(d))
        .collect();
    if !has_illegal || delta.len() < 2 {
        return Ok(InpSearch::CertifiedNone);
    }
    let b_l: f64 = stratum.edges.iter().map(|&e| data.length(&f.edge_images()[e].edges)).sum();
    let leg_bound = b_l * data.lambda / (data.lambda - 1.0);
    let mut capped = false;
    // candidate legs: prefixes P of the ray from each fixed direction with f(P) = P·t
    let mut legs: Vec<(DirEdge, EdgePath, EdgePath)> = Vec::new();
    for &e in &delta {
        let ray = graph_ray_prefix(f, e, max_len);
        if data.length(&ray) <= leg_bound {
            capped = true;
        }
        for len in 1..=ray.len() {
            let p = EdgePath { start: g.origin(e), edges: ray[..len].to_vec() };
            if data.length(&p.edges) > leg_bound + 1e-9 {
                break;
            }
            let img = f.map_path(&p);
            if img.edges.starts_with(&p.edges) {
                let t = EdgePath { start: g.end(&p), edges: img.edges[len..].to_vec() };
                legs.push((e, p, t));
            }
        }
    }
    let mut found: Vec<Inp> = Vec::new();
    for (i, (e1, p1, t1)) in legs.iter().enumerate() {
        for (e2, p2, t2) in &legs[i + 1..] {
            if e1 == e2 || g.end(p1) != g.end(p2) || t1 != t2 {
                continue;
            }
            let (x1, x2) = (p1.edges.last().unwrap().rev(), p2.edges.last().unwrap().rev());
            if !one_step_illegal(x1, x2) {
                continue;
            }
            let (l1, l2) = (data.length(&p1.edges), data.length(&p2.edges));
            if (l1 - l2).abs() > 1e-6 * l1.max(l2) {
                continue;
            }
            let mut path = p1.clone();
            path.edges.extend(g.reverse(p2).edges);
            if is_nielsen(f, &path) {
                let dup = found.iter().any(|q| q.path == path || q.path == g.reverse(&path));
                if !dup {
                    found.push(Inp { path, legs: Some((p1.clone(), p2.clone(), t1.clone())) });
                }
            }
        }
    }
    match found.len() {
        0 if capped => Ok(InpSearch::NoneWithinBound),
        0 => Ok(InpSearch::CertifiedNone),
        1 => Ok(InpSearch::Found(found.pop().unwrap())),
        _ => Err(RttError::StructureViolation(format!(
            "{} distinct indivisible Nielsen paths cross stratum {}",
            found.len(),
            stratum.level
        ))),
    }
}

/// First `max_len` edges of `lim [fᵏ(e)]` for a fixed direction `e`, read off
/// from iterates once their first `max_len` edges repeat.
pub fn graph_ray_prefix(f: &GraphMap, e: DirEdge, max_len: usize) -> Vec<DirEdge> {
    let g = f.graph();
    let keep = 2 * max_len + 2;
    let mut w = EdgePath { start: g.origin(e), edges: vec![e] };
    for _ in 0..4 * max_len + 16 {
        let mut next = f.map_path(&w);
        next.edges.truncate(keep);
        let stable = next.edges.len() >= max_len && w.edges.len() >= max_len && next.edges[..max_len] == w.edges[..max_len];
        if stable || next == w {
            next.edges.truncate(max_len);
            return next.edges;
        }
        w = next;
    }
    w.edges.truncate(max_len);
    w.edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn rose_map(names: &[&str], images: &[&str]) -> GraphMap {
        let g = Graph::rose(names);
        let edge_map = images
            .iter()
            .map(|s| EdgePath { start: 0, edges: s.split_whitespace().map(|t| g.parse_dir(t).unwrap()).collect() })
            .collect();
        GraphMap::new(g, vec![0], edge_map).unwrap()
    }

    fn strata(f: &GraphMap) -> Vec<Vec<usize>> {
        let filt = derive_filtration(f);
        (1..=filt.strata()).map(|i| filt.stratum(i)).collect()
    }

    #[test]
    fn filtrations() {
        let ex2 = rose_map(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        assert_eq!(strata(&ex2), vec![vec![0], vec![1]]);
        let ex1 = rose_map(&["a1", "a2", "a3"], &["a1 a1", "a2 a2", "a3 a3"]);
        assert_eq!(strata(&ex1), vec![vec![0], vec![1], vec![2]]);
        let ex3 = rose_map(&["a", "b"], &["b", "a-"]);
        assert_eq!(strata(&ex3), vec![vec![0, 1]]);
    }

    #[test]
    fn user_filtration_checks() {
        let ex2 = rose_map(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        assert!(Filtration::validate(&ex2, &[vec![0], vec![0, 1]]).is_ok());
        assert!(matches!(Filtration::validate(&ex2, &[vec![1]]), Err(RttError::NotInvariant { .. })));
    }

    #[test]
    fn classification() {
        let ex3 = rose_map(&["a", "b"], &["b", "a-"]);
        let filt = derive_filtration(&ex3);
        assert!(matches!(classify_stratum(&ex3, &filt, 1).unwrap().kind, StratumKind::Type2 { .. }));
        let ex2 = rose_map(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        let filt = derive_filtration(&ex2);
        match classify_stratum(&ex2, &filt, 2).unwrap().kind {
            StratumKind::Type3(d) => assert_eq!(d.lambda, 2.0),
            k => panic!("{k:?}"),
        }
        let ba = rose_map(&["a", "b"], &["a", "b a"]);
        let filt = derive_filtration(&ba);
        assert!(matches!(classify_stratum(&ba, &filt, 2).unwrap().kind, StratumKind::Linear { .. }));
    }

    #[test]
    fn inps() {
        let ba = rose_map(&["a", "b"], &["a", "b a"]);
        let filt = derive_filtration(&ba);
        let s = classify_stratum(&ba, &filt, 2).unwrap();
        match find_inp(&ba, &filt, &s, 6).unwrap() {
            InpSearch::Found(inp) => assert_eq!(ba.graph().format_path(&inp.path), "b a b-"),
            r => panic!("{r:?}"),
        }
        let ex2 = rose_map(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        let filt = derive_filtration(&ex2);
        let s = classify_stratum(&ex2, &filt, 2).unwrap();
        assert_eq!(find_inp(&ex2, &filt, &s, 12).unwrap(), InpSearch::CertifiedNone);
        let p = EdgePath { start: 0, edges: vec![DirEdge(2)] };
        assert!(!verify_nielsen_path(&ex2, &p).unwrap());
    }

    #[test]
    fn type3_inp_with_legs() {
        let f = rose_map(&["a", "b"], &["a b", "b a b"]);
        let filt = derive_filtration(&f);
        let s = classify_stratum(&f, &filt, 1).unwrap();
        assert!(matches!(s.kind, StratumKind::Type3(_)));
        let InpSearch::Found(inp) = find_inp(&f, &filt, &s, 12).unwrap() else { panic!() };
        assert_eq!(f.graph().format_path(&inp.path), "a b a- b-");
        let (p1, p2, t) = inp.legs.unwrap();
        assert_eq!(f.map_path(&p1).edges, [p1.edges.clone(), t.edges.clone()].concat());
        assert_eq!(f.map_path(&p2).edges, [p2.edges.clone(), t.edges.clone()].concat());
    }

    #[test]
    fn two_illegal_turns_is_a_structure_violation() {
        let f = rose_map(&["a", "b"], &["a b", "a b b"]);
        let filt = derive_filtration(&f);
        let s = classify_stratum(&f, &filt, 1).unwrap();
        assert!(matches!(find_inp(&f, &filt, &s, 12), Err(RttError::StructureViolation(_))));
    }
}
