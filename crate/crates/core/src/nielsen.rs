//! Fixed point classes and their invariants `ind`, `rk`, `a`, `δ`, `ichr`.
//!
//! Indices come from two independent computations that must agree: a local
//! count over the fixed set, and the stratum-by-stratum recursion that also
//! produces `rk` and `a`.

use serde::Serialize;

use crate::boundary::InfiniteWord;
use crate::endo::Endomorphism;
use crate::error::InvariantError;
use crate::graph::{DirEdge, EdgePath, GraphMap};
use crate::pi1::{induced_endo, Pi1Data};
use crate::rtt::{
    brute_force_nielsen_paths, classify_stratum, derive_filtration, find_inp, graph_ray_prefix, Filtration, InpSearch, Stratum,
    StratumKind, BRUTE_NIELSEN_LEN, INP_MAX_LEN,
};
use crate::subdivide::{scan_interior_fixed_points, subdivide_at, Subdivision};
use crate::word::Word;

/// Bottom pieces of a filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseComponent {
    Point,
    /// A circle mapped with degree `k`.
    Circle(i64),
}

/// `(ind, rk, a)` of one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaseClass {
    pub ind: i64,
    pub rk: i64,
    pub a: i64,
}

/// Classes of a point or of a degree-`k` circle map normalized to `|1 − k|`
/// fixed points.
pub fn base_invariants(c: BaseComponent) -> Result<Vec<BaseClass>, InvariantError> {
    Ok(match c {
        BaseComponent::Point => vec![BaseClass { ind: 1, rk: 0, a: 0 }],
        BaseComponent::Circle(0) => return Err(InvariantError::DegreeZero),
        BaseComponent::Circle(1) => vec![BaseClass { ind: 0, rk: 1, a: 0 }],
        BaseComponent::Circle(k) if k > 1 => vec![BaseClass { ind: -1, rk: 0, a: 2 }; (k - 1) as usize],
        BaseComponent::Circle(k) => vec![BaseClass { ind: 1, rk: 0, a: 0 }; (1 - k) as usize],
    })
}

/// `1 − tr(φ^ab)`.
pub fn lefschetz_of_endo(phi: &Endomorphism) -> i64 {
    1 - phi.trace()
}

/// `1 − tr(f_*)` on `H₁`, read through any route from vertex 0 to its image.
pub fn lefschetz_number(f: &GraphMap) -> Result<i64, InvariantError> {
    let g = f.graph();
    let data = Pi1Data::new(g, 0)?;
    if data.rank() == 0 {
        return Ok(1);
    }
    let route = data.tree_paths[f.vertex_image(0)].clone();
    Ok(lefschetz_of_endo(&induced_endo(f, 0, &route)?))
}

/// One fixed point class of the (subdivided) map. `rk` and `a` are `None` when
/// some stratum could not be put through the recursion.
#[derive(Clone, Debug)]
pub struct FixedPointClass {
    /// Fixed vertices of the subdivided graph.
    pub members: Vec<usize>,
    pub names: Vec<String>,
    /// Nielsen path from `members[0]` to each member.
    pub links: Vec<EdgePath>,
    pub delta: i64,
    pub ind: i64,
    pub rk: Option<i64>,
    pub a: Option<i64>,
    /// Recursion rules applied, bottom first.
    pub provenance: Vec<String>,
    /// Expanding fixed directions whose rays represent the attracting words.
    pub ray_directions: Vec<DirEdge>,
    pub attracting: Vec<InfiniteWord>,
}

impl FixedPointClass {
    pub fn ichr(&self) -> Option<i64> {
        Some(1 - self.rk? - self.a?)
    }

    pub fn is_verified(&self) -> bool {
        self.rk.is_some() && self.a.is_some()
    }
}

#[derive(Clone, Debug)]
pub enum StratumOutcome {
    Classified { stratum: Stratum, inp: InpSearch },
    Failed { edges: Vec<usize>, reason: String },
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub inp_max_len: usize,
    /// Path length of the brute-force partition check.
    pub brute_len: usize,
    /// Edges of each graph ray before it is read as a word.
    pub ray_len: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { inp_max_len: INP_MAX_LEN, brute_len: BRUTE_NIELSEN_LEN, ray_len: 48 }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub original: GraphMap,
    pub sub: Subdivision,
    pub filtration: Filtration,
    pub strata: Vec<StratumOutcome>,
    pub classes: Vec<FixedPointClass>,
    pub lefschetz: i64,
    pub chi: i64,
}

impl Analysis {
    pub fn verified(&self) -> bool {
        self.classes.iter().all(FixedPointClass::is_verified)
    }

    pub fn index_sum(&self) -> i64 {
        self.classes.iter().map(|c| c.ind).sum()
    }

    pub fn failed_strata(&self) -> Vec<(Vec<String>, String)> {
        let g = self.sub.map.graph();
        self.strata
            .iter()
            .filter_map(|s| match s {
                StratumOutcome::Failed { edges, reason } => {
                    Some((edges.iter().map(|&e| g.edge_name(e).to_string()).collect(), reason.clone()))
                }
                _ => None,
            })
            .collect()
    }
}

struct Group {
    members: Vec<usize>,
    links: Vec<EdgePath>,
    delta: i64,
    ind: i64,
    rk: i64,
    a: i64,
    steps: Vec<String>,
    rays: Vec<DirEdge>,
}

fn concat(f: &GraphMap, start: usize, parts: &[&EdgePath]) -> Result<EdgePath, InvariantError> {
    let raw: Vec<DirEdge> = parts.iter().flat_map(|p| p.edges.iter().copied()).collect();
    Ok(f.graph().tighten(start, &raw)?)
}

/// Subdivides at interior fixed points, filters (deriving the filtration unless
/// `levels` names original edges level by level), and runs the class recursion.
pub fn analyze(
    f: &GraphMap,
    levels: Option<&[Vec<usize>]>,
    opts: &PipelineOptions,
) -> Result<Analysis, InvariantError> {
    let scan = scan_interior_fixed_points(f);
    let sub = if scan.points.is_empty() { Subdivision::trivial(f) } else { subdivide_at(f, &scan.points)? };
    let map = &sub.map;
    let filtration = match levels {
        None => derive_filtration(map),
        Some(levels) => {
            let lifted: Vec<Vec<usize>> = levels
                .iter()
                .map(|l| (0..sub.parent.len()).filter(|&e| l.contains(&sub.parent[e].0)).collect())
                .collect();
            Filtration::validate(map, &lifted)?
        }
    };
    let (strata, mut groups) = recurse(map, &filtration, opts)?;
    let clean = strata.iter().all(stratum_ok);
    check_partition(map, &mut groups, clean, opts.brute_len)?;
    let lefschetz = lefschetz_number(f)?;
    let chi = f.graph().euler_characteristic();
    let verified = clean;
    let mut classes = Vec::with_capacity(groups.len());
    for g in groups {
        let local = local_index(map, &g.members);
        let name = map.graph().vertex_name(g.members[0]).to_string();
        if local != g.ind {
            return Err(InvariantError::IndexMismatch { class: name, local, recursive: g.ind });
        }
        if verified && g.rays.len() as i64 != g.a {
            return Err(InvariantError::RayCountMismatch { class: name, rays: g.rays.len(), increment: g.a });
        }
        classes.push(FixedPointClass {
            names: g.members.iter().map(|&v| map.graph().vertex_name(v).to_string()).collect(),
            members: g.members,
            links: g.links,
            delta: g.delta,
            ind: g.ind,
            rk: verified.then_some(g.rk),
            a: verified.then_some(g.a),
            provenance: g.steps,
            ray_directions: g.rays,
            attracting: Vec::new(),
        });
    }
    let sum: i64 = classes.iter().map(|c| c.ind).sum();
    if sum != lefschetz {
        return Err(InvariantError::LefschetzMismatch { lefschetz, sum });
    }
    let mut analysis = Analysis { original: f.clone(), sub, filtration, strata, classes, lefschetz, chi };
    if analysis.verified() {
        for i in 0..analysis.classes.len() {
            analysis.classes[i].attracting = attracting_words(&analysis, i, opts.ray_len)?;
        }
    }
    Ok(analysis)
}

fn stratum_ok(s: &StratumOutcome) -> bool {
    matches!(s, StratumOutcome::Classified { inp: InpSearch::Found(_) | InpSearch::CertifiedNone, .. })
}

/// Expanding fixed directions of a stratum at `v`. A pointwise fixed edge counts
/// once, at its forward tip.
fn stratum_delta(f: &GraphMap, kind: Option<&StratumKind>, mask: &[bool], v: usize) -> Result<Vec<DirEdge>, InvariantError> {
    let mut dirs = f.fixed_directions(v, Some(mask))?;
    if let Some(StratumKind::Type2 { cycle }) = kind {
        if cycle.len() == 1 {
            dirs.retain(|d| !d.is_reversed());
        }
    }
    Ok(dirs)
}

fn recurse(
    f: &GraphMap,
    filt: &Filtration,
    opts: &PipelineOptions,
) -> Result<(Vec<StratumOutcome>, Vec<Group>), InvariantError> {
    let g = f.graph();
    let mut groups: Vec<Group> = f
        .fixed_vertices()
        .into_iter()
        .map(|v| Group {
            members: vec![v],
            links: vec![EdgePath::trivial(v)],
            delta: 0,
            ind: 1,
            rk: 0,
            a: 0,
            steps: vec!["point".into()],
            rays: Vec::new(),
        })
        .collect();
    let group_of = |groups: &[Group], v: usize| groups.iter().position(|gr| gr.members.contains(&v));
    let mut outcomes = Vec::new();
    let mut clean = true;
    for level in 1..=filt.strata() {
        let edges = filt.stratum(level);
        let mut mask = vec![false; g.edge_count()];
        edges.iter().for_each(|&e| mask[e] = true);
        let classified = classify_stratum(f, filt, level).and_then(|s| {
            let inp = find_inp(f, filt, &s, opts.inp_max_len)?;
            Ok((s, inp))
        });
        let (kind, inp) = match &classified {
            Ok((s, inp)) => (Some(&s.kind), Some(inp)),
            Err(_) => (None, None),
        };
        // Δ per group at this stratum
        let mut deltas: Vec<Vec<DirEdge>> = Vec::with_capacity(groups.len());
        for gr in &groups {
            let mut d = Vec::new();
            for &v in &gr.members {
                d.extend(stratum_delta(f, kind, &mask, v)?);
            }
            deltas.push(d);
        }
        let tag = |rule: &str| format!("{rule}@{level}");
        let is_type3 = matches!(kind, Some(StratumKind::Type3(_)));
        let mut joined: Option<(usize, usize, &EdgePath)> = None;
        let mut dropped_ray = None;
        if let Some(InpSearch::Found(inp)) = inp {
            let x = inp.path.start;
            let y = g.end(&inp.path);
            let (gx, gy) = match (group_of(&groups, x), group_of(&groups, y)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(InvariantError::StructureViolation("Nielsen path ends off the fixed set".into())),
            };
            joined = Some((gx, gy, &inp.path));
            if let Some((_, p2, _)) = &inp.legs {
                dropped_ray = p2.edges.first().copied();
            }
        }
        for (i, gr) in groups.iter_mut().enumerate() {
            let d = deltas[i].len() as i64;
            gr.delta += d;
            gr.ind -= d;
            if is_type3 {
                gr.rays.extend(deltas[i].iter().copied().filter(|&r| Some(r) != dropped_ray));
            }
            let touched = joined.map_or(false, |(a, b, _)| a == i || b == i);
            if !touched && d > 0 {
                gr.a += d;
                gr.steps.push(tag("no-inp"));
            }
        }
        if let Some((gx, gy, p)) = joined {
            if gx == gy {
                let gr = &mut groups[gx];
                gr.rk += 1;
                gr.a += deltas[gx].len() as i64 - 1;
                gr.steps.push(tag("inp-loop"));
            } else {
                let (lo, other) = absorb(f, &mut groups, gx, gy, p)?;
                let kept = &mut groups[lo];
                kept.rk += other.rk;
                kept.a += other.a + (deltas[gx].len() + deltas[gy].len()) as i64 - 1;
                kept.delta += other.delta;
                kept.ind += other.ind;
                kept.rays.extend(other.rays);
                kept.steps.extend(other.steps);
                kept.steps.push(tag("inp-merge"));
            }
        }
        clean &= stratum_ok_parts(inp);
        if clean && groups.iter().any(|gr| gr.a < 0) {
            return Err(InvariantError::StructureViolation(format!("negative a at stratum {level}")));
        }
        outcomes.push(match classified {
            Ok((stratum, inp)) => StratumOutcome::Classified { stratum, inp },
            Err(e) => StratumOutcome::Failed { edges, reason: e.to_string() },
        });
    }
    Ok((outcomes, groups))
}

fn stratum_ok_parts(inp: Option<&InpSearch>) -> bool {
    matches!(inp, Some(InpSearch::Found(_) | InpSearch::CertifiedNone))
}

fn is_pointwise_fixed(f: &GraphMap, e: usize) -> bool {
    let d = DirEdge::new(e, false);
    f.image(d).edges == [d]
}

/// `Σ χ(C) − #{outward d : Df(d) = d}` over the fixed-set components `C` inside
/// the class.
pub fn local_index(f: &GraphMap, members: &[usize]) -> i64 {
    let g = f.graph();
    let pointwise: Vec<usize> = (0..g.edge_count()).filter(|&e| is_pointwise_fixed(f, e)).collect();
    let inside = |e: &usize| members.contains(&g.origin(DirEdge::new(*e, false)));
    let fixed_edges = pointwise.iter().filter(|e| inside(e)).count() as i64;
    let outward = members
        .iter()
        .flat_map(|&v| g.directions_at(v))
        .filter(|d| !pointwise.contains(&d.edge()) && f.derivative(*d) == Some(*d))
        .count() as i64;
    members.len() as i64 - fixed_edges - outward
}

/// Every short Nielsen path must stay inside one class. Before the recursion has
/// been verified, short paths are also allowed to merge classes.
fn check_partition(f: &GraphMap, groups: &mut Vec<Group>, verified: bool, max_len: usize) -> Result<(), InvariantError> {
    let g = f.graph();
    let all = vec![true; g.edge_count()];
    for p in brute_force_nielsen_paths(f, &all, max_len) {
        let (x, y) = (p.start, g.end(&p));
        let gx = groups.iter().position(|gr| gr.members.contains(&x)).unwrap();
        let gy = groups.iter().position(|gr| gr.members.contains(&y)).unwrap();
        if gx == gy {
            continue;
        }
        if verified {
            return Err(InvariantError::PartitionMismatch(g.format_path(&p)));
        }
        let (lo, other) = absorb(f, groups, gx, gy, &p)?;
        let kept = &mut groups[lo];
        kept.delta += other.delta;
        kept.ind += other.ind;
        kept.steps.push("short-path-merge".into());
    }
    Ok(())
}

/// Moves the class of `end(p)` into the class of `p.start` (or the other way,
/// keeping the lower index), extending the Nielsen links through `p`.
fn absorb(f: &GraphMap, groups: &mut Vec<Group>, gx: usize, gy: usize, p: &EdgePath) -> Result<(usize, Group), InvariantError> {
    let g = f.graph();
    let (lo, hi) = (gx.min(gy), gx.max(gy));
    let other = groups.remove(hi);
    let kept = &mut groups[lo];
    let bridge = if gx == lo { p.clone() } else { g.reverse(p) };
    let at = kept.members.iter().position(|&v| v == bridge.start).unwrap();
    let to_bridge = kept.links[at].clone();
    let far_at = other.members.iter().position(|&v| v == g.end(&bridge)).unwrap();
    let back = g.reverse(&other.links[far_at]);
    for (m, link) in other.members.iter().zip(&other.links) {
        kept.links.push(concat(f, kept.members[0], &[&to_bridge, &bridge, &back, link])?);
        kept.members.push(*m);
    }
    Ok((lo, other))
}

/// The vertex a class is based at: its first original vertex if any.
pub fn class_base(a: &Analysis, class: usize) -> usize {
    let c = &a.classes[class];
    c.members.iter().copied().filter(|&v| v < a.sub.original_vertices).min().unwrap_or(c.members[0])
}

/// The endomorphism `f_*` of `π₁(X, v)` at the base vertex of a class, on the
/// original graph when the base is an original vertex.
pub fn class_endomorphism(a: &Analysis, class: usize) -> Result<Endomorphism, InvariantError> {
    let v = class_base(a, class);
    let f = if v < a.sub.original_vertices { &a.original } else { &a.sub.map };
    Ok(induced_endo(f, v, &EdgePath::trivial(v))?)
}

/// One attracting fixed word per ray direction of the class, as a word in the
/// basis of [`class_endomorphism`].
pub fn attracting_words(a: &Analysis, class: usize, ray_len: usize) -> Result<Vec<InfiniteWord>, InvariantError> {
    let c = &a.classes[class];
    if c.ray_directions.is_empty() {
        return Ok(Vec::new());
    }
    let map = &a.sub.map;
    let g = map.graph();
    let base = class_base(a, class);
    let on_original = base < a.sub.original_vertices;
    let endo = class_endomorphism(a, class)?;
    let data = if on_original { Pi1Data::new(a.original.graph(), base)? } else { Pi1Data::new(g, base)? };
    let base_at = c.members.iter().position(|&v| v == base).unwrap();
    let mut out = Vec::new();
    for &d in &c.ray_directions {
        let v = g.origin(d);
        let at = c.members.iter().position(|&m| m == v).unwrap();
        let ray = EdgePath { start: v, edges: graph_ray_prefix(map, d, ray_len) };
        let path = concat(map, base, &[&g.reverse(&c.links[base_at]), &c.links[at], &ray])?;
        let path = if on_original {
            EdgePath { start: base, edges: a.sub.to_original_prefix(&path.edges) }
        } else {
            path
        };
        let word = data.word_of(&path);
        out.push(morphic_from_prefix(&word, &endo).ok_or_else(|| {
            InvariantError::StructureViolation(format!("no seed for the ray from {}", g.dir_name(d)))
        })?);
    }
    Ok(out)
}

/// The shortest prefix `s` of `w` with `φ(s) = s·u`, `u ≠ 1`, whose ray
/// reproduces all of `w`.
fn morphic_from_prefix(w: &Word, endo: &Endomorphism) -> Option<InfiniteWord> {
    (1..=w.len()).find_map(|k| {
        let ray = InfiniteWord::morphic(w.prefix(k), endo.clone()).ok()?;
        (ray.prefix(w.len()).ok()? == *w).then_some(ray)
    })
}
