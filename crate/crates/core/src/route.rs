//! Fixed point classes named by routes, including empty ones.

use serde::Serialize;

use crate::boundary::{attraction_check, equivalent_under, AttractionParams, AttractionStatus, Equivalence, InfiniteWord};
use crate::endo::{Endomorphism, RouteSearch};
use crate::error::{GraphError, InvariantError};
use crate::folding::FoldedGraph;
use crate::graph::EdgePath;
use crate::nielsen::Analysis;
use crate::pi1::{induced_endo, Pi1Data};
use crate::word::{words_up_to, Letter, Word};

pub const ROUTE_DEPTH: usize = 8;
pub const FIXED_WORD_LEN: usize = 8;

#[derive(Clone, Debug)]
pub struct RouteOptions {
    /// Length bound for the conjugator `u` in the route-equivalence search.
    pub depth: usize,
    /// Length bound for the fixed-word search behind `rk`.
    pub fixed_word_len: usize,
    /// Fixed subgroup generators to check and attach.
    pub generators: Option<Vec<Word>>,
}

impl Default for RouteOptions {
    fn default() -> Self {
        RouteOptions { depth: ROUTE_DEPTH, fixed_word_len: FIXED_WORD_LEN, generators: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RayCandidate {
    pub seed: String,
    pub status: AttractionStatus,
}

#[derive(Clone, Debug)]
pub struct RouteReport {
    pub route: Word,
    /// `f_w(x) = w·φ(x)·w⁻¹`.
    pub endo: Endomorphism,
    /// A nonempty class with a conjugator `u`, `route(class) = u·w·φ(u)⁻¹`.
    pub class: Option<(usize, Word)>,
    pub depth: usize,
    pub ind: i64,
    /// Rank of the subgroup generated by fixed words found (or supplied).
    pub rk: i64,
    pub generators: Vec<Word>,
    pub a: i64,
    pub candidates: Vec<RayCandidate>,
}

impl RouteReport {
    pub fn ichr(&self) -> i64 {
        1 - self.rk - self.a
    }

    pub fn is_empty_class(&self) -> bool {
        self.class.is_none()
    }
}

/// `φ = f_*` on `π₁(X, v₀)` for the original graph; vertex 0 must be fixed.
pub fn base_endomorphism(a: &Analysis) -> Result<Endomorphism, InvariantError> {
    let f = &a.original;
    if f.vertex_image(0) != 0 {
        return Err(GraphError::NotFixed(f.graph().vertex_name(0).to_string()).into());
    }
    Ok(induced_endo(f, 0, &EdgePath::trivial(0))?)
}

/// The route word at vertex 0 of the class based at `v`: `T(v)·f(T(v))⁻¹`.
pub fn class_route(a: &Analysis, class: usize) -> Result<Word, InvariantError> {
    let map = &a.sub.map;
    let g = map.graph();
    let v = a.classes[class].members[0];
    let tree = Pi1Data::new(g, 0)?;
    let t = &tree.tree_paths[v];
    let raw: Vec<_> = t.edges.iter().chain(g.reverse(&map.map_path(t)).edges.iter()).copied().collect();
    let closed = g.tighten(0, &raw)?;
    let original = EdgePath { start: 0, edges: a.sub.to_original_prefix(&closed.edges) };
    Ok(Pi1Data::new(a.original.graph(), 0)?.word_of(&original))
}

/// Fixed words of `phi` up to length `max_len`, each outside the subgroup
/// generated by the earlier ones.
pub fn fixed_words(phi: &Endomorphism, max_len: usize) -> Vec<Word> {
    let mut gens: Vec<Word> = Vec::new();
    for w in words_up_to(phi.rank(), max_len) {
        if w.is_identity() || phi.apply(&w) != w {
            continue;
        }
        if gens.is_empty() || !FoldedGraph::from_words(&gens).contains(&w) {
            gens.push(w);
        }
    }
    gens
}

/// Rays `lim φᵏ(x)` over letters `x` with `φ(x) = x·u`, `u ≠ 1`.
pub fn candidate_rays(phi: &Endomorphism) -> Vec<InfiniteWord> {
    (0..phi.rank())
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .filter_map(|x| InfiniteWord::morphic(Word::letter(x), phi.clone()).ok())
        .collect()
}

/// Attracting candidate rays, one per class under left multiplication by the
/// given fixed subgroup.
pub fn attracting_classes(
    phi: &Endomorphism,
    fix: &[Word],
    depth: usize,
) -> Result<(Vec<InfiniteWord>, Vec<RayCandidate>), InvariantError> {
    let mut reps: Vec<InfiniteWord> = Vec::new();
    let mut seen = Vec::new();
    for w in candidate_rays(phi) {
        let status = attraction_check(&w, phi, &AttractionParams::default())?.status;
        let seed = match &w {
            InfiniteWord::Morphic(r) => phi.basis().format(r.seed()),
            other => other.describe(),
        };
        seen.push(RayCandidate { seed, status });
        if status != AttractionStatus::Attracting {
            continue;
        }
        let mut new = true;
        for r in &reps {
            if let Equivalence::Equivalent(_) = equivalent_under(&w, r, phi, fix, depth)? {
                new = false;
                break;
            }
        }
        if new {
            reps.push(w);
        }
    }
    Ok((reps, seen))
}

/// Class of the route `w` (a loop at vertex 0 read in the original basis).
/// A route equivalent to a nonempty class inherits its invariants; otherwise
/// the class is empty and `rk`, `a` come from bounded searches.
pub fn analyze_route(a: &Analysis, w: &Word, opts: &RouteOptions) -> Result<RouteReport, InvariantError> {
    let phi = base_endomorphism(a)?;
    phi.basis().check(w)?;
    let fw = phi.inner_twist(w);
    for i in 0..a.classes.len() {
        let r = class_route(a, i)?;
        if let RouteSearch::Equivalent(u) = phi.route_equivalent(w, &r, opts.depth as i64)? {
            let c = &a.classes[i];
            return Ok(RouteReport {
                route: w.clone(),
                endo: fw,
                class: Some((i, u)),
                depth: opts.depth,
                ind: c.ind,
                rk: c.rk.ok_or_else(|| InvariantError::StructureViolation("class not verified".into()))?,
                generators: Vec::new(),
                a: c.a.ok_or_else(|| InvariantError::StructureViolation("class not verified".into()))?,
                candidates: Vec::new(),
            });
        }
    }
    let generators = match &opts.generators {
        Some(gens) => {
            for g in gens {
                if fw.apply(g) != *g {
                    return Err(InvariantError::StructureViolation(format!("{} is not fixed", fw.basis().format(g))));
                }
            }
            let found = fixed_words(&fw, opts.fixed_word_len);
            let rank = FoldedGraph::from_words(gens).rank();
            if !found.is_empty() && FoldedGraph::from_words(&found).rank() > rank {
                return Err(InvariantError::StructureViolation("supplied generators miss short fixed words".into()));
            }
            gens.clone()
        }
        None => fixed_words(&fw, opts.fixed_word_len),
    };
    let rk = if generators.is_empty() { 0 } else { FoldedGraph::from_words(&generators).rank() as i64 };
    let (reps, candidates) = attracting_classes(&fw, &generators, opts.depth)?;
    Ok(RouteReport {
        route: w.clone(),
        endo: fw,
        class: None,
        depth: opts.depth,
        ind: 0,
        rk,
        generators,
        a: reps.len() as i64,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, GraphMap};
    use crate::nielsen::{analyze, PipelineOptions};

    fn rose_analysis(names: &[&str], images: &[&str]) -> Analysis {
        let g = Graph::rose(names);
        let edge_map = images
            .iter()
            .map(|s| EdgePath { start: 0, edges: s.split_whitespace().map(|t| g.parse_dir(t).unwrap()).collect() })
            .collect();
        analyze(&GraphMap::new(g, vec![0], edge_map).unwrap(), None, &PipelineOptions::default()).unwrap()
    }

    #[test]
    fn empty_class_of_the_rotation() {
        let an = rose_analysis(&["a", "b"], &["b", "a-"]);
        let basis = base_endomorphism(&an).unwrap().basis().clone();
        let r = analyze_route(&an, &basis.parse("a").unwrap(), &RouteOptions::default()).unwrap();
        assert!(r.is_empty_class());
        assert_eq!(basis.format(&r.endo.image(0).clone()), "abA");
        let gens: Vec<String> = r.generators.iter().map(|g| basis.format(g)).collect();
        assert_eq!(gens, vec!["abAB"]);
        assert_eq!((r.rk, r.a, r.ichr()), (1, 0, 0));
        assert!(r.candidates.iter().all(|c| c.status != AttractionStatus::Attracting), "{:?}", r.candidates);
    }

    #[test]
    fn trivial_route_is_the_base_class() {
        let an = rose_analysis(&["a", "b"], &["b", "a-"]);
        let r = analyze_route(&an, &Word::identity(), &RouteOptions::default()).unwrap();
        assert_eq!(r.class.as_ref().map(|c| c.0), Some(0));
        assert_eq!((r.ind, r.rk, r.a), (1, 0, 0));
    }

    #[test]
    fn subdivided_class_routes_are_inequivalent() {
        let an = rose_analysis(&["a", "b"], &["a-", "a- b b"]);
        let phi = base_endomorphism(&an).unwrap();
        let r0 = class_route(&an, 0).unwrap();
        let r1 = class_route(&an, 1).unwrap();
        assert!(r0.is_identity());
        assert!(!r1.is_identity());
        assert!(matches!(phi.route_equivalent(&r0, &r1, 6).unwrap(), RouteSearch::NoWitness { .. }));
        let r = analyze_route(&an, &r1, &RouteOptions::default()).unwrap();
        assert_eq!(r.class.map(|c| c.0), Some(1));
    }
}
