//! Fundamental group bookkeeping: spanning trees and induced endomorphisms.

use std::collections::VecDeque;

use crate::endo::Endomorphism;
use crate::error::{GraphError, WordError};
use crate::graph::{DirEdge, EdgePath, Graph, GraphMap};
use crate::word::{Basis, Letter, Word};

/// A spanning tree at a base vertex and the free basis of `π₁` it determines:
/// one generator per edge outside the tree, named after the edge.
#[derive(Clone, Debug)]
pub struct Pi1Data {
    pub base: usize,
    /// Tree path from the base to each vertex.
    pub tree_paths: Vec<EdgePath>,
    pub in_tree: Vec<bool>,
    /// Non-tree edges in order; generator `i` is `generators[i]`.
    pub generators: Vec<usize>,
    pub basis: Option<Basis>,
}

impl Pi1Data {
    pub fn new(g: &Graph, base: usize) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let mut tree_paths: Vec<Option<EdgePath>> = vec![None; n];
        tree_paths[base] = Some(EdgePath::trivial(base));
        let mut in_tree = vec![false; g.edge_count()];
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for d in g.directions_at(v) {
                let t = g.terminus(d);
                if tree_paths[t].is_none() {
                    let mut p = tree_paths[v].clone().unwrap();
                    p.edges.push(d);
                    tree_paths[t] = Some(p);
                    in_tree[d.edge()] = true;
                    queue.push_back(t);
                }
            }
        }
        let tree_paths = tree_paths.into_iter().collect::<Option<Vec<_>>>().ok_or(GraphError::Disconnected)?;
        let generators: Vec<usize> = (0..g.edge_count()).filter(|&e| !in_tree[e]).collect();
        let basis = if generators.is_empty() {
            None
        } else {
            Some(Basis::new(generators.iter().map(|&e| g.edge_name(e).to_string())).map_err(|_| GraphError::Disconnected)?)
        };
        Ok(Pi1Data { base, tree_paths, in_tree, generators, basis })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The based loop `T(v)·e·T(w)⁻¹` of generator `i`.
    pub fn generator_loop(&self, g: &Graph, i: usize) -> EdgePath {
        let d = DirEdge::new(self.generators[i], false);
        let mut p = self.tree_paths[g.origin(d)].clone();
        p.push_tight([d]);
        p.push_tight(g.reverse(&self.tree_paths[g.terminus(d)]).edges);
        p
    }

    /// Reads a closed path at the base as a word in the generators.
    pub fn word_of(&self, p: &EdgePath) -> Word {
        let index: std::collections::HashMap<usize, usize> =
            self.generators.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Word::reduce(
            p.edges
                .iter()
                .filter(|d| !self.in_tree[d.edge()])
                .map(|d| Letter::new(index[&d.edge()], d.is_reversed())),
        )
    }
}

/// `f_w: [γ] ↦ [w·f(γ)·w̄]` on `π₁(X, base)` for a route `w` from `base` to `f(base)`.
pub fn induced_endo(f: &GraphMap, base: usize, route: &EdgePath) -> Result<Endomorphism, GraphError> {
    let g = f.graph();
    if route.start != base || g.end(route) != f.vertex_image(base) {
        return Err(GraphError::BadRoute);
    }
    g.check_path(route)?;
    let data = Pi1Data::new(g, base)?;
    let basis = data.basis.clone().ok_or(GraphError::NotInjective)?;
    let images = (0..data.rank())
        .map(|i| {
            let mut p = route.clone();
            p.push_tight(f.map_path(&data.generator_loop(g, i)).edges);
            p.push_tight(g.reverse(route).edges);
            data.word_of(&p)
        })
        .collect();
    Endomorphism::new(basis, images).map_err(|e: WordError| GraphError::Incompatible {
        edge: String::new(),
        reason: e.to_string(),
    })
}

/// The trivial route at a fixed vertex.
pub fn trivial_route(f: &GraphMap, v: usize) -> Result<EdgePath, GraphError> {
    if f.vertex_image(v) != v {
        return Err(GraphError::NotFixed(f.graph().vertex_name(v).to_string()));
    }
    Ok(EdgePath::trivial(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose_map(names: &[&str], images: &[&str]) -> GraphMap {
        let g = Graph::rose(names);
        let edge_map = images
            .iter()
            .map(|s| EdgePath { start: 0, edges: s.split_whitespace().map(|t| g.parse_dir(t).unwrap()).collect() })
            .collect();
        GraphMap::new(g, vec![0], edge_map).unwrap()
    }

    #[test]
    fn route_a_on_ex3() {
        let f = rose_map(&["a", "b"], &["b", "a-"]);
        let route = EdgePath { start: 0, edges: vec![DirEdge::new(0, false)] };
        let fa = induced_endo(&f, 0, &route).unwrap();
        let b = fa.basis();
        assert_eq!(b.format(fa.image(0)), "abA");
        assert_eq!(b.format(fa.image(1)), "A");
    }

    #[test]
    fn trivial_route_gives_the_endomorphism() {
        let f = rose_map(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        let phi = induced_endo(&f, 0, &EdgePath::trivial(0)).unwrap();
        let b = phi.basis();
        assert_eq!(b.format(phi.image(0)), "a1");
        assert_eq!(b.format(phi.image(1)), "a2^-1 a1 a2");
        let id = GraphMap::identity(Graph::rose(&["a", "b"]));
        let e = induced_endo(&id, 0, &EdgePath::trivial(0)).unwrap();
        assert_eq!(e, Endomorphism::identity(e.basis().clone()));
    }

    #[test]
    fn bad_route() {
        let f = rose_map(&["a"], &["a a"]);
        assert!(induced_endo(&f, 0, &EdgePath::trivial(0)).is_ok());
        let g = Graph::new(
            vec!["u".into(), "v".into()],
            vec![
                crate::graph::EdgeInfo { name: "e".into(), from: 0, to: 1 },
                crate::graph::EdgeInfo { name: "x".into(), from: 1, to: 1 },
            ],
        )
        .unwrap();
        let swap = GraphMap::new(
            g,
            vec![1, 1],
            vec![EdgePath::trivial(1), EdgePath { start: 1, edges: vec![DirEdge::new(1, false)] }],
        )
        .unwrap();
        assert_eq!(induced_endo(&swap, 0, &EdgePath::trivial(0)), Err(GraphError::BadRoute));
        let e = EdgePath { start: 0, edges: vec![DirEdge::new(0, false)] };
        let fw = induced_endo(&swap, 0, &e).unwrap();
        assert_eq!(fw.basis().format(fw.image(0)), "x");
    }
}
