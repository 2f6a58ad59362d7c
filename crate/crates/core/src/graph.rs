//! Finite graphs, tight edge paths and cellular selfmaps.

use std::collections::VecDeque;

use crate::error::GraphError;

/// An oriented edge: `2i` traverses geometric edge `i` forwards, `2i + 1` backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirEdge(pub usize);

impl DirEdge {
    pub fn new(edge: usize, reversed: bool) -> Self {
        DirEdge(2 * edge + reversed as usize)
    }

    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn is_reversed(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn rev(self) -> Self {
        DirEdge(self.0 ^ 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInfo {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeInfo>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeInfo>) -> Result<Self, GraphError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(GraphError::Duplicate(v.clone()));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|x| x.name == e.name) || vertices.contains(&e.name) {
                return Err(GraphError::Duplicate(e.name.clone()));
            }
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return Err(GraphError::UnknownVertex(format!("#{}", e.from.max(e.to))));
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// The rose on `names` with one vertex `*`.
    pub fn rose<S: AsRef<str>>(names: &[S]) -> Self {
        let edges = names
            .iter()
            .map(|n| EdgeInfo { name: n.as_ref().to_string(), from: 0, to: 0 })
            .collect();
        Graph { vertices: vec!["*".into()], edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edges(&self) -> &[EdgeInfo] {
        &self.edges
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn origin(&self, d: DirEdge) -> usize {
        let e = &self.edges[d.edge()];
        if d.is_reversed() {
            e.to
        } else {
            e.from
        }
    }

    pub fn terminus(&self, d: DirEdge) -> usize {
        self.origin(d.rev())
    }

    /// All oriented edges.
    pub fn directions(&self) -> impl Iterator<Item = DirEdge> {
        (0..2 * self.edges.len()).map(DirEdge)
    }

    /// Oriented edges with origin `v`.
    pub fn directions_at(&self, v: usize) -> Vec<DirEdge> {
        self.directions().filter(|&d| self.origin(d) == v).collect()
    }

    pub fn dir_name(&self, d: DirEdge) -> String {
        let n = self.edge_name(d.edge());
        if d.is_reversed() {
            format!("{n}-")
        } else {
            n.to_string()
        }
    }

    pub fn parse_dir(&self, token: &str) -> Result<DirEdge, GraphError> {
        let (name, rev) = match token.strip_suffix('-') {
            Some(n) => (n, true),
            None => (token, false),
        };
        let e = self
            .edge_index(name)
            .ok_or_else(|| GraphError::UnknownEdge(token.to_string()))?;
        Ok(DirEdge::new(e, rev))
    }

    /// `#V − #E`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// Vertex components of the subgraph spanned by all vertices and the marked edges.
    pub fn components(&self, edge_mask: &[bool]) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for s in 0..self.vertices.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for d in self.directions_at(v) {
                    let t = self.terminus(d);
                    if edge_mask[d.edge()] && comp[t] == usize::MAX {
                        comp[t] = next;
                        queue.push_back(t);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components(&vec![true; self.edges.len()]).iter().all(|&c| c == 0)
    }

    pub fn path(&self, start: usize, edges: Vec<DirEdge>) -> Result<EdgePath, GraphError> {
        let p = EdgePath { start, edges };
        self.check_path(&p)?;
        Ok(p)
    }

    pub fn check_path(&self, p: &EdgePath) -> Result<(), GraphError> {
        let mut at = p.start;
        for &d in &p.edges {
            if self.origin(d) != at {
                return Err(GraphError::NotAdjacent(format!(
                    "`{}` does not start at `{}`",
                    self.dir_name(d),
                    self.vertex_name(at)
                )));
            }
            at = self.terminus(d);
        }
        Ok(())
    }

    /// Removes backtracks `e·ē`; errors on non-adjacent input.
    pub fn tighten(&self, start: usize, raw: &[DirEdge]) -> Result<EdgePath, GraphError> {
        self.check_path(&EdgePath { start, edges: raw.to_vec() })?;
        let mut out = EdgePath::trivial(start);
        out.push_tight(raw.iter().copied());
        Ok(out)
    }

    pub fn end(&self, p: &EdgePath) -> usize {
        p.edges.last().map_or(p.start, |&d| self.terminus(d))
    }

    pub fn reverse(&self, p: &EdgePath) -> EdgePath {
        EdgePath { start: self.end(p), edges: p.edges.iter().rev().map(|d| d.rev()).collect() }
    }

    pub fn format_path(&self, p: &EdgePath) -> String {
        if p.edges.is_empty() {
            return format!("[{}]", self.vertex_name(p.start));
        }
        p.edges.iter().map(|&d| self.dir_name(d)).collect::<Vec<_>>().join(" ")
    }
}

/// An edge path; with no edges it is the trivial path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePath {
    pub start: usize,
    pub edges: Vec<DirEdge>,
}

impl EdgePath {
    pub fn trivial(v: usize) -> Self {
        EdgePath { start: v, edges: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_tight(&self) -> bool {
        self.edges.windows(2).all(|w| w[1] != w[0].rev())
    }

    /// Appends edges, cancelling backtracks. Adjacency is the caller's concern.
    pub(crate) fn push_tight(&mut self, more: impl IntoIterator<Item = DirEdge>) {
        for d in more {
            if self.edges.last() == Some(&d.rev()) {
                self.edges.pop();
            } else {
                self.edges.push(d);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TurnStatus {
    Legal,
    Illegal,
    Degenerate,
    Unknown,
}

/// A cellular selfmap. Edge images are stored tightened, for forward edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    graph: Graph,
    vertex_map: Vec<usize>,
    edge_map: Vec<EdgePath>,
}

impl GraphMap {
    pub fn new(graph: Graph, vertex_map: Vec<usize>, edge_map: Vec<EdgePath>) -> Result<Self, GraphError> {
        if vertex_map.len() != graph.vertex_count() || edge_map.len() != graph.edge_count() {
            return Err(GraphError::Incompatible {
                edge: String::new(),
                reason: "vertex or edge map has the wrong size".into(),
            });
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= graph.vertex_count()) {
            return Err(GraphError::UnknownVertex(format!("#{v}")));
        }
        let mut tight = Vec::with_capacity(edge_map.len());
        for (i, p) in edge_map.into_iter().enumerate() {
            let name = graph.edge_name(i).to_string();
            let p = graph.tighten(p.start, &p.edges).map_err(|e| GraphError::Incompatible {
                edge: name.clone(),
                reason: e.to_string(),
            })?;
            let info = &graph.edges()[i];
            if p.start != vertex_map[info.from] || graph.end(&p) != vertex_map[info.to] {
                return Err(GraphError::Incompatible {
                    edge: name,
                    reason: format!(
                        "image runs `{}` → `{}`, expected `{}` → `{}`",
                        graph.vertex_name(p.start),
                        graph.vertex_name(graph.end(&p)),
                        graph.vertex_name(vertex_map[info.from]),
                        graph.vertex_name(vertex_map[info.to])
                    ),
                });
            }
            tight.push(p);
        }
        Ok(GraphMap { graph, vertex_map, edge_map: tight })
    }

    pub fn identity(graph: Graph) -> Self {
        let vertex_map = (0..graph.vertex_count()).collect();
        let edge_map = (0..graph.edge_count())
            .map(|i| EdgePath { start: graph.edges()[i].from, edges: vec![DirEdge::new(i, false)] })
            .collect();
        GraphMap { graph, vertex_map, edge_map }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Tight image of an oriented edge.
    pub fn image(&self, d: DirEdge) -> EdgePath {
        let p = &self.edge_map[d.edge()];
        if d.is_reversed() {
            self.graph.reverse(p)
        } else {
            p.clone()
        }
    }

    pub fn image_len(&self, e: usize) -> usize {
        self.edge_map[e].len()
    }

    pub fn edge_images(&self) -> &[EdgePath] {
        &self.edge_map
    }

    /// `[f(p)]`.
    pub fn map_path(&self, p: &EdgePath) -> EdgePath {
        let mut out = EdgePath::trivial(self.vertex_map[p.start]);
        for &d in &p.edges {
            out.push_tight(self.image(d).edges);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GraphMap) -> Result<GraphMap, GraphError> {
        let vertex_map = other.vertex_map.iter().map(|&v| self.vertex_map[v]).collect();
        let edge_map = other.edge_map.iter().map(|p| self.map_path(p)).collect();
        GraphMap::new(self.graph.clone(), vertex_map, edge_map)
    }

    /// First edge of the tight image, or `None` when the image is trivial.
    pub fn derivative(&self, d: DirEdge) -> Option<DirEdge> {
        self.image(d).edges.first().copied()
    }

    /// Iterates `Df` on the pair until it degenerates, hits a zero, or repeats.
    pub fn classify_turn(&self, d1: DirEdge, d2: DirEdge, max_iter: usize) -> TurnStatus {
        if d1 == d2 {
            return TurnStatus::Degenerate;
        }
        let mut seen = std::collections::HashSet::new();
        let (mut x, mut y) = (d1, d2);
        for _ in 0..max_iter {
            if !seen.insert((x.min(y), x.max(y))) {
                return TurnStatus::Legal;
            }
            match (self.derivative(x), self.derivative(y)) {
                (Some(a), Some(b)) if a == b => return TurnStatus::Illegal,
                (Some(a), Some(b)) => (x, y) = (a, b),
                _ => return TurnStatus::Unknown,
            }
        }
        TurnStatus::Unknown
    }

    /// `#directions²`, enough iterations for [`GraphMap::classify_turn`] to be conclusive.
    pub fn turn_iteration_bound(&self) -> usize {
        let n = 2 * self.graph.edge_count();
        n * n + 1
    }

    pub fn fixed_vertices(&self) -> Vec<usize> {
        (0..self.graph.vertex_count()).filter(|&v| self.vertex_map[v] == v).collect()
    }

    /// Directions at `v` fixed by `Df`, optionally restricted to edges in `mask`.
    pub fn fixed_directions(&self, v: usize, mask: Option<&[bool]>) -> Result<Vec<DirEdge>, GraphError> {
        if self.vertex_map[v] != v {
            return Err(GraphError::NotFixed(self.graph.vertex_name(v).to_string()));
        }
        Ok(self
            .graph
            .directions_at(v)
            .into_iter()
            .filter(|&d| mask.map_or(true, |m| m[d.edge()]) && self.derivative(d) == Some(d))
            .collect())
    }

    pub fn delta(&self, v: usize, mask: Option<&[bool]>) -> Result<usize, GraphError> {
        Ok(self.fixed_directions(v, mask)?.len())
    }

    /// Whether `f` maps every marked edge into marked edges.
    pub fn is_invariant(&self, mask: &[bool]) -> bool {
        (0..self.graph.edge_count())
            .filter(|&e| mask[e])
            .all(|e| self.edge_map[e].edges.iter().all(|d| mask[d.edge()]))
    }

    /// Degree of `f` on an invariant circle given by its marked edges.
    pub fn circle_degree(&self, mask: &[bool]) -> Result<i64, GraphError> {
        let loop_dirs = circle_loop(&self.graph, mask)?;
        if !self.is_invariant(mask) {
            return Err(GraphError::NotInvariant);
        }
        let orient: std::collections::HashMap<usize, bool> =
            loop_dirs.iter().map(|d| (d.edge(), d.is_reversed())).collect();
        let mut signed = 0i64;
        for d in &loop_dirs {
            for x in self.image(*d).edges {
                signed += if orient[&x.edge()] == x.is_reversed() { 1 } else { -1 };
            }
        }
        Ok(signed / loop_dirs.len() as i64)
    }
}

/// The marked edges as a cyclically ordered loop, if they form a single circle.
pub fn circle_loop(g: &Graph, mask: &[bool]) -> Result<Vec<DirEdge>, GraphError> {
    let first = mask.iter().position(|&m| m).ok_or(GraphError::NotCircle)?;
    let count = mask.iter().filter(|&&m| m).count();
    let mut valence = vec![0usize; g.vertex_count()];
    for (_, e) in g.edges().iter().enumerate().filter(|(i, _)| mask[*i]) {
        valence[e.from] += 1;
        valence[e.to] += 1;
    }
    if valence.iter().any(|&v| v != 0 && v != 2) {
        return Err(GraphError::NotCircle);
    }
    let mut dirs = vec![DirEdge::new(first, false)];
    loop {
        let last = *dirs.last().unwrap();
        let at = g.terminus(last);
        let next = g
            .directions_at(at)
            .into_iter()
            .find(|&d| mask[d.edge()] && d != last.rev())
            .ok_or(GraphError::NotCircle)?;
        if next == dirs[0] {
            break;
        }
        if dirs.len() > count {
            return Err(GraphError::NotCircle);
        }
        dirs.push(next);
    }
    if dirs.len() != count {
        return Err(GraphError::NotCircle);
    }
    Ok(dirs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose_map(names: &[&str], images: &[&str]) -> GraphMap {
        let g = Graph::rose(names);
        let edge_map = images
            .iter()
            .map(|s| {
                let dirs = s.split_whitespace().map(|t| g.parse_dir(t).unwrap()).collect();
                EdgePath { start: 0, edges: dirs }
            })
            .collect();
        GraphMap::new(g, vec![0], edge_map).unwrap()
    }

    fn path(f: &GraphMap, s: &str) -> EdgePath {
        let dirs = s.split_whitespace().map(|t| f.graph().parse_dir(t).unwrap()).collect();
        EdgePath { start: 0, edges: dirs }
    }

    #[test]
    fn tightening() {
        let g = Graph::rose(&["a", "b"]);
        let a = DirEdge::new(0, false);
        assert!(g.tighten(0, &[a, a.rev()]).unwrap().is_trivial());
        let p = g.tighten(0, &[a, DirEdge::new(1, false)]).unwrap();
        assert_eq!(p.len(), 2);
        let f = rose_map(&["a", "b"], &["b", "a-"]);
        assert_eq!(f.graph().format_path(&f.map_path(&path(&f, "a b"))), "b a-");
    }

    #[test]
    fn non_adjacent_rejected() {
        let g = Graph::new(
            vec!["u".into(), "v".into()],
            vec![EdgeInfo { name: "e".into(), from: 0, to: 1 }],
        )
        .unwrap();
        let e = DirEdge::new(0, false);
        assert!(matches!(g.tighten(0, &[e, e]), Err(GraphError::NotAdjacent(_))));
    }

    #[test]
    fn map_path_examples() {
        let f = rose_map(&["a", "b"], &["a", "b a"]);
        let p = path(&f, "b a b-");
        assert_eq!(f.map_path(&p), p);
        let f = rose_map(&["a"], &["a a"]);
        assert_eq!(f.graph().format_path(&f.map_path(&path(&f, "a"))), "a a");
    }

    #[test]
    fn derivatives_and_turns() {
        let ex2 = rose_map(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        let d = ex2.graph().parse_dir("a2-").unwrap();
        assert_eq!(ex2.derivative(d), Some(d));
        let ex3 = rose_map(&["a", "b"], &["b", "a-"]);
        assert_eq!(ex3.derivative(DirEdge(0)), Some(DirEdge(2)));
        assert!(ex3.fixed_directions(0, None).unwrap().is_empty());

        let ba = rose_map(&["a", "b"], &["a", "b a"]);
        let n = ba.turn_iteration_bound();
        assert_eq!(ba.classify_turn(DirEdge(1), DirEdge(3), n), TurnStatus::Illegal);
        assert_eq!(ba.classify_turn(DirEdge(1), DirEdge(1), n), TurnStatus::Degenerate);
        let ex1 = rose_map(&["a1", "a2"], &["a1 a1", "a2 a2"]);
        assert_eq!(ex1.classify_turn(DirEdge(0), DirEdge(2), n), TurnStatus::Legal);
        assert_eq!(ex1.delta(0, None).unwrap(), 4);
    }

    #[test]
    fn euler_and_degree() {
        assert_eq!(Graph::rose(&["a", "b", "c"]).euler_characteristic(), -2);
        let ex2 = rose_map(&["a1", "a2"], &["a1", "a2- a1 a2"]);
        assert_eq!(ex2.circle_degree(&[true, false]).unwrap(), 1);
        assert!(matches!(ex2.circle_degree(&[true, true]), Err(GraphError::NotCircle)));
        let c = rose_map(&["e"], &["e- e- e-"]);
        assert_eq!(c.circle_degree(&[true]).unwrap(), -3);
    }
}
