//! Interior fixed points under the uniform-speed parametrization, and subdivision
//! making them vertices.

use num_rational::Ratio;

use crate::error::GraphError;
use crate::graph::{DirEdge, EdgeInfo, EdgePath, Graph, GraphMap};

pub type Q = Ratio<i64>;

/// A fixed point in the interior of a geometric edge, at parameter `at ∈ (0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InteriorPoint {
    pub edge: usize,
    pub at: Q,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixedPointScan {
    pub points: Vec<InteriorPoint>,
    /// Edges mapped onto themselves by the identity.
    pub pointwise_fixed: Vec<usize>,
}

/// Solves the affine fixed-point equations on every segment where `f(e)` crosses `e`.
///
/// Segment `j` of an image of length `L` covers `t ∈ [j/L, (j+1)/L]` at position
/// `Lt − j`, so crossing `e` forwards fixes `t = j/(L−1)` and crossing backwards
/// fixes `t = (j+1)/(L+1)`.
pub fn scan_interior_fixed_points(f: &GraphMap) -> FixedPointScan {
    let mut scan = FixedPointScan::default();
    for e in 0..f.graph().edge_count() {
        let img = &f.edge_images()[e].edges;
        let l = img.len() as i64;
        if img == &[DirEdge::new(e, false)] {
            scan.pointwise_fixed.push(e);
            continue;
        }
        for (j, d) in img.iter().enumerate() {
            if d.edge() != e {
                continue;
            }
            let j = j as i64;
            let t = if d.is_reversed() {
                Q::new(j + 1, l + 1)
            } else if l > 1 {
                Q::new(j, l - 1)
            } else {
                continue;
            };
            let inside_segment = Q::new(j, l) < t && t < Q::new(j + 1, l);
            if inside_segment && Q::from(0) < t && t < Q::from(1) {
                scan.points.push(InteriorPoint { edge: e, at: t });
            }
        }
    }
    scan.points.sort();
    scan
}

/// Interior fixed points; an edge fixed pointwise is a non-isolated fixed set.
pub fn detect_interior_fixed_points(f: &GraphMap) -> Result<Vec<InteriorPoint>, GraphError> {
    let scan = scan_interior_fixed_points(f);
    if let Some(&e) = scan.pointwise_fixed.first() {
        return Err(GraphError::NonIsolated(f.graph().edge_name(e).to_string()));
    }
    Ok(scan.points)
}

/// A subdivided map with the bookkeeping back to the original graph.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub map: GraphMap,
    pub original_vertices: usize,
    /// New edge → (original edge, piece index, number of pieces).
    pub parent: Vec<(usize, usize, usize)>,
}

impl Subdivision {
    /// The identity record for an unsubdivided map.
    pub fn trivial(f: &GraphMap) -> Self {
        Subdivision {
            map: f.clone(),
            original_vertices: f.graph().vertex_count(),
            parent: (0..f.graph().edge_count()).map(|e| (e, 0, 1)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.parent.iter().all(|&(_, _, n)| n == 1)
    }

    /// Collapses runs of pieces into original oriented edges. Stops at the first
    /// run that is incomplete.
    pub fn to_original_prefix(&self, dirs: &[DirEdge]) -> Vec<DirEdge> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < dirs.len() {
            let (orig, piece, n) = self.parent[dirs[i].edge()];
            let rev = dirs[i].is_reversed();
            let first_piece = if rev { n - 1 } else { 0 };
            if piece != first_piece || i + n > dirs.len() {
                break;
            }
            let complete = (0..n).all(|k| {
                let (o, p, _) = self.parent[dirs[i + k].edge()];
                let want = if rev { n - 1 - k } else { k };
                o == orig && p == want && dirs[i + k].is_reversed() == rev
            });
            if !complete {
                break;
            }
            out.push(DirEdge::new(orig, rev));
            i += n;
        }
        out
    }
}

/// Subdivides `f` at the given points, which must be fixed.
pub fn subdivide_at(f: &GraphMap, points: &[InteriorPoint]) -> Result<Subdivision, GraphError> {
    let g = f.graph();
    let n_edges = g.edge_count();
    let mut cuts: Vec<Vec<Q>> = vec![Vec::new(); n_edges];
    for p in points {
        if p.edge >= n_edges || p.at <= Q::from(0) || p.at >= Q::from(1) {
            return Err(GraphError::UnknownEdge(format!("#{}@{}", p.edge, p.at)));
        }
        cuts[p.edge].push(p.at);
    }
    let mut vertices: Vec<String> = g.vertex_names().to_vec();
    let mut cut_vertex: Vec<Vec<usize>> = Vec::with_capacity(n_edges);
    for (e, c) in cuts.iter_mut().enumerate() {
        c.sort();
        c.dedup();
        let ids = c
            .iter()
            .map(|t| {
                vertices.push(format!("{}@{}/{}", g.edge_name(e), t.numer(), t.denom()));
                vertices.len() - 1
            })
            .collect();
        cut_vertex.push(ids);
    }
    let original_names: Vec<&str> = g.edges().iter().map(|e| e.name.as_str()).collect();
    let mut edges = Vec::new();
    let mut parent = Vec::new();
    let mut first_piece = Vec::with_capacity(n_edges);
    for e in 0..n_edges {
        let n = cuts[e].len() + 1;
        first_piece.push(edges.len());
        let info = &g.edges()[e];
        for k in 0..n {
            let name = if n == 1 {
                info.name.clone()
            } else {
                let plain = format!("{}{}", info.name, k + 1);
                if original_names.contains(&plain.as_str()) {
                    format!("{}.{}", info.name, k + 1)
                } else {
                    plain
                }
            };
            let from = if k == 0 { info.from } else { cut_vertex[e][k - 1] };
            let to = if k + 1 == n { info.to } else { cut_vertex[e][k] };
            edges.push(EdgeInfo { name, from, to });
            parent.push((e, k, n));
        }
    }
    let new_graph = Graph::new(vertices, edges)?;
    let ctx = Ctx { g, cuts: &cuts, cut_vertex: &cut_vertex, first_piece: &first_piece };

    let mut vertex_map: Vec<usize> = f.vertex_map().to_vec();
    for e in 0..n_edges {
        for &t in &cuts[e] {
            let img = &f.edge_images()[e];
            let s = t * Q::from(img.len() as i64);
            vertex_map.push(ctx.point_vertex(f, e, s)?);
        }
    }
    let mut edge_map = Vec::new();
    for e in 0..n_edges {
        let img = &f.edge_images()[e];
        let l = Q::from(img.len() as i64);
        let bounds: Vec<Q> = std::iter::once(Q::from(0))
            .chain(cuts[e].iter().copied())
            .chain(std::iter::once(Q::from(1)))
            .collect();
        for w in bounds.windows(2) {
            let (s0, s1) = (w[0] * l, w[1] * l);
            let mut path = EdgePath::trivial(ctx.point_vertex(f, e, s0)?);
            for (j, &d) in img.edges.iter().enumerate() {
                let jq = Q::from(j as i64);
                let lo = s0.max(jq);
                let hi = s1.min(jq + 1);
                if lo >= hi {
                    continue;
                }
                let (u0, u1) = (lo - jq, hi - jq);
                let (x, y) = if d.is_reversed() { (Q::from(1) - u0, Q::from(1) - u1) } else { (u0, u1) };
                path.edges.extend(ctx.pieces_between(d.edge(), x, y)?);
            }
            edge_map.push(path);
        }
    }
    let map = GraphMap::new(new_graph, vertex_map, edge_map)?;
    Ok(Subdivision { map, original_vertices: g.vertex_count(), parent })
}

struct Ctx<'a> {
    g: &'a Graph,
    cuts: &'a [Vec<Q>],
    cut_vertex: &'a [Vec<usize>],
    first_piece: &'a [usize],
}

impl Ctx<'_> {
    fn boundary_index(&self, e: usize, x: Q) -> Result<usize, GraphError> {
        if x == Q::from(0) {
            return Ok(0);
        }
        if x == Q::from(1) {
            return Ok(self.cuts[e].len() + 1);
        }
        self.cuts[e]
            .iter()
            .position(|&c| c == x)
            .map(|i| i + 1)
            .ok_or_else(|| self.not_vertex(e, x))
    }

    fn not_vertex(&self, e: usize, x: Q) -> GraphError {
        GraphError::Incompatible {
            edge: self.g.edge_name(e).to_string(),
            reason: format!("image passes through {}@{} which is not a subdivision point", self.g.edge_name(e), x),
        }
    }

    /// Vertex at parameter `x` of original edge `e`.
    fn vertex_at(&self, e: usize, x: Q) -> Result<usize, GraphError> {
        let info = &self.g.edges()[e];
        match self.boundary_index(e, x)? {
            0 => Ok(info.from),
            i if i == self.cuts[e].len() + 1 => Ok(info.to),
            i => Ok(self.cut_vertex[e][i - 1]),
        }
    }

    /// The vertex at position `s ∈ [0, L]` along the image of original edge `e`.
    fn point_vertex(&self, f: &GraphMap, e: usize, s: Q) -> Result<usize, GraphError> {
        let img = &f.edge_images()[e];
        if img.edges.is_empty() {
            return Ok(img.start);
        }
        let j = s.floor().to_integer() as usize;
        if s.is_integer() {
            return Ok(if j < img.len() { self.g.origin(img.edges[j]) } else { self.g.end(img) });
        }
        let d = img.edges[j];
        let u = s - Q::from(j as i64);
        let x = if d.is_reversed() { Q::from(1) - u } else { u };
        self.vertex_at(d.edge(), x)
    }

    /// New oriented edges running along original edge `e` from parameter `x` to `y`.
    fn pieces_between(&self, e: usize, x: Q, y: Q) -> Result<Vec<DirEdge>, GraphError> {
        let (ix, iy) = (self.boundary_index(e, x)?, self.boundary_index(e, y)?);
        let base = self.first_piece[e];
        Ok(if ix < iy {
            (ix..iy).map(|k| DirEdge::new(base + k, false)).collect()
        } else {
            (iy..ix).rev().map(|k| DirEdge::new(base + k, true)).collect()
        })
    }
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

    fn ex4() -> GraphMap {
        rose_map(&["a", "b"], &["a-", "a- b b"])
    }

    #[test]
    fn ex4_points() {
        let pts = detect_interior_fixed_points(&ex4()).unwrap();
        assert_eq!(
            pts,
            vec![InteriorPoint { edge: 0, at: Q::new(1, 2) }, InteriorPoint { edge: 1, at: Q::new(1, 2) }]
        );
    }

    #[test]
    fn doubling_has_no_interior_points() {
        let f = rose_map(&["a1", "a2"], &["a1 a1", "a2 a2"]);
        assert!(detect_interior_fixed_points(&f).unwrap().is_empty());
    }

    #[test]
    fn identity_is_non_isolated() {
        let f = GraphMap::identity(Graph::rose(&["a"]));
        assert!(matches!(detect_interior_fixed_points(&f), Err(GraphError::NonIsolated(_))));
        assert_eq!(scan_interior_fixed_points(&f).pointwise_fixed, vec![0]);
    }

    #[test]
    fn subdivide_ex4() {
        let f = ex4();
        let s = subdivide_at(&f, &detect_interior_fixed_points(&f).unwrap()).unwrap();
        let m = &s.map;
        let g = m.graph();
        assert_eq!(g.vertex_names(), &["*", "a@1/2", "b@1/2"]);
        let show = |name: &str| g.format_path(&m.image(g.parse_dir(name).unwrap()));
        assert_eq!(show("a1"), "a2-");
        assert_eq!(show("a2"), "a1-");
        assert_eq!(show("b1"), "a2- a1- b1");
        assert_eq!(show("b2"), "b2 b1 b2");
        assert_eq!(m.fixed_vertices(), vec![0, 1, 2]);
        assert!(detect_interior_fixed_points(m).unwrap().is_empty());
        let ray: Vec<DirEdge> = ["b2-", "b1-", "b2-", "b1-", "a1"].iter().map(|t| g.parse_dir(t).unwrap()).collect();
        let orig = s.to_original_prefix(&ray);
        assert_eq!(orig, vec![DirEdge::new(1, true), DirEdge::new(1, true)]);
    }
}
