//! JSON schemas for endomorphisms, infinite words, graph maps and corpus
//! instances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boundary::InfiniteWord;
use crate::endo::Endomorphism;
use crate::error::{GraphError, InputError};
use crate::graph::{DirEdge, EdgeInfo, EdgePath, Graph, GraphMap};
use crate::pi1::{induced_endo, Pi1Data};
use crate::word::Basis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoJson {
    pub rank: usize,
    pub letters: Vec<String>,
    pub images: BTreeMap<String, String>,
}

impl EndoJson {
    pub fn parse(&self) -> Result<Endomorphism, InputError> {
        if self.rank != self.letters.len() {
            return Err(InputError::Invalid(format!("rank {} but {} letters", self.rank, self.letters.len())));
        }
        let basis = Basis::new(self.letters.iter().cloned())?;
        let images = self
            .letters
            .iter()
            .map(|l| {
                self.images.get(l).map(String::as_str).ok_or_else(|| InputError::Invalid(format!("no image for {l}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Endomorphism::parse(basis, &images)?)
    }

    pub fn emit(phi: &Endomorphism) -> Self {
        let b = phi.basis();
        EndoJson {
            rank: phi.rank(),
            letters: b.names().to_vec(),
            images: (0..phi.rank()).map(|g| (b.name(g).to_string(), b.format(phi.image(g)))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InfiniteWordJson {
    Evperiodic { letters: Vec<String>, prefix: String, period: String },
    Morphic { seed: String, endo: EndoJson },
}

impl InfiniteWordJson {
    pub fn parse(&self) -> Result<InfiniteWord, InputError> {
        Ok(match self {
            InfiniteWordJson::Evperiodic { letters, prefix, period } => {
                let basis = Basis::new(letters.iter().cloned())?;
                let (p, q) = (basis.parse(prefix)?, basis.parse(period)?);
                InfiniteWord::periodic(basis, p, q)?
            }
            InfiniteWordJson::Morphic { seed, endo } => {
                let phi = endo.parse()?;
                let s = phi.basis().parse(seed)?;
                InfiniteWord::morphic(s, phi)?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// An edge image: a list of `"x"` / `"x-"` tokens, or `{"path": [], "at": v}`
/// for a trivial image at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageJson {
    Path(Vec<String>),
    At { path: Vec<String>, at: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMapJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, ImageJson>,
    /// Cumulative levels of edge names, lowest first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<Vec<String>>>,
}

impl GraphMapJson {
    pub fn parse(&self) -> Result<GraphMap, InputError> {
        let vid = |name: &str| {
            self.vertices.iter().position(|v| v == name).ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(EdgeInfo { name: e.name.clone(), from: vid(&e.from)?, to: vid(&e.to)? }))
            .collect::<Result<Vec<_>, GraphError>>()?;
        let g = Graph::new(self.vertices.clone(), edges)?;
        let vertex_map = self
            .vertices
            .iter()
            .map(|v| {
                let img = self.vertex_map.get(v).ok_or_else(|| InputError::Invalid(format!("no image for vertex {v}")))?;
                Ok(vid(img)?)
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        let mut edge_map = Vec::with_capacity(g.edge_count());
        for e in 0..g.edge_count() {
            let name = g.edge_name(e);
            let img = self.edge_map.get(name).ok_or_else(|| InputError::Invalid(format!("no image for edge {name}")))?;
            let (tokens, at) = match img {
                ImageJson::Path(t) => (t, None),
                ImageJson::At { path, at } => (path, Some(vid(at)?)),
            };
            let dirs = tokens.iter().map(|t| g.parse_dir(t)).collect::<Result<Vec<DirEdge>, _>>()?;
            let start = match (dirs.first(), at) {
                (Some(&d), _) => g.origin(d),
                (None, Some(v)) => v,
                (None, None) => vertex_map[g.origin(DirEdge::new(e, false))],
            };
            edge_map.push(EdgePath { start, edges: dirs });
        }
        Ok(GraphMap::new(g, vertex_map, edge_map)?)
    }

    pub fn levels(&self, g: &Graph) -> Result<Option<Vec<Vec<usize>>>, InputError> {
        let Some(levels) = &self.filtration else { return Ok(None) };
        let lookup = |n: &String| g.edge_index(n).ok_or_else(|| GraphError::UnknownEdge(n.clone()));
        Ok(Some(
            levels.iter().map(|l| l.iter().map(lookup).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?,
        ))
    }

    pub fn emit(f: &GraphMap) -> Self {
        let g = f.graph();
        let vname = |v: usize| g.vertex_name(v).to_string();
        GraphMapJson {
            vertices: g.vertex_names().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson { name: e.name.clone(), from: vname(e.from), to: vname(e.to) })
                .collect(),
            vertex_map: (0..g.vertex_count()).map(|v| (vname(v), vname(f.vertex_image(v)))).collect(),
            edge_map: (0..g.edge_count())
                .map(|e| {
                    let img = f.image(DirEdge::new(e, false));
                    let tokens: Vec<String> = img.edges.iter().map(|&d| g.dir_name(d)).collect();
                    let json = if tokens.is_empty() {
                        ImageJson::At { path: tokens, at: vname(img.start) }
                    } else {
                        ImageJson::Path(tokens)
                    };
                    (g.edge_name(e).to_string(), json)
                })
                .collect(),
            filtration: None,
        }
    }
}

/// The rose map realizing `φ`, one petal per generator at vertex `*`.
pub fn rose_of(phi: &Endomorphism) -> GraphMap {
    let b = phi.basis();
    let g = Graph::rose(b.names());
    let edge_map = (0..phi.rank())
        .map(|i| EdgePath {
            start: 0,
            edges: phi.image(i).letters().iter().map(|l| DirEdge::new(l.generator(), l.is_inverse())).collect(),
        })
        .collect();
    GraphMap::new(g, vec![0], edge_map).expect("a rose map is always consistent")
}

/// `f_*` on `π₁(X, v₀)` through the tree route to `f(v₀)`; `None` for a tree.
pub fn fundamental_endo(f: &GraphMap) -> Result<Option<Endomorphism>, InputError> {
    let data = Pi1Data::new(f.graph(), 0)?;
    if data.rank() == 0 {
        return Ok(None);
    }
    let route = data.tree_paths[f.vertex_image(0)].clone();
    Ok(Some(induced_endo(f, 0, &route)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExpect {
    pub members: Vec<String>,
    pub ind: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rk: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    /// `"non-injective"` for inputs that must be rejected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<ClassExpect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteExpect {
    pub empty: bool,
    pub rk: i64,
    pub a: i64,
    pub ichr: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteJson {
    /// A loop at the first vertex, in the basis of the rose or spanning tree.
    pub word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<RouteExpect>,
}

/// A corpus file: a graph map (top-level fields) or an `endomorphism` realized
/// on a rose, with optional expectations and named routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endomorphism: Option<EndoJson>,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub graph_map: Option<GraphMapJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub routes: Vec<RouteJson>,
}

impl InstanceJson {
    pub fn from_str(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instances serialize");
        s.push('\n');
        s
    }

    /// The graph map and optional filtration levels, rejecting maps that are not
    /// `π₁`-injective.
    pub fn load(&self) -> Result<(GraphMap, Option<Vec<Vec<usize>>>), InputError> {
        let (f, levels) = match (&self.endomorphism, &self.graph_map) {
            (Some(e), None) => (rose_of(&e.parse()?), None),
            (None, Some(gm)) => {
                let f = gm.parse()?;
                let levels = gm.levels(f.graph())?;
                (f, levels)
            }
            _ => return Err(InputError::Invalid("need exactly one of a graph map or an endomorphism".into())),
        };
        if let Some(phi) = fundamental_endo(&f)? {
            if !phi.is_injective() {
                return Err(GraphError::NotInjective.into());
            }
        }
        Ok((f, levels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_map_round_trip() {
        let text = r#"{"vertices":["v"],"edges":[{"name":"a","from":"v","to":"v"},{"name":"b","from":"v","to":"v"}],
            "vertex_map":{"v":"v"},"edge_map":{"a":["a-"],"b":["a-","b","b"]}}"#;
        let inst = InstanceJson::from_str(text).unwrap();
        let (f, levels) = inst.load().unwrap();
        assert!(levels.is_none());
        assert_eq!(f.graph().format_path(&f.image(DirEdge::new(1, false))), "a- b b");
        let back = GraphMapJson::emit(&f);
        assert_eq!(&back, inst.graph_map.as_ref().unwrap());
        assert_eq!(back.parse().unwrap(), f);
    }

    #[test]
    fn trivial_image_and_rejection() {
        let text = r#"{"endomorphism":{"rank":1,"letters":["a"],"images":{"a":""}}}"#;
        let inst = InstanceJson::from_str(text).unwrap();
        assert!(matches!(inst.load(), Err(InputError::Graph(GraphError::NotInjective))));
        let f = rose_of(&inst.endomorphism.unwrap().parse().unwrap());
        let j = GraphMapJson::emit(&f);
        assert_eq!(j.edge_map["a"], ImageJson::At { path: vec![], at: "*".into() });
        assert_eq!(serde_json::to_string(&j.edge_map["a"]).unwrap(), r#"{"path":[],"at":"*"}"#);
        assert_eq!(j.parse().unwrap(), f);
    }

    #[test]
    fn endomorphism_and_words() {
        let e = EndoJson { rank: 2, letters: vec!["a".into(), "b".into()], images: BTreeMap::new() };
        assert!(matches!(e.parse(), Err(InputError::Invalid(_))));
        let w: InfiniteWordJson = serde_json::from_str(r#"{"type":"evperiodic","letters":["a","b"],"prefix":"b","period":"ab"}"#).unwrap();
        assert_eq!(w.parse().unwrap().prefix(5).unwrap().len(), 5);
        let m: InfiniteWordJson = serde_json::from_str(
            r#"{"type":"morphic","seed":"B","endo":{"rank":2,"letters":["a","b"],"images":{"a":"A","b":"Abb"}}}"#,
        )
        .unwrap();
        let w = m.parse().unwrap();
        assert_eq!(w.basis().format(&w.prefix(9).unwrap()), "BBaBBBBaB");
    }
}
