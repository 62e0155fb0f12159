//! Plane bipartite graphs with declared faces and anchor quads.
//!
//! Planarity is not verified globally: builders declare faces by
//! construction and the identity machinery only needs the four anchors to
//! lie on a common declared face. Coordinates are metadata for builders and
//! serialization, never consulted by the counting algorithms.

use crate::ring::RingElem;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("vertex color must be 0 or 1")]
    BadColor,
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0}-{1} joins two vertices of the same color")]
    MonochromaticEdge(VertexId, VertexId),
    #[error("face has fewer than 3 vertices")]
    FaceTooShort,
    #[error("face repeats vertex {0}")]
    FaceRepeatsVertex(VertexId),
    #[error("face vertices {0} and {1} are not adjacent")]
    FaceNotClosed(VertexId, VertexId),
    #[error("no face with index {0}")]
    UnknownFace(usize),
    #[error("anchor vertices must be distinct")]
    AnchorNotDistinct,
    #[error("anchor vertex {0} does not appear exactly once on the face")]
    AnchorNotOnFace(VertexId),
    #[error("anchors do not appear in cyclic order on the face")]
    AnchorCyclicOrder,
    #[error("anchor colors match no identity pattern")]
    AnchorNoPattern,
    #[error("color class sizes {0}/{1} do not fit the anchor pattern")]
    AnchorImbalance(usize, usize),
    #[error(transparent)]
    Ring(#[from] crate::ring::RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub color: u8,
    pub x: i64,
    pub y: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId, // u < v
    pub v: VertexId,
    pub weight: RingElem,
}

/// Four vertices in cyclic order on a declared face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnchorQuad {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
    pub face: usize,
}

impl AnchorQuad {
    pub fn vertices(&self) -> [VertexId; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The quad with labels rotated one step: (b, c, d, a).
    pub fn rotated(&self) -> AnchorQuad {
        AnchorQuad {
            a: self.b,
            b: self.c,
            c: self.d,
            d: self.a,
            face: self.face,
        }
    }
}

/// Which bilinear identity applies to an anchor quad, named by the anchors'
/// color signature. `V1` below is the color class of anchor `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// a, c in V1; b, d in V2; |V1| = |V2|.
    Acbd,
    /// a, b in V1; c, d in V2; |V1| = |V2|.
    Abcd,
    /// a, b, c in V1; d in V2; |V1| = |V2| + 1.
    AbcD,
    /// all four in V1; |V1| = |V2| + 2.
    All4,
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Pattern::Acbd => "ACBD",
            Pattern::Abcd => "ABCD",
            Pattern::AbcD => "ABC|D",
            Pattern::All4 => "ALL4",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct PlaneBipartiteGraph {
    vertices: Vec<Vertex>,           // sorted by id
    edges: Vec<Edge>,                // canonical (u < v), sorted
    faces: Vec<Vec<VertexId>>,       // as declared
    anchor: Option<AnchorQuad>,
    index: BTreeMap<VertexId, usize>,
    adj: BTreeMap<VertexId, Vec<(VertexId, usize)>>, // neighbor, edge index
}

impl PartialEq for PlaneBipartiteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.faces == other.faces
            && self.anchor == other.anchor
    }
}

impl Eq for PlaneBipartiteGraph {}

impl PlaneBipartiteGraph {
    pub fn new(
        mut vertices: Vec<Vertex>,
        edges: Vec<(VertexId, VertexId, RingElem)>,
        faces: Vec<Vec<VertexId>>,
    ) -> Result<Self, GraphError> {
        vertices.sort_by_key(|v| v.id);
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.color > 1 {
                return Err(GraphError::BadColor);
            }
            if index.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id));
            }
        }
        let mut canon: Vec<Edge> = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            for e in [u, v] {
                if !index.contains_key(&e) {
                    return Err(GraphError::UnknownVertex(e));
                }
            }
            if vertices[index[&u]].color == vertices[index[&v]].color {
                return Err(GraphError::MonochromaticEdge(u, v));
            }
            canon.push(Edge { u, v, weight: w });
        }
        canon.sort_by_key(|e| (e.u, e.v));
        for w in canon.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
            }
        }
        let mut adj: BTreeMap<VertexId, Vec<(VertexId, usize)>> = BTreeMap::new();
        for v in &vertices {
            adj.insert(v.id, Vec::new());
        }
        for (i, e) in canon.iter().enumerate() {
            adj.get_mut(&e.u).unwrap().push((e.v, i));
            adj.get_mut(&e.v).unwrap().push((e.u, i));
        }
        for l in adj.values_mut() {
            l.sort();
        }
        let g = PlaneBipartiteGraph {
            vertices,
            edges: canon,
            faces: Vec::new(),
            anchor: None,
            index,
            adj,
        };
        let mut g = g;
        for f in faces {
            g.declare_face(f)?;
        }
        Ok(g)
    }

    /// Appends a face, checking it is a closed walk of distinct vertices.
    pub fn declare_face(&mut self, face: Vec<VertexId>) -> Result<usize, GraphError> {
        if face.len() < 3 {
            return Err(GraphError::FaceTooShort);
        }
        let mut seen = BTreeSet::new();
        for &v in &face {
            if !self.index.contains_key(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(GraphError::FaceRepeatsVertex(v));
            }
        }
        for i in 0..face.len() {
            let (u, v) = (face[i], face[(i + 1) % face.len()]);
            if self.edge_between(u, v).is_none() {
                return Err(GraphError::FaceNotClosed(u, v));
            }
        }
        self.faces.push(face);
        Ok(self.faces.len() - 1)
    }

    /// Attaches an anchor quad after validating it classifies.
    pub fn set_anchor(&mut self, quad: AnchorQuad) -> Result<Pattern, GraphError> {
        let p = self.classify_anchors(&quad)?;
        self.anchor = Some(quad);
        Ok(p)
    }

    pub fn anchor(&self) -> Option<&AnchorQuad> {
        self.anchor.as_ref()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn vertex(&self, v: VertexId) -> Result<&Vertex, GraphError> {
        self.index
            .get(&v)
            .map(|&i| &self.vertices[i])
            .ok_or(GraphError::UnknownVertex(v))
    }

    pub fn color(&self, v: VertexId) -> Result<u8, GraphError> {
        self.vertex(v).map(|v| v.color)
    }

    /// Neighbors with edge indices, ascending by neighbor id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        self.adj.get(&v).map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<&Edge> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by_key(&(u, v), |e| (e.u, e.v))
            .ok()
            .map(|i| &self.edges[i])
    }

    /// Sizes of the color classes (color 0, color 1).
    pub fn color_counts(&self) -> (usize, usize) {
        let c0 = self.vertices.iter().filter(|v| v.color == 0).count();
        (c0, self.vertices.len() - c0)
    }

    pub fn is_balanced(&self) -> bool {
        let (a, b) = self.color_counts();
        a == b
    }

    /// Deletes the given vertices and all incident edges. Faces referencing
    /// a deleted vertex are dropped, not re-derived; the anchor is dropped
    /// if its vertices or face are gone.
    pub fn delete_vertices(&self, del: &BTreeSet<VertexId>) -> Result<Self, GraphError> {
        for &v in del {
            if !self.index.contains_key(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .filter(|v| !del.contains(&v.id))
            .cloned()
            .collect();
        let edges: Vec<(VertexId, VertexId, RingElem)> = self
            .edges
            .iter()
            .filter(|e| !del.contains(&e.u) && !del.contains(&e.v))
            .map(|e| (e.u, e.v, e.weight.clone()))
            .collect();
        let mut faces = Vec::new();
        let mut face_map: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            if f.iter().all(|v| !del.contains(v)) {
                face_map.insert(i, faces.len());
                faces.push(f.clone());
            }
        }
        let mut g = PlaneBipartiteGraph::new(vertices, edges, faces)?;
        if let Some(q) = &self.anchor {
            if q.vertices().iter().all(|v| !del.contains(v)) {
                if let Some(&nf) = face_map.get(&q.face) {
                    g.anchor = Some(AnchorQuad { face: nf, ..*q });
                }
            }
        }
        Ok(g)
    }

    /// Convenience: delete by slice.
    pub fn minus(&self, del: &[VertexId]) -> Result<Self, GraphError> {
        self.delete_vertices(&del.iter().copied().collect())
    }

    /// Determines which identity pattern the quad falls under, checking the
    /// cyclic order on the declared face and the color-class balance the
    /// pattern requires.
    pub fn classify_anchors(&self, quad: &AnchorQuad) -> Result<Pattern, GraphError> {
        let vs = quad.vertices();
        let distinct: BTreeSet<_> = vs.iter().collect();
        if distinct.len() != 4 {
            return Err(GraphError::AnchorNotDistinct);
        }
        let face = self
            .faces
            .get(quad.face)
            .ok_or(GraphError::UnknownFace(quad.face))?;
        let mut pos = [0usize; 4];
        for (k, v) in vs.iter().enumerate() {
            let occurrences: Vec<usize> = face
                .iter()
                .enumerate()
                .filter(|(_, fv)| *fv == v)
                .map(|(i, _)| i)
                .collect();
            if occurrences.len() != 1 {
                return Err(GraphError::AnchorNotOnFace(*v));
            }
            pos[k] = occurrences[0];
        }
        // ranks of b, c, d measured around the face starting from a
        let n = face.len();
        let rank = |p: usize| (p + n - pos[0]) % n;
        let (rb, rc, rd) = (rank(pos[1]), rank(pos[2]), rank(pos[3]));
        let forward = rb < rc && rc < rd;
        let backward = rd < rc && rc < rb;
        if !(forward || backward) {
            return Err(GraphError::AnchorCyclicOrder);
        }
        let col: Vec<u8> = vs
            .iter()
            .map(|&v| self.color(v))
            .collect::<Result<_, _>>()?;
        let (n0, n1) = self.color_counts();
        // size of a's class minus the other class
        let class_of = |c: u8| if c == 0 { n0 as i64 } else { n1 as i64 };
        let excess = class_of(col[0]) - class_of(1 - col[0]);
        let (pattern, need) = if col[0] == col[2] && col[1] == col[3] && col[0] != col[1] {
            (Pattern::Acbd, 0)
        } else if col[0] == col[1] && col[2] == col[3] && col[0] != col[2] {
            (Pattern::Abcd, 0)
        } else if col[0] == col[1] && col[1] == col[2] && col[3] != col[0] {
            (Pattern::AbcD, 1)
        } else if col.iter().all(|&c| c == col[0]) {
            (Pattern::All4, 2)
        } else {
            return Err(GraphError::AnchorNoPattern);
        };
        if excess != need {
            return Err(GraphError::AnchorImbalance(n0, n1));
        }
        Ok(pattern)
    }

    /// Line-oriented text format; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        let mut anchor = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse {
                line: lineno + 1,
                msg,
            };
            let mut tok = line.split_whitespace();
            match tok.next().unwrap() {
                "v" => {
                    let rest: Vec<&str> = tok.collect();
                    if rest.len() != 4 {
                        return Err(err("expected: v <id> <color> <x> <y>".into()));
                    }
                    let id = VertexId(rest[0].parse().map_err(|e| err(format!("bad id: {e}")))?);
                    let color: u8 = rest[1].parse().map_err(|e| err(format!("bad color: {e}")))?;
                    let x: i64 = rest[2].parse().map_err(|e| err(format!("bad x: {e}")))?;
                    let y: i64 = rest[3].parse().map_err(|e| err(format!("bad y: {e}")))?;
                    vertices.push(Vertex { id, color, x, y });
                }
                "e" => {
                    let u = tok
                        .next()
                        .ok_or_else(|| err("expected: e <u> <v> [weight]".into()))?;
                    let v = tok
                        .next()
                        .ok_or_else(|| err("expected: e <u> <v> [weight]".into()))?;
                    let u = VertexId(u.parse().map_err(|e| err(format!("bad id: {e}")))?);
                    let v = VertexId(v.parse().map_err(|e| err(format!("bad id: {e}")))?);
                    let rest: Vec<&str> = tok.collect();
                    let weight = if rest.is_empty() {
                        RingElem::one()
                    } else {
                        RingElem::parse(&rest.join(" "))
                            .map_err(|e| err(format!("bad weight: {e}")))?
                    };
                    edges.push((u, v, weight));
                }
                "f" => {
                    let ids: Result<Vec<VertexId>, _> = tok
                        .map(|t| t.parse().map(VertexId).map_err(|e| err(format!("bad id: {e}"))))
                        .collect();
                    faces.push(ids?);
                }
                "anchor" => {
                    let vals: Result<Vec<u32>, _> = tok
                        .map(|t| t.parse().map_err(|e| err(format!("bad anchor field: {e}"))))
                        .collect();
                    let vals = vals?;
                    if vals.len() != 5 {
                        return Err(err("expected: anchor <a> <b> <c> <d> <face-index>".into()));
                    }
                    anchor = Some(AnchorQuad {
                        a: VertexId(vals[0]),
                        b: VertexId(vals[1]),
                        c: VertexId(vals[2]),
                        d: VertexId(vals[3]),
                        face: vals[4] as usize,
                    });
                }
                other => return Err(err(format!("unknown record {other:?}"))),
            }
        }
        let mut g = PlaneBipartiteGraph::new(vertices, edges, faces)?;
        if let Some(q) = anchor {
            g.set_anchor(q)?;
        }
        Ok(g)
    }

    /// Deterministic serialization: vertices by id, edges by (min, max).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            writeln!(out, "v {} {} {} {}", v.id, v.color, v.x, v.y).unwrap();
        }
        for e in &self.edges {
            if e.weight == RingElem::one() {
                writeln!(out, "e {} {}", e.u, e.v).unwrap();
            } else {
                writeln!(out, "e {} {} {}", e.u, e.v, e.weight).unwrap();
            }
        }
        for f in &self.faces {
            let ids: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            writeln!(out, "f {}", ids.join(" ")).unwrap();
        }
        if let Some(q) = &self.anchor {
            writeln!(out, "anchor {} {} {} {} {}", q.a, q.b, q.c, q.d, q.face).unwrap();
        }
        out
    }
}
