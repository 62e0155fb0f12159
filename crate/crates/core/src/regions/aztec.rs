//! The Aztec diamond graph: dual of the order-n Aztec diamond region, with
//! unit, fortress, or caller-supplied edge weights.
//!
//! Squares are addressed by the half-open coordinates (i, j) of their
//! lower-left corner, so centers sit at (i + 1/2, j + 1/2) and the order-n
//! diamond is fmag(i) + fmag(j) <= n + 1 with fmag(i) = i+1 for i >= 0 and
//! -i otherwise. Serialized coordinates are doubled (odd-odd centers).

use super::{embed, Weighting};
use crate::graph::{AnchorQuad, GraphError, PlaneBipartiteGraph, Vertex, VertexId};
use crate::ring::RingElem;
use std::collections::BTreeMap;

/// The unique edges joining the two extreme squares on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerEdges {
    pub t: (VertexId, VertexId),
    pub b: (VertexId, VertexId),
    pub l: (VertexId, VertexId),
    pub r: (VertexId, VertexId),
}

#[derive(Debug, Clone)]
pub struct AztecDiamond {
    pub n: u32,
    pub weighting: Weighting,
    pub graph: PlaneBipartiteGraph,
    square_ids: BTreeMap<(i64, i64), VertexId>,
}

fn fmag(i: i64) -> i64 {
    if i >= 0 {
        i + 1
    } else {
        -i
    }
}

impl AztecDiamond {
    pub fn contains(n: u32, i: i64, j: i64) -> bool {
        fmag(i) + fmag(j) <= i64::from(n) + 1
    }

    /// Squares of the order-n diamond in ascending (i, j) order.
    pub fn squares(n: u32) -> Vec<(i64, i64)> {
        let b = i64::from(n);
        let mut out = Vec::new();
        for i in -b..=b {
            for j in -b..=b {
                if Self::contains(n, i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn unit(n: u32) -> Self {
        Self::with_weights(n, Weighting::Unit, |_, _| RingElem::one())
    }

    /// Fortress weighting: edges are partitioned into 4-cycle cells and a
    /// cell at lattice point (p, q) gets weight 1 when p is even and 1/2
    /// when p is odd (variant 2 swaps the classes). Variants 1 and 2 need
    /// odd order, variant 3 even order.
    pub fn fortress(n: u32, weighting: Weighting) -> Result<Self, GraphError> {
        let flip = match weighting {
            Weighting::Fortress1 | Weighting::Fortress2 if n % 2 == 0 => {
                return Err(GraphError::Parse {
                    line: 0,
                    msg: format!("fortress variant of {weighting} needs odd order, got {n}"),
                })
            }
            Weighting::Fortress3 if n % 2 == 1 => {
                return Err(GraphError::Parse {
                    line: 0,
                    msg: format!("fortress variant 3 needs even order, got {n}"),
                })
            }
            Weighting::Fortress1 | Weighting::Fortress3 => false,
            Weighting::Fortress2 => true,
            Weighting::Unit => {
                return Err(GraphError::Parse {
                    line: 0,
                    msg: "unit weighting is not a fortress variant".into(),
                })
            }
        };
        let one = RingElem::rational(1, 1).expect("nonzero denominator");
        let half = RingElem::rational(1, 2).expect("nonzero denominator");
        Ok(Self::with_weights(n, weighting, move |a, b| {
            let (p, _q) = cell_of_edge(n, a, b);
            let even = p.rem_euclid(2) == 0;
            if even != flip {
                one.clone()
            } else {
                half.clone()
            }
        }))
    }

    pub fn with_weights(
        n: u32,
        weighting: Weighting,
        mut weight: impl FnMut((i64, i64), (i64, i64)) -> RingElem,
    ) -> Self {
        let squares = Self::squares(n);
        let mut square_ids = BTreeMap::new();
        let mut vertices = Vec::with_capacity(squares.len());
        for (k, &(i, j)) in squares.iter().enumerate() {
            let id = VertexId(k as u32);
            square_ids.insert((i, j), id);
            vertices.push(Vertex {
                id,
                color: ((i + j).rem_euclid(2)) as u8,
                x: 2 * i + 1,
                y: 2 * j + 1,
            });
        }
        let mut edges = Vec::new();
        for &(i, j) in &squares {
            for (ni, nj) in [(i + 1, j), (i, j + 1)] {
                if let Some(&nid) = square_ids.get(&(ni, nj)) {
                    edges.push((square_ids[&(i, j)], nid, weight((i, j), (ni, nj))));
                }
            }
        }
        // interior 4-cycle faces at lattice points, then the outer face
        let mut faces = Vec::new();
        let b = i64::from(n);
        for p in -b..=b + 1 {
            for q in -b..=b + 1 {
                let quad = [(p - 1, q - 1), (p, q - 1), (p, q), (p - 1, q)];
                if quad.iter().all(|s| square_ids.contains_key(s)) {
                    faces.push(quad.iter().map(|s| square_ids[s]).collect());
                }
            }
        }
        let mut graph = PlaneBipartiteGraph::new(vertices, edges, faces)
            .expect("diamond construction is valid");
        if let Some(outer) = embed::outer_face(&graph) {
            graph.declare_face(outer).expect("boundary walk is a face");
        }
        AztecDiamond {
            n,
            weighting,
            graph,
            square_ids,
        }
    }

    pub fn square_id(&self, s: (i64, i64)) -> Option<VertexId> {
        self.square_ids.get(&s).copied()
    }

    pub fn square_of(&self, v: VertexId) -> Option<(i64, i64)> {
        self.square_ids
            .iter()
            .find(|(_, &id)| id == v)
            .map(|(&s, _)| s)
    }

    /// Squares of the order-m sub-diamond translated by (dx, dy).
    pub fn sub_squares(m: u32, dx: i64, dy: i64) -> Vec<(i64, i64)> {
        Self::squares(m)
            .into_iter()
            .map(|(i, j)| (i + dx, j + dy))
            .collect()
    }

    /// Corner edges (t, b, l, r) of the order-m sub-diamond at (dx, dy),
    /// as square pairs. Requires m >= 1.
    pub fn corner_edge_squares(m: u32, dx: i64, dy: i64) -> [((i64, i64), (i64, i64)); 4] {
        let m = i64::from(m);
        [
            ((-1 + dx, m - 1 + dy), (dx, m - 1 + dy)),  // top
            ((-1 + dx, -m + dy), (dx, -m + dy)),        // bottom
            ((-m + dx, -1 + dy), (-m + dx, dy)),        // left
            ((m - 1 + dx, -1 + dy), (m - 1 + dx, dy)),  // right
        ]
    }

    pub fn corner_edges(&self) -> Option<CornerEdges> {
        if self.n == 0 {
            return None;
        }
        let [t, b, l, r] = Self::corner_edge_squares(self.n, 0, 0);
        let id = |(s1, s2): ((i64, i64), (i64, i64))| {
            Some((self.square_id(s1)?, self.square_id(s2)?))
        };
        Some(CornerEdges {
            t: id(t)?,
            b: id(b)?,
            l: id(l)?,
            r: id(r)?,
        })
    }

    /// Weight of the edge between two adjacent squares.
    pub fn edge_weight(&self, s1: (i64, i64), s2: (i64, i64)) -> Option<&RingElem> {
        let (u, v) = (self.square_id(s1)?, self.square_id(s2)?);
        self.graph.edge_between(u, v).map(|e| &e.weight)
    }

    /// The graph with the given squares removed.
    pub fn graph_minus(&self, squares: &[(i64, i64)]) -> Result<PlaneBipartiteGraph, GraphError> {
        let ids: Option<Vec<VertexId>> = squares.iter().map(|&s| self.square_id(s)).collect();
        let ids = ids.ok_or(GraphError::UnknownVertex(VertexId(u32::MAX)))?;
        self.graph.minus(&ids)
    }

    /// One anchor per side: the extreme squares, chosen so the quad colors
    /// alternate around the boundary (a Theorem-2.1 configuration).
    pub fn corner_anchor_quad(&self) -> Option<AnchorQuad> {
        if self.n == 0 {
            return None;
        }
        let n = i64::from(self.n);
        let want_ac = (n % 2) as u8; // color n mod 2 for top and bottom
        let pick = |s1: (i64, i64), s2: (i64, i64), color: u8| {
            let c1 = ((s1.0 + s1.1).rem_euclid(2)) as u8;
            if c1 == color {
                s1
            } else {
                s2
            }
        };
        let a = pick((-1, n - 1), (0, n - 1), want_ac);
        let b = pick((n - 1, 0), (n - 1, -1), 1 - want_ac);
        let c = pick((0, -n), (-1, -n), want_ac);
        let d = pick((-n, -1), (-n, 0), 1 - want_ac);
        Some(AnchorQuad {
            a: self.square_id(a)?,
            b: self.square_id(b)?,
            c: self.square_id(c)?,
            d: self.square_id(d)?,
            face: self.graph.faces().len().checked_sub(1)?,
        })
    }
}

/// The 4-cycle cell containing an edge: of the two lattice endpoints of the
/// shared square side, the one whose coordinate parity matches n - 1.
pub(crate) fn cell_of_edge(n: u32, a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    let want = (i64::from(n) - 1).rem_euclid(2);
    let candidates = if a.1 == b.1 {
        // horizontal square pair: shared side from (max_i, j) to (max_i, j+1)
        let p = a.0.max(b.0);
        [(p, a.1), (p, a.1 + 1)]
    } else {
        let q = a.1.max(b.1);
        [(a.0, q), (a.0 + 1, q)]
    };
    for c in candidates {
        if (c.0 + c.1).rem_euclid(2) == want {
            return c;
        }
    }
    unreachable!("the two candidate cells have opposite parities")
}
