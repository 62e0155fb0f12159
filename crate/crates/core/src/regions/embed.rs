//! Outer-face traversal from vertex coordinates.
//!
//! Builders use this to declare the unbounded face of a 2-connected plane
//! graph. Starting at the bottommost vertex, the walk repeatedly leaves
//! along the neighbor closest in clockwise angle to the arrival direction,
//! which traces the face lying to the left of each step. All comparisons
//! use integer cross and dot products.

use crate::graph::{PlaneBipartiteGraph, VertexId};

type Vec2 = (i64, i64);

fn cross(a: Vec2, b: Vec2) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: Vec2, b: Vec2) -> i64 {
    a.0 * b.0 + a.1 * b.1
}

/// Rank of `d` in the clockwise sweep starting just after `back`:
/// 0 for the first open half-turn, 1 for exactly opposite, 2 for the
/// second half-turn, 3 for the back direction itself.
fn sector(back: Vec2, d: Vec2) -> u8 {
    let c = cross(back, d);
    if c < 0 {
        0
    } else if c > 0 {
        2
    } else if dot(back, d) < 0 {
        1
    } else {
        3
    }
}

/// Does `a` come strictly before `b` when sweeping clockwise from `back`?
fn cw_before(back: Vec2, a: Vec2, b: Vec2) -> bool {
    let (sa, sb) = (sector(back, a), sector(back, b));
    if sa != sb {
        return sa < sb;
    }
    cross(a, b) < 0
}

/// The boundary cycle of a 2-connected plane graph, starting at the
/// bottommost (then leftmost) vertex. Returns `None` for graphs that are
/// too small or whose boundary walk revisits a vertex.
pub fn outer_face(g: &PlaneBipartiteGraph) -> Option<Vec<VertexId>> {
    if g.vertices().len() < 3 {
        return None;
    }
    let pos = |v: VertexId| {
        let vx = g.vertex(v).expect("vertex exists");
        (vx.x, vx.y)
    };
    let dir = |from: Vec2, to: Vec2| (to.0 - from.0, to.1 - from.1);
    let start = g
        .vertices()
        .iter()
        .min_by_key(|v| (v.y, v.x))
        .map(|v| v.id)?;
    let sp = pos(start);
    // leave along the most counterclockwise neighbor; the unbounded region
    // below the start then lies on the left of the first step
    let first = g.neighbors(start).iter().map(|&(n, _)| n).max_by(|&a, &b| {
        let (da, db) = (dir(sp, pos(a)), dir(sp, pos(b)));
        // all neighbors of the bottommost vertex lie in the closed upper
        // half plane, so plain ccw comparison is a total order here
        match cross(da, db) {
            x if x < 0 => std::cmp::Ordering::Greater,
            x if x > 0 => std::cmp::Ordering::Less,
            _ => a.cmp(&b),
        }
    })?;
    let mut face = vec![start];
    let mut visited: std::collections::BTreeSet<VertexId> = [start].into_iter().collect();
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        if !visited.insert(cur) {
            // the boundary walk pinches; no simple outer face
            return None;
        }
        face.push(cur);
        let cp = pos(cur);
        let back = dir(cp, pos(prev));
        let mut best: Option<(VertexId, Vec2)> = None;
        for &(n, _) in g.neighbors(cur) {
            if n == prev && g.neighbors(cur).len() > 1 {
                continue;
            }
            let d = dir(cp, pos(n));
            let better = match best {
                None => true,
                Some((bn, bd)) => {
                    cw_before(back, d, bd) || (!cw_before(back, bd, d) && n < bn)
                }
            };
            if better {
                best = Some((n, d));
            }
        }
        let (next, _) = best?;
        prev = cur;
        cur = next;
    }
    if face.len() < 3 {
        return None;
    }
    Some(face)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions;

    #[test]
    fn grid_boundary_is_the_rectangle() {
        let g = regions::grid(3, 4).unwrap();
        let f = outer_face(&g).unwrap();
        assert_eq!(f.len(), 2 * (3 - 1) + 2 * (4 - 1));
        // it validates as a face
        let mut g2 = g.clone();
        g2.declare_face(f).unwrap();
    }

    #[test]
    fn diamond_boundary_has_8n_minus_4_squares() {
        for n in 1..=4u32 {
            let ad = regions::AztecDiamond::unit(n);
            let f = outer_face(&ad.graph).unwrap();
            assert_eq!(f.len(), (8 * n - 4) as usize, "order {n}");
            let mut g2 = ad.graph.clone();
            g2.declare_face(f).unwrap();
        }
    }

    #[test]
    fn hexagon_boundary_validates() {
        let hx = regions::hexagon_q(2, 2, 1).unwrap();
        let f = outer_face(&hx.graph).unwrap();
        let mut g2 = hx.graph.clone();
        g2.declare_face(f).unwrap();
    }
}
