//! Parametric builders for every region family, plus the textual region
//! syntax used by the command line: `aztec:4`, `aztec:5:fortress1`,
//! `rect:4:2,3`, `hex:2,3,2`, `tcpp:3,2`, `grid:2,7`, `tromino:4:t2`,
//! `rectembed:4,4`.

mod aztec;
pub(crate) mod embed;
mod grid;
mod hexagon;
mod rect;

pub use aztec::{AztecDiamond, CornerEdges};
pub use grid::{grid, grid_column_quad, grid_corner_quad, rectangle_in_aztec, RectangleInAztec};
pub use hexagon::{hexagon_q, tcpp_region, HexagonQ, TcppRegion, Tri};
pub use rect::{tromino_region, AztecRectangle, TrominoKind};

use crate::graph::{GraphError, PlaneBipartiteGraph};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Unit,
    Fortress1,
    Fortress2,
    Fortress3,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Weighting::Unit => "unit",
            Weighting::Fortress1 => "fortress1",
            Weighting::Fortress2 => "fortress2",
            Weighting::Fortress3 => "fortress3",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionSpec {
    Aztec { n: u32, weighting: Weighting },
    Rect { n: u32, hole: Option<(u32, u32)> },
    Hexagon { r: u32, s: u32, t: u32 },
    Tcpp { r: u32, t: u32 },
    Grid { m: u32, n: u32 },
    Tromino { n: u32, which: TrominoKind },
    RectEmbed { h: u32, w: u32 },
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::Aztec { n, weighting } => {
                if *weighting == Weighting::Unit {
                    write!(f, "aztec:{n}")
                } else {
                    write!(f, "aztec:{n}:{weighting}")
                }
            }
            RegionSpec::Rect { n, hole: Some((a, b)) } => write!(f, "rect:{n}:{a},{b}"),
            RegionSpec::Rect { n, hole: None } => write!(f, "rect:{n}"),
            RegionSpec::Hexagon { r, s, t } => write!(f, "hex:{r},{s},{t}"),
            RegionSpec::Tcpp { r, t } => write!(f, "tcpp:{r},{t}"),
            RegionSpec::Grid { m, n } => write!(f, "grid:{m},{n}"),
            RegionSpec::Tromino { n, which } => write!(f, "tromino:{n}:{which}"),
            RegionSpec::RectEmbed { h, w } => write!(f, "rectembed:{h},{w}"),
        }
    }
}

fn spec_err(text: &str, msg: &str) -> GraphError {
    GraphError::Parse {
        line: 0,
        msg: format!("region {text:?}: {msg}"),
    }
}

fn parse_nums(text: &str, part: &str, want: usize) -> Result<Vec<u32>, GraphError> {
    let nums: Result<Vec<u32>, _> = part.split(',').map(str::parse).collect();
    match nums {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(spec_err(text, &format!("expected {want} comma-separated numbers"))),
    }
}

impl RegionSpec {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let parts: Vec<&str> = text.split(':').collect();
        match parts.as_slice() {
            ["aztec", n] => Ok(RegionSpec::Aztec {
                n: parse_nums(text, n, 1)?[0],
                weighting: Weighting::Unit,
            }),
            ["aztec", n, w] => {
                let weighting = match *w {
                    "fortress1" => Weighting::Fortress1,
                    "fortress2" => Weighting::Fortress2,
                    "fortress3" => Weighting::Fortress3,
                    _ => return Err(spec_err(text, "unknown weighting")),
                };
                Ok(RegionSpec::Aztec {
                    n: parse_nums(text, n, 1)?[0],
                    weighting,
                })
            }
            ["rect", n] => Ok(RegionSpec::Rect {
                n: parse_nums(text, n, 1)?[0],
                hole: None,
            }),
            ["rect", n, ab] => {
                let ab = parse_nums(text, ab, 2)?;
                Ok(RegionSpec::Rect {
                    n: parse_nums(text, n, 1)?[0],
                    hole: Some((ab[0], ab[1])),
                })
            }
            ["hex", rst] => {
                let v = parse_nums(text, rst, 3)?;
                Ok(RegionSpec::Hexagon { r: v[0], s: v[1], t: v[2] })
            }
            ["tcpp", rt] => {
                let v = parse_nums(text, rt, 2)?;
                Ok(RegionSpec::Tcpp { r: v[0], t: v[1] })
            }
            ["grid", mn] => {
                let v = parse_nums(text, mn, 2)?;
                Ok(RegionSpec::Grid { m: v[0], n: v[1] })
            }
            ["tromino", n, which] => {
                let which = match *which {
                    "t1" => TrominoKind::T1,
                    "t2" => TrominoKind::T2,
                    "t3" => TrominoKind::T3,
                    _ => return Err(spec_err(text, "tromino kind must be t1, t2 or t3")),
                };
                Ok(RegionSpec::Tromino {
                    n: parse_nums(text, n, 1)?[0],
                    which,
                })
            }
            ["rectembed", hw] => {
                let v = parse_nums(text, hw, 2)?;
                Ok(RegionSpec::RectEmbed { h: v[0], w: v[1] })
            }
            _ => Err(spec_err(text, "unknown region family")),
        }
    }

    /// Materializes the region's graph.
    pub fn build(&self) -> Result<PlaneBipartiteGraph, GraphError> {
        Ok(match *self {
            RegionSpec::Aztec { n, weighting } => match weighting {
                Weighting::Unit => AztecDiamond::unit(n).graph,
                _ => AztecDiamond::fortress(n, weighting)?.graph,
            },
            RegionSpec::Rect { n, hole } => AztecRectangle::new(n, hole)?.graph,
            RegionSpec::Hexagon { r, s, t } => hexagon_q(r, s, t)?.graph,
            RegionSpec::Tcpp { r, t } => tcpp_region(r, t)?.graph,
            RegionSpec::Grid { m, n } => grid(m, n)?,
            RegionSpec::Tromino { n, which } => tromino_region(n, which)?,
            RegionSpec::RectEmbed { h, w } => rectangle_in_aztec(h, w)?.diamond.graph,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_round_trip() {
        let specs = [
            "aztec:4",
            "aztec:5:fortress1",
            "rect:4:2,3",
            "rect:4",
            "hex:2,3,2",
            "tcpp:3,2",
            "grid:2,7",
            "tromino:4:t2",
            "rectembed:4,4",
        ];
        for s in specs {
            let spec = RegionSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(RegionSpec::parse(&spec.to_string()).unwrap(), spec);
        }
        assert!(RegionSpec::parse("aztec").is_err());
        assert!(RegionSpec::parse("blob:3").is_err());
        assert!(RegionSpec::parse("tromino:4:t9").is_err());
    }

    #[test]
    fn every_builder_output_validates() {
        // builders go through PlaneBipartiteGraph::new, which checks
        // bipartiteness and face closure; just exercise them
        let specs = [
            "aztec:3",
            "aztec:3:fortress2",
            "rect:3:1,1",
            "hex:2,2,1",
            "tcpp:3,1",
            "grid:3,4",
            "tromino:4:t3",
            "rectembed:2,3",
        ];
        for s in specs {
            let g = RegionSpec::parse(s).unwrap().build().unwrap();
            for f in g.faces() {
                assert!(f.len() >= 3);
            }
        }
    }
}
