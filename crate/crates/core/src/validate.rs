//! Validation of partial edge drawings, ink accounting and the largest
//! uniform stub ratio a drawing admits.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::crossings::{enumerate_crossings, CrossingMethod};
use crate::error::{Error, Result};
use crate::geometry::{
    conflict_witness, intersect_segments, orientation, orientation_certain,
    segments_certainly_apart, stubs_conflict_approx, stubs_conflict_filtered, FloatPoint, Point,
    SegmentIntersection,
};
use crate::graph::{BoundingBox, GeometricGraph, StubAssignment};
use crate::number::{from_f64, half, to_f64, Length};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    CollinearOverlap {
        first: usize,
        second: usize,
    },
    VertexOnEdge {
        vertex: usize,
        edge: usize,
    },
    /// Three or more edges whose pairwise crossings share one non-vertex point.
    ConcurrentCrossing {
        point: Point,
        edges: Vec<usize>,
    },
}

/// Reports drawing degeneracies; an empty list means general position.
pub fn check_general_position(g: &GeometricGraph) -> Vec<Defect> {
    let mut defects = Vec::new();
    let boxes = g.padded_boxes();
    let m = g.edge_count();
    let mut points: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    let float_vertices = g.float_vertices();
    let float_ends = |e: usize| {
        let (u, v) = g.edges()[e];
        (float_vertices[u], float_vertices[v])
    };

    for e in 0..m {
        for f in e + 1..m {
            if !boxes[e].overlaps(&boxes[f]) {
                continue;
            }
            let ((a, b), (c, d)) = (float_ends(e), float_ends(f));
            if segments_certainly_apart(a, b, c, d) {
                continue;
            }
            match intersect_segments(&g.segment(e), &g.segment(f)) {
                SegmentIntersection::DegenerateOverlap => defects.push(Defect::CollinearOverlap {
                    first: e,
                    second: f,
                }),
                SegmentIntersection::Point(p) if !g.vertices().contains(&p) => {
                    let entry = points.entry(p).or_default();
                    entry.push(e);
                    entry.push(f);
                }
                _ => {}
            }
        }
    }

    for (vertex, p) in g.vertices().iter().enumerate() {
        let fp = float_vertices[vertex];
        for (e, b) in boxes.iter().enumerate() {
            let (u, v) = g.edges()[e];
            if u == vertex || v == vertex {
                continue;
            }
            if fp.x < b.min_x || fp.x > b.max_x || fp.y < b.min_y || fp.y > b.max_y {
                continue;
            }
            let (fa, fc) = float_ends(e);
            if orientation_certain(fa, fc, fp).is_some() {
                continue;
            }
            let (a, c) = g.endpoints(e);
            if orientation(a, c, p).is_eq() {
                let t = g.segment(e).parameter_of(p);
                if t > BigRational::from_integer(0.into())
                    && t < BigRational::from_integer(1.into())
                {
                    defects.push(Defect::VertexOnEdge { vertex, edge: e });
                }
            }
        }
    }

    for (point, mut edges) in points {
        edges.sort_unstable();
        edges.dedup();
        if edges.len() >= 3 {
            defects.push(Defect::ConcurrentCrossing { point, edges });
        }
    }
    defects
}

/// A pair of stubs sharing a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub edges: (usize, usize),
    /// Vertices at which the two conflicting stubs start.
    pub origins: (usize, usize),
    pub witness: Point,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
    /// Collinear overlaps met while validating; the result is then only as
    /// meaningful as the input.
    pub warnings: Vec<Defect>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_lengths(g: &GeometricGraph, s: &StubAssignment) -> Result<()> {
    if s.len() != g.edge_count() {
        return Err(Error::InvalidAssignment {
            edge: s.len().min(g.edge_count()),
            message: format!(
                "assignment has {} entries for {} edges",
                s.len(),
                g.edge_count()
            ),
        });
    }
    Ok(())
}

/// Exact check that no two stubs share a point.
pub fn validate_ped(g: &GeometricGraph, s: &StubAssignment) -> Result<Validation> {
    check_lengths(g, s)?;
    let boxes = g.padded_boxes();
    let m = g.edge_count();
    let stubs: Vec<_> = (0..m).map(|e| s.stubs(g, e)).collect();
    let points = g.float_vertices();
    // edges sharing a vertex overlap only if the other endpoint is on the line
    let edges_certainly_apart = |e: usize, f: usize| {
        let (a, b) = g.edges()[e];
        let (c, d) = g.edges()[f];
        [c, d].iter().any(|&x| {
            x != a && x != b && orientation_certain(points[a], points[b], points[x]).is_some()
        })
    };
    let floats: Vec<Vec<[FloatPoint; 2]>> = stubs
        .iter()
        .map(|list| list.iter().map(|(_, st)| st.float_ends()).collect())
        .collect();
    let stub_boxes: Vec<Vec<BoundingBox>> = floats
        .iter()
        .map(|list| {
            list.iter()
                .map(|&[a, b]| BoundingBox::around(a, b))
                .collect()
        })
        .collect();
    let mut out = Validation::default();
    for e in 0..m {
        for f in e + 1..m {
            if !boxes[e].overlaps(&boxes[f]) {
                continue;
            }
            if g.shares_vertex(e, f)
                && !edges_certainly_apart(e, f)
                && intersect_segments(&g.segment(e), &g.segment(f))
                    == SegmentIntersection::DegenerateOverlap
            {
                out.warnings.push(Defect::CollinearOverlap {
                    first: e,
                    second: f,
                });
            }
            for (i, (u, p)) in stubs[e].iter().enumerate() {
                for (j, (v, q)) in stubs[f].iter().enumerate() {
                    if !stub_boxes[e][i].overlaps(&stub_boxes[f][j]) {
                        continue;
                    }
                    if stubs_conflict_filtered(p, floats[e][i], q, floats[f][j]) {
                        out.violations.push(Violation {
                            edges: (e, f),
                            origins: (*u, *v),
                            witness: conflict_witness(p, q).expect("conflicting stubs meet"),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Float-mode validation with tolerance [`crate::number::FLOAT_TOLERANCE`];
/// used for drawings whose coordinates are rounded trigonometric values.
pub fn validate_ped_approx(g: &GeometricGraph, s: &StubAssignment) -> Result<Validation> {
    check_lengths(g, s)?;
    let boxes = g.padded_boxes();
    let points = g.float_vertices();
    let m = g.edge_count();
    let stubs: Vec<Vec<(usize, FloatPoint, FloatPoint)>> = (0..m)
        .map(|e| {
            if s.is_erased(e) {
                return Vec::new();
            }
            let (u, v) = g.edges()[e];
            let t = to_f64(s.fraction(e));
            vec![
                (u, points[u], points[u].lerp(points[v], t)),
                (v, points[v], points[v].lerp(points[u], t)),
            ]
        })
        .collect();
    let mut out = Validation::default();
    for e in 0..m {
        for f in e + 1..m {
            if !boxes[e].overlaps(&boxes[f]) {
                continue;
            }
            for &(u, a, b) in &stubs[e] {
                for &(v, c, d) in &stubs[f] {
                    if stubs_conflict_approx(a, b, c, d) {
                        out.violations.push(Violation {
                            edges: (e, f),
                            origins: (u, v),
                            witness: approx_witness(a, b, c, d),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn approx_witness(a: FloatPoint, b: FloatPoint, c: FloatPoint, d: FloatPoint) -> Point {
    let (rx, ry) = (b.x - a.x, b.y - a.y);
    let (sx, sy) = (d.x - c.x, d.y - c.y);
    let denom = rx * sy - ry * sx;
    let p = if denom.abs() > 0.0 {
        let t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom;
        a.lerp(b, t)
    } else {
        // collinear overlap: any shared point will do
        a.lerp(b, 0.5).lerp(c.lerp(d, 0.5), 0.5)
    };
    Point::new(from_f64(p.x), from_f64(p.y))
}

/// Total drawn stub length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ink {
    /// `sum_e 2 * s_e`.
    pub absolute: f64,
    /// `absolute / sum_e l_e`, in (0, 1].
    pub relative: f64,
}

pub fn ink(g: &GeometricGraph, s: &StubAssignment) -> Ink {
    let mut absolute = 0.0;
    let mut total = 0.0;
    for e in 0..g.edge_count() {
        let l = g.length_f64(e);
        absolute += 2.0 * to_f64(s.fraction(e)) * l;
        total += l;
    }
    Ink {
        absolute,
        relative: if total > 0.0 { absolute / total } else { 0.0 },
    }
}

/// Absolute ink in any length arithmetic.
pub fn ink_as<W: Length>(g: &GeometricGraph, s: &StubAssignment) -> W {
    let two = BigRational::from_integer(2.into());
    (0..g.edge_count()).fold(W::additive_zero(), |acc, e| {
        acc.plus(&W::scaled_sqrt(
            &(&two * s.fraction(e)),
            &g.squared_length(e),
        ))
    })
}

/// Largest uniform ratio whose homogeneous drawing is crossing-free.
///
/// Two crossing stubs both have to pass the crossing point, so a crossing of
/// `e` and `f` blocks exactly the ratios above `max(d_e, d_f)`.
pub fn max_uniform_delta(g: &GeometricGraph) -> Result<BigRational> {
    let crossings = enumerate_crossings(g, CrossingMethod::AllPairs)?;
    Ok(crossings
        .iter()
        .map(|c| {
            let a = c.near_fraction(c.first);
            let b = c.near_fraction(c.second);
            a.max(b)
        })
        .fold(half(), |acc, x| acc.min(x)))
}
