//! Geometric graphs and per-edge symmetric stub assignments.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{FloatPoint, Point, Segment, Stub};
use crate::number::{half, to_f64, Length};

/// A straight-line drawing: vertices at exact points, edges as index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricGraph {
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
}

impl GeometricGraph {
    pub fn new(vertices: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen_points = HashSet::with_capacity(vertices.len());
        for (i, p) in vertices.iter().enumerate() {
            if !seen_points.insert(p) {
                return Err(Error::InvalidGraph(format!(
                    "vertex {i} duplicates the coordinates {p}"
                )));
            }
        }
        let mut seen_edges = HashSet::with_capacity(edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} references a missing vertex ({u}, {v})"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {e} is a self-loop")));
            }
            if !seen_edges.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} ({u}, {v}) is a duplicate"
                )));
            }
        }
        Ok(GeometricGraph { vertices, edges })
    }

    pub fn empty() -> Self {
        GeometricGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (&Point, &Point) {
        let (u, v) = self.edges[e];
        (&self.vertices[u], &self.vertices[v])
    }

    pub fn segment(&self, e: usize) -> Segment {
        let (a, b) = self.endpoints(e);
        Segment {
            a: a.clone(),
            b: b.clone(),
        }
    }

    pub fn squared_length(&self, e: usize) -> BigRational {
        let (a, b) = self.endpoints(e);
        a.squared_distance(b)
    }

    pub fn length_f64(&self, e: usize) -> f64 {
        to_f64(&self.squared_length(e)).sqrt()
    }

    pub fn length<W: Length>(&self, e: usize) -> W {
        W::scaled_sqrt(
            &BigRational::from_integer(1.into()),
            &self.squared_length(e),
        )
    }

    pub fn total_length<W: Length>(&self) -> W {
        (0..self.edge_count()).fold(W::additive_zero(), |acc, e| acc.plus(&self.length::<W>(e)))
    }

    pub fn shares_vertex(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// The graph without edge `e`; vertices are kept.
    pub fn without_edge(&self, e: usize) -> GeometricGraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        GeometricGraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    pub(crate) fn float_vertices(&self) -> Vec<FloatPoint> {
        self.vertices.iter().map(Point::to_f64).collect()
    }

    /// Float bounding boxes of every edge, padded so that disjoint padded
    /// boxes imply disjoint exact boxes.
    pub(crate) fn padded_boxes(&self) -> Vec<BoundingBox> {
        let points = self.float_vertices();
        self.edges
            .iter()
            .map(|&(u, v)| BoundingBox::around(points[u], points[v]))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct BoundingBox {
    pub min_x: f64,
    pub max_x: f64,
    pub min_y: f64,
    pub max_y: f64,
}

impl BoundingBox {
    pub(crate) fn around(a: FloatPoint, b: FloatPoint) -> Self {
        let pad = |x: f64| 1e-9 * (x.abs() + 1.0);
        let min_x = a.x.min(b.x);
        let max_x = a.x.max(b.x);
        let min_y = a.y.min(b.y);
        let max_y = a.y.max(b.y);
        BoundingBox {
            min_x: min_x - pad(min_x),
            max_x: max_x + pad(max_x),
            min_y: min_y - pad(min_y),
            max_y: max_y + pad(max_y),
        }
    }

    pub fn overlaps(&self, other: &BoundingBox) -> bool {
        self.min_x <= other.max_x
            && other.min_x <= self.max_x
            && self.min_y <= other.max_y
            && other.min_y <= self.max_y
    }
}

/// Symmetric stub lengths, one per edge, stored as fractions of the edge
/// length. A fraction of zero marks an erased edge and is only accepted by
/// [`StubAssignment::with_erasures`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StubAssignment {
    fractions: Vec<BigRational>,
    allows_erased: bool,
}

impl StubAssignment {
    pub fn new(fractions: Vec<BigRational>) -> Result<Self> {
        for (e, f) in fractions.iter().enumerate() {
            check_fraction(e, f, false)?;
        }
        Ok(StubAssignment {
            fractions,
            allows_erased: false,
        })
    }

    /// Assignment for the all-or-nothing variant: every fraction is `0` or
    /// in `(0, 1/2]`.
    pub fn with_erasures(fractions: Vec<BigRational>) -> Result<Self> {
        for (e, f) in fractions.iter().enumerate() {
            check_fraction(e, f, true)?;
        }
        Ok(StubAssignment {
            fractions,
            allows_erased: true,
        })
    }

    /// Every stub is `delta` times its edge length.
    pub fn uniform(edge_count: usize, delta: &BigRational) -> Result<Self> {
        StubAssignment::new(vec![delta.clone(); edge_count])
    }

    pub fn fractions(&self) -> &[BigRational] {
        &self.fractions
    }

    pub fn fraction(&self, e: usize) -> &BigRational {
        &self.fractions[e]
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    pub fn allows_erased(&self) -> bool {
        self.allows_erased
    }

    pub fn is_erased(&self, e: usize) -> bool {
        self.fractions[e].is_zero()
    }

    /// The two stubs of edge `e` as `(vertex, stub)` pairs; empty if erased.
    pub fn stubs(&self, g: &GeometricGraph, e: usize) -> Vec<(usize, Stub)> {
        if self.is_erased(e) {
            return Vec::new();
        }
        let (u, v) = g.edges()[e];
        let (a, b) = g.endpoints(e);
        let t = &self.fractions[e];
        vec![
            (u, Stub::new(a, b, t.clone()).expect("checked fraction")),
            (v, Stub::new(b, a, t.clone()).expect("checked fraction")),
        ]
    }
}

fn check_fraction(e: usize, f: &BigRational, allow_zero: bool) -> Result<()> {
    let ok = if f.is_zero() {
        allow_zero
    } else {
        f.is_positive() && *f <= half()
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidAssignment {
            edge: e,
            message: format!(
                "fraction {} outside {}",
                crate::number::format_rational(f),
                if allow_zero {
                    "{0} ∪ (0, 1/2]"
                } else {
                    "(0, 1/2]"
                }
            ),
        })
    }
}
