//! Edge crossings and the conflict graph over them.
//!
//! Every edge of a 2-planar drawing is crossed at most twice, so the graph
//! whose nodes are edges and whose links are crossings decomposes into paths
//! and cycles. [`build_conflict_components`] orders each component and
//! records, per edge, the fractions at which its neighbours cross it.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{
    interiors_cross, intersect_segments, segments_certainly_apart, Point, SegmentIntersection,
};
use crate::graph::GeometricGraph;
use crate::number::half;

/// A proper crossing of the interiors of two edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Lower edge index.
    pub first: usize,
    /// Higher edge index.
    pub second: usize,
    pub point: Point,
    /// Position of the point along `first`, from its first vertex, in (0, 1).
    pub first_param: BigRational,
    pub second_param: BigRational,
}

impl Crossing {
    pub fn other(&self, edge: usize) -> usize {
        if edge == self.first {
            self.second
        } else {
            debug_assert_eq!(edge, self.second);
            self.first
        }
    }

    /// Distance from the crossing to the nearer endpoint of `edge`, as a
    /// fraction of the edge length, in (0, 1/2].
    pub fn near_fraction(&self, edge: usize) -> BigRational {
        let t = self.param(edge);
        let rest = BigRational::one() - t;
        if *t <= rest {
            t.clone()
        } else {
            rest
        }
    }

    pub fn param(&self, edge: usize) -> &BigRational {
        if edge == self.first {
            &self.first_param
        } else {
            debug_assert_eq!(edge, self.second);
            &self.second_param
        }
    }
}

/// How candidate edge pairs are generated before the exact test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CrossingMethod {
    /// Every pair of edges (bounding-box prefiltered).
    #[default]
    AllPairs,
    /// Sweep a vertical line over the x-extents of the edges and test only
    /// pairs whose extents are simultaneously active.
    Sweep,
}

/// All proper crossings, sorted by `(first, second)`.
pub fn enumerate_crossings(g: &GeometricGraph, method: CrossingMethod) -> Result<Vec<Crossing>> {
    let pairs = match method {
        CrossingMethod::AllPairs => all_candidate_pairs(g),
        CrossingMethod::Sweep => sweep_candidate_pairs(g),
    };
    let points = g.float_vertices();
    let mut out = Vec::new();
    for (e, f) in pairs {
        let ((a, b), (c, d)) = (g.edges()[e], g.edges()[f]);
        if segments_certainly_apart(points[a], points[b], points[c], points[d]) {
            continue;
        }
        if let Some(c) = crossing_of(g, e, f)? {
            out.push(c);
        }
    }
    out.sort_by_key(|a| (a.first, a.second));
    Ok(out)
}

fn all_candidate_pairs(g: &GeometricGraph) -> Vec<(usize, usize)> {
    let boxes = g.padded_boxes();
    let mut pairs = Vec::new();
    for e in 0..boxes.len() {
        for f in e + 1..boxes.len() {
            if boxes[e].overlaps(&boxes[f]) {
                pairs.push((e, f));
            }
        }
    }
    pairs
}

fn sweep_candidate_pairs(g: &GeometricGraph) -> Vec<(usize, usize)> {
    let boxes = g.padded_boxes();
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| {
        boxes[a]
            .min_x
            .partial_cmp(&boxes[b].min_x)
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut active: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for &e in &order {
        let x = boxes[e].min_x;
        active.retain(|&f| boxes[f].max_x >= x);
        for &f in &active {
            if boxes[e].overlaps(&boxes[f]) {
                pairs.push((e.min(f), e.max(f)));
            }
        }
        active.push(e);
    }
    pairs
}

/// Exact crossing test for one pair; collinear overlaps are input errors.
fn crossing_of(g: &GeometricGraph, e: usize, f: usize) -> Result<Option<Crossing>> {
    let (e, f) = (e.min(f), e.max(f));
    let se = g.segment(e);
    let sf = g.segment(f);
    match intersect_segments(&se, &sf) {
        SegmentIntersection::DegenerateOverlap => Err(Error::CollinearOverlap {
            first: e,
            second: f,
        }),
        SegmentIntersection::None => Ok(None),
        SegmentIntersection::Point(point) => {
            if g.shares_vertex(e, f) || !interiors_cross(&se, &sf) {
                return Ok(None);
            }
            let first_param = se.parameter_of(&point);
            let second_param = sf.parameter_of(&point);
            Ok(Some(Crossing {
                first: e,
                second: f,
                point,
                first_param,
                second_param,
            }))
        }
    }
}

/// Crossing indices incident to each edge.
pub fn crossings_per_edge(edge_count: usize, crossings: &[Crossing]) -> Vec<Vec<usize>> {
    let mut incident = vec![Vec::new(); edge_count];
    for (i, c) in crossings.iter().enumerate() {
        incident[c.first].push(i);
        incident[c.second].push(i);
    }
    incident
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// One edge of an ordered conflict component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentEdge {
    pub edge: usize,
    pub squared_length: BigRational,
    /// Nearer-endpoint fraction of the crossing with the predecessor, or 1/2.
    pub backward: BigRational,
    /// Nearer-endpoint fraction of the crossing with the successor, or 1/2.
    pub forward: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictComponent {
    pub kind: ComponentKind,
    pub edges: Vec<ComponentEdge>,
}

impl ConflictComponent {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Orders the conflict graph into paths and cycles.
///
/// Components are emitted in order of their smallest edge index. A path
/// starts at its lower-indexed end; a cycle starts at its smallest edge and
/// proceeds towards the lower-indexed of that edge's two neighbours.
pub fn build_conflict_components(
    g: &GeometricGraph,
    crossings: &[Crossing],
) -> Result<Vec<ConflictComponent>> {
    let m = g.edge_count();
    let incident = crossings_per_edge(m, crossings);
    if let Some(edge) = (0..m).find(|&e| incident[e].len() > 2) {
        return Err(Error::NotTwoPlanar {
            edge,
            crossings: incident[edge].len(),
        });
    }
    let neighbours = |e: usize| -> Vec<usize> {
        let mut n: Vec<usize> = incident[e].iter().map(|&c| crossings[c].other(e)).collect();
        n.sort_unstable();
        n
    };
    let crossing_between = |e: usize, f: usize| -> &Crossing {
        incident[e]
            .iter()
            .map(|&c| &crossings[c])
            .find(|c| c.other(e) == f)
            .expect("adjacent edges share a crossing")
    };

    let mut visited = vec![false; m];
    let mut components = Vec::new();
    for start in 0..m {
        if visited[start] {
            continue;
        }
        // collect the component to decide path vs cycle
        let mut members = vec![start];
        visited[start] = true;
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            for f in neighbours(e) {
                if !visited[f] {
                    visited[f] = true;
                    members.push(f);
                    stack.push(f);
                }
            }
        }
        let is_cycle = members.len() > 2 && members.iter().all(|&e| incident[e].len() == 2);
        let root = if is_cycle {
            start
        } else {
            *members
                .iter()
                .filter(|&&e| incident[e].len() <= 1)
                .min()
                .expect("a path has an end")
        };

        let mut order = vec![root];
        let mut prev = usize::MAX;
        let mut current = root;
        loop {
            let next = neighbours(current)
                .into_iter()
                .find(|&f| f != prev && f != root);
            match next {
                Some(f) if !order.contains(&f) => {
                    order.push(f);
                    prev = current;
                    current = f;
                }
                _ => break,
            }
        }
        debug_assert_eq!(order.len(), members.len());

        let n = order.len();
        let edges = (0..n)
            .map(|j| {
                let e = order[j];
                let pred = if j > 0 {
                    Some(order[j - 1])
                } else if is_cycle {
                    Some(order[n - 1])
                } else {
                    None
                };
                let succ = if j + 1 < n {
                    Some(order[j + 1])
                } else if is_cycle {
                    Some(order[0])
                } else {
                    None
                };
                let fraction = |other: Option<usize>| match other {
                    Some(f) => crossing_between(e, f).near_fraction(e),
                    None => half(),
                };
                ComponentEdge {
                    edge: e,
                    squared_length: g.squared_length(e),
                    backward: fraction(pred),
                    forward: fraction(succ),
                }
            })
            .collect();
        components.push(ConflictComponent {
            kind: if is_cycle {
                ComponentKind::Cycle
            } else {
                ComponentKind::Path
            },
            edges,
        });
    }
    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    type IntSegment = ((i64, i64), (i64, i64));

    fn graph(segments: &[IntSegment]) -> GeometricGraph {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for &((ax, ay), (bx, by)) in segments {
            let mut index = |p: Point| match vertices.iter().position(|q| *q == p) {
                Some(i) => i,
                None => {
                    vertices.push(p);
                    vertices.len() - 1
                }
            };
            let u = index(Point::from_ints(ax, ay));
            let v = index(Point::from_ints(bx, by));
            edges.push((u, v));
        }
        GeometricGraph::new(vertices, edges).unwrap()
    }

    #[test]
    fn shared_vertex_is_not_a_crossing() {
        let g = graph(&[((0, 0), (4, 0)), ((0, 0), (0, 4))]);
        assert!(enumerate_crossings(&g, CrossingMethod::AllPairs)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn canonical_crossing() {
        let g = graph(&[((0, 0), (4, 0)), ((1, -1), (1, 3))]);
        let cs = enumerate_crossings(&g, CrossingMethod::AllPairs).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].point, Point::from_ints(1, 0));
        assert_eq!(cs[0].near_fraction(0), rat(1, 4));
        assert_eq!(cs[0].near_fraction(1), rat(1, 4));
    }

    #[test]
    fn collinear_overlap_is_an_error() {
        let g = graph(&[((0, 0), (2, 0)), ((1, 0), (3, 0))]);
        assert_eq!(
            enumerate_crossings(&g, CrossingMethod::AllPairs),
            Err(Error::CollinearOverlap {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn two_crossing_edges_form_a_path() {
        let g = graph(&[((0, 0), (4, 0)), ((1, -1), (1, 3))]);
        let cs = enumerate_crossings(&g, CrossingMethod::AllPairs).unwrap();
        let comps = build_conflict_components(&g, &cs).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Path);
        assert_eq!(comps[0].len(), 2);
        assert_eq!(comps[0].edges[0].backward, half());
        assert_eq!(comps[0].edges[0].forward, rat(1, 4));
        assert_eq!(comps[0].edges[1].backward, rat(1, 4));
        assert_eq!(comps[0].edges[1].forward, half());
    }

    #[test]
    fn crossing_triangle_forms_a_cycle() {
        let g = graph(&[((0, 0), (4, 1)), ((4, 0), (0, 1)), ((2, -1), (2, 2))]);
        let cs = enumerate_crossings(&g, CrossingMethod::AllPairs).unwrap();
        // the three segments pass through (2, 1/2): concurrent but pairwise distinct records
        assert_eq!(cs.len(), 3);
        let comps = build_conflict_components(&g, &cs).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Cycle);
        let order: Vec<usize> = comps[0].edges.iter().map(|e| e.edge).collect();
        assert_eq!(order, vec![0, 1, 2]);
    }

    #[test]
    fn three_crossings_is_not_two_planar() {
        let g = graph(&[
            ((0, 0), (10, 0)),
            ((1, -1), (1, 1)),
            ((5, -1), (5, 1)),
            ((8, -1), (8, 1)),
        ]);
        let cs = enumerate_crossings(&g, CrossingMethod::AllPairs).unwrap();
        assert_eq!(
            build_conflict_components(&g, &cs),
            Err(Error::NotTwoPlanar {
                edge: 0,
                crossings: 3
            })
        );
    }

    #[test]
    fn uncrossed_edges_are_singleton_paths() {
        let g = graph(&[((0, 0), (1, 0)), ((5, 5), (6, 6))]);
        let comps = build_conflict_components(&g, &[]).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!(c.kind, ComponentKind::Path);
            assert_eq!(c.edges[0].backward, half());
            assert_eq!(c.edges[0].forward, half());
        }
    }

    #[test]
    fn path_is_rooted_at_lower_end_and_cycle_goes_to_lower_neighbour() {
        // chain 2 - 0 - 1 (edge 0 crosses both others)
        let g = graph(&[((0, 0), (10, 0)), ((7, -1), (7, 1)), ((2, -1), (2, 1))]);
        let cs = enumerate_crossings(&g, CrossingMethod::AllPairs).unwrap();
        let comps = build_conflict_components(&g, &cs).unwrap();
        let order: Vec<usize> = comps[0].edges.iter().map(|e| e.edge).collect();
        assert_eq!(order, vec![1, 0, 2]);
        assert_eq!(comps[0].edges[1].backward, rat(3, 10));
        assert_eq!(comps[0].edges[1].forward, rat(1, 5));
    }
}
