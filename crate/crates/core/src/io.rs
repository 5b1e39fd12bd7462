//! Line-oriented text formats for drawings (`ped-graph 1`) and stub
//! assignments (`ped-stubs 1`). Lines starting with `#` and blank lines are
//! ignored everywhere.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{GeometricGraph, StubAssignment};
use crate::number::{format_rational, parse_rational};

pub const GRAPH_HEADER: &str = "ped-graph 1";
pub const STUBS_HEADER: &str = "ped-stubs 1";

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn fields<const N: usize>(line: usize, text: &str) -> Result<[&str; N]> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    parts
        .try_into()
        .map_err(|_| parse_err(line, format!("expected {N} fields, got `{text}`")))
}

fn parse_index(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("invalid index `{s}`")))
}

fn with_line(line: usize, r: Result<BigRational>) -> Result<BigRational> {
    r.map_err(|e| match e {
        Error::Parse { message, .. } => parse_err(line, message),
        other => other,
    })
}

pub fn parse_graph(text: &str) -> Result<GeometricGraph> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, GRAPH_HEADER)) => {}
        Some((n, other)) => {
            return Err(parse_err(
                n,
                format!("expected `{GRAPH_HEADER}`, got `{other}`"),
            ))
        }
        None => return Err(parse_err(0, "empty graph file")),
    }
    let (n, counts) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing counts line"))?;
    let [nv, ne] = fields::<2>(n, counts)?;
    let nv = parse_index(n, nv)?;
    let ne = parse_index(n, ne)?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (n, l) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {nv} vertex lines")))?;
        let [x, y] = fields::<2>(n, l)?;
        vertices.push(Point::new(
            with_line(n, parse_rational(x))?,
            with_line(n, parse_rational(y))?,
        ));
    }
    let mut edges = Vec::with_capacity(ne);
    for _ in 0..ne {
        let (n, l) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("expected {ne} edge lines")))?;
        let [u, v] = fields::<2>(n, l)?;
        edges.push((parse_index(n, u)?, parse_index(n, v)?));
    }
    if let Some((n, l)) = lines.next() {
        return Err(parse_err(n, format!("unexpected trailing content `{l}`")));
    }
    GeometricGraph::new(vertices, edges)
}

pub fn write_graph(g: &GeometricGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{GRAPH_HEADER}").unwrap();
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for p in g.vertices() {
        writeln!(out, "{} {}", format_rational(&p.x), format_rational(&p.y)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses a stub file for a drawing with `edge_count` edges. Every edge must
/// appear exactly once; a fraction of `0` (erased edge) switches the result
/// to an assignment with erasures.
pub fn parse_stubs(text: &str, edge_count: usize) -> Result<StubAssignment> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, STUBS_HEADER)) => {}
        Some((n, other)) => {
            return Err(parse_err(
                n,
                format!("expected `{STUBS_HEADER}`, got `{other}`"),
            ))
        }
        None => return Err(parse_err(0, "empty stub file")),
    }
    let mut fractions: Vec<Option<BigRational>> = vec![None; edge_count];
    for (n, l) in lines {
        let [e, f] = fields::<2>(n, l)?;
        let e = parse_index(n, e)?;
        if e >= edge_count {
            return Err(parse_err(n, format!("edge {e} out of range")));
        }
        if fractions[e].is_some() {
            return Err(parse_err(n, format!("edge {e} listed twice")));
        }
        fractions[e] = Some(with_line(n, parse_rational(f))?);
    }
    let fractions: Vec<BigRational> = fractions
        .into_iter()
        .enumerate()
        .map(|(e, f)| f.ok_or_else(|| parse_err(0, format!("edge {e} missing"))))
        .collect::<Result<_>>()?;
    if fractions.iter().any(Zero::is_zero) {
        StubAssignment::with_erasures(fractions)
    } else {
        StubAssignment::new(fractions)
    }
}

pub fn write_stubs(s: &StubAssignment) -> String {
    let mut out = String::new();
    writeln!(out, "{STUBS_HEADER}").unwrap();
    for (e, f) in s.fractions().iter().enumerate() {
        writeln!(out, "{e} {}", format_rational(f)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{half, rat};
    use proptest::prelude::*;

    #[test]
    fn parses_decimal_and_rational_coordinates() {
        let text = "# two crossing edges\nped-graph 1\n4 2\n0 0\n4.0 0\n1 -1\n1 3/1\n\n0 1\n2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(g.vertices()[1], Point::from_ints(4, 0));
        assert_eq!(
            write_graph(&g),
            "ped-graph 1\n4 2\n0 0\n4 0\n1 -1\n1 3\n0 1\n2 3\n"
        );
    }

    #[test]
    fn graph_parse_errors_carry_line_numbers() {
        let err = parse_graph("ped-graph 1\n2 1\n0 0\nx 1\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        assert!(parse_graph("ped-graph 2\n0 0\n").is_err());
        assert!(parse_graph("ped-graph 1\n2 1\n0 0\n1 1\n").is_err());
        assert!(parse_graph("ped-graph 1\n2 1\n0 0\n1 1\n0 1\n0 1\n").is_err());
    }

    #[test]
    fn stub_files() {
        let s = parse_stubs("ped-stubs 1\n1 1/4\n0 1/2\n", 2).unwrap();
        assert_eq!(s.fractions(), &[half(), rat(1, 4)]);
        assert!(!s.allows_erased());
        let s = parse_stubs("ped-stubs 1\n0 0\n1 1/2\n", 2).unwrap();
        assert!(s.allows_erased());
        assert!(parse_stubs("ped-stubs 1\n0 1/2\n", 2).is_err());
        assert!(parse_stubs("ped-stubs 1\n0 3/4\n", 1).is_err());
        assert!(parse_stubs("ped-stubs 1\n0 1/2\n0 1/2\n", 1).is_err());
        assert_eq!(
            write_stubs(&StubAssignment::uniform(1, &half()).unwrap()),
            "ped-stubs 1\n0 1/2\n"
        );
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn graph_round_trip(points in proptest::collection::btree_set((small_rational(), small_rational()), 2..8)) {
            let vertices: Vec<Point> = points.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            let edges: Vec<(usize, usize)> = (1..vertices.len()).map(|i| (i - 1, i)).collect();
            let g = GeometricGraph::new(vertices, edges).unwrap();
            prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }

        #[test]
        fn stubs_round_trip(fracs in proptest::collection::vec((1i64..=50, 1i64..=100), 0..10)) {
            let fractions: Vec<BigRational> = fracs
                .into_iter()
                .map(|(p, q)| rat(p, q).min(half()))
                .collect();
            let s = StubAssignment::new(fractions).unwrap();
            prop_assert_eq!(parse_stubs(&write_stubs(&s), s.len()).unwrap(), s);
        }
    }
}
