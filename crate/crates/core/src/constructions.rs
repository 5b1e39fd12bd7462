//! Homogeneous symmetric layouts for graph families, with their capacity
//! formulas.
//!
//! Every generator returns the drawing together with the uniform ratio it is
//! meant to support; the caller (and the tests) check it with the validator.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{orientation, orientation_certain, FloatPoint, Point};
use crate::graph::{GeometricGraph, StubAssignment};
use crate::number::{best_lower_sqrt, from_f64, half, int, rat, to_f64};
use crate::validate::{check_general_position, validate_ped, validate_ped_approx};

/// Denominator cap when an irrational ratio is replaced by a rational one.
pub const RATIO_DENOMINATOR: u64 = 1_000_000;

/// A drawing with the uniform stub ratio it supports.
#[derive(Clone, Debug)]
pub struct Layout {
    pub graph: GeometricGraph,
    pub delta: BigRational,
}

impl Layout {
    pub fn stubs(&self) -> StubAssignment {
        StubAssignment::uniform(self.graph.edge_count(), &self.delta).expect("ratio in (0, 1/2]")
    }
}

fn check_ratio(delta: &BigRational) -> Result<()> {
    if delta.is_positive() && *delta <= half() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "ratio {delta} outside (0, 1/2]"
        )))
    }
}

/// Largest `m` with `base^m > target`, for `0 < base < 1` and `0 < target < 1`.
pub fn strict_log_floor(base: &BigRational, target: &BigRational) -> u32 {
    assert!(base.is_positive() && *base < BigRational::one());
    assert!(target.is_positive() && *target < BigRational::one());
    // Float estimate, then exact correction in both directions.
    let estimate = (to_f64(target).ln() / to_f64(&(base - BigRational::one())).ln_1p()).floor();
    let mut m = if estimate.is_finite() && estimate >= 0.0 {
        estimate.min(u32::MAX as f64 - 1.0) as u32
    } else {
        0
    };
    let exceeds = |k: u32| num_traits::pow(base.clone(), k as usize) > *target;
    while m > 0 && !exceeds(m) {
        m -= 1;
    }
    while exceeds(m + 1) {
        m += 1;
    }
    m
}

fn inverse_floor(delta: &BigRational) -> u64 {
    (BigRational::one() / delta)
        .floor()
        .to_integer()
        .to_u64()
        .expect("ratio is positive")
}

/// Rows, columns and offsets of the mirrored-grid layout of `K_{n,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnnParams {
    pub delta: BigRational,
    /// Rows per side, `floor(1/delta)`.
    pub rows: u64,
    /// Columns per side, the largest `c` with `(1 - delta)^c > 1/2`.
    pub columns: u32,
    /// Horizontal shift towards the centre line; `(1 - delta)^columns > 1/2 + epsilon`.
    pub epsilon: BigRational,
    /// Vertical offset of the right side, in (0, 1).
    pub sigma: BigRational,
}

impl KnnParams {
    pub fn capacity(&self) -> u64 {
        self.rows * self.columns as u64
    }

    /// Rows at a ratio of exactly `1/rows` need alternating offsets.
    pub fn boundary_case(&self) -> bool {
        &self.delta * BigRational::from_integer(self.rows.into()) == BigRational::one()
    }

    fn row_epsilon(&self, row: u64) -> BigRational {
        if self.boundary_case() && row.is_multiple_of(2) {
            BigRational::zero()
        } else {
            self.epsilon.clone()
        }
    }
}

/// Largest `n` for which the mirrored-grid layout of `K_{n,n}` exists at
/// ratio `delta`, for `0 < delta <= 1/2`.
pub fn knn_capacity(delta: &BigRational) -> Result<u64> {
    check_ratio(delta)?;
    let base = BigRational::one() - delta;
    if base == half() {
        // (1/2)^m > 1/2 has no positive solution
        return Ok(0);
    }
    Ok(inverse_floor(delta) * strict_log_floor(&base, &half()) as u64)
}

pub fn knn_params(n: usize, delta: &BigRational) -> Result<KnnParams> {
    let capacity = knn_capacity(delta)?;
    if n as u64 > capacity {
        return Err(Error::CapacityExceeded {
            requested: n as u64,
            capacity,
        });
    }
    let rows = inverse_floor(delta);
    let base = BigRational::one() - delta;
    let columns = strict_log_floor(&base, &half());
    let slack = num_traits::pow(base, columns as usize) - half();
    Ok(KnnParams {
        delta: delta.clone(),
        rows,
        columns,
        epsilon: slack / int(2),
        sigma: BigRational::new(BigInt::one(), BigInt::from(2 * (n as u64) * (n as u64) + 1)),
    })
}

/// Does any vertex of one side lie on a line through two vertices of the
/// other side?
fn cross_side_collinear(left: &[Point], right: &[Point]) -> bool {
    let check = |pairs: &[Point], singles: &[Point]| {
        let fp: Vec<FloatPoint> = pairs.iter().map(Point::to_f64).collect();
        let fs: Vec<FloatPoint> = singles.iter().map(Point::to_f64).collect();
        (0..pairs.len()).any(|i| {
            (i + 1..pairs.len()).any(|j| {
                (0..singles.len()).any(|c| {
                    orientation_certain(fp[i], fp[j], fs[c]).is_none()
                        && orientation(&pairs[i], &pairs[j], &singles[c]).is_eq()
                })
            })
        })
    };
    check(left, right) || check(right, left)
}

fn knn_points(n: usize, params: &KnnParams) -> (Vec<Point>, Vec<Point>) {
    let base = BigRational::one() - &params.delta;
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for v in 0..n as u64 {
        let column = (v / params.rows) as usize;
        let row = v % params.rows;
        let shift = num_traits::pow(base.clone(), column);
        let eps = params.row_epsilon(row);
        let y = BigRational::from_integer(row.into());
        left.push(Point::new(BigRational::one() - &shift + &eps, y.clone()));
        right.push(Point::new(shift - eps, y + &params.sigma));
    }
    (left, right)
}

/// `K_{n,n}` on two mirrored perturbed grids either side of `x = 1/2`.
/// Vertices `0..n` form the left side, `n..2n` the right side.
pub fn layout_knn(n: usize, delta: &BigRational) -> Result<Layout> {
    let mut params = knn_params(n, delta)?;
    let (left, right) = loop {
        let (left, right) = knn_points(n, &params);
        if !cross_side_collinear(&left, &right) {
            break (left, right);
        }
        params.sigma /= int(2);
    };
    let vertices: Vec<Point> = left.into_iter().chain(right).collect();
    let edges = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, n + j)))
        .collect();
    Ok(Layout {
        graph: GeometricGraph::new(vertices, edges)?,
        delta: delta.clone(),
    })
}

/// Largest `k` with `(1 - delta)^k > delta`, i.e. the largest `k` for which
/// the axis layout of `K_{2k,n}` exists at ratio `delta`.
pub fn kkn_capacity(delta: &BigRational) -> Result<u64> {
    check_ratio(delta)?;
    if *delta == half() {
        return Ok(0);
    }
    Ok(strict_log_floor(&(BigRational::one() - delta), delta) as u64)
}

/// `K_{2k,n}` with `n` vertices at `x_i = (1 - delta)^{-(i-1)}` on the
/// positive x-axis and `2k` vertices at `±y_i` (same progression) on the
/// y-axis. Vertices `0..2k` are the y-axis side (`+y_1, -y_1, +y_2, ..`),
/// the rest the x-axis side.
pub fn layout_k2kn(k: usize, n: usize, delta: &BigRational) -> Result<Layout> {
    let capacity = kkn_capacity(delta)?;
    if k as u64 > capacity {
        return Err(Error::CapacityExceeded {
            requested: k as u64,
            capacity,
        });
    }
    let growth = BigRational::one() / (BigRational::one() - delta);
    let progression = |count: usize| -> Vec<BigRational> {
        std::iter::successors(Some(BigRational::one()), |x| Some(x * &growth))
            .take(count)
            .collect()
    };
    let mut vertices = Vec::with_capacity(2 * k + n);
    for y in progression(k) {
        vertices.push(Point::new(BigRational::zero(), y.clone()));
        vertices.push(Point::new(BigRational::zero(), -y));
    }
    for x in progression(n) {
        vertices.push(Point::new(x, BigRational::zero()));
    }
    let edges = (0..2 * k)
        .flat_map(|a| (0..n).map(move |b| (a, 2 * k + b)))
        .collect();
    Ok(Layout {
        graph: GeometricGraph::new(vertices, edges)?,
        delta: delta.clone(),
    })
}

fn integer_sqrt(k: usize) -> Option<usize> {
    let r = num_integer::Roots::sqrt(&k);
    (r * r == k).then_some(r)
}

/// Grid cell of the `i`-th vertex of a snake over columns of height `h`.
fn snake_cell(i: usize, h: usize) -> (usize, usize) {
    let column = i / h;
    let offset = i % h;
    let row = if column.is_multiple_of(2) {
        offset
    } else {
        h - 1 - offset
    };
    (column, row)
}

/// First drawing in the sequence `place(0), place(1), ..` that is valid at
/// `delta` (and, for exact checking, in general position); `place(0)` is the
/// unperturbed layout and later attempts perturb it by shrinking amounts.
fn first_valid(
    attempts: usize,
    place: impl Fn(usize) -> Vec<Point>,
    edges: &[(usize, usize)],
    delta: &BigRational,
    exact: bool,
) -> Result<GeometricGraph> {
    for attempt in 0..attempts {
        let g = GeometricGraph::new(place(attempt), edges.to_vec())?;
        if exact && !check_general_position(&g).is_empty() {
            continue;
        }
        let s = StubAssignment::uniform(g.edge_count(), delta)?;
        let v = if exact {
            validate_ped(&g, &s)?
        } else {
            validate_ped_approx(&g, &s)?
        };
        if v.is_valid() {
            return Ok(g);
        }
    }
    Err(Error::InvalidGraph(
        "could not perturb the layout into a valid drawing".into(),
    ))
}

/// Snake-order grid layout of a graph whose vertex order has bandwidth at
/// most `k` (`|u - v| <= k` for every edge), for square `k`.
///
/// The supported ratio is the largest rational with denominator at most
/// [`RATIO_DENOMINATOR`] not above `1/(2 sqrt(2k))`.
pub fn layout_bandwidth(n: usize, edges: &[(usize, usize)], k: usize) -> Result<Layout> {
    let height = integer_sqrt(k).filter(|&h| h > 0).ok_or_else(|| {
        Error::InvalidParameter(format!("bandwidth {k} is not a positive square"))
    })?;
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a missing vertex"
            )));
        }
        let span = u.abs_diff(v);
        if span > k {
            return Err(Error::BandwidthViolated {
                u,
                v,
                span,
                bandwidth: k,
            });
        }
    }
    let delta = bandwidth_delta(k);
    // the padded grid has n rounded up to a multiple of the height; extra cells stay empty
    let points: Vec<Point> = (0..n)
        .map(|i| {
            let (c, r) = snake_cell(i, height);
            Point::from_ints(c as i64, r as i64)
        })
        .collect();
    // vertices stacked in one column can make edges overlap collinearly; a
    // parabolic nudge of size eta separates them
    let count = n.max(1) as i64;
    let place = |attempt: usize| -> Vec<Point> {
        if attempt == 0 {
            return points.clone();
        }
        let eta =
            rat(1, 16 * count) / BigRational::from_integer(BigInt::from(2).pow(attempt as u32 - 1));
        points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let s = rat(i as i64 + 1, count);
                Point::new(&p.x + &eta * &s, &p.y + &eta * &s * &s)
            })
            .collect()
    };
    let graph = first_valid(24, place, edges, &delta, true)?;
    Ok(Layout { graph, delta })
}

/// Rational ratio used by [`layout_bandwidth`].
pub fn bandwidth_delta(k: usize) -> BigRational {
    best_lower_sqrt(&rat(1, 8 * k as i64), RATIO_DENOMINATOR)
}

/// Rational ratio used by [`layout_circulant`].
pub fn circulant_delta(k: usize) -> BigRational {
    best_lower_sqrt(&rat(1, 36 * k as i64), RATIO_DENOMINATOR)
}

/// Edges `{i, j}` of the `k`-circulant graph on `n` vertices: cyclic index
/// distance between 1 and `k`.
pub fn circulant_edges(n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for d in 1..=k.min(n / 2) {
            let j = (i + d) % n;
            let (a, b) = (i.min(j), i.max(j));
            if !edges.contains(&(a, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// The `k`-circulant graph on rays through the corners of a regular polygon
/// of side 1, `sqrt(k)` vertices per ray at unit spacing, in snake order.
/// Coordinates are rounded floats, so validity is checked with tolerance.
pub fn layout_circulant(n: usize, k: usize) -> Result<Layout> {
    let height = integer_sqrt(k)
        .filter(|&h| h > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("k = {k} is not a positive square")))?;
    if !n.is_multiple_of(height) {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is not a multiple of sqrt(k) = {height}"
        )));
    }
    let rays = n / height;
    if !rays.is_multiple_of(2) || rays < 3 {
        return Err(Error::InvalidParameter(format!(
            "n / sqrt(k) = {rays} must be even and at least 3"
        )));
    }
    let radius = 1.0 / (2.0 * (PI / rays as f64).sin());
    // more than two vertices per ray are collinear; attempt j > 0 shifts the
    // vertex at step t sideways by t^2 / 2^(j+3)
    let place = |attempt: usize| -> Vec<Point> {
        let eta = if attempt == 0 {
            0.0
        } else {
            0.5f64.powi(attempt as i32 + 3)
        };
        (0..n)
            .map(|i| {
                let (ray, step) = snake_cell(i, height);
                let angle = 2.0 * PI * ray as f64 / rays as f64;
                let r = radius + step as f64;
                let side = eta * (step * step) as f64;
                let (c, s) = (angle.cos(), angle.sin());
                Point::new(from_f64(r * c - side * s), from_f64(r * s + side * c))
            })
            .collect()
    };
    let delta = circulant_delta(k);
    let graph = first_valid(12, place, &circulant_edges(n, k), &delta, false)?;
    Ok(Layout { graph, delta })
}

/// Uniform ratio achievable for every graph on `n` vertices.
pub fn kn_delta_bound(n: usize) -> f64 {
    1.0 / (4.0 * n as f64 / PI).sqrt()
}

/// Largest `n` with `n <= pi / (4 delta^2)`.
pub fn kn_capacity(delta: f64) -> u64 {
    (PI / (4.0 * delta * delta)).floor() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_floor_excludes_exact_powers() {
        assert_eq!(strict_log_floor(&rat(3, 4), &half()), 2);
        assert_eq!(strict_log_floor(&half(), &rat(1, 4)), 1);
        assert_eq!(strict_log_floor(&half(), &rat(1, 5)), 2);
    }

    #[test]
    fn capacities() {
        assert_eq!(knn_capacity(&rat(1, 4)).unwrap(), 8);
        assert_eq!(knn_capacity(&rat(499, 1000)).unwrap(), 2);
        assert_eq!(knn_capacity(&half()).unwrap(), 0);
        assert_eq!(kkn_capacity(&rat(1, 4)).unwrap(), 4);
        assert!(knn_capacity(&int(0)).is_err());
        assert_eq!(kn_capacity(0.25), 12);
        assert!((kn_delta_bound(100) - 0.0886).abs() < 1e-4);
    }

    #[test]
    fn knn_params_for_quarter() {
        let p = knn_params(8, &rat(1, 4)).unwrap();
        assert_eq!((p.rows, p.columns), (4, 2));
        assert_eq!(p.epsilon, rat(1, 32));
        assert!(p.boundary_case());
        assert_eq!(p.sigma, rat(1, 129));
    }

    #[test]
    fn snake_order() {
        let cells: Vec<_> = (0..6).map(|i| snake_cell(i, 2)).collect();
        assert_eq!(cells, vec![(0, 0), (0, 1), (1, 1), (1, 0), (2, 0), (2, 1)]);
    }

    #[test]
    fn circulant_edge_sets() {
        assert_eq!(circulant_edges(5, 1).len(), 5);
        assert_eq!(circulant_edges(6, 3).len(), 15);
        assert_eq!(circulant_delta(4), rat(1, 12));
    }
}
