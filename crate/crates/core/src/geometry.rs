//! Exact planar primitives over rational coordinates, plus a float fallback
//! used for drawings whose coordinates come from trigonometry.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{half, to_f64, FLOAT_TOLERANCE};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(crate::number::int(x), crate::number::int(y))
    }

    /// `self + t * (other - self)`
    pub fn lerp(&self, other: &Point, t: &BigRational) -> Point {
        Point::new(
            &self.x + t * (&other.x - &self.x),
            &self.y + t * (&other.y - &self.y),
        )
    }

    pub fn squared_distance(&self, other: &Point) -> BigRational {
        let dx = &other.x - &self.x;
        let dy = &other.y - &self.y;
        &dx * &dx + &dy * &dy
    }

    pub fn to_f64(&self) -> FloatPoint {
        FloatPoint {
            x: to_f64(&self.x),
            y: to_f64(&self.y),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            crate::number::format_rational(&self.x),
            crate::number::format_rational(&self.y)
        )
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: `Greater` for a left turn.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    let lhs = (&b.x - &a.x) * (&c.y - &a.y);
    let rhs = (&b.y - &a.y) * (&c.x - &a.x);
    lhs.cmp(&rhs)
}

/// A closed straight-line segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidGraph(format!("degenerate segment at {a}")));
        }
        Ok(Segment { a, b })
    }

    pub fn squared_length(&self) -> BigRational {
        self.a.squared_distance(&self.b)
    }

    /// Parameter of the projection of `p` onto the supporting line, with
    /// `a` at 0 and `b` at 1.
    pub fn parameter_of(&self, p: &Point) -> BigRational {
        let dx = &self.b.x - &self.a.x;
        let dy = &self.b.y - &self.a.y;
        ((&p.x - &self.a.x) * &dx + (&p.y - &self.a.y) * &dy) / self.squared_length()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    /// The segments share exactly this point.
    Point(Point),
    None,
    /// Collinear with an overlap of positive length.
    DegenerateOverlap,
}

/// Intersection of two closed segments.
pub fn intersect_segments(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);

    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        // collinear: compare parameter intervals along s1
        let t1 = s1.parameter_of(&s2.a);
        let t2 = s1.parameter_of(&s2.b);
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let start = lo.max(BigRational::zero());
        let end = hi.min(BigRational::from_integer(1.into()));
        return match start.cmp(&end) {
            Ordering::Less => SegmentIntersection::DegenerateOverlap,
            Ordering::Equal => SegmentIntersection::Point(s1.a.lerp(&s1.b, &start)),
            Ordering::Greater => SegmentIntersection::None,
        };
    }

    if o1 == o2 && o1 != Ordering::Equal {
        return SegmentIntersection::None;
    }
    if o3 == o4 && o3 != Ordering::Equal {
        return SegmentIntersection::None;
    }

    // the supporting lines meet inside both segments
    let rx = &s1.b.x - &s1.a.x;
    let ry = &s1.b.y - &s1.a.y;
    let sx = &s2.b.x - &s2.a.x;
    let sy = &s2.b.y - &s2.a.y;
    let denom = &rx * &sy - &ry * &sx;
    let qx = &s2.a.x - &s1.a.x;
    let qy = &s2.a.y - &s1.a.y;
    let t = (&qx * &sy - &qy * &sx) / denom;
    SegmentIntersection::Point(s1.a.lerp(&s1.b, &t))
}

/// True when the relative interiors of the two segments cross in one point.
pub fn interiors_cross(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);
    opposite(o1, o2) && opposite(o3, o4)
}

fn opposite(a: Ordering, b: Ordering) -> bool {
    matches!(
        (a, b),
        (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less)
    )
}

/// Stub of an edge: the relatively open segment from `origin` towards the
/// opposite endpoint, covering `fraction` of the edge. Neither `origin` nor
/// `tip` belongs to the stub.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stub {
    pub origin: Point,
    pub tip: Point,
    pub fraction: BigRational,
}

impl Stub {
    pub fn new(origin: &Point, toward: &Point, fraction: BigRational) -> Result<Self> {
        if origin == toward {
            return Err(Error::InvalidGraph(format!("degenerate edge at {origin}")));
        }
        if !fraction.is_positive() || fraction > half() {
            return Err(Error::InvalidAssignment {
                edge: usize::MAX,
                message: format!(
                    "stub fraction {} outside (0, 1/2]",
                    crate::number::format_rational(&fraction)
                ),
            });
        }
        Ok(Stub {
            origin: origin.clone(),
            tip: origin.lerp(toward, &fraction),
            fraction,
        })
    }

    /// Squared length as a fraction of the edge's squared length is
    /// `fraction^2`; this is the absolute squared length.
    pub fn squared_length(&self) -> BigRational {
        self.origin.squared_distance(&self.tip)
    }

    pub fn float_ends(&self) -> [FloatPoint; 2] {
        [self.origin.to_f64(), self.tip.to_f64()]
    }
}

/// Do the two open stubs share a point?
///
/// Stubs that only touch (a tip on the other stub, a shared origin, or tip to
/// tip) do not conflict.
pub fn stubs_conflict(p: &Stub, q: &Stub) -> bool {
    open_segments_meet(&p.origin, &p.tip, &q.origin, &q.tip)
}

/// Witness point shared by two conflicting stubs.
pub fn conflict_witness(p: &Stub, q: &Stub) -> Option<Point> {
    if !stubs_conflict(p, q) {
        return None;
    }
    let s1 = Segment::new(p.origin.clone(), p.tip.clone()).ok()?;
    let s2 = Segment::new(q.origin.clone(), q.tip.clone()).ok()?;
    match intersect_segments(&s1, &s2) {
        SegmentIntersection::Point(pt) => Some(pt),
        SegmentIntersection::DegenerateOverlap => {
            let t1 = s1.parameter_of(&s2.a);
            let t2 = s1.parameter_of(&s2.b);
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let start = lo.max(BigRational::zero());
            let end = hi.min(BigRational::from_integer(1.into()));
            let mid = (start + end) * half();
            Some(s1.a.lerp(&s1.b, &mid))
        }
        SegmentIntersection::None => None,
    }
}

fn open_segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        let s = Segment {
            a: a.clone(),
            b: b.clone(),
        };
        let t1 = s.parameter_of(c);
        let t2 = s.parameter_of(d);
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let start = lo.max(BigRational::zero());
        let end = hi.min(BigRational::from_integer(1.into()));
        return start < end;
    }
    if !opposite(o1, o2) {
        return false;
    }
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    opposite(o3, o4)
}

/// Float point used by the tolerance-based predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatPoint {
    pub x: f64,
    pub y: f64,
}

impl FloatPoint {
    pub fn lerp(self, other: FloatPoint, t: f64) -> FloatPoint {
        FloatPoint {
            x: self.x + t * (other.x - self.x),
            y: self.y + t * (other.y - self.y),
        }
    }

    pub fn distance(self, other: FloatPoint) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }
}

/// Sign of the float orientation when it is certain to match the exact one,
/// assuming each coordinate is within a few ulps of its exact value.
pub fn orientation_certain(a: FloatPoint, b: FloatPoint, c: FloatPoint) -> Option<Ordering> {
    let det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let m = [a.x, a.y, b.x, b.y, c.x, c.y]
        .iter()
        .fold(0f64, |acc, v| acc.max(v.abs()));
    let bound = 256.0 * f64::EPSILON * m * m;
    if !det.is_finite() || !bound.is_finite() {
        None
    } else if det > bound {
        Some(Ordering::Greater)
    } else if det < -bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Float pre-check for "the relative interiors of `ab` and `cd` share a
/// point"; `None` when rounding could change the answer.
pub fn open_segments_meet_filtered(
    a: FloatPoint,
    b: FloatPoint,
    c: FloatPoint,
    d: FloatPoint,
) -> Option<bool> {
    let o1 = orientation_certain(a, b, c);
    let o2 = orientation_certain(a, b, d);
    if o1.is_some() && o1 == o2 {
        return Some(false);
    }
    let o3 = orientation_certain(c, d, a);
    let o4 = orientation_certain(c, d, b);
    if o3.is_some() && o3 == o4 {
        return Some(false);
    }
    match (o1, o2, o3, o4) {
        (Some(_), Some(_), Some(_), Some(_)) => Some(true),
        _ => None,
    }
}

/// True when the float orientations prove the closed segments `ab` and `cd`
/// disjoint: one segment lies strictly on one side of the other's line.
pub fn segments_certainly_apart(
    a: FloatPoint,
    b: FloatPoint,
    c: FloatPoint,
    d: FloatPoint,
) -> bool {
    let separated = |p: FloatPoint, q: FloatPoint, r: FloatPoint, s: FloatPoint| {
        let o1 = orientation_certain(p, q, r);
        o1.is_some() && o1 == orientation_certain(p, q, s)
    };
    separated(a, b, c, d) || separated(c, d, a, b)
}

/// [`stubs_conflict`] with a float pre-check on the given endpoint
/// approximations (origin, tip).
pub fn stubs_conflict_filtered(
    p: &Stub,
    pf: [FloatPoint; 2],
    q: &Stub,
    qf: [FloatPoint; 2],
) -> bool {
    open_segments_meet_filtered(pf[0], pf[1], qf[0], qf[1]).unwrap_or_else(|| stubs_conflict(p, q))
}

/// Orientation with values within the tolerance (scaled by the segment
/// lengths involved) treated as collinear.
pub fn orientation_approx(a: FloatPoint, b: FloatPoint, c: FloatPoint) -> Ordering {
    let cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let scale = a.distance(b).max(a.distance(c)).max(1.0);
    if cross.abs() <= FLOAT_TOLERANCE * scale {
        Ordering::Equal
    } else if cross > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Float counterpart of [`stubs_conflict`]: contacts within
/// [`FLOAT_TOLERANCE`] count as touching, not as a conflict.
pub fn stubs_conflict_approx(
    p_origin: FloatPoint,
    p_tip: FloatPoint,
    q_origin: FloatPoint,
    q_tip: FloatPoint,
) -> bool {
    let o1 = orientation_approx(p_origin, p_tip, q_origin);
    let o2 = orientation_approx(p_origin, p_tip, q_tip);
    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        let dx = p_tip.x - p_origin.x;
        let dy = p_tip.y - p_origin.y;
        let len2 = dx * dx + dy * dy;
        let param = |p: FloatPoint| ((p.x - p_origin.x) * dx + (p.y - p_origin.y) * dy) / len2;
        let (t1, t2) = (param(q_origin), param(q_tip));
        let start = t1.min(t2).max(0.0);
        let end = t1.max(t2).min(1.0);
        return (end - start) * len2.sqrt() > FLOAT_TOLERANCE;
    }
    if !opposite(o1, o2) {
        return false;
    }
    let o3 = orientation_approx(q_origin, q_tip, p_origin);
    let o4 = orientation_approx(q_origin, q_tip, p_tip);
    opposite(o3, o4)
}
