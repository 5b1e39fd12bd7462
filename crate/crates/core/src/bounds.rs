//! Arithmetic behind the upper bound on the size of complete graphs that
//! admit a symmetric homogeneous partial edge drawing with ratio 1/4.
//!
//! The unit square spanned by the three hull points `l`, `r`, `t` is cut into
//! a middle strip, a bottom strip, two upper rectangles and three corner
//! squares. Every cell has a point capacity; the functions here recompute the
//! cell boundaries as exact rationals and derive the capacities from them.
//! Transcendental constants are checked in `f64` with an explicit margin.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::number::{format_rational, half, int, rat};

/// Share of the stub budget that every point may consume inside one cell.
fn budget() -> BigRational {
    rat(3, 4)
}

/// One vertical strip `[lower, upper)` of the middle part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripSpec {
    /// 1-based, counted from the outside in.
    pub index: usize,
    pub lower: BigRational,
    pub upper: BigRational,
    /// Budget consumed by every point beyond the first.
    pub consumption: BigRational,
    pub capacity: u64,
}

/// `1 + max { m : m * consumption < budget }`.
///
/// The inequality is strict: a point set that consumes exactly the budget
/// would put a point on the strip boundary, which belongs to the neighbour.
pub fn strip_capacity(consumption: &BigRational) -> u64 {
    assert!(consumption.is_positive(), "consumption must be positive");
    let quotient = budget() / consumption;
    let floor = quotient.floor();
    let extra = if floor == quotient {
        floor - BigRational::one()
    } else {
        floor
    };
    1 + extra.to_integer().to_u64().expect("capacity fits in u64")
}

/// The eight middle strips, from `b_1 = 3/4` down to `a_8 = 1/4`.
///
/// Each lower boundary is the smallest value that keeps both the shadow
/// constraint `a >= 6/7 * b` and the stub-reach constraint
/// `a >= (4b - 1) / 3`; the last strip is closed off at 1/4.
pub fn middle_strip_partition() -> Vec<StripSpec> {
    let floor = rat(1, 4);
    let mut strips = Vec::new();
    let mut upper = budget();
    loop {
        let shadow = rat(6, 7) * &upper;
        let reach = (int(4) * &upper - int(1)) / int(3);
        let candidate = shadow.max(reach);
        let lower = if candidate > floor {
            candidate
        } else {
            floor.clone()
        };
        let tip = budget() * &upper;
        let consumption = (&lower - &tip) / &lower;
        let capacity = strip_capacity(&consumption);
        let done = lower == floor;
        strips.push(StripSpec {
            index: strips.len() + 1,
            lower: lower.clone(),
            upper,
            consumption,
            capacity,
        });
        if done {
            return strips;
        }
        upper = lower;
    }
}

/// Cells of the bottom strip, symmetric about `x = 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottomStrips {
    /// Six boundaries delimiting five cells.
    pub boundaries: Vec<BigRational>,
    /// One lateral and one medial point per cell.
    pub capacities: Vec<u64>,
}

impl BottomStrips {
    pub fn total(&self) -> u64 {
        self.capacities.iter().sum()
    }
}

pub fn bottom_strip_partition() -> BottomStrips {
    let left = [rat(1, 4), rat(1, 3), rat(4, 9)];
    let mut boundaries: Vec<BigRational> = left.to_vec();
    boundaries.extend(left.iter().rev().map(|b| int(1) - b));
    let capacities = vec![2; boundaries.len() - 1];
    BottomStrips {
        boundaries,
        capacities,
    }
}

/// `slope * t + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineInT {
    pub slope: BigRational,
    pub offset: BigRational,
}

impl AffineInT {
    pub fn at(&self, t: &BigRational) -> BigRational {
        &self.slope * t + &self.offset
    }
}

impl std::fmt::Display for AffineInT {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}*t + {}",
            format_rational(&self.slope),
            format_rational(&self.offset)
        )
    }
}

/// The five cells of the right upper rectangle for apex abscissa `t`; the left
/// rectangle is its mirror image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperRectangles {
    pub t: BigRational,
    /// Left boundaries of the five cells; the right boundary of the last is 1.
    pub lower_forms: Vec<AffineInT>,
    pub capacities: Vec<u64>,
}

impl UpperRectangles {
    /// `(left, right)` boundaries evaluated at `t`.
    pub fn cells(&self) -> Vec<(BigRational, BigRational)> {
        let lows: Vec<BigRational> = self.lower_forms.iter().map(|f| f.at(&self.t)).collect();
        let mut cells = Vec::with_capacity(lows.len());
        for (i, low) in lows.iter().enumerate() {
            let high = lows.get(i + 1).cloned().unwrap_or_else(BigRational::one);
            cells.push((low.clone(), high));
        }
        cells
    }

    pub fn total(&self) -> u64 {
        self.capacities.iter().sum()
    }
}

/// Cells are as wide as possible while the upper stub of every point still
/// reaches the left cell boundary: `b = (4a - t) / 3`.
pub fn upper_rect_partition(t: &BigRational) -> Result<UpperRectangles> {
    if !t.is_positive() || *t > half() {
        return Err(Error::InvalidParameter(format!(
            "apex abscissa {} must lie in (0, 1/2]",
            format_rational(t)
        )));
    }
    let mut forms = vec![AffineInT {
        slope: rat(3, 4),
        offset: rat(1, 4),
    }];
    while forms.len() < 5 {
        let a = forms.last().expect("non-empty");
        forms.push(AffineInT {
            slope: (int(4) * &a.slope - int(1)) / int(3),
            offset: int(4) * &a.offset / int(3),
        });
    }
    Ok(UpperRectangles {
        t: t.clone(),
        lower_forms: forms,
        capacities: vec![1, 5, 5, 5, 5],
    })
}

/// A strict numeric inequality `value < limit` (or `>`), checked with a margin.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatCheck {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub value_exceeds_limit: bool,
}

/// Below this distance from the limit a float check does not count as passed.
pub const CHECK_MARGIN: f64 = 1e-6;

impl FloatCheck {
    fn above(name: &'static str, value: f64, limit: f64) -> Self {
        FloatCheck {
            name,
            value,
            limit,
            value_exceeds_limit: true,
        }
    }

    fn below(name: &'static str, value: f64, limit: f64) -> Self {
        FloatCheck {
            name,
            value,
            limit,
            value_exceeds_limit: false,
        }
    }

    pub fn margin(&self) -> f64 {
        if self.value_exceeds_limit {
            self.value - self.limit
        } else {
            self.limit - self.value
        }
    }

    pub fn holds(&self) -> bool {
        self.margin() > CHECK_MARGIN
    }
}

/// Constants bounding the number of points in a corner square.
///
/// Consecutive points in a corner form nested angles that grow by a factor of
/// at least 1.3, and the extreme angles differ by a bounded ratio, which caps
/// the number of points.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerCertificate {
    /// `arctan(1/4) / arctan(3/16)`.
    pub growth_factor: f64,
    /// The factor the count bound is computed with.
    pub growth_used: f64,
    /// Lower bound on the tangent ratio of the extreme angles, along the base.
    pub base_ratio: BigRational,
    /// Same bound along the slanted side: `1 - 3 / (4 (1 - sqrt2 / 16))`.
    pub slanted_ratio: f64,
    /// The angle ratio used for the slanted side.
    pub slanted_ratio_used: BigRational,
    /// `log 5 / log 1.3 + 1`; its commonly quoted value 6.2 is not asserted.
    pub base_count_bound: f64,
    /// `log 6 / log 1.3 + 1`.
    pub slanted_count_bound: f64,
    pub checks: Vec<FloatCheck>,
    pub capacity: u64,
}

impl CornerCertificate {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(FloatCheck::holds)
    }
}

pub fn corner_square_certificate() -> CornerCertificate {
    let growth_factor = 0.25f64.atan() / (3.0f64 / 16.0).atan();
    let growth_used: f64 = 1.3;
    let projection = rat(1, 16);
    let base_ratio = int(1) - rat(3, 4) / (int(1) - projection);
    let slanted_ratio = 1.0 - 3.0 / (4.0 * (1.0 - std::f64::consts::SQRT_2 / 16.0));
    let slanted_ratio_used = rat(1, 6);
    let log_growth = growth_used.ln();
    let base_count_bound = (1.0 / base_ratio.to_f64().expect("finite")).ln() / log_growth + 1.0;
    let slanted_count_bound =
        (1.0 / slanted_ratio_used.to_f64().expect("finite")).ln() / log_growth + 1.0;
    let count_limit = 7.9;
    let checks = vec![
        FloatCheck::above("angle growth factor", growth_factor, growth_used),
        FloatCheck::above(
            "slanted tangent ratio",
            slanted_ratio,
            slanted_ratio_used.to_f64().expect("finite"),
        ),
        FloatCheck::below("point count along base", base_count_bound, count_limit),
        FloatCheck::below("point count along slant", slanted_count_bound, count_limit),
    ];
    let capacity = count_limit.ceil() as u64;
    CornerCertificate {
        growth_factor,
        growth_used,
        base_ratio,
        slanted_ratio,
        slanted_ratio_used,
        base_count_bound,
        slanted_count_bound,
        checks,
        capacity,
    }
}

/// Every cell of the unit square with its capacity, and the resulting totals.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionCertificate {
    pub middle: Vec<StripSpec>,
    pub bottom: BottomStrips,
    pub upper: UpperRectangles,
    pub corner: CornerCertificate,
    pub corner_count: u64,
}

impl PartitionCertificate {
    pub fn middle_total(&self) -> u64 {
        self.middle.iter().map(|s| s.capacity).sum()
    }

    pub fn corner_total(&self) -> u64 {
        self.corner.capacity * self.corner_count
    }

    /// Points in one unit square, hull points included.
    pub fn square_total(&self) -> u64 {
        self.middle_total() + self.bottom.total() + 2 * self.upper.total() + self.corner_total()
    }

    /// Two squares share the two hull points on their common side.
    pub fn upper_bound(&self) -> u64 {
        2 * self.square_total() - 2
    }
}

pub fn partition_certificate(t: &BigRational) -> Result<PartitionCertificate> {
    Ok(PartitionCertificate {
        middle: middle_strip_partition(),
        bottom: bottom_strip_partition(),
        upper: upper_rect_partition(t)?,
        corner: corner_square_certificate(),
        corner_count: 3,
    })
}

/// Largest `n` for which `K_n` may still have a drawing with ratio 1/4.
pub fn total_upper_bound() -> u64 {
    partition_certificate(&half())
        .expect("1/2 is a valid apex abscissa")
        .upper_bound()
}

/// Smallest point count in one-sided convex position with no such drawing.
pub const fn one_sided_bound() -> u64 {
    17
}

/// Largest point count in convex position that may still have such a drawing.
pub const fn convex_bound() -> u64 {
    22
}

/// Above this many points, some 17 of them are in one-sided convex position.
pub fn erdos_szekeres_threshold() -> BigUint {
    num_integer::binomial(BigUint::from(30u32), BigUint::from(15u32))
}
