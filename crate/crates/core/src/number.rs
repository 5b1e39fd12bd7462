//! Scalars used across the crate.
//!
//! Coordinates and stub fractions are exact [`BigRational`]s. Edge lengths are
//! square roots of rationals, so any quantity that mixes lengths of different
//! edges (ink totals, absolute erasure weights) goes through the [`Quantity`]
//! trait, which has a float implementation ([`Approx`]) and an exact one
//! ([`RootSum`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Tolerance used by every float-mode comparison.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn half() -> BigRational {
    rat(1, 2)
}

pub fn to_f64(r: &BigRational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Parses `p/q`, an integer, or a decimal such as `-1.25` or `3e-2`.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("invalid number `{s}`"),
    };
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let numer = BigInt::from_str(&format!("{whole}{frac}")).map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Float formatted with 12 significant digits, trailing zeros trimmed.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 30) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Largest rational `p/q <= sqrt(target)` with `q <= max_denominator`.
///
/// Used to turn irrational stub ratios such as `1/(2*sqrt(2k))` into an exact
/// value that is never larger than the advertised one.
pub fn best_lower_sqrt(target: &BigRational, max_denominator: u64) -> BigRational {
    assert!(!target.is_negative());
    if let (Some(a), Some(b), true) = (
        target.numer().to_u64(),
        target.denom().to_u64(),
        max_denominator <= u32::MAX as u64,
    ) {
        return best_lower_sqrt_small(a as u128, b as u128, max_denominator);
    }
    let mut best = <BigRational as Zero>::zero();
    for q in 1..=max_denominator {
        let q_big = BigInt::from(q);
        let scaled = (target * BigRational::from_integer(&q_big * &q_big)).floor();
        let p = isqrt(scaled.numer());
        let candidate = BigRational::new(p, q_big);
        if candidate > best {
            best = candidate;
        }
    }
    best
}

/// [`best_lower_sqrt`] for `a/b` with word-sized parts; `a * q^2` fits in
/// 128 bits for every `q < 2^32`.
fn best_lower_sqrt_small(a: u128, b: u128, max_denominator: u64) -> BigRational {
    let (mut best_p, mut best_q) = (0u128, 1u128);
    for q in 1..=max_denominator as u128 {
        let p = num_integer::Roots::sqrt(&(a * q * q / b));
        if p * best_q > best_p * q {
            best_p = p;
            best_q = q;
        }
    }
    BigRational::new(BigInt::from(best_p), BigInt::from(best_q))
}

/// An additive scalar that can be compared, used for ink and erasure weights.
pub trait Quantity: Clone + fmt::Debug {
    fn additive_zero() -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    /// Total order; the float implementation treats values within
    /// [`FLOAT_TOLERANCE`] as equal.
    fn compare(&self, other: &Self) -> Ordering;
    fn as_f64(&self) -> f64;

    fn exceeds_zero(&self) -> bool {
        self.compare(&Self::additive_zero()) == Ordering::Greater
    }
}

/// A [`Quantity`] that can also represent Euclidean lengths.
pub trait Length: Quantity {
    /// `coefficient * sqrt(radicand)`.
    fn scaled_sqrt(coefficient: &BigRational, radicand: &BigRational) -> Self;
}

/// Float scalar compared with a relative tolerance of [`FLOAT_TOLERANCE`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Approx(pub f64);

impl Quantity for Approx {
    fn additive_zero() -> Self {
        Approx(0.0)
    }

    fn from_rational(r: &BigRational) -> Self {
        Approx(to_f64(r))
    }

    fn plus(&self, other: &Self) -> Self {
        Approx(self.0 + other.0)
    }

    fn minus(&self, other: &Self) -> Self {
        Approx(self.0 - other.0)
    }

    fn compare(&self, other: &Self) -> Ordering {
        let scale = 1f64.max(self.0.abs()).max(other.0.abs());
        if (self.0 - other.0).abs() <= FLOAT_TOLERANCE * scale {
            Ordering::Equal
        } else if self.0 < other.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn as_f64(&self) -> f64 {
        self.0
    }
}

impl Length for Approx {
    fn scaled_sqrt(coefficient: &BigRational, radicand: &BigRational) -> Self {
        Approx(to_f64(coefficient) * to_f64(radicand).sqrt())
    }
}

impl Quantity for BigRational {
    fn additive_zero() -> Self {
        Zero::zero()
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn as_f64(&self) -> f64 {
        to_f64(self)
    }
}

/// Exact value `sum_i c_i * sqrt(n_i)` with rational `c_i` and positive
/// integer radicands `n_i`.
///
/// Comparison is exact: terms whose radicands differ by a rational square
/// factor are merged, after which the remaining square roots are linearly
/// independent over the rationals, so the sum is zero iff every merged
/// coefficient is zero. A non-zero sum has its sign settled by interval
/// refinement of the square roots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl RootSum {
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.terms.iter()
    }

    fn push(&mut self, radicand: BigInt, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(radicand).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, c)| c.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    fn negated(&self) -> RootSum {
        RootSum {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Canonical form in which no two radicands have a square ratio.
    fn independent_terms(&self) -> Vec<(BigInt, BigRational)> {
        let mut groups: Vec<(BigInt, BigRational)> = Vec::new();
        for (n, c) in &self.terms {
            let mut placed = false;
            for (rep, acc) in groups.iter_mut() {
                // sqrt(n) = sqrt(n * rep) / rep * sqrt(rep)
                if let Some(root) = perfect_square_root(&(n * &*rep)) {
                    *acc += c * BigRational::new(root, rep.clone());
                    placed = true;
                    break;
                }
            }
            if !placed {
                groups.push((n.clone(), c.clone()));
            }
        }
        groups.retain(|(_, c)| !c.is_zero());
        groups
    }

    /// Sign of the represented real number.
    pub fn signum(&self) -> Ordering {
        let terms = self.independent_terms();
        if terms.is_empty() {
            return Ordering::Equal;
        }
        let mut bits = 64usize;
        loop {
            let scale = BigInt::one() << bits;
            let mut lower = <BigRational as Zero>::zero();
            let mut upper = <BigRational as Zero>::zero();
            for (n, c) in &terms {
                let floor = isqrt(&(n << (2 * bits)));
                let lo = BigRational::new(floor.clone(), scale.clone());
                let hi = BigRational::new(floor + 1, scale.clone());
                if c.is_positive() {
                    lower += c * &lo;
                    upper += c * &hi;
                } else {
                    lower += c * &hi;
                    upper += c * &lo;
                }
            }
            if lower.is_positive() {
                return Ordering::Greater;
            }
            if upper.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
            assert!(bits <= 1 << 22, "sign refinement did not converge");
        }
    }
}

impl Quantity for RootSum {
    fn additive_zero() -> Self {
        RootSum::default()
    }

    fn from_rational(r: &BigRational) -> Self {
        let mut out = RootSum::default();
        out.push(BigInt::one(), r.clone());
        out
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.push(n.clone(), c.clone());
        }
        out
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.minus(other).signum()
    }

    fn as_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(n, c)| to_f64(c) * n.to_f64().unwrap_or(f64::INFINITY).sqrt())
            .sum()
    }
}

impl Length for RootSum {
    fn scaled_sqrt(coefficient: &BigRational, radicand: &BigRational) -> Self {
        assert!(!radicand.is_negative(), "square root of negative");
        let mut out = RootSum::default();
        if coefficient.is_zero() || radicand.is_zero() {
            return out;
        }
        // sqrt(a/b) = sqrt(a*b) / b, then pull out the largest square we can see cheaply
        let (a, b) = (radicand.numer(), radicand.denom());
        let mut n = a * b;
        let mut coeff = coefficient / BigRational::from_integer(b.clone());
        if let Some(root) = perfect_square_root(&n) {
            coeff *= BigRational::from_integer(root);
            n = BigInt::one();
        } else {
            for p in [2u32, 3, 5, 7, 11, 13] {
                let sq = BigInt::from(p * p);
                while n.is_multiple_of(&sq) {
                    n /= &sq;
                    coeff *= int(p as i64);
                }
            }
        }
        out.push(n, coeff);
        out
    }
}

impl fmt::Display for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| {
                if n.is_one() {
                    format_rational(c)
                } else {
                    format!("{}*sqrt({})", format_rational(c), n)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sign helper for `BigInt` used by predicates.
pub fn sign_of(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::NoSign
    } else if r.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}
