//! Minimum-erasure symmetric partial edge drawings via weighted 2-SAT.
//!
//! The crossings of an edge `e`, sorted by distance to the nearer endpoint,
//! split each half of `e` at radii `0 = r_0 < r_1 <= .. <= r_k <= r_{k+1} = 1/2`
//! (fractions of the edge length). Segment pair `i` is the two mirrored
//! pieces between `r_i` and `r_{i+1}`. Pair 0 is always drawn; every other
//! pair gets a variable that is true when the pair is erased. Prefix clauses
//! keep the erased pairs of one edge a suffix, and each crossing demands that
//! at least one of the two pairs starting at it is erased.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use crate::crossings::{enumerate_crossings, CrossingMethod};
use crate::error::{Error, Result};
use crate::graph::{GeometricGraph, StubAssignment};
use crate::number::{half, Length, Quantity};

/// Unit of the variable weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightMode {
    /// Ink length of the pair, `2 (r_{i+1} - r_i) l_e`.
    #[default]
    Absolute,
    /// Pair length over twice the edge length, `r_{i+1} - r_i`.
    Relative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentPair {
    pub edge: usize,
    pub index: usize,
    pub inner: BigRational,
    pub outer: BigRational,
}

#[derive(Clone, Debug)]
pub struct Variable<W> {
    pub edge: usize,
    /// Pair index, at least 1.
    pub index: usize,
    pub weight: W,
}

/// Clause `(later ∨ ¬earlier)` between consecutive pairs of one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrefixClause {
    pub later: usize,
    pub earlier: usize,
}

/// Clause `(a ∨ b)` for one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingClause {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug)]
pub struct TwoSatInstance<W> {
    /// Segment pairs of every edge, pair 0 first.
    pub pairs: Vec<Vec<SegmentPair>>,
    pub variables: Vec<Variable<W>>,
    /// Variable ids of each edge's pairs `1..=k_e`.
    pub edge_variables: Vec<Vec<usize>>,
    pub prefix_clauses: Vec<PrefixClause>,
    /// One per crossing, in crossing-enumeration order.
    pub crossing_clauses: Vec<CrossingClause>,
}

impl<W: Quantity> TwoSatInstance<W> {
    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        values.len() == self.variables.len()
            && self
                .prefix_clauses
                .iter()
                .all(|c| values[c.later] || !values[c.earlier])
            && self
                .crossing_clauses
                .iter()
                .all(|c| values[c.a] || values[c.b])
    }

    pub fn weight_of(&self, values: &[bool]) -> W {
        self.variables
            .iter()
            .zip(values)
            .filter(|(_, &v)| v)
            .fold(W::additive_zero(), |acc, (var, _)| acc.plus(&var.weight))
    }

    fn assignment(&self, values: Vec<bool>) -> Assignment<W> {
        let weight = self.weight_of(&values);
        Assignment { values, weight }
    }
}

/// Truth values (true = pair erased) and the total weight of true variables.
#[derive(Clone, Debug)]
pub struct Assignment<W> {
    pub values: Vec<bool>,
    pub weight: W,
}

pub fn build_instance<W: Length>(
    g: &GeometricGraph,
    mode: WeightMode,
) -> Result<TwoSatInstance<W>> {
    let two = BigRational::from_integer(2.into());
    build_with(g, |e, width| match mode {
        WeightMode::Absolute => W::scaled_sqrt(&(&two * width), &g.squared_length(e)),
        WeightMode::Relative => W::from_rational(width),
    })
}

/// Relative-mode instance with exact rational weights.
pub fn build_relative_instance(g: &GeometricGraph) -> Result<TwoSatInstance<BigRational>> {
    build_with(g, |_, width| width.clone())
}

fn build_with<W>(
    g: &GeometricGraph,
    weight_of: impl Fn(usize, &BigRational) -> W,
) -> Result<TwoSatInstance<W>> {
    let crossings = enumerate_crossings(g, CrossingMethod::AllPairs)?;
    let m = g.edge_count();
    // per edge: (radius, partner, crossing id)
    let mut radii: Vec<Vec<(BigRational, usize, usize)>> = vec![Vec::new(); m];
    for (id, c) in crossings.iter().enumerate() {
        radii[c.first].push((c.near_fraction(c.first), c.second, id));
        radii[c.second].push((c.near_fraction(c.second), c.first, id));
    }
    let mut pairs = Vec::with_capacity(m);
    let mut variables = Vec::new();
    let mut edge_variables = Vec::with_capacity(m);
    let mut prefix_clauses = Vec::new();
    // crossing id -> variable of each side
    let mut sides: Vec<Vec<usize>> = vec![Vec::with_capacity(2); crossings.len()];
    for (e, list) in radii.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut bounds = vec![BigRational::zero()];
        bounds.extend(list.iter().map(|(r, _, _)| r.clone()));
        bounds.push(half());
        let edge_pairs: Vec<SegmentPair> = (0..bounds.len() - 1)
            .map(|i| SegmentPair {
                edge: e,
                index: i,
                inner: bounds[i].clone(),
                outer: bounds[i + 1].clone(),
            })
            .collect();
        let mut ids = Vec::with_capacity(list.len());
        for (i, pair) in edge_pairs.iter().enumerate().skip(1) {
            let weight = weight_of(e, &(&pair.outer - &pair.inner));
            let id = variables.len();
            variables.push(Variable {
                edge: e,
                index: i,
                weight,
            });
            if let Some(&earlier) = ids.last() {
                prefix_clauses.push(PrefixClause { later: id, earlier });
            }
            ids.push(id);
            sides[list[i - 1].2].push(id);
        }
        pairs.push(edge_pairs);
        edge_variables.push(ids);
    }
    let crossing_clauses = sides
        .into_iter()
        .map(|s| CrossingClause { a: s[0], b: s[1] })
        .collect();
    Ok(TwoSatInstance {
        pairs,
        variables,
        edge_variables,
        prefix_clauses,
        crossing_clauses,
    })
}

/// Index of `var` among its edge's variables.
fn position<W>(inst: &TwoSatInstance<W>, var: usize) -> usize {
    inst.variables[var].index - 1
}

/// Local-ratio 2-approximation of the minimum-weight satisfying assignment.
///
/// Each crossing clause in turn lowers the residual suffix costs of its two
/// sides by their minimum. Afterwards every edge is cut at the first pair
/// whose residual suffix cost is zero, which satisfies every clause, and
/// true variables are dropped greedily (heaviest first) while the
/// assignment stays satisfying.
pub fn approx_minw2sat<W: Quantity>(inst: &TwoSatInstance<W>) -> Assignment<W> {
    let mut residual: Vec<W> = inst.variables.iter().map(|v| v.weight.clone()).collect();
    let suffix_cost = |residual: &[W], var: usize| -> W {
        let ids = &inst.edge_variables[inst.variables[var].edge];
        ids[position(inst, var)..]
            .iter()
            .fold(W::additive_zero(), |acc, &v| acc.plus(&residual[v]))
    };
    for clause in &inst.crossing_clauses {
        let ca = suffix_cost(&residual, clause.a);
        let cb = suffix_cost(&residual, clause.b);
        if !ca.exceeds_zero() || !cb.exceeds_zero() {
            continue;
        }
        let alpha = if ca.compare(&cb) == Ordering::Greater {
            cb
        } else {
            ca
        };
        for var in [clause.a, clause.b] {
            let ids = &inst.edge_variables[inst.variables[var].edge];
            let mut left = alpha.clone();
            for &v in &ids[position(inst, var)..] {
                if !left.exceeds_zero() {
                    break;
                }
                if residual[v].compare(&left) == Ordering::Greater {
                    residual[v] = residual[v].minus(&left);
                    left = W::additive_zero();
                } else {
                    left = left.minus(&residual[v]);
                    residual[v] = W::additive_zero();
                }
            }
        }
    }

    let mut values = vec![false; inst.variable_count()];
    for ids in &inst.edge_variables {
        if let Some(cut) = (0..ids.len()).find(|&i| !suffix_cost(&residual, ids[i]).exceeds_zero())
        {
            for &v in &ids[cut..] {
                values[v] = true;
            }
        }
    }
    debug_assert!(inst.is_satisfied_by(&values));

    let mut order: Vec<usize> = (0..inst.variable_count()).collect();
    order.sort_by(|&a, &b| {
        inst.variables[b]
            .weight
            .compare(&inst.variables[a].weight)
            .then(a.cmp(&b))
    });
    loop {
        let mut changed = false;
        for &v in &order {
            if !values[v] {
                continue;
            }
            values[v] = false;
            if inst.is_satisfied_by(&values) {
                changed = true;
            } else {
                values[v] = true;
            }
        }
        if !changed {
            break;
        }
    }
    inst.assignment(values)
}

pub const EXACT_MAX_VARIABLES: usize = 24;

/// Minimum-weight satisfying assignment by enumerating, per edge, the index
/// of the first erased pair.
pub fn exact_minw2sat<W: Quantity>(inst: &TwoSatInstance<W>) -> Result<Assignment<W>> {
    if inst.variable_count() > EXACT_MAX_VARIABLES {
        return Err(Error::InstanceTooLarge(format!(
            "exact 2-SAT handles at most {EXACT_MAX_VARIABLES} variables, got {}",
            inst.variable_count()
        )));
    }
    let edges: Vec<usize> = (0..inst.edge_variables.len())
        .filter(|&e| !inst.edge_variables[e].is_empty())
        .collect();
    // cost of cutting each edge at each level; level k_e means nothing erased
    let cut_costs: Vec<Vec<W>> = edges
        .iter()
        .map(|&e| {
            let ids = &inst.edge_variables[e];
            let mut costs = vec![W::additive_zero(); ids.len() + 1];
            for i in (0..ids.len()).rev() {
                costs[i] = costs[i + 1].plus(&inst.variables[ids[i]].weight);
            }
            costs
        })
        .collect();
    let mut search = ExactSearch {
        inst,
        edges: &edges,
        cut_costs: &cut_costs,
        values: vec![false; inst.variable_count()],
        best: None,
    };
    search.descend(0, W::additive_zero());
    let values = search.best.expect("erasing everything is feasible").1;
    Ok(inst.assignment(values))
}

struct ExactSearch<'a, W> {
    inst: &'a TwoSatInstance<W>,
    edges: &'a [usize],
    cut_costs: &'a [Vec<W>],
    values: Vec<bool>,
    best: Option<(W, Vec<bool>)>,
}

impl<W: Quantity> ExactSearch<'_, W> {
    fn decided(&self, var: usize, depth: usize) -> bool {
        let e = self.inst.variables[var].edge;
        self.edges[..depth].contains(&e)
    }

    fn descend(&mut self, depth: usize, cost: W) {
        if let Some((b, _)) = &self.best {
            if cost.compare(b) != Ordering::Less {
                return;
            }
        }
        if depth == self.edges.len() {
            self.best = Some((cost, self.values.clone()));
            return;
        }
        let ids = &self.inst.edge_variables[self.edges[depth]];
        for cut in 0..=ids.len() {
            for (i, &v) in ids.iter().enumerate() {
                self.values[v] = i >= cut;
            }
            let violated = self.inst.crossing_clauses.iter().any(|c| {
                self.decided(c.a, depth + 1)
                    && self.decided(c.b, depth + 1)
                    && !self.values[c.a]
                    && !self.values[c.b]
            });
            if violated {
                continue;
            }
            let next = cost.plus(&self.cut_costs[depth][cut]);
            self.descend(depth + 1, next);
        }
        for &v in ids {
            self.values[v] = false;
        }
    }
}

/// Stub fractions of a satisfying assignment: each edge keeps every pair
/// before its first erased one.
pub fn assignment_to_stubs<W>(
    inst: &TwoSatInstance<W>,
    a: &Assignment<W>,
) -> Result<StubAssignment> {
    let fractions = inst
        .pairs
        .iter()
        .zip(&inst.edge_variables)
        .map(|(pairs, ids)| {
            let kept = ids.iter().take_while(|&&v| !a.values[v]).count();
            pairs[kept].outer.clone()
        })
        .collect();
    StubAssignment::new(fractions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::number::{int, rat, Approx, RootSum};
    use crate::validate::{ink_as, validate_ped};

    fn two_edges() -> GeometricGraph {
        GeometricGraph::new(
            vec![
                Point::from_ints(0, 0),
                Point::from_ints(4, 0),
                Point::from_ints(1, -1),
                Point::from_ints(1, 3),
            ],
            vec![(0, 1), (2, 3)],
        )
        .unwrap()
    }

    /// One variable per side of a single crossing clause.
    fn single_clause(wa: i64, wb: i64) -> TwoSatInstance<BigRational> {
        let pair = |edge, index, inner: BigRational, outer: BigRational| SegmentPair {
            edge,
            index,
            inner,
            outer,
        };
        TwoSatInstance {
            pairs: vec![
                vec![pair(0, 0, int(0), rat(1, 4)), pair(0, 1, rat(1, 4), half())],
                vec![pair(1, 0, int(0), rat(1, 4)), pair(1, 1, rat(1, 4), half())],
            ],
            variables: vec![
                Variable {
                    edge: 0,
                    index: 1,
                    weight: int(wa),
                },
                Variable {
                    edge: 1,
                    index: 1,
                    weight: int(wb),
                },
            ],
            edge_variables: vec![vec![0], vec![1]],
            prefix_clauses: vec![],
            crossing_clauses: vec![CrossingClause { a: 0, b: 1 }],
        }
    }

    #[test]
    fn crossing_free_instance_is_empty() {
        let g = GeometricGraph::new(
            vec![Point::from_ints(0, 0), Point::from_ints(1, 0)],
            vec![(0, 1)],
        )
        .unwrap();
        let inst = build_instance::<Approx>(&g, WeightMode::Absolute).unwrap();
        assert_eq!(inst.variable_count(), 0);
        assert!(inst.crossing_clauses.is_empty());
        let a = approx_minw2sat(&inst);
        assert_eq!(a.weight, Approx(0.0));
        assert_eq!(
            assignment_to_stubs(&inst, &a).unwrap().fractions(),
            &[half()]
        );
    }

    #[test]
    fn two_edge_structure() {
        let inst = build_instance::<RootSum>(&two_edges(), WeightMode::Absolute).unwrap();
        assert_eq!(inst.variable_count(), 2);
        assert_eq!(inst.crossing_clauses, vec![CrossingClause { a: 0, b: 1 }]);
        assert!(inst.prefix_clauses.is_empty());
        // horizontal edge: crossing at 1/4, pair 1 spans 1/4..1/2 of length 4 on both sides
        assert_eq!(
            inst.variables[0]
                .weight
                .compare(&RootSum::from_rational(&int(2))),
            Ordering::Equal
        );

        let a = Assignment {
            values: vec![false, true],
            weight: inst.variables[1].weight.clone(),
        };
        let s = assignment_to_stubs(&inst, &a).unwrap();
        assert_eq!(s.fractions(), &[half(), rat(1, 4)]);
        assert!(validate_ped(&two_edges(), &s).unwrap().is_valid());
    }

    #[test]
    fn edge_crossed_twice_gets_a_prefix_clause() {
        // horizontal edge of length 4 crossed at distances 1 and 3/2 from its left end
        let g = GeometricGraph::new(
            vec![
                Point::from_ints(0, 0),
                Point::from_ints(4, 0),
                Point::from_ints(1, -1),
                Point::from_ints(1, 1),
                Point::new(rat(3, 2), int(-1)),
                Point::new(rat(3, 2), int(1)),
            ],
            vec![(0, 1), (2, 3), (4, 5)],
        )
        .unwrap();
        let inst = build_relative_instance(&g).unwrap();
        let radii: Vec<_> = inst.pairs[0].iter().map(|p| p.inner.clone()).collect();
        assert_eq!(radii, vec![int(0), rat(1, 4), rat(3, 8)]);
        let ids = &inst.edge_variables[0];
        assert_eq!(
            inst.prefix_clauses[0],
            PrefixClause {
                later: ids[1],
                earlier: ids[0]
            }
        );
        assert_eq!(inst.variables[ids[0]].weight, rat(1, 8));
        assert_eq!(inst.variables[ids[1]].weight, rat(1, 8));
    }

    #[test]
    fn single_clause_local_ratio() {
        let inst = single_clause(3, 5);
        let a = approx_minw2sat(&inst);
        assert_eq!(a.weight, int(3));
        assert_eq!(a.values, vec![true, false]);
        assert_eq!(exact_minw2sat(&inst).unwrap().weight, int(3));
    }

    #[test]
    fn erased_weight_matches_lost_ink() {
        let g = two_edges();
        let inst = build_instance::<RootSum>(&g, WeightMode::Absolute).unwrap();
        let a = approx_minw2sat(&inst);
        let s = assignment_to_stubs(&inst, &a).unwrap();
        let lost = g
            .total_length::<RootSum>()
            .minus(&ink_as::<RootSum>(&g, &s));
        assert_eq!(a.weight.compare(&lost), Ordering::Equal);
    }
}
