//! Maximum-ink symmetric partial edge drawings of 2-planar drawings.
//!
//! Each conflict component is a path or cycle of edges `e_1 .. e_n` where
//! consecutive edges cross. An edge either stays whole, or is cut back to
//! stubs ending at its backward crossing (with `e_{j-1}`) or its forward
//! crossing (with `e_{j+1}`). A stub of fraction `s` passes a crossing at
//! nearer-endpoint fraction `x` iff `s > x`, and two edges conflict iff both
//! pass their shared crossing. The solver is a dynamic program over that
//! compatibility relation; cycles are solved once per fixed choice of the
//! last edge.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use crate::crossings::{
    build_conflict_components, enumerate_crossings, ComponentEdge, ComponentKind,
    ConflictComponent, CrossingMethod,
};
use crate::error::{Error, Result};
use crate::geometry::{interiors_cross, stubs_conflict, Stub};
use crate::graph::{GeometricGraph, StubAssignment};
use crate::number::{half, to_f64, Length, Quantity, RootSum};

/// What is kept of one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeChoice {
    /// The whole edge (stub fraction 1/2).
    Full,
    /// Stubs ending at the crossing with the successor.
    Forward,
    /// Stubs ending at the crossing with the predecessor.
    Backward,
    /// Nothing is drawn; only used by the all-or-nothing variant.
    Erased,
}

impl EdgeChoice {
    /// Choices tried by the general solver, in tie-break order.
    pub const PARTIAL: [EdgeChoice; 3] =
        [EdgeChoice::Full, EdgeChoice::Forward, EdgeChoice::Backward];
    /// Choices tried by the all-or-nothing solver, in tie-break order.
    pub const ZERO_ONE: [EdgeChoice; 2] = [EdgeChoice::Full, EdgeChoice::Erased];

    pub fn fraction(self, edge: &ComponentEdge) -> BigRational {
        match self {
            EdgeChoice::Full => half(),
            EdgeChoice::Forward => edge.forward.clone(),
            EdgeChoice::Backward => edge.backward.clone(),
            EdgeChoice::Erased => BigRational::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Partial,
    ZeroOne,
}

impl Mode {
    fn choices(self) -> &'static [EdgeChoice] {
        match self {
            Mode::Partial => &EdgeChoice::PARTIAL,
            Mode::ZeroOne => &EdgeChoice::ZERO_ONE,
        }
    }

    /// Does `choice` put ink on the crossing at nearer-endpoint fraction `x`?
    fn passes(self, choice: EdgeChoice, edge: &ComponentEdge, x: &BigRational) -> bool {
        match self {
            Mode::Partial => choice.fraction(edge) > *x,
            Mode::ZeroOne => choice != EdgeChoice::Erased,
        }
    }
}

/// Can `e_j` take `a` while its successor `e_{j+1}` takes `b`?
fn compatible(
    mode: Mode,
    ej: &ComponentEdge,
    a: EdgeChoice,
    next: &ComponentEdge,
    b: EdgeChoice,
) -> bool {
    !(mode.passes(a, ej, &ej.forward) && mode.passes(b, next, &next.backward))
}

fn choice_ink<W: Length>(choice: EdgeChoice, edge: &ComponentEdge) -> W {
    let two = BigRational::from_integer(2.into());
    W::scaled_sqrt(&(two * choice.fraction(edge)), &edge.squared_length)
}

/// Bottom-up table of one DP run. Row `j` holds, for every choice of `e_j`,
/// the best ink of `e_j .. e_n` and the successor choice attaining it.
/// `None` marks a choice that is infeasible in this run.
#[derive(Clone, Debug)]
pub struct DpTable<W> {
    pub choices: Vec<EdgeChoice>,
    pub values: Vec<Vec<Option<W>>>,
    pub next: Vec<Vec<Option<EdgeChoice>>>,
}

impl<W: Length> DpTable<W> {
    pub fn value(&self, j: usize, choice: EdgeChoice) -> Option<&W> {
        let c = self.choices.iter().position(|&x| x == choice)?;
        self.values[j][c].as_ref()
    }
}

fn better<W: Quantity>(candidate: &W, best: &Option<W>) -> bool {
    match best {
        None => true,
        Some(b) => candidate.compare(b) == Ordering::Greater,
    }
}

fn run_table<W: Length>(
    mode: Mode,
    edges: &[ComponentEdge],
    fixed_last: Option<EdgeChoice>,
) -> DpTable<W> {
    let choices = mode.choices().to_vec();
    let n = edges.len();
    let mut values: Vec<Vec<Option<W>>> = vec![vec![None; choices.len()]; n];
    let mut next: Vec<Vec<Option<EdgeChoice>>> = vec![vec![None; choices.len()]; n];
    for (c, &choice) in choices.iter().enumerate() {
        if fixed_last.is_none_or(|f| f == choice) {
            values[n - 1][c] = Some(choice_ink(choice, &edges[n - 1]));
        }
    }
    for j in (0..n - 1).rev() {
        for (c, &choice) in choices.iter().enumerate() {
            let mut best: Option<W> = None;
            let mut arg = None;
            for (d, &succ) in choices.iter().enumerate() {
                let Some(rest) = &values[j + 1][d] else {
                    continue;
                };
                if !compatible(mode, &edges[j], choice, &edges[j + 1], succ) {
                    continue;
                }
                if better(rest, &best) {
                    best = Some(rest.clone());
                    arg = Some(succ);
                }
            }
            if let Some(rest) = best {
                values[j][c] = Some(choice_ink::<W>(choice, &edges[j]).plus(&rest));
                next[j][c] = arg;
            }
        }
    }
    DpTable {
        choices,
        values,
        next,
    }
}

/// Optimal choices for one component.
#[derive(Clone, Debug)]
pub struct ComponentSolution<W> {
    pub ink: W,
    /// Parallel to the component's edge order.
    pub choices: Vec<EdgeChoice>,
}

fn trace<W: Length>(table: &DpTable<W>, first: EdgeChoice) -> Vec<EdgeChoice> {
    let mut out = vec![first];
    let mut current = first;
    for j in 0..table.values.len() - 1 {
        let c = table
            .choices
            .iter()
            .position(|&x| x == current)
            .expect("known choice");
        current = table.next[j][c].expect("feasible entries have a successor");
        out.push(current);
    }
    out
}

fn solve_with_mode<W: Length>(mode: Mode, component: &ConflictComponent) -> ComponentSolution<W> {
    let edges = &component.edges;
    assert!(!edges.is_empty(), "empty component");
    let runs: Vec<Option<EdgeChoice>> = match component.kind {
        ComponentKind::Path => vec![None],
        ComponentKind::Cycle => mode.choices().iter().map(|&c| Some(c)).collect(),
    };
    let mut best: Option<(W, Vec<EdgeChoice>)> = None;
    for fixed in runs {
        let table = run_table::<W>(mode, edges, fixed);
        for (c, &choice) in table.choices.iter().enumerate() {
            let Some(value) = &table.values[0][c] else {
                continue;
            };
            if let Some(last) = fixed {
                // the wrap-around crossing joins e_n (forward) and e_1 (backward)
                if !compatible(mode, &edges[edges.len() - 1], last, &edges[0], choice) {
                    continue;
                }
            }
            if best
                .as_ref()
                .is_none_or(|(b, _)| value.compare(b) == Ordering::Greater)
            {
                best = Some((value.clone(), trace(&table, choice)));
            }
        }
    }
    let (ink, choices) = best.expect("the shortest-stub choice is always feasible");
    ComponentSolution { ink, choices }
}

/// Maximum-ink choices for one conflict component.
pub fn solve_component<W: Length>(component: &ConflictComponent) -> ComponentSolution<W> {
    solve_with_mode(Mode::Partial, component)
}

/// The DP table of a single run, for inspection; `fixed_last` pins the last
/// edge's choice as in the cycle runs.
pub fn component_table<W: Length>(
    component: &ConflictComponent,
    fixed_last: Option<EdgeChoice>,
) -> DpTable<W> {
    run_table(Mode::Partial, &component.edges, fixed_last)
}

/// A solved drawing: one choice per edge (indexed by edge), the total ink,
/// and the stub assignment realising it.
#[derive(Clone, Debug)]
pub struct SpedSolution<W> {
    pub choices: Vec<EdgeChoice>,
    pub ink: W,
    pub assignment: StubAssignment,
}

fn solve_graph<W: Length>(mode: Mode, g: &GeometricGraph) -> Result<SpedSolution<W>> {
    let crossings = enumerate_crossings(g, CrossingMethod::AllPairs)?;
    let components = build_conflict_components(g, &crossings)?;
    let m = g.edge_count();
    let mut choices = vec![EdgeChoice::Full; m];
    let mut fractions = vec![half(); m];
    let mut ink = W::additive_zero();
    for component in &components {
        let solution = solve_with_mode::<W>(mode, component);
        ink = ink.plus(&solution.ink);
        for (edge, choice) in component.edges.iter().zip(solution.choices) {
            choices[edge.edge] = choice;
            fractions[edge.edge] = choice.fraction(edge);
        }
    }
    let assignment = match mode {
        Mode::Partial => StubAssignment::new(fractions)?,
        Mode::ZeroOne => StubAssignment::with_erasures(fractions)?,
    };
    Ok(SpedSolution {
        choices,
        ink,
        assignment,
    })
}

/// Maximum-ink symmetric partial edge drawing of a 2-planar drawing.
pub fn solve_maxsped<W: Length>(g: &GeometricGraph) -> Result<SpedSolution<W>> {
    solve_graph(Mode::Partial, g)
}

/// Heaviest set of pairwise non-crossing edges of a 2-planar drawing; every
/// other edge is erased.
pub fn solve_01_maxsped<W: Length>(g: &GeometricGraph) -> Result<SpedSolution<W>> {
    solve_graph(Mode::ZeroOne, g)
}

/// Exhaustive optimum used to check the solvers.
#[derive(Clone, Debug)]
pub struct OracleSolution {
    pub ink: RootSum,
    pub assignment: StubAssignment,
}

pub const ORACLE_MAX_EDGES: usize = 16;
pub const ORACLE_MAX_COMBINATIONS: u64 = 1 << 22;

/// Maximum ink by trying, per edge, every stub fraction in
/// `{1/2} ∪ {nearer-endpoint fraction of each crossing}`.
///
/// An optimal fraction can always be raised to the next candidate without
/// creating a conflict, so the candidates suffice. Works on any drawing, not
/// only 2-planar ones.
pub fn oracle_maxsped(g: &GeometricGraph) -> Result<OracleSolution> {
    let m = g.edge_count();
    if m > ORACLE_MAX_EDGES {
        return Err(Error::InstanceTooLarge(format!(
            "oracle handles at most {ORACLE_MAX_EDGES} edges, got {m}"
        )));
    }
    let crossings = enumerate_crossings(g, CrossingMethod::AllPairs)?;
    let mut candidates: Vec<Vec<BigRational>> = vec![vec![half()]; m];
    for c in &crossings {
        for e in [c.first, c.second] {
            let x = c.near_fraction(e);
            if !candidates[e].contains(&x) {
                candidates[e].push(x);
            }
        }
    }
    for list in &mut candidates {
        list.sort_by(|a, b| b.cmp(a));
    }
    let combinations = candidates
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .filter(|&n| n <= ORACLE_MAX_COMBINATIONS);
    if combinations.is_none() {
        return Err(Error::InstanceTooLarge(format!(
            "oracle candidate space exceeds {ORACLE_MAX_COMBINATIONS} combinations"
        )));
    }

    let inks: Vec<Vec<RootSum>> = (0..m)
        .map(|e| {
            candidates[e]
                .iter()
                .map(|f| {
                    RootSum::scaled_sqrt(
                        &(f * BigRational::from_integer(2.into())),
                        &g.squared_length(e),
                    )
                })
                .collect()
        })
        .collect();
    // conflicts[e][a] lists (f, b) with f < e whose stubs clash with e at candidate a
    let mut conflicts: Vec<Vec<Vec<(usize, usize)>>> = (0..m)
        .map(|e| vec![Vec::new(); candidates[e].len()])
        .collect();
    for e in 0..m {
        for f in 0..e {
            for (a, fa) in candidates[e].iter().enumerate() {
                let stubs_e = edge_stubs(g, e, fa);
                for (b, fb) in candidates[f].iter().enumerate() {
                    let stubs_f = edge_stubs(g, f, fb);
                    let clash = stubs_e
                        .iter()
                        .any(|p| stubs_f.iter().any(|q| stubs_conflict(p, q)));
                    if clash {
                        conflicts[e][a].push((f, b));
                    }
                }
            }
        }
    }

    let mut search = OracleSearch {
        inks: &inks,
        conflicts: &conflicts,
        picked: vec![0; m],
        best: None,
    };
    search.descend(0, RootSum::additive_zero());
    let (ink, picked) = search
        .best
        .expect("shortest candidates are always feasible");
    let assignment = StubAssignment::new(
        picked
            .iter()
            .enumerate()
            .map(|(e, &a)| candidates[e][a].clone())
            .collect(),
    )?;
    Ok(OracleSolution { ink, assignment })
}

fn edge_stubs(g: &GeometricGraph, e: usize, fraction: &BigRational) -> [Stub; 2] {
    let (a, b) = g.endpoints(e);
    [
        Stub::new(a, b, fraction.clone()).expect("candidate fraction"),
        Stub::new(b, a, fraction.clone()).expect("candidate fraction"),
    ]
}

struct OracleSearch<'a> {
    inks: &'a [Vec<RootSum>],
    conflicts: &'a [Vec<Vec<(usize, usize)>>],
    picked: Vec<usize>,
    best: Option<(RootSum, Vec<usize>)>,
}

impl OracleSearch<'_> {
    fn descend(&mut self, e: usize, ink: RootSum) {
        if e == self.inks.len() {
            let improves = match &self.best {
                None => true,
                Some((b, _)) => {
                    let (x, y) = (ink.as_f64(), b.as_f64());
                    // floats settle clear cases; near-ties go to the exact comparison
                    if x < y - 1e-6 * (1.0 + y.abs()) {
                        false
                    } else {
                        ink.compare(b) == Ordering::Greater
                    }
                }
            };
            if improves {
                self.best = Some((ink, self.picked.clone()));
            }
            return;
        }
        for a in 0..self.inks[e].len() {
            let clash = self.conflicts[e][a]
                .iter()
                .any(|&(f, b)| self.picked[f] == b);
            if clash {
                continue;
            }
            self.picked[e] = a;
            let next = ink.plus(&self.inks[e][a]);
            self.descend(e + 1, next);
        }
    }
}

pub const SUBSET_ORACLE_MAX_EDGES: usize = 20;

/// Heaviest non-crossing edge subset by enumerating all `2^m` subsets.
/// Returns the exact total length and the kept-edge mask.
pub fn oracle_01_maxsped(g: &GeometricGraph) -> Result<(RootSum, Vec<bool>)> {
    let m = g.edge_count();
    if m > SUBSET_ORACLE_MAX_EDGES {
        return Err(Error::InstanceTooLarge(format!(
            "subset oracle handles at most {SUBSET_ORACLE_MAX_EDGES} edges, got {m}"
        )));
    }
    let segments: Vec<_> = (0..m).map(|e| g.segment(e)).collect();
    let mut crossing_mask = vec![0u32; m];
    for e in 0..m {
        for f in 0..m {
            if e != f && !g.shares_vertex(e, f) && interiors_cross(&segments[e], &segments[f]) {
                crossing_mask[e] |= 1 << f;
            }
        }
    }
    let lengths_f64: Vec<f64> = (0..m)
        .map(|e| to_f64(&g.squared_length(e)).sqrt())
        .collect();
    let mut best: Option<(RootSum, f64, u32)> = None;
    for mask in 0u32..(1u32 << m) {
        if (0..m).any(|e| mask & (1 << e) != 0 && mask & crossing_mask[e] != 0) {
            continue;
        }
        let approx: f64 = (0..m)
            .filter(|e| mask & (1 << e) != 0)
            .map(|e| lengths_f64[e])
            .sum();
        if let Some((_, b, _)) = &best {
            if approx < b - 1e-6 * (1.0 + b) {
                continue;
            }
        }
        let exact = (0..m)
            .filter(|e| mask & (1 << e) != 0)
            .fold(RootSum::additive_zero(), |acc, e| {
                acc.plus(&g.length::<RootSum>(e))
            });
        if best
            .as_ref()
            .is_none_or(|(b, _, _)| exact.compare(b) == Ordering::Greater)
        {
            best = Some((exact, approx, mask));
        }
    }
    let (ink, _, mask) = best.expect("the empty set is feasible");
    Ok((ink, (0..m).map(|e| mask & (1 << e) != 0).collect()))
}
