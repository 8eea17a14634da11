// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Counting graphs between uncoloured and coloured edges, and the bounds they
//! satisfy.
//!
//! Everything is recomputed from the colouring alone. Fractions and bounds are
//! exact rationals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chains;
use crate::colouring::{is_proper, Colours, PartialColouring};
use crate::error::ChainError;
use crate::executor::Executor;
use crate::iterated::{reference_chain, Context, Scanner, Verdict};
use crate::multigraph::EdgeId;
use crate::palette::{Colour, ColourSet};

/// Plain Vizing chains or iterated ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Simple,
    Iterated,
}

/// `H_c` (simple) or `H_c^↝` (iterated).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditGraph {
    pub kind: Mode,
    /// Coloured neighbours of each uncoloured edge.
    pub adjacency: BTreeMap<EdgeId, BTreeSet<EdgeId>>,
    /// Degree of each coloured edge with at least one neighbour.
    pub reverse_degrees: BTreeMap<EdgeId, usize>,
}

impl AuditGraph {
    pub fn degree_of_uncoloured(&self, e: EdgeId) -> usize {
        self.adjacency.get(&e).map_or(0, |s| s.len())
    }

    pub fn degree_of_coloured(&self, f: EdgeId) -> usize {
        self.reverse_degrees.get(&f).copied().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count() == 0
    }
}

/// Superb edges among the first `limit` edges of `P_c(x, e)` with their
/// iterated chains, built from the definitions. `None` when the fan of
/// `(x, e)` is augmenting.
pub fn superb_chains<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    limit: usize,
) -> Option<Vec<crate::iterated::IteratedChain>> {
    let ctx = Context::new(c, x, e, limit.saturating_add(1))?;
    let n = ctx.path().len().min(limit);
    Some(
        (0..n)
            .filter_map(|t| ctx.suitable_at(t))
            .filter_map(|s| reference_chain(&ctx, &s))
            .collect(),
    )
}

fn neighbours<C: Colours + ?Sized>(c: &C, e: EdgeId, kind: Mode, l_cap: usize) -> BTreeSet<EdgeId> {
    let g = c.graph();
    let mut out = BTreeSet::new();
    for x in g.endpoints(e).as_array() {
        match kind {
            Mode::Simple => {
                let v = chains::vizing_chain(c, x, e).expect("e is uncoloured");
                out.extend(v.chain().iter().copied().filter(|&f| c.colour(f).is_some()));
            }
            Mode::Iterated => {
                for w in superb_chains(c, x, e, l_cap).unwrap_or_default() {
                    out.extend(w.chain().iter().copied().filter(|&f| c.colour(f).is_some()));
                }
            }
        }
    }
    out
}

/// Builds the counting graph of `c`. For the iterated kind only superb edges
/// `f` with `i(f) ≤ l_cap` are used.
pub fn build_audit_graph<C: Colours + Sync + ?Sized, E: Executor>(
    c: &C,
    kind: Mode,
    l_cap: usize,
    exec: &E,
) -> AuditGraph {
    let g = c.graph();
    let uncoloured: Vec<EdgeId> = g.edge_ids().filter(|&e| c.colour(e).is_none()).collect();
    let rows = exec.map_edges(&uncoloured, |e| neighbours(c, e, kind, l_cap));
    let mut adjacency = BTreeMap::new();
    let mut reverse_degrees = BTreeMap::new();
    for (e, row) in uncoloured.into_iter().zip(rows) {
        for &f in &row {
            *reverse_degrees.entry(f).or_insert(0) += 1;
        }
        if !row.is_empty() {
            adjacency.insert(e, row);
        }
    }
    AuditGraph {
        kind,
        adjacency,
        reverse_degrees,
    }
}

/// Outcome of a bound check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// The bound holds for every possible value (it is at least 1 for a
    /// fraction, or at most 0 for a count).
    VacuousPass,
    /// The hypotheses of the bound are not met.
    NotApplicable,
}

impl Outcome {
    pub fn passed(self) -> bool {
        matches!(self, Outcome::Pass | Outcome::VacuousPass)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::VacuousPass => "vacuous-pass",
            Outcome::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub max_degree: usize,
    pub bound: u128,
    /// A coloured edge attaining `max_degree`, smallest index first.
    pub worst: Option<EdgeId>,
    pub pass: bool,
}

/// `(Δ + π)^4` for the simple graph, `(Δ + π)^9` for the iterated one.
pub fn degree_bound(kind: Mode, delta: u32, pi: u32) -> u128 {
    let k = u128::from(delta + pi);
    match kind {
        Mode::Simple => k.pow(4),
        Mode::Iterated => k.pow(9),
    }
}

/// Compares every coloured-edge degree against [`degree_bound`].
pub fn check_degree_bounds(ag: &AuditGraph, delta: u32, pi: u32) -> DegreeCheck {
    let bound = degree_bound(ag.kind, delta, pi);
    let mut max_degree = 0;
    let mut worst = None;
    for (&f, &d) in &ag.reverse_degrees {
        if d > max_degree {
            max_degree = d;
            worst = Some(f);
        }
    }
    DegreeCheck {
        max_degree,
        bound,
        worst,
        pass: max_degree as u128 <= bound,
    }
}

/// How an uncoloured edge can still be improved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImprovementKind {
    AugmentingFan,
    /// `|P_c(x, e)| < L`.
    ShortPath {
        len: usize,
    },
    /// A superb `f` with `i(f) ≤ L` and `|P_c(x, e ↝ f)| < L`.
    ShortSecondPath {
        suitable: EdgeId,
        len: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Improvement {
    pub edge: EdgeId,
    pub vertex: usize,
    pub kind: ImprovementKind,
}

fn improvement_at<C: Colours + ?Sized>(
    c: &C,
    e: EdgeId,
    x: usize,
    l: usize,
    mode: Mode,
) -> Option<ImprovementKind> {
    let fan = chains::max_fan(c, x, e).expect("e is uncoloured");
    if fan.augmenting {
        return Some(ImprovementKind::AugmentingFan);
    }
    let ctx = Context::new(c, x, e, l.saturating_add(1)).expect("fan is not augmenting");
    if ctx.path_complete() && ctx.path().len() < l {
        return Some(ImprovementKind::ShortPath {
            len: ctx.path().len(),
        });
    }
    if mode == Mode::Iterated {
        for t in 0..ctx.path().len().min(l) {
            let Some(s) = ctx.suitable_at(t) else {
                continue;
            };
            if let Some(w) = reference_chain(&ctx, &s) {
                if w.second_path_len() < l {
                    return Some(ImprovementKind::ShortSecondPath {
                        suitable: s.edge,
                        len: w.second_path_len(),
                    });
                }
            }
        }
    }
    None
}

/// The first `(e, x)`, in index order, at which `c` can be improved in `L`
/// steps.
pub fn find_improvement<C: Colours + ?Sized>(c: &C, l: usize, mode: Mode) -> Option<Improvement> {
    let g = c.graph();
    g.edge_ids()
        .filter(|&e| c.colour(e).is_none())
        .find_map(|e| {
            g.endpoints(e).as_array().into_iter().find_map(|x| {
                improvement_at(c, e, x, l, mode).map(|kind| Improvement {
                    edge: e,
                    vertex: x,
                    kind,
                })
            })
        })
}

/// `true` iff `c` cannot be improved (or, in iterated mode, iteratively
/// improved) in `L` steps.
pub fn check_unimprovable<C: Colours + ?Sized>(c: &C, l: usize, mode: Mode) -> bool {
    find_improvement(c, l, mode).is_none()
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn pow(base: u32, exp: u32) -> BigRational {
    int(BigInt::from(base).pow(exp))
}

/// `|U_c| / |E|`, with `0` for the empty graph.
pub fn uncoloured_fraction(c: &PartialColouring<'_>) -> BigRational {
    let m = c.graph().edge_count();
    if m == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(c.uncoloured_count()), BigInt::from(m))
    }
}

/// `(Δ+π)^4 / L` in simple mode and `(Δ+π)^15 / L²` in iterated mode.
pub fn fraction_bound(mode: Mode, delta: u32, pi: u32, l: usize) -> BigRational {
    let k = delta + pi;
    match mode {
        Mode::Simple => pow(k, 4) / int(l),
        Mode::Iterated => pow(k, 15) / (int(l) * int(l)),
    }
}

/// Whether the iterated fraction bound applies: `L > 10(Δ+π)^6`.
pub fn iterated_threshold_met(delta: u32, pi: u32, l: usize) -> bool {
    int(l) > int(10) * pow(delta + pi, 6)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionCheck {
    pub fraction: BigRational,
    pub bound: BigRational,
    pub outcome: Outcome,
}

fn judge_fraction(fraction: &BigRational, bound: &BigRational) -> Outcome {
    if *bound >= BigRational::one() {
        Outcome::VacuousPass
    } else if fraction <= bound {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// Compares `|U_c| / |E|` against [`fraction_bound`]. The bound is asserted
/// only when `c` cannot be improved in `L` steps for the mode and, in
/// iterated mode, `L > 10(Δ+π)^6`.
pub fn uncoloured_fraction_bounds(c: &PartialColouring<'_>, l: usize, mode: Mode) -> FractionCheck {
    let g = c.graph();
    let applicable = (mode == Mode::Simple || iterated_threshold_met(g.delta(), g.pi(), l))
        && check_unimprovable(c, l, mode);
    fraction_check_with(c, l, mode, applicable)
}

fn fraction_check_with(
    c: &PartialColouring<'_>,
    l: usize,
    mode: Mode,
    applicable: bool,
) -> FractionCheck {
    let g = c.graph();
    let fraction = uncoloured_fraction(c);
    let bound = fraction_bound(mode, g.delta(), g.pi(), l);
    let outcome = if applicable {
        judge_fraction(&fraction, &bound)
    } else {
        Outcome::NotApplicable
    };
    FractionCheck {
        fraction,
        bound,
        outcome,
    }
}

/// `(1 / (3(Δ+π)²)) (L/2 − Δ⁵ − 1) − 2Δ³`.
pub fn superb_count_bound(delta: u32, pi: u32, l: usize) -> BigRational {
    let k = delta + pi;
    let half = int(l) / int(2);
    (half - pow(delta, 5) - int(1)) / (int(3) * pow(k, 2)) - int(2) * pow(delta, 3)
}

/// `(L / 2Δ) · superb_count_bound`, the lower bound on `deg_{H_c^↝}(e)` at
/// iteratively unimprovable colourings.
pub fn iterated_degree_lower_bound(delta: u32, pi: u32, l: usize) -> BigRational {
    if delta == 0 {
        return BigRational::zero();
    }
    int(l) / int(2 * delta) * superb_count_bound(delta, pi, l)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperbCount {
    pub edge: EdgeId,
    pub vertex: usize,
    pub gamma: Colour,
    pub theta: Colour,
    /// Superb edges whose second path uses only colours from `{γ, θ}`.
    pub count: usize,
    pub suitable: usize,
    pub superb: usize,
    pub bound: BigRational,
    pub outcome: Outcome,
}

/// Superb edges among the first `L` edges of `P_c(x, e)` bucketed by the
/// colours of their second paths. Requires `|P_c(x, e)| ≥ L`.
pub fn superb_count_check<C: Colours + ?Sized>(
    c: &C,
    e: EdgeId,
    x: usize,
    l: usize,
) -> Result<SuperbCount, ChainError> {
    let g = c.graph();
    let fan = chains::max_fan(c, x, e)?;
    if fan.augmenting {
        return Err(ChainError::FanAugmenting);
    }
    let ctx = Context::new(c, x, e, l.saturating_add(1)).expect("fan is not augmenting");
    let len = ctx.path().len();
    if len < l {
        return Err(ChainError::PathTooShort {
            length: len,
            required: l,
        });
    }
    let mut scanner = Scanner::new(ctx, l);
    let mut sets: BTreeMap<ColourSet, usize> = BTreeMap::new();
    let (mut suitable, mut superb) = (0, 0);
    while let Some(a) = scanner.next_analysis(None) {
        suitable += 1;
        if a.verdict == Verdict::Superb {
            superb += 1;
            let colours = a
                .second_colours()
                .expect("superb edges have a complete second path");
            *sets.entry(colours).or_insert(0) += 1;
        }
    }
    let palette: Vec<Colour> = ColourSet::palette(g.palette_size()).iter().collect();
    let mut best = (palette[0], palette[palette.len().min(2) - 1], 0usize);
    for (i, &gamma) in palette.iter().enumerate() {
        for &theta in &palette[i + 1..] {
            let pair = ColourSet::EMPTY.with(gamma).with(theta);
            let count = sets
                .iter()
                .filter(|(s, _)| s.difference(pair).is_empty())
                .map(|(_, n)| n)
                .sum();
            if count > best.2 {
                best = (gamma, theta, count);
            }
        }
    }
    let bound = superb_count_bound(g.delta(), g.pi(), l);
    let outcome = if !bound.is_positive() {
        Outcome::VacuousPass
    } else if int(best.2 as u64) >= bound {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok(SuperbCount {
        edge: e,
        vertex: x,
        gamma: best.0,
        theta: best.1,
        count: best.2,
        suitable,
        superb,
        bound,
        outcome,
    })
}

/// Positive rational edge weights; `weight(f) / weight(e)` plays the role of
/// the cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWeights {
    weights: Vec<BigRational>,
}

impl EdgeWeights {
    pub fn unit(edge_count: usize) -> Self {
        EdgeWeights {
            weights: vec![BigRational::one(); edge_count],
        }
    }

    /// `None` if some weight is not positive.
    pub fn new(weights: Vec<BigRational>) -> Option<Self> {
        weights
            .iter()
            .all(|w| w.is_positive())
            .then_some(EdgeWeights { weights })
    }

    pub fn weight(&self, e: EdgeId) -> &BigRational {
        &self.weights[e.0]
    }
}

/// `Σ weight(f) / weight(e)` over the edges `f ≠ e` of `V_c(x, e)`.
pub fn weighted_chain_mass<C: Colours + ?Sized>(
    c: &C,
    e: EdgeId,
    x: usize,
    weights: &EdgeWeights,
) -> Result<BigRational, ChainError> {
    let v = chains::vizing_chain(c, x, e)?;
    let base = weights.weight(e);
    Ok(v.chain()
        .iter()
        .filter(|&&f| f != e)
        .map(|&f| weights.weight(f) / base)
        .sum())
}

/// Settings for [`audit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    /// The improvement parameter; without it only properness, the upper
    /// degree bounds and the weighted masses are checked.
    pub l: Option<usize>,
    pub mode: Mode,
    /// Prefix cap for superb edges in `H_c^↝` when `l` is absent.
    pub default_cap: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            l: None,
            mode: Mode::Simple,
            default_cap: 64,
        }
    }
}

/// A lower bound on the degree of every uncoloured edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerDegreeCheck {
    pub min_degree: Option<usize>,
    pub bound: BigRational,
    pub worst: Option<EdgeId>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub edges: usize,
    pub uncoloured: usize,
    pub proper: bool,
    pub palette_respected: bool,
    pub max_deg_simple: usize,
    pub simple_degree: DegreeCheck,
    pub max_deg_iterated: usize,
    pub iterated_degree: DegreeCheck,
    /// Smallest `deg_{H_c}(e)` over uncoloured `e`.
    pub min_uncoloured_deg: Option<usize>,
    pub uncoloured_fraction: BigRational,
    pub unimprovable: Option<bool>,
    pub first_improvement: Option<Improvement>,
    pub fraction_check: Option<FractionCheck>,
    pub lower_degree: Option<LowerDegreeCheck>,
    pub superb_count_checks: Vec<SuperbCount>,
    /// Smallest unit-weight chain mass over uncoloured `e` and `x ∈ e`.
    pub weighted_min_mass: Option<BigRational>,
}

impl AuditReport {
    /// `true` iff no asserted check failed.
    pub fn all_pass(&self) -> bool {
        self.proper
            && self.palette_respected
            && self.simple_degree.pass
            && self.iterated_degree.pass
            && self
                .fraction_check
                .as_ref()
                .is_none_or(|f| f.outcome != Outcome::Fail)
            && self
                .lower_degree
                .as_ref()
                .is_none_or(|d| d.outcome != Outcome::Fail)
            && self
                .superb_count_checks
                .iter()
                .all(|s| s.outcome != Outcome::Fail)
    }
}

fn lower_degree_check(
    ag: &AuditGraph,
    uncoloured: &[EdgeId],
    bound: BigRational,
    applicable: bool,
) -> LowerDegreeCheck {
    let worst = uncoloured
        .iter()
        .copied()
        .min_by_key(|&e| (ag.degree_of_uncoloured(e), e));
    let min_degree = worst.map(|e| ag.degree_of_uncoloured(e));
    let outcome = if !applicable {
        Outcome::NotApplicable
    } else if !bound.is_positive() {
        Outcome::VacuousPass
    } else if min_degree.is_none_or(|d| int(d as u64) >= bound) {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    LowerDegreeCheck {
        min_degree,
        bound,
        worst,
        outcome,
    }
}

/// Runs every check on a colouring.
///
/// The counting graphs, the lower degree bounds, the fraction bound and the
/// superb counts are only meaningful for proper colourings; on an improper one
/// the report records `proper = false` and leaves them empty.
pub fn audit<E: Executor>(c: &PartialColouring<'_>, config: AuditConfig, exec: &E) -> AuditReport {
    let g = c.graph();
    let (delta, pi) = (g.delta(), g.pi());
    let proper = is_proper(c);
    let palette = ColourSet::palette(g.palette_size());
    let palette_respected = c
        .assignment()
        .iter()
        .flatten()
        .all(|&k| palette.contains(k));
    let uncoloured: Vec<EdgeId> = c.uncoloured().collect();
    let empty = |kind| AuditGraph {
        kind,
        adjacency: BTreeMap::new(),
        reverse_degrees: BTreeMap::new(),
    };
    let cap = config.l.unwrap_or(config.default_cap);
    let (simple, iterated) = if proper && palette_respected {
        (
            build_audit_graph(c, Mode::Simple, cap, exec),
            build_audit_graph(c, Mode::Iterated, cap, exec),
        )
    } else {
        (empty(Mode::Simple), empty(Mode::Iterated))
    };
    let simple_degree = check_degree_bounds(&simple, delta, pi);
    let iterated_degree = check_degree_bounds(&iterated, delta, pi);
    let min_uncoloured_deg = uncoloured
        .iter()
        .map(|&e| simple.degree_of_uncoloured(e))
        .min();

    let weights = EdgeWeights::unit(g.edge_count());
    let weighted_min_mass = if proper {
        uncoloured
            .iter()
            .flat_map(|&e| g.endpoints(e).as_array().map(move |x| (e, x)))
            .map(|(e, x)| weighted_chain_mass(c, e, x, &weights).expect("e is uncoloured"))
            .min()
    } else {
        None
    };

    let mut report = AuditReport {
        edges: g.edge_count(),
        uncoloured: uncoloured.len(),
        proper,
        palette_respected,
        max_deg_simple: simple_degree.max_degree,
        simple_degree,
        max_deg_iterated: iterated_degree.max_degree,
        iterated_degree,
        min_uncoloured_deg,
        uncoloured_fraction: uncoloured_fraction(c),
        unimprovable: None,
        first_improvement: None,
        fraction_check: None,
        lower_degree: None,
        superb_count_checks: Vec::new(),
        weighted_min_mass,
    };
    let Some(l) = config.l else { return report };
    if !(proper && palette_respected) {
        return report;
    }
    let improvement = find_improvement(c, l, config.mode);
    let unimprovable = improvement.is_none();
    report.unimprovable = Some(unimprovable);
    report.first_improvement = improvement;
    let applicable =
        unimprovable && (config.mode == Mode::Simple || iterated_threshold_met(delta, pi, l));
    report.fraction_check = Some(fraction_check_with(c, l, config.mode, applicable));
    report.lower_degree = Some(match config.mode {
        Mode::Simple => lower_degree_check(&simple, &uncoloured, int(l as u64), unimprovable),
        Mode::Iterated => lower_degree_check(
            &iterated,
            &uncoloured,
            iterated_degree_lower_bound(delta, pi, l),
            unimprovable,
        ),
    });
    if config.mode == Mode::Iterated {
        for &e in &uncoloured {
            for x in g.endpoints(e).as_array() {
                if let Ok(s) = superb_count_check(c, e, x, l) {
                    report.superb_count_checks.push(s);
                }
            }
        }
    }
    report
}
