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

//! Suitable and superb edges, conditional fans and iterated Vizing chains.
//!
//! Everything here starts from an uncoloured edge `e`, an endpoint `x` whose
//! fan is not augmenting, and the alternating path `P = P_c(x, e)` coloured
//! `α/β`. Positions along `P` are 1-based: `i(f) = t` when `f` is the `t`-th
//! edge of `P`. `c_f` is the shift of `c` along the Vizing chain up to and
//! including `f`.
//!
//! The public functions follow the definitions literally. The engine and the
//! auditor use [`Scanner`], which walks `P` once, extends `c_f` one edge at a
//! time as an [`Overlay`], and stops alternating-path walks as soon as their
//! outcome is known.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::chains::{
    self, build_fan, compare_paths, first_avoiding, walk, AlternatingPath, PathComparison, Probe,
};
use crate::colouring::{classify_chain, Chain, ChainStatus, Colours, Overlay, PartialColouring};
use crate::error::ChainError;
use crate::multigraph::{EdgeId, Multigraph};
use crate::palette::{Colour, ColourSet};

/// A suitable edge `f` of `P_c(x, e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuitableEdge {
    pub edge: EdgeId,
    /// `i(f)`, the 1-based position of `f` in `P_c(x, e)`.
    pub position: usize,
    /// `y`, the endpoint of `f` farther along the path.
    pub far_vertex: usize,
    /// `z`, the endpoint of `f` nearer the start of the path.
    pub near_vertex: usize,
}

/// Why a conditional fan stopped growing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanStop {
    /// `α` or `β` is missing at the last far endpoint.
    PathColourMissing,
    /// No further edge at the centre carries the next colour, or that edge is
    /// already in the fan.
    Exhausted,
}

/// `F_c(x, e ↝ f)`, the maximal `α/β`-conditional fan around `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalFan {
    pub centre: usize,
    pub edges: Chain,
    /// `u_i`, the endpoint of `g_i` other than the centre.
    pub far_endpoints: Vec<usize>,
    /// Colours of `g_1, …, g_m`.
    pub colours: Vec<Colour>,
    /// The smallest colour available at the last step.
    pub last_available: Colour,
    pub stop: FanStop,
}

impl ConditionalFan {
    /// `m`, the index of the last edge.
    pub fn last_index(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn last_far_endpoint(&self) -> usize {
        *self
            .far_endpoints
            .last()
            .expect("a fan has at least one edge")
    }
}

/// The type of a suitable edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuitableType {
    /// `V_{i(f)-1} ⌢ F_c(x, e ↝ f)` is augmenting.
    Type0,
    /// Not Type 0 and `β ∈ m_c(u_m)`.
    TypeI,
    /// Neither; `δ = min m_c(y)`, `ε` is the smallest colour available at
    /// the last step, and `ε = c(g_{i+1})` for `i = repeat_index < m`.
    TypeII {
        delta: Colour,
        epsilon: Colour,
        repeat_index: usize,
    },
}

/// `W_c(x, e ↝ f)` for a superb edge `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedChain {
    pub suitable: SuitableEdge,
    pub kind: SuitableType,
    pub alpha: Colour,
    pub beta: Colour,
    /// `V_c(x, e)_{i(f)-1}`: the Vizing chain up to, but excluding, `f`.
    pub first_segment: Vec<EdgeId>,
    /// The conditional fan, or for Type II its prefix through `g_j`.
    pub fan_segment: Vec<EdgeId>,
    /// The second critical index `j` (Types I and II).
    pub second_critical_index: Option<usize>,
    /// `P_c(x, e ↝ f)`; absent for Type 0.
    pub second_path: Option<AlternatingPath>,
}

impl IteratedChain {
    pub fn chain(&self) -> Chain {
        let mut edges = self.first_segment.clone();
        edges.extend_from_slice(&self.fan_segment);
        if let Some(p) = &self.second_path {
            edges.extend_from_slice(&p.edges);
        }
        Chain::from_vec(edges)
    }

    /// `|P_c(x, e ↝ f)|`.
    pub fn second_path_len(&self) -> usize {
        self.second_path.as_ref().map_or(0, |p| p.len())
    }

    /// Colours appearing on `P_c(x, e ↝ f)`.
    pub fn second_path_colours(&self) -> ColourSet {
        path_colours(
            self.second_path.as_ref().map(|p| (p.alpha, p.beta)),
            self.second_path_len(),
        )
    }
}

fn path_colours(colours: Option<(Colour, Colour)>, len: usize) -> ColourSet {
    match (colours, len) {
        (None, _) | (_, 0) => ColourSet::EMPTY,
        (Some((a, _)), 1) => ColourSet::EMPTY.with(a),
        (Some((a, b)), _) => ColourSet::EMPTY.with(a).with(b),
    }
}

/// Builds the conditional fan at `y` starting with `f = {y, z}`.
pub(crate) fn build_conditional_fan<C: Colours + ?Sized>(
    c: &C,
    y: usize,
    f: EdgeId,
    alpha: Colour,
    beta: Colour,
) -> ConditionalFan {
    let g = c.graph();
    let mut edges = alloc::vec![f];
    let mut far = alloc::vec![g.other(f, y).expect("y is an endpoint of f")];
    let mut colours: Vec<Colour> = Vec::new();
    let (last_available, stop) = loop {
        let i = edges.len() - 1;
        let u = far[i];
        let missing = c.missing(u);
        let used_here: ColourSet = (0..i)
            .filter(|&j| far[j] == u)
            .map(|j| colours[j])
            .collect();
        let delta = missing
            .difference(used_here)
            .min()
            .expect("some colour is always available");
        if missing.contains(alpha) || missing.contains(beta) {
            break (delta, FanStop::PathColourMissing);
        }
        match c.edge_at(y, delta) {
            Some(h) if !edges.contains(&h) => {
                far.push(g.other(h, y).expect("incident"));
                edges.push(h);
                colours.push(delta);
            }
            _ => break (delta, FanStop::Exhausted),
        }
    };
    ConditionalFan {
        centre: y,
        edges: Chain::from_vec(edges),
        far_endpoints: far,
        colours,
        last_available,
        stop,
    }
}

/// The Vizing chain of `(x, e)` with its path and the vertices near `e`.
pub(crate) struct Context<'a, C: Colours + ?Sized> {
    pub c: &'a C,
    pub probe: Probe,
    /// Vertices within distance 3 of an endpoint of `e`.
    near_e: BTreeMap<usize, usize>,
}

impl<'a, C: Colours + ?Sized> Context<'a, C> {
    /// Requires the fan of `(x, e)` not to be augmenting. The path is walked
    /// for at most `cap` edges.
    pub fn new(c: &'a C, x: usize, e: EdgeId, cap: usize) -> Option<Self> {
        let probe = chains::probe(c, x, e, cap);
        Self::from_probe(c, e, probe)
    }

    pub fn from_probe(c: &'a C, e: EdgeId, probe: Probe) -> Option<Self> {
        probe.route.as_ref()?;
        let near_e = c.graph().vertex_ball(e, 3);
        Some(Context { c, probe, near_e })
    }

    pub fn alpha(&self) -> Colour {
        self.route().alpha
    }

    pub fn beta(&self) -> Colour {
        self.route().beta
    }

    fn route(&self) -> &chains::Route {
        self.probe.route.as_ref().expect("context has a route")
    }

    pub fn path(&self) -> &[EdgeId] {
        &self.route().walk.edges
    }

    pub fn path_complete(&self) -> bool {
        self.route().walk.complete
    }

    /// The suitable edge at 0-based path index `t`, if it is one. Returns
    /// `None` when `t` is the last walked edge of a truncated walk.
    pub fn suitable_at(&self, t: usize) -> Option<SuitableEdge> {
        let w = &self.route().walk;
        if t + 1 >= w.edges.len() {
            return None;
        }
        let f = w.edges[t];
        if self.c.colour(f) != Some(self.alpha()) {
            return None;
        }
        let (z, y) = (w.vertices[t], w.vertices[t + 1]);
        if self.near_e.contains_key(&z) || self.near_e.contains_key(&y) {
            return None;
        }
        Some(SuitableEdge {
            edge: f,
            position: t + 1,
            far_vertex: y,
            near_vertex: z,
        })
    }

    /// `V_c(x, e)_{i(f)-1}`.
    pub fn first_segment(&self, s: &SuitableEdge) -> Vec<EdgeId> {
        let mut v = self.probe.fan_prefix().to_vec();
        v.extend_from_slice(&self.path()[..s.position - 1]);
        v
    }

    /// `c_f` as an overlay on `c`, built from scratch.
    pub fn shifted_to(&self, s: &SuitableEdge) -> Overlay<'a, C> {
        let mut o = Overlay::new(self.c);
        let mut chain = self.first_segment(s);
        chain.push(s.edge);
        o.shift(&chain);
        o
    }
}

/// Whether a suitable edge is superb, as far as the caller asked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Verdict {
    Superb,
    NotSuperb,
    /// `P_c(x, e ↝ f)` has at least the requested number of edges; whether
    /// `f` is superb was not decided.
    Long,
}

/// Second-path data for Types I and II.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SecondRoute {
    pub index: usize,
    pub start: usize,
    pub first: Colour,
    pub second: Colour,
    /// Known length when the walk was completed.
    pub len: Option<usize>,
}

pub(crate) struct Analysis {
    pub suitable: SuitableEdge,
    pub fan: ConditionalFan,
    pub kind: SuitableType,
    pub route: Option<SecondRoute>,
    pub verdict: Verdict,
}

impl Analysis {
    pub fn second_len(&self) -> Option<usize> {
        match self.kind {
            SuitableType::Type0 => Some(0),
            _ => self.route.and_then(|r| r.len),
        }
    }

    pub fn second_colours(&self) -> Option<ColourSet> {
        let len = self.second_len()?;
        Some(path_colours(self.route.map(|r| (r.first, r.second)), len))
    }
}

/// Analyses one suitable edge given `cf = c_f`.
///
/// With `short = Some(b)`, the superb test is skipped (verdict `Long`) when
/// `P_c(x, e ↝ f)` has at least `b` edges.
pub(crate) fn analyse<C: Colours + ?Sized>(
    ctx: &Context<'_, C>,
    cf: &mut Overlay<'_, C>,
    s: SuitableEdge,
    short: Option<usize>,
) -> Analysis {
    let c = ctx.c;
    let (alpha, beta) = (ctx.alpha(), ctx.beta());
    let y = s.far_vertex;
    let fan = build_conditional_fan(c, y, s.edge, alpha, beta);
    let um = fan.last_far_endpoint();

    let mark = cf.mark();
    cf.shift(&fan.edges);
    let type0 = !cf.missing(y).intersection(cf.missing(um)).is_empty();
    cf.rollback(mark);

    let cap = short.map_or(usize::MAX, |b| b.saturating_sub(1));
    if type0 {
        let verdict = if short == Some(0) {
            Verdict::Long
        } else {
            Verdict::Superb
        };
        return Analysis {
            suitable: s,
            fan,
            kind: SuitableType::Type0,
            route: None,
            verdict,
        };
    }
    if c.missing(um).contains(beta) {
        let m = fan.last_index();
        let mut route = SecondRoute {
            index: m,
            start: um,
            first: alpha,
            second: beta,
            len: None,
        };
        let verdict = match compare_paths(c, &*cf, um, alpha, beta, cap) {
            _ if !cf.missing(um).contains(beta) => Verdict::NotSuperb,
            PathComparison::Equal { len } => {
                route.len = Some(len);
                if short.is_some_and(|b| len >= b) {
                    Verdict::Long
                } else {
                    Verdict::Superb
                }
            }
            PathComparison::Different => Verdict::NotSuperb,
            PathComparison::TooLong => Verdict::Long,
        };
        return Analysis {
            suitable: s,
            fan,
            kind: SuitableType::TypeI,
            route: Some(route),
            verdict,
        };
    }

    let delta = c.missing(y).min().expect("|m_c(y)| ≥ π ≥ 1");
    let epsilon = fan.last_available;
    let i = fan
        .colours
        .iter()
        .position(|&k| k == epsilon)
        .expect("a Type II conditional fan repeats its last available colour");
    let kind = SuitableType::TypeII {
        delta,
        epsilon,
        repeat_index: i,
    };
    let m = fan.last_index();
    let (ui, um) = (fan.far_endpoints[i], fan.far_endpoints[m]);
    let start = first_avoiding(c, ui, um, y, delta, epsilon);
    let (index, other) = if start == ui { (i, um) } else { (m, ui) };
    let mut route = SecondRoute {
        index,
        start,
        first: delta,
        second: epsilon,
        len: None,
    };
    let stable_at = |cf: &Overlay<'_, C>, u: usize| cf.missing(u).contains(epsilon);
    let verdict = if !stable_at(cf, ui) || !stable_at(cf, um) {
        Verdict::NotSuperb
    } else {
        match compare_paths(c, &*cf, start, delta, epsilon, cap) {
            PathComparison::Equal { len } => {
                route.len = Some(len);
                if short.is_some_and(|b| len >= b) {
                    Verdict::Long
                } else if matches!(
                    compare_paths(c, &*cf, other, delta, epsilon, usize::MAX),
                    PathComparison::Equal { .. }
                ) {
                    Verdict::Superb
                } else {
                    Verdict::NotSuperb
                }
            }
            PathComparison::Different => Verdict::NotSuperb,
            PathComparison::TooLong => Verdict::Long,
        }
    };
    Analysis {
        suitable: s,
        fan,
        kind,
        route: Some(route),
        verdict,
    }
}

/// Assembles `W_c(x, e ↝ f)` for an analysed superb edge.
pub(crate) fn assemble<C: Colours + ?Sized>(ctx: &Context<'_, C>, a: &Analysis) -> IteratedChain {
    let (fan_segment, second_critical_index, second_path) = match a.route {
        None => (a.fan.edges.to_vec(), None, None),
        Some(r) => {
            let p =
                walk(ctx.c, r.start, r.first, r.second, usize::MAX).into_path(r.first, r.second);
            (
                a.fan.edges.prefix(r.index + 1).to_vec(),
                Some(r.index),
                Some(p),
            )
        }
    };
    IteratedChain {
        suitable: a.suitable,
        kind: a.kind,
        alpha: ctx.alpha(),
        beta: ctx.beta(),
        first_segment: ctx.first_segment(&a.suitable),
        fan_segment,
        second_critical_index,
        second_path,
    }
}

/// Walks the suitable edges of `P_c(x, e)` in path order, keeping `c_f`
/// up to date incrementally.
pub(crate) struct Scanner<'a, C: Colours + ?Sized> {
    pub ctx: Context<'a, C>,
    cf: Overlay<'a, C>,
    /// The edge currently left uncoloured by `cf`.
    tail: EdgeId,
    /// Number of path edges included in `cf`.
    upto: usize,
    next: usize,
    limit: usize,
}

impl<'a, C: Colours + ?Sized> Scanner<'a, C> {
    /// Visits suitable edges with `i(f) ≤ limit`. The context's walk must
    /// cover at least `limit + 1` edges or be complete.
    pub fn new(ctx: Context<'a, C>, limit: usize) -> Self {
        let mut cf = Overlay::new(ctx.c);
        let prefix = ctx.probe.fan_prefix();
        cf.shift(prefix);
        let tail = *prefix.last().expect("a fan prefix is non-empty");
        Scanner {
            ctx,
            cf,
            tail,
            upto: 0,
            next: 0,
            limit,
        }
    }

    fn extend_to(&mut self, t: usize) {
        while self.upto <= t {
            let h = self.ctx.path()[self.upto];
            let col = self.cf.colour(h);
            self.cf.set(self.tail, col);
            self.cf.set(h, None);
            self.tail = h;
            self.upto += 1;
        }
    }

    /// The next suitable edge, analysed with the given length threshold.
    pub fn next_analysis(&mut self, short: Option<usize>) -> Option<Analysis> {
        let n = self.ctx.path().len().min(self.limit);
        while self.next < n {
            let t = self.next;
            self.next += 1;
            if let Some(s) = self.ctx.suitable_at(t) {
                self.extend_to(t);
                return Some(analyse(&self.ctx, &mut self.cf, s, short));
            }
        }
        None
    }
}

/// Resolves `(x, e, f)` to its context and suitable-edge data.
fn locate<'a, C: Colours + ?Sized>(
    c: &'a C,
    x: usize,
    e: EdgeId,
    f: EdgeId,
) -> Result<(Context<'a, C>, SuitableEdge), ChainError> {
    let ctx = context(c, x, e)?;
    let t = ctx
        .path()
        .iter()
        .position(|&h| h == f)
        .ok_or(ChainError::NotSuitable(f))?;
    let s = ctx.suitable_at(t).ok_or(ChainError::NotSuitable(f))?;
    Ok((ctx, s))
}

fn context<C: Colours + ?Sized>(c: &C, x: usize, e: EdgeId) -> Result<Context<'_, C>, ChainError> {
    chains::max_fan(c, x, e)?;
    Context::new(c, x, e, usize::MAX).ok_or(ChainError::FanAugmenting)
}

/// Suitable edges among the first `limit` edges of `P_c(x, e)`, in path
/// order.
pub fn suitable_edges<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    limit: usize,
) -> Result<Vec<SuitableEdge>, ChainError> {
    let ctx = context(c, x, e)?;
    let n = ctx.path().len().min(limit);
    Ok((0..n).filter_map(|t| ctx.suitable_at(t)).collect())
}

/// `c_f`, the shift of `c` along `V_c(x, e)` up to and including `f`.
pub fn shift_to_suitable<'g>(
    c: &PartialColouring<'g>,
    x: usize,
    e: EdgeId,
    f: EdgeId,
) -> Result<PartialColouring<'g>, ChainError> {
    let (ctx, s) = locate(c, x, e, f)?;
    let mut chain = ctx.first_segment(&s);
    chain.push(f);
    crate::colouring::shift_along(c, &chain)
}

/// `F_c(x, e ↝ f)`.
pub fn conditional_fan<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    f: EdgeId,
) -> Result<ConditionalFan, ChainError> {
    let (ctx, s) = locate(c, x, e, f)?;
    Ok(build_conditional_fan(
        c,
        s.far_vertex,
        f,
        ctx.alpha(),
        ctx.beta(),
    ))
}

/// `true` iff `F_c(x, e ↝ f)` is a prefix of the ordinary fan `F_{c_f}(y, f)`
/// built with `β` ranked above every other colour.
pub fn check_shadow_fan<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    f: EdgeId,
) -> Result<bool, ChainError> {
    let (ctx, s) = locate(c, x, e, f)?;
    let cond = build_conditional_fan(c, s.far_vertex, f, ctx.alpha(), ctx.beta());
    let cf = ctx.shifted_to(&s);
    let shadow = build_fan(&cf, s.far_vertex, f, Some(ctx.beta()));
    Ok(shadow.edges.starts_with(&cond.edges))
}

/// Type of a suitable edge, with Type 0 decided by classifying the chain
/// `V_{i(f)-1} ⌢ F_c(x, e ↝ f)` directly.
pub fn classify_suitable<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    f: EdgeId,
) -> Result<SuitableType, ChainError> {
    let (ctx, s) = locate(c, x, e, f)?;
    Ok(classify_located(&ctx, &s))
}

fn classify_located<C: Colours + ?Sized>(ctx: &Context<'_, C>, s: &SuitableEdge) -> SuitableType {
    let c = ctx.c;
    let fan = build_conditional_fan(c, s.far_vertex, s.edge, ctx.alpha(), ctx.beta());
    let mut chain = ctx.first_segment(s);
    chain.extend_from_slice(&fan.edges);
    if classify_chain(c, &chain) == ChainStatus::Augmenting {
        return SuitableType::Type0;
    }
    if c.missing(fan.last_far_endpoint()).contains(ctx.beta()) {
        return SuitableType::TypeI;
    }
    let delta = c.missing(s.far_vertex).min().expect("non-empty");
    let epsilon = fan.last_available;
    let repeat_index = fan
        .colours
        .iter()
        .position(|&k| k == epsilon)
        .expect("a Type II conditional fan repeats its last available colour");
    SuitableType::TypeII {
        delta,
        epsilon,
        repeat_index,
    }
}

fn same_path<C: Colours + ?Sized, D: Colours + ?Sized>(
    c: &C,
    d: &D,
    u: usize,
    a: Colour,
    b: Colour,
) -> bool {
    match (
        chains::alternating_path(c, u, a, b),
        chains::alternating_path(d, u, a, b),
    ) {
        (Ok(p), Ok(q)) => p.edges == q.edges,
        _ => false,
    }
}

/// Whether a suitable edge is superb, by comparing full alternating paths
/// under `c` and `c_f`.
pub fn is_superb<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    f: EdgeId,
) -> Result<bool, ChainError> {
    let (ctx, s) = locate(c, x, e, f)?;
    Ok(superb_located(&ctx, &s))
}

fn superb_located<C: Colours + ?Sized>(ctx: &Context<'_, C>, s: &SuitableEdge) -> bool {
    let c = ctx.c;
    let fan = build_conditional_fan(c, s.far_vertex, s.edge, ctx.alpha(), ctx.beta());
    let cf = ctx.shifted_to(s);
    match classify_located(ctx, s) {
        SuitableType::Type0 => true,
        SuitableType::TypeI => same_path(c, &cf, fan.last_far_endpoint(), ctx.alpha(), ctx.beta()),
        SuitableType::TypeII {
            delta,
            epsilon,
            repeat_index,
        } => {
            same_path(c, &cf, fan.far_endpoints[repeat_index], delta, epsilon)
                && same_path(c, &cf, fan.last_far_endpoint(), delta, epsilon)
        }
    }
}

/// `W_c(x, e ↝ f)`. Requires `f` to be superb.
pub fn iterated_chain<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    f: EdgeId,
) -> Result<IteratedChain, ChainError> {
    let (ctx, s) = locate(c, x, e, f)?;
    if !superb_located(&ctx, &s) {
        return Err(ChainError::NotSuperb(f));
    }
    let mut cf = ctx.shifted_to(&s);
    let a = analyse(&ctx, &mut cf, s, None);
    debug_assert_eq!(a.verdict, Verdict::Superb);
    Ok(assemble(&ctx, &a))
}

/// `W_c(x, e ↝ f)` built from full alternating paths under `c` and `c_f`,
/// or `None` when `f` is not superb.
pub(crate) fn reference_chain<C: Colours + ?Sized>(
    ctx: &Context<'_, C>,
    s: &SuitableEdge,
) -> Option<IteratedChain> {
    let c = ctx.c;
    let (alpha, beta) = (ctx.alpha(), ctx.beta());
    let fan = build_conditional_fan(c, s.far_vertex, s.edge, alpha, beta);
    let cf = ctx.shifted_to(s);
    let kind = classify_located(ctx, s);
    let (fan_segment, second_critical_index, second_path) = match kind {
        SuitableType::Type0 => (fan.edges.to_vec(), None, None),
        SuitableType::TypeI => {
            let um = fan.last_far_endpoint();
            let p = chains::alternating_path(c, um, alpha, beta).ok()?;
            let q = chains::alternating_path(&cf, um, alpha, beta).ok()?;
            if p.edges != q.edges {
                return None;
            }
            (fan.edges.to_vec(), Some(fan.last_index()), Some(p))
        }
        SuitableType::TypeII {
            delta,
            epsilon,
            repeat_index: i,
        } => {
            let m = fan.last_index();
            let mut paths = Vec::new();
            for u in [fan.far_endpoints[i], fan.far_endpoints[m]] {
                let p = chains::alternating_path(c, u, delta, epsilon).ok()?;
                let q = chains::alternating_path(&cf, u, delta, epsilon).ok()?;
                if p.edges != q.edges {
                    return None;
                }
                paths.push(p);
            }
            let pm = paths.pop().expect("two paths");
            let pi = paths.pop().expect("two paths");
            let (j, p) = if pi.uses_vertex(c, s.far_vertex) {
                (m, pm)
            } else {
                (i, pi)
            };
            (fan.edges.prefix(j + 1).to_vec(), Some(j), Some(p))
        }
    };
    Some(IteratedChain {
        suitable: *s,
        kind,
        alpha,
        beta,
        first_segment: ctx.first_segment(s),
        fan_segment,
        second_critical_index,
        second_path,
    })
}

/// Endpoints of `P_c(x, e)` and `P_c(x, β/α)`: the far endpoints of a
/// suitable Type I edge that is not superb lie next to one of them.
pub fn type_one_exception_vertices<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
) -> Result<[usize; 2], ChainError> {
    let ctx = context(c, x, e)?;
    let path_end = ctx.probe.route.as_ref().expect("route").walk.last_vertex();
    let reverse = chains::alternating_path(c, x, ctx.beta(), ctx.alpha())?;
    Ok([path_end, reverse.last_vertex])
}

/// `true` iff `u` is an endpoint of some edge at `v`, or `u = v`.
pub fn within_distance_one(g: &Multigraph, u: usize, v: usize) -> bool {
    u == v || g.incident(v).iter().any(|&h| g.other(h, v) == Some(u))
}
