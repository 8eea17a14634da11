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

//! Alternating paths, maximal fans and Vizing chains.

use alloc::vec::Vec;

use crate::colouring::{classify_chain, Chain, ChainStatus, Colours, PartialColouring};
use crate::error::ChainError;
use crate::multigraph::EdgeId;
use crate::palette::{Colour, ColourSet};

/// `P_c(x, α/β)`: the maximal path from `x` whose edges alternate `α, β, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    pub start_vertex: usize,
    pub alpha: Colour,
    pub beta: Colour,
    pub edges: Chain,
    pub last_vertex: usize,
}

impl AlternatingPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `true` iff some edge of the path contains `v`.
    pub fn uses_vertex<C: Colours + ?Sized>(&self, c: &C, v: usize) -> bool {
        self.edges.iter().any(|&h| c.graph().contains(h, v))
    }
}

/// A prefix of an alternating path, possibly cut short by a step budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Walk {
    pub edges: Vec<EdgeId>,
    /// `vertices[t]` is the vertex reached after `t` edges.
    pub vertices: Vec<usize>,
    /// The path ended before the budget ran out.
    pub complete: bool,
}

impl Walk {
    pub fn last_vertex(&self) -> usize {
        *self.vertices.last().expect("a walk visits its start")
    }

    pub fn into_path(self, alpha: Colour, beta: Colour) -> AlternatingPath {
        debug_assert!(self.complete);
        AlternatingPath {
            start_vertex: self.vertices[0],
            alpha,
            beta,
            last_vertex: self.last_vertex(),
            edges: Chain::from_vec(self.edges),
        }
    }
}

/// Follows `α, β, α, …` from `x` for at most `cap` edges.
pub(crate) fn walk<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    alpha: Colour,
    beta: Colour,
    cap: usize,
) -> Walk {
    let limit = cap.min(c.graph().edge_count());
    let mut edges = Vec::new();
    let mut vertices = alloc::vec![x];
    let mut cur = x;
    let mut want = alpha;
    loop {
        let Some(h) = c.edge_at(cur, want) else {
            return Walk {
                edges,
                vertices,
                complete: true,
            };
        };
        if edges.len() == limit {
            return Walk {
                edges,
                vertices,
                complete: false,
            };
        }
        cur = c
            .graph()
            .other(h, cur)
            .expect("edge_at returns incident edges");
        edges.push(h);
        vertices.push(cur);
        want = if want == alpha { beta } else { alpha };
    }
}

/// Outcome of comparing the same alternating path under two colourings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum PathComparison {
    Equal {
        len: usize,
    },
    Different,
    /// Both agree on the first `cap` edges and neither has ended.
    TooLong,
}

/// Walks `P_c(x, α/β)` and `P_d(x, α/β)` in lockstep.
pub(crate) fn compare_paths<C: Colours + ?Sized, D: Colours + ?Sized>(
    c: &C,
    d: &D,
    x: usize,
    alpha: Colour,
    beta: Colour,
    cap: usize,
) -> PathComparison {
    let limit = cap.min(c.graph().edge_count());
    let mut cur = x;
    let mut want = alpha;
    let mut len = 0;
    loop {
        let (hc, hd) = (c.edge_at(cur, want), d.edge_at(cur, want));
        if hc != hd {
            return PathComparison::Different;
        }
        let Some(h) = hc else {
            return PathComparison::Equal { len };
        };
        if len == limit {
            return PathComparison::TooLong;
        }
        len += 1;
        cur = c
            .graph()
            .other(h, cur)
            .expect("edge_at returns incident edges");
        want = if want == alpha { beta } else { alpha };
    }
}

struct Stepper {
    cur: usize,
    want_first: bool,
    steps: usize,
    done: bool,
}

impl Stepper {
    fn new(start: usize) -> Self {
        Stepper {
            cur: start,
            want_first: true,
            steps: 0,
            done: false,
        }
    }

    fn step<C: Colours + ?Sized>(&mut self, c: &C, first: Colour, second: Colour) {
        let want = if self.want_first { first } else { second };
        match c.edge_at(self.cur, want) {
            Some(h) if self.steps < c.graph().edge_count() => {
                self.cur = c.graph().other(h, self.cur).expect("incident");
                self.want_first = !self.want_first;
                self.steps += 1;
            }
            _ => self.done = true,
        }
    }
}

/// Of two starts missing `β`, returns `a` if `P_c(a, α/β)` avoids `centre`
/// and `b` otherwise. `centre` must miss `α`.
///
/// `centre` has at most one `α/β` edge, so a path from `a` uses it only by
/// ending there. The three paths from `a`, `b` and `centre` are walked in
/// lockstep and the first to settle the question stops the search, so the
/// cost is bounded by the shorter paths rather than the longest one.
pub(crate) fn first_avoiding<C: Colours + ?Sized>(
    c: &C,
    a: usize,
    b: usize,
    centre: usize,
    alpha: Colour,
    beta: Colour,
) -> usize {
    let mut wa = Stepper::new(a);
    let mut wb = Stepper::new(b);
    let mut wx = Stepper::new(centre);
    loop {
        if !wa.done {
            wa.step(c, alpha, beta);
            if wa.done {
                return if wa.cur == centre { b } else { a };
            }
        }
        if !wx.done {
            wx.step(c, beta, alpha);
            if wx.done {
                return if wx.cur == a { b } else { a };
            }
        }
        if !wb.done {
            wb.step(c, alpha, beta);
            if wb.done && (wb.cur == centre || wb.cur == a) {
                return a;
            }
        }
    }
}

fn check_vertex<C: Colours + ?Sized>(c: &C, x: usize) -> Result<(), ChainError> {
    if x >= c.graph().vertex_count() {
        return Err(ChainError::VertexOutOfRange(x));
    }
    Ok(())
}

fn check_path_args<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    alpha: Colour,
    beta: Colour,
) -> Result<(), ChainError> {
    check_vertex(c, x)?;
    if alpha == beta {
        return Err(ChainError::EqualColours);
    }
    if !c.missing(x).contains(beta) {
        return Err(ChainError::ColourNotMissing {
            vertex: x,
            colour: beta,
        });
    }
    Ok(())
}

/// `P_c(x, α/β)`. Requires `β ∈ m_c(x)`.
pub fn alternating_path<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    alpha: Colour,
    beta: Colour,
) -> Result<AlternatingPath, ChainError> {
    check_path_args(c, x, alpha, beta)?;
    Ok(walk(c, x, alpha, beta, usize::MAX).into_path(alpha, beta))
}

/// Checks that `P_c(x, α/β)` is a prefix of `P_d(x, α/β)` when `d` agrees
/// with `c` on the edges of the former.
pub fn prefix_stability_check<C: Colours + ?Sized, D: Colours + ?Sized>(
    c: &C,
    d: &D,
    x: usize,
    alpha: Colour,
    beta: Colour,
) -> Result<bool, ChainError> {
    let pc = alternating_path(c, x, alpha, beta)?;
    check_path_args(d, x, alpha, beta)?;
    if let Some(&h) = pc.edges.iter().find(|&&h| c.colour(h) != d.colour(h)) {
        return Err(ChainError::ColouringsDisagree(h));
    }
    let pd = alternating_path(d, x, alpha, beta)?;
    Ok(pd.edges.starts_with(&pc.edges))
}

/// `F_c(x, e)`: the maximal fan around `x` starting at `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub centre: usize,
    pub edges: Chain,
    /// `v_i`, the endpoint of `e_i` other than the centre.
    pub far_endpoints: Vec<usize>,
    /// `α_0, …, α_{k-1}`, equal to the colours of `e_1, …, e_k`.
    pub colours: Vec<Colour>,
    /// `α_k`, the smallest colour available at the last step.
    pub last_available: Colour,
    pub augmenting: bool,
}

impl Fan {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `α_i` for `i ≤ k`.
    pub fn available(&self, i: usize) -> Colour {
        if i < self.colours.len() {
            self.colours[i]
        } else {
            self.last_available
        }
    }
}

/// Picks the smallest colour of `set`; with `top = Some(β)` the colour `β`
/// is ranked above every other colour.
pub(crate) fn pick(set: ColourSet, top: Option<Colour>) -> Option<Colour> {
    match top {
        Some(t) if set.contains(t) => set.without(t).min().or(Some(t)),
        _ => set.min(),
    }
}

/// The unchecked fan construction shared with the shadow fan.
pub(crate) fn build_fan<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
    top: Option<Colour>,
) -> Fan {
    let g = c.graph();
    let mut edges = alloc::vec![e];
    let mut far = alloc::vec![g.other(e, x).expect("x is an endpoint of e")];
    let mut colours: Vec<Colour> = Vec::new();
    let last_available = loop {
        let i = edges.len() - 1;
        let v = far[i];
        let used_here: ColourSet = (0..i)
            .filter(|&j| far[j] == v)
            .map(|j| colours[j])
            .collect();
        let a =
            pick(c.missing(v).difference(used_here), top).expect("some colour is always available");
        match c.edge_at(x, a) {
            Some(h) if !edges.contains(&h) => {
                far.push(g.other(h, x).expect("incident"));
                edges.push(h);
                colours.push(a);
            }
            _ => break a,
        }
    };
    let augmenting = classify_chain(c, &edges) == ChainStatus::Augmenting;
    Fan {
        centre: x,
        edges: Chain::from_vec(edges),
        far_endpoints: far,
        colours,
        last_available,
        augmenting,
    }
}

fn check_start<C: Colours + ?Sized>(c: &C, x: usize, e: EdgeId) -> Result<(), ChainError> {
    let g = c.graph();
    if e.0 >= g.edge_count() {
        return Err(ChainError::EdgeOutOfRange(e));
    }
    if !g.contains(e, x) {
        return Err(ChainError::NotAnEndpoint { vertex: x, edge: e });
    }
    if c.colour(e).is_some() {
        return Err(ChainError::EdgeColoured(e));
    }
    Ok(())
}

/// `F_c(x, e)`. Requires `e ∈ U_c` and `x ∈ e`.
pub fn max_fan<C: Colours + ?Sized>(c: &C, x: usize, e: EdgeId) -> Result<Fan, ChainError> {
    check_start(c, x, e)?;
    Ok(build_fan(c, x, e, None))
}

/// For a non-augmenting fan, the indices `j < k` with `α_j = α_k = β`.
pub fn repeated_colour_indices(fan: &Fan) -> Result<(usize, usize, Colour), ChainError> {
    if fan.augmenting {
        return Err(ChainError::FanAugmenting);
    }
    let k = fan.len() - 1;
    let beta = fan.last_available;
    let j = fan
        .colours
        .iter()
        .position(|&a| a == beta)
        .ok_or(ChainError::NoRepeatedColour)?;
    Ok((j, k, beta))
}

/// Data attached to a Vizing chain whose fan is not augmenting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPath {
    /// The first critical index `i ∈ {j, k}`.
    pub index: usize,
    pub j: usize,
    pub k: usize,
    /// `min m_c(x)`.
    pub alpha: Colour,
    /// `α_j = α_k`.
    pub beta: Colour,
    /// `P_c(x, e) = P_c(v_i, α/β)`.
    pub path: AlternatingPath,
}

/// `V_c(x, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VizingChain {
    pub fan: Fan,
    pub critical: Option<CriticalPath>,
}

impl VizingChain {
    /// The fan prefix used by the chain: all of it, or `F_{i+1}`.
    pub fn fan_prefix(&self) -> &[EdgeId] {
        match &self.critical {
            None => &self.fan.edges,
            Some(cp) => self.fan.edges.prefix(cp.index + 1),
        }
    }

    pub fn path(&self) -> Option<&AlternatingPath> {
        self.critical.as_ref().map(|cp| &cp.path)
    }

    pub fn chain(&self) -> Chain {
        let mut edges = self.fan_prefix().to_vec();
        if let Some(p) = self.path() {
            edges.extend_from_slice(&p.edges);
        }
        Chain::from_vec(edges)
    }

    pub fn len(&self) -> usize {
        self.fan_prefix().len() + self.path().map_or(0, |p| p.len())
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A Vizing chain whose alternating path may be truncated.
#[derive(Clone, Debug)]
pub(crate) struct Probe {
    pub fan: Fan,
    pub route: Option<Route>,
}

#[derive(Clone, Debug)]
pub(crate) struct Route {
    pub index: usize,
    pub j: usize,
    pub k: usize,
    pub alpha: Colour,
    pub beta: Colour,
    pub walk: Walk,
}

impl Probe {
    pub fn fan_prefix(&self) -> &[EdgeId] {
        match &self.route {
            None => &self.fan.edges,
            Some(r) => self.fan.edges.prefix(r.index + 1),
        }
    }

    pub fn into_chain(self) -> VizingChain {
        let critical = self.route.map(|r| CriticalPath {
            index: r.index,
            j: r.j,
            k: r.k,
            alpha: r.alpha,
            beta: r.beta,
            path: r.walk.into_path(r.alpha, r.beta),
        });
        VizingChain {
            fan: self.fan,
            critical,
        }
    }
}

/// Builds `V_c(x, e)` with the alternating path cut after `cap` edges.
pub(crate) fn probe<C: Colours + ?Sized>(c: &C, x: usize, e: EdgeId, cap: usize) -> Probe {
    let fan = build_fan(c, x, e, None);
    if fan.augmenting {
        return Probe { fan, route: None };
    }
    let (j, k, beta) =
        repeated_colour_indices(&fan).expect("a non-augmenting fan repeats a colour");
    let alpha = c.missing(x).min().expect("|m_c(x)| ≥ π ≥ 1");
    let (vj, vk) = (fan.far_endpoints[j], fan.far_endpoints[k]);
    let start = first_avoiding(c, vj, vk, x, alpha, beta);
    let index = if start == vj { j } else { k };
    let walk = walk(c, start, alpha, beta, cap);
    Probe {
        fan,
        route: Some(Route {
            index,
            j,
            k,
            alpha,
            beta,
            walk,
        }),
    }
}

/// `V_c(x, e)`. Requires `e ∈ U_c` and `x ∈ e`.
pub fn vizing_chain<C: Colours + ?Sized>(
    c: &C,
    x: usize,
    e: EdgeId,
) -> Result<VizingChain, ChainError> {
    check_start(c, x, e)?;
    Ok(probe(c, x, e, usize::MAX).into_chain())
}

/// The shift along an augmenting chain, with its last edge coloured by the
/// smallest colour missing at both endpoints.
pub fn augment<'g>(
    c: &PartialColouring<'g>,
    chain: &[EdgeId],
) -> Result<PartialColouring<'g>, ChainError> {
    let mut d = c.clone();
    d.augment_in_place(chain)?;
    Ok(d)
}
