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

//! Partial proper edge colourings, chains and shifts.
//!
//! [`Colours`] is the read-only view shared by every chain construction. It is
//! implemented by [`PartialColouring`], which owns an assignment, and by
//! [`Overlay`], which records a handful of changes on top of another view
//! without copying it. Shifted colourings that only serve as probes are
//! overlays; the engine applies accepted chains in place.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::ChainError;
use crate::multigraph::{EdgeId, Multigraph};
use crate::palette::{Colour, ColourSet};

/// Read access to a partial colouring of a fixed graph.
pub trait Colours {
    fn graph(&self) -> &Multigraph;

    fn colour(&self, e: EdgeId) -> Option<Colour>;

    /// Colours carried by coloured edges at `x`.
    fn used(&self, x: usize) -> ColourSet;

    /// `m_c(x)`: palette colours absent at `x`.
    fn missing(&self, x: usize) -> ColourSet {
        ColourSet::palette(self.graph().palette_size()).difference(self.used(x))
    }

    /// The edge at `x` coloured `col`; the smallest index wins if the
    /// colouring is improper.
    fn edge_at(&self, x: usize, col: Colour) -> Option<EdgeId> {
        if !self.used(x).contains(col) {
            return None;
        }
        self.graph()
            .incident(x)
            .iter()
            .copied()
            .find(|&h| self.colour(h) == Some(col))
    }
}

impl<C: Colours + ?Sized> Colours for &C {
    fn graph(&self) -> &Multigraph {
        (**self).graph()
    }
    fn colour(&self, e: EdgeId) -> Option<Colour> {
        (**self).colour(e)
    }
    fn used(&self, x: usize) -> ColourSet {
        (**self).used(x)
    }
}

fn used_by_scan<C: Colours + ?Sized>(c: &C, x: usize) -> ColourSet {
    c.graph()
        .incident(x)
        .iter()
        .filter_map(|&h| c.colour(h))
        .collect()
}

/// An owned partial colouring `c: E ⇀ [Δ+π]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColouring<'g> {
    graph: &'g Multigraph,
    assignment: Vec<Option<Colour>>,
    used: Vec<ColourSet>,
    uncoloured: usize,
}

impl<'g> PartialColouring<'g> {
    /// The empty colouring.
    pub fn new(graph: &'g Multigraph) -> Self {
        PartialColouring {
            graph,
            assignment: vec![None; graph.edge_count()],
            used: vec![ColourSet::EMPTY; graph.vertex_count()],
            uncoloured: graph.edge_count(),
        }
    }

    /// Builds a colouring from explicit values; properness is not required.
    pub fn from_assignment(
        graph: &'g Multigraph,
        assignment: &[Option<Colour>],
    ) -> Result<Self, ChainError> {
        if assignment.len() != graph.edge_count() {
            return Err(ChainError::LengthMismatch {
                expected: graph.edge_count(),
                actual: assignment.len(),
            });
        }
        let mut c = PartialColouring::new(graph);
        for (i, &col) in assignment.iter().enumerate() {
            c.set(EdgeId(i), col)?;
        }
        Ok(c)
    }

    pub fn assignment(&self) -> &[Option<Colour>] {
        &self.assignment
    }

    /// Sets the colour of `e`, keeping the per-vertex masks exact even when
    /// the result is improper.
    pub fn set(&mut self, e: EdgeId, col: Option<Colour>) -> Result<(), ChainError> {
        if e.0 >= self.assignment.len() {
            return Err(ChainError::EdgeOutOfRange(e));
        }
        if let Some(k) = col {
            if k.get() > self.graph.palette_size() {
                return Err(ChainError::ColourOutOfPalette {
                    colour: k.get(),
                    palette: self.graph.palette_size(),
                });
            }
        }
        self.write(e, col);
        Ok(())
    }

    fn write(&mut self, e: EdgeId, col: Option<Colour>) {
        let old = core::mem::replace(&mut self.assignment[e.0], col);
        match (old.is_some(), col.is_some()) {
            (true, false) => self.uncoloured += 1,
            (false, true) => self.uncoloured -= 1,
            _ => {}
        }
        for x in self.graph.endpoints(e).as_array() {
            self.used[x] = used_by_scan(&*self, x);
        }
    }

    pub fn uncoloured_count(&self) -> usize {
        self.uncoloured
    }

    pub fn coloured_count(&self) -> usize {
        self.assignment.len() - self.uncoloured
    }

    pub fn is_full(&self) -> bool {
        self.uncoloured == 0
    }

    /// `U_c` in increasing index order.
    pub fn uncoloured(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| EdgeId(i))
    }

    /// Number of distinct colours in use.
    pub fn colours_used(&self) -> usize {
        self.assignment
            .iter()
            .flatten()
            .copied()
            .collect::<ColourSet>()
            .len()
    }

    /// Applies the shift along a shiftable chain and returns an undo log.
    pub fn shift_in_place(&mut self, chain: &[EdgeId]) -> Result<ShiftLog, ChainError> {
        if classify_chain(&*self, chain) < ChainStatus::Shiftable {
            return Err(ChainError::NotShiftable);
        }
        Ok(self.shift_unchecked(chain))
    }

    pub(crate) fn shift_unchecked(&mut self, chain: &[EdgeId]) -> ShiftLog {
        let mut log = ShiftLog {
            previous: Vec::with_capacity(chain.len()),
        };
        let next: Vec<Option<Colour>> = chain
            .iter()
            .skip(1)
            .map(|&h| self.assignment[h.0])
            .chain(core::iter::once(None))
            .collect();
        for (&h, col) in chain.iter().zip(next) {
            log.previous.push((h, self.assignment[h.0]));
            self.write(h, col);
        }
        log
    }

    /// Reverts a shift applied by [`PartialColouring::shift_in_place`] or
    /// [`PartialColouring::augment_in_place`].
    pub fn undo(&mut self, log: ShiftLog) {
        for (h, col) in log.previous.into_iter().rev() {
            self.write(h, col);
        }
    }

    /// Shifts along an augmenting chain and colours its last edge with the
    /// smallest colour missing at both endpoints.
    pub fn augment_in_place(&mut self, chain: &[EdgeId]) -> Result<ShiftLog, ChainError> {
        if classify_chain(&*self, chain) != ChainStatus::Augmenting {
            return Err(ChainError::NotAugmenting);
        }
        Ok(self.augment_unchecked(chain))
    }

    pub(crate) fn augment_unchecked(&mut self, chain: &[EdgeId]) -> ShiftLog {
        let mut log = self.shift_unchecked(chain);
        let last = *chain.last().expect("augmenting chains are non-empty");
        let ends = self.graph.endpoints(last);
        let common = self.missing(ends.lo).intersection(self.missing(ends.hi));
        let col = common
            .min()
            .expect("augmenting chain leaves a common missing colour");
        log.previous.push((last, None));
        self.write(last, Some(col));
        log
    }
}

impl Colours for PartialColouring<'_> {
    #[inline]
    fn graph(&self) -> &Multigraph {
        self.graph
    }
    #[inline]
    fn colour(&self, e: EdgeId) -> Option<Colour> {
        self.assignment[e.0]
    }
    #[inline]
    fn used(&self, x: usize) -> ColourSet {
        self.used[x]
    }
}

/// Previous colours of the edges touched by an in-place shift.
#[derive(Clone, Debug, Default)]
pub struct ShiftLog {
    previous: Vec<(EdgeId, Option<Colour>)>,
}

impl ShiftLog {
    /// Edges whose colour state differs after the operation.
    pub fn changed<'a>(&'a self, c: &'a PartialColouring<'_>) -> impl Iterator<Item = EdgeId> + 'a {
        let mut seen = BTreeSet::new();
        self.previous
            .iter()
            .filter(move |(h, _)| seen.insert(*h))
            .filter(move |(h, old)| c.colour(*h) != *old)
            .map(|(h, _)| *h)
    }
}

/// A set of colour changes layered over another view.
///
/// Changes can be rolled back to any earlier [`Overlay::mark`].
pub struct Overlay<'b, C: Colours + ?Sized> {
    base: &'b C,
    changes: BTreeMap<EdgeId, Option<Colour>>,
    used: BTreeMap<usize, ColourSet>,
    log: Vec<(EdgeId, Option<Option<Colour>>)>,
}

impl<'b, C: Colours + ?Sized> Overlay<'b, C> {
    pub fn new(base: &'b C) -> Self {
        Overlay {
            base,
            changes: BTreeMap::new(),
            used: BTreeMap::new(),
            log: Vec::new(),
        }
    }

    pub fn set(&mut self, e: EdgeId, col: Option<Colour>) {
        let prev = self.changes.insert(e, col);
        self.log.push((e, prev));
        self.refresh(e);
    }

    fn refresh(&mut self, e: EdgeId) {
        for x in self.base.graph().endpoints(e).as_array() {
            let mask = used_by_scan(&*self, x);
            self.used.insert(x, mask);
        }
    }

    /// Shifts along `chain` as seen through this overlay.
    pub fn shift(&mut self, chain: &[EdgeId]) {
        let next: Vec<Option<Colour>> = chain
            .iter()
            .skip(1)
            .map(|&h| self.colour(h))
            .chain(core::iter::once(None))
            .collect();
        for (&h, col) in chain.iter().zip(next) {
            self.set(h, col);
        }
    }

    pub fn mark(&self) -> usize {
        self.log.len()
    }

    pub fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (e, prev) = self.log.pop().expect("log is longer than mark");
            match prev {
                Some(col) => {
                    self.changes.insert(e, col);
                }
                None => {
                    self.changes.remove(&e);
                }
            }
            self.refresh(e);
        }
    }

    /// Edges whose overlay colour differs from the base.
    pub fn differing(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.changes
            .iter()
            .filter(|(&e, &col)| self.base.colour(e) != col)
            .map(|(&e, _)| e)
    }
}

impl<C: Colours + ?Sized> Colours for Overlay<'_, C> {
    #[inline]
    fn graph(&self) -> &Multigraph {
        self.base.graph()
    }
    #[inline]
    fn colour(&self, e: EdgeId) -> Option<Colour> {
        match self.changes.get(&e) {
            Some(&col) => col,
            None => self.base.colour(e),
        }
    }
    #[inline]
    fn used(&self, x: usize) -> ColourSet {
        match self.used.get(&x) {
            Some(&mask) => mask,
            None => self.base.used(x),
        }
    }
}

/// `m_c(x)`.
pub fn missing_colours<C: Colours + ?Sized>(c: &C, x: usize) -> ColourSet {
    c.missing(x)
}

/// No two intersecting coloured edges share a colour.
pub fn is_proper<C: Colours + ?Sized>(c: &C) -> bool {
    let g = c.graph();
    (0..g.vertex_count()).all(|x| proper_at(c, x))
}

fn proper_at<C: Colours + ?Sized>(c: &C, x: usize) -> bool {
    let mut seen = ColourSet::EMPTY;
    for &h in c.graph().incident(x) {
        if let Some(col) = c.colour(h) {
            if seen.contains(col) {
                return false;
            }
            seen.insert(col);
        }
    }
    true
}

/// An ordered sequence of edges in which consecutive edges intersect.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain(Vec<EdgeId>);

impl Chain {
    pub fn new(g: &Multigraph, edges: Vec<EdgeId>) -> Result<Chain, ChainError> {
        if let Some(&bad) = edges.iter().find(|e| e.0 >= g.edge_count()) {
            return Err(ChainError::EdgeOutOfRange(bad));
        }
        if let Some(position) = edges.windows(2).position(|w| !g.intersects(w[0], w[1])) {
            return Err(ChainError::Disconnected { position });
        }
        Ok(Chain(edges))
    }

    pub(crate) fn from_vec(edges: Vec<EdgeId>) -> Chain {
        Chain(edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<EdgeId> {
        self.0
    }

    /// The prefix `P_i` of the first `i` edges.
    pub fn prefix(&self, i: usize) -> &[EdgeId] {
        &self.0[..i.min(self.0.len())]
    }
}

impl Deref for Chain {
    type Target = [EdgeId];
    fn deref(&self) -> &[EdgeId] {
        &self.0
    }
}

/// The labels of a chain, weakest first; each label implies the previous.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ChainStatus {
    NotEdgeInjective,
    NotShiftable,
    Shiftable,
    ProperShiftable,
    Augmenting,
}

pub fn is_edge_injective(chain: &[EdgeId]) -> bool {
    let mut seen = BTreeSet::new();
    chain.iter().all(|e| seen.insert(*e))
}

/// The strongest label that applies to `chain` under `c`.
///
/// Properness of the shift is checked at the vertices of the chain, which is
/// exact whenever `c` is proper elsewhere.
pub fn classify_chain<C: Colours + ?Sized>(c: &C, chain: &[EdgeId]) -> ChainStatus {
    if !is_edge_injective(chain) {
        return ChainStatus::NotEdgeInjective;
    }
    let shiftable = match chain.split_first() {
        None => false,
        Some((&first, rest)) => {
            c.colour(first).is_none() && rest.iter().all(|&h| c.colour(h).is_some())
        }
    };
    if !shiftable {
        return ChainStatus::NotShiftable;
    }
    let mut shifted = Overlay::new(c);
    shifted.shift(chain);
    let g = c.graph();
    let touched: BTreeSet<usize> = chain
        .iter()
        .flat_map(|&h| g.endpoints(h).as_array())
        .collect();
    if !touched.iter().all(|&x| proper_at(&shifted, x)) {
        return ChainStatus::Shiftable;
    }
    let last = g.endpoints(*chain.last().expect("non-empty"));
    if shifted
        .missing(last.lo)
        .intersection(shifted.missing(last.hi))
        .is_empty()
    {
        ChainStatus::ProperShiftable
    } else {
        ChainStatus::Augmenting
    }
}

/// `c_P`, the shift of `c` along a shiftable chain.
pub fn shift_along<'g>(
    c: &PartialColouring<'g>,
    chain: &[EdgeId],
) -> Result<PartialColouring<'g>, ChainError> {
    let mut d = c.clone();
    d.shift_in_place(chain)?;
    Ok(d)
}

/// Checks that shifting along `P_{i+1}` and then along the suffix starting at
/// position `i` reproduces the shift along the whole chain.
pub fn split_shift_check(c: &PartialColouring<'_>, chain: &[EdgeId], i: usize) -> bool {
    if i >= chain.len() {
        return false;
    }
    let Ok(whole) = shift_along(c, chain) else {
        return false;
    };
    let Ok(head) = shift_along(c, &chain[..=i]) else {
        return false;
    };
    match shift_along(&head, &chain[i..]) {
        Ok(composed) => composed.assignment() == whole.assignment(),
        Err(_) => false,
    }
}
