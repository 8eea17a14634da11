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

//! Colouring drivers: sequential Vizing colouring, the round scheduler over
//! `6L`-independent edge classes, and the orientation built from a full
//! colouring.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::audit::Mode;
use crate::chains::{self, VizingChain};
use crate::colouring::{classify_chain, is_proper, ChainStatus, Colours, PartialColouring};
use crate::executor::Executor;
use crate::iterated::{assemble, Context, Scanner, Verdict};
use crate::multigraph::{EdgeId, Multigraph};
use crate::palette::Colour;

/// Colours every edge: repeatedly takes the smallest uncoloured edge `e`,
/// its smaller endpoint `x`, and augments along `V_c(x, e)`.
pub fn colour_sequential(g: &Multigraph) -> PartialColouring<'_> {
    colour_sequential_with(g, |_, _, _| {})
}

/// [`colour_sequential`] with a callback after every augmentation.
pub fn colour_sequential_with<'g>(
    g: &'g Multigraph,
    mut observe: impl FnMut(&PartialColouring<'g>, EdgeId, &VizingChain),
) -> PartialColouring<'g> {
    let mut c = PartialColouring::new(g);
    for e in g.edge_ids() {
        let x = g.endpoints(e).lo;
        let v = chains::vizing_chain(&c, x, e).expect("e is uncoloured and x is its endpoint");
        c.augment_unchecked(&v.chain());
        observe(&c, e, &v);
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScheduleError {
    #[error("L = {l} must exceed 2Δ = {} so that every chain fits in 3L edges", 2 * delta)]
    ParameterTooSmall { l: usize, delta: u32 },
    /// Carries the colouring reached when the limit hit.
    #[error("round limit {rounds} reached with {uncoloured} edges still uncoloured")]
    RoundLimit {
        rounds: u64,
        uncoloured: usize,
        assignment: Vec<Option<Colour>>,
    },
}

/// The cyclic sequence of edge classes `A_0, A_1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub classes: Vec<Vec<EdgeId>>,
}

fn check_parameter(g: &Multigraph, l: usize) -> Result<(), ScheduleError> {
    if l <= 2 * g.delta() as usize {
        return Err(ScheduleError::ParameterTooSmall {
            l,
            delta: g.delta(),
        });
    }
    Ok(())
}

fn bfs(
    g: &Multigraph,
    sources: &[usize],
    radius: usize,
    dist: &mut [usize],
    touched: &mut Vec<usize>,
) {
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            touched.push(s);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == radius {
            continue;
        }
        for &h in g.incident(v) {
            let w = g.other(h, v).expect("incident");
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                touched.push(w);
                queue.push_back(w);
            }
        }
    }
}

/// Greedily colours the `6L`-th power of the line graph on the uncoloured
/// edges of `c`, visiting them in a seeded random order. Each colour class is
/// one `A_n`.
///
/// Inside a connected component whose line-graph diameter is at most `6L`,
/// every pair of edges conflicts, so greedy gives the `t`-th visited edge
/// class `t`; the breadth-first balls are only needed in larger components.
pub fn build_schedule(
    g: &Multigraph,
    c: &PartialColouring<'_>,
    l: usize,
    seed: u64,
) -> Result<Schedule, ScheduleError> {
    check_parameter(g, l)?;
    let radius = 6 * l;
    let mut order: Vec<EdgeId> = c.uncoloured().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let n = g.vertex_count();
    let mut component = vec![usize::MAX; n];
    let mut small = Vec::new();
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for root in 0..n {
        if component[root] != usize::MAX {
            continue;
        }
        let id = small.len();
        bfs(g, &[root], usize::MAX, &mut dist, &mut touched);
        let ecc = touched.iter().map(|&v| dist[v]).max().unwrap_or(0);
        for &v in &touched {
            component[v] = id;
            dist[v] = usize::MAX;
        }
        touched.clear();
        small.push(2 * ecc < radius);
    }

    let mut class_of = vec![usize::MAX; g.edge_count()];
    let mut next_rank = vec![0usize; small.len()];
    let mut forbidden: Vec<bool> = Vec::new();
    for &e in &order {
        let comp = component[g.endpoints(e).lo];
        let class = if small[comp] {
            next_rank[comp] += 1;
            next_rank[comp] - 1
        } else {
            let ends = g.endpoints(e).as_array();
            bfs(g, &ends, radius - 1, &mut dist, &mut touched);
            forbidden.clear();
            for &v in &touched {
                for &h in g.incident(v) {
                    let k = class_of[h.0];
                    if k != usize::MAX {
                        if forbidden.len() <= k {
                            forbidden.resize(k + 1, false);
                        }
                        forbidden[k] = true;
                    }
                }
                dist[v] = usize::MAX;
            }
            touched.clear();
            forbidden
                .iter()
                .position(|&b| !b)
                .unwrap_or(forbidden.len())
        };
        class_of[e.0] = class;
    }

    let count = class_of
        .iter()
        .filter(|&&k| k != usize::MAX)
        .map(|&k| k + 1)
        .max()
        .unwrap_or(0);
    let mut classes = vec![Vec::new(); count];
    for (i, &k) in class_of.iter().enumerate() {
        if k != usize::MAX {
            classes[k].push(EdgeId(i));
        }
    }
    Ok(Schedule { classes })
}

/// Parameters of [`run_scheduler`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchedulerConfig {
    pub l: usize,
    pub seed: u64,
    /// `None` runs until the stop rule fires.
    pub max_rounds: Option<u64>,
    pub mode: Mode,
}

/// One scheduler round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: u64,
    pub class_index: usize,
    /// Uncoloured edges of the class at the start of the round.
    pub candidates: usize,
    /// `|C_{n+1}|`.
    pub augmented: usize,
    /// Edges whose colour changed during the round.
    pub recoloured: usize,
    pub uncoloured_remaining: usize,
}

#[derive(Clone, Debug)]
pub struct ScheduleRun<'g> {
    pub colouring: PartialColouring<'g>,
    pub log: Vec<RoundRecord>,
    pub class_count: usize,
}

/// The chain `Q(e)` used to augment `e`, if `e` has a witness: an endpoint
/// `x` whose fan is augmenting or whose path `P_c(x, e)` has fewer than `L`
/// edges, or (in iterated mode) a superb `f` with `i(f) ≤ L` and
/// `|P_c(x, e ↝ f)| ≤ L`. Endpoints are tried in increasing order, and for
/// each endpoint superb edges in path order.
pub fn find_witness<C: Colours + ?Sized>(
    c: &C,
    e: EdgeId,
    l: usize,
    mode: Mode,
) -> Option<Vec<EdgeId>> {
    let g = c.graph();
    for x in g.endpoints(e).as_array() {
        let probe = chains::probe(c, x, e, l + 1);
        let Some(route) = &probe.route else {
            return Some(probe.fan.edges.to_vec());
        };
        if route.walk.complete && route.walk.edges.len() < l {
            let mut chain = probe.fan_prefix().to_vec();
            chain.extend_from_slice(&route.walk.edges);
            return Some(chain);
        }
        if mode == Mode::Iterated {
            let ctx = Context::from_probe(c, e, probe).expect("route present");
            let mut scanner = Scanner::new(ctx, l);
            while let Some(a) = scanner.next_analysis(Some(l + 1)) {
                if a.verdict == Verdict::Superb {
                    return Some(assemble(&scanner.ctx, &a).chain().into_vec());
                }
            }
        }
    }
    None
}

/// Runs the round scheduler from the empty colouring.
///
/// Each round takes the next class `A` of the cyclic schedule, finds the
/// uncoloured edges of `A` with a witness against the colouring at the start
/// of the round, and augments all of their chains. The chains are pairwise
/// vertex-disjoint, so the order of application does not matter. The run
/// stops once a full cycle of the schedule passes without an augmentation,
/// or as soon as no edge is left uncoloured.
pub fn run_scheduler<'g, E: Executor>(
    g: &'g Multigraph,
    config: SchedulerConfig,
    executor: &E,
    mut observe: impl FnMut(&PartialColouring<'g>, &RoundRecord),
) -> Result<ScheduleRun<'g>, ScheduleError> {
    check_parameter(g, config.l)?;
    let mut c = PartialColouring::new(g);
    let schedule = build_schedule(g, &c, config.l, config.seed)?;
    let classes = schedule.classes;
    let mut log = Vec::new();
    let mut round: u64 = 0;
    let mut idle = 0usize;
    let mut stamp = vec![usize::MAX; g.vertex_count()];
    while !classes.is_empty() && idle < classes.len() && c.uncoloured_count() > 0 {
        if config.max_rounds.is_some_and(|m| round >= m) {
            return Err(ScheduleError::RoundLimit {
                rounds: round,
                uncoloured: c.uncoloured_count(),
                assignment: c.assignment().to_vec(),
            });
        }
        let class_index = (round % classes.len() as u64) as usize;
        let candidates: Vec<EdgeId> = classes[class_index]
            .iter()
            .copied()
            .filter(|&e| c.colour(e).is_none())
            .collect();
        let snapshot = &c;
        let found = executor.map_edges(&candidates, |e| {
            find_witness(snapshot, e, config.l, config.mode)
        });
        let chains: Vec<Vec<EdgeId>> = found.into_iter().flatten().collect();

        for (owner, chain) in chains.iter().enumerate() {
            assert!(
                chain.len() <= 3 * config.l,
                "chain of {} edges exceeds 3L",
                chain.len()
            );
            assert_eq!(
                classify_chain(&c, chain),
                ChainStatus::Augmenting,
                "witness chain must augment"
            );
            for &h in chain {
                for v in g.endpoints(h).as_array() {
                    assert!(
                        stamp[v] == usize::MAX || stamp[v] == owner,
                        "chains of one round must be vertex-disjoint"
                    );
                    stamp[v] = owner;
                }
            }
        }
        let mut recoloured = 0;
        for chain in &chains {
            for &h in chain {
                for v in g.endpoints(h).as_array() {
                    stamp[v] = usize::MAX;
                }
            }
            let log = c.augment_unchecked(chain);
            recoloured += log.changed(&c).count();
        }
        assert!(recoloured <= 3 * config.l * chains.len());

        let record = RoundRecord {
            round,
            class_index,
            candidates: candidates.len(),
            augmented: chains.len(),
            recoloured,
            uncoloured_remaining: c.uncoloured_count(),
        };
        observe(&c, &record);
        log.push(record);
        idle = if chains.is_empty() { idle + 1 } else { 0 };
        round += 1;
    }
    Ok(ScheduleRun {
        colouring: c,
        log,
        class_count: classes.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrientError {
    #[error("orientation needs a simple graph, but π = {0}")]
    Multigraph(u32),
    #[error("edge {0} is uncoloured")]
    NotFull(EdgeId),
    #[error("the colouring is not proper")]
    Improper,
}

/// A direction for every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// `(tail, head)` per edge.
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn out_degrees(&self, vertex_count: usize) -> Vec<usize> {
        let mut out = vec![0; vertex_count];
        for &(t, _) in &self.arcs {
            out[t] += 1;
        }
        out
    }

    pub fn max_out_degree(&self, vertex_count: usize) -> usize {
        self.out_degrees(vertex_count)
            .into_iter()
            .max()
            .unwrap_or(0)
    }
}

/// Orients a fully coloured simple graph so that every out-degree is at most
/// the number of colour groups `(1,2), (3,4), …`.
///
/// Two colour classes are matchings, so their union splits into paths and
/// cycles; each is oriented consistently, giving every vertex at most one
/// outgoing edge per group.
pub fn orient(c: &PartialColouring<'_>) -> Result<Orientation, OrientError> {
    let g = c.graph();
    if g.max_multiplicity() > 1 {
        return Err(OrientError::Multigraph(g.max_multiplicity()));
    }
    if let Some(e) = c.uncoloured().next() {
        return Err(OrientError::NotFull(e));
    }
    if !is_proper(c) {
        return Err(OrientError::Improper);
    }
    let group = |e: EdgeId| (c.colour(e).expect("full").get() - 1) / 2;
    let groups = g.palette_size().div_ceil(2);
    let mut arcs = vec![(0, 0); g.edge_count()];
    let mut done = vec![false; g.edge_count()];
    for k in 0..groups {
        let in_group = |h: &&EdgeId| group(**h) == k;
        let mut walk_from = |start: usize, first: EdgeId, done: &mut Vec<bool>| {
            let (mut v, mut h) = (start, first);
            loop {
                let w = g.other(h, v).expect("incident");
                arcs[h.0] = (v, w);
                done[h.0] = true;
                match g.incident(w).iter().filter(in_group).find(|h| !done[h.0]) {
                    Some(&next) => {
                        v = w;
                        h = next;
                    }
                    None => break,
                }
            }
        };
        for v in 0..g.vertex_count() {
            let here: Vec<EdgeId> = g.incident(v).iter().filter(in_group).copied().collect();
            assert!(
                here.len() <= 2,
                "two matchings meet each vertex at most twice"
            );
            if here.len() == 1 && !done[here[0].0] {
                walk_from(v, here[0], &mut done);
            }
        }
        for e in g.edge_ids() {
            if group(e) == k && !done[e.0] {
                walk_from(g.endpoints(e).lo, e, &mut done);
            }
        }
    }
    Ok(Orientation { arcs })
}
