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

//! Direct transcriptions of the chain definitions, and the sweeps that
//! compare them with the library.

use std::collections::BTreeSet;

use vizing_core::instances::{long_path_instance, LongPathSpec};
use vizing_core::iterated::{conditional_fan, suitable_edges};
use vizing_core::{
    alternating_path, augment, max_fan, shift_along, vizing_chain, Colour, Colours, EdgeId,
    Multigraph, PartialColouring,
};

const MAX_DELTA: usize = 4;
const MAX_PI: usize = 2;

/// A colouring held as plain vectors, independent of the library types.
#[derive(Clone)]
struct Plain {
    ends: Vec<(usize, usize)>,
    palette: usize,
    col: Vec<Option<usize>>,
}

impl Plain {
    fn other(&self, e: usize, x: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == x {
            b
        } else {
            a
        }
    }

    fn touches(&self, e: usize, x: usize) -> bool {
        self.ends[e].0 == x || self.ends[e].1 == x
    }

    fn missing_mask(&self, x: usize) -> u32 {
        let used = (0..self.ends.len())
            .filter(|&h| self.touches(h, x))
            .filter_map(|h| self.col[h])
            .fold(0u32, |m, k| m | 1 << k);
        ((1u32 << (self.palette + 1)) - 2) & !used
    }

    /// Palette colours absent at `x`, smallest first.
    fn missing(&self, x: usize) -> Vec<usize> {
        let m = self.missing_mask(x);
        (1..=self.palette).filter(|k| m >> k & 1 == 1).collect()
    }

    fn edge_coloured(&self, x: usize, k: usize) -> Option<usize> {
        (0..self.ends.len()).find(|&h| self.touches(h, x) && self.col[h] == Some(k))
    }

    fn proper(&self) -> bool {
        for h in 0..self.ends.len() {
            for i in h + 1..self.ends.len() {
                let meet = self.touches(i, self.ends[h].0) || self.touches(i, self.ends[h].1);
                if meet && self.col[h].is_some() && self.col[h] == self.col[i] {
                    return false;
                }
            }
        }
        true
    }

    fn path(&self, x: usize, a: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let (mut v, mut want) = (x, a);
        while let Some(h) = self.edge_coloured(v, want) {
            if out.contains(&h) {
                break;
            }
            out.push(h);
            v = self.other(h, v);
            want = if want == a { b } else { a };
        }
        out
    }

    fn shifted(&self, chain: &[usize]) -> Plain {
        let mut d = self.clone();
        for (t, &h) in chain.iter().enumerate() {
            d.col[h] = chain.get(t + 1).and_then(|&n| self.col[n]);
        }
        d
    }

    fn shiftable(&self, chain: &[usize]) -> bool {
        let distinct: BTreeSet<_> = chain.iter().collect();
        distinct.len() == chain.len()
            && !chain.is_empty()
            && self.col[chain[0]].is_none()
            && chain[1..].iter().all(|&h| self.col[h].is_some())
    }

    fn proper_shiftable(&self, chain: &[usize]) -> bool {
        self.shiftable(chain) && self.shifted(chain).proper()
    }

    fn augmenting(&self, chain: &[usize]) -> bool {
        if !self.proper_shiftable(chain) {
            return false;
        }
        let d = self.shifted(chain);
        let (a, b) = d.ends[*chain.last().unwrap()];
        d.missing_mask(a) & d.missing_mask(b) != 0
    }
}

struct FanOracle {
    edges: Vec<usize>,
    far: Vec<usize>,
    colours: Vec<usize>,
    last_available: usize,
}

fn fan_oracle(c: &Plain, x: usize, e: usize) -> FanOracle {
    let mut edges = vec![e];
    let mut far = vec![c.other(e, x)];
    let mut colours = Vec::new();
    loop {
        let i = edges.len() - 1;
        let available: Vec<usize> = c
            .missing(far[i])
            .into_iter()
            .filter(|&k| !(0..i).any(|j| far[j] == far[i] && colours[j] == k))
            .collect();
        let a = available[0];
        match c.edge_coloured(x, a) {
            Some(h) if !edges.contains(&h) => {
                edges.push(h);
                far.push(c.other(h, x));
                colours.push(a);
            }
            _ => {
                return FanOracle {
                    edges,
                    far,
                    colours,
                    last_available: a,
                }
            }
        }
    }
}

/// Returns the chain and, for a non-augmenting fan, the critical index.
fn vizing_oracle(c: &Plain, x: usize, e: usize) -> (Vec<usize>, Option<usize>) {
    let fan = fan_oracle(c, x, e);
    if c.augmenting(&fan.edges) {
        return (fan.edges, None);
    }
    let k = fan.edges.len() - 1;
    let beta = fan.last_available;
    let j = fan
        .colours
        .iter()
        .position(|&a| a == beta)
        .expect("a repeated colour");
    let alpha = c.missing(x)[0];
    let avoids = |v: usize| c.path(v, alpha, beta).iter().all(|&h| !c.touches(h, x));
    let i = if avoids(fan.far[j]) { j } else { k };
    assert!(
        avoids(fan.far[i]),
        "neither critical path avoids the centre"
    );
    let mut chain = fan.edges[..=i].to_vec();
    chain.extend(c.path(fan.far[i], alpha, beta));
    (chain, Some(i))
}

/// The conditional fan around `y` at the suitable edge `f`, read off its
/// definition with the colours `alpha`, `beta` of the first path.
fn conditional_fan_oracle(c: &Plain, y: usize, f: usize, alpha: usize, beta: usize) -> Vec<usize> {
    let mut edges = vec![f];
    let mut far = vec![c.other(f, y)];
    let mut colours: Vec<usize> = Vec::new();
    loop {
        let i = edges.len() - 1;
        let m = c.missing(far[i]);
        if i > 0 && (m.contains(&alpha) || m.contains(&beta)) {
            return edges;
        }
        let a = m
            .into_iter()
            .find(|&k| !(0..i).any(|j| far[j] == far[i] && colours[j] == k))
            .expect("available colour");
        match c.edge_coloured(y, a) {
            Some(h) if !edges.contains(&h) => {
                edges.push(h);
                far.push(c.other(h, y));
                colours.push(a);
            }
            _ => return edges,
        }
    }
}

/// The lexicographically least sorted edge list over all relabellings that
/// list vertices by non-increasing degree.
fn canonical(edges: &[(usize, usize)], n: usize) -> Vec<(usize, usize)> {
    fn place(
        pos: usize,
        slots: &[usize],
        deg: &[usize],
        label: &mut [usize],
        used: &mut [bool],
        edges: &[(usize, usize)],
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if pos == slots.len() {
            let mut l: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
                .collect();
            l.sort();
            if best.as_ref().is_none_or(|b| l < *b) {
                *best = Some(l);
            }
            return;
        }
        for v in 0..deg.len() {
            if !used[v] && deg[v] == slots[pos] {
                used[v] = true;
                label[v] = pos;
                place(pos + 1, slots, deg, label, used, edges, best);
                used[v] = false;
            }
        }
    }
    let deg: Vec<usize> = (0..n)
        .map(|v| edges.iter().filter(|&&(a, b)| a == v || b == v).count())
        .collect();
    let mut slots = deg.clone();
    slots.sort_by(|a, b| b.cmp(a));
    let mut best = None;
    place(
        0,
        &slots,
        &deg,
        &mut vec![0; n],
        &mut vec![false; n],
        edges,
        &mut best,
    );
    best.expect("at least one labelling")
}

/// One representative per isomorphism class of connected multigraphs within
/// the edge, degree and multiplicity caps.
pub fn small_graphs(max_edges: usize) -> Vec<Vec<(usize, usize)>> {
    fn grow(
        cur: &mut Vec<(usize, usize)>,
        vertices: usize,
        max_edges: usize,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if !cur.is_empty() && connected(cur, vertices) {
            out.push(cur.clone());
        }
        if cur.len() == max_edges {
            return;
        }
        let start = cur.last().copied().unwrap_or((0, 0));
        for u in 0..=vertices {
            for v in u + 1..=vertices + 1 {
                if (u, v) < start || (u == vertices && v != vertices + 1) {
                    continue;
                }
                if cur.is_empty() && (u, v) != (0, 1) {
                    continue;
                }
                let deg = |w: usize| cur.iter().filter(|&&(a, b)| a == w || b == w).count();
                let mult = cur.iter().filter(|&&p| p == (u, v)).count();
                if deg(u) == MAX_DELTA || deg(v) == MAX_DELTA || mult == MAX_PI {
                    continue;
                }
                let grown = vertices.max(v + 1);
                cur.push((u, v));
                grow(cur, grown, max_edges, out);
                cur.pop();
            }
        }
    }
    fn connected(edges: &[(usize, usize)], n: usize) -> bool {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in edges {
                for (p, q) in [(a, b), (b, a)] {
                    if p == v && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 0, max_edges, &mut out);
    let classes: BTreeSet<Vec<(usize, usize)>> = out
        .iter()
        .map(|e| canonical(e, e.iter().map(|&(_, v)| v + 1).max().unwrap()))
        .collect();
    classes.into_iter().collect()
}

fn plain_of(c: &PartialColouring<'_>) -> Plain {
    let g = c.graph();
    Plain {
        ends: g
            .edge_ids()
            .map(|e| (g.endpoints(e).lo, g.endpoints(e).hi))
            .collect(),
        palette: g.palette_size(),
        col: c.assignment().iter().map(|k| k.map(Colour::get)).collect(),
    }
}

fn colour(k: usize) -> Colour {
    Colour::new(k).unwrap()
}

fn ids(edges: &[EdgeId]) -> Vec<usize> {
    edges.iter().map(|e| e.0).collect()
}

#[derive(Default, Debug)]
pub struct Tally {
    pub graphs: usize,
    pub states: usize,
    pub paths: usize,
    pub fans: usize,
    pub chains: usize,
    pub shifts: usize,
    pub path_prefixes: usize,
    pub fan_prefixes: usize,
    pub conditional_fans: usize,
}

fn check_state(c: &PartialColouring<'_>, tally: &mut Tally) -> Vec<Vec<Option<Colour>>> {
    let g = c.graph();
    let plain = plain_of(c);
    assert!(plain.proper());
    tally.states += 1;

    for x in 0..g.vertex_count() {
        for a in 1..=plain.palette {
            for b in plain.missing(x) {
                if a == b {
                    continue;
                }
                let p = alternating_path(c, x, colour(a), colour(b)).unwrap();
                assert_eq!(ids(&p.edges), plain.path(x, a, b));
                tally.paths += 1;
            }
        }
    }

    let mut next = Vec::new();
    for e in c.uncoloured() {
        let (lo, hi) = (g.endpoints(e).lo, g.endpoints(e).hi);
        for (x, y) in [(lo, hi), (hi, lo)] {
            // Every prefix of e followed by an alternating path from x.
            for b in plain.missing(x) {
                for a in plain.missing(y) {
                    if a == b {
                        continue;
                    }
                    let mut chain = vec![e.0];
                    chain.extend(plain.path(x, a, b));
                    for i in 1..=chain.len() {
                        assert!(plain.proper_shiftable(&chain[..i]));
                        tally.path_prefixes += 1;
                    }
                    if !plain.path(x, a, b).iter().any(|&h| plain.touches(h, y)) {
                        assert!(plain.augmenting(&chain));
                    }
                }
            }

            let fan = max_fan(c, x, e).unwrap();
            let oracle = fan_oracle(&plain, x, e.0);
            assert_eq!(ids(&fan.edges), oracle.edges);
            assert_eq!(fan.far_endpoints, oracle.far);
            assert_eq!(
                fan.colours.iter().map(|k| k.get()).collect::<Vec<_>>(),
                oracle.colours
            );
            assert_eq!(fan.last_available.get(), oracle.last_available);
            assert_eq!(fan.augmenting, plain.augmenting(&oracle.edges));
            for i in 1..=oracle.edges.len() {
                assert!(plain.proper_shiftable(&oracle.edges[..i]));
                tally.fan_prefixes += 1;
            }
            tally.fans += 1;

            let v = vizing_chain(c, x, e).unwrap();
            let (chain, critical) = vizing_oracle(&plain, x, e.0);
            assert_eq!(ids(&v.chain()), chain);
            assert_eq!(v.critical.as_ref().map(|cp| cp.index), critical);
            assert!(plain.augmenting(&chain));
            tally.chains += 1;

            for i in 1..=chain.len() {
                let prefix: Vec<EdgeId> = chain[..i].iter().map(|&h| EdgeId(h)).collect();
                let shifted = shift_along(c, &prefix).unwrap();
                let expected = plain.shifted(&chain[..i]);
                assert_eq!(plain_of(&shifted).col, expected.col);
                tally.shifts += 1;
            }

            if let Some(cp) = &v.critical {
                let (alpha, beta) = (cp.alpha.get(), cp.beta.get());
                for s in suitable_edges(c, x, e, usize::MAX).unwrap() {
                    let cond = conditional_fan(c, x, e, s.edge).unwrap();
                    let expected =
                        conditional_fan_oracle(&plain, s.far_vertex, s.edge.0, alpha, beta);
                    assert_eq!(ids(&cond.edges), expected);
                    let pos = chain.iter().position(|&h| h == s.edge.0).unwrap();
                    let mut w = chain[..pos].to_vec();
                    for i in 1..=expected.len() {
                        w.truncate(pos);
                        w.extend_from_slice(&expected[..i]);
                        assert!(plain.proper_shiftable(&w));
                    }
                    tally.conditional_fans += 1;
                }
            }

            next.push(augment(c, &v.chain()).unwrap().assignment().to_vec());
        }
    }
    next
}

/// Vertices within `radius` steps of either endpoint of `e`.
fn ball(c: &Plain, e: usize, radius: usize) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = [c.ends[e].0, c.ends[e].1].into();
    let mut frontier: Vec<usize> = seen.iter().copied().collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for v in frontier {
            for h in 0..c.ends.len() {
                if c.touches(h, v) && seen.insert(c.other(h, v)) {
                    next.push(c.other(h, v));
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Checks every engine-reachable colouring of every connected multigraph
/// with at most `max_edges` edges.
pub fn exhaustive(max_edges: usize) -> Tally {
    let mut tally = Tally::default();
    for edges in small_graphs(max_edges) {
        let n = edges.iter().map(|&(_, v)| v + 1).max().unwrap();
        let triples: Vec<(usize, usize, u32)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        let g = Multigraph::build(n, &triples).unwrap();
        assert!(g.delta() as usize <= MAX_DELTA && g.pi() as usize <= MAX_PI);
        tally.graphs += 1;

        let mut seen = BTreeSet::new();
        let mut queue = vec![vec![None; g.edge_count()]];
        seen.insert(queue[0].clone());
        while let Some(a) = queue.pop() {
            let c = PartialColouring::from_assignment(&g, &a).unwrap();
            for b in check_state(&c, &mut tally) {
                if seen.insert(b.clone()) {
                    queue.push(b);
                }
            }
        }
    }
    tally
}

/// Checks every suitable edge of engineered long-path instances and returns
/// how many were checked.
pub fn long_path_conditional_fans() -> usize {
    let mut checked = 0;
    for delta in [3, 4] {
        for returning in [false, true] {
            for seed in 0..12 {
                let spec = LongPathSpec {
                    delta,
                    spine: 40,
                    pool: 16,
                    extra_edges: 70,
                    returning,
                    seed,
                };
                let inst = long_path_instance(spec).unwrap();
                let c = inst.colouring();
                let plain = plain_of(&c);
                let (x, e) = (inst.x, inst.e);
                let (chain, critical) = vizing_oracle(&plain, x, e.0);
                let v = vizing_chain(&c, x, e).unwrap();
                assert_eq!(ids(&v.chain()), chain);
                let cp = v.critical.expect("engineered fans are not augmenting");
                assert_eq!(Some(cp.index), critical);
                let (alpha, beta) = (cp.alpha.get(), cp.beta.get());

                let path_start = cp.index + 1;
                let near = ball(&plain, e.0, 3);
                let expected: Vec<usize> = (path_start..chain.len() - 1)
                    .filter(|&t| plain.col[chain[t]] == Some(alpha))
                    .filter(|&t| {
                        !near.contains(&plain.ends[chain[t]].0)
                            && !near.contains(&plain.ends[chain[t]].1)
                    })
                    .collect();
                let found = suitable_edges(&c, x, e, usize::MAX).unwrap();
                assert_eq!(
                    ids(&found.iter().map(|s| s.edge).collect::<Vec<_>>()),
                    expected.iter().map(|&t| chain[t]).collect::<Vec<_>>()
                );

                for (s, &t) in found.iter().zip(&expected) {
                    assert_eq!(s.position, t - path_start + 1);
                    let (a, b) = plain.ends[chain[t]];
                    let y = if plain.touches(chain[t + 1], a) { a } else { b };
                    assert_eq!(s.far_vertex, y);
                    let cond = conditional_fan(&c, x, e, s.edge).unwrap();
                    let fan = conditional_fan_oracle(&plain, y, s.edge.0, alpha, beta);
                    assert_eq!(ids(&cond.edges), fan);
                    let mut w = chain[..t].to_vec();
                    for i in 1..=fan.len() {
                        w.truncate(t);
                        w.extend_from_slice(&fan[..i]);
                        assert!(plain.proper_shiftable(&w));
                    }
                    checked += 1;
                }
            }
        }
    }
    checked
}
