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

//! Engineered instances with a long alternating path behind a non-augmenting
//! fan.
//!
//! Random colourings rarely leave an uncoloured edge whose Vizing path is
//! long. These instances place the uncoloured edge `e = {x, v_0}` (edge 0,
//! `x = 0`) inside a fixed gadget whose fan is not augmenting and whose
//! alternating `1/2` path runs along a long spine. Extra edges with random
//! proper colours are then sprinkled over the spine and a pool of spare
//! vertices, away from the gadget, to create varied conditional fans.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colouring::PartialColouring;
use crate::multigraph::{EdgeId, GraphError, Multigraph};
use crate::palette::Colour;

/// Parameters of [`long_path_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LongPathSpec {
    /// 2, 3 or 4.
    pub delta: u32,
    /// Edges on the spine.
    pub spine: usize,
    /// Spare vertices available to random edges.
    pub pool: usize,
    /// Number of random edges to add.
    pub extra_edges: usize,
    /// For `Δ ≥ 3`: the path from `v_0` first returns to `x`, so the Vizing
    /// chain uses the longer fan prefix and the spine hangs off `v_2`.
    pub returning: bool,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct LongPathInstance {
    pub graph: Multigraph,
    pub colours: Vec<Option<Colour>>,
    pub x: usize,
    pub e: EdgeId,
}

impl LongPathInstance {
    pub fn colouring(&self) -> PartialColouring<'_> {
        PartialColouring::from_assignment(&self.graph, &self.colours)
            .expect("colours lie in the palette")
    }
}

struct Builder {
    edges: Vec<(usize, usize, usize)>,
    n: usize,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn pendant(&mut self, v: usize, colour: usize) {
        let a = self.vertex();
        self.edges.push((v, a, colour));
    }
}

/// Builds an instance; see the module documentation.
///
/// For `Δ = 2` the gadget is `w -2- x - v_0 -1- spine`, whose fan is always
/// augmenting (no non-augmenting fan exists at `Δ = 2`, `π = 1`).
pub fn long_path_instance(spec: LongPathSpec) -> Result<LongPathInstance, GraphError> {
    assert!(
        (2..=4).contains(&spec.delta),
        "gadgets exist for Δ ∈ {{2, 3, 4}}"
    );
    let delta = spec.delta as usize;
    let mut b = Builder {
        edges: vec![(0, 1, 0)],
        n: 2,
    };
    let spine_start = if delta == 2 {
        b.pendant(0, 2);
        1
    } else {
        // x = 0 sees colours 2 and 3 (and 4 when Δ = 4), so m(x) = {1, Δ+1}.
        // Every fan vertex misses only colours used at x: α = (2, 3, 2).
        let (v0, v1, v2) = (1, 2, 3);
        b.n = 4;
        b.edges.push((0, v1, 2));
        b.edges.push((0, v2, 3));
        let top = delta + 1;
        if delta == 4 {
            b.pendant(0, 4);
            b.pendant(v0, 4);
        }
        b.pendant(v0, top);
        b.pendant(v1, top);
        b.pendant(v2, top);
        if spec.returning {
            let q = b.vertex();
            let r = b.vertex();
            b.edges.push((v0, q, 1));
            b.edges.push((q, r, 2));
            b.edges.push((r, v1, 1));
            v2
        } else {
            b.pendant(v1, 1);
            b.pendant(v2, 1);
            v0
        }
    };
    let gadget_end = b.n;
    let mut prev = spine_start;
    let mut spine = Vec::with_capacity(spec.spine);
    for i in 0..spec.spine {
        let p = b.vertex();
        let colour = if i % 2 == 0 { 1 } else { 2 };
        b.edges.push((prev, p, colour));
        spine.push(p);
        prev = p;
    }
    let pool_start = b.n;
    for _ in 0..spec.pool {
        b.vertex();
    }

    let n = b.n;
    let mut degree = vec![0usize; n];
    let mut used = vec![0u64; n];
    let mut pairs = BTreeSet::new();
    for &(u, v, c) in &b.edges {
        degree[u] += 1;
        degree[v] += 1;
        used[u] |= 1 << c;
        used[v] |= 1 << c;
        pairs.insert((u.min(v), u.max(v)));
    }
    // Gadget pendants and the spine beyond its first six vertices.
    let first_free = if delta == 2 { gadget_end } else { 4 };
    let candidates: Vec<usize> = (first_free..gadget_end)
        .chain(spine.iter().copied().skip(6))
        .chain(pool_start..n)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (mut added, mut tries) = (0, 0);
    while added < spec.extra_edges
        && tries < spec.extra_edges.saturating_mul(50)
        && !candidates.is_empty()
    {
        tries += 1;
        let pick = |rng: &mut ChaCha8Rng, pool_bias: f64| {
            if spec.pool > 0 && rng.gen_bool(pool_bias) {
                rng.gen_range(pool_start..n)
            } else {
                candidates[rng.gen_range(0..candidates.len())]
            }
        };
        let u = pick(&mut rng, 0.5);
        let v = pick(&mut rng, 0.6);
        if u == v
            || degree[u] >= delta
            || degree[v] >= delta
            || pairs.contains(&(u.min(v), u.max(v)))
        {
            continue;
        }
        let free: Vec<usize> = (1..=delta + 1)
            .filter(|&c| (used[u] | used[v]) & (1 << c) == 0)
            .collect();
        if free.is_empty() {
            continue;
        }
        let c = free[rng.gen_range(0..free.len())];
        b.edges.push((u, v, c));
        degree[u] += 1;
        degree[v] += 1;
        used[u] |= 1 << c;
        used[v] |= 1 << c;
        pairs.insert((u.min(v), u.max(v)));
        added += 1;
    }

    let triples: Vec<(usize, usize, u32)> = b.edges.iter().map(|&(u, v, _)| (u, v, 1)).collect();
    let graph = Multigraph::with_bounds(n, &triples, spec.delta, 1)?;
    let colours = b.edges.iter().map(|&(_, _, c)| Colour::new(c)).collect();
    Ok(LongPathInstance {
        graph,
        colours,
        x: 0,
        e: EdgeId(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{max_fan, vizing_chain};
    use crate::colouring::is_proper;

    fn spec(delta: u32, returning: bool, seed: u64) -> LongPathSpec {
        LongPathSpec {
            delta,
            spine: 40,
            pool: 12,
            extra_edges: 30,
            returning,
            seed,
        }
    }

    #[test]
    fn gadgets_have_the_intended_fans() {
        for delta in [3, 4] {
            for returning in [false, true] {
                for seed in 0..20 {
                    let inst = long_path_instance(spec(delta, returning, seed)).unwrap();
                    let c = inst.colouring();
                    assert!(is_proper(&c));
                    assert_eq!(inst.graph.delta(), delta);
                    let v = vizing_chain(&c, inst.x, inst.e).unwrap();
                    let critical = v.critical.as_ref().expect("fan is not augmenting");
                    assert_eq!(
                        v.fan.colours.iter().map(|k| k.get()).collect::<Vec<_>>(),
                        [2, 3]
                    );
                    assert_eq!(v.fan.last_available.get(), 2);
                    assert_eq!(critical.index, if returning { 2 } else { 0 });
                    assert!(critical.path.len() >= 40);
                }
            }
        }
    }

    #[test]
    fn degree_two_gadget_is_augmenting() {
        let inst = long_path_instance(spec(2, false, 0)).unwrap();
        let c = inst.colouring();
        assert!(is_proper(&c));
        assert!(max_fan(&c, inst.x, inst.e).unwrap().augmenting);
    }
}
