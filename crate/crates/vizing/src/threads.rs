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

//! A scoped-thread [`Executor`].

use std::thread;

use vizing_core::executor::Executor;
use vizing_core::EdgeId;

/// Splits the items into `workers` contiguous chunks, one thread each. Results
/// come back in input order, so output does not depend on the worker count.
#[derive(Clone, Copy, Debug)]
pub struct Threads {
    workers: usize,
}

impl Threads {
    pub fn new(workers: usize) -> Self {
        Threads {
            workers: workers.max(1),
        }
    }
}

impl Executor for Threads {
    fn map_edges<T: Send, F: Fn(EdgeId) -> T + Sync>(&self, items: &[EdgeId], f: F) -> Vec<T> {
        if self.workers == 1 || items.len() < 2 {
            return items.iter().map(|&e| f(e)).collect();
        }
        let chunk = items.len().div_ceil(self.workers);
        let f = &f;
        thread::scope(|s| {
            let handles: Vec<_> = items
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(|&e| f(e)).collect::<Vec<T>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<EdgeId> = (0..103).map(EdgeId).collect();
        for w in [1, 2, 4, 7, 200] {
            let out = Threads::new(w).map_edges(&items, |e| e.0 * 3);
            assert_eq!(out, (0..103).map(|i| i * 3).collect::<Vec<_>>());
        }
    }
}
