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

//! Pluggable execution of independent per-edge work.

use alloc::vec::Vec;

use crate::multigraph::EdgeId;

/// Maps a function over edges. Implementations may run the calls in any
/// order or in parallel but must return results in input order.
pub trait Executor {
    fn map_edges<T, F>(&self, items: &[EdgeId], f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(EdgeId) -> T + Sync;
}

/// Runs every call on the current thread, in order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_edges<T, F>(&self, items: &[EdgeId], f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(EdgeId) -> T + Sync,
    {
        items.iter().map(|&e| f(e)).collect()
    }
}
