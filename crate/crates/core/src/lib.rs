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

//! Vizing-chain edge colouring for bounded-degree multigraphs.
//!
//! The crate builds the chains used in constructive proofs of Vizing's
//! theorem (alternating paths, fans, Vizing chains and their iterated
//! version), drives colourings with them, and audits the counting bounds
//! attached to those chains on finite instances. It needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod audit;
pub mod chains;
pub mod colouring;
pub mod engine;
pub mod error;
pub mod executor;
pub mod instances;
pub mod iterated;
pub mod multigraph;
pub mod palette;

pub use chains::{
    alternating_path, augment, max_fan, repeated_colour_indices, vizing_chain, AlternatingPath,
    Fan, VizingChain,
};
pub use colouring::{
    classify_chain, is_proper, missing_colours, shift_along, Chain, ChainStatus, Colours, Overlay,
    PartialColouring,
};
pub use error::ChainError;
pub use multigraph::{line_graph_distance, Edge, EdgeId, Endpoints, GraphError, Multigraph};
pub use num_rational::BigRational;
pub use palette::{Colour, ColourSet, MAX_PALETTE};
