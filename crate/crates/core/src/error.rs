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

use crate::multigraph::EdgeId;
use crate::palette::Colour;

/// Errors raised by chain construction and chain operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("edge {0} does not exist")]
    EdgeOutOfRange(EdgeId),
    #[error("vertex {0} does not exist")]
    VertexOutOfRange(usize),
    #[error("edges at positions {position} and {} do not intersect", position + 1)]
    Disconnected { position: usize },
    #[error("chain is not shiftable")]
    NotShiftable,
    #[error("chain is not augmenting")]
    NotAugmenting,
    #[error("edge {0} is already coloured")]
    EdgeColoured(EdgeId),
    #[error("vertex {vertex} is not an endpoint of edge {edge}")]
    NotAnEndpoint { vertex: usize, edge: EdgeId },
    #[error("colour {colour} is not missing at vertex {vertex}")]
    ColourNotMissing { vertex: usize, colour: Colour },
    #[error("the two path colours must differ")]
    EqualColours,
    #[error("the colourings disagree on edge {0} of the path")]
    ColouringsDisagree(EdgeId),
    #[error("the fan has no repeated available colour")]
    NoRepeatedColour,
    #[error("the fan is augmenting, so there is no alternating path")]
    FanAugmenting,
    #[error("edge {0} is not suitable")]
    NotSuitable(EdgeId),
    #[error("edge {0} is not superb")]
    NotSuperb(EdgeId),
    #[error("path has {length} edges, fewer than the required {required}")]
    PathTooShort { length: usize, required: usize },
    #[error("colour {colour} is outside the palette of size {palette}")]
    ColourOutOfPalette { colour: usize, palette: usize },
    #[error("assignment has {actual} entries but the graph has {expected} edges")]
    LengthMismatch { expected: usize, actual: usize },
}
