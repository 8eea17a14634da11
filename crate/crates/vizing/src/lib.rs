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

//! Standard-library companion to `vizing-core`: `mg` and colouring file
//! formats, JSON reports, a thread-pool executor and the `vizing` command
//! line.

pub mod cli;
pub mod formats;
pub mod report;
pub mod threads;

pub use threads::Threads;
