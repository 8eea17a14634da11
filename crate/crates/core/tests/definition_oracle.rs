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

mod support;

use support::oracle;

#[test]
fn small_graph_classes_are_counted_once() {
    let counts: Vec<usize> = (1..=5).map(|m| oracle::small_graphs(m).len()).collect();
    assert_eq!(counts, [1, 3, 7, 17, 40]);
}

#[test]
fn constructions_match_their_definitions_up_to_five_edges() {
    let tally = oracle::exhaustive(5);
    assert_eq!(tally.graphs, 40);
    assert!(tally.states > tally.graphs);
}

#[test]
fn conditional_fans_match_their_definition_on_long_paths() {
    assert!(oracle::long_path_conditional_fans() > 100);
}
