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

//! JSON and TSV renderings of audit reports, round logs and statistics.
//!
//! Integers are JSON numbers; rationals are reduced `"a/b"` strings (always
//! with a denominator); optional values are `null`.

use serde_json::{json, Map, Value};

use vizing_core::audit::{
    AuditReport, DegreeCheck, FractionCheck, Improvement, ImprovementKind, LowerDegreeCheck, Mode,
    SuperbCount,
};
use vizing_core::engine::RoundRecord;
use vizing_core::BigRational;

pub fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Simple => "simple",
        Mode::Iterated => "iterated",
    }
}

fn degree(d: &DegreeCheck) -> Value {
    json!({
        "max_degree": d.max_degree,
        "bound": d.bound as u64,
        "worst_edge": d.worst.map(|e| e.0),
        "pass": d.pass,
    })
}

fn fraction(f: &FractionCheck) -> Value {
    json!({
        "fraction": rational(&f.fraction),
        "bound": rational(&f.bound),
        "outcome": f.outcome.as_str(),
    })
}

fn lower(d: &LowerDegreeCheck) -> Value {
    json!({
        "min_degree": d.min_degree,
        "bound": rational(&d.bound),
        "worst_edge": d.worst.map(|e| e.0),
        "outcome": d.outcome.as_str(),
    })
}

fn improvement(i: &Improvement) -> Value {
    let (kind, len, suitable) = match i.kind {
        ImprovementKind::AugmentingFan => ("augmenting-fan", None, None),
        ImprovementKind::ShortPath { len } => ("short-path", Some(len), None),
        ImprovementKind::ShortSecondPath { suitable, len } => {
            ("short-second-path", Some(len), Some(suitable.0))
        }
    };
    json!({ "edge": i.edge.0, "vertex": i.vertex, "kind": kind, "length": len, "suitable_edge": suitable })
}

fn superb(s: &SuperbCount) -> Value {
    json!({
        "edge": s.edge.0,
        "vertex": s.vertex,
        "gamma": s.gamma.get(),
        "theta": s.theta.get(),
        "count": s.count,
        "suitable": s.suitable,
        "superb": s.superb,
        "bound": rational(&s.bound),
        "outcome": s.outcome.as_str(),
    })
}

/// The audit report document; `l` and `mode` echo the request.
pub fn audit_json(r: &AuditReport, l: Option<usize>, mode: Mode) -> Value {
    json!({
        "L": l,
        "mode": mode_name(mode),
        "edges": r.edges,
        "uncoloured": r.uncoloured,
        "proper": r.proper,
        "palette_respected": r.palette_respected,
        "max_deg_simple": r.max_deg_simple,
        "max_deg_iterated": r.max_deg_iterated,
        "simple_degree": degree(&r.simple_degree),
        "iterated_degree": degree(&r.iterated_degree),
        "min_uncoloured_deg": r.min_uncoloured_deg,
        "uncoloured_fraction": rational(&r.uncoloured_fraction),
        "unimprovable": r.unimprovable,
        "first_improvement": r.first_improvement.as_ref().map(improvement),
        "fraction_check": r.fraction_check.as_ref().map(fraction),
        "lower_degree": r.lower_degree.as_ref().map(lower),
        "superb_count_checks": r.superb_count_checks.iter().map(superb).collect::<Vec<_>>(),
        "weighted_min_mass": r.weighted_min_mass.as_ref().map(rational),
        "all_pass": r.all_pass(),
    })
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// `key<TAB>value` lines, nested keys joined with dots.
pub fn to_tsv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    rows.into_iter()
        .map(|(k, v)| format!("{k}\t{v}\n"))
        .collect()
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

pub fn round_json(r: &RoundRecord) -> String {
    json!({
        "round": r.round,
        "class_index": r.class_index,
        "candidates": r.candidates,
        "augmented": r.augmented,
        "recoloured": r.recoloured,
        "uncoloured_remaining": r.uncoloured_remaining,
    })
    .to_string()
}

/// One row of the `stats` sweep.
#[derive(Clone, Debug)]
pub struct StatsRow {
    pub l: usize,
    pub fraction: BigRational,
    pub simple_bound: BigRational,
    pub iterated_bound: BigRational,
    pub simple_outcome: &'static str,
    pub iterated_outcome: &'static str,
}

pub const STATS_HEADER: [&str; 6] = [
    "L",
    "uncoloured_fraction",
    "simple_bound",
    "iterated_bound",
    "simple_outcome",
    "iterated_outcome",
];

pub fn stats_tsv(rows: &[StatsRow]) -> String {
    let mut out = STATS_HEADER.join("\t");
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            r.l,
            rational(&r.fraction),
            rational(&r.simple_bound),
            rational(&r.iterated_bound),
            r.simple_outcome,
            r.iterated_outcome
        ));
    }
    out
}

pub fn stats_json(rows: &[StatsRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("L".into(), json!(r.l));
                m.insert("uncoloured_fraction".into(), json!(rational(&r.fraction)));
                m.insert("simple_bound".into(), json!(rational(&r.simple_bound)));
                m.insert("iterated_bound".into(), json!(rational(&r.iterated_bound)));
                m.insert("simple_outcome".into(), json!(r.simple_outcome));
                m.insert("iterated_outcome".into(), json!(r.iterated_outcome));
                Value::Object(m)
            })
            .collect(),
    )
}
