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

//! Text formats: `mg` multigraph files, colouring dumps and orientations.
//!
//! ```text
//! mg <vertex_count> <edge_count> <Δ> <π>
//! u v k            one line per edge
//! ```
//!
//! A colouring dump has one `edge_index colour` line per edge, `0` meaning
//! uncoloured. An orientation has one `edge_index tail head` line per edge.

use std::fmt::Write as _;

use vizing_core::engine::Orientation;
use vizing_core::{Colour, GraphError, Multigraph, PartialColouring};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn error(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn numbers<const N: usize>(line_no: usize, line: &str, what: &str) -> Result<[u64; N], ParseError> {
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    if fields.len() != N {
        return Err(error(
            line_no,
            format!("expected {N} fields for {what}, found {}", fields.len()),
        ));
    }
    let mut out = [0; N];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field
            .parse()
            .map_err(|_| error(line_no, format!("`{field}` is not a non-negative integer")))?;
    }
    Ok(out)
}

/// Content lines with their 1-based numbers; a single trailing newline is
/// allowed, blank lines elsewhere are not.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.strip_suffix('\n')
        .unwrap_or(text)
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
}

pub fn parse_mg(text: &str) -> Result<Multigraph, ParseError> {
    let mut it = lines(text);
    let (_, header) = it.next().ok_or_else(|| error(1, "missing header"))?;
    let rest = header
        .strip_prefix("mg")
        .filter(|r| r.is_empty() || r.starts_with([' ', '\t']))
        .ok_or_else(|| error(1, "header must start with `mg`"))?;
    let [n, m, delta, pi] = numbers::<4>(1, rest, "the header `mg n m Δ π`")?;
    let n = usize::try_from(n).map_err(|_| error(1, "vertex count too large"))?;
    let to_u32 =
        |v: u64, what: &str| u32::try_from(v).map_err(|_| error(1, format!("{what} too large")));
    let (delta, pi) = (to_u32(delta, "Δ")?, to_u32(pi, "π")?);
    let mut triples = Vec::new();
    for (line_no, line) in it {
        if triples.len() as u64 == m {
            return Err(error(
                line_no,
                format!("unexpected content after {m} edges"),
            ));
        }
        let [u, v, k] = numbers::<3>(line_no, line, "an edge `u v k`")?;
        let (u, v) = (u as usize, v as usize);
        for w in [u, v] {
            if w >= n {
                return Err(error(
                    line_no,
                    format!("vertex {w} out of range for {n} vertices"),
                ));
            }
        }
        if u == v {
            return Err(error(line_no, format!("self-loop at vertex {u}")));
        }
        if k == 0 || k > u64::from(u32::MAX) {
            return Err(error(
                line_no,
                format!("multiplicity index {k} out of range"),
            ));
        }
        triples.push((u, v, k as u32));
    }
    if (triples.len() as u64) < m {
        return Err(error(
            triples.len() + 2,
            format!("expected {m} edges, found {}", triples.len()),
        ));
    }
    Multigraph::with_bounds(n, &triples, delta, pi).map_err(|e| match e {
        GraphError::SelfLoop { index, .. } | GraphError::VertexOutOfRange { index, .. } => {
            error(index + 2, e.to_string())
        }
        _ => error(1, e.to_string()),
    })
}

pub fn write_mg(g: &Multigraph) -> String {
    let mut out = format!(
        "mg {} {} {} {}\n",
        g.vertex_count(),
        g.edge_count(),
        g.delta(),
        g.pi()
    );
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.k).unwrap();
    }
    out
}

pub fn parse_colouring(text: &str, g: &Multigraph) -> Result<Vec<Option<Colour>>, ParseError> {
    let m = g.edge_count();
    let mut out: Vec<Option<Option<Colour>>> = vec![None; m];
    let mut last = 0;
    if !text.is_empty() {
        for (line_no, line) in lines(text) {
            last = line_no;
            let [e, k] = numbers::<2>(line_no, line, "`edge_index colour`")?;
            let e = e as usize;
            if e >= m {
                return Err(error(
                    line_no,
                    format!("edge {e} out of range for {m} edges"),
                ));
            }
            if out[e].is_some() {
                return Err(error(line_no, format!("edge {e} listed twice")));
            }
            let colour = match k {
                0 => None,
                k if k as usize <= g.palette_size() => Colour::new(k as usize),
                k => {
                    return Err(error(
                        line_no,
                        format!("colour {k} outside the palette 1..={}", g.palette_size()),
                    ))
                }
            };
            out[e] = Some(colour);
        }
    }
    if let Some(e) = out.iter().position(Option::is_none) {
        return Err(error(last + 1, format!("no colour given for edge {e}")));
    }
    Ok(out.into_iter().map(|c| c.expect("checked")).collect())
}

pub fn write_colouring(c: &PartialColouring<'_>) -> String {
    let mut out = String::new();
    for (i, k) in c.assignment().iter().enumerate() {
        writeln!(out, "{i} {}", k.map_or(0, |k| k.get())).unwrap();
    }
    out
}

pub fn write_orientation(o: &Orientation) -> String {
    let mut out = String::new();
    for (i, (t, h)) in o.arcs.iter().enumerate() {
        writeln!(out, "{i} {t} {h}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Multigraph::build(3, &[(0, 1, 1), (0, 1, 2), (2, 1, 1)]).unwrap();
        let text = write_mg(&g);
        assert_eq!(text, "mg 3 3 3 2\n0 1 1\n0 1 2\n1 2 1\n");
        assert_eq!(parse_mg(&text).unwrap(), g);
        assert_eq!(parse_mg("mg 0 0 0 0\n").unwrap().edge_count(), 0);
        assert_eq!(parse_mg("mg 0 0 0 0").unwrap().edge_count(), 0);
    }

    #[test]
    fn declared_bounds_are_kept() {
        let g = parse_mg("mg 3 1 4 2\n0 1 1\n").unwrap();
        assert_eq!((g.delta(), g.pi()), (4, 2));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let line = |t: &str| parse_mg(t).unwrap_err().line;
        assert_eq!(line(""), 1);
        assert_eq!(line("graph 1 0 0 0\n"), 1);
        assert_eq!(line("mgx 1 0 0 0\n"), 1);
        assert_eq!(line("mg 2 1 1\n0 1 1\n"), 1);
        assert_eq!(line("mg 2 2 1 1\n0 1 1\n0 2 1\n"), 3);
        assert_eq!(line("mg 2 1 1 1\n0 0 1\n"), 2);
        assert_eq!(line("mg 2 1 1 1\n0 1 0\n"), 2);
        assert_eq!(line("mg 2 1 1 1\n0 1 x\n"), 2);
        assert_eq!(line("mg 2 1 1 1\n0 1 1\n0 1 2\n"), 3);
        assert_eq!(line("mg 3 2 1 1\n0 1 1\n"), 3);
        assert_eq!(line("mg 2 1 1 1\n\n"), 2);
        let e = parse_mg("mg 3 2 1 1\n0 1 1\n1 2 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("degree"));
    }

    #[test]
    fn colouring_dumps() {
        let g = Multigraph::build(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let a = parse_colouring("1 2\n0 0\n", &g).unwrap();
        assert_eq!(a, [None, Colour::new(2)]);
        let c = PartialColouring::from_assignment(&g, &a).unwrap();
        assert_eq!(write_colouring(&c), "0 0\n1 2\n");
        assert_eq!(parse_colouring("0 1\n", &g).unwrap_err().line, 2);
        assert_eq!(parse_colouring("0 1\n0 2\n", &g).unwrap_err().line, 2);
        assert_eq!(parse_colouring("0 4\n1 1\n", &g).unwrap_err().line, 1);
        assert_eq!(parse_colouring("2 1\n", &g).unwrap_err().line, 1);
    }
}
