//! Text formats.
//!
//! Distribution:
//!
//! ```text
//! VARS A:2 B:3
//! # comment
//! 0 2 0.25
//! 1 0 0.75
//! ```
//!
//! Cluster tree (variable names refer to a distribution's `VARS`):
//!
//! ```text
//! CLUSTERS A,B;B,C
//! EDGES 0-1
//! ```
//!
//! Probabilities are written as the shortest decimal that parses back to the
//! same `f64`, so a write/read cycle is exact.

use std::collections::BTreeSet;
use std::fmt::Write;

use markovnet_core::{ClusterTree, JointDistribution, VarSet, VariableSpec};

use crate::ParseError;

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest.trim())
    } else {
        None
    }
}

pub fn parse_distribution(text: &str) -> Result<JointDistribution, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing VARS line"))?;
    let vars = keyword(header, "VARS")
        .ok_or_else(|| ParseError::new(header_line, "expected `VARS name:cardinality ...`"))?;
    let mut specs = Vec::new();
    for tok in vars.split_whitespace() {
        let (name, card) = tok
            .rsplit_once(':')
            .ok_or_else(|| ParseError::new(header_line, format!("`{tok}` is not name:cardinality")))?;
        let card: u32 = card
            .parse()
            .map_err(|_| ParseError::new(header_line, format!("bad cardinality in `{tok}`")))?;
        if name.is_empty() {
            return Err(ParseError::new(header_line, format!("empty name in `{tok}`")));
        }
        specs.push(VariableSpec::new(name, card));
    }
    if specs.is_empty() {
        return Err(ParseError::new(header_line, "VARS declares no variables"));
    }

    let n = specs.len();
    let mut cells = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != n + 1 {
            return Err(ParseError::new(
                line,
                format!("expected {n} states and a probability, found {} fields", toks.len()),
            ));
        }
        let states = toks[..n]
            .iter()
            .map(|t| t.parse::<u32>())
            .collect::<Result<Vec<u32>, _>>()
            .map_err(|_| ParseError::new(line, "state indices must be nonnegative integers"))?;
        let p: f64 = toks[n]
            .parse()
            .map_err(|_| ParseError::new(line, format!("`{}` is not a probability", toks[n])))?;
        if !seen.insert(states.clone()) {
            return Err(ParseError::new(line, format!("duplicate cell {states:?}")));
        }
        cells.push((line, states, p));
    }
    // Report cell-level problems against the line they came from.
    for (line, states, p) in &cells {
        for (spec, &s) in specs.iter().zip(states) {
            if s >= spec.cardinality {
                return Err(ParseError::new(
                    *line,
                    format!("state {s} out of range for {}:{}", spec.name, spec.cardinality),
                ));
            }
        }
        if !(*p > 0.0) || !p.is_finite() {
            return Err(ParseError::new(*line, format!("probability {p} is not positive")));
        }
    }
    JointDistribution::new(specs, cells.into_iter().map(|(_, s, p)| (s, p)))
        .map_err(|e| ParseError::new(header_line, e.to_string()))
}

/// Serializes a distribution; cells come out in lexicographic order.
pub fn write_distribution(p: &JointDistribution) -> String {
    write_distribution_with_comment(p, None)
}

pub fn write_distribution_with_comment(p: &JointDistribution, comment: Option<&str>) -> String {
    let mut out = String::from("VARS");
    for i in p.scope().iter() {
        let s = &p.specs()[i];
        write!(out, " {}:{}", s.name, s.cardinality).unwrap();
    }
    out.push('\n');
    if let Some(c) = comment {
        for l in c.lines() {
            writeln!(out, "# {l}").unwrap();
        }
    }
    for (cell, pr) in p.cells() {
        for s in cell {
            write!(out, "{s} ").unwrap();
        }
        writeln!(out, "{pr}").unwrap();
    }
    out
}

/// Parses a cluster tree whose names refer to `specs`. Structural checks
/// (tree shape, running intersection) are left to [`ClusterTree::new`].
pub fn parse_tree(
    text: &str,
    specs: &[VariableSpec],
) -> Result<(Vec<VarSet>, Vec<(usize, usize)>), ParseError> {
    let mut lines = content_lines(text);
    let (cl_line, cl) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing CLUSTERS line"))?;
    let body = keyword(cl, "CLUSTERS")
        .ok_or_else(|| ParseError::new(cl_line, "expected `CLUSTERS a,b;b,c`"))?;
    let mut clusters = Vec::new();
    for group in body.split(';') {
        let mut set = Vec::new();
        for name in group.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let idx = specs
                .iter()
                .position(|s| s.name == name)
                .ok_or_else(|| ParseError::new(cl_line, format!("unknown variable `{name}`")))?;
            set.push(idx);
        }
        clusters.push(VarSet::from(set));
    }

    let mut edges = Vec::new();
    match lines.next() {
        None => {}
        Some((line, l)) => {
            let body = keyword(l, "EDGES")
                .ok_or_else(|| ParseError::new(line, "expected `EDGES i-j ...`"))?;
            for tok in body.split_whitespace() {
                let bad = || ParseError::new(line, format!("`{tok}` is not an edge i-j"));
                let (a, b) = tok.split_once('-').ok_or_else(bad)?;
                edges.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
            }
            if let Some((line, _)) = lines.next() {
                return Err(ParseError::new(line, "unexpected content after EDGES"));
            }
        }
    }
    Ok((clusters, edges))
}

pub fn write_tree(tree: &ClusterTree, specs: &[VariableSpec]) -> String {
    let clusters: Vec<String> = tree
        .clusters()
        .iter()
        .map(|c| {
            c.iter()
                .map(|i| specs[i].name.as_str())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let edges: Vec<String> = tree.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    let mut out = format!("CLUSTERS {}\nEDGES", clusters.join(";"));
    for e in edges {
        out.push(' ');
        out.push_str(&e);
    }
    out.push('\n');
    out
}
