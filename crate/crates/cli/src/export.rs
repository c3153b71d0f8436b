//! Graph exports. Vertices are written by variable name; vertices and edges
//! come out in index order, so equal graphs give identical text.

use std::fmt::Write;
use std::str::FromStr;

use markovnet_core::{UndirectedGraph, VariableSpec};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExportFormat {
    Dot,
    AdjacencyTsv,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Dot => "dot",
            ExportFormat::AdjacencyTsv => "adj.tsv",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "dot" => Ok(ExportFormat::Dot),
            "tsv" | "adjacency-tsv" => Ok(ExportFormat::AdjacencyTsv),
            other => Err(CliError::UnknownFormat(other.to_string())),
        }
    }
}

/// Parses a comma-separated format list such as `dot,tsv`.
pub fn parse_formats(list: &str) -> Result<Vec<ExportFormat>, CliError> {
    let mut out: Vec<ExportFormat> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn export(g: &UndirectedGraph, specs: &[VariableSpec], format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => to_dot(g, specs),
        ExportFormat::AdjacencyTsv => to_adjacency_tsv(g, specs),
    }
}

fn quoted(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &UndirectedGraph, specs: &[VariableSpec]) -> String {
    let mut out = String::from("graph markov {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", quoted(&specs[v].name)).unwrap();
    }
    for (i, j) in g.edges() {
        writeln!(out, "  {} -- {};", quoted(&specs[i].name), quoted(&specs[j].name)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Symmetric 0/1 matrix; the first row and column hold the names.
pub fn to_adjacency_tsv(g: &UndirectedGraph, specs: &[VariableSpec]) -> String {
    let vs: Vec<usize> = g.vertices().collect();
    let mut out = String::new();
    for &v in &vs {
        out.push('\t');
        out.push_str(&specs[v].name);
    }
    out.push('\n');
    for &i in &vs {
        out.push_str(&specs[i].name);
        for &j in &vs {
            out.push_str(if g.has_edge(i, j) { "\t1" } else { "\t0" });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use markovnet_core::{discover, synth::moussouris};

    fn names(n: usize) -> Vec<VariableSpec> {
        (1..=n).map(|i| VariableSpec::new(format!("X{i}"), 2)).collect()
    }

    #[test]
    fn four_cycle_dot() {
        let p = moussouris();
        let g = discover(&p, 1e-9).unwrap().graph;
        let dot = to_dot(&g, p.specs());
        let expected = "graph markov {\n  \"X1\";\n  \"X2\";\n  \"X3\";\n  \"X4\";\n  \"X1\" -- \"X2\";\n  \"X1\" -- \"X4\";\n  \"X2\" -- \"X3\";\n  \"X3\" -- \"X4\";\n}\n";
        assert_eq!(dot, expected);
        let again = discover(&p, 1e-9).unwrap().graph;
        assert_eq!(to_dot(&again, p.specs()), dot);
    }

    #[test]
    fn adjacency_matrices() {
        let empty = UndirectedGraph::new(0..2);
        assert_eq!(to_adjacency_tsv(&empty, &names(2)), "\tX1\tX2\nX1\t0\t0\nX2\t0\t0\n");
        let k3 = UndirectedGraph::complete(0..3);
        assert_eq!(
            to_adjacency_tsv(&k3, &names(3)),
            "\tX1\tX2\tX3\nX1\t0\t1\t1\nX2\t1\t0\t1\nX3\t1\t1\t0\n"
        );
    }

    #[test]
    fn formats() {
        assert_eq!(
            parse_formats("tsv,dot").unwrap(),
            vec![ExportFormat::Dot, ExportFormat::AdjacencyTsv]
        );
        assert!(matches!(parse_formats("png"), Err(CliError::UnknownFormat(_))));
    }
}
