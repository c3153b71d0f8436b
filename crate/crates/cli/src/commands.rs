//! Subcommands of the `markovnet` binary.
//!
//! Distribution arguments name a file in the text format, or the built-in
//! `moussouris` when no such file exists. Tree arguments likewise accept the
//! built-in `figure3`.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use markovnet_core::synth::{self, GeneratorConfig};
use markovnet_core::{
    discover, ClusterTree, Error, JointDistribution, UndirectedGraph, VarSet, VariableSpec,
    NEGATIVE_SLACK,
};

use crate::builtin;
use crate::export::{export, parse_formats};
use crate::format::{parse_distribution, parse_tree, write_distribution, write_distribution_with_comment};
use crate::report::{discovery_report, fmt_bits, info_report, subset_label};
use crate::CliError;

/// Largest state space for which `kl` also evaluates the KL divergence
/// cell by cell.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 20;

#[derive(Debug, Parser)]
#[command(name = "markovnet", version, about = "Information content, junction trees and pairwise Markov network discovery")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Moussouris,
    Figure3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize a distribution and print its information contents.
    Info { dist: String },
    /// Discover the pairwise Markov network of a distribution.
    Discover {
        dist: String,
        /// Pair KL values at or below this count as zero (bits).
        #[arg(long, default_value_t = markovnet_core::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Graph formats to emit: dot, tsv.
        #[arg(long, default_value = "dot,tsv")]
        format: String,
        /// Write PREFIX.report.tsv and PREFIX.<format> instead of printing.
        #[arg(long, value_name = "PREFIX")]
        out: Option<PathBuf>,
    },
    /// Score a junction tree: I(X), its weight and KL(P || P_J).
    Kl { dist: String, tree: String },
    /// Write the junction tree distribution of DIST over TREE.
    Project {
        dist: String,
        tree: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random distribution, optionally projected onto a tree.
    Generate {
        /// Number of variables (defaults to the tree's variable count).
        #[arg(long)]
        vars: Option<usize>,
        /// One cardinality for all variables, or a comma-separated list.
        #[arg(long, default_value = "2")]
        card: String,
        #[arg(long, default_value_t = 1.0)]
        support_fraction: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Tree file (variables X1..Xn) or the built-in `figure3`.
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a built-in example end to end and check it against reference values.
    Demo {
        name: DemoName,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = markovnet_core::DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(io_err("<stdout>"))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(io_err(path))
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must be positive, got {tol}")))
    }
}

pub fn load_distribution(arg: &str) -> Result<JointDistribution, CliError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(d) = builtin::distribution(arg) {
            return Ok(d);
        }
    }
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_distribution(&text).map_err(|source| CliError::Parse {
        path: arg.to_string(),
        source,
    })
}

pub fn load_tree(arg: &str, specs: &[VariableSpec]) -> Result<ClusterTree, CliError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(t) = builtin::tree(arg) {
            return Ok(t);
        }
    }
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let (clusters, edges) = parse_tree(&text, specs).map_err(|source| CliError::Parse {
        path: arg.to_string(),
        source,
    })?;
    Ok(ClusterTree::new(clusters, edges)?)
}

/// Number of distinct names in a tree file's CLUSTERS line.
fn tree_variable_count(arg: &str) -> Result<usize, CliError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(t) = builtin::tree(arg) {
            return Ok(t.variables().len());
        }
    }
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let names: BTreeSet<&str> = text
        .lines()
        .map(str::trim)
        .find_map(|l| l.strip_prefix("CLUSTERS"))
        .unwrap_or("")
        .split([';', ','])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(names.len())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Info { dist } => cmd_info(dist, out),
        Command::Discover {
            dist,
            tol,
            format,
            out: prefix,
        } => cmd_discover(dist, *tol, format, prefix.as_deref(), out),
        Command::Kl { dist, tree } => cmd_kl(dist, tree, out),
        Command::Project {
            dist,
            tree,
            out: path,
        } => cmd_project(dist, tree, path.as_deref(), out),
        Command::Generate {
            vars,
            card,
            support_fraction,
            seed,
            tree,
            out: path,
        } => cmd_generate(
            *vars,
            card,
            *support_fraction,
            *seed,
            tree.as_deref(),
            path.as_deref(),
            out,
        ),
        Command::Demo { name, seed, tol } => match name {
            DemoName::Moussouris => demo_moussouris(*tol, out),
            DemoName::Figure3 => demo_figure3(*seed, *tol, out),
        },
    }
}

pub fn cmd_info(dist: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let p = load_distribution(dist)?;
    emit(out, &info_report(&p)?)
}

pub fn cmd_discover(
    dist: &str,
    tol: f64,
    formats: &str,
    prefix: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    check_tol(tol)?;
    let formats = parse_formats(formats)?;
    let p = load_distribution(dist)?;
    let d = discover(&p, tol)?;
    let report = discovery_report(&d, p.specs());
    match prefix {
        Some(prefix) => {
            let with_ext = |ext: &str| {
                let mut s = prefix.as_os_str().to_owned();
                s.push(".");
                s.push(ext);
                PathBuf::from(s)
            };
            let path = with_ext("report.tsv");
            write_file(&path, &report)?;
            emit(out, &format!("wrote {}\n", path.display()))?;
            for f in formats {
                let path = with_ext(f.extension());
                write_file(&path, &export(&d.graph, p.specs(), f))?;
                emit(out, &format!("wrote {}\n", path.display()))?;
            }
            emit(out, &format!("edges\t{}\n", d.graph.edge_count()))
        }
        None => {
            emit(out, &report)?;
            for f in formats {
                emit(out, "\n")?;
                emit(out, &export(&d.graph, p.specs(), f))?;
            }
            Ok(())
        }
    }
}

pub fn cmd_kl(dist: &str, tree: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let p = load_distribution(dist)?;
    let t = load_tree(tree, p.specs())?;
    let full = p.information_content(p.scope())?;
    let weight = t.weight(&p)?;
    let kl = t.kl_via_decomposition(&p)?;
    if kl < -NEGATIVE_SLACK {
        return Err(Error::NumericalIntegrity {
            what: "KL via decomposition",
            value: kl,
        }
        .into());
    }
    let mut text = format!(
        "I(X)\t{}\nI_J\t{}\nKL\t{}\n",
        fmt_bits(full),
        fmt_bits(weight),
        fmt_bits(kl)
    );
    if p.state_space_size() <= BRUTE_FORCE_LIMIT {
        let brute = p.kl_divergence(&t.project(&p)?)?;
        text.push_str(&format!(
            "KL_brute_force\t{}\nabs_difference\t{:.3e}\n",
            fmt_bits(brute),
            (brute - kl).abs()
        ));
    }
    emit(out, &text)
}

pub fn cmd_project(
    dist: &str,
    tree: &str,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let p = load_distribution(dist)?;
    let t = load_tree(tree, p.specs())?;
    let text = write_distribution(&t.project(&p)?);
    match path {
        Some(path) => write_file(path, &text),
        None => emit(out, &text),
    }
}

fn parse_cards(card: &str, vars: Option<usize>) -> Result<Vec<u32>, CliError> {
    let list: Vec<u32> = card
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--card `{card}` is not a list of integers")))?;
    match (list.len(), vars) {
        (1, Some(n)) => Ok(vec![list[0]; n]),
        (1, None) => Err(CliError::Usage(
            "--vars is required unless --card lists every variable or --tree is given".into(),
        )),
        (k, Some(n)) if k != n => Err(CliError::Usage(format!(
            "--card lists {k} cardinalities but --vars is {n}"
        ))),
        _ => Ok(list),
    }
}

pub fn cmd_generate(
    vars: Option<usize>,
    card: &str,
    support_fraction: f64,
    seed: u64,
    tree: Option<&str>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let vars = match (vars, tree) {
        (Some(n), _) => Some(n),
        (None, Some(t)) => Some(tree_variable_count(t)?),
        (None, None) => None,
    };
    let cfg = GeneratorConfig {
        cardinalities: parse_cards(card, vars)?,
        support_fraction,
        seed,
    };
    cfg.validate()?;
    let p = match tree {
        None => synth::random_distribution(&cfg)?,
        Some(t) => {
            let specs: Vec<VariableSpec> = cfg
                .cardinalities
                .iter()
                .enumerate()
                .map(|(i, &c)| VariableSpec::new(format!("X{}", i + 1), c))
                .collect();
            let t = load_tree(t, &specs)?;
            synth::jt_structured_distribution(&cfg, &t)?
        }
    };
    let text = write_distribution_with_comment(&p, Some(&format!("seed {seed}")));
    match path {
        Some(path) => {
            write_file(path, &text)?;
            emit(out, &format!("seed\t{seed}\nwrote {}\n", path.display()))
        }
        None => emit(out, &text),
    }
}

fn ok_mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn names(set: &VarSet, specs: &[VariableSpec]) -> String {
    let names: Vec<&str> = set.iter().map(|i| specs[i].name.as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn zero_based(one_based: &[usize]) -> VarSet {
    one_based.iter().map(|v| v - 1).collect()
}

/// Reproduces the published information contents and pair KL values of the
/// Moussouris distribution, its 4-cycle and its two exact decompositions.
pub fn demo_moussouris(tol: f64, out: &mut dyn Write) -> Result<(), CliError> {
    check_tol(tol)?;
    let mut failures = Vec::new();
    let p = parse_distribution(&write_distribution(&builtin::distribution("moussouris").unwrap()))
        .map_err(|source| CliError::Parse {
            path: "<moussouris>".into(),
            source,
        })?;
    let specs = p.specs();
    let d = discover(&p, tol)?;
    let mut text = String::from("Moussouris distribution: 4 binary variables, 8 equiprobable cells\n\n");

    text.push_str("SUBSET\tREFERENCE\tCOMPUTED\tSTATUS\n");
    let mut info_ok = 0;
    for (removed, want) in builtin::MOUSSOURIS_INFO {
        let rm: Vec<usize> = removed.iter().map(|v| v - 1).collect();
        let got = match rm.as_slice() {
            [] => d.cache.full(),
            [i] => d.cache.minus_one(*i).unwrap(),
            [i, j] => d.cache.minus_two(*i, *j).unwrap(),
            _ => unreachable!(),
        };
        let label = subset_label(&rm, specs);
        let ok = (got - want).abs() <= builtin::REFERENCE_TOLERANCE;
        info_ok += usize::from(ok);
        if !ok {
            failures.push(format!("I({label}) = {got}, expected {want}"));
        }
        text.push_str(&format!("{label}\t{want:.6}\t{}\t{}\n", fmt_bits(got), ok_mark(ok)));
    }

    text.push_str("\nPAIR\tREFERENCE\tCOMPUTED\tSTATUS\n");
    let mut kl_ok = 0;
    for ((i, j), want) in builtin::MOUSSOURIS_PAIR_KL {
        let got = markovnet_core::pair_kl(&d.cache, i - 1, j - 1)?;
        let label = format!("{},{}", specs[i - 1].name, specs[j - 1].name);
        let ok = (got - want).abs() <= builtin::REFERENCE_TOLERANCE;
        kl_ok += usize::from(ok);
        if !ok {
            failures.push(format!("pair KL({label}) = {got}, expected {want}"));
        }
        text.push_str(&format!("{label}\t{want:.6}\t{}\t{}\n", fmt_bits(got), ok_mark(ok)));
    }

    let mut cycle = UndirectedGraph::new(0..4);
    for (i, j) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
        cycle.add_edge(i, j)?;
    }
    let cycle_ok = d.graph == cycle;
    if !cycle_ok {
        failures.push("discovered graph is not the 4-cycle X1-X2-X3-X4".into());
    }
    text.push_str(&format!("\ngraph\t4-cycle X1-X2-X3-X4\t{}\n", ok_mark(cycle_ok)));

    for [c1, c2] in builtin::MOUSSOURIS_DECOMPOSITIONS {
        let t = ClusterTree::path(vec![zero_based(c1), zero_based(c2)])?;
        let formula = t.kl_via_decomposition(&p)?;
        let brute = p.kl_divergence(&t.project(&p)?)?;
        let ok = formula.abs() <= 1e-9 && brute.abs() <= 1e-9;
        let label = format!("{}|{}", names(&zero_based(c1), specs), names(&zero_based(c2), specs));
        if !ok {
            failures.push(format!("decomposition {label}: formula {formula}, brute force {brute}"));
        }
        text.push_str(&format!(
            "decomposition\t{label}\tKL formula {}\tKL brute force {}\t{}\n",
            fmt_bits(formula),
            fmt_bits(brute),
            ok_mark(ok)
        ));
    }

    for (a, b, c) in [(1, 3, [2, 4]), (2, 4, [1, 3])] {
        let ok = p.conditional_independence(
            &VarSet::singleton(a - 1),
            &VarSet::singleton(b - 1),
            &zero_based(&c),
            1e-12,
        )?;
        if !ok {
            failures.push(format!("X{a} is not independent of X{b} given X{},X{}", c[0], c[1]));
        }
        text.push_str(&format!(
            "independence\tX{a} _|_ X{b} | X{},X{}\t{}\n",
            c[0],
            c[1],
            ok_mark(ok)
        ));
    }

    text.push_str(&format!(
        "\n{}: {info_ok}/11 information contents, {kl_ok}/6 pair KL values\n",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    ));
    emit(out, &text)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failures))
    }
}

/// Maximum number of reseeds when a draw is not saturated.
pub const MAX_RESEEDS: u64 = 100;

/// Draws a full-support distribution on 8 binary variables that factorizes
/// over the built-in 8-variable tree, reseeding until it is saturated.
/// Returns the seed actually used.
pub fn figure3_distribution(seed: u64, tol: f64) -> Result<(u64, JointDistribution), CliError> {
    let tree = synth::figure3_tree();
    for attempt in 0..MAX_RESEEDS {
        let s = seed.wrapping_add(attempt);
        let cfg = GeneratorConfig::uniform(8, 2, 1.0, s);
        let p = synth::jt_structured_distribution(&cfg, &tree)?;
        if tree.is_saturated(&p, tol)? {
            return Ok((s, p));
        }
    }
    Err(CliError::CheckFailed(vec![format!(
        "no saturated draw within {MAX_RESEEDS} seeds starting at {seed}"
    )]))
}

/// Recovers the 8-variable graph from a distribution built on its junction
/// tree and compares edges and non-edges with the published partition.
pub fn demo_figure3(seed: u64, tol: f64, out: &mut dyn Write) -> Result<(), CliError> {
    check_tol(tol)?;
    let (used, p) = figure3_distribution(seed, tol)?;
    let tree = synth::figure3_tree();
    let specs = p.specs();
    let d = discover(&p, tol)?;
    let expected: BTreeSet<(usize, usize)> = builtin::FIGURE3_EDGES
        .iter()
        .map(|&(i, j)| (i.min(j) - 1, i.max(j) - 1))
        .collect();

    let mut failures = Vec::new();
    let mut text = format!(
        "8 binary variables, full support, seed {used}, factorized over\n{}\n",
        crate::format::write_tree(&tree, specs)
    );
    text.push_str(&crate::report::pairs_tsv(&d.pairs, specs));
    let (mut edges_ok, mut non_edges_ok) = (0, 0);
    for r in &d.pairs {
        let want = expected.contains(&r.pair);
        if want == r.adjacent {
            if want {
                edges_ok += 1;
            } else {
                non_edges_ok += 1;
            }
        } else {
            let (i, j) = r.pair;
            failures.push(format!(
                "{},{}: expected {}, KL {}",
                specs[i].name,
                specs[j].name,
                if want { "edge" } else { "non-edge" },
                r.kl
            ));
        }
    }
    let kl = tree.kl_via_decomposition(&p)?;
    if kl.abs() > 1e-9 {
        failures.push(format!("KL against the tree is {kl}, expected 0"));
    }
    let total = d.pairs.len();
    text.push_str(&format!(
        "\nKL against tree\t{}\n{}: {edges_ok}/{} edges and {non_edges_ok}/{} non-edges\n",
        fmt_bits(kl),
        if failures.is_empty() { "PASS" } else { "FAIL" },
        expected.len(),
        total - expected.len()
    ));
    emit(out, &text)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failures))
    }
}
