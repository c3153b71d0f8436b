//! Tab-separated reports.
//!
//! The discovery report has two sections separated by a blank line:
//!
//! ```text
//! SUBSET  INFO_CONTENT
//! V       1.000000
//! V\{X1}  0.500000
//! ...
//!
//! PAIR    KL        ADJACENT
//! X1,X2   0.188722  1
//! ```

use std::fmt::Write;

use markovnet_core::{precompute, Discovery, InfoContentCache, JointDistribution, PairReport, VariableSpec};

/// Six decimals, with rounding-level negatives shown as zero.
pub fn fmt_bits(v: f64) -> String {
    let v = if v <= 0.0 && v > -5e-7 { 0.0 } else { v };
    format!("{v:.6}")
}

/// `V` or `V\{a,b}`.
pub fn subset_label(removed: &[usize], specs: &[VariableSpec]) -> String {
    if removed.is_empty() {
        return "V".to_string();
    }
    let names: Vec<&str> = removed.iter().map(|&i| specs[i].name.as_str()).collect();
    format!("V\\{{{}}}", names.join(","))
}

pub fn cache_tsv(cache: &InfoContentCache, specs: &[VariableSpec]) -> String {
    let mut out = String::from("SUBSET\tINFO_CONTENT\n");
    writeln!(out, "{}\t{}", subset_label(&[], specs), fmt_bits(cache.full())).unwrap();
    for (i, v) in cache.minus_one_entries() {
        writeln!(out, "{}\t{}", subset_label(&[i], specs), fmt_bits(v)).unwrap();
    }
    for ((i, j), v) in cache.minus_two_entries() {
        writeln!(out, "{}\t{}", subset_label(&[i, j], specs), fmt_bits(v)).unwrap();
    }
    out
}

pub fn pairs_tsv(pairs: &[PairReport], specs: &[VariableSpec]) -> String {
    let mut out = String::from("PAIR\tKL\tADJACENT\n");
    for r in pairs {
        let (i, j) = r.pair;
        writeln!(
            out,
            "{},{}\t{}\t{}",
            specs[i].name,
            specs[j].name,
            fmt_bits(r.kl),
            u8::from(r.adjacent)
        )
        .unwrap();
    }
    out
}

pub fn discovery_report(d: &Discovery, specs: &[VariableSpec]) -> String {
    format!("{}\n{}", cache_tsv(&d.cache, specs), pairs_tsv(&d.pairs, specs))
}

/// Summary of a distribution followed by its information-content table
/// (the table needs at least two variables).
pub fn info_report(p: &JointDistribution) -> Result<String, markovnet_core::Error> {
    let specs = p.specs();
    let mut out = String::new();
    writeln!(out, "n\t{}", p.scope().len()).unwrap();
    let cards: Vec<String> = p
        .scope()
        .iter()
        .map(|i| format!("{}:{}", specs[i].name, specs[i].cardinality))
        .collect();
    writeln!(out, "cardinalities\t{}", cards.join(" ")).unwrap();
    writeln!(out, "support\t{}", p.support_size()).unwrap();
    writeln!(out, "H(X)\t{}", fmt_bits(p.entropy())).unwrap();
    writeln!(out, "I(X)\t{}", fmt_bits(p.information_content(p.scope())?)).unwrap();
    if p.scope().len() >= 2 {
        out.push('\n');
        out.push_str(&cache_tsv(&precompute(p)?, specs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use markovnet_core::{discover, synth::moussouris};

    #[test]
    fn moussouris_report() {
        let p = moussouris();
        let text = discovery_report(&discover(&p, 1e-9).unwrap(), p.specs());
        let expected = "SUBSET\tINFO_CONTENT\n\
V\t1.000000\n\
V\\{X1}\t0.500000\n\
V\\{X2}\t0.500000\n\
V\\{X3}\t0.500000\n\
V\\{X4}\t0.500000\n\
V\\{X1,X2}\t0.188722\n\
V\\{X1,X3}\t0.000000\n\
V\\{X1,X4}\t0.188722\n\
V\\{X2,X3}\t0.188722\n\
V\\{X2,X4}\t0.000000\n\
V\\{X3,X4}\t0.188722\n\
\n\
PAIR\tKL\tADJACENT\n\
X1,X2\t0.188722\t1\n\
X1,X3\t0.000000\t0\n\
X1,X4\t0.188722\t1\n\
X2,X3\t0.188722\t1\n\
X2,X4\t0.000000\t0\n\
X3,X4\t0.188722\t1\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn negative_zero_is_not_printed() {
        assert_eq!(fmt_bits(-1e-17), "0.000000");
        assert_eq!(fmt_bits(-0.25), "-0.250000");
    }

    #[test]
    fn info_for_point_mass() {
        let p = JointDistribution::new(
            vec![VariableSpec::new("a", 2), VariableSpec::new("b", 2)],
            [(vec![1, 0], 1.0)],
        )
        .unwrap();
        let text = info_report(&p).unwrap();
        assert!(text.contains("H(X)\t0.000000\n"));
        assert!(text.contains("I(X)\t0.000000\n"));
    }
}
