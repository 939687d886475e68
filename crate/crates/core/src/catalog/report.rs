use std::fmt::Write;

use crate::error::{Error, Result};
use crate::oracle::{CountTable, Oracle};
use crate::search::Engine;
use crate::seqcore::{profile_fast, BinarySequence};

/// Which enumerator fills a count table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableEngine {
    Oracle,
    BranchAndBound,
}

impl std::str::FromStr for TableEngine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Self::Oracle),
            "bnb" => Ok(Self::BranchAndBound),
            other => Err(format!("unknown table engine {other:?}")),
        }
    }
}

/// Full correlation report for one sequence.
pub fn compute_report(seq: &BinarySequence) -> String {
    let profile = profile_fast(seq);
    let mf = profile.merit_factor();
    let sidelobes: Vec<String> = profile.sidelobes().iter().map(i32::to_string).collect();
    let mut out = String::new();
    writeln!(out, "N: {}", seq.len()).unwrap();
    writeln!(out, "hex: {}", seq.to_hex()).unwrap();
    writeln!(out, "sequence: {seq}").unwrap();
    writeln!(out, "sidelobes: {}", sidelobes.join(" ")).unwrap();
    writeln!(out, "PSL: {}", profile.psl()).unwrap();
    writeln!(out, "energy: {}", profile.energy()).unwrap();
    writeln!(
        out,
        "MF: {} ({}/{})",
        mf.to_decimal(),
        mf.numerator(),
        mf.denominator()
    )
    .unwrap();
    out
}

/// Orbit counts by exact PSL, one row per length.
pub fn build_table(
    engine_kind: TableEngine,
    n_min: usize,
    n_max: usize,
    max_psl: u32,
    workers: usize,
) -> Result<CountTable> {
    match engine_kind {
        TableEngine::Oracle => Oracle::new(workers).count_table(n_min, n_max, max_psl),
        TableEngine::BranchAndBound => {
            if n_min > n_max || n_min < 2 {
                return Err(Error::InvalidRange {
                    min: n_min,
                    max: n_max,
                });
            }
            let engine = Engine::default().with_workers(workers);
            let mut records = Vec::new();
            for n in n_min..=n_max {
                records.extend(engine.enumerate(n, max_psl)?.0);
            }
            Ok(CountTable::from_records(n_min..=n_max, max_psl, &records))
        }
    }
}

/// Tab-separated table: header `N PSL1 .. PSLk`, then one row per length.
pub fn format_table(table: &CountTable) -> String {
    let mut out = String::from("N");
    for p in 1..=table.max_psl {
        write!(out, "\tPSL{p}").unwrap();
    }
    out.push('\n');
    for row in &table.rows {
        write!(out, "{}", row.n).unwrap();
        for c in &row.counts {
            write!(out, "\t{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_contents() {
        let r = compute_report(&BinarySequence::from_hex("00CA", 13).unwrap());
        assert!(r.contains("PSL: 1\n"));
        assert!(r.contains("MF: 14.083 (169/12)\n"));
        assert!(r.contains("energy: 6\n"));
        let r = compute_report(&BinarySequence::from_hex("1A", 8).unwrap());
        assert!(r.contains("PSL: 2\n") && r.contains("MF: 4.000"));
        let r = compute_report(&BinarySequence::from_hex("0", 2).unwrap());
        assert!(r.contains("PSL: 1\n") && r.contains("MF: 2.000"));
    }

    #[test]
    fn engines_agree_up_to_16() {
        let oracle = build_table(TableEngine::Oracle, 2, 16, 5, 4).unwrap();
        let bnb = build_table(TableEngine::BranchAndBound, 2, 16, 5, 4).unwrap();
        assert_eq!(format_table(&oracle), format_table(&bnb));
    }

    #[test]
    fn table_layout() {
        let t = build_table(TableEngine::Oracle, 5, 6, 5, 1).unwrap();
        assert_eq!(
            format_table(&t),
            "N\tPSL1\tPSL2\tPSL3\tPSL4\tPSL5\n5\t1\t3\t1\t1\t0\n6\t0\t4\t4\t1\t1\n"
        );
    }
}
