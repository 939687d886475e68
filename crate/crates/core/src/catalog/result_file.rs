use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::ClassRecord;
use crate::seqcore::BinarySequence;

#[derive(Debug, Serialize, Deserialize)]
struct RecordLine {
    n: usize,
    psl: u32,
    canonical_hex: String,
    mf: String,
    mf_num: u64,
    mf_den: u64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct SummaryEntry {
    n: usize,
    psl: u32,
    count: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SummaryLine {
    summary: Vec<SummaryEntry>,
}

/// Parsed contents of a result file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultFile {
    pub records: Vec<ClassRecord>,
    /// Class counts keyed by `(n, psl)`.
    pub summary: BTreeMap<(usize, u32), usize>,
}

fn summarize(records: &[ClassRecord]) -> BTreeMap<(usize, u32), usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry((r.n(), r.psl())).or_insert(0) += 1;
    }
    out
}

/// JSON lines: one record per line sorted by `(n, psl, canonical_hex)`,
/// then a summary line with the count per `(n, psl)`.
pub fn render_results(records: &[ClassRecord]) -> String {
    let mut sorted = records.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = String::new();
    for r in &sorted {
        let mf = r.merit_factor();
        let line = RecordLine {
            n: r.n(),
            psl: r.psl(),
            canonical_hex: r.canonical_hex(),
            mf: mf.to_decimal(),
            mf_num: mf.numerator(),
            mf_den: mf.denominator(),
        };
        out.push_str(&serde_json::to_string(&line).expect("serializable"));
        out.push('\n');
    }
    let summary = SummaryLine {
        summary: summarize(&sorted)
            .into_iter()
            .map(|((n, psl), count)| SummaryEntry { n, psl, count })
            .collect(),
    };
    out.push_str(&serde_json::to_string(&summary).expect("serializable"));
    out.push('\n');
    out
}

pub fn write_results(records: &[ClassRecord], mut out: impl Write) -> Result<()> {
    out.write_all(render_results(records).as_bytes())?;
    Ok(())
}

/// Parses and re-verifies a result file.
///
/// Every record is decoded and recomputed; the stored PSL, merit factor and
/// canonical form must agree, and the summary must match the records.
pub fn parse_results(text: &str) -> Result<ResultFile> {
    let err = |line: usize, reason: String| Error::Parse {
        kind: "result",
        line,
        reason,
    };
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let (last, body) = lines
        .split_last()
        .ok_or_else(|| err(0, "missing summary line".into()))?;
    let mut records = Vec::with_capacity(body.len());
    for (idx, line) in body.iter().enumerate() {
        let lineno = idx + 1;
        let parsed: RecordLine =
            serde_json::from_str(line).map_err(|e| err(lineno, e.to_string()))?;
        let seq = BinarySequence::from_hex(&parsed.canonical_hex, parsed.n)
            .map_err(|e| err(lineno, e.to_string()))?;
        let record = ClassRecord::from_sequence(&seq);
        let mf = record.merit_factor();
        if record.canonical_hex() != parsed.canonical_hex
            || record.psl() != parsed.psl
            || mf.numerator() != parsed.mf_num
            || mf.denominator() != parsed.mf_den
            || mf.to_decimal() != parsed.mf
        {
            return Err(err(lineno, format!("record does not verify: {line}")));
        }
        if let Some(prev) = records.last() {
            if *prev >= record {
                return Err(err(lineno, "records not strictly sorted".into()));
            }
        }
        records.push(record);
    }
    let summary_line: SummaryLine =
        serde_json::from_str(last).map_err(|e| err(lines.len(), e.to_string()))?;
    let summary: BTreeMap<(usize, u32), usize> = summary_line
        .summary
        .iter()
        .map(|e| ((e.n, e.psl), e.count))
        .collect();
    if summary != summarize(&records) {
        return Err(err(lines.len(), "summary does not match records".into()));
    }
    Ok(ResultFile { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_all;
    use proptest::prelude::*;

    fn rec(hex: &str, n: usize) -> ClassRecord {
        ClassRecord::from_sequence(&BinarySequence::from_hex(hex, n).unwrap())
    }

    #[test]
    fn line_format() {
        let text = render_results(&[rec("00CA", 13)]);
        assert_eq!(
            text,
            "{\"n\":13,\"psl\":1,\"canonical_hex\":\"00CA\",\"mf\":\"14.083\",\"mf_num\":169,\"mf_den\":12}\n\
             {\"summary\":[{\"n\":13,\"psl\":1,\"count\":1}]}\n"
        );
        assert_eq!(render_results(&[]), "{\"summary\":[]}\n");
    }

    #[test]
    fn rejects_tampering() {
        let good = render_results(&[rec("0D", 7)]);
        assert!(parse_results(&good).is_ok());
        assert!(parse_results(&good.replace("\"psl\":1,", "\"psl\":2,")).is_err());
        assert!(parse_results(&good.replace("\"count\":1", "\"count\":2")).is_err());
        assert!(parse_results(&good.replace("0D", "58")).is_err());
        assert!(parse_results("").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 2usize..=12, picks in proptest::collection::vec(any::<proptest::sample::Index>(), 0..20)) {
            let all = enumerate_all(n).unwrap();
            let mut chosen: Vec<ClassRecord> = picks.iter().map(|i| all[i.index(all.len())].clone()).collect();
            let parsed = parse_results(&render_results(&chosen)).unwrap();
            chosen.sort();
            chosen.dedup();
            prop_assert_eq!(parsed.records, chosen);
        }
    }
}
