//! Restartable enumeration.
//!
//! A checkpoint file starts with a header line
//!
//! ```text
//! checkpoint n=16 bound=2 split_depth=3 engine=psl-core/0.1.0
//! ```
//!
//! followed by one line per finished frontier state:
//!
//! ```text
//! done depth=3 left=0 right=2 nodes=811 classes=0A5F,1B23
//! ```
//!
//! `left` is `a_0 .. a_{m-1}` and `right` is `a_{n-m} .. a_{n-1}`, each read
//! as an `m`-bit number, first element most significant. `classes` lists the
//! canonical hex of every class found below the state, or `-` for none. A
//! trailing line without a newline is an interrupted write and is ignored.

use std::collections::{HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::search::{ClassRecord, Engine, EnumerateRun, PartialState};
use crate::seqcore::BinarySequence;

pub const ENGINE_VERSION: &str = concat!("psl-core/", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckpointHeader {
    pub n: usize,
    pub bound: u32,
    pub split_depth: usize,
    pub engine: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrontierKey {
    pub depth: usize,
    pub left_hex: String,
    pub right_hex: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckpointEntry {
    pub key: FrontierKey,
    pub nodes: u64,
    pub classes: Vec<String>,
}

fn bits_hex(bits: impl IntoIterator<Item = bool>, width: usize) -> String {
    let mut value: u128 = 0;
    for b in bits {
        value = value << 1 | b as u128;
    }
    format!("{:0w$X}", value, w = width.div_ceil(4).max(1))
}

pub fn frontier_key(state: &PartialState) -> FrontierKey {
    let m = state.depth();
    FrontierKey {
        depth: m,
        left_hex: bits_hex(state.left().iter().copied(), m),
        right_hex: bits_hex(state.right(), m),
    }
}

impl CheckpointHeader {
    fn render(&self) -> String {
        format!(
            "checkpoint n={} bound={} split_depth={} engine={}\n",
            self.n, self.bound, self.split_depth, self.engine
        )
    }
}

impl CheckpointEntry {
    fn render(&self) -> String {
        let classes = if self.classes.is_empty() {
            "-".to_string()
        } else {
            self.classes.join(",")
        };
        format!(
            "done depth={} left={} right={} nodes={} classes={}\n",
            self.key.depth, self.key.left_hex, self.key.right_hex, self.nodes, classes
        )
    }
}

fn fields<'a>(line: &'a str, tag: &str, lineno: usize) -> Result<HashMap<&'a str, &'a str>> {
    let err = |reason: String| Error::Parse {
        kind: "checkpoint",
        line: lineno,
        reason,
    };
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(err(format!("expected {tag:?} line")));
    }
    parts
        .map(|p| {
            p.split_once('=')
                .ok_or_else(|| err(format!("bad field {p:?}")))
        })
        .collect()
}

fn field<T: std::str::FromStr>(map: &HashMap<&str, &str>, key: &str, lineno: usize) -> Result<T> {
    map.get(key)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse {
            kind: "checkpoint",
            line: lineno,
            reason: format!("missing or invalid {key}"),
        })
}

pub fn parse_checkpoint(text: &str) -> Result<(CheckpointHeader, Vec<CheckpointEntry>)> {
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let mut lines = complete
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| Error::Parse {
        kind: "checkpoint",
        line: 1,
        reason: "missing header".into(),
    })?;
    let h = fields(first, "checkpoint", 1)?;
    let header = CheckpointHeader {
        n: field(&h, "n", 1)?,
        bound: field(&h, "bound", 1)?,
        split_depth: field(&h, "split_depth", 1)?,
        engine: field(&h, "engine", 1)?,
    };
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let f = fields(line, "done", lineno)?;
        let classes: String = field(&f, "classes", lineno)?;
        entries.push(CheckpointEntry {
            key: FrontierKey {
                depth: field(&f, "depth", lineno)?,
                left_hex: field(&f, "left", lineno)?,
                right_hex: field(&f, "right", lineno)?,
            },
            nodes: field(&f, "nodes", lineno)?,
            classes: if classes == "-" {
                Vec::new()
            } else {
                classes.split(',').map(str::to_string).collect()
            },
        });
    }
    Ok((header, entries))
}

/// Enumeration that records each finished frontier state in `path`.
///
/// With `resume`, states already listed in an existing checkpoint are
/// skipped and their stored classes merged, so the final records equal those
/// of an uninterrupted run. `limit` caps how many states this call searches.
pub fn enumerate_checkpointed(
    engine: &Engine,
    n: usize,
    bound: u32,
    path: &Path,
    resume: bool,
    limit: Option<usize>,
) -> Result<EnumerateRun> {
    let header = CheckpointHeader {
        n,
        bound,
        split_depth: engine.effective_split_depth(n)?,
        engine: ENGINE_VERSION.to_string(),
    };
    let mut resumed: Vec<CheckpointEntry> = Vec::new();
    let file = if resume && path.exists() {
        let text = std::fs::read_to_string(path)?;
        let (found, entries) = parse_checkpoint(&text)?;
        if found != header {
            return Err(Error::CheckpointMismatch(format!(
                "file has {found:?}, run needs {header:?}"
            )));
        }
        resumed = entries;
        // Drop any torn trailing line before appending.
        let keep = text.rfind('\n').map_or(0, |i| i + 1);
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(keep as u64)?;
        let mut file = OpenOptions::new().append(true).open(path)?;
        file.flush()?;
        file
    } else {
        let mut file = File::create(path)?;
        file.write_all(header.render().as_bytes())?;
        file.flush()?;
        file
    };

    let done: HashSet<FrontierKey> = resumed.iter().map(|e| e.key.clone()).collect();
    let writer = Mutex::new(file);
    let mut run = engine.enumerate_with(
        n,
        bound,
        |state| done.contains(&frontier_key(state)),
        |state, records, nodes| {
            let entry = CheckpointEntry {
                key: frontier_key(state),
                nodes,
                classes: records.iter().map(ClassRecord::canonical_hex).collect(),
            };
            let mut file = writer.lock().expect("checkpoint writer");
            file.write_all(entry.render().as_bytes())
                .and_then(|_| file.flush())
                .expect("checkpoint write failed");
        },
        limit,
    )?;

    for entry in &resumed {
        run.stats.nodes += entry.nodes;
        for hex in &entry.classes {
            let seq = BinarySequence::from_hex(hex, n)?;
            run.records.push(ClassRecord::from_sequence(&seq));
        }
    }
    run.records.sort();
    run.records.dedup();
    Ok(run)
}
