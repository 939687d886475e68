//! Two-sided branch-and-bound search.
//!
//! Sequences grow from both ends inward: depth `m` fixes the first and last
//! `m` elements, which determines the outermost `m` sidelobes exactly and
//! bounds the rest. Odd lengths finish with a center step. Subtrees below a
//! fixed split depth are independent and run on a worker pool; results are
//! merged by sorting on `(psl, canonical encoding)`.

mod engine;
mod package;
mod record;
mod reduction;
mod state;

use std::collections::BTreeMap;

pub use engine::{Engine, EnumerateRun, SearchStats, DEFAULT_SPLIT_DEPTH};
pub use record::ClassRecord;
pub use state::PartialState;

use crate::error::Result;
use crate::seqcore::BinarySequence;

/// What a search run computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Any one sequence within the bound.
    Feasible,
    /// Every class within the bound.
    Enumerate,
    /// The smallest attainable bound and its classes.
    Mps,
    /// Enumeration over lengths `n0, n0 + 2, ...` in one traversal.
    Package,
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "feasible" => Ok(Self::Feasible),
            "enumerate" => Ok(Self::Enumerate),
            "mps" => Ok(Self::Mps),
            "package" => Ok(Self::Package),
            other => Err(format!("unknown search mode {other:?}")),
        }
    }
}

pub fn search_feasible(n: usize, bound: u32) -> Result<Option<BinarySequence>> {
    Ok(Engine::default().feasible(n, bound)?.0)
}

pub fn search_enumerate(n: usize, bound: u32) -> Result<Vec<ClassRecord>> {
    Ok(Engine::default().enumerate(n, bound)?.0)
}

pub fn search_mps(n: usize) -> Result<(u32, Vec<ClassRecord>)> {
    let (mps, records, _) = Engine::default().mps(n)?;
    Ok((mps, records))
}

pub fn search_package(lengths: &[usize], bound: u32) -> Result<BTreeMap<usize, Vec<ClassRecord>>> {
    Ok(Engine::default().package(lengths, bound)?.0)
}

pub fn partition(n: usize, bound: u32, split_depth: usize) -> Result<Vec<PartialState>> {
    Engine::default().partition(n, bound, split_depth)
}

/// Record counts keyed by exact PSL.
pub fn counts_by_psl(records: &[ClassRecord]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.psl()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::seqcore::psl;
    use crate::symmetry::{canonical, orbit};

    fn hexes(records: &[ClassRecord]) -> Vec<String> {
        records.iter().map(|r| r.canonical_hex()).collect()
    }

    /// Brute force over every sequence of length n, independent of the engine.
    fn brute(n: usize, bound: u32) -> Vec<String> {
        let mut set: Vec<BinarySequence> = (0..1u64 << n)
            .map(|v| BinarySequence::from_u64(v, n).unwrap())
            .filter(|s| psl(s) <= bound)
            .map(|s| canonical(&s))
            .collect();
        set.sort_by_key(|s| (psl(s), s.clone()));
        set.dedup();
        set.iter().map(|s| s.to_hex()).collect()
    }

    #[test]
    fn small_lengths_match_brute_force() {
        for n in 2..=14 {
            for bound in 1..=4 {
                let got = Engine::default()
                    .with_workers(1)
                    .enumerate(n, bound)
                    .unwrap()
                    .0;
                assert_eq!(hexes(&got), brute(n, bound), "n={n} B={bound}");
            }
        }
    }

    #[test]
    fn feasibility() {
        let b13 = search_feasible(13, 1).unwrap().unwrap();
        assert!(orbit(&BinarySequence::from_hex("00CA", 13).unwrap()).contains(&b13));
        assert_eq!(search_feasible(14, 1).unwrap(), None);
        assert_eq!(search_feasible(22, 2).unwrap(), None);
    }

    #[test]
    fn enumerate_examples() {
        let b11 = search_enumerate(11, 1).unwrap();
        assert_eq!(
            hexes(&b11),
            vec![canonical(&BinarySequence::from_hex("0ED", 11).unwrap()).to_hex()]
        );
        let r22 = search_enumerate(22, 3).unwrap();
        assert_eq!(counts_by_psl(&r22).get(&3), Some(&378));
    }

    #[test]
    fn mps_examples() {
        let (mps, classes) = search_mps(25).unwrap();
        assert_eq!((mps, classes.len()), (2, 1));
        let (mps, classes) = search_mps(28).unwrap();
        assert_eq!((mps, classes.len()), (2, 2));
        assert_eq!(search_mps(2).unwrap().0, 1);
    }

    #[test]
    fn partition_at_root() {
        for n in [8, 10, 12, 20] {
            let states = partition(n, 3, 1).unwrap();
            assert!(states.len() <= 3);
            assert_eq!(states.len(), 1);
        }
        assert_eq!(partition(9, 3, 1).unwrap().len(), 2);
        assert!(matches!(
            partition(9, 3, 5),
            Err(Error::SplitDepthOutOfRange { depth: 5, max: 4 })
        ));
        assert!(partition(9, 3, 0).is_err());
    }

    #[test]
    fn partition_union_equals_whole() {
        let engine = Engine::default().with_workers(1);
        let whole = engine.enumerate(16, 2).unwrap().0;
        let mut union = Vec::new();
        for root in engine.partition(16, 2, 3).unwrap() {
            union.extend(engine.enumerate_subtree(&root, 2).0);
        }
        union.sort();
        assert_eq!(union, whole);
    }

    #[test]
    fn worker_count_and_split_depth_do_not_change_results() {
        let reference = Engine::default()
            .with_workers(1)
            .with_split_depth(1)
            .enumerate(18, 3)
            .unwrap();
        for workers in [1, 2, 8] {
            for depth in [1, 3, 5, 9] {
                let run = Engine::default()
                    .with_workers(workers)
                    .with_split_depth(depth)
                    .enumerate(18, 3)
                    .unwrap();
                assert_eq!(run.0, reference.0);
                assert_eq!(run.1.nodes, reference.1.nodes);
                assert_eq!(run.1.leaves, reference.1.leaves);
            }
        }
    }

    #[test]
    fn reductions_do_not_change_results() {
        for n in 2..=14 {
            for bound in 1..=3 {
                let on = Engine::default()
                    .with_workers(1)
                    .enumerate(n, bound)
                    .unwrap();
                let off = Engine::default()
                    .with_workers(1)
                    .with_reductions(false)
                    .enumerate(n, bound)
                    .unwrap();
                assert_eq!(on.0, off.0, "n={n} B={bound}");
                assert!(on.1.nodes <= off.1.nodes);
            }
        }
    }

    #[test]
    fn pruning_reduces_nodes() {
        for n in 10..=16 {
            for bound in 1..=4 {
                let on = Engine::default()
                    .with_workers(1)
                    .enumerate(n, bound)
                    .unwrap();
                let off = Engine::default()
                    .with_workers(1)
                    .with_prune(false)
                    .enumerate(n, bound)
                    .unwrap();
                assert_eq!(on.0, off.0);
                assert!(on.1.nodes <= off.1.nodes);
                assert!(on.1.nodes < 1 << n, "n={n} B={bound} nodes={}", on.1.nodes);
            }
        }
    }

    #[test]
    fn package_matches_per_length() {
        let (pkg, _) = Engine::default().package(&[10, 12], 2).unwrap();
        assert_eq!(pkg[&10].len(), 5);
        assert_eq!(pkg[&12].len(), 16);
        let (pkg, _) = Engine::default().package(&[5, 7], 1).unwrap();
        assert_eq!(pkg[&5].len(), 1);
        assert_eq!(pkg[&7].len(), 1);
        for (lengths, bound) in [
            (vec![2, 4, 6, 8], 2),
            (vec![3, 5, 7, 9, 11], 3),
            (vec![13, 15, 17], 2),
        ] {
            for depth in [1, 2] {
                let engine = Engine::default().with_split_depth(depth.min(lengths[0] / 2));
                let (pkg, _) = engine.package(&lengths, bound).unwrap();
                for &n in &lengths {
                    assert_eq!(
                        pkg[&n],
                        Engine::default().enumerate(n, bound).unwrap().0,
                        "n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn package_rejects_bad_lengths() {
        assert!(search_package(&[10, 11], 2).is_err());
        assert!(search_package(&[10, 14], 2).is_err());
        assert!(search_package(&[], 2).is_err());
        assert!(search_package(&[12, 10], 2).is_err());
        assert_eq!(search_enumerate(10, 0), Err(Error::ZeroBound));
    }

    #[test]
    fn search_mode_parses() {
        assert_eq!("mps".parse::<SearchMode>(), Ok(SearchMode::Mps));
        assert!("best".parse::<SearchMode>().is_err());
    }
}
