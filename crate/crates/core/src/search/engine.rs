use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::reduction::{center_step, shell_step, tied_for, ALL_TIED};
use super::state::PartialState;
use super::ClassRecord;
use crate::error::{Error, Result};
use crate::seqcore::{profile_fast, BinarySequence};

/// Children of every node, in visiting order.
pub(crate) const CHILDREN: [(bool, bool); 4] =
    [(false, false), (false, true), (true, false), (true, true)];

/// Frontier depth used when none is configured.
pub const DEFAULT_SPLIT_DEPTH: usize = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Child states constructed, including those rejected by the bound.
    pub nodes: u64,
    /// Fully decided sequences reached.
    pub leaves: u64,
    pub frontier_states: usize,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
    }
}

/// Search engine configuration.
///
/// `reductions` toggles isomorph rejection (canonical deduplication is always
/// applied), `prune` toggles the sidelobe bound. Both change node counts only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Engine {
    pub workers: usize,
    pub split_depth: Option<usize>,
    pub reductions: bool,
    pub prune: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Self {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            split_depth: None,
            reductions: true,
            prune: true,
        }
    }
}

/// Result of an enumeration over frontier subtrees.
#[derive(Clone, Debug)]
pub struct EnumerateRun {
    pub records: Vec<ClassRecord>,
    pub stats: SearchStats,
    /// False if `limit` stopped the run before every frontier state finished.
    pub complete: bool,
}

pub(crate) struct Walker<F> {
    pub(crate) state: PartialState,
    bound: u32,
    prune: bool,
    reductions: bool,
    pub(crate) stats: SearchStats,
    on_leaf: F,
    stopped: bool,
}

impl<F: FnMut(&PartialState) -> bool> Walker<F> {
    pub(crate) fn new(state: PartialState, bound: u32, engine: &Engine, on_leaf: F) -> Self {
        Self {
            state,
            bound,
            prune: engine.prune,
            reductions: engine.reductions,
            stats: SearchStats::default(),
            on_leaf,
            stopped: false,
        }
    }

    pub(crate) fn run(&mut self, tied: u8) {
        self.descend(tied);
    }

    fn descend(&mut self, tied: u8) {
        let n = self.state.n();
        let m = self.state.depth();
        if m == n / 2 {
            if n.is_multiple_of(2) {
                self.leaf();
                return;
            }
            for bit in [false, true] {
                if self.reductions && center_step(tied, m, bit).is_none() {
                    continue;
                }
                self.stats.nodes += 1;
                self.state.push_center(bit);
                if !(self.prune && self.state.center_exceeds(self.bound)) {
                    self.leaf();
                }
                self.state.pop_center();
                if self.stopped {
                    return;
                }
            }
            return;
        }
        for (l, r) in CHILDREN {
            let child_tied = if self.reductions {
                match shell_step(tied, n, m, l, r) {
                    Some(t) => t,
                    None => continue,
                }
            } else {
                0
            };
            self.stats.nodes += 1;
            self.state.push(l, r);
            if !(self.prune && self.state.last_push_exceeds(self.bound)) {
                self.descend(child_tied);
            }
            self.state.pop();
            if self.stopped {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        if self.state.known_peak() <= self.bound && (self.on_leaf)(&self.state) {
            self.stopped = true;
        }
    }
}

/// Class record of a complete state, with the PSL checked against a fresh profile.
pub(crate) fn verified_record(state: &PartialState) -> ClassRecord {
    let seq = state.to_sequence().expect("leaf state is complete");
    let record = ClassRecord::from_sequence(&seq);
    assert_eq!(
        record.psl(),
        state.known_peak(),
        "incremental sidelobes disagree with recomputed profile for {seq}"
    );
    record
}

pub(crate) fn check_bound(bound: u32) -> Result<()> {
    if bound == 0 {
        Err(Error::ZeroBound)
    } else {
        Ok(())
    }
}

pub(crate) fn sort_dedup(records: &mut Vec<ClassRecord>) {
    records.sort();
    records.dedup();
}

#[derive(Clone, Debug)]
pub(crate) struct FrontierState {
    pub(crate) state: PartialState,
    pub(crate) tied: u8,
}

impl Engine {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_split_depth(mut self, depth: usize) -> Self {
        self.split_depth = Some(depth);
        self
    }

    pub fn with_reductions(mut self, on: bool) -> Self {
        self.reductions = on;
        self
    }

    pub fn with_prune(mut self, on: bool) -> Self {
        self.prune = on;
        self
    }

    /// The configured split depth, defaulted and clamped for length `n`.
    pub fn effective_split_depth(&self, n: usize) -> Result<usize> {
        let max = n / 2;
        match self.split_depth {
            Some(d) if d == 0 || d > max => Err(Error::SplitDepthOutOfRange { depth: d, max }),
            Some(d) => Ok(d),
            None => Ok(DEFAULT_SPLIT_DEPTH.min(max).max(1)),
        }
    }

    pub(crate) fn map_parallel<T, U, G>(&self, items: &[T], f: G) -> Vec<U>
    where
        T: Sync,
        U: Send,
        G: Fn(&T) -> U + Sync + Send,
    {
        if self.workers <= 1 {
            return items.iter().map(f).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool");
        pool.install(|| items.par_iter().map(f).collect())
    }

    /// Non-rejected states at `depth`, in traversal order, plus nodes spent reaching them.
    pub(crate) fn frontier(
        &self,
        n: usize,
        bound: u32,
        depth: usize,
    ) -> Result<(Vec<FrontierState>, SearchStats)> {
        let max = n / 2;
        if depth == 0 || depth > max {
            return Err(Error::SplitDepthOutOfRange { depth, max });
        }
        let mut out = Vec::new();
        let mut stats = SearchStats::default();
        let mut state = PartialState::new(n)?;
        self.collect_frontier(&mut state, ALL_TIED, bound, depth, &mut out, &mut stats);
        stats.frontier_states = out.len();
        Ok((out, stats))
    }

    fn collect_frontier(
        &self,
        state: &mut PartialState,
        tied: u8,
        bound: u32,
        depth: usize,
        out: &mut Vec<FrontierState>,
        stats: &mut SearchStats,
    ) {
        if state.depth() == depth {
            out.push(FrontierState {
                state: state.clone(),
                tied,
            });
            return;
        }
        let n = state.n();
        let m = state.depth();
        for (l, r) in CHILDREN {
            let child_tied = if self.reductions {
                match shell_step(tied, n, m, l, r) {
                    Some(t) => t,
                    None => continue,
                }
            } else {
                0
            };
            stats.nodes += 1;
            state.push(l, r);
            if !(self.prune && state.last_push_exceeds(bound)) {
                self.collect_frontier(state, child_tied, bound, depth, out, stats);
            }
            state.pop();
        }
    }

    /// The independent subtree roots at `depth`.
    pub fn partition(&self, n: usize, bound: u32, depth: usize) -> Result<Vec<PartialState>> {
        check_bound(bound)?;
        Ok(self
            .frontier(n, bound, depth)?
            .0
            .into_iter()
            .map(|f| f.state)
            .collect())
    }

    /// Every class of PSL at most `bound` found below one subtree root.
    pub fn enumerate_subtree(
        &self,
        root: &PartialState,
        bound: u32,
    ) -> (Vec<ClassRecord>, SearchStats) {
        let tied = if self.reductions {
            match tied_for(root) {
                Some(t) => t,
                None => return (Vec::new(), SearchStats::default()),
            }
        } else {
            0
        };
        let root = FrontierState {
            state: root.clone(),
            tied,
        };
        self.enumerate_subtree_tied(&root, bound)
    }

    pub fn enumerate(&self, n: usize, bound: u32) -> Result<(Vec<ClassRecord>, SearchStats)> {
        let run = self.enumerate_with(n, bound, |_| false, |_, _, _| {}, None)?;
        Ok((run.records, run.stats))
    }

    /// Enumeration with hooks for checkpointing.
    ///
    /// Frontier states for which `skip` returns true are not searched.
    /// `on_done` receives each finished root with its records and node count.
    /// At most `limit` frontier states are searched.
    pub fn enumerate_with<S, D>(
        &self,
        n: usize,
        bound: u32,
        skip: S,
        on_done: D,
        limit: Option<usize>,
    ) -> Result<EnumerateRun>
    where
        S: Fn(&PartialState) -> bool + Sync + Send,
        D: Fn(&PartialState, &[ClassRecord], u64) + Sync + Send,
    {
        check_bound(bound)?;
        let depth = self.effective_split_depth(n)?;
        let (frontier, mut stats) = self.frontier(n, bound, depth)?;
        let started = AtomicUsize::new(0);
        let results = self.map_parallel(&frontier, |f| {
            if skip(&f.state) {
                return Some((Vec::new(), SearchStats::default()));
            }
            if let Some(limit) = limit {
                if started.fetch_add(1, Ordering::SeqCst) >= limit {
                    return None;
                }
            }
            let (records, sub) = self.enumerate_subtree_tied(f, bound);
            on_done(&f.state, &records, sub.nodes);
            Some((records, sub))
        });
        let mut records = Vec::new();
        let mut complete = true;
        for result in results {
            match result {
                Some((r, sub)) => {
                    records.extend(r);
                    stats.absorb(&sub);
                }
                None => complete = false,
            }
        }
        sort_dedup(&mut records);
        Ok(EnumerateRun {
            records,
            stats,
            complete,
        })
    }

    pub(crate) fn enumerate_subtree_tied(
        &self,
        root: &FrontierState,
        bound: u32,
    ) -> (Vec<ClassRecord>, SearchStats) {
        let mut records = Vec::new();
        let mut walker = Walker::new(root.state.clone(), bound, self, |leaf: &PartialState| {
            records.push(verified_record(leaf));
            false
        });
        walker.run(root.tied);
        let stats = walker.stats;
        sort_dedup(&mut records);
        (records, stats)
    }

    /// Some sequence with PSL at most `bound`, or `None` if no such sequence exists.
    ///
    /// The first witness in traversal order is returned, so the answer does not
    /// depend on the worker count.
    pub fn feasible(&self, n: usize, bound: u32) -> Result<(Option<BinarySequence>, SearchStats)> {
        check_bound(bound)?;
        let depth = self.effective_split_depth(n)?;
        let (frontier, mut stats) = self.frontier(n, bound, depth)?;
        let nodes = AtomicU64::new(0);
        let leaves = AtomicU64::new(0);
        let search = |f: &FrontierState| -> Option<BinarySequence> {
            let mut found = None;
            let mut walker = Walker::new(f.state.clone(), bound, self, |leaf: &PartialState| {
                found = leaf.to_sequence();
                true
            });
            walker.run(f.tied);
            nodes.fetch_add(walker.stats.nodes, Ordering::Relaxed);
            leaves.fetch_add(walker.stats.leaves, Ordering::Relaxed);
            drop(walker);
            found
        };
        let witness = if self.workers <= 1 {
            frontier.iter().find_map(search)
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .expect("thread pool");
            pool.install(|| frontier.par_iter().find_map_first(search))
        };
        stats.nodes += nodes.into_inner();
        stats.leaves += leaves.into_inner();
        if let Some(w) = &witness {
            let peak = profile_fast(w).psl();
            assert!(
                peak <= bound,
                "witness {w} has PSL {peak} above bound {bound}"
            );
        }
        Ok((witness, stats))
    }

    /// The minimum peak sidelobe level for length `n` and every class attaining it.
    ///
    /// Bounds are scanned upward from 1 with no warm start from other lengths.
    pub fn mps(&self, n: usize) -> Result<(u32, Vec<ClassRecord>, SearchStats)> {
        let mut total = SearchStats::default();
        for bound in 1..=(n.max(2) - 1) as u32 {
            let (records, stats) = self.enumerate(n, bound)?;
            total.absorb(&stats);
            total.frontier_states = stats.frontier_states;
            if !records.is_empty() {
                return Ok((bound, records, total));
            }
        }
        unreachable!("every sequence has PSL at most n - 1")
    }
}
