//! Several lengths `n0, n0 + 2, ...` searched in one traversal.
//!
//! Lengths of equal parity share the shell tree: shell `k` of every length
//! holds positions `k` and `n-1-k`, and the isomorph-rejection state depends
//! on `n` only through its parity. The traversal therefore visits each shell
//! prefix once, carrying one bound state per length still alive below it.
//! A length drops out where its own bound prunes or where it is complete.

use std::collections::BTreeMap;

use super::engine::{check_bound, sort_dedup, verified_record, Engine, SearchStats, CHILDREN};
use super::reduction::{center_step, shell_step, ALL_TIED};
use super::state::PartialState;
use super::ClassRecord;
use crate::error::{Error, Result};

type Mask = u64;

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

#[derive(Clone)]
struct PackageFrontier {
    states: Vec<PartialState>,
    active: Mask,
    tied: u8,
}

struct PackageWalker<'a> {
    lengths: &'a [usize],
    states: Vec<PartialState>,
    bound: u32,
    prune: bool,
    reductions: bool,
    split: Option<usize>,
    frontier: Vec<PackageFrontier>,
    stats: SearchStats,
    found: Vec<Vec<ClassRecord>>,
}

impl<'a> PackageWalker<'a> {
    fn new(lengths: &'a [usize], states: Vec<PartialState>, bound: u32, engine: &Engine) -> Self {
        Self {
            lengths,
            states,
            bound,
            prune: engine.prune,
            reductions: engine.reductions,
            split: None,
            frontier: Vec::new(),
            stats: SearchStats::default(),
            found: vec![Vec::new(); lengths.len()],
        }
    }

    fn descend(&mut self, active: Mask, tied: u8) {
        // Only the parity of n matters to the rejection test; the longest
        // length keeps n - 1 - m in range at every depth.
        let n_any = *self.lengths.last().expect("nonempty");
        let m = self.states[active.trailing_zeros() as usize].depth();
        for (l, r) in CHILDREN {
            let child_tied = if self.reductions {
                match shell_step(tied, n_any, m, l, r) {
                    Some(t) => t,
                    None => continue,
                }
            } else {
                0
            };
            let mut child = 0;
            for i in bits(active) {
                self.stats.nodes += 1;
                self.states[i].push(l, r);
                if self.prune && self.states[i].last_push_exceeds(self.bound) {
                    continue;
                }
                if m + 1 == self.lengths[i] / 2 {
                    self.finish(i, child_tied);
                } else {
                    child |= 1 << i;
                }
            }
            if child != 0 {
                if self.split == Some(m + 1) {
                    self.frontier.push(PackageFrontier {
                        states: self.states.clone(),
                        active: child,
                        tied: child_tied,
                    });
                } else {
                    self.descend(child, child_tied);
                }
            }
            for i in bits(active) {
                self.states[i].pop();
            }
        }
    }

    fn finish(&mut self, i: usize, tied: u8) {
        let n = self.lengths[i];
        if n.is_multiple_of(2) {
            self.leaf(i);
            return;
        }
        let center = n / 2;
        for bit in [false, true] {
            if self.reductions && center_step(tied, center, bit).is_none() {
                continue;
            }
            self.stats.nodes += 1;
            self.states[i].push_center(bit);
            if !(self.prune && self.states[i].center_exceeds(self.bound)) {
                self.leaf(i);
            }
            self.states[i].pop_center();
        }
    }

    fn leaf(&mut self, i: usize) {
        self.stats.leaves += 1;
        let state = &self.states[i];
        if state.known_peak() <= self.bound {
            self.found[i].push(verified_record(state));
        }
    }
}

pub(crate) fn check_lengths(lengths: &[usize]) -> Result<()> {
    let ok = !lengths.is_empty()
        && lengths.len() <= Mask::BITS as usize
        && lengths[0] >= 2
        && lengths.windows(2).all(|w| w[1] == w[0] + 2);
    if ok {
        Ok(())
    } else {
        Err(Error::PackageLengths(lengths.to_vec()))
    }
}

impl Engine {
    /// Class sets with PSL at most `bound` for each length, from one shared traversal.
    pub fn package(
        &self,
        lengths: &[usize],
        bound: u32,
    ) -> Result<(BTreeMap<usize, Vec<ClassRecord>>, SearchStats)> {
        check_lengths(lengths)?;
        check_bound(bound)?;
        let depth = self.effective_split_depth(lengths[0])?;
        let states = lengths
            .iter()
            .map(|&n| PartialState::new(n))
            .collect::<Result<Vec<_>>>()?;
        let all: Mask = if lengths.len() == 64 {
            Mask::MAX
        } else {
            (1 << lengths.len()) - 1
        };

        let mut top = PackageWalker::new(lengths, states, bound, self);
        top.split = Some(depth);
        top.descend(all, ALL_TIED);
        let frontier = std::mem::take(&mut top.frontier);
        let mut stats = top.stats;
        stats.frontier_states = frontier.len();
        let mut found = top.found;

        let results = self.map_parallel(&frontier, |f| {
            let mut walker = PackageWalker::new(lengths, f.states.clone(), bound, self);
            walker.descend(f.active, f.tied);
            (walker.found, walker.stats)
        });
        for (per_length, sub) in results {
            stats.nodes += sub.nodes;
            stats.leaves += sub.leaves;
            for (acc, recs) in found.iter_mut().zip(per_length) {
                acc.extend(recs);
            }
        }
        let out = lengths
            .iter()
            .zip(found)
            .map(|(&n, mut recs)| {
                sort_dedup(&mut recs);
                (n, recs)
            })
            .collect();
        Ok((out, stats))
    }
}
