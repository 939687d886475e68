//! Brute-force ground truth for small lengths.
//!
//! Every sequence with first element `+1` is visited once; a sequence is kept
//! when it is the numerically smallest member of its orbit. Orbit minima
//! always start with `+1` (negation would otherwise give a smaller value), so
//! this visits every orbit exactly once.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::search::ClassRecord;
use crate::seqcore::{psl_u64, BinarySequence};
use crate::symmetry::SymmetryElement;

/// Largest length accepted by the oracle.
pub const ORACLE_MAX_LEN: usize = 26;

const CHUNK_BITS: usize = 14;

/// Per-length orbit counts by exact PSL.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    /// `counts[p - 1]` is the number of orbits with PSL exactly `p`.
    pub counts: Vec<u64>,
    /// Orbits with PSL above the table's maximum column, when known.
    pub overflow: Option<u64>,
}

impl CountRow {
    pub fn count(&self, psl: u32) -> u64 {
        self.counts.get(psl as usize - 1).copied().unwrap_or(0)
    }

    /// All orbits, when the overflow bucket is known.
    pub fn total(&self) -> Option<u64> {
        self.overflow.map(|o| o + self.counts.iter().sum::<u64>())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub max_psl: u32,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn row(&self, n: usize) -> Option<&CountRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn get(&self, n: usize, psl: u32) -> Option<u64> {
        self.row(n).map(|r| r.count(psl))
    }

    /// Builds a table from class records; the overflow bucket stays unknown.
    pub fn from_records<'a>(
        lengths: impl IntoIterator<Item = usize>,
        max_psl: u32,
        records: impl IntoIterator<Item = &'a ClassRecord> + Clone,
    ) -> Self {
        let rows = lengths
            .into_iter()
            .map(|n| {
                let mut counts = vec![0; max_psl as usize];
                for r in records.clone() {
                    if r.n() == n && r.psl() >= 1 && r.psl() <= max_psl {
                        counts[r.psl() as usize - 1] += 1;
                    }
                }
                CountRow {
                    n,
                    counts,
                    overflow: None,
                }
            })
            .collect();
        Self { max_psl, rows }
    }
}

/// Brute-force enumerator; `workers == 1` runs on the calling thread.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub workers: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[inline]
fn is_orbit_minimum(v: u64, n: usize) -> bool {
    SymmetryElement::all()[1..]
        .iter()
        .all(|g| g.apply_u64(v, n) >= v)
}

fn check_n(n: usize) -> Result<()> {
    if (2..=ORACLE_MAX_LEN).contains(&n) {
        Ok(())
    } else {
        Err(Error::OracleRange {
            n,
            cap: ORACLE_MAX_LEN,
        })
    }
}

impl Oracle {
    pub fn new(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
        }
    }

    /// Applies `f` to contiguous ranges covering `0 .. 2^(n-1)`, results in range order.
    fn over_chunks<T: Send>(&self, n: usize, f: impl Fn(u64, u64) -> T + Sync + Send) -> Vec<T> {
        let half = 1u64 << (n - 1);
        let chunk = 1u64 << CHUNK_BITS.min(n - 1);
        let starts: Vec<u64> = (0..half).step_by(chunk as usize).collect();
        let run = |&start: &u64| f(start, (start + chunk).min(half));
        if self.workers <= 1 {
            starts.iter().map(run).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .expect("thread pool");
            pool.install(|| starts.par_iter().map(run).collect())
        }
    }

    /// One record per orbit, sorted by `(psl, canonical encoding)`.
    pub fn enumerate_all(&self, n: usize) -> Result<Vec<ClassRecord>> {
        check_n(n)?;
        let chunks = self.over_chunks(n, |lo, hi| {
            (lo..hi)
                .filter(|&v| is_orbit_minimum(v, n))
                .map(|v| ClassRecord::from_sequence(&BinarySequence::from_u64(v, n).expect("fits")))
                .collect::<Vec<_>>()
        });
        let mut records: Vec<ClassRecord> = chunks.into_iter().flatten().collect();
        records.sort();
        Ok(records)
    }

    /// Orbit counts by PSL for one length; index `p` counts PSL exactly `p`.
    pub fn psl_histogram(&self, n: usize) -> Result<Vec<u64>> {
        check_n(n)?;
        let partials = self.over_chunks(n, |lo, hi| {
            let mut hist = vec![0u64; n];
            for v in lo..hi {
                if is_orbit_minimum(v, n) {
                    hist[psl_u64(v, n) as usize] += 1;
                }
            }
            hist
        });
        let mut hist = vec![0u64; n];
        for part in partials {
            for (acc, x) in hist.iter_mut().zip(part) {
                *acc += x;
            }
        }
        Ok(hist)
    }

    pub fn count_table(&self, n_min: usize, n_max: usize, max_psl: u32) -> Result<CountTable> {
        if n_min > n_max {
            return Err(Error::InvalidRange {
                min: n_min,
                max: n_max,
            });
        }
        if max_psl == 0 {
            return Err(Error::ZeroBound);
        }
        check_n(n_min)?;
        check_n(n_max)?;
        let rows = (n_min..=n_max)
            .map(|n| {
                let hist = self.psl_histogram(n)?;
                let counts: Vec<u64> = (1..=max_psl as usize)
                    .map(|p| hist.get(p).copied().unwrap_or(0))
                    .collect();
                let overflow = hist.iter().skip(max_psl as usize + 1).sum();
                Ok(CountRow {
                    n,
                    counts,
                    overflow: Some(overflow),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CountTable { max_psl, rows })
    }
}

pub fn enumerate_all(n: usize) -> Result<Vec<ClassRecord>> {
    Oracle::default().enumerate_all(n)
}

pub fn count_table(n_min: usize, n_max: usize, max_psl: u32) -> Result<CountTable> {
    Oracle::default().count_table(n_min, n_max, max_psl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::counts_by_psl;
    use crate::symmetry::{canonical, is_canonical};

    /// Orbit count by union-find over the generator edges.
    fn union_find_orbits(n: usize) -> u64 {
        let size = 1usize << n;
        let mut parent: Vec<usize> = (0..size).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let gens = [
            SymmetryElement::new(true, false, false),
            SymmetryElement::new(false, true, false),
            SymmetryElement::new(false, false, true),
        ];
        for v in 0..size {
            for g in gens {
                let w = g.apply_u64(v as u64, n) as usize;
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..size).filter(|&v| find(&mut parent, v) == v).count() as u64
    }

    #[test]
    fn totals_match_union_find() {
        let table = Oracle::new(2).count_table(2, 12, 5).unwrap();
        for row in &table.rows {
            assert_eq!(row.total(), Some(union_find_orbits(row.n)), "n={}", row.n);
        }
    }

    #[test]
    fn small_rows() {
        let five = enumerate_all(5).unwrap();
        let counts = counts_by_psl(&five);
        assert_eq!(
            counts.into_iter().collect::<Vec<_>>(),
            vec![(1, 1), (2, 3), (3, 1), (4, 1)]
        );
        let two = enumerate_all(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].psl(), 1);
        let ten = counts_by_psl(&enumerate_all(10).unwrap());
        assert_eq!((ten[&2], ten[&3]), (5, 46));
    }

    #[test]
    fn count_table_rows() {
        let t = count_table(6, 6, 5).unwrap();
        assert_eq!(t.row(6).unwrap().counts, vec![0, 4, 4, 1, 1]);
        let t = count_table(14, 14, 5).unwrap();
        assert_eq!(t.row(14).unwrap().counts, vec![0, 9, 152, 486, 583]);
        let t = count_table(17, 17, 2).unwrap();
        assert_eq!(t.row(17).unwrap().counts, vec![0, 4]);
    }

    #[test]
    fn records_are_canonical_and_sorted() {
        let recs = enumerate_all(11).unwrap();
        for r in &recs {
            assert!(is_canonical(r.sequence()));
            assert_eq!(canonical(r.sequence()), *r.sequence());
        }
        assert!(recs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn single_thread_is_identical() {
        for n in [9, 13, 16] {
            assert_eq!(
                Oracle::new(1).enumerate_all(n).unwrap(),
                Oracle::new(4).enumerate_all(n).unwrap()
            );
        }
        assert_eq!(
            Oracle::new(1).count_table(2, 16, 5).unwrap(),
            Oracle::new(3).count_table(2, 16, 5).unwrap()
        );
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            enumerate_all(27),
            Err(Error::OracleRange { n: 27, .. })
        ));
        assert!(enumerate_all(1).is_err());
        assert!(count_table(10, 9, 5).is_err());
        assert!(count_table(2, 9, 0).is_err());
        assert!(count_table(20, 30, 5).is_err());
    }
}
