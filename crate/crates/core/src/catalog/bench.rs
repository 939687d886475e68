//! Throughput of the naive and word-parallel correlation kernels and of the
//! search engine. Timings are informational; the equality check is not.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::Result;
use crate::search::Engine;
use crate::seqcore::{autocorrelation, profile_fast, BinarySequence};

#[derive(Clone, Debug)]
pub struct KernelTiming {
    pub n: usize,
    pub naive_per_sec: f64,
    pub fast_per_sec: f64,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub equality_samples: usize,
    pub equality_mismatches: usize,
    pub kernels: Vec<KernelTiming>,
    pub search_n: usize,
    pub search_bound: u32,
    pub search_nodes: u64,
    pub search_classes: usize,
    pub search_nodes_per_sec: f64,
}

impl BenchReport {
    pub fn equality_passed(&self) -> bool {
        self.equality_mismatches == 0
    }
}

fn random_sequence(rng: &mut StdRng, n: usize) -> BinarySequence {
    let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    BinarySequence::from_bits(&bits).expect("n >= 2")
}

/// Counts sequences on which the two kernels disagree.
pub fn kernel_mismatches(samples: usize, seed: u64) -> usize {
    (0..samples)
        .into_par_iter()
        .chunks(4096)
        .map(|chunk| {
            let mut rng = StdRng::seed_from_u64(seed ^ chunk[0] as u64);
            chunk
                .iter()
                .filter(|_| {
                    let n = rng.gen_range(2..=128);
                    let s = random_sequence(&mut rng, n);
                    profile_fast(&s) != autocorrelation(&s)
                })
                .count()
        })
        .sum()
}

fn per_second<T>(seqs: &[BinarySequence], kernel: impl Fn(&BinarySequence) -> T) -> f64 {
    let reps = 20;
    let start = Instant::now();
    for _ in 0..reps {
        for s in seqs {
            black_box(kernel(black_box(s)));
        }
    }
    (reps * seqs.len()) as f64 / start.elapsed().as_secs_f64()
}

pub fn run_bench(samples: usize, seed: u64) -> Result<BenchReport> {
    let equality_mismatches = kernel_mismatches(samples, seed);
    let mut rng = StdRng::seed_from_u64(seed);
    let kernels = [32, 64, 128]
        .into_iter()
        .map(|n| {
            let seqs: Vec<BinarySequence> =
                (0..2000).map(|_| random_sequence(&mut rng, n)).collect();
            KernelTiming {
                n,
                naive_per_sec: per_second(&seqs, autocorrelation),
                fast_per_sec: per_second(&seqs, profile_fast),
            }
        })
        .collect();
    let (search_n, search_bound) = (20, 2);
    let start = Instant::now();
    let (classes, stats) = Engine::default()
        .with_workers(1)
        .enumerate(search_n, search_bound)?;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(BenchReport {
        equality_samples: samples,
        equality_mismatches,
        kernels,
        search_n,
        search_bound,
        search_nodes: stats.nodes,
        search_classes: classes.len(),
        search_nodes_per_sec: stats.nodes as f64 / elapsed,
    })
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "kernel equality: {} ({} random sequences, {} mismatches)",
            if self.equality_passed() {
                "PASS"
            } else {
                "FAIL"
            },
            self.equality_samples,
            self.equality_mismatches
        )?;
        writeln!(f, "N\tnaive profiles/s\tpopcount profiles/s\tspeedup")?;
        for k in &self.kernels {
            writeln!(
                f,
                "{}\t{:.0}\t{:.0}\t{:.1}x",
                k.n,
                k.naive_per_sec,
                k.fast_per_sec,
                k.fast_per_sec / k.naive_per_sec
            )?;
        }
        write!(
            f,
            "search enumerate(n={}, bound={}): {} nodes, {} classes, {:.0} nodes/s",
            self.search_n,
            self.search_bound,
            self.search_nodes,
            self.search_classes,
            self.search_nodes_per_sec
        )
    }
}
