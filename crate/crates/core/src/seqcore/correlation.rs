use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::sequence::{low_mask, BinarySequence};
use crate::error::{Error, Result};

/// Aperiodic autocorrelation sidelobes `C_1 ..= C_{N-1}` with derived peak and energy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationProfile {
    len: usize,
    sidelobes: Vec<i32>,
    psl: u32,
    energy: u64,
}

impl CorrelationProfile {
    pub(crate) fn from_sidelobes(len: usize, sidelobes: Vec<i32>) -> Self {
        debug_assert_eq!(sidelobes.len(), len - 1);
        let psl = sidelobes
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0);
        let energy = sidelobes
            .iter()
            .map(|&c| (c as i64 * c as i64) as u64)
            .sum();
        Self {
            len,
            sidelobes,
            psl,
            energy,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sidelobes in shift order; index 0 is `C_1`.
    pub fn sidelobes(&self) -> &[i32] {
        &self.sidelobes
    }

    /// `C_shift` for `1 <= shift <= N-1`.
    pub fn sidelobe(&self, shift: usize) -> i32 {
        self.sidelobes[shift - 1]
    }

    pub fn psl(&self) -> u32 {
        self.psl
    }

    /// Sum of squared sidelobes.
    pub fn energy(&self) -> u64 {
        self.energy
    }

    pub fn merit_factor(&self) -> MeritFactor {
        MeritFactor::new((self.len * self.len) as u64, 2 * self.energy)
    }
}

/// Merit factor `N^2 / (2 E)` kept as a reduced integer ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MeritFactor {
    num: u64,
    den: u64,
}

impl MeritFactor {
    /// Reduces `num / den`. Panics on a zero denominator.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "merit factor denominator must be nonzero");
        let g = num.gcd(&den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Value rounded half-up to three fractional digits, e.g. `14.083`.
    pub fn to_decimal(&self) -> String {
        let num = self.num as u128;
        let den = self.den as u128;
        let milli = (2000 * num + den) / (2 * den);
        format!("{}.{:03}", milli / 1000, milli % 1000)
    }
}

impl fmt::Display for MeritFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

/// Reference autocorrelation by direct summation over element values.
pub fn autocorrelation(seq: &BinarySequence) -> CorrelationProfile {
    let a = seq.elements();
    let n = a.len();
    let sidelobes = (1..n)
        .map(|shift| {
            (0..n - shift)
                .map(|i| a[i] as i32 * a[i + shift] as i32)
                .sum()
        })
        .collect();
    CorrelationProfile::from_sidelobes(n, sidelobes)
}

pub fn psl(seq: &BinarySequence) -> u32 {
    profile_fast(seq).psl()
}

pub fn merit_factor(seq: &BinarySequence) -> MeritFactor {
    profile_fast(seq).merit_factor()
}

/// `C_shift` as `(N - shift) - 2 * popcount((v ^ (v >> shift)) & overlap_mask)`.
pub fn sidelobe_fast(seq: &BinarySequence, shift: usize) -> Result<i32> {
    let n = seq.len();
    if shift == 0 || shift >= n {
        return Err(Error::ShiftOutOfRange { shift, max: n - 1 });
    }
    Ok(match seq.as_u64() {
        Some(v) => sidelobe_u64(v, n, shift),
        None => sidelobe_words(seq.words(), n, shift),
    })
}

/// Word-parallel profile; bit-identical to [`autocorrelation`].
pub fn profile_fast(seq: &BinarySequence) -> CorrelationProfile {
    let n = seq.len();
    let sidelobes = match seq.as_u64() {
        Some(v) => (1..n).map(|shift| sidelobe_u64(v, n, shift)).collect(),
        None => (1..n)
            .map(|shift| sidelobe_words(seq.words(), n, shift))
            .collect(),
    };
    CorrelationProfile::from_sidelobes(n, sidelobes)
}

#[inline]
pub(crate) fn sidelobe_u64(v: u64, n: usize, shift: usize) -> i32 {
    let overlap = n - shift;
    let diff = (v ^ (v >> shift)) & low_mask(overlap);
    overlap as i32 - 2 * diff.count_ones() as i32
}

/// PSL of an `n`-bit packed value, `n <= 64`.
#[inline]
pub(crate) fn psl_u64(v: u64, n: usize) -> u32 {
    (1..n)
        .map(|shift| sidelobe_u64(v, n, shift).unsigned_abs())
        .max()
        .unwrap_or(0)
}

fn sidelobe_words(words: &[u64], n: usize, shift: usize) -> i32 {
    let overlap = n - shift;
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    let mut disagree = 0u32;
    let mut remaining = overlap;
    let mut i = 0;
    while remaining > 0 {
        let lo = words.get(i + word_shift).copied().unwrap_or(0);
        let shifted = if bit_shift == 0 {
            lo
        } else {
            let hi = words.get(i + word_shift + 1).copied().unwrap_or(0);
            (lo >> bit_shift) | (hi << (64 - bit_shift))
        };
        let take = remaining.min(64);
        disagree += ((words[i] ^ shifted) & low_mask(take)).count_ones();
        remaining -= take;
        i += 1;
    }
    overlap as i32 - 2 * disagree as i32
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn hex(h: &str, n: usize) -> BinarySequence {
        BinarySequence::from_hex(h, n).unwrap()
    }

    #[test]
    fn profile_of_length_six() {
        let p = autocorrelation(&hex("02", 6));
        assert_eq!(p.sidelobes(), &[1, 2, 1, 0, 1]);
        assert_eq!(p.psl(), 2);
        assert_eq!(p.energy(), 7);
        assert_eq!(p.merit_factor(), MeritFactor::new(36, 14));
        assert_eq!(p.merit_factor().to_decimal(), "2.571");
    }

    #[test]
    fn constant_sequence_profile() {
        let p = autocorrelation(&BinarySequence::all_plus(4).unwrap());
        assert_eq!(p.sidelobes(), &[3, 2, 1]);
        assert_eq!(psl(&BinarySequence::all_plus(8).unwrap()), 7);
    }

    #[test]
    fn barker_13() {
        let s = hex("00CA", 13);
        let p = autocorrelation(&s);
        assert!(p.sidelobes().iter().all(|c| c.abs() <= 1));
        assert_eq!(p.psl(), 1);
        assert_eq!(p.energy(), 6);
        let mf = merit_factor(&s);
        assert_eq!((mf.numerator(), mf.denominator()), (169, 12));
        assert_eq!(mf.to_decimal(), "14.083");
        assert_eq!(sidelobe_fast(&s, 1), Ok(0));
    }

    #[test]
    fn psl_of_published_rows() {
        assert_eq!(psl(&hex("0ED", 11)), 1);
        assert_eq!(psl(&hex("013538", 22)), 3);
        assert_eq!(merit_factor(&hex("02", 5)).to_decimal(), "6.250");
    }

    #[test]
    fn long_sequences_use_multiword_kernel() {
        assert_eq!(profile_fast(&hex("26C9FD5F5A1D798C", 64)).psl(), 4);
        let s68 = hex("562B8CA48E0C9027E", 68);
        assert_eq!(profile_fast(&s68).psl(), 4);
        assert_eq!(profile_fast(&s68), autocorrelation(&s68));
    }

    #[test]
    fn sidelobe_fast_edges() {
        let s = hex("02", 6);
        assert_eq!(sidelobe_fast(&s, 2), Ok(2));
        assert_eq!(sidelobe_fast(&s, 5).unwrap().abs(), 1);
        assert_eq!(
            sidelobe_fast(&s, 0),
            Err(Error::ShiftOutOfRange { shift: 0, max: 5 })
        );
        assert!(sidelobe_fast(&s, 6).is_err());
    }

    #[test]
    fn decimal_rendering_rounds_half_up() {
        assert_eq!(MeritFactor::new(4, 1).to_decimal(), "4.000");
        assert_eq!(MeritFactor::new(9, 2).to_decimal(), "4.500");
        assert_eq!(MeritFactor::new(1, 2000).to_decimal(), "0.001");
        assert_eq!(MeritFactor::new(1, 3).to_decimal(), "0.333");
        assert_eq!(MeritFactor::new(2, 3).to_decimal(), "0.667");
    }

    #[test]
    fn fast_equals_reference_exhaustive() {
        for n in 2..=16usize {
            for v in 0..(1u64 << n) {
                let s = BinarySequence::from_u64(v, n).unwrap();
                assert_eq!(profile_fast(&s), autocorrelation(&s), "n={n} v={v:#x}");
            }
        }
    }

    #[test]
    fn fast_equals_reference_random_long() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..2000 {
            let n = rng.gen_range(2..=200);
            let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let s = BinarySequence::from_bits(&bits).unwrap();
            assert_eq!(profile_fast(&s), autocorrelation(&s), "n={n}");
        }
    }

    proptest! {
        #[test]
        fn profile_invariants(bits in proptest::collection::vec(any::<bool>(), 2..=128)) {
            let s = BinarySequence::from_bits(&bits).unwrap();
            let n = bits.len();
            let p = profile_fast(&s);
            prop_assert_eq!(&p, &autocorrelation(&s));
            for shift in 1..n {
                let c = p.sidelobe(shift);
                prop_assert!(c.unsigned_abs() as usize <= n - shift);
                prop_assert_eq!((c - (n - shift) as i32).rem_euclid(2), 0);
            }
            prop_assert_eq!(p.sidelobe(n - 1).abs(), 1);
            prop_assert!(p.psl() >= 1 && p.energy() >= 1);
            let mf = p.merit_factor();
            prop_assert_eq!(mf.numerator() as u128 * 2 * p.energy() as u128,
                (n * n) as u128 * mf.denominator() as u128);
        }
    }
}
