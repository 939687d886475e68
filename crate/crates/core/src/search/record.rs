use std::cmp::Ordering;

use crate::seqcore::{profile_fast, BinarySequence, MeritFactor};
use crate::symmetry::canonical;

/// One equivalence class, reported by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassRecord {
    sequence: BinarySequence,
    psl: u32,
    mf: MeritFactor,
}

impl ClassRecord {
    /// Canonicalizes `seq` and recomputes its PSL and merit factor from scratch.
    pub fn from_sequence(seq: &BinarySequence) -> Self {
        let sequence = canonical(seq);
        let profile = profile_fast(&sequence);
        Self {
            psl: profile.psl(),
            mf: profile.merit_factor(),
            sequence,
        }
    }

    pub fn n(&self) -> usize {
        self.sequence.len()
    }

    pub fn sequence(&self) -> &BinarySequence {
        &self.sequence
    }

    pub fn canonical_hex(&self) -> String {
        self.sequence.to_hex()
    }

    pub fn psl(&self) -> u32 {
        self.psl
    }

    pub fn merit_factor(&self) -> MeritFactor {
        self.mf
    }
}

/// Ordered by `(n, psl, canonical encoding)`.
impl Ord for ClassRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then(self.psl.cmp(&other.psl))
            .then_with(|| self.sequence.cmp_encoding(&other.sequence))
    }
}

impl PartialOrd for ClassRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_is_canonical() {
        let s = BinarySequence::from_hex("58", 7).unwrap();
        let r = ClassRecord::from_sequence(&s);
        assert_eq!(r.canonical_hex(), "0D");
        assert_eq!(r.psl(), 1);
        assert_eq!(r.merit_factor().to_decimal(), "8.167");
        assert_eq!(r.n(), 7);
    }

    #[test]
    fn ordering_is_psl_then_encoding() {
        let mut v: Vec<ClassRecord> = ["1A5", "002", "0F0"]
            .iter()
            .map(|h| ClassRecord::from_sequence(&BinarySequence::from_hex(h, 10).unwrap()))
            .collect();
        v.sort();
        for w in v.windows(2) {
            assert!((w[0].psl(), w[0].canonical_hex()) <= (w[1].psl(), w[1].canonical_hex()));
        }
    }
}
