//! The PSL-preserving symmetry group and its orbits.
//!
//! Reversal `R`, negation `N` and alternating sign `S` generate a group of
//! order 8 acting on length-`n` sequences. Every element is written in the
//! normal form `a_i -> (-1)^(neg + alt*i) * a_(rev ? n-1-i : i)`: reverse
//! first, then flip signs by output index.

use std::sync::OnceLock;

use crate::seqcore::{low_mask, BinarySequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryElement {
    pub reverse: bool,
    pub negate: bool,
    pub alternate: bool,
}

impl SymmetryElement {
    pub const IDENTITY: Self = Self::new(false, false, false);

    pub const fn new(reverse: bool, negate: bool, alternate: bool) -> Self {
        Self {
            reverse,
            negate,
            alternate,
        }
    }

    /// All 8 group elements, identity first.
    pub fn all() -> [Self; 8] {
        let mut out = [Self::IDENTITY; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = Self::from_index(k);
        }
        out
    }

    /// Element with bit 0 = reverse, bit 1 = negate, bit 2 = alternate.
    pub const fn from_index(k: usize) -> Self {
        Self::new(k & 1 != 0, k & 2 != 0, k & 4 != 0)
    }

    pub const fn index(self) -> usize {
        self.reverse as usize | (self.negate as usize) << 1 | (self.alternate as usize) << 2
    }

    /// Whether output element `i` is sign-flipped relative to its source element.
    #[inline]
    pub const fn flips(self, i: usize) -> bool {
        self.negate ^ (self.alternate & (i % 2 == 1))
    }

    /// Source index of output element `i`.
    #[inline]
    pub const fn source(self, i: usize, n: usize) -> usize {
        if self.reverse {
            n - 1 - i
        } else {
            i
        }
    }

    /// `self ∘ other` (apply `other` first) for sequences of length `n`.
    ///
    /// For even `n`, `S∘R` and `R∘S` differ by a negation, so the result
    /// depends on the parity of `n`.
    pub fn compose(self, other: Self, n: usize) -> Self {
        let extra_neg = other.alternate && self.reverse && n.is_multiple_of(2);
        Self::new(
            self.reverse ^ other.reverse,
            self.negate ^ other.negate ^ extra_neg,
            self.alternate ^ other.alternate,
        )
    }

    pub fn apply(self, seq: &BinarySequence) -> BinarySequence {
        let mut out = if self.reverse {
            reverse_fast(seq)
        } else {
            seq.clone()
        };
        xor_flip_mask(&mut out, self);
        out
    }

    /// Action on an `n`-bit packed value, `n <= 64`.
    #[inline]
    pub(crate) fn apply_u64(self, v: u64, n: usize) -> u64 {
        let mut out = if self.reverse {
            v.reverse_bits() >> (64 - n)
        } else {
            v
        };
        if self.negate {
            out ^= low_mask(n);
        }
        if self.alternate {
            out ^= odd_element_mask(n) & low_mask(n);
        }
        out
    }
}

/// Storage positions (within one word pattern) holding odd element indices.
fn odd_element_mask(n: usize) -> u64 {
    // Element i sits at position n-1-i.
    if n % 2 == 1 {
        0xAAAA_AAAA_AAAA_AAAA
    } else {
        0x5555_5555_5555_5555
    }
}

fn xor_flip_mask(seq: &mut BinarySequence, g: SymmetryElement) {
    if !g.negate && !g.alternate {
        return;
    }
    let n = seq.len();
    let mut pattern = 0u64;
    if g.negate {
        pattern = u64::MAX;
    }
    if g.alternate {
        pattern ^= odd_element_mask(n);
    }
    for w in seq.words_mut() {
        *w ^= pattern;
    }
    seq.clear_padding();
}

/// Element-wise reversal, one bit at a time.
pub fn reverse(seq: &BinarySequence) -> BinarySequence {
    let n = seq.len();
    let bits: Vec<bool> = (0..n).map(|i| seq.bit(n - 1 - i)).collect();
    BinarySequence::from_bits(&bits).expect("length preserved")
}

pub fn negate(seq: &BinarySequence) -> BinarySequence {
    SymmetryElement::new(false, true, false).apply(seq)
}

pub fn alternate(seq: &BinarySequence) -> BinarySequence {
    SymmetryElement::new(false, false, true).apply(seq)
}

fn reversal_table() -> &'static [u16] {
    static TABLE: OnceLock<Vec<u16>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=u16::MAX)
            .map(|x| {
                let mut r = 0u16;
                for b in 0..16 {
                    r |= ((x >> b) & 1) << (15 - b);
                }
                r
            })
            .collect()
    })
}

#[inline]
fn reverse_word(table: &[u16], w: u64) -> u64 {
    let mut out = 0u64;
    for k in 0..4 {
        let chunk = (w >> (16 * k)) as u16;
        out |= (table[chunk as usize] as u64) << (16 * (3 - k));
    }
    out
}

/// Reversal through a 65536-entry table of 16-bit reversals.
///
/// Reverses the whole padded word array, then shifts right by the padding
/// width to realign the `N` payload bits.
pub fn reverse_fast(seq: &BinarySequence) -> BinarySequence {
    let table = reversal_table();
    let n = seq.len();
    let words = seq.words();
    let count = words.len();
    let reversed: Vec<u64> = words
        .iter()
        .rev()
        .map(|&w| reverse_word(table, w))
        .collect();
    let pad = count * 64 - n;
    let out = if pad == 0 {
        reversed
    } else {
        (0..count)
            .map(|i| {
                let lo = reversed[i] >> pad;
                let hi = reversed.get(i + 1).map_or(0, |&h| h << (64 - pad));
                lo | hi
            })
            .collect()
    };
    BinarySequence::from_words(out, n)
}

/// The distinct images of a sequence under the 8 group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    members: Vec<BinarySequence>,
}

impl Orbit {
    /// Members sorted by encoding; the first is the canonical form.
    pub fn members(&self) -> &[BinarySequence] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, seq: &BinarySequence) -> bool {
        self.members.binary_search(seq).is_ok()
    }

    pub fn canonical(&self) -> &BinarySequence {
        &self.members[0]
    }
}

pub fn orbit(seq: &BinarySequence) -> Orbit {
    let mut members: Vec<BinarySequence> = SymmetryElement::all()
        .iter()
        .map(|g| g.apply(seq))
        .collect();
    members.sort();
    members.dedup();
    Orbit { members }
}

/// Orbit member with the numerically smallest encoding.
pub fn canonical(seq: &BinarySequence) -> BinarySequence {
    if let Some(v) = seq.as_u64() {
        return BinarySequence::from_u64(canonical_u64(v, seq.len()), seq.len())
            .expect("canonical fits in n bits");
    }
    SymmetryElement::all()
        .iter()
        .map(|g| g.apply(seq))
        .min()
        .expect("group is nonempty")
}

#[inline]
pub(crate) fn canonical_u64(v: u64, n: usize) -> u64 {
    SymmetryElement::all()
        .iter()
        .map(|g| g.apply_u64(v, n))
        .min()
        .unwrap()
}

pub fn is_canonical(seq: &BinarySequence) -> bool {
    canonical(seq) == *seq
}
