use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A binary ±1 sequence of length `N`, packed one bit per element.
///
/// The packing stores the sequence as an `N`-bit unsigned integer whose most
/// significant bit is the first element. Bit value 0 is `+1`, bit value 1 is
/// `-1`. Words are little-endian: `words[0]` holds the 64 least significant
/// bits. Bits above `N - 1` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    len: usize,
    words: Vec<u64>,
}

pub(crate) fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl BinarySequence {
    /// All-plus sequence of length `n`.
    pub fn all_plus(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self {
            len: n,
            words: vec![0; word_count(n)],
        })
    }

    /// Builds a sequence from the `n` low bits of `value` (first element most significant).
    pub fn from_u64(value: u64, n: usize) -> Result<Self> {
        check_len(n)?;
        if n > 64 || (n < 64 && value >> n != 0) {
            return Err(Error::HexOverflow {
                hex: format!("{value:X}"),
                n,
            });
        }
        Ok(Self {
            len: n,
            words: vec![value],
        })
    }

    pub(crate) fn from_words(words: Vec<u64>, n: usize) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        let mut seq = Self { len: n, words };
        seq.clear_padding();
        seq
    }

    /// Builds a sequence from element values, each `+1` or `-1`.
    pub fn from_elements(elements: &[i8]) -> Result<Self> {
        check_len(elements.len())?;
        let mut bits = Vec::with_capacity(elements.len());
        for &e in elements {
            match e {
                1 => bits.push(false),
                -1 => bits.push(true),
                other => return Err(Error::InvalidElement(other as i64)),
            }
        }
        Self::from_bits(&bits)
    }

    /// Builds a sequence from per-element bits (`true` means `-1`), index 0 first.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let n = bits.len();
        check_len(n)?;
        let mut seq = Self {
            len: n,
            words: vec![0; word_count(n)],
        };
        for (i, &b) in bits.iter().enumerate() {
            if b {
                seq.set_bit(i, true);
            }
        }
        Ok(seq)
    }

    /// Parses `hex` as an integer and takes its `n` low bits as the sequence.
    pub fn from_hex(hex: &str, n: usize) -> Result<Self> {
        check_len(n)?;
        let digits = hex.trim();
        let digits = digits
            .strip_prefix("0x")
            .or_else(|| digits.strip_prefix("0X"))
            .unwrap_or(digits);
        if digits.is_empty() {
            return Err(Error::EmptyHex);
        }
        let mut words = vec![0u64; word_count(n)];
        // Consume digits from least significant upward.
        for (k, c) in digits.chars().rev().enumerate() {
            let nibble = c.to_digit(16).ok_or(Error::InvalidHex(c))? as u64;
            if nibble == 0 {
                continue;
            }
            let pos = 4 * k;
            let top = pos + 64 - nibble.leading_zeros() as usize;
            if top > n {
                return Err(Error::HexOverflow {
                    hex: hex.to_string(),
                    n,
                });
            }
            // Nibbles never straddle a word since 4 divides 64.
            words[pos / 64] |= nibble << (pos % 64);
        }
        Ok(Self { len: n, words })
    }

    /// Uppercase hex of exactly `ceil(N/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut out = String::with_capacity(digits);
        for k in (0..digits).rev() {
            let pos = 4 * k;
            let nibble = self.words[pos / 64] >> (pos % 64);
            out.push(
                char::from_digit((nibble & 0xF) as u32, 16)
                    .unwrap()
                    .to_ascii_uppercase(),
            );
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; lengths are at least 2.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed value when `N <= 64`.
    pub fn as_u64(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words[0])
    }

    /// Bit of element `i` (`true` means `-1`).
    pub fn bit(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "element index {i} out of range for length {}",
            self.len
        );
        let pos = self.len - 1 - i;
        (self.words[pos / 64] >> (pos % 64)) & 1 == 1
    }

    pub(crate) fn set_bit(&mut self, i: usize, value: bool) {
        let pos = self.len - 1 - i;
        let mask = 1u64 << (pos % 64);
        if value {
            self.words[pos / 64] |= mask;
        } else {
            self.words[pos / 64] &= !mask;
        }
    }

    /// Element `a_i` as `+1` or `-1`.
    pub fn element(&self, i: usize) -> i8 {
        if self.bit(i) {
            -1
        } else {
            1
        }
    }

    pub fn elements(&self) -> Vec<i8> {
        (0..self.len).map(|i| self.element(i)).collect()
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    /// Numeric order of the packed values, equal lengths assumed.
    pub fn cmp_encoding(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().rev().cmp(other.words.iter().rev())
    }

    pub(crate) fn clear_padding(&mut self) {
        let used = self.len % 64;
        if used != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= low_mask(used);
        }
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
}

impl PartialOrd for BinarySequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BinarySequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.cmp_encoding(other))
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({}, {})", self.len, self)
    }
}

/// Renders elements as `+` and `-` characters.
impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

fn check_len(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::LengthTooShort(n))
    } else {
        Ok(())
    }
}
