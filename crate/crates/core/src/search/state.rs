use crate::error::{Error, Result};
use crate::seqcore::BinarySequence;

#[inline]
fn sign(bit: bool) -> i32 {
    if bit {
        -1
    } else {
        1
    }
}

/// An outer-shell assignment: the first `m` and last `m` elements are decided.
///
/// `known[τ]` sums the products `a_i a_{i+τ}` whose indices are both decided;
/// `undecided[τ]` counts the rest. Any completion therefore satisfies
/// `|C_τ - known[τ]| <= undecided[τ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialState {
    n: usize,
    left: Vec<bool>,
    /// `right[j]` is element `n-1-j`, outermost first.
    right: Vec<bool>,
    center: Option<bool>,
    known: Vec<i32>,
    undecided: Vec<i32>,
}

impl PartialState {
    /// The empty state of target length `n`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::LengthTooShort(n));
        }
        let mut undecided = vec![0; n];
        for (shift, u) in undecided.iter_mut().enumerate().skip(1) {
            *u = (n - shift) as i32;
        }
        Ok(Self {
            n,
            left: Vec::with_capacity(n / 2),
            right: Vec::with_capacity(n / 2),
            center: None,
            known: vec![0; n],
            undecided,
        })
    }

    /// Rebuilds a state from its decided bits by direct recount.
    pub fn from_bits(n: usize, left: &[bool], right_outer_first: &[bool]) -> Result<Self> {
        let mut state = Self::new(n)?;
        if left.len() != right_outer_first.len() || left.len() > n / 2 {
            return Err(Error::DepthExceeded {
                n,
                depth: left.len(),
            });
        }
        for (&l, &r) in left.iter().zip(right_outer_first) {
            state.push(l, r);
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of elements decided on each side.
    pub fn depth(&self) -> usize {
        self.left.len()
    }

    /// Decided leading elements `a_0 .. a_{m-1}` as bits.
    pub fn left(&self) -> &[bool] {
        &self.left
    }

    /// Decided trailing elements `a_{n-m} .. a_{n-1}` as bits, in index order.
    pub fn right(&self) -> Vec<bool> {
        self.right.iter().rev().copied().collect()
    }

    /// Trailing elements outermost first: `a_{n-1}, a_{n-2}, ...`.
    pub fn right_outer_first(&self) -> &[bool] {
        &self.right
    }

    pub fn center(&self) -> Option<bool> {
        self.center
    }

    pub fn known(&self, shift: usize) -> i32 {
        self.known[shift]
    }

    pub fn undecided(&self, shift: usize) -> i32 {
        self.undecided[shift]
    }

    /// Deepest depth reachable by [`extend`](Self::extend).
    pub fn max_depth(&self) -> usize {
        self.n / 2
    }

    pub fn is_complete(&self) -> bool {
        if self.n.is_multiple_of(2) {
            self.depth() == self.n / 2
        } else {
            self.center.is_some()
        }
    }

    pub fn extend(&self, left_bit: bool, right_bit: bool) -> Result<Self> {
        if self.depth() >= self.max_depth() {
            return Err(Error::DepthExceeded {
                n: self.n,
                depth: self.depth(),
            });
        }
        let mut next = self.clone();
        next.push(left_bit, right_bit);
        Ok(next)
    }

    pub fn assign_center(&self, bit: bool) -> Result<Self> {
        if self.n.is_multiple_of(2) || self.depth() != self.max_depth() || self.center.is_some() {
            return Err(Error::CenterNotAllowed {
                n: self.n,
                depth: self.depth(),
            });
        }
        let mut next = self.clone();
        next.push_center(bit);
        Ok(next)
    }

    /// True iff some shift is already forced above `bound` in magnitude.
    pub fn prune(&self, bound: u32) -> bool {
        (1..self.n).any(|shift| self.exceeds(shift, bound))
    }

    #[inline]
    fn exceeds(&self, shift: usize, bound: u32) -> bool {
        self.known[shift].abs() - self.undecided[shift] > bound as i32
    }

    /// The bound test restricted to shifts changed by the last [`push`](Self::push).
    #[inline]
    pub(crate) fn last_push_exceeds(&self, bound: u32) -> bool {
        let m = self.depth();
        let n = self.n;
        (1..m).any(|s| self.exceeds(s, bound))
            || (n - 2 * m + 1..=n - m).any(|s| self.exceeds(s, bound))
    }

    /// The bound test restricted to shifts changed by [`push_center`](Self::push_center).
    #[inline]
    pub(crate) fn center_exceeds(&self, bound: u32) -> bool {
        (1..=self.depth()).any(|s| self.exceeds(s, bound))
    }

    /// Decides positions `m` and `n-1-m`. Caller guarantees `m < n/2`.
    #[inline]
    pub(crate) fn push(&mut self, left_bit: bool, right_bit: bool) {
        let m = self.depth();
        self.left.push(left_bit);
        self.right.push(right_bit);
        self.apply_shell(m, 1);
    }

    #[inline]
    pub(crate) fn pop(&mut self) {
        let m = self.depth() - 1;
        self.apply_shell(m, -1);
        self.left.pop();
        self.right.pop();
    }

    /// Adds (`dir = 1`) or removes (`dir = -1`) the products created by shell `m`.
    #[inline]
    fn apply_shell(&mut self, m: usize, dir: i32) {
        let n = self.n;
        let ap = sign(self.left[m]);
        let aq = sign(self.right[m]);
        let q = n - 1 - m;
        for j in 0..m {
            let al = sign(self.left[j]);
            let ar = sign(self.right[j]);
            // left-left and right-right products share shift m - j
            let inner = m - j;
            self.known[inner] += dir * (al * ap + ar * aq);
            self.undecided[inner] -= dir * 2;
            // the two cross products share shift n-1-m-j
            let cross = q - j;
            self.known[cross] += dir * (al * aq + ar * ap);
            self.undecided[cross] -= dir * 2;
        }
        let span = q - m;
        self.known[span] += dir * ap * aq;
        self.undecided[span] -= dir;
    }

    pub(crate) fn push_center(&mut self, bit: bool) {
        self.center = Some(bit);
        self.apply_center(1);
    }

    pub(crate) fn pop_center(&mut self) {
        self.apply_center(-1);
        self.center = None;
    }

    fn apply_center(&mut self, dir: i32) {
        let c = self.depth();
        let ac = sign(self.center.expect("center assigned"));
        for j in 0..c {
            let shift = c - j;
            self.known[shift] += dir * ac * (sign(self.left[j]) + sign(self.right[j]));
            self.undecided[shift] -= dir * 2;
        }
    }

    /// `(known, undecided)` recomputed from the decided bits by brute force.
    pub fn recount(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.n;
        let mut decided: Vec<Option<bool>> = vec![None; n];
        for (i, &b) in self.left.iter().enumerate() {
            decided[i] = Some(b);
        }
        for (j, &b) in self.right.iter().enumerate() {
            decided[n - 1 - j] = Some(b);
        }
        if let Some(c) = self.center {
            decided[n / 2] = Some(c);
        }
        let mut known = vec![0; n];
        let mut undecided = vec![0; n];
        for shift in 1..n {
            for i in 0..n - shift {
                match (decided[i], decided[i + shift]) {
                    (Some(x), Some(y)) => known[shift] += sign(x) * sign(y),
                    _ => undecided[shift] += 1,
                }
            }
        }
        (known, undecided)
    }

    #[cfg(test)]
    pub(crate) fn known_slice(&self) -> &[i32] {
        &self.known
    }

    #[cfg(test)]
    pub(crate) fn undecided_slice(&self) -> &[i32] {
        &self.undecided
    }

    /// Peak of `|known|`; the PSL once the state is complete.
    pub fn known_peak(&self) -> u32 {
        self.known[1..]
            .iter()
            .map(|k| k.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// The full sequence, once every element is decided.
    pub fn to_sequence(&self) -> Option<BinarySequence> {
        if !self.is_complete() {
            return None;
        }
        let mut bits = Vec::with_capacity(self.n);
        bits.extend_from_slice(&self.left);
        if let Some(c) = self.center {
            bits.push(c);
        }
        bits.extend(self.right.iter().rev());
        Some(BinarySequence::from_bits(&bits).expect("length >= 2"))
    }
}
