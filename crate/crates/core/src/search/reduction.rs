//! Isomorph rejection for the two-sided search.
//!
//! Every group element maps the decided outer shells onto themselves, so the
//! image of a partial state is decided on exactly the same positions. States
//! are compared in *shell order*: the key `a_0, a_{n-1}, a_1, a_{n-2}, ...`
//! read lexicographically, which is the order in which the search decides
//! bits. A branch is rejected as soon as some element maps its key prefix to a
//! strictly smaller prefix. The shell-order minimum of each orbit is never
//! rejected, so every orbit reaches exactly one leaf.
//!
//! `tied` is a bitmask over group element indices whose image prefix still
//! equals the state's own prefix; only those can reject deeper branches.

use crate::search::state::PartialState;
use crate::symmetry::SymmetryElement;

/// Every non-identity element.
pub(crate) const ALL_TIED: u8 = 0b1111_1110;

const ELEMENTS: [SymmetryElement; 8] = [
    SymmetryElement::from_index(0),
    SymmetryElement::from_index(1),
    SymmetryElement::from_index(2),
    SymmetryElement::from_index(3),
    SymmetryElement::from_index(4),
    SymmetryElement::from_index(5),
    SymmetryElement::from_index(6),
    SymmetryElement::from_index(7),
];

/// Applies shell `depth` with bits `(left, right)`; `None` means reject.
#[inline]
pub(crate) fn shell_step(tied: u8, n: usize, depth: usize, left: bool, right: bool) -> Option<u8> {
    let own = (left as u8) << 1 | right as u8;
    let mut next = tied;
    let mut rest = tied;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let g = ELEMENTS[k];
        let (src_l, src_r) = if g.reverse {
            (right, left)
        } else {
            (left, right)
        };
        let img_l = src_l ^ g.flips(depth);
        let img_r = src_r ^ g.flips(n - 1 - depth);
        let image = (img_l as u8) << 1 | img_r as u8;
        if image < own {
            return None;
        }
        if image > own {
            next &= !(1 << k);
        }
    }
    Some(next)
}

/// Applies the center bit of an odd-length sequence.
#[inline]
pub(crate) fn center_step(tied: u8, center: usize, bit: bool) -> Option<u8> {
    let mut next = tied;
    let mut rest = tied;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let image = bit ^ ELEMENTS[k].flips(center);
        if !image & bit {
            return None;
        }
        if image & !bit {
            next &= !(1 << k);
        }
    }
    Some(next)
}

/// Replays the decided shells of `state`; `None` if it would have been rejected.
pub(crate) fn tied_for(state: &PartialState) -> Option<u8> {
    let n = state.n();
    let mut tied = ALL_TIED;
    for (depth, (&l, &r)) in state
        .left()
        .iter()
        .zip(state.right_outer_first())
        .enumerate()
    {
        tied = shell_step(tied, n, depth, l, r)?;
    }
    if let Some(c) = state.center() {
        tied = center_step(tied, n / 2, c)?;
    }
    Some(tied)
}
