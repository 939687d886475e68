//! Packed binary sequences, hex encoding, and aperiodic autocorrelation kernels.
//!
//! Two kernels compute the same sidelobes: [`autocorrelation`] sums element
//! products directly, and [`profile_fast`] counts disagreeing bits with XOR
//! and popcount over whole words.

mod correlation;
mod sequence;

pub(crate) use correlation::psl_u64;
pub use correlation::{
    autocorrelation, merit_factor, profile_fast, psl, sidelobe_fast, CorrelationProfile,
    MeritFactor,
};
pub(crate) use sequence::low_mask;
pub use sequence::BinarySequence;
