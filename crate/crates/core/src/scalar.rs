//! Capacity scalar abstraction.
//!
//! Every cut value in this crate is an exact integer, so the scalar is any
//! unsigned primitive integer. Floating point types are deliberately not
//! admitted: two cuts of equal weight must compare equal.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;

use num_traits::{PrimInt, Unsigned};

/// Unsigned integer edge capacity.
pub trait Weight:
    PrimInt + Unsigned + Hash + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Exclusive bound on the total edge weight of a graph. Totals are kept a
    /// factor of four below the type maximum so that doubled instances
    /// (batched isolating-cut flows) cannot overflow.
    fn total_limit() -> u128 {
        let max = Self::max_value().to_u128().unwrap_or(u128::MAX);
        ((max >> 2) + 1).min(1u128 << 62)
    }

    fn wide(self) -> u128 {
        // lossless for every unsigned primitive up to u128
        self.to_u128().unwrap()
    }

    fn from_wide(v: u128) -> Option<Self> {
        Self::from(v)
    }
}

impl<T> Weight for T where
    T: PrimInt + Unsigned + Hash + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        assert_eq!(u64::total_limit(), 1u128 << 62);
        assert_eq!(u32::total_limit(), 1u128 << 30);
        assert_eq!(u8::total_limit(), 64);
        assert_eq!(u16::from_wide(70_000), None);
        assert_eq!(7u32.wide(), 7u128);
    }
}
