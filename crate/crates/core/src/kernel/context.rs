use rug::Float;

use crate::error::{Error, Result};

pub const LOG2_10: f64 = 3.321928094887362;

/// Default guard bits. Covers summation rounding for any series of up to
/// 2^32 terms (64 + 32 bits).
pub const DEFAULT_GUARD_BITS: u32 = 96;

/// Precision policy for every numeric operation in the library.
///
/// `target_bits` is the binary precision of final answers; all intermediate
/// work is carried at `working_bits = target_bits + guard_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    target_bits: u32,
    guard_bits: u32,
    decimal_digits: u32,
}

impl PrecisionContext {
    /// Context for a requested number of decimal digits.
    pub fn from_digits(decimal_digits: u32) -> Result<Self> {
        if decimal_digits == 0 {
            return Err(Error::InvalidInput(
                "decimal_digits must be at least 1".into(),
            ));
        }
        let target_bits = (decimal_digits as f64 * LOG2_10).ceil() as u32;
        Ok(PrecisionContext {
            target_bits,
            guard_bits: DEFAULT_GUARD_BITS,
            decimal_digits,
        })
    }

    /// Same target precision with extra guard bits for a series of
    /// `n_terms` terms: guard = 96 + ceil(log2 n_terms).
    pub fn with_series_guard(&self, n_terms: u64) -> Self {
        // ceil(log2 n)
        let extra = if n_terms <= 1 {
            0
        } else {
            64 - (n_terms - 1).leading_zeros()
        };
        PrecisionContext {
            target_bits: self.target_bits,
            guard_bits: DEFAULT_GUARD_BITS + extra,
            decimal_digits: self.decimal_digits,
        }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn target_bits(&self) -> u32 {
        self.target_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn working_bits(&self) -> u32 {
        self.target_bits + self.guard_bits
    }

    /// Relative-error bound of a single operation at this context.
    pub fn op_eps(&self) -> Float {
        let mut e = Float::with_val(64, 1u32);
        e >>= self.working_bits() - 4;
        e
    }

    /// Tolerance for final answers: 2^{-target_bits}.
    pub fn target_eps(&self) -> Float {
        let mut e = Float::with_val(64, 1u32);
        e >>= self.target_bits;
        e
    }

    /// A fresh real carrying this context's working precision.
    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits(), v)
    }

    /// pi at working precision.
    pub fn pi(&self) -> Float {
        Float::with_val(self.working_bits(), rug::float::Constant::Pi)
    }
}

/// Convenience constructor matching the library-wide default policy.
pub fn make_context(decimal_digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::from_digits(decimal_digits)
}
