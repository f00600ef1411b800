//! Precision management, arbitrary-precision complex arithmetic with
//! principal-branch roots, and the gamma/digamma functions the rest of the
//! library consumes.

mod complex;
mod context;
mod gamma;

pub use complex::{principal_root, APComplex};
pub use context::{make_context, PrecisionContext, DEFAULT_GUARD_BITS, LOG2_10};
pub use gamma::{bernoulli, digamma_ap, gamma_ap};
