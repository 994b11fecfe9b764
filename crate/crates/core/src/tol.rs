//! Structural tolerance.
//!
//! Operations that need a zero test read [`eps`]. The default is `1e-9`; a
//! process-wide override can be installed with [`set_eps`], and most
//! operations also have a `_with` variant taking an explicit tolerance.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default structural tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Tolerance used by measure case classification.
pub const CASE_TOL: f64 = 1e-7;

static EPS_BITS: AtomicU64 = AtomicU64::new(0);

/// Current global tolerance.
#[must_use]
pub fn eps() -> f64 {
    let bits = EPS_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_EPS
    } else {
        f64::from_bits(bits)
    }
}

/// Install a global tolerance. Non-positive or non-finite values restore the default.
pub fn set_eps(value: f64) {
    let bits = if value.is_finite() && value > 0.0 { value.to_bits() } else { 0 };
    EPS_BITS.store(bits, Ordering::Relaxed);
}
