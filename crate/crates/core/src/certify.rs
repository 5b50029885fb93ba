//! Runtime switch for post-hoc certificates.
//!
//! When enabled, every Groebner basis is checked against its S-vector
//! certificate, every syzygy map is checked to compose to zero with its
//! source map, and every resolution is checked for exactness. The checks are
//! expensive, so they are off unless a test or the `--certify` flag turns
//! them on.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(false);

pub fn enable() {
    ENABLED.store(true, Ordering::Relaxed);
}

pub fn disable() {
    ENABLED.store(false, Ordering::Relaxed);
}

#[inline]
pub fn enabled() -> bool {
    ENABLED.load(Ordering::Relaxed)
}
