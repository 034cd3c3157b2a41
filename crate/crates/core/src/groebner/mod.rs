//! Reduced Gröbner bases and the ideal operations built on them.

mod buchberger;
mod ideal;
mod ops;

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

pub use ideal::{GroebnerBasis, Ideal};
pub use ops::{
    bracket_power, colon, contains, dimension_height, extend_ring, ideal_equal, ideal_power, intersect,
    normal_form, reduced_groebner,
};

pub(crate) use buchberger::s_polynomial;

/// Default ceiling on the number of generators of a materialized ideal power.
pub const DEFAULT_GENERATOR_CEILING: usize = 50_000;

/// Environment variable overriding [`DEFAULT_GENERATOR_CEILING`].
pub const GEN_CEILING_ENV: &str = "FPTOOL_GEN_CEILING";

static PARALLEL_SPAIRS: AtomicBool = AtomicBool::new(false);
static GENERATOR_CEILING: AtomicUsize = AtomicUsize::new(0);

/// Switches S-pair reduction between the sequential and the batched parallel
/// engine. Both produce the same reduced basis.
pub fn set_parallel_spairs(on: bool) {
    PARALLEL_SPAIRS.store(on, Ordering::Relaxed);
}

pub fn parallel_spairs() -> bool {
    PARALLEL_SPAIRS.load(Ordering::Relaxed)
}

/// Current generator ceiling: an explicit setting, else `FPTOOL_GEN_CEILING`,
/// else the default.
pub fn generator_ceiling() -> usize {
    match GENERATOR_CEILING.load(Ordering::Relaxed) {
        0 => {
            let v = std::env::var(GEN_CEILING_ENV)
                .ok()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|v| *v > 0)
                .unwrap_or(DEFAULT_GENERATOR_CEILING);
            GENERATOR_CEILING.store(v, Ordering::Relaxed);
            v
        }
        v => v,
    }
}

pub fn set_generator_ceiling(ceiling: usize) {
    GENERATOR_CEILING.store(ceiling.max(1), Ordering::Relaxed);
}
