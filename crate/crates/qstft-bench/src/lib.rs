//! Benchmark-only crate; see benches/.

use qstft_core::grid::{default_time_grid, SampledSignal};
use qstft_core::report::seeded_hermite_combo;

/// Standard benchmark input: a normalized quaternion-coefficient Hermite
/// combination on the default 1024-node grid.
pub fn fixture_signal(kmax: usize) -> SampledSignal {
    seeded_hermite_combo(7, std::f64::consts::TAU, kmax, &default_time_grid())
}
