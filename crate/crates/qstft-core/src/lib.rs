//! Quaternion short-time Fourier analysis.
//!
//! The library builds a one-dimensional quaternionic time-frequency toolbox
//! out of three layers:
//!
//! * a small quaternion/slice-complex substrate ([`quat`]),
//! * deterministic quadrature grids and inner products ([`grid`]),
//! * weighted Hermite functions, Fock monomials and the Bargmann kernel
//!   ([`basis`]),
//!
//! on top of which sit the Segal-Bargmann transform ([`bargmann`]), a
//! left-sided quaternion Fourier transform ([`qft`]) and the Gaussian-window
//! short-time transform with its full verification machinery ([`qstft`]).
//! [`report`] runs every identity check and serializes the results; [`io`]
//! holds the CSV contracts shared with the command line front end.
//!
//! All transforms are direct quadratures: grids are small, determinism and
//! slice-exact arithmetic matter more here than FFT-grade throughput.
//!
//! ```
//! use qstft_core::grid::{default_time_grid, SampledSignal};
//! use qstft_core::qstft::{qstft_grid, qstft_reconstruct, TimeFreqGrid};
//! use qstft_core::ImaginaryUnit;
//!
//! let grid = default_time_grid();                      // [-8, 8], 1024 nodes
//! let f = SampledSignal::from_real_fn(grid.clone(), |t| (-t * t).exp());
//! let (xg, wg) = TimeFreqGrid::default_lattice();      // [-4, 4]^2, 129 x 129
//! let tf = qstft_grid(&f, &xg, &wg, ImaginaryUnit::I); // analysis
//! let back = qstft_reconstruct(&tf, &grid);            // synthesis
//! assert!(back.sub(&f).unwrap().sup_norm() < 1e-5);
//! assert!((tf.energy() - 2.0 * f.norm() * f.norm()).abs() < 1e-5);
//! ```

pub mod bargmann;
pub mod basis;
pub mod error;
pub mod grid;
pub mod io;
pub mod qft;
pub mod qstft;
pub mod quat;
pub mod report;
pub mod tol;

pub use error::Error;
pub use grid::{GridRule, LineGrid, PlaneGrid, SampledSignal};
pub use quat::{ImaginaryUnit, Quaternion, SliceComplex};
