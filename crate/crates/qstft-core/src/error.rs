//! Shared error type for the numerical layers.

use thiserror::Error;

/// Orthogonality tolerance used when validating a symplectic unit pair.
pub const UNIT_ORTHO_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum Error {
    /// Grid construction parameters are unusable (empty span, too few nodes,
    /// non-finite endpoints, ...).
    #[error("bad grid spec: {0}")]
    BadGridSpec(String),

    /// Two signals that must share a grid do not.
    #[error("operands are sampled on different grids")]
    GridMismatch,

    /// A symplectic decomposition was requested for units that are not
    /// orthogonal: |<I, J>| exceeds [`UNIT_ORTHO_TOL`].
    #[error("imaginary units are not orthogonal (dot = {dot:.3e})")]
    NonOrthogonalUnits { dot: f64 },

    /// A pure imaginary unit could not be built from the given components.
    #[error("cannot normalize ({x}, {y}, {z}) into an imaginary unit")]
    DegenerateUnit { x: f64, y: f64, z: f64 },

    /// Exponent outside the validity range of the concentration inequality.
    #[error("exponent p = {p} is not admissible (need p >= 2)")]
    BadExponent { p: f64 },

    /// Basis parameters produce non-finite normalization constants.
    #[error("basis spec overflows: {0}")]
    BadBasisSpec(String),

    /// An operation that normalizes its input received the zero signal.
    #[error("cannot normalize a signal with zero norm")]
    ZeroSignal,
}

pub type Result<T> = std::result::Result<T, Error>;
