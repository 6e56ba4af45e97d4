//! Pinned verification tolerances.
//!
//! Every identity the library verifies carries a fixed tolerance chosen from
//! the accuracy budget of the discretization that evaluates it (quadrature
//! truncation, finite differences, series truncation). The constants live in
//! one place so the verification report and the acceptance suite cannot
//! drift apart.

/// Hermite orthonormality defect, degrees up to 20. The integrands are
/// entire and decay past the classical turning point, so trapezoid sums are
/// rounding-limited; 1e-9 leaves two orders of headroom.
pub const HERMITE_ORTHONORMALITY: f64 = 1e-9;

/// Closed-form Bargmann kernel vs. its degree-60 generating series on
/// |q|, |t| <= 2. The series tail at degree 60 is below 1e-20; the bound is
/// set by accumulated rounding in the 60-term slice products.
pub const KERNEL_GENERATING_FUNCTION: f64 = 1e-8;

/// Bargmann transform unitarity and route cross-checks.
pub const BARGMANN_UNITARITY: f64 = 1e-7;

/// Direct quadrature of the Bargmann transform vs. evaluation of its
/// coefficient series at interior probe points.
pub const TRANSFORM_SERIES_CONSISTENCY: f64 = 1e-8;

/// Position operator intertwining residual for smooth inputs.
pub const POSITION_EQUIVALENCE: f64 = 1e-6;

/// Momentum operator intertwining residual; limited by the 4th-order
/// finite-difference derivative, not by the transform.
pub const MOMENTUM_EQUIVALENCE: f64 = 1e-6;

/// Fourier-transform norm preservation (relative).
pub const QFT_PLANCHEREL: f64 = 1e-8;

/// Forward-then-inverse Fourier round trip, sup norm.
pub const QFT_ROUNDTRIP: f64 = 1e-7;

/// Translation/modulation covariance laws of the Fourier transform;
/// limited by band-limited resampling of translated signals.
pub const QFT_COVARIANCE: f64 = 1e-7;

/// Fourier factorization of a convolution with a real factor; limited by
/// resampling the convolution onto the difference grid.
pub const QFT_CONVOLUTION: f64 = 1e-6;

/// Gaussian window self-duality under the Fourier transform, sup norm.
pub const WINDOW_SELF_DUAL: f64 = 1e-9;

/// Agreement of the kernel route and the windowed route of the short-time
/// transform on probe lattices.
pub const QSTFT_ROUTE_EQUIVALENCE: f64 = 1e-7;

/// Energy identities of the short-time transform (factor-2 isometry and the
/// polarized inner-product form), relative error on the default lattice.
pub const QSTFT_ISOMETRY: f64 = 1e-5;

/// Round trip through analysis and synthesis, sup norm.
pub const QSTFT_RECONSTRUCTION: f64 = 1e-5;

/// Adjoint identities (pairing and composition), sup norm / relative.
pub const QSTFT_ADJOINT: f64 = 1e-5;

/// Reproducing-kernel diagonal: unit window energy.
pub const KERNEL_DIAGONAL: f64 = 1e-9;

/// Conjugate symmetry of the reproducing kernel.
pub const KERNEL_CONJUGATE_SYMMETRY: f64 = 1e-10;

/// Quadrature evaluation of the reproducing kernel vs. its Gaussian closed
/// form.
pub const KERNEL_CLOSED_FORM: f64 = 1e-9;

/// Reproducing property integrated over the default lattice.
pub const KERNEL_REPRODUCTION: f64 = 1e-4;

/// Concentration functional at p = 2 against the exact isometry value.
pub const LIEB_P2_MATCHES_ISOMETRY: f64 = 1e-6;

/// Slack added to the concentration bound before comparing, absorbing
/// quadrature error in the p-th power integral.
pub const LIEB_BOUND_SLACK: f64 = 1e-6;

/// Fourier eigenvalue moduli of the Hermite family and their geometric
/// progression.
pub const QFT_EIGENVALUE: f64 = 1e-6;

/// Residual of the time-frequency/Fourier intertwining law at the winning
/// constant.
pub const INTERTWINE_RESIDUAL: f64 = 1e-7;

/// Image of normalized Hermite inputs under the short-time transform vs.
/// the predicted closed form.
pub const HERMITE_IMAGE: f64 = 1e-8;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_are_positive_and_ordered_sanely() {
        for (name, t) in [
            ("HERMITE_ORTHONORMALITY", HERMITE_ORTHONORMALITY),
            ("KERNEL_GENERATING_FUNCTION", KERNEL_GENERATING_FUNCTION),
            ("BARGMANN_UNITARITY", BARGMANN_UNITARITY),
            ("QFT_PLANCHEREL", QFT_PLANCHEREL),
            ("QSTFT_RECONSTRUCTION", QSTFT_RECONSTRUCTION),
            ("KERNEL_REPRODUCTION", KERNEL_REPRODUCTION),
        ] {
            assert!(t > 0.0 && t < 1e-3, "{name} out of range: {t}");
        }
        // Finite differences are the loosest link in the operator checks.
        assert!(MOMENTUM_EQUIVALENCE >= BARGMANN_UNITARITY);
        // Lattice-integrated identities are looser than pointwise ones.
        assert!(QSTFT_ISOMETRY >= QSTFT_ROUTE_EQUIVALENCE);
        assert!(KERNEL_REPRODUCTION >= KERNEL_DIAGONAL);
    }
}
