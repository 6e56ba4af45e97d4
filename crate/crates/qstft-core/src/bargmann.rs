//! The slice Segal-Bargmann transform and its operator calculus.
//!
//! `B(f)(q) = integral A(q, x) f(x) dx` with the kernel on the left of the
//! signal, so quaternion-valued signals transform consistently. On the
//! image side everything is a power series `sum q^k c_k` with coefficients
//! multiplying from the right; [`CoefficientSequence`] carries that series
//! and implements the algebraic operators:
//!
//! * slice derivative: `(d/dq) sum q^k c_k = sum q^k (k+1) c_{k+1}`,
//! * multiplication by `q`: an index shift upward.
//!
//! The two production routes onto the image side are the direct quadrature
//! ([`bargmann_transform`]) and the coefficient route
//! ([`bargmann_coefficients`]), which computes `c_k = <f, psi_k> *
//! sqrt(nu^{k+1}/(pi k!))` entirely on the time axis.

use crate::basis::{bargmann_kernel, FockMonomialBasis, HermiteBasis};
use crate::error::{Error, Result};
use crate::grid::{pairwise_sum_quat, LineGrid, SampledSignal};
use crate::quat::{ImaginaryUnit, Quaternion, SliceComplex};

/// Threshold of the kernel-tail precondition: the integrand `A(q, .) f(.)`
/// must be below this at the grid edges, or the quadrature window is too
/// narrow for the requested evaluation point.
pub const TRUNCATION_EDGE_TAIL: f64 = 1e-12;

/// Power series on the image side, `F(q) = sum_k q^k c_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    pub nu: f64,
    pub coeffs: Vec<Quaternion>,
}

impl CoefficientSequence {
    pub fn new(nu: f64, coeffs: Vec<Quaternion>) -> Self {
        CoefficientSequence { nu, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Series evaluation by left-Horner: `c_0 + q (c_1 + q (c_2 + ...))`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = q * acc + c;
        }
        acc
    }

    /// Evaluation restricted to a slice point (same series, commutative
    /// powers; the result is still a full quaternion because the
    /// coefficients are).
    pub fn eval_slice(&self, z: SliceComplex) -> Quaternion {
        self.eval(z.as_quaternion())
    }

    /// Slice derivative at the coefficient level.
    pub fn slice_derivative(&self) -> CoefficientSequence {
        let coeffs = self
            .coeffs
            .iter()
            .skip(1)
            .enumerate()
            .map(|(m, &c)| c.scale((m + 1) as f64))
            .collect();
        CoefficientSequence { nu: self.nu, coeffs }
    }

    /// Multiplication by `q` at the coefficient level: shifts every
    /// coefficient one degree up.
    pub fn shift_up(&self) -> CoefficientSequence {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Quaternion::ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        CoefficientSequence { nu: self.nu, coeffs }
    }

    pub fn sub(&self, o: &CoefficientSequence) -> CoefficientSequence {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |cs: &[Quaternion], k: usize| cs.get(k).copied().unwrap_or(Quaternion::ZERO);
        let coeffs = (0..n).map(|k| get(&self.coeffs, k) - get(&o.coeffs, k)).collect();
        CoefficientSequence { nu: self.nu, coeffs }
    }
}

/// Direct quadrature of the transform at one evaluation point.
pub fn bargmann_transform(f: &SampledSignal, nu: f64, q: Quaternion) -> Quaternion {
    let terms: Vec<Quaternion> = f
        .grid
        .nodes()
        .iter()
        .zip(f.grid.weights())
        .zip(&f.values)
        .map(|((&t, &w), &v)| (bargmann_kernel(q, t, nu) * v).scale(w))
        .collect();
    pairwise_sum_quat(&terms)
}

/// Edge-tail check for [`bargmann_transform`]: returns the largest modulus
/// of the integrand at the two grid endpoints when it exceeds
/// [`TRUNCATION_EDGE_TAIL`] (a truncation-risk warning), `None` when the
/// window is wide enough. The *integrand* is checked rather than the bare
/// kernel: the kernel alone is O(1) at the edges for large |q| by design,
/// and only the product with the decaying signal measures what the
/// quadrature actually discards.
pub fn truncation_risk(f: &SampledSignal, nu: f64, q: Quaternion) -> Option<f64> {
    let lo = f.grid.lo();
    let hi = f.grid.hi();
    let first = *f.values.first()?;
    let last = *f.values.last()?;
    let tail = (bargmann_kernel(q, lo, nu) * first)
        .norm()
        .max((bargmann_kernel(q, hi, nu) * last).norm());
    (tail > TRUNCATION_EDGE_TAIL).then_some(tail)
}

/// Coefficient route: `c_k = <f, psi_k> sqrt(nu^{k+1} / (pi k!))`, all
/// quadrature done on the time axis where the integrands are bounded.
pub fn bargmann_coefficients(f: &SampledSignal, nu: f64, kmax: usize) -> Result<CoefficientSequence> {
    let hermite = HermiteBasis::new(nu, kmax)?;
    let fock = FockMonomialBasis::new(nu, kmax)?;
    let rows = hermite.psi_matrix(&f.grid);
    let weights = f.grid.weights();
    let mut coeffs = Vec::with_capacity(kmax + 1);
    let mut terms = vec![Quaternion::ZERO; f.grid.len()];
    for (k, row) in rows.iter().enumerate() {
        for (i, ((&psi, &w), &v)) in row.iter().zip(weights).zip(&f.values).enumerate() {
            terms[i] = v.scale(psi * w);
        }
        coeffs.push(pairwise_sum_quat(&terms).scale(fock.coefficient(k)));
    }
    Ok(CoefficientSequence { nu, coeffs })
}

/// Inverse on the coefficient side: sends the degree-`k` monomial back to
/// `psi_k` and resamples on `grid`. Together with
/// [`bargmann_coefficients`] this realizes the basis bijection both ways.
pub fn inverse_bargmann(c: &CoefficientSequence, grid: &LineGrid) -> Result<SampledSignal> {
    let kmax = c.len().saturating_sub(1);
    let hermite = HermiteBasis::new(c.nu, kmax)?;
    let fock = FockMonomialBasis::new(c.nu, kmax)?;
    let mut values = vec![Quaternion::ZERO; grid.len()];
    for (i, &t) in grid.nodes().iter().enumerate() {
        let psis = hermite.psi_all(t);
        let mut acc = Quaternion::ZERO;
        for (k, &ck) in c.coeffs.iter().enumerate() {
            acc += ck.scale(psis[k] / fock.coefficient(k));
        }
        values[i] = acc;
    }
    SampledSignal::new(grid.clone(), values)
}

/// Decay diagnostic for membership in the Schwartz-type image space:
/// `score_p = sup_k |c_k| k^p sqrt(k!)`. Bounded scores as the truncation
/// degree grows indicate rapidly decreasing coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwartzReport {
    pub pvalues: Vec<f64>,
    pub scores: Vec<f64>,
}

pub fn schwartz_decay_report(c: &CoefficientSequence, pvalues: &[f64]) -> SchwartzReport {
    let mut scores = vec![0.0; pvalues.len()];
    let mut sqrt_fact = 1.0f64;
    for (k, &ck) in c.coeffs.iter().enumerate() {
        if k > 0 {
            sqrt_fact *= (k as f64).sqrt();
        }
        let modulus = ck.norm();
        for (s, &p) in scores.iter_mut().zip(pvalues) {
            let val = modulus * (k as f64).powf(p) * sqrt_fact;
            if val > *s {
                *s = val;
            }
        }
    }
    SchwartzReport { pvalues: pvalues.to_vec(), scores }
}

/// Fourth-order central finite difference on a uniform grid, with zero
/// extension beyond the ends (signals here decay far below rounding at the
/// boundary, so the one-sided bias is immaterial).
pub fn derivative_fd4(f: &SampledSignal) -> Result<SampledSignal> {
    if !f.grid.is_uniform() {
        return Err(Error::BadGridSpec(
            "finite differences require a uniform grid".into(),
        ));
    }
    let h = f.grid.spacing();
    let n = f.values.len();
    let at = |i: isize| -> Quaternion {
        if i < 0 || i as usize >= n {
            Quaternion::ZERO
        } else {
            f.values[i as usize]
        }
    };
    let mut values = Vec::with_capacity(n);
    for i in 0..n as isize {
        let d = (at(i - 2) - at(i + 2)).scale(1.0) + (at(i + 1) - at(i - 1)).scale(8.0);
        values.push(d.scale(1.0 / (12.0 * h)));
    }
    SampledSignal::new(f.grid.clone(), values)
}

/// Probe points used by the operator-equivalence residuals: eight points of
/// modulus at most 1.5 spread over two slices.
pub fn default_probe_points() -> Vec<Quaternion> {
    let s1 = ImaginaryUnit::I;
    let s2 = ImaginaryUnit::new(1.0, 1.0, 0.0).unwrap();
    [
        (0.5, 0.3, s1),
        (-0.9, 0.7, s1),
        (0.0, 1.2, s1),
        (1.05, -0.95, s1),
        (0.5, -0.3, s2),
        (-0.8, -0.6, s2),
        (1.3, 0.4, s2),
        (-0.2, 1.1, s2),
    ]
    .into_iter()
    .map(|(a, b, u)| SliceComplex::new(a, b, u).as_quaternion())
    .collect()
}

/// Residual of the position-operator intertwining: the image-side operator
/// `(d/dq + q)` applied at the coefficient level against `sqrt(2) B(x f)`
/// computed by direct quadrature. The maximum modulus over `probes` is
/// returned.
pub fn position_equivalence_residual(
    f: &SampledSignal,
    nu: f64,
    kmax: usize,
    probes: &[Quaternion],
) -> Result<f64> {
    let c = bargmann_coefficients(f, nu, kmax)?;
    let lhs = c.slice_derivative().shift_up_add(&c);
    let xf = f.map(|t, v| v.scale(t));
    let mut worst = 0.0f64;
    for &q in probes {
        let rhs = bargmann_transform(&xf, nu, q).scale(std::f64::consts::SQRT_2);
        worst = worst.max((lhs.eval(q) - rhs).norm());
    }
    Ok(worst)
}

impl CoefficientSequence {
    /// `self.shift_up() + other`, aligned by degree (helper for the operator
    /// residuals; `d/dq F + q F` in one sequence).
    fn shift_up_add(&self, other: &CoefficientSequence) -> CoefficientSequence {
        let shifted = other.shift_up();
        let n = self.coeffs.len().max(shifted.coeffs.len());
        let get = |cs: &[Quaternion], k: usize| cs.get(k).copied().unwrap_or(Quaternion::ZERO);
        let coeffs = (0..n)
            .map(|k| get(&self.coeffs, k) + get(&shifted.coeffs, k))
            .collect();
        CoefficientSequence { nu: self.nu, coeffs }
    }
}

/// Residual of the momentum-operator intertwining: multiplication by `q` on
/// the image side (an index shift) against `B((x - d/dx) f / sqrt(2))` with
/// the derivative taken by 4th-order finite differences.
pub fn momentum_equivalence_residual(
    f: &SampledSignal,
    nu: f64,
    kmax: usize,
    probes: &[Quaternion],
) -> Result<f64> {
    let c = bargmann_coefficients(f, nu, kmax)?;
    let lhs = c.shift_up();
    let df = derivative_fd4(f)?;
    let arg = f
        .map(|t, v| v.scale(t))
        .sub(&df)?
        .map(|_, v| v.scale(1.0 / std::f64::consts::SQRT_2));
    let mut worst = 0.0f64;
    for &q in probes {
        let rhs = bargmann_transform(&arg, nu, q);
        worst = worst.max((lhs.eval(q) - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{default_time_grid, make_grid, GridRule};

    fn probe_q(a: f64, b: f64) -> Quaternion {
        SliceComplex::new(a, b, ImaginaryUnit::I).as_quaternion()
    }

    #[test]
    fn transform_maps_hermite_to_monomial() {
        let grid = default_time_grid();
        let basis = HermiteBasis::new(1.0, 6).unwrap();
        let fock = FockMonomialBasis::new(1.0, 6).unwrap();
        let unit2 = ImaginaryUnit::new(1.0, 1.0, 0.0).unwrap();
        for k in [0usize, 1, 4, 6] {
            let f = basis.sample(k, &grid);
            for (a, b) in [(0.4, -0.8), (-1.1, 0.2), (0.0, 1.5)] {
                for unit in [ImaginaryUnit::I, unit2] {
                    let q = SliceComplex::new(a, b, unit).as_quaternion();
                    let got = bargmann_transform(&f, 1.0, q);
                    let want = fock.monomial(k, q);
                    assert!(
                        (got - want).norm() < 1e-10,
                        "k={k} q=({a},{b}): diff {:e}",
                        (got - want).norm()
                    );
                }
            }
        }
    }

    #[test]
    fn coefficients_of_pure_hermite_input() {
        let grid = default_time_grid();
        let basis = HermiteBasis::new(1.0, 8).unwrap();
        let f = basis.sample(3, &grid);
        let c = bargmann_coefficients(&f, 1.0, 8).unwrap();
        let want = (1.0f64 / (6.0 * std::f64::consts::PI)).sqrt(); // sqrt(nu^4/(pi 3!))
        assert!((c.coeffs[3].w - want).abs() < 1e-12);
        for (k, ck) in c.coeffs.iter().enumerate() {
            if k != 3 {
                assert!(ck.norm() < 1e-12, "leak into degree {k}: {:e}", ck.norm());
            }
        }
    }

    #[test]
    fn quadrature_and_coefficient_routes_agree() {
        let grid = default_time_grid();
        let basis = HermiteBasis::new(1.0, 10).unwrap();
        // Quaternion combination of a few basis functions.
        let f = basis
            .sample(0, &grid)
            .scale_right(Quaternion::new(0.3, -0.2, 0.0, 0.5))
            .add(&basis.sample(4, &grid).scale_right(Quaternion::new(0.0, 1.0, -0.7, 0.1)))
            .unwrap()
            .add(&basis.sample(7, &grid).scale_right(Quaternion::new(-0.4, 0.0, 0.9, 0.0)))
            .unwrap();
        let c = bargmann_coefficients(&f, 1.0, 40).unwrap();
        for (a, b) in [(0.0, 0.0), (1.2, -0.7), (-1.8, 0.4), (0.3, 1.9)] {
            let q = probe_q(a, b);
            let direct = bargmann_transform(&f, 1.0, q);
            let series = c.eval(q);
            assert!(
                (direct - series).norm() < 1e-8,
                "q=({a},{b}): {:e}",
                (direct - series).norm()
            );
        }
    }

    #[test]
    fn inverse_recovers_the_signal() {
        let grid = default_time_grid();
        let basis = HermiteBasis::new(1.0, 10).unwrap();
        let f = basis
            .sample(2, &grid)
            .scale_right(Quaternion::new(0.5, 0.5, -1.0, 0.2))
            .add(&basis.sample(9, &grid).scale_right(Quaternion::new(0.0, -0.3, 0.0, 0.8)))
            .unwrap();
        let c = bargmann_coefficients(&f, 1.0, 20).unwrap();
        let back = inverse_bargmann(&c, &grid).unwrap();
        let err = f.sub(&back).unwrap().sup_norm();
        assert!(err < 1e-9, "round trip error {err:e}");
    }

    #[test]
    fn truncation_risk_flags_narrow_windows() {
        let wide = SampledSignal::from_real_fn(default_time_grid(), |t| (-t * t).exp());
        assert_eq!(truncation_risk(&wide, 1.0, probe_q(0.5, 0.5)), None);
        let narrow_grid = make_grid(-2.0, 2.0, 64, GridRule::Trapezoid).unwrap();
        let narrow = SampledSignal::from_real_fn(narrow_grid, |t| (-t * t).exp());
        let risk = truncation_risk(&narrow, 1.0, probe_q(2.0, 0.0));
        assert!(risk.is_some_and(|tail| tail > TRUNCATION_EDGE_TAIL));
    }

    #[test]
    fn schwartz_scores_flag_slow_decay() {
        // c_k = 1/sqrt(k!) is *not* rapidly decreasing: score_1 = kmax.
        let seq = |kmax: usize| {
            let mut sf = 1.0f64;
            let coeffs = (0..=kmax)
                .map(|k| {
                    if k > 0 {
                        sf *= (k as f64).sqrt();
                    }
                    Quaternion::real(1.0 / sf)
                })
                .collect();
            CoefficientSequence::new(1.0, coeffs)
        };
        let r20 = schwartz_decay_report(&seq(20), &[1.0]);
        let r40 = schwartz_decay_report(&seq(40), &[1.0]);
        assert!((r20.scores[0] - 20.0).abs() < 1e-9);
        assert!((r40.scores[0] - 40.0).abs() < 1e-9);

        // A Gaussian input is rapidly decreasing: scores stay bounded as the
        // truncation degree doubles. In exact arithmetic every coefficient
        // beyond degree 0 is zero, so the computed scores are quadrature
        // rounding (~1e-15) amplified by k^p <= 40^4; the absolute floor of
        // 1e-8 sits at that noise scale, ten orders below the slow-decay
        // scores asserted above.
        let grid = default_time_grid();
        let g = HermiteBasis::new(1.0, 0).unwrap().sample(0, &grid);
        let c20 = bargmann_coefficients(&g, 1.0, 20).unwrap();
        let c40 = bargmann_coefficients(&g, 1.0, 40).unwrap();
        let s20 = schwartz_decay_report(&c20, &[1.0, 2.0, 4.0]);
        let s40 = schwartz_decay_report(&c40, &[1.0, 2.0, 4.0]);
        for (a, b) in s20.scores.iter().zip(&s40.scores) {
            assert!(b <= &(a * 1.05 + 1e-8), "score grew: {a:e} -> {b:e}");
        }

        // Empty sequence: all scores zero.
        let empty = schwartz_decay_report(&CoefficientSequence::new(1.0, vec![]), &[1.0, 3.0]);
        assert_eq!(empty.scores, vec![0.0, 0.0]);
    }

    #[test]
    fn coefficient_operators_match_hand_series() {
        let c = CoefficientSequence::new(
            1.0,
            vec![
                Quaternion::new(1.0, 0.0, 0.0, 0.0),
                Quaternion::new(0.0, 2.0, 0.0, 0.0),
                Quaternion::new(0.0, 0.0, 3.0, 0.0),
                Quaternion::new(0.0, 0.0, 0.0, 4.0),
            ],
        );
        let d = c.slice_derivative();
        assert_eq!(
            d.coeffs,
            vec![
                Quaternion::new(0.0, 2.0, 0.0, 0.0),
                Quaternion::new(0.0, 0.0, 6.0, 0.0),
                Quaternion::new(0.0, 0.0, 0.0, 12.0),
            ]
        );
        let m = c.shift_up();
        assert_eq!(m.coeffs.len(), 5);
        assert_eq!(m.coeffs[0], Quaternion::ZERO);
        assert_eq!(m.coeffs[1], c.coeffs[0]);
        // eval consistency: (q F)(q) = q * F(q) for a slice point.
        let q = probe_q(0.7, -0.4);
        assert!((m.eval(q) - q * c.eval(q)).norm() < 1e-14);
    }

    #[test]
    fn position_and_momentum_residuals_are_small() {
        let grid = default_time_grid();
        let basis = HermiteBasis::new(1.0, 8).unwrap();
        let probes = default_probe_points();
        for (k, pos_tol, mom_tol) in [(0usize, 1e-8, 1e-6), (1, 1e-8, 1e-6), (5, 1e-7, 1e-6)] {
            let f = basis.sample(k, &grid);
            let rp = position_equivalence_residual(&f, 1.0, 40, &probes).unwrap();
            assert!(rp < pos_tol, "position residual for psi_{k}: {rp:e}");
            let rm = momentum_equivalence_residual(&f, 1.0, 40, &probes).unwrap();
            assert!(rm < mom_tol, "momentum residual for psi_{k}: {rm:e}");
        }
    }

    #[test]
    fn derivative_needs_uniform_grid() {
        let gl = make_grid(-1.0, 1.0, 32, GridRule::GaussLegendre).unwrap();
        let f = SampledSignal::from_real_fn(gl, |t| t);
        assert!(matches!(derivative_fd4(&f), Err(Error::BadGridSpec(_))));
    }
}
