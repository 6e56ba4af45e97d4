//! Verification suites: every identity the library implements, reduced to a
//! named residual with a pinned tolerance.
//!
//! Each suite is fully deterministic -- fixture signals come from seeded
//! generators, reductions are pairwise sums in fixed order, and the JSON
//! encoding follows struct field order -- so two runs of the same suite
//! produce byte-identical reports.
//!
//! Two formula-level ambiguities are adjudicated empirically rather than
//! asserted: the constant in the Fourier intertwining relation (candidates
//! `sqrt(2)` and `1`) and the scale of the Hermite eigenvalues of the
//! Fourier transform (candidates unimodular and `2^{-1/2}`-scaled, the
//! latter incompatible with norm preservation). The measured residuals for
//! both candidates are part of the report.

use crate::bargmann::{
    bargmann_coefficients, bargmann_transform, default_probe_points,
    momentum_equivalence_residual, position_equivalence_residual,
};
use crate::basis::{bargmann_kernel, bargmann_kernel_series, FockMonomialBasis, HermiteBasis};
use crate::grid::{
    default_time_grid, inner_l2, make_grid, pairwise_sum_f64, pairwise_sum_quat, GridRule,
    LineGrid, PlaneGrid, SampledSignal,
};
use crate::qft::{qft_eigenvalue, qft_forward, qft_inverse, convolve, modulate, translate, QftPlan};
use crate::qstft::{
    concentration_check, fourier_intertwine_residual, gabor_kernel, gaussian_window,
    lieb_functional, qstft_adjoint, qstft_bargmann, qstft_grid, qstft_reconstruct,
    qstft_windowed, tf_inner, TimeFreqGrid,
};
use crate::quat::{conj_mul, slice_exp, ImaginaryUnit, Quaternion, SliceComplex};
use crate::tol;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2, TAU};

/// One verified identity: its residual against the pinned tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The identity in words, so the report reads without the source.
    pub law: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Measured Fourier eigenvalue of one Hermite degree.
#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueRecord {
    pub k: usize,
    /// Quaternion components `[w, x, y, z]`.
    pub lambda: [f64; 4],
    pub modulus: f64,
    /// `L2` residual of the eigen-relation for the normalized function.
    pub residual: f64,
}

/// Empirically adjudicated constants surfaced as data.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalConstants {
    /// Winning constant of the intertwining relation
    /// `V f(x, w) = C exp(-2 pi I w x) V(F f)(w, -x)`.
    pub intertwine_constant: f64,
    pub intertwine_residual_with_unity: f64,
    pub intertwine_residual_with_sqrt2: f64,
    pub eigenvalue_lambda: Vec<EigenvalueRecord>,
    /// All moduli within tolerance of 1.
    pub eigenvalues_unimodular: bool,
    /// Whether the `2^{-1/2}`-scaled eigenvalue variant matches instead.
    pub eigenvalue_half_scale_matches: bool,
    /// Common ratio `lambda_{k+1} / lambda_k` (components `[w, x, y, z]`).
    pub eigenvalue_geometric_ratio: [f64; 4],
    /// Max deviation of the stepwise ratios from the first one.
    pub eigenvalue_geometric_defect: f64,
    /// Measured/predicted modulus of the transform of normalized Hermite
    /// inputs against the closed form with prefactor `2^{3/4}/(2^k k!)`.
    pub hermite_image_scale_ratio: Vec<f64>,
}

/// A full verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub empirical_constants: EmpiricalConstants,
    pub all_pass: bool,
}

impl VerifyReport {
    /// Deterministic pretty JSON (struct field order, stable float digits).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable residual table.
    pub fn render_table(&self) -> String {
        let mut s = format!("suite: {}\n", self.suite);
        for c in &self.checks {
            s.push_str(&format!(
                "{:<34} residual {:>12.4e}  tol {:>8.0e}  {}\n",
                c.name,
                c.residual,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" }
            ));
        }
        let e = &self.empirical_constants;
        s.push_str(&format!(
            "intertwine constant: {} (residual {:.3e} with C=1, {:.3e} with C=sqrt(2))\n",
            e.intertwine_constant, e.intertwine_residual_with_unity, e.intertwine_residual_with_sqrt2
        ));
        for r in &e.eigenvalue_lambda {
            s.push_str(&format!(
                "lambda_{} = ({:+.6}, {:+.6}, {:+.6}, {:+.6})  |lambda| = {:.9}\n",
                r.k, r.lambda[0], r.lambda[1], r.lambda[2], r.lambda[3], r.modulus
            ));
        }
        s.push_str(&format!(
            "eigenvalue scale: unimodular = {}, half-scale variant = {}\n",
            e.eigenvalues_unimodular, e.eigenvalue_half_scale_matches
        ));
        s.push_str(&format!("overall: {}\n", if self.all_pass { "PASS" } else { "FAIL" }));
        s
    }
}

/// Selectable verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Qft,
    Bargmann,
    Qstft,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Qft => "qft",
            Suite::Bargmann => "bargmann",
            Suite::Qstft => "qstft",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "qft" => Ok(Suite::Qft),
            "bargmann" => Ok(Suite::Bargmann),
            "qstft" => Ok(Suite::Qstft),
            other => Err(format!("unknown suite {other:?} (expected all|qft|bargmann|qstft)")),
        }
    }
}

fn check(name: &str, law: &str, residual: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.into(),
        law: law.into(),
        residual,
        tolerance,
        pass: residual <= tolerance,
    }
}

/// Normalized quaternion-coefficient Hermite combination with a fixed seed;
/// the fixture generator of every suite.
pub fn seeded_hermite_combo(seed: u64, nu: f64, kmax: usize, grid: &LineGrid) -> SampledSignal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = HermiteBasis::new(nu, kmax).expect("fixture basis spec");
    let rows = basis.psi_matrix(grid);
    let coeffs: Vec<Quaternion> = (0..=kmax)
        .map(|_| {
            Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        })
        .collect();
    let values = (0..grid.len())
        .map(|i| {
            let mut acc = Quaternion::ZERO;
            for (row, c) in rows.iter().zip(&coeffs) {
                acc += c.scale(row[i]);
            }
            acc
        })
        .collect();
    let f = SampledSignal { grid: grid.clone(), values };
    let n = f.norm();
    f.map(|_, v| v.scale(1.0 / n))
}

fn second_unit() -> ImaginaryUnit {
    ImaginaryUnit::new(1.0, 1.0, 0.0).expect("static unit")
}

/// Runs one suite and assembles the report.
pub fn run_suite(suite: Suite) -> VerifyReport {
    let mut checks = Vec::new();
    match suite {
        Suite::All => {
            bargmann_checks(&mut checks);
            qft_checks(&mut checks);
            qstft_checks(&mut checks);
        }
        Suite::Bargmann => bargmann_checks(&mut checks),
        Suite::Qft => qft_checks(&mut checks),
        Suite::Qstft => qstft_checks(&mut checks),
    }
    let empirical = empirical_constants();
    // The eigenvalue structure is a pass/fail criterion in its own right:
    // moduli must sit on the unit circle and the sequence must be geometric.
    let modulus_defect = empirical
        .eigenvalue_lambda
        .iter()
        .map(|r| (r.modulus - 1.0).abs())
        .fold(0.0f64, f64::max);
    checks.push(check(
        "eigenvalue-progression",
        "Fourier eigenvalues of the Hermite family are unimodular and form \
         a geometric sequence in the degree",
        modulus_defect.max(empirical.eigenvalue_geometric_defect),
        tol::QFT_EIGENVALUE,
    ));
    let all_pass = checks.iter().all(|c| c.pass);
    VerifyReport { suite: suite.as_str().into(), checks, empirical_constants: empirical, all_pass }
}

fn bargmann_checks(checks: &mut Vec<CheckResult>) {
    // Orthonormality of the weighted Hermite family, degrees <= 20. The
    // degree-20 functions at scale 1 still carry ~1e-3 mass at |t| = 8, so
    // this check uses a wider window than the default grid.
    let grid = make_grid(-12.0, 12.0, 1536, GridRule::Trapezoid).expect("static grid");
    for (label, nu) in [("nu-1", 1.0), ("nu-2pi", TAU)] {
        let basis = HermiteBasis::new(nu, 20).expect("basis");
        let rows = basis.psi_matrix(&grid);
        let w = grid.weights();
        let mut worst = 0.0f64;
        for j in 0..rows.len() {
            for k in j..rows.len() {
                let terms: Vec<f64> =
                    (0..grid.len()).map(|i| w[i] * rows[j][i] * rows[k][i]).collect();
                let ip = pairwise_sum_f64(&terms);
                let delta = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((ip - delta).abs());
            }
        }
        checks.push(check(
            &format!("hermite-orthonormality-{label}"),
            "normalized weighted Hermite functions form an orthonormal \
             family: <psi_j, psi_k> = delta_jk for j, k <= 20",
            worst,
            tol::HERMITE_ORTHONORMALITY,
        ));
    }

    // Generating function: closed-form kernel vs. degree-60 series.
    let mut worst = 0.0f64;
    for unit in [ImaginaryUnit::I, second_unit()] {
        for ia in 0..17 {
            let a = -2.0 + 0.25 * ia as f64;
            for ib in 0..17 {
                let b = -2.0 + 0.25 * ib as f64;
                if a * a + b * b > 4.0 + 1e-12 {
                    continue;
                }
                let q = SliceComplex::new(a, b, unit).as_quaternion();
                for it in 0..17 {
                    let t = -2.0 + 0.25 * it as f64;
                    let closed = bargmann_kernel(q, t, 1.0);
                    let series = bargmann_kernel_series(q, t, 1.0, 60).expect("series spec");
                    worst = worst.max((closed - series).norm());
                }
            }
        }
    }
    checks.push(check(
        "kernel-generating-function",
        "the transform kernel equals the series sum_k f_k(q) psi_k(t) \
         (degree 60, |q|, |t| <= 2, two slices)",
        worst,
        tol::KERNEL_GENERATING_FUNCTION,
    ));

    // Direct quadrature of the transform vs. its coefficient series.
    let tgrid = default_time_grid();
    let f11 = seeded_hermite_combo(11, 1.0, 10, &tgrid);
    let c11 = bargmann_coefficients(&f11, 1.0, 40).expect("coefficients");
    let mut worst = 0.0f64;
    for &q in &default_probe_points() {
        worst = worst.max((bargmann_transform(&f11, 1.0, q) - c11.eval(q)).norm());
    }
    checks.push(check(
        "transform-series-consistency",
        "kernel quadrature and the coefficient power series give the same \
         transform values at interior probe points",
        worst,
        tol::TRANSFORM_SERIES_CONSISTENCY,
    ));

    // Unitarity over ten seeded signal pairs: time-side inner products
    // against the coefficient shortcut, and the coefficient shortcut
    // against honest 2D plane quadrature of the image functions.
    let fock = FockMonomialBasis::new(1.0, 10).expect("fock basis");
    let plane = PlaneGrid::square(7.0, 256).expect("plane");
    let mut worst_coeff = 0.0f64;
    let mut worst_plane = 0.0f64;
    for pair in 0..10u64 {
        let f = seeded_hermite_combo(100 + 2 * pair, 1.0, 10, &tgrid);
        let g = seeded_hermite_combo(101 + 2 * pair, 1.0, 10, &tgrid);
        let cf = bargmann_coefficients(&f, 1.0, 10).expect("coefficients");
        let cg = bargmann_coefficients(&g, 1.0, 10).expect("coefficients");
        let time = inner_l2(&f, &g).expect("shared grid");
        let mut coeff = Quaternion::ZERO;
        for k in 0..cf.coeffs.len() {
            coeff += conj_mul(cg.coeffs[k], cf.coeffs[k]).scale(fock.monomial_norm_sqr(k));
        }
        worst_coeff = worst_coeff.max((coeff - time).norm());
        let units: &[ImaginaryUnit] =
            if pair == 0 { &[ImaginaryUnit::I, ImaginaryUnit::J] } else { &[ImaginaryUnit::I] };
        for &u in units {
            let ff = plane.sample(|a, b| cf.eval_slice(SliceComplex::new(a, b, u)));
            let gg = plane.sample(|a, b| cg.eval_slice(SliceComplex::new(a, b, u)));
            let pl = inner_fock(&ff, &gg, 1.0, &plane);
            worst_plane = worst_plane.max((pl - coeff).norm());
        }
    }
    checks.push(check(
        "unitarity-time-vs-coefficients",
        "the transform preserves inner products: <Bf, Bg> computed from \
         series coefficients equals <f, g> on the time side",
        worst_coeff,
        tol::BARGMANN_UNITARITY,
    ));
    checks.push(check(
        "unitarity-coefficients-vs-plane",
        "the coefficient form of <Bf, Bg> matches Gaussian-weighted 2D \
         quadrature of the image functions over a slice plane",
        worst_plane,
        tol::BARGMANN_UNITARITY,
    ));

    // Operator intertwinings on eigenfunction inputs.
    let basis = HermiteBasis::new(1.0, 5).expect("basis");
    let probes = default_probe_points();
    let mut worst_pos = 0.0f64;
    let mut worst_mom = 0.0f64;
    for k in [0usize, 1, 5] {
        let f = basis.sample(k, &tgrid);
        worst_pos =
            worst_pos.max(position_equivalence_residual(&f, 1.0, 40, &probes).expect("residual"));
        worst_mom =
            worst_mom.max(momentum_equivalence_residual(&f, 1.0, 40, &probes).expect("residual"));
    }
    checks.push(check(
        "position-operator-equivalence",
        "(d/dq + q) B f = sqrt(2) B(t f): differentiation plus index shift \
         on the image side matches multiplication by t on the time side",
        worst_pos,
        tol::POSITION_EQUIVALENCE,
    ));
    checks.push(check(
        "momentum-operator-equivalence",
        "q B f = B((t - d/dt) f / sqrt(2)): multiplication by q on the \
         image side matches the creation operator on the time side",
        worst_mom,
        tol::MOMENTUM_EQUIVALENCE,
    ));
}

/// Wrapper so the plane pairing reads as an expression above.
fn inner_fock(f: &[Quaternion], g: &[Quaternion], nu: f64, plane: &PlaneGrid) -> Quaternion {
    crate::grid::inner_fock(f, g, nu, plane).expect("plane shapes agree")
}

fn qft_checks(checks: &mut Vec<CheckResult>) {
    let units = [ImaginaryUnit::I, ImaginaryUnit::new(0.0, 1.0, 1.0).expect("static unit")];
    let basis0 = HermiteBasis::new(TAU, 0).expect("basis");

    let mut worst = 0.0f64;
    for &unit in &units {
        let plan = QftPlan::default_with_unit(unit);
        let phi_t = basis0.sample(0, &plan.tgrid);
        let phi_w = basis0.sample(0, &plan.wgrid);
        let spec = qft_forward(&phi_t, &plan).expect("plan grids");
        worst = worst.max(spec.sub(&phi_w).expect("shared grid").sup_norm());
    }
    checks.push(check(
        "window-self-duality",
        "the Gaussian window is its own Fourier transform in every slice",
        worst,
        tol::WINDOW_SELF_DUAL,
    ));

    let tgrid = default_time_grid();
    let signals: Vec<SampledSignal> =
        (200..203).map(|s| seeded_hermite_combo(s, TAU, 8, &tgrid)).collect();

    let mut worst_norm = 0.0f64;
    let mut worst_pair = 0.0f64;
    let mut worst_round = 0.0f64;
    for &unit in &units {
        let plan = QftPlan::default_with_unit(unit);
        let spectra: Vec<SampledSignal> =
            signals.iter().map(|f| qft_forward(f, &plan).expect("plan grids")).collect();
        for (f, ff) in signals.iter().zip(&spectra) {
            worst_norm = worst_norm.max((ff.norm() / f.norm() - 1.0).abs());
            let back = qft_inverse(ff, &plan).expect("plan grids");
            worst_round = worst_round.max(f.sub(&back).expect("shared grid").sup_norm());
        }
        let lhs = inner_l2(&spectra[0], &spectra[1]).expect("shared grid");
        let rhs = inner_l2(&signals[0], &signals[1]).expect("shared grid");
        worst_pair = worst_pair.max((lhs - rhs).norm());
    }
    checks.push(check(
        "plancherel-norm-ratio",
        "the Fourier transform preserves the L2 norm: ||F f|| / ||f|| = 1",
        worst_norm,
        tol::QFT_PLANCHEREL,
    ));
    checks.push(check(
        "plancherel-pairing",
        "the Fourier transform preserves inner products: <F f, F g> = <f, g>",
        worst_pair,
        tol::QFT_PLANCHEREL,
    ));
    checks.push(check(
        "inversion-round-trip",
        "the inverse transform undoes the forward transform pointwise",
        worst_round,
        tol::QFT_ROUNDTRIP,
    ));

    // Covariance laws at fixed shift x = 0.7 and frequency w = 1.3.
    let (x0, w0) = (0.7, 1.3);
    let mut worst_t = 0.0f64;
    let mut worst_m = 0.0f64;
    let mut worst_c = 0.0f64;
    let mut worst_k = 0.0f64;
    for &unit in &units {
        let plan = QftPlan::default_with_unit(unit);
        let f = &signals[0];
        let ff = qft_forward(f, &plan).expect("plan grids");
        let lhs1 = qft_forward(&translate(f, x0).expect("uniform grid"), &plan).expect("plan");
        let rhs1 = modulate(&ff, -x0, unit);
        worst_t = worst_t.max(lhs1.sub(&rhs1).expect("shared grid").sup_norm());
        let lhs2 = qft_forward(&modulate(f, w0, unit), &plan).expect("plan");
        let rhs2 = translate(&ff, w0).expect("uniform grid");
        worst_m = worst_m.max(lhs2.sub(&rhs2).expect("shared grid").sup_norm());
        let lhs3 = qft_forward(&modulate(&translate(f, x0).expect("uniform"), w0, unit), &plan)
            .expect("plan");
        let rhs3 = translate(&modulate(&ff, -x0, unit), w0).expect("uniform grid");
        worst_c = worst_c.max(lhs3.sub(&rhs3).expect("shared grid").sup_norm());
        let lhs4 = translate(&modulate(f, w0, unit), x0).expect("uniform grid");
        let phase = slice_exp(SliceComplex::new(0.0, -TAU * w0 * x0, unit)).as_quaternion();
        let rhs4 = modulate(&translate(f, x0).expect("uniform"), w0, unit).scale_left(phase);
        worst_k = worst_k.max(lhs4.sub(&rhs4).expect("shared grid").sup_norm());
    }
    checks.push(check(
        "translation-covariance",
        "time shift becomes modulation: F(f(. - x)) = exp(-2 pi I x .) F f",
        worst_t,
        tol::QFT_COVARIANCE,
    ));
    checks.push(check(
        "modulation-covariance",
        "modulation becomes frequency shift: F(exp(2 pi I w .) f) = (F f)(. - w)",
        worst_m,
        tol::QFT_COVARIANCE,
    ));
    checks.push(check(
        "combined-covariance",
        "shift followed by modulation transforms to shift of the modulated \
         spectrum",
        worst_c,
        tol::QFT_COVARIANCE,
    ));
    checks.push(check(
        "commutation-phase",
        "swapping a time shift past a modulation costs the slice phase \
         exp(-2 pi I w x)",
        worst_k,
        tol::QFT_COVARIANCE,
    ));

    // Convolution with a real first factor factorizes in frequency.
    let plan = QftPlan::default_with_unit(ImaginaryUnit::I);
    let f = SampledSignal::from_real_fn(plan.tgrid.clone(), |t| {
        (t * t - 0.3) * (-2.0 * t * t).exp()
    });
    let g = &signals[2];
    let conv = convolve(&f, g).expect("uniform shared grid");
    let lhs = qft_forward(&conv, &plan).expect("plan");
    let ff = qft_forward(&f, &plan).expect("plan");
    let fg = qft_forward(g, &plan).expect("plan");
    let mut worst = 0.0f64;
    for ((l, a), b) in lhs.values.iter().zip(&ff.values).zip(&fg.values) {
        worst = worst.max((*l - *a * *b).norm());
    }
    checks.push(check(
        "convolution-factorization",
        "for a real first factor, F(f * g) = F(f) F(g) pointwise",
        worst,
        tol::QFT_CONVOLUTION,
    ));

    let plan = QftPlan::default_with_unit(ImaginaryUnit::I);
    let mut worst = 0.0f64;
    for k in 0..=6 {
        let (_, residual) = qft_eigenvalue(k, &plan).expect("plan");
        worst = worst.max(residual);
    }
    checks.push(check(
        "hermite-eigenfunction-residual",
        "each weighted Hermite function is an eigenfunction of the Fourier \
         transform: F psi_k = psi_k lambda_k",
        worst,
        tol::QFT_EIGENVALUE,
    ));
}

/// Closed Gaussian form of the reproducing kernel (validated against the
/// quadrature definition by the kernel-closed-form check).
fn closed_kernel(x: f64, w: f64, xp: f64, wp: f64, unit: ImaginaryUnit) -> Quaternion {
    let dx = x - xp;
    let dw = w - wp;
    slice_exp(SliceComplex::new(
        -0.5 * PI * (dx * dx + dw * dw),
        PI * (w - wp) * (x + xp),
        unit,
    ))
    .as_quaternion()
}

fn qstft_checks(checks: &mut Vec<CheckResult>) {
    let tgrid = default_time_grid();
    let (xg, wg) = TimeFreqGrid::default_lattice();
    let unit = ImaginaryUnit::I;

    // Route equivalence over ten seeded signals on a coarse probe lattice.
    let mut worst = 0.0f64;
    for seed in 300..310 {
        let f = seeded_hermite_combo(seed, TAU, 8, &tgrid);
        for i in 0..5 {
            for j in 0..5 {
                let x = -4.0 + 2.0 * i as f64;
                let w = -4.0 + 2.0 * j as f64;
                worst = worst
                    .max((qstft_windowed(&f, x, w, unit) - qstft_bargmann(&f, x, w, unit)).norm());
            }
        }
    }
    checks.push(check(
        "route-equivalence",
        "the windowed quadrature and the kernel-transform route produce \
         the same time-frequency values",
        worst,
        tol::QSTFT_ROUTE_EQUIVALENCE,
    ));

    // Hermite images against their closed form.
    let basis = HermiteBasis::new(TAU, 4).expect("basis");
    let mut worst = 0.0f64;
    let mut kfact = 1.0;
    for k in 0..=4usize {
        if k > 0 {
            kfact *= k as f64;
        }
        let f = basis.sample(k, &tgrid).map(|_, v| v.scale(1.0 / basis.h_norm(k)));
        for &(x, w) in &[(0.7, -0.4), (-1.1, 0.9), (0.0, 1.3)] {
            let got = qstft_windowed(&f, x, w, unit);
            let qbar_k = SliceComplex::new(x, -w, unit).as_quaternion().powi(k);
            let scale = (-0.5 * PI * (x * x + w * w)).exp() * 2f64.powf(0.75)
                / (2f64.powi(k as i32) * kfact);
            let want = slice_exp(SliceComplex::new(0.0, -PI * x * w, unit)).as_quaternion()
                * qbar_k.scale(scale);
            worst = worst.max((got - want).norm());
        }
    }
    checks.push(check(
        "hermite-image-closed-form",
        "the transform of a scaled Hermite function is the conjugate-power \
         law with prefactor 2^{3/4} / (2^k k!)",
        worst,
        tol::HERMITE_IMAGE,
    ));

    // Energy identities on the default lattice.
    let f_a = seeded_hermite_combo(300, TAU, 8, &tgrid);
    let f_b = seeded_hermite_combo(301, TAU, 5, &tgrid);
    let tf_a = qstft_grid(&f_a, &xg, &wg, unit);
    let tf_b = qstft_grid(&f_b, &xg, &wg, unit);
    let iso_a = (tf_a.energy() / (2.0 * f_a.norm() * f_a.norm()) - 1.0).abs();
    let iso_b = (tf_b.energy() / (2.0 * f_b.norm() * f_b.norm()) - 1.0).abs();
    checks.push(check(
        "isometry-factor-two",
        "lattice energy of the transform is exactly twice the signal \
         energy (relative)",
        iso_a.max(iso_b),
        tol::QSTFT_ISOMETRY,
    ));
    let moyal = tf_inner(&tf_a, &tf_b).expect("shared lattice");
    let pairing = inner_l2(&f_a, &f_b).expect("shared grid").scale(2.0);
    checks.push(check(
        "moyal-polarization",
        "transform inner products double signal inner products: \
         <V f, V g> = 2 <f, g> (relative to 2 ||f|| ||g||)",
        (moyal - pairing).norm() / 2.0,
        tol::QSTFT_ISOMETRY,
    ));

    // Inversion and adjoint on a low-degree quaternion combination.
    let f_c = seeded_hermite_combo(302, TAU, 3, &tgrid);
    let tf_c = qstft_grid(&f_c, &xg, &wg, unit);
    let recon = qstft_reconstruct(&tf_c, &tgrid);
    checks.push(check(
        "reconstruction-round-trip",
        "synthesis of the analyzed signal returns the signal (sup norm)",
        recon.sub(&f_c).expect("shared grid").sup_norm(),
        tol::QSTFT_RECONSTRUCTION,
    ));
    let adj = qstft_adjoint(&tf_c, &tgrid);
    checks.push(check(
        "adjoint-composition",
        "the adjoint of analysis composed with analysis doubles the \
         signal: V* V f = 2 f (sup norm)",
        adj.sub(&f_c.map(|_, v| v.scale(2.0))).expect("shared grid").sup_norm(),
        tol::QSTFT_ADJOINT,
    ));
    let lhs = inner_l2(&qstft_adjoint(&tf_b, &tgrid), &f_c).expect("shared grid");
    let rhs = tf_inner(&tf_b, &tf_c).expect("shared lattice");
    checks.push(check(
        "adjoint-pairing",
        "<V* F, h> on the time side equals <F, V h> on the lattice \
         (relative)",
        (lhs - rhs).norm() / rhs.norm().max(1.0),
        tol::QSTFT_ADJOINT,
    ));

    // Reproducing kernel: diagonal, symmetry, closed form, reproduction.
    let kunit = second_unit();
    let mut worst = 0.0f64;
    for &(x, w) in &[(0.0, 0.0), (1.2, -0.7), (-0.4, 2.1), (3.0, 0.5), (-2.2, -1.8)] {
        worst = worst.max((gabor_kernel(x, w, x, w, kunit) - Quaternion::ONE).norm());
    }
    checks.push(check(
        "kernel-diagonal",
        "the reproducing kernel is 1 on the diagonal (unit window energy)",
        worst,
        tol::KERNEL_DIAGONAL,
    ));
    let arg_pairs = [
        (0.3, -0.8, 1.1, 0.4),
        (-1.5, 0.2, 0.6, -0.9),
        (0.0, 1.0, -1.0, 0.0),
        (2.0, 2.0, -2.0, 1.0),
        (0.7, 0.0, 0.0, -0.7),
        (-0.2, -0.2, -1.4, 2.2),
        (1.8, -1.1, 0.9, 0.8),
        (-3.0, 0.4, 2.5, -0.3),
        (0.5, 1.7, -0.6, -1.2),
    ];
    let mut worst_sym = 0.0f64;
    let mut worst_closed = 0.0f64;
    for &(x, w, xp, wp) in &arg_pairs {
        let k = gabor_kernel(x, w, xp, wp, kunit);
        worst_sym = worst_sym.max((k - gabor_kernel(xp, wp, x, w, kunit).conj()).norm());
        worst_closed = worst_closed.max((k - closed_kernel(x, w, xp, wp, kunit)).norm());
    }
    checks.push(check(
        "kernel-conjugate-symmetry",
        "swapping the kernel's argument pairs conjugates its value",
        worst_sym,
        tol::KERNEL_CONJUGATE_SYMMETRY,
    ));
    checks.push(check(
        "kernel-closed-form",
        "the kernel quadrature matches its Gaussian closed form",
        worst_closed,
        tol::KERNEL_CLOSED_FORM,
    ));
    let mut worst = 0.0f64;
    for &xp in &[-1.2, 0.0, 1.1] {
        for &wp in &[-0.8, 0.0, 1.4] {
            let direct = qstft_windowed(&f_b, xp, wp, unit);
            let mut terms = Vec::with_capacity(tf_b.values.len());
            for (ix, (&x, &wx)) in xg.nodes().iter().zip(xg.weights()).enumerate() {
                for (iw, (&w, &ww)) in wg.nodes().iter().zip(wg.weights()).enumerate() {
                    terms.push(
                        (closed_kernel(x, w, xp, wp, unit) * tf_b.value(ix, iw)).scale(wx * ww),
                    );
                }
            }
            worst = worst.max((direct - pairwise_sum_quat(&terms)).norm());
        }
    }
    checks.push(check(
        "kernel-reproduction",
        "integrating the kernel against the transform reproduces the \
         transform at nine probe points",
        worst,
        tol::KERNEL_REPRODUCTION,
    ));

    // Concentration functionals.
    let phi = SampledSignal::from_real_fn(tgrid.clone(), gaussian_window);
    let psi3 = HermiteBasis::new(TAU, 3).expect("basis").sample(3, &tgrid);
    let mut worst_slack = f64::NEG_INFINITY;
    let mut worst_p2 = 0.0f64;
    for f in [&phi, &psi3, &f_b] {
        for p in [2.0, 3.0, 4.0, 6.0] {
            let (lhs, bound) = lieb_functional(f, p, unit).expect("admissible exponent");
            worst_slack = worst_slack.max(lhs - bound);
            if p == 2.0 {
                let iso = 2.0 * f.norm() * f.norm();
                worst_p2 = worst_p2.max((lhs - iso).abs());
            }
        }
    }
    checks.push(check(
        "lieb-bound",
        "the p-th power lattice energy stays below (2^{p+1}/p) ||f||^p for \
         p in {2, 3, 4, 6} (signed residual: lhs - bound)",
        worst_slack,
        tol::LIEB_BOUND_SLACK,
    ));
    checks.push(check(
        "lieb-p2-isometry",
        "at p = 2 the concentration functional reproduces the isometry \
         value 2 ||f||^2",
        worst_p2,
        tol::LIEB_P2_MATCHES_ISOMETRY,
    ));

    let cells: Vec<(usize, usize)> = (0..xg.len())
        .flat_map(|ix| (0..wg.len()).map(move |iw| (ix, iw)))
        .filter(|&(ix, iw)| xg.nodes()[ix].abs() <= 2.0 && wg.nodes()[iw].abs() <= 2.0)
        .collect();
    let rep = concentration_check(&phi, &cells, 0.05, 4.0, unit).expect("valid cells");
    let residual = if rep.hypothesis_holds {
        (rep.weak_bound - rep.measure).max(rep.sharp_bound - rep.measure)
    } else {
        f64::INFINITY
    };
    checks.push(check(
        "concentration-bounds",
        "a region capturing 95% of the window's transform energy has \
         measure above both uncertainty lower bounds (signed residual: \
         bound - measure)",
        residual,
        0.0,
    ));

    // Intertwining with the Fourier transform at the winning constant.
    let psi1 = HermiteBasis::new(TAU, 1).expect("basis").sample(1, &tgrid);
    let mut worst = 0.0f64;
    for f in [&phi, &psi1, &f_c] {
        let res = fourier_intertwine_residual(f, unit).expect("uniform grid");
        worst = worst.max(res.with_unity);
    }
    checks.push(check(
        "intertwine-constant-unity",
        "V f(x, w) = exp(-2 pi I w x) V(F f)(w, -x) holds with constant 1",
        worst,
        tol::INTERTWINE_RESIDUAL,
    ));
}

fn empirical_constants() -> EmpiricalConstants {
    let plan = QftPlan::default_with_unit(ImaginaryUnit::I);
    let mut records = Vec::with_capacity(7);
    let mut lambdas = Vec::with_capacity(7);
    for k in 0..=6 {
        let (lambda, residual) = qft_eigenvalue(k, &plan).expect("default plan");
        records.push(EigenvalueRecord {
            k,
            lambda: [lambda.w, lambda.x, lambda.y, lambda.z],
            modulus: lambda.norm(),
            residual,
        });
        lambdas.push(lambda);
    }
    let unimodular = records.iter().all(|r| (r.modulus - 1.0).abs() <= tol::QFT_EIGENVALUE);
    let half_scale = records
        .iter()
        .all(|r| (r.modulus - std::f64::consts::FRAC_1_SQRT_2).abs() <= tol::QFT_EIGENVALUE);
    let ratios: Vec<Quaternion> = lambdas
        .windows(2)
        .map(|pair| pair[1] * pair[0].conj().scale(1.0 / pair[0].norm_sqr()))
        .collect();
    let geometric_defect =
        ratios.iter().map(|r| (*r - ratios[0]).norm()).fold(0.0f64, f64::max);

    let tgrid = default_time_grid();
    let basis1 = HermiteBasis::new(TAU, 1).expect("basis");
    let res = fourier_intertwine_residual(&basis1.sample(1, &tgrid), ImaginaryUnit::I)
        .expect("uniform grid");
    let constant = if res.with_unity <= res.with_sqrt2 { 1.0 } else { SQRT_2 };

    let basis = HermiteBasis::new(TAU, 4).expect("basis");
    let (x, w) = (0.8, -0.5);
    let r2 = x * x + w * w;
    let mut ratios_img = Vec::with_capacity(5);
    let mut kfact = 1.0;
    for k in 0..=4usize {
        if k > 0 {
            kfact *= k as f64;
        }
        let f = basis.sample(k, &tgrid).map(|_, v| v.scale(1.0 / basis.h_norm(k)));
        let measured = qstft_windowed(&f, x, w, ImaginaryUnit::I).norm();
        let predicted = (-0.5 * PI * r2).exp() * 2f64.powf(0.75) / (2f64.powi(k as i32) * kfact)
            * r2.powf(0.5 * k as f64);
        ratios_img.push(measured / predicted);
    }

    EmpiricalConstants {
        intertwine_constant: constant,
        intertwine_residual_with_unity: res.with_unity,
        intertwine_residual_with_sqrt2: res.with_sqrt2,
        eigenvalue_lambda: records,
        eigenvalues_unimodular: unimodular,
        eigenvalue_half_scale_matches: half_scale,
        eigenvalue_geometric_ratio: [ratios[0].w, ratios[0].x, ratios[0].y, ratios[0].z],
        eigenvalue_geometric_defect: geometric_defect,
        hermite_image_scale_ratio: ratios_img,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert_eq!("qstft".parse::<Suite>().unwrap(), Suite::Qstft);
        assert!("fourier".parse::<Suite>().is_err());
    }

    #[test]
    fn seeded_combos_are_deterministic_and_normalized() {
        let grid = default_time_grid();
        let a = seeded_hermite_combo(42, TAU, 6, &grid);
        let b = seeded_hermite_combo(42, TAU, 6, &grid);
        assert_eq!(a.values, b.values);
        assert!((a.norm() - 1.0).abs() < 1e-12);
        let c = seeded_hermite_combo(43, TAU, 6, &grid);
        assert!(a.sub(&c).unwrap().norm() > 1e-3);
    }

    #[test]
    fn qft_suite_passes_and_serializes_deterministically() {
        let r1 = run_suite(Suite::Qft);
        assert!(r1.all_pass, "table:\n{}", r1.render_table());
        let r2 = run_suite(Suite::Qft);
        assert_eq!(r1.to_json(), r2.to_json());
        assert!(r1.render_table().contains("PASS"));
    }

    #[test]
    fn bargmann_suite_passes() {
        let r = run_suite(Suite::Bargmann);
        assert!(r.all_pass, "table:\n{}", r.render_table());
        assert!(r.checks.iter().any(|c| c.name.starts_with("hermite-orthonormality")));
    }

    #[test]
    fn empirical_block_adjudicates_the_ambiguous_constants() {
        let e = empirical_constants();
        assert_eq!(e.intertwine_constant, 1.0);
        assert!(e.eigenvalues_unimodular);
        assert!(!e.eigenvalue_half_scale_matches);
        assert!(e.eigenvalue_geometric_defect < 1e-6);
        // The common ratio is -I for the i-slice plan.
        assert!((e.eigenvalue_geometric_ratio[1] + 1.0).abs() < 1e-6);
        for r in &e.hermite_image_scale_ratio {
            assert!((r - 1.0).abs() < 1e-6, "prefactor ratio {r}");
        }
    }
}
