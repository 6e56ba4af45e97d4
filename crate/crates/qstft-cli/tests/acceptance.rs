//! Acceptance gate: twelve numbered criteria covering every identity the
//! library claims, each printing exactly one verdict line. Tolerances come
//! from the shared `tol` module; nothing here is allowed to loosen them.

use qstft_core::bargmann::{
    bargmann_coefficients, default_probe_points, momentum_equivalence_residual,
    position_equivalence_residual,
};
use qstft_core::basis::{bargmann_kernel, bargmann_kernel_series, FockMonomialBasis, HermiteBasis};
use qstft_core::grid::{
    default_time_grid, inner_fock, inner_l2, make_grid, pairwise_sum_f64, pairwise_sum_quat,
    GridRule, PlaneGrid,
};
use qstft_core::qft::{modulate, qft_forward, qft_inverse, translate, QftPlan};
use qstft_core::qstft::{
    gabor_kernel, lieb_functional, qstft_adjoint, qstft_bargmann, qstft_grid, qstft_reconstruct,
    qstft_windowed, tf_inner, TimeFreqGrid,
};
use qstft_core::quat::{conj_mul, slice_exp};
use qstft_core::report::seeded_hermite_combo;
use qstft_core::tol;
use qstft_core::{ImaginaryUnit, Quaternion, SampledSignal, SliceComplex};
use std::f64::consts::{PI, SQRT_2, TAU};
use std::sync::OnceLock;

fn verdict(n: usize, label: &str, detail: String, pass: bool) {
    println!(
        "criterion {n:02} {label}: {detail} -> {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({label}) failed: {detail}");
}

fn second_unit() -> ImaginaryUnit {
    ImaginaryUnit::new(1.0, 1.0, 0.0).unwrap()
}

#[test]
fn criterion_01_hermite_orthonormality() {
    let grid = make_grid(-12.0, 12.0, 1536, GridRule::Trapezoid).unwrap();
    let mut worst = 0.0f64;
    for nu in [1.0, TAU] {
        let rows = HermiteBasis::new(nu, 20).unwrap().psi_matrix(&grid);
        let w = grid.weights();
        for j in 0..rows.len() {
            for k in j..rows.len() {
                let terms: Vec<f64> =
                    (0..grid.len()).map(|i| w[i] * rows[j][i] * rows[k][i]).collect();
                let delta = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((pairwise_sum_f64(&terms) - delta).abs());
            }
        }
    }
    let tolerance = tol::HERMITE_ORTHONORMALITY;
    verdict(
        1,
        "hermite-orthonormality",
        format!("max |<psi_j,psi_k> - delta| = {worst:.3e} over j,k <= 20, nu in {{1, 2pi}} (tol {tolerance:.0e})"),
        worst < tolerance,
    );
}

#[test]
fn criterion_02_kernel_generating_function() {
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
                    let series = bargmann_kernel_series(q, t, 1.0, 60).unwrap();
                    worst = worst.max((closed - series).norm());
                }
            }
        }
    }
    let tolerance = tol::KERNEL_GENERATING_FUNCTION;
    verdict(
        2,
        "kernel-generating-function",
        format!("sup |closed - series(K=60)| = {worst:.3e} on |q|,|t| <= 2, two slices (tol {tolerance:.0e})"),
        worst < tolerance,
    );
}

#[test]
fn criterion_03_bargmann_unitarity_two_routes() {
    let tgrid = default_time_grid();
    let fock = FockMonomialBasis::new(1.0, 10).unwrap();
    let plane = PlaneGrid::square(7.0, 256).unwrap();
    let mut worst_coeff = 0.0f64;
    let mut worst_plane = 0.0f64;
    let mut worst_mutual = 0.0f64;
    for pair in 0..10u64 {
        let f = seeded_hermite_combo(500 + 2 * pair, 1.0, 10, &tgrid);
        let g = seeded_hermite_combo(501 + 2 * pair, 1.0, 10, &tgrid);
        let time = inner_l2(&f, &g).unwrap();
        let cf = bargmann_coefficients(&f, 1.0, 10).unwrap();
        let cg = bargmann_coefficients(&g, 1.0, 10).unwrap();
        let mut coeff = Quaternion::ZERO;
        for k in 0..cf.coeffs.len() {
            coeff += conj_mul(cg.coeffs[k], cf.coeffs[k]).scale(fock.monomial_norm_sqr(k));
        }
        let ff = plane.sample(|a, b| cf.eval_slice(SliceComplex::new(a, b, ImaginaryUnit::I)));
        let gg = plane.sample(|a, b| cg.eval_slice(SliceComplex::new(a, b, ImaginaryUnit::I)));
        let pl = inner_fock(&ff, &gg, 1.0, &plane).unwrap();
        worst_coeff = worst_coeff.max((coeff - time).norm());
        worst_plane = worst_plane.max((pl - time).norm());
        worst_mutual = worst_mutual.max((pl - coeff).norm());
    }
    let tolerance = tol::BARGMANN_UNITARITY;
    let worst = worst_coeff.max(worst_plane).max(worst_mutual);
    verdict(
        3,
        "bargmann-unitarity",
        format!(
            "20 seeded combos (k <= 10): |<Bf,Bg> - <f,g>| coeff route {worst_coeff:.3e}, \
             plane route {worst_plane:.3e}, route mutual {worst_mutual:.3e} (tol {tolerance:.0e})"
        ),
        worst < tolerance,
    );
}

#[test]
fn criterion_04_position_momentum_equivalence() {
    let tgrid = default_time_grid();
    let basis = HermiteBasis::new(1.0, 5).unwrap();
    let probes = default_probe_points();
    assert_eq!(probes.len(), 8);
    let mut worst_pos = 0.0f64;
    let mut worst_mom = 0.0f64;
    for k in [0usize, 1, 5] {
        let f = basis.sample(k, &tgrid);
        worst_pos = worst_pos.max(position_equivalence_residual(&f, 1.0, 40, &probes).unwrap());
        worst_mom = worst_mom.max(momentum_equivalence_residual(&f, 1.0, 40, &probes).unwrap());
    }
    let pass = worst_pos < tol::POSITION_EQUIVALENCE && worst_mom < tol::MOMENTUM_EQUIVALENCE;
    verdict(
        4,
        "position-momentum-equivalence",
        format!(
            "8 probes, psi_0/psi_1/psi_5: position residual {worst_pos:.3e}, momentum residual \
             {worst_mom:.3e} (tol {:.0e})",
            tol::POSITION_EQUIVALENCE
        ),
        pass,
    );
}

#[test]
fn criterion_05_qft_plancherel_inversion_covariance() {
    let tgrid = default_time_grid();
    let units = [ImaginaryUnit::I, ImaginaryUnit::new(0.0, 1.0, 1.0).unwrap()];
    let signals: Vec<SampledSignal> =
        (200..203).map(|s| seeded_hermite_combo(s, TAU, 8, &tgrid)).collect();
    let (x0, w0) = (0.7, 1.3);
    let mut worst_norm = 0.0f64;
    let mut worst_round = 0.0f64;
    let mut worst_cov = 0.0f64;
    for &unit in &units {
        let plan = QftPlan::default_with_unit(unit);
        for f in &signals {
            let ff = qft_forward(f, &plan).unwrap();
            worst_norm = worst_norm.max((ff.norm() / f.norm() - 1.0).abs());
            worst_round =
                worst_round.max(qft_inverse(&ff, &plan).unwrap().sub(f).unwrap().sup_norm());
        }
        let f = &signals[0];
        let ff = qft_forward(f, &plan).unwrap();
        let r1 = qft_forward(&translate(f, x0).unwrap(), &plan)
            .unwrap()
            .sub(&modulate(&ff, -x0, unit))
            .unwrap()
            .sup_norm();
        let r2 = qft_forward(&modulate(f, w0, unit), &plan)
            .unwrap()
            .sub(&translate(&ff, w0).unwrap())
            .unwrap()
            .sup_norm();
        let r3 = qft_forward(&modulate(&translate(f, x0).unwrap(), w0, unit), &plan)
            .unwrap()
            .sub(&translate(&modulate(&ff, -x0, unit), w0).unwrap())
            .unwrap()
            .sup_norm();
        let phase = slice_exp(SliceComplex::new(0.0, -TAU * w0 * x0, unit)).as_quaternion();
        let r4 = translate(&modulate(f, w0, unit), x0)
            .unwrap()
            .sub(&modulate(&translate(f, x0).unwrap(), w0, unit).scale_left(phase))
            .unwrap()
            .sup_norm();
        worst_cov = worst_cov.max(r1).max(r2).max(r3).max(r4);
    }
    let pass = worst_norm < tol::QFT_PLANCHEREL
        && worst_round < tol::QFT_ROUNDTRIP
        && worst_cov < tol::QFT_COVARIANCE;
    verdict(
        5,
        "qft-plancherel-inversion-covariance",
        format!(
            "norm ratio defect {worst_norm:.3e} (tol {:.0e}), round trip {worst_round:.3e} \
             (tol {:.0e}), covariance + commutation {worst_cov:.3e} (tol {:.0e})",
            tol::QFT_PLANCHEREL,
            tol::QFT_ROUNDTRIP,
            tol::QFT_COVARIANCE
        ),
        pass,
    );
}

#[test]
fn criterion_06_route_equivalence() {
    let tgrid = default_time_grid();
    let unit = ImaginaryUnit::I;
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
    let tolerance = tol::QSTFT_ROUTE_EQUIVALENCE;
    verdict(
        6,
        "route-equivalence",
        format!("10 seeded signals, 5x5 probe lattice: sup |windowed - kernel route| = {worst:.3e} (tol {tolerance:.0e})"),
        worst < tolerance,
    );
}

#[test]
fn criterion_07_isometry_and_moyal() {
    let tgrid = default_time_grid();
    let (xg, wg) = TimeFreqGrid::default_lattice();
    assert_eq!((xg.len(), wg.len()), (129, 129));
    let unit = ImaginaryUnit::I;
    let f = seeded_hermite_combo(300, TAU, 8, &tgrid);
    let g = seeded_hermite_combo(301, TAU, 5, &tgrid);
    let tf_f = qstft_grid(&f, &xg, &wg, unit);
    let tf_g = qstft_grid(&g, &xg, &wg, unit);
    let iso_f = (tf_f.energy() / (2.0 * f.norm() * f.norm()) - 1.0).abs();
    let iso_g = (tf_g.energy() / (2.0 * g.norm() * g.norm()) - 1.0).abs();
    let moyal = (tf_inner(&tf_f, &tf_g).unwrap() - inner_l2(&f, &g).unwrap().scale(2.0)).norm()
        / 2.0;
    let worst = iso_f.max(iso_g).max(moyal);
    let tolerance = tol::QSTFT_ISOMETRY;
    verdict(
        7,
        "isometry-and-moyal",
        format!("129x129 lattice: isometry defect {:.3e}, polarization defect {moyal:.3e} (tol {tolerance:.0e})", iso_f.max(iso_g)),
        worst < tolerance,
    );
}

#[test]
fn criterion_08_reconstruction_and_adjoint() {
    let tgrid = default_time_grid();
    let (xg, wg) = TimeFreqGrid::default_lattice();
    let unit = ImaginaryUnit::I;
    let mut worst_rec = 0.0f64;
    let mut worst_adj = 0.0f64;
    for (seed, kmax) in [(302, 3), (303, 5)] {
        let f = seeded_hermite_combo(seed, TAU, kmax, &tgrid);
        let tf = qstft_grid(&f, &xg, &wg, unit);
        worst_rec = worst_rec.max(qstft_reconstruct(&tf, &tgrid).sub(&f).unwrap().sup_norm());
        let doubled = f.map(|_, v| v.scale(2.0));
        worst_adj = worst_adj.max(qstft_adjoint(&tf, &tgrid).sub(&doubled).unwrap().sup_norm());
    }
    let pass = worst_rec < tol::QSTFT_RECONSTRUCTION && worst_adj < tol::QSTFT_ADJOINT;
    verdict(
        8,
        "reconstruction-and-adjoint",
        format!(
            "quaternion combos (k <= 3, 5): sup |reconstruct(Vf) - f| = {worst_rec:.3e}, \
             sup |A(Vf) - 2f| = {worst_adj:.3e} (tol {:.0e})",
            tol::QSTFT_RECONSTRUCTION
        ),
        pass,
    );
}

#[test]
fn criterion_09_reproducing_kernel() {
    let tgrid = default_time_grid();
    let (xg, wg) = TimeFreqGrid::default_lattice();
    let unit = ImaginaryUnit::I;
    let closed = |x: f64, w: f64, xp: f64, wp: f64| {
        let dx = x - xp;
        let dw = w - wp;
        slice_exp(SliceComplex::new(
            -0.5 * PI * (dx * dx + dw * dw),
            PI * (w - wp) * (x + xp),
            unit,
        ))
        .as_quaternion()
    };

    let mut worst_diag = 0.0f64;
    for &(x, w) in &[(0.0, 0.0), (1.2, -0.7), (-0.4, 2.1), (3.0, 0.5), (-2.2, -1.8)] {
        worst_diag = worst_diag.max((gabor_kernel(x, w, x, w, unit) - Quaternion::ONE).norm());
    }

    // The reproduction integral uses the closed kernel; its agreement with
    // the quadrature definition is pinned here at the probe arguments.
    let probes: Vec<(f64, f64)> = [-1.2, 0.0, 1.1]
        .iter()
        .flat_map(|&x| [-0.8, 0.0, 1.4].iter().map(move |&w| (x, w)))
        .collect();
    let mut worst_form = 0.0f64;
    for &(xp, wp) in &probes {
        let k = gabor_kernel(0.4, -0.3, xp, wp, unit);
        worst_form = worst_form.max((k - closed(0.4, -0.3, xp, wp)).norm());
    }
    assert!(worst_form < tol::KERNEL_CLOSED_FORM, "closed form drifted: {worst_form:.3e}");

    let f = seeded_hermite_combo(301, TAU, 5, &tgrid);
    let tf = qstft_grid(&f, &xg, &wg, unit);
    let mut worst_rep = 0.0f64;
    for &(xp, wp) in &probes {
        let direct = qstft_windowed(&f, xp, wp, unit);
        let mut terms = Vec::with_capacity(tf.values.len());
        for (ix, (&x, &wx)) in xg.nodes().iter().zip(xg.weights()).enumerate() {
            for (iw, (&w, &ww)) in wg.nodes().iter().zip(wg.weights()).enumerate() {
                terms.push((closed(x, w, xp, wp) * tf.value(ix, iw)).scale(wx * ww));
            }
        }
        worst_rep = worst_rep.max((direct - pairwise_sum_quat(&terms)).norm());
    }
    let pass = worst_rep < tol::KERNEL_REPRODUCTION && worst_diag < tol::KERNEL_DIAGONAL;
    verdict(
        9,
        "reproducing-kernel",
        format!(
            "reproduction residual {worst_rep:.3e} at 9 probes (tol {:.0e}), diagonal defect \
             {worst_diag:.3e} (tol {:.0e})",
            tol::KERNEL_REPRODUCTION,
            tol::KERNEL_DIAGONAL
        ),
        pass,
    );
}

#[test]
fn criterion_10_lieb_inequality() {
    let tgrid = default_time_grid();
    let unit = ImaginaryUnit::I;
    let phi = HermiteBasis::new(TAU, 0).unwrap().sample(0, &tgrid);
    let psi3 = HermiteBasis::new(TAU, 3).unwrap().sample(3, &tgrid);
    let combo = seeded_hermite_combo(301, TAU, 5, &tgrid);
    let mut worst_slack = f64::NEG_INFINITY;
    let mut worst_p2 = 0.0f64;
    for f in [&phi, &psi3, &combo] {
        for p in [2.0, 3.0, 4.0, 6.0] {
            let (lhs, bound) = lieb_functional(f, p, unit).unwrap();
            worst_slack = worst_slack.max(lhs - bound);
            if p == 2.0 {
                worst_p2 = worst_p2.max((lhs - 2.0 * f.norm() * f.norm()).abs());
            }
        }
    }
    let pass =
        worst_slack < tol::LIEB_BOUND_SLACK && worst_p2 < tol::LIEB_P2_MATCHES_ISOMETRY;
    verdict(
        10,
        "lieb-inequality",
        format!(
            "3 fixtures, p in {{2,3,4,6}}: worst lhs - (2^(p+1)/p)||f||^p = {worst_slack:.3e} \
             (must stay below {:.0e}), p=2 isometry defect {worst_p2:.3e} (tol {:.0e})",
            tol::LIEB_BOUND_SLACK,
            tol::LIEB_P2_MATCHES_ISOMETRY
        ),
        pass,
    );
}

/// Two full `verify --suite all` runs through the binary, shared between the
/// criteria that inspect the report artifact.
static ALL_REPORTS: OnceLock<(String, String, bool)> = OnceLock::new();

fn all_suite_reports() -> &'static (String, String, bool) {
    ALL_REPORTS.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let mut jsons = Vec::new();
        let mut passed = true;
        for name in ["r1.json", "r2.json"] {
            let out = std::process::Command::new(env!("CARGO_BIN_EXE_qstft"))
                .current_dir(dir.path())
                .args(["verify", "--suite", "all", "--report", name])
                .output()
                .expect("binary runs");
            passed &= out.status.code() == Some(0);
            jsons.push(std::fs::read_to_string(dir.path().join(name)).expect("report written"));
        }
        let second = jsons.pop().unwrap();
        (jsons.pop().unwrap(), second, passed)
    })
}

#[test]
fn criterion_11_constant_adjudication_in_report() {
    let (json, _, exit_ok) = all_suite_reports();
    assert!(exit_ok, "verify --suite all did not exit 0");
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    let e = &v["empirical_constants"];

    let constant = e["intertwine_constant"].as_f64().expect("constant recorded");
    let known = (constant - 1.0).abs() < 1e-12 || (constant - SQRT_2).abs() < 1e-12;
    let residuals_recorded = e["intertwine_residual_with_unity"].is_number()
        && e["intertwine_residual_with_sqrt2"].is_number();

    let lambdas = e["eigenvalue_lambda"].as_array().expect("eigenvalues recorded");
    let covers_k6 = lambdas.len() == 7
        && lambdas.iter().enumerate().all(|(k, r)| r["k"].as_u64() == Some(k as u64));
    let mut worst_mod = 0.0f64;
    let mut qs = Vec::new();
    for r in lambdas {
        let c: Vec<f64> = r["lambda"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
        let q = Quaternion::new(c[0], c[1], c[2], c[3]);
        worst_mod = worst_mod.max((q.norm() - 1.0).abs());
        qs.push(q);
    }
    let ratios: Vec<Quaternion> = qs
        .windows(2)
        .map(|p| p[1] * p[0].conj().scale(1.0 / p[0].norm_sqr()))
        .collect();
    let geo_defect =
        ratios.iter().map(|r| (*r - ratios[0]).norm()).fold(0.0f64, f64::max);
    // The half-scale variant must be adjudicated one way or the other; with
    // unimodular eigenvalues the two findings are mutually exclusive.
    let half_scale = e["eigenvalue_half_scale_matches"].as_bool();
    let adjudicated = match half_scale {
        Some(h) => h != (worst_mod <= tol::QFT_EIGENVALUE),
        None => false,
    };

    let pass = known
        && residuals_recorded
        && covers_k6
        && worst_mod < tol::QFT_EIGENVALUE
        && geo_defect < tol::QFT_EIGENVALUE
        && adjudicated;
    verdict(
        11,
        "constant-adjudication",
        format!(
            "report records intertwine constant {constant} with both residuals, eigenvalues \
             k <= 6 with modulus defect {worst_mod:.3e} and geometric defect {geo_defect:.3e} \
             (tol {:.0e}), half-scale variant recorded as {half_scale:?}",
            tol::QFT_EIGENVALUE
        ),
        pass,
    );
}

#[test]
fn criterion_12_verify_determinism() {
    let (r1, r2, exit_ok) = all_suite_reports();
    assert!(exit_ok, "verify --suite all did not exit 0");
    let identical = r1 == r2;
    verdict(
        12,
        "verify-determinism",
        format!(
            "two consecutive verify --suite all runs: {} bytes each, byte-identical = {identical}",
            r1.len()
        ),
        identical && !r1.is_empty(),
    );
}
