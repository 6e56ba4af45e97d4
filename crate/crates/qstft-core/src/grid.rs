//! Quadrature grids, sampled signals and the two inner products.
//!
//! Every integral in the library is a weighted node sum over a [`LineGrid`]
//! (or a tensor product of two of them, [`PlaneGrid`]). Reductions use a
//! fixed pairwise tree, so results are deterministic and independent of any
//! platform reduction order.

use crate::error::{Error, Result};
use crate::quat::{conj_mul, Quaternion};

/// Node placement rule for a [`LineGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridRule {
    /// Uniform nodes including both endpoints, composite trapezoid weights.
    /// Spectrally accurate for smooth integrands that decay at the ends,
    /// which is the regime all default grids live in.
    Trapezoid,
    /// Gauss-Legendre nodes, exact for polynomials of degree `2n - 1`.
    GaussLegendre,
}

/// One-dimensional quadrature grid on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGrid {
    lo: f64,
    hi: f64,
    rule: GridRule,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Builds a grid; `lo < hi` and `n >= 2` are required.
pub fn make_grid(lo: f64, hi: f64, n: usize, rule: GridRule) -> Result<LineGrid> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::BadGridSpec(format!("non-finite endpoints ({lo}, {hi})")));
    }
    if lo >= hi {
        return Err(Error::BadGridSpec(format!("empty span: lo = {lo} >= hi = {hi}")));
    }
    if n < 2 {
        return Err(Error::BadGridSpec(format!("need at least 2 nodes, got {n}")));
    }
    let (nodes, weights) = match rule {
        GridRule::Trapezoid => trapezoid_rule(lo, hi, n),
        GridRule::GaussLegendre => gauss_legendre_rule(lo, hi, n),
    };
    Ok(LineGrid { lo, hi, rule, nodes, weights })
}

impl LineGrid {
    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline]
    pub fn rule(&self) -> GridRule {
        self.rule
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Node spacing; only meaningful for the uniform (trapezoid) rule.
    #[inline]
    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.len() as f64 - 1.0)
    }

    #[inline]
    pub fn is_uniform(&self) -> bool {
        self.rule == GridRule::Trapezoid
    }

    /// Integrates a real function by the grid's rule.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> =
            self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).collect();
        pairwise_sum_f64(&terms)
    }
}

fn trapezoid_rule(lo: f64, hi: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / (n as f64 - 1.0);
    let nodes: Vec<f64> = (0..n).map(|i| lo + h * i as f64).collect();
    let mut weights = vec![h; n];
    weights[0] = 0.5 * h;
    weights[n - 1] = 0.5 * h;
    (nodes, weights)
}

/// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence,
/// mirrored about the midpoint so symmetry is exact.
fn gauss_legendre_rule(lo: f64, hi: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1.0) {
                let (_, d2) = legendre_and_derivative(n, x);
                dp = d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // cos() above descends from +1, so index i is the i-th largest root.
        nodes[n - 1 - i] = center + half * x;
        nodes[i] = center - half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = center; // exact midpoint for odd counts
    }
    (nodes, weights)
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Default time-axis grid: `[-8, 8]` with 1024 trapezoid nodes. Every
/// default window and basis function decays at least like `exp(-t^2/2)`
/// there, so truncation sits far below quadrature rounding.
pub fn default_time_grid() -> LineGrid {
    make_grid(-8.0, 8.0, 1024, GridRule::Trapezoid).expect("static spec is valid")
}

/// Default frequency-axis grid, matching the time axis.
pub fn default_freq_grid() -> LineGrid {
    default_time_grid()
}

/// Default slice-plane grid for Fock-space integrals: `[-6, 6]^2` with 256
/// trapezoid nodes per axis.
pub fn default_fock_plane() -> PlaneGrid {
    PlaneGrid::square(6.0, 256).expect("static spec is valid")
}

// ---------------------------------------------------------------------------
// Deterministic reductions
// ---------------------------------------------------------------------------

const PAIRWISE_LEAF: usize = 32;

/// Pairwise (binary tree) sum: deterministic and with O(log n) error growth.
pub fn pairwise_sum_f64(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_f64(&xs[..mid]) + pairwise_sum_f64(&xs[mid..])
}

/// Component-wise pairwise sum of quaternions.
pub fn pairwise_sum_quat(xs: &[Quaternion]) -> Quaternion {
    if xs.len() <= PAIRWISE_LEAF {
        let mut acc = Quaternion::ZERO;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum_quat(&xs[..mid]) + pairwise_sum_quat(&xs[mid..])
}

// ---------------------------------------------------------------------------
// Sampled signals
// ---------------------------------------------------------------------------

/// A quaternion-valued function sampled on a [`LineGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub grid: LineGrid,
    pub values: Vec<Quaternion>,
}

impl SampledSignal {
    pub fn new(grid: LineGrid, values: Vec<Quaternion>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::BadGridSpec(format!(
                "{} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(SampledSignal { grid, values })
    }

    pub fn from_fn(grid: LineGrid, f: impl Fn(f64) -> Quaternion) -> Self {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        SampledSignal { grid, values }
    }

    pub fn from_real_fn(grid: LineGrid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |t| Quaternion::real(f(t)))
    }

    pub fn zero(grid: LineGrid) -> Self {
        let values = vec![Quaternion::ZERO; grid.len()];
        SampledSignal { grid, values }
    }

    /// Pointwise map keeping the grid.
    pub fn map(&self, f: impl Fn(f64, Quaternion) -> Quaternion) -> Self {
        let values =
            self.grid.nodes().iter().zip(&self.values).map(|(&t, &v)| f(t, v)).collect();
        SampledSignal { grid: self.grid.clone(), values }
    }

    /// Right multiplication by a constant: `f * c`.
    pub fn scale_right(&self, c: Quaternion) -> Self {
        self.map(|_, v| v * c)
    }

    /// Left multiplication by a constant: `c * f`.
    pub fn scale_left(&self, c: Quaternion) -> Self {
        self.map(|_, v| c * v)
    }

    pub fn add(&self, o: &SampledSignal) -> Result<Self> {
        if self.grid != o.grid {
            return Err(Error::GridMismatch);
        }
        let values = self.values.iter().zip(&o.values).map(|(&a, &b)| a + b).collect();
        Ok(SampledSignal { grid: self.grid.clone(), values })
    }

    pub fn sub(&self, o: &SampledSignal) -> Result<Self> {
        if self.grid != o.grid {
            return Err(Error::GridMismatch);
        }
        let values = self.values.iter().zip(&o.values).map(|(&a, &b)| a - b).collect();
        Ok(SampledSignal { grid: self.grid.clone(), values })
    }

    /// L2 norm under the grid's quadrature weights.
    pub fn norm(&self) -> f64 {
        let terms: Vec<f64> = self
            .values
            .iter()
            .zip(self.grid.weights())
            .map(|(v, &w)| w * v.norm_sqr())
            .collect();
        pairwise_sum_f64(&terms).max(0.0).sqrt()
    }

    /// Largest pointwise modulus.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Quadrature L2 inner product `<f, g> = sum w conj(g) f`. The conjugate
/// sits on the *second* argument, making the form right H-linear in the
/// first: `inner_l2(f * c, g) = inner_l2(f, g) * c`.
pub fn inner_l2(f: &SampledSignal, g: &SampledSignal) -> Result<Quaternion> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch);
    }
    let terms: Vec<Quaternion> = f
        .values
        .iter()
        .zip(&g.values)
        .zip(f.grid.weights())
        .map(|((&fv, &gv), &w)| conj_mul(gv, fv) * w)
        .collect();
    Ok(pairwise_sum_quat(&terms))
}

/// Tensor-product grid over a slice plane; `x` spans the real axis of the
/// slice and `y` the imaginary one.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneGrid {
    pub x: LineGrid,
    pub y: LineGrid,
}

impl PlaneGrid {
    pub fn new(x: LineGrid, y: LineGrid) -> Self {
        PlaneGrid { x, y }
    }

    /// Square plane `[-half, half]^2` with `n` trapezoid nodes per axis.
    pub fn square(half: f64, n: usize) -> Result<Self> {
        let x = make_grid(-half, half, n, GridRule::Trapezoid)?;
        Ok(PlaneGrid { y: x.clone(), x })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major node index: outer loop x, inner loop y.
    #[inline]
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        ix * self.y.len() + iy
    }

    /// Samples a slice function `f(x, y)` row-major.
    pub fn sample(&self, f: impl Fn(f64, f64) -> Quaternion) -> Vec<Quaternion> {
        let mut out = Vec::with_capacity(self.len());
        for &x in self.x.nodes() {
            for &y in self.y.nodes() {
                out.push(f(x, y));
            }
        }
        out
    }
}

/// Gaussian-weighted inner product of two fields sampled row-major on a
/// slice plane: `sum wx wy conj(g) f exp(-nu |q|^2)` with `|q|^2 = x^2 + y^2`.
pub fn inner_fock(
    f: &[Quaternion],
    g: &[Quaternion],
    nu: f64,
    plane: &PlaneGrid,
) -> Result<Quaternion> {
    if f.len() != plane.len() || g.len() != plane.len() {
        return Err(Error::GridMismatch);
    }
    let ny = plane.y.len();
    let mut terms = Vec::with_capacity(plane.len());
    for (ix, (&x, &wx)) in plane.x.nodes().iter().zip(plane.x.weights()).enumerate() {
        for (iy, (&y, &wy)) in plane.y.nodes().iter().zip(plane.y.weights()).enumerate() {
            let idx = ix * ny + iy;
            let weight = wx * wy * (-nu * (x * x + y * y)).exp();
            terms.push(conj_mul(g[idx], f[idx]) * weight);
        }
    }
    Ok(pairwise_sum_quat(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::ImaginaryUnit;

    #[test]
    fn trapezoid_three_nodes() {
        let g = make_grid(-1.0, 1.0, 3, GridRule::Trapezoid).unwrap();
        assert_eq!(g.nodes(), &[-1.0, 0.0, 1.0]);
        assert_eq!(g.weights(), &[0.5, 1.0, 0.5]);
        assert_eq!(g.spacing(), 1.0);
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(matches!(
            make_grid(1.0, -1.0, 8, GridRule::Trapezoid),
            Err(Error::BadGridSpec(_))
        ));
        assert!(matches!(
            make_grid(0.0, 1.0, 1, GridRule::GaussLegendre),
            Err(Error::BadGridSpec(_))
        ));
        assert!(matches!(
            make_grid(f64::NAN, 1.0, 4, GridRule::Trapezoid),
            Err(Error::BadGridSpec(_))
        ));
    }

    #[test]
    fn gauss_two_point_is_exact_for_quadratics() {
        let g = make_grid(-1.0, 1.0, 2, GridRule::GaussLegendre).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((g.nodes()[0] + r).abs() < 1e-15);
        assert!((g.nodes()[1] - r).abs() < 1e-15);
        let integral = g.integrate(|x| x * x);
        assert!((integral - 2.0 / 3.0).abs() < 1e-15, "got {integral}");
    }

    #[test]
    fn gauss_high_order_polynomial_exactness() {
        // n nodes integrate degree 2n-1 exactly: x^13 odd -> 0, x^12 even.
        let g = make_grid(-1.0, 1.0, 7, GridRule::GaussLegendre).unwrap();
        assert!(g.integrate(|x| x.powi(13)).abs() < 1e-15);
        let exact = 2.0 / 13.0;
        assert!((g.integrate(|x| x.powi(12)) - exact).abs() < 1e-14);
        // Affine mapping keeps the total weight equal to the span.
        let m = make_grid(2.0, 5.0, 40, GridRule::GaussLegendre).unwrap();
        assert!((m.integrate(|_| 1.0) - 3.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_mass_on_default_style_grid() {
        let g = make_grid(-8.0, 8.0, 512, GridRule::Trapezoid).unwrap();
        let mass = g.integrate(|t| (-std::f64::consts::PI * t * t).exp());
        assert!((mass - 1.0).abs() < 1e-12, "got {mass}");
    }

    #[test]
    fn inner_product_requires_shared_grid() {
        let a = make_grid(-1.0, 1.0, 16, GridRule::Trapezoid).unwrap();
        let b = make_grid(-1.0, 1.0, 17, GridRule::Trapezoid).unwrap();
        let f = SampledSignal::from_real_fn(a, |t| t);
        let g = SampledSignal::from_real_fn(b, |t| t);
        assert!(matches!(inner_l2(&f, &g), Err(Error::GridMismatch)));
    }

    #[test]
    fn inner_product_is_right_linear_and_conj_symmetric() {
        let grid = make_grid(-4.0, 4.0, 257, GridRule::Trapezoid).unwrap();
        let f = SampledSignal::from_fn(grid.clone(), |t| {
            Quaternion::new((-t * t).exp(), 0.3 * t, (t * 0.5).sin(), 0.0)
        });
        let g = SampledSignal::from_fn(grid, |t| {
            Quaternion::new((0.7 * t).cos() * (-t * t / 2.0).exp(), 0.0, 0.1, -0.2 * t)
        });
        // Right multiplication by a basis unit permutes components: exact.
        let j = ImaginaryUnit::J.as_quaternion();
        let lhs = inner_l2(&f.scale_right(j), &g).unwrap();
        let rhs = inner_l2(&f, &g).unwrap() * j;
        assert_eq!(lhs, rhs);
        // General constants: tested to relative tolerance.
        let c = Quaternion::new(0.8, -1.1, 0.4, 0.9);
        let lhs = inner_l2(&f.scale_right(c), &g).unwrap();
        let rhs = inner_l2(&f, &g).unwrap() * c;
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        // Conjugate symmetry is bitwise by construction of conj_mul.
        let fg = inner_l2(&f, &g).unwrap();
        let gf = inner_l2(&g, &f).unwrap();
        assert_eq!(fg, gf.conj());
    }

    #[test]
    fn fock_weight_normalizes_constants() {
        // integral over the plane of nu/pi * exp(-nu |q|^2) is 1.
        let plane = PlaneGrid::square(6.0, 256).unwrap();
        for nu in [1.0, 2.0 * std::f64::consts::PI] {
            let f = plane.sample(|_, _| Quaternion::real((nu / std::f64::consts::PI).sqrt()));
            let ip = inner_fock(&f, &f, nu, &plane).unwrap();
            assert!((ip.w - 1.0).abs() < 1e-12, "nu = {nu}: {}", ip.w);
            assert!(ip.im().norm() < 1e-14);
        }
    }

    #[test]
    fn doubling_nodes_is_converged() {
        let pi = std::f64::consts::PI;
        let f1 = |t: f64| Quaternion::new((-pi * t * t).exp(), 0.2 * (-t * t).exp(), 0.0, 0.0);
        let g1 = |t: f64| Quaternion::new(t * (-t * t).exp(), 0.0, 0.1 * (-pi * t * t).exp(), 0.0);
        let coarse = make_grid(-8.0, 8.0, 1024, GridRule::Trapezoid).unwrap();
        let fine = make_grid(-8.0, 8.0, 2048, GridRule::Trapezoid).unwrap();
        let a = inner_l2(
            &SampledSignal::from_fn(coarse.clone(), f1),
            &SampledSignal::from_fn(coarse, g1),
        )
        .unwrap();
        let b = inner_l2(
            &SampledSignal::from_fn(fine.clone(), f1),
            &SampledSignal::from_fn(fine, g1),
        )
        .unwrap();
        assert!((a - b).norm() <= 1e-9 * b.norm());
    }

    #[test]
    fn pairwise_sum_matches_kahan_reference() {
        // Sum 1/k^2 forward: naive sequential vs pairwise vs high-precision.
        let terms: Vec<f64> = (1..=100_000).map(|k| 1.0 / (k as f64 * k as f64)).collect();
        let pair = pairwise_sum_f64(&terms);
        // Kahan compensated reference.
        let (mut s, mut c) = (0.0f64, 0.0f64);
        for &t in &terms {
            let y = t - c;
            let u = s + y;
            c = (u - s) - y;
            s = u;
        }
        assert!((pair - s).abs() < 1e-13);
    }
}
