//! Weighted Hermite functions, Fock-space monomials and the Bargmann kernel.
//!
//! The scale parameter `nu > 0` sets the Gaussian weight `exp(-nu t^2 / 2)`
//! of the Hermite family and the weight `exp(-nu |q|^2)` of the monomial
//! family. The two families are tied together by the kernel
//!
//! ```text
//! A(q, t) = (nu/pi)^{3/4} exp(-nu/2 (q^2 + t^2) + nu sqrt(2) q t)
//!         = sum_k f_k(q) psi_k(t)
//! ```
//!
//! which is entire in `q` and evaluated inside the slice of `q`, so all
//! arithmetic stays commutative until a full quaternion is rebuilt at the
//! end.

use crate::error::{Error, Result};
use crate::grid::{LineGrid, SampledSignal};
use crate::quat::{slice_decompose, slice_exp, ImaginaryUnit, Quaternion, SliceComplex};

/// Orthonormal weighted Hermite family `psi_k = h_k / ||h_k||`.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    nu: f64,
    kmax: usize,
    /// `||h_k||^2 = 2^k nu^k k! sqrt(pi/nu)`, kept for unnormalized uses.
    norms_sqr: Vec<f64>,
}

/// Default truncation degree for coefficient expansions.
pub const DEFAULT_KMAX: usize = 40;

impl HermiteBasis {
    pub fn new(nu: f64, kmax: usize) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::BadBasisSpec(format!("nu = {nu} must be positive")));
        }
        let mut norms_sqr = Vec::with_capacity(kmax + 1);
        let mut n2 = (std::f64::consts::PI / nu).sqrt();
        norms_sqr.push(n2);
        for k in 1..=kmax {
            n2 *= 2.0 * nu * k as f64;
            if !n2.is_finite() {
                return Err(Error::BadBasisSpec(format!(
                    "norm of h_{k} overflows at nu = {nu}"
                )));
            }
            norms_sqr.push(n2);
        }
        Ok(HermiteBasis { nu, kmax, norms_sqr })
    }

    #[inline]
    pub fn nu(&self) -> f64 {
        self.nu
    }

    #[inline]
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Squared norm of the *unnormalized* function `h_k`.
    #[inline]
    pub fn h_norm_sqr(&self, k: usize) -> f64 {
        self.norms_sqr[k]
    }

    #[inline]
    pub fn h_norm(&self, k: usize) -> f64 {
        self.norms_sqr[k].sqrt()
    }

    /// `psi_k(t)` by the normalized three-term recurrence
    /// `psi_{k+1} = (sqrt(2 nu) t psi_k - sqrt(k) psi_{k-1}) / sqrt(k+1)`,
    /// which is stable for all degrees used here.
    pub fn psi(&self, k: usize, t: f64) -> f64 {
        assert!(k <= self.kmax, "degree {k} above basis kmax {}", self.kmax);
        let s = (2.0 * self.nu).sqrt() * t;
        let mut p0 = (self.nu / std::f64::consts::PI).powf(0.25)
            * (-0.5 * self.nu * t * t).exp();
        if k == 0 {
            return p0;
        }
        let mut p1 = s * p0;
        for m in 1..k {
            let mf = m as f64;
            let p2 = (s * p1 - mf.sqrt() * p0) / (mf + 1.0).sqrt();
            p0 = p1;
            p1 = p2;
        }
        p1
    }

    /// All of `psi_0(t) ... psi_kmax(t)` in one recurrence pass.
    pub fn psi_all(&self, t: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.kmax + 1);
        let s = (2.0 * self.nu).sqrt() * t;
        let mut p0 = (self.nu / std::f64::consts::PI).powf(0.25)
            * (-0.5 * self.nu * t * t).exp();
        out.push(p0);
        if self.kmax == 0 {
            return out;
        }
        let mut p1 = s * p0;
        out.push(p1);
        for m in 1..self.kmax {
            let mf = m as f64;
            let p2 = (s * p1 - mf.sqrt() * p0) / (mf + 1.0).sqrt();
            out.push(p2);
            p0 = p1;
            p1 = p2;
        }
        out
    }

    /// `psi_k` sampled on a grid as a (real-valued) signal.
    pub fn sample(&self, k: usize, grid: &LineGrid) -> SampledSignal {
        SampledSignal::from_real_fn(grid.clone(), |t| self.psi(k, t))
    }

    /// Row-major matrix `m[k][i] = psi_k(node_i)`.
    pub fn psi_matrix(&self, grid: &LineGrid) -> Vec<Vec<f64>> {
        let mut rows = vec![Vec::with_capacity(grid.len()); self.kmax + 1];
        for &t in grid.nodes() {
            for (k, v) in self.psi_all(t).into_iter().enumerate() {
                rows[k].push(v);
            }
        }
        rows
    }
}

/// Normalized monomials `f_k(q) = sqrt(nu^{k+1} / (pi k!)) q^k` spanning the
/// slice Fock space.
#[derive(Debug, Clone)]
pub struct FockMonomialBasis {
    nu: f64,
    kmax: usize,
    /// `coeff[k] = sqrt(nu^{k+1} / (pi k!))`, built by stable ratio updates.
    coeff: Vec<f64>,
}

impl FockMonomialBasis {
    pub fn new(nu: f64, kmax: usize) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::BadBasisSpec(format!("nu = {nu} must be positive")));
        }
        let mut coeff = Vec::with_capacity(kmax + 1);
        let mut c2 = nu / std::f64::consts::PI;
        coeff.push(c2.sqrt());
        for k in 1..=kmax {
            c2 *= nu / k as f64;
            if !(c2.is_finite() && c2 > 0.0) {
                return Err(Error::BadBasisSpec(format!(
                    "monomial normalization degenerates at degree {k}"
                )));
            }
            coeff.push(c2.sqrt());
        }
        Ok(FockMonomialBasis { nu, kmax, coeff })
    }

    #[inline]
    pub fn nu(&self) -> f64 {
        self.nu
    }

    #[inline]
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// `sqrt(nu^{k+1} / (pi k!))`.
    #[inline]
    pub fn coefficient(&self, k: usize) -> f64 {
        self.coeff[k]
    }

    /// Squared Fock norm of the bare monomial `q^k`: `pi k! / nu^{k+1}`.
    #[inline]
    pub fn monomial_norm_sqr(&self, k: usize) -> f64 {
        1.0 / (self.coeff[k] * self.coeff[k])
    }

    /// `f_k(q)` for a full quaternion argument.
    pub fn monomial(&self, k: usize, q: Quaternion) -> Quaternion {
        q.powi(k).scale(self.coeff[k])
    }

    /// `f_k(z)` inside a slice.
    pub fn monomial_slice(&self, k: usize, z: SliceComplex) -> SliceComplex {
        let mut p = SliceComplex::new(1.0, 0.0, z.unit);
        for _ in 0..k {
            p = p.mul_same_slice(z);
        }
        p.scale(self.coeff[k])
    }
}

/// Closed-form Bargmann kernel `A(q, t)`, evaluated in the slice of `q`.
/// Real `q` carries no preferred slice; any unit gives the same value there.
pub fn bargmann_kernel(q: Quaternion, t: f64, nu: f64) -> Quaternion {
    let (a, b, unit) = slice_decompose(q);
    let unit = unit.unwrap_or(ImaginaryUnit::I);
    let re = -0.5 * nu * (a * a - b * b + t * t) + nu * std::f64::consts::SQRT_2 * a * t;
    let im = -nu * a * b + nu * std::f64::consts::SQRT_2 * b * t;
    let scale = (nu / std::f64::consts::PI).powf(0.75);
    slice_exp(SliceComplex::new(re, im, unit)).scale(scale).as_quaternion()
}

/// Truncated generating-function form `sum_{k <= kmax} f_k(q) psi_k(t)`;
/// the verification suites pin this against the closed form.
pub fn bargmann_kernel_series(q: Quaternion, t: f64, nu: f64, kmax: usize) -> Result<Quaternion> {
    let hermite = HermiteBasis::new(nu, kmax)?;
    let fock = FockMonomialBasis::new(nu, kmax)?;
    let psis = hermite.psi_all(t);
    let (a, b, unit) = slice_decompose(q);
    let unit = unit.unwrap_or(ImaginaryUnit::I);
    let z = SliceComplex::new(a, b, unit);
    // Accumulate in the slice; powers by running product.
    let mut pow = SliceComplex::new(1.0, 0.0, unit);
    let mut acc = SliceComplex::new(0.0, 0.0, unit);
    for k in 0..=kmax {
        let term = pow.scale(fock.coefficient(k) * psis[k]);
        acc = SliceComplex::new(acc.re + term.re, acc.im + term.im, unit);
        pow = pow.mul_same_slice(z);
    }
    Ok(acc.as_quaternion())
}
