//! Quaternions, imaginary units and slice-complex arithmetic.
//!
//! Everything downstream works inside a *slice*: the plane R + R*I spanned by
//! 1 and one imaginary unit I. [`SliceComplex`] keeps a value pinned to its
//! slice so that exponentials and products stay commutative and exact;
//! [`Quaternion`] is the full algebra used wherever signals genuinely mix
//! slices.

use crate::error::{Error, Result, UNIT_ORTHO_TOL};

/// Quaternion in scalar-first layout: `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Real quaternion `r + 0i + 0j + 0k`.
    #[inline]
    pub const fn real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of R^4; `dot(p, q) = Re(p * conj(q))`.
    #[inline]
    pub fn dot(self, o: Quaternion) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Scalar part.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Vector (imaginary) part as a quaternion with zero scalar part.
    #[inline]
    pub fn im(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Integer power by repeated multiplication (exact associativity order:
    /// left-to-right), sufficient for the series degrees used here.
    pub fn powi(self, n: usize) -> Self {
        let mut acc = Quaternion::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl std::ops::Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product, `ij = k` convention.
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (o.w, o.x, o.y, o.z);
        Quaternion::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

impl std::ops::Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl std::ops::AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

/// Hamilton product as a free function, for call sites that read better
/// without operator sugar.
#[inline]
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

/// `conj(g) * f` with a fixed grouping of partial products chosen so that
/// `conj_mul(g, f) == conj(conj_mul(f, g))` holds *bitwise*: every group maps
/// onto itself under the swap because IEEE products commute exactly and
/// `-(a - b) == (b - a)` exactly. Inner products built on this satisfy their
/// conjugate-symmetry law with equality, not just to rounding.
#[inline]
pub fn conj_mul(g: Quaternion, f: Quaternion) -> Quaternion {
    Quaternion::new(
        (g.w * f.w + g.x * f.x) + (g.y * f.y + g.z * f.z),
        (g.w * f.x - g.x * f.w) + (g.z * f.y - g.y * f.z),
        (g.w * f.y - g.y * f.w) + (g.x * f.z - g.z * f.x),
        (g.w * f.z - g.z * f.w) + (g.y * f.x - g.x * f.y),
    )
}

// ---------------------------------------------------------------------------
// Imaginary units
// ---------------------------------------------------------------------------

/// A point of the unit sphere of imaginary quaternions; squares to -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryUnit {
    ux: f64,
    uy: f64,
    uz: f64,
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit { ux: 1.0, uy: 0.0, uz: 0.0 };
    pub const J: ImaginaryUnit = ImaginaryUnit { ux: 0.0, uy: 1.0, uz: 0.0 };
    pub const K: ImaginaryUnit = ImaginaryUnit { ux: 0.0, uy: 0.0, uz: 1.0 };

    /// Normalizes `(x, y, z)` to unit length. Fails on zero or non-finite
    /// input.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n < 1e-300 {
            return Err(Error::DegenerateUnit { x, y, z });
        }
        Ok(ImaginaryUnit { ux: x / n, uy: y / n, uz: z / n })
    }

    #[inline]
    pub fn components(self) -> (f64, f64, f64) {
        (self.ux, self.uy, self.uz)
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.ux, self.uy, self.uz)
    }

    /// Euclidean dot product of the two direction vectors.
    #[inline]
    pub fn dot(self, o: ImaginaryUnit) -> f64 {
        self.ux * o.ux + self.uy * o.uy + self.uz * o.uz
    }

    /// Some unit orthogonal to `self` (used to complete symplectic pairs).
    pub fn any_orthogonal(self) -> ImaginaryUnit {
        // Cross against the axis the unit is least aligned with.
        let (cx, cy, cz) = if self.ux.abs() <= self.uy.abs() && self.ux.abs() <= self.uz.abs() {
            (1.0, 0.0, 0.0)
        } else if self.uy.abs() <= self.uz.abs() {
            (0.0, 1.0, 0.0)
        } else {
            (0.0, 0.0, 1.0)
        };
        let ox = self.uy * cz - self.uz * cy;
        let oy = self.uz * cx - self.ux * cz;
        let oz = self.ux * cy - self.uy * cx;
        ImaginaryUnit::new(ox, oy, oz).expect("cross product of a unit with a non-parallel axis")
    }
}

// ---------------------------------------------------------------------------
// Slice-complex values
// ---------------------------------------------------------------------------

/// `re + im * I` confined to the slice of the unit `I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceComplex {
    pub re: f64,
    pub im: f64,
    pub unit: ImaginaryUnit,
}

impl SliceComplex {
    #[inline]
    pub const fn new(re: f64, im: f64, unit: ImaginaryUnit) -> Self {
        SliceComplex { re, im, unit }
    }

    #[inline]
    pub fn conj(self) -> Self {
        SliceComplex::new(self.re, -self.im, self.unit)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Embedding into the full algebra.
    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        let (ux, uy, uz) = self.unit.components();
        Quaternion::new(self.re, self.im * ux, self.im * uy, self.im * uz)
    }

    /// Product of two values in the *same* slice; commutative there.
    /// Callers owning values in distinct slices must go through
    /// [`Quaternion`] multiplication instead.
    #[inline]
    pub fn mul_same_slice(self, o: SliceComplex) -> SliceComplex {
        debug_assert!(self.unit == o.unit, "mul_same_slice across slices");
        SliceComplex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.unit,
        )
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        SliceComplex::new(self.re * s, self.im * s, self.unit)
    }
}

/// Slice exponential: `exp(x + I y) = e^x (cos y + I sin y)`.
#[inline]
pub fn slice_exp(z: SliceComplex) -> SliceComplex {
    let r = z.re.exp();
    let (s, c) = z.im.sin_cos();
    SliceComplex::new(r * c, r * s, z.unit)
}

/// Splits `q = x + I y` with `y >= 0`. Real quaternions (vector part of
/// exactly zero length) carry no preferred axis, hence `None` for the unit.
pub fn slice_decompose(q: Quaternion) -> (f64, f64, Option<ImaginaryUnit>) {
    let v = q.im();
    let y = v.norm();
    if y == 0.0 {
        return (q.w, 0.0, None);
    }
    let unit = ImaginaryUnit::new(v.x, v.y, v.z).expect("nonzero vector part");
    (q.w, y, Some(unit))
}

/// Symplectic decomposition `q = z1 + z2 * J` with `z1, z2` in the slice of
/// `I`. Requires `I` and `J` orthogonal; `{1, I, J, IJ}` is then an
/// orthonormal real basis of the algebra and the components are Euclidean
/// projections onto it.
pub fn symplectic_split(
    q: Quaternion,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Result<(SliceComplex, SliceComplex)> {
    let dot = i.dot(j);
    if dot.abs() > UNIT_ORTHO_TOL {
        return Err(Error::NonOrthogonalUnits { dot });
    }
    let qi = i.as_quaternion();
    let qj = j.as_quaternion();
    let qij = qi * qj;
    let z1 = SliceComplex::new(q.dot(Quaternion::ONE), q.dot(qi), i);
    let z2 = SliceComplex::new(q.dot(qj), q.dot(qij), i);
    Ok((z1, z2))
}

/// Recomposes the output of [`symplectic_split`]: `z1 + z2 * J`.
pub fn symplectic_join(z1: SliceComplex, z2: SliceComplex, j: ImaginaryUnit) -> Quaternion {
    z1.as_quaternion() + z2.as_quaternion() * j.as_quaternion()
}
