//! Quaternion algebra, polar decomposition, and the slice-preserving
//! elementary functions (exponential, the two logarithm branches, real
//! powers) everything else builds on.
//!
//! A quaternion is written `q = w + x i + y j + z k` with the Hamilton
//! rules `i² = j² = k² = -1`, `ij = -ji = k`, `jk = -kj = i`,
//! `ki = -ik = j`. Every non-real `q` has a unique polar form
//! `q = r e^{Iθ} = r (cos θ + I sin θ)` with `r = |q|`,
//! `I = Im(q)/|Im(q)|` a unit imaginary and `θ ∈ (0, π)`; real
//! quaternions take `θ ∈ {0, π}` and have no distinguished axis.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};
use std::ops::{Add, Mul, Neg, Sub};

/// Tolerance used when validating that a `UnitImaginary` has unit norm.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// A quaternion with components `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

/// A unit purely imaginary quaternion: a point of the sphere 𝕊 that
/// labels the complex slice `L_I = ℝ + ℝI`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitImaginary<T> {
    x: T,
    y: T,
    z: T,
}

/// Polar decomposition `q = r (cos θ + axis sin θ)`.
///
/// `axis` is `None` exactly when `q` is real (θ is then 0 or π); the
/// imaginary direction of a real quaternion is undefined and we refuse
/// to fabricate one.
#[derive(Clone, Copy, Debug)]
pub struct PolarForm<T> {
    pub r: T,
    pub axis: Option<UnitImaginary<T>>,
    pub theta: T,
}

impl<T: Real> Quaternion<T> {
    #[inline]
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quaternion { w, x, y, z }
    }

    /// The real quaternion `t`.
    #[inline]
    pub fn from_real(t: T) -> Self {
        Quaternion::new(t, T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn zero() -> Self {
        Quaternion::from_real(T::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Quaternion::from_real(T::one())
    }

    /// Basis unit `i`.
    pub fn i() -> Self {
        Quaternion::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    /// Basis unit `j`.
    pub fn j() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    /// Basis unit `k`.
    pub fn k() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Real part `Re(q)`.
    #[inline]
    pub fn re(&self) -> T {
        self.w
    }

    /// Imaginary part as a 3-vector `(x, y, z)`.
    #[inline]
    pub fn im(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// `|Im(q)|`, overflow-safe.
    #[inline]
    pub fn im_norm(&self) -> T {
        scaled_norm(&[self.x, self.y, self.z])
    }

    /// True when the imaginary part is exactly zero.
    #[inline]
    pub fn is_real(&self) -> bool {
        self.x == T::zero() && self.y == T::zero() && self.z == T::zero()
    }

    /// Conjugate `q̄ = Re(q) - Im(q)`.
    #[inline]
    pub fn conjugate(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Module `|q| = sqrt(w² + x² + y² + z²)`, scaled to avoid overflow
    /// for components near the representable limit.
    #[inline]
    pub fn abs(&self) -> T {
        scaled_norm(&[self.w, self.x, self.y, self.z])
    }

    /// `|q|²`. May overflow where `abs` does not; callers that handle
    /// large values should prefer `abs`.
    #[inline]
    pub fn norm_sqr(&self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean inner product of ℝ⁴.
    #[inline]
    pub fn dot(&self, other: &Self) -> T {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Right scalar multiple `q·t` (= `t·q`, reals are central).
    #[inline]
    pub fn scale(&self, t: T) -> Self {
        Quaternion::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }

    /// Inverse `q⁻¹ = q̄ / |q|²`.
    ///
    /// Errors on `q = 0`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.abs();
        if n == T::zero() {
            return Err(Error::domain("inverse", "zero quaternion has no inverse"));
        }
        // q̄/|q|² computed as (q̄/|q|)/|q| to survive |q|² overflow.
        Ok(self.conjugate().scale(n.recip()).scale(n.recip()))
    }

    /// Polar decomposition `q = r e^{Iθ}`.
    ///
    /// Real inputs (including 0) set the real-axis flag (`axis = None`)
    /// with `θ = 0` for `w ≥ 0` and `θ = π` for `w < 0`.
    pub fn polar(&self) -> PolarForm<T> {
        let r = self.abs();
        if self.is_real() || r == T::zero() {
            let theta = if self.w < T::zero() { T::PI() } else { T::zero() };
            return PolarForm { r, axis: None, theta };
        }
        let axis = UnitImaginary::from_components_normalized(self.x, self.y, self.z)
            .expect("non-real quaternion has a nonzero imaginary part");
        let cos_theta = clamp_unit(self.w / r);
        PolarForm {
            r,
            axis: Some(axis),
            theta: cos_theta.acos(),
        }
    }

    /// Quaternionic exponential `e^q = e^{Re q} (cos|v| + (v/|v|) sin|v|)`
    /// with `v = Im(q)`; slicewise this is the complex exponential, and
    /// `|e^q| = e^{Re q}` always.
    ///
    /// Overflow of `e^{Re q}` produces infinite components, never a panic;
    /// reports surface non-finite moduli explicitly.
    pub fn exp(&self) -> Self {
        let vnorm = self.im_norm();
        let scale = self.w.exp();
        if vnorm == T::zero() {
            return Quaternion::from_real(scale);
        }
        let (s, c) = vnorm.sin_cos();
        let f = scale * s / vnorm;
        Quaternion::new(scale * c, self.x * f, self.y * f, self.z * f)
    }

    /// Principal logarithm
    /// `Log(q) = ln|q| + arccos(Re(q)/|q|) · Im(q)/|Im(q)|`,
    /// defined off the closed half-line `(-∞, 0]`; positive reals map to
    /// the real logarithm.
    pub fn principal_log(&self) -> Result<Self> {
        let r = self.abs();
        if self.is_real() {
            if self.w > T::zero() {
                return Ok(Quaternion::from_real(r.ln()));
            }
            return Err(Error::domain(
                "principal_log",
                "principal logarithm is undefined on the half-line (-inf, 0]",
            ));
        }
        let theta = clamp_unit(self.w / r).acos();
        let f = theta / self.im_norm();
        Ok(Quaternion::new(r.ln(), self.x * f, self.y * f, self.z * f))
    }

    /// Second logarithm branch
    /// `log(q) = ln|q| + [arccos(Re(q)/|q|) - π] · Im(q)/|Im(q)|`,
    /// defined off `[0, +∞)` and extended by continuity to the negative
    /// reals, where the bracket vanishes and `log(q) = ln|q|`.
    pub fn branch_log(&self) -> Result<Self> {
        let r = self.abs();
        if self.is_real() {
            if self.w < T::zero() {
                return Ok(Quaternion::from_real(r.ln()));
            }
            return Err(Error::domain(
                "branch_log",
                "second logarithm branch is undefined on the half-line [0, +inf)",
            ));
        }
        let theta = clamp_unit(self.w / r).acos() - T::PI();
        let f = theta / self.im_norm();
        Ok(Quaternion::new(r.ln(), self.x * f, self.y * f, self.z * f))
    }

    /// Real power `q^γ = e^{γ Log(q)}`; in polar form it maps
    /// `r e^{Iθ}` to `r^γ e^{Iγθ}`. Inherits the principal logarithm's
    /// excluded half-line.
    pub fn pow_real(&self, gamma: T) -> Result<Self> {
        let log = self
            .principal_log()
            .map_err(|_| Error::domain("pow", "q^gamma is undefined on the half-line (-inf, 0]"))?;
        Ok(log.scale(gamma).exp())
    }

    /// `ln|q|`, without forming `|q|` twice.
    #[inline]
    pub fn log_abs(&self) -> T {
        self.abs().ln()
    }

    /// True when every component is finite.
    #[inline]
    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Norm of a small vector with scaling by the largest component so that
/// squares cannot overflow prematurely.
fn scaled_norm<T: Real>(v: &[T]) -> T {
    let mut m = T::zero();
    for &c in v {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    if m == T::zero() || m.is_infinite() {
        return m;
    }
    let mut s = T::zero();
    for &c in v {
        let t = c / m;
        s = s + t * t;
    }
    m * s.sqrt()
}

#[inline]
fn clamp_unit<T: Real>(x: T) -> T {
    if x > T::one() {
        T::one()
    } else if x < -T::one() {
        -T::one()
    } else {
        x
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Quaternion<T>;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Quaternion<T>;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Quaternion<T>;
    #[inline]
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product; noncommutative.
impl<T: Real> Mul for Quaternion<T> {
    type Output = Quaternion<T>;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl<T: Real> UnitImaginary<T> {
    /// Build from components, normalizing; errors when the norm is more
    /// than `UNIT_NORM_TOL` away from 1.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let n = scaled_norm(&[x, y, z]);
        if (n - T::one()).abs() > real(UNIT_NORM_TOL) {
            return Err(Error::InvalidInput(format!(
                "unit imaginary must have norm 1, got {n}"
            )));
        }
        Ok(UnitImaginary {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// Build from any nonzero imaginary vector by normalizing.
    pub fn from_components_normalized(x: T, y: T, z: T) -> Result<Self> {
        let n = scaled_norm(&[x, y, z]);
        if n == T::zero() {
            return Err(Error::InvalidInput(
                "cannot normalize the zero imaginary vector".into(),
            ));
        }
        Ok(UnitImaginary {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    pub fn i() -> Self {
        UnitImaginary { x: T::one(), y: T::zero(), z: T::zero() }
    }

    pub fn j() -> Self {
        UnitImaginary { x: T::zero(), y: T::one(), z: T::zero() }
    }

    pub fn k() -> Self {
        UnitImaginary { x: T::zero(), y: T::zero(), z: T::one() }
    }

    #[inline]
    pub fn components(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// View as a purely imaginary quaternion.
    #[inline]
    pub fn as_quaternion(&self) -> Quaternion<T> {
        Quaternion::new(T::zero(), self.x, self.y, self.z)
    }

    /// Inner product of imaginary parts (cos of the angle between axes).
    #[inline]
    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Antipode `-I` (labels the same slice `L_I`).
    #[inline]
    pub fn antipode(&self) -> Self {
        UnitImaginary { x: -self.x, y: -self.y, z: -self.z }
    }

    /// Cross product; for orthogonal unit axes this equals the
    /// quaternion product `I·J`.
    pub fn cross(&self, other: &Self) -> Quaternion<T> {
        Quaternion::new(
            T::zero(),
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// A deterministic unit imaginary orthogonal to `self`: cross with
    /// the coordinate axis least aligned with it (ties broken by x,y,z
    /// order).
    pub fn orthogonal(&self) -> Self {
        let a = [self.x.abs(), self.y.abs(), self.z.abs()];
        let mut pick = 0usize;
        if a[1] < a[pick] {
            pick = 1;
        }
        if a[2] < a[pick] {
            pick = 2;
        }
        let e = match pick {
            0 => UnitImaginary::i(),
            1 => UnitImaginary::j(),
            _ => UnitImaginary::k(),
        };
        let c = self.cross(&e);
        UnitImaginary::from_components_normalized(c.x, c.y, c.z)
            .expect("cross with the least-aligned axis is nonzero")
    }
}

/// The slice point `x + yI` as a quaternion.
#[inline]
pub fn slice_point<T: Real>(x: T, y: T, axis: &UnitImaginary<T>) -> Quaternion<T> {
    let [ix, iy, iz] = axis.components();
    Quaternion::new(x, y * ix, y * iy, y * iz)
}

/// `r e^{Iθ} = r(cos θ + I sin θ)`.
#[inline]
pub fn from_polar<T: Real>(r: T, axis: &UnitImaginary<T>, theta: T) -> Quaternion<T> {
    let (s, c) = theta.sin_cos();
    slice_point(r * c, r * s, axis)
}

impl<T: Real> PolarForm<T> {
    /// Rebuild `r (cos θ + axis sin θ)`; real-axis values reconstruct as
    /// `±r` from `θ ∈ {0, π}`.
    pub fn reconstruct(&self) -> Quaternion<T> {
        match &self.axis {
            Some(axis) => from_polar(self.r, axis, self.theta),
            None => Quaternion::from_real(self.r * self.theta.cos()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<f64>;

    fn assert_close(a: Q, b: Q, tol: f64) {
        assert!((a - b).abs() <= tol, "{a:?} !~ {b:?}");
    }

    /// Structure-constant table oracle for the Hamilton product:
    /// basis e0..e3 = 1, i, j, k with e_a e_b = sum_c sign * e_c.
    fn table_mul(p: Q, q: Q) -> Q {
        // table[a][b] = (component index, sign)
        const TABLE: [[(usize, f64); 4]; 4] = [
            [(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
            [(1, 1.0), (0, -1.0), (3, 1.0), (2, -1.0)],
            [(2, 1.0), (3, -1.0), (0, -1.0), (1, 1.0)],
            [(3, 1.0), (2, 1.0), (1, -1.0), (0, -1.0)],
        ];
        let pa = [p.w, p.x, p.y, p.z];
        let qa = [q.w, q.x, q.y, q.z];
        let mut out = [0.0f64; 4];
        for a in 0..4 {
            for b in 0..4 {
                let (c, s) = TABLE[a][b];
                out[c] += s * pa[a] * qa[b];
            }
        }
        Q::new(out[0], out[1], out[2], out[3])
    }

    #[test]
    fn hamilton_table() {
        assert_eq!(Q::i() * Q::j(), Q::k());
        assert_eq!(Q::j() * Q::i(), -Q::k());
        assert_eq!(Q::j() * Q::k(), Q::i());
        assert_eq!(Q::k() * Q::i(), Q::j());
        assert_eq!(Q::i() * Q::i(), -Q::one());
        assert_eq!(Q::one() * Q::new(0.5, -1.0, 2.0, 3.0), Q::new(0.5, -1.0, 2.0, 3.0));
    }

    #[test]
    fn product_matches_table_oracle() {
        // (i+j)(i-j) = -2k, expanded by the multiplication table.
        let p = Q::i() + Q::j();
        let q = Q::i() - Q::j();
        let expect = table_mul(p, q);
        assert_eq!(expect, Q::k().scale(-2.0));
        assert_eq!(p * q, expect);

        let a = Q::new(0.3, -1.2, 0.7, 2.5);
        let b = Q::new(-0.8, 0.1, 1.9, -0.4);
        assert_close(a * b, table_mul(a, b), 1e-14);
    }

    #[test]
    fn inverse_examples() {
        assert_close(Q::from_real(2.0).inverse().unwrap(), Q::from_real(0.5), 0.0);
        assert_close(Q::i().inverse().unwrap(), -Q::i(), 0.0);
        // (1+i+j+k)^{-1} = (1-i-j-k)/4 since |q|^2 = 4.
        let q = Q::new(1.0, 1.0, 1.0, 1.0);
        assert_close(q.inverse().unwrap(), Q::new(0.25, -0.25, -0.25, -0.25), 1e-15);
        assert_close(q * q.inverse().unwrap(), Q::one(), 1e-12);
        assert!(Q::zero().inverse().is_err());
    }

    #[test]
    fn polar_examples() {
        // 1+i: r = sqrt(2), axis i, theta = arccos(1/sqrt 2) = pi/4.
        let p = (Q::one() + Q::i()).polar();
        assert!((p.r - 2f64.sqrt()).abs() < 1e-15);
        assert!((p.theta - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let axis = p.axis.unwrap();
        assert!((axis.dot(&UnitImaginary::i()) - 1.0).abs() < 1e-15);

        let five = Q::from_real(5.0).polar();
        assert_eq!(five.r, 5.0);
        assert!(five.axis.is_none());
        assert_eq!(five.theta, 0.0);

        let neg = Q::from_real(-3.0).polar();
        assert_eq!(neg.r, 3.0);
        assert!(neg.axis.is_none());
        assert_eq!(neg.theta, std::f64::consts::PI);

        let zero = Q::zero().polar();
        assert_eq!(zero.r, 0.0);
        assert!(zero.axis.is_none());
    }

    #[test]
    fn polar_roundtrip() {
        let samples = [
            Q::new(0.3, -1.2, 0.7, 2.5),
            Q::new(-4.0, 0.0, 1e-8, 0.0),
            Q::new(7.0, 0.0, 0.0, 0.0),
            Q::new(-2.5, 0.0, 0.0, 0.0),
        ];
        for q in samples {
            let p = q.polar();
            let back = p.reconstruct();
            assert!((q - back).abs() <= 1e-12 * q.abs().max(1.0), "{q:?} -> {back:?}");
        }
    }

    #[test]
    fn principal_log_examples() {
        let e = Q::from_real(std::f64::consts::E);
        assert_close(e.principal_log().unwrap(), Q::one(), 1e-15);
        assert_close(
            Q::i().principal_log().unwrap(),
            Q::i().scale(std::f64::consts::FRAC_PI_2),
            1e-15,
        );
        assert!(Q::from_real(-1.0).principal_log().is_err());
        assert!(Q::zero().principal_log().is_err());
    }

    #[test]
    fn branch_log_examples() {
        // arccos(0) - pi = -pi/2 on the slice of i.
        assert_close(
            Q::i().branch_log().unwrap(),
            Q::i().scale(-std::f64::consts::FRAC_PI_2),
            1e-15,
        );
        // Continuity extension at negative reals: bracket vanishes.
        assert_close(Q::from_real(-2.0).branch_log().unwrap(), Q::from_real(2f64.ln()), 1e-15);
        assert!(Q::from_real(3.0).branch_log().is_err());
        assert!(Q::zero().branch_log().is_err());
    }

    #[test]
    fn exp_examples() {
        assert_close(Q::zero().exp(), Q::one(), 0.0);
        // Euler identity on the slice of i.
        assert_close(Q::i().scale(std::f64::consts::PI).exp(), -Q::one(), 1e-15);
        // e^{1 + j pi/2} = e * j.
        let q = Q::one() + Q::j().scale(std::f64::consts::FRAC_PI_2);
        assert_close(q.exp(), Q::j().scale(std::f64::consts::E), 1e-14);
        // |e^q| = e^{Re q}.
        let q = Q::new(0.7, -3.0, 2.0, 0.5);
        assert!((q.exp().abs() - 0.7f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn exp_log_roundtrip() {
        let samples = [
            Q::new(1.0, 1.0, 0.0, 0.0),
            Q::new(0.2, -0.4, 1.5, 2.0),
            Q::from_real(3.5),
        ];
        for q in samples {
            let back = q.principal_log().unwrap().exp();
            assert!((q - back).abs() <= 1e-10 * q.abs(), "{q:?} -> {back:?}");
        }
    }

    #[test]
    fn pow_examples() {
        assert_close(Q::from_real(4.0).pow_real(0.5).unwrap(), Q::from_real(2.0), 1e-14);
        assert_close(Q::i().pow_real(2.0).unwrap(), -Q::one(), 1e-14);
        assert!(Q::from_real(-4.0).pow_real(0.5).is_err());

        // Polar law: (r e^{I theta})^gamma = r^gamma e^{I gamma theta}.
        let axis = UnitImaginary::from_components_normalized(1.0, -2.0, 0.5).unwrap();
        let (r, theta, gamma): (f64, f64, f64) = (2.3, 1.1, 0.7);
        let q = from_polar(r, &axis, theta);
        let expect = from_polar(r.powf(gamma), &axis, gamma * theta);
        assert_close(q.pow_real(gamma).unwrap(), expect, 1e-13);
    }

    #[test]
    fn pow_identity_and_zero() {
        let q = Q::new(0.6, 1.0, -0.2, 0.4);
        assert!((q.pow_real(1.0).unwrap() - q).abs() <= 1e-12 * q.abs());
        assert!((q.pow_real(0.0).unwrap() - Q::one()).abs() <= 1e-12);
    }

    #[test]
    fn abs_survives_huge_components() {
        let q = Q::new(1e200, -3e200, 0.0, 2e200);
        let a = q.abs();
        assert!(a.is_finite());
        assert!((a / 1e200 - 14f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_axis_is_orthogonal() {
        for axis in [
            UnitImaginary::<f64>::i(),
            UnitImaginary::k(),
            UnitImaginary::from_components_normalized(0.3, -0.4, 0.86).unwrap(),
        ] {
            let perp = axis.orthogonal();
            assert!(axis.dot(&perp).abs() < 1e-12);
            assert!((perp.as_quaternion().abs() - 1.0).abs() < 1e-12);
        }
    }
}
