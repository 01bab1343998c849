//! The domain families the boundary-to-interior bounds live on.
//!
//! All sets are open; membership uses strict inequalities with a small
//! guard (`MEMBERSHIP_GUARD`) so that exactly-parametrized boundary
//! points never flip inside through rounding. Boundary points are
//! produced only by parametrization ([`Domain::boundary_sample`]),
//! never by membership probing.
//!
//! Angular and strip domains carry caller-supplied per-slice profiles.
//! Since `L_I = L_{-I}` as sets, a profile only describes a coherent
//! domain when it is antipodally consistent: `φ_{-I} = φ_I` and
//! `ζ_{-I} ≡ -ζ_I (mod 2π)` (for strips, the reflected line). The
//! builtin profiles satisfy this; custom ones are the caller's
//! responsibility and [`real_halfline_witness`] rejects violations it
//! can sample.

use crate::error::{Error, Result};
use crate::quaternion::{from_polar, slice_point, Quaternion, UnitImaginary};
use crate::scalar::{real, Real};
use std::fmt;
use std::sync::Arc;

/// Guard subtracted from strict membership thresholds so boundary
/// parametrizations are deterministically outside.
pub const MEMBERSHIP_GUARD: f64 = 1e-12;

/// Number of sphere directions used when a membership test for a real
/// point must hold on every slice.
const REAL_CHECK_AXES: usize = 32;

/// A per-slice real-valued profile `I ↦ value`.
#[derive(Clone)]
pub enum Profile<T> {
    /// Constant over the sphere.
    Constant(T),
    /// `amp · (I·axis)`: odd in `I`, the builtin perturbation shape for
    /// bisector profiles.
    AxisLinear { amp: T, axis: UnitImaginary<T> },
    /// `base + amp · (I·axis)²`: even in `I`, the builtin perturbation
    /// shape for opening/width profiles.
    AxisBump { base: T, amp: T, axis: UnitImaginary<T> },
    /// Arbitrary callable (library interface only; not expressible in
    /// the domain file format).
    Custom(Arc<dyn Fn(&UnitImaginary<T>) -> T + Send + Sync>),
}

impl<T: Real> Profile<T> {
    pub fn eval(&self, axis: &UnitImaginary<T>) -> T {
        match self {
            Profile::Constant(v) => *v,
            Profile::AxisLinear { amp, axis: a } => *amp * axis.dot(a),
            Profile::AxisBump { base, amp, axis: a } => {
                let c = axis.dot(a);
                *base + *amp * c * c
            }
            Profile::Custom(f) => f(axis),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Profile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Constant(v) => write!(f, "Constant({v:?})"),
            Profile::AxisLinear { amp, .. } => write!(f, "AxisLinear(amp={amp:?})"),
            Profile::AxisBump { base, amp, .. } => {
                write!(f, "AxisBump(base={base:?}, amp={amp:?})")
            }
            Profile::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// A per-slice line `ℓ_I` in `L_I`, as (point, unit direction) in the
/// coordinates of the basis `{1, I}`.
#[derive(Clone)]
pub enum LineProfile<T> {
    /// The same coordinates on every slice. The only antipodally
    /// consistent constant lines are those through the real axis
    /// (`point.1 = 0`, `dir.1 = 0`), which is what the file format
    /// offers; other constants are accepted from the library but are
    /// the caller's responsibility.
    Constant { point: (T, T), dir: (T, T) },
    Custom(Arc<dyn Fn(&UnitImaginary<T>) -> ((T, T), (T, T)) + Send + Sync>),
}

impl<T: Real> LineProfile<T> {
    /// The real axis of every slice.
    pub fn real_axis() -> Self {
        LineProfile::Constant {
            point: (T::zero(), T::zero()),
            dir: (T::one(), T::zero()),
        }
    }

    /// (point, normalized direction) on the slice of `axis`.
    pub fn eval(&self, axis: &UnitImaginary<T>) -> ((T, T), (T, T)) {
        let ((px, py), (ux, uy)) = match self {
            LineProfile::Constant { point, dir } => (*point, *dir),
            LineProfile::Custom(f) => f(axis),
        };
        let n = ux.hypot(uy);
        ((px, py), (ux / n, uy / n))
    }
}

impl<T: fmt::Debug> fmt::Debug for LineProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineProfile::Constant { point, dir } => {
                write!(f, "Line(point={point:?}, dir={dir:?})")
            }
            LineProfile::Custom(_) => write!(f, "Line(custom)"),
        }
    }
}

/// The open ball `B(center, radius)`.
#[derive(Clone, Debug)]
pub struct BallDomain<T> {
    pub center: Quaternion<T>,
    pub radius: T,
}

/// The circular cone `C(φ) = { r e^{Iθ} : r > 0, |θ| < φ/2, I ∈ 𝕊 }`,
/// `0 < φ < 2π`.
#[derive(Clone, Debug)]
pub struct ConeDomain<T> {
    pub phi: T,
}

/// An angular domain: every slice is the angle
/// `{ r e^{I(ζ_I + θ)} : r > 0, |θ| < φ_I/2 }`.
#[derive(Clone, Debug)]
pub struct AngularDomain<T> {
    pub zeta: Profile<T>,
    pub phi: Profile<T>,
}

/// A strip domain: every slice is `{ z ∈ L_I : dist(z, ℓ_I) < γ_I/2 }`.
#[derive(Clone, Debug)]
pub struct StripDomain<T> {
    pub line: LineProfile<T>,
    pub gamma: Profile<T>,
}

/// One of the supported domain families. `Entire` stands for all of ℍ
/// and is used for entire-function growth estimation; it has no finite
/// boundary.
#[derive(Clone, Debug)]
pub enum Domain<T> {
    Ball(BallDomain<T>),
    Cone(ConeDomain<T>),
    Angular(AngularDomain<T>),
    Strip(StripDomain<T>),
    Entire,
}

/// A shell sample: a point of `closure(Ω) ∩ {|q| = r}` with its grid
/// indices, used for deterministic tie-breaking.
#[derive(Clone, Copy, Debug)]
pub struct ShellPoint<T> {
    pub q: Quaternion<T>,
    pub axis_idx: usize,
    pub theta_idx: usize,
}

/// A boundary point paired with its inward-offset companion (the
/// "limsup" proxy when the function is not defined on the boundary
/// itself).
#[derive(Clone, Copy, Debug)]
pub struct BoundaryPair<T> {
    pub on_boundary: Quaternion<T>,
    pub inset: Quaternion<T>,
    pub axis_idx: usize,
    pub theta_idx: usize,
}

/// Supremum estimate over the sphere with the value at the previous
/// refinement level as a convergence diagnostic.
#[derive(Clone, Copy, Debug)]
pub struct SupEstimate<T> {
    pub value: T,
    pub previous: T,
    pub n_axes: usize,
}

/// Grid-certified slice-domain diagnostics.
#[derive(Clone, Debug)]
pub struct SliceDomainCheck<T> {
    /// Real point found and every sampled slice was grid-connected.
    pub verdict: bool,
    pub real_point: Option<T>,
    pub slices_checked: usize,
    /// Indices (into the axis grid) of slices that were empty or
    /// disconnected at this resolution.
    pub bad_slices: Vec<usize>,
    pub resolution: usize,
}

/// Result of the search for a slice containing a real half line.
#[derive(Clone, Debug)]
pub enum HalfLineWitness<T> {
    Found { axis: UnitImaginary<T>, distance: T },
    NotFound { best_axis: UnitImaginary<T>, best_distance: T },
}

/// Deterministic, seedless low-discrepancy sphere grid (Fibonacci
/// spiral). Never places points at the poles, so normalization is safe.
pub fn sphere_grid<T: Real>(n: usize) -> Vec<UnitImaginary<T>> {
    assert!(n >= 1, "sphere grid needs at least one point");
    let golden_angle = real::<T>(std::f64::consts::PI * (3.0 - 5f64.sqrt()));
    let two = real::<T>(2.0);
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        let mf = real::<T>(m as f64);
        let z = T::one() - (two * mf + T::one()) / real::<T>(n as f64);
        let rho = (T::one() - z * z).sqrt();
        let ang = golden_angle * mf;
        let (s, c) = ang.sin_cos();
        out.push(
            UnitImaginary::from_components_normalized(rho * c, rho * s, z)
                .expect("spiral points avoid the poles"),
        );
    }
    out
}

/// Distance on the circle between angles `a` and `b` (both in radians),
/// in `[0, π]`.
pub fn circ_dist<T: Real>(a: T, b: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut d = (a - b) % two_pi;
    if d < T::zero() {
        d = d + two_pi;
    }
    if d > T::PI() {
        d = two_pi - d;
    }
    d
}

/// Canonical slice coordinates of `q`: the axis with positive imaginary
/// coordinate, `x = Re q`, `y = |Im q| > 0`. `None` for real `q`.
fn canonical_slice<T: Real>(q: &Quaternion<T>) -> Option<(UnitImaginary<T>, T, T)> {
    if q.is_real() {
        return None;
    }
    let [ix, iy, iz] = q.im();
    let axis = UnitImaginary::from_components_normalized(ix, iy, iz).ok()?;
    Some((axis, q.re(), q.im_norm()))
}

fn angle_of<T: Real>(x: T, y: T) -> T {
    y.atan2(x)
}

/// Signed distance from slice point `(x, y)` to the line `(p, u)`
/// (u assumed unit): the 2D cross product `(z - p) × u`.
fn line_signed_dist<T: Real>(x: T, y: T, p: (T, T), u: (T, T)) -> T {
    (x - p.0) * u.1 - (y - p.1) * u.0
}

impl<T: Real> ConeDomain<T> {
    pub fn new(phi: T) -> Result<Self> {
        if phi <= T::zero() || phi >= T::PI() + T::PI() {
            return Err(Error::InvalidInput(format!(
                "cone opening must satisfy 0 < phi < 2*pi, got {phi}"
            )));
        }
        Ok(ConeDomain { phi })
    }
}

impl<T: Real> BallDomain<T> {
    pub fn new(center: Quaternion<T>, radius: T) -> Result<Self> {
        if radius <= T::zero() {
            return Err(Error::InvalidInput("ball radius must be positive".into()));
        }
        Ok(BallDomain { center, radius })
    }
}

impl<T: Real> Domain<T> {
    pub fn cone(phi: T) -> Result<Self> {
        Ok(Domain::Cone(ConeDomain::new(phi)?))
    }

    pub fn ball(center: Quaternion<T>, radius: T) -> Result<Self> {
        Ok(Domain::Ball(BallDomain::new(center, radius)?))
    }

    pub fn angular(zeta: Profile<T>, phi: Profile<T>) -> Self {
        Domain::Angular(AngularDomain { zeta, phi })
    }

    pub fn strip(line: LineProfile<T>, gamma: Profile<T>) -> Self {
        Domain::Strip(StripDomain { line, gamma })
    }

    /// True for the unbounded families (everything except balls).
    pub fn is_unbounded(&self) -> bool {
        !matches!(self, Domain::Ball(_))
    }

    /// Strict membership in the open set.
    ///
    /// Real points of angular/strip domains must lie in every slice and
    /// are checked against a fixed internal axis grid.
    pub fn contains(&self, q: &Quaternion<T>) -> bool {
        let guard = real::<T>(MEMBERSHIP_GUARD);
        match self {
            Domain::Entire => true,
            Domain::Ball(b) => {
                let d = (*q - b.center).abs();
                d < b.radius - guard * T::one().max(b.radius)
            }
            Domain::Cone(c) => {
                if q.abs() == T::zero() {
                    return false;
                }
                let theta = q.polar().theta;
                theta < c.phi / real::<T>(2.0) - guard
            }
            Domain::Angular(a) => match canonical_slice(q) {
                Some((axis, x, y)) => {
                    let theta = angle_of(x, y);
                    angular_slice_contains(a, &axis, theta, guard)
                }
                None => {
                    if q.abs() == T::zero() {
                        return false;
                    }
                    let theta = if q.w > T::zero() { T::zero() } else { T::PI() };
                    sphere_grid::<T>(REAL_CHECK_AXES)
                        .iter()
                        .all(|axis| angular_slice_contains(a, axis, theta, guard))
                }
            },
            Domain::Strip(s) => match canonical_slice(q) {
                Some((axis, x, y)) => strip_slice_contains(s, &axis, x, y, guard),
                None => sphere_grid::<T>(REAL_CHECK_AXES)
                    .iter()
                    .all(|axis| strip_slice_contains(s, axis, q.w, T::zero(), guard)),
            },
        }
    }

    /// Deterministic parametrized boundary points "at radius r": for
    /// cones and angular domains the two bounding rays at modulus `r`
    /// per sampled slice; for strips the two bounding lines sampled at
    /// parameter `t ∈ [-r, r]`; for balls the boundary sphere (`r` is
    /// ignored, the sphere is the whole boundary).
    pub fn boundary_sample(&self, r: T, n_theta: usize, n_axis: usize) -> Result<Vec<Quaternion<T>>> {
        Ok(self
            .boundary_pairs(r, n_theta, n_axis, T::zero())?
            .into_iter()
            .map(|p| p.on_boundary)
            .collect())
    }

    /// Boundary points paired with companions displaced `inward` (an
    /// absolute distance) toward the interior.
    pub fn boundary_pairs(
        &self,
        r: T,
        n_theta: usize,
        n_axis: usize,
        inward: T,
    ) -> Result<Vec<BoundaryPair<T>>> {
        if r <= T::zero() {
            return Err(Error::InvalidInput("boundary sampling requires r > 0".into()));
        }
        if n_axis == 0 {
            return Err(Error::InvalidInput("need at least one axis".into()));
        }
        let axes = sphere_grid::<T>(n_axis);
        let mut out = Vec::new();
        match self {
            Domain::Entire => {
                return Err(Error::InvalidInput(
                    "the whole space has no finite boundary to sample".into(),
                ))
            }
            Domain::Cone(c) => {
                let half = c.phi / real::<T>(2.0);
                let d_theta = inward / r;
                for (ai, axis) in axes.iter().enumerate() {
                    for (ti, sign) in [T::one(), -T::one()].into_iter().enumerate() {
                        out.push(BoundaryPair {
                            on_boundary: from_polar(r, axis, sign * half),
                            inset: from_polar(r, axis, sign * (half - d_theta)),
                            axis_idx: ai,
                            theta_idx: ti,
                        });
                    }
                }
            }
            Domain::Angular(a) => {
                let d_theta = inward / r;
                for (ai, axis) in axes.iter().enumerate() {
                    let zeta = a.zeta.eval(axis);
                    let half = a.phi.eval(axis) / real::<T>(2.0);
                    for (ti, sign) in [T::one(), -T::one()].into_iter().enumerate() {
                        out.push(BoundaryPair {
                            on_boundary: from_polar(r, axis, zeta + sign * half),
                            inset: from_polar(r, axis, zeta + sign * (half - d_theta)),
                            axis_idx: ai,
                            theta_idx: ti,
                        });
                    }
                }
            }
            Domain::Ball(b) => {
                if n_theta < 2 {
                    return Err(Error::InvalidInput("ball boundary needs n_theta >= 2".into()));
                }
                for (ai, axis) in axes.iter().enumerate() {
                    for ti in 0..n_theta {
                        let theta = T::PI() * real::<T>(ti as f64) / real::<T>((n_theta - 1) as f64);
                        let dir = from_polar(T::one(), axis, theta);
                        out.push(BoundaryPair {
                            on_boundary: b.center + dir.scale(b.radius),
                            inset: b.center + dir.scale(b.radius - inward),
                            axis_idx: ai,
                            theta_idx: ti,
                        });
                    }
                }
            }
            Domain::Strip(s) => {
                if n_theta < 2 {
                    return Err(Error::InvalidInput("strip boundary needs n_theta >= 2".into()));
                }
                for (ai, axis) in axes.iter().enumerate() {
                    let ((px, py), (ux, uy)) = s.line.eval(axis);
                    let half = s.gamma.eval(axis) / real::<T>(2.0);
                    // Normal to the line inside the slice: u rotated by π/2.
                    let (nx, ny) = (-uy, ux);
                    for ti in 0..n_theta {
                        let t = lerp(-r, r, ti, n_theta);
                        for (si, sign) in [T::one(), -T::one()].into_iter().enumerate() {
                            let bx = px + t * ux + sign * half * nx;
                            let by = py + t * uy + sign * half * ny;
                            let ix = px + t * ux + sign * (half - inward) * nx;
                            let iy = py + t * uy + sign * (half - inward) * ny;
                            out.push(BoundaryPair {
                                on_boundary: slice_point(bx, by, axis),
                                inset: slice_point(ix, iy, axis),
                                axis_idx: ai,
                                theta_idx: 2 * ti + si,
                            });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Samples of `closure(Ω) ∩ {|q| = r}`, including the boundary rays,
    /// on an `n_theta × n_axis` grid. This is the grid behind the radial
    /// maximum modulus.
    pub fn shell_samples(&self, r: T, n_theta: usize, n_axis: usize) -> Result<Vec<ShellPoint<T>>> {
        self.shell_samples_inset(r, n_theta, n_axis, T::zero())
    }

    /// Like [`Domain::shell_samples`] but with the angular range (resp.
    /// strip width) shrunk by the absolute distance `inward`, producing
    /// interior points only. `inward = 0` reproduces the closure grid.
    pub fn shell_samples_inset(
        &self,
        r: T,
        n_theta: usize,
        n_axis: usize,
        inward: T,
    ) -> Result<Vec<ShellPoint<T>>> {
        if r <= T::zero() {
            return Err(Error::InvalidInput("shell sampling requires r > 0".into()));
        }
        if n_theta < 2 || n_axis == 0 {
            return Err(Error::InvalidInput(
                "shell sampling needs n_theta >= 2 and n_axis >= 1".into(),
            ));
        }
        let axes = sphere_grid::<T>(n_axis);
        let mut out = Vec::new();
        match self {
            Domain::Entire => {
                for (ai, axis) in axes.iter().enumerate() {
                    for ti in 0..n_theta {
                        let theta = lerp(T::zero(), T::PI(), ti, n_theta);
                        out.push(ShellPoint { q: from_polar(r, axis, theta), axis_idx: ai, theta_idx: ti });
                    }
                }
            }
            Domain::Cone(c) => {
                let half = c.phi / real::<T>(2.0) - inward / r;
                if half <= T::zero() {
                    return Err(Error::EmptySample("inset exceeds the cone half-opening".into()));
                }
                for (ai, axis) in axes.iter().enumerate() {
                    for ti in 0..n_theta {
                        let theta = symmetric_grid(half, ti, n_theta);
                        out.push(ShellPoint { q: from_polar(r, axis, theta), axis_idx: ai, theta_idx: ti });
                    }
                }
            }
            Domain::Angular(a) => {
                for (ai, axis) in axes.iter().enumerate() {
                    let zeta = a.zeta.eval(axis);
                    let half = a.phi.eval(axis) / real::<T>(2.0) - inward / r;
                    if half <= T::zero() {
                        continue;
                    }
                    for ti in 0..n_theta {
                        let theta = zeta + symmetric_grid(half, ti, n_theta);
                        out.push(ShellPoint { q: from_polar(r, axis, theta), axis_idx: ai, theta_idx: ti });
                    }
                }
                if out.is_empty() {
                    return Err(Error::EmptySample("inset exceeds every slice opening".into()));
                }
            }
            Domain::Ball(b) => {
                let guard = real::<T>(MEMBERSHIP_GUARD);
                for (ai, axis) in axes.iter().enumerate() {
                    for ti in 0..n_theta {
                        let theta = lerp(T::zero(), T::PI(), ti, n_theta);
                        let q = from_polar(r, axis, theta);
                        let d = (q - b.center).abs();
                        if d <= b.radius - inward + guard {
                            out.push(ShellPoint { q, axis_idx: ai, theta_idx: ti });
                        }
                    }
                }
                if out.is_empty() {
                    return Err(Error::EmptySample(format!(
                        "the sphere of radius {r} does not meet the ball"
                    )));
                }
            }
            Domain::Strip(s) => {
                for (ai, axis) in axes.iter().enumerate() {
                    let ((px, py), (ux, uy)) = s.line.eval(axis);
                    let half = s.gamma.eval(axis) / real::<T>(2.0) - inward;
                    if half <= T::zero() {
                        continue;
                    }
                    // Signed distance along the circle |z| = r:
                    // s(ψ) = A cos ψ + B sin ψ + C with A = r·uy, B = -r·ux.
                    let a_c = r * uy;
                    let b_c = -(r * ux);
                    let c_c = -(px * uy - py * ux);
                    let mut psis: Vec<T> = Vec::new();
                    for ti in 0..n_theta {
                        let psi = lerp(T::zero(), T::PI() + T::PI(), ti, n_theta + 1);
                        let sd = a_c * psi.cos() + b_c * psi.sin() + c_c;
                        if sd.abs() <= half {
                            psis.push(psi);
                        }
                    }
                    // Exact boundary crossings of |s(ψ)| = half.
                    let r0 = a_c.hypot(b_c);
                    let phi0 = b_c.atan2(a_c);
                    for target in [half - c_c, -half - c_c] {
                        if target.abs() <= r0 && r0 > T::zero() {
                            let alpha = (target / r0).acos();
                            psis.push(phi0 + alpha);
                            psis.push(phi0 - alpha);
                        }
                    }
                    for (ti, psi) in psis.into_iter().enumerate() {
                        let (sn, cs) = psi.sin_cos();
                        out.push(ShellPoint {
                            q: slice_point(r * cs, r * sn, axis),
                            axis_idx: ai,
                            theta_idx: ti,
                        });
                    }
                }
                if out.is_empty() {
                    return Err(Error::EmptySample(format!(
                        "the sphere of radius {r} does not meet the strip"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// The opening `sup_I φ_I` (cones: exactly φ). Errors on other
    /// variants.
    pub fn opening(&self, n_axis: usize) -> Result<SupEstimate<T>> {
        match self {
            Domain::Cone(c) => Ok(SupEstimate { value: c.phi, previous: c.phi, n_axes: 1 }),
            Domain::Angular(a) => Ok(sup_over_sphere(|i| a.phi.eval(i), n_axis)),
            _ => Err(Error::InvalidInput(
                "opening is defined for cones and angular domains".into(),
            )),
        }
    }

    /// The width `sup_I γ_I` of a strip domain.
    pub fn width(&self, n_axis: usize) -> Result<SupEstimate<T>> {
        match self {
            Domain::Strip(s) => Ok(sup_over_sphere(|i| s.gamma.eval(i), n_axis)),
            _ => Err(Error::InvalidInput("width is defined for strip domains".into())),
        }
    }

    /// Grid-certified slice-domain check: (a) some real point is a
    /// member; (b) every sampled slice is connected under flood fill at
    /// the given resolution. The verdict can be trusted only at grid
    /// scale.
    pub fn is_slice_domain(&self, resolution: usize, n_axis: usize) -> SliceDomainCheck<T> {
        let real_point = self.find_real_point();
        let axes = sphere_grid::<T>(n_axis.max(1));
        let box_half = self.slice_box_half_width();
        let mut bad = Vec::new();
        for (ai, axis) in axes.iter().enumerate() {
            if !self.slice_connected(axis, box_half, resolution) {
                bad.push(ai);
            }
        }
        SliceDomainCheck {
            verdict: real_point.is_some() && bad.is_empty(),
            real_point,
            slices_checked: axes.len(),
            bad_slices: bad,
            resolution,
        }
    }

    fn find_real_point(&self) -> Option<T> {
        if matches!(self, Domain::Entire) {
            return Some(T::zero());
        }
        // Dyadic probes plus a uniform scan; deterministic.
        let mut probes: Vec<T> = vec![T::zero()];
        let mut v = real::<T>(1.0 / 16.0);
        while v <= real::<T>(64.0) {
            probes.push(v);
            probes.push(-v);
            v = v + v;
        }
        let n = 257;
        for k in 0..n {
            probes.push(lerp(real::<T>(-64.0), real::<T>(64.0), k, n));
        }
        if let Domain::Ball(b) = self {
            probes.push(b.center.w);
        }
        probes
            .into_iter()
            .find(|&x| self.contains(&Quaternion::from_real(x)))
    }

    fn slice_box_half_width(&self) -> T {
        match self {
            Domain::Ball(b) => b.center.abs() + b.radius * real::<T>(1.5),
            Domain::Strip(s) => {
                let ((px, py), _) = s.line.eval(&UnitImaginary::i());
                let g = s.gamma.eval(&UnitImaginary::i());
                real::<T>(4.0).max((px.hypot(py) + g) * real::<T>(2.0))
            }
            _ => real::<T>(4.0),
        }
    }

    /// Flood fill of the membership grid of `Ω_I` over the box
    /// `[-w, w]²`; true when nonempty and fully connected (4-adjacent).
    fn slice_connected(&self, axis: &UnitImaginary<T>, w: T, resolution: usize) -> bool {
        let n = resolution.max(8);
        let mut member = vec![false; n * n];
        let mut first = None;
        let mut count = 0usize;
        for iy in 0..n {
            for ix in 0..n {
                let x = cell_center(w, ix, n);
                let y = cell_center(w, iy, n);
                let q = slice_point(x, y, axis);
                if self.contains(&q) {
                    member[iy * n + ix] = true;
                    count += 1;
                    if first.is_none() {
                        first = Some(iy * n + ix);
                    }
                }
            }
        }
        let Some(start) = first else { return false };
        let mut seen = vec![false; n * n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 0usize;
        while let Some(idx) = stack.pop() {
            reached += 1;
            let (ix, iy) = (idx % n, idx / n);
            let mut push = |jx: usize, jy: usize| {
                let j = jy * n + jx;
                if member[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if ix > 0 {
                push(ix - 1, iy);
            }
            if ix + 1 < n {
                push(ix + 1, iy);
            }
            if iy > 0 {
                push(ix, iy - 1);
            }
            if iy + 1 < n {
                push(ix, iy + 1);
            }
        }
        reached == count
    }
}

fn angular_slice_contains<T: Real>(
    a: &AngularDomain<T>,
    axis: &UnitImaginary<T>,
    theta: T,
    guard: T,
) -> bool {
    let zeta = a.zeta.eval(axis);
    let half = a.phi.eval(axis) / real::<T>(2.0);
    circ_dist(theta, zeta) < half - guard
}

fn strip_slice_contains<T: Real>(
    s: &StripDomain<T>,
    axis: &UnitImaginary<T>,
    x: T,
    y: T,
    guard: T,
) -> bool {
    let (p, u) = s.line.eval(axis);
    let half = s.gamma.eval(axis) / real::<T>(2.0);
    line_signed_dist(x, y, p, u).abs() < half - guard * T::one().max(half)
}

/// `n`-point inclusive grid over `[a, b]`, exact at both endpoints.
fn lerp<T: Real>(a: T, b: T, i: usize, n: usize) -> T {
    let t = real::<T>(i as f64) / real::<T>((n - 1) as f64);
    a + (b - a) * t
}

/// Symmetric inclusive grid over `[-half, half]`; hits 0 exactly when
/// `n` is odd.
fn symmetric_grid<T: Real>(half: T, i: usize, n: usize) -> T {
    let num = real::<T>((2 * i) as f64 - (n - 1) as f64);
    half * num / real::<T>((n - 1) as f64)
}

fn cell_center<T: Real>(w: T, i: usize, n: usize) -> T {
    let t = (real::<T>(i as f64) + real::<T>(0.5)) / real::<T>(n as f64);
    -w + (w + w) * t
}

/// Cumulative grid supremum along the 64·2ʲ refinement ladder, capped
/// at `n_axis`. Monotone nondecreasing along the ladder because every
/// refinement only adds evaluation points.
fn sup_over_sphere<T: Real>(f: impl Fn(&UnitImaginary<T>) -> T, n_axis: usize) -> SupEstimate<T> {
    let mut level = 64usize.min(n_axis.max(8));
    let mut best = T::neg_infinity();
    let mut previous = T::neg_infinity();
    let mut total = 0usize;
    loop {
        for axis in sphere_grid::<T>(level) {
            let v = f(&axis);
            if v > best {
                best = v;
            }
        }
        total += level;
        if level * 2 > n_axis {
            break;
        }
        previous = best;
        level *= 2;
    }
    if previous == T::neg_infinity() {
        previous = best;
    }
    SupEstimate { value: best, previous, n_axes: total }
}

/// Check `φ_{-I} = φ_I` and `ζ_{-I} ≡ -ζ_I (mod 2π)` on a sample grid.
pub fn check_antipodal_consistency<T: Real>(
    zeta: &Profile<T>,
    phi: &Profile<T>,
    n_axis: usize,
    tol: T,
) -> Result<()> {
    for axis in sphere_grid::<T>(n_axis) {
        let anti = axis.antipode();
        let dphi = (phi.eval(&axis) - phi.eval(&anti)).abs();
        if dphi > tol {
            return Err(Error::InvalidInput(format!(
                "profile is not antipodally consistent: |phi(I) - phi(-I)| = {dphi}"
            )));
        }
        let dz = circ_dist(zeta.eval(&anti), -zeta.eval(&axis));
        if dz > tol {
            return Err(Error::InvalidInput(format!(
                "profile is not antipodally consistent: zeta(-I) != -zeta(I) mod 2*pi (gap {dz})"
            )));
        }
    }
    Ok(())
}

/// Search the sphere for an axis `J` whose bisector angle `ζ_J` is a
/// multiple of π, i.e. whose slice contains a real half line. The grid
/// minimum is sharpened by bisection along the profile's sign change;
/// for continuous antipodally-consistent profiles such an axis exists.
pub fn real_halfline_witness<T: Real>(
    zeta: &Profile<T>,
    phi: &Profile<T>,
    n_axis: usize,
    tol: T,
) -> Result<HalfLineWitness<T>> {
    check_antipodal_consistency(zeta, phi, n_axis.min(256), real::<T>(1e-9))?;

    let axes = sphere_grid::<T>(n_axis);
    // Signed offset from the nearest multiple of π.
    let offset = |axis: &UnitImaginary<T>| -> T {
        let z = zeta.eval(axis);
        let k = (z / T::PI()).round();
        z - k * T::PI()
    };

    let mut best_idx = 0usize;
    let mut best = offset(&axes[0]).abs();
    for (i, axis) in axes.iter().enumerate().skip(1) {
        let d = offset(axis).abs();
        if d < best {
            best = d;
            best_idx = i;
        }
    }
    if best <= tol {
        return Ok(HalfLineWitness::Found { axis: axes[best_idx], distance: best });
    }

    // Bisect between the best point and the nearest point with the
    // opposite sign, when one exists.
    let s_best = offset(&axes[best_idx]);
    let mut partner: Option<usize> = None;
    let mut partner_gap = T::infinity();
    for (i, axis) in axes.iter().enumerate() {
        let s = offset(axis);
        if s * s_best < T::zero() && s.abs() < T::FRAC_PI_4() {
            let gap = real::<T>(1.0) - axes[best_idx].dot(axis);
            if gap < partner_gap {
                partner_gap = gap;
                partner = Some(i);
            }
        }
    }
    if let Some(pi_idx) = partner {
        let mut lo = axes[best_idx];
        let mut hi = axes[pi_idx];
        let mut s_lo = s_best;
        for _ in 0..120 {
            let [lx, ly, lz] = lo.components();
            let [hx, hy, hz] = hi.components();
            let half = real::<T>(0.5);
            let mid = UnitImaginary::from_components_normalized(
                (lx + hx) * half,
                (ly + hy) * half,
                (lz + hz) * half,
            );
            let Ok(mid) = mid else { break };
            let s_mid = offset(&mid);
            if s_mid.abs() <= tol {
                return Ok(HalfLineWitness::Found { axis: mid, distance: s_mid.abs() });
            }
            if s_mid * s_lo >= T::zero() {
                lo = mid;
                s_lo = s_mid;
            } else {
                hi = mid;
            }
        }
        let d_lo = offset(&lo).abs();
        if d_lo <= tol {
            return Ok(HalfLineWitness::Found { axis: lo, distance: d_lo });
        }
        if d_lo < best {
            return Ok(HalfLineWitness::NotFound { best_axis: lo, best_distance: d_lo });
        }
    }
    Ok(HalfLineWitness::NotFound {
        best_axis: axes[best_idx],
        best_distance: best,
    })
}
