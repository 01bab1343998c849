//! Radial growth of a slice regular function on a domain: the maximum
//! modulus `M_f(r, Ω) = max { |f(q)| : q ∈ closure(Ω), |q| = r }`, the
//! growth order `ρ = limsup_r ln⁺ln⁺M_f / ln r`, and (given an order)
//! the type `σ = limsup_r ln⁺M_f / r^ρ`.
//!
//! The maximum is a deterministic grid maximum over the shell samples
//! of the domain (a lower bound of the true maximum, with a coarse-grid
//! delta reported). Sweeps work with `ln M_f` throughout, which the
//! expression tree can often supply exactly even where `M_f` itself
//! overflows. The limsups are approximated by an upper-envelope
//! regression: fit all points, keep those on or above the fit, refit.
//!
//! No order/type is defined on strip domains; sweeps there are exposed
//! for diagnostics but flagged non-canonical.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::quaternion::Quaternion;
use crate::scalar::{real, Real};
use rayon::prelude::*;

/// Result of one shell scan.
#[derive(Clone, Copy, Debug)]
pub struct ShellMax<T> {
    /// `ln` of the grid maximum of `|f|`; exact in log space.
    pub log_max: T,
    /// `exp(log_max)`; infinite when the modulus overflows.
    pub max: T,
    /// Where the maximum was attained (lexicographically first grid
    /// point among ties).
    pub witness: Quaternion<T>,
    /// Grid maximum at half the sampling density, as a refinement
    /// diagnostic.
    pub coarse_log_max: T,
}

/// Regression diagnostics of a growth fit.
#[derive(Clone, Copy, Debug)]
pub struct FitDiagnostics<T> {
    pub raw_slope: T,
    pub raw_intercept: T,
    pub envelope_slope: T,
    pub envelope_intercept: T,
    pub rms_residual: T,
    pub slope_stderr: T,
}

/// Outcome of an order or type estimation sweep.
#[derive(Clone, Debug)]
pub struct GrowthEstimate<T> {
    /// Estimated order (envelope slope, clamped at 0), or the order
    /// supplied as input when this is a type estimate.
    pub order_est: T,
    /// Estimated type; present only for type sweeps.
    pub type_est: Option<T>,
    /// Trend of `ln⁺M/r^ρ` across the tail (negative: still falling).
    pub type_trend: Option<T>,
    pub r_grid: Vec<T>,
    /// `M_f(r)`; infinite entries mark overflow of the modulus itself.
    pub m_values: Vec<T>,
    /// `ln M_f(r)`.
    pub log_m: Vec<T>,
    pub fit: FitDiagnostics<T>,
    /// Indices (into `r_grid`) of the upper-envelope points.
    pub envelope: Vec<usize>,
    /// All moduli were ≤ 1, so `ln⁺ln⁺` collapsed and the order is 0 by
    /// convention.
    pub degenerate: bool,
    /// Radii whose `ln M` was not finite were dropped from the fit.
    pub clipped: bool,
    /// Set on strip domains, where no order/type is defined and the
    /// sweep is only a diagnostic.
    pub non_canonical_domain: bool,
}

/// `n` geometric points from `r_min` to `r_max` inclusive.
pub fn geometric_grid<T: Real>(r_min: T, r_max: T, n: usize) -> Vec<T> {
    assert!(n >= 2 && r_min > T::zero() && r_max > r_min);
    let ratio = r_max / r_min;
    (0..n)
        .map(|i| r_min * ratio.powf(real::<T>(i as f64) / real::<T>((n - 1) as f64)))
        .collect()
}

#[derive(Clone, Copy)]
struct Candidate<T> {
    log: T,
    key: (usize, usize),
    q: Quaternion<T>,
}

/// Deterministic max-reduction: larger log wins, ties go to the
/// lexicographically smaller grid key. Associative and commutative, so
/// the parallel reduction is worker-count independent.
fn better<T: Real>(a: Candidate<T>, b: Candidate<T>) -> Candidate<T> {
    if b.log > a.log || (b.log == a.log && b.key < a.key) {
        b
    } else {
        a
    }
}

fn scan_shell<T: Real>(
    f: &FunctionExpr<T>,
    d: &Domain<T>,
    r: T,
    n_theta: usize,
    n_axis: usize,
) -> Result<Candidate<T>> {
    let points = d.shell_samples(r, n_theta, n_axis)?;
    let identity = Candidate {
        log: T::neg_infinity(),
        key: (usize::MAX, usize::MAX),
        q: Quaternion::zero(),
    };
    points
        .par_iter()
        .map(|p| {
            let mut log = f.log_abs(p.q)?;
            if log.is_nan() {
                // Overflow artifacts (inf - inf) count as overflow.
                log = T::infinity();
            }
            Ok(Candidate { log, key: (p.axis_idx, p.theta_idx), q: p.q })
        })
        .try_reduce(|| identity, |a, b| Ok(better(a, b)))
}

/// `max {|f(q)| : q ∈ closure(Ω), |q| = r}` over the deterministic
/// shell grid, with a half-density rescan as refinement diagnostic.
pub fn max_modulus_detail<T: Real>(
    f: &FunctionExpr<T>,
    d: &Domain<T>,
    r: T,
    n_theta: usize,
    n_axis: usize,
) -> Result<ShellMax<T>> {
    let fine = scan_shell(f, d, r, n_theta, n_axis)?;
    let coarse = scan_shell(f, d, r, (n_theta / 2).max(3), (n_axis / 2).max(1))?;
    Ok(ShellMax {
        log_max: fine.log,
        max: fine.log.exp(),
        witness: fine.q,
        coarse_log_max: coarse.log,
    })
}

/// The grid maximum modulus itself.
pub fn max_modulus<T: Real>(
    f: &FunctionExpr<T>,
    d: &Domain<T>,
    r: T,
    n_theta: usize,
    n_axis: usize,
) -> Result<T> {
    Ok(scan_shell(f, d, r, n_theta, n_axis)?.log.exp())
}

/// `ln M_f(r, Ω)` directly.
pub fn log_max_modulus<T: Real>(
    f: &FunctionExpr<T>,
    d: &Domain<T>,
    r: T,
    n_theta: usize,
    n_axis: usize,
) -> Result<T> {
    Ok(scan_shell(f, d, r, n_theta, n_axis)?.log)
}

fn ln_plus<T: Real>(x: T) -> T {
    if x <= T::one() {
        T::zero()
    } else {
        x.ln()
    }
}

fn least_squares<T: Real>(xs: &[T], ys: &[T]) -> (T, T, T, T) {
    let n = real::<T>(xs.len() as f64);
    let mean = |v: &[T]| v.iter().fold(T::zero(), |a, &b| a + b) / n;
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut sse = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let e = y - (slope * x + intercept);
        sse = sse + e * e;
    }
    let rms = (sse / n).sqrt();
    let stderr = if xs.len() > 2 {
        (sse / real::<T>((xs.len() - 2) as f64) / sxx).sqrt()
    } else {
        T::zero()
    };
    (slope, intercept, rms, stderr)
}

fn sweep<T: Real>(
    f: &FunctionExpr<T>,
    d: &Domain<T>,
    r_grid: &[T],
    n_theta: usize,
    n_axis: usize,
) -> Result<(Vec<T>, Vec<T>, bool)> {
    if r_grid.len() < 8 {
        return Err(Error::InvalidInput(
            "growth estimation needs a radius grid with at least 8 points".into(),
        ));
    }
    for w in r_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidInput("radius grid must be strictly increasing".into()));
        }
    }
    if r_grid[0] <= T::zero() {
        return Err(Error::InvalidInput("radii must be positive".into()));
    }
    let mut radii = Vec::new();
    let mut logs = Vec::new();
    let mut clipped = false;
    for &r in r_grid {
        let log = log_max_modulus(f, d, r, n_theta, n_axis)?;
        if log.is_finite() || log == T::neg_infinity() {
            radii.push(r);
            logs.push(log);
        } else {
            clipped = true;
        }
    }
    if radii.len() < 4 {
        return Err(Error::InvalidInput(
            "overflow clipping left fewer than 4 usable radii; shrink the grid".into(),
        ));
    }
    Ok((radii, logs, clipped))
}

/// Estimate the growth order of `f` on `d` over the given radius grid
/// (geometric, ≥ 8 points). Returns the envelope-regression slope of
/// `ln⁺ln⁺M_f` against `ln r` with full diagnostics; when every modulus
/// is ≤ 1 the order is 0 with the degeneracy flag set.
pub fn estimate_order<T: Real>(
    f: &FunctionExpr<T>,
    d: &Domain<T>,
    r_grid: &[T],
    n_theta: usize,
    n_axis: usize,
) -> Result<GrowthEstimate<T>> {
    let (radii, logs, clipped) = sweep(f, d, r_grid, n_theta, n_axis)?;
    let m_values: Vec<T> = logs.iter().map(|&l| l.exp()).collect();
    let non_canonical = matches!(d, Domain::Strip(_));

    let degenerate = logs.iter().all(|&l| l <= T::zero());
    let xs: Vec<T> = radii.iter().map(|&r| r.ln()).collect();
    let ys: Vec<T> = logs.iter().map(|&l| ln_plus(ln_plus_inner(l))).collect();

    if degenerate {
        return Ok(GrowthEstimate {
            order_est: T::zero(),
            type_est: None,
            type_trend: None,
            r_grid: radii,
            m_values,
            log_m: logs,
            fit: FitDiagnostics {
                raw_slope: T::zero(),
                raw_intercept: T::zero(),
                envelope_slope: T::zero(),
                envelope_intercept: T::zero(),
                rms_residual: T::zero(),
                slope_stderr: T::zero(),
            },
            envelope: Vec::new(),
            degenerate: true,
            clipped,
            non_canonical_domain: non_canonical,
        });
    }

    let (raw_slope, raw_intercept, rms, _) = least_squares(&xs, &ys);
    let mut envelope: Vec<usize> = (0..xs.len())
        .filter(|&i| ys[i] >= raw_slope * xs[i] + raw_intercept)
        .collect();
    if envelope.len() < 2 {
        envelope = (0..xs.len()).collect();
    }
    let ex: Vec<T> = envelope.iter().map(|&i| xs[i]).collect();
    let ey: Vec<T> = envelope.iter().map(|&i| ys[i]).collect();
    let (env_slope, env_intercept, _, stderr) = least_squares(&ex, &ey);

    Ok(GrowthEstimate {
        order_est: env_slope.max(T::zero()),
        type_est: None,
        type_trend: None,
        r_grid: radii,
        m_values,
        log_m: logs,
        fit: FitDiagnostics {
            raw_slope,
            raw_intercept,
            envelope_slope: env_slope,
            envelope_intercept: env_intercept,
            rms_residual: rms,
            slope_stderr: stderr,
        },
        envelope,
        degenerate: false,
        clipped,
        non_canonical_domain: non_canonical,
    })
}

// ln⁺ of a value already given in log space: ln⁺M with lnM = l is
// max(l, 0).
fn ln_plus_inner<T: Real>(l: T) -> T {
    l.max(T::zero())
}

/// Estimate the type of `f` (of known order `rho > 0`) on `d`: the
/// upper envelope of `ln⁺M_f(r)/r^ρ` over the largest radii, with the
/// tail trend as a convergence diagnostic.
pub fn estimate_type<T: Real>(
    f: &FunctionExpr<T>,
    d: &Domain<T>,
    rho: T,
    r_grid: &[T],
    n_theta: usize,
    n_axis: usize,
) -> Result<GrowthEstimate<T>> {
    if rho <= T::zero() {
        return Err(Error::InvalidInput("type estimation requires rho > 0".into()));
    }
    let (radii, logs, clipped) = sweep(f, d, r_grid, n_theta, n_axis)?;
    let m_values: Vec<T> = logs.iter().map(|&l| l.exp()).collect();
    let non_canonical = matches!(d, Domain::Strip(_));
    let degenerate = logs.iter().all(|&l| l <= T::zero());

    let ratios: Vec<T> = radii
        .iter()
        .zip(&logs)
        .map(|(&r, &l)| ln_plus_inner(l) / r.powf(rho))
        .collect();
    let tail_len = (radii.len() / 4).max(3).min(radii.len());
    let tail_start = radii.len() - tail_len;
    let mut sigma = T::zero();
    let mut envelope = Vec::new();
    for (i, &v) in ratios.iter().enumerate().skip(tail_start) {
        if v >= sigma {
            sigma = v;
        }
        envelope.push(i);
    }
    let trend = ratios[radii.len() - 1] - ratios[tail_start];

    let xs: Vec<T> = radii.iter().map(|&r| r.ln()).collect();
    let (raw_slope, raw_intercept, rms, stderr) = least_squares(&xs, &ratios);

    Ok(GrowthEstimate {
        order_est: rho,
        type_est: Some(if degenerate { T::zero() } else { sigma }),
        type_trend: Some(trend),
        r_grid: radii,
        m_values,
        log_m: logs,
        fit: FitDiagnostics {
            raw_slope,
            raw_intercept,
            envelope_slope: raw_slope,
            envelope_intercept: raw_intercept,
            rms_residual: rms,
            slope_stderr: stderr,
        },
        envelope,
        degenerate,
        clipped,
        non_canonical_domain: non_canonical,
    })
}

impl<T: Real> GrowthEstimate<T> {
    /// Rows of the sweep CSV: `r, M_f, ln⁺ln⁺M / ln r, envelope flag`.
    pub fn sweep_rows(&self) -> Vec<(T, T, T, bool)> {
        self.r_grid
            .iter()
            .zip(&self.log_m)
            .enumerate()
            .map(|(i, (&r, &l))| {
                let ratio = ln_plus(ln_plus_inner(l)) / r.ln();
                (r, l.exp(), ratio, self.envelope.contains(&i))
            })
            .collect()
    }
}
