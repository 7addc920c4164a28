//! The unit-dilatation circle for `n = k`, `m = 1`, the local univalence
//! radius, and exploratory helpers around them.
//!
//! With `n = k`, `m = 1` the condition `|omega(z)| = 1` reads
//! `|k z^{k-1} + c| = |b k z^{k-1} + 1|`. On the rays where `z^k conj(z)` is
//! purely imaginary the cross terms vanish and the condition collapses to
//!
//! ```text
//! |z| = M = ((c^2 - 1) / (k^2 (b^2 - 1)))^{1 / (2k - 2)}.
//! ```

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad_model::{HarmonicMap, HarmonicQuadrinomial};
use crate::zero_finder::{find_zeros, SolveConfig, ZeroSetReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalCircle {
    /// `M`, or 0 when the circle does not exist.
    pub radius: f64,
    pub k: u32,
    pub exists: bool,
}

impl CriticalCircle {
    /// The same radius written as `(1/k)^{1/(k-1)} ((c^2-1)/(b^2-1))^{1/(2k-2)}`.
    pub fn radius_factored(b: f64, c: f64, k: u32) -> f64 {
        let k = k as f64;
        let ratio = (c * c - 1.0) / (b * b - 1.0);
        k.recip().powf((k - 1.0).recip()) * ratio.powf((2.0 * k - 2.0).recip())
    }
}

/// Radius of the circle on which `|omega| = 1` along the pure-imaginary rays.
///
/// The circle exists only when `(c^2 - 1) / (b^2 - 1) > 0`; `c^2 = 1` would
/// give a zero radius and is reported as non-existent.
pub fn critical_radius(b: f64, c: f64, k: u32) -> Result<CriticalCircle> {
    if k < 2 {
        return Err(Error::InvalidParameters("critical circle requires k >= 2".into()));
    }
    if b.abs() == 1.0 {
        return Err(Error::BEqualsOne);
    }
    let ratio = (c * c - 1.0) / (b * b - 1.0);
    if !ratio.is_finite() || ratio <= 0.0 {
        return Ok(CriticalCircle {
            radius: 0.0,
            k,
            exists: false,
        });
    }
    let kf = k as f64;
    let radius = (ratio / (kf * kf)).powf((2.0 * kf - 2.0).recip());
    Ok(CriticalCircle {
        radius,
        k,
        exists: true,
    })
}

/// The `2(k - 1)` angles in `[0, 2 pi)` on which `z^k conj(z)` is purely
/// imaginary, i.e. `(k - 1) theta = pi/2 (mod pi)`.
pub fn pure_imaginary_rays(k: u32) -> Result<Vec<f64>> {
    if k < 2 {
        return Err(Error::InvalidParameters("rays require k >= 2".into()));
    }
    let km1 = (k - 1) as f64;
    Ok((0..2 * (k - 1)).map(|j| (FRAC_PI_2 + j as f64 * PI) / km1).collect())
}

/// Per-ray values of `| |omega| - 1 |` on the circle and at 1.1 times its radius.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalCircleCheck {
    pub circle: CriticalCircle,
    pub tol: f64,
    /// `(theta, deviation on the circle, deviation at 1.1 M)`.
    pub rays: Vec<(f64, f64, f64)>,
}

impl CriticalCircleCheck {
    pub fn max_on_circle(&self) -> f64 {
        self.rays.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    pub fn min_off_circle(&self) -> f64 {
        self.rays.iter().map(|r| r.2).fold(f64::INFINITY, f64::min)
    }

    /// Forward direction holds within `tol` and the off-circle points are
    /// separated from 1 by more than `tol`.
    pub fn passed(&self) -> bool {
        self.max_on_circle() <= self.tol && self.min_off_circle() > self.tol
    }
}

/// Checks `|omega| = 1` at every ray/circle intersection for the instance
/// `n = k`, `m = 1`, and `|omega| != 1` at 1.1 times the radius on the same rays.
pub fn verify_critical_circle(b: f64, c: f64, k: u32, tol: f64) -> Result<CriticalCircleCheck> {
    let circle = critical_radius(b, c, k)?;
    if !circle.exists {
        return Err(Error::NoCriticalCircle);
    }
    let p = HarmonicQuadrinomial::new(b, c, k, k, 1)?;
    let deviation = |z: Complex64| -> Result<f64> { Ok((p.dilatation(z)?.norm() - 1.0).abs()) };
    let rays = pure_imaginary_rays(k)?
        .into_iter()
        .map(|theta| {
            let on = deviation(Complex64::from_polar(circle.radius, theta))?;
            let off = deviation(Complex64::from_polar(1.1 * circle.radius, theta))?;
            Ok((theta, on, off))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CriticalCircleCheck { circle, tol, rays })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnivalenceRadius {
    pub radius: f64,
    /// The `k - 1` solutions of `z^{k-1} = -1 / (b k)`, where `h'` vanishes.
    pub critical_points: Vec<Complex64>,
}

/// The modulus `(1 / (k |b|))^{1/(k-1)}` on which `h'(z) = b k z^{k-1} + 1` can vanish.
pub fn univalence_radius(b: f64, k: u32) -> Result<UnivalenceRadius> {
    if b == 0.0 {
        return Err(Error::BZero);
    }
    if k < 2 {
        return Err(Error::InvalidParameters("univalence radius requires k >= 2".into()));
    }
    let km1 = (k - 1) as f64;
    let target = -1.0 / (b * k as f64);
    let radius = target.abs().powf(km1.recip());
    let base = if target > 0.0 { 0.0 } else { PI };
    let critical_points = (0..k - 1)
        .map(|j| Complex64::from_polar(radius, (base + TAU * j as f64) / km1))
        .collect();
    Ok(UnivalenceRadius {
        radius,
        critical_points,
    })
}

/// Compares the two sides of the printed `b = 0` orientation criterion
///
/// ```text
/// 2 Re z^{n-m}   vs   |z|^{2(1-m)} / (c m n) - n |z|^{2(n-1)} / (c m) - c m / n
/// ```
///
/// `Less` is meant to indicate sense-preserving. The formula is taken as
/// printed; it agrees with the Jacobian sign only for `m = 1` and `c > 0`, so
/// treat it as a diagnostic and use [`HarmonicMap::classify_point`] for truth.
pub fn b0_orientation_inequality(c: f64, n: u32, m: u32, z: Complex64) -> Result<Ordering> {
    if c == 0.0 {
        return Err(Error::InvalidParameters("orientation inequality requires c ≠ 0".into()));
    }
    if m < 1 || n <= m {
        return Err(Error::InvalidParameters("degrees must satisfy n > m >= 1".into()));
    }
    if m > 1 && z.norm() == 0.0 {
        return Err(Error::InvalidParameters(
            "orientation inequality requires z ≠ 0 when m > 1".into(),
        ));
    }
    let (nf, mf) = (n as f64, m as f64);
    let r2 = z.norm_sqr();
    let lhs = 2.0 * z.powu(n - m).re;
    let rhs = r2.powi(1 - m as i32) / (c * mf * nf) - nf * r2.powi(n as i32 - 1) / (c * mf) - c * mf / nf;
    if (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0) {
        return Ok(Ordering::Equal);
    }
    Ok(lhs.partial_cmp(&rhs).unwrap_or(Ordering::Equal))
}

/// `f(radius e^{i theta})` at `samples` equally spaced angles, closed by
/// repeating the first point.
pub fn circle_image<F: HarmonicMap + ?Sized>(f: &F, radius: f64, samples: usize) -> Result<Vec<Complex64>> {
    if samples < 16 {
        return Err(Error::InvalidParameters(
            "circle image needs at least 16 samples".into(),
        ));
    }
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameters("radius must be non-negative".into()));
    }
    let mut image: Vec<Complex64> = (0..samples)
        .map(|j| f.evaluate(Complex64::from_polar(radius, TAU * j as f64 / samples as f64)))
        .collect();
    image.push(image[0]);
    Ok(image)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularCensus {
    pub on_circle: usize,
    pub inside: usize,
    pub outside: usize,
}

/// Partitions a zero set by position relative to the circle of radius `radius`.
pub fn census_of(report: &ZeroSetReport, radius: f64, band: f64) -> ModularCensus {
    let mut census = ModularCensus {
        on_circle: 0,
        inside: 0,
        outside: 0,
    };
    for z in &report.zeros {
        let d = z.location.norm() - radius;
        if d.abs() <= band {
            census.on_circle += 1;
        } else if d < 0.0 {
            census.inside += 1;
        } else {
            census.outside += 1;
        }
    }
    census
}

/// Counts zeros on, inside and outside the unit-dilatation circle of an
/// `n = k`, `m = 1` instance.
pub fn modular_root_census(
    p: &HarmonicQuadrinomial,
    cfg: &SolveConfig,
    band: f64,
) -> Result<(CriticalCircle, ModularCensus)> {
    if p.n() != p.k() || p.m() != 1 {
        return Err(Error::HypothesisViolation {
            theorem: "Theorem 3.4",
            requirement: "n = k and m = 1",
        });
    }
    let circle = critical_radius(p.b(), p.c(), p.k())?;
    if !circle.exists {
        return Err(Error::NoCriticalCircle);
    }
    let report = find_zeros(p, cfg)?;
    Ok((circle, census_of(&report, circle.radius, band)))
}
