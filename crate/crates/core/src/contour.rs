//! Winding numbers of `f` along circles and axis-aligned rectangles.
//!
//! The argument is tracked by summing principal-branch increments between
//! consecutive samples; any segment whose increment exceeds `pi / 2` is bisected
//! until it does not.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad_model::HarmonicMap;

/// Total sample budget for one contour.
pub const SAMPLE_CAP: usize = 1 << 20;

const ZERO_ON_CONTOUR_TOL: f64 = 1e-9;
const MAX_STEP: f64 = FRAC_PI_2;
const INTEGER_SLACK: f64 = 0.25;
const DEFAULT_INITIAL_SAMPLES: usize = 64;

/// A counterclockwise closed contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contour {
    Circle { center: Complex64, radius: f64 },
    Rectangle { lo: Complex64, hi: Complex64 },
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameters("circle radius must be positive".into()));
        }
        Ok(Contour::Circle { center, radius })
    }

    pub fn rectangle(lo: Complex64, hi: Complex64) -> Result<Self> {
        if !(hi.re > lo.re && hi.im > lo.im) {
            return Err(Error::InvalidParameters(
                "rectangle must have hi > lo in both coordinates".into(),
            ));
        }
        Ok(Contour::Rectangle { lo, hi })
    }

    /// Point at parameter `t in [0, 1)`, counterclockwise.
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Contour::Circle { center, radius } => center + Complex64::from_polar(radius, TAU * t),
            Contour::Rectangle { lo, hi } => {
                let (w, h) = (hi.re - lo.re, hi.im - lo.im);
                let perimeter = 2.0 * (w + h);
                let s = t.rem_euclid(1.0) * perimeter;
                if s < w {
                    Complex64::new(lo.re + s, lo.im)
                } else if s < w + h {
                    Complex64::new(hi.re, lo.im + (s - w))
                } else if s < 2.0 * w + h {
                    Complex64::new(hi.re - (s - w - h), hi.im)
                } else {
                    Complex64::new(lo.re, hi.im - (s - 2.0 * w - h))
                }
            }
        }
    }

    /// Parameters of the rectangle corners, which are always sampled.
    fn breakpoints(&self) -> Vec<f64> {
        match *self {
            Contour::Circle { .. } => vec![],
            Contour::Rectangle { lo, hi } => {
                let (w, h) = (hi.re - lo.re, hi.im - lo.im);
                let perimeter = 2.0 * (w + h);
                vec![w / perimeter, (w + h) / perimeter, (2.0 * w + h) / perimeter]
            }
        }
    }

    fn max_modulus(&self) -> f64 {
        match *self {
            Contour::Circle { center, radius } => center.norm() + radius,
            Contour::Rectangle { lo, hi } => {
                let x = lo.re.abs().max(hi.re.abs());
                let y = lo.im.abs().max(hi.im.abs());
                x.hypot(y)
            }
        }
    }
}

/// Result of a winding-number computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingReport {
    pub winding: i64,
    /// Smallest `|f|` seen on the contour.
    pub min_modulus: f64,
    pub samples_used: usize,
    /// Whether any segment had to be bisected.
    pub refined: bool,
}

/// Winding number of `f` around `contour`, starting from 64 uniform samples.
pub fn winding_number<F: HarmonicMap + ?Sized>(f: &F, contour: &Contour) -> Result<WindingReport> {
    winding_number_with(f, contour, DEFAULT_INITIAL_SAMPLES)
}

/// As [`winding_number`] with an explicit number of initial uniform samples.
pub fn winding_number_with<F: HarmonicMap + ?Sized>(
    f: &F,
    contour: &Contour,
    initial_samples: usize,
) -> Result<WindingReport> {
    let initial_samples = initial_samples.max(8);
    let mut params: Vec<f64> = (0..initial_samples)
        .map(|j| j as f64 / initial_samples as f64)
        .collect();
    params.extend(contour.breakpoints());
    params.sort_by(f64::total_cmp);
    params.dedup();

    // Zero test is relative to the size of the individual terms on the contour.
    let scale = f
        .magnitude_scale(Complex64::new(contour.max_modulus(), 0.0))
        .max(f64::MIN_POSITIVE);
    let threshold = ZERO_ON_CONTOUR_TOL * scale;

    let eval = |t: f64| -> Result<Complex64> {
        let w = f.evaluate(contour.point(t));
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::InvalidParameters("non-finite value on contour".into()));
        }
        Ok(w)
    };

    let mut samples_used = params.len();
    let mut min_modulus = f64::INFINITY;
    let mut refined = false;
    let mut total = 0.0;

    let values = params.iter().map(|&t| eval(t)).collect::<Result<Vec<_>>>()?;
    for w in &values {
        min_modulus = min_modulus.min(w.norm());
    }
    if min_modulus < threshold {
        return Err(Error::ZeroOnContour { min_modulus });
    }

    // Segments are processed one at a time with an explicit stack so the
    // refinement order (and so the result) is deterministic.
    let mut stack: Vec<(f64, Complex64, f64, Complex64)> = Vec::new();
    for j in 0..params.len() {
        let (t0, w0) = (params[j], values[j]);
        let (t1, w1) = if j + 1 < params.len() {
            (params[j + 1], values[j + 1])
        } else {
            (1.0, values[0])
        };
        stack.push((t0, w0, t1, w1));
        while let Some((a, wa, b, wb)) = stack.pop() {
            let step = (wb / wa).arg();
            if step.abs() <= MAX_STEP {
                total += step;
                continue;
            }
            refined = true;
            samples_used += 1;
            if samples_used > SAMPLE_CAP {
                return Err(Error::SampleCapExceeded(SAMPLE_CAP));
            }
            let mid = 0.5 * (a + b);
            let wm = eval(mid)?;
            let modulus = wm.norm();
            min_modulus = min_modulus.min(modulus);
            if modulus < threshold {
                return Err(Error::ZeroOnContour { min_modulus });
            }
            // second half first so the first half is popped next
            stack.push((mid, wm, b, wb));
            stack.push((a, wa, mid, wm));
        }
    }

    let turns = total / TAU;
    let winding = turns.round();
    if (turns - winding).abs() > INTEGER_SLACK {
        return Err(Error::NonIntegerWinding(total));
    }
    Ok(WindingReport {
        winding: winding as i64,
        min_modulus,
        samples_used,
        refined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad_model::{HarmonicPolynomial, HarmonicQuadrinomial};

    fn origin() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    #[test]
    fn analytic_cubic_winds_three_times() {
        // z^3 + z with the co-analytic part removed
        let f = HarmonicPolynomial::new(vec![0.0, 1.0, 0.0, 1.0], vec![]);
        let r = winding_number(&f, &Contour::circle(origin(), 10.0).unwrap()).unwrap();
        assert_eq!(r.winding, 3);
    }

    #[test]
    fn coanalytic_dominance_winds_negatively() {
        let q = HarmonicQuadrinomial::new(0.0, 0.0, 1, 3, 1).unwrap();
        let r = winding_number(&q, &Contour::circle(origin(), 2.0).unwrap()).unwrap();
        assert_eq!(r.winding, -3);
        let r = winding_number(&q, &Contour::circle(origin(), 0.5).unwrap()).unwrap();
        assert_eq!(r.winding, 1);
    }

    #[test]
    fn zero_on_contour_is_rejected() {
        // unimodular zeros of conj(z)^3 + z sit on the unit circle
        let q = HarmonicQuadrinomial::new(0.0, 0.0, 1, 3, 1).unwrap();
        let c = Contour::circle(Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4), 0.5).unwrap();
        assert!(winding_number(&q, &c).is_ok());
        let c = Contour::circle(origin(), 1.0).unwrap();
        assert!(matches!(winding_number(&q, &c), Err(Error::ZeroOnContour { .. })));
    }

    #[test]
    fn rectangle_corners_and_split() {
        let q = HarmonicQuadrinomial::new(0.0, 0.0, 1, 3, 1).unwrap();
        let whole = Contour::rectangle(Complex64::new(-1.3, -1.1), Complex64::new(1.2, 1.4)).unwrap();
        let left = Contour::rectangle(Complex64::new(-1.3, -1.1), Complex64::new(0.3, 1.4)).unwrap();
        let right = Contour::rectangle(Complex64::new(0.3, -1.1), Complex64::new(1.2, 1.4)).unwrap();
        let w = winding_number(&q, &whole).unwrap().winding;
        let l = winding_number(&q, &left).unwrap().winding;
        let r = winding_number(&q, &right).unwrap().winding;
        assert_eq!(w, -3);
        assert_eq!(w, l + r);
        // left holds 0 (+1) and two reversing zeros, right holds the other two
        assert_eq!((l, r), (-1, -2));
    }

    #[test]
    fn rectangle_parametrisation_is_counterclockwise() {
        let c = Contour::rectangle(Complex64::new(0.0, 0.0), Complex64::new(2.0, 1.0)).unwrap();
        assert_eq!(c.point(0.0), Complex64::new(0.0, 0.0));
        assert_eq!(c.point(2.0 / 6.0), Complex64::new(2.0, 0.0));
        assert_eq!(c.point(3.0 / 6.0), Complex64::new(2.0, 1.0));
        assert_eq!(c.point(5.0 / 6.0), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn rejects_degenerate_contours() {
        assert!(Contour::circle(origin(), 0.0).is_err());
        assert!(Contour::rectangle(origin(), Complex64::new(1.0, 0.0)).is_err());
    }
}
