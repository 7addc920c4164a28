//! Zero-inclusion disks and zero-count bounds.
//!
//! For `b, c != 0` and `k > n` the disk radius comes from the positive root of
//! the three-term equation
//!
//! ```text
//! |b| x^{k+1} - (|b| + s) x^k + s = 0,     s = |c| if |c| > 1, else 1,
//! ```
//!
//! which always has `x = 1` as a root; it is deflated away before the
//! remaining positive root `delta` is isolated, and `R = max(1, delta)`.
//! Outside those hypotheses a Cauchy-style bound from leading-term dominance is
//! used where one exists.

use crate::error::{Error, Result};
use crate::quad_model::HarmonicQuadrinomial;
use crate::real_roots::RealPoly;

/// Where a disk radius came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadiusSource {
    /// Deflated three-term equation with `s = |c|` (`|c| > 1`).
    LargeCoefficientEquation,
    /// Deflated three-term equation with `s = 1` (`|c| <= 1`).
    SmallCoefficientEquation,
    /// Leading-term dominance bound, used when the equation hypotheses fail.
    Fallback,
    /// No bound: `k = n` with `|b| = 1`, where the top-degree terms can cancel.
    Unavailable,
}

impl RadiusSource {
    /// Stable identifier used in JSON and CSV output.
    pub fn wire_name(self) -> &'static str {
        match self {
            RadiusSource::LargeCoefficientEquation => "Thm31",
            RadiusSource::SmallCoefficientEquation => "Thm32",
            RadiusSource::Fallback => "FallbackCauchy",
            RadiusSource::Unavailable => "Unavailable",
        }
    }
}

/// The three-term radius equation `a x^{k+1} - (a + s) x^k + s`.
///
/// The middle coefficient is stored as the rounded sum `a + s`, so the
/// coefficient-level identity `a - (a + s) + s = 0` holds exactly when the
/// terms are paired as `(a + s) - fl(a + s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEquation {
    pub lead: f64,
    pub tail: f64,
    pub k: u32,
}

impl RadiusEquation {
    pub fn middle(&self) -> f64 {
        -(self.lead + self.tail)
    }

    /// Value at `x = 1` computed on the coefficients as `(lead + tail) + middle`.
    pub fn at_one_symbolic(&self) -> f64 {
        (self.lead + self.tail) + self.middle()
    }

    pub fn polynomial(&self) -> RealPoly {
        let k = self.k as usize;
        let mut coeffs = vec![0.0; k + 2];
        coeffs[0] = self.tail;
        coeffs[k] = self.middle();
        coeffs[k + 1] = self.lead;
        RealPoly::new(coeffs).expect("radius equation has a nonzero leading term")
    }
}

/// A closed disk `D(0, radius)` containing every zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskBound {
    pub radius: f64,
    pub delta: Option<f64>,
    pub source: RadiusSource,
    pub equation: Option<RadiusEquation>,
}

impl DiskBound {
    pub fn is_available(&self) -> bool {
        self.source != RadiusSource::Unavailable
    }
}

/// Which case of the piecewise count bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountBranch {
    /// `b = 0`: `3n - 2`.
    AnalyticPartAbsent,
    /// `b != 0`, `n < k - 1`: `n(n - 1) + 3k - 2`, resting on an unproven conjecture.
    Conjectural,
    /// `b != 0`, `n = k - 1`: `k^2`.
    DegreeSquared,
}

impl CountBranch {
    pub fn wire_name(self) -> &'static str {
        match self {
            CountBranch::AnalyticPartAbsent => "BZero",
            CountBranch::Conjectural => "BNonzeroConjectural",
            CountBranch::DegreeSquared => "BNonzeroWilmshurst",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountBound {
    pub upper: u64,
    pub upper_is_proven: bool,
    pub lower: u64,
    pub branch: CountBranch,
}

/// Radius of a disk containing all zeros of `p`.
///
/// Never fails: parameter points without a known bound yield
/// [`RadiusSource::Unavailable`] so sweeps can continue.
pub fn radius_bound(p: &HarmonicQuadrinomial) -> DiskBound {
    let (b, c) = (p.b().abs(), p.c().abs());
    let (k, n) = (p.k(), p.n());

    if b != 0.0 && c != 0.0 && k > n {
        let (tail, source) = if c > 1.0 {
            (c, RadiusSource::LargeCoefficientEquation)
        } else {
            (1.0, RadiusSource::SmallCoefficientEquation)
        };
        let equation = RadiusEquation { lead: b, tail, k };
        let root = equation
            .polynomial()
            .deflate_at_one()
            .and_then(|q| q.positive_root_bracketed());
        if let Ok(root) = root {
            return DiskBound {
                radius: root.value.max(1.0),
                delta: Some(root.value),
                source,
                equation: Some(equation),
            };
        }
    }

    fallback(b, c, k, n)
}

fn fallback(b: f64, c: f64, k: u32, n: u32) -> DiskBound {
    let radius = if b == 0.0 || k < n {
        // |z|^n <= (|b| + |c| + 1) |z|^{n-1} for |z| >= 1
        Some(b + c + 1.0)
    } else if k == n {
        // |b z^k + conj(z)^k| >= ||b| - 1| |z|^k
        let gap = (b - 1.0).abs();
        (gap != 0.0).then(|| (c + 1.0) / gap)
    } else {
        // k > n with c = 0: |b| |z|^k <= (2 + |c|) |z|^{k-1} for |z| >= 1
        Some((2.0 + c) / b)
    };
    match radius {
        Some(r) => DiskBound {
            radius: r.max(1.0),
            delta: None,
            source: RadiusSource::Fallback,
            equation: None,
        },
        None => DiskBound {
            radius: f64::INFINITY,
            delta: None,
            source: RadiusSource::Unavailable,
            equation: None,
        },
    }
}

/// Piecewise upper bound (and argument-principle lower bound) on the number
/// of distinct zeros.
pub fn count_bound(p: &HarmonicQuadrinomial) -> Result<CountBound> {
    let (k, n) = (p.k() as u64, p.n() as u64);
    if p.b() == 0.0 {
        return Ok(CountBound {
            upper: 3 * n - 2,
            upper_is_proven: true,
            lower: n,
            branch: CountBranch::AnalyticPartAbsent,
        });
    }
    if k <= n {
        return Err(Error::HypothesisViolation {
            theorem: "Theorem 3.3",
            requirement: "k > n > m when b ≠ 0",
        });
    }
    if n + 1 < k {
        Ok(CountBound {
            upper: n * (n - 1) + 3 * k - 2,
            upper_is_proven: false,
            lower: k,
            branch: CountBranch::Conjectural,
        })
    } else {
        Ok(CountBound {
            upper: k * k,
            upper_is_proven: true,
            lower: k,
            branch: CountBranch::DegreeSquared,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(b: f64, c: f64, k: u32, n: u32, m: u32) -> HarmonicQuadrinomial {
        HarmonicQuadrinomial::new(b, c, k, n, m).unwrap()
    }

    #[test]
    fn large_coefficient_example() {
        let d = radius_bound(&quad(2.0, 3.0, 4, 3, 1));
        assert_eq!(d.source, RadiusSource::LargeCoefficientEquation);
        let eq = d.equation.unwrap();
        assert_eq!(eq.polynomial().coeffs(), &[3.0, 0.0, 0.0, 0.0, -5.0, 2.0]);
        assert_eq!(eq.at_one_symbolic(), 0.0);
        // independent 30-digit solve of 2x^4 - 3x^3 - 3x^2 - 3x - 3
        assert!((d.delta.unwrap() - 2.458_972_346_377_964).abs() < 1e-12);
        assert_eq!(d.radius, d.delta.unwrap());
    }

    #[test]
    fn small_coefficient_example() {
        let d = radius_bound(&quad(2.0, 1.0, 4, 3, 1));
        assert_eq!(d.source, RadiusSource::SmallCoefficientEquation);
        assert_eq!(
            d.equation.unwrap().polynomial().coeffs(),
            &[1.0, 0.0, 0.0, 0.0, -3.0, 2.0]
        );
        // independent 30-digit solve of 2x^4 - x^3 - x^2 - x - 1
        assert!((d.delta.unwrap() - 1.349_034_456_561_156).abs() < 1e-12);
    }

    #[test]
    fn radius_is_at_least_one() {
        let d = radius_bound(&quad(50.0, 0.5, 4, 3, 1));
        assert!(d.delta.unwrap() < 1.0);
        assert_eq!(d.radius, 1.0);
    }

    #[test]
    fn fallback_examples() {
        let d = radius_bound(&quad(0.0, 3.0, 1, 3, 2));
        assert_eq!((d.radius, d.source), (4.0, RadiusSource::Fallback));
        let d = radius_bound(&quad(0.5, -2.0, 2, 3, 1));
        assert_eq!(d.radius, 3.5);
        let d = radius_bound(&quad(3.0, 1.0, 3, 3, 1));
        assert_eq!(d.radius, 1.0);
        let d = radius_bound(&quad(1.5, 1.0, 3, 3, 1));
        assert_eq!(d.radius, 4.0);
        let d = radius_bound(&quad(0.5, 0.0, 4, 3, 1));
        assert_eq!(d.radius, 4.0);
        let d = radius_bound(&quad(-1.0, 1.0, 2, 2, 1));
        assert_eq!(d.source, RadiusSource::Unavailable);
    }

    #[test]
    fn count_bound_examples() {
        let cb = count_bound(&quad(0.0, 1.0, 1, 5, 2)).unwrap();
        assert_eq!((cb.upper, cb.upper_is_proven, cb.lower), (13, true, 5));
        let cb = count_bound(&quad(1.0, 1.0, 5, 3, 1)).unwrap();
        assert_eq!(
            (cb.upper, cb.upper_is_proven, cb.branch),
            (19, false, CountBranch::Conjectural)
        );
        let cb = count_bound(&quad(1.0, 1.0, 5, 4, 1)).unwrap();
        assert_eq!(
            (cb.upper, cb.upper_is_proven, cb.branch),
            (25, true, CountBranch::DegreeSquared)
        );
        assert!(matches!(
            count_bound(&quad(1.0, 1.0, 3, 3, 1)),
            Err(Error::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn delta_increases_with_c() {
        for k in 3..=7u32 {
            let mut last = 0.0;
            for j in 1..=30 {
                let c = 1.0 + 0.25 * j as f64;
                let d = radius_bound(&quad(1.3, c, k, 2, 1)).delta.unwrap();
                assert!(d > last, "k={k} c={c}");
                last = d;
            }
        }
    }
}
