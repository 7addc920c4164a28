//! Real-coefficient univariate polynomials: Descartes sign counting,
//! deflation by `(x - 1)` and isolation of a unique positive root.

use crate::error::{Error, Result};

const BISECTION_WIDTH: f64 = 1e-3;
const ROOT_RESIDUAL_TOL: f64 = 1e-13;
const DEFLATION_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 500;

/// Dense polynomial, coefficients in ascending degree order, trailing zeros
/// trimmed so that the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

/// A positive root together with its certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositiveRoot {
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameters("coefficients must be finite".into()));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }

    pub fn derivative_at(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (j, &a)| acc * x + a * j as f64)
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|a| a.abs()).sum()
    }

    /// Number of sign alternations in the coefficient sequence, zeros skipped.
    pub fn sign_changes(&self) -> usize {
        let mut last = 0.0f64;
        let mut changes = 0;
        for &a in self.coeffs.iter().filter(|a| **a != 0.0) {
            if last != 0.0 && (a > 0.0) != (last > 0.0) {
                changes += 1;
            }
            last = a;
        }
        changes
    }

    /// Quotient of synthetic division by `(x - 1)`.
    ///
    /// Fails with [`Error::NotARootAtOne`] unless `|p(1)|` is below
    /// `1e-12 * sum |a_i|`.
    pub fn deflate_at_one(&self) -> Result<RealPoly> {
        let (quotient, remainder) = self.divide_by_linear(1.0);
        if remainder.abs() >= DEFLATION_TOL * self.abs_coeff_sum() {
            return Err(Error::NotARootAtOne(remainder));
        }
        if quotient.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        RealPoly::new(quotient)
    }

    /// Synthetic division by `(x - root)`: returns ascending quotient
    /// coefficients and the remainder.
    fn divide_by_linear(&self, root: f64) -> (Vec<f64>, f64) {
        let deg = self.degree();
        let mut quotient = vec![0.0; deg];
        let mut carry = 0.0;
        for j in (1..=deg).rev() {
            carry = carry * root + self.coeffs[j];
            quotient[j - 1] = carry;
        }
        (quotient, carry * root + self.coeffs[0])
    }

    /// The unique positive root of a polynomial with exactly one Descartes
    /// sign change: bracket expansion, bisection down to width `1e-3`, then a
    /// Newton polish guarded by the bracket.
    pub fn positive_root_bracketed(&self) -> Result<PositiveRoot> {
        if self.sign_changes() != 1 {
            return Err(Error::NoSignChange);
        }
        // Strip powers of x: roots at the origin are not positive.
        let shift = self.coeffs.iter().take_while(|a| **a == 0.0).count();
        let p = RealPoly {
            coeffs: self.coeffs[shift..].to_vec(),
        };

        let lo_sign = p.coeffs[0].signum();
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut iterations = 0;
        while p.eval(hi).signum() == lo_sign {
            lo = hi;
            hi *= 2.0;
            iterations += 1;
            if iterations > MAX_ITERATIONS || !hi.is_finite() {
                return Err(Error::NonConvergence(iterations));
            }
        }

        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            let v = p.eval(mid);
            if v == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if v.signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }

        let mut x = 0.5 * (lo + hi);
        let tol = ROOT_RESIDUAL_TOL * self.abs_coeff_sum();
        loop {
            let v = p.eval(x);
            if v == 0.0 {
                break;
            }
            if iterations >= MAX_ITERATIONS {
                return Err(Error::NonConvergence(iterations));
            }
            iterations += 1;
            if v.signum() == lo_sign {
                lo = x;
            } else {
                hi = x;
            }
            let d = p.derivative_at(x);
            let newton = x - v / d;
            let next = if d != 0.0 && newton >= lo && newton <= hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            let moved = (next - x).abs();
            x = next;
            if moved <= 2.0 * f64::EPSILON * x || hi - lo <= 2.0 * f64::EPSILON * hi {
                break;
            }
        }
        let residual = self.eval(x).abs();
        if residual > tol * x.max(1.0).powi(self.degree() as i32) {
            return Err(Error::NonConvergence(iterations));
        }
        Ok(PositiveRoot {
            value: x,
            residual,
            iterations,
        })
    }
}
