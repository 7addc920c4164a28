//! The quadrinomial family and pointwise differential quantities.
//!
//! A harmonic polynomial splits as `f = h + conj(g)` with `h`, `g` analytic.
//! For the quadrinomial, `h(z) = b z^k + z` and `g(z) = z^n + c z^m`, so
//! `f_z = h'` and `f_zbar = conj(g')`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexPoint = Complex64;

/// Default relative tolerance used to decide that a Jacobian is zero.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-12;

const POLE_TOL: f64 = 1e-14;

/// Local orientation of a harmonic map, read off the sign of its Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrientationClass {
    SensePreserving,
    SenseReversing,
    Singular,
}

impl OrientationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OrientationClass::SensePreserving => "SensePreserving",
            OrientationClass::SenseReversing => "SenseReversing",
            OrientationClass::Singular => "Singular",
        }
    }

    /// +1 / -1 / 0, the contribution of a zero to the argument principle.
    pub fn sign(self) -> i64 {
        match self {
            OrientationClass::SensePreserving => 1,
            OrientationClass::SenseReversing => -1,
            OrientationClass::Singular => 0,
        }
    }
}

impl std::fmt::Display for OrientationClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A harmonic polynomial `h + conj(g)` evaluated pointwise.
///
/// Contours and circle images only need this surface, which lets test
/// harnesses swap in maps with the co-analytic part removed.
pub trait HarmonicMap {
    fn evaluate(&self, z: Complex64) -> Complex64;

    /// `h'(z)`.
    fn analytic_derivative(&self, z: Complex64) -> Complex64;

    /// `g'(z)`.
    fn coanalytic_derivative(&self, z: Complex64) -> Complex64;

    /// Sum of the moduli of the individual terms of `f` at `z`.
    fn magnitude_scale(&self, z: Complex64) -> f64;

    /// Sum of the moduli of the individual terms of `h'` at `z`.
    fn analytic_derivative_scale(&self, z: Complex64) -> f64;

    /// Upper bound for `|h'(w)| + |g'(w)|` over the closed disk `|w| <= rho`.
    fn gradient_bound(&self, rho: f64) -> f64;

    /// `|h'|^2 - |g'|^2`.
    fn jacobian(&self, z: Complex64) -> f64 {
        self.analytic_derivative(z).norm_sqr() - self.coanalytic_derivative(z).norm_sqr()
    }

    /// `omega = g' / h'`.
    fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        let hp = self.analytic_derivative(z);
        if hp.norm() < POLE_TOL * self.analytic_derivative_scale(z).max(1.0) {
            return Err(Error::PoleAtCriticalPoint { re: z.re, im: z.im });
        }
        Ok(self.coanalytic_derivative(z) / hp)
    }

    /// Classifies `z` by the sign of the Jacobian, treating
    /// `|J| <= tol * max(1, |h'|^2 + |g'|^2)` as zero.
    fn classify_point(&self, z: Complex64, tol: f64) -> OrientationClass {
        let hp = self.analytic_derivative(z).norm_sqr();
        let gp = self.coanalytic_derivative(z).norm_sqr();
        let jac = hp - gp;
        let cutoff = tol * (hp + gp).max(1.0);
        if jac > cutoff {
            OrientationClass::SensePreserving
        } else if jac < -cutoff {
            OrientationClass::SenseReversing
        } else {
            OrientationClass::Singular
        }
    }
}

/// `q(z) = b z^k + conj(z)^n + c conj(z)^m + z`.
///
/// Operation-specific hypotheses (nonzero coefficients, `k > n`, ...) are checked
/// by the operations that need them; construction only enforces `n > m >= 1`,
/// `k >= 1` and finite coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicQuadrinomial {
    b: f64,
    c: f64,
    k: u32,
    n: u32,
    m: u32,
}

impl HarmonicQuadrinomial {
    pub fn new(b: f64, c: f64, k: u32, n: u32, m: u32) -> Result<Self> {
        if !b.is_finite() || !c.is_finite() {
            return Err(Error::InvalidParameters("b and c must be finite".into()));
        }
        if k < 1 {
            return Err(Error::InvalidParameters("k must be at least 1".into()));
        }
        if m < 1 || n <= m {
            return Err(Error::InvalidParameters("degrees must satisfy n > m >= 1".into()));
        }
        Ok(Self { b, c, k, n, m })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Upper bound for `|h''(w)| + |g''(w)|` over the closed disk `|w| <= rho`.
    pub fn second_derivative_bound(&self, rho: f64) -> f64 {
        let term = |coef: f64, d: u32| {
            if d < 2 {
                0.0
            } else {
                coef * (d * (d - 1)) as f64 * rho.powi(d as i32 - 2)
            }
        };
        term(self.b.abs(), self.k) + term(1.0, self.n) + term(self.c.abs(), self.m)
    }

    /// Largest degree appearing in either part.
    pub fn degree(&self) -> u32 {
        if self.b == 0.0 {
            self.n
        } else {
            self.k.max(self.n)
        }
    }
}

impl HarmonicMap for HarmonicQuadrinomial {
    fn evaluate(&self, z: Complex64) -> Complex64 {
        let analytic = self.b * z.powu(self.k) + z;
        let coanalytic = z.powu(self.n) + self.c * z.powu(self.m);
        analytic + coanalytic.conj()
    }

    fn analytic_derivative(&self, z: Complex64) -> Complex64 {
        self.b * self.k as f64 * z.powu(self.k - 1) + 1.0
    }

    fn coanalytic_derivative(&self, z: Complex64) -> Complex64 {
        self.n as f64 * z.powu(self.n - 1) + self.c * self.m as f64 * z.powu(self.m - 1)
    }

    fn magnitude_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.b.abs() * r.powi(self.k as i32) + r.powi(self.n as i32) + self.c.abs() * r.powi(self.m as i32) + r
    }

    fn analytic_derivative_scale(&self, z: Complex64) -> f64 {
        1.0 + self.b.abs() * self.k as f64 * z.norm().powi(self.k as i32 - 1)
    }

    fn gradient_bound(&self, rho: f64) -> f64 {
        let (k, n, m) = (self.k as f64, self.n as f64, self.m as f64);
        self.b.abs() * k * rho.powi(self.k as i32 - 1)
            + 1.0
            + n * rho.powi(self.n as i32 - 1)
            + self.c.abs() * m * rho.powi(self.m as i32 - 1)
    }
}

/// A general harmonic polynomial with real coefficients, stored dense in
/// ascending degree order for both parts.
///
/// Mostly useful as a comparison harness: e.g. the quadrinomial with its
/// co-analytic part stripped, `HarmonicPolynomial::new(vec![0., 1., 0., 1.], vec![])`
/// is `z^3 + z`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPolynomial {
    analytic: Vec<f64>,
    coanalytic: Vec<f64>,
}

impl HarmonicPolynomial {
    pub fn new(analytic: Vec<f64>, coanalytic: Vec<f64>) -> Self {
        Self { analytic, coanalytic }
    }

    pub fn analytic(&self) -> &[f64] {
        &self.analytic
    }

    pub fn coanalytic(&self) -> &[f64] {
        &self.coanalytic
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn horner_derivative(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (j, &a)| acc * z + a * j as f64)
}

fn abs_sum(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &a| acc * r + a.abs())
}

fn abs_sum_derivative(coeffs: &[f64], r: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (j, &a)| acc * r + a.abs() * j as f64)
}

impl HarmonicMap for HarmonicPolynomial {
    fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(&self.analytic, z) + horner(&self.coanalytic, z).conj()
    }

    fn analytic_derivative(&self, z: Complex64) -> Complex64 {
        horner_derivative(&self.analytic, z)
    }

    fn coanalytic_derivative(&self, z: Complex64) -> Complex64 {
        horner_derivative(&self.coanalytic, z)
    }

    fn magnitude_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        abs_sum(&self.analytic, r) + abs_sum(&self.coanalytic, r)
    }

    fn analytic_derivative_scale(&self, z: Complex64) -> f64 {
        abs_sum_derivative(&self.analytic, z.norm())
    }

    fn gradient_bound(&self, rho: f64) -> f64 {
        abs_sum_derivative(&self.analytic, rho) + abs_sum_derivative(&self.coanalytic, rho)
    }
}
