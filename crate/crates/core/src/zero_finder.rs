//! Locating every zero of `q`.
//!
//! The search region is the square circumscribing `D(0, R + 1)`, where `R`
//! comes from [`radius_bound`]. It is subdivided into a quadtree; a cell with
//! center `z0` and half-diagonal `r` is discarded when
//!
//! ```text
//! |q(z0)| > L r,    L = sup_{|w| <= |z0| + r} (|h'(w)| + |g'(w)|),
//! ```
//!
//! which certifies that `q` has no zero in the cell. Newton's method on the
//! real 2x2 system is started from several points of each surviving leaf,
//! accepted points are merged, and the result is checked against the winding
//! number on `C(0, R + 1)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{count_bound, radius_bound, CountBound, DiskBound};
use crate::contour::{winding_number, Contour};
use crate::error::{Error, Result};
use crate::quad_model::{HarmonicMap, HarmonicQuadrinomial, OrientationClass, DEFAULT_SINGULAR_TOL};

const NEWTON_DEGENERACY_TOL: f64 = 1e-14;
const BACKTRACK_STEPS: usize = 12;

/// Solver knobs. `merge_radius = None` means `1e-7 * max(1, R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    /// Accept a Newton end point when `|q| <= accept_tol * max(1, term scale)`.
    pub accept_tol: f64,
    pub merge_radius: Option<f64>,
    pub max_depth: u32,
    /// Pseudo-random starts per leaf, on top of the center and four corners.
    pub extra_starts: usize,
    pub seed: u64,
    /// Relative Jacobian tolerance for the singular class.
    pub singular_tol: f64,
    pub max_newton_iterations: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            accept_tol: 1e-10,
            merge_radius: None,
            max_depth: 12,
            extra_starts: 8,
            seed: 0,
            singular_tol: DEFAULT_SINGULAR_TOL,
            max_newton_iterations: 100,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !positive(self.accept_tol) || !positive(self.singular_tol) {
            return Err(Error::InvalidParameters("tolerances must be positive".into()));
        }
        if let Some(r) = self.merge_radius {
            if !positive(r) {
                return Err(Error::InvalidParameters("merge radius must be positive".into()));
            }
        }
        if self.max_depth > 30 {
            return Err(Error::InvalidParameters("max depth must be at most 30".into()));
        }
        Ok(())
    }

    pub fn merge_radius_for(&self, radius: f64) -> f64 {
        self.merge_radius.unwrap_or(1e-7 * radius.max(1.0))
    }
}

/// One located zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub location: Complex64,
    /// `|q(location)|`.
    pub residual: f64,
    pub jacobian: f64,
    pub orientation: OrientationClass,
    /// Number of numerically distinct points merged into this zero.
    pub multiplicity_hint: usize,
}

/// Outcome of comparing `sum sign(J)` with the winding number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindingCheck {
    Passed,
    Failed,
    /// A singular zero lies inside the contour, or the winding number could
    /// not be computed.
    Inconclusive,
}

impl WindingCheck {
    pub fn as_str(self) -> &'static str {
        match self {
            WindingCheck::Passed => "passed",
            WindingCheck::Failed => "failed",
            WindingCheck::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSetReport {
    pub zeros: Vec<ZeroRecord>,
    pub count: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_singular: usize,
    /// `None` when the count bound's degree hypotheses fail.
    pub bound: Option<CountBound>,
    pub disk: DiskBound,
    pub winding_check: WindingCheck,
    /// Winding number on `C(0, R + 1)` when it could be computed.
    pub winding: Option<i64>,
    /// Leaves where no Newton start converged.
    pub unconverged_leaves: usize,
}

impl ZeroSetReport {
    /// `sum sign(J)` over zeros strictly inside `|z| < radius`, or `None`
    /// when one of them is singular.
    pub fn orientation_sum_within(&self, radius: f64) -> Option<i64> {
        let mut sum = 0;
        for z in self.zeros.iter().filter(|z| z.location.norm() < radius) {
            if z.orientation == OrientationClass::Singular {
                return None;
            }
            sum += z.orientation.sign();
        }
        Some(sum)
    }

    pub fn exceeds_proven_bound(&self) -> bool {
        self.bound
            .is_some_and(|b| b.upper_is_proven && self.count as u64 > b.upper)
    }

    pub fn exceeds_conjectural_bound(&self) -> bool {
        self.bound
            .is_some_and(|b| !b.upper_is_proven && self.count as u64 > b.upper)
    }
}

/// `(Re q(z), Im q(z))`.
pub fn real_system(p: &HarmonicQuadrinomial, z: Complex64) -> (f64, f64) {
    let w = p.evaluate(z);
    (w.re, w.im)
}

/// One damped Newton update for `q(z) = 0` seen as two real equations.
///
/// With `A = h'(z)` and `B = conj(g'(z))` the linearisation is
/// `A d + B conj(d) = -q`, solved by `d = (B conj(q) - conj(A) q) / J` where
/// `J = |A|^2 - |B|^2` is the determinant of the real 2x2 system. The step is
/// clamped to `max_step` and halved while it fails to decrease `|q|`.
pub fn newton_step<F: HarmonicMap + ?Sized>(p: &F, z: Complex64, max_step: f64) -> Result<Complex64> {
    let q = p.evaluate(z);
    let a = p.analytic_derivative(z);
    let b = p.coanalytic_derivative(z).conj();
    let (aa, bb) = (a.norm_sqr(), b.norm_sqr());
    let det = aa - bb;
    if det.abs() <= NEWTON_DEGENERACY_TOL * (aa + bb).max(1.0) || !det.is_finite() {
        return Err(Error::DegenerateJacobian { re: z.re, im: z.im });
    }
    let mut step = (b * q.conj() - a.conj() * q) / det;
    let len = step.norm();
    if len > max_step {
        step *= max_step / len;
    }
    let current = q.norm();
    for _ in 0..BACKTRACK_STEPS {
        if p.evaluate(z + step).norm() < current {
            break;
        }
        step *= 0.5;
    }
    Ok(z + step)
}

/// Runs Newton from `start`; returns the end point and its residual when it
/// passes the acceptance test.
fn polish<F: HarmonicMap + ?Sized>(
    p: &F,
    start: Complex64,
    max_step: f64,
    cfg: &SolveConfig,
) -> Option<(Complex64, f64)> {
    let mut z = start;
    let mut polishing = false;
    for _ in 0..cfg.max_newton_iterations {
        let next = match newton_step(p, z, max_step) {
            Ok(next) => next,
            Err(_) => break,
        };
        let moved = (next - z).norm();
        z = next;
        if moved <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
        let residual = p.evaluate(z).norm();
        if residual <= 1e-3 * cfg.accept_tol * p.magnitude_scale(z).max(1.0) {
            if polishing {
                break;
            }
            polishing = true;
        }
    }
    let residual = p.evaluate(z).norm();
    (residual <= cfg.accept_tol * p.magnitude_scale(z).max(1.0)).then_some((z, residual))
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    ix: u64,
    iy: u64,
}

struct Quadtree {
    half_width: f64,
}

impl Quadtree {
    fn cell_width(&self, depth: u32) -> f64 {
        2.0 * self.half_width / (1u64 << depth) as f64
    }

    fn center(&self, cell: Cell, depth: u32) -> Complex64 {
        let w = self.cell_width(depth);
        Complex64::new(
            -self.half_width + (cell.ix as f64 + 0.5) * w,
            -self.half_width + (cell.iy as f64 + 0.5) * w,
        )
    }

    /// Surviving cells at `max_depth`, in deterministic order.
    fn leaves<F: HarmonicMap + Sync + ?Sized>(&self, p: &F, max_depth: u32) -> Vec<Cell> {
        let mut level = vec![Cell { ix: 0, iy: 0 }];
        for depth in 0..=max_depth {
            let half_diag = self.cell_width(depth) * std::f64::consts::FRAC_1_SQRT_2;
            level.retain(|&cell| {
                let z0 = self.center(cell, depth);
                let lipschitz = p.gradient_bound(z0.norm() + half_diag);
                // 1e-12 slack absorbs rounding in |q(z0)|
                p.evaluate(z0).norm() <= lipschitz * half_diag * (1.0 + 1e-12) + 1e-300
            });
            if depth == max_depth {
                break;
            }
            level = level
                .iter()
                .flat_map(|c| {
                    let (x, y) = (2 * c.ix, 2 * c.iy);
                    [
                        Cell { ix: x, iy: y },
                        Cell { ix: x + 1, iy: y },
                        Cell { ix: x, iy: y + 1 },
                        Cell { ix: x + 1, iy: y + 1 },
                    ]
                })
                .collect();
        }
        level
    }
}

fn leaf_seed(seed: u64, cell: Cell) -> u64 {
    let key = cell.ix.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ cell.iy.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    seed ^ key.rotate_left(17)
}

/// An accepted Newton end point.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    z: Complex64,
    residual: f64,
    /// Radius of the ball certified to hold a simple zero, when the
    /// Kantorovich test passes.
    certified_radius: Option<f64>,
}

impl Candidate {
    /// The smallest singular value of the real derivative is
    /// `sigma = ||h'| - |g'||`. With `H` bounding the second derivatives near
    /// `z`, `H r / sigma^2 <= 1/2` guarantees a simple zero within `2 r / sigma`.
    fn new(p: &HarmonicQuadrinomial, z: Complex64, residual: f64) -> Self {
        let sigma = (p.analytic_derivative(z).norm() - p.coanalytic_derivative(z).norm()).abs();
        let certified_radius = (sigma > 0.0).then(|| 2.0 * residual / sigma).filter(|&radius| {
            let curvature = p.second_derivative_bound(z.norm() + radius);
            curvature * residual <= 0.5 * sigma * sigma
        });
        Self {
            z,
            residual,
            certified_radius,
        }
    }

    fn exact(z: Complex64) -> Self {
        Self {
            z,
            residual: 0.0,
            certified_radius: Some(0.0),
        }
    }
}

struct Cluster {
    best: Candidate,
    distinct: Vec<Complex64>,
    certified: bool,
}

/// Groups candidates into zeros.
///
/// Certified candidates join a cluster when they lie within `radius` plus both
/// certified radii. Uncertified ones sit near a degenerate zero where `|q|` is
/// flat; they join the nearest cluster within `coarse`, or form their own.
fn merge_points(points: impl IntoIterator<Item = Candidate>, radius: f64, coarse: f64) -> Vec<Cluster> {
    let fine = radius * 1e-3;
    let (certified, loose): (Vec<Candidate>, Vec<Candidate>) =
        points.into_iter().partition(|c| c.certified_radius.is_some());

    let mut clusters: Vec<Cluster> = Vec::new();
    for cand in certified {
        let spread = cand.certified_radius.unwrap_or(0.0);
        let joined = clusters
            .iter_mut()
            .find(|c| (c.best.z - cand.z).norm() <= radius + spread + c.best.certified_radius.unwrap_or(0.0));
        match joined {
            Some(c) => {
                if c.distinct.iter().all(|d| (d - cand.z).norm() > fine) {
                    c.distinct.push(cand.z);
                }
                if cand.residual < c.best.residual {
                    c.best = cand;
                }
            }
            None => clusters.push(Cluster {
                best: cand,
                distinct: vec![cand.z],
                certified: true,
            }),
        }
    }
    for cand in loose {
        let nearest = clusters
            .iter_mut()
            .map(|c| ((c.best.z - cand.z).norm(), c))
            .filter(|(d, _)| *d <= coarse)
            .min_by(|a, b| a.0.total_cmp(&b.0));
        match nearest {
            Some((_, c)) => {
                if !c.certified && cand.residual < c.best.residual {
                    c.best = cand;
                }
            }
            None => clusters.push(Cluster {
                best: cand,
                distinct: vec![],
                certified: false,
            }),
        }
    }
    clusters
}

/// Locates all zeros of `p` in the square circumscribing `D(0, R + 1)`.
pub fn find_zeros(p: &HarmonicQuadrinomial, cfg: &SolveConfig) -> Result<ZeroSetReport> {
    cfg.validate()?;
    let disk = radius_bound(p);
    if !disk.is_available() {
        return Err(Error::BoundUnavailable);
    }
    let search = disk.radius + 1.0;
    let tree = Quadtree { half_width: search };
    let leaves = tree.leaves(p, cfg.max_depth);
    let width = tree.cell_width(cfg.max_depth);
    let max_step = width * std::f64::consts::SQRT_2;

    let per_leaf: Vec<Vec<Candidate>> = leaves
        .par_iter()
        .map(|&cell| {
            let center = tree.center(cell, cfg.max_depth);
            let h = 0.5 * width;
            let mut starts = vec![
                center,
                center + Complex64::new(-h, -h),
                center + Complex64::new(h, -h),
                center + Complex64::new(h, h),
                center + Complex64::new(-h, h),
            ];
            let mut rng = ChaCha8Rng::seed_from_u64(leaf_seed(cfg.seed, cell));
            starts.extend(
                (0..cfg.extra_starts).map(|_| center + Complex64::new(rng.gen_range(-h..h), rng.gen_range(-h..h))),
            );
            starts
                .into_iter()
                .filter_map(|s| polish(p, s, max_step, cfg))
                .map(|(z, residual)| Candidate::new(p, z, residual))
                .collect()
        })
        .collect();
    let unconverged_leaves = per_leaf.iter().filter(|v| v.is_empty()).count();

    let merge_radius = cfg.merge_radius_for(disk.radius);
    // q(0) = 0 for every parameter set; seeding it exactly keeps a degenerate
    // origin from being represented by a slowly converging neighbour.
    let origin = Candidate::exact(Complex64::new(0.0, 0.0));
    let coarse = 2.0 * max_step;
    let clusters = merge_points(
        std::iter::once(origin).chain(per_leaf.into_iter().flatten()),
        merge_radius,
        coarse,
    );

    let mut zeros: Vec<ZeroRecord> = clusters
        .into_iter()
        .map(|c| {
            let z = c.best.z;
            ZeroRecord {
                location: z,
                residual: c.best.residual,
                jacobian: p.jacobian(z),
                // a cluster without any certified simple zero is numerically degenerate
                orientation: if c.certified {
                    p.classify_point(z, cfg.singular_tol)
                } else {
                    OrientationClass::Singular
                },
                multiplicity_hint: c.distinct.len().max(1),
            }
        })
        .collect();
    zeros.sort_by(|a, b| {
        a.location
            .re
            .total_cmp(&b.location.re)
            .then(a.location.im.total_cmp(&b.location.im))
    });

    let count_of = |o: OrientationClass| zeros.iter().filter(|z| z.orientation == o).count();
    let (n_plus, n_minus, n_singular) = (
        count_of(OrientationClass::SensePreserving),
        count_of(OrientationClass::SenseReversing),
        count_of(OrientationClass::Singular),
    );

    let mut report = ZeroSetReport {
        count: zeros.len(),
        zeros,
        n_plus,
        n_minus,
        n_singular,
        bound: count_bound(p).ok(),
        disk,
        winding_check: WindingCheck::Inconclusive,
        winding: None,
        unconverged_leaves,
    };

    let contour = Contour::circle(Complex64::new(0.0, 0.0), search)?;
    if let Ok(w) = winding_number(p, &contour) {
        report.winding = Some(w.winding);
        if let Some(sum) = report.orientation_sum_within(search) {
            report.winding_check = if sum == w.winding {
                WindingCheck::Passed
            } else {
                WindingCheck::Failed
            };
        }
    }
    Ok(report)
}

/// Number of distinct zeros found by [`find_zeros`].
pub fn count_zeros(p: &HarmonicQuadrinomial, cfg: &SolveConfig) -> Result<usize> {
    find_zeros(p, cfg).map(|r| r.count)
}
