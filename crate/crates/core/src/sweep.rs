//! Parameter sweeps over a `(b, c)` grid with fixed degrees.

use rayon::prelude::*;

use crate::bounds::radius_bound;
use crate::error::{Error, Result};
use crate::quad_model::HarmonicQuadrinomial;
use crate::zero_finder::{find_zeros, SolveConfig, WindingCheck};

/// `steps` equally spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    pub fn value(&self, i: usize) -> f64 {
        if self.steps <= 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub b_axis: Axis,
    pub c_axis: Axis,
    pub k: u32,
    pub n: u32,
    pub m: u32,
    pub config: SolveConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    None,
    /// The count exceeds an unproven upper bound; reported, not an error.
    Conjectural,
    /// The count exceeds a proven upper bound; indicates a solver defect.
    Proven,
}

impl Violation {
    pub fn as_str(self) -> &'static str {
        match self {
            Violation::None => "none",
            Violation::Conjectural => "conjectural",
            Violation::Proven => "proven",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub b: f64,
    pub c: f64,
    /// `None` when the cell could not be solved; see `error`.
    pub count: Option<usize>,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_singular: usize,
    pub bound_upper: Option<u64>,
    pub bound_proven: Option<bool>,
    pub radius: Option<f64>,
    pub winding_check: Option<WindingCheck>,
    pub violation: Violation,
    pub error: Option<Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    /// Row-major: `b` index outer, `c` index inner.
    pub cells: Vec<SweepCell>,
}

fn solve_cell(spec: &SweepSpec, b: f64, c: f64) -> SweepCell {
    let mut cell = SweepCell {
        b,
        c,
        count: None,
        n_plus: 0,
        n_minus: 0,
        n_singular: 0,
        bound_upper: None,
        bound_proven: None,
        radius: None,
        winding_check: None,
        violation: Violation::None,
        error: None,
    };
    let p = match HarmonicQuadrinomial::new(b, c, spec.k, spec.n, spec.m) {
        Ok(p) => p,
        Err(e) => {
            cell.error = Some(e);
            return cell;
        }
    };
    let disk = radius_bound(&p);
    cell.radius = disk.is_available().then_some(disk.radius);
    match find_zeros(&p, &spec.config) {
        Ok(report) => {
            cell.count = Some(report.count);
            cell.n_plus = report.n_plus;
            cell.n_minus = report.n_minus;
            cell.n_singular = report.n_singular;
            cell.bound_upper = report.bound.map(|b| b.upper);
            cell.bound_proven = report.bound.map(|b| b.upper_is_proven);
            cell.winding_check = Some(report.winding_check);
            cell.violation = if report.exceeds_proven_bound() {
                Violation::Proven
            } else if report.exceeds_conjectural_bound() {
                Violation::Conjectural
            } else {
                Violation::None
            };
        }
        Err(e) => cell.error = Some(e),
    }
    cell
}

/// Solves every grid cell on a pool of `threads` workers. Cell order, and
/// therefore the output, does not depend on the thread count.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<SweepGrid> {
    spec.config.validate()?;
    HarmonicQuadrinomial::new(0.0, 0.0, spec.k, spec.n, spec.m)?;
    if spec.b_axis.steps == 0 || spec.c_axis.steps == 0 {
        return Err(Error::InvalidParameters("sweep axes need at least one step".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let (nb, nc) = (spec.b_axis.steps, spec.c_axis.steps);
    let cells = pool.install(|| {
        (0..nb * nc)
            .into_par_iter()
            .map(|idx| solve_cell(spec, spec.b_axis.value(idx / nc), spec.c_axis.value(idx % nc)))
            .collect()
    });
    Ok(SweepGrid { spec: *spec, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_endpoints() {
        let a = Axis {
            lo: -1.0,
            hi: 1.0,
            steps: 5,
        };
        assert_eq!(a.value(0), -1.0);
        assert_eq!(a.value(2), 0.0);
        assert_eq!(a.value(4), 1.0);
        assert_eq!(
            Axis {
                lo: 3.0,
                hi: 9.0,
                steps: 1
            }
            .value(0),
            3.0
        );
    }

    #[test]
    fn small_sweep_is_ordered_and_complete() {
        let spec = SweepSpec {
            b_axis: Axis {
                lo: 0.0,
                hi: 1.0,
                steps: 3,
            },
            c_axis: Axis {
                lo: -1.0,
                hi: 1.0,
                steps: 2,
            },
            k: 3,
            n: 2,
            m: 1,
            config: SolveConfig::default(),
        };
        let grid = run_sweep(&spec, 2).unwrap();
        assert_eq!(grid.cells.len(), 6);
        assert_eq!((grid.cells[1].b, grid.cells[1].c), (0.0, 1.0));
        assert_eq!((grid.cells[2].b, grid.cells[2].c), (0.5, -1.0));
        for cell in &grid.cells {
            assert!(cell.count.unwrap() >= 1);
            assert_ne!(cell.violation, Violation::Proven);
        }
    }

    #[test]
    fn unavailable_cells_are_reported() {
        let spec = SweepSpec {
            b_axis: Axis {
                lo: 1.0,
                hi: 1.0,
                steps: 1,
            },
            c_axis: Axis {
                lo: 0.5,
                hi: 0.5,
                steps: 1,
            },
            k: 2,
            n: 2,
            m: 1,
            config: SolveConfig::default(),
        };
        let grid = run_sweep(&spec, 1).unwrap();
        assert_eq!(grid.cells[0].count, None);
        assert_eq!(grid.cells[0].error, Some(Error::BoundUnavailable));
    }
}
