//! Relaxation and direct solvers for the assembled bonded systems.
//!
//! The convergence measure is the largest Jacobi correction `|r_k / a_kk|`
//! relative to the largest displacement, so it is insensitive to how each
//! equation class is scaled.

mod banded;
pub mod checkpoint;
mod energy;
mod sparse;
mod system;

use std::time::Instant;

pub use banded::BandedLu;
pub use energy::discrete_energy;
pub use sparse::Csr;
pub use system::{assemble_shell, LinearSystem};
pub(crate) use system::{foundation_rows, RowBuilder};

use crate::error::{Error, Result};
use crate::geometry::validate_shell_assumption;
use crate::grid::{Field2D, Grid};
use crate::material::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Double-buffered damped Jacobi.
    Jacobi,
    /// Successive over-relaxation in natural node order.
    Sor,
    /// Banded LU with iterative refinement.
    Direct,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobi" => Ok(Method::Jacobi),
            "sor" => Ok(Method::Sor),
            "direct" => Ok(Method::Direct),
            _ => Err(Error::InvalidParameter(format!("unknown method {s:?}"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Jacobi => "jacobi",
            Method::Sor => "sor",
            Method::Direct => "direct",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    pub tol: f64,
    pub max_iter: usize,
    pub relax: f64,
    /// Threads used for a sweep; 0 uses the global pool.
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::Jacobi,
            tol: 1e-8,
            max_iter: 5_000_000,
            relax: 0.6,
            workers: 0,
        }
    }
}

impl SolverConfig {
    pub fn direct() -> Self {
        SolverConfig {
            method: Method::Direct,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol = {}", self.tol)));
        }
        if !(self.relax > 0.0 && self.relax < 2.0) {
            return Err(Error::InvalidParameter(format!("relax = {}", self.relax)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub method: Method,
    pub iterations: usize,
    /// Convergence measure, every iteration up to 1000 and every 1000th after.
    pub residual_history: Vec<f64>,
    pub final_residual: f64,
    pub converged: bool,
    pub runtime: f64,
}

/// Relative measure used for convergence: `max |r_k / a_kk| / max |x|`.
pub fn relative_correction(sys: &LinearSystem, x: &[f64]) -> f64 {
    normalise(sys.a.scaled_residual(x, &sys.b), x)
}

fn normalise(correction: f64, x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale > 0.0 {
        correction / scale
    } else if correction == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn keep(iter: usize) -> bool {
    iter <= 1000 || iter.is_multiple_of(1000)
}

fn pool(workers: usize) -> Result<Option<rayon::ThreadPool>> {
    if workers == 0 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map(Some)
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))
}

/// Solves `A x = b` from `x0`.
///
/// Divergence is an error; running out of iterations is reported through
/// `converged = false`.
pub fn solve_system(sys: &LinearSystem, x0: Option<Vec<f64>>, cfg: &SolverConfig) -> Result<(Vec<f64>, SolveReport)> {
    cfg.validate()?;
    let n = sys.a.dim();
    let x = x0.unwrap_or_else(|| vec![0.0; n]);
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let run = || match cfg.method {
        Method::Direct => direct(sys, x),
        Method::Jacobi | Method::Sor => relax(sys, x, cfg),
    };
    let start = Instant::now();
    let (x, mut report) = match pool(cfg.workers)? {
        Some(p) => p.install(run),
        None => run(),
    }?;
    report.runtime = start.elapsed().as_secs_f64();
    report.converged = report.final_residual <= cfg.tol;
    Ok((x, report))
}

fn relax(sys: &LinearSystem, mut x: Vec<f64>, cfg: &SolverConfig) -> Result<(Vec<f64>, SolveReport)> {
    let mut history = Vec::new();
    let mut scratch = x.clone();
    let mut last = f64::INFINITY;
    let mut iterations = 0;
    if sys.b.iter().all(|&v| v == 0.0) && x.iter().all(|&v| v == 0.0) {
        last = 0.0;
    }
    while iterations < cfg.max_iter && !(last <= cfg.tol) {
        iterations += 1;
        let correction = match cfg.method {
            Method::Jacobi => {
                let c = sys.a.jacobi_into(&x, &sys.b, cfg.relax, &mut scratch);
                std::mem::swap(&mut x, &mut scratch);
                c
            }
            _ => sys.a.sor_sweep(&mut x, &sys.b, cfg.relax),
        };
        if !correction.is_finite() {
            return Err(Error::Divergence {
                iteration: iterations,
            });
        }
        last = normalise(correction, &x);
        if keep(iterations) {
            history.push(last);
        }
    }
    Ok((
        x,
        SolveReport {
            method: cfg.method,
            iterations,
            residual_history: history,
            final_residual: last,
            converged: false,
            runtime: 0.0,
        },
    ))
}

/// Refinement steps after the banded solve.
const REFINE: usize = 3;

fn direct(sys: &LinearSystem, _x0: Vec<f64>) -> Result<(Vec<f64>, SolveReport)> {
    let lu = BandedLu::factor(&sys.a)?;
    let mut x = lu.solve(&sys.b);
    let mut history = vec![relative_correction(sys, &x)];
    for _ in 0..REFINE {
        let r = sys.a.residual(&x, &sys.b);
        let dx = lu.solve(&r);
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi += d;
        }
        history.push(relative_correction(sys, &x));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergence { iteration: 0 });
    }
    let last = *history.last().unwrap();
    Ok((
        x,
        SolveReport {
            method: Method::Direct,
            iterations: REFINE + 1,
            residual_history: history,
            final_residual: last,
            converged: false,
            runtime: 0.0,
        },
    ))
}

/// One damped Jacobi sweep of the bonded shell system from `u`.
///
/// Returns the new field and the largest update.
pub fn jacobi_sweep(u: &Field2D, p: &ModelParams, g: &Grid, relax: f64) -> Result<(Field2D, f64)> {
    u.check_shape(g)?;
    let sys = assemble_shell(p, g)?;
    let mut out = vec![0.0; sys.a.dim()];
    let c = sys.a.jacobi_into(u.as_slice(), &sys.b, relax, &mut out);
    if !c.is_finite() {
        return Err(Error::Divergence { iteration: 1 });
    }
    Ok((Field2D::from_vec(g.n, g.m, out), relax * c))
}

/// Solves the bonded shell model on `g`.
pub fn solve(p: &ModelParams, g: &Grid, cfg: &SolverConfig) -> Result<(Field2D, SolveReport)> {
    validate_shell_assumption(&p.surface, p.thickness)?;
    let sys = assemble_shell(p, g)?;
    let (x, report) = solve_system(&sys, None, cfg)?;
    Ok((Field2D::from_vec(g.n, g.m, x), report))
}
