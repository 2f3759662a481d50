//! Comparison of the bonded shell model against the two-body model, and
//! parameter sweeps of that comparison.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::closed_form::scales;
use crate::error::{Error, Result};
use crate::grid::{Field2D, Grid, Psi0Rule};
use crate::material::{Deltas, ModelParams};
use crate::solver::{solve, SolverConfig};
use crate::two_body::{solve_two_body, TwoBodyField, TwoBodyGrids};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// `u²`
    Azimuthal,
    /// `u³`
    Radial,
}

/// `‖a − b‖ / ‖a + b‖` over the foundation nodes above the clamped base.
///
/// `None` when the denominator vanishes.
pub fn relative_error(shell: &Field2D, two_body: &TwoBodyField, c: Component) -> Result<Option<f64>> {
    field_relative_error(shell, &two_body.foundation, c)
}

pub fn field_relative_error(a: &Field2D, b: &Field2D, c: Component) -> Result<Option<f64>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            expected: a.shape(),
            found: b.shape(),
        });
    }
    let (n, m) = a.shape();
    let get = |f: &Field2D, i, j| match c {
        Component::Azimuthal => f.u2(i, j),
        Component::Radial => f.u3(i, j),
    };
    let (mut diff, mut sum) = (0.0, 0.0);
    for i in 0..n {
        for j in 1..m {
            let (x, y) = (get(a, i, j), get(b, i, j));
            diff += (x - y) * (x - y);
            sum += (x + y) * (x + y);
        }
    }
    Ok(if sum > 0.0 { Some((diff / sum).sqrt()) } else { None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Young,
    Poisson,
    Thickness,
    Radius,
}

impl SweepParam {
    pub const ALL: [SweepParam; 4] = [
        SweepParam::Young,
        SweepParam::Thickness,
        SweepParam::Poisson,
        SweepParam::Radius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Young => "dE",
            SweepParam::Poisson => "dnu",
            SweepParam::Thickness => "dh",
            SweepParam::Radius => "db",
        }
    }

    pub fn apply(self, mut d: Deltas, v: f64) -> Deltas {
        match self {
            SweepParam::Young => d.young = v,
            SweepParam::Poisson => d.poisson = v,
            SweepParam::Thickness => d.thickness = v,
            SweepParam::Radius => d.radius = v,
        }
        d
    }

    /// Default sample grid `(from, to, step)`.
    pub fn default_range(self) -> (f64, f64, f64) {
        match self {
            SweepParam::Young => (2.0, 12.0, 0.5),
            SweepParam::Thickness => (0.0625, 0.5, 0.03125),
            SweepParam::Poisson => (0.125, 1.75, 0.125),
            SweepParam::Radius => (0.8, 1.2, 0.025),
        }
    }

    pub fn default_values(self) -> Vec<f64> {
        let (from, to, step) = self.default_range();
        linspace_step(from, to, step)
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dE" | "young" => Ok(SweepParam::Young),
            "dnu" | "poisson" => Ok(SweepParam::Poisson),
            "dh" | "thickness" => Ok(SweepParam::Thickness),
            "db" | "radius" => Ok(SweepParam::Radius),
            _ => Err(Error::InvalidParameter(format!("unknown sweep parameter {s:?}"))),
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `from, from + step, …` up to `to` inclusive, computed without accumulation.
pub fn linspace_step(from: f64, to: f64, step: f64) -> Vec<f64> {
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|k| from + k as f64 * step).collect()
}

/// `count` evenly spaced values from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..count)
            .map(|k| from + (to - from) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    pub delta: f64,
    pub azimuthal: Option<f64>,
    pub radial: Option<f64>,
    pub converged_shell: bool,
    pub converged_two_body: bool,
    pub phi_scale: f64,
}

impl ErrorSample {
    pub fn valid(&self) -> bool {
        self.converged_shell && self.converged_two_body
    }

    pub fn get(&self, c: Component) -> Option<f64> {
        if !self.valid() {
            return None;
        }
        match c {
            Component::Azimuthal => self.azimuthal,
            Component::Radial => self.radial,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurve {
    pub param: SweepParam,
    samples: Vec<ErrorSample>,
}

/// Sample value with float noise from the sample grid rounded away.
fn short(v: f64) -> String {
    let s = format!("{v:.10}");
    let s = s.trim_end_matches('0');
    s.strip_suffix('.').unwrap_or(s).to_string()
}

pub const CSV_HEADER: &str = "delta,azimuthal_error,radial_error,converged_shell,converged_twobody,phi_scale";

impl ErrorCurve {
    /// Sorts by `δ`; repeated values are rejected.
    pub fn new(param: SweepParam, mut samples: Vec<ErrorSample>) -> Result<Self> {
        samples.sort_by(|a, b| a.delta.total_cmp(&b.delta));
        if samples.windows(2).any(|w| !(w[0].delta < w[1].delta)) {
            return Err(Error::InvalidParameter("sweep values must be distinct".into()));
        }
        Ok(ErrorCurve { param, samples })
    }

    pub fn samples(&self) -> &[ErrorSample] {
        &self.samples
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        let opt = |v: Option<f64>| v.map_or_else(|| "nan".to_string(), |v| format!("{v:.9e}"));
        for s in &self.samples {
            writeln!(
                out,
                "{},{},{},{},{},{:.9e}",
                short(s.delta),
                opt(s.azimuthal),
                opt(s.radial),
                s.converged_shell,
                s.converged_two_body,
                s.phi_scale
            )?;
        }
        Ok(())
    }

    /// `true` when the component never rises by more than `slack` between
    /// consecutive valid samples with `δ ≥ from`.
    pub fn non_increasing_from(&self, c: Component, from: f64, slack: f64) -> bool {
        let vals: Vec<f64> = self
            .samples
            .iter()
            .filter(|s| s.delta >= from)
            .filter_map(|s| s.get(c))
            .collect();
        vals.windows(2).all(|w| w[1] <= w[0] + slack)
    }
}

/// Solves both models for one parameter set on matched `n`-column grids.
pub fn compare(p: &ModelParams, n: usize, cfg: &SolverConfig) -> Result<ComparisonRun> {
    let g = Grid::foundation(p, n, Psi0Rule::Contact)?;
    let tg = TwoBodyGrids::new(p, n)?;
    let (shell, rs) = solve(p, &g, cfg)?;
    let (two_body, rt) = solve_two_body(p, &tg, cfg)?;
    Ok(ComparisonRun {
        azimuthal: relative_error(&shell, &two_body, Component::Azimuthal)?,
        radial: relative_error(&shell, &two_body, Component::Radial)?,
        shell,
        two_body,
        converged_shell: rs.converged,
        converged_two_body: rt.converged,
        grid: g,
        grids: tg,
    })
}

#[derive(Debug, Clone)]
pub struct ComparisonRun {
    pub shell: Field2D,
    pub two_body: TwoBodyField,
    pub azimuthal: Option<f64>,
    pub radial: Option<f64>,
    pub converged_shell: bool,
    pub converged_two_body: bool,
    pub grid: Grid,
    pub grids: TwoBodyGrids,
}

/// Runs the comparison at each value of one ratio, the others fixed at `base`.
///
/// Solver failures mark the sample invalid instead of aborting the sweep.
pub fn sweep(param: SweepParam, values: &[f64], base: Deltas, n: usize, cfg: &SolverConfig) -> Result<ErrorCurve> {
    let params = values
        .iter()
        .map(|&v| ModelParams::from_deltas(param.apply(base, v)).map(|p| (v, p)))
        .collect::<Result<Vec<_>>>()?;
    let samples = params
        .par_iter()
        .map(|(v, p)| {
            let phi_scale = scales(p)?.phi_scale;
            Ok(match compare(p, n, cfg) {
                Ok(run) => ErrorSample {
                    delta: *v,
                    azimuthal: run.azimuthal,
                    radial: run.radial,
                    converged_shell: run.converged_shell,
                    converged_two_body: run.converged_two_body,
                    phi_scale,
                },
                Err(Error::Divergence { .. }) | Err(Error::Singular(_)) => ErrorSample {
                    delta: *v,
                    azimuthal: None,
                    radial: None,
                    converged_shell: false,
                    converged_two_body: false,
                    phi_scale,
                },
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ErrorCurve::new(param, samples)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumReport {
    pub delta: f64,
    pub value: f64,
    /// Position in the valid-sample sequence.
    pub index: usize,
    /// The extremum sits at an end of the sampled range.
    pub at_endpoint: bool,
    /// Vertex of the parabola through the extremum and its two neighbours.
    pub refined: Option<(f64, f64)>,
}

pub fn locate_extremum(curve: &ErrorCurve, c: Component, kind: Extremum) -> Result<ExtremumReport> {
    let pts: Vec<(f64, f64)> = curve
        .samples
        .iter()
        .filter_map(|s| s.get(c).map(|v| (s.delta, v)))
        .collect();
    if pts.len() < 3 {
        return Err(Error::EmptyCurve);
    }
    let better = |a: f64, b: f64| match kind {
        Extremum::Min => a < b,
        Extremum::Max => a > b,
    };
    let mut k = 0;
    for (i, &(_, v)) in pts.iter().enumerate() {
        if better(v, pts[k].1) {
            k = i;
        }
    }
    let at_endpoint = k == 0 || k + 1 == pts.len();
    let refined = if at_endpoint {
        None
    } else {
        parabola_vertex(pts[k - 1], pts[k], pts[k + 1])
    };
    Ok(ExtremumReport {
        delta: pts[k].0,
        value: pts[k].1,
        index: k,
        at_endpoint,
        refined,
    })
}

fn parabola_vertex((x0, y0): (f64, f64), (x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> Option<(f64, f64)> {
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let a = (d12 - d01) / (x2 - x0);
    if a == 0.0 {
        return None;
    }
    let b = d01 - a * (x0 + x1);
    let xv = -b / (2.0 * a);
    let yv = y1 + (xv - x1) * (d01 + a * (xv - x0));
    Some((xv, yv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(delta: f64, az: f64) -> ErrorSample {
        ErrorSample {
            delta,
            azimuthal: Some(az),
            radial: Some(2.0 * az),
            converged_shell: true,
            converged_two_body: true,
            phi_scale: 1.0,
        }
    }

    #[test]
    fn identical_and_opposite_fields() {
        let p = ModelParams::defaults();
        let g = Grid::foundation(&p, 9, Psi0Rule::Contact).unwrap();
        let a = Field2D::from_fn(&g, |y, z| (y * (z + 1.0), (z + 1.0).powi(2)));
        assert_eq!(field_relative_error(&a, &a, Component::Azimuthal).unwrap(), Some(0.0));
        let zero = Field2D::for_grid(&g);
        let e = field_relative_error(&zero, &a, Component::Radial).unwrap().unwrap();
        assert!((e - 1.0).abs() < 1e-15);
        assert_eq!(field_relative_error(&a, &a.scaled(-1.0), Component::Radial).unwrap(), None);
    }

    #[test]
    fn extremum_location() {
        let c = ErrorCurve::new(
            SweepParam::Young,
            vec![sample(3.0, 0.5), sample(1.0, 2.0), sample(2.0, 1.0), sample(4.0, 0.8)],
        )
        .unwrap();
        assert_eq!(c.samples()[0].delta, 1.0);
        let m = locate_extremum(&c, Component::Azimuthal, Extremum::Min).unwrap();
        assert_eq!((m.delta, m.index, m.at_endpoint), (3.0, 2, false));
        let (xv, yv) = m.refined.unwrap();
        assert!(xv > 2.0 && xv < 4.0 && yv <= 0.5);
        let m = locate_extremum(&c, Component::Azimuthal, Extremum::Max).unwrap();
        assert!(m.at_endpoint && m.delta == 1.0);
    }

    #[test]
    fn invalid_samples_skipped() {
        let mut bad = sample(5.0, 0.0);
        bad.converged_shell = false;
        let c = ErrorCurve::new(SweepParam::Radius, vec![sample(1.0, 1.0), sample(2.0, 2.0), bad]).unwrap();
        assert!(matches!(
            locate_extremum(&c, Component::Azimuthal, Extremum::Min),
            Err(Error::EmptyCurve)
        ));
        assert!(ErrorCurve::new(SweepParam::Radius, vec![sample(1.0, 1.0), sample(1.0, 2.0)]).is_err());
    }

    #[test]
    fn parabola_exact() {
        let f = |x: f64| 2.0 * (x - 1.3).powi(2) + 0.25;
        let (xv, yv) = parabola_vertex((1.0, f(1.0)), (1.5, f(1.5)), (2.5, f(2.5))).unwrap();
        assert!((xv - 1.3).abs() < 1e-12 && (yv - 0.25).abs() < 1e-12);
    }

    #[test]
    fn default_sample_grids() {
        assert_eq!(SweepParam::Young.default_values().len(), 21);
        assert_eq!(SweepParam::Thickness.default_values().len(), 15);
        assert_eq!(SweepParam::Poisson.default_values().len(), 14);
        assert_eq!(SweepParam::Radius.default_values().len(), 17);
        let v = SweepParam::Radius.default_values();
        assert!((v[7] - 0.975).abs() < 1e-12);
    }
}
