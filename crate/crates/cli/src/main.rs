mod config;
mod output;

use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use shellfound::analysis::{self, locate_extremum, Component, Extremum, SweepParam};
use shellfound::closed_form::{regime, scales, w2_profile};
use shellfound::solver::checkpoint;
use shellfound::two_body::{solve_two_body, TwoBodyGrids};
use shellfound::verify::{run_suite, Level};
use shellfound::{solve, Grid, Psi0Rule, SolveReport};

use config::{fmt, ConfigError, RunConfig, SweepSpec};
use output::{write_table, Manifest};

/// Bonded shell on an elastic foundation: solves, sweeps and checks.
#[derive(Parser, Debug)]
#[command(name = "shellfound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the bonded shell model and write the contact trace.
    SolveShell(Common),
    /// Solve the two-body model and write the interface trace.
    SolveTwoBody(Common),
    /// Sample the membrane closed form.
    ClosedForm {
        #[command(flatten)]
        common: Common,
        /// Number of samples over [-pi/2, pi/2].
        #[arg(long, default_value_t = 251)]
        points: usize,
    },
    /// Sweep one shell-to-foundation ratio and write the error curve.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        /// Number of samples including both ends.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Solve both models and write both traces with the relative errors.
    Compare(Common),
    /// Run the oracle checks.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Args, Debug)]
struct Common {
    /// defaults, fig1, fig3, fig4, fig5 or fig6.
    #[arg(long, default_value = "defaults")]
    preset: String,
    /// File of key=value lines applied after the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra key=value override; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    relax: Option<f64>,
    /// jacobi, sor or direct.
    #[arg(long)]
    method: Option<String>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    workers: Option<usize>,
    /// Output CSV; stdout when absent. A manifest is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also dump the full displacement field to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig> {
        let mut c = RunConfig::preset(&self.preset)?;
        if let Some(path) = &self.config {
            c.apply_file(path)?;
        }
        for pair in &self.set {
            c.apply_pair(pair)?;
        }
        let flags = [
            ("n", self.n.map(|v| v.to_string())),
            ("tol", self.tol.map(|v| v.to_string())),
            ("max_iter", self.max_iter.map(|v| v.to_string())),
            ("relax", self.relax.map(|v| v.to_string())),
            ("method", self.method.clone()),
            ("workers", self.workers.map(|v| v.to_string())),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                c.set(k, &v)?;
            }
        }
        c.validate()?;
        Ok(c)
    }

    fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}

/// A solve that ran out of iterations; exit status 4.
#[derive(Debug)]
struct NotConverged(String);

impl std::fmt::Display for NotConverged {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "not converged: {}", self.0)
    }
}

impl std::error::Error for NotConverged {}

fn exit_status(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    if e.downcast_ref::<NotConverged>().is_some() {
        return 4;
    }
    match e.downcast_ref::<shellfound::Error>() {
        Some(shellfound::Error::Divergence { .. } | shellfound::Error::Singular(_)) => 3,
        Some(
            shellfound::Error::InvalidParameter(_)
            | shellfound::Error::GridTooSmall(_)
            | shellfound::Error::ShellAssumption(_)
            | shellfound::Error::DegenerateMetric { .. }
            | shellfound::Error::EllipticDomain { .. },
        ) => 2,
        _ => 1,
    }
}

fn report_entries(m: &mut Manifest, prefix: &str, r: &SolveReport) {
    m.add(&format!("{prefix}iterations"), r.iterations);
    m.add(&format!("{prefix}final_residual"), fmt(r.final_residual));
    m.add(&format!("{prefix}converged"), r.converged);
    m.add(&format!("{prefix}runtime_s"), format!("{:.3}", r.runtime));
}

fn grid_entries(m: &mut Manifest, prefix: &str, g: &Grid) {
    m.add(&format!("{prefix}grid_n"), g.n);
    m.add(&format!("{prefix}grid_m"), g.m);
    m.add(&format!("{prefix}dx2"), fmt(g.dx2));
    m.add(&format!("{prefix}dx3"), fmt(g.dx3));
    m.add(&format!("{prefix}psi0"), fmt(g.psi0));
}

fn grid_header(prefix: &str, g: &Grid) -> Vec<(String, String)> {
    vec![
        (format!("{prefix}grid_m"), g.m.to_string()),
        (format!("{prefix}dx2"), fmt(g.dx2)),
        (format!("{prefix}dx3"), fmt(g.dx3)),
        (format!("{prefix}psi0"), fmt(g.psi0)),
    ]
}

fn ensure_converged(what: &str, r: &SolveReport) -> Result<()> {
    if r.converged {
        Ok(())
    } else {
        bail!(NotConverged(format!(
            "{what} stopped after {} iterations at residual {:.3e}",
            r.iterations, r.final_residual
        )))
    }
}

fn solve_shell(c: &Common) -> Result<()> {
    let cfg = c.resolve()?;
    let p = &cfg.params;
    let g = Grid::foundation(p, cfg.n, Psi0Rule::Contact)?;
    let (u, report) = solve(p, &g, &cfg.solver)?;
    let top = g.m - 1;
    write_table(
        c.out(),
        &cfg.header(),
        &grid_header("", &g),
        &["x2", "u2", "u3"],
        (0..g.n).map(|i| vec![g.x2(i), u.u2(i, top), u.u3(i, top)]),
    )?;
    if let Some(path) = &c.checkpoint {
        let f = output::sink(Some(path))?;
        checkpoint::dump(f, &[(&g, &u)])?;
    }
    let mut m = Manifest::new(cfg.describe());
    m.add("command", "solve-shell");
    m.add("workers", cfg.solver.workers);
    grid_entries(&mut m, "", &g);
    report_entries(&mut m, "", &report);
    m.add("u2_min_end", fmt(u.u2(0, top)));
    m.add("u2_max_end", fmt(u.u2(g.n - 1, top)));
    m.add("u3_min_end", fmt(u.u3(0, top)));
    m.add("u3_max_end", fmt(u.u3(g.n - 1, top)));
    m.write(c.out())?;
    eprintln!(
        "u2(-pi/2) = {:.4e}, u2(pi/2) = {:.4e}, u3(+-pi/2) = {:.4e} / {:.4e}",
        u.u2(0, top),
        u.u2(g.n - 1, top),
        u.u3(0, top),
        u.u3(g.n - 1, top)
    );
    ensure_converged("shell solve", &report)
}

fn solve_two(c: &Common) -> Result<()> {
    let cfg = c.resolve()?;
    let p = &cfg.params;
    let g = TwoBodyGrids::new(p, cfg.n)?;
    let (w, report) = solve_two_body(p, &g, &cfg.solver)?;
    let top = g.foundation.m - 1;
    let lt = g.layer.m - 1;
    let mut extra = grid_header("foundation_", &g.foundation);
    extra.extend(grid_header("layer_", &g.layer));
    write_table(
        c.out(),
        &cfg.header(),
        &extra,
        &["x2", "v2", "v3", "layer_top_v2", "layer_top_v3"],
        (0..g.foundation.n).map(|i| {
            vec![
                g.foundation.x2(i),
                w.foundation.u2(i, top),
                w.foundation.u3(i, top),
                w.layer.u2(i, lt),
                w.layer.u3(i, lt),
            ]
        }),
    )?;
    if let Some(path) = &c.checkpoint {
        let f = output::sink(Some(path))?;
        checkpoint::dump(f, &[(&g.foundation, &w.foundation), (&g.layer, &w.layer)])?;
    }
    let mut m = Manifest::new(cfg.describe());
    m.add("command", "solve-two-body");
    m.add("workers", cfg.solver.workers);
    grid_entries(&mut m, "foundation_", &g.foundation);
    grid_entries(&mut m, "layer_", &g.layer);
    report_entries(&mut m, "", &report);
    m.write(c.out())?;
    let n = g.foundation.n;
    eprintln!(
        "v2(-pi/2) = {:.4e}, v2(pi/2) = {:.4e}, v3(+-pi/2) = {:.4e} / {:.4e}",
        w.foundation.u2(0, top),
        w.foundation.u2(n - 1, top),
        w.foundation.u3(0, top),
        w.foundation.u3(n - 1, top)
    );
    ensure_converged("two-body solve", &report)
}

fn closed_form(c: &Common, points: usize) -> Result<()> {
    if points < 2 {
        bail!(ConfigError("points must be at least 2".into()));
    }
    let cfg = c.resolve()?;
    let p = &cfg.params;
    let s = scales(p)?;
    let r = regime(p)?;
    let xs = analysis::linspace(-FRAC_PI_2, FRAC_PI_2, points);
    let mut xs = xs;
    // exact zero at the centre for odd counts
    if points % 2 == 1 {
        xs[points / 2] = 0.0;
    }
    let w = w2_profile(p, &xs)?;
    let extra = vec![
        ("alpha".to_string(), fmt(s.alpha)),
        ("phi_scale".to_string(), fmt(s.phi_scale)),
        ("e2".to_string(), fmt(s.e2)),
        ("membrane_to_shear".to_string(), fmt(r.membrane_to_shear)),
        ("membrane_to_foundation".to_string(), fmt(r.membrane_to_foundation)),
        ("curvature_to_foundation".to_string(), fmt(r.curvature_to_foundation)),
    ];
    write_table(
        c.out(),
        &cfg.header(),
        &extra,
        &["x2", "w2"],
        xs.iter().zip(&w).map(|(&x, &v)| vec![x, v]),
    )?;
    let mut m = Manifest::new(cfg.describe());
    m.add("command", "closed-form");
    m.add("points", points);
    for (k, v) in extra {
        m.add(&k, v);
    }
    m.write(c.out())
}

fn compare(c: &Common) -> Result<()> {
    let cfg = c.resolve()?;
    let run = analysis::compare(&cfg.params, cfg.n, &cfg.solver)?;
    let top = run.grid.m - 1;
    let opt = |v: Option<f64>| v.map_or_else(|| "nan".to_string(), fmt);
    let mut extra = vec![
        ("azimuthal_error".to_string(), opt(run.azimuthal)),
        ("radial_error".to_string(), opt(run.radial)),
    ];
    extra.extend(grid_header("shell_", &run.grid));
    extra.extend(grid_header("layer_", &run.grids.layer));
    let f = &run.two_body.foundation;
    let ft = run.grids.foundation.m - 1;
    write_table(
        c.out(),
        &cfg.header(),
        &extra,
        &["x2", "shell_u2", "shell_u3", "twobody_v2", "twobody_v3"],
        (0..run.grid.n).map(|i| {
            vec![
                run.grid.x2(i),
                run.shell.u2(i, top),
                run.shell.u3(i, top),
                f.u2(i, ft),
                f.u3(i, ft),
            ]
        }),
    )?;
    let mut m = Manifest::new(cfg.describe());
    m.add("command", "compare");
    m.add("workers", cfg.solver.workers);
    for (k, v) in &extra {
        m.add(k, v);
    }
    m.add("converged_shell", run.converged_shell);
    m.add("converged_twobody", run.converged_two_body);
    m.write(c.out())?;
    eprintln!(
        "azimuthal error = {}, radial error = {}",
        opt(run.azimuthal),
        opt(run.radial)
    );
    if !(run.converged_shell && run.converged_two_body) {
        bail!(NotConverged("one of the two solves".into()));
    }
    Ok(())
}

fn sweep(c: &Common, param: Option<&str>, from: Option<f64>, to: Option<f64>, steps: Option<usize>) -> Result<()> {
    let mut cfg = c.resolve()?;
    let spec = match (param, cfg.sweep) {
        (Some(name), preset) => {
            let param: SweepParam = name.parse().map_err(|e: shellfound::Error| ConfigError(e.to_string()))?;
            match preset {
                Some(s) if s.param == param => s,
                _ => {
                    let (a, b, step) = param.default_range();
                    SweepSpec {
                        param,
                        from: a,
                        to: b,
                        steps: ((b - a) / step).round() as usize + 1,
                    }
                }
            }
        }
        (None, Some(s)) => s,
        (None, None) => bail!(ConfigError(
            "sweep needs --param or a sweep preset (fig3..fig6)".into()
        )),
    };
    let spec = SweepSpec {
        from: from.unwrap_or(spec.from),
        to: to.unwrap_or(spec.to),
        steps: steps.unwrap_or(spec.steps),
        ..spec
    };
    if spec.steps < 2 || !(spec.from < spec.to) {
        bail!(ConfigError(format!(
            "need from < to and at least two steps, got {} .. {} in {}",
            spec.from, spec.to, spec.steps
        )));
    }
    cfg.sweep = Some(spec);
    let base = cfg.params.deltas();
    let values = spec.values();
    for &v in &values {
        shellfound::ModelParams::from_deltas(spec.param.apply(base, v))
            .map_err(|e| ConfigError(e.to_string()))?;
    }
    let run = || analysis::sweep(spec.param, &values, base, cfg.n, &cfg.solver);
    let curve = if cfg.solver.workers > 0 {
        rayon_pool(cfg.solver.workers)?.install(run)?
    } else {
        run()?
    };

    let mut w = output::sink(c.out())?;
    w.write_all(cfg.header().as_bytes())?;
    curve.write_csv(&mut w)?;
    w.flush()?;
    drop(w);

    let mut m = Manifest::new(cfg.describe());
    m.add("command", "sweep");
    m.add("workers", cfg.solver.workers);
    for (label, comp, kind) in [
        ("azimuthal_min", Component::Azimuthal, Extremum::Min),
        ("radial_max", Component::Radial, Extremum::Max),
    ] {
        if let Ok(e) = locate_extremum(&curve, comp, kind) {
            m.add(&format!("{label}_delta"), fmt(e.delta));
            m.add(&format!("{label}_value"), fmt(e.value));
            m.add(&format!("{label}_at_endpoint"), e.at_endpoint);
            eprintln!(
                "{label}: {:.4}% at {} = {}{}",
                100.0 * e.value,
                spec.param,
                e.delta,
                if e.at_endpoint { " (range end)" } else { "" }
            );
        }
    }
    m.write(c.out())?;
    let bad = curve.samples().iter().filter(|s| !s.valid()).count();
    if bad > 0 {
        bail!(NotConverged(format!("{bad} of {} sweep samples", values.len())));
    }
    Ok(())
}

fn rayon_pool(workers: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(workers).build()?)
}

fn verify(level: LevelArg) -> Result<()> {
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let checks = run_suite(level);
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &checks {
        println!(
            "{:<width$}  {}  {}",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::SolveShell(c) => solve_shell(c),
        Command::SolveTwoBody(c) => solve_two(c),
        Command::ClosedForm { common, points } => closed_form(common, *points),
        Command::Sweep {
            common,
            param,
            from,
            to,
            steps,
        } => sweep(common, param.as_deref(), *from, *to, *steps),
        Command::Compare(c) => compare(c),
        Command::Verify { level } => verify(*level),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
