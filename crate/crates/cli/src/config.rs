//! Run configuration: named presets, `key=value` files and overrides.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use shellfound::analysis::SweepParam;
use shellfound::geometry::SurfaceFamily;
use shellfound::material::IsotropicMaterial;
use shellfound::{Method, ModelParams, SolverConfig};

/// Columns used when a preset does not set one.
pub const DEFAULT_N: usize = 250;

/// Sweep definition carried by the `fig3`..`fig6` presets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        shellfound::analysis::linspace(self.from, self.to, self.steps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: String,
    pub params: ModelParams,
    pub n: usize,
    pub solver: SolverConfig,
    pub sweep: Option<SweepSpec>,
}

fn sweep_preset(param: SweepParam) -> SweepSpec {
    let (from, to, step) = param.default_range();
    SweepSpec {
        param,
        from,
        to,
        steps: ((to - from) / step).round() as usize + 1,
    }
}

impl RunConfig {
    pub fn preset(name: &str) -> Result<Self> {
        let (params, sweep) = match name {
            "defaults" => (ModelParams::defaults(), None),
            "fig1" => (ModelParams::figure(), None),
            "fig3" => (ModelParams::defaults(), Some(sweep_preset(SweepParam::Young))),
            "fig4" => (ModelParams::defaults(), Some(sweep_preset(SweepParam::Thickness))),
            "fig5" => (ModelParams::defaults(), Some(sweep_preset(SweepParam::Poisson))),
            "fig6" => (ModelParams::defaults(), Some(sweep_preset(SweepParam::Radius))),
            _ => bail!(ConfigError(format!(
                "unknown preset {name:?} (expected defaults, fig1, fig3, fig4, fig5 or fig6)"
            ))),
        };
        Ok(RunConfig {
            preset: name.to_string(),
            params,
            n: DEFAULT_N,
            solver: SolverConfig::direct(),
            sweep,
        })
    }

    /// Applies every `key=value` line of a file; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            self.apply_pair(line)
                .with_context(|| format!("{}:{}", path.display(), k + 1))?;
        }
        Ok(())
    }

    pub fn apply_pair(&mut self, pair: &str) -> Result<()> {
        let Some((key, value)) = pair.split_once('=') else {
            bail!(ConfigError(format!("expected key=value, got {pair:?}")));
        };
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("{key}: not a number: {value:?}")).into())
        };
        let count = || -> Result<usize> {
            value
                .parse::<usize>()
                .map_err(|_| ConfigError(format!("{key}: not a count: {value:?}")).into())
        };
        let p = &mut self.params;
        match key {
            "n" => self.n = count()?,
            "tol" => self.solver.tol = num()?,
            "max_iter" => self.solver.max_iter = count()?,
            "relax" => self.solver.relax = num()?,
            "workers" => self.solver.workers = count()?,
            "method" => self.solver.method = value.parse::<Method>().map_err(config)?,
            "tau0" => p.tau0 = num()?,
            "tau_max" => p.tau_max = num()?,
            "tau" => {
                p.tau0 = num()?;
                p.tau_max = p.tau0;
            }
            "a" => p.surface = SurfaceFamily::new(num()?, p.surface.b()).map_err(config)?,
            "b" => p.surface = SurfaceFamily::new(p.surface.a(), num()?).map_err(config)?,
            "depth" => p.depth = positive(key, num()?)?,
            "h" => p.thickness = positive(key, num()?)?,
            "E" => p.shell = IsotropicMaterial::new(num()?, p.shell.poisson()).map_err(config)?,
            "nu" => p.shell = IsotropicMaterial::new(p.shell.young(), num()?).map_err(config)?,
            "E_f" => p.foundation = IsotropicMaterial::new(num()?, p.foundation.poisson()).map_err(config)?,
            "nu_f" => p.foundation = IsotropicMaterial::new(p.foundation.young(), num()?).map_err(config)?,
            "dE" | "dnu" | "dh" | "db" => {
                let param: SweepParam = key.parse().map_err(config)?;
                let d = param.apply(p.deltas(), num()?);
                let taus = (p.tau0, p.tau_max);
                *p = ModelParams::from_deltas(d).map_err(config)?.with_tractions(taus.0, taus.1);
            }
            _ => bail!(ConfigError(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.solver.validate().map_err(config)?;
        if self.n < 5 {
            bail!(ConfigError(format!("n must be at least 5, got {}", self.n)));
        }
        Ok(())
    }

    /// Resolved parameters as `key=value` lines, in a fixed order.
    ///
    /// Worker count is left out so that outputs do not depend on it.
    pub fn describe(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let d = p.deltas();
        let mut out = vec![
            ("preset", self.preset.clone()),
            ("a", fmt(p.surface.a())),
            ("b", fmt(p.surface.b())),
            ("depth", fmt(p.depth)),
            ("h", fmt(p.thickness)),
            ("E", fmt(p.shell.young())),
            ("nu", fmt(p.shell.poisson())),
            ("E_f", fmt(p.foundation.young())),
            ("nu_f", fmt(p.foundation.poisson())),
            ("tau0", fmt(p.tau0)),
            ("tau_max", fmt(p.tau_max)),
            ("dE", fmt(d.young)),
            ("dnu", fmt(d.poisson)),
            ("dh", fmt(d.thickness)),
            ("db", fmt(d.radius)),
            ("n", self.n.to_string()),
            ("method", self.solver.method.to_string()),
            ("tol", fmt(self.solver.tol)),
            ("max_iter", self.solver.max_iter.to_string()),
            ("relax", fmt(self.solver.relax)),
        ];
        if let Some(s) = &self.sweep {
            out.push(("sweep_param", s.param.name().to_string()));
            out.push(("sweep_from", fmt(s.from)));
            out.push(("sweep_to", fmt(s.to)));
            out.push(("sweep_steps", s.steps.to_string()));
        }
        out.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    pub fn header(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.describe() {
            let _ = writeln!(s, "# {k}={v}");
        }
        s
    }
}

/// Shortest representation that round-trips.
pub fn fmt(v: f64) -> String {
    format!("{v:?}")
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        bail!(ConfigError(format!("{key} must be positive, got {v}")))
    }
}

/// Invalid user input; mapped to exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config(e: shellfound::Error) -> anyhow::Error {
    ConfigError(e.to_string()).into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve() {
        let c = RunConfig::preset("fig1").unwrap();
        assert_eq!(c.params.shell.young(), 6000.0);
        assert_eq!(c.params.thickness, 0.25);
        assert_eq!(c.n, 250);
        let s = RunConfig::preset("fig3").unwrap().sweep.unwrap();
        assert_eq!(s.values().len(), 21);
        assert!(RunConfig::preset("fig9").is_err());
    }

    #[test]
    fn overrides_apply_in_order() {
        let mut c = RunConfig::preset("defaults").unwrap();
        c.apply_pair("dE=4").unwrap();
        c.apply_pair("n = 65").unwrap();
        c.apply_pair("tau=2").unwrap();
        c.apply_pair("dh=0.25").unwrap();
        assert_eq!(c.params.shell.young(), 4000.0);
        assert_eq!(c.params.thickness, 0.25);
        assert_eq!(c.params.tau0, 2.0);
        assert_eq!(c.n, 65);
        assert!(c.apply_pair("zz=1").is_err());
        assert!(c.apply_pair("nu=0.7").is_err());
        assert!(c.apply_pair("n").is_err());
    }

    #[test]
    fn header_excludes_workers() {
        let mut a = RunConfig::preset("defaults").unwrap();
        let b = a.clone();
        a.solver.workers = 8;
        assert_eq!(a.header(), b.header());
        assert!(a.header().starts_with("# preset=defaults\n"));
    }
}
