//! CSV artifacts and run manifests.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::config::ConfigError;

/// Writes to `path`, or to stdout when no path is given.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| ConfigError(format!("cannot write {}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `<out>.manifest` next to the artifact.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(base: Vec<(String, String)>) -> Self {
        Manifest { entries: base }
    }

    pub fn add(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        let Some(out) = out else { return Ok(()) };
        let path = manifest_path(out);
        let mut w = sink(Some(&path))?;
        for (k, v) in &self.entries {
            writeln!(w, "{k}={v}")?;
        }
        w.flush().with_context(|| format!("writing {}", path.display()))
    }
}

/// Writes a table with a `# key=value` header block.
pub fn write_table(
    out: Option<&Path>,
    header: &str,
    extra: &[(String, String)],
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> Result<()> {
    let mut w = sink(out)?;
    w.write_all(header.as_bytes())?;
    for (k, v) in extra {
        writeln!(w, "# {k}={v}")?;
    }
    writeln!(w, "{}", columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()?;
    Ok(())
}
