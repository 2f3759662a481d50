//! Plain-text field dumps.
//!
//! ```text
//! shellfound-checkpoint 1
//! regions <r>
//! region <n> <m> <dx2> <dx3> <x3_min>
//! <u2> <u3>          (n·m lines, index i·m + j)
//! ...                (repeated per region)
//! ```
//!
//! Floats are written in shortest round-trip form, so a restore is exact.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::grid::{Field2D, Grid};

const MAGIC: &str = "shellfound-checkpoint 1";

/// Writes one or more `(grid, field)` regions.
pub fn dump<W: Write>(mut out: W, regions: &[(&Grid, &Field2D)]) -> Result<()> {
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "regions {}", regions.len())?;
    for (g, f) in regions {
        f.check_shape(g)?;
        writeln!(out, "region {} {} {:e} {:e} {:e}", g.n, g.m, g.dx2, g.dx3, g.x3_min)?;
        for pair in f.as_slice().chunks(2) {
            writeln!(out, "{:e} {:e}", pair[0], pair[1])?;
        }
    }
    Ok(())
}

/// Header of a restored region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionHeader {
    pub n: usize,
    pub m: usize,
    pub dx2: f64,
    pub dx3: f64,
    pub x3_min: f64,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Checkpoint(msg.into())
}

fn parse<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T> {
    tok.ok_or_else(|| bad(format!("missing {what}")))?
        .parse()
        .map_err(|_| bad(format!("malformed {what}")))
}

pub fn restore<R: BufRead>(input: R) -> Result<Vec<(RegionHeader, Field2D)>> {
    let mut lines = input.lines();
    let mut next = move || -> Result<String> {
        lines.next().ok_or_else(|| bad("unexpected end of file"))?.map_err(Error::from)
    };
    if next()?.trim() != MAGIC {
        return Err(bad("not a checkpoint file"));
    }
    let line = next()?;
    let mut t = line.split_whitespace();
    if t.next() != Some("regions") {
        return Err(bad("missing region count"));
    }
    let count: usize = parse(t.next(), "region count")?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let line = next()?;
        let mut t = line.split_whitespace();
        if t.next() != Some("region") {
            return Err(bad("missing region header"));
        }
        let h = RegionHeader {
            n: parse(t.next(), "n")?,
            m: parse(t.next(), "m")?,
            dx2: parse(t.next(), "dx2")?,
            dx3: parse(t.next(), "dx3")?,
            x3_min: parse(t.next(), "x3_min")?,
        };
        let mut data = Vec::with_capacity(2 * h.n * h.m);
        for _ in 0..h.n * h.m {
            let line = next()?;
            let mut t = line.split_whitespace();
            data.push(parse(t.next(), "u2")?);
            data.push(parse(t.next(), "u3")?);
        }
        out.push((h, Field2D::from_vec(h.n, h.m, data)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Psi0Rule;
    use crate::material::ModelParams;

    #[test]
    fn round_trip_is_exact() {
        let p = ModelParams::defaults();
        let g = Grid::foundation(&p, 9, Psi0Rule::Contact).unwrap();
        let f = Field2D::from_fn(&g, |y, z| (y.sin() * z / 3.0, 1e-7 * y.exp() + z));
        let mut buf = Vec::new();
        dump(&mut buf, &[(&g, &f), (&g, &f.scaled(-2.0))]).unwrap();
        let back = restore(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].1, f);
        assert_eq!(back[1].1, f.scaled(-2.0));
        assert_eq!(back[0].0.dx3, g.dx3);
    }

    #[test]
    fn rejects_truncated() {
        let text = format!("{MAGIC}\nregions 1\nregion 2 2 1 1 0\n0 0\n");
        assert!(matches!(restore(text.as_bytes()), Err(Error::Checkpoint(_))));
    }
}
