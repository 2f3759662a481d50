//! Structured `(x², x³)` grids and the displacement fields stored on them.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::material::ModelParams;

/// Where `ψ₀` is sampled when sizing `Δx³ ≥ ψ₀ Δx²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Psi0Rule {
    /// `ψ₀ = ψ̄₂(π/4, 0)`
    Contact,
    /// `ψ₀ = ψ̄₂(π/4, h)`
    LayerTop,
}

/// Uniform grid on `[−π/2, π/2] × [x3_min, x3_min + (m − 1) dx3]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub n: usize,
    pub m: usize,
    pub dx2: f64,
    pub dx3: f64,
    pub x3_min: f64,
    pub psi0: f64,
}

/// Smallest number of `x³` intervals; one-sided three-point stencils need two.
pub const MIN_INTERVALS: usize = 2;

fn intervals(extent: f64, target: f64) -> usize {
    ((extent / target + 1e-9).floor() as usize).max(MIN_INTERVALS)
}

impl Grid {
    /// Foundation grid over `[−L, 0]`.
    pub fn foundation(p: &ModelParams, n: usize, rule: Psi0Rule) -> Result<Grid> {
        if n < 5 {
            return Err(Error::GridTooSmall(n));
        }
        let x3_0 = match rule {
            Psi0Rule::Contact => 0.0,
            Psi0Rule::LayerTop => p.thickness,
        };
        let psi0 = p.surface.psi_bar2(FRAC_PI_4, x3_0)?;
        p.surface.psi_bar2(0.0, -p.depth)?;
        p.surface.psi_bar2(FRAC_PI_2, -p.depth)?;
        let dx2 = PI / (n - 1) as f64;
        let k = intervals(p.depth, psi0 * dx2);
        Ok(Grid {
            n,
            m: k + 1,
            dx2,
            dx3: p.depth / k as f64,
            x3_min: -p.depth,
            psi0,
        })
    }

    /// Overlying-layer grid over `[0, h]` for the two-body problem.
    pub fn layer(p: &ModelParams, n: usize) -> Result<Grid> {
        if n < 5 {
            return Err(Error::GridTooSmall(n));
        }
        let psi0 = p.surface.psi_bar2(FRAC_PI_4, p.thickness)?;
        let dx2 = PI / (n - 1) as f64;
        let k = intervals(p.thickness, psi0 * dx2);
        Ok(Grid {
            n,
            m: k + 1,
            dx2,
            dx3: p.thickness / k as f64,
            x3_min: 0.0,
            psi0,
        })
    }

    pub fn x2(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            FRAC_PI_2
        } else {
            -FRAC_PI_2 + i as f64 * self.dx2
        }
    }

    pub fn x3(&self, j: usize) -> f64 {
        self.x3_min + j as f64 * self.dx3
    }

    /// `ψ₀ Δx² ≤ Δx³`; can only fail when [`MIN_INTERVALS`] forced a finer spacing.
    pub fn satisfies_constraint(&self) -> bool {
        self.psi0 * self.dx2 <= self.dx3 * (1.0 + 1e-12)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }
}

pub const U2: usize = 0;
pub const U3: usize = 1;

/// Contravariant displacement components `(u², u³)` on an `n × m` grid.
///
/// Stored interleaved, column by column in `x²`: the value of component `c`
/// at node `(i, j)` lives at `2 (i m + j) + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    n: usize,
    m: usize,
    data: Vec<f64>,
}

impl Field2D {
    pub fn zeros(n: usize, m: usize) -> Self {
        Field2D {
            n,
            m,
            data: vec![0.0; 2 * n * m],
        }
    }

    pub fn for_grid(g: &Grid) -> Self {
        Self::zeros(g.n, g.m)
    }

    pub fn from_fn(g: &Grid, mut f: impl FnMut(f64, f64) -> (f64, f64)) -> Self {
        let mut out = Self::for_grid(g);
        for i in 0..g.n {
            for j in 0..g.m {
                let (u2, u3) = f(g.x2(i), g.x3(j));
                out.set(i, j, u2, u3);
            }
        }
        out
    }

    pub(crate) fn from_vec(n: usize, m: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), 2 * n * m);
        Field2D { n, m, data }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn check_shape(&self, g: &Grid) -> Result<()> {
        if self.shape() != g.shape() {
            return Err(Error::ShapeMismatch {
                expected: g.shape(),
                found: self.shape(),
            });
        }
        Ok(())
    }

    fn at(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.m);
        2 * (i * self.m + j)
    }

    pub fn u2(&self, i: usize, j: usize) -> f64 {
        self.data[self.at(i, j)]
    }

    pub fn u3(&self, i: usize, j: usize) -> f64 {
        self.data[self.at(i, j) + 1]
    }

    pub fn set(&mut self, i: usize, j: usize, u2: f64, u3: f64) {
        let k = self.at(i, j);
        self.data[k] = u2;
        self.data[k + 1] = u3;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// `(u², u³)` along the top row `j = m − 1`.
    pub fn top_row(&self) -> Vec<(f64, f64)> {
        (0..self.n)
            .map(|i| (self.u2(i, self.m - 1), self.u3(i, self.m - 1)))
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Field2D {
        Field2D {
            n: self.n,
            m: self.m,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    pub fn axpy(&mut self, c: f64, other: &Field2D) {
        assert_eq!(self.shape(), other.shape());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_spacing() {
        let p = ModelParams::defaults();
        let g = Grid::foundation(&p, 250, Psi0Rule::Contact).unwrap();
        assert!((g.dx2 - PI / 249.0).abs() < 1e-15);
        assert!((g.psi0 - 2.0).abs() < 1e-14);
        // ψ₀Δx² = 2π/249 ≈ 0.02523, so 39 intervals fit in L = 1
        assert_eq!(g.m, 40);
        assert!(g.satisfies_constraint());
        assert_eq!(g.x3(g.m - 1), 0.0);
        assert_eq!(g.x2(g.n - 1), FRAC_PI_2);
    }

    #[test]
    fn minimal_grid() {
        let p = ModelParams::defaults();
        let g = Grid::foundation(&p, 5, Psi0Rule::Contact).unwrap();
        assert_eq!(g.n, 5);
        // ψ₀Δx² = π/2 exceeds L, so the two-interval floor wins
        assert_eq!(g.m, 3);
        assert!(!g.satisfies_constraint());
        assert!(matches!(
            Grid::foundation(&p, 4, Psi0Rule::Contact),
            Err(Error::GridTooSmall(4))
        ));
    }

    #[test]
    fn layer_grid_uses_top_psi() {
        let p = ModelParams::figure();
        let g = Grid::layer(&p, 250).unwrap();
        assert!((g.psi0 - 2.25).abs() < 1e-14);
        assert_eq!(g.x3_min, 0.0);
        assert!((g.x3(g.m - 1) - 0.25).abs() < 1e-15);
        assert!(g.satisfies_constraint());
    }

    #[test]
    fn field_indexing() {
        let mut f = Field2D::zeros(5, 3);
        f.set(2, 1, 1.5, -2.0);
        assert_eq!(f.u2(2, 1), 1.5);
        assert_eq!(f.u3(2, 1), -2.0);
        assert_eq!(f.as_slice()[2 * (2 * 3 + 1)], 1.5);
        assert_eq!(f.max_abs(), 2.0);
    }
}
