//! Linear forms over the unknown vector and the finite-difference stencils
//! that build them.
//!
//! Every discrete equation is a [`LinearForm`] plus a right-hand side. The
//! same forms feed the assembled matrix, the Jacobi sweep and the pointwise
//! residual functions, so there is a single discretisation.

use crate::geometry::SurfaceFamily;
use crate::grid::Grid;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearForm {
    terms: Vec<(usize, f64)>,
}

impl LinearForm {
    pub fn new() -> Self {
        LinearForm { terms: Vec::new() }
    }

    pub fn unit(idx: usize, c: f64) -> Self {
        LinearForm {
            terms: vec![(idx, c)],
        }
    }

    pub fn push(&mut self, idx: usize, c: f64) {
        self.terms.push((idx, c));
    }

    pub fn add(&mut self, other: &LinearForm, scale: f64) {
        if scale != 0.0 {
            self.terms
                .extend(other.terms.iter().map(|&(k, c)| (k, c * scale)));
        }
    }

    pub fn plus(mut self, other: &LinearForm, scale: f64) -> Self {
        self.add(other, scale);
        self
    }

    pub fn scaled(mut self, s: f64) -> Self {
        for t in &mut self.terms {
            t.1 *= s;
        }
        self
    }

    /// Merges duplicate indices and sorts by index.
    pub fn compact(mut self) -> Self {
        self.terms.sort_by_key(|t| t.0);
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(self.terms.len());
        for (k, c) in self.terms {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|t| t.1 != 0.0);
        LinearForm { terms: out }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|&(k, c)| c * x[k]).sum()
    }

    pub fn coefficient(&self, idx: usize) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.0 == idx)
            .map(|t| t.1)
            .sum()
    }

    pub fn terms(&self) -> &[(usize, f64)] {
        &self.terms
    }
}

/// One-sided or centred first difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Central,
    Forward,
    Backward,
}

/// Node layout of a (possibly two-region) structured mesh.
///
/// Rows are stacked bottom to top; spacing is uniform inside each region, so
/// every centred stencil sees equal spacing on both sides.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub surface: SurfaceFamily,
    pub n: usize,
    pub dx2: f64,
    pub z: Vec<f64>,
}

impl Mesh {
    pub fn from_grid(surface: SurfaceFamily, g: &Grid) -> Self {
        Mesh {
            surface,
            n: g.n,
            dx2: g.dx2,
            z: (0..g.m).map(|j| g.x3(j)).collect(),
        }
    }

    /// Foundation rows followed by the layer rows above the shared interface.
    pub fn stacked(surface: SurfaceFamily, lower: &Grid, upper: &Grid) -> Self {
        let mut z: Vec<f64> = (0..lower.m).map(|j| lower.x3(j)).collect();
        z.extend((1..upper.m).map(|j| upper.x3(j)));
        Mesh {
            surface,
            n: lower.n,
            dx2: lower.dx2,
            z,
        }
    }

    pub fn rows(&self) -> usize {
        self.z.len()
    }

    pub fn unknowns(&self) -> usize {
        2 * self.n * self.rows()
    }

    pub fn idx(&self, i: usize, j: usize, c: usize) -> usize {
        2 * (i * self.rows() + j) + c
    }

    pub fn x2(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            std::f64::consts::FRAC_PI_2
        } else {
            -std::f64::consts::FRAC_PI_2 + i as f64 * self.dx2
        }
    }

    fn dz_below(&self, j: usize) -> f64 {
        self.z[j] - self.z[j - 1]
    }

    fn dz_above(&self, j: usize) -> f64 {
        self.z[j + 1] - self.z[j]
    }

    /// `∂₂` at `(i, j)`: centred inside, second-order one-sided at the ends.
    pub fn dy(&self, i: usize, j: usize, c: usize) -> LinearForm {
        let dir = if i == 0 {
            Dir::Forward
        } else if i + 1 == self.n {
            Dir::Backward
        } else {
            Dir::Central
        };
        self.dy_dir(i, j, c, dir)
    }

    pub fn dy_dir(&self, i: usize, j: usize, c: usize, dir: Dir) -> LinearForm {
        let h = self.dx2;
        let mut f = LinearForm::new();
        match dir {
            Dir::Central => {
                f.push(self.idx(i + 1, j, c), 0.5 / h);
                f.push(self.idx(i - 1, j, c), -0.5 / h);
            }
            Dir::Forward => {
                f.push(self.idx(i, j, c), -1.5 / h);
                f.push(self.idx(i + 1, j, c), 2.0 / h);
                f.push(self.idx(i + 2, j, c), -0.5 / h);
            }
            Dir::Backward => {
                f.push(self.idx(i, j, c), 1.5 / h);
                f.push(self.idx(i - 1, j, c), -2.0 / h);
                f.push(self.idx(i - 2, j, c), 0.5 / h);
            }
        }
        f
    }

    pub fn dyy(&self, i: usize, j: usize, c: usize) -> LinearForm {
        let h2 = self.dx2 * self.dx2;
        let mut f = LinearForm::new();
        f.push(self.idx(i + 1, j, c), 1.0 / h2);
        f.push(self.idx(i, j, c), -2.0 / h2);
        f.push(self.idx(i - 1, j, c), 1.0 / h2);
        f
    }

    pub fn dz(&self, i: usize, j: usize, c: usize, dir: Dir) -> LinearForm {
        let mut f = LinearForm::new();
        match dir {
            Dir::Central => {
                let h = self.dz_above(j);
                debug_assert!((h - self.dz_below(j)).abs() < 1e-9 * h);
                f.push(self.idx(i, j + 1, c), 0.5 / h);
                f.push(self.idx(i, j - 1, c), -0.5 / h);
            }
            Dir::Forward => {
                let h = self.dz_above(j);
                f.push(self.idx(i, j, c), -1.5 / h);
                f.push(self.idx(i, j + 1, c), 2.0 / h);
                f.push(self.idx(i, j + 2, c), -0.5 / h);
            }
            Dir::Backward => {
                let h = self.dz_below(j);
                f.push(self.idx(i, j, c), 1.5 / h);
                f.push(self.idx(i, j - 1, c), -2.0 / h);
                f.push(self.idx(i, j - 2, c), 0.5 / h);
            }
        }
        f
    }

    pub fn dzz(&self, i: usize, j: usize, c: usize) -> LinearForm {
        let h = self.dz_above(j);
        debug_assert!((h - self.dz_below(j)).abs() < 1e-9 * h);
        let h2 = h * h;
        let mut f = LinearForm::new();
        f.push(self.idx(i, j + 1, c), 1.0 / h2);
        f.push(self.idx(i, j, c), -2.0 / h2);
        f.push(self.idx(i, j - 1, c), 1.0 / h2);
        f
    }

    pub fn dyz(&self, i: usize, j: usize, c: usize) -> LinearForm {
        let s = 0.25 / (self.dx2 * self.dz_above(j));
        let mut f = LinearForm::new();
        f.push(self.idx(i + 1, j + 1, c), s);
        f.push(self.idx(i + 1, j - 1, c), -s);
        f.push(self.idx(i - 1, j + 1, c), -s);
        f.push(self.idx(i - 1, j - 1, c), s);
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Psi0Rule;
    use crate::material::ModelParams;

    #[test]
    fn compact_merges() {
        let f = LinearForm::unit(3, 1.0)
            .plus(&LinearForm::unit(1, 2.0), 1.0)
            .plus(&LinearForm::unit(3, -1.0), 1.0)
            .compact();
        assert_eq!(f.terms(), &[(1, 2.0)]);
    }

    #[test]
    fn stencils_exact_on_quadratics() {
        let p = ModelParams::defaults();
        let g = Grid::foundation(&p, 33, Psi0Rule::Contact).unwrap();
        let mesh = Mesh::from_grid(p.surface, &g);
        let mut x = vec![0.0; mesh.unknowns()];
        for i in 0..g.n {
            for j in 0..g.m {
                let (y, z) = (g.x2(i), g.x3(j));
                x[mesh.idx(i, j, 0)] = 1.0 + 2.0 * y - y * y + 3.0 * y * z + 0.5 * z * z;
            }
        }
        let (i, j) = (5, 2);
        let (y, z) = (g.x2(i), g.x3(j));
        let tol = 1e-9;
        assert!((mesh.dy(i, j, 0).eval(&x) - (2.0 - 2.0 * y + 3.0 * z)).abs() < tol);
        assert!((mesh.dyy(i, j, 0).eval(&x) + 2.0).abs() < 1e-7);
        assert!((mesh.dzz(i, j, 0).eval(&x) - 1.0).abs() < 1e-7);
        assert!((mesh.dyz(i, j, 0).eval(&x) - 3.0).abs() < 1e-8);
        for dir in [Dir::Central, Dir::Forward, Dir::Backward] {
            assert!((mesh.dz(i, j, 0, dir).eval(&x) - (3.0 * y + z)).abs() < tol);
            assert!((mesh.dy_dir(i, j, 0, dir).eval(&x) - (2.0 - 2.0 * y + 3.0 * z)).abs() < tol);
        }
        let _ = mesh.dy(0, j, 0);
        let _ = mesh.dy(g.n - 1, j, 0);
    }
}
