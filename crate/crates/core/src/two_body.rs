//! Foundation plus a fully resolved overlying layer on `x³ ∈ [0, h]`.
//!
//! Both regions share the interface row, so displacement continuity holds by
//! construction. The interface carries the two stress-continuity equations,
//! each side differenced one-sidedly into its own region.

use crate::error::{Error, Result};
use crate::foundation::{self, FoundationResidual};
use crate::grid::{Field2D, Grid, Psi0Rule, U2, U3};
use crate::material::ModelParams;
use crate::solver::{foundation_rows, solve_system, LinearSystem, RowBuilder, SolveReport, SolverConfig};
use crate::stencil::{Dir, LinearForm, Mesh};

/// Matched grids: same `x²` sampling, layer row 0 is the foundation top row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBodyGrids {
    pub foundation: Grid,
    pub layer: Grid,
}

impl TwoBodyGrids {
    pub fn new(p: &ModelParams, n: usize) -> Result<Self> {
        Ok(TwoBodyGrids {
            foundation: Grid::foundation(p, n, Psi0Rule::Contact)?,
            layer: Grid::layer(p, n)?,
        })
    }

    fn mesh(&self, p: &ModelParams) -> Mesh {
        Mesh::stacked(p.surface, &self.foundation, &self.layer)
    }

    fn interface(&self) -> usize {
        self.foundation.m - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyField {
    pub foundation: Field2D,
    pub layer: Field2D,
}

impl TwoBodyField {
    pub fn zeros(g: &TwoBodyGrids) -> Self {
        TwoBodyField {
            foundation: Field2D::for_grid(&g.foundation),
            layer: Field2D::for_grid(&g.layer),
        }
    }

    /// Evaluates `f(x², x³)` over both regions.
    pub fn from_fn(g: &TwoBodyGrids, mut f: impl FnMut(f64, f64) -> (f64, f64)) -> Self {
        TwoBodyField {
            foundation: Field2D::from_fn(&g.foundation, &mut f),
            layer: Field2D::from_fn(&g.layer, &mut f),
        }
    }

    fn check(&self, g: &TwoBodyGrids) -> Result<()> {
        self.foundation.check_shape(&g.foundation)?;
        self.layer.check_shape(&g.layer)
    }

    fn stack(&self, g: &TwoBodyGrids) -> Vec<f64> {
        let (n, mf) = g.foundation.shape();
        let ml = g.layer.m;
        let rows = mf + ml - 1;
        let mut x = vec![0.0; 2 * n * rows];
        for i in 0..n {
            for j in 0..rows {
                let (a, b) = if j < mf {
                    (self.foundation.u2(i, j), self.foundation.u3(i, j))
                } else {
                    (self.layer.u2(i, j + 1 - mf), self.layer.u3(i, j + 1 - mf))
                };
                x[2 * (i * rows + j) + U2] = a;
                x[2 * (i * rows + j) + U3] = b;
            }
        }
        x
    }

    fn unstack(x: &[f64], g: &TwoBodyGrids) -> Self {
        let mut out = TwoBodyField::zeros(g);
        let (n, mf) = g.foundation.shape();
        let rows = mf + g.layer.m - 1;
        for i in 0..n {
            for j in 0..rows {
                let a = x[2 * (i * rows + j) + U2];
                let b = x[2 * (i * rows + j) + U3];
                if j < mf {
                    out.foundation.set(i, j, a, b);
                }
                if j + 1 >= mf {
                    out.layer.set(i, j + 1 - mf, a, b);
                }
            }
        }
        out
    }
}

struct Materials {
    lam_f: f64,
    mu_f: f64,
    lam_l: f64,
    mu_l: f64,
}

impl Materials {
    fn of(p: &ModelParams) -> Self {
        let (lam_f, mu_f) = p.foundation.lame();
        let (lam_l, mu_l) = p.shell.lame();
        Materials {
            lam_f,
            mu_f,
            lam_l,
            mu_l,
        }
    }
}

fn side_traction(p: &ModelParams, i: usize, n: usize) -> f64 {
    if i == 0 {
        p.tau0
    } else if i + 1 == n {
        p.tau_max
    } else {
        0.0
    }
}

/// `(shear, normal)` stress jumps across the interface at column `i`.
fn interface_forms(mesh: &Mesh, i: usize, j: usize, k: &Materials) -> (LinearForm, LinearForm) {
    let shear = foundation::shear(mesh, i, j, Dir::Backward)
        .scaled(k.mu_f)
        .plus(&foundation::shear(mesh, i, j, Dir::Forward), -k.mu_l);
    let normal = foundation::stress_33(mesh, i, j, k.lam_f, k.mu_f, Dir::Backward).plus(
        &foundation::stress_33(mesh, i, j, k.lam_l, k.mu_l, Dir::Forward),
        -1.0,
    );
    (shear, normal)
}

/// Full coupled system on the stacked mesh.
pub fn assemble_two_body(p: &ModelParams, g: &TwoBodyGrids) -> Result<LinearSystem> {
    let mesh = g.mesh(p);
    let k = Materials::of(p);
    let n = mesh.n;
    let ji = g.interface();
    let jt = mesh.rows() - 1;
    let mut rb = RowBuilder::new(mesh.unknowns());
    foundation_rows(&mut rb, &mesh, ji, k.lam_f, k.mu_f);

    for i in 0..n {
        let (k2, k3) = (mesh.idx(i, ji, U2), mesh.idx(i, ji, U3));
        if i == 0 || i + 1 == n {
            let tau = side_traction(p, i, n);
            rb.set(k2, foundation::stress_22(&mesh, i, ji, k.lam_l, k.mu_l, Dir::Forward), tau);
            rb.set(k3, foundation::shear(&mesh, i, ji, Dir::Forward), 0.0);
        } else {
            let (shear, normal) = interface_forms(&mesh, i, ji, &k);
            rb.set(k2, shear, 0.0);
            rb.set(k3, normal, 0.0);
        }
    }

    for j in ji + 1..jt {
        for i in 0..n {
            let (k2, k3) = (mesh.idx(i, j, U2), mesh.idx(i, j, U3));
            if i == 0 || i + 1 == n {
                let tau = side_traction(p, i, n);
                rb.set(k2, foundation::stress_22(&mesh, i, j, k.lam_l, k.mu_l, Dir::Central), tau);
                rb.set(k3, foundation::shear(&mesh, i, j, Dir::Central), 0.0);
            } else {
                let [r2, r3] = foundation::navier(&mesh, i, j, k.lam_l, k.mu_l);
                rb.set(k2, r2, 0.0);
                rb.set(k3, r3, 0.0);
            }
        }
    }

    for i in 0..n {
        let (k2, k3) = (mesh.idx(i, jt, U2), mesh.idx(i, jt, U3));
        if i == 0 || i + 1 == n {
            let tau = side_traction(p, i, n);
            rb.set(k2, foundation::stress_22(&mesh, i, jt, k.lam_l, k.mu_l, Dir::Backward), tau);
        } else {
            rb.set(k2, foundation::shear(&mesh, i, jt, Dir::Backward), 0.0);
        }
        rb.set(k3, foundation::stress_33(&mesh, i, jt, k.lam_l, k.mu_l, Dir::Backward), 0.0);
    }
    rb.finish()
}

/// Navier residuals of the layer at an interior layer node.
pub fn layer_interior_residual(
    v: &Field2D,
    p: &ModelParams,
    layer: &Grid,
    i: usize,
    j: usize,
) -> Result<FoundationResidual> {
    v.check_shape(layer)?;
    if i == 0 || i + 1 >= layer.n || j == 0 || j + 1 >= layer.m {
        return Err(Error::InvalidPoint {
            i,
            j,
            what: "the layer interior",
        });
    }
    let mesh = Mesh::from_grid(p.surface, layer);
    let (lam, mu) = p.shell.lame();
    let [r2, r3] = foundation::navier(&mesh, i, j, lam, mu);
    Ok(FoundationResidual {
        r2: r2.eval(v.as_slice()),
        r3: r3.eval(v.as_slice()),
    })
}

/// Residuals on the free boundary of the layer.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerBoundaryResiduals {
    /// `(T²₂ − τ₀, shear)` for layer rows `1..m`.
    pub left: Vec<(f64, f64)>,
    /// `(T²₂ − τ_max, shear)` for layer rows `1..m`.
    pub right: Vec<(f64, f64)>,
    /// `(shear, T³₃)` for the top row between the corners.
    pub top: Vec<(f64, f64)>,
}

pub fn layer_boundary_residuals(v: &Field2D, p: &ModelParams, layer: &Grid) -> Result<LayerBoundaryResiduals> {
    v.check_shape(layer)?;
    let mesh = Mesh::from_grid(p.surface, layer);
    let (lam, mu) = p.shell.lame();
    let x = v.as_slice();
    let top = layer.m - 1;
    let zdir = |j: usize| if j == top { Dir::Backward } else { Dir::Central };
    let side = |i: usize, tau: f64| -> Vec<(f64, f64)> {
        (1..layer.m)
            .map(|j| {
                (
                    foundation::stress_22(&mesh, i, j, lam, mu, zdir(j)).eval(x) - tau,
                    foundation::shear(&mesh, i, j, zdir(j)).eval(x),
                )
            })
            .collect()
    };
    Ok(LayerBoundaryResiduals {
        left: side(0, p.tau0),
        right: side(layer.n - 1, p.tau_max),
        top: (1..layer.n - 1)
            .map(|i| {
                (
                    foundation::shear(&mesh, i, top, Dir::Backward).eval(x),
                    foundation::stress_33(&mesh, i, top, lam, mu, Dir::Backward).eval(x),
                )
            })
            .collect(),
    })
}

/// `(shear jump, normal jump)` across the interface at column `i`.
pub fn interface_residuals(w: &TwoBodyField, p: &ModelParams, g: &TwoBodyGrids, i: usize) -> Result<(f64, f64)> {
    w.check(g)?;
    if i == 0 || i + 1 >= g.foundation.n {
        return Err(Error::InvalidPoint {
            i,
            j: g.interface(),
            what: "the interface interior",
        });
    }
    let mesh = g.mesh(p);
    let x = w.stack(g);
    let (s, n) = interface_forms(&mesh, i, g.interface(), &Materials::of(p));
    Ok((s.eval(&x), n.eval(&x)))
}

/// Solves the bonded two-body problem.
pub fn solve_two_body(p: &ModelParams, g: &TwoBodyGrids, cfg: &SolverConfig) -> Result<(TwoBodyField, SolveReport)> {
    let sys = assemble_two_body(p, g)?;
    let (x, report) = solve_system(&sys, None, cfg)?;
    Ok((TwoBodyField::unstack(&x, g), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::Deltas;

    fn setup() -> (ModelParams, TwoBodyGrids) {
        let p = ModelParams::from_deltas(Deltas::FIGURE).unwrap();
        let g = TwoBodyGrids::new(&p, 17).unwrap();
        (p, g)
    }

    #[test]
    fn stack_round_trip() {
        let (_, g) = setup();
        let w = TwoBodyField::from_fn(&g, |y, z| (y * z, y + 3.0 * z));
        let back = TwoBodyField::unstack(&w.stack(&g), &g);
        assert_eq!(back, w);
        assert_eq!(w.layer.top_row().len(), g.layer.n);
    }

    #[test]
    fn zero_field_residuals() {
        let (p, g) = setup();
        let w = TwoBodyField::zeros(&g);
        assert_eq!(interface_residuals(&w, &p, &g, 3).unwrap(), (0.0, 0.0));
        let r = layer_interior_residual(&w.layer, &p, &g.layer, 3, 1).unwrap();
        assert_eq!((r.r2, r.r3), (0.0, 0.0));
        let q = p.with_tractions(0.0, 0.0);
        let b = layer_boundary_residuals(&w.layer, &q, &g.layer).unwrap();
        assert!(b.left.iter().chain(&b.right).chain(&b.top).all(|&v| v == (0.0, 0.0)));
        let b = layer_boundary_residuals(&w.layer, &p.with_tractions(1.0, 0.0), &g.layer).unwrap();
        assert!(b.left.iter().all(|&(t, _)| t == -1.0));
    }
}
