//! Elastic foundation on the `(x², x³)` chart: Navier equations, the clamped
//! base and the traction-free sides.
//!
//! With `u = (0, u², u³)` (contravariant) and `ψ = ψ̄₂`, the divergence is
//! `D = ∂₂u² + ∂₃u³ + (∂₂ψ/ψ) u² + (∂₃ψ/ψ) u³` and the Navier operator
//! `(λ + μ) ∇ʲD + μ Δuʲ` reduces (using `∂₃₃ψ = 0`) to
//!
//! ```text
//! ψ² r₂ = (λ+2μ) ∂₂₂u² + μψ² ∂₃₃u² + (λ+μ) ∂₂₃u³ + (λ+2μ)(ψ₂/ψ) ∂₂u² + 3μψψ₃ ∂₃u²
//!       + (λ+3μ)(ψ₃/ψ) ∂₂u³ + (λ+2μ)(ψ₂₂/ψ − ψ₂²/ψ²) u² + (λ+2μ)(ψ₂₃/ψ − ψ₂ψ₃/ψ²) u³
//!    r₃ = (λ+2μ) ∂₃₃u³ + (μ/ψ²) ∂₂₂u³ + (λ+μ) ∂₂₃u² + (λ+μ)(ψ₂/ψ) ∂₃u² − 2μ(ψ₃/ψ) ∂₂u²
//!       + (λ+2μ)(ψ₃/ψ) ∂₃u³ − μ(ψ₂/ψ³) ∂₂u³
//!       + ((λ+2μ)(ψ₂₃/ψ − ψ₂ψ₃/ψ²) − 2μψ₂₃/ψ) u² − (λ+2μ)(ψ₃/ψ)² u³
//! ```
//!
//! where subscripts on `ψ` denote partial derivatives.

use crate::error::{Error, Result};
use crate::grid::{Field2D, Grid, U2, U3};
use crate::material::ModelParams;
use crate::stencil::{Dir, LinearForm, Mesh};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoundationResidual {
    pub r2: f64,
    pub r3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn column(self, n: usize) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => n - 1,
        }
    }
}

/// Navier operator at an interior node, as `[r₂, r₃]` in contravariant form.
pub(crate) fn navier(mesh: &Mesh, i: usize, j: usize, lam: f64, mu: f64) -> [LinearForm; 2] {
    let s = mesh.surface.scale_factor(mesh.x2(i), mesh.z[j]);
    let (psi, p2, p22, p3, p23) = (s.psi, s.d2, s.d22, s.d3, s.d23);
    let l2m = lam + 2.0 * mu;
    let lpm = lam + mu;

    let r2 = LinearForm::new()
        .plus(&mesh.dyy(i, j, U2), l2m)
        .plus(&mesh.dzz(i, j, U2), mu * psi * psi)
        .plus(&mesh.dyz(i, j, U3), lpm)
        .plus(&mesh.dy_dir(i, j, U2, Dir::Central), l2m * p2 / psi)
        .plus(&mesh.dz(i, j, U2, Dir::Central), 3.0 * mu * psi * p3)
        .plus(&mesh.dy_dir(i, j, U3, Dir::Central), (lam + 3.0 * mu) * p3 / psi)
        .plus(
            &LinearForm::unit(mesh.idx(i, j, U2), 1.0),
            l2m * (p22 / psi - p2 * p2 / (psi * psi)),
        )
        .plus(
            &LinearForm::unit(mesh.idx(i, j, U3), 1.0),
            l2m * (p23 / psi - p3 * p2 / (psi * psi)),
        )
        .scaled(1.0 / (psi * psi));

    let r3 = LinearForm::new()
        .plus(&mesh.dzz(i, j, U3), l2m)
        .plus(&mesh.dyy(i, j, U3), mu / (psi * psi))
        .plus(&mesh.dyz(i, j, U2), lpm)
        .plus(&mesh.dz(i, j, U2, Dir::Central), lpm * p2 / psi)
        .plus(&mesh.dy_dir(i, j, U2, Dir::Central), -2.0 * mu * p3 / psi)
        .plus(&mesh.dz(i, j, U3, Dir::Central), l2m * p3 / psi)
        .plus(&mesh.dy_dir(i, j, U3, Dir::Central), -mu * p2 / psi.powi(3))
        .plus(
            &LinearForm::unit(mesh.idx(i, j, U2), 1.0),
            l2m * (p23 / psi - p2 * p3 / (psi * psi)) - 2.0 * mu * p23 / psi,
        )
        .plus(
            &LinearForm::unit(mesh.idx(i, j, U3), 1.0),
            -l2m * p3 * p3 / (psi * psi),
        );

    [r2, r3]
}

/// `∂₂u² + Γ̄²₂₂u² + Γ̄²₂₃u³`, the in-plane part of the divergence.
fn tangential_dilatation(mesh: &Mesh, i: usize, j: usize) -> LinearForm {
    let s = mesh.surface.scale_factor(mesh.x2(i), mesh.z[j]);
    mesh.dy(i, j, U2)
        .plus(&LinearForm::unit(mesh.idx(i, j, U2), 1.0), s.d2 / s.psi)
        .plus(&LinearForm::unit(mesh.idx(i, j, U3), 1.0), s.d3 / s.psi)
}

/// Normal stress `T²₂` across an `x²` = const face.
pub(crate) fn stress_22(mesh: &Mesh, i: usize, j: usize, lam: f64, mu: f64, zdir: Dir) -> LinearForm {
    tangential_dilatation(mesh, i, j)
        .scaled(lam + 2.0 * mu)
        .plus(&mesh.dz(i, j, U3, zdir), lam)
}

/// Normal stress `T³₃` across an `x³` = const face.
pub(crate) fn stress_33(mesh: &Mesh, i: usize, j: usize, lam: f64, mu: f64, zdir: Dir) -> LinearForm {
    tangential_dilatation(mesh, i, j)
        .scaled(lam)
        .plus(&mesh.dz(i, j, U3, zdir), lam + 2.0 * mu)
}

/// `ψ̄₂² ∂₃u² + ∂₂u³`, the shear stress `T³₂` divided by `μ`.
pub(crate) fn shear(mesh: &Mesh, i: usize, j: usize, zdir: Dir) -> LinearForm {
    let psi = mesh.surface.scale_factor(mesh.x2(i), mesh.z[j]).psi;
    mesh.dz(i, j, U2, zdir)
        .scaled(psi * psi)
        .plus(&mesh.dy(i, j, U3), 1.0)
}

/// Navier residuals at an interior foundation node.
pub fn interior_residual(
    u: &Field2D,
    p: &ModelParams,
    g: &Grid,
    i: usize,
    j: usize,
) -> Result<FoundationResidual> {
    u.check_shape(g)?;
    if i == 0 || i + 1 >= g.n || j == 0 || j + 1 >= g.m {
        return Err(Error::InvalidPoint {
            i,
            j,
            what: "the foundation interior",
        });
    }
    let mesh = Mesh::from_grid(p.surface, g);
    let (lam, mu) = p.foundation.lame();
    let [r2, r3] = navier(&mesh, i, j, lam, mu);
    Ok(FoundationResidual {
        r2: r2.eval(u.as_slice()),
        r3: r3.eval(u.as_slice()),
    })
}

/// `(u², u³)` on the clamped base, one pair per column.
pub fn bottom_dirichlet(u: &Field2D) -> Vec<(f64, f64)> {
    let (n, _) = u.shape();
    (0..n).map(|i| (u.u2(i, 0), u.u3(i, 0))).collect()
}

/// Traction-free side residuals `(ψ̄₂²∂₃u² + ∂₂u³, T²₂)` for rows `1..m−1`.
pub fn side_robin(u: &Field2D, p: &ModelParams, g: &Grid, side: Side) -> Result<Vec<(f64, f64)>> {
    u.check_shape(g)?;
    let mesh = Mesh::from_grid(p.surface, g);
    let (lam, mu) = p.foundation.lame();
    let i = side.column(g.n);
    Ok((1..g.m - 1)
        .map(|j| {
            (
                shear(&mesh, i, j, Dir::Central).eval(u.as_slice()),
                stress_22(&mesh, i, j, lam, mu, Dir::Central).eval(u.as_slice()),
            )
        })
        .collect())
}
