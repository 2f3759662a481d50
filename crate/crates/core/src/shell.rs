//! Bonded shell on the contact surface, acting as the top boundary of the
//! foundation.
//!
//! With trace values `p = u²(x², 0)`, `w = u³(x², 0)`, `f = F_[II]2²` and
//! `φ` the surface scale factor:
//!
//! ```text
//! ε²₂ = ∂₂p + (φ′/φ) p − f w
//! ρ²₂ = φ⁻² ∂₂₂w − φ′φ⁻³ ∂₂w − f² w + 2f ∂₂p + (f′/3) p
//! ```
//!
//! At the ends the zero-slope and zero-pressure conditions are closed with
//! reflection ghosts (`w₋₁ = w₁`, `ρ₋₁ = ρ₁`), and the traction condition is
//! the equation of the end node for `u²`.

use crate::error::{Error, Result};
use crate::foundation;
use crate::grid::{Field2D, Grid, U2, U3};
use crate::material::ModelParams;
use crate::stencil::{Dir, LinearForm, Mesh};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellState {
    pub eps22: f64,
    pub rho22: f64,
    pub tr_t32: f64,
    pub tr_t33: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Min,
    Max,
}

/// Residuals of the three conditions at one end of the shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndResiduals {
    pub traction: f64,
    pub pressure: f64,
    pub neumann: f64,
}

struct Geo {
    phi: f64,
    dphi: f64,
    /// `(φ′/φ)′`
    dgamma: f64,
    f: f64,
    df: f64,
}

/// Linear forms of the shell quantities on row `j` of a mesh.
pub(crate) struct ShellOps<'a> {
    mesh: &'a Mesh,
    j: usize,
    h: f64,
    lambda_s: f64,
    lam_f: f64,
    mu_f: f64,
}

impl<'a> ShellOps<'a> {
    pub(crate) fn new(mesh: &'a Mesh, j: usize, p: &ModelParams) -> Self {
        let (lam_f, mu_f) = p.foundation.lame();
        ShellOps {
            mesh,
            j,
            h: p.thickness,
            lambda_s: p.shell.lambda_plane(),
            lam_f,
            mu_f,
        }
    }

    fn geo(&self, i: usize) -> Geo {
        let y = self.mesh.x2(i);
        let (phi, dphi, ddphi) = self.mesh.surface.varphi_derivs(y);
        let (f, df) = self.mesh.surface.f_ii_mixed(y);
        Geo {
            phi,
            dphi,
            dgamma: ddphi / phi - dphi * dphi / (phi * phi),
            f,
            df,
        }
    }

    fn unit(&self, i: usize, c: usize) -> LinearForm {
        LinearForm::unit(self.mesh.idx(i, self.j, c), 1.0)
    }

    fn is_end(&self, i: usize) -> bool {
        i == 0 || i + 1 == self.mesh.n
    }

    /// Inward neighbour of an end node.
    fn inward(&self, i: usize) -> usize {
        if i == 0 {
            1
        } else {
            i - 1
        }
    }

    fn w_yy(&self, i: usize) -> LinearForm {
        if self.is_end(i) {
            let h2 = self.mesh.dx2 * self.mesh.dx2;
            self.unit(self.inward(i), U3)
                .plus(&self.unit(i, U3), -1.0)
                .scaled(2.0 / h2)
        } else {
            self.mesh.dyy(i, self.j, U3)
        }
    }

    fn w_y(&self, i: usize) -> LinearForm {
        if self.is_end(i) {
            LinearForm::new()
        } else {
            self.mesh.dy(i, self.j, U3)
        }
    }

    pub(crate) fn eps(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        self.mesh
            .dy(i, self.j, U2)
            .plus(&self.unit(i, U2), g.dphi / g.phi)
            .plus(&self.unit(i, U3), -g.f)
    }

    /// `ρ²₂` without the `2f ∂₂p` term.
    fn rho_part(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        self.w_yy(i)
            .scaled(1.0 / (g.phi * g.phi))
            .plus(&self.w_y(i), -g.dphi / g.phi.powi(3))
            .plus(&self.unit(i, U3), -g.f * g.f)
            .plus(&self.unit(i, U2), g.df / 3.0)
    }

    pub(crate) fn rho(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        self.rho_part(i)
            .plus(&self.mesh.dy(i, self.j, U2), 2.0 * g.f)
    }

    fn d_eps(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        let m = self.mesh;
        m.dyy(i, self.j, U2)
            .plus(&m.dy(i, self.j, U2), g.dphi / g.phi)
            .plus(&self.unit(i, U2), g.dgamma)
            .plus(&self.unit(i, U3), -g.df)
            .plus(&m.dy(i, self.j, U3), -g.f)
    }

    fn d_rho(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        let m = self.mesh;
        let s = 0.5 / m.dx2;
        self.rho_part(i + 1)
            .plus(&self.rho_part(i - 1), -1.0)
            .scaled(s)
            .plus(&m.dy(i, self.j, U2), 2.0 * g.df)
            .plus(&m.dyy(i, self.j, U2), 2.0 * g.f)
    }

    /// Surface Laplacian `φ⁻¹ ∂₂(φ⁻¹ ∂₂ρ)` in conservative form.
    fn lap_rho(&self, i: usize) -> LinearForm {
        let m = self.mesh;
        let h = m.dx2;
        let phi = self.geo(i).phi;
        let y = m.x2(i);
        let flux = |k: usize, phi_half: f64| {
            self.rho(k).plus(&self.rho(i), -1.0).scaled(1.0 / phi_half)
        };
        let scale = 1.0 / (phi * h * h);
        if self.is_end(i) {
            let k = self.inward(i);
            let half = m.surface.varphi(0.5 * (y + m.x2(k)));
            flux(k, half).scaled(2.0 * scale)
        } else {
            let up = m.surface.varphi(y + 0.5 * h);
            let down = m.surface.varphi(y - 0.5 * h);
            flux(i + 1, up).plus(&flux(i - 1, down), 1.0).scaled(scale)
        }
    }

    pub(crate) fn tr_t32(&self, i: usize) -> LinearForm {
        foundation::shear(self.mesh, i, self.j, Dir::Backward).scaled(self.mu_f)
    }

    pub(crate) fn tr_t33(&self, i: usize) -> LinearForm {
        foundation::stress_33(self.mesh, i, self.j, self.lam_f, self.mu_f, Dir::Backward)
    }

    fn bending(&self) -> f64 {
        self.h.powi(3) * self.lambda_s / 3.0
    }

    /// Tangential shell equation at an interior node.
    pub(crate) fn tangential(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        let cb = self.bending();
        self.d_eps(i)
            .scaled(self.h * self.lambda_s)
            .plus(&self.d_rho(i), 2.0 * cb * g.f)
            .plus(&self.rho(i), cb * g.df)
            .plus(&self.tr_t32(i), -1.0)
    }

    /// Normal shell equation; valid at the end nodes through the ghosts.
    pub(crate) fn normal(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        let cb = self.bending();
        self.eps(i)
            .scaled(-self.h * self.lambda_s * g.f)
            .plus(&self.lap_rho(i), cb)
            .plus(&self.rho(i), -cb * g.f * g.f)
            .plus(&self.tr_t33(i), 1.0)
    }

    /// Left side of the end traction condition.
    pub(crate) fn traction(&self, i: usize) -> LinearForm {
        let g = self.geo(i);
        self.eps(i)
            .scaled(self.lambda_s)
            .plus(&self.rho(i), 2.0 / 3.0 * self.h * self.h * self.lambda_s * g.f)
    }
}

fn top_node(u: &Field2D, g: &Grid, i: usize) -> Result<()> {
    u.check_shape(g)?;
    if i >= g.n {
        return Err(Error::InvalidPoint {
            i,
            j: g.m - 1,
            what: "the contact surface",
        });
    }
    Ok(())
}

/// Strain, bending and foundation trace stresses at node `i` of the contact row.
pub fn shell_state(u: &Field2D, p: &ModelParams, g: &Grid, i: usize) -> Result<ShellState> {
    top_node(u, g, i)?;
    let mesh = Mesh::from_grid(p.surface, g);
    let ops = ShellOps::new(&mesh, g.m - 1, p);
    let x = u.as_slice();
    Ok(ShellState {
        eps22: ops.eps(i).eval(x),
        rho22: ops.rho(i).eval(x),
        tr_t32: ops.tr_t32(i).eval(x),
        tr_t33: ops.tr_t33(i).eval(x),
    })
}

pub fn eps22(u: &Field2D, p: &ModelParams, g: &Grid, i: usize) -> Result<f64> {
    Ok(shell_state(u, p, g, i)?.eps22)
}

pub fn rho22(u: &Field2D, p: &ModelParams, g: &Grid, i: usize) -> Result<f64> {
    Ok(shell_state(u, p, g, i)?.rho22)
}

/// `(Tr T³₂, Tr T³₃)` from one-sided differences into the foundation.
pub fn trace_stresses(u: &Field2D, p: &ModelParams, g: &Grid, i: usize) -> Result<(f64, f64)> {
    let s = shell_state(u, p, g, i)?;
    Ok((s.tr_t32, s.tr_t33))
}

/// `(tangential, normal)` shell equation residuals at an interior contact node.
pub fn shell_residuals(u: &Field2D, p: &ModelParams, g: &Grid, i: usize) -> Result<(f64, f64)> {
    top_node(u, g, i)?;
    if i == 0 || i + 1 == g.n {
        return Err(Error::InvalidPoint {
            i,
            j: g.m - 1,
            what: "the shell interior",
        });
    }
    let mesh = Mesh::from_grid(p.surface, g);
    let ops = ShellOps::new(&mesh, g.m - 1, p);
    let x = u.as_slice();
    Ok((ops.tangential(i).eval(x), ops.normal(i).eval(x)))
}

/// Traction, zero-pressure and zero-slope residuals at one end.
///
/// The latter two are evaluated with the reflection ghosts of the scheme.
pub fn shell_end_conditions(u: &Field2D, p: &ModelParams, g: &Grid, end: End) -> Result<EndResiduals> {
    u.check_shape(g)?;
    let mesh = Mesh::from_grid(p.surface, g);
    let ops = ShellOps::new(&mesh, g.m - 1, p);
    let x = u.as_slice();
    let (i, k, tau) = match end {
        End::Min => (0, 1, p.tau0),
        End::Max => (g.n - 1, g.n - 2, p.tau_max),
    };
    let rho_ghost = ops.rho(k).eval(x);
    let w_ghost = u.u3(k, g.m - 1);
    let s = 0.5 / g.dx2;
    let sign = if i == 0 { 1.0 } else { -1.0 };
    Ok(EndResiduals {
        traction: ops.traction(i).eval(x) - tau,
        pressure: sign * s * (ops.rho(k).eval(x) - rho_ghost),
        neumann: sign * s * (u.u3(k, g.m - 1) - w_ghost),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SurfaceFamily;
    use crate::grid::Psi0Rule;
    use crate::material::Deltas;

    fn circle() -> (ModelParams, Grid) {
        let p = ModelParams::from_deltas(Deltas::DEFAULTS).unwrap();
        let g = Grid::foundation(&p, 33, Psi0Rule::Contact).unwrap();
        (p, g)
    }

    #[test]
    fn constant_normal_displacement_on_circle() {
        let (p, g) = circle();
        let c = 0.3;
        let u = Field2D::from_fn(&g, |_, _| (0.0, c));
        for i in [0, 7, 16, g.n - 1] {
            let s = shell_state(&u, &p, &g, i).unwrap();
            assert!((s.eps22 - c / 2.0).abs() < 1e-14);
            assert!((s.rho22 + c / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn trace_normal_stress_of_linear_field() {
        let (p, g) = circle();
        let u = Field2D::from_fn(&g, |_, z| (0.0, z));
        let (lam, mu) = p.foundation.lame();
        let (_, t33) = trace_stresses(&u, &p, &g, 5).unwrap();
        // Γ̄²₂₃ u³ vanishes at x³ = 0
        assert!((t33 - (lam + 2.0 * mu)).abs() < 1e-9);
    }

    #[test]
    fn zero_field() {
        let (p, g) = circle();
        let u = Field2D::for_grid(&g);
        assert_eq!(shell_residuals(&u, &p, &g, 4).unwrap(), (0.0, 0.0));
        let q = p.with_tractions(0.0, 0.0);
        for end in [End::Min, End::Max] {
            let r = shell_end_conditions(&u, &q, &g, end).unwrap();
            assert_eq!((r.traction, r.pressure, r.neumann), (0.0, 0.0, 0.0));
        }
        let r = shell_end_conditions(&u, &p.with_tractions(1.0, 0.0), &g, End::Min).unwrap();
        assert_eq!(r.traction, -1.0);
    }

    #[test]
    fn ends_rejected_for_interior_equations() {
        let (p, g) = circle();
        let u = Field2D::for_grid(&g);
        assert!(shell_residuals(&u, &p, &g, 0).is_err());
        assert!(shell_residuals(&u, &p, &g, g.n - 1).is_err());
        assert!(shell_state(&u, &p, &g, g.n).is_err());
    }

    #[test]
    fn curvature_derivative_vanishes_on_circle() {
        let s = SurfaceFamily::new(2.0, 2.0).unwrap();
        for k in 0..50 {
            let y = -1.5 + 0.06 * k as f64;
            assert_eq!(s.f_ii_mixed(y).1, 0.0);
        }
    }
}
