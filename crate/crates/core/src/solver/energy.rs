//! Trapezoidal discrete total energy of the bonded shell model.

use crate::error::Result;
use crate::grid::{Field2D, Grid, U2, U3};
use crate::material::ModelParams;
use crate::shell::ShellOps;
use crate::stencil::{Dir, Mesh};

fn trapezoid(k: usize, len: usize) -> f64 {
    if k == 0 || k + 1 == len {
        0.5
    } else {
        1.0
    }
}

fn z_dir(j: usize, m: usize) -> Dir {
    if j == 0 {
        Dir::Forward
    } else if j + 1 == m {
        Dir::Backward
    } else {
        Dir::Central
    }
}

/// Foundation strain energy plus shell membrane and bending energy minus the
/// work of the end tractions.
pub fn discrete_energy(u: &Field2D, p: &ModelParams, g: &Grid) -> Result<f64> {
    u.check_shape(g)?;
    let mesh = Mesh::from_grid(p.surface, g);
    let x = u.as_slice();
    let (lam, mu) = p.foundation.lame();

    let mut bulk = 0.0;
    for i in 0..g.n {
        for j in 0..g.m {
            let s = p.surface.scale_factor(g.x2(i), g.x3(j));
            let dir = z_dir(j, g.m);
            let pv = u.u2(i, j);
            let wv = u.u3(i, j);
            let e22 = mesh.dy(i, j, U2).eval(x) + s.d2 / s.psi * pv + s.d3 / s.psi * wv;
            let e33 = mesh.dz(i, j, U3, dir).eval(x);
            let e23 = 0.5 * (s.psi * s.psi * mesh.dz(i, j, U2, dir).eval(x) + mesh.dy(i, j, U3).eval(x));
            let div = e22 + e33;
            let density = 0.5 * lam * div * div
                + mu * (e22 * e22 + e33 * e33 + 2.0 * e23 * e23 / (s.psi * s.psi));
            bulk += trapezoid(i, g.n) * trapezoid(j, g.m) * density * s.psi;
        }
    }
    bulk *= g.dx2 * g.dx3;

    let ops = ShellOps::new(&mesh, g.m - 1, p);
    let lambda_s = p.shell.lambda_plane();
    let h = p.thickness;
    let mut shell = 0.0;
    for i in 0..g.n {
        let eps = ops.eps(i).eval(x);
        let rho = ops.rho(i).eval(x);
        let phi = p.surface.varphi(g.x2(i));
        shell += trapezoid(i, g.n)
            * 0.5
            * (h * lambda_s * eps * eps + h.powi(3) * lambda_s / 3.0 * rho * rho)
            * phi;
    }
    shell *= g.dx2;

    let top = g.m - 1;
    let phi_end = p.surface.varphi(g.x2(0));
    let work = h * phi_end * (p.tau_max * u.u2(g.n - 1, top) - p.tau0 * u.u2(0, top));
    Ok(bulk + shell - work)
}
