//! Assembly of the bonded shell/foundation equations into one sparse system.

use super::sparse::Csr;
use crate::error::Result;
use crate::foundation;
use crate::grid::{Grid, U2, U3};
use crate::material::ModelParams;
use crate::shell::ShellOps;
use crate::stencil::{Dir, LinearForm, Mesh};

/// `A x = b` with one row per unknown; row `k` owns unknown `k`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub a: Csr,
    pub b: Vec<f64>,
}

/// Row forms and right-hand side filled node by node.
pub(crate) struct RowBuilder {
    forms: Vec<LinearForm>,
    rhs: Vec<f64>,
}

impl RowBuilder {
    pub(crate) fn new(unknowns: usize) -> Self {
        RowBuilder {
            forms: vec![LinearForm::new(); unknowns],
            rhs: vec![0.0; unknowns],
        }
    }

    pub(crate) fn set(&mut self, k: usize, form: LinearForm, rhs: f64) {
        self.forms[k] = form;
        self.rhs[k] = rhs;
    }

    pub(crate) fn finish(self) -> Result<LinearSystem> {
        Ok(LinearSystem {
            a: Csr::from_forms(self.forms)?,
            b: self.rhs,
        })
    }
}

/// Clamped base, traction-free sides and Navier interior for rows `0..top`
/// of a region with material `(lam, mu)`.
pub(crate) fn foundation_rows(rb: &mut RowBuilder, mesh: &Mesh, top: usize, lam: f64, mu: f64) {
    let n = mesh.n;
    for i in 0..n {
        rb.set(mesh.idx(i, 0, U2), LinearForm::unit(mesh.idx(i, 0, U2), 1.0), 0.0);
        rb.set(mesh.idx(i, 0, U3), LinearForm::unit(mesh.idx(i, 0, U3), 1.0), 0.0);
    }
    for j in 1..top {
        for i in 0..n {
            let (r2, r3) = if i == 0 || i + 1 == n {
                (
                    foundation::stress_22(mesh, i, j, lam, mu, Dir::Central),
                    foundation::shear(mesh, i, j, Dir::Central),
                )
            } else {
                let [r2, r3] = foundation::navier(mesh, i, j, lam, mu);
                (r2, r3)
            };
            rb.set(mesh.idx(i, j, U2), r2, 0.0);
            rb.set(mesh.idx(i, j, U3), r3, 0.0);
        }
    }
}

/// Full system of the bonded shell model on a foundation grid.
pub fn assemble_shell(p: &ModelParams, g: &Grid) -> Result<LinearSystem> {
    let mesh = Mesh::from_grid(p.surface, g);
    let (lam, mu) = p.foundation.lame();
    let mut rb = RowBuilder::new(mesh.unknowns());
    let top = g.m - 1;
    foundation_rows(&mut rb, &mesh, top, lam, mu);
    let ops = ShellOps::new(&mesh, top, p);
    for i in 0..g.n {
        let k2 = mesh.idx(i, top, U2);
        let k3 = mesh.idx(i, top, U3);
        if i == 0 {
            rb.set(k2, ops.traction(i), p.tau0);
        } else if i + 1 == g.n {
            rb.set(k2, ops.traction(i), p.tau_max);
        } else {
            rb.set(k2, ops.tangential(i), 0.0);
        }
        rb.set(k3, ops.normal(i), 0.0);
    }
    rb.finish()
}
