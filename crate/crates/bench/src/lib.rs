//! Fixtures shared by the solver benchmarks.

use shellfound::{Grid, ModelParams, Psi0Rule};

/// Default parameters on an `n`-column foundation grid.
pub fn fixture(n: usize) -> (ModelParams, Grid) {
    let p = ModelParams::defaults();
    let g = Grid::foundation(&p, n, Psi0Rule::Contact).expect("default grid is valid");
    (p, g)
}
