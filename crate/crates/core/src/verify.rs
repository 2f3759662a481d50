//! Oracle checks shared by the test suite and the `verify` command.
//!
//! Every oracle here is computed independently of the code it checks:
//! geometry from finite differences of the Cartesian embedding, elliptic
//! integrals from Carlson's symmetric forms, and the Navier operator from
//! the general tensor divergence of the stress.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::ode_residual;
use crate::elliptic::ellip_e;
use crate::error::Result;
use crate::foundation;
use crate::geometry::{ChristoffelSet, SurfaceFamily};
use crate::grid::{Field2D, Grid, Psi0Rule, U2, U3};
use crate::material::{Deltas, ModelParams};
use crate::solver::{discrete_energy, solve, SolverConfig};
use crate::stencil::Mesh;
use crate::two_body::{solve_two_body, TwoBodyGrids};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check { name, passed, detail }
    }

    fn from_result(name: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

pub const SEED: u64 = 0x005e_ed0f_5e11;

/// Fourth-order central first derivative.
fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

/// Fourth-order central second derivative.
fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (16.0 * (f(x + h) + f(x - h)) - (f(x + 2.0 * h) + f(x - 2.0 * h)) - 30.0 * f(x)) / (12.0 * h * h)
}

const STEP: f64 = 1e-3;

/// Geometry of the chart derived only from the embedding.
struct EmbeddingFrame {
    /// `g^{kl}`, indices 0..3 for `x¹..x³`
    ginv: [[f64; 3]; 3],
    /// `Γ^k_ij`
    gamma: [[[f64; 3]; 3]; 3],
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn invert3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let mut r = [[0.0; 3]; 3];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            *v = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
        }
    }
    r
}

impl EmbeddingFrame {
    fn at(s: &SurfaceFamily, y: f64, z: f64) -> Self {
        let pos = |x: [f64; 3]| s.embedding(x[0], x[1], x[2]);
        let base = [0.0, y, z];
        let comp = |k: usize, x: [f64; 3]| pos(x)[k];
        let shifted = |x: [f64; 3], i: usize, t: f64| {
            let mut x = x;
            x[i] += t;
            x
        };
        let mut tangent = [[0.0; 3]; 3];
        for (i, t) in tangent.iter_mut().enumerate() {
            for (k, v) in t.iter_mut().enumerate() {
                *v = d1(|h| comp(k, shifted(base, i, h)), 0.0, STEP);
            }
        }
        let mut second = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    second[i][j][k] = if i == j {
                        d2(|h| comp(k, shifted(base, i, h)), 0.0, STEP)
                    } else {
                        d1(
                            |h| d1(|t| comp(k, shifted(shifted(base, i, h), j, t)), 0.0, STEP),
                            0.0,
                            STEP,
                        )
                    };
                }
            }
        }
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = dot(tangent[i], tangent[j]);
            }
        }
        let ginv = invert3(g);
        let mut gamma = [[[0.0; 3]; 3]; 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    gamma[k][i][j] = (0..3).map(|l| ginv[k][l] * dot(second[i][j], tangent[l])).sum();
                }
            }
        }
        EmbeddingFrame { ginv, gamma }
    }
}

/// Compares `christoffel` against the embedding at `samples` random points.
///
/// Returns the largest absolute discrepancy over all 27 symbols.
pub fn christoffel_discrepancy(
    christoffel: impl Fn(&SurfaceFamily, f64, f64) -> Result<ChristoffelSet>,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let s = SurfaceFamily::new(2.0, rng.gen_range(1.6..2.4))?;
        let y = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
        let z = rng.gen_range(-1.0..0.5);
        let got = christoffel(&s, y, z)?;
        let want = EmbeddingFrame::at(&s, y, z);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((got.get(k + 1, i + 1, j + 1) - want.gamma[k][i][j]).abs());
                }
            }
        }
    }
    Ok(worst)
}

pub fn check_christoffel(christoffel: impl Fn(&SurfaceFamily, f64, f64) -> Result<ChristoffelSet>) -> Check {
    const TOL: f64 = 1e-6;
    Check::from_result(
        "christoffel vs embedding",
        christoffel_discrepancy(christoffel, 100, SEED).map(|d| (d <= TOL, format!("max |dGamma| = {d:.2e} (tol {TOL:.0e}, 100 points)"))),
    )
}

/// Carlson's `R_F(x, y, z)` by duplication.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    loop {
        let a = (x + y + z) / 3.0;
        let dx = 1.0 - x / a;
        let dy = 1.0 - y / a;
        let dz = 1.0 - z / a;
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let l = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + l);
        y = 0.25 * (y + l);
        z = 0.25 * (z + l);
    }
}

/// Carlson's `R_D(x, y, z)` by duplication.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let mut sum = 0.0;
    let mut fac = 1.0;
    loop {
        let a = (x + y + 3.0 * z) / 5.0;
        let dx = 1.0 - x / a;
        let dy = 1.0 - y / a;
        let dz = 1.0 - z / a;
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + 2.0 * ec;
            let series = 1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
                + dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
            return 3.0 * sum + fac * series / (a * a.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let l = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + l));
        fac *= 0.25;
        x = 0.25 * (x + l);
        y = 0.25 * (y + l);
        z = 0.25 * (z + l);
    }
}

/// `E(x2 | e2)` through Carlson's forms.
pub fn ellip_e_carlson(x2: f64, e2: f64) -> f64 {
    let (s, c) = x2.sin_cos();
    let q = 1.0 - e2 * s * s;
    s * carlson_rf(c * c, q, 1.0) - e2 * s.powi(3) * carlson_rd(c * c, q, 1.0) / 3.0
}

pub fn elliptic_discrepancy(e: impl Fn(f64, f64) -> Result<f64>, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x2 = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
        let e2 = rng.gen_range(-1.25..0.99);
        worst = worst.max((e(x2, e2)? - ellip_e_carlson(x2, e2)).abs());
    }
    Ok(worst)
}

pub fn check_elliptic(e: impl Fn(f64, f64) -> Result<f64>) -> Check {
    const TOL: f64 = 1e-10;
    Check::from_result(
        "elliptic integral vs Carlson forms",
        elliptic_discrepancy(e, 50, SEED).map(|d| (d <= TOL, format!("max |dE| = {d:.2e} (tol {TOL:.0e}, 50 points)"))),
    )
}

/// Continuous Navier operator `∇ᵢTⁱʲ` (contravariant `j = 2, 3`) of a
/// displacement `(u², u³)(x², x³)` from the general tensor formula.
pub fn navier_oracle(
    s: &SurfaceFamily,
    lam: f64,
    mu: f64,
    u: &dyn Fn(f64, f64) -> (f64, f64),
    y: f64,
    z: f64,
) -> [f64; 2] {
    let field = |y: f64, z: f64| {
        let (a, b) = u(y, z);
        [0.0, a, b]
    };
    let stress = |y: f64, z: f64| -> [[f64; 3]; 3] {
        let fr = EmbeddingFrame::at(s, y, z);
        let v = field(y, z);
        // ∂_k u^j, with nothing depending on x¹
        let mut du = [[0.0; 3]; 3];
        for j in 0..3 {
            du[1][j] = d1(|t| field(t, z)[j], y, STEP);
            du[2][j] = d1(|t| field(y, t)[j], z, STEP);
        }
        let mut cov = [[0.0; 3]; 3];
        for k in 0..3 {
            for j in 0..3 {
                cov[k][j] = du[k][j] + (0..3).map(|l| fr.gamma[j][k][l] * v[l]).sum::<f64>();
            }
        }
        let div: f64 = (0..3).map(|k| cov[k][k]).sum();
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let sym: f64 = (0..3).map(|k| fr.ginv[i][k] * cov[k][j] + fr.ginv[j][k] * cov[k][i]).sum();
                t[i][j] = lam * div * fr.ginv[i][j] + mu * sym;
            }
        }
        t
    };
    let t0 = stress(y, z);
    let fr = EmbeddingFrame::at(s, y, z);
    const OUTER: f64 = 1e-2;
    let mut out = [0.0; 2];
    for (o, j) in out.iter_mut().zip([1, 2]) {
        let dt = d1(|t| stress(t, z)[1][j], y, OUTER) + d1(|t| stress(y, t)[2][j], z, OUTER);
        let mut conn = 0.0;
        for i in 0..3 {
            for k in 0..3 {
                conn += fr.gamma[i][i][k] * t0[k][j] + fr.gamma[j][i][k] * t0[i][k];
            }
        }
        *o = dt + conn;
    }
    out
}

/// Manufactured displacement used by the operator checks.
pub fn manufactured(depth: f64) -> impl Fn(f64, f64) -> (f64, f64) {
    move |y: f64, z: f64| {
        let d = z + depth;
        (y.sin() * d * d, (2.0 * y).cos() * d * (1.0 + 0.5 * z))
    }
}

/// Discrete Navier residual of `u` at `(y, z)` with spacings `(dy, dz)`.
///
/// `dy` must divide the distance from `y` to `−π/2`.
pub fn discrete_navier(
    s: SurfaceFamily,
    lam: f64,
    mu: f64,
    u: &dyn Fn(f64, f64) -> (f64, f64),
    (y, z): (f64, f64),
    (dy, dz): (f64, f64),
) -> [f64; 2] {
    let n = (PI / dy).round() as usize + 1;
    let i = ((y + FRAC_PI_2) / dy).round() as usize;
    let mesh = Mesh {
        surface: s,
        n,
        dx2: PI / (n - 1) as f64,
        z: vec![z - dz, z, z + dz],
    };
    let mut x = vec![0.0; mesh.unknowns()];
    for a in 0..n {
        for (b, &zb) in mesh.z.iter().enumerate() {
            let (p, w) = u(mesh.x2(a), zb);
            x[mesh.idx(a, b, U2)] = p;
            x[mesh.idx(a, b, U3)] = w;
        }
    }
    let [r2, r3] = foundation::navier(&mesh, i, 1, lam, mu);
    [r2.eval(&x), r3.eval(&x)]
}

/// Navier operator signature accepted by [`navier_orders`].
pub type NavierFn<'a> = &'a dyn Fn(SurfaceFamily, f64, f64, &dyn Fn(f64, f64) -> (f64, f64), (f64, f64), (f64, f64)) -> [f64; 2];

/// Observed truncation-error orders of `navier_at` over three refinements,
/// one `[order₂, order₃]` per successive pair.
pub fn navier_orders(p: &ModelParams, layer: bool, navier_at: NavierFn) -> [[f64; 2]; 2] {
    let (lam, mu, z, dz0) = if layer {
        let (l, m) = p.shell.lame();
        (l, m, 0.5 * p.thickness, 0.25 * p.thickness)
    } else {
        let (l, m) = p.foundation.lame();
        (l, m, -0.5, 0.25)
    };
    let y = -FRAC_PI_4;
    let u = manufactured(p.depth);
    let exact = navier_oracle(&p.surface, lam, mu, &u, y, z);
    let err: Vec<[f64; 2]> = [1.0, 2.0, 4.0]
        .iter()
        .map(|&k| {
            let d = navier_at(p.surface, lam, mu, &u, (y, z), (PI / (16.0 * k), dz0 / k));
            [(d[0] - exact[0]).abs(), (d[1] - exact[1]).abs()]
        })
        .collect();
    let order = |a: f64, b: f64| (a / b).log2();
    [
        [order(err[0][0], err[1][0]), order(err[0][1], err[1][1])],
        [order(err[1][0], err[2][0]), order(err[1][1], err[2][1])],
    ]
}

fn order_in_band(o: f64) -> bool {
    (1.8..=2.2).contains(&o)
}

pub fn check_mms(layer: bool) -> Check {
    let p = ModelParams::figure();
    let orders = navier_orders(&p, layer, &discrete_navier);
    let ok = orders.iter().flatten().all(|&o| order_in_band(o));
    let name = if layer {
        "layer Navier MMS order"
    } else {
        "foundation Navier MMS order"
    };
    Check::new(
        name,
        ok,
        format!(
            "orders (u2, u3): {:.3}/{:.3}, {:.3}/{:.3}",
            orders[0][0], orders[0][1], orders[1][0], orders[1][1]
        ),
    )
}

/// Order of the discrete membrane-equation residual of the closed form,
/// from the maxima over 1000 points at spacings `h` and `h/2`.
pub fn closed_form_ode_order(p: &ModelParams, h: f64) -> Result<f64> {
    let max_res = |step: f64| -> Result<f64> {
        let lo = -FRAC_PI_2 + 2.0 * h;
        let hi = FRAC_PI_2 - 2.0 * h;
        let mut worst: f64 = 0.0;
        for k in 0..1000 {
            let y = lo + (hi - lo) * k as f64 / 999.0;
            worst = worst.max(ode_residual(p, y, step)?.abs());
        }
        Ok(worst)
    };
    Ok((max_res(h)? / max_res(0.5 * h)?).log2())
}

pub fn check_closed_form_ode() -> Check {
    let p = ModelParams::from_deltas(Deltas { radius: 0.9, ..Deltas::DEFAULTS }).expect("valid preset");
    Check::from_result(
        "closed-form membrane ODE residual order",
        closed_form_ode_order(&p, 0.02).map(|o| (order_in_band(o), format!("order {o:.3}"))),
    )
}

/// Energy of `count` random admissible perturbations of amplitude `amp`
/// about the converged solution, relative to the minimum candidate.
///
/// Returns `(J*, min over perturbations of J − J*)`.
pub fn energy_perturbations(p: &ModelParams, n: usize, count: usize, amp: f64, seed: u64) -> Result<(f64, f64)> {
    let g = Grid::foundation(p, n, Psi0Rule::Contact)?;
    let (u, _) = solve(p, &g, &SolverConfig::direct())?;
    let j_star = discrete_energy(&u, p, &g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let top = g.m - 1;
    for _ in 0..count {
        let mut v = u.clone();
        for i in 0..g.n {
            for j in 1..g.m {
                let (a, b) = (rng.gen_range(-amp..amp), rng.gen_range(-amp..amp));
                v.set(i, j, v.u2(i, j) + a, v.u3(i, j) + b);
            }
        }
        // zero slope at the shell ends
        for (end, inner) in [(0, 1), (g.n - 1, g.n - 2)] {
            let dw = v.u3(inner, top) - u.u3(inner, top);
            v.set(end, top, v.u2(end, top), u.u3(end, top) + dw);
        }
        worst = worst.min(discrete_energy(&v, p, &g)? - j_star);
    }
    Ok((j_star, worst))
}

pub fn check_energy_minimum() -> Check {
    Check::from_result(
        "energy minimum under perturbation",
        energy_perturbations(&ModelParams::defaults(), 129, 50, 1e-6, SEED)
            .map(|(j, d)| (d >= 0.0, format!("J* = {j:.6e}, min(J - J*) = {d:.3e} over 50 perturbations"))),
    )
}

pub fn check_zero_traction() -> Check {
    let run = || -> Result<(bool, String)> {
        let p = ModelParams::defaults().with_tractions(0.0, 0.0);
        let g = Grid::foundation(&p, 33, Psi0Rule::Contact)?;
        let (u, _) = solve(&p, &g, &SolverConfig::direct())?;
        let tg = TwoBodyGrids::new(&p, 33)?;
        let (w, _) = solve_two_body(&p, &tg, &SolverConfig::direct())?;
        let m = u.max_abs().max(w.foundation.max_abs()).max(w.layer.max_abs());
        Ok((m == 0.0, format!("max |u| = {m:e}")))
    };
    Check::from_result("zero tractions give zero fields", run())
}

/// `max |u(cτ) − c u(τ)| / max |c u(τ)|` for both models.
pub fn traction_linearity(n: usize, c: f64) -> Result<f64> {
    let p = ModelParams::defaults();
    let q = p.with_tractions(c * p.tau0, c * p.tau_max);
    let cfg = SolverConfig::direct();
    let g = Grid::foundation(&p, n, Psi0Rule::Contact)?;
    let (u1, _) = solve(&p, &g, &cfg)?;
    let (uc, _) = solve(&q, &g, &cfg)?;
    let tg = TwoBodyGrids::new(&p, n)?;
    let (w1, _) = solve_two_body(&p, &tg, &cfg)?;
    let (wc, _) = solve_two_body(&q, &tg, &cfg)?;
    let rel = |a: &Field2D, b: &Field2D| {
        let mut d = b.scaled(c);
        d.axpy(-1.0, a);
        d.max_abs() / b.scaled(c).max_abs()
    };
    Ok(rel(&uc, &u1).max(rel(&wc.foundation, &w1.foundation)).max(rel(&wc.layer, &w1.layer)))
}

pub fn check_linearity() -> Check {
    const TOL: f64 = 1e-10;
    Check::from_result(
        "traction linearity",
        traction_linearity(33, 2.5).map(|r| (r <= TOL, format!("relative deviation {r:.2e} (tol {TOL:.0e})"))),
    )
}

/// End values of the trace for the figure preset:
/// `(u²(−π/2), u²(π/2), u³(−π/2), u³(π/2))`.
pub fn figure_shell_trace(n: usize) -> Result<[f64; 4]> {
    let p = ModelParams::figure();
    let g = Grid::foundation(&p, n, Psi0Rule::Contact)?;
    let (u, _) = solve(&p, &g, &SolverConfig::direct())?;
    let t = g.m - 1;
    Ok([u.u2(0, t), u.u2(n - 1, t), u.u3(0, t), u.u3(n - 1, t)])
}

/// Same as [`figure_shell_trace`] for the interface of the two-body model.
pub fn figure_two_body_trace(n: usize) -> Result<[f64; 4]> {
    let p = ModelParams::figure();
    let g = TwoBodyGrids::new(&p, n)?;
    let (w, _) = solve_two_body(&p, &g, &SolverConfig::direct())?;
    let t = g.foundation.m - 1;
    let f = &w.foundation;
    Ok([f.u2(0, t), f.u2(n - 1, t), f.u3(0, t), f.u3(n - 1, t)])
}

fn within(v: f64, target: f64, rel: f64) -> bool {
    ((v - target) / target).abs() <= rel
}

/// Compares a trace against reference end values `(±u2, u3)` at 5%.
pub fn trace_matches(t: [f64; 4], u2: f64, u3: f64) -> bool {
    within(t[1], u2, 0.05) && within(-t[0], u2, 0.05) && within(t[2], u3, 0.05) && within(t[3], u3, 0.05)
}

fn check_figure(name: &'static str, r: Result<[f64; 4]>, u2: f64, u3: f64) -> Check {
    Check::from_result(
        name,
        r.map(|t| {
            (
                trace_matches(t, u2, u3),
                format!(
                    "u2 = {:.4e}/{:.4e}, u3 = {:.4e}/{:.4e} (reference ±{u2:.2e}, {u3:.2e})",
                    t[0], t[1], t[2], t[3]
                ),
            )
        }),
    )
}

/// Runs the suite; `Full` adds the full-resolution figure reproductions.
pub fn run_suite(level: Level) -> Vec<Check> {
    let mut out = vec![
        check_christoffel(|s, y, z| s.christoffel(y, z)),
        check_elliptic(ellip_e),
        check_mms(false),
        check_mms(true),
        check_closed_form_ode(),
        check_energy_minimum(),
        check_zero_traction(),
        check_linearity(),
    ];
    if level == Level::Full {
        out.push(check_figure("bonded shell figure trace", figure_shell_trace(250), 2.75e-4, -2.26e-4));
        out.push(check_figure("two-body figure trace", figure_two_body_trace(250), 2.78e-4, -3.24e-4));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(c: &Check) {
        eprintln!("{}: {} ({})", c.name, c.passed, c.detail);
    }

    #[test]
    fn carlson_complete_integral() {
        // E(1/2) complete
        let e = ellip_e_carlson(FRAC_PI_2, 0.5);
        assert!((e - 1.350_643_881_047_675_5).abs() < 1e-13);
    }

    #[test]
    fn oracle_suite_quick_items() {
        for c in [
            check_christoffel(|s, y, z| s.christoffel(y, z)),
            check_elliptic(ellip_e),
            check_mms(false),
            check_mms(true),
            check_closed_form_ode(),
            check_zero_traction(),
            check_linearity(),
            check_energy_minimum(),
        ] {
            show(&c);
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn broken_christoffel_is_caught() {
        let c = check_christoffel(|s, y, z| {
            let mut g = s.christoffel(y, z)?;
            g.g2_23 *= 1.001;
            Ok(g)
        });
        assert!(!c.passed);
    }
}
