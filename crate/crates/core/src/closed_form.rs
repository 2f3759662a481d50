//! Membrane-on-shear-foundation closed form and its scaling diagnostics.
//!
//! Dropping bending and the normal displacement, the bonded shell reduces to
//! `W_ss = α² W` in arc length `s`, with `W = φ w²` the physical tangential
//! displacement, `α² = μ̄ / (h L Λ)` and end conditions `Λ W_s = τ`.

use std::f64::consts::FRAC_PI_2;

use crate::elliptic::ellip_e;
use crate::error::{Error, Result};
use crate::material::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticScales {
    pub alpha: f64,
    /// `2aα E(e)`; the shell approximation is expected to be best near 1.
    pub phi_scale: f64,
    pub e2: f64,
}

pub fn scales(p: &ModelParams) -> Result<AsymptoticScales> {
    let (_, mu_f) = p.foundation.lame();
    let lambda_s = p.shell.lambda_plane();
    let alpha = (mu_f / (p.thickness * p.depth * lambda_s)).sqrt();
    let e2 = p.surface.e2();
    let phi_scale = 2.0 * p.surface.a() * alpha * ellip_e(FRAC_PI_2, e2)?;
    Ok(AsymptoticScales {
        alpha,
        phi_scale,
        e2,
    })
}

/// Ratios of the asymptotic regime in which the closed form is meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeDiagnostics {
    /// `Λh L / (μ̄ ℓ²)` with `ℓ` the contact arc length; order one in the regime.
    pub membrane_to_shear: f64,
    /// `Λh / ((λ̄ + 2μ̄) L)`; large in the regime.
    pub membrane_to_foundation: f64,
    /// `max h Λ (F_[II]2²)² L / (λ̄ + 2μ̄)`; order one in the regime.
    pub curvature_to_foundation: f64,
}

pub fn regime(p: &ModelParams) -> Result<RegimeDiagnostics> {
    let (lam_f, mu_f) = p.foundation.lame();
    let stiff = p.shell.lambda_plane() * p.thickness;
    let arc = 2.0 * p.surface.a() * ellip_e(FRAC_PI_2, p.surface.e2())?;
    let max_f2 = (0..=200)
        .map(|k| {
            let y = -FRAC_PI_2 + std::f64::consts::PI * k as f64 / 200.0;
            p.surface.f_ii_mixed(y).0.powi(2)
        })
        .fold(0.0, f64::max);
    let bulk = lam_f + 2.0 * mu_f;
    Ok(RegimeDiagnostics {
        membrane_to_shear: stiff * p.depth / (mu_f * arc * arc),
        membrane_to_foundation: stiff / (bulk * p.depth),
        curvature_to_foundation: stiff * max_f2 * p.depth / bulk,
    })
}

/// Coefficients of `W(s) = c₁ cosh αs + c₂ sinh αs` and `a`, `α`.
struct Profile {
    a: f64,
    e2: f64,
    alpha: f64,
    c1: f64,
    c2: f64,
}

impl Profile {
    fn new(p: &ModelParams) -> Result<Profile> {
        let sc = scales(p)?;
        let lambda_s = p.shell.lambda_plane();
        let half = p.surface.a() * ellip_e(FRAC_PI_2, sc.e2)?;
        let x = sc.alpha * half;
        let c2 = (p.tau_max + p.tau0) / (2.0 * lambda_s * sc.alpha * x.cosh());
        let c1 = if p.tau_max == p.tau0 {
            0.0
        } else {
            (p.tau_max - p.tau0) / (2.0 * lambda_s * sc.alpha * x.sinh())
        };
        Ok(Profile {
            a: p.surface.a(),
            e2: sc.e2,
            alpha: sc.alpha,
            c1,
            c2,
        })
    }

    fn physical(&self, x2: f64) -> Result<f64> {
        let t = self.alpha * self.a * ellip_e(x2, self.e2)?;
        Ok(self.c1 * t.cosh() + self.c2 * t.sinh())
    }
}

fn check_angle(x2: f64) -> Result<()> {
    if !(x2.abs() <= FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!("x2 = {x2} outside [-pi/2, pi/2]")));
    }
    Ok(())
}

/// Contravariant tangential displacement `w²(x²)` of the membrane model.
///
/// With `τ₀ = τ_max = 1` this is
/// `sinh(aα E(x², e)) / (αΛ φ(x²) cosh(aα E(e)))`.
pub fn w2_closed(p: &ModelParams, x2: f64) -> Result<f64> {
    check_angle(x2)?;
    let prof = Profile::new(p)?;
    Ok(prof.physical(x2)? / p.surface.varphi(x2))
}

/// `w²` at many angles, sharing the setup.
pub fn w2_profile(p: &ModelParams, x2: &[f64]) -> Result<Vec<f64>> {
    let prof = Profile::new(p)?;
    x2.iter()
        .map(|&y| {
            check_angle(y)?;
            Ok(prof.physical(y)? / p.surface.varphi(y))
        })
        .collect()
}

/// Second-order discrete membrane operator `φ⁻¹ (φ⁻¹ W′)′ − α² W` applied
/// to the closed form at `x2` with spacing `step`.
pub fn ode_residual(p: &ModelParams, x2: f64, step: f64) -> Result<f64> {
    let prof = Profile::new(p)?;
    let s = &p.surface;
    let w = |y: f64| prof.physical(y);
    let (wm, w0, wp) = (w(x2 - step)?, w(x2)?, w(x2 + step)?);
    let up = (wp - w0) / s.varphi(x2 + 0.5 * step);
    let down = (w0 - wm) / s.varphi(x2 - 0.5 * step);
    Ok((up - down) / (s.varphi(x2) * step * step) - prof.alpha * prof.alpha * w0)
}

/// Independent finite-volume solve of the membrane problem on `n` nodes of
/// `[−π/2, π/2]`; returns contravariant `w²` at the nodes.
pub fn membrane_fd(p: &ModelParams, n: usize) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::GridTooSmall(n));
    }
    let sc = scales(p)?;
    let lambda_s = p.shell.lambda_plane();
    let s = &p.surface;
    let h = std::f64::consts::PI / (n - 1) as f64;
    let y = |i: usize| -FRAC_PI_2 + i as f64 * h;
    let a2 = sc.alpha * sc.alpha;
    // tridiagonal rows (lower, diag, upper, rhs), each multiplied by h
    let mut lo = vec![0.0; n];
    let mut di = vec![0.0; n];
    let mut up = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        let phi = s.varphi(y(i));
        if i > 0 {
            let c = 1.0 / (s.varphi(y(i) - 0.5 * h) * h);
            lo[i] = c;
            di[i] -= c;
        }
        if i + 1 < n {
            let c = 1.0 / (s.varphi(y(i) + 0.5 * h) * h);
            up[i] = c;
            di[i] -= c;
        }
        let width = if i == 0 || i + 1 == n { 0.5 * h } else { h };
        di[i] -= a2 * phi * width;
    }
    rhs[0] = p.tau0 / lambda_s;
    rhs[n - 1] = -p.tau_max / lambda_s;
    // Thomas elimination
    for i in 1..n {
        let m = lo[i] / di[i - 1];
        di[i] -= m * up[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    let mut w = vec![0.0; n];
    w[n - 1] = rhs[n - 1] / di[n - 1];
    for i in (0..n - 1).rev() {
        w[i] = (rhs[i] - up[i] * w[i + 1]) / di[i];
    }
    Ok(w
        .iter()
        .enumerate()
        .map(|(i, v)| v / s.varphi(y(i)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::Deltas;

    #[test]
    fn circular_scale() {
        let p = ModelParams::defaults();
        let sc = scales(&p).unwrap();
        assert_eq!(sc.e2, 0.0);
        assert!((sc.phi_scale - 2.0 * std::f64::consts::PI * sc.alpha).abs() < 1e-12);
        // μ̄ = 400, Λ = 8000 / (1.25 · 0.75)
        let expected = (400.0_f64 / (0.125 * 8000.0 / 0.9375)).sqrt();
        assert!((sc.alpha - expected).abs() < 1e-12);
    }

    #[test]
    fn odd_and_zero_at_centre() {
        let p = ModelParams::from_deltas(Deltas { radius: 0.9, ..Deltas::DEFAULTS }).unwrap();
        assert_eq!(w2_closed(&p, 0.0).unwrap(), 0.0);
        for y in [0.1, 0.7, 1.3, FRAC_PI_2] {
            assert_eq!(w2_closed(&p, -y).unwrap(), -w2_closed(&p, y).unwrap());
        }
        assert!(w2_closed(&p, 2.0).is_err());
    }

    #[test]
    fn matches_stated_formula_for_unit_tractions() {
        let p = ModelParams::figure();
        let sc = scales(&p).unwrap();
        let lam = p.shell.lambda_plane();
        let a = p.surface.a();
        let y = 0.9;
        let e = ellip_e(y, sc.e2).unwrap();
        let ec = ellip_e(FRAC_PI_2, sc.e2).unwrap();
        let want = (a * sc.alpha * e).sinh() / (sc.alpha * lam * p.surface.varphi(y) * (a * sc.alpha * ec).cosh());
        assert!((w2_closed(&p, y).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn linear_in_tractions() {
        let p = ModelParams::defaults();
        let q = p.with_tractions(3.0, 3.0);
        let r = p.with_tractions(0.5, -1.5);
        for y in [-1.2, 0.4, FRAC_PI_2] {
            let base = w2_closed(&p, y).unwrap();
            assert!((w2_closed(&q, y).unwrap() - 3.0 * base).abs() < 1e-15);
            // superposition of symmetric and antisymmetric loadings
            let sym = w2_closed(&p.with_tractions(-0.5, -0.5), y).unwrap();
            let anti = w2_closed(&p.with_tractions(1.0, -1.0), y).unwrap();
            assert!((w2_closed(&r, y).unwrap() - (sym + anti)).abs() < 1e-14);
        }
    }

    #[test]
    fn finite_volume_agrees() {
        let p = ModelParams::from_deltas(Deltas { radius: 1.1, ..Deltas::DEFAULTS }).unwrap();
        let fine = membrane_fd(&p, 4001).unwrap();
        let exact = w2_closed(&p, FRAC_PI_2).unwrap();
        assert!(((fine[4000] - exact) / exact).abs() < 1e-6);
    }
}
