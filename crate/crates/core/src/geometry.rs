//! Differential geometry of the annular semi-prism.
//!
//! The foundation occupies `x² ∈ [−π/2, π/2]`, `x³ ∈ [−L, 0]` under the map
//!
//! ```text
//! X(x¹, x², x³) = (x¹, a sin x², b cos x²) + x³/φ(x²) · (0, b sin x², a cos x²)
//! ```
//!
//! whose only non-trivial metric component is `g₂₂ = ψ̄₂²` with
//! `ψ̄₂ = φ + x³ ab φ⁻²` (`g₁₁ = g₃₃ = 1`, off-diagonals zero). The contact
//! surface is `x³ = 0`; the shell sits on the outward side.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Elliptic cross-section with horizontal radius `a` and vertical radius `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceFamily {
    a: f64,
    b: f64,
}

/// `ψ̄₂` and the partial derivatives the discretisation needs.
///
/// `ψ̄₂` is affine in `x³`, so every second derivative in `x³` vanishes.
#[derive(Debug, Clone, Copy)]
pub struct ScaleFactor {
    pub psi: f64,
    pub d2: f64,
    pub d22: f64,
    pub d3: f64,
    pub d23: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvatures {
    /// Mean curvature `H = −½ F_[II]α^α`.
    pub mean: f64,
    /// Gaussian curvature; zero for this ruled family.
    pub gaussian: f64,
    /// Mixed second fundamental form component `F_[II]2²`.
    pub f_ii_mixed: f64,
}

/// Nonzero Christoffel symbols of the second kind of the 3D metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelSet {
    pub g2_22: f64,
    pub g2_23: f64,
    pub g3_22: f64,
}

impl ChristoffelSet {
    /// `Γ^k_ij` with 1-based indices; symmetric in `i, j`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (k, i, j) {
            (2, 2, 2) => self.g2_22,
            (2, 2, 3) => self.g2_23,
            (3, 2, 2) => self.g3_22,
            _ => 0.0,
        }
    }
}

impl SurfaceFamily {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "radii must be positive and finite, got a = {a}, b = {b}"
            )));
        }
        Ok(SurfaceFamily { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Squared elliptic modulus `e² = 1 − (b/a)²`; negative when `b > a`.
    pub fn e2(&self) -> f64 {
        1.0 - (self.b / self.a).powi(2)
    }

    /// `φ(x²) = (b² sin²x² + a² cos²x²)^½`, the speed of the cross-section.
    pub fn varphi(&self, x2: f64) -> f64 {
        let (s, c) = x2.sin_cos();
        (self.b * self.b * s * s + self.a * self.a * c * c).sqrt()
    }

    /// `(φ, φ′, φ″)`.
    pub fn varphi_derivs(&self, x2: f64) -> (f64, f64, f64) {
        let phi = self.varphi(x2);
        let k = self.b * self.b - self.a * self.a;
        let d1 = 0.5 * k * (2.0 * x2).sin() / phi;
        let d2 = (k * (2.0 * x2).cos() - d1 * d1) / phi;
        (phi, d1, d2)
    }

    /// `ψ̄₂(x², x³)`, rejecting points where the chart degenerates.
    pub fn psi_bar2(&self, x2: f64, x3: f64) -> Result<f64> {
        let psi = self.scale_factor(x2, x3).psi;
        if psi > 0.0 {
            Ok(psi)
        } else {
            Err(Error::DegenerateMetric { x2, x3, value: psi })
        }
    }

    /// Unchecked `ψ̄₂` with its derivatives.
    pub fn scale_factor(&self, x2: f64, x3: f64) -> ScaleFactor {
        let ab = self.a * self.b;
        let (phi, p1, p2) = self.varphi_derivs(x2);
        // c(x²) = ab φ⁻² is ∂₃ψ̄₂
        let c = ab / (phi * phi);
        let c1 = -2.0 * ab * p1 / phi.powi(3);
        let c2 = -2.0 * ab * (p2 / phi.powi(3) - 3.0 * p1 * p1 / phi.powi(4));
        ScaleFactor {
            psi: phi + x3 * c,
            d2: p1 + x3 * c1,
            d22: p2 + x3 * c2,
            d3: c,
            d23: c1,
        }
    }

    /// Mixed second fundamental form `F_[II]2² = −ab φ⁻³` and its `x²` derivative.
    pub fn f_ii_mixed(&self, x2: f64) -> (f64, f64) {
        let ab = self.a * self.b;
        let (phi, p1, _) = self.varphi_derivs(x2);
        (-ab / phi.powi(3), 3.0 * ab * p1 / phi.powi(4))
    }

    pub fn curvatures(&self, x2: f64) -> Curvatures {
        let (f, _) = self.f_ii_mixed(x2);
        // F_[II]1¹ = 0: the x¹ lines are straight
        Curvatures {
            mean: -0.5 * f,
            gaussian: 0.0,
            f_ii_mixed: f,
        }
    }

    pub fn christoffel(&self, x2: f64, x3: f64) -> Result<ChristoffelSet> {
        let s = self.scale_factor(x2, x3);
        if s.psi <= 0.0 {
            return Err(Error::DegenerateMetric {
                x2,
                x3,
                value: s.psi,
            });
        }
        Ok(ChristoffelSet {
            g2_22: s.d2 / s.psi,
            g2_23: s.d3 / s.psi,
            g3_22: -s.psi * s.d3,
        })
    }

    /// Surface Christoffel symbol `Γ²₂₂ = φ′/φ` of the contact surface.
    pub fn surface_christoffel(&self, x2: f64) -> f64 {
        let (phi, p1, _) = self.varphi_derivs(x2);
        p1 / phi
    }

    /// Cartesian position of the chart point `(x¹, x², x³)`.
    pub fn embedding(&self, x1: f64, x2: f64, x3: f64) -> [f64; 3] {
        let (s, c) = x2.sin_cos();
        let phi = self.varphi(x2);
        [
            x1,
            self.a * s + x3 * self.b * s / phi,
            self.b * c + x3 * self.a * c / phi,
        ]
    }
}

/// Outcome of the thin-shell admissibility check `0 ≤ h²K < hH ≪ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellAssumptionReport {
    pub max_h_mean: f64,
    pub max_h2_gaussian: f64,
    /// `max hH` exceeded [`SMALLNESS_WARN`].
    pub warning: bool,
}

/// `hH` above this is flagged.
pub const SMALLNESS_WARN: f64 = 0.1;
/// `hH` above this is rejected.
pub const SMALLNESS_FAIL: f64 = 0.5;

pub fn validate_shell_assumption(
    surface: &SurfaceFamily,
    h: f64,
) -> Result<ShellAssumptionReport> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "shell thickness must be positive, got {h}"
        )));
    }
    const SAMPLES: usize = 2001;
    let mut max_hh = f64::NEG_INFINITY;
    let mut max_h2k = f64::NEG_INFINITY;
    for k in 0..SAMPLES {
        let x2 = -FRAC_PI_2 + std::f64::consts::PI * k as f64 / (SAMPLES - 1) as f64;
        let c = surface.curvatures(x2);
        let hh = h * c.mean;
        let h2k = h * h * c.gaussian;
        if c.gaussian < 0.0 || hh <= h2k {
            return Err(Error::ShellAssumption(format!(
                "hyperbolic or non-convex contact region at x2 = {x2}: hH = {hh}, h²K = {h2k}"
            )));
        }
        max_hh = max_hh.max(hh);
        max_h2k = max_h2k.max(h2k);
    }
    if max_hh > SMALLNESS_FAIL {
        return Err(Error::ShellAssumption(format!(
            "shell too thick for the curvature: max hH = {max_hh}"
        )));
    }
    Ok(ShellAssumptionReport {
        max_h_mean: max_hh,
        max_h2_gaussian: max_h2k,
        warning: max_hh > SMALLNESS_WARN,
    })
}
