//! Isotropic materials and the problem description.

use crate::error::{Error, Result};
use crate::geometry::SurfaceFamily;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicMaterial {
    young: f64,
    poisson: f64,
}

impl IsotropicMaterial {
    pub fn new(young: f64, poisson: f64) -> Result<Self> {
        if !(young > 0.0 && young.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Young's modulus must be positive, got {young}"
            )));
        }
        if !(poisson > -1.0 && poisson < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "Poisson's ratio must lie in (-1, 1/2), got {poisson}"
            )));
        }
        Ok(IsotropicMaterial { young, poisson })
    }

    pub fn young(&self) -> f64 {
        self.young
    }

    pub fn poisson(&self) -> f64 {
        self.poisson
    }

    /// Lamé parameters `(λ, μ)`.
    pub fn lame(&self) -> (f64, f64) {
        let (e, nu) = (self.young, self.poisson);
        (nu * e / ((1.0 + nu) * (1.0 - 2.0 * nu)), 0.5 * e / (1.0 + nu))
    }

    /// Membrane modulus `Λ = E / ((1 + ν)(1 − ν))`.
    pub fn lambda_plane(&self) -> f64 {
        self.young / ((1.0 + self.poisson) * (1.0 - self.poisson))
    }
}

pub const BASE_A: f64 = 2.0;
pub const BASE_DEPTH: f64 = 1.0;
pub const BASE_YOUNG: f64 = 1.0e3;
pub const BASE_POISSON: f64 = 0.25;
pub const BASE_TRACTION: f64 = 1.0;

/// Dimensionless ratios of shell to foundation quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deltas {
    /// `E / Ē`
    pub young: f64,
    /// `ν / ν̄`
    pub poisson: f64,
    /// `h / L`
    pub thickness: f64,
    /// `b / a`
    pub radius: f64,
}

impl Deltas {
    /// Sweep defaults: `δb = 1, δh = 1/8, δE = 8, δν = 1`.
    pub const DEFAULTS: Deltas = Deltas {
        young: 8.0,
        poisson: 1.0,
        thickness: 0.125,
        radius: 1.0,
    };

    /// Configuration of the displacement-trace figures: `b = 2, h = 1/4, E = 6000, ν = 1/4`.
    pub const FIGURE: Deltas = Deltas {
        young: 6.0,
        poisson: 1.0,
        thickness: 0.25,
        radius: 1.0,
    };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub surface: SurfaceFamily,
    /// Foundation depth `L`.
    pub depth: f64,
    /// Shell thickness `h`.
    pub thickness: f64,
    pub foundation: IsotropicMaterial,
    pub shell: IsotropicMaterial,
    /// Traction at the `x² = −π/2` end.
    pub tau0: f64,
    /// Traction at the `x² = +π/2` end.
    pub tau_max: f64,
}

impl ModelParams {
    /// Applies the ratios to the fixed baseline (`a = 2, L = 1, Ē = 10³, ν̄ = 1/4, τ = 1`).
    pub fn from_deltas(d: Deltas) -> Result<Self> {
        for (name, v) in [
            ("dE", d.young),
            ("dnu", d.poisson),
            ("dh", d.thickness),
            ("db", d.radius),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v}")));
            }
        }
        let thickness = d.thickness * BASE_DEPTH;
        if !(thickness > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "shell thickness must be positive, got dh = {}",
                d.thickness
            )));
        }
        Ok(ModelParams {
            surface: SurfaceFamily::new(BASE_A, d.radius * BASE_A)?,
            depth: BASE_DEPTH,
            thickness,
            foundation: IsotropicMaterial::new(BASE_YOUNG, BASE_POISSON)?,
            shell: IsotropicMaterial::new(d.young * BASE_YOUNG, d.poisson * BASE_POISSON)?,
            tau0: BASE_TRACTION,
            tau_max: BASE_TRACTION,
        })
    }

    pub fn defaults() -> Self {
        Self::from_deltas(Deltas::DEFAULTS).expect("baseline parameters are valid")
    }

    pub fn figure() -> Self {
        Self::from_deltas(Deltas::FIGURE).expect("baseline parameters are valid")
    }

    /// Ratios relative to the foundation and depth.
    pub fn deltas(&self) -> Deltas {
        Deltas {
            young: self.shell.young() / self.foundation.young(),
            poisson: self.shell.poisson() / self.foundation.poisson(),
            thickness: self.thickness / self.depth,
            radius: self.surface.b() / self.surface.a(),
        }
    }

    pub fn with_tractions(mut self, tau0: f64, tau_max: f64) -> Self {
        self.tau0 = tau0;
        self.tau_max = tau_max;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lame_examples() {
        let m = IsotropicMaterial::new(1000.0, 0.25).unwrap();
        let (l, mu) = m.lame();
        assert!((l - 400.0).abs() < 1e-12 && (mu - 400.0).abs() < 1e-12);
        let (l, mu) = IsotropicMaterial::new(6000.0, 0.25).unwrap().lame();
        assert!((l - 2400.0).abs() < 1e-11 && (mu - 2400.0).abs() < 1e-11);
        let (l, mu) = IsotropicMaterial::new(1.0, 0.0).unwrap().lame();
        assert_eq!((l, mu), (0.0, 0.5));
    }

    #[test]
    fn lambda_plane_examples() {
        let m = IsotropicMaterial::new(6000.0, 0.25).unwrap();
        assert!((m.lambda_plane() - 6400.0).abs() < 1e-10);
        assert_eq!(IsotropicMaterial::new(1.0, 0.0).unwrap().lambda_plane(), 1.0);
    }

    #[test]
    fn rejects_incompressible_and_bad_modulus() {
        assert!(IsotropicMaterial::new(1.0, 0.5).is_err());
        assert!(IsotropicMaterial::new(1.0, -1.0).is_err());
        assert!(IsotropicMaterial::new(0.0, 0.2).is_err());
    }

    #[test]
    fn deltas_presets() {
        let p = ModelParams::defaults();
        assert_eq!(p.shell.young(), 8000.0);
        assert_eq!(p.shell.poisson(), 0.25);
        assert_eq!(p.thickness, 0.125);
        assert_eq!(p.surface.b(), 2.0);
        let f = ModelParams::figure();
        assert_eq!(f.shell.young(), 6000.0);
        assert_eq!(f.thickness, 0.25);
        let id = ModelParams::from_deltas(Deltas {
            young: 1.0,
            poisson: 1.0,
            thickness: 1.0,
            radius: 1.0,
        })
        .unwrap();
        assert_eq!(id.shell, id.foundation);
        assert_eq!(id.thickness, id.depth);
        assert_eq!(id.surface.b(), id.surface.a());
        assert_eq!(p.deltas(), Deltas::DEFAULTS);
    }

    #[test]
    fn invalid_ratios() {
        let mut d = Deltas::DEFAULTS;
        d.poisson = 2.0; // ν = 1/2
        assert!(ModelParams::from_deltas(d).is_err());
        let mut d = Deltas::DEFAULTS;
        d.thickness = 0.0;
        assert!(ModelParams::from_deltas(d).is_err());
        let mut d = Deltas::DEFAULTS;
        d.radius = -1.0;
        assert!(ModelParams::from_deltas(d).is_err());
    }

    proptest! {
        #[test]
        fn lambda_plane_identity(e in 1e-3f64..1e6, nu in -0.99f64..0.49) {
            let m = IsotropicMaterial::new(e, nu).unwrap();
            let (l, mu) = m.lame();
            let via_lame = 4.0 * mu * (l + mu) / (l + 2.0 * mu);
            prop_assert!((via_lame - m.lambda_plane()).abs() <= 1e-12 * m.lambda_plane());
        }

        #[test]
        fn homogeneous_in_young(e in 1e-2f64..1e5, nu in -0.9f64..0.45, c in 0.1f64..10.0) {
            let m = IsotropicMaterial::new(e, nu).unwrap();
            let s = IsotropicMaterial::new(c * e, nu).unwrap();
            let (l, mu) = m.lame();
            let (ls, mus) = s.lame();
            prop_assert!((ls - c * l).abs() <= 1e-12 * (c * l).abs().max(1.0));
            prop_assert!((mus - c * mu).abs() <= 1e-12 * c * mu);
            prop_assert!((s.lambda_plane() - c * m.lambda_plane()).abs() <= 1e-12 * c * m.lambda_plane());
        }
    }
}
