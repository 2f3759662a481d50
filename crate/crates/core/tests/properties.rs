use proptest::prelude::*;
use shellfound::analysis::{field_relative_error, Component};
use shellfound::closed_form::w2_closed;
use shellfound::geometry::SurfaceFamily;
use shellfound::{Deltas, Field2D, Grid, ModelParams, Psi0Rule};

fn params(young: f64, thickness: f64, radius: f64) -> ModelParams {
    ModelParams::from_deltas(Deltas {
        young,
        poisson: 1.0,
        thickness,
        radius,
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_is_odd(y in 0.0..std::f64::consts::FRAC_PI_2, de in 2.0..12.0, db in 0.8..1.2) {
        let p = params(de, 0.125, db);
        let a = w2_closed(&p, y).unwrap();
        let b = w2_closed(&p, -y).unwrap();
        prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1e-300));
    }

    #[test]
    fn closed_form_scales_with_traction(y in -1.5..1.5f64, c in 0.1..10.0f64) {
        let p = params(8.0, 0.125, 1.0);
        let q = p.with_tractions(c, c);
        let a = w2_closed(&p, y).unwrap();
        let b = w2_closed(&q, y).unwrap();
        prop_assert!((b - c * a).abs() <= 1e-12 * (c * a).abs().max(1e-300));
    }

    #[test]
    fn relative_error_is_scale_invariant(seed in any::<u64>(), c in 1e-3..1e3f64) {
        let p = ModelParams::defaults();
        let g = Grid::foundation(&p, 17, Psi0Rule::Contact).unwrap();
        let mut s = seed;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = Field2D::from_fn(&g, |_, _| (next(), next()));
        let b = Field2D::from_fn(&g, |_, _| (1.0 + next(), 1.0 + next()));
        for comp in [Component::Azimuthal, Component::Radial] {
            let e = field_relative_error(&a, &b, comp).unwrap().unwrap();
            let ec = field_relative_error(&a.scaled(c), &b.scaled(c), comp).unwrap().unwrap();
            prop_assert!((e - ec).abs() <= 1e-12 * e);
        }
    }

    #[test]
    fn metric_scale_is_affine_in_depth(b in 1.6..2.4f64, y in -1.5..1.5f64, z in -1.0..0.5f64) {
        let s = SurfaceFamily::new(2.0, b).unwrap();
        let p0 = s.psi_bar2(y, 0.0).unwrap();
        let p1 = s.psi_bar2(y, 1.0).unwrap();
        let pz = s.psi_bar2(y, z).unwrap();
        prop_assert!((pz - (p0 + z * (p1 - p0))).abs() <= 1e-12 * p0);
    }

    #[test]
    fn grid_respects_spacing_constraint(n in 9usize..400, dh in 0.0625..0.5f64, db in 0.8..1.2f64) {
        let p = params(8.0, dh, db);
        let g = Grid::foundation(&p, n, Psi0Rule::Contact).unwrap();
        prop_assert!((g.dx2 - std::f64::consts::PI / (n - 1) as f64).abs() < 1e-15);
        prop_assert!(((g.m - 1) as f64 * g.dx3 - p.depth).abs() < 1e-12);
        if g.m > 3 {
            prop_assert!(g.satisfies_constraint());
        }
    }
}
