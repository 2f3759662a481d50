//! Incomplete elliptic integral of the second kind by adaptive
//! Gauss–Kronrod quadrature.
//!
//! The parameter is the squared modulus `e2 = e²`, which may be negative
//! (prolate cross-sections, b > a) or exceed one as long as the integrand
//! stays real over the interval.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const ABS_TOL: f64 = 1e-12;
const MAX_DEPTH: u32 = 48;

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (k, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    adapt(&f, a, b, abs_tol, MAX_DEPTH)
}

/// `E(x2 | e2) = ∫₀^{x2} (1 − e2 sin²θ)^½ dθ`, extended oddly to negative `x2`.
pub fn ellip_e(x2: f64, e2: f64) -> Result<f64> {
    if !x2.is_finite() || !e2.is_finite() {
        return Err(Error::InvalidParameter(format!("ellip_e({x2}, {e2})")));
    }
    let span = x2.abs();
    if e2 > 1.0 {
        // integrand vanishes where sin²θ = 1/e2
        let zero = (1.0 / e2.sqrt()).asin();
        if span > zero + 1e-15 {
            return Err(Error::EllipticDomain { x2, e2 });
        }
    }
    let integrand = |t: f64| {
        let s = t.sin();
        (1.0 - e2 * s * s).max(0.0).sqrt()
    };
    Ok(integrate(integrand, 0.0, span, ABS_TOL).copysign(x2))
}

/// Complete integral `E(e2) = E(π/2 | e2)`.
pub fn ellip_e_complete(e2: f64) -> Result<f64> {
    ellip_e(FRAC_PI_2, e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trivial_values() {
        assert!((ellip_e(FRAC_PI_2, 0.0).unwrap() - FRAC_PI_2).abs() < 1e-14);
        assert_eq!(ellip_e(0.0, 0.7).unwrap(), 0.0);
        assert!((ellip_e(FRAC_PI_2, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn odd_extension() {
        for &(x, m) in &[(0.3, 0.5), (1.2, -0.8), (1.5, 0.99)] {
            let pos = ellip_e(x, m).unwrap();
            let neg = ellip_e(-x, m).unwrap();
            assert_eq!(pos, -neg);
        }
    }

    #[test]
    fn negative_parameter_exceeds_angle() {
        // 1 − e2 sin² > 1 when e2 < 0, so E > x2
        let v = ellip_e(1.0, -3.0).unwrap();
        assert!(v > 1.0);
    }

    #[test]
    fn domain_error_past_zero() {
        assert!(matches!(
            ellip_e(FRAC_PI_2, 2.0),
            Err(Error::EllipticDomain { .. })
        ));
        // still fine before the zero at asin(1/√2) = π/4
        assert!(ellip_e(PI / 4.0 - 1e-3, 2.0).is_ok());
    }

    #[test]
    fn polynomial_quadrature_exact() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-14);
        assert!((v - 8.0).abs() < 1e-13);
    }
}
