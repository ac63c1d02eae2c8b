//! F^alpha-differentiation and F^alpha-integration of scalar functions
//! against a staircase.
//!
//! Difference quotients step in staircase value rather than in x, because
//! the defining limits run through points where the staircase varies;
//! uniform x-steps would stall on plateaus. Likewise the integral cells are
//! uniform in staircase value, which weights cells by their S-increments and
//! handles plateaus for free.
//!
//! Where the staircase is exactly flat around the evaluation point (off the
//! set, or beyond the support) the derivative has no defining limit. That
//! case is reported as [`Error::DerivativeUndefined`] instead of a silent
//! zero; callers that want the literal zero can catch it and substitute.

use crate::measure::Staircase;
use crate::{Error, Result};

/// Discretization knobs for the F^alpha operators: the staircase-increment
/// target for difference quotients and the cell count for integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FalphaConfig {
    step: f64,
    integration_cells: u32,
}

impl FalphaConfig {
    pub fn new(step: f64, integration_cells: u32) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "step must be positive and finite, got {step}"
            )));
        }
        if integration_cells == 0 {
            return Err(Error::InvalidParameter(
                "integration_cells must be at least 1".into(),
            ));
        }
        Ok(Self {
            step,
            integration_cells,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn integration_cells(&self) -> u32 {
        self.integration_cells
    }

    pub fn with_step(&self, step: f64) -> Result<Self> {
        Self::new(step, self.integration_cells)
    }
}

impl Default for FalphaConfig {
    fn default() -> Self {
        Self {
            step: 1e-3,
            integration_cells: 4096,
        }
    }
}

/// F^alpha-derivative of `f` at `x`: the symmetric quotient
/// `(f(y+) - f(y-)) / (S(y+) - S(y-))` with `y±` chosen so that
/// `|S(y±) - S(x)|` is about `cfg.step()`.
pub fn falpha_derivative<F>(f: F, s: &Staircase, x: f64, cfg: &FalphaConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if s.plateau_at(x) {
        return Err(Error::DerivativeUndefined { x, increment: 0.0 });
    }
    let s0 = s.eval(x);
    let h = cfg.step();
    let y_plus = s.invert(s0 + h);
    let y_minus = s.invert(s0 - h);
    let ds = s.eval(y_plus) - s.eval(y_minus);
    if !ds.is_finite() || ds.abs() < 1e-12 * h {
        return Err(Error::DerivativeUndefined { x, increment: ds });
    }
    Ok((f(y_plus) - f(y_minus)) / ds)
}

/// F^alpha-integral of `f` over `[a, b]`: the Riemann-Stieltjes sum
/// `sum f(z_i*) (S(z_{i+1}) - S(z_i))` over cells uniform in staircase
/// value, with midpoint (in S) evaluation. Converges to the common value of
/// the upper and lower sums for continuous bounded `f`.
pub fn falpha_integral<F>(f: F, s: &Staircase, a: f64, b: f64, cfg: &FalphaConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a <= b) {
        return Err(Error::InvalidParameter(format!(
            "integration requires a <= b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let sa = s.eval(a);
    let sb = s.eval(b);
    if sa == sb {
        return Ok(0.0);
    }
    let n = cfg.integration_cells();
    let du = (sb - sa) / n as f64;
    // Kahan summation keeps the telescoping identity for constant f tight
    let mut sum = 0.0;
    let mut comp = 0.0;
    for i in 0..n {
        let u_lo = if i == 0 { sa } else { sa + i as f64 * du };
        let u_hi = if i + 1 == n {
            sb
        } else {
            sa + (i + 1) as f64 * du
        };
        let z = s.invert(0.5 * (u_lo + u_hi));
        let v = f(z);
        if !v.is_finite() {
            return Err(Error::Computation(format!(
                "integrand is not finite at x = {z}"
            )));
        }
        let term = v * (u_hi - u_lo) - comp;
        let t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractalset::{build_cantor, CantorSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn power(alpha: f64) -> Staircase {
        Staircase::power_law(alpha).unwrap()
    }

    #[test]
    fn derivative_of_the_staircase_itself_is_one() {
        let cfg = FalphaConfig::default();
        for s in [
            power(1.0),
            power(0.5),
            Staircase::cantor_analytic(CantorSpec::triadic(), 1.0).unwrap(),
        ] {
            let f = |x: f64| s.eval(x);
            // x = 0 sits on the set for every backend
            let d = falpha_derivative(f, &s, 0.0, &cfg).unwrap();
            assert_relative_eq!(d, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn derivative_reduces_to_central_difference_at_alpha_one() {
        let s = power(1.0);
        let cfg = FalphaConfig::default().with_step(1e-4).unwrap();
        let d = falpha_derivative(|x| x * x, &s, 3.0, &cfg).unwrap();
        assert_abs_diff_eq!(d, 6.0, epsilon = 1e-4);
    }

    #[test]
    fn derivative_conjugacy_oracle_at_half_alpha() {
        // f(x) = x = S(x)^2, so the F^alpha-derivative is d(u^2)/du at
        // u = x^alpha: 2 * S(4) = 4
        let s = power(0.5);
        let cfg = FalphaConfig::default();
        let d = falpha_derivative(|x| x, &s, 4.0, &cfg).unwrap();
        assert_abs_diff_eq!(d, 4.0, epsilon = 1e-3);
    }

    #[test]
    fn derivative_undefined_in_gap() {
        let s = Staircase::cantor_analytic(CantorSpec::triadic(), 1.0).unwrap();
        let cfg = FalphaConfig::default();
        let err = falpha_derivative(|x| x, &s, 0.5, &cfg).unwrap_err();
        assert!(matches!(err, Error::DerivativeUndefined { .. }));
    }

    #[test]
    fn derivative_undefined_beyond_numeric_support() {
        let set = build_cantor(&CantorSpec::triadic(), 6).unwrap();
        let s = Staircase::numeric(set, 2.0f64.ln() / 3.0f64.ln()).unwrap();
        let cfg = FalphaConfig::default();
        assert!(matches!(
            falpha_derivative(|x| x, &s, 3.0, &cfg),
            Err(Error::DerivativeUndefined { .. })
        ));
        // and inside a removed gap of the approximant
        assert!(matches!(
            falpha_derivative(|x| x, &s, 0.5, &cfg),
            Err(Error::DerivativeUndefined { .. })
        ));
    }

    #[test]
    fn numeric_staircase_through_both_operators() {
        let set = build_cantor(&CantorSpec::triadic(), 6).unwrap();
        let alpha = 2.0f64.ln() / 3.0f64.ln();
        let s = Staircase::numeric(set, alpha).unwrap();
        let cfg = FalphaConfig::new(1e-3, 64).unwrap();
        // f = S at a set point: the quotient collapses to 1
        let f = |x: f64| s.eval(x);
        let d = falpha_derivative(f, &s, 0.0, &cfg).unwrap();
        assert_relative_eq!(d, 1.0, max_relative = 1e-12);
        // telescoping across the whole support
        let i = falpha_integral(|_| 1.0, &s, 0.0, 1.0, &cfg).unwrap();
        assert_relative_eq!(i, s.eval(1.0), max_relative = 1e-12);
    }

    #[test]
    fn integral_of_one_telescopes() {
        let cfg = FalphaConfig::default();
        for s in [
            power(1.0),
            power(0.37),
            Staircase::cantor_analytic(CantorSpec::triadic(), 1.0).unwrap(),
        ] {
            for (a, b) in [(0.0, 1.0), (0.2, 0.9), (-1.0, 2.0)] {
                let i = falpha_integral(|_| 1.0, &s, a, b, &cfg).unwrap();
                let expect = s.eval(b) - s.eval(a);
                assert_relative_eq!(i, expect, max_relative = 1e-12, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn integral_of_staircase_is_half() {
        let cfg = FalphaConfig::default();
        for alpha in [0.3, 0.5, 0.8, 1.0] {
            let s = power(alpha);
            let i = falpha_integral(|x| s.eval(x), &s, 0.0, 1.0, &cfg).unwrap();
            assert_abs_diff_eq!(i, 0.5, epsilon = 1e-4);
        }
    }

    #[test]
    fn integral_identity_at_alpha_one() {
        let s = power(1.0);
        let cfg = FalphaConfig::default();
        let i = falpha_integral(|x| x, &s, 0.0, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(i, 0.5, epsilon = 1e-6);
    }

    #[test]
    fn integral_rejects_reversed_bounds_and_bad_values() {
        let s = power(1.0);
        let cfg = FalphaConfig::default();
        assert!(falpha_integral(|_| 1.0, &s, 1.0, 0.0, &cfg).is_err());
        assert!(matches!(
            falpha_integral(|x| if x > 0.5 { f64::NAN } else { 1.0 }, &s, 0.0, 1.0, &cfg),
            Err(Error::Computation(_))
        ));
        assert_eq!(falpha_integral(|_| 1.0, &s, 0.5, 0.5, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn integral_over_plateau_is_zero() {
        let s = Staircase::cantor_analytic(CantorSpec::triadic(), 1.0).unwrap();
        let cfg = FalphaConfig::default();
        let i = falpha_integral(|x| x * x + 1.0, &s, 0.4, 0.5, &cfg).unwrap();
        assert_eq!(i, 0.0);
    }

    #[test]
    fn fundamental_pairing_for_polynomials_of_staircase() {
        // f = h(S(x)) with deg h <= 4: integral of the derivative recovers
        // f(b) - f(a)
        let cfg = FalphaConfig::default();
        let polys: [&dyn Fn(f64) -> f64; 3] = [
            &|u| u * u,
            &|u| 1.0 + u - 2.0 * u * u * u,
            &|u| u * u * u * u - u,
        ];
        for alpha in [0.5, 0.8, 1.0] {
            let s = power(alpha);
            for h in polys {
                let f = |x: f64| h(s.eval(x));
                let (a, b) = (0.1, 1.4);
                let deriv = |x: f64| falpha_derivative(f, &s, x, &cfg).unwrap();
                let i = falpha_integral(deriv, &s, a, b, &cfg).unwrap();
                assert_abs_diff_eq!(i, f(b) - f(a), epsilon = 1e-3);
            }
        }
    }

    #[test]
    fn alpha_one_reduction_on_polynomials() {
        let s = power(1.0);
        let cfg = FalphaConfig::default().with_step(1e-4).unwrap();
        let poly = |x: f64| 3.0 + x - 0.5 * x * x + 0.25 * x * x * x - 0.125 * x * x * x * x;
        let dpoly = |x: f64| 1.0 - x + 0.75 * x * x - 0.5 * x * x * x;
        for x in [-1.5, -0.2, 0.7, 1.9] {
            let d = falpha_derivative(poly, &s, x, &cfg).unwrap();
            assert_abs_diff_eq!(d, dpoly(x), epsilon = 1e-6);
        }
        // midpoint quadrature against the exact antiderivative
        let i = falpha_integral(poly, &s, -1.0, 2.0, &cfg).unwrap();
        let anti = |x: f64| {
            3.0 * x + 0.5 * x * x - x * x * x / 6.0 + x * x * x * x / 16.0
                - 0.025 * x * x * x * x * x
        };
        assert_abs_diff_eq!(i, anti(2.0) - anti(-1.0), epsilon = 1e-6);
    }

    #[test]
    fn refinement_in_s_decreases_increments_for_monotone_f() {
        let s = power(0.7);
        let f = |x: f64| (x + 0.3).exp();
        let mut values = Vec::new();
        for cells in [8u32, 16, 32, 64, 128] {
            let cfg = FalphaConfig::new(1e-3, cells).unwrap();
            values.push(falpha_integral(f, &s, 0.0, 1.5, &cfg).unwrap());
        }
        let mut prev_inc = f64::INFINITY;
        for pair in values.windows(2) {
            let inc = (pair[1] - pair[0]).abs();
            assert!(inc < prev_inc, "increment did not shrink: {inc} vs {prev_inc}");
            prev_inc = inc;
        }
    }

    #[test]
    fn config_validation() {
        assert!(FalphaConfig::new(0.0, 10).is_err());
        assert!(FalphaConfig::new(-1.0, 10).is_err());
        assert!(FalphaConfig::new(1e-3, 0).is_err());
        assert!(FalphaConfig::new(1e-3, 1).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // both operators are linear in f; the quadrature nodes do not depend
        // on f, so linearity holds to rounding
        #[test]
        fn linearity(
            alpha in 0.3f64..=1.0,
            c1 in -3.0f64..3.0,
            c2 in -3.0f64..3.0,
            x in 0.3f64..2.5,
        ) {
            let s = power(alpha);
            let cfg = FalphaConfig::new(1e-3, 256).unwrap();
            let f = |t: f64| t * t;
            let g = |t: f64| (0.5 * t).sin();
            let combo = |t: f64| c1 * f(t) + c2 * g(t);

            let df = falpha_derivative(f, &s, x, &cfg).unwrap();
            let dg = falpha_derivative(g, &s, x, &cfg).unwrap();
            let dc = falpha_derivative(combo, &s, x, &cfg).unwrap();
            let scale = dc.abs().max(1.0);
            prop_assert!((dc - (c1 * df + c2 * dg)).abs() <= 1e-9 * scale);

            let int_f = falpha_integral(f, &s, 0.0, x, &cfg).unwrap();
            let int_g = falpha_integral(g, &s, 0.0, x, &cfg).unwrap();
            let int_c = falpha_integral(combo, &s, 0.0, x, &cfg).unwrap();
            let iscale = int_c.abs().max(1.0);
            prop_assert!((int_c - (c1 * int_f + c2 * int_g)).abs() <= 1e-9 * iscale);
        }
    }
}
