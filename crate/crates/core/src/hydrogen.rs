//! Closed-form fractal hydrogen atom: radial wavefunctions, probability
//! densities, energy levels, and fractal-time evolution, all expressed
//! through an injectable staircase (the power-law surrogate by default).

use crate::fcalc::{falpha_integral, FalphaConfig};
use crate::measure::Staircase;
use crate::specfun::{assoc_laguerre, spherical_harmonic};
use crate::{Error, Result};
use num_complex::Complex64;

/// Principal, azimuthal, and magnetic quantum numbers with the usual
/// validity constraints `l <= n - 1`, `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
    m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if l > n - 1 {
            return Err(Error::InvalidParameter(format!(
                "l must satisfy l <= n - 1, got n = {n}, l = {l}"
            )));
        }
        if m.unsigned_abs() > l {
            return Err(Error::InvalidParameter(format!(
                "m must satisfy |m| <= l, got l = {l}, m = {m}"
            )));
        }
        Ok(Self { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }
}

/// Physical constants in a named unit system. All fields are strictly
/// positive; in atomic units hbar = m_e = e = 4*pi*eps0 = a0 = 1 and
/// energies come out in Hartree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub electron_mass: f64,
    pub charge: f64,
    pub vacuum_permittivity: f64,
    pub bohr_radius: f64,
    /// Display conversion only.
    pub ev_per_hartree: f64,
}

pub const EV_PER_HARTREE: f64 = 27.211386;

impl PhysicalConstants {
    pub fn atomic() -> Self {
        Self {
            hbar: 1.0,
            electron_mass: 1.0,
            charge: 1.0,
            vacuum_permittivity: 1.0 / (4.0 * std::f64::consts::PI),
            bohr_radius: 1.0,
            ev_per_hartree: EV_PER_HARTREE,
        }
    }

    /// CODATA 2018 values in SI units.
    pub fn si() -> Self {
        Self {
            hbar: 1.054_571_817e-34,
            electron_mass: 9.109_383_701_5e-31,
            charge: 1.602_176_634e-19,
            vacuum_permittivity: 8.854_187_812_8e-12,
            bohr_radius: 5.291_772_109_03e-11,
            ev_per_hartree: EV_PER_HARTREE,
        }
    }

    /// The Hartree expressed in this system's energy unit, `m e^4 / hbar^2`
    /// (equals 1 in atomic units).
    pub fn hartree(&self) -> f64 {
        self.electron_mass * self.charge.powi(4) / (self.hbar * self.hbar)
    }

    pub fn energy_to_hartree(&self, energy: f64) -> f64 {
        energy / self.hartree()
    }

    pub fn energy_to_ev(&self, energy: f64) -> f64 {
        self.energy_to_hartree(energy) * self.ev_per_hartree
    }
}

/// Space and time fractal exponents, each in (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractalDims {
    alpha: f64,
    beta: f64,
}

impl FractalDims {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in (0, 1], got {v}"
                )));
            }
        }
        Ok(Self { alpha, beta })
    }

    /// Space exponent `alpha` with ordinary time (`beta = 1`).
    pub fn spatial(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// How the radial probability density is formed: `Squared` squares the
/// radial wavefunction; `PaperLiteral` reproduces the printed closed form,
/// whose exponent is not doubled relative to the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadialMode {
    #[default]
    Squared,
    PaperLiteral,
}

pub(crate) fn check_space_staircase(dims: &FractalDims, s: &Staircase) -> Result<()> {
    if (s.alpha() - dims.alpha()).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "staircase alpha {} does not match the space exponent {}",
            s.alpha(),
            dims.alpha()
        )));
    }
    Ok(())
}

pub(crate) fn check_time_staircase(dims: &FractalDims, s: &Staircase) -> Result<()> {
    if (s.alpha() - dims.beta()).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "time staircase alpha {} does not match the time exponent {}",
            s.alpha(),
            dims.beta()
        )));
    }
    Ok(())
}

/// Radial wavefunction
/// `A (2/(n S(a0)))^{l+1} exp(-S(r)/(n S(a0))) L_{n-l-1}^{2l+1}(2 S(r)/(n S(a0)))`.
/// With the power-law backend and a0 = 1 this is the proportional surrogate
/// form with `S(r) = r^alpha`.
pub fn radial_wavefunction(
    qn: &QuantumNumbers,
    dims: &FractalDims,
    r: f64,
    consts: &PhysicalConstants,
    a_nl: f64,
    s: &Staircase,
) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "radial coordinate must be non-negative, got {r}"
        )));
    }
    check_space_staircase(dims, s)?;
    let n = qn.n() as f64;
    let s_a0 = s.eval(consts.bohr_radius);
    let x = s.eval(r) / (n * s_a0);
    let lag = assoc_laguerre(qn.n() - qn.l() - 1, 2 * qn.l() + 1, 2.0 * x);
    Ok(a_nl * (2.0 / (n * s_a0)).powi(qn.l() as i32 + 1) * (-x).exp() * lag)
}

/// Radial probability density in the chosen [`RadialMode`].
pub fn radial_density(
    qn: &QuantumNumbers,
    dims: &FractalDims,
    r: f64,
    consts: &PhysicalConstants,
    a_nl: f64,
    mode: RadialMode,
    s: &Staircase,
) -> Result<f64> {
    match mode {
        RadialMode::Squared => {
            let rw = radial_wavefunction(qn, dims, r, consts, a_nl, s)?;
            Ok(rw * rw)
        }
        RadialMode::PaperLiteral => {
            if r < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "radial coordinate must be non-negative, got {r}"
                )));
            }
            check_space_staircase(dims, s)?;
            let n = qn.n() as f64;
            let s_a0 = s.eval(consts.bohr_radius);
            let x = s.eval(r) / (n * s_a0);
            let lag = assoc_laguerre(qn.n() - qn.l() - 1, 2 * qn.l() + 1, 2.0 * x);
            Ok(a_nl * a_nl
                * (2.0 / (n * s_a0)).powi(2 * (qn.l() as i32 + 1))
                * (-x).exp()
                * lag
                * lag)
        }
    }
}

/// The 1s orbital in the printed surrogate form:
/// `(2/sqrt(4 pi)) (1/a0^{3 alpha})^{1/2} exp(-r^alpha / a0^{3 alpha})`.
pub fn orbital_1s(dims: &FractalDims, r: f64, consts: &PhysicalConstants) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "radial coordinate must be non-negative, got {r}"
        )));
    }
    let a3 = consts.bohr_radius.powf(3.0 * dims.alpha());
    let r_alpha = if r == 0.0 { 0.0 } else { r.powf(dims.alpha()) };
    Ok(2.0 / (4.0 * std::f64::consts::PI).sqrt() * a3.sqrt().recip() * (-r_alpha / a3).exp())
}

/// Full wavefunction: radial part times spherical harmonic.
#[allow(clippy::too_many_arguments)]
pub fn full_wavefunction(
    qn: &QuantumNumbers,
    dims: &FractalDims,
    r: f64,
    theta: f64,
    phi: f64,
    consts: &PhysicalConstants,
    a_nl: f64,
    s: &Staircase,
) -> Result<Complex64> {
    let radial = radial_wavefunction(qn, dims, r, consts, a_nl, s)?;
    let angular = spherical_harmonic(qn.l(), qn.m(), theta, phi)?;
    Ok(radial * angular)
}

/// Average orbit radius of the n-th level, `r_n = n^2 hbar^2 / (m e^2)`
/// (n^2 in atomic units).
pub fn bohr_radius_level(n: u32, consts: &PhysicalConstants) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let nf = n as f64;
    Ok(nf * nf * consts.hbar * consts.hbar
        / (consts.electron_mass * consts.charge * consts.charge))
}

/// Fractal energy level `E_n = -(m e^4 / (2 hbar^2)) / S(r_n)`; with the
/// power-law surrogate this is `-(m e^4 / (2 hbar^2)) n^{-2 alpha}` in
/// atomic units, and the alpha = 1 case reduces to -13.6 eV / n^2.
pub fn energy_level(
    n: u32,
    dims: &FractalDims,
    consts: &PhysicalConstants,
    s: &Staircase,
) -> Result<f64> {
    check_space_staircase(dims, s)?;
    let r_n = bohr_radius_level(n, consts)?;
    let s_rn = s.eval(r_n);
    if !(s_rn > 0.0) {
        return Err(Error::Computation(format!(
            "staircase vanishes at the orbit radius r_{n} = {r_n}"
        )));
    }
    Ok(-consts.electron_mass * consts.charge.powi(4) / (2.0 * consts.hbar * consts.hbar) / s_rn)
}

/// Fractal-time evolution of a superposition at a fixed spatial point
/// `(r, theta, phi)`:
/// `sum c_n psi_n(point) exp(-i E_n S_time(t) / hbar)`, with `A_nl = 1`.
pub fn evolve_superposition(
    terms: &[(Complex64, QuantumNumbers)],
    dims: &FractalDims,
    point: (f64, f64, f64),
    t: f64,
    consts: &PhysicalConstants,
    s_space: &Staircase,
    s_time: &Staircase,
) -> Result<Complex64> {
    if terms.is_empty() {
        return Err(Error::InvalidParameter(
            "superposition requires at least one term".into(),
        ));
    }
    if t < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "time must be non-negative, got {t}"
        )));
    }
    check_time_staircase(dims, s_time)?;
    let (r, theta, phi) = point;
    let s_t = s_time.eval(t);
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, qn) in terms {
        let psi = full_wavefunction(qn, dims, r, theta, phi, consts, 1.0, s_space)?;
        let e_n = energy_level(qn.n(), dims, consts, s_space)?;
        let phase = Complex64::from_polar(1.0, -e_n * s_t / consts.hbar);
        acc += c * psi * phase;
    }
    Ok(acc)
}

/// Normalization constant `1 / sqrt(int_0^{r_max} R^2 d_F^alpha r)` for the
/// radial function with `A_nl = 1`, computed by the F^alpha-integral. The
/// paper never fixes a normalization; this optional helper uses the fractal
/// measure itself.
pub fn radial_norm_constant(
    qn: &QuantumNumbers,
    dims: &FractalDims,
    consts: &PhysicalConstants,
    s: &Staircase,
    r_max: f64,
    cfg: &FalphaConfig,
) -> Result<f64> {
    check_space_staircase(dims, s)?;
    if !(r_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "r_max must be positive, got {r_max}"
        )));
    }
    let density = |r: f64| {
        radial_wavefunction(qn, dims, r.max(0.0), consts, 1.0, s)
            .map(|v| v * v)
            .unwrap_or(f64::NAN)
    };
    let norm2 = falpha_integral(density, s, 0.0, r_max, cfg)?;
    if !(norm2 > 0.0) {
        return Err(Error::Computation(
            "radial norm integral is not positive".into(),
        ));
    }
    Ok(norm2.sqrt().recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn atomic() -> PhysicalConstants {
        PhysicalConstants::atomic()
    }

    fn power(alpha: f64) -> Staircase {
        Staircase::power_law(alpha).unwrap()
    }

    #[test]
    fn unit_systems_are_consistent() {
        let a = PhysicalConstants::atomic();
        // hbar = m = e = a0 = 1 and 4 pi eps0 = 1
        assert_eq!(
            (a.hbar, a.electron_mass, a.charge, a.bohr_radius),
            (1.0, 1.0, 1.0, 1.0)
        );
        assert_relative_eq!(
            4.0 * std::f64::consts::PI * a.vacuum_permittivity,
            1.0,
            max_relative = 1e-15
        );
        assert_eq!(a.hartree(), 1.0);
        assert_eq!(a.energy_to_ev(1.0), EV_PER_HARTREE);

        let si = PhysicalConstants::si();
        for v in [
            si.hbar,
            si.electron_mass,
            si.charge,
            si.vacuum_permittivity,
            si.bohr_radius,
        ] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn quantum_number_validation() {
        assert!(QuantumNumbers::new(1, 0, 0).is_ok());
        assert!(QuantumNumbers::new(3, 2, -2).is_ok());
        assert!(QuantumNumbers::new(0, 0, 0).is_err());
        assert!(QuantumNumbers::new(2, 2, 0).is_err());
        assert!(QuantumNumbers::new(2, 1, 2).is_err());
    }

    #[test]
    fn radial_ground_state_values() {
        let qn = QuantumNumbers::new(1, 0, 0).unwrap();
        let dims = FractalDims::spatial(1.0).unwrap();
        let s = power(1.0);
        let r0 = radial_wavefunction(&qn, &dims, 0.0, &atomic(), 1.0, &s).unwrap();
        assert_relative_eq!(r0, 2.0, max_relative = 1e-14);
        let r1 = radial_wavefunction(&qn, &dims, 1.0, &atomic(), 1.0, &s).unwrap();
        assert_relative_eq!(r1, 0.735_758_882_342_884_6, max_relative = 1e-12);
    }

    #[test]
    fn radial_2p_at_half_alpha() {
        let qn = QuantumNumbers::new(2, 1, 0).unwrap();
        let dims = FractalDims::spatial(0.5).unwrap();
        let s = power(0.5);
        // S(4) = 2: (2/2)^2 e^{-1} L_0^3(2) = 1/e
        let v = radial_wavefunction(&qn, &dims, 4.0, &atomic(), 1.0, &s).unwrap();
        assert_relative_eq!(v, 0.367_879_441_171_442_33, max_relative = 1e-12);
    }

    #[test]
    fn radial_rejects_negative_r_and_mismatched_staircase() {
        let qn = QuantumNumbers::new(1, 0, 0).unwrap();
        let dims = FractalDims::spatial(1.0).unwrap();
        assert!(radial_wavefunction(&qn, &dims, -0.1, &atomic(), 1.0, &power(1.0)).is_err());
        assert!(radial_wavefunction(&qn, &dims, 1.0, &atomic(), 1.0, &power(0.5)).is_err());
    }

    #[test]
    fn density_modes_agree_at_origin() {
        let qn = QuantumNumbers::new(1, 0, 0).unwrap();
        let dims = FractalDims::spatial(1.0).unwrap();
        let s = power(1.0);
        for mode in [RadialMode::Squared, RadialMode::PaperLiteral] {
            let p = radial_density(&qn, &dims, 0.0, &atomic(), 1.0, mode, &s).unwrap();
            assert_relative_eq!(p, 4.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn density_modes_differ_away_from_origin() {
        let qn = QuantumNumbers::new(1, 0, 0).unwrap();
        let dims = FractalDims::spatial(1.0).unwrap();
        let s = power(1.0);
        let sq =
            radial_density(&qn, &dims, 1.0, &atomic(), 1.0, RadialMode::Squared, &s).unwrap();
        assert_relative_eq!(sq, 0.541_341_132_946_450_8, max_relative = 1e-12);
        let lit = radial_density(&qn, &dims, 1.0, &atomic(), 1.0, RadialMode::PaperLiteral, &s)
            .unwrap();
        assert_relative_eq!(lit, 1.471_517_764_685_769_3, max_relative = 1e-12);
    }

    #[test]
    fn density_is_nonnegative_everywhere() {
        let dims = FractalDims::spatial(0.7).unwrap();
        let s = power(0.7);
        for (n, l) in [(1u32, 0u32), (2, 0), (2, 1), (3, 0), (3, 2)] {
            let qn = QuantumNumbers::new(n, l, 0).unwrap();
            for i in 0..200 {
                let r = i as f64 * 0.1;
                for mode in [RadialMode::Squared, RadialMode::PaperLiteral] {
                    let p = radial_density(&qn, &dims, r, &atomic(), 1.0, mode, &s).unwrap();
                    assert!(p >= 0.0, "negative density at r = {r}");
                }
            }
        }
    }

    #[test]
    fn orbital_1s_values() {
        let consts = atomic();
        let d1 = FractalDims::spatial(1.0).unwrap();
        let v0 = orbital_1s(&d1, 0.0, &consts).unwrap();
        assert_relative_eq!(v0, 0.564_189_583_547_756_3, max_relative = 1e-12);
        let v1 = orbital_1s(&d1, 1.0, &consts).unwrap();
        assert_relative_eq!(v1, 0.207_553_748_710_297_35, max_relative = 1e-12);
        // alpha-independent at the origin for a0 = 1
        for alpha in [0.3, 0.6, 0.9] {
            let d = FractalDims::spatial(alpha).unwrap();
            assert_relative_eq!(orbital_1s(&d, 0.0, &consts).unwrap(), v0);
        }
        assert!(orbital_1s(&d1, -1.0, &consts).is_err());
    }

    #[test]
    fn full_wavefunction_composes_radial_and_angular() {
        let dims = FractalDims::spatial(1.0).unwrap();
        let s = power(1.0);
        let consts = atomic();
        let qn = QuantumNumbers::new(1, 0, 0).unwrap();
        let psi = full_wavefunction(&qn, &dims, 1.3, 0.8, 2.1, &consts, 1.0, &s).unwrap();
        let radial = radial_wavefunction(&qn, &dims, 1.3, &consts, 1.0, &s).unwrap();
        assert_relative_eq!(psi.re, radial * 0.282_094_791_773_878_14, max_relative = 1e-12);
        assert_abs_diff_eq!(psi.im, 0.0);

        // cos(pi/2) kills Y_{1,0} for all r and alpha
        let qn210 = QuantumNumbers::new(2, 1, 0).unwrap();
        for alpha in [0.5, 1.0] {
            let d = FractalDims::spatial(alpha).unwrap();
            let sp = power(alpha);
            for r in [0.5, 2.0, 7.0] {
                let v = full_wavefunction(
                    &qn210,
                    &d,
                    r,
                    std::f64::consts::FRAC_PI_2,
                    0.0,
                    &consts,
                    1.0,
                    &sp,
                )
                .unwrap();
                assert_abs_diff_eq!(v.norm(), 0.0, epsilon = 1e-15);
            }
        }

        // (2,1,1) at theta = pi/2, phi = 0 composes the two oracles
        let qn211 = QuantumNumbers::new(2, 1, 1).unwrap();
        let d = FractalDims::spatial(1.0).unwrap();
        let v = full_wavefunction(
            &qn211,
            &d,
            2.0,
            std::f64::consts::FRAC_PI_2,
            0.0,
            &consts,
            1.0,
            &s,
        )
        .unwrap();
        let r21 = radial_wavefunction(&qn211, &d, 2.0, &consts, 1.0, &s).unwrap();
        assert_relative_eq!(v.re, r21 * -0.345_494_149_471_335_48, max_relative = 1e-12);
    }

    #[test]
    fn bohr_radius_examples() {
        let consts = atomic();
        assert_relative_eq!(bohr_radius_level(1, &consts).unwrap(), 1.0);
        assert_relative_eq!(bohr_radius_level(3, &consts).unwrap(), 9.0);
        let custom = PhysicalConstants {
            hbar: 2.0,
            ..atomic()
        };
        assert_relative_eq!(bohr_radius_level(2, &custom).unwrap(), 16.0);
        assert!(bohr_radius_level(0, &consts).is_err());
    }

    #[test]
    fn energy_levels_anchor() {
        let consts = atomic();
        let dims = FractalDims::spatial(1.0).unwrap();
        let s = power(1.0);
        let e1 = energy_level(1, &dims, &consts, &s).unwrap();
        assert_relative_eq!(e1, -0.5, max_relative = 1e-14);
        assert_abs_diff_eq!(consts.energy_to_ev(e1), -13.605_693, epsilon = 1e-6);
        let e2 = energy_level(2, &dims, &consts, &s).unwrap();
        assert_abs_diff_eq!(consts.energy_to_ev(e2), -13.605_693 / 4.0, epsilon = 1e-6);
    }

    #[test]
    fn energy_level_fractional_alpha() {
        let consts = atomic();
        let dims = FractalDims::spatial(0.8).unwrap();
        let s = power(0.8);
        let e = energy_level(2, &dims, &consts, &s).unwrap();
        assert_relative_eq!(e, -0.164_938_488_846_611_78, max_relative = 1e-12);
    }

    #[test]
    fn energy_alpha_monotonicity() {
        // |E_n^alpha| strictly decreasing in alpha for n >= 2; n = 1 is flat
        let consts = atomic();
        let alphas = [0.3, 0.5, 0.7, 0.9, 1.0];
        for n in 2..=4u32 {
            let mut prev = f64::INFINITY;
            for &alpha in &alphas {
                let dims = FractalDims::spatial(alpha).unwrap();
                let e = energy_level(n, &dims, &consts, &power(alpha)).unwrap().abs();
                assert!(e < prev, "|E_{n}| not decreasing at alpha = {alpha}");
                prev = e;
            }
        }
        let e_ref = energy_level(1, &FractalDims::spatial(1.0).unwrap(), &consts, &power(1.0))
            .unwrap();
        for &alpha in &alphas {
            let dims = FractalDims::spatial(alpha).unwrap();
            let e = energy_level(1, &dims, &consts, &power(alpha)).unwrap();
            assert_relative_eq!(e, e_ref, max_relative = 1e-14);
        }
    }

    #[test]
    fn surrogate_conjugacy_is_exact() {
        let consts = atomic();
        for (n, l) in [(1u32, 0u32), (2, 0), (2, 1), (3, 1), (4, 2)] {
            let qn = QuantumNumbers::new(n, l, 0).unwrap();
            for alpha in [0.3, 0.5, 0.77] {
                let da = FractalDims::spatial(alpha).unwrap();
                let d1 = FractalDims::spatial(1.0).unwrap();
                for r in [0.2, 1.0, 2.7, 6.0] {
                    let lhs =
                        radial_wavefunction(&qn, &da, r, &consts, 1.0, &power(alpha)).unwrap();
                    let rhs = radial_wavefunction(&qn, &d1, r.powf(alpha), &consts, 1.0, &power(1.0))
                        .unwrap();
                    assert_eq!(lhs, rhs, "conjugacy broke at n={n} l={l} alpha={alpha} r={r}");
                }
            }
        }
    }

    #[test]
    fn node_count_matches_quantum_numbers() {
        // squared-mode density has exactly n - l - 1 interior zeros
        let consts = atomic();
        let dims = FractalDims::spatial(1.0).unwrap();
        let s = power(1.0);
        for (n, l) in [(1u32, 0u32), (2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (5, 2)] {
            let qn = QuantumNumbers::new(n, l, 0).unwrap();
            let r_max = 40.0 * n as f64;
            let samples = 10_000;
            let mut sign_changes = 0;
            // track the last nonzero sign so a grid point landing exactly on
            // a node still registers as one crossing
            let mut last_sign = radial_wavefunction(&qn, &dims, 1e-9, &consts, 1.0, &s)
                .unwrap()
                .signum();
            for i in 1..=samples {
                let r = i as f64 * r_max / samples as f64;
                let v = radial_wavefunction(&qn, &dims, r, &consts, 1.0, &s).unwrap();
                if v != 0.0 {
                    let sgn = v.signum();
                    if sgn != last_sign {
                        sign_changes += 1;
                    }
                    last_sign = sgn;
                }
            }
            assert_eq!(
                sign_changes,
                (n - l - 1) as i32,
                "node count off for n={n} l={l}"
            );
        }
    }

    #[test]
    fn evolution_preserves_single_state_magnitude() {
        let consts = atomic();
        let s_space = power(1.0);
        let qn = QuantumNumbers::new(2, 1, 0).unwrap();
        let c = Complex64::new(0.6, -0.3);
        let terms = [(c, qn)];
        let point = (1.7, 1.0, 0.4);
        for beta in [0.5, 1.0] {
            let dims = FractalDims::new(1.0, beta).unwrap();
            let s_time = power(beta);
            let base = evolve_superposition(&terms, &dims, point, 0.0, &consts, &s_space, &s_time)
                .unwrap();
            for t in [0.3, 2.0, 11.0] {
                let v =
                    evolve_superposition(&terms, &dims, point, t, &consts, &s_space, &s_time)
                        .unwrap();
                assert_relative_eq!(v.norm(), base.norm(), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn evolution_at_time_zero_is_static_superposition() {
        let consts = atomic();
        let dims = FractalDims::new(1.0, 0.7).unwrap();
        let s_space = power(1.0);
        let s_time = power(0.7);
        let terms = [
            (
                Complex64::new(0.5, 0.1),
                QuantumNumbers::new(1, 0, 0).unwrap(),
            ),
            (
                Complex64::new(-0.2, 0.8),
                QuantumNumbers::new(2, 1, 1).unwrap(),
            ),
        ];
        let point = (0.9, 1.2, 0.3);
        let v = evolve_superposition(&terms, &dims, point, 0.0, &consts, &s_space, &s_time)
            .unwrap();
        let mut want = Complex64::new(0.0, 0.0);
        for (c, qn) in &terms {
            want += c * full_wavefunction(qn, &dims, 0.9, 1.2, 0.3, &consts, 1.0, &s_space)
                .unwrap();
        }
        assert_relative_eq!(v.re, want.re, max_relative = 1e-12);
        assert_relative_eq!(v.im, want.im, max_relative = 1e-12);
    }

    #[test]
    fn two_level_revival_period() {
        let consts = atomic();
        let dims = FractalDims::new(1.0, 1.0).unwrap();
        let s = power(1.0);
        let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let terms = [
            (c, QuantumNumbers::new(1, 0, 0).unwrap()),
            (c, QuantumNumbers::new(2, 0, 0).unwrap()),
        ];
        let e1 = energy_level(1, &dims, &consts, &s).unwrap();
        let e2 = energy_level(2, &dims, &consts, &s).unwrap();
        let period = 2.0 * std::f64::consts::PI / (e2 - e1).abs();
        let point = (1.0, 0.0, 0.0);
        let p0 = evolve_superposition(&terms, &dims, point, 0.0, &consts, &s, &s)
            .unwrap()
            .norm_sqr();
        let p1 = evolve_superposition(&terms, &dims, point, period, &consts, &s, &s)
            .unwrap()
            .norm_sqr();
        assert_abs_diff_eq!(p0, p1, epsilon = 1e-9);
    }

    #[test]
    fn evolution_rejects_empty_terms_and_negative_time() {
        let consts = atomic();
        let dims = FractalDims::new(1.0, 1.0).unwrap();
        let s = power(1.0);
        assert!(evolve_superposition(&[], &dims, (1.0, 0.0, 0.0), 0.0, &consts, &s, &s).is_err());
        let terms = [(
            Complex64::new(1.0, 0.0),
            QuantumNumbers::new(1, 0, 0).unwrap(),
        )];
        assert!(
            evolve_superposition(&terms, &dims, (1.0, 0.0, 0.0), -1.0, &consts, &s, &s).is_err()
        );
    }

    #[test]
    fn norm_constant_normalizes_the_radial_density() {
        let consts = atomic();
        let dims = FractalDims::spatial(1.0).unwrap();
        let s = power(1.0);
        let qn = QuantumNumbers::new(1, 0, 0).unwrap();
        let cfg = FalphaConfig::default();
        let a = radial_norm_constant(&qn, &dims, &consts, &s, 40.0, &cfg).unwrap();
        // int_0^inf 4 e^{-2r} dr = 2, so A = 1/sqrt(2)
        assert_abs_diff_eq!(a, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-4);
    }
}
