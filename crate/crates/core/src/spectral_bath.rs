//! Pointwise bath model: the ohmic-family spectral density, the squeezing
//! kernel, the thermal occupation factor and the full decoherence integrand.
//!
//! Units: ħ = k_B = 1. Temperature is a frequency, time an inverse frequency.
//! The cutoff `omega_c` defaults to 1 so that T and t are expressed in units
//! of the cutoff.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of ω/2T the coth and csch² factors switch to their
/// Laurent expansions about the pole.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Low-frequency classification of the bath.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    SubOhmic,
    Ohmic,
    SuperOhmic,
}

/// Ohmicity exponent `s` and cutoff frequency `omega_c` of
/// J(ω) = ω^s ω_c^(1−s) e^(−ω/ω_c).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    s: f64,
    omega_c: f64,
}

impl SpectralParams {
    pub fn new(s: f64, omega_c: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::domain(format!("ohmicity s must be > 0, got {s}")));
        }
        if !(omega_c.is_finite() && omega_c > 0.0) {
            return Err(Error::domain(format!("cutoff omega_c must be > 0, got {omega_c}")));
        }
        Ok(Self { s, omega_c })
    }

    /// Spectral density with unit cutoff.
    pub fn with_unit_cutoff(s: f64) -> Result<Self> {
        Self::new(s, 1.0)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn regime(&self) -> Regime {
        if self.s < 1.0 {
            Regime::SubOhmic
        } else if self.s > 1.0 {
            Regime::SuperOhmic
        } else {
            Regime::Ohmic
        }
    }
}

/// Mode-uniform squeezing amplitude `r ≥ 0` and phase `theta`.
///
/// The phase is stored reduced to [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParams {
    r: f64,
    theta: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!("squeezing amplitude r must be >= 0, got {r}")));
        }
        if !theta.is_finite() {
            return Err(Error::domain(format!(
                "squeezing phase theta must be finite, got {theta}"
            )));
        }
        Ok(Self {
            r,
            theta: reduce_angle(theta),
        })
    }

    /// The unsqueezed (plain thermal) bath.
    pub fn thermal() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

fn reduce_angle(theta: f64) -> f64 {
    let reduced = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if reduced >= TAU {
        0.0
    } else {
        reduced
    }
}

/// Bath temperature and interaction time at which Γ is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathPoint {
    temperature: f64,
    time: f64,
}

impl BathPoint {
    pub fn new(temperature: f64, time: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::domain(format!("temperature must be >= 0, got {temperature}")));
        }
        if !(time.is_finite() && time >= 0.0) {
            return Err(Error::domain(format!("time must be >= 0, got {time}")));
        }
        Ok(Self { temperature, time })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// J(ω) = ω^s · ω_c^(1−s) · exp(−ω/ω_c).
pub fn spectral_density(omega: f64, sp: &SpectralParams) -> Result<f64> {
    if !(omega >= 0.0) {
        return Err(Error::domain(format!("spectral density needs omega >= 0, got {omega}")));
    }
    Ok(density_unchecked(omega, sp))
}

#[inline]
pub(crate) fn density_unchecked(omega: f64, sp: &SpectralParams) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    let x = omega / sp.omega_c;
    // ω^s ω_c^(1−s) = ω_c · x^s
    sp.omega_c * x.powf(sp.s) * (-x).exp()
}

/// cosh(2r) − cos(θ − ωt)·sinh(2r), bounded by [e^(−2r), e^(2r)].
#[inline]
pub fn squeeze_kernel(omega: f64, t: f64, sq: &SqueezeParams) -> f64 {
    if sq.r == 0.0 {
        return 1.0;
    }
    let two_r = 2.0 * sq.r;
    let c = (sq.theta - omega * t).cos();
    // cosh − c·sinh written as a convex mix of e^(±2r) to keep the bounds exact
    let up = two_r.exp();
    let down = (-two_r).exp();
    0.5 * (1.0 - c) * up + 0.5 * (1.0 + c) * down
}

/// coth(ω / 2T); exactly 1 at T = 0.
pub fn thermal_factor(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(format!("thermal factor needs omega > 0, got {omega}")));
    }
    if !(temperature >= 0.0) {
        return Err(Error::domain(format!("temperature must be >= 0, got {temperature}")));
    }
    Ok(coth_half(omega, temperature))
}

#[inline]
pub(crate) fn coth_half(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 1.0;
    }
    let x = omega / (2.0 * temperature);
    if x < SERIES_THRESHOLD {
        1.0 / x + x / 3.0
    } else {
        1.0 / x.tanh()
    }
}

/// ∂/∂T coth(ω/2T) = (ω/2T²)·csch²(ω/2T); zero at T = 0.
#[inline]
pub(crate) fn dcoth_half_dt(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 0.0;
    }
    let x = omega / (2.0 * temperature);
    let prefactor = omega / (2.0 * temperature * temperature);
    if x < SERIES_THRESHOLD {
        // csch²x = 1/x² − 1/3 + O(x²)
        prefactor * (1.0 / (x * x) - 1.0 / 3.0)
    } else {
        let q = (-2.0 * x).exp();
        let denom = -(-2.0 * x).exp_m1();
        prefactor * 4.0 * q / (denom * denom)
    }
}

/// Which factor of the integrand is replaced by its derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum IntegrandKind {
    Gamma,
    DTemperature,
    DAmplitude,
    DPhase,
}

#[inline]
pub(crate) fn integrand_unchecked(
    kind: IntegrandKind,
    omega: f64,
    point: &BathPoint,
    sq: &SqueezeParams,
    sp: &SpectralParams,
) -> f64 {
    let t = point.time;
    let j = density_unchecked(omega, sp);
    if j == 0.0 {
        return 0.0;
    }
    let wt = omega * t;
    // 1 − cos(ωt) = 2 sin²(ωt/2), free of cancellation at small ωt
    let half = (0.5 * wt).sin();
    let filter = 2.0 * half * half / (omega * omega);
    let (squeeze, thermal) = match kind {
        IntegrandKind::Gamma => (squeeze_kernel(omega, t, sq), coth_half(omega, point.temperature)),
        IntegrandKind::DTemperature => (squeeze_kernel(omega, t, sq), dcoth_half_dt(omega, point.temperature)),
        IntegrandKind::DAmplitude => {
            let two_r = 2.0 * sq.r;
            let c = (sq.theta - wt).cos();
            (
                2.0 * two_r.sinh() - 2.0 * c * two_r.cosh(),
                coth_half(omega, point.temperature),
            )
        }
        IntegrandKind::DPhase => (
            (sq.theta - wt).sin() * (2.0 * sq.r).sinh(),
            coth_half(omega, point.temperature),
        ),
    };
    j * filter * squeeze * thermal
}

/// J(ω)·(1 − cos ωt)/ω² · kernel · coth(ω/2T): the decoherence integrand.
pub fn gamma_integrand(omega: f64, point: &BathPoint, sq: &SqueezeParams, sp: &SpectralParams) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::domain(format!("gamma integrand needs omega > 0, got {omega}")));
    }
    Ok(integrand_unchecked(IntegrandKind::Gamma, omega, point, sq, sp))
}
