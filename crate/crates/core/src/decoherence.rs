//! Decoherence function Γ(T, t) and its parameter derivatives.
//!
//! Γ is the integral over ω ∈ [0, Ω] of the bath integrand. The range is
//! split at ω_c/100: the low panel is integrated in the variable u with
//! ω = (ω_c/100)·u^k, k = max(1, 2/s), which turns the ω^(s−1) behaviour at
//! the origin into a smooth integrand; the remainder is integrated directly.
//! Derivatives are taken under the integral sign.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfi::Estimand;
use crate::quadrature::{self, Mapping};
use crate::spectral_bath::{integrand_unchecked, BathPoint, IntegrandKind, SpectralParams, SqueezeParams};

/// Tolerances and range controls for the Γ quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Upper limit is `omega_max_factor · ω_c · max(1, s)`.
    pub omega_max_factor: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 200,
            omega_max_factor: 50.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::domain(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain(format!("abs_tol must be > 0, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain("max_subdivisions must be >= 1"));
        }
        if !(self.omega_max_factor >= 10.0) {
            return Err(Error::domain(format!(
                "omega_max_factor must be >= 10, got {}",
                self.omega_max_factor
            )));
        }
        Ok(())
    }
}

/// Value of Γ with quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: usize,
}

fn integrate_kind(
    kind: IntegrandKind,
    point: &BathPoint,
    sq: &SqueezeParams,
    sp: &SpectralParams,
    qc: &QuadratureConfig,
) -> Result<GammaResult> {
    qc.validate()?;
    let split = sp.omega_c() / 100.0;
    let upper = qc.omega_max_factor * sp.omega_c() * sp.s().max(1.0);
    let exponent = (2.0 / sp.s()).max(1.0);
    let panels = [
        (0.0, 1.0, Mapping::Power { scale: split, exponent }),
        (split, upper, Mapping::Identity),
    ];
    let f = |omega: f64| integrand_unchecked(kind, omega, point, sq, sp);
    let out = quadrature::integrate(&f, &panels, qc.abs_tol, qc.rel_tol, qc.max_subdivisions);
    if !out.converged {
        return Err(Error::Convergence {
            value: out.value,
            est_error: out.abs_error,
            evaluations: out.evaluations,
        });
    }
    Ok(GammaResult {
        value: out.value,
        est_error: out.abs_error,
        evaluations: out.evaluations,
    })
}

/// Γ(T, t) for the given bath; exactly zero at t = 0.
pub fn gamma(point: &BathPoint, sq: &SqueezeParams, sp: &SpectralParams, qc: &QuadratureConfig) -> Result<GammaResult> {
    if point.time() == 0.0 {
        qc.validate()?;
        return Ok(GammaResult {
            value: 0.0,
            est_error: 0.0,
            evaluations: 0,
        });
    }
    let mut res = integrate_kind(IntegrandKind::Gamma, point, sq, sp, qc)?;
    // every Kronrod weight is positive and the integrand is non-negative
    res.value = res.value.max(0.0);
    Ok(res)
}

/// ∂Γ/∂η by quadrature of the differentiated integrand.
///
/// The T-derivative at T = 0 is returned as its limit, 0.
pub fn gamma_partial(
    estimand: Estimand,
    point: &BathPoint,
    sq: &SqueezeParams,
    sp: &SpectralParams,
    qc: &QuadratureConfig,
) -> Result<f64> {
    qc.validate()?;
    if point.time() == 0.0 {
        return Ok(0.0);
    }
    let kind = match estimand {
        Estimand::Temperature => {
            if point.temperature() == 0.0 {
                return Ok(0.0);
            }
            IntegrandKind::DTemperature
        }
        Estimand::SqueezeAmplitude => IntegrandKind::DAmplitude,
        Estimand::SqueezePhase => {
            if sq.r() == 0.0 {
                return Ok(0.0);
            }
            IntegrandKind::DPhase
        }
    };
    Ok(integrate_kind(kind, point, sq, sp, qc)?.value)
}

/// Bath inputs with the estimand displaced by `delta`.
///
/// A negative squeezing amplitude is mapped through Γ(−r, θ) = Γ(r, θ + π),
/// which holds because the kernel only sees cosh 2r and cos(θ − ωt)·sinh 2r.
pub fn displaced(
    estimand: Estimand,
    point: &BathPoint,
    sq: &SqueezeParams,
    delta: f64,
) -> Result<(BathPoint, SqueezeParams)> {
    match estimand {
        Estimand::Temperature => {
            let temp = point.temperature() + delta;
            if temp < 0.0 {
                return Err(Error::domain(format!(
                    "temperature step leaves the domain: T {} + {delta} < 0",
                    point.temperature()
                )));
            }
            Ok((BathPoint::new(temp, point.time())?, *sq))
        }
        Estimand::SqueezeAmplitude => {
            let r = sq.r() + delta;
            let shifted = if r >= 0.0 {
                SqueezeParams::new(r, sq.theta())?
            } else {
                SqueezeParams::new(-r, sq.theta() + PI)?
            };
            Ok((*point, shifted))
        }
        Estimand::SqueezePhase => Ok((*point, SqueezeParams::new(sq.r(), sq.theta() + delta)?)),
    }
}

/// Central finite difference [Γ(η+h) − Γ(η−h)] / 2h.
pub fn gamma_partial_fd(
    estimand: Estimand,
    point: &BathPoint,
    sq: &SqueezeParams,
    sp: &SpectralParams,
    qc: &QuadratureConfig,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("finite-difference step must be > 0, got {h}")));
    }
    let (p_minus, sq_minus) = displaced(estimand, point, sq, -h)?;
    let (p_plus, sq_plus) = displaced(estimand, point, sq, h)?;
    let lo = gamma(&p_minus, &sq_minus, sp, qc)?.value;
    let hi = gamma(&p_plus, &sq_plus, sp, qc)?.value;
    Ok((hi - lo) / (2.0 * h))
}
