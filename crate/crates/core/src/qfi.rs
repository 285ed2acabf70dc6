//! Quantum Fisher information of the dephased probe.
//!
//! Two independent routes are provided:
//!
//! * [`qfi_point`] — the production path. The analytic ∂Γ/∂η feeds the
//!   closed form I = sin²α (∂Γ)² / (e^(2Γ) − 1).
//! * [`qfi_spectral`] — the general spectral formula
//!   I = Σᵢ (∂λᵢ)²/λᵢ + 2 Σᵢ≠ⱼ (λᵢ − λⱼ)²/(λᵢ + λⱼ) |⟨φᵢ|∂φⱼ⟩|², with the
//!   eigensystem obtained by numerically diagonalizing ρ at η and η ± h.
//!
//! The two must agree; the second exists to check the first.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decoherence::{displaced, gamma, gamma_partial, QuadratureConfig};
use crate::error::{Error, Result};
use crate::probe_state::{numeric_eigensystem, reduced_dm, EigenSystem, ProbeInit};
use crate::spectral_bath::{BathPoint, SpectralParams, SqueezeParams};

/// Γ below this counts as zero in the closed form.
pub const GAMMA_FLOOR: f64 = 1e-12;
/// |∂Γ| below this (together with Γ below [`GAMMA_FLOOR`]) is the t → 0 limit.
pub const DGAMMA_FLOOR: f64 = 1e-9;
/// Eigenvalue pairs whose sum is below this are dropped from the spectral sums.
pub const PAIR_FLOOR: f64 = 1e-12;

/// The bath parameter the QFI is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Estimand {
    #[serde(rename = "T")]
    Temperature,
    #[serde(rename = "r")]
    SqueezeAmplitude,
    #[serde(rename = "theta")]
    SqueezePhase,
}

impl Estimand {
    pub const ALL: [Estimand; 3] = [
        Estimand::Temperature,
        Estimand::SqueezeAmplitude,
        Estimand::SqueezePhase,
    ];

    /// Short label used on the command line and in output files.
    pub fn label(&self) -> &'static str {
        match self {
            Estimand::Temperature => "T",
            Estimand::SqueezeAmplitude => "r",
            Estimand::SqueezePhase => "theta",
        }
    }

    /// Current value of the estimand in the given inputs.
    pub fn value_in(&self, point: &BathPoint, sq: &SqueezeParams) -> f64 {
        match self {
            Estimand::Temperature => point.temperature(),
            Estimand::SqueezeAmplitude => sq.r(),
            Estimand::SqueezePhase => sq.theta(),
        }
    }
}

impl fmt::Display for Estimand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Estimand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "temperature" => Ok(Estimand::Temperature),
            "r" | "amplitude" => Ok(Estimand::SqueezeAmplitude),
            "theta" | "phase" => Ok(Estimand::SqueezePhase),
            other => Err(Error::domain(format!(
                "unknown estimand '{other}', expected one of T, r, theta"
            ))),
        }
    }
}

/// Everything a single QFI evaluation depends on, apart from quadrature settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiInputs {
    pub point: BathPoint,
    pub squeeze: SqueezeParams,
    pub spectral: SpectralParams,
    pub probe: ProbeInit,
    pub estimand: Estimand,
}

/// One evaluated QFI record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiSample {
    pub inputs: QfiInputs,
    pub gamma: f64,
    pub dgamma: f64,
    pub qfi: f64,
    /// Eigenvalue (classical) part of the spectral formula.
    pub cfi_term: f64,
    /// Eigenvector part of the spectral formula.
    pub quantum_term: f64,
}

/// sin²α · (∂Γ)² / (e^(2Γ) − 1), with the 0/0 at t = 0 resolved to 0.
pub fn qfi_closed_form(init: &ProbeInit, gamma_value: f64, dgamma: f64) -> Result<f64> {
    if !(gamma_value >= 0.0) {
        return Err(Error::domain(format!(
            "decoherence exponent must be >= 0, got {gamma_value}"
        )));
    }
    if gamma_value < GAMMA_FLOOR {
        if dgamma.abs() < DGAMMA_FLOOR {
            return Ok(0.0);
        }
        return Err(Error::Degenerate(format!(
            "gamma {gamma_value:e} vanishes but its derivative {dgamma:e} does not"
        )));
    }
    let sin_a = init.alpha().sin();
    let denom = (2.0 * gamma_value).exp_m1();
    Ok(sin_a * sin_a * dgamma * dgamma / denom)
}

/// Split the closed-form QFI into its eigenvalue and eigenvector parts.
///
/// With κ = sqrt(cos²α + sin²α e^(−2Γ)) the eigenvalue part is
/// sin²α e^(−4Γ)(∂Γ)² / (κ²(1 − e^(−2Γ))) and the eigenvector part is
/// sin²α cos²α e^(−2Γ)(∂Γ)² / κ²; they sum to the closed form.
fn split_terms(init: &ProbeInit, gamma_value: f64, dgamma: f64, qfi: f64) -> (f64, f64) {
    if qfi == 0.0 {
        return (0.0, 0.0);
    }
    let (sin_a, cos_a) = init.alpha().sin_cos();
    let decay2 = (-2.0 * gamma_value).exp();
    let kappa2 = cos_a * cos_a + sin_a * sin_a * decay2;
    let quantum = sin_a * sin_a * cos_a * cos_a * decay2 * dgamma * dgamma / kappa2;
    let quantum = quantum.min(qfi);
    (qfi - quantum, quantum)
}

/// Production QFI: analytic ∂Γ feeding the closed form.
pub fn qfi_point(
    estimand: Estimand,
    point: &BathPoint,
    sq: &SqueezeParams,
    sp: &SpectralParams,
    init: &ProbeInit,
    qc: &QuadratureConfig,
) -> Result<QfiSample> {
    if estimand == Estimand::Temperature && !(point.temperature() > 0.0) {
        return Err(Error::domain("temperature QFI requires T > 0"));
    }
    let g = gamma(point, sq, sp, qc)?.value;
    let dg = gamma_partial(estimand, point, sq, sp, qc)?;
    let qfi = qfi_closed_form(init, g, dg)?;
    let (cfi_term, quantum_term) = split_terms(init, g, dg, qfi);
    Ok(QfiSample {
        inputs: QfiInputs {
            point: *point,
            squeeze: *sq,
            spectral: *sp,
            probe: *init,
            estimand,
        },
        gamma: g,
        dgamma: dg,
        qfi,
        cfi_term,
        quantum_term,
    })
}

/// Default finite-difference step, 10⁻⁵ · max(1, |η|).
pub fn default_fd_step(estimand: Estimand, point: &BathPoint, sq: &SqueezeParams) -> f64 {
    1e-5 * estimand.value_in(point, sq).abs().max(1.0)
}

fn inner(a: &[Complex64; 2], b: &[Complex64; 2]) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Eigenvectors are gauge-fixed individually, but a sign flip between the
/// displaced points would still read as a huge derivative; align to the centre.
fn align(reference: &[Complex64; 2], v: [Complex64; 2]) -> [Complex64; 2] {
    let overlap = inner(reference, &v);
    if overlap.norm() == 0.0 {
        return v;
    }
    let phase = overlap.conj() / overlap.norm();
    [v[0] * phase, v[1] * phase]
}

/// General spectral-decomposition QFI with finite-difference eigen-derivatives.
///
/// `fd_step` of `None` picks [`default_fd_step`].
pub fn qfi_spectral(inputs: &QfiInputs, qc: &QuadratureConfig, fd_step: Option<f64>) -> Result<QfiSample> {
    let QfiInputs {
        point,
        squeeze,
        spectral,
        probe,
        estimand,
    } = *inputs;
    let h = fd_step.unwrap_or_else(|| default_fd_step(estimand, &point, &squeeze));
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("finite-difference step must be > 0, got {h}")));
    }
    let (p_minus, sq_minus) = displaced(estimand, &point, &squeeze, -h)?;
    let (p_plus, sq_plus) = displaced(estimand, &point, &squeeze, h)?;

    let evaluate = |p: &BathPoint, s: &SqueezeParams| -> Result<(f64, EigenSystem)> {
        let g = gamma(p, s, &spectral, qc)?.value;
        let dm = reduced_dm(&probe, g)?;
        dm.check_invariants(1e-10)?;
        Ok((g, numeric_eigensystem(&dm)))
    };
    let (g_minus, es_minus) = evaluate(&p_minus, &sq_minus)?;
    let (g_mid, es_mid) = evaluate(&point, &squeeze)?;
    let (g_plus, es_plus) = evaluate(&p_plus, &sq_plus)?;

    let values = es_mid.values();
    let mid_vecs = es_mid.vectors();
    let lo_vecs = es_minus.vectors();
    let hi_vecs = es_plus.vectors();
    let dlambda = [
        (es_plus.lambda_plus - es_minus.lambda_plus) / (2.0 * h),
        (es_plus.lambda_minus - es_minus.lambda_minus) / (2.0 * h),
    ];
    let dvec: Vec<[Complex64; 2]> = (0..2)
        .map(|j| {
            let lo = align(&mid_vecs[j], lo_vecs[j]);
            let hi = align(&mid_vecs[j], hi_vecs[j]);
            [(hi[0] - lo[0]) / (2.0 * h), (hi[1] - lo[1]) / (2.0 * h)]
        })
        .collect();

    let cfi_term: f64 = (0..2)
        .filter(|&i| values[i] >= PAIR_FLOOR)
        .map(|i| dlambda[i] * dlambda[i] / values[i])
        .sum();

    let mut quantum_term = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            if i == j {
                continue;
            }
            let sum = values[i] + values[j];
            if sum < PAIR_FLOOR {
                continue;
            }
            let diff = values[i] - values[j];
            quantum_term += 2.0 * diff * diff / sum * inner(&mid_vecs[i], &dvec[j]).norm_sqr();
        }
    }

    Ok(QfiSample {
        inputs: *inputs,
        gamma: g_mid,
        dgamma: (g_plus - g_minus) / (2.0 * h),
        qfi: cfi_term + quantum_term,
        cfi_term,
        quantum_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn bath(temp: f64, t: f64) -> BathPoint {
        BathPoint::new(temp, t).unwrap()
    }

    fn sq(r: f64, theta: f64) -> SqueezeParams {
        SqueezeParams::new(r, theta).unwrap()
    }

    fn spec(s: f64) -> SpectralParams {
        SpectralParams::new(s, 1.0).unwrap()
    }

    fn inputs(estimand: Estimand, temp: f64, t: f64, r: f64, theta: f64, s: f64, alpha: f64) -> QfiInputs {
        QfiInputs {
            point: bath(temp, t),
            squeeze: sq(r, theta),
            spectral: spec(s),
            probe: ProbeInit::new(alpha).unwrap(),
            estimand,
        }
    }

    fn point_of(i: &QfiInputs, qc: &QuadratureConfig) -> QfiSample {
        qfi_point(i.estimand, &i.point, &i.squeeze, &i.spectral, &i.probe, qc).unwrap()
    }

    #[test]
    fn closed_form_trivial_values() {
        assert_eq!(qfi_closed_form(&ProbeInit::new(0.0).unwrap(), 0.7, 3.0).unwrap(), 0.0);
        assert_eq!(qfi_closed_form(&ProbeInit::equatorial(), 0.0, 0.0).unwrap(), 0.0);
        let half_ln2 = 0.5 * 2f64.ln();
        assert_relative_eq!(
            qfi_closed_form(&ProbeInit::equatorial(), half_ln2, 1.0).unwrap(),
            1.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn closed_form_degenerate_input() {
        let err = qfi_closed_form(&ProbeInit::equatorial(), 0.0, 1e-3).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
        assert!(qfi_closed_form(&ProbeInit::equatorial(), -1.0, 0.0).is_err());
    }

    #[test]
    fn closed_form_small_gamma_uses_expm1() {
        // Γ = 1e-10: e^(2Γ) − 1 = 2e-10 to full precision
        let v = qfi_closed_form(&ProbeInit::equatorial(), 1e-10, 1e-10).unwrap();
        assert_relative_eq!(v, 1e-20 / 2e-10, max_relative = 1e-9);
    }

    #[test]
    fn point_trivial_zeros() {
        let qc = QuadratureConfig::default();
        let s = point_of(&inputs(Estimand::Temperature, 0.5, 0.0, 0.1, 1.0, 0.5, FRAC_PI_2), &qc);
        assert_eq!(s.qfi, 0.0);
        let s = point_of(&inputs(Estimand::SqueezePhase, 0.5, 1.0, 0.0, 1.0, 1.0, FRAC_PI_2), &qc);
        assert_eq!(s.qfi, 0.0);
        assert_eq!(s.dgamma, 0.0);
    }

    #[test]
    fn point_requires_positive_temperature_for_thermometry() {
        let i = inputs(Estimand::Temperature, 0.0, 1.0, 0.1, 1.0, 0.5, FRAC_PI_2);
        let r = qfi_point(
            i.estimand,
            &i.point,
            &i.squeeze,
            &i.spectral,
            &i.probe,
            &Default::default(),
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn equatorial_quantum_term_vanishes() {
        let qc = QuadratureConfig::default();
        for estimand in Estimand::ALL {
            let i = inputs(estimand, 0.5, 1.0, 0.3, 1.0, 0.5, FRAC_PI_2);
            let spectral = qfi_spectral(&i, &qc, None).unwrap();
            assert!(spectral.quantum_term <= 1e-8, "{estimand}: {}", spectral.quantum_term);
            let closed = point_of(&i, &qc);
            assert!(closed.quantum_term <= 1e-8 * closed.cfi_term.max(1.0));
        }
    }

    #[test]
    fn spectral_phase_without_squeezing_is_zero() {
        let i = inputs(Estimand::SqueezePhase, 0.5, 1.0, 0.0, 1.0, 0.5, FRAC_PI_2);
        let s = qfi_spectral(&i, &Default::default(), None).unwrap();
        assert!(s.qfi.abs() <= 1e-10);
    }

    #[test]
    fn spectral_matches_closed_form_reference_point() {
        let qc = QuadratureConfig::default();
        let i = inputs(Estimand::Temperature, 0.5, 1.0, 0.1, 1.0, 0.5, FRAC_PI_2);
        let a = point_of(&i, &qc);
        let b = qfi_spectral(&i, &qc, None).unwrap();
        assert!(a.qfi > 0.0);
        assert_relative_eq!(a.qfi, b.qfi, max_relative = 1e-3);
    }

    #[test]
    fn spectral_matches_closed_form_off_equator() {
        // away from α = π/2 the eigenvector term is nonzero and both routes must split alike
        let qc = QuadratureConfig::default();
        for alpha in [0.4, 1.0, 2.2] {
            for estimand in Estimand::ALL {
                let i = inputs(estimand, 0.5, 1.0, 0.4, 1.0, 1.0, alpha);
                let a = point_of(&i, &qc);
                let b = qfi_spectral(&i, &qc, None).unwrap();
                assert_relative_eq!(a.qfi, b.qfi, max_relative = 1e-3);
                assert_relative_eq!(a.quantum_term, b.quantum_term, max_relative = 1e-3);
                assert!(a.quantum_term > 0.0);
            }
        }
    }

    #[test]
    fn alpha_grid_optimum_and_mirror_symmetry() {
        let qc = QuadratureConfig::default();
        let base = inputs(Estimand::Temperature, 0.5, 1.0, 0.1, 1.0, 0.5, FRAC_PI_2);
        let best = point_of(&base, &qc).qfi;
        for k in 0..=20 {
            let alpha = PI * k as f64 / 20.0;
            let i = QfiInputs {
                probe: ProbeInit::new(alpha).unwrap(),
                ..base
            };
            let v = point_of(&i, &qc).qfi;
            assert!(v <= best * (1.0 + 1e-14));
            let mirror = QfiInputs {
                probe: ProbeInit::new(PI - alpha).unwrap(),
                ..base
            };
            let m = point_of(&mirror, &qc).qfi;
            assert!((v - m).abs() <= 1e-10 * best.max(1.0));
        }
    }

    #[test]
    fn estimand_parsing() {
        assert_eq!("T".parse::<Estimand>().unwrap(), Estimand::Temperature);
        assert_eq!("r".parse::<Estimand>().unwrap(), Estimand::SqueezeAmplitude);
        assert_eq!("theta".parse::<Estimand>().unwrap(), Estimand::SqueezePhase);
        assert!("x".parse::<Estimand>().is_err());
        for e in Estimand::ALL {
            assert_eq!(e.label().parse::<Estimand>().unwrap(), e);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn qfi_nonnegative_and_periodic(temp in 0.05..3.0f64, t in 0.0..10.0f64, r in 0.0..1.5f64,
                                       theta in 0.0..TAU, si in 0usize..3, ei in 0usize..3,
                                       alpha in 0.0..=PI) {
            let qc = QuadratureConfig::default();
            let estimand = Estimand::ALL[ei];
            let s = [0.5, 1.0, 3.0][si];
            let a = point_of(&inputs(estimand, temp, t, r, theta, s, alpha), &qc);
            let b = point_of(&inputs(estimand, temp, t, r, theta + TAU, s, alpha), &qc);
            prop_assert!(a.qfi >= 0.0 && a.cfi_term >= 0.0 && a.quantum_term >= 0.0);
            prop_assert!((a.qfi - b.qfi).abs() <= 1e-8 * a.qfi.max(1.0));
        }
    }
}
