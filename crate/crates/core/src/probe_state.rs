//! Reduced density matrix of the dephased probe qubit and its spectrum.
//!
//! The probe starts in cos(α/2)|0⟩ + sin(α/2)|1⟩. Pure dephasing leaves the
//! populations alone and multiplies the coherence by e^(−Γ).

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Initial superposition angle α ∈ [0, π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeInit {
    alpha: f64,
}

impl ProbeInit {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&alpha) {
            return Err(Error::domain(format!("alpha must lie in [0, pi], got {alpha}")));
        }
        Ok(Self { alpha })
    }

    /// The equatorial state |+⟩.
    pub fn equatorial() -> Self {
        Self { alpha: FRAC_PI_2 }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// The α that maximizes the QFI for every estimand.
pub fn optimal_alpha() -> f64 {
    FRAC_PI_2
}

/// 2×2 density matrix in the computational basis {|0⟩, |1⟩}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensityMatrix {
    entries: [[Complex64; 2]; 2],
}

impl QubitDensityMatrix {
    pub fn from_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn determinant(&self) -> Complex64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    /// tr(ρ²).
    pub fn purity(&self) -> f64 {
        let e = &self.entries;
        (e[0][0] * e[0][0] + e[0][1] * e[1][0] * 2.0 + e[1][1] * e[1][1]).re
    }

    /// Hermiticity, unit trace and positivity, each within `tol`.
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        let e = &self.entries;
        if (e[0][1] - e[1][0].conj()).norm() > tol || e[0][0].im.abs() > tol || e[1][1].im.abs() > tol {
            return Err(Error::Degenerate("density matrix is not Hermitian".into()));
        }
        if (self.trace() - 1.0).norm() > tol {
            return Err(Error::Degenerate(format!(
                "density matrix trace {} differs from 1",
                self.trace()
            )));
        }
        if e[0][0].re < -tol || e[1][1].re < -tol || self.determinant().re < -tol {
            return Err(Error::Degenerate("density matrix is not positive semidefinite".into()));
        }
        Ok(())
    }
}

/// Eigenvalues λ₊ ≥ λ₋ and their normalized eigenvectors.
///
/// Eigenvectors follow the phase convention that the first nonzero
/// component is real and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub vec_plus: [Complex64; 2],
    pub vec_minus: [Complex64; 2],
}

impl EigenSystem {
    pub fn values(&self) -> [f64; 2] {
        [self.lambda_plus, self.lambda_minus]
    }

    pub fn vectors(&self) -> [[Complex64; 2]; 2] {
        [self.vec_plus, self.vec_minus]
    }
}

/// ρ(α, Γ): populations cos²(α/2), sin²(α/2); coherence sin(α/2)cos(α/2)·e^(−Γ).
pub fn reduced_dm(init: &ProbeInit, gamma_value: f64) -> Result<QubitDensityMatrix> {
    if !(gamma_value >= 0.0) {
        return Err(Error::domain(format!(
            "decoherence exponent must be >= 0, got {gamma_value}"
        )));
    }
    let (s, c) = (0.5 * init.alpha).sin_cos();
    let coherence = Complex64::new(s * c * (-gamma_value).exp(), 0.0);
    Ok(QubitDensityMatrix {
        entries: [
            [Complex64::new(c * c, 0.0), coherence],
            [coherence, Complex64::new(s * s, 0.0)],
        ],
    })
}

fn gauge_fix(v: [Complex64; 2]) -> [Complex64; 2] {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let lead = if v[0].norm() > 0.0 { v[0] } else { v[1] };
    if norm == 0.0 || lead.norm() == 0.0 {
        return v;
    }
    let phase = lead.conj() / lead.norm();
    [v[0] * phase / norm, v[1] * phase / norm]
}

/// Closed-form spectrum of ρ(α, Γ).
///
/// λ± = ½[1 ± e^(−Γ)χ] with χ = sqrt(e^(2Γ)cos²α + sin²α); the eigenvectors
/// are ∝ [e^Γ cot α ± χ csc α]|0⟩ + |1⟩, evaluated here in the rescaled form
/// (cos α ± κ, sin α·e^(−Γ)), κ = e^(−Γ)χ, which avoids overflow.
pub fn eigensystem(dm: &QubitDensityMatrix, init: &ProbeInit, gamma_value: f64) -> Result<EigenSystem> {
    dm.check_invariants(1e-10)?;
    if !(gamma_value >= 0.0) {
        return Err(Error::domain(format!(
            "decoherence exponent must be >= 0, got {gamma_value}"
        )));
    }
    let (sin_a, mut cos_a) = init.alpha.sin_cos();
    if (init.alpha - FRAC_PI_2).abs() <= 4.0 * f64::EPSILON {
        // cos(π/2) rounds to 6e-17, which would tilt the basis once e^(−Γ) is that small
        cos_a = 0.0;
    }
    let decay = (-gamma_value).exp();
    // 1 − e^(−2Γ), accurate for small Γ
    let loss = -(-2.0 * gamma_value).exp_m1();
    let sin2 = sin_a * sin_a;
    let kappa = (cos_a * cos_a + sin2 * decay * decay).sqrt();

    // 1 − κ = sin²α (1 − e^(−2Γ)) / (1 + κ)
    let lambda_minus = 0.5 * sin2 * loss / (1.0 + kappa);
    let lambda_plus = 1.0 - lambda_minus;

    let (vec_plus, vec_minus) = if sin_a == 0.0 {
        // α ∈ {0, π}: diagonal state
        let e0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e1 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        if cos_a > 0.0 {
            (e0, e1)
        } else {
            (e1, e0)
        }
    } else if kappa == 0.0 {
        // e^(−Γ) underflowed at α = π/2: fully mixed, any basis will do
        limit_basis()
    } else {
        // (cos α ± κ, sin α e^(−Γ)); the side that cancels is rescaled by e^Γ
        // using cos²α − κ² = −sin²α e^(−2Γ)
        let real = |x: f64, y: f64| gauge_fix([Complex64::new(x, 0.0), Complex64::new(y, 0.0)]);
        if cos_a >= 0.0 {
            (
                real(cos_a + kappa, sin_a * decay),
                real(-sin2 * decay / (cos_a + kappa), sin_a),
            )
        } else {
            (
                real(sin2 * decay / (kappa - cos_a), sin_a),
                real(cos_a - kappa, sin_a * decay),
            )
        }
    };

    Ok(EigenSystem {
        lambda_plus,
        lambda_minus,
        vec_plus,
        vec_minus,
    })
}

fn limit_basis() -> ([Complex64; 2], [Complex64; 2]) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    (
        [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
    )
}

/// Direct eigendecomposition of a 2×2 Hermitian matrix, independent of the
/// closed forms above.
pub fn numeric_eigensystem(dm: &QubitDensityMatrix) -> EigenSystem {
    let a = dm.entries[0][0].re;
    let d = dm.entries[1][1].re;
    let b = dm.entries[0][1];
    let mean = 0.5 * (a + d);
    let half_gap = (0.5 * (a - d)).hypot(b.norm());
    let lambda_plus = mean + half_gap;
    let det = a * d - b.norm_sqr();
    let lambda_minus = if lambda_plus.abs() > 0.0 {
        det / lambda_plus
    } else {
        mean - half_gap
    };

    let vector_for = |lambda: f64| {
        // rows of (ρ − λ) give (b, λ − a) and (λ − d, b*) as null vectors
        let v1 = [b, Complex64::new(lambda - a, 0.0)];
        let v2 = [Complex64::new(lambda - d, 0.0), b.conj()];
        let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
        let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
        if n1 >= n2 {
            v1
        } else {
            v2
        }
    };

    let (vec_plus, vec_minus) = if half_gap == 0.0 {
        let e0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e1 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        (e0, e1)
    } else {
        (gauge_fix(vector_for(lambda_plus)), gauge_fix(vector_for(lambda_minus)))
    };

    EigenSystem {
        lambda_plus,
        lambda_minus,
        vec_plus,
        vec_minus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn init(alpha: f64) -> ProbeInit {
        ProbeInit::new(alpha).unwrap()
    }

    fn vec_close(a: [Complex64; 2], b: [Complex64; 2], tol: f64) -> bool {
        (a[0] - b[0]).norm() <= tol && (a[1] - b[1]).norm() <= tol
    }

    fn assert_eigen_agree(alpha: f64, gamma: f64, tol: f64) {
        let p = init(alpha);
        let dm = reduced_dm(&p, gamma).unwrap();
        let closed = eigensystem(&dm, &p, gamma).unwrap();
        let numeric = numeric_eigensystem(&dm);
        assert!(
            (closed.lambda_plus - numeric.lambda_plus).abs() <= tol,
            "α={alpha} Γ={gamma}"
        );
        assert!(
            (closed.lambda_minus - numeric.lambda_minus).abs() <= tol,
            "α={alpha} Γ={gamma}"
        );
        // degenerate spectrum leaves the basis undetermined
        if closed.lambda_plus - closed.lambda_minus > 1e-6 {
            assert!(
                vec_close(closed.vec_plus, numeric.vec_plus, 1e-8),
                "α={alpha} Γ={gamma}"
            );
            assert!(
                vec_close(closed.vec_minus, numeric.vec_minus, 1e-8),
                "α={alpha} Γ={gamma}"
            );
        }
    }

    #[test]
    fn equatorial_pure_state() {
        let dm = reduced_dm(&ProbeInit::equatorial(), 0.0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(dm.entry(i, j).re, 0.5, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn equatorial_fully_dephased() {
        let dm = reduced_dm(&ProbeInit::equatorial(), 800.0).unwrap();
        assert_relative_eq!(dm.entry(0, 0).re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(dm.entry(1, 1).re, 0.5, epsilon = 1e-15);
        assert_eq!(dm.entry(0, 1).norm(), 0.0);
        let es = eigensystem(&dm, &ProbeInit::equatorial(), 800.0).unwrap();
        assert_relative_eq!(es.lambda_plus, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn pointer_state_is_decoherence_free() {
        for gamma in [0.0, 0.7, 20.0] {
            let dm = reduced_dm(&init(0.0), gamma).unwrap();
            assert_eq!(dm.entry(0, 0).re, 1.0);
            assert_eq!(dm.entry(1, 1).re, 0.0);
            assert_eq!(dm.entry(0, 1).norm(), 0.0);
            let es = eigensystem(&dm, &init(0.0), gamma).unwrap();
            assert_eq!(es.values(), [1.0, 0.0]);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(reduced_dm(&ProbeInit::equatorial(), -0.1).is_err());
        assert!(ProbeInit::new(-0.01).is_err());
        assert!(ProbeInit::new(3.2).is_err());
    }

    #[test]
    fn equatorial_eigenvalues() {
        for gamma in [0.0, 0.1, 1.0, 3.0] {
            let dm = reduced_dm(&ProbeInit::equatorial(), gamma).unwrap();
            let es = eigensystem(&dm, &ProbeInit::equatorial(), gamma).unwrap();
            let decay = (-gamma).exp();
            assert_relative_eq!(es.lambda_plus, 0.5 * (1.0 + decay), epsilon = 1e-15);
            assert_relative_eq!(es.lambda_minus, 0.5 * (1.0 - decay), epsilon = 1e-15);
        }
    }

    #[test]
    fn pure_state_spectrum() {
        for alpha in [0.0, 0.3, FRAC_PI_2, 2.5, PI] {
            let dm = reduced_dm(&init(alpha), 0.0).unwrap();
            let es = eigensystem(&dm, &init(alpha), 0.0).unwrap();
            assert_relative_eq!(es.lambda_plus, 1.0, epsilon = 1e-15);
            assert!(es.lambda_minus.abs() <= 1e-15);
        }
    }

    #[test]
    fn closed_form_matches_numeric_quarter_angle() {
        assert_eigen_agree(FRAC_PI_4, 0.5, 1e-10);
    }

    #[test]
    fn closed_form_matches_numeric_on_grid() {
        for i in 0..10 {
            for j in 0..10 {
                let alpha = PI * i as f64 / 9.0;
                let gamma = 3.0 * j as f64 / 9.0;
                assert_eigen_agree(alpha, gamma, 1e-10);
            }
        }
    }

    #[test]
    fn equatorial_eigenvectors_are_gamma_invariant() {
        let expected_plus = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0)];
        let expected_minus = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(-FRAC_1_SQRT_2, 0.0)];
        for gamma in [1e-9, 0.01, 0.5, 2.0, 10.0, 50.0] {
            let p = ProbeInit::equatorial();
            let es = eigensystem(&reduced_dm(&p, gamma).unwrap(), &p, gamma).unwrap();
            assert!(vec_close(es.vec_plus, expected_plus, 1e-12), "Γ={gamma}");
            assert!(vec_close(es.vec_minus, expected_minus, 1e-12), "Γ={gamma}");
        }
    }

    #[test]
    fn purity_decreases_with_gamma() {
        for alpha in [0.2, 1.0, FRAC_PI_2, 2.9] {
            let mut last = f64::INFINITY;
            for k in 0..50 {
                let gamma = 0.1 * k as f64;
                let dm = reduced_dm(&init(alpha), gamma).unwrap();
                let es = eigensystem(&dm, &init(alpha), gamma).unwrap();
                let purity = es.lambda_plus.powi(2) + es.lambda_minus.powi(2);
                assert_relative_eq!(purity, dm.purity(), epsilon = 1e-12);
                assert!(purity <= last + 1e-15);
                last = purity;
            }
        }
    }

    #[test]
    fn optimal_alpha_is_equatorial() {
        assert_eq!(optimal_alpha(), FRAC_PI_2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn density_matrix_invariants(alpha in 0.0..=PI, gamma in 0.0..50.0f64) {
            let dm = reduced_dm(&init(alpha), gamma).unwrap();
            prop_assert!(dm.check_invariants(1e-12).is_ok());
            prop_assert!((dm.trace().re - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn eigen_closed_form_vs_numeric(alpha in 0.0..=PI, gamma in 0.0..20.0f64) {
            let p = init(alpha);
            let dm = reduced_dm(&p, gamma).unwrap();
            let closed = eigensystem(&dm, &p, gamma).unwrap();
            let numeric = numeric_eigensystem(&dm);
            prop_assert!((closed.lambda_plus - numeric.lambda_plus).abs() <= 1e-10);
            prop_assert!((closed.lambda_minus - numeric.lambda_minus).abs() <= 1e-10);
            prop_assert!((closed.lambda_plus + closed.lambda_minus - 1.0).abs() <= 1e-12);
            let [vp, vm] = closed.vectors();
            let overlap = vp[0].conj() * vm[0] + vp[1].conj() * vm[1];
            prop_assert!(overlap.norm() <= 1e-10);
            prop_assert!(((vp[0].norm_sqr() + vp[1].norm_sqr()) - 1.0).abs() <= 1e-10);
        }
    }
}
