//! Tripartite entangled state with one mode behind a Schwarzschild horizon.
//!
//! The initial resource is the GHZ-like state
//! `cosθ|000⟩ + sinθ·e^{iφ}|111⟩` shared between observers a, b, c. Mode c
//! is expressed in the horizon-regular (Kruskal) vacuum, which splits it
//! across the exterior mode c1 and the causally disconnected interior mode
//! c2 with thermal coefficients set by the Hawking temperature. Tracing out
//! c2 yields the accessible three-qubit density matrix.
//!
//! Natural units throughout: ħ = k_B = c = G = 1.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Exponent beyond which the thermal factors are frozen to their limit so
/// sweeps stay continuous instead of overflowing.
pub const FROZEN_VACUUM_EXPONENT: f64 = 700.0;

/// Weight and phase of the initial entangled state.
///
/// Inputs outside θ ∈ [0, π], φ ∈ [0, 2π) are reduced by the exact state
/// symmetry (θ, φ) → (2π − θ, φ + π), which leaves every amplitude
/// unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    pub theta: f64,
    pub phi: f64,
}

impl StateParams {
    pub fn new(theta: f64, phi: f64) -> Self {
        let two_pi = 2.0 * PI;
        let mut theta = theta.rem_euclid(two_pi);
        let mut phi = phi;
        if theta > PI {
            theta = two_pi - theta;
            phi += PI;
        }
        let phi = phi.rem_euclid(two_pi);
        Self { theta, phi }
    }
}

/// Field mode and the Hawking temperature it sees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    pub omega: f64,
    pub hawking_temp: f64,
}

impl ModeSpec {
    /// Both the frequency and the temperature must be strictly positive;
    /// the T → 0 limit is reached through `frequency/temperature` large,
    /// not by passing zero.
    pub fn new(omega: f64, hawking_temp: f64) -> Result<Self> {
        if omega <= 0.0 || !omega.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "omega",
                value: omega,
            });
        }
        if hawking_temp <= 0.0 || !hawking_temp.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "hawking_temp",
                value: hawking_temp,
            });
        }
        Ok(Self {
            omega,
            hawking_temp,
        })
    }
}

/// Hawking temperature of a Schwarzschild black hole, T = 1/(8πM).
pub fn hawking_temperature(mass: f64) -> Result<f64> {
    if mass <= 0.0 || !mass.is_finite() {
        return Err(Error::NonPositiveMass(mass));
    }
    Ok(1.0 / (8.0 * PI * mass))
}

/// Thermal split of the Kruskal vacuum over the exterior/interior modes:
/// `c0 = (e^{-ω/T}+1)^{-1/2}`, `c1 = (e^{ω/T}+1)^{-1/2}`.
///
/// Satisfies c0² + c1² = 1. For ω/T beyond [`FROZEN_VACUUM_EXPONENT`] the
/// exact limit (1, 0) is returned.
pub fn kruskal_coefficients(mode: &ModeSpec) -> (f64, f64) {
    let x = mode.omega / mode.hawking_temp;
    if x > FROZEN_VACUUM_EXPONENT {
        return (1.0, 0.0);
    }
    let c0 = 1.0 / ((-x).exp() + 1.0).sqrt();
    let c1 = 1.0 / (x.exp() + 1.0).sqrt();
    (c0, c1)
}

/// Pure four-qubit state after dilating mode c into (c1, c2).
///
/// Exactly three amplitudes are nonzero:
/// `A = sinθ·e^{iφ}` on |0000⟩, `B = cosθ·c0` on |1110⟩ and
/// `F = cosθ·c1` on |0011⟩, with |A|² + B² + F² = 1.
#[derive(Debug, Clone)]
pub struct DilatedState {
    pub coeff_a: Complex64,
    pub coeff_b: f64,
    pub coeff_f: f64,
}

/// Basis index of |0000⟩ (qubit order a b c1 c2, a most significant).
pub const IDX_0000: usize = 0b0000;
/// Basis index of |1110⟩.
pub const IDX_1110: usize = 0b1110;
/// Basis index of |0011⟩.
pub const IDX_0011: usize = 0b0011;

impl DilatedState {
    pub fn build(sp: &StateParams, mode: &ModeSpec) -> Self {
        let (c0, c1) = kruskal_coefficients(mode);
        let (sin_t, cos_t) = sp.theta.sin_cos();
        Self {
            coeff_a: Complex64::from_polar(sin_t, sp.phi),
            coeff_b: cos_t * c0,
            coeff_f: cos_t * c1,
        }
    }

    /// Raw coefficients without angle canonicalisation, for smooth
    /// parameter sweeps through θ = 0.
    pub fn from_angles(theta: f64, phi: f64, mode: &ModeSpec) -> Self {
        let (c0, c1) = kruskal_coefficients(mode);
        let (sin_t, cos_t) = theta.sin_cos();
        Self {
            coeff_a: Complex64::from_polar(sin_t, phi),
            coeff_b: cos_t * c0,
            coeff_f: cos_t * c1,
        }
    }

    /// The 16 amplitudes over |a b c1 c2⟩.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 16];
        amps[IDX_0000] = self.coeff_a;
        amps[IDX_1110] = Complex64::new(self.coeff_b, 0.0);
        amps[IDX_0011] = Complex64::new(self.coeff_f, 0.0);
        amps
    }

    /// |χ'⟩⟨χ'| as a 16×16 projector.
    pub fn projector(&self) -> ComplexMatrix {
        let amps = self.amplitudes();
        let mut rho = ComplexMatrix::zeros(16, 16);
        for (i, ai) in amps.iter().enumerate() {
            for (j, aj) in amps.iter().enumerate() {
                rho.set(i, j, ai * aj.conj());
            }
        }
        rho
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeff_a.norm_sqr() + self.coeff_b * self.coeff_b + self.coeff_f * self.coeff_f
    }

    /// Accessible density matrix ρ_abc1 after tracing out the interior
    /// mode c2: |A|² on |000⟩⟨000|, B² on |111⟩⟨111|, F² on |001⟩⟨001|,
    /// and the coherence A·B on |000⟩⟨111| with its conjugate below the
    /// diagonal (B real). Hermitian, PSD, unit trace.
    pub fn accessible_density_matrix(&self) -> ComplexMatrix {
        let mut rho = ComplexMatrix::zeros(8, 8);
        let a = self.coeff_a;
        let b = self.coeff_b;
        let f = self.coeff_f;
        rho.set(0, 0, Complex64::new(a.norm_sqr(), 0.0));
        rho.set(7, 7, Complex64::new(b * b, 0.0));
        rho.set(1, 1, Complex64::new(f * f, 0.0));
        rho.set(0, 7, a * b);
        rho.set(7, 0, a.conj() * b);
        rho
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, partial_trace};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn hawking_temperature_inverts_mass() {
        assert!((hawking_temperature(1.0 / (8.0 * PI)).unwrap() - 1.0).abs() < 1e-15);
        // Direct evaluation of 1/(8π).
        assert!((hawking_temperature(1.0).unwrap() - 0.039788735772973836).abs() < 1e-15);
        assert!(hawking_temperature(0.0).is_err());
        assert!(hawking_temperature(-2.0).is_err());
    }

    #[test]
    fn hawking_temperature_decreases_with_mass() {
        let mut prev = f64::INFINITY;
        for k in 1..50 {
            let t = hawking_temperature(k as f64 * 0.5).unwrap();
            assert!(t < prev);
            prev = t;
        }
    }

    #[test]
    fn kruskal_limits() {
        // Frozen vacuum at large ω/T.
        let cold = ModeSpec::new(1.0, 1e-3).unwrap();
        assert_eq!(kruskal_coefficients(&cold), (1.0, 0.0));
        // Maximal mixing at small ω/T.
        let hot = ModeSpec::new(1e-9, 1.0).unwrap();
        let (c0, c1) = kruskal_coefficients(&hot);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((c0 - inv_sqrt2).abs() < 1e-9);
        assert!((c1 - inv_sqrt2).abs() < 1e-9);
    }

    #[test]
    fn kruskal_at_unit_ratio() {
        // (e^{-1}+1)^{-1/2} and (e+1)^{-1/2}, evaluated independently.
        let mode = ModeSpec::new(1.0, 1.0).unwrap();
        let (c0, c1) = kruskal_coefficients(&mode);
        assert!((c0 - 0.8550196364002437).abs() < 1e-14);
        assert!((c1 - 0.5185956241330958).abs() < 1e-14);
        assert!((c0 * c0 + c1 * c1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mode_spec_rejects_nonpositive() {
        assert!(ModeSpec::new(0.0, 1.0).is_err());
        assert!(ModeSpec::new(1.0, 0.0).is_err());
        assert!(ModeSpec::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn state_params_reduction_is_exact_symmetry() {
        let mode = ModeSpec::new(1.0, 1.0).unwrap();
        let raw = DilatedState::from_angles(-0.3, 0.7, &mode);
        let canon = StateParams::new(-0.3, 0.7);
        let red = DilatedState::build(&canon, &mode);
        assert!((raw.coeff_a - red.coeff_a).norm() < 1e-12);
        assert!((raw.coeff_b - red.coeff_b).abs() < 1e-12);
        assert!((raw.coeff_f - red.coeff_f).abs() < 1e-12);
        assert!(canon.theta >= 0.0 && canon.theta <= PI);
        assert!(canon.phi >= 0.0 && canon.phi < 2.0 * PI);
    }

    #[test]
    fn dilated_state_at_theta_zero() {
        let mode = ModeSpec::new(1.0, 1.0).unwrap();
        let (c0, c1) = kruskal_coefficients(&mode);
        let st = DilatedState::build(&StateParams::new(0.0, 0.3), &mode);
        assert!(st.coeff_a.norm() < 1e-15);
        assert!((st.coeff_b - c0).abs() < 1e-15);
        assert!((st.coeff_f - c1).abs() < 1e-15);
    }

    #[test]
    fn dilated_state_at_theta_half_pi() {
        let mode = ModeSpec::new(1.0, 1.0).unwrap();
        let st = DilatedState::build(&StateParams::new(PI / 2.0, 0.9), &mode);
        assert!((st.coeff_a - Complex64::from_polar(1.0, 0.9)).norm() < 1e-15);
        assert!(st.coeff_b.abs() < 1e-15);
        assert!(st.coeff_f.abs() < 1e-15);
    }

    #[test]
    fn dilated_state_frozen_values() {
        // θ=π/4, φ=0, ω=T=1, evaluated independently from the kruskal
        // coefficients above.
        let mode = ModeSpec::new(1.0, 1.0).unwrap();
        let st = DilatedState::build(&StateParams::new(PI / 4.0, 0.0), &mode);
        assert!((st.coeff_a.re - 0.7071067811865475).abs() < 1e-14);
        assert!(st.coeff_a.im.abs() < 1e-15);
        assert!((st.coeff_b - 0.6045901829462685).abs() < 1e-14);
        assert!((st.coeff_f - 0.36670248251818205).abs() < 1e-14);
        assert!((st.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn accessible_matrix_is_pure_at_half_pi() {
        let mode = ModeSpec::new(1.0, 1.0).unwrap();
        let st = DilatedState::build(&StateParams::new(PI / 2.0, 0.0), &mode);
        let rho = st.accessible_density_matrix();
        assert!((rho.get(0, 0).re - 1.0).abs() < 1e-14);
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn accessible_matrix_ghz_limit() {
        // ω/T large: c1 → 0, θ=π/4 gives the rank-1 GHZ-like projector.
        let mode = ModeSpec::new(1.0, 1e-4).unwrap();
        let st = DilatedState::build(&StateParams::new(PI / 4.0, 0.0), &mode);
        let rho = st.accessible_density_matrix();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((st.coeff_a.re - h).abs() < 1e-12);
        assert!((st.coeff_b - h).abs() < 1e-12);
        assert!(st.coeff_f.abs() < 1e-12);
        assert!((rho.get(0, 7).re - 0.5).abs() < 1e-12);
        let es = eig_hermitian(&rho).unwrap();
        assert!((es.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!(es.eigenvalues[1].abs() < 1e-12);
    }

    #[test]
    fn accessible_matrix_equals_partial_trace_oracle() {
        // Direct construction against the 4-qubit projector traced over c2,
        // on a 20-point random parameter grid.
        let mut rng = StdRng::seed_from_u64(404);
        for _ in 0..20 {
            let theta = rng.gen_range(0.0..PI);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let omega = rng.gen_range(0.2..3.0);
            let temp = rng.gen_range(0.2..4.0);
            let mode = ModeSpec::new(omega, temp).unwrap();
            let st = DilatedState::build(&StateParams::new(theta, phi), &mode);
            let direct = st.accessible_density_matrix();
            let traced = partial_trace(&st.projector(), 4, &[3]).unwrap();
            assert!(direct.max_diff(&traced) < 1e-12);
            assert!((direct.trace().re - 1.0).abs() < 1e-12);
            assert!(direct.is_hermitian(1e-12));
        }
    }

    #[test]
    fn accessible_spectrum_is_block_rank_one_plus_isolated() {
        let mode = ModeSpec::new(1.3, 0.8).unwrap();
        let st = DilatedState::build(&StateParams::new(0.6, 1.1), &mode);
        let rho = st.accessible_density_matrix();
        let es = eig_hermitian(&rho).unwrap();
        let a2 = st.coeff_a.norm_sqr();
        let b2 = st.coeff_b * st.coeff_b;
        let f2 = st.coeff_f * st.coeff_f;
        let mut expect = vec![a2 + b2, f2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        expect.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (got, want) in es.eigenvalues.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn phase_only_enters_coherence() {
        let mode = ModeSpec::new(1.0, 1.0).unwrap();
        let r1 = DilatedState::build(&StateParams::new(0.7, 0.4), &mode)
            .accessible_density_matrix();
        let r2 = DilatedState::build(&StateParams::new(0.7, 2.9), &mode)
            .accessible_density_matrix();
        for i in 0..8 {
            for j in 0..8 {
                assert!((r1.get(i, j).norm() - r2.get(i, j).norm()).abs() < 1e-14);
            }
        }
        assert!((r1.get(0, 7) - r2.get(0, 7)).norm() > 1e-3);
    }
}
