//! Parameterised families of the literal channel-acted matrix.
//!
//! Binds the state construction and the channel coefficients into the
//! [`ParamFamily`] shape the QFI engine consumes: one of the two state
//! angles varies, everything else is frozen.

use crate::blackhole::{DilatedState, ModeSpec};
use crate::channels::{literal_rho, LiteralCoeffs};
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::qfi::{ParamFamily, ParamLabel};

/// Frozen description of a literal channel-acted family.
#[derive(Debug, Clone, Copy)]
pub struct LiteralFamilySpec {
    pub theta: f64,
    pub phi: f64,
    pub omega: f64,
    pub hawking_temp: f64,
    pub coeffs: LiteralCoeffs,
}

impl LiteralFamilySpec {
    /// Evaluate the literal matrix at explicit angles.
    pub fn rho_at(&self, theta: f64, phi: f64) -> Result<ComplexMatrix> {
        let mode = ModeSpec::new(self.omega, self.hawking_temp)?;
        let state = DilatedState::from_angles(theta, phi, &mode);
        literal_rho(&state, &self.coeffs)
    }

    /// Family varying the chosen angle, with the other frozen.
    pub fn family(&self, vary: ParamLabel) -> ParamFamily {
        let spec = *self;
        let context = vec![
            ("theta".to_string(), self.theta),
            ("phi".to_string(), self.phi),
            ("omega".to_string(), self.omega),
            ("T_H".to_string(), self.hawking_temp),
            ("lambda".to_string(), self.coeffs.lambda),
            ("mu".to_string(), self.coeffs.mu),
            ("Q".to_string(), self.coeffs.q),
            ("Phi".to_string(), self.coeffs.squeezing_angle),
        ];
        match vary {
            ParamLabel::Theta => ParamFamily::new(vary, context, move |t| {
                spec.rho_at(t, spec.phi)
            }),
            ParamLabel::Phi => ParamFamily::new(vary, context, move |p| {
                spec.rho_at(spec.theta, p)
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfi::{qfi_sld, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS};
    use std::f64::consts::PI;

    #[test]
    fn identity_channel_phi_family_reproduces_frozen_point() {
        // λ=0, Q=1, θ=π/4, ω/T_H=1: the value pinned by an independent
        // SLD hand-derivation before the build.
        let spec = LiteralFamilySpec {
            theta: PI / 4.0,
            phi: 0.0,
            omega: 1.0,
            hawking_temp: 1.0,
            coeffs: LiteralCoeffs::new(0.0, 0.0, 1.0, 0.0).unwrap(),
        };
        let fam = spec.family(ParamLabel::Phi);
        let r = qfi_sld(&fam, 0.0, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
        assert!((r.value - 0.8446375965030364).abs() < 1e-9);
    }

    #[test]
    fn theta_family_is_smooth_through_zero() {
        let spec = LiteralFamilySpec {
            theta: 0.0,
            phi: 0.3,
            omega: 1.0,
            hawking_temp: 0.9,
            coeffs: LiteralCoeffs::new(0.2, 0.1, 0.8, 0.0).unwrap(),
        };
        let fam = spec.family(ParamLabel::Theta);
        // Evaluations straddling θ=0 must agree with direct trig values.
        let below = fam.eval(-1e-3).unwrap();
        let above = fam.eval(1e-3).unwrap();
        assert!((below.get(0, 7) + above.get(0, 7)).norm() < 1e-9);
        let r = qfi_sld(&fam, 0.0, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
        assert!(r.value.is_finite());
    }
}
