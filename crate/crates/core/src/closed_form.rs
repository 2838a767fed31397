//! Closed-form QFI expressions, evaluated exactly as printed.
//!
//! These are the analytic counterparts of the numeric engine for the three
//! channel families, as functions of the state angles, the Hawking ratio
//! x = ω/T_H, and the channel coefficients (λ, μ, Q, Φ). They are evaluated
//! term by term in a numerically stable regrouping (dividing the thermal
//! fractions through by e^x so x = +∞ is an exact limit, not an overflow).
//!
//! The expressions are taken as given and cross-checked against the numeric
//! engine by the verification harness; where they disagree the harness
//! reports the deviation, this module does not correct them.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Inputs for the closed forms. The channel coefficients are taken
/// directly; binding them from bath parameters (r, γ₀, ω, T_C) is the
/// caller's job.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormInput {
    pub theta: f64,
    pub phi: f64,
    /// ω/T_H; `f64::INFINITY` selects the frozen-vacuum limit.
    pub w_over_t: f64,
    pub lambda: f64,
    pub mu: f64,
    pub q: f64,
    /// Squeezing angle Φ.
    pub squeezing_angle: f64,
}

impl ClosedFormInput {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("lambda", self.lambda), ("mu", self.mu), ("Q", self.q)] {
            if !(0.0..=1.0).contains(&value) || !value.is_finite() {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    lo: 0.0,
                    hi: 1.0,
                });
            }
        }
        if self.w_over_t <= 0.0 || self.w_over_t.is_nan() {
            return Err(Error::NonPositiveParameter {
                name: "w_over_t",
                value: self.w_over_t,
            });
        }
        Ok(())
    }
}

/// Grouping variant for the θ-QFI of the squeezed channel, whose printed
/// layout leaves the second summand's denominator ambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaSgadVariant {
    /// Denominator read as λ̄²sin²θ + cos²θ·c0²; the grouping with a finite
    /// θ → 0 limit, parallel to the other two channels. Default.
    Regrouped,
    /// Literal line-broken reading: the fraction is divided by λ̄²sin²θ
    /// alone and cos²θ·c0² rides as a bare summand.
    Printed,
}

impl std::fmt::Display for ThetaSgadVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaSgadVariant::Regrouped => write!(f, "regrouped"),
            ThetaSgadVariant::Printed => write!(f, "printed"),
        }
    }
}

/// Exterior thermal weight c0² = 1/(e^{−x}+1) = e^x/(e^x+1).
fn k0_sq(x: f64) -> f64 {
    if x == f64::INFINITY {
        1.0
    } else {
        1.0 / ((-x).exp() + 1.0)
    }
}

/// Interior thermal weight c1² = 1/(e^x+1).
fn k1_sq(x: f64) -> f64 {
    if x == f64::INFINITY {
        0.0
    } else {
        1.0 / (x.exp() + 1.0)
    }
}

/// num/den with the removable 0/0 points sent to zero; a vanishing
/// denominator against a finite numerator is a genuine domain error.
fn ratio(num: f64, den: f64, term: &'static str) -> Result<f64> {
    if den == 0.0 {
        if num == 0.0 {
            Ok(0.0)
        } else {
            Err(Error::ParamDomain {
                term,
                detail: format!("denominator vanished against numerator {num:.3e}"),
            })
        }
    } else {
        Ok(num / den)
    }
}

/// θ-QFI for the amplitude damping channel: three summands, with λ̄ = 1−λ.
pub fn theta_ad(input: &ClosedFormInput) -> Result<f64> {
    input.validate()?;
    let lam = input.lambda;
    let lam_bar = 1.0 - lam;
    let x = input.w_over_t;
    let (s, c) = input.theta.sin_cos();
    let (s2, c2, sc) = (s * s, c * c, s * c);
    let (k0, k1) = (k0_sq(x), k1_sq(x));

    if s == 0.0 {
        // θ → 0 limit: only the first summand survives.
        return Ok(4.0 * lam_bar * lam_bar);
    }

    let s1 = ratio(
        4.0 * lam_bar * lam_bar,
        lam_bar * lam_bar * s2 * (1.0 + safe_exp_neg(x)) + c2,
        "theta_ad summand 1",
    )?;
    let s2_term = ratio(
        (2.0 * lam_bar * lam_bar * sc - 2.0 * sc * k0).powi(2),
        lam_bar * lam_bar * s2 + c2 * k0,
        "theta_ad summand 2",
    )?;
    let s3_term = ratio(
        (2.0 * lam * lam * sc - 2.0 * sc * k1).powi(2),
        lam * lam * s2 + c2 * k1,
        "theta_ad summand 3",
    )?;
    Ok(s1 + s2_term + s3_term)
}

/// e^{−x} with the +∞ sentinel mapped to exactly zero.
fn safe_exp_neg(x: f64) -> f64 {
    if x == f64::INFINITY {
        0.0
    } else {
        (-x).exp()
    }
}

/// φ-QFI for the amplitude damping channel.
pub fn phi_ad(input: &ClosedFormInput) -> Result<f64> {
    input.validate()?;
    let lam_bar = 1.0 - input.lambda;
    let x = input.w_over_t;
    let (s, c) = input.theta.sin_cos();
    let sin_2t = (2.0 * input.theta).sin();
    let num = lam_bar * lam_bar * sin_2t * sin_2t;
    let den = lam_bar * lam_bar * s * s * (1.0 + safe_exp_neg(x)) + c * c;
    ratio(num, den, "phi_ad")
}

/// θ-QFI for the generalized amplitude damping channel: four summands.
pub fn theta_gad(input: &ClosedFormInput) -> Result<f64> {
    input.validate()?;
    let lam = input.lambda;
    let lam_bar = 1.0 - lam;
    let q = input.q;
    let x = input.w_over_t;
    let (s, c) = input.theta.sin_cos();
    let (s2, c2, sc) = (s * s, c * c, s * c);
    let (k0, k1) = (k0_sq(x), k1_sq(x));

    if s == 0.0 {
        return Ok(4.0 * lam_bar * lam_bar * q * q + 4.0 * lam * (1.0 - q) * q);
    }

    let g1 = ratio(
        q * q * (2.0 * lam * lam * sc - 2.0 * sc * k1).powi(2),
        lam * lam * s2 + c2 * k1,
        "theta_gad summand 1",
    )?;
    let g2 = ratio(
        4.0 * lam_bar * lam_bar * q * q,
        lam_bar * lam_bar * s2 * (1.0 + safe_exp_neg(x)) + c2,
        "theta_gad summand 2",
    )?;
    let g3 = ratio(
        q * q * (2.0 * lam_bar * lam_bar * sc - 2.0 * sc * k0).powi(2),
        lam_bar * lam_bar * s2 + c2 * k0,
        "theta_gad summand 3",
    )?;
    let g4 = 4.0 * lam * (1.0 - q) * q * c2;
    Ok(g1 + g2 + g3 + g4)
}

/// φ-QFI for the generalized amplitude damping channel. The printed
/// formula is identical to the squeezed-channel one; this alias keeps the
/// two citations distinct.
pub fn phi_gad(input: &ClosedFormInput) -> Result<f64> {
    phi_sgad(input)
}

/// φ-QFI for the squeezed generalized amplitude damping channel.
pub fn phi_sgad(input: &ClosedFormInput) -> Result<f64> {
    input.validate()?;
    let lam_bar = 1.0 - input.lambda;
    let q = input.q;
    let x = input.w_over_t;
    let (s, c) = input.theta.sin_cos();
    let num = 4.0 * lam_bar * lam_bar * q * q * s * s * c * c;
    let den = lam_bar * lam_bar * s * s * (1.0 + safe_exp_neg(x)) + c * c;
    ratio(num, den, "phi_sgad")
}

/// θ-QFI for the squeezed channel, default (regrouped) reading.
pub fn theta_sgad(input: &ClosedFormInput) -> Result<f64> {
    theta_sgad_variant(input, ThetaSgadVariant::Regrouped)
}

/// θ-QFI for the squeezed channel under an explicit grouping variant.
///
/// The final summand carries e^{2iΦ} inside both numerator and
/// denominator; for angles where that leaves an imaginary residue the
/// evaluation errors unless [`theta_sgad_variant_re`] is used.
pub fn theta_sgad_variant(input: &ClosedFormInput, variant: ThetaSgadVariant) -> Result<f64> {
    let value = theta_sgad_complex(input, variant)?;
    let scale = value.re.abs().max(1.0);
    if value.im.abs() > 1e-12 * scale {
        return Err(Error::ComplexClosedForm {
            big_phi: input.squeezing_angle,
            imag: value.im,
        });
    }
    Ok(value.re)
}

/// Real part of the squeezed-channel θ-QFI, for callers that explicitly
/// accept discarding the imaginary residue at generic squeezing angles.
pub fn theta_sgad_variant_re(input: &ClosedFormInput, variant: ThetaSgadVariant) -> Result<f64> {
    Ok(theta_sgad_complex(input, variant)?.re)
}

fn complex_ratio(num: Complex64, den: Complex64, term: &'static str) -> Result<Complex64> {
    if den == Complex64::new(0.0, 0.0) {
        if num == Complex64::new(0.0, 0.0) {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::ParamDomain {
                term,
                detail: format!("denominator vanished against numerator {num:.3e}"),
            })
        }
    } else {
        Ok(num / den)
    }
}

fn theta_sgad_complex(input: &ClosedFormInput, variant: ThetaSgadVariant) -> Result<Complex64> {
    input.validate()?;
    let lam = input.lambda;
    let lam_bar = 1.0 - lam;
    let mu = input.mu;
    let q = input.q;
    let q_bar = 1.0 - q;
    let x = input.w_over_t;
    let (s, c) = input.theta.sin_cos();
    let (s2, c2, sc) = (s * s, c * c, s * c);
    let (k0, k1) = (k0_sq(x), k1_sq(x));
    let phase = Complex64::from_polar(1.0, 2.0 * input.squeezing_angle);

    if s == 0.0 && variant == ThetaSgadVariant::Regrouped {
        // θ → 0 limit, independent of ω/T_H and Φ.
        let value = 4.0 * q * (lam_bar * lam_bar * q + lam * (1.0 - mu) * q_bar);
        return Ok(Complex64::new(value, 0.0));
    }

    let t1 = ratio(
        4.0 * lam_bar * lam_bar * q * q,
        lam_bar * lam_bar * s2 * (1.0 + safe_exp_neg(x)) + c2,
        "theta_sgad summand 1",
    )?;

    let t2_num = q * q * (2.0 * lam_bar * lam_bar * sc - 2.0 * sc * k0).powi(2);
    let (t2, bare) = match variant {
        ThetaSgadVariant::Regrouped => (
            ratio(t2_num, lam_bar * lam_bar * s2 + c2 * k0, "theta_sgad summand 2")?,
            0.0,
        ),
        ThetaSgadVariant::Printed => (
            ratio(t2_num, lam_bar * lam_bar * s2, "theta_sgad summand 2 (printed)")?,
            c2 * k0,
        ),
    };

    let t3 = 4.0 * lam * (1.0 - mu) * q_bar * q * c2;

    let inner = phase * (2.0 * lam * mu * q_bar * sc)
        + Complex64::new(q * (2.0 * lam * lam * sc - 2.0 * sc * k1), 0.0);
    let t4_num = inner * inner * q;
    let t4_den =
        phase * (lam * mu * q_bar * s2) + Complex64::new(q * (lam * lam * s2 + c2 * k1), 0.0);
    let t4 = complex_ratio(t4_num, t4_den, "theta_sgad summand 4")?;

    Ok(Complex64::new(t1 + t2 + bare + t3, 0.0) + t4)
}

/// The three nonzero eigenvalues of the literal channel-acted matrix, as
/// printed:
///
/// ```text
/// e1 = Q(B²λμ·e^{2iΦ}·Q̄ + Q(B²λ² + F²))
/// e2 = Q²(B²λ̄² + A²)
/// e3 = B²λQ·μ̄·Q̄
/// ```
///
/// A real output requires e^{2iΦ} real; other angles error.
pub fn eigenvalue_triple(
    lambda: f64,
    mu: f64,
    q: f64,
    squeezing_angle: f64,
    a: f64,
    b: f64,
    f: f64,
) -> Result<(f64, f64, f64)> {
    let phase = Complex64::from_polar(1.0, 2.0 * squeezing_angle);
    let e1c = (phase * (b * b * lambda * mu * (1.0 - q))
        + Complex64::new(q * (b * b * lambda * lambda + f * f), 0.0))
        * q;
    if e1c.im.abs() > 1e-12 * e1c.re.abs().max(1.0) {
        return Err(Error::ComplexClosedForm {
            big_phi: squeezing_angle,
            imag: e1c.im,
        });
    }
    let e1 = e1c.re;
    let lam_bar = 1.0 - lambda;
    let e2 = q * q * (b * b * lam_bar * lam_bar + a * a);
    let e3 = b * b * lambda * q * (1.0 - mu) * (1.0 - q);
    Ok((e1, e2, e3))
}
