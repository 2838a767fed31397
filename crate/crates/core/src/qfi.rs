//! Quantum Fisher information of a parameterised density-matrix family.
//!
//! Two independent numerical routes are provided:
//!
//! * [`qfi_sld`] — the symmetric-logarithmic-derivative eigenbasis form
//!   `F = 2 Σ_{p_i+p_j > ε} |⟨ψ_i|∂ρ|ψ_j⟩|² / (p_i + p_j)`,
//!   needing only the eigensystem at the evaluation point plus a finite
//!   difference of the matrix itself. This is the authoritative value.
//!
//! * [`qfi_spectral`] — the three-term spectral decomposition
//!   `F = (I) + (II) − (III)` with
//!   `(I) = Σ (∂p_i)²/p_i`,
//!   `(II) = Σ p_i · 4(⟨∂ψ_i|∂ψ_i⟩ − |⟨ψ_i|∂ψ_i⟩|²)` and
//!   `(III) = Σ_{i≠j} 8 p_i p_j/(p_i+p_j) · |⟨ψ_i|∂ψ_j⟩|²`,
//!   which differentiates eigenvectors across a five-point stencil. The
//!   terms (II)/(III) are individually gauge-sensitive, so eigenvectors are
//!   phase-aligned (largest-magnitude component made real positive) and
//!   branch-matched across the stencil before differencing.
//!
//! Both routes use the same 4th-order central difference and the same
//! support threshold on eigenvalues.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix};
use num_complex::Complex64;

/// Default finite-difference step for angle parameters.
pub const DEFAULT_FD_STEP: f64 = 1e-4;
/// Default eigenvalue support threshold.
pub const DEFAULT_SUPPORT_EPS: f64 = 1e-10;
/// QFI values below this are reported as errors rather than clamped.
pub const NEGATIVITY_TOL: f64 = -1e-8;

/// Which parameter a family varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamLabel {
    Theta,
    Phi,
}

impl std::fmt::Display for ParamLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamLabel::Theta => write!(f, "theta"),
            ParamLabel::Phi => write!(f, "phi"),
        }
    }
}

type Evaluator = dyn Fn(f64) -> Result<ComplexMatrix> + Send + Sync;

/// A pure map from one real parameter to a Hermitian matrix, with the
/// frozen non-varied parameters kept for reporting.
pub struct ParamFamily {
    evaluator: Box<Evaluator>,
    label: ParamLabel,
    context: Vec<(String, f64)>,
}

impl ParamFamily {
    pub fn new<F>(label: ParamLabel, context: Vec<(String, f64)>, evaluator: F) -> Self
    where
        F: Fn(f64) -> Result<ComplexMatrix> + Send + Sync + 'static,
    {
        Self {
            evaluator: Box::new(evaluator),
            label,
            context,
        }
    }

    pub fn eval(&self, x: f64) -> Result<ComplexMatrix> {
        (self.evaluator)(x)
    }

    pub fn label(&self) -> ParamLabel {
        self.label
    }

    pub fn context(&self) -> &[(String, f64)] {
        &self.context
    }
}

impl std::fmt::Debug for ParamFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParamFamily")
            .field("label", &self.label)
            .field("context", &self.context)
            .finish()
    }
}

/// Which route produced a [`QfiResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfiMethod {
    Spectral,
    Sld,
}

/// QFI value with its diagnostic three-term split.
///
/// For the spectral route `value = classical_term + pure_term −
/// mixture_correction` holds by construction; for the SLD route the split
/// is diagonal (classical) versus off-diagonal (pure) pair contributions
/// and the correction is folded in (zero field).
#[derive(Debug, Clone, Copy)]
pub struct QfiResult {
    pub value: f64,
    pub classical_term: f64,
    pub pure_term: f64,
    pub mixture_correction: f64,
    pub method: QfiMethod,
    pub fd_step: f64,
    pub support_threshold: f64,
}

/// 4th-order central difference of a matrix-valued map:
/// `[f(x−2h) − 8f(x−h) + 8f(x+h) − f(x+2h)] / (12h)`, entrywise.
pub fn derivative<F>(f: F, x: f64, h: f64) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    assert!(h > 0.0, "finite-difference step must be positive");
    let m2 = f(x - 2.0 * h)?;
    let m1 = f(x - h)?;
    let p1 = f(x + h)?;
    let p2 = f(x + 2.0 * h)?;
    let c = |w: f64| Complex64::new(w / (12.0 * h), 0.0);
    let out = &(&m2.scale(c(1.0)) - &m1.scale(c(8.0))) + &(&p1.scale(c(8.0)) - &p2.scale(c(1.0)));
    Ok(out)
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn check_psd(rho: &ComplexMatrix) -> Result<crate::linalg::EigenSystem> {
    let es = eig_hermitian(rho)?;
    let min = *es
        .eigenvalues
        .last()
        .expect("eigensystem of a nonempty matrix");
    if min < -1e-10 {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    Ok(es)
}

fn guard_negative(value: f64) -> Result<f64> {
    if value < NEGATIVITY_TOL {
        return Err(Error::NegativeQfi(value));
    }
    Ok(value)
}

/// QFI by the SLD eigenbasis formula.
pub fn qfi_sld(fam: &ParamFamily, x: f64, h: f64, eps: f64) -> Result<QfiResult> {
    let rho = fam.eval(x)?;
    let es = check_psd(&rho)?;
    let drho = derivative(|t| fam.eval(t), x, h)?;
    let n = es.dim();
    let vectors: Vec<Vec<Complex64>> = (0..n).map(|i| es.column(i)).collect();
    // Cache ∂ρ|ψ_j⟩ once per column.
    let dcols: Vec<Vec<Complex64>> = vectors.iter().map(|v| drho.matvec(v)).collect();

    let mut diag = 0.0;
    let mut off = 0.0;
    for i in 0..n {
        for j in 0..n {
            let denom = es.eigenvalues[i] + es.eigenvalues[j];
            if denom <= eps {
                continue;
            }
            let amp = inner(&vectors[i], &dcols[j]).norm_sqr();
            let term = 2.0 * amp / denom;
            if i == j {
                diag += term;
            } else {
                off += term;
            }
        }
    }
    let value = guard_negative(diag + off)?;
    Ok(QfiResult {
        value,
        classical_term: diag,
        pure_term: off,
        mixture_correction: 0.0,
        method: QfiMethod::Sld,
        fd_step: h,
        support_threshold: eps,
    })
}

/// Stencil offsets for the 4th-order scheme, in units of h.
const STENCIL: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
/// Index of the centre point in [`STENCIL`].
const CENTER: usize = 2;
/// 4th-order weights divided by 12 (to be divided by h).
const WEIGHTS: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];

/// QFI by the three-term spectral decomposition.
///
/// Requires the retained eigenvalue branches to be mutually non-degenerate
/// (gap above 10·eps) so their derivatives are well defined; degenerate
/// inputs error with a pointer to the SLD route.
pub fn qfi_spectral(fam: &ParamFamily, x: f64, h: f64, eps: f64) -> Result<QfiResult> {
    let rho = fam.eval(x)?;
    let center = check_psd(&rho)?;
    let n = center.dim();

    // Retained support at the centre point.
    let support: Vec<usize> = (0..n).filter(|&i| center.eigenvalues[i] > eps).collect();
    for (a_pos, &i) in support.iter().enumerate() {
        for &j in support.iter().skip(a_pos + 1) {
            let gap = (center.eigenvalues[i] - center.eigenvalues[j]).abs();
            if gap <= 10.0 * eps {
                return Err(Error::DegenerateBranches {
                    gap,
                    threshold: 10.0 * eps,
                });
            }
        }
    }

    // Eigensystems across the stencil.
    let mut systems = Vec::with_capacity(5);
    for (k, off) in STENCIL.iter().enumerate() {
        if k == CENTER {
            systems.push(center.clone());
        } else {
            let m = fam.eval(x + off * h)?;
            systems.push(eig_hermitian(&m)?);
        }
    }

    // Anchor component per branch: the largest-magnitude entry of the
    // centre eigenvector fixes the phase gauge at every stencil point.
    let center_vecs: Vec<Vec<Complex64>> = support.iter().map(|&i| center.column(i)).collect();
    let anchors: Vec<usize> = center_vecs
        .iter()
        .map(|v| {
            let (idx, _) = v
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .unwrap();
            idx
        })
        .collect();

    // Branch-match and gauge-align each stencil point against the centre.
    // matched[k][b] = (eigenvalue, aligned eigenvector) of branch b.
    let mut matched: Vec<Vec<(f64, Vec<Complex64>)>> = Vec::with_capacity(5);
    for (k, es) in systems.iter().enumerate() {
        let mut taken = vec![false; n];
        let mut row = Vec::with_capacity(support.len());
        for (b, cv) in center_vecs.iter().enumerate() {
            let mut best: Option<(usize, f64)> = None;
            for j in 0..n {
                if taken[j] {
                    continue;
                }
                let ov = inner(cv, &es.column(j)).norm_sqr();
                if best.is_none_or(|(_, o)| ov > o) {
                    best = Some((j, ov));
                }
            }
            let (j, overlap) = best.expect("candidate branch");
            if overlap < 0.5 {
                return Err(Error::DegenerateBranches {
                    gap: overlap,
                    threshold: 0.5,
                });
            }
            taken[j] = true;
            let mut v = es.column(j);
            let anchor = v[anchors[b]];
            if anchor.norm() < 1e-8 {
                return Err(Error::GaugeAlignment(format!(
                    "branch {b} has no dominant component at stencil point {k} \
                     (anchor magnitude {:.3e})",
                    anchor.norm()
                )));
            }
            let phase = anchor.conj() / anchor.norm();
            for e in v.iter_mut() {
                *e *= phase;
            }
            row.push((es.eigenvalues[j], v));
        }
        matched.push(row);
    }

    // Finite differences of eigenvalues and gauged eigenvectors.
    let svals: Vec<f64> = support.iter().map(|&i| center.eigenvalues[i]).collect();
    let mut dp = vec![0.0f64; support.len()];
    let mut dvec: Vec<Vec<Complex64>> =
        vec![vec![Complex64::new(0.0, 0.0); n]; support.len()];
    for b in 0..support.len() {
        for k in 0..5 {
            let w = WEIGHTS[k] / h;
            if w == 0.0 {
                continue;
            }
            dp[b] += w * matched[k][b].0;
            for c in 0..n {
                dvec[b][c] += Complex64::new(w, 0.0) * matched[k][b].1[c];
            }
        }
    }
    // The gauged centre vectors.
    let gauged_center: Vec<&Vec<Complex64>> =
        (0..support.len()).map(|b| &matched[CENTER][b].1).collect();

    // (I) classical term.
    let classical: f64 = (0..support.len()).map(|b| dp[b] * dp[b] / svals[b]).sum();

    // (II) weighted pure-state terms.
    let mut pure = 0.0;
    for b in 0..support.len() {
        let dd = inner(&dvec[b], &dvec[b]).re;
        let vd = inner(gauged_center[b], &dvec[b]).norm_sqr();
        pure += svals[b] * 4.0 * (dd - vd);
    }

    // (III) mixture correction over retained pairs.
    let mut mixture = 0.0;
    for a in 0..support.len() {
        for b in 0..support.len() {
            if a == b {
                continue;
            }
            let pi = svals[a];
            let pj = svals[b];
            let amp = inner(gauged_center[a], &dvec[b]).norm_sqr();
            mixture += 8.0 * pi * pj / (pi + pj) * amp;
        }
    }

    let value = guard_negative(classical + pure - mixture)?;
    Ok(QfiResult {
        value,
        classical_term: classical,
        pure_term: pure,
        mixture_correction: mixture,
        method: QfiMethod::Spectral,
        fd_step: h,
        support_threshold: eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use std::f64::consts::PI;

    fn diag_family() -> ParamFamily {
        ParamFamily::new(ParamLabel::Theta, vec![], |t: f64| {
            Ok(ComplexMatrix::diagonal(&[
                t.cos() * t.cos(),
                t.sin() * t.sin(),
            ]))
        })
    }

    fn ghz_family(theta: f64) -> ParamFamily {
        // Pure family cosθ|000⟩ + sinθ e^{iφ}|111⟩ parameterised by φ.
        ParamFamily::new(ParamLabel::Phi, vec![("theta".into(), theta)], move |phi| {
            let a = Complex64::new(theta.cos(), 0.0);
            let b = Complex64::from_polar(theta.sin(), phi);
            let mut rho = ComplexMatrix::zeros(8, 8);
            rho.set(0, 0, a * a.conj());
            rho.set(0, 7, a * b.conj());
            rho.set(7, 0, b * a.conj());
            rho.set(7, 7, b * b.conj());
            Ok(rho)
        })
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let f = |_: f64| Ok(ComplexMatrix::identity(3));
        let d = derivative(f, 0.3, 1e-4).unwrap();
        assert!(d.norm_max() < 1e-12);
    }

    #[test]
    fn derivative_matches_analytic() {
        let f = |t: f64| {
            Ok(ComplexMatrix::diagonal(&[
                t.cos() * t.cos(),
                t.sin() * t.sin(),
            ]))
        };
        let d = derivative(f, PI / 6.0, 1e-4).unwrap();
        let expect = (PI / 3.0).sin();
        assert!((d.get(0, 0).re + expect).abs() < 1e-9);
        assert!((d.get(1, 1).re - expect).abs() < 1e-9);
    }

    #[test]
    fn derivative_exact_on_linear_map() {
        let f = |t: f64| ComplexMatrix::from_real(2, 2, &[1.0 + 2.0 * t, t, -t, 3.0 * t]);
        // Polynomial exactness: independent of h.
        for h in [1e-2, 1e-4, 1e-6] {
            let d = derivative(f, 0.7, h).unwrap();
            assert!((d.get(0, 0).re - 2.0).abs() < 1e-9);
            assert!((d.get(0, 1).re - 1.0).abs() < 1e-9);
            assert!((d.get(1, 0).re + 1.0).abs() < 1e-9);
            assert!((d.get(1, 1).re - 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sld_pure_ghz_family_gives_sin_sq_2theta() {
        for theta in [0.3, 0.7, 1.1] {
            let fam = ghz_family(theta);
            for phi in [0.0, 1.0, 4.0] {
                let r = qfi_sld(&fam, phi, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
                let expect = (2.0 * theta).sin().powi(2);
                assert!(
                    (r.value - expect).abs() < 1e-9,
                    "theta {theta} phi {phi}: {} vs {expect}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn sld_classical_family_gives_four() {
        let fam = diag_family();
        let r = qfi_sld(&fam, PI / 6.0, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
        assert!((r.value - 4.0).abs() < 1e-9);
        // Everything sits in the diagonal split.
        assert!(r.pure_term.abs() < 1e-9);
    }

    #[test]
    fn sld_constant_family_gives_zero() {
        let fam = ParamFamily::new(ParamLabel::Phi, vec![], |_| {
            Ok(ComplexMatrix::diagonal(&[0.25, 0.75]))
        });
        let r = qfi_sld(&fam, 0.4, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn sld_rejects_non_psd() {
        let fam = ParamFamily::new(ParamLabel::Theta, vec![], |_| {
            Ok(ComplexMatrix::diagonal(&[1.2, -0.2]))
        });
        assert!(matches!(
            qfi_sld(&fam, 0.0, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn spectral_pure_family_is_all_pure_term() {
        let fam = ghz_family(0.8);
        let r = qfi_spectral(&fam, 0.5, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
        let expect = (1.6f64).sin().powi(2);
        assert!((r.value - expect).abs() < 1e-8);
        assert!(r.classical_term.abs() < 1e-10);
        assert!(r.mixture_correction.abs() < 1e-10);
        assert!((r.value - (r.classical_term + r.pure_term - r.mixture_correction)).abs() < 1e-10);
    }

    #[test]
    fn spectral_classical_family_is_all_classical_term() {
        let fam = diag_family();
        let r = qfi_spectral(&fam, PI / 6.0, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
        assert!((r.value - 4.0).abs() < 1e-8);
        assert!(r.pure_term.abs() < 1e-8);
        assert!(r.mixture_correction.abs() < 1e-8);
    }

    #[test]
    fn spectral_rejects_degenerate_support() {
        // Constant maximally mixed 2x2: both retained eigenvalues equal.
        let fam = ParamFamily::new(ParamLabel::Theta, vec![], |_| {
            Ok(ComplexMatrix::diagonal(&[0.5, 0.5]))
        });
        assert!(matches!(
            qfi_spectral(&fam, 0.1, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS),
            Err(Error::DegenerateBranches { .. })
        ));
    }

    #[test]
    fn spectral_matches_sld_on_mixed_family() {
        // Rank-2 mixture with genuinely rotating eigenvectors.
        let fam = ParamFamily::new(ParamLabel::Theta, vec![], |t: f64| {
            let c = Complex64::new(t.cos(), 0.0);
            let s = Complex64::new(t.sin(), 0.0);
            let mut rho = ComplexMatrix::zeros(2, 2);
            // 0.7 |v⟩⟨v| + 0.3 |w⟩⟨w| with v = (cos t, sin t), w ⟂ v.
            rho.set(0, 0, Complex64::new(0.7, 0.0) * c * c + Complex64::new(0.3, 0.0) * s * s);
            rho.set(1, 1, Complex64::new(0.7, 0.0) * s * s + Complex64::new(0.3, 0.0) * c * c);
            let cross = Complex64::new(0.4, 0.0) * s * c;
            rho.set(0, 1, cross);
            rho.set(1, 0, cross);
            Ok(rho)
        });
        for x in [0.2, 0.9, 1.3] {
            let a = qfi_sld(&fam, x, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
            let b = qfi_spectral(&fam, x, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS).unwrap();
            let denom = a.value.max(1.0);
            assert!(
                ((a.value - b.value) / denom).abs() < 1e-6,
                "sld {} vs spectral {} at {x}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn step_robustness_on_smooth_family() {
        let fam = ghz_family(0.9);
        let a = qfi_sld(&fam, 0.7, 1e-4, DEFAULT_SUPPORT_EPS).unwrap();
        let b = qfi_sld(&fam, 0.7, 5e-5, DEFAULT_SUPPORT_EPS).unwrap();
        assert!(((a.value - b.value) / a.value.max(1.0)).abs() < 1e-7);
    }

    #[test]
    fn phi_qfi_flat_in_phi_for_pure_family() {
        let fam = ghz_family(0.6);
        let base = qfi_sld(&fam, 0.0, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS)
            .unwrap()
            .value;
        for k in 1..12 {
            let phi = k as f64 * 0.5;
            let v = qfi_sld(&fam, phi, DEFAULT_FD_STEP, DEFAULT_SUPPORT_EPS)
                .unwrap()
                .value;
            assert!((v - base).abs() < 1e-9);
        }
    }

    #[test]
    fn support_threshold_stability() {
        // Exact zeros in the spectrum: results must not move as eps scans
        // the kernel scale.
        let fam = ghz_family(0.8);
        let base = qfi_sld(&fam, 0.3, DEFAULT_FD_STEP, 1e-12).unwrap().value;
        for eps in [1e-12, 1e-11, 1e-10, 1e-9] {
            let v = qfi_sld(&fam, 0.3, DEFAULT_FD_STEP, eps).unwrap().value;
            assert!((v - base).abs() < 1e-8);
        }
    }
}
