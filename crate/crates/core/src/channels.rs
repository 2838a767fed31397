//! Amplitude-damping-family noise channels.
//!
//! Three Kraus families acting on a single qubit:
//!
//! * AD — zero-temperature amplitude damping, two operators;
//! * GAD — finite-temperature generalized amplitude damping, four operators;
//! * SGAD — squeezed thermal bath, four operators with squeezing magnitude
//!   r and angle Φ entering through the coefficients (μ, v, λ).
//!
//! The thermal coefficients follow the squeezed-bath master-equation
//! solution with the time variable folded into the dimensionless exposure
//! γ₀. The coefficient formulas do not stay inside [0, 1] over the whole
//! (Q, r, γ₀, ω, T_C) space; the validated constructor rejects such points
//! rather than clamping, and the raw computation stays available so sweep
//! tooling can record what was rejected.

use crate::blackhole::DilatedState;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use num_complex::Complex64;

/// Completeness tolerance for Σ E†E = I.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// Channel family label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Ad,
    Gad,
    Sgad,
}

impl std::fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelKind::Ad => write!(f, "ad"),
            ChannelKind::Gad => write!(f, "gad"),
            ChannelKind::Sgad => write!(f, "sgad"),
        }
    }
}

/// Full SGAD channel parameterisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgadParams {
    /// Bath coupling weight Q ∈ [0, 1].
    pub bath_coupling_q: f64,
    /// Squeezing magnitude r ≥ 0.
    pub squeezing_r: f64,
    /// Squeezing angle Φ in radians.
    pub squeezing_angle: f64,
    /// Dimensionless damping exposure γ₀ (time folded in).
    pub gamma0: f64,
    /// Mode frequency ω.
    pub omega: f64,
    /// Bath temperature T_C.
    pub channel_temp: f64,
}

impl SgadParams {
    pub fn new(
        bath_coupling_q: f64,
        squeezing_r: f64,
        squeezing_angle: f64,
        gamma0: f64,
        omega: f64,
        channel_temp: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&bath_coupling_q) {
            return Err(Error::OutOfRange {
                name: "Q",
                value: bath_coupling_q,
                lo: 0.0,
                hi: 1.0,
            });
        }
        if squeezing_r < 0.0 {
            return Err(Error::NonPositiveParameter {
                name: "r (must be >= 0)",
                value: squeezing_r,
            });
        }
        for (name, value) in [
            ("gamma0", gamma0),
            ("omega", omega),
            ("T_C", channel_temp),
        ] {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        Ok(Self {
            bath_coupling_q,
            squeezing_r,
            squeezing_angle,
            gamma0,
            omega,
            channel_temp,
        })
    }
}

/// Thermal coefficients of the squeezed bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalCoeffs {
    /// Planck occupation 1/(e^{ω/T_C} − 1).
    pub n_th: f64,
    /// N = n_th(cosh²r + sinh²r) + sinh²r.
    pub big_n: f64,
    /// a = sinh(2r)(2·n_th + 1).
    pub a_coeff: f64,
    pub mu: f64,
    pub v: f64,
    pub lambda: f64,
}

impl ThermalCoeffs {
    /// Evaluate the coefficient formulas as written, guarding only against
    /// division by zero. The [0, 1] physicality gate is applied separately
    /// by [`ThermalCoeffs::validated`].
    pub fn compute(p: &SgadParams) -> Result<Self> {
        let q = p.bath_coupling_q;
        let r = p.squeezing_r;
        let g = p.gamma0;
        let n_th = 1.0 / (p.omega / p.channel_temp).exp_m1();
        let big_n = n_th * (r.cosh().powi(2) + r.sinh().powi(2)) + r.sinh().powi(2);
        let a_coeff = (2.0 * r).sinh() * (2.0 * n_th + 1.0);

        if q >= 1.0 {
            return Err(Error::ParamDomain {
                term: "mu and v",
                detail: format!("1 - Q = 0 at Q = {q}"),
            });
        }
        if q <= 0.0 {
            return Err(Error::ParamDomain {
                term: "lambda",
                detail: format!("Q = {q}"),
            });
        }
        if big_n <= 0.0 {
            return Err(Error::ParamDomain {
                term: "mu",
                detail: format!("N = {big_n} (r = 0 with T_C -> 0 boundary)"),
            });
        }

        let two_n1 = 2.0 * big_n + 1.0;
        let decay = (-g * two_n1).exp();
        let mu = if a_coeff == 0.0 {
            // sinh(0) = 0 kills the numerator before the prefactor matters.
            0.0
        } else {
            (two_n1 / (2.0 * big_n * (1.0 - q)))
                * ((g * a_coeff / 2.0).sinh().powi(2) / (g * two_n1 / 2.0).sinh().powi(2))
                * (-g * two_n1 / 2.0).exp()
        };
        let v = big_n / ((1.0 - q) * two_n1) * (1.0 - decay);
        let lambda = (1.0 - (1.0 - q) * (mu + v) - decay) / q;

        Ok(Self {
            n_th,
            big_n,
            a_coeff,
            mu,
            v,
            lambda,
        })
    }

    /// [`ThermalCoeffs::compute`] followed by the physicality gate: each of
    /// μ, v, λ must lie in [0, 1]. Out-of-range values are rejected with
    /// the offending coefficient named, never clamped.
    pub fn validated(p: &SgadParams) -> Result<Self> {
        let c = Self::compute(p)?;
        for (name, value) in [("mu", c.mu), ("v", c.v), ("lambda", c.lambda)] {
            if !(0.0..=1.0).contains(&value) || !value.is_finite() {
                return Err(Error::Unphysical { name, value });
            }
        }
        Ok(c)
    }
}

/// Ordered set of single-qubit Kraus operators for one channel.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub operators: Vec<ComplexMatrix>,
    pub label: ChannelKind,
}

fn two_by_two(e00: Complex64, e01: Complex64, e10: Complex64, e11: Complex64) -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![e00, e01, e10, e11]).unwrap()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || !value.is_finite() {
        return Err(Error::OutOfRange {
            name,
            value,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

impl KrausSet {
    /// AD channel:
    /// `E0 = [[1, 0], [0, √(1−λ)]]`, `E1 = [[0, √λ], [0, 0]]`.
    pub fn amplitude_damping(lambda: f64) -> Result<Self> {
        check_unit_interval("lambda", lambda)?;
        let zero = re(0.0);
        let e0 = two_by_two(re(1.0), zero, zero, re((1.0 - lambda).sqrt()));
        let e1 = two_by_two(zero, re(lambda.sqrt()), zero, zero);
        Ok(Self {
            operators: vec![e0, e1],
            label: ChannelKind::Ad,
        })
    }

    /// GAD channel: the AD pair weighted by √Q plus the thermally excited
    /// pair weighted by √(1−Q).
    pub fn generalized_amplitude_damping(q: f64, lambda: f64) -> Result<Self> {
        check_unit_interval("Q", q)?;
        check_unit_interval("lambda", lambda)?;
        let zero = re(0.0);
        let sq = re(q.sqrt());
        let sq1 = re((1.0 - q).sqrt());
        let e0 = two_by_two(sq, zero, zero, sq * re((1.0 - lambda).sqrt()));
        let e1 = two_by_two(zero, sq * re(lambda.sqrt()), zero, zero);
        let e2 = two_by_two(sq1 * re((1.0 - lambda).sqrt()), zero, zero, sq1);
        let e3 = two_by_two(zero, zero, sq1 * re(lambda.sqrt()), zero);
        Ok(Self {
            operators: vec![e0, e1, e2, e3],
            label: ChannelKind::Gad,
        })
    }

    /// SGAD channel from explicit coefficients. E3 carries the squeezing
    /// phase on its upper-right entry:
    ///
    /// ```text
    /// E0 = √Q [[1, 0], [0, √(1−λ)]]      E1 = √Q [[0, √λ], [0, 0]]
    /// E2 = √(1−Q) [[√(1−v), 0], [0, √(1−μ)]]
    /// E3 = √(1−Q) [[0, √μ·e^{iΦ}], [√v, 0]]
    /// ```
    ///
    /// Completeness Σ E†E = I holds for any (Q, λ, μ, v) ∈ [0, 1]⁴.
    pub fn sgad_from_coeffs(
        q: f64,
        lambda: f64,
        mu: f64,
        v: f64,
        squeezing_angle: f64,
    ) -> Result<Self> {
        check_unit_interval("Q", q)?;
        check_unit_interval("lambda", lambda)?;
        check_unit_interval("mu", mu)?;
        check_unit_interval("v", v)?;
        let zero = re(0.0);
        let sq = re(q.sqrt());
        let sq1 = re((1.0 - q).sqrt());
        let e0 = two_by_two(sq, zero, zero, sq * re((1.0 - lambda).sqrt()));
        let e1 = two_by_two(zero, sq * re(lambda.sqrt()), zero, zero);
        let e2 = two_by_two(sq1 * re((1.0 - v).sqrt()), zero, zero, sq1 * re((1.0 - mu).sqrt()));
        let e3 = two_by_two(
            zero,
            sq1 * Complex64::from_polar(mu.sqrt(), squeezing_angle),
            sq1 * re(v.sqrt()),
            zero,
        );
        Ok(Self {
            operators: vec![e0, e1, e2, e3],
            label: ChannelKind::Sgad,
        })
    }

    /// SGAD channel with (μ, v, λ) bound from the bath parameters through
    /// the validated thermal coefficients.
    pub fn sgad(p: &SgadParams) -> Result<Self> {
        let c = ThermalCoeffs::validated(p)?;
        Self::sgad_from_coeffs(p.bath_coupling_q, c.lambda, c.mu, c.v, p.squeezing_angle)
    }

    /// Σ E†E, which must equal the identity for a trace-preserving set.
    pub fn completeness(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(2, 2);
        for e in &self.operators {
            acc = &acc + &e.adjoint().matmul(e);
        }
        acc
    }

    pub fn completeness_defect(&self) -> f64 {
        self.completeness().max_diff(&ComplexMatrix::identity(2))
    }
}

/// How Kraus indices are distributed over multiple target qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMode {
    /// Independent sum over one index per target; trace preserving.
    Independent,
    /// Single shared index on all targets.
    Correlated,
}

/// Apply a single-qubit Kraus family to the listed qubits of an n-qubit
/// density matrix.
///
/// Independent mode evaluates ρ' = Σ_{i,j,...} K ρ K† with one Kraus index
/// per target; correlated mode uses one shared index. The basis ordering is
/// the linalg convention (qubit 0 = most significant bit).
pub fn apply_channel(
    rho: &ComplexMatrix,
    ks: &KrausSet,
    targets: &[usize],
    mode: IndexMode,
) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::DimensionMismatch {
            context: "apply_channel density matrix must be square",
            got: rho.cols(),
            expected: rho.rows(),
        });
    }
    let dim = rho.rows();
    let n = dim.trailing_zeros() as usize;
    if dim != (1usize << n) {
        return Err(Error::DimensionMismatch {
            context: "apply_channel dimension must be a power of two",
            got: dim,
            expected: 1usize << n,
        });
    }
    let mut seen = vec![false; n];
    for &t in targets {
        if t >= n {
            return Err(Error::QubitOutOfRange {
                index: t,
                qubit_count: n,
            });
        }
        if seen[t] {
            return Err(Error::DimensionMismatch {
                context: "apply_channel targets must be distinct",
                got: t,
                expected: n,
            });
        }
        seen[t] = true;
    }

    let k = targets.len();
    let n_ops = ks.operators.len();
    let tuples: Vec<Vec<usize>> = match mode {
        IndexMode::Correlated => (0..n_ops).map(|i| vec![i; k]).collect(),
        IndexMode::Independent => {
            let mut out = vec![vec![]];
            for _ in 0..k {
                let mut next = Vec::with_capacity(out.len() * n_ops);
                for prefix in &out {
                    for i in 0..n_ops {
                        let mut t = prefix.clone();
                        t.push(i);
                        next.push(t);
                    }
                }
                out = next;
            }
            out
        }
    };

    let identity = ComplexMatrix::identity(2);
    let mut result = ComplexMatrix::zeros(dim, dim);
    for tuple in &tuples {
        let mut op = ComplexMatrix::identity(1);
        for q in 0..n {
            let factor = match targets.iter().position(|&t| t == q) {
                Some(m) => &ks.operators[tuple[m]],
                None => &identity,
            };
            op = kron(&op, factor);
        }
        let term = op.matmul(rho).matmul(&op.adjoint());
        result = &result + &term;
    }
    Ok(result)
}

/// Channel coefficients for the literal channel-acted matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiteralCoeffs {
    pub lambda: f64,
    pub mu: f64,
    pub q: f64,
    pub squeezing_angle: f64,
}

impl LiteralCoeffs {
    pub fn new(lambda: f64, mu: f64, q: f64, squeezing_angle: f64) -> Result<Self> {
        check_unit_interval("lambda", lambda)?;
        check_unit_interval("mu", mu)?;
        check_unit_interval("Q", q)?;
        Ok(Self {
            lambda,
            mu,
            q,
            squeezing_angle,
        })
    }
}

/// The nine-term channel-acted matrix, assembled exactly as the closed-form
/// eigenvalue analysis consumes it. No renormalisation is applied, so the
/// trace is generally below one; the trace-preserving simulation path is
/// [`apply_channel`].
///
/// Entry layout over |a b c1⟩ with λ̄ = 1−λ, μ̄ = 1−μ, Q̄ = 1−Q:
///
/// ```text
/// (000,000)  |A|²Q²
/// (000,111)  A·B·Q²·λ̄        (111,000)  conj(A)·B·Q²·λ̄
/// (111,111)  B²Q²λ̄²
/// (001,001)  B²λμQ·e^{2iΦ}·Q̄ + B²λ²Q² + F²Q²
/// (011,011)  B²λQμ̄Q̄
/// ```
pub fn literal_rho_complex(state: &DilatedState, coeffs: &LiteralCoeffs) -> ComplexMatrix {
    let a = state.coeff_a;
    let b = state.coeff_b;
    let f = state.coeff_f;
    let q = coeffs.q;
    let lam = coeffs.lambda;
    let mu = coeffs.mu;
    let lam_bar = 1.0 - lam;
    let q_bar = 1.0 - q;
    let phase = Complex64::from_polar(1.0, 2.0 * coeffs.squeezing_angle);

    let mut rho = ComplexMatrix::zeros(8, 8);
    rho.set(0, 0, re(a.norm_sqr() * q * q));
    rho.set(0, 7, a * re(b * q * q * lam_bar));
    rho.set(7, 0, a.conj() * re(b * q * q * lam_bar));
    rho.set(7, 7, re(b * b * q * q * lam_bar * lam_bar));
    rho.set(
        1,
        1,
        phase * re(b * b * lam * mu * q * q_bar) + re(b * b * lam * lam * q * q + f * f * q * q),
    );
    rho.set(3, 3, re(b * b * lam * q * (1.0 - mu) * q_bar));
    rho
}

/// Hermitian-checked form of [`literal_rho_complex`].
///
/// The e^{2iΦ} factor sits on a diagonal entry, so a generic squeezing
/// angle makes the matrix non-Hermitian; such inputs are rejected here and
/// only the literal-complex constructor accepts them (for symbolic
/// comparison against the printed eigenvalues).
pub fn literal_rho(state: &DilatedState, coeffs: &LiteralCoeffs) -> Result<ComplexMatrix> {
    let rho = literal_rho_complex(state, coeffs);
    let imag = rho.get(1, 1).im.abs();
    if imag > 1e-12 {
        return Err(Error::NonHermitianLiteral {
            big_phi: coeffs.squeezing_angle,
            imag_norm: imag,
        });
    }
    let mut rho = rho;
    let d = rho.get(1, 1);
    rho.set(1, 1, re(d.re));
    Ok(rho)
}

/// Literal channel-acted matrix with (λ, μ) bound from the bath parameters.
pub fn literal_sgad_rho(state: &DilatedState, p: &SgadParams) -> Result<ComplexMatrix> {
    let c = ThermalCoeffs::validated(p)?;
    let coeffs = LiteralCoeffs::new(c.lambda, c.mu, p.bath_coupling_q, p.squeezing_angle)?;
    literal_rho(state, &coeffs)
}
