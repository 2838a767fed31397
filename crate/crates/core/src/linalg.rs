//! Dense complex linear algebra for small operator problems.
//!
//! Everything downstream (states, channels, QFI) is carried by
//! [`ComplexMatrix`]: a row-major dense matrix of `Complex64`. The sizes in
//! play never exceed 16×16, so the implementations favour clarity and
//! numerical robustness over asymptotic speed.
//!
//! Basis convention: for an n-qubit operator, qubit 0 is the **most
//! significant bit** of the basis index. `|q0 q1 ... q(n-1)⟩` maps to index
//! `q0·2^(n-1) + q1·2^(n-2) + ... + q(n-1)`. This ordering is a hard
//! contract; the partial trace and channel application both rely on it.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Hermiticity tolerance accepted by [`eig_hermitian`].
pub const HERMITICITY_TOL: f64 = 1e-9;

/// Maximum number of cyclic Jacobi sweeps before reporting non-convergence.
const MAX_JACOBI_SWEEPS: usize = 100;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. The entry count must match the shape
    /// exactly; construction never truncates or pads.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "ComplexMatrix::new entry count",
                got: entries.len(),
                expected: rows * cols,
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Square matrix with the given real diagonal.
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Build from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max entrywise asymmetry |a_ij - conj(a_ji)|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_defect() <= tol
    }

    /// Max entrywise difference to another matrix of the same shape.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Compact textual dump used in error reports.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                s.push_str(&format!("({:.6e},{:.6e}) ", e.re, e.im));
            }
            s.push('\n');
        }
        s
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Partial trace over the qubits listed in `traced`.
///
/// `rho` must be 2^n × 2^n with `n = qubit_count`; qubit 0 is the most
/// significant bit of the basis index. The kept qubits retain their relative
/// order. The trace of the result equals the trace of the input up to
/// floating round-off.
pub fn partial_trace(
    rho: &ComplexMatrix,
    qubit_count: usize,
    traced: &[usize],
) -> Result<ComplexMatrix> {
    let dim = 1usize << qubit_count;
    if !rho.is_square() || rho.rows() != dim {
        return Err(Error::DimensionMismatch {
            context: "partial_trace input dimension",
            got: rho.rows(),
            expected: dim,
        });
    }
    let mut traced_sorted = traced.to_vec();
    traced_sorted.sort_unstable();
    traced_sorted.dedup();
    if traced_sorted.len() != traced.len() {
        return Err(Error::DimensionMismatch {
            context: "partial_trace traced indices must be distinct",
            got: traced.len(),
            expected: traced_sorted.len(),
        });
    }
    for &t in &traced_sorted {
        if t >= qubit_count {
            return Err(Error::QubitOutOfRange {
                index: t,
                qubit_count,
            });
        }
    }
    let kept: Vec<usize> = (0..qubit_count)
        .filter(|q| !traced_sorted.contains(q))
        .collect();
    let k = kept.len();
    let t = traced_sorted.len();
    let out_dim = 1usize << k;

    // Bit position (from MSB) of qubit q in an n-qubit index.
    let bit_shift = |q: usize| qubit_count - 1 - q;

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut base_row = 0usize;
            let mut base_col = 0usize;
            for (m, &q) in kept.iter().enumerate() {
                let ibit = (i >> (k - 1 - m)) & 1;
                let jbit = (j >> (k - 1 - m)) & 1;
                base_row |= ibit << bit_shift(q);
                base_col |= jbit << bit_shift(q);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for assignment in 0..(1usize << t) {
                let mut row = base_row;
                let mut col = base_col;
                for (m, &q) in traced_sorted.iter().enumerate() {
                    let bit = (assignment >> (t - 1 - m)) & 1;
                    row |= bit << bit_shift(q);
                    col |= bit << bit_shift(q);
                }
                acc += rho.get(row, col);
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are real and sorted in descending order; `vectors` holds the
/// matching unit-norm eigenvectors as columns and is unitary to within
/// 1e-10.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvector for eigenvalue index `i`.
    pub fn column(&self, i: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|r| self.vectors.get(r, i)).collect()
    }

    /// Σ_i λ_i |v_i⟩⟨v_i|, the spectral reconstruction of the input.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for idx in 0..n {
            let v = self.column(idx);
            let lam = self.eigenvalues[idx];
            for i in 0..n {
                for j in 0..n {
                    let add = lam * v[i] * v[j].conj();
                    out.set(i, j, out.get(i, j) + add);
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input must be Hermitian to within [`HERMITICITY_TOL`] scaled by the
/// matrix magnitude; asymmetry beyond that is an error rather than being
/// silently symmetrised. Convergence is declared when the off-diagonal
/// Frobenius norm falls below 1e-14 relative to the matrix norm, which at
/// dims ≤ 16 leaves residuals ‖Hv − λv‖ well under 1e-10·‖H‖.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenSystem> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            context: "eig_hermitian requires a square matrix",
            got: h.cols(),
            expected: h.rows(),
        });
    }
    let scale = h.norm_max().max(1.0);
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL * scale {
        return Err(Error::NotHermitian {
            asymmetry: defect,
            tolerance: HERMITICITY_TOL * scale,
        });
    }

    let n = h.rows();
    let mut a = h.clone();
    // Symmetrise round-off noise below the accepted tolerance.
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (a.get(i, j) + a.get(j, i).conj());
            a.set(i, j, avg);
            a.set(j, i, avg.conj());
        }
        let d = a.get(i, i);
        a.set(i, i, Complex64::new(d.re, 0.0));
    }
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let frob = h.norm_frobenius().max(1.0);
    let target = 1e-14 * frob;
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < MAX_JACOBI_SWEEPS {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let abs_apq = apq.norm();
                if abs_apq <= 1e-300 {
                    continue;
                }
                // Phase that makes the (p,q) element real, then a standard
                // real rotation that zeroes it.
                let phase = apq / abs_apq; // e^{i beta}
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let theta = (aqq - app) / (2.0 * abs_apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Rotation columns (p,q):
                //   G_pp = c, G_pq = s, G_qp = -s·conj(phase), G_qq = c·conj(phase)
                let g_qp = -s * phase.conj();
                let g_qq = c * phase.conj();

                // A <- G† A G: column update then row update.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp + g_qp * akq);
                    a.set(k, q, s * akp + g_qq * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk + g_qp.conj() * aqk);
                    a.set(q, k, s * apk + g_qq.conj() * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp + g_qp * vkq);
                    v.set(k, q, s * vkp + g_qq * vkq);
                }
            }
        }
        sweeps += 1;
    }
    if !converged && off_norm(&a) > target {
        return Err(Error::EigenNonConvergence {
            sweeps,
            dim: n,
            off_norm: off_norm(&a),
            matrix: h.dump(),
        });
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i).re, i)).collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());

    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
        // Normalise defensively; Jacobi keeps columns unitary to round-off.
        let norm: f64 = (0..n).map(|r| v.get(r, old_col).norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col) / norm);
        }
    }
    Ok(EigenSystem {
        eigenvalues,
        vectors,
    })
}
