//! Dense complex linear algebra for small multi-qubit Hilbert spaces.
//!
//! Everything here is sized for dimensions 2..=1024; matrices are dense,
//! row-major and immutable after construction. Basis convention: the
//! computational basis |q1 q2 ... qn> with qubit 1 as the most significant
//! bit, so |000> is index 0 and |100> on three qubits is index 4.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector is not normalized: |v| = {norm}")]
    NotNormalized { norm: f64 },
    #[error("matrix is not Hermitian: max |M - M^dag| = {defect}")]
    NotHermitian { defect: f64 },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("not a valid density operator: {reason}")]
    InvalidDensity { reason: String },
    #[error("zero-purity input to fidelity")]
    ZeroPurity,
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from rows of real entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(x, 0.0));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
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

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise |a - b|.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |M - M^dag| entrywise.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        self.mul(&self.adjoint())
            .max_abs_diff(&ComplexMatrix::identity(self.rows))
            <= tol
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..self.cols {
                *o += self.get(i, j) * v.amplitudes()[j];
            }
        }
        StateVector { amplitudes: out }
    }

    /// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
    /// ascending. Meant for the small dimensions this crate works with.
    pub fn eigenvalues_hermitian(&self, tol: f64) -> Result<Vec<f64>, HilbertError> {
        if !self.is_hermitian(tol) {
            return Err(HilbertError::NotHermitian {
                defect: self.hermiticity_defect(),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a.get(p, q).norm());
                }
            }
            if off < 1e-14 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let g = a.get(p, q);
                    let r = g.norm();
                    if r < 1e-15 {
                        continue;
                    }
                    let phase = g / r;
                    let alpha = a.get(p, p).re;
                    let beta = a.get(q, q).re;
                    let tau = (beta - alpha) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        1.0 / (tau - (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // U columns: (c, -s*phase) and (s, c*phase); apply A <- U^dag A U
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp * c - akq * phase * s);
                        a.set(k, q, akp * s + akq * phase * c);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, apk * c - aqk * phase.conj() * s);
                        a.set(q, k, apk * s + aqk * phase.conj() * c);
                    }
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(eig)
    }
}

/// Pure state on a d-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wrap amplitudes as-is (no normalization is applied).
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn from_reals(entries: &[f64]) -> Self {
        Self {
            amplitudes: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    /// Computational basis state |index> in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Normalize, rejecting the zero vector.
    pub fn normalized(&self) -> Result<Self, HilbertError> {
        let n = self.norm();
        if n < 1e-12 {
            return Err(HilbertError::NotNormalized { norm: n });
        }
        Ok(Self {
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, HilbertError> {
        if self.dim() != other.dim() {
            return Err(HilbertError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validate and wrap a candidate density matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self, HilbertError> {
        if matrix.rows() != matrix.cols() {
            return Err(HilbertError::InvalidDensity {
                reason: format!("not square: {}x{}", matrix.rows(), matrix.cols()),
            });
        }
        let defect = matrix.hermiticity_defect();
        if defect > 1e-12 {
            return Err(HilbertError::InvalidDensity {
                reason: format!("hermiticity defect {defect}"),
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(HilbertError::InvalidDensity {
                reason: format!("trace {tr}"),
            });
        }
        let eig = matrix.eigenvalues_hermitian(1e-12)?;
        if let Some(&min) = eig.first() {
            if min < -1e-10 {
                return Err(HilbertError::InvalidDensity {
                    reason: format!("negative eigenvalue {min}"),
                });
            }
        }
        Ok(Self { matrix })
    }

    /// |psi><psi| for a normalized pure state.
    pub fn from_pure(psi: &StateVector) -> Result<Self, HilbertError> {
        let p = projector_from_vector(psi)?;
        Ok(Self { matrix: p })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Convex combination p*a + (1-p)*b.
    pub fn mix(a: &DensityOperator, b: &DensityOperator, p: f64) -> Result<Self, HilbertError> {
        if a.dim() != b.dim() {
            return Err(HilbertError::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        Ok(Self {
            matrix: a
                .matrix
                .scale_real(p)
                .add(&b.matrix.scale_real(1.0 - p)),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        self.matrix.mul(&self.matrix).trace().re
    }
}

/// Kronecker product; output dimensions multiply.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    ComplexMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a.get(i / br, j / bc) * b.get(i % br, j % bc)
    })
}

/// |v><v| for a unit vector v.
pub fn projector_from_vector(v: &StateVector) -> Result<ComplexMatrix, HilbertError> {
    let n = v.norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(HilbertError::NotNormalized { norm: n });
    }
    let d = v.dim();
    Ok(ComplexMatrix::from_fn(d, d, |i, j| {
        v.amplitudes()[i] * v.amplitudes()[j].conj()
    }))
}

/// The single-qubit rotation [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
pub fn rotation_unitary(theta: f64) -> ComplexMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]])
}

/// Embed a single-qubit operator at `qubit` (0 = most significant) in an
/// n-qubit identity context.
pub fn embed_single(
    op: &ComplexMatrix,
    qubit: usize,
    n_qubits: usize,
) -> Result<ComplexMatrix, HilbertError> {
    if qubit >= n_qubits {
        return Err(HilbertError::QubitOutOfRange {
            index: qubit,
            n_qubits,
        });
    }
    assert_eq!((op.rows(), op.cols()), (2, 2), "single-qubit operator expected");
    let mut full = ComplexMatrix::identity(1);
    for q in 0..n_qubits {
        let factor = if q == qubit {
            op.clone()
        } else {
            ComplexMatrix::identity(2)
        };
        full = tensor_product(&full, &factor);
    }
    Ok(full)
}

/// Rotation on one qubit, identity elsewhere.
pub fn embed_rotation(
    theta: f64,
    active_qubit: usize,
    n_qubits: usize,
) -> Result<ComplexMatrix, HilbertError> {
    embed_single(&rotation_unitary(theta), active_qubit, n_qubits)
}

/// Tr[rho . obs] for a Hermitian observable; discards a <1e-10 imaginary part.
pub fn expectation(rho: &DensityOperator, obs: &ComplexMatrix) -> Result<f64, HilbertError> {
    if rho.dim() != obs.rows() || obs.rows() != obs.cols() {
        return Err(HilbertError::DimensionMismatch {
            left: rho.dim(),
            right: obs.rows(),
        });
    }
    if !obs.is_hermitian(1e-10) {
        return Err(HilbertError::NotHermitian {
            defect: obs.hermiticity_defect(),
        });
    }
    let tr = rho.matrix().mul(obs).trace();
    debug_assert!(tr.im.abs() < 1e-10, "expectation imaginary part {}", tr.im);
    Ok(tr.re)
}

/// Normalized Hilbert-Schmidt overlap |Tr[ab]| / sqrt(Tr[a^2] Tr[b^2]).
pub fn fidelity(rho_a: &DensityOperator, rho_b: &DensityOperator) -> Result<f64, HilbertError> {
    if rho_a.dim() != rho_b.dim() {
        return Err(HilbertError::DimensionMismatch {
            left: rho_a.dim(),
            right: rho_b.dim(),
        });
    }
    let pa = rho_a.purity();
    let pb = rho_b.purity();
    if pa < 1e-14 || pb < 1e-14 {
        return Err(HilbertError::ZeroPurity);
    }
    let overlap = rho_a.matrix().mul(rho_b.matrix()).trace().norm();
    Ok(overlap / (pa * pb).sqrt())
}
