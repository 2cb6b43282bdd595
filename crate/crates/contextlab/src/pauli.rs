//! n-qubit Pauli-string algebra: decompose Hermitian operators into the
//! Pauli basis, reconstruct them, and assemble aggregate observables.
//!
//! Strings are ordered I < X < Y < Z so polynomial terms serialize
//! deterministically. Labels read left-to-right from the most significant
//! qubit, e.g. "ZII" is sigma_z on qubit 1 of three.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::hilbert::{ComplexMatrix, HilbertError};

/// Coefficients smaller than this are dropped after a decomposition. The
/// smallest genuine coefficient in this crate's fixtures is sqrt(2)/32.
pub const PRUNE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PauliError {
    #[error("empty Pauli label")]
    EmptyLabel,
    #[error("invalid Pauli symbol '{0}' (expected I, X, Y or Z)")]
    InvalidSymbol(char),
    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("operator is not Hermitian: max |M - M^dag| = {0}")]
    NotHermitian(f64),
    #[error("projector dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            PauliAxis::I => ComplexMatrix::identity(2),
            PauliAxis::X => ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),
            PauliAxis::Y => {
                let mut m = ComplexMatrix::zeros(2, 2);
                m.set(0, 1, Complex64::new(0.0, -1.0));
                m.set(1, 0, Complex64::new(0.0, 1.0));
                m
            }
            PauliAxis::Z => ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]),
        }
    }

    fn symbol(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis, stored by label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<PauliAxis>);

impl PauliString {
    pub fn new(axes: Vec<PauliAxis>) -> Result<Self, PauliError> {
        if axes.is_empty() {
            return Err(PauliError::EmptyLabel);
        }
        Ok(Self(axes))
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self(vec![PauliAxis::I; n_qubits])
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn axes(&self) -> &[PauliAxis] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == PauliAxis::I)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{}", a.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(PauliError::EmptyLabel);
        }
        s.chars()
            .map(|c| match c {
                'I' => Ok(PauliAxis::I),
                'X' => Ok(PauliAxis::X),
                'Y' => Ok(PauliAxis::Y),
                'Z' => Ok(PauliAxis::Z),
                other => Err(PauliError::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Real-weighted sum of Pauli strings (a Hermitian operator in the Pauli basis).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliPolynomial {
    #[serde(rename = "n")]
    pub n_qubits: usize,
    pub terms: BTreeMap<PauliString, f64>,
}

impl PauliPolynomial {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn coefficient(&self, label: &str) -> f64 {
        label
            .parse::<PauliString>()
            .ok()
            .and_then(|p| self.terms.get(&p).copied())
            .unwrap_or(0.0)
    }
}

/// 2^n x 2^n matrix for a Pauli string, via chained tensor products.
pub fn pauli_matrix(p: &PauliString) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(1);
    for axis in p.axes() {
        m = crate::hilbert::tensor_product(&m, &axis.matrix());
    }
    m
}

fn all_strings(n: usize) -> Vec<PauliString> {
    let axes = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<PauliAxis>| {
                axes.iter().map(move |&a| {
                    let mut next = prefix.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(PauliString).collect()
}

/// Expand a Hermitian operator in the Pauli basis: c_P = Tr[P.H] / 2^n.
pub fn decompose(h: &ComplexMatrix) -> Result<PauliPolynomial, PauliError> {
    let dim = h.rows();
    if dim == 0 || !dim.is_power_of_two() || h.cols() != dim {
        return Err(PauliError::NotPowerOfTwo(dim));
    }
    if !h.is_hermitian(1e-10) {
        return Err(PauliError::NotHermitian(h.hermiticity_defect()));
    }
    let n = dim.trailing_zeros() as usize;
    let mut terms = BTreeMap::new();
    for p in all_strings(n) {
        let c = pauli_matrix(&p).mul(h).trace().re / dim as f64;
        if c.abs() >= PRUNE_TOL {
            terms.insert(p, c);
        }
    }
    Ok(PauliPolynomial { n_qubits: n, terms })
}

/// Sum c_P . P as a dense matrix.
pub fn reconstruct(poly: &PauliPolynomial) -> ComplexMatrix {
    let dim = 1usize << poly.n_qubits;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (p, &c) in &poly.terms {
        m = m.add(&pauli_matrix(p).scale_real(c));
    }
    m
}

/// decompose(weight . sum of projectors). An empty list yields the zero
/// polynomial on zero qubits.
pub fn aggregate_observable(
    projectors: &[ComplexMatrix],
    weight: f64,
) -> Result<PauliPolynomial, PauliError> {
    let Some(first) = projectors.first() else {
        return Ok(PauliPolynomial::zero(0));
    };
    let dim = first.rows();
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for p in projectors {
        if p.rows() != dim || p.cols() != dim {
            return Err(PauliError::DimMismatch(dim, p.rows()));
        }
        sum = sum.add(p);
    }
    decompose(&sum.scale_real(weight))
}

/// Table of the 36 three-qubit operator labels the eight-dimensional
/// inequality is reported against, indexed A0..A35.
pub const A_LABELS: [&str; 36] = [
    "IIX", "IIZ", "IXI", "IXX", "IXZ", "IYY", "IZI", "IZX", "IZZ", "XII", "XIX", "XIZ", "XXI",
    "XXX", "XXZ", "XYX", "XYY", "XZI", "XZX", "XZZ", "YIY", "YXY", "YYI", "YYX", "YYZ", "YZY",
    "ZII", "ZIX", "ZIZ", "ZXI", "ZXX", "ZXZ", "ZYY", "ZZI", "ZZX", "ZZZ",
];

/// Two-qubit operator labels for the four-dimensional inequality, B0..B4.
pub const B_LABELS: [&str; 5] = ["XX", "YY", "ZI", "ZZ", "IZ"];

/// A-index for a three-qubit label, if the label appears in the table.
pub fn a_index(label: &str) -> Option<usize> {
    A_LABELS.iter().position(|&l| l == label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{projector_from_vector, StateVector};
    use rand::{Rng, SeedableRng};

    #[test]
    fn pauli_matrix_single_z() {
        let z = pauli_matrix(&"Z".parse().unwrap());
        assert!((z.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((z.get(1, 1).re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_matrix_iix_matches_a0() {
        use crate::hilbert::tensor_product;
        let a0 = tensor_product(
            &tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2)),
            &PauliAxis::X.matrix(),
        );
        assert!(pauli_matrix(&"IIX".parse().unwrap()).max_abs_diff(&a0) < 1e-15);
        assert_eq!(a_index("IIX"), Some(0));
        assert_eq!(a_index("ZZZ"), Some(35));
    }

    #[test]
    fn pauli_matrix_zzz_is_parity_diagonal() {
        let zzz = pauli_matrix(&"ZZZ".parse().unwrap());
        for i in 0..8usize {
            let parity = if (i as u32).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            assert!((zzz.get(i, i).re - parity).abs() < 1e-15);
        }
    }

    #[test]
    fn empty_label_rejected() {
        assert!("".parse::<PauliString>().is_err());
        assert!("XQZ".parse::<PauliString>().is_err());
    }

    #[test]
    fn decompose_identity() {
        let poly = decompose(&ComplexMatrix::identity(8)).unwrap();
        assert_eq!(poly.terms.len(), 1);
        assert!((poly.coefficient("III") - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decompose_pi2_of_the_eight_dim_set() {
        let v2 = StateVector::from_reals(&[0.5, -0.5, -0.5, -0.5, 0.0, 0.0, 0.0, 0.0]);
        let poly = decompose(&projector_from_vector(&v2).unwrap()).unwrap();
        let expect = [
            ("IXZ", -0.125),
            ("IYY", 0.125),
            ("IZX", -0.125),
            ("ZII", 0.125),
            ("ZXZ", -0.125),
            ("ZYY", 0.125),
            ("ZZX", -0.125),
            ("III", 0.125),
        ];
        assert_eq!(poly.terms.len(), expect.len());
        for (label, c) in expect {
            assert!(
                (poly.coefficient(label) - c).abs() < 1e-12,
                "{label}: {} vs {c}",
                poly.coefficient(label)
            );
        }
    }

    #[test]
    fn decompose_pi0_of_the_four_dim_set() {
        let u0 = StateVector::from_reals(&[0.0, 0.0, 1.0, 1.0]).normalized().unwrap();
        let poly = decompose(&projector_from_vector(&u0).unwrap()).unwrap();
        let expect = [("ZI", -0.25), ("ZX", -0.25), ("IX", 0.25), ("II", 0.25)];
        assert_eq!(poly.terms.len(), expect.len());
        for (label, c) in expect {
            assert!((poly.coefficient(label) - c).abs() < 1e-12, "{label}");
        }
    }

    #[test]
    fn decompose_rejects_bad_input() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(0, 1, Complex64::new(1.0, 0.0));
        assert!(matches!(decompose(&m), Err(PauliError::NotHermitian(_))));
        assert!(matches!(
            decompose(&ComplexMatrix::identity(3)),
            Err(PauliError::NotPowerOfTwo(3))
        ));
    }

    #[test]
    fn reconstruct_identity_term() {
        let mut poly = PauliPolynomial::zero(2);
        poly.terms.insert("II".parse().unwrap(), 1.0);
        assert!(reconstruct(&poly).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn aggregate_of_empty_list_is_zero() {
        let poly = aggregate_observable(&[], 8.0).unwrap();
        assert!(poly.terms.is_empty());
    }

    #[test]
    fn round_trip_random_hermitian() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..200 {
            let dim = if trial % 2 == 0 { 4 } else { 8 };
            let m = ComplexMatrix::from_fn(dim, dim, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let h = m.add(&m.adjoint()).scale_real(0.5);
            let poly = decompose(&h).unwrap();
            assert!(
                reconstruct(&poly).max_abs_diff(&h) < 1e-12,
                "round trip failed at trial {trial}"
            );
            // Parseval: sum c^2 * 2^n = Tr[H^2]
            let lhs: f64 = poly.terms.values().map(|c| c * c).sum::<f64>() * dim as f64;
            let rhs = h.mul(&h).trace().re;
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn polynomial_json_shape() {
        let mut poly = PauliPolynomial::zero(3);
        poly.terms.insert("XZI".parse().unwrap(), 0.5);
        let json = serde_json::to_value(&poly).unwrap();
        assert_eq!(json["n"], 3);
        assert_eq!(json["terms"]["XZI"], 0.5);
        let back: PauliPolynomial = serde_json::from_value(json).unwrap();
        assert_eq!(back, poly);
    }
}
