//! NMR readout protocol: map multi-qubit Pauli observables onto a
//! single-qubit sigma_z measurement through short gate sequences, model
//! pseudopure-state polarization, and optionally add shot noise.
//!
//! Gate conventions, fixed by the mapping contract rather than by pulse
//! phases: CNOT flips the target when the control is |1>, Y90 with positive
//! sign is exp(-i pi/4 sigma_y), X90 with negative sign is exp(+i pi/4
//! sigma_x). Every built-in mapping row is property-tested against
//! Tr[(U rho U^dag) sigma_z] = Tr[rho . observable].

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hilbert::{
    embed_single, expectation, projector_from_vector, ComplexMatrix, DensityOperator,
    HilbertError, StateVector,
};
use crate::pauli::{pauli_matrix, PauliError, PauliPolynomial, PauliString};

#[derive(Debug, Error)]
pub enum NmrError {
    #[error("built-in mappings exist only for 2 or 3 qubits, got {0}")]
    UnsupportedQubits(usize),
    #[error("epsilon must lie in (0, 1], got {0}")]
    BadEpsilon(f64),
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("no measurement mapping for term {0} (strict mode)")]
    MissingMapping(String),
    #[error("state dimension {state} does not match 2^{n_qubits}")]
    DimMismatch { state: usize, n_qubits: usize },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One step of a readout mapping sequence. Qubit indices are zero-based
/// with qubit 0 the most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateStep {
    Identity,
    Cnot { control: usize, target: usize },
    Y90 { qubit: usize, sign: Sign },
    X90 { qubit: usize, sign: Sign },
}

fn y90(sign: Sign) -> ComplexMatrix {
    let r = 0.5f64.sqrt();
    let s = match sign {
        Sign::Plus => r,
        Sign::Minus => -r,
    };
    ComplexMatrix::from_real_rows(&[&[r, -s], &[s, r]])
}

fn x90(sign: Sign) -> ComplexMatrix {
    let r = 0.5f64.sqrt();
    // exp(-i (pi/4) sigma_x) for Plus, the inverse for Minus
    let im = match sign {
        Sign::Plus => -r,
        Sign::Minus => r,
    };
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 0, Complex64::new(r, 0.0));
    m.set(1, 1, Complex64::new(r, 0.0));
    m.set(0, 1, Complex64::new(0.0, im));
    m.set(1, 0, Complex64::new(0.0, im));
    m
}

fn cnot_matrix(control: usize, target: usize, n_qubits: usize) -> Result<ComplexMatrix, NmrError> {
    for &q in &[control, target] {
        if q >= n_qubits {
            return Err(NmrError::QubitOutOfRange { index: q, n_qubits });
        }
    }
    let dim = 1usize << n_qubits;
    let cbit = n_qubits - 1 - control;
    let tbit = n_qubits - 1 - target;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let row = if col & (1 << cbit) != 0 { col ^ (1 << tbit) } else { col };
        m.set(row, col, Complex64::new(1.0, 0.0));
    }
    Ok(m)
}

fn step_matrix(step: &GateStep, n_qubits: usize) -> Result<ComplexMatrix, NmrError> {
    match *step {
        GateStep::Identity => Ok(ComplexMatrix::identity(1 << n_qubits)),
        GateStep::Cnot { control, target } => cnot_matrix(control, target, n_qubits),
        GateStep::Y90 { qubit, sign } => embed_single(&y90(sign), qubit, n_qubits).map_err(Into::into),
        GateStep::X90 { qubit, sign } => embed_single(&x90(sign), qubit, n_qubits).map_err(Into::into),
    }
}

/// Product of gate matrices, steps applied in listed order (first element
/// acts first).
pub fn compose_unitary(steps: &[GateStep], n_qubits: usize) -> Result<ComplexMatrix, NmrError> {
    let mut u = ComplexMatrix::identity(1 << n_qubits);
    for step in steps {
        u = step_matrix(step, n_qubits)?.mul(&u);
    }
    Ok(u)
}

/// A Pauli observable together with the gate sequence that maps it onto a
/// single-qubit sigma_z readout.
#[derive(Debug, Clone)]
pub struct MeasurementMapping {
    pub observable: PauliString,
    pub steps: Vec<GateStep>,
    pub readout_qubit: usize,
}

impl MeasurementMapping {
    pub fn unitary(&self) -> Result<ComplexMatrix, NmrError> {
        compose_unitary(&self.steps, self.observable.n_qubits())
    }

    /// Tr[(U rho U^dag) sigma_z^(readout)]; equals Tr[rho . observable] for
    /// a correct mapping.
    pub fn readout_expectation(&self, rho: &DensityOperator) -> Result<f64, NmrError> {
        let n = self.observable.n_qubits();
        if rho.dim() != 1 << n {
            return Err(NmrError::DimMismatch { state: rho.dim(), n_qubits: n });
        }
        let u = self.unitary()?;
        let mapped = u.mul(rho.matrix()).mul(&u.adjoint());
        let z = embed_single(&crate::pauli::PauliAxis::Z.matrix(), self.readout_qubit, n)?;
        let tr = mapped.mul(&z).trace();
        Ok(tr.re)
    }

    /// Verify the readout contract on `trials` random density operators.
    pub fn contract_defect(&self, trials: usize, seed: u64) -> Result<f64, NmrError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.observable.n_qubits();
        let obs = pauli_matrix(&self.observable);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let rho = random_density(1 << n, &mut rng)?;
            let direct = expectation(&rho, &obs)?;
            let mapped = self.readout_expectation(&rho)?;
            worst = worst.max((direct - mapped).abs());
        }
        Ok(worst)
    }
}

/// Random full-rank-ish density operator: a mixture of two random pure
/// states with the maximally mixed state.
pub fn random_density(dim: usize, rng: &mut ChaCha8Rng) -> Result<DensityOperator, NmrError> {
    let pure = |rng: &mut ChaCha8Rng| -> Result<DensityOperator, NmrError> {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Ok(DensityOperator::from_pure(&StateVector::new(amps).normalized()?)?)
    };
    let a = pure(rng)?;
    let b = pure(rng)?;
    let ab = DensityOperator::mix(&a, &b, rng.gen_range(0.0..1.0))?;
    Ok(DensityOperator::mix(&ab, &DensityOperator::maximally_mixed(dim), rng.gen_range(0.0..=1.0))?)
}

/// The readout tables for two and three qubits.
pub fn builtin_mappings(n_qubits: usize) -> Result<Vec<MeasurementMapping>, NmrError> {
    use GateStep::{Cnot, Identity, X90, Y90};
    let row = |label: &str, steps: Vec<GateStep>, readout_qubit: usize| MeasurementMapping {
        observable: label.parse().expect("static label"),
        steps,
        readout_qubit,
    };
    match n_qubits {
        2 => Ok(vec![
            row(
                "XX",
                vec![
                    Y90 { qubit: 0, sign: Sign::Plus },
                    Y90 { qubit: 1, sign: Sign::Plus },
                    Cnot { control: 0, target: 1 },
                ],
                1,
            ),
            row(
                "YY",
                vec![
                    X90 { qubit: 0, sign: Sign::Minus },
                    X90 { qubit: 1, sign: Sign::Minus },
                    Cnot { control: 0, target: 1 },
                ],
                1,
            ),
            row("ZI", vec![Identity], 0),
            row("ZZ", vec![Cnot { control: 0, target: 1 }], 1),
            row("IZ", vec![Identity], 1),
        ]),
        3 => Ok(vec![
            row("IIZ", vec![Identity], 2),
            row("IZI", vec![Identity], 1),
            row("IZZ", vec![Cnot { control: 1, target: 2 }], 2),
            row("ZII", vec![Identity], 0),
            row("ZIZ", vec![Cnot { control: 0, target: 2 }], 2),
            row("ZZI", vec![Cnot { control: 0, target: 1 }], 1),
            row(
                "ZZZ",
                vec![Cnot { control: 0, target: 1 }, Cnot { control: 1, target: 2 }],
                2,
            ),
        ]),
        other => Err(NmrError::UnsupportedQubits(other)),
    }
}

/// Pseudopure polarization model: (1-eps)/2^n . identity + eps |pure><pure|.
#[derive(Debug, Clone, Copy)]
pub struct PseudopureModel {
    pub epsilon: f64,
    pub n_qubits: usize,
}

impl PseudopureModel {
    pub fn new(epsilon: f64, n_qubits: usize) -> Result<Self, NmrError> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(NmrError::BadEpsilon(epsilon));
        }
        Ok(Self { epsilon, n_qubits })
    }
}

pub fn pps_state(pure: &StateVector, model: &PseudopureModel) -> Result<DensityOperator, NmrError> {
    let dim = 1usize << model.n_qubits;
    if pure.dim() != dim {
        return Err(NmrError::DimMismatch { state: pure.dim(), n_qubits: model.n_qubits });
    }
    let proj = projector_from_vector(pure)?;
    let matrix = ComplexMatrix::identity(dim)
        .scale_real((1.0 - model.epsilon) / dim as f64)
        .add(&proj.scale_real(model.epsilon));
    Ok(DensityOperator::new(matrix)?)
}

/// Sampling regime for the readout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    Exact,
    Count(u64),
}

/// Knobs for `measure_inequality`.
#[derive(Debug, Clone, Copy)]
pub struct ReadoutOptions {
    pub shots: Shots,
    pub seed: u64,
    /// Polarization of the state under test; used only when `normalize` is on.
    pub epsilon: f64,
    /// Divide single-term expectations by epsilon, mimicking deviation-signal
    /// normalization against a reference line.
    pub normalize: bool,
    /// Fail instead of falling back to exact evaluation when a term has no
    /// mapping.
    pub strict: bool,
}

impl Default for ReadoutOptions {
    fn default() -> Self {
        Self { shots: Shots::Exact, seed: 0, epsilon: 1.0, normalize: true, strict: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TermRecord {
    pub exact: f64,
    pub sampled: f64,
}

/// Estimate of an inequality value from per-term sigma_z readouts.
#[derive(Debug, Clone, Serialize)]
pub struct NmrEstimate {
    pub value: f64,
    pub stderr: f64,
    pub per_term: BTreeMap<String, TermRecord>,
    pub epsilon: f64,
    /// None in exact mode.
    pub shots: Option<u64>,
    pub seed: u64,
    /// Terms evaluated exactly because no mapping covered them.
    pub unmapped_terms: Vec<String>,
}

/// Evaluate (1/divisor) . sum of aggregate-observable terms, obtaining each
/// non-identity expectation through its readout mapping. With finite shots
/// each expectation is replaced by the mean of Bernoulli +-1 samples at the
/// exact probability; the identity term always enters exactly.
pub fn measure_inequality(
    state: &DensityOperator,
    agg: &PauliPolynomial,
    mappings: &[MeasurementMapping],
    divisor: f64,
    options: &ReadoutOptions,
) -> Result<NmrEstimate, NmrError> {
    if options.normalize && !(options.epsilon > 0.0 && options.epsilon <= 1.0) {
        return Err(NmrError::BadEpsilon(options.epsilon));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let scale = if options.normalize { 1.0 / options.epsilon } else { 1.0 };
    let mut value = 0.0;
    let mut variance = 0.0;
    let mut per_term = BTreeMap::new();
    let mut unmapped_terms = Vec::new();
    for (term, &coeff) in &agg.terms {
        if term.is_identity() {
            value += coeff / divisor;
            continue;
        }
        let mapping = mappings.iter().find(|m| &m.observable == term);
        let exact_raw = match mapping {
            Some(m) => m.readout_expectation(state)?,
            None => {
                let label = term.to_string();
                if options.strict {
                    return Err(NmrError::MissingMapping(label));
                }
                unmapped_terms.push(label);
                expectation(state, &pauli_matrix(term))?
            }
        };
        let (sampled_raw, term_var_raw) = match options.shots {
            Shots::Exact => (exact_raw, 0.0),
            Shots::Count(shots) => {
                let p = ((1.0 + exact_raw) / 2.0).clamp(0.0, 1.0);
                let mut ups = 0u64;
                for _ in 0..shots {
                    if rng.gen_bool(p) {
                        ups += 1;
                    }
                }
                let mean = 2.0 * ups as f64 / shots as f64 - 1.0;
                ((mean), (1.0 - mean * mean).max(0.0) / shots as f64)
            }
        };
        let exact = exact_raw * scale;
        let sampled = sampled_raw * scale;
        value += coeff * sampled / divisor;
        variance += (coeff * scale / divisor).powi(2) * term_var_raw;
        per_term.insert(term.to_string(), TermRecord { exact, sampled });
    }
    Ok(NmrEstimate {
        value,
        stderr: variance.sqrt(),
        per_term,
        epsilon: options.epsilon,
        shots: match options.shots {
            Shots::Exact => None,
            Shots::Count(s) => Some(s),
        },
        seed: options.seed,
        unmapped_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::aggregate_observable;
    use crate::scenario::{fully_contextual_c_scenario, kcbs_twin_scenario};

    #[test]
    fn identity_step_composes_to_identity() {
        let u = compose_unitary(&[GateStep::Identity], 3).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-15);
    }

    #[test]
    fn cnot_flips_target_on_set_control() {
        let u = cnot_matrix(0, 1, 2).unwrap();
        // |10> -> |11>, |00> untouched
        assert!((u.get(3, 2) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((u.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(u.is_unitary(1e-12));
    }

    #[test]
    fn all_builtin_mappings_satisfy_contract() {
        for n in [2usize, 3] {
            for (i, m) in builtin_mappings(n).unwrap().iter().enumerate() {
                let defect = m.contract_defect(100, 1000 + i as u64).unwrap();
                assert!(
                    defect < 1e-10,
                    "mapping {} for {} qubits off by {defect}",
                    m.observable,
                    n
                );
            }
        }
    }

    #[test]
    fn mapping_tables_cover_expected_observables() {
        let labels3: Vec<String> = builtin_mappings(3)
            .unwrap()
            .iter()
            .map(|m| m.observable.to_string())
            .collect();
        assert_eq!(labels3, ["IIZ", "IZI", "IZZ", "ZII", "ZIZ", "ZZI", "ZZZ"]);
        let labels2: Vec<String> = builtin_mappings(2)
            .unwrap()
            .iter()
            .map(|m| m.observable.to_string())
            .collect();
        assert_eq!(labels2, ["XX", "YY", "ZI", "ZZ", "IZ"]);
        assert!(builtin_mappings(4).is_err());
    }

    #[test]
    fn zzz_mapping_uses_two_cnots() {
        let mappings = builtin_mappings(3).unwrap();
        let zzz = mappings.iter().find(|m| m.observable.to_string() == "ZZZ").unwrap();
        assert_eq!(zzz.steps.len(), 2);
        assert!(matches!(zzz.steps[0], GateStep::Cnot { .. }));
    }

    #[test]
    fn pps_limits() {
        let psi = StateVector::basis(8, 0);
        let model = PseudopureModel::new(1.0, 3).unwrap();
        let rho = pps_state(&psi, &model).unwrap();
        let pure = DensityOperator::from_pure(&psi).unwrap();
        assert!(rho.matrix().max_abs_diff(pure.matrix()) < 1e-14);
        assert!(PseudopureModel::new(0.0, 3).is_err());
        assert!(PseudopureModel::new(1.5, 3).is_err());
    }

    #[test]
    fn kcbs_value_exact_and_under_polarization() {
        let s = kcbs_twin_scenario();
        let agg = aggregate_observable(&s.projectors().unwrap(), 8.0).unwrap();
        let mappings = builtin_mappings(3).unwrap();
        let opts =
            ReadoutOptions { normalize: false, ..ReadoutOptions::default() };

        let pure = DensityOperator::from_pure(&s.reference_state).unwrap();
        let exact = measure_inequality(&pure, &agg, &mappings, 8.0, &opts).unwrap();
        assert!((exact.value - 2.5).abs() < 1e-10);
        assert_eq!(exact.stderr, 0.0);
        assert!(exact.unmapped_terms.is_empty());

        let model = PseudopureModel::new(0.5, 3).unwrap();
        let rho = pps_state(&s.reference_state, &model).unwrap();
        let est = measure_inequality(&rho, &agg, &mappings, 8.0, &opts).unwrap();
        assert!((est.value - 1.875).abs() < 1e-10, "{}", est.value);
    }

    #[test]
    fn epsilon_affine_without_normalization() {
        let s = kcbs_twin_scenario();
        let agg = aggregate_observable(&s.projectors().unwrap(), 8.0).unwrap();
        let mappings = builtin_mappings(3).unwrap();
        let opts = ReadoutOptions { normalize: false, ..ReadoutOptions::default() };
        let pure = DensityOperator::from_pure(&s.reference_state).unwrap();
        let v_pure = measure_inequality(&pure, &agg, &mappings, 8.0, &opts).unwrap().value;
        let v_mixed = measure_inequality(
            &DensityOperator::maximally_mixed(8),
            &agg,
            &mappings,
            8.0,
            &opts,
        )
        .unwrap()
        .value;
        for eps in [0.1, 0.5, 1.0] {
            let rho = pps_state(&s.reference_state, &PseudopureModel::new(eps, 3).unwrap()).unwrap();
            let v = measure_inequality(&rho, &agg, &mappings, 8.0, &opts).unwrap().value;
            assert!((v - ((1.0 - eps) * v_mixed + eps * v_pure)).abs() < 1e-10);
        }
    }

    #[test]
    fn epsilon_normalization_recovers_pure_value() {
        let s = fully_contextual_c_scenario();
        let agg = aggregate_observable(&s.projectors().unwrap(), 4.0).unwrap();
        let mappings = builtin_mappings(2).unwrap();
        let eps = 1e-5;
        let rho = pps_state(&s.reference_state, &PseudopureModel::new(eps, 2).unwrap()).unwrap();
        let opts = ReadoutOptions { epsilon: eps, ..ReadoutOptions::default() };
        let est = measure_inequality(&rho, &agg, &mappings, 4.0, &opts).unwrap();
        assert!((est.value - 3.5).abs() < 1e-8, "{}", est.value);
    }

    #[test]
    fn c_rotated_ninety_degrees() {
        let s = fully_contextual_c_scenario();
        let agg = aggregate_observable(&s.projectors().unwrap(), 4.0).unwrap();
        let mappings = builtin_mappings(2).unwrap();
        let state = DensityOperator::from_pure(
            &s.rotated_reference(90f64.to_radians()).unwrap(),
        )
        .unwrap();
        let est =
            measure_inequality(&state, &agg, &mappings, 4.0, &ReadoutOptions::default()).unwrap();
        assert!((est.value - 2.75).abs() < 1e-10);
    }

    #[test]
    fn shot_noise_within_three_sigma_and_reproducible() {
        let s = kcbs_twin_scenario();
        let agg = aggregate_observable(&s.projectors().unwrap(), 8.0).unwrap();
        let mappings = builtin_mappings(3).unwrap();
        // rotate away from the basis state so the per-shot outcomes are not
        // deterministic and the stderr is strictly positive
        let state = DensityOperator::from_pure(
            &s.rotated_reference(60f64.to_radians()).unwrap(),
        )
        .unwrap();
        let opts = ReadoutOptions {
            shots: Shots::Count(1_000_000),
            seed: 42,
            ..ReadoutOptions::default()
        };
        let a = measure_inequality(&state, &agg, &mappings, 8.0, &opts).unwrap();
        let b = measure_inequality(&state, &agg, &mappings, 8.0, &opts).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        assert!(a.stderr > 0.0 && a.stderr < 5e-3, "stderr {}", a.stderr);
        assert!((a.value - 2.25).abs() < 4.0 * a.stderr, "{} {}", a.value, a.stderr);
    }

    #[test]
    fn strict_mode_requires_mappings() {
        let s = fully_contextual_c_scenario();
        let agg = aggregate_observable(&s.projectors().unwrap(), 4.0).unwrap();
        let rho = DensityOperator::from_pure(&s.reference_state).unwrap();
        let opts = ReadoutOptions { strict: true, ..ReadoutOptions::default() };
        let err = measure_inequality(&rho, &agg, &[], 4.0, &opts);
        assert!(matches!(err, Err(NmrError::MissingMapping(_))));
        // non-strict falls back and flags
        let opts = ReadoutOptions::default();
        let est = measure_inequality(&rho, &agg, &[], 4.0, &opts).unwrap();
        assert_eq!(est.unmapped_terms.len(), 5);
        assert!((est.value - 3.5).abs() < 1e-10);
    }
}
