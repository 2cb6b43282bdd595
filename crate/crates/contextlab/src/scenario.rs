//! Contextuality scenarios: the projective vectors, measurement contexts,
//! bounds and reference state of an inequality, plus evaluation under
//! arbitrary states and rotation sweeps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{
    embed_rotation, expectation, projector_from_vector, ComplexMatrix, DensityOperator,
    HilbertError, StateVector,
};
use crate::pauli::{reconstruct, PauliPolynomial};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("scenario has no vectors")]
    Empty,
    #[error("vector {index} is not normalized: |v| = {norm}")]
    UnnormalizedVector { index: usize, norm: f64 },
    #[error("vector {index} has dimension {dim}, expected {expected}")]
    DimMismatch { index: usize, dim: usize, expected: usize },
    #[error("context {context} references vector {index} out of range")]
    BadContextIndex { context: usize, index: usize },
    #[error("context {context} is empty")]
    EmptyContext { context: usize },
    #[error("context {context}: vectors {a} and {b} are not orthogonal (|<a|b>| = {overlap})")]
    NotOrthogonal { context: usize, a: usize, b: usize, overlap: f64 },
    #[error("bounds are not ordered: nchv {nchv} <= qm {qm} <= gp {gp} violated")]
    BadBounds { nchv: f64, qm: f64, gp: f64 },
    #[error("state dimension {state} does not match scenario dimension {scenario}")]
    StateDimMismatch { state: usize, scenario: usize },
    #[error("divisor must be nonzero")]
    ZeroDivisor,
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// Cross-check curve for the built-in rotation sweeps. These are derived
/// closed forms, not inputs; `rotation_sweep` validates them against the
/// direct evaluation before reporting them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// 2 + cos(theta) / 2
    KcbsTwin,
    /// 2.75 + 0.75 cos(theta)
    FullyContextualC,
}

impl ClosedForm {
    pub fn value(self, theta_rad: f64) -> f64 {
        match self {
            ClosedForm::KcbsTwin => 2.0 + theta_rad.cos() / 2.0,
            ClosedForm::FullyContextualC => 2.75 + 0.75 * theta_rad.cos(),
        }
    }
}

/// A contextuality test: vectors, contexts, weights, bounds and the
/// reference state that maximizes the inequality value.
///
/// The inequality value of a state is the sum of projector probabilities
/// `sum_j Tr[rho Pi_j]`. For context-weighted tests this equals
/// `w * sum_contexts sum_{j in context} Tr[rho Pi_j]` whenever every
/// projector appears in `1/w` contexts, which holds for both built-ins.
#[derive(Debug, Clone)]
pub struct ContextualityScenario {
    pub name: String,
    pub dim: usize,
    pub vectors: Vec<StateVector>,
    pub contexts: Vec<Vec<usize>>,
    pub context_weight: f64,
    pub reference_state: StateVector,
    pub bound_nchv: f64,
    pub bound_qm: f64,
    pub bound_gp: f64,
    pub closed_form: Option<ClosedForm>,
}

/// Per-context validation entry.
#[derive(Debug, Clone, Serialize)]
pub struct ContextCheck {
    pub indices: Vec<usize>,
    pub max_pairwise_overlap: f64,
    pub probability_sum: f64,
    pub orthogonal: bool,
    pub sums_to_one: bool,
}

/// Result of `validate_exclusivity`.
#[derive(Debug, Clone, Serialize)]
pub struct ExclusivityReport {
    pub contexts: Vec<ContextCheck>,
    pub all_orthogonal: bool,
    pub all_context_sums_unit: bool,
    /// sum over every projector of |<v_j|ref>|^2.
    pub total_projector_probability: f64,
}

/// One row of a rotation sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRecord {
    pub theta_deg: f64,
    pub value: f64,
    pub closed_form_value: Option<f64>,
}

impl ContextualityScenario {
    /// Validates normalization, context orthogonality and bound ordering.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        vectors: Vec<StateVector>,
        contexts: Vec<Vec<usize>>,
        context_weight: f64,
        reference_state: StateVector,
        bounds: (f64, f64, f64),
        closed_form: Option<ClosedForm>,
    ) -> Result<Self, ScenarioError> {
        if vectors.is_empty() {
            return Err(ScenarioError::Empty);
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.dim() != dim {
                return Err(ScenarioError::DimMismatch { index, dim: v.dim(), expected: dim });
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(ScenarioError::UnnormalizedVector { index, norm });
            }
        }
        if reference_state.dim() != dim {
            return Err(ScenarioError::DimMismatch {
                index: usize::MAX,
                dim: reference_state.dim(),
                expected: dim,
            });
        }
        for (ci, ctx) in contexts.iter().enumerate() {
            if ctx.is_empty() {
                return Err(ScenarioError::EmptyContext { context: ci });
            }
            for &i in ctx {
                if i >= vectors.len() {
                    return Err(ScenarioError::BadContextIndex { context: ci, index: i });
                }
            }
            for (p, &a) in ctx.iter().enumerate() {
                for &b in &ctx[p + 1..] {
                    let overlap = vectors[a].inner(&vectors[b])?.norm();
                    if overlap > 1e-10 {
                        return Err(ScenarioError::NotOrthogonal { context: ci, a, b, overlap });
                    }
                }
            }
        }
        let (nchv, qm, gp) = bounds;
        if !(nchv <= qm + 1e-12 && qm <= gp + 1e-12) {
            return Err(ScenarioError::BadBounds { nchv, qm, gp });
        }
        Ok(Self {
            name: name.into(),
            dim,
            vectors,
            contexts,
            context_weight,
            reference_state,
            bound_nchv: nchv,
            bound_qm: qm,
            bound_gp: gp,
            closed_form,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn projectors(&self) -> Result<Vec<ComplexMatrix>, ScenarioError> {
        self.vectors
            .iter()
            .map(|v| projector_from_vector(v).map_err(ScenarioError::from))
            .collect()
    }

    /// Reference state rotated on the most significant qubit.
    pub fn rotated_reference(&self, theta_rad: f64) -> Result<StateVector, ScenarioError> {
        let u = embed_rotation(theta_rad, 0, self.n_qubits())?;
        Ok(u.apply(&self.reference_state))
    }
}

/// Ten projectors, five four-element contexts on dimension eight. Each
/// projector sits in exactly two contexts, so the weighted context sum
/// equals the plain projector-probability sum.
pub fn kcbs_twin_scenario() -> ContextualityScenario {
    let s2 = 2.0_f64.sqrt();
    let s3 = 3.0_f64.sqrt();
    let s8 = 8.0_f64.sqrt();
    let rows: [[f64; 8]; 10] = [
        [s2 / s8, -s2 / s8, 0.0, 0.0, 2.0 / s8, 0.0, 0.0, 0.0],
        [s2 / s8, 0.0, 0.0, s2 / s8, -1.0 / s8, s3 / s8, 0.0, 0.0],
        [0.5, -0.5, -0.5, -0.5, 0.0, 0.0, 0.0, 0.0],
        [0.5, -0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0],
        [s2 / s8, 0.0, 0.0, -s2 / s8, -1.0 / s8, s3 / s8, 0.0, 0.0],
        [s2 / s8, 0.0, -s2 / s8, 0.0, -1.0 / s8, -s3 / s8, 0.0, 0.0],
        [s2 / s8, 0.0, s2 / s8, 0.0, -1.0 / s8, -s3 / s8, 0.0, 0.0],
        [0.5, 0.5, 0.5, -0.5, 0.0, 0.0, 0.0, 0.0],
        [s2 / s8, s2 / s8, 0.0, 0.0, 2.0 / s8, 0.0, 0.0, 0.0],
        [0.5, 0.5, -0.5, 0.5, 0.0, 0.0, 0.0, 0.0],
    ];
    let vectors = rows.iter().map(|r| StateVector::from_reals(r)).collect();
    // index sets {i, i+1, i+5, i+7} with both offsets wrapping inside 5..9
    let contexts = vec![
        vec![0, 1, 5, 7],
        vec![1, 2, 6, 8],
        vec![2, 3, 7, 9],
        vec![3, 4, 8, 5],
        vec![4, 0, 9, 6],
    ];
    ContextualityScenario::new(
        "kcbs-twin",
        8,
        vectors,
        contexts,
        0.5,
        StateVector::basis(8, 0),
        (2.0, 2.5, 2.5),
        Some(ClosedForm::KcbsTwin),
    )
    .expect("built-in scenario must validate")
}

/// Ten projectors on dimension four, measured one at a time. The stored
/// contexts are the pairwise exclusivity edges derived from the vectors;
/// they exist for validation, not for weighting the sum.
pub fn fully_contextual_c_scenario() -> ContextualityScenario {
    let s2 = 2.0_f64.sqrt();
    let rows: [[f64; 4]; 10] = [
        [0.0, 0.0, 1.0 / s2, 1.0 / s2],
        [0.5, -0.5, 0.5, -0.5],
        [0.5, -0.5, -0.5, 0.5],
        [1.0 / s2, 0.0, 0.0, -1.0 / s2],
        [0.5, 0.5, 0.5, 0.5],
        [0.0, 1.0 / s2, 0.0, -1.0 / s2],
        [-0.5, 0.5, 0.5, 0.5],
        [1.0 / s2, 0.0, 0.0, 1.0 / s2],
        [0.5, 0.5, 0.5, -0.5],
        [0.5, 0.5, -0.5, 0.5],
    ];
    let vectors: Vec<StateVector> = rows.iter().map(|r| StateVector::from_reals(r)).collect();
    let graph = crate::graphbounds::build_graph(&vectors, 1e-9)
        .expect("built-in vectors share a dimension");
    let contexts = graph.edges().iter().map(|&(a, b)| vec![a, b]).collect();
    ContextualityScenario::new(
        "c4",
        4,
        vectors,
        contexts,
        1.0,
        StateVector::basis(4, 3),
        (3.0, 3.5, 3.5),
        Some(ClosedForm::FullyContextualC),
    )
    .expect("built-in scenario must validate")
}

/// Per-context orthogonality and probability-sum report on the reference state.
pub fn validate_exclusivity(s: &ContextualityScenario) -> Result<ExclusivityReport, ScenarioError> {
    let mut checks = Vec::with_capacity(s.contexts.len());
    for ctx in &s.contexts {
        let mut max_overlap = 0.0f64;
        for (p, &a) in ctx.iter().enumerate() {
            for &b in &ctx[p + 1..] {
                max_overlap = max_overlap.max(s.vectors[a].inner(&s.vectors[b])?.norm());
            }
        }
        let probability_sum: f64 = ctx
            .iter()
            .map(|&j| Ok::<f64, ScenarioError>(s.vectors[j].inner(&s.reference_state)?.norm_sqr()))
            .sum::<Result<f64, _>>()?;
        checks.push(ContextCheck {
            indices: ctx.clone(),
            max_pairwise_overlap: max_overlap,
            probability_sum,
            orthogonal: max_overlap <= 1e-10,
            sums_to_one: (probability_sum - 1.0).abs() <= 1e-10,
        });
    }
    let total_projector_probability = s
        .vectors
        .iter()
        .map(|v| Ok::<f64, ScenarioError>(v.inner(&s.reference_state)?.norm_sqr()))
        .sum::<Result<f64, _>>()?;
    Ok(ExclusivityReport {
        all_orthogonal: checks.iter().all(|c| c.orthogonal),
        all_context_sums_unit: checks.iter().all(|c| c.sums_to_one),
        contexts: checks,
        total_projector_probability,
    })
}

/// Inequality value: sum over all projectors of Tr[rho Pi_j].
pub fn evaluate(s: &ContextualityScenario, state: &DensityOperator) -> Result<f64, ScenarioError> {
    if state.dim() != s.dim {
        return Err(ScenarioError::StateDimMismatch { state: state.dim(), scenario: s.dim });
    }
    let mut total = 0.0;
    for p in s.projectors()? {
        total += expectation(state, &p)?;
    }
    Ok(total)
}

/// Same value through the aggregate-observable route: (1/divisor) Tr[M rho]
/// with M reconstructed from the polynomial built at weight = divisor.
pub fn evaluate_via_pauli(
    s: &ContextualityScenario,
    state: &DensityOperator,
    agg: &PauliPolynomial,
    divisor: f64,
) -> Result<f64, ScenarioError> {
    if divisor == 0.0 {
        return Err(ScenarioError::ZeroDivisor);
    }
    if state.dim() != s.dim {
        return Err(ScenarioError::StateDimMismatch { state: state.dim(), scenario: s.dim });
    }
    let m = reconstruct(agg);
    Ok(expectation(state, &m)? / divisor)
}

/// Evaluate the scenario on the reference state rotated through each angle.
/// When the scenario carries a closed form it is revalidated against the
/// direct evaluation and reported alongside.
pub fn rotation_sweep(
    s: &ContextualityScenario,
    thetas_deg: &[f64],
) -> Result<Vec<SweepRecord>, ScenarioError> {
    thetas_deg
        .iter()
        .map(|&theta_deg| {
            let theta = theta_deg.to_radians();
            let state = DensityOperator::from_pure(&s.rotated_reference(theta)?)?;
            let value = evaluate(s, &state)?;
            let closed_form_value = s.closed_form.map(|cf| cf.value(theta));
            if let Some(cf) = closed_form_value {
                debug_assert!(
                    (value - cf).abs() < 1e-9,
                    "closed form drifted from direct evaluation at {theta_deg} deg"
                );
            }
            Ok(SweepRecord { theta_deg, value, closed_form_value })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// JSON schema: {"name", "dim", "vectors": [[[re,im],...], ...], "contexts",
// "context_weight", "reference_state", "bounds": {"nchv","qm","gp"}}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BoundsJson {
    nchv: f64,
    qm: f64,
    gp: f64,
}

#[derive(Serialize, Deserialize)]
struct ScenarioJson {
    name: String,
    dim: usize,
    vectors: Vec<Vec<[f64; 2]>>,
    contexts: Vec<Vec<usize>>,
    context_weight: f64,
    reference_state: Vec<[f64; 2]>,
    bounds: BoundsJson,
}

fn vector_to_json(v: &StateVector) -> Vec<[f64; 2]> {
    v.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}

fn vector_from_json(pairs: &[[f64; 2]]) -> StateVector {
    StateVector::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
}

pub fn to_json(s: &ContextualityScenario) -> serde_json::Value {
    serde_json::to_value(ScenarioJson {
        name: s.name.clone(),
        dim: s.dim,
        vectors: s.vectors.iter().map(vector_to_json).collect(),
        contexts: s.contexts.clone(),
        context_weight: s.context_weight,
        reference_state: vector_to_json(&s.reference_state),
        bounds: BoundsJson { nchv: s.bound_nchv, qm: s.bound_qm, gp: s.bound_gp },
    })
    .expect("scenario serialization is infallible")
}

/// Load and validate a scenario from its JSON form. Scenarios named after a
/// built-in regain that built-in's closed-form cross-check.
pub fn from_json(value: &serde_json::Value) -> Result<ContextualityScenario, ScenarioError> {
    let raw: ScenarioJson = serde_json::from_value(value.clone()).map_err(|e| {
        ScenarioError::Hilbert(HilbertError::InvalidDensity { reason: format!("bad scenario JSON: {e}") })
    })?;
    let closed_form = match raw.name.as_str() {
        "kcbs-twin" => Some(ClosedForm::KcbsTwin),
        "c4" => Some(ClosedForm::FullyContextualC),
        _ => None,
    };
    ContextualityScenario::new(
        raw.name,
        raw.dim,
        raw.vectors.iter().map(|v| vector_from_json(v)).collect(),
        raw.contexts,
        raw.context_weight,
        vector_from_json(&raw.reference_state),
        (raw.bounds.nchv, raw.bounds.qm, raw.bounds.gp),
        closed_form,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::aggregate_observable;
    use rand::{Rng, SeedableRng};

    #[test]
    fn kcbs_contexts_are_the_expected_index_sets() {
        let s = kcbs_twin_scenario();
        assert_eq!(s.contexts[0], vec![0, 1, 5, 7]);
        assert!(s.contexts[3].contains(&5), "wraparound 3 + 7 = 5");
        assert_eq!(s.contexts.len(), 5);
        assert_eq!(s.vectors.len(), 10);
    }

    #[test]
    fn kcbs_exclusivity_sums_to_one() {
        let s = kcbs_twin_scenario();
        let report = validate_exclusivity(&s).unwrap();
        assert!(report.all_orthogonal);
        assert!(report.all_context_sums_unit);
        for c in &report.contexts {
            assert!((c.probability_sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn c4_reference_probability_total() {
        let s = fully_contextual_c_scenario();
        let report = validate_exclusivity(&s).unwrap();
        assert!(report.all_orthogonal);
        assert!((report.total_projector_probability - 3.5).abs() < 1e-10);
    }

    #[test]
    fn c4_contexts_come_from_actual_orthogonality() {
        let s = fully_contextual_c_scenario();
        // u0 and u3 overlap by 1/2, so (0,3) must not be an edge
        assert!(!s.contexts.contains(&vec![0, 3]));
        let o = s.vectors[0].inner(&s.vectors[3]).unwrap().norm();
        assert!((o - 0.5).abs() < 1e-12);
        // u1 and u2 are orthogonal
        assert!(s.contexts.contains(&vec![1, 2]));
        assert_eq!(s.contexts.len(), 21);
    }

    #[test]
    fn duplicated_vector_in_context_rejected() {
        let s = kcbs_twin_scenario();
        let bad = ContextualityScenario::new(
            "bad",
            8,
            s.vectors.clone(),
            vec![vec![0, 0]],
            0.5,
            s.reference_state.clone(),
            (2.0, 2.5, 2.5),
            None,
        );
        assert!(matches!(bad, Err(ScenarioError::NotOrthogonal { .. })));
    }

    #[test]
    fn evaluate_reference_states() {
        let k = kcbs_twin_scenario();
        let psi = DensityOperator::from_pure(&k.reference_state).unwrap();
        assert!((evaluate(&k, &psi).unwrap() - 2.5).abs() < 1e-10);

        let c = fully_contextual_c_scenario();
        let phi = DensityOperator::from_pure(&c.reference_state).unwrap();
        assert!((evaluate(&c, &phi).unwrap() - 3.5).abs() < 1e-10);

        // every eight-dim vector has zero support on the last two components
        let e7 = DensityOperator::from_pure(&StateVector::basis(8, 7)).unwrap();
        assert!(evaluate(&k, &e7).unwrap().abs() < 1e-10);
    }

    #[test]
    fn weighted_context_sum_equals_projector_sum_for_kcbs() {
        let s = kcbs_twin_scenario();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let amps: Vec<Complex64> = (0..8)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let state =
                DensityOperator::from_pure(&StateVector::new(amps).normalized().unwrap()).unwrap();
            let projectors = s.projectors().unwrap();
            let by_context: f64 = s
                .contexts
                .iter()
                .map(|ctx| {
                    ctx.iter()
                        .map(|&j| expectation(&state, &projectors[j]).unwrap())
                        .sum::<f64>()
                })
                .sum();
            let direct = evaluate(&s, &state).unwrap();
            assert!((s.context_weight * by_context - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn pauli_route_agrees_on_random_mixed_states() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for s in [kcbs_twin_scenario(), fully_contextual_c_scenario()] {
            let weight = s.dim as f64;
            let agg = aggregate_observable(&s.projectors().unwrap(), weight).unwrap();
            for _ in 0..100 {
                let amps: Vec<Complex64> = (0..s.dim)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let pure =
                    DensityOperator::from_pure(&StateVector::new(amps).normalized().unwrap())
                        .unwrap();
                let mixed = DensityOperator::mix(
                    &pure,
                    &DensityOperator::maximally_mixed(s.dim),
                    rng.gen_range(0.0..1.0),
                )
                .unwrap();
                let a = evaluate(&s, &mixed).unwrap();
                let b = evaluate_via_pauli(&s, &mixed, &agg, weight).unwrap();
                assert!((a - b).abs() < 1e-10, "{}: {a} vs {b}", s.name);
            }
        }
    }

    #[test]
    fn pauli_route_on_maximally_mixed() {
        let s = kcbs_twin_scenario();
        let agg = aggregate_observable(&s.projectors().unwrap(), 8.0).unwrap();
        let mixed = DensityOperator::maximally_mixed(8);
        let v = evaluate_via_pauli(&s, &mixed, &agg, 8.0).unwrap();
        assert!((v - 1.25).abs() < 1e-10);
    }

    #[test]
    fn closed_forms_match_direct_evaluation_on_degree_grid() {
        for s in [kcbs_twin_scenario(), fully_contextual_c_scenario()] {
            let thetas: Vec<f64> = (0..=360).map(|d| d as f64).collect();
            let records = rotation_sweep(&s, &thetas).unwrap();
            let mut max_err = 0.0f64;
            for r in &records {
                max_err = max_err.max((r.value - r.closed_form_value.unwrap()).abs());
            }
            assert!(max_err < 1e-9, "{}: {max_err}", s.name);
            // non-increasing on [0, 180]
            for w in records[..181].windows(2) {
                assert!(w[1].value <= w[0].value + 1e-12);
            }
        }
    }

    #[test]
    fn violation_ranges() {
        let k = kcbs_twin_scenario();
        let c = fully_contextual_c_scenario();
        for d in 0..=180 {
            let theta = [d as f64];
            let kv = rotation_sweep(&k, &theta).unwrap()[0].value;
            assert_eq!(kv > 2.0, d < 90, "K at {d} deg: {kv}");
            let cv = rotation_sweep(&c, &theta).unwrap()[0].value;
            // violation up to arccos(1/3) ~ 70.53 deg
            assert_eq!(cv > 3.0, (d as f64) < 70.53, "C at {d} deg: {cv}");
        }
    }

    #[test]
    fn json_round_trip() {
        for s in [kcbs_twin_scenario(), fully_contextual_c_scenario()] {
            let json = to_json(&s);
            let back = from_json(&json).unwrap();
            assert_eq!(back.name, s.name);
            assert_eq!(back.dim, s.dim);
            assert_eq!(back.contexts, s.contexts);
            assert_eq!(back.closed_form, s.closed_form);
            let rho = DensityOperator::from_pure(&back.reference_state).unwrap();
            let a = evaluate(&s, &rho).unwrap();
            let b = evaluate(&back, &rho).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn corrupted_json_rejected() {
        let mut json = to_json(&kcbs_twin_scenario());
        json["vectors"][0][0] = serde_json::json!([5.0, 0.0]);
        assert!(matches!(
            from_json(&json),
            Err(ScenarioError::UnnormalizedVector { .. })
        ));
    }
}
