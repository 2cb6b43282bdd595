//! The JSON artifacts the library emits must validate against the shipped
//! schemas in schemas/.

use contextlab::graphbounds::{bounds_report, build_graph};
use contextlab::hilbert::DensityOperator;
use contextlab::nmrsim::{builtin_mappings, measure_inequality, ReadoutOptions, Shots};
use contextlab::pauli::aggregate_observable;
use contextlab::scenario::{fully_contextual_c_scenario, kcbs_twin_scenario, to_json};

fn compiled(schema_text: &str) -> jsonschema::Validator {
    let schema: serde_json::Value = serde_json::from_str(schema_text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &serde_json::Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

#[test]
fn scenario_documents_validate() {
    let v = compiled(include_str!("../schemas/scenario.schema.json"));
    for s in [kcbs_twin_scenario(), fully_contextual_c_scenario()] {
        assert_valid(&v, &to_json(&s));
    }
}

#[test]
fn pauli_polynomial_documents_validate() {
    let v = compiled(include_str!("../schemas/pauli_polynomial.schema.json"));
    for (s, w) in [(kcbs_twin_scenario(), 8.0), (fully_contextual_c_scenario(), 4.0)] {
        let poly = aggregate_observable(&s.projectors().unwrap(), w).unwrap();
        assert_valid(&v, &serde_json::to_value(&poly).unwrap());
    }
}

#[test]
fn bound_report_documents_validate() {
    let v = compiled(include_str!("../schemas/bound_report.schema.json"));
    for s in [kcbs_twin_scenario(), fully_contextual_c_scenario()] {
        let g = build_graph(&s.vectors, 1e-9).unwrap();
        let report = bounds_report(&g).unwrap();
        assert_valid(&v, &serde_json::to_value(&report).unwrap());
    }
}

#[test]
fn nmr_result_documents_validate() {
    let v = compiled(include_str!("../schemas/nmr_result.schema.json"));
    let s = kcbs_twin_scenario();
    let agg = aggregate_observable(&s.projectors().unwrap(), 8.0).unwrap();
    let mappings = builtin_mappings(3).unwrap();
    let rho = DensityOperator::from_pure(&s.reference_state).unwrap();
    for shots in [Shots::Exact, Shots::Count(1000)] {
        let opts = ReadoutOptions { shots, seed: 3, ..ReadoutOptions::default() };
        let est = measure_inequality(&rho, &agg, &mappings, 8.0, &opts).unwrap();
        assert_valid(&v, &serde_json::to_value(&est).unwrap());
    }
}
