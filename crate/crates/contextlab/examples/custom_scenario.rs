//! Round-trip a scenario through JSON and build a small custom one from
//! scratch: the pentagon test in dimension 3.

use contextlab::graphbounds::{bounds_report, build_graph};
use contextlab::hilbert::{DensityOperator, StateVector};
use contextlab::scenario::{evaluate, from_json, kcbs_twin_scenario, to_json, ContextualityScenario};

fn main() {
    // serialize a built-in and read it back
    let k = kcbs_twin_scenario();
    let doc = to_json(&k);
    let back = from_json(&doc).expect("round trip");
    println!("{} survives JSON round trip: dim {}", back.name, back.dim);

    // pentagram vectors (sin t cos phi_j, sin t sin phi_j, cos t) with
    // phi_j = 4 pi j / 5 and cos^2 t = c / (1 + c), c = cos(pi / 5);
    // consecutive pairs are orthogonal
    let c = (std::f64::consts::PI / 5.0).cos();
    let cos_t = (c / (1.0 + c)).sqrt();
    let sin_t = (1.0 / (1.0 + c)).sqrt();
    let vectors: Vec<StateVector> = (0..5)
        .map(|j| {
            let phi = 4.0 * std::f64::consts::PI * j as f64 / 5.0;
            StateVector::from_reals(&[sin_t * phi.cos(), sin_t * phi.sin(), cos_t])
                .normalized()
                .unwrap()
        })
        .collect();
    let contexts: Vec<Vec<usize>> = (0..5).map(|j| vec![j, (j + 1) % 5]).collect();
    let reference = StateVector::basis(3, 2);
    let five_sqrt = 5f64.sqrt();
    let s = ContextualityScenario::new(
        "pentagon",
        3,
        vectors,
        contexts,
        1.0,
        reference,
        (2.0, five_sqrt, 2.5),
        None,
    )
    .expect("orthogonal contexts");

    let rho = DensityOperator::from_pure(&s.reference_state).unwrap();
    println!(
        "pentagon value on the symmetry axis: {:.6} (quantum max sqrt(5) = {:.6})",
        evaluate(&s, &rho).unwrap(),
        five_sqrt
    );
    let g = build_graph(&s.vectors, 1e-9).unwrap();
    let rep = bounds_report(&g).unwrap();
    println!(
        "pentagon bounds: alpha = {}, alpha* = {:.3}",
        rep.independence_number, rep.fractional_packing
    );
}
