//! Rotate the reference state of each built-in scenario and print the
//! inequality value next to its closed form and the classical bound.

use contextlab::hilbert::DensityOperator;
use contextlab::scenario::{evaluate, fully_contextual_c_scenario, kcbs_twin_scenario};

fn main() {
    for s in [kcbs_twin_scenario(), fully_contextual_c_scenario()] {
        println!(
            "== {} ==  nchv bound {:.3}, generalized bound {:.3}",
            s.name, s.bound_nchv, s.bound_gp
        );
        println!("{:>9} {:>9} {:>12} {:>9}", "theta", "value", "closed form", "violates");
        for deg in (0..=180).step_by(15) {
            let theta = (deg as f64).to_radians();
            let psi = s.rotated_reference(theta).expect("embedded rotation");
            let rho = DensityOperator::from_pure(&psi).expect("pure state");
            let value = evaluate(&s, &rho).expect("matching dims");
            let cf = s.closed_form.map(|f| f.value(theta)).unwrap_or(f64::NAN);
            println!(
                "{deg:>8}\u{b0} {value:>9.4} {cf:>12.4} {:>9}",
                if value > s.bound_nchv + 1e-12 { "yes" } else { "no" }
            );
        }
        println!();
    }
}
