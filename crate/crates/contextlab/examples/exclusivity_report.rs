//! Check the exclusivity structure of both built-in scenarios: every
//! context is mutually orthogonal and its probabilities on the reference
//! state sum to one.

use contextlab::scenario::{fully_contextual_c_scenario, kcbs_twin_scenario, validate_exclusivity};

fn main() {
    for s in [kcbs_twin_scenario(), fully_contextual_c_scenario()] {
        let rep = validate_exclusivity(&s).expect("consistent scenario");
        println!("== {} ==", s.name);
        for c in &rep.contexts {
            println!(
                "context {:?}: max overlap {:.2e}, probability sum {:.12}",
                c.indices, c.max_pairwise_overlap, c.probability_sum
            );
        }
        println!(
            "all orthogonal: {}, all context sums unit: {}, total projector probability {:.6}",
            rep.all_orthogonal, rep.all_context_sums_unit, rep.total_projector_probability
        );
        println!();
    }
}
