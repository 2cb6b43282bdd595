//! Decompose each built-in projector into the Pauli basis and diff the
//! result against the published term lists.

use contextlab::hilbert::projector_from_vector;
use contextlab::pauli::decompose;
use contextlab::scenario::{fully_contextual_c_scenario, kcbs_twin_scenario};
use contextlab::tables::{compare_expansion, printed_c_expansion, printed_k_expansion};

type PrintedExpansion = fn(usize) -> Vec<(String, f64)>;

fn main() {
    let cases: [(_, PrintedExpansion); 2] = [
        (kcbs_twin_scenario(), printed_k_expansion as _),
        (fully_contextual_c_scenario(), printed_c_expansion as _),
    ];
    for (s, printed) in cases {
        println!("== {} (dim {}) ==", s.name, s.dim);
        for (i, v) in s.vectors.iter().enumerate() {
            let proj = projector_from_vector(v).expect("unit vector");
            let poly = decompose(&proj).expect("square power-of-two matrix");
            print!("Pi_{i}:");
            for (p, c) in &poly.terms {
                print!(" {:+.6} {}", c, p);
            }
            println!();
            let diff = compare_expansion(&poly, &printed(i), 1e-9);
            for m in diff {
                println!(
                    "    published {} reads {:+.6}, vectors give {:+.6}",
                    m.label, m.printed, m.derived
                );
            }
        }
        println!();
    }
}
