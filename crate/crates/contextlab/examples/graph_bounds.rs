//! Orthogonality graphs and their classical / generalized bounds. alpha is
//! the independence number (best non-contextual value), alpha* the
//! fractional packing number (best value any exclusivity-respecting theory
//! can reach).

use contextlab::graphbounds::{bounds_report, build_graph, OrthogonalityGraph};
use contextlab::scenario::{fully_contextual_c_scenario, kcbs_twin_scenario};

fn show(name: &str, g: &OrthogonalityGraph) {
    let r = bounds_report(g).expect("within vertex budget");
    println!(
        "{name}: {} vertices, {} edges, alpha = {}, alpha* = {:.4}, {} maximal cliques",
        g.n_vertices(),
        g.edges().len(),
        r.independence_number,
        r.fractional_packing,
        r.maximal_cliques.len()
    );
}

fn main() {
    show("pentagon", &OrthogonalityGraph::cycle(5));

    let k = kcbs_twin_scenario();
    let g = build_graph(&k.vectors, 1e-9).expect("ten vertices");
    show(&k.name, &g);
    // the edge set is exactly the union of context pairs
    let from_contexts: std::collections::BTreeSet<(usize, usize)> = k
        .contexts
        .iter()
        .flat_map(|c| {
            let mut pairs = Vec::new();
            for (a, &i) in c.iter().enumerate() {
                for &j in &c[a + 1..] {
                    pairs.push((i.min(j), i.max(j)));
                }
            }
            pairs
        })
        .collect();
    println!(
        "  context pairs account for every edge: {}",
        *g.edges() == from_contexts
    );

    let c = fully_contextual_c_scenario();
    let g = build_graph(&c.vectors, 1e-9).expect("ten vertices");
    show(&c.name, &g);
    for clique in bounds_report(&g).unwrap().maximal_cliques {
        println!("  maximal clique {clique:?}");
    }
}
