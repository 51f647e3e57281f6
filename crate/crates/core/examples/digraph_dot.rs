//! Print the Bott digraph as Graphviz DOT with the spin verdict drawn in.
//!
//!     cargo run --example digraph_dot | dot -Tsvg > d.svg

use realbott::digraph::{build_digraph, digraph_spin, export_dot};
use realbott::BottMatrix;

fn main() {
    let c = BottMatrix::from_entries(5, &[(1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5)]).unwrap();
    let d = build_digraph(&c);
    let verdict = digraph_spin(&d);
    eprintln!("{verdict}");
    for (j, k) in d.failing_pairs() {
        eprintln!(
            "pair ({j},{k}): M={} binom={}",
            d.common_out(j, k).unwrap(),
            d.binomial_term(j, k).unwrap()
        );
    }
    print!("{}", export_dot(&d, Some(&verdict)));
}
