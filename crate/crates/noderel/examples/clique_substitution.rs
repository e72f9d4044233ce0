//! The clique-substitution identity: replacing every vertex of G with an
//! l-clique turns Rel(G; p) into Rel(G; 1 - (1-p)^l). This example checks
//! the identity on an explicit product graph against brute-force
//! enumeration.
//!
//! Run with: cargo run --example clique_substitution

use noderel::{rel_enumerate, Graph, Polynomial};

fn main() -> noderel::Result<()> {
    let p3 = Graph::path(3)?;
    let rel_p3 = rel_enumerate(&p3)?;
    println!("Rel(P3; p)       = {}", rel_p3.poly().to_pretty_string("p"));

    for l in 2..=4usize {
        // left side: build P3[K_l] explicitly and enumerate its 2^(3l) subsets
        let product = p3.lex_product_clique(l);
        let direct = rel_enumerate(&product)?;

        // right side: compose with the substitution map
        let inner = Polynomial::power_one_minus_q(l as u32);
        let composed = rel_p3.poly().compose(&inner);

        assert_eq!(direct.poly(), &composed);
        println!(
            "Rel(P3[K{l}]; p) = {}   ({} vertices, {} edges)",
            composed.to_pretty_string("p"),
            product.order(),
            product.edge_count()
        );
    }
    println!("composition identity verified against enumeration");
    Ok(())
}
