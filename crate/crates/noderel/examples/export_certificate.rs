//! Parses an expression from its text form, realizes it as an explicit
//! graph, and exports it as an edge list and as graph6.
//!
//! Run with: cargo run --example export_certificate

use noderel::graph_io::{edge_list_string, graph6_string};
use noderel::GraphExpr;

fn main() -> noderel::Result<()> {
    let expr = GraphExpr::parse("P3 | sub 2 | addUniv")?;
    println!("expression: {}", expr.to_dsl());
    println!("realized order (computed without building): {}", expr.order());

    let g = expr.realize()?;
    println!("edge list:\n{}", edge_list_string(&g));
    println!("graph6: {}", graph6_string(&g));

    // oversized realizations are refused, with the would-be order reported
    let huge = GraphExpr::parse("P5 | sub 4096 | sub 4096")?;
    match huge.realize() {
        Err(e) => println!("refused: {e}"),
        Ok(_) => unreachable!("cap should reject 80 million vertices"),
    }
    Ok(())
}
