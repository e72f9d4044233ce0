//! Computes the node reliability of the path of order 5 two independent
//! ways and shows that the curve is not monotone.
//!
//! Run with: cargo run --example reliability_of_a_path

use noderel::{rel_algebra, rel_enumerate, subgraph_counts, Graph, GraphExpr};
use num::BigRational;

fn main() -> noderel::Result<()> {
    let p5 = Graph::path(5)?;

    // oracle path: enumerate all 2^5 vertex subsets
    let counts = subgraph_counts(&p5)?;
    println!("connected induced subgraphs by size: {:?}", counts.counts());

    let by_enumeration = rel_enumerate(&p5)?;
    println!("Rel(P5; p) = {}", by_enumeration.poly().to_pretty_string("p"));

    // algebraic path over the expression tree
    let by_algebra = rel_algebra(&GraphExpr::path(5)?)?;
    assert_eq!(by_enumeration.poly(), by_algebra.poly());
    println!("enumeration and algebra agree");

    // the curve dips: reliability at 1/2 is below its value at 1/4
    for (num, den) in [(1i64, 4i64), (1, 2), (3, 4), (1, 1)] {
        let p = BigRational::new(num.into(), den.into());
        let v = by_enumeration.evaluate(&p);
        println!("Rel(P5; {num}/{den}) = {v}");
    }
    Ok(())
}
