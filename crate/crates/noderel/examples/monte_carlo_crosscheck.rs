//! Cross-checks the exact reliability polynomial against Monte-Carlo
//! sampling of the definition: keep each vertex with probability p, test
//! whether the kept vertices induce a connected nonempty subgraph.
//!
//! Run with: cargo run --release --example monte_carlo_crosscheck

use noderel::{mc_estimate, rel_enumerate, Graph};
use num::{BigRational, ToPrimitive};

fn main() -> noderel::Result<()> {
    let p5 = Graph::path(5)?;
    let rel = rel_enumerate(&p5)?;
    let trials = 200_000;
    let seed = 7;

    println!("{:<8} {:<12} {:<12} {:<10} z", "p", "exact", "estimate", "stderr");
    for (num, den) in [(1i64, 10i64), (3, 10), (1, 2), (7, 10), (9, 10)] {
        let p = BigRational::new(num.into(), den.into());
        let exact = rel.evaluate(&p).to_f64().unwrap();
        let est = mc_estimate(&p5, &p, trials, seed)?;
        let z = (est.estimate - exact) / est.stderr;
        println!(
            "{:<8} {:<12.6} {:<12.6} {:<10.2e} {:+.3}",
            format!("{num}/{den}"),
            exact,
            est.estimate,
            est.stderr,
            z
        );
        assert!(z.abs() <= 4.0, "estimate strayed beyond four sigma");
    }
    println!("all estimates within four standard errors of the exact values");
    Ok(())
}
