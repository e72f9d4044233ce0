//! Certifies the shape of a reliability curve: where it rises, where it
//! falls, and where it bends, every location pinned inside an exact
//! rational interval by Sturm-sequence root isolation.
//!
//! Run with: cargo run --example shape_analysis

use noderel::{analyze, default_precision, rel_enumerate, Graph};
use num::ToPrimitive;

fn main() -> noderel::Result<()> {
    for (name, graph) in [
        ("P5", Graph::path(5)?),
        ("K4", Graph::complete(4)?),
        ("2K1", Graph::from_edge_list(2, &[])?),
    ] {
        let rel = rel_enumerate(&graph)?;
        let report = analyze(&rel, &default_precision())?;
        println!("{name}: Rel = {}", rel.poly().to_pretty_string("p"));
        for e in &report.extrema {
            println!(
                "  {} inside ({}, {}) ~ {:.6}",
                e.kind.as_str(),
                e.interval.lo(),
                e.interval.hi(),
                e.interval.midpoint().to_f64().unwrap()
            );
        }
        println!(
            "  {} maximal interval(s) of decrease, {} inflection point(s)",
            report.num_decrease_intervals(),
            report.num_inflections()
        );
    }
    Ok(())
}
