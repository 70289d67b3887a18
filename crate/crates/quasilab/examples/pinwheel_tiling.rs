//! Pinwheel triangle substitution in exact integer arithmetic.
//!
//! Each 1-2-sqrt5 right triangle splits into five copies scaled by
//! 1/sqrt5.  Rotations multiply by (2+i)/sqrt5 in the Gaussian field, so
//! every orientation is a new one and the census grows without bound.
//! Run with `cargo run --example pinwheel_tiling`.

use quasilab::tilings::PinwheelPatch;

fn main() -> quasilab::Result<()> {
    let mut patch = PinwheelPatch::seed();
    println!(
        "{:>4} {:>9} {:>13} {:>11}",
        "gen", "tiles", "orientations", "area exact"
    );
    for generation in 0..=6u32 {
        if generation > 0 {
            patch = patch.substitute(1)?;
        }
        println!(
            "{generation:>4} {:>9} {:>13} {:>11}",
            patch.tile_count(),
            patch.orientation_census(),
            patch.exact_area_is_one()
        );
    }

    // Corner graph of a small patch: Euler characteristic of a disk.
    let small = PinwheelPatch::seed().substitute(3)?;
    let graph = small.graph();
    let v = graph.vertices.len() as i64;
    let e = graph.edges.len() as i64;
    let f = small.tile_count() as i64;
    println!("\ngeneration 3 corner graph:");
    println!("  vertices {v}, edges {e}, faces {f}");
    println!("  V - E + F = {} (disk topology gives 1)", v - e + f);
    println!("  connected components: {}", graph.connected_components());

    let degrees = graph.degrees();
    let mut hist = std::collections::BTreeMap::new();
    for d in degrees {
        *hist.entry(d).or_insert(0usize) += 1;
    }
    println!("  degree histogram: {hist:?}");
    Ok(())
}
