//! Robinson triangle inflation and the rhombus mesh, exact in Z[zeta_5].
//!
//! Coordinates live in the cyclotomic integers scaled by powers of the
//! golden ratio, so incidence questions (shared corners, mirror pairs)
//! are decided exactly.  Run with `cargo run --example penrose_tiling`.

use quasilab::tilings::{PenrosePatch, PenroseVariant, RobinsonKind};

fn main() -> quasilab::Result<()> {
    let seed = PenrosePatch::seed(RobinsonKind::Acute);
    println!("{:>4} {:>8} {:>8} {:>8}", "gen", "tiles", "acute", "obtuse");
    let mut patch = seed;
    for generation in 0..=7u32 {
        if generation > 0 {
            patch = patch.substitute(1)?;
        }
        let (acute, obtuse) = patch.type_counts();
        println!(
            "{generation:>4} {:>8} {:>8} {:>8}",
            patch.tile_count(),
            acute,
            obtuse
        );
    }
    println!("tile counts follow the Fibonacci recursion; the type ratio tends to the golden ratio\n");

    // Mirror triangle pairs fuse into rhombi: the mesh drops the shared
    // diagonals.
    let mid = PenrosePatch::seed(RobinsonKind::Acute).substitute(5)?;
    let mesh = mid.mesh(PenroseVariant::Rhombi);
    println!("generation 5 rhombus mesh:");
    println!("  triangle faces   {}", mid.tile_count());
    println!("  fused pairs      {}", mesh.merged_pairs);
    println!("  mesh faces       {}", mesh.faces);
    println!("  side segments    {}", mesh.sides.len());

    for variant in [PenroseVariant::Triangles, PenroseVariant::Rhombi] {
        let graph = mid.graph(variant);
        let mut hist = std::collections::BTreeMap::new();
        for d in graph.degrees() {
            *hist.entry(d).or_insert(0usize) += 1;
        }
        println!(
            "\n{variant:?} graph: {} vertices, {} edges, {} component(s)",
            graph.vertices.len(),
            graph.edges.len(),
            graph.connected_components()
        );
        println!("  degree histogram {hist:?}");
    }
    Ok(())
}
