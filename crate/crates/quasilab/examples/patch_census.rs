//! Local patch statistics of projected point sets.
//!
//! Run with `cargo run --example patch_census`.

use quasilab::cutproject::{generate, CpsScheme};
use quasilab::numerics::HighPrec;
use quasilab::patches::{patch_complexity, patch_statistics, PatchOptions, PatchShape};

fn main() -> quasilab::Result<()> {
    // Distinct interval patches of the golden chain, by radius.  Linear
    // repetitivity keeps the census tiny.
    let scheme = CpsScheme::fibonacci_chain();
    let window = scheme.canonical_window()?;
    let chain: Vec<Vec<f64>> = generate(&scheme, &window, 400.0)?
        .into_iter()
        .map(|p| p.position)
        .collect();
    println!("golden chain, {} points:", chain.len());
    println!("{:>8} {:>8}", "radius", "patches");
    for (r, count) in patch_complexity(&chain, &[1.0, 2.0, 3.0, 4.0, 6.0, 8.0])? {
        println!("{r:>8.1} {count:>8}");
    }

    // Planar model set: ball patches with frequencies.
    let planar = CpsScheme::planar(HighPrec::sqrt_int(2)?, HighPrec::sqrt_int(3)?)?;
    let pwindow = planar.canonical_window()?;
    let points: Vec<Vec<f64>> = generate(&planar, &pwindow, 60.0)?
        .into_iter()
        .map(|p| p.position)
        .collect();
    let stats = patch_statistics(
        &points,
        &PatchShape::Ball { radius: 1.6 },
        &PatchOptions::default(),
    )?;
    println!("\nplanar model set, {} points, ball radius 1.6:", points.len());
    println!("  anchors            {}", stats.anchors);
    println!("  distinct patches   {}", stats.types.len());
    println!("  frequency classes  {}", stats.freq_classes);
    for t in stats.types.iter().take(6) {
        println!(
            "    {} points, frequency {:.4} +- {:.4}",
            t.count, t.frequency, t.ci
        );
    }
    Ok(())
}
