//! Carving a cut-and-project description for an arbitrary sublattice.
//!
//! Any subset of Z^2 lifts into the unit slab over the irrational plane
//! {(x, y, a x + b y)}; collecting the realized internal values into a
//! window yields a genuine cut-and-project set whose projection is a
//! bijection onto the chosen subset, with every point displaced by less
//! than the slab height.  The window is a value set of measure zero, far
//! from any interval.  Run with `cargo run --example weiss_slab`.

use quasilab::cutproject::slab_window;
use quasilab::numerics::HighPrec;

fn main() -> quasilab::Result<()> {
    let alpha = HighPrec::sqrt_int(2)?;
    let beta = HighPrec::sqrt_int(3)?;

    // Keep the checkerboard sublattice of a 41 x 41 block.
    let keep = |m1: i64, m2: i64| (m1 + m2).rem_euclid(2) == 0;
    let built = slab_window(alpha, beta, &keep, 20)?;

    let e3 = built.scheme.position(&[0, 0, 1]);
    let height = (e3[0] * e3[0] + e3[1] * e3[1]).sqrt();
    let max_internal = built
        .points
        .iter()
        .map(|p| p.internal)
        .fold(0.0f64, f64::max);

    println!("checkerboard subset of a 41 x 41 block");
    println!("  kept indices      {}", built.points.len());
    println!("  slab height       {height:.6}");
    println!("  max internal      {max_internal:.6}");
    println!("  max displacement  {:.6} (= max internal x height)", max_internal * height);

    // The window accepts exactly the realized internal values.
    let sample = &built.points[built.points.len() / 2];
    let value = built.scheme.internal_point(&sample.lattice);
    println!("\nwindow membership:");
    println!(
        "  internal value of index {:?}: accepted = {}",
        sample.index,
        built.window.contains(&value)?
    );
    let shifted = [value[0].add(HighPrec::from_f64(0.001))];
    println!(
        "  same value shifted by 1e-3:  accepted = {}",
        built.window.contains(&shifted)?
    );

    // Displacement distribution in coarse deciles of the internal value.
    let mut buckets = [0usize; 10];
    for p in &built.points {
        buckets[((p.internal * 10.0) as usize).min(9)] += 1;
    }
    println!("\ninternal-value deciles (equidistribution of the lift):");
    println!("  {buckets:?}");
    Ok(())
}
