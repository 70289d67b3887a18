//! Counting errors in growing regions: how far from `density x volume`?
//!
//! For the integer lattice the error of an axis-aligned square is
//! controlled by the perimeter, so the growth exponent in the boundary
//! measure is at most 1.  The projected golden chain does far better:
//! its interval counting error stays bounded.
//!
//! Run with `cargo run --example discrepancy_growth`.

use quasilab::cutproject::{generate, CpsScheme};
use quasilab::discrepancy::{
    density_estimate, discrepancy_sweep, growth_fit, RegionSpec,
};

fn main() -> quasilab::Result<()> {
    // Square lattice block, generic center.
    let mut lattice = Vec::new();
    for x in -60..=60i64 {
        for y in -60..=60i64 {
            lattice.push(vec![x as f64, y as f64]);
        }
    }
    let density = density_estimate(
        &lattice,
        &RegionSpec::aligned_square(vec![0.0, 0.0], 100.0),
    )?;
    println!("lattice density estimate: {density:.6}");

    let center = vec![0.2347, 0.1129];
    let sides: Vec<f64> = (0..40)
        .map(|i| 1.0 * (110.0f64 / 1.0).powf(f64::from(i) / 39.0))
        .collect();
    let regions: Vec<RegionSpec> = sides
        .iter()
        .map(|&s| RegionSpec::aligned_square(center.clone(), s))
        .collect();
    let samples = discrepancy_sweep(&lattice, density, &regions)?;
    for s in samples.iter().step_by(13) {
        println!(
            "  side {:>8.2}  count {:>6}  expected {:>10.2}  |D| {:>8.3}",
            s.region.size, s.count, s.expected, s.discrepancy.abs()
        );
    }
    let fit = growth_fit(&samples)?;
    println!(
        "lattice squares: growth exponent {:.3} in the boundary measure, B log B flag {}",
        fit.exponent, fit.log_correction
    );
    println!("  (the perimeter bound predicts at most 1; the fit tracks per-bin extremes)");

    // Golden chain intervals: the counting error never leaves O(1).
    let scheme = CpsScheme::fibonacci_chain();
    let window = scheme.canonical_window()?;
    let chain: Vec<Vec<f64>> = generate(&scheme, &window, 9000.0)?
        .into_iter()
        .map(|p| p.position)
        .collect();
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let chain_density = (phi + 2.0).sqrt() / (3.0 - phi);
    let lengths: Vec<f64> = (0..40)
        .map(|i| 10.0 * (1000.0f64).powf(f64::from(i) / 39.0))
        .collect();
    let chain_regions: Vec<RegionSpec> = lengths
        .iter()
        .map(|&l| RegionSpec::ball(vec![0.37], l / 2.0))
        .collect();
    let chain_samples = discrepancy_sweep(&chain, chain_density, &chain_regions)?;
    let max_d = chain_samples
        .iter()
        .map(|s| s.discrepancy.abs())
        .fold(0.0f64, f64::max);
    println!("\ngolden chain intervals up to length 10000:");
    println!("  worst |D| {max_d:.3} (bounded: no growth in the interval length)");
    Ok(())
}
