//! Sharp diffraction rings from an orientation-disordered ensemble.
//!
//! Averaging the intensity of many random rotations of a lattice disk
//! smears each Bragg point around a circle.  The rotation-averaged
//! profile then shows sharp rings at the root norms 1, sqrt2, 2 of the
//! integer lattice.  Run with `cargo run --example diffraction_rings`.

use std::f64::consts::TAU;

use quasilab::diffraction::{radial_average, ring_detect, structure_factor, KGrid, Taper};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> quasilab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let grid = KGrid::polar(2.15, 0.05, TAU / 192.0)?;
    let (nr, na) = grid.polar_shape().unwrap();
    let mut mean = vec![0.0; nr * na];

    let rotations = 48;
    let radius: f64 = 8.0;
    let m = radius.ceil() as i64;
    for _ in 0..rotations {
        let theta: f64 = rng.r#gen::<f64>() * TAU;
        let (s, c) = theta.sin_cos();
        let mut pts = Vec::new();
        for i in -m..=m {
            for j in -m..=m {
                let (x, y) = (i as f64, j as f64);
                if x * x + y * y <= radius * radius {
                    pts.push(vec![c * x - s * y, s * x + c * y]);
                }
            }
        }
        let one = structure_factor(&pts, &grid, Taper::None)?;
        for (acc, v) in mean.iter_mut().zip(&one) {
            *acc += v / f64::from(rotations);
        }
    }

    let profile = radial_average(&grid, &mean)?;
    println!(
        "averaged {rotations} rotations of a {}-point disk over {} angles",
        {
            let mut count = 0;
            for i in -m..=m {
                for j in -m..=m {
                    if ((i * i + j * j) as f64) <= radius * radius {
                        count += 1;
                    }
                }
            }
            count
        },
        na
    );

    println!("\ndetected rings (prominence over local median):");
    println!("{:>10} {:>12} {:>12} {:>10}", "radius", "intensity", "prominence", "near");
    for ring in ring_detect(&profile, 2.5, 11)? {
        let near = [(1.0, "1"), (std::f64::consts::SQRT_2, "sqrt2"), (2.0, "2")]
            .iter()
            .find(|(t, _)| (ring.radius - t).abs() <= 0.06)
            .map_or("-", |(_, n)| n);
        println!(
            "{:>10.3} {:>12.3} {:>12.3} {:>10}",
            ring.radius, ring.intensity, ring.prominence, near
        );
    }
    println!("\nbetween the rings the averaged intensity sits at the O(1) background");
    Ok(())
}
