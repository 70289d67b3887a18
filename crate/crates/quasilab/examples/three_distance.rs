//! Gap statistics of rotation orbits on the circle and the torus.
//!
//! The points {m alpha}, m < N, cut the circle into gaps of at most three
//! distinct lengths.  Every gap length is an exact integer combination
//! dm * alpha + dk, so classes are counted by coefficient triples rather
//! than by floating-point comparisons.  Run with
//! `cargo run --example three_distance`.

use quasilab::gaps::{circle_points, gap_classes, littlewood_scan, torus_points};
use quasilab::numerics::HighPrec;

fn main() -> quasilab::Result<()> {
    let alpha = HighPrec::sqrt_int(2)?;
    println!("alpha = sqrt(2), gap classes of {{m alpha}} mod 1:");
    println!("{:>5} {:>8} {:>5} {:>5} {:>6} {:>12}", "N", "classes", "dm", "dk", "mult", "length");
    for n in [5usize, 13, 34, 60, 200] {
        let pts = circle_points(&alpha, n)?;
        let classes = gap_classes(&pts)?;
        for (i, (c, len)) in classes.iter().enumerate() {
            if i == 0 {
                print!("{n:>5} {:>8}", classes.len());
            } else {
                print!("{:>5} {:>8}", "", "");
            }
            println!(" {:>5} {:>5} {:>6} {:>12.8}", c.dm, c.dk, c.multiplicity, len);
        }
    }

    // Two rotation parameters: sections of the (alpha, beta) grid show
    // many more classes; the planar analogue of the three-length bound
    // fails in general.
    let beta = HighPrec::sqrt_int(3)?;
    let grid = torus_points(&alpha, &beta, 12, 12)?;
    let classes = gap_classes(&grid)?;
    println!("\n12 x 12 grid of m sqrt(2) + n sqrt(3): {} gap classes", classes.len());

    // Running minima of n * ||n a|| * ||n b||: the quantity conjectured
    // to reach zero for every pair of reals.
    println!("\nrunning minima of n ||n sqrt2|| ||n sqrt3||, n <= 100000:");
    let records = littlewood_scan(&alpha, &beta, 100_000)?;
    for r in records.iter().rev().take(5).rev() {
        println!(
            "  n {:>7}  ||n a|| {:.6}  ||n b|| {:.6}  product {:.3e}",
            r.n, r.dist_a, r.dist_b, r.value
        );
    }
    Ok(())
}
