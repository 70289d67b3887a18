//! Energies in and out of the spectrum, read off the trace recurrence.
//!
//! The half-traces of the transfer matrices obey
//! x_{k+1} = 2 x_k x_{k-1} - x_{k-2} and conserve the Fricke quantity
//! x^2 + y^2 + z^2 - 2xyz - 1.  Bounded orbits mark energies in the
//! spectrum; escaping orbits mark gaps, and the escape index is a depth
//! gauge.  Run with `cargo run --example trace_orbits`.

use quasilab::schrodinger::trace_orbit;

fn main() -> quasilab::Result<()> {
    let lambda = 1.0;

    // ASCII scan: '#' = still bounded after 40 steps, digits = escape
    // index capped at 9.
    println!("escape map for coupling {lambda}, E from -2.5 to 3.5:");
    let mut strip = String::new();
    let steps = 120;
    for i in 0..=steps {
        let e = -2.5 + 6.0 * f64::from(i) / f64::from(steps);
        let orbit = trace_orbit(e, lambda, 40, 10.0)?;
        strip.push(match orbit.escaped_at {
            None => '#',
            Some(k) => char::from_digit(k.min(9) as u32, 10).unwrap(),
        });
        if strip.len() == 60 {
            println!("  {strip}");
            strip.clear();
        }
    }
    if !strip.is_empty() {
        println!("  {strip}");
    }

    println!("\nselected orbits:");
    println!("{:>6} {:>10} {:>12} {:>10}", "E", "escape", "drift", "steps");
    for e in [-2.0, -1.0, 0.0, 1.0, 2.0, 10.0] {
        let orbit = trace_orbit(e, lambda, 2000, 10.0)?;
        println!(
            "{e:>6} {:>10} {:>12.2e} {:>10}",
            orbit
                .escaped_at
                .map_or("bounded".to_string(), |k| format!("at {k}")),
            orbit.invariant_drift,
            orbit.iterations
        );
    }
    println!("\ninvariant value lambda^2/4 = {}", lambda * lambda / 4.0);
    Ok(())
}
