//! Band spectra of periodic approximants to the golden-rotation operator.
//!
//! At continued-fraction level L the rotation number is replaced by its
//! convergent p/q, the potential becomes q-periodic, and the spectrum is a
//! union of exactly q bands.  As L grows the bands thin out toward a
//! Cantor set; the total measure shrinks geometrically.
//!
//! Run with `cargo run --example approximant_bands`.

use quasilab::numerics::HighPrec;
use quasilab::schrodinger::{cantorval_report, sturmian_spectrum_level, DEFAULT_EDGE_TOL};

fn main() -> quasilab::Result<()> {
    let golden = HighPrec::golden();
    let lambda = 1.0;

    println!("coupling {lambda}, golden rotation number");
    println!("{:>5} {:>6} {:>7} {:>12} {:>12}", "level", "q", "bands", "measure", "largest gap");
    let mut last = None;
    for level in 1..=10 {
        let s = sturmian_spectrum_level(&golden, lambda, level, DEFAULT_EDGE_TOL)?;
        let report = cantorval_report(&s.bands, 1e-9)?;
        println!(
            "{level:>5} {:>6} {:>7} {:>12.6} {:>12.6}",
            s.q,
            s.bands.count(),
            s.bands.measure(),
            report.largest_gap
        );
        last = Some(s);
    }

    // Structure of the deepest approximant at a coarse resolution: all
    // components are fat (no isolated points), so the finite-level set
    // still looks like a union of intervals rather than a cantorval.
    let s = last.unwrap();
    let report = cantorval_report(&s.bands, 1e-4)?;
    println!("\nlevel 10 set at resolution 1e-4:");
    println!("  components        {}", report.components);
    println!("  fat components    {}", report.fat_components);
    println!("  isolated points   {}", report.isolated_points);
    println!("  interior fraction {:.4}", report.interior_fraction);
    Ok(())
}
