//! Spectrum of the hopping operator on an aperiodic patch graph.
//!
//! The operator is the negated combinatorial Laplacian A - D: its top
//! eigenvalue is 0 (constant vector), the trace is -2|E|, and the
//! integrated density of states stabilizes as the patch grows.  The
//! dense route factorizes the full matrix; the iterative route combines
//! Lanczos extremes with a moment expansion of the state density.
//!
//! Run with `cargo run --example patch_spectrum`.

use quasilab::graph_spectrum::{graph_operator_spectrum, SpectrumMode};
use quasilab::tilings::{PenrosePatch, PenroseVariant, RobinsonKind};

fn main() -> quasilab::Result<()> {
    let patch = PenrosePatch::seed(RobinsonKind::Acute).substitute(6)?;
    let graph = patch.graph(PenroseVariant::Rhombi);
    println!(
        "rhombus graph of a generation-6 patch: {} vertices, {} edges",
        graph.vertices.len(),
        graph.edges.len()
    );

    let dense = graph_operator_spectrum(&graph, SpectrumMode::Dense, 1e-10)?;
    let n = dense.eigenvalues.len() as f64;
    let trace: f64 = dense.eigenvalues.iter().sum();
    println!("\ndense spectrum:");
    println!("  range        [{:.6}, {:.6}]", dense.min_eigenvalue, dense.max_eigenvalue);
    println!("  trace        {trace:.6} (expected {})", -2.0 * dense.edge_count as f64);
    println!("  mean level   {:.6}", trace / n);

    let iterative = graph_operator_spectrum(&graph, SpectrumMode::Iterative, 1e-10)?;
    println!("\niterative extremes:");
    println!(
        "  range        [{:.6}, {:.6}]  (gap to dense {:.1e}, {:.1e})",
        iterative.min_eigenvalue,
        iterative.max_eigenvalue,
        (iterative.min_eigenvalue - dense.min_eigenvalue).abs(),
        (iterative.max_eigenvalue - dense.max_eigenvalue).abs()
    );

    // Quartiles of the integrated density of states.
    println!("\nstate-density quartiles (dense):");
    for target in [0.25, 0.5, 0.75] {
        let (e, f) = dense
            .ids
            .iter()
            .find(|&&(_, f)| f >= target)
            .copied()
            .unwrap();
        println!("  F(E) reaches {target} at E = {e:.4} (F = {f:.4})");
    }
    Ok(())
}
