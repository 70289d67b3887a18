//! Coded irrational rotations: factor complexity and the pattern census.
//!
//! A rotation word samples the orbit {m alpha + theta} through a two-cell
//! partition of the circle.  Its factor complexity is the minimal possible
//! for an aperiodic sequence, p(n) = n + 1, and its maximal pattern
//! complexity over gap templates is 2n.  Run with
//! `cargo run --example sturmian_words`.

use quasilab::numerics::HighPrec;
use quasilab::words::{factor_complexity, pattern_verdict, Convention, PatternVerdict, RotationWord};

fn verdict_name(v: &PatternVerdict) -> &'static str {
    match v {
        PatternVerdict::ExcessPatterns(_) => "excess (above 2n)",
        PatternVerdict::DeficientPatterns(_) => "deficient (below 2n)",
        PatternVerdict::Consistent(_) => "consistent with 2n",
    }
}

fn main() -> quasilab::Result<()> {
    let word = RotationWord::new(HighPrec::golden(), HighPrec::ZERO, Convention::LeftClosed)?
        .prefix(5000)?;

    let prefix: String = word[..60].iter().map(|&b| char::from(b'0' + b)).collect();
    println!("golden rotation word, first 60 letters:\n  {prefix}\n");

    println!("factor complexity (distinct length-n windows):");
    println!("  {:>3} {:>6}", "n", "p(n)");
    for n in 1..=12 {
        println!("  {n:>3} {:>6}", factor_complexity(&word, n));
    }

    println!("\npattern census over offset templates (max offset 40):");
    for n in 3..=5 {
        let v = pattern_verdict(&word, n, 40)?;
        let witness = match &v {
            PatternVerdict::ExcessPatterns(w)
            | PatternVerdict::DeficientPatterns(w)
            | PatternVerdict::Consistent(w) => w,
        };
        println!(
            "  n = {n}: {} patterns via offsets {:?}, {}",
            witness.count,
            witness.offsets,
            verdict_name(&v)
        );
    }

    // A periodic word cannot reach 2n patterns for any template.
    let periodic: Vec<u8> = (0..5000).map(|i| (i % 2) as u8).collect();
    let v = pattern_verdict(&periodic, 5, 40)?;
    println!("\nalternating word 0101...: {}", verdict_name(&v));
    Ok(())
}
