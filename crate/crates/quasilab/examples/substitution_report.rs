//! Algebra of substitution rules: Perron root, Pisot test, and the
//! predicates behind the pure-point diffraction conjecture.
//!
//! Run with `cargo run --example substitution_report`.

use quasilab::substitution::Substitution;

fn main() -> quasilab::Result<()> {
    let rules = [
        ("Fibonacci", "a->ab; b->a"),
        ("Tribonacci", "a->ab; b->ac; c->a"),
        ("Doubling pair", "a->ab; b->ba"),
        ("Silver mean", "a->aab; b->a"),
        ("Non-Pisot", "a->abbb; b->a"),
    ];

    for (name, rule) in rules {
        let sub = Substitution::parse(rule)?;
        let report = sub.perron_report()?;
        println!("{name}  ({rule})");
        println!("  matrix rows      {:?}", report.matrix);
        println!("  char poly        {:?} (ascending)", report.char_poly.coeffs());
        println!("  scaling factor   {:.12} (err {:.1e})", report.lambda, report.lambda_err);
        println!(
            "  conjugate moduli {:?}",
            report
                .conjugate_moduli
                .iter()
                .map(|m| format!("{m:.6}"))
                .collect::<Vec<_>>()
        );
        println!(
            "  primitive {} | irreducible {} | unimodular {} | Pisot {}",
            report.primitive, report.irreducible, report.unimodular, report.is_pisot
        );
        println!("  pure-point hypotheses satisfied: {}", report.conjecture_applies);
        if report.conjecture_applies {
            let fp = sub.fixed_point('a', 40)?;
            println!("  fixed point      {}...", sub.word_to_string(&fp));
        }
        println!();
    }
    Ok(())
}
