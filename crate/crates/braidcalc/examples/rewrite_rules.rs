//! Apply individual rewrite rules at chosen positions and decide term
//! equality by comparing normal forms.

use braidcalc::object::ObjectExpr;
use braidcalc::print::print_term;
use braidcalc::rewrite::{apply_rule, catalog, equal_by_rewrite, Equality};
use braidcalc::signature::Signature;
use braidcalc::term::Term;
use braidcalc::Flavor;

fn main() {
    let mut sig = Signature::new(Flavor::ribbon());
    sig.add_object("V");
    let v = ObjectExpr::atom("V");

    println!("rule catalog:");
    for rule in catalog() {
        println!("  {:20} [{}] {}", rule.name, rule.guard, rule.axiom);
    }

    // θ ∘ θ⁻¹ sits under a tensor; apply twist-inverse at position [1].
    let t = Term::tensor(
        Term::Id(v.clone()),
        Term::compose(Term::Twist(v.clone()), Term::TwistInv(v.clone())),
    );
    let rewritten = apply_rule(&t, "twist-inverse", &[1], &sig).expect("rule applies");
    println!("\n{}  →  {}", print_term(&t), print_term(&rewritten));

    // Equality by normalization: a braid conjugated by its inverse is the
    // twist-free identity.
    let lhs = Term::pipeline([
        Term::Braid(v.clone(), v.clone()),
        Term::BraidInv(v.clone(), v.clone()),
    ]);
    let rhs = Term::Id(v.tensor(&v));
    match equal_by_rewrite(&lhs, &rhs, &sig).unwrap() {
        Equality::Equal => println!("equal_by_rewrite: Equal"),
        Equality::Unknown => println!("equal_by_rewrite: Unknown"),
    }
}
