//! Build duality zig-zags and watch the rewrite engine contract them.

use braidcalc::object::ObjectExpr;
use braidcalc::print::print_term;
use braidcalc::rewrite::normalize;
use braidcalc::signature::Signature;
use braidcalc::term::Term;
use braidcalc::Flavor;

fn main() {
    let mut sig = Signature::new(Flavor::ribbon());
    sig.add_object("V");
    let v = ObjectExpr::atom("V");
    let vd = v.right_dual();

    // (id ⊗ d) ∘ (b ⊗ id) : V → V, the right-duality snake.
    let snake = Term::compose(
        Term::tensor(Term::Id(v.clone()), Term::Death(v.clone())),
        Term::tensor(Term::Birth(v.clone()), Term::Id(v.clone())),
    );

    // A braid wrapped around its inverse, whiskered into a wider diagram.
    let braid_loop = Term::compose(
        Term::tensor(Term::Id(v.clone()), Term::BraidInv(v.clone(), vd.clone())),
        Term::tensor(Term::Id(v.clone()), Term::Braid(v.clone(), vd.clone())),
    );

    for (label, term) in [("snake", snake), ("braid against inverse", braid_loop)] {
        println!("{label}:");
        println!("  input : {}", print_term(&term));
        let (nf, trace) = normalize(&term, &sig).expect("well-typed input");
        for step in &trace.steps {
            println!("  step  : {} {}", step.rule, step.detail);
        }
        println!("  output: {}\n", print_term(&nf));
    }
}
