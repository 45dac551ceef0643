//! Partial traces in three closure styles and the dagger relations among
//! them, checked numerically in the R-matrix model.

use braidcalc::builtins;
use braidcalc::derived::{partial_trace, PartialTraceStyle};
use braidcalc::matrix::C;
use braidcalc::object::ObjectExpr;
use braidcalc::sampling;
use braidcalc::term::Term;

fn main() {
    let base = builtins::rmatrix(C::new(1.3, 0.0));
    let v = ObjectExpr::atom("V");
    let mut r = sampling::rng(42);

    // A random f : V⊗V → V⊗V, traced over its rightmost strand.
    let dim = base.dim_word(&v.tensor(&v)).unwrap();
    let m = base.with_generator("f", v.tensor(&v), v.tensor(&v), sampling::random_matrix(&mut r, dim, dim));
    let sig = m.signature();
    let f = Term::gen("f");

    for style in [PartialTraceStyle::Vanilla, PartialTraceStyle::GoofyUp, PartialTraceStyle::GoofyDown] {
        let t = partial_trace(&sig, &f, &v, style).expect("well-typed");
        println!("tr_{style:?}(f) =\n{}", m.eval(&t).unwrap());
    }

    // This model is a Type II dagger category: daggering a partial trace
    // swaps the two twisted closure styles.
    let up = partial_trace(&sig, &f, &v, PartialTraceStyle::GoofyUp).unwrap();
    let dn = partial_trace(&sig, &Term::dagger(f.clone()), &v, PartialTraceStyle::GoofyDown).unwrap();
    let dev = m.eval(&Term::dagger(up)).unwrap().max_abs_diff(&m.eval(&dn).unwrap());
    println!("‖(tr_up f)† − tr_dn(f†)‖∞ = {dev:.2e}");
}
