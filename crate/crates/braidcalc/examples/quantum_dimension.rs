//! Quantum traces and dimensions: closing a diagram over or under itself.

use braidcalc::builtins;
use braidcalc::derived::{quantum_dim, quantum_trace, TraceStyle};
use braidcalc::matrix::{fmt_complex, C};
use braidcalc::object::ObjectExpr;
use braidcalc::term::Term;

fn main() {
    // dim_q(V) = q + q⁻¹ in the R-matrix model: the twist weights the loop.
    for q in [0.7, 1.3, 2.0] {
        let m = builtins::rmatrix(C::new(q, 0.0));
        let sig = m.signature();
        let v = ObjectExpr::atom("V");
        for style in [TraceStyle::Over, TraceStyle::Under] {
            let t = quantum_dim(&sig, &v, style).expect("well-typed");
            let dim = m.model_scalar(&t).expect("scalar");
            println!("rmatrix({q}) dim_q(V) via {style:?}: {} (q + 1/q = {})", fmt_complex(dim), q + 1.0 / q);
        }
    }

    // In plain vector spaces the quantum dimension is the usual dimension,
    // and the quantum trace of the identity braid loop sees it too.
    let m = builtins::sym_vect(3);
    let sig = m.signature();
    let v = ObjectExpr::atom("V");
    let t = quantum_trace(&sig, &Term::Id(v.clone()), TraceStyle::Over).unwrap();
    println!("symvect(3) tr_q(id_V) = {}", fmt_complex(m.model_scalar(&t).unwrap()));
}
