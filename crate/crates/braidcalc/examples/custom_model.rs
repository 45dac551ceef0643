//! Define a model from scratch — the Z₃ abelian-anyon theory at level 2 —
//! validate it, and serialize it to the JSON format the CLI consumes.

use braidcalc::builtins;
use braidcalc::derived::{quantum_dim, TraceStyle};
use braidcalc::matrix::fmt_complex;
use braidcalc::model::ModelSpec;
use braidcalc::object::ObjectExpr;
use braidcalc::validate::validate_model;

fn main() {
    let m = builtins::abelian_anyon(3, 2);
    let report = validate_model(&m);
    print!("{}", report.to_text());

    let sig = m.signature();
    for g in 0..3 {
        let a = ObjectExpr::atom(format!("a{g}"));
        let t = quantum_dim(&sig, &a, TraceStyle::Over).unwrap();
        println!("dim_q(a{g}) = {}", fmt_complex(m.model_scalar(&t).unwrap()));
    }

    // Round-trip through the JSON wire format.
    let json = m.to_json();
    let back = ModelSpec::from_json(&json).expect("round trip");
    assert_eq!(back.name, m.name);
    println!("serialized model is {} bytes of JSON", json.len());
}
