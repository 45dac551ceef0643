//! Validate built-in models against the axioms their flavors demand, and see
//! a deliberately broken model get caught.

use braidcalc::builtins;
use braidcalc::matrix::C;
use braidcalc::validate::validate_model;

fn main() {
    for m in builtins::standard_suite() {
        let report = validate_model(&m);
        println!("{}", report.to_text());
    }

    // Nudge one entry of the R-matrix: Yang–Baxter and the snake equations
    // are rigid, so even a 1e-3 perturbation fails loudly.
    let mut bad = builtins::rmatrix(C::new(1.3, 0.0));
    bad.name = "rmatrix(1.3, perturbed)".into();
    let braid = bad.braid.get_mut(&("V".to_string(), "V".to_string())).unwrap();
    braid[(1, 2)] += C::new(1e-3, 0.0);
    println!("{}", validate_model(&bad).to_text());
}
