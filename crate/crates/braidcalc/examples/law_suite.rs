//! Run the full randomized law suite against the built-in models.

use braidcalc::builtins;
use braidcalc::laws::run_suite;

fn main() {
    for m in [builtins::sym_vect(2), builtins::semion()] {
        let report = run_suite(&m.flavor, &m, 10, 0);
        print!("{}", report.to_text());
        println!();
    }
}
