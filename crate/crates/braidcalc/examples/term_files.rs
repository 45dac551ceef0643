//! Parse a term file, typecheck its definitions, and evaluate them in a
//! matrix model — the same pipeline the CLI runs.

use braidcalc::builtins;
use braidcalc::parse::parse_file;
use braidcalc::print::print_term;
use braidcalc::rewrite::normalize;
use braidcalc::term::typecheck;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/terms/snake.bc");
    let src = std::fs::read_to_string(path).expect("example term file");
    let file = parse_file(&src).expect("parse + typecheck");

    let model = builtins::sym_vect(2);
    for (name, term) in &file.terms {
        let b = typecheck(term, &file.sig).unwrap();
        println!("{name} : {} -> {}", b.dom, b.cod);
        let (nf, _) = normalize(term, &file.sig).unwrap();
        println!("  normal form: {}", print_term(&nf));
        // The file declares a generator `f` the model does not interpret,
        // so only evaluate the purely structural terms.
        if let Ok(mat) = model.eval(term) {
            println!("  in symvect(2):\n{mat}");
        }
    }
}
