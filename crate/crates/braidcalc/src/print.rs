//! ASCII printers for objects and terms, inverse to the parsers in
//! [`crate::parse`]: `parse(print(x)) == x` node for node.
//!
//! Object grammar: `1` is the unit, `(x)` is tensor, `dual`/`ldual` are
//! prefix operators on the following factor. Term grammar: `;` is
//! left-to-right composition (lowest precedence, `f ; g` means do `f` first),
//! `(x)` is tensor, and the structural constructors print as
//! `id/b/d/lb/ld/c/c~/th/th~/dag` applications.

use crate::object::{Atom, DualMark, ObjectExpr};
use crate::term::Term;

fn print_atom(a: &Atom) -> String {
    // Marks are innermost-first; prefixes apply outermost-first.
    let mut s = a.base.clone();
    for m in &a.marks {
        s = match m {
            DualMark::Right => format!("dual {s}"),
            DualMark::Left => format!("ldual {s}"),
        };
    }
    s
}

pub fn print_object(x: &ObjectExpr) -> String {
    if x.is_unit() {
        return "1".to_string();
    }
    x.0.iter().map(print_atom).collect::<Vec<_>>().join(" (x) ")
}

// Precedence: 0 = composition chain, 1 = tensor, 2 = application/atom.
fn go(t: &Term, ctx: u8, out: &mut String) {
    let prec = match t {
        Term::Compose(..) => 0,
        Term::Tensor(..) => 1,
        _ => 2,
    };
    if prec < ctx {
        out.push('(');
        go(t, 0, out);
        out.push(')');
        return;
    }
    match t {
        Term::Compose(g, f) => {
            // `f ; g`: chains in the first-applied position stay flat, so the
            // parser's left fold rebuilds the same tree.
            go(f, 0, out);
            out.push_str(" ; ");
            go(g, 1, out);
        }
        Term::Tensor(a, b) => {
            go(a, 1, out);
            out.push_str(" (x) ");
            go(b, 2, out);
        }
        Term::Id(x) => *out += &format!("id({})", print_object(x)),
        Term::Gen(n) => out.push_str(n),
        Term::Birth(x) => *out += &format!("b({})", print_object(x)),
        Term::Death(x) => *out += &format!("d({})", print_object(x)),
        Term::LBirth(x) => *out += &format!("lb({})", print_object(x)),
        Term::LDeath(x) => *out += &format!("ld({})", print_object(x)),
        Term::Braid(u, v) => *out += &format!("c({}, {})", print_object(u), print_object(v)),
        Term::BraidInv(u, v) => *out += &format!("c~({}, {})", print_object(u), print_object(v)),
        Term::Twist(x) => *out += &format!("th({})", print_object(x)),
        Term::TwistInv(x) => *out += &format!("th~({})", print_object(x)),
        Term::Dagger(f) => {
            out.push_str("dag(");
            go(f, 0, out);
            out.push(')');
        }
    }
}

pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    go(t, 0, &mut s);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objects() {
        let v = ObjectExpr::atom("V");
        assert_eq!(print_object(&ObjectExpr::unit()), "1");
        assert_eq!(print_object(&v.right_dual()), "dual V");
        assert_eq!(print_object(&v.tensor(&v).right_dual()), "dual V (x) dual V");
        assert_eq!(print_object(&v.left_dual(false)), "ldual V");
        assert_eq!(print_object(&v.right_dual().right_dual()), "dual dual V");
    }

    #[test]
    fn term_precedence() {
        let v = ObjectExpr::atom("V");
        let t = Term::compose(
            Term::Twist(v.clone()),
            Term::tensor(Term::Id(v.clone()), Term::gen("f")),
        );
        assert_eq!(print_term(&t), "id(V) (x) f ; th(V)");
        let u = Term::tensor(Term::compose(Term::gen("g"), Term::gen("f")), Term::Id(v));
        assert_eq!(print_term(&u), "(f ; g) (x) id(V)");
    }
}
