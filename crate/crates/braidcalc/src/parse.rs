//! Parsers for the ASCII surface syntax, inverse to [`crate::print`].
//!
//! Object grammar:
//!
//! ```text
//! obj    := factor ( "(x)" factor )*
//! factor := "dual" factor | "ldual" factor | "1" | IDENT | "(" obj ")"
//! ```
//!
//! Term grammar (`;` composes left to right, `f ; g` applies `f` first):
//!
//! ```text
//! expr := tens ( ";" tens )*
//! tens := app ( "(x)" app )*
//! app  := "id" "(" obj ")"
//!       | "b" | "d" | "lb" | "ld" ... "(" obj ")"
//!       | "c" ["~"] "(" obj "," obj ")"
//!       | "th" ["~"] "(" obj ")"
//!       | "dag" "(" expr ")"
//!       | "name" | "coname" ... "(" expr ")"
//!       | "tr" "(" ("over"|"under") "," expr ")"
//!       | "ptr" "(" obj ";" ("vanilla"|"goofyup"|"goofydown") "," expr ")"
//!       | IDENT                      -- generator or earlier named term
//!       | "(" expr ")"
//! ```
//!
//! Declaration files hold `flavor`, `object`, `gen`, and `term` statements,
//! each ended by `;`. Comments run from `#` to end of line. The flavor
//! defaults to `ribbon` when no `flavor` statement appears.

use crate::derived::{self, PartialTraceStyle, TraceStyle};
use crate::error::ParseError;
use crate::flavor::Flavor;
use crate::object::ObjectExpr;
use crate::signature::{GeneratorDecl, Signature};
use crate::term::{typecheck, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    TensorOp, // (x)
    LParen,
    RParen,
    Semi,
    Comma,
    Colon,
    Arrow,
    Eq,
    Tilde,
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let is_ident = |c: char| c.is_alphanumeric() || c == '_' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        let (l, k) = (line, col);
        let mut push = |tok: Tok| out.push(Lexed { tok, line: l, col: k });
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => {
                if chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
                    push(Tok::TensorOp);
                    i += 3;
                    col += 3;
                    continue;
                }
                push(Tok::LParen);
            }
            ')' => push(Tok::RParen),
            ';' => push(Tok::Semi),
            ',' => push(Tok::Comma),
            ':' => push(Tok::Colon),
            '=' => push(Tok::Eq),
            '~' => push(Tok::Tilde),
            '-' if chars.get(i + 1) == Some(&'>') => {
                push(Tok::Arrow);
                i += 2;
                col += 2;
                continue;
            }
            c if is_ident(c) => {
                let start = i;
                while i < chars.len() && is_ident(chars[i]) {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Lexed { tok: Tok::Ident(s), line: l, col: k });
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct P<'t, 's> {
    toks: &'t [Lexed],
    pos: usize,
    /// Whether `ldual` marks with `*` (canonical identification) or `∨`.
    identify_left: bool,
    sig: Option<&'s Signature>,
    named: &'s [(String, Term)],
}

impl<'t, 's> P<'t, 's> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(l) => ParseError::Syntax { line: l.line, col: l.col, msg: msg.into() },
            None => ParseError::Other(msg.into()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    // ---- objects ----

    fn object(&mut self) -> Result<ObjectExpr, ParseError> {
        let mut x = self.obj_factor()?;
        while self.peek() == Some(&Tok::TensorOp) {
            self.pos += 1;
            x = x.tensor(&self.obj_factor()?);
        }
        Ok(x)
    }

    fn obj_factor(&mut self) -> Result<ObjectExpr, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let x = self.object()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(x)
            }
            Some(Tok::Ident(s)) => match s.as_str() {
                "dual" => {
                    self.pos += 1;
                    Ok(self.obj_factor()?.right_dual())
                }
                "ldual" => {
                    self.pos += 1;
                    let identify = self.identify_left;
                    Ok(self.obj_factor()?.left_dual(identify))
                }
                "1" => {
                    self.pos += 1;
                    Ok(ObjectExpr::unit())
                }
                _ => {
                    let name = self.ident("object name")?;
                    Ok(ObjectExpr::atom(name))
                }
            },
            _ => Err(self.err("expected an object expression")),
        }
    }

    // ---- terms ----

    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.tens()?;
        while self.peek() == Some(&Tok::Semi) && self.starts_term(self.pos + 1) {
            // A statement-final `;` is left for the caller; only a `;`
            // followed by another term continues the pipeline.
            self.pos += 1;
            acc = Term::compose(self.tens()?, acc);
        }
        Ok(acc)
    }

    fn tens(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.app()?;
        while self.peek() == Some(&Tok::TensorOp) {
            self.pos += 1;
            acc = Term::tensor(acc, self.app()?);
        }
        Ok(acc)
    }

    fn starts_term(&self, at: usize) -> bool {
        match self.toks.get(at).map(|l| &l.tok) {
            Some(Tok::LParen) => true,
            Some(Tok::Ident(s)) => {
                !matches!(s.as_str(), "flavor" | "object" | "gen" | "term" | "dual" | "ldual")
            }
            _ => false,
        }
    }

    fn paren_obj(&mut self) -> Result<ObjectExpr, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let x = self.object()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(x)
    }

    fn paren_expr(&mut self) -> Result<Term, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let t = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(t)
    }

    fn need_sig(&self, what: &str) -> Result<&'s Signature, ParseError> {
        self.sig.ok_or_else(|| ParseError::Other(format!("`{what}` needs a signature in scope")))
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(&Tok::LParen) {
            return self.paren_expr();
        }
        let name = self.ident("a term")?;
        let tilde = if self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            true
        } else {
            false
        };
        if tilde && !matches!(name.as_str(), "c" | "th") {
            return Err(self.err("`~` only follows `c` or `th`"));
        }
        Ok(match name.as_str() {
            "id" => Term::Id(self.paren_obj()?),
            "b" => Term::Birth(self.paren_obj()?),
            "d" => Term::Death(self.paren_obj()?),
            "lb" => Term::LBirth(self.paren_obj()?),
            "ld" => Term::LDeath(self.paren_obj()?),
            "c" => {
                self.expect(Tok::LParen, "`(`")?;
                let u = self.object()?;
                self.expect(Tok::Comma, "`,`")?;
                let v = self.object()?;
                self.expect(Tok::RParen, "`)`")?;
                if tilde {
                    Term::BraidInv(u, v)
                } else {
                    Term::Braid(u, v)
                }
            }
            "th" => {
                let x = self.paren_obj()?;
                if tilde {
                    Term::TwistInv(x)
                } else {
                    Term::Twist(x)
                }
            }
            "dag" => Term::dagger(self.paren_expr()?),
            "name" => {
                let f = self.paren_expr()?;
                derived::name_of(self.need_sig("name")?, &f)?
            }
            "coname" => {
                let f = self.paren_expr()?;
                derived::coname_of(self.need_sig("coname")?, &f)?
            }
            "tr" => {
                self.expect(Tok::LParen, "`(`")?;
                let style = match self.ident("trace style `over` or `under`")?.as_str() {
                    "over" => TraceStyle::Over,
                    "under" => TraceStyle::Under,
                    other => return Err(self.err(format!("unknown trace style `{other}`"))),
                };
                self.expect(Tok::Comma, "`,`")?;
                let f = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                derived::quantum_trace(self.need_sig("tr")?, &f, style)?
            }
            "ptr" => {
                self.expect(Tok::LParen, "`(`")?;
                let v = self.object()?;
                self.expect(Tok::Semi, "`;`")?;
                let style = match self.ident("partial trace style")?.as_str() {
                    "vanilla" => PartialTraceStyle::Vanilla,
                    "goofyup" => PartialTraceStyle::GoofyUp,
                    "goofydown" => PartialTraceStyle::GoofyDown,
                    other => {
                        return Err(self.err(format!("unknown partial trace style `{other}`")))
                    }
                };
                self.expect(Tok::Comma, "`,`")?;
                let f = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                derived::partial_trace(self.need_sig("ptr")?, &f, &v, style)?
            }
            _ => match self.named.iter().find(|(n, _)| n == &name) {
                Some((_, t)) => t.clone(),
                None => Term::Gen(name),
            },
        })
    }
}

/// Parse a standalone object expression. `ldual` marks with `∨` here; use
/// [`parse_object_in`] when a flavor is in scope.
pub fn parse_object_str(s: &str) -> Result<ObjectExpr, ParseError> {
    let toks = lex(s)?;
    let mut p = P { toks: &toks, pos: 0, identify_left: false, sig: None, named: &[] };
    let x = p.object()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input after object"));
    }
    Ok(x)
}

/// Parse an object expression with the signature's left-dual convention.
pub fn parse_object_in(s: &str, sig: &Signature) -> Result<ObjectExpr, ParseError> {
    let toks = lex(s)?;
    let mut p = P {
        toks: &toks,
        pos: 0,
        identify_left: sig.flavor.identifies_left_dual(),
        sig: Some(sig),
        named: &[],
    };
    let x = p.object()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input after object"));
    }
    Ok(x)
}

/// Parse a term over a signature (no named terms in scope).
pub fn parse_term_str(s: &str, sig: &Signature) -> Result<Term, ParseError> {
    let toks = lex(s)?;
    let mut p = P {
        toks: &toks,
        pos: 0,
        identify_left: sig.flavor.identifies_left_dual(),
        sig: Some(sig),
        named: &[],
    };
    let t = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}

/// A parsed declaration file: a signature plus named, typechecked terms.
#[derive(Clone, Debug)]
pub struct ParsedFile {
    pub sig: Signature,
    pub terms: Vec<(String, Term)>,
}

/// Parse and typecheck a declaration file.
pub fn parse_file(src: &str) -> Result<ParsedFile, ParseError> {
    let toks = lex(src)?;
    let mut sig = Signature::new(Flavor::ribbon());
    let mut terms: Vec<(String, Term)> = Vec::new();
    let mut pos = 0usize;
    while pos < toks.len() {
        let identify = sig.flavor.identifies_left_dual();
        let mut p = P { toks: &toks, pos, identify_left: identify, sig: None, named: &[] };
        let kw = p.ident("a declaration (flavor/object/gen/term)")?;
        match kw.as_str() {
            "flavor" => {
                let mut words = Vec::new();
                while let Some(Tok::Ident(_)) = p.peek() {
                    words.push(p.ident("flavor token")?);
                }
                p.expect(Tok::Semi, "`;`")?;
                sig.flavor = Flavor::parse(&words.join("+"))?;
                pos = p.pos;
            }
            "object" => {
                while let Some(Tok::Ident(_)) = p.peek() {
                    let name = p.ident("object name")?;
                    sig.add_object(name);
                }
                p.expect(Tok::Semi, "`;`")?;
                pos = p.pos;
            }
            "gen" => {
                let name = p.ident("generator name")?;
                p.expect(Tok::Colon, "`:`")?;
                let dom = p.object()?;
                p.expect(Tok::Arrow, "`->`")?;
                let cod = p.object()?;
                let adjoint = if matches!(p.peek(), Some(Tok::Ident(s)) if s == "adjoint") {
                    p.pos += 1;
                    Some(p.ident("adjoint name")?)
                } else {
                    None
                };
                p.expect(Tok::Semi, "`;`")?;
                pos = p.pos;
                sig.add_generator(GeneratorDecl { name, dom, cod, adjoint })?;
            }
            "term" => {
                let name = p.ident("term name")?;
                p.expect(Tok::Eq, "`=`")?;
                let at = p.pos;
                let mut q = P {
                    toks: &toks,
                    pos: at,
                    identify_left: identify,
                    sig: Some(&sig),
                    named: &terms,
                };
                let t = q.expr()?;
                q.expect(Tok::Semi, "`;`")?;
                pos = q.pos;
                typecheck(&t, &sig)?;
                terms.push((name, t));
            }
            other => return Err(p.err(format!("unknown declaration `{other}`"))),
        }
    }
    Ok(ParsedFile { sig, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::print::{print_object, print_term};

    #[test]
    fn object_round_trip() {
        for s in ["1", "V", "dual V", "V (x) dual W", "ldual V", "dual dual V"] {
            let x = parse_object_str(s).unwrap();
            assert_eq!(print_object(&x), s);
        }
    }

    #[test]
    fn file_parses_and_typechecks() {
        let src = "flavor ribbon dagger typeI;\n\
                   object V W;\n\
                   gen f : V -> W adjoint g;\n\
                   # the snake\n\
                   term snake = b(V) (x) id(V) ; id(V) (x) d(V);\n\
                   term loop = tr(over, th(V));\n\
                   term usesf = f ; g;\n";
        let pf = parse_file(src).unwrap();
        assert_eq!(pf.terms.len(), 3);
        assert_eq!(pf.sig.generator("g").unwrap().cod, ObjectExpr::atom("V"));
        let (_, snake) = &pf.terms[0];
        let b = typecheck(snake, &pf.sig).unwrap();
        assert_eq!(b.dom, ObjectExpr::atom("V"));
        assert_eq!(b.cod, ObjectExpr::atom("V"));
    }

    #[test]
    fn term_print_parse_is_identity() {
        let src = "flavor ribbon dagger typeI; object V W; gen f : V -> W adjoint g;";
        let pf = parse_file(src).unwrap();
        let v = ObjectExpr::atom("V");
        let terms = [
            Term::pipeline([
                Term::Birth(v.clone()),
                Term::tensor(Term::gen("f"), Term::Id(v.right_dual())),
            ]),
            Term::dagger(Term::Braid(v.clone(), v.clone())),
            crate::derived::psi(&v),
            Term::tensor(
                Term::compose(Term::gen("g"), Term::gen("f")),
                Term::TwistInv(v.clone()),
            ),
        ];
        for t in terms {
            let s = print_term(&t);
            let back = parse_term_str(&s, &pf.sig).unwrap();
            assert_eq!(back, t, "{s}");
        }
    }

    #[test]
    fn type_errors_surface() {
        let src = "flavor monoidal; object V; term bad = b(V);";
        assert!(matches!(parse_file(src), Err(ParseError::Type(_))));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_object_str("V (x)").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. } | ParseError::Other(_)));
    }
}
