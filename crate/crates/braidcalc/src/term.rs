//! Morphism terms and the typechecker.
//!
//! Terms are immutable `Arc`-shared trees. `Compose(g, f)` is `g ∘ f`
//! (apply `f` first). Structural constructors carry the object words they act
//! on; their boundaries are computed by [`typecheck`]:
//!
//! - `Birth(X)  : 𝟙 → X ⊗ X*`, `Death(X) : X* ⊗ X → 𝟙` (right rigidity)
//! - `LBirth(X) : 𝟙 → X∨ ⊗ X`, `LDeath(X) : X ⊗ X∨ → 𝟙` (left rigidity)
//! - `Braid(U, V) : U ⊗ V → V ⊗ U`, `BraidInv(U, V) : V ⊗ U → U ⊗ V`
//! - `Twist(X), TwistInv(X) : X → X`
//! - `Dagger(f) : cod f → dom f`

use crate::error::TypeError;
use crate::object::ObjectExpr;
use crate::signature::Signature;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Id(ObjectExpr),
    Gen(String),
    Compose(Arc<Term>, Arc<Term>),
    Tensor(Arc<Term>, Arc<Term>),
    Birth(ObjectExpr),
    Death(ObjectExpr),
    LBirth(ObjectExpr),
    LDeath(ObjectExpr),
    Braid(ObjectExpr, ObjectExpr),
    BraidInv(ObjectExpr, ObjectExpr),
    Twist(ObjectExpr),
    TwistInv(ObjectExpr),
    Dagger(Arc<Term>),
}

impl Term {
    pub fn id(x: ObjectExpr) -> Term {
        Term::Id(x)
    }

    pub fn gen(name: impl Into<String>) -> Term {
        Term::Gen(name.into())
    }

    /// `g ∘ f`: apply `f` first, then `g`.
    pub fn compose(g: Term, f: Term) -> Term {
        Term::Compose(Arc::new(g), Arc::new(f))
    }

    /// Right-to-left composition of a pipeline: `seq([a, b, c]) = c ∘ b ∘ a`.
    pub fn pipeline(steps: impl IntoIterator<Item = Term>) -> Term {
        let mut it = steps.into_iter();
        let first = it.next().expect("pipeline needs at least one step");
        it.fold(first, |acc, next| Term::compose(next, acc))
    }

    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Arc::new(a), Arc::new(b))
    }

    pub fn dagger(f: Term) -> Term {
        Term::Dagger(Arc::new(f))
    }

    /// Number of constructors; handy as a size measure in tests.
    pub fn size(&self) -> usize {
        match self {
            Term::Compose(a, b) | Term::Tensor(a, b) => 1 + a.size() + b.size(),
            Term::Dagger(a) => 1 + a.size(),
            _ => 1,
        }
    }
}

/// The boundary (domain, codomain) of a well-typed term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub dom: ObjectExpr,
    pub cod: ObjectExpr,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}", self.dom, self.cod)
    }
}

/// Typecheck a term against a signature, returning its boundary.
///
/// Structural constructors are gated on the signature's flavor; using a braid
/// in an unbraided flavor is a [`TypeError::FlavorViolation`].
pub fn typecheck(term: &Term, sig: &Signature) -> Result<Boundary, TypeError> {
    let fl = &sig.flavor;
    let check_objects = |x: &ObjectExpr| -> Result<(), TypeError> {
        for a in &x.0 {
            if !sig.objects.contains(&a.base) {
                return Err(TypeError::UndeclaredObject(a.base.clone()));
            }
        }
        Ok(())
    };
    match term {
        Term::Id(x) => {
            check_objects(x)?;
            Ok(Boundary { dom: x.clone(), cod: x.clone() })
        }
        Term::Gen(name) => {
            let g = sig.generator(name)?;
            Ok(Boundary { dom: g.dom.clone(), cod: g.cod.clone() })
        }
        Term::Compose(g, f) => {
            let bf = typecheck(f, sig)?;
            let bg = typecheck(g, sig)?;
            if bf.cod != bg.dom {
                return Err(TypeError::CompositionMismatch { expected: bg.dom, found: bf.cod });
            }
            Ok(Boundary { dom: bf.dom, cod: bg.cod })
        }
        Term::Tensor(a, b) => {
            let ba = typecheck(a, sig)?;
            let bb = typecheck(b, sig)?;
            Ok(Boundary { dom: ba.dom.tensor(&bb.dom), cod: ba.cod.tensor(&bb.cod) })
        }
        Term::Birth(x) => {
            check_objects(x)?;
            if !fl.right_rigid {
                return Err(TypeError::FlavorViolation("Birth requires right rigidity".into()));
            }
            Ok(Boundary { dom: ObjectExpr::unit(), cod: x.tensor(&x.right_dual()) })
        }
        Term::Death(x) => {
            check_objects(x)?;
            if !fl.right_rigid {
                return Err(TypeError::FlavorViolation("Death requires right rigidity".into()));
            }
            Ok(Boundary { dom: x.right_dual().tensor(x), cod: ObjectExpr::unit() })
        }
        Term::LBirth(x) => {
            check_objects(x)?;
            if !fl.has_left_rigid() {
                return Err(TypeError::FlavorViolation("LBirth requires left rigidity".into()));
            }
            Ok(Boundary { dom: ObjectExpr::unit(), cod: sig.left_dual(x).tensor(x) })
        }
        Term::LDeath(x) => {
            check_objects(x)?;
            if !fl.has_left_rigid() {
                return Err(TypeError::FlavorViolation("LDeath requires left rigidity".into()));
            }
            Ok(Boundary { dom: x.tensor(&sig.left_dual(x)), cod: ObjectExpr::unit() })
        }
        Term::Braid(u, v) => {
            check_objects(u)?;
            check_objects(v)?;
            if !fl.braided {
                return Err(TypeError::FlavorViolation("Braid requires a braiding".into()));
            }
            Ok(Boundary { dom: u.tensor(v), cod: v.tensor(u) })
        }
        Term::BraidInv(u, v) => {
            check_objects(u)?;
            check_objects(v)?;
            if !fl.braided {
                return Err(TypeError::FlavorViolation("BraidInv requires a braiding".into()));
            }
            Ok(Boundary { dom: v.tensor(u), cod: u.tensor(v) })
        }
        Term::Twist(x) | Term::TwistInv(x) => {
            check_objects(x)?;
            if !fl.balanced {
                return Err(TypeError::FlavorViolation("Twist requires a balancing".into()));
            }
            Ok(Boundary { dom: x.clone(), cod: x.clone() })
        }
        Term::Dagger(f) => {
            if !fl.dagger {
                return Err(TypeError::FlavorViolation("Dagger requires a dagger structure".into()));
            }
            let b = typecheck(f, sig)?;
            Ok(Boundary { dom: b.cod, cod: b.dom })
        }
    }
}

/// Require `f` to be an endomorphism and return its object.
pub fn expect_endo(f: &Term, sig: &Signature) -> Result<ObjectExpr, TypeError> {
    let b = typecheck(f, sig)?;
    if b.dom != b.cod {
        return Err(TypeError::NotEndomorphism { dom: b.dom, cod: b.cod });
    }
    Ok(b.dom)
}

/// Require `s` to be a scalar (endomorphism of the unit).
pub fn expect_scalar(s: &Term, sig: &Signature) -> Result<(), TypeError> {
    let b = typecheck(s, sig)?;
    if !b.dom.is_unit() || !b.cod.is_unit() {
        return Err(TypeError::NotAScalar { dom: b.dom, cod: b.cod });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flavor::Flavor;
    use crate::signature::GeneratorDecl;

    fn sig() -> Signature {
        let mut s = Signature::new(Flavor::ribbon());
        s.add_object("V");
        s.add_object("W");
        s.add_generator(GeneratorDecl {
            name: "f".into(),
            dom: ObjectExpr::atom("V"),
            cod: ObjectExpr::atom("W"),
            adjoint: None,
        })
        .unwrap();
        s
    }

    #[test]
    fn birth_boundary() {
        let s = sig();
        let v = ObjectExpr::atom("V");
        let b = typecheck(&Term::Birth(v.clone()), &s).unwrap();
        assert!(b.dom.is_unit());
        assert_eq!(b.cod, v.tensor(&v.right_dual()));
    }

    #[test]
    fn composition_mismatch_reported() {
        let s = sig();
        let t = Term::compose(Term::gen("f"), Term::gen("f"));
        assert!(matches!(typecheck(&t, &s), Err(TypeError::CompositionMismatch { .. })));
    }

    #[test]
    fn flavor_gating() {
        let mut s = sig();
        s.flavor = Flavor::monoidal();
        let t = Term::Birth(ObjectExpr::atom("V"));
        assert!(matches!(typecheck(&t, &s), Err(TypeError::FlavorViolation(_))));
    }

    #[test]
    fn dagger_flips_boundary() {
        let mut s = sig();
        s.flavor = Flavor::ribbon_dagger(crate::flavor::DaggerType::TypeI);
        let b = typecheck(&Term::dagger(Term::gen("f")), &s).unwrap();
        assert_eq!(b.dom, ObjectExpr::atom("W"));
        assert_eq!(b.cod, ObjectExpr::atom("V"));
    }
}
