//! Signatures: declared base objects, generator morphisms, and a flavor.

use crate::error::TypeError;
use crate::flavor::Flavor;
use crate::object::ObjectExpr;
use std::collections::{BTreeMap, BTreeSet};

/// A declared generator morphism `name : dom → cod`, optionally naming its
/// dagger adjoint. Adjoint naming is an involution: if `f` names `g` as its
/// adjoint then `g : cod → dom` names `f` back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub dom: ObjectExpr,
    pub cod: ObjectExpr,
    pub adjoint: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Signature {
    pub objects: BTreeSet<String>,
    pub generators: BTreeMap<String, GeneratorDecl>,
    pub flavor: Flavor,
}

impl Signature {
    pub fn new(flavor: Flavor) -> Self {
        Signature { objects: BTreeSet::new(), generators: BTreeMap::new(), flavor }
    }

    pub fn add_object(&mut self, name: impl Into<String>) {
        self.objects.insert(name.into());
    }

    /// Declare a generator; every base object appearing in its boundary must
    /// already be declared.
    pub fn add_generator(&mut self, decl: GeneratorDecl) -> Result<(), TypeError> {
        for w in [&decl.dom, &decl.cod] {
            for a in &w.0 {
                if !self.objects.contains(&a.base) {
                    return Err(TypeError::UndeclaredObject(a.base.clone()));
                }
            }
        }
        if let Some(adj) = &decl.adjoint {
            if !self.flavor.dagger {
                return Err(TypeError::FlavorViolation(format!(
                    "generator `{}` names an adjoint but the flavor has no dagger",
                    decl.name
                )));
            }
            // Register the adjoint too, pointing back (involution).
            if let Some(g) = self.generators.get(adj) {
                if g.dom != decl.cod || g.cod != decl.dom {
                    return Err(TypeError::BoundaryMismatch(format!(
                        "adjoint `{adj}` of `{}` must have type {} → {}",
                        decl.name, decl.cod, decl.dom
                    )));
                }
            } else {
                self.generators.insert(
                    adj.clone(),
                    GeneratorDecl {
                        name: adj.clone(),
                        dom: decl.cod.clone(),
                        cod: decl.dom.clone(),
                        adjoint: Some(decl.name.clone()),
                    },
                );
            }
        }
        self.generators.insert(decl.name.clone(), decl);
        Ok(())
    }

    pub fn generator(&self, name: &str) -> Result<&GeneratorDecl, TypeError> {
        self.generators.get(name).ok_or_else(|| TypeError::UndeclaredGenerator(name.to_string()))
    }

    /// The left dual of a word under this signature's flavor.
    pub fn left_dual(&self, x: &ObjectExpr) -> ObjectExpr {
        x.left_dual(self.flavor.identifies_left_dual())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_involution() {
        let mut sig = Signature::new(Flavor::ribbon_dagger(crate::flavor::DaggerType::TypeI));
        sig.add_object("V");
        sig.add_generator(GeneratorDecl {
            name: "f".into(),
            dom: ObjectExpr::atom("V"),
            cod: ObjectExpr::atom("V").tensor(&ObjectExpr::atom("V")),
            adjoint: Some("g".into()),
        })
        .unwrap();
        let g = sig.generator("g").unwrap();
        assert_eq!(g.adjoint.as_deref(), Some("f"));
        assert_eq!(g.cod, ObjectExpr::atom("V"));
    }

    #[test]
    fn undeclared_object_rejected() {
        let mut sig = Signature::new(Flavor::monoidal());
        let err = sig.add_generator(GeneratorDecl {
            name: "f".into(),
            dom: ObjectExpr::atom("V"),
            cod: ObjectExpr::atom("V"),
            adjoint: None,
        });
        assert!(matches!(err, Err(TypeError::UndeclaredObject(_))));
    }
}
