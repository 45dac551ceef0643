//! Object expressions of a strict monoidal category with duals.
//!
//! An object is a tensor word of atoms. Each atom is a named base object
//! decorated with a stack of dual markers: `*` (right dual) or `∨` (left
//! dual), innermost first. The unit object is the empty word and is its own
//! dual; the dual of a tensor word reverses the word and dualises each atom,
//! so `(X ⊗ Y)* = Y* ⊗ X*` holds on the nose.

use std::fmt;

/// A single dual marker on an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualMark {
    /// Right dual `V*`.
    Right,
    /// Left dual `V∨`.
    Left,
}

/// A base object name decorated with a stack of dual markers (innermost first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub base: String,
    pub marks: Vec<DualMark>,
}

impl Atom {
    pub fn new(base: impl Into<String>) -> Self {
        Atom { base: base.into(), marks: Vec::new() }
    }

    pub fn dual(&self, mark: DualMark) -> Atom {
        let mut marks = self.marks.clone();
        marks.push(mark);
        Atom { base: self.base.clone(), marks }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for m in &self.marks {
            match m {
                DualMark::Right => write!(f, "*")?,
                DualMark::Left => write!(f, "∨")?,
            }
        }
        Ok(())
    }
}

/// A tensor word of atoms; the empty word is the monoidal unit `𝟙`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObjectExpr(pub Vec<Atom>);

impl ObjectExpr {
    pub fn unit() -> Self {
        ObjectExpr(Vec::new())
    }

    pub fn atom(name: impl Into<String>) -> Self {
        ObjectExpr(vec![Atom::new(name)])
    }

    pub fn from_atom(a: Atom) -> Self {
        ObjectExpr(vec![a])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tensor(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut w = self.0.clone();
        w.extend(other.0.iter().cloned());
        ObjectExpr(w)
    }

    /// Right dual: reverse the word and `*`-mark every atom. `𝟙* = 𝟙`.
    pub fn right_dual(&self) -> ObjectExpr {
        ObjectExpr(self.0.iter().rev().map(|a| a.dual(DualMark::Right)).collect())
    }

    /// Left dual. When the ambient flavor identifies `V∨` with `V*`
    /// (canonical left rigidity from braiding or dagger) this marks with `*`,
    /// otherwise with `∨`.
    pub fn left_dual(&self, identify_with_right: bool) -> ObjectExpr {
        let mark = if identify_with_right { DualMark::Right } else { DualMark::Left };
        ObjectExpr(self.0.iter().rev().map(|a| a.dual(mark)).collect())
    }

    /// Concatenation split: word as (prefix of length `n`, rest).
    pub fn split_at(&self, n: usize) -> (ObjectExpr, ObjectExpr) {
        let (a, b) = self.0.split_at(n);
        (ObjectExpr(a.to_vec()), ObjectExpr(b.to_vec()))
    }

    pub fn slice(&self, from: usize, to: usize) -> ObjectExpr {
        ObjectExpr(self.0[from..to].to_vec())
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "𝟙");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl From<Atom> for ObjectExpr {
    fn from(a: Atom) -> Self {
        ObjectExpr::from_atom(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_reverses_and_marks() {
        let v = ObjectExpr::atom("V");
        let w = ObjectExpr::atom("W");
        let vw = v.tensor(&w);
        let d = vw.right_dual();
        assert_eq!(d.0[0], Atom::new("W").dual(DualMark::Right));
        assert_eq!(d.0[1], Atom::new("V").dual(DualMark::Right));
    }

    #[test]
    fn unit_is_self_dual() {
        assert!(ObjectExpr::unit().right_dual().is_unit());
        assert!(ObjectExpr::unit().left_dual(false).is_unit());
    }

    #[test]
    fn left_dual_identification() {
        let v = ObjectExpr::atom("V");
        assert_eq!(v.left_dual(true), v.right_dual());
        assert_ne!(v.left_dual(false), v.right_dual());
    }
}
