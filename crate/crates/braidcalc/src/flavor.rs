//! Category flavors: which structure a signature or model carries.
//!
//! A flavor is a set of capability flags. Consistency rules:
//! ribbon ⇒ balanced ∧ right-rigid; balanced ⇒ braided; pivotal ⇒ right-rigid;
//! a dagger type other than `None` requires dagger ∧ braided. A dagger or
//! braided right-rigid flavor automatically carries the canonical left
//! rigidity with `V∨ = V*`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum DaggerType {
    #[default]
    None,
    TypeI,
    TypeII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Flavor {
    pub right_rigid: bool,
    pub left_rigid: bool,
    pub braided: bool,
    pub balanced: bool,
    pub ribbon: bool,
    pub pivotal: bool,
    pub dagger: bool,
    pub dagger_type: DaggerType,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlavorError {
    #[error("flavor inconsistency: {0}")]
    Inconsistent(&'static str),
    #[error("unknown flavor token `{0}`")]
    UnknownToken(String),
}

impl Flavor {
    pub fn monoidal() -> Self {
        Flavor::default()
    }

    pub fn rigid() -> Self {
        Flavor { right_rigid: true, ..Flavor::default() }
    }

    pub fn braided_rigid() -> Self {
        Flavor { right_rigid: true, braided: true, ..Flavor::default() }
    }

    pub fn balanced_rigid() -> Self {
        Flavor { right_rigid: true, braided: true, balanced: true, ..Flavor::default() }
    }

    pub fn ribbon() -> Self {
        Flavor {
            right_rigid: true,
            braided: true,
            balanced: true,
            ribbon: true,
            pivotal: true,
            ..Flavor::default()
        }
    }

    pub fn ribbon_dagger(t: DaggerType) -> Self {
        Flavor { dagger: true, dagger_type: t, ..Flavor::ribbon() }
    }

    /// Check the consistency rules.
    pub fn validate(&self) -> Result<(), FlavorError> {
        if self.ribbon && !(self.balanced && self.right_rigid) {
            return Err(FlavorError::Inconsistent("ribbon requires balanced and right-rigid"));
        }
        if self.balanced && !self.braided {
            return Err(FlavorError::Inconsistent("balanced requires braided"));
        }
        if self.pivotal && !(self.balanced && self.right_rigid) {
            return Err(FlavorError::Inconsistent(
                "pseudo-pivotal structure here is derived from a twist: requires balanced and right-rigid",
            ));
        }
        if self.dagger_type != DaggerType::None && !(self.dagger && self.braided) {
            return Err(FlavorError::Inconsistent("dagger type I/II requires dagger and braided"));
        }
        Ok(())
    }

    /// Left rigidity, including the canonical ones granted by braiding or dagger.
    pub fn has_left_rigid(&self) -> bool {
        self.left_rigid || (self.right_rigid && (self.braided || self.dagger))
    }

    /// Whether `V∨` is identified with `V*` at the object level.
    pub fn identifies_left_dual(&self) -> bool {
        self.right_rigid && (self.braided || self.dagger)
    }

    /// Does `self` provide at least the structure demanded by `guard`?
    pub fn includes(&self, guard: &Flavor) -> bool {
        (!guard.right_rigid || self.right_rigid)
            && (!guard.left_rigid || self.has_left_rigid())
            && (!guard.braided || self.braided)
            && (!guard.balanced || self.balanced)
            && (!guard.ribbon || self.ribbon)
            && (!guard.pivotal || self.pivotal || (self.balanced && self.right_rigid))
            && (!guard.dagger || self.dagger)
            && match guard.dagger_type {
                DaggerType::None => true,
                t => self.dagger_type == t,
            }
    }

    /// Parse a `+`-separated token list, e.g. `ribbon+dagger+typeII`.
    pub fn parse(s: &str) -> Result<Flavor, FlavorError> {
        let mut f = Flavor::default();
        for tok in s.split(|c: char| c == '+' || c.is_whitespace() || c == ',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            match tok.to_ascii_lowercase().as_str() {
                "monoidal" => {}
                "rigid" | "right-rigid" | "rightrigid" => f.right_rigid = true,
                "left-rigid" | "leftrigid" => f.left_rigid = true,
                "braided" => f.braided = true,
                "balanced" => {
                    f.braided = true;
                    f.balanced = true;
                }
                "ribbon" => {
                    f.right_rigid = true;
                    f.braided = true;
                    f.balanced = true;
                    f.ribbon = true;
                    f.pivotal = true;
                }
                "pivotal" | "pseudo-pivotal" => {
                    f.right_rigid = true;
                    f.braided = true;
                    f.balanced = true;
                    f.pivotal = true;
                }
                "dagger" => f.dagger = true,
                "typei" | "type-i" | "type1" => {
                    f.dagger = true;
                    f.braided = true;
                    f.dagger_type = DaggerType::TypeI;
                }
                "typeii" | "type-ii" | "type2" => {
                    f.dagger = true;
                    f.braided = true;
                    f.dagger_type = DaggerType::TypeII;
                }
                other => return Err(FlavorError::UnknownToken(other.to_string())),
            }
        }
        f.validate()?;
        Ok(f)
    }

    pub fn tokens(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.ribbon {
            v.push("ribbon");
        } else {
            if self.balanced {
                v.push("balanced");
            } else if self.braided {
                v.push("braided");
            }
            if self.pivotal {
                v.push("pivotal");
            }
            if self.right_rigid {
                v.push("rigid");
            }
        }
        if self.ribbon && self.right_rigid {
            // "ribbon" already implies rigid+balanced
        }
        if self.left_rigid {
            v.push("left-rigid");
        }
        if self.dagger {
            v.push("dagger");
        }
        match self.dagger_type {
            DaggerType::None => {}
            DaggerType::TypeI => v.push("typeI"),
            DaggerType::TypeII => v.push("typeII"),
        }
        if v.is_empty() {
            v.push("monoidal");
        }
        v
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens().join("+"))
    }
}

impl Serialize for Flavor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Flavor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Flavor::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ribbon_implies_balanced() {
        let f = Flavor { ribbon: true, ..Flavor::default() };
        assert!(f.validate().is_err());
        assert!(Flavor::ribbon().validate().is_ok());
    }

    #[test]
    fn dagger_grants_left_rigidity() {
        let f = Flavor { right_rigid: true, dagger: true, ..Flavor::default() };
        assert!(f.has_left_rigid());
        assert!(f.identifies_left_dual());
        assert!(!Flavor::rigid().has_left_rigid());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["ribbon+dagger+typeII", "braided+rigid", "monoidal", "balanced+rigid"] {
            let f = Flavor::parse(s).unwrap();
            let f2 = Flavor::parse(&f.to_string()).unwrap();
            assert_eq!(f, f2, "{s}");
        }
    }

    #[test]
    fn guard_inclusion() {
        assert!(Flavor::ribbon_dagger(DaggerType::TypeI).includes(&Flavor::braided_rigid()));
        assert!(!Flavor::braided_rigid().includes(&Flavor::ribbon()));
        assert!(!Flavor::ribbon_dagger(DaggerType::TypeII)
            .includes(&Flavor::ribbon_dagger(DaggerType::TypeI)));
    }
}
