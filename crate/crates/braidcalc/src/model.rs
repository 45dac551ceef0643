//! Matrix models: assign dimensions and matrices to a signature and evaluate
//! terms to dense complex matrices.
//!
//! A model fixes, per base object, a dimension and a duality pairing matrix
//! `B` (birth = vec(B) : 𝟙 → V ⊗ V*, death = vec(B⁻¹) : V* ⊗ V → 𝟙, so the
//! snake equations hold by construction); per ordered pair of base objects a
//! braid matrix; per base object a twist matrix. Duals are realised on the
//! same index space: a dual marker replaces the pairing by `(B⁻¹)ᵀ`, braids
//! involving dual atoms are derived by bending (see `braid_atoms`), and the
//! dual twist is the pairing transpose of the twist. Tensor words get their
//! structure by the hexagon, balancing, and nested-snake expansions, so the
//! word-level axioms reduce to atom-level data.

use crate::error::EvalError;
use crate::flavor::Flavor;
use crate::matrix::{C, CMat};
use crate::object::{Atom, ObjectExpr};
use crate::signature::{GeneratorDecl, Signature};
use crate::term::{typecheck, Term};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct GenData {
    pub dom: ObjectExpr,
    pub cod: ObjectExpr,
    pub matrix: CMat,
}

#[derive(Clone, Debug)]
pub enum DaggerRealization {
    /// Dagger of every matrix is its conjugate transpose.
    ConjugateTranspose,
    /// Generator daggers come from an explicit adjoint table; structural
    /// morphisms still dagger by conjugate transpose.
    Tables(BTreeMap<String, CMat>),
}

#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    pub flavor: Flavor,
    pub objects: BTreeMap<String, usize>,
    pub generators: BTreeMap<String, GenData>,
    /// Duality pairing matrix per base object; identity when absent.
    pub duality: BTreeMap<String, CMat>,
    /// Braid matrix per ordered pair of base objects.
    pub braid: BTreeMap<(String, String), CMat>,
    /// Twist matrix per base object.
    pub twist: BTreeMap<String, CMat>,
    pub dagger: Option<DaggerRealization>,
    pub tolerance: f64,
}

impl ModelSpec {
    pub fn new(name: impl Into<String>, flavor: Flavor) -> Self {
        ModelSpec {
            name: name.into(),
            flavor,
            objects: BTreeMap::new(),
            generators: BTreeMap::new(),
            duality: BTreeMap::new(),
            braid: BTreeMap::new(),
            twist: BTreeMap::new(),
            dagger: None,
            tolerance: 1e-10,
        }
    }

    /// The signature this model interprets.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new(self.flavor);
        for name in self.objects.keys() {
            sig.add_object(name.clone());
        }
        for (name, g) in &self.generators {
            // Adjoint naming is irrelevant for evaluation; leave unset.
            let _ = sig.add_generator(GeneratorDecl {
                name: name.clone(),
                dom: g.dom.clone(),
                cod: g.cod.clone(),
                adjoint: None,
            });
        }
        sig
    }

    /// Clone-extend with one more generator (used for randomized law bindings).
    pub fn with_generator(
        &self,
        name: impl Into<String>,
        dom: ObjectExpr,
        cod: ObjectExpr,
        matrix: CMat,
    ) -> ModelSpec {
        let mut m = self.clone();
        m.generators.insert(name.into(), GenData { dom, cod, matrix });
        m
    }

    pub fn dim_atom(&self, a: &Atom) -> Result<usize, EvalError> {
        self.objects
            .get(&a.base)
            .copied()
            .ok_or_else(|| EvalError::UnassignedObject(a.base.clone()))
    }

    pub fn dim_word(&self, x: &ObjectExpr) -> Result<usize, EvalError> {
        let mut d = 1usize;
        for a in &x.0 {
            d *= self.dim_atom(a)?;
        }
        Ok(d)
    }

    /// Duality pairing of an atom: the base pairing with one `(B⁻¹)ᵀ` step
    /// per dual marker.
    pub fn pairing(&self, a: &Atom) -> Result<CMat, EvalError> {
        let d = self.dim_atom(a)?;
        let mut b = match self.duality.get(&a.base) {
            Some(m) => {
                if m.rows != d || m.cols != d {
                    return Err(EvalError::ShapeMismatch(format!(
                        "duality matrix for {} must be {d}×{d}",
                        a.base
                    )));
                }
                m.clone()
            }
            None => CMat::identity(d),
        };
        for _ in &a.marks {
            b = b.inverse()?.transpose();
        }
        Ok(b)
    }

    fn birth_atom(&self, a: &Atom) -> Result<CMat, EvalError> {
        let d = self.dim_atom(a)?;
        let b = self.pairing(a)?;
        Ok(CMat::from_fn(d * d, 1, |ij, _| b[(ij / d, ij % d)]))
    }

    fn death_atom(&self, a: &Atom) -> Result<CMat, EvalError> {
        let d = self.dim_atom(a)?;
        let binv = self.pairing(a)?.inverse()?;
        Ok(CMat::from_fn(1, d * d, |_, ji| binv[(ji / d, ji % d)]))
    }

    /// `b_X : 𝟙 → X ⊗ X*`, nesting `b_{a⊗Y} = (id_a ⊗ b_Y ⊗ id_{a*}) ∘ b_a`.
    pub fn birth_word(&self, x: &ObjectExpr) -> Result<CMat, EvalError> {
        if x.is_unit() {
            return Ok(CMat::identity(1));
        }
        let a = &x.0[0];
        let rest = x.slice(1, x.len());
        if rest.is_unit() {
            return self.birth_atom(a);
        }
        let da = self.dim_atom(a)?;
        let ba = self.birth_atom(a)?;
        let brest = self.birth_word(&rest)?;
        CMat::identity(da).kron(&brest.kron(&CMat::identity(da))).mul(&ba)
    }

    /// `d_X : X* ⊗ X → 𝟙`, nesting `d_{a⊗Y} = d_Y ∘ (id_{Y*} ⊗ d_a ⊗ id_Y)`.
    pub fn death_word(&self, x: &ObjectExpr) -> Result<CMat, EvalError> {
        if x.is_unit() {
            return Ok(CMat::identity(1));
        }
        let a = &x.0[0];
        let rest = x.slice(1, x.len());
        if rest.is_unit() {
            return self.death_atom(a);
        }
        let dr = self.dim_word(&rest)?;
        let da = self.death_atom(a)?;
        let drest = self.death_word(&rest)?;
        drest.mul(&CMat::identity(dr).kron(&da).kron(&CMat::identity(dr)))
    }

    /// Braid matrix `c_{a,b}` for two atoms. Braids on dual atoms are derived
    /// from the base table by bending:
    /// `c_{a'•,b} = (d_{a'} ⊗ id)(id ⊗ c⁻¹_{a',b} ⊗ id)(id ⊗ b_{a'})` and
    /// `c_{a,b'•} = [(d_{b'} ⊗ id)(id ⊗ c_{a,b'} ⊗ id)(id ⊗ b_{b'})]⁻¹`.
    pub fn braid_atoms(&self, a: &Atom, b: &Atom) -> Result<CMat, EvalError> {
        let (da, db) = (self.dim_atom(a)?, self.dim_atom(b)?);
        if !a.marks.is_empty() {
            let mut a2 = a.clone();
            a2.marks.pop();
            let cinv = self.braid_atoms(&a2, b)?.inverse()?;
            let m1 = CMat::identity(da * db).kron(&self.birth_atom(&a2)?);
            let m2 = CMat::identity(da).kron(&cinv).kron(&CMat::identity(da));
            let m3 = self.death_atom(&a2)?.kron(&CMat::identity(db * da));
            return m3.mul(&m2.mul(&m1)?);
        }
        if !b.marks.is_empty() {
            let mut b2 = b.clone();
            b2.marks.pop();
            let c = self.braid_atoms(a, &b2)?;
            let m1 = CMat::identity(db * da).kron(&self.birth_atom(&b2)?);
            let m2 = CMat::identity(db).kron(&c).kron(&CMat::identity(db));
            let m3 = self.death_atom(&b2)?.kron(&CMat::identity(da * db));
            return m3.mul(&m2.mul(&m1)?)?.inverse();
        }
        match self.braid.get(&(a.base.clone(), b.base.clone())) {
            Some(m) => {
                if m.rows != db * da || m.cols != da * db {
                    return Err(EvalError::ShapeMismatch(format!(
                        "braid matrix for ({}, {}) has wrong shape",
                        a.base, b.base
                    )));
                }
                Ok(m.clone())
            }
            None => Err(EvalError::UnassignedGenerator(format!("braid({}, {})", a.base, b.base))),
        }
    }

    /// Braid on tensor words via the strict hexagons.
    pub fn braid_words(&self, u: &ObjectExpr, v: &ObjectExpr) -> Result<CMat, EvalError> {
        if u.is_unit() || v.is_unit() {
            return Ok(CMat::identity(self.dim_word(u)?.max(1) * self.dim_word(v)?.max(1)));
        }
        if u.len() == 1 && v.len() == 1 {
            return self.braid_atoms(&u.0[0], &v.0[0]);
        }
        if u.len() > 1 {
            // c_{U⊗V,W} = (c_{U,W} ⊗ id_V) ∘ (id_U ⊗ c_{V,W})
            let (a, rest) = u.split_at(1);
            let (dda, ddr) = (self.dim_word(&a)?, self.dim_word(&rest)?);
            let left = self.braid_words(&a, v)?.kron(&CMat::identity(ddr));
            let right = CMat::identity(dda).kron(&self.braid_words(&rest, v)?);
            return left.mul(&right);
        }
        // c_{A,B⊗C} = (id_B ⊗ c_{A,C}) ∘ (c_{A,B} ⊗ id_C)
        let (b, c) = v.split_at(1);
        let (ddb, ddc) = (self.dim_word(&b)?, self.dim_word(&c)?);
        let left = CMat::identity(ddb).kron(&self.braid_words(u, &c)?);
        let right = self.braid_words(u, &b)?.kron(&CMat::identity(ddc));
        left.mul(&right)
    }

    /// Twist of an atom; dual atoms twist by the pairing transpose
    /// `θ_{a•} = Bᵀ θᵀ (B⁻¹)ᵀ` (the ribbon convention `θ_{V*} = (θ_V)*`).
    pub fn twist_atom(&self, a: &Atom) -> Result<CMat, EvalError> {
        if a.marks.is_empty() {
            let d = self.dim_atom(a)?;
            return match self.twist.get(&a.base) {
                Some(m) if m.rows == d && m.cols == d => Ok(m.clone()),
                Some(_) => Err(EvalError::ShapeMismatch(format!(
                    "twist matrix for {} must be {d}×{d}",
                    a.base
                ))),
                None => Err(EvalError::UnassignedGenerator(format!("twist({})", a.base))),
            };
        }
        let mut a2 = a.clone();
        a2.marks.pop();
        let t = self.twist_atom(&a2)?;
        let b = self.pairing(&a2)?;
        b.transpose().mul(&t.transpose())?.mul(&b.inverse()?.transpose())
    }

    /// Twist of a word by balancing: `θ_{U⊗V} = c_{V,U} c_{U,V} (θ_U ⊗ θ_V)`.
    pub fn twist_word(&self, x: &ObjectExpr) -> Result<CMat, EvalError> {
        if x.is_unit() {
            return Ok(CMat::identity(1));
        }
        if x.len() == 1 {
            return self.twist_atom(&x.0[0]);
        }
        let (u, v) = x.split_at(1);
        let tu = self.twist_atom(&u.0[0])?;
        let tv = self.twist_word(&v)?;
        self.braid_words(&v, &u)?.mul(&self.braid_words(&u, &v)?)?.mul(&tu.kron(&tv))
    }

    /// Left-rigidity data. Dagger flavors use `β = d†, δ = b†`; otherwise a
    /// braided flavor uses `β = c⁻¹_{X∨,X} ∘ b`, `δ = d ∘ c_{X,X∨}`.
    pub fn lbirth_word(&self, x: &ObjectExpr) -> Result<CMat, EvalError> {
        if x.is_unit() {
            return Ok(CMat::identity(1));
        }
        if x.len() == 1 {
            let a = &x.0[0];
            if self.flavor.dagger {
                return Ok(self.death_atom(a)?.dagger());
            }
            if self.flavor.braided {
                let ad = a.dual(crate::object::DualMark::Right);
                return self.braid_atoms(&ad, a)?.inverse()?.mul(&self.birth_atom(a)?);
            }
            return Err(EvalError::FlavorViolation("a left rigidity (LBirth)".into()));
        }
        // β_{a⊗Y} = (id_{Y∨} ⊗ β_a ⊗ id_Y) ∘ β_Y
        let a = x.slice(0, 1);
        let rest = x.slice(1, x.len());
        let dr = self.dim_word(&rest)?;
        let brest = self.lbirth_word(&rest)?;
        let ba = self.lbirth_word(&a)?;
        CMat::identity(dr).kron(&ba).kron(&CMat::identity(dr)).mul(&brest)
    }

    pub fn ldeath_word(&self, x: &ObjectExpr) -> Result<CMat, EvalError> {
        if x.is_unit() {
            return Ok(CMat::identity(1));
        }
        if x.len() == 1 {
            let a = &x.0[0];
            if self.flavor.dagger {
                return Ok(self.birth_atom(a)?.dagger());
            }
            if self.flavor.braided {
                let ad = a.dual(crate::object::DualMark::Right);
                return self.death_atom(a)?.mul(&self.braid_atoms(a, &ad)?);
            }
            return Err(EvalError::FlavorViolation("a left rigidity (LDeath)".into()));
        }
        // δ_{a⊗Y} = δ_a ∘ (id_a ⊗ δ_Y ⊗ id_{a∨})
        let a = x.slice(0, 1);
        let rest = x.slice(1, x.len());
        let da = self.dim_word(&a)?;
        let drest = self.ldeath_word(&rest)?;
        let dda = self.ldeath_word(&a)?;
        dda.mul(&CMat::identity(da).kron(&drest).kron(&CMat::identity(da)))
    }

    /// Evaluate a term to a matrix. The term is typechecked against the
    /// model's signature first.
    pub fn eval(&self, term: &Term) -> Result<CMat, EvalError> {
        let sig = self.signature();
        typecheck(term, &sig)?;
        self.eval_unchecked(term)
    }

    fn eval_unchecked(&self, term: &Term) -> Result<CMat, EvalError> {
        match term {
            Term::Id(x) => Ok(CMat::identity(self.dim_word(x)?)),
            Term::Gen(name) => {
                let g = self
                    .generators
                    .get(name)
                    .ok_or_else(|| EvalError::UnassignedGenerator(name.clone()))?;
                let (dr, dc) = (self.dim_word(&g.cod)?, self.dim_word(&g.dom)?);
                if g.matrix.rows != dr || g.matrix.cols != dc {
                    return Err(EvalError::ShapeMismatch(format!(
                        "generator {name}: matrix is {}×{}, boundary needs {dr}×{dc}",
                        g.matrix.rows, g.matrix.cols
                    )));
                }
                Ok(g.matrix.clone())
            }
            Term::Compose(g, f) => self.eval_unchecked(g)?.mul(&self.eval_unchecked(f)?),
            Term::Tensor(a, b) => Ok(self.eval_unchecked(a)?.kron(&self.eval_unchecked(b)?)),
            Term::Birth(x) => self.birth_word(x),
            Term::Death(x) => self.death_word(x),
            Term::LBirth(x) => self.lbirth_word(x),
            Term::LDeath(x) => self.ldeath_word(x),
            Term::Braid(u, v) => self.braid_words(u, v),
            Term::BraidInv(u, v) => self.braid_words(u, v)?.inverse(),
            Term::Twist(x) => self.twist_word(x),
            Term::TwistInv(x) => self.twist_word(x)?.inverse(),
            Term::Dagger(f) => match &self.dagger {
                Some(DaggerRealization::Tables(tab)) => {
                    if let Term::Gen(name) = &**f {
                        if let Some(m) = tab.get(name) {
                            return Ok(m.clone());
                        }
                    }
                    match &**f {
                        Term::Compose(g, h) => self
                            .eval_unchecked(&Term::dagger((**h).clone()))?
                            .mul(&self.eval_unchecked(&Term::dagger((**g).clone()))?),
                        Term::Tensor(a, b) => Ok(self
                            .eval_unchecked(&Term::dagger((**a).clone()))?
                            .kron(&self.eval_unchecked(&Term::dagger((**b).clone()))?)),
                        Term::Dagger(inner) => self.eval_unchecked(inner),
                        other => Ok(self.eval_unchecked(other)?.dagger()),
                    }
                }
                _ => Ok(self.eval_unchecked(f)?.dagger()),
            },
        }
    }

    /// Evaluate a scalar term (`𝟙 → 𝟙`) to a complex number.
    pub fn model_scalar(&self, term: &Term) -> Result<C, EvalError> {
        let m = self.eval(term)?;
        if m.rows != 1 || m.cols != 1 {
            return Err(EvalError::ShapeMismatch(format!(
                "expected a 1×1 scalar, found {}×{}",
                m.rows, m.cols
            )));
        }
        Ok(m[(0, 0)])
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

type WireMatrix = Vec<Vec<[f64; 2]>>;

fn to_wire(m: &CMat) -> WireMatrix {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn from_wire(w: &WireMatrix) -> Result<CMat, String> {
    let rows = w.len();
    let cols = w.first().map_or(0, |r| r.len());
    if w.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix".into());
    }
    Ok(CMat::from_fn(rows, cols, |i, j| C::new(w[i][j][0], w[i][j][1])))
}

#[derive(Serialize, Deserialize)]
struct WireGen {
    dom: String,
    cod: String,
    matrix: WireMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireDagger {
    Mode(String),
    Tables(BTreeMap<String, WireMatrix>),
}

#[derive(Serialize, Deserialize)]
struct WireModel {
    name: String,
    flavor: Flavor,
    objects: BTreeMap<String, usize>,
    #[serde(default)]
    generators: BTreeMap<String, WireGen>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    duality: BTreeMap<String, WireMatrix>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    braid: BTreeMap<String, WireMatrix>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    twist: BTreeMap<String, WireMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dagger: Option<WireDagger>,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
}

fn default_tolerance() -> f64 {
    1e-10
}

impl ModelSpec {
    pub fn to_json(&self) -> String {
        let wire = WireModel {
            name: self.name.clone(),
            flavor: self.flavor,
            objects: self.objects.clone(),
            generators: self
                .generators
                .iter()
                .map(|(k, g)| {
                    (
                        k.clone(),
                        WireGen {
                            dom: crate::print::print_object(&g.dom),
                            cod: crate::print::print_object(&g.cod),
                            matrix: to_wire(&g.matrix),
                        },
                    )
                })
                .collect(),
            duality: self.duality.iter().map(|(k, m)| (k.clone(), to_wire(m))).collect(),
            braid: self
                .braid
                .iter()
                .map(|((u, v), m)| (format!("{u},{v}"), to_wire(m)))
                .collect(),
            twist: self.twist.iter().map(|(k, m)| (k.clone(), to_wire(m))).collect(),
            dagger: self.dagger.as_ref().map(|d| match d {
                DaggerRealization::ConjugateTranspose => {
                    WireDagger::Mode("conjugate-transpose".into())
                }
                DaggerRealization::Tables(t) => {
                    WireDagger::Tables(t.iter().map(|(k, m)| (k.clone(), to_wire(m))).collect())
                }
            }),
            tolerance: self.tolerance,
        };
        serde_json::to_string_pretty(&wire).expect("model serialization cannot fail")
    }

    pub fn from_json(src: &str) -> Result<ModelSpec, String> {
        let wire: WireModel = serde_json::from_str(src).map_err(|e| e.to_string())?;
        wire.flavor.validate().map_err(|e| e.to_string())?;
        let mut m = ModelSpec::new(wire.name, wire.flavor);
        m.objects = wire.objects;
        m.tolerance = wire.tolerance;
        for (name, g) in wire.generators {
            let dom = crate::parse::parse_object_str(&g.dom).map_err(|e| e.to_string())?;
            let cod = crate::parse::parse_object_str(&g.cod).map_err(|e| e.to_string())?;
            m.generators.insert(name, GenData { dom, cod, matrix: from_wire(&g.matrix)? });
        }
        for (name, w) in wire.duality {
            m.duality.insert(name, from_wire(&w)?);
        }
        for (key, w) in wire.braid {
            let (u, v) = key
                .split_once(',')
                .ok_or_else(|| format!("braid key `{key}` must be `U,V`"))?;
            m.braid.insert((u.trim().to_string(), v.trim().to_string()), from_wire(&w)?);
        }
        for (name, w) in wire.twist {
            m.twist.insert(name, from_wire(&w)?);
        }
        m.dagger = match wire.dagger {
            None => None,
            Some(WireDagger::Mode(s)) if s == "conjugate-transpose" => {
                Some(DaggerRealization::ConjugateTranspose)
            }
            Some(WireDagger::Mode(s)) => return Err(format!("unknown dagger mode `{s}`")),
            Some(WireDagger::Tables(t)) => {
                let mut tab = BTreeMap::new();
                for (k, w) in t {
                    tab.insert(k, from_wire(&w)?);
                }
                Some(DaggerRealization::Tables(tab))
            }
        };
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn json_round_trip() {
        for model in [builtins::sym_vect(2), builtins::semion(), builtins::rmatrix(C::new(1.3, 0.0))] {
            let json = model.to_json();
            let back = ModelSpec::from_json(&json).unwrap();
            assert_eq!(back.name, model.name);
            assert_eq!(back.flavor, model.flavor);
            assert_eq!(back.objects, model.objects);
            for (k, m) in &model.braid {
                assert!(back.braid[k].approx_eq(m, 1e-15));
            }
            for (k, m) in &model.twist {
                assert!(back.twist[k].approx_eq(m, 1e-15));
            }
        }
    }

    #[test]
    fn scalar_shape_guard() {
        let m = builtins::sym_vect(2);
        let v = ObjectExpr::atom("V");
        assert!(m.model_scalar(&Term::Id(v)).is_err());
        let one = m.model_scalar(&Term::Id(ObjectExpr::unit())).unwrap();
        assert!((one - C::new(1.0, 0.0)).norm() < 1e-15);
    }
}
