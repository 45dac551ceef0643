//! Derived constructions: names and conames, transposes, canonical left
//! rigidities, the double-dual comparison ψ, pivots, scalar action, quantum
//! and partial traces, and dagger pushdown.
//!
//! Everything here builds plain terms; no evaluation happens. Composites:
//!
//! - name    `ˇf = (f ⊗ id_{V*}) ∘ b_V : 𝟙 → W ⊗ V*`
//! - coname  `ˆf = d_W ∘ (id_{W*} ⊗ f) : W* ⊗ V → 𝟙`
//! - transpose `f* = (d_W ⊗ id_{V*}) ∘ (id_{W*} ⊗ f ⊗ id_{V*}) ∘ (id_{W*} ⊗ b_V)`
//! - ψ_V = (id_V ⊗ d_{V*}) ∘ (c_{V**,V} ⊗ id_{V*}) ∘ (id_{V**} ⊗ b_V) : V** → V
//! - ψ⁻¹_V = (d_V ⊗ id_{V**}) ∘ (c_{V,V*} ⊗ id_{V**}) ∘ (id_V ⊗ b_{V*})

use crate::error::TypeError;
use crate::object::ObjectExpr;
use crate::signature::Signature;
use crate::term::{expect_endo, expect_scalar, typecheck, Term};

/// The two canonical quantum-trace closures (over- vs under-crossing loop).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStyle {
    Over,
    Under,
}

/// The three partial-trace shapes on `f : A ⊗ V → B ⊗ V`.
///
/// `Vanilla` puts the dual twist on the loop after the crossing; `GoofyUp`
/// puts the twist on the traced strand above `f`, `GoofyDown` below `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialTraceStyle {
    Vanilla,
    GoofyUp,
    GoofyDown,
}

fn id(x: &ObjectExpr) -> Term {
    Term::Id(x.clone())
}

/// `ˇf : 𝟙 → W ⊗ V*` for `f : V → W`.
pub fn name_of(sig: &Signature, f: &Term) -> Result<Term, TypeError> {
    let b = typecheck(f, sig)?;
    Ok(Term::pipeline([
        Term::Birth(b.dom.clone()),
        Term::tensor(f.clone(), id(&b.dom.right_dual())),
    ]))
}

/// `ˆf : W* ⊗ V → 𝟙` for `f : V → W`.
pub fn coname_of(sig: &Signature, f: &Term) -> Result<Term, TypeError> {
    let b = typecheck(f, sig)?;
    Ok(Term::pipeline([
        Term::tensor(id(&b.cod.right_dual()), f.clone()),
        Term::Death(b.cod.clone()),
    ]))
}

/// Right transpose `f* : W* → V*` for `f : V → W`.
pub fn transpose(sig: &Signature, f: &Term) -> Result<Term, TypeError> {
    let b = typecheck(f, sig)?;
    let (v, w) = (b.dom, b.cod);
    let (vd, wd) = (v.right_dual(), w.right_dual());
    Ok(Term::pipeline([
        Term::tensor(id(&wd), Term::Birth(v.clone())),
        Term::tensor(Term::tensor(id(&wd), f.clone()), id(&vd)),
        Term::tensor(Term::Death(w), id(&vd)),
    ]))
}

/// Left transpose `f∨ : W∨ → V∨` for `f : V → W`, via `LBirth`/`LDeath`.
pub fn left_transpose(sig: &Signature, f: &Term) -> Result<Term, TypeError> {
    let b = typecheck(f, sig)?;
    let (v, w) = (b.dom, b.cod);
    let (vl, wl) = (sig.left_dual(&v), sig.left_dual(&w));
    Ok(Term::pipeline([
        Term::tensor(Term::LBirth(v.clone()), id(&wl)),
        Term::tensor(Term::tensor(id(&vl), f.clone()), id(&wl)),
        Term::tensor(id(&vl), Term::LDeath(w)),
    ]))
}

/// The braiding-induced left rigidity on a braided right-rigid flavor:
/// `β_X = c⁻¹_{X*,X} ∘ b_X` and `δ_X = d_X ∘ c_{X,X*}` with `X∨ = X*`.
pub fn left_rigidity_from_braiding(x: &ObjectExpr) -> (Term, Term) {
    let xd = x.right_dual();
    let beta = Term::compose(Term::BraidInv(xd.clone(), x.clone()), Term::Birth(x.clone()));
    let delta = Term::compose(Term::Death(x.clone()), Term::Braid(x.clone(), xd));
    (beta, delta)
}

/// The dagger-induced left rigidity: `β_X = (d_X)†` and `δ_X = (b_X)†`.
pub fn left_rigidity_from_dagger(x: &ObjectExpr) -> (Term, Term) {
    (Term::dagger(Term::Death(x.clone())), Term::dagger(Term::Birth(x.clone())))
}

/// `ψ_X : X** → X`.
pub fn psi(x: &ObjectExpr) -> Term {
    let xd = x.right_dual();
    let xdd = xd.right_dual();
    Term::pipeline([
        Term::tensor(id(&xdd), Term::Birth(x.clone())),
        Term::tensor(Term::Braid(xdd, x.clone()), id(&xd)),
        Term::tensor(id(x), Term::Death(xd)),
    ])
}

/// `ψ⁻¹_X : X → X**` (the opposite-crossing composite; see `psi`).
pub fn psi_inv(x: &ObjectExpr) -> Term {
    let xd = x.right_dual();
    let xdd = xd.right_dual();
    Term::pipeline([
        Term::tensor(id(x), Term::Birth(xd.clone())),
        Term::tensor(Term::Braid(x.clone(), xd), id(&xdd)),
        Term::tensor(Term::Death(x.clone()), id(&xdd)),
    ])
}

/// Pivot from the twist: `piv_X = ψ⁻¹_X ∘ θ_X : X → X**`.
pub fn piv_from_twist(x: &ObjectExpr) -> Term {
    Term::compose(psi_inv(x), Term::Twist(x.clone()))
}

/// The comparison `φ : X∨' → X∨` between two left rigidities
/// `(β, δ)` and `(β', δ')` on `x`: `φ = (id_{X∨} ⊗ δ') ∘ (β ⊗ id_{X∨'})`.
///
/// The left-dual words are read off the structures' boundaries.
pub fn unique_phi_between(
    sig: &Signature,
    x: &ObjectExpr,
    beta: &Term,
    delta_primed: &Term,
) -> Result<Term, TypeError> {
    let bb = typecheck(beta, sig)?;
    let bd = typecheck(delta_primed, sig)?;
    let n = x.len();
    if !bb.dom.is_unit() || bb.cod.len() < n || bb.cod.slice(bb.cod.len() - n, bb.cod.len()) != *x {
        return Err(TypeError::BoundaryMismatch(format!(
            "β must have type 𝟙 → X∨ ⊗ X for X = {x}, found {bb}"
        )));
    }
    if !bd.cod.is_unit() || bd.dom.len() < n || bd.dom.slice(0, n) != *x {
        return Err(TypeError::BoundaryMismatch(format!(
            "δ' must have type X ⊗ X∨' → 𝟙 for X = {x}, found {bd}"
        )));
    }
    let l = bb.cod.slice(0, bb.cod.len() - n);
    let lp = bd.dom.slice(n, bd.dom.len());
    Ok(Term::pipeline([
        Term::tensor(beta.clone(), id(&lp)),
        Term::tensor(id(&l), delta_primed.clone()),
    ]))
}

/// `φ_X` comparing the braiding-induced left rigidity (unprimed) with the
/// dagger-induced one (primed). In a Hermitian ribbon flavor `φ_X = θ_{X*}`.
pub fn unique_phi(sig: &Signature, x: &ObjectExpr) -> Result<Term, TypeError> {
    let (beta, _) = left_rigidity_from_braiding(x);
    let (_, delta_dag) = left_rigidity_from_dagger(x);
    unique_phi_between(sig, x, &beta, &delta_dag)
}

/// Inverse of [`unique_phi`]: swap the roles of the two structures.
pub fn unique_phi_inv(sig: &Signature, x: &ObjectExpr) -> Result<Term, TypeError> {
    let (beta_dag, _) = left_rigidity_from_dagger(x);
    let (_, delta_braid) = left_rigidity_from_braiding(x);
    unique_phi_between(sig, x, &beta_dag, &delta_braid)
}

/// Scalar action `s • f = s ⊗ f` (strict unit: `𝟙 ⊗ V = V`).
pub fn scalar_mul(sig: &Signature, s: &Term, f: &Term) -> Result<Term, TypeError> {
    expect_scalar(s, sig)?;
    typecheck(f, sig)?;
    Ok(Term::tensor(s.clone(), f.clone()))
}

/// Quantum trace of an endomorphism `f : X → X`, as a scalar term `𝟙 → 𝟙`.
pub fn quantum_trace(sig: &Signature, f: &Term, style: TraceStyle) -> Result<Term, TypeError> {
    let x = expect_endo(f, sig)?;
    let xd = x.right_dual();
    Ok(match style {
        TraceStyle::Over => Term::pipeline([
            Term::Birth(x.clone()),
            Term::tensor(Term::compose(Term::Twist(x.clone()), f.clone()), id(&xd)),
            Term::Braid(x.clone(), xd),
            Term::Death(x),
        ]),
        TraceStyle::Under => Term::pipeline([
            Term::Birth(x.clone()),
            Term::tensor(Term::compose(Term::TwistInv(x.clone()), f.clone()), id(&xd)),
            Term::BraidInv(xd, x.clone()),
            Term::Death(x),
        ]),
    })
}

/// Quantum dimension `dim_q(X) = tr_q(id_X)`.
pub fn quantum_dim(sig: &Signature, x: &ObjectExpr, style: TraceStyle) -> Result<Term, TypeError> {
    quantum_trace(sig, &Term::Id(x.clone()), style)
}

/// Partial trace over the rightmost factor `V` of `f : A ⊗ V → B ⊗ V`.
pub fn partial_trace(
    sig: &Signature,
    f: &Term,
    v: &ObjectExpr,
    style: PartialTraceStyle,
) -> Result<Term, TypeError> {
    let b = typecheck(f, sig)?;
    let n = v.len();
    let strip = |w: &ObjectExpr| -> Result<ObjectExpr, TypeError> {
        if w.len() < n || w.slice(w.len() - n, w.len()) != *v {
            return Err(TypeError::BoundaryMismatch(format!(
                "partial trace over {v} needs boundaries ending in {v}, found {w}"
            )));
        }
        Ok(w.slice(0, w.len() - n))
    };
    let a = strip(&b.dom)?;
    let bb = strip(&b.cod)?;
    let vd = v.right_dual();
    let open = Term::tensor(id(&a), Term::Birth(v.clone()));
    let cross = Term::tensor(id(&bb), Term::Braid(v.clone(), vd.clone()));
    let close = Term::tensor(id(&bb), Term::Death(v.clone()));
    Ok(match style {
        PartialTraceStyle::Vanilla => Term::pipeline([
            open,
            Term::tensor(f.clone(), id(&vd)),
            cross,
            Term::tensor(Term::tensor(id(&bb), Term::Twist(vd.clone())), id(v)),
            close,
        ]),
        PartialTraceStyle::GoofyUp => {
            let fu = Term::compose(Term::tensor(id(&bb), Term::Twist(v.clone())), f.clone());
            Term::pipeline([open, Term::tensor(fu, id(&vd)), cross, close])
        }
        PartialTraceStyle::GoofyDown => {
            let fd = Term::compose(f.clone(), Term::tensor(id(&a), Term::Twist(v.clone())));
            Term::pipeline([open, Term::tensor(fd, id(&vd)), cross, close])
        }
    })
}

/// Push daggers to the leaves. Generators keep a `Dagger(Gen)` leaf unless
/// the signature names an adjoint; structural leaves flip per the flavor:
/// `b† = δ`, `d† = β`, `β† = d`, `δ† = b`, and braids/twists flip per the
/// dagger type (I: inverse, II: opposite/self).
pub fn dagger_pushdown(term: &Term, sig: &Signature) -> Result<Term, TypeError> {
    use crate::flavor::DaggerType;
    fn down(t: &Term, sig: &Signature) -> Result<Term, TypeError> {
        Ok(match t {
            Term::Compose(g, f) => Term::compose(down(g, sig)?, down(f, sig)?),
            Term::Tensor(a, b) => Term::tensor(down(a, sig)?, down(b, sig)?),
            Term::Dagger(u) => push(u, sig)?,
            leaf => leaf.clone(),
        })
    }
    fn push(t: &Term, sig: &Signature) -> Result<Term, TypeError> {
        if !sig.flavor.dagger {
            return Err(TypeError::FlavorViolation("dagger pushdown requires a dagger flavor".into()));
        }
        let ty = sig.flavor.dagger_type;
        let braid_violation = || {
            TypeError::FlavorViolation(
                "dagger of a braid/twist needs a declared dagger type (I or II)".into(),
            )
        };
        Ok(match t {
            Term::Id(x) => Term::Id(x.clone()),
            Term::Gen(name) => match sig.generator(name)?.adjoint.clone() {
                Some(adj) => Term::Gen(adj),
                None => Term::dagger(Term::Gen(name.clone())),
            },
            Term::Compose(g, f) => Term::compose(push(f, sig)?, push(g, sig)?),
            Term::Tensor(a, b) => Term::tensor(push(a, sig)?, push(b, sig)?),
            Term::Dagger(u) => down(u, sig)?,
            Term::Birth(x) => Term::LDeath(x.clone()),
            Term::Death(x) => Term::LBirth(x.clone()),
            Term::LBirth(x) => Term::Death(x.clone()),
            Term::LDeath(x) => Term::Birth(x.clone()),
            Term::Braid(u, v) => match ty {
                DaggerType::TypeI => Term::BraidInv(u.clone(), v.clone()),
                DaggerType::TypeII => Term::Braid(v.clone(), u.clone()),
                DaggerType::None => return Err(braid_violation()),
            },
            Term::BraidInv(u, v) => match ty {
                DaggerType::TypeI => Term::Braid(u.clone(), v.clone()),
                DaggerType::TypeII => Term::BraidInv(v.clone(), u.clone()),
                DaggerType::None => return Err(braid_violation()),
            },
            Term::Twist(x) => match ty {
                DaggerType::TypeI => Term::TwistInv(x.clone()),
                DaggerType::TypeII => Term::Twist(x.clone()),
                DaggerType::None => return Err(braid_violation()),
            },
            Term::TwistInv(x) => match ty {
                DaggerType::TypeI => Term::Twist(x.clone()),
                DaggerType::TypeII => Term::TwistInv(x.clone()),
                DaggerType::None => return Err(braid_violation()),
            },
        })
    }
    down(term, sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flavor::{DaggerType, Flavor};
    use crate::signature::GeneratorDecl;

    fn sig() -> Signature {
        let mut s = Signature::new(Flavor::ribbon_dagger(DaggerType::TypeI));
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
    fn name_coname_transpose_boundaries() {
        let s = sig();
        let f = Term::gen("f");
        let v = ObjectExpr::atom("V");
        let w = ObjectExpr::atom("W");

        let nb = typecheck(&name_of(&s, &f).unwrap(), &s).unwrap();
        assert!(nb.dom.is_unit());
        assert_eq!(nb.cod, w.tensor(&v.right_dual()));

        let cb = typecheck(&coname_of(&s, &f).unwrap(), &s).unwrap();
        assert_eq!(cb.dom, w.right_dual().tensor(&v));
        assert!(cb.cod.is_unit());

        let tb = typecheck(&transpose(&s, &f).unwrap(), &s).unwrap();
        assert_eq!(tb.dom, w.right_dual());
        assert_eq!(tb.cod, v.right_dual());

        let lb = typecheck(&left_transpose(&s, &f).unwrap(), &s).unwrap();
        assert_eq!(lb.dom, s.left_dual(&w));
        assert_eq!(lb.cod, s.left_dual(&v));
    }

    #[test]
    fn psi_boundaries() {
        let s = sig();
        let v = ObjectExpr::atom("V");
        let vdd = v.right_dual().right_dual();
        let pb = typecheck(&psi(&v), &s).unwrap();
        assert_eq!(pb.dom, vdd);
        assert_eq!(pb.cod, v);
        let ib = typecheck(&psi_inv(&v), &s).unwrap();
        assert_eq!(ib.dom, v);
        assert_eq!(ib.cod, vdd);
        let piv = typecheck(&piv_from_twist(&v), &s).unwrap();
        assert_eq!(piv.dom, v);
        assert_eq!(piv.cod, vdd);
    }

    #[test]
    fn traces_are_scalars() {
        let s = sig();
        let v = ObjectExpr::atom("V");
        for style in [TraceStyle::Over, TraceStyle::Under] {
            let t = quantum_dim(&s, &v, style).unwrap();
            let b = typecheck(&t, &s).unwrap();
            assert!(b.dom.is_unit() && b.cod.is_unit());
        }
    }

    #[test]
    fn partial_trace_boundaries() {
        let mut s = sig();
        let v = ObjectExpr::atom("V");
        let a = ObjectExpr::atom("W");
        s.add_generator(GeneratorDecl {
            name: "F".into(),
            dom: a.tensor(&v),
            cod: a.tensor(&v),
            adjoint: None,
        })
        .unwrap();
        for style in
            [PartialTraceStyle::Vanilla, PartialTraceStyle::GoofyUp, PartialTraceStyle::GoofyDown]
        {
            let t = partial_trace(&s, &Term::gen("F"), &v, style).unwrap();
            let b = typecheck(&t, &s).unwrap();
            assert_eq!(b.dom, a);
            assert_eq!(b.cod, a);
        }
    }

    #[test]
    fn pushdown_reaches_leaves() {
        let s = sig();
        let v = ObjectExpr::atom("V");
        let t = Term::dagger(Term::compose(
            Term::Braid(v.clone(), v.clone()),
            Term::tensor(Term::Twist(v.clone()), Term::gen("f")),
        ));
        let p = dagger_pushdown(&t, &s).unwrap();
        // Type I: braid† = inverse braid, twist† = inverse twist, and the
        // composite reverses. The only Dagger left wraps the adjointless gen.
        fn daggers_only_on_gens(t: &Term) -> bool {
            match t {
                Term::Dagger(u) => matches!(**u, Term::Gen(_)),
                Term::Compose(a, b) | Term::Tensor(a, b) => {
                    daggers_only_on_gens(a) && daggers_only_on_gens(b)
                }
                _ => true,
            }
        }
        assert!(daggers_only_on_gens(&p));
        // Involution: pushing the double dagger returns the original shape.
        let tt = dagger_pushdown(&Term::dagger(Term::dagger(Term::gen("f"))), &s).unwrap();
        assert_eq!(tt, Term::gen("f"));
    }

    #[test]
    fn scalar_mul_rejects_nonscalars() {
        let s = sig();
        let f = Term::gen("f");
        assert!(matches!(scalar_mul(&s, &f, &f), Err(TypeError::NotAScalar { .. })));
    }
}
