//! Terminating rewriting: normalization, tri-state equality, and a catalog of
//! individually applicable, soundness-tested rules.
//!
//! `normalize` works in phases:
//!
//! 1. daggers are pushed to the leaves;
//! 2. structural constructors on tensor words are expanded to atom level
//!    (hexagons for braids, balancing for twists, nested snakes for
//!    birth/death), identities on the unit dissolve;
//! 3. the term is cut into *whiskered layers* `id ⊗ core ⊗ id` with exactly
//!    one non-identity core each (this normalizes interchange);
//! 4. layers slide down past disjoint layers into column order ("morphisms
//!    move down"), and adjacent inverse pairs (braid/braid⁻¹, twist/twist⁻¹)
//!    and snake pairs (birth/death, lbirth/ldeath) cancel;
//! 5. the layer list is reassembled into a right-nested composition.
//!
//! Every phase preserves the boundary and is sound under evaluation; the
//! procedure terminates (expansion is structurally decreasing, sliding and
//! cancellation run under fuel to a fixpoint). `equal_by_rewrite` compares
//! normal forms and answers `Equal` or `Unknown` — never a false `Equal`.

use crate::error::{RewriteError, TypeError};
use crate::flavor::{DaggerType, Flavor};
use crate::object::ObjectExpr;
use crate::signature::Signature;
use crate::term::{typecheck, Term};
use serde::Serialize;

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    fn push(&mut self, rule: &str, detail: impl Into<String>) {
        self.steps.push(TraceStep { rule: rule.to_string(), detail: detail.into() });
    }
}

impl std::fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{:3}. {:20} {}", i + 1, s.rule, s.detail)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Phase 1+2: expansion to atom-level leaves
// ---------------------------------------------------------------------------

fn expand(t: &Term, sig: &Signature, trace: &mut RewriteTrace) -> Result<Term, TypeError> {
    let rec = |t: &Term, trace: &mut RewriteTrace| expand(t, sig, trace);
    Ok(match t {
        Term::Id(_) | Term::Gen(_) => t.clone(),
        Term::Compose(g, f) => Term::compose(rec(g, trace)?, rec(f, trace)?),
        Term::Tensor(a, b) => Term::tensor(rec(a, trace)?, rec(b, trace)?),
        Term::Dagger(_) => {
            // Handled by the caller's global pushdown; daggers reaching here
            // wrap adjointless generators and are leaves.
            t.clone()
        }
        Term::Braid(u, v) | Term::BraidInv(u, v) => {
            let inv = matches!(t, Term::BraidInv(..));
            if u.is_unit() || v.is_unit() {
                trace.push("braid-unit", format!("c({u}, {v}) = id"));
                return Ok(Term::Id(u.tensor(v)));
            }
            if u.len() == 1 && v.len() == 1 {
                return Ok(t.clone());
            }
            trace.push(
                if inv { "hexagon-expand-inv" } else { "hexagon-expand" },
                format!("c({u}, {v})"),
            );
            let e = if u.len() > 1 {
                let (a, rest) = u.split_at(1);
                if inv {
                    // c⁻¹_{A⊗B,C} = (id_A ⊗ c⁻¹_{B,C}) ∘ (c⁻¹_{A,C} ⊗ id_B)
                    Term::compose(
                        Term::tensor(Term::Id(a.clone()), Term::BraidInv(rest.clone(), v.clone())),
                        Term::tensor(Term::BraidInv(a, v.clone()), Term::Id(rest)),
                    )
                } else {
                    // c_{A⊗B,C} = (c_{A,C} ⊗ id_B) ∘ (id_A ⊗ c_{B,C})
                    Term::compose(
                        Term::tensor(Term::Braid(a.clone(), v.clone()), Term::Id(rest.clone())),
                        Term::tensor(Term::Id(a), Term::Braid(rest, v.clone())),
                    )
                }
            } else {
                let (b, c) = v.split_at(1);
                if inv {
                    // c⁻¹_{A,B⊗C} = (c⁻¹_{A,B} ⊗ id_C) ∘ (id_B ⊗ c⁻¹_{A,C})
                    Term::compose(
                        Term::tensor(Term::BraidInv(u.clone(), b.clone()), Term::Id(c.clone())),
                        Term::tensor(Term::Id(b), Term::BraidInv(u.clone(), c)),
                    )
                } else {
                    // c_{A,B⊗C} = (id_B ⊗ c_{A,C}) ∘ (c_{A,B} ⊗ id_C)
                    Term::compose(
                        Term::tensor(Term::Id(b.clone()), Term::Braid(u.clone(), c.clone())),
                        Term::tensor(Term::Braid(u.clone(), b), Term::Id(c)),
                    )
                }
            };
            rec(&e, trace)?
        }
        Term::Twist(x) | Term::TwistInv(x) => {
            let inv = matches!(t, Term::TwistInv(..));
            if x.is_unit() {
                trace.push("twist-unit", "θ(𝟙) = id".to_string());
                return Ok(Term::Id(ObjectExpr::unit()));
            }
            if x.len() == 1 {
                return Ok(t.clone());
            }
            trace.push("balancing-expand", format!("θ({x})"));
            let (u, v) = x.split_at(1);
            let e = if inv {
                // θ⁻¹_{U⊗V} = (θ⁻¹_U ⊗ θ⁻¹_V) ∘ c⁻¹_{U,V} ∘ c⁻¹_{V,U}
                Term::pipeline([
                    Term::BraidInv(v.clone(), u.clone()),
                    Term::BraidInv(u.clone(), v.clone()),
                    Term::tensor(Term::TwistInv(u), Term::TwistInv(v)),
                ])
            } else {
                // θ_{U⊗V} = c_{V,U} ∘ c_{U,V} ∘ (θ_U ⊗ θ_V)
                Term::pipeline([
                    Term::tensor(Term::Twist(u.clone()), Term::Twist(v.clone())),
                    Term::Braid(u.clone(), v.clone()),
                    Term::Braid(v, u),
                ])
            };
            rec(&e, trace)?
        }
        Term::Birth(x) | Term::Death(x) | Term::LBirth(x) | Term::LDeath(x) => {
            if x.is_unit() {
                trace.push("duality-unit", "b/d(𝟙) = id");
                return Ok(Term::Id(ObjectExpr::unit()));
            }
            if x.len() == 1 {
                return Ok(t.clone());
            }
            trace.push("duality-word-expand", format!("word {x}"));
            let (a, rest) = x.split_at(1);
            let e = match t {
                // b_{a⊗Y} = (id_a ⊗ b_Y ⊗ id_{a*}) ∘ b_a
                Term::Birth(_) => Term::compose(
                    Term::tensor(
                        Term::tensor(Term::Id(a.clone()), Term::Birth(rest.clone())),
                        Term::Id(a.right_dual()),
                    ),
                    Term::Birth(a.clone()),
                ),
                // d_{a⊗Y} = d_Y ∘ (id_{Y*} ⊗ d_a ⊗ id_Y)
                Term::Death(_) => Term::compose(
                    Term::Death(rest.clone()),
                    Term::tensor(
                        Term::tensor(Term::Id(rest.right_dual()), Term::Death(a.clone())),
                        Term::Id(rest.clone()),
                    ),
                ),
                // β_{a⊗Y} = (id_{Y∨} ⊗ β_a ⊗ id_Y) ∘ β_Y
                Term::LBirth(_) => Term::compose(
                    Term::tensor(
                        Term::tensor(Term::Id(sig.left_dual(&rest)), Term::LBirth(a.clone())),
                        Term::Id(rest.clone()),
                    ),
                    Term::LBirth(rest.clone()),
                ),
                // δ_{a⊗Y} = δ_a ∘ (id_a ⊗ δ_Y ⊗ id_{a∨})
                Term::LDeath(_) => Term::compose(
                    Term::LDeath(a.clone()),
                    Term::tensor(
                        Term::tensor(Term::Id(a.clone()), Term::LDeath(rest.clone())),
                        Term::Id(sig.left_dual(&a)),
                    ),
                ),
                _ => unreachable!(),
            };
            rec(&e, trace)?
        }
    })
}

// ---------------------------------------------------------------------------
// Phase 3: whiskered layers
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
struct Layer {
    left: ObjectExpr,
    core: Term,
    core_dom: ObjectExpr,
    core_cod: ObjectExpr,
    right: ObjectExpr,
}

fn layerize(t: &Term, sig: &Signature, out: &mut Vec<Layer>) -> Result<(), TypeError> {
    match t {
        Term::Id(_) => Ok(()),
        Term::Compose(g, f) => {
            layerize(f, sig, out)?;
            layerize(g, sig, out)
        }
        Term::Tensor(a, b) => {
            let ba = typecheck(a, sig)?;
            let bb = typecheck(b, sig)?;
            let mut la = Vec::new();
            layerize(a, sig, &mut la)?;
            for mut l in la {
                l.right = l.right.tensor(&bb.dom);
                out.push(l);
            }
            let mut lb = Vec::new();
            layerize(b, sig, &mut lb)?;
            for mut l in lb {
                l.left = ba.cod.tensor(&l.left);
                out.push(l);
            }
            Ok(())
        }
        leaf => {
            let b = typecheck(leaf, sig)?;
            out.push(Layer {
                left: ObjectExpr::unit(),
                core: leaf.clone(),
                core_dom: b.dom,
                core_cod: b.cod,
                right: ObjectExpr::unit(),
            });
            Ok(())
        }
    }
}

/// Do the two adjacent layers form an inverse or snake pair?
fn cancels(pre: &Layer, post: &Layer) -> bool {
    let same_col = pre.left == post.left;
    match (&pre.core, &post.core) {
        (Term::Braid(u1, v1), Term::BraidInv(u2, v2))
        | (Term::BraidInv(u1, v1), Term::Braid(u2, v2)) => same_col && u1 == u2 && v1 == v2,
        (Term::Twist(x1), Term::TwistInv(x2)) | (Term::TwistInv(x1), Term::Twist(x2)) => {
            same_col && x1 == x2
        }
        (Term::Birth(x1), Term::Death(x2)) | (Term::LBirth(x1), Term::LDeath(x2)) => {
            if x1 != x2 {
                return false;
            }
            // Snake A: eater sits one column right of the birth; snake B: one
            // column left. Typechecking of the layer sequence guarantees the
            // consumed strand matches.
            let p = pre.left.len();
            post.left.len() == p + 1 && post.left.slice(0, p) == pre.left
                || (p >= 1 && post.left == pre.left.slice(0, p - 1))
        }
        _ => false,
    }
}

/// Slide `post` below `pre` when its core acts strictly left of `pre`'s core
/// on strands `pre` does not touch. Returns the swapped pair.
fn try_slide(pre: &Layer, post: &Layer) -> Option<(Layer, Layer)> {
    let a1 = pre.left.len();
    let a2 = post.left.len();
    let b2 = a2 + post.core_dom.len();
    // post entirely inside pre.left, strictly left of pre's core column.
    if b2 <= a1 && a2 < a1 {
        let r = pre.left.slice(b2, a1);
        let new_post = Layer {
            left: post.left.clone(),
            core: post.core.clone(),
            core_dom: post.core_dom.clone(),
            core_cod: post.core_cod.clone(),
            right: r.tensor(&pre.core_dom).tensor(&pre.right),
        };
        let new_pre = Layer {
            left: post.left.tensor(&post.core_cod).tensor(&r),
            core: pre.core.clone(),
            core_dom: pre.core_dom.clone(),
            core_cod: pre.core_cod.clone(),
            right: pre.right.clone(),
        };
        return Some((new_post, new_pre));
    }
    None
}

fn canonicalize(layers: &mut Vec<Layer>, trace: &mut RewriteTrace) {
    let mut fuel = 64 + layers.len() * layers.len() * 8;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < layers.len().saturating_sub(1) {
            if cancels(&layers[i], &layers[i + 1]) {
                let rule = match &layers[i].core {
                    Term::Braid(..) | Term::BraidInv(..) => "braid-inverse",
                    Term::Twist(..) | Term::TwistInv(..) => "twist-inverse",
                    Term::Birth(..) => "snake-right",
                    Term::LBirth(..) => "snake-left",
                    _ => "cancel",
                };
                trace.push(
                    rule,
                    format!(
                        "cancel {} / {}",
                        crate::print::print_term(&layers[i].core),
                        crate::print::print_term(&layers[i + 1].core)
                    ),
                );
                layers.drain(i..=i + 1);
                changed = true;
                i = i.saturating_sub(1);
                continue;
            }
            i += 1;
        }
        let mut slides = 0usize;
        for i in 0..layers.len().saturating_sub(1) {
            if let Some((a, b)) = try_slide(&layers[i], &layers[i + 1]) {
                layers[i] = a;
                layers[i + 1] = b;
                slides += 1;
                changed = true;
            }
        }
        if slides > 0 {
            trace.push("interchange", format!("{slides} slide(s)"));
        }
        fuel = fuel.saturating_sub(1);
        if !changed || fuel == 0 {
            break;
        }
    }
}

fn reassemble(dom: &ObjectExpr, layers: &[Layer]) -> Term {
    if layers.is_empty() {
        return Term::Id(dom.clone());
    }
    let whisker = |l: &Layer| {
        let mut t = l.core.clone();
        if !l.left.is_unit() {
            t = Term::tensor(Term::Id(l.left.clone()), t);
        }
        if !l.right.is_unit() {
            t = Term::tensor(t, Term::Id(l.right.clone()));
        }
        t
    };
    Term::pipeline(layers.iter().map(whisker))
}

/// Normalize a term; boundary-preserving and sound under evaluation.
pub fn normalize(term: &Term, sig: &Signature) -> Result<(Term, RewriteTrace), TypeError> {
    let mut trace = RewriteTrace::default();
    let b = typecheck(term, sig)?;
    let t = if sig.flavor.dagger {
        let p = crate::derived::dagger_pushdown(term, sig)?;
        if &p != term {
            trace.push("dagger-pushdown", "daggers moved to leaves");
        }
        p
    } else {
        term.clone()
    };
    let t = expand(&t, sig, &mut trace)?;
    let mut layers = Vec::new();
    layerize(&t, sig, &mut layers)?;
    canonicalize(&mut layers, &mut trace);
    let out = reassemble(&b.dom, &layers);
    debug_assert_eq!(typecheck(&out, sig).as_ref().ok(), Some(&b));
    Ok((out, trace))
}

/// Tri-state rewrite equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    Unknown,
}

/// Compare normal forms; `Equal` is sound, `Unknown` is inconclusive.
pub fn equal_by_rewrite(a: &Term, b: &Term, sig: &Signature) -> Result<Equality, TypeError> {
    let (na, _) = normalize(a, sig)?;
    let (nb, _) = normalize(b, sig)?;
    Ok(if na == nb { Equality::Equal } else { Equality::Unknown })
}

// ---------------------------------------------------------------------------
// Rule catalog
// ---------------------------------------------------------------------------

pub struct RewriteRule {
    pub name: &'static str,
    /// Structure the rule needs; applying under a weaker flavor is an error.
    pub guard: Flavor,
    /// The axiom the rule implements.
    pub axiom: &'static str,
    apply: fn(&Term, &Signature) -> Option<Term>,
}

impl RewriteRule {
    /// Try the rule at the root of `t`.
    pub fn try_apply(&self, t: &Term, sig: &Signature) -> Option<Term> {
        (self.apply)(t, sig)
    }
}

#[derive(Serialize)]
struct RuleListing {
    name: &'static str,
    guard: String,
    axiom: &'static str,
}

/// Machine-readable listing of the rule catalog.
pub fn rules_json() -> String {
    let listing: Vec<RuleListing> = catalog()
        .iter()
        .map(|r| RuleListing { name: r.name, guard: r.guard.to_string(), axiom: r.axiom })
        .collect();
    serde_json::to_string_pretty(&listing).expect("rule listing cannot fail")
}

pub fn catalog() -> &'static [RewriteRule] {
    const RULES: &[RewriteRule] = &[
        RewriteRule {
            name: "compose-id",
            guard: Flavor::monoidal_const(),
            axiom: "identity is a unit for composition",
            apply: |t, _| match t {
                Term::Compose(g, f) => match (&**g, &**f) {
                    (Term::Id(_), _) => Some((**f).clone()),
                    (_, Term::Id(_)) => Some((**g).clone()),
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "tensor-id-fuse",
            guard: Flavor::monoidal_const(),
            axiom: "id_X ⊗ id_Y = id_{X⊗Y}; 𝟙 is a strict tensor unit",
            apply: |t, _| match t {
                Term::Tensor(a, b) => match (&**a, &**b) {
                    (Term::Id(x), Term::Id(y)) => Some(Term::Id(x.tensor(y))),
                    (Term::Id(x), f) if x.is_unit() => Some(f.clone()),
                    (f, Term::Id(y)) if y.is_unit() => Some(f.clone()),
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "interchange",
            guard: Flavor::monoidal_const(),
            axiom: "(g₂ ⊗ h₂) ∘ (g₁ ⊗ h₁) = (g₂∘g₁) ⊗ (h₂∘h₁) on aligned splits",
            apply: |t, sig| match t {
                Term::Compose(up, dn) => match (&**up, &**dn) {
                    (Term::Tensor(a2, b2), Term::Tensor(a1, b1)) => {
                        let (ba1, ba2) = (typecheck(a1, sig).ok()?, typecheck(a2, sig).ok()?);
                        let bb1 = typecheck(b1, sig).ok()?;
                        let bb2 = typecheck(b2, sig).ok()?;
                        (ba1.cod == ba2.dom && bb1.cod == bb2.dom).then(|| {
                            Term::tensor(
                                Term::compose((**a2).clone(), (**a1).clone()),
                                Term::compose((**b2).clone(), (**b1).clone()),
                            )
                        })
                    }
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "snake-right",
            guard: Flavor::rigid_const(),
            axiom: "(id⊗d)∘(b⊗id) = id and (d⊗id)∘(id⊗b) = id (right rigidity)",
            apply: |t, _| match t {
                Term::Compose(up, dn) => match (&**up, &**dn) {
                    (Term::Tensor(i1, d), Term::Tensor(b, i2)) => match (&**i1, &**d, &**b, &**i2) {
                        (Term::Id(x1), Term::Death(xd), Term::Birth(xb), Term::Id(x2))
                            if x1 == xd && xd == xb && xb == x2 =>
                        {
                            Some(Term::Id(x1.clone()))
                        }
                        (Term::Death(xd), Term::Id(x1), Term::Id(x2), Term::Birth(xb))
                            if xd == xb && *x1 == xd.right_dual() && x1 == x2 =>
                        {
                            Some(Term::Id(x1.clone()))
                        }
                        _ => None,
                    },
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "snake-left",
            guard: Flavor::left_rigid_const(),
            axiom: "(δ⊗id)∘(id⊗β) = id and (id⊗δ)∘(β⊗id) = id (left rigidity)",
            apply: |t, sig| match t {
                Term::Compose(up, dn) => match (&**up, &**dn) {
                    (Term::Tensor(d, i1), Term::Tensor(i2, b)) => match (&**d, &**i1, &**i2, &**b) {
                        (Term::LDeath(xd), Term::Id(x1), Term::Id(x2), Term::LBirth(xb))
                            if xd == xb && x1 == xd && x1 == x2 =>
                        {
                            Some(Term::Id(x1.clone()))
                        }
                        (Term::Id(x1), Term::LDeath(xd), Term::LBirth(xb), Term::Id(x2))
                            if xd == xb && *x1 == sig.left_dual(xd) && x1 == x2 =>
                        {
                            Some(Term::Id(x1.clone()))
                        }
                        _ => None,
                    },
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "braid-inverse",
            guard: Flavor::braided_const(),
            axiom: "c ∘ c⁻¹ = id = c⁻¹ ∘ c",
            apply: |t, _| match t {
                Term::Compose(g, f) => match (&**g, &**f) {
                    (Term::Braid(u1, v1), Term::BraidInv(u2, v2)) if u1 == u2 && v1 == v2 => {
                        Some(Term::Id(v1.tensor(u1)))
                    }
                    (Term::BraidInv(u1, v1), Term::Braid(u2, v2)) if u1 == u2 && v1 == v2 => {
                        Some(Term::Id(u1.tensor(v1)))
                    }
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "twist-inverse",
            guard: Flavor::balanced_const(),
            axiom: "θ ∘ θ⁻¹ = id = θ⁻¹ ∘ θ",
            apply: |t, _| match t {
                Term::Compose(g, f) => match (&**g, &**f) {
                    (Term::Twist(x1), Term::TwistInv(x2))
                    | (Term::TwistInv(x1), Term::Twist(x2))
                        if x1 == x2 =>
                    {
                        Some(Term::Id(x1.clone()))
                    }
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "hexagon-expand",
            guard: Flavor::braided_const(),
            axiom: "strict hexagons: c_{A⊗B,C} and c_{A,B⊗C} decompose into atom braids",
            apply: |t, sig| match t {
                Term::Braid(u, v) | Term::BraidInv(u, v)
                    if u.is_unit() || v.is_unit() || u.len() > 1 || v.len() > 1 =>
                {
                    let mut tr = RewriteTrace::default();
                    expand(t, sig, &mut tr).ok()
                }
                _ => None,
            },
        },
        RewriteRule {
            name: "balancing-expand",
            guard: Flavor::balanced_const(),
            axiom: "θ_{U⊗V} = c_{V,U} ∘ c_{U,V} ∘ (θ_U ⊗ θ_V); θ_𝟙 = id",
            apply: |t, sig| match t {
                Term::Twist(x) | Term::TwistInv(x) if x.len() != 1 => {
                    let mut tr = RewriteTrace::default();
                    expand(t, sig, &mut tr).ok()
                }
                _ => None,
            },
        },
        RewriteRule {
            name: "duality-word-expand",
            guard: Flavor::rigid_const(),
            axiom: "birth/death of a tensor word nest through the word",
            apply: |t, sig| match t {
                Term::Birth(x) | Term::Death(x) | Term::LBirth(x) | Term::LDeath(x)
                    if x.len() != 1 =>
                {
                    let mut tr = RewriteTrace::default();
                    expand(t, sig, &mut tr).ok()
                }
                _ => None,
            },
        },
        RewriteRule {
            name: "dagger-pushdown",
            guard: Flavor::dagger_const(),
            axiom: "† is an involutive contravariant monoidal functor; b† = δ, d† = β, and braids/twists flip per the dagger type",
            apply: |t, sig| match t {
                Term::Dagger(inner) if !matches!(&**inner, Term::Gen(_)) => {
                    crate::derived::dagger_pushdown(t, sig).ok().filter(|p| p != t)
                }
                _ => None,
            },
        },
        RewriteRule {
            name: "braid-naturality",
            guard: Flavor::braided_const(),
            axiom: "naturality of the braiding: morphisms move down past crossings",
            apply: |t, sig| match t {
                Term::Compose(up, dn) => match (&**up, &**dn) {
                    // (id_V ⊗ f) ∘ c_{U,V} → c_{U',V} ∘ (f ⊗ id_V)
                    (Term::Tensor(i, f), Term::Braid(u, v)) => {
                        if let Term::Id(vv) = &**i {
                            let bf = typecheck(f, sig).ok()?;
                            (vv == v && bf.dom == *u).then(|| {
                                Term::compose(
                                    Term::Braid(bf.cod, v.clone()),
                                    Term::tensor((**f).clone(), Term::Id(v.clone())),
                                )
                            })
                        } else if let Term::Id(uu) = &**f {
                            // (g ⊗ id_U) ∘ c_{U,V} → c_{U,V'} ∘ (id_U ⊗ g)
                            let g = i;
                            let bg = typecheck(g, sig).ok()?;
                            (uu == u && bg.dom == *v).then(|| {
                                Term::compose(
                                    Term::Braid(u.clone(), bg.cod),
                                    Term::tensor(Term::Id(u.clone()), (**g).clone()),
                                )
                            })
                        } else {
                            None
                        }
                    }
                    _ => None,
                },
                _ => None,
            },
        },
        RewriteRule {
            name: "twist-naturality",
            guard: Flavor::balanced_const(),
            axiom: "naturality of the twist: θ_W ∘ f = f ∘ θ_V",
            apply: |t, sig| match t {
                Term::Compose(f, dn) => match &**dn {
                    Term::Twist(x) if !matches!(&**f, Term::Twist(_) | Term::Id(_)) => {
                        let bf = typecheck(f, sig).ok()?;
                        (bf.dom == *x).then(|| Term::compose(Term::Twist(bf.cod), (**f).clone()))
                    }
                    _ => None,
                },
                _ => None,
            },
        },
    ];
    RULES
}

impl Flavor {
    const fn monoidal_const() -> Flavor {
        Flavor {
            right_rigid: false,
            left_rigid: false,
            braided: false,
            balanced: false,
            ribbon: false,
            pivotal: false,
            dagger: false,
            dagger_type: DaggerType::None,
        }
    }
    const fn rigid_const() -> Flavor {
        Flavor { right_rigid: true, ..Flavor::monoidal_const() }
    }
    const fn left_rigid_const() -> Flavor {
        Flavor { left_rigid: true, ..Flavor::monoidal_const() }
    }
    const fn braided_const() -> Flavor {
        Flavor { braided: true, ..Flavor::monoidal_const() }
    }
    const fn balanced_const() -> Flavor {
        Flavor { braided: true, balanced: true, ..Flavor::monoidal_const() }
    }
    const fn dagger_const() -> Flavor {
        Flavor { dagger: true, ..Flavor::monoidal_const() }
    }
}

/// Apply a named rule at a position (a path of child indices; `Compose` and
/// `Tensor` children are 0/1, `Dagger` child is 0).
pub fn apply_rule(
    term: &Term,
    rule_name: &str,
    position: &[usize],
    sig: &Signature,
) -> Result<Term, RewriteError> {
    let rule = catalog()
        .iter()
        .find(|r| r.name == rule_name)
        .ok_or_else(|| RewriteError::NoSuchRule(rule_name.to_string()))?;
    if !sig.flavor.includes(&rule.guard) {
        return Err(RewriteError::GuardViolation {
            rule: rule_name.to_string(),
            guard: rule.guard.to_string(),
        });
    }
    fn go(
        t: &Term,
        rule: &RewriteRule,
        pos: &[usize],
        full: &[usize],
        sig: &Signature,
    ) -> Result<Term, RewriteError> {
        match pos.first() {
            None => rule.try_apply(t, sig).ok_or_else(|| RewriteError::NoMatch {
                rule: rule.name.to_string(),
                position: full.to_vec(),
            }),
            Some(&i) => {
                match (t, i) {
                    (Term::Compose(g, f), 0) => {
                        Ok(Term::compose(go(g, rule, &pos[1..], full, sig)?, (**f).clone()))
                    }
                    (Term::Compose(g, f), 1) => {
                        Ok(Term::compose((**g).clone(), go(f, rule, &pos[1..], full, sig)?))
                    }
                    (Term::Tensor(a, b), 0) => {
                        Ok(Term::tensor(go(a, rule, &pos[1..], full, sig)?, (**b).clone()))
                    }
                    (Term::Tensor(a, b), 1) => {
                        Ok(Term::tensor((**a).clone(), go(b, rule, &pos[1..], full, sig)?))
                    }
                    (Term::Dagger(u), 0) => Ok(Term::dagger(go(u, rule, &pos[1..], full, sig)?)),
                    _ => Err(RewriteError::InvalidPosition {
                        position: full.to_vec(),
                        reason: format!("no child {i} at this node"),
                    }),
                }
            }
        }
    }
    let out = go(term, rule, position, position, sig)?;
    // A rule application must preserve the boundary.
    let b0 = typecheck(term, sig)?;
    let b1 = typecheck(&out, sig)?;
    if b0 != b1 {
        return Err(RewriteError::Type(TypeError::BoundaryMismatch(format!(
            "rule `{rule_name}` changed the boundary: {b0} vs {b1}"
        ))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flavor::DaggerType;
    use crate::object::ObjectExpr;
    use crate::signature::{GeneratorDecl, Signature};

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

    fn v() -> ObjectExpr {
        ObjectExpr::atom("V")
    }

    #[test]
    fn snake_normalizes_to_identity() {
        let s = sig();
        let x = v();
        let t = Term::compose(
            Term::tensor(Term::Id(x.clone()), Term::Death(x.clone())),
            Term::tensor(Term::Birth(x.clone()), Term::Id(x.clone())),
        );
        let (n, _) = normalize(&t, &s).unwrap();
        assert_eq!(n, Term::Id(x));
    }

    #[test]
    fn other_snake_normalizes_too() {
        let s = sig();
        let x = v();
        let xd = x.right_dual();
        let t = Term::compose(
            Term::tensor(Term::Death(x.clone()), Term::Id(xd.clone())),
            Term::tensor(Term::Id(xd.clone()), Term::Birth(x.clone())),
        );
        let (n, _) = normalize(&t, &s).unwrap();
        assert_eq!(n, Term::Id(xd));
    }

    #[test]
    fn name_of_identity_is_birth() {
        let s = sig();
        let x = v();
        let nm = crate::derived::name_of(&s, &Term::Id(x.clone())).unwrap();
        assert_eq!(
            equal_by_rewrite(&nm, &Term::Birth(x), &s).unwrap(),
            Equality::Equal
        );
    }

    #[test]
    fn braid_inverse_cancels_through_interchange() {
        let s = sig();
        let x = v();
        let t = Term::compose(
            Term::BraidInv(x.clone(), x.clone()),
            Term::Braid(x.clone(), x.clone()),
        );
        let (n, _) = normalize(&t, &s).unwrap();
        assert_eq!(n, Term::Id(x.tensor(&x)));
    }

    #[test]
    fn goofy_twist_conjugation_is_term_equal() {
        // trGoofDn(F) = trGoofUp((id ⊗ θ⁻¹) ∘ F ∘ (id ⊗ θ)) as a term identity.
        use crate::derived::{partial_trace, PartialTraceStyle};
        let mut s = sig();
        let x = v();
        let a = ObjectExpr::atom("W");
        s.add_generator(GeneratorDecl {
            name: "F".into(),
            dom: a.tensor(&x),
            cod: a.tensor(&x),
            adjoint: None,
        })
        .unwrap();
        let f = Term::gen("F");
        let lhs = partial_trace(&s, &f, &x, PartialTraceStyle::GoofyDown).unwrap();
        let conj = Term::pipeline([
            Term::tensor(Term::Id(a.clone()), Term::Twist(x.clone())),
            f,
            Term::tensor(Term::Id(a.clone()), Term::TwistInv(x.clone())),
        ]);
        let rhs = partial_trace(&s, &conj, &x, PartialTraceStyle::GoofyUp).unwrap();
        assert_eq!(equal_by_rewrite(&lhs, &rhs, &s).unwrap(), Equality::Equal);
    }

    #[test]
    fn normalize_is_idempotent_on_samples() {
        let s = sig();
        let x = v();
        let terms = vec![
            Term::pipeline([
                Term::Birth(x.clone()),
                Term::tensor(Term::gen("f"), Term::Id(x.right_dual())),
            ]),
            crate::derived::psi(&x),
            Term::Twist(x.tensor(&x)),
            Term::dagger(Term::Braid(x.clone(), x.clone())),
        ];
        for t in terms {
            let (n1, _) = normalize(&t, &s).unwrap();
            let (n2, _) = normalize(&n1, &s).unwrap();
            assert_eq!(n1, n2, "not idempotent on {t:?}");
        }
    }

    #[test]
    fn apply_rule_at_position() {
        let s = sig();
        let x = v();
        let inner = Term::compose(Term::gen("f"), Term::Id(x.clone()));
        let t = Term::tensor(inner, Term::Id(x.clone()));
        let out = apply_rule(&t, "compose-id", &[0], &s).unwrap();
        assert_eq!(out, Term::tensor(Term::gen("f"), Term::Id(x.clone())));
        // Wrong position reports NoMatch.
        assert!(matches!(
            apply_rule(&t, "compose-id", &[1], &s),
            Err(RewriteError::NoMatch { .. })
        ));
    }

    #[test]
    fn rule_guards_enforced() {
        let mut s = sig();
        s.flavor = Flavor::monoidal();
        let t = Term::Id(v());
        assert!(matches!(
            apply_rule(&t, "braid-inverse", &[], &s),
            Err(RewriteError::GuardViolation { .. })
        ));
    }

    #[test]
    fn rules_listing_is_json() {
        let j = rules_json();
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert!(v.as_array().unwrap().len() >= 10);
    }
}
