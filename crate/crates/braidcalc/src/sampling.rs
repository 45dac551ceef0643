//! Seeded random generation of objects, matrices, and well-typed terms.
//!
//! Terms are grown as pipelines of whiskered structural layers, so they are
//! well-typed by construction. `random_structural_endo` builds structural
//! endomorphisms (braids, twists, and their exact inverses) — the right shape
//! for laws whose proofs lean on naturality, where arbitrary matrices are not
//! legitimate bindings in models with a non-symmetric braiding.

use crate::flavor::Flavor;
use crate::matrix::{CMat, C};
use crate::object::{Atom, ObjectExpr};
use crate::signature::Signature;
use crate::term::Term;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random atom over the signature's base objects, with at most `max_marks`
/// dual markers (right marks only — they stay realizable in every model).
pub fn random_atom(r: &mut ChaCha8Rng, sig: &Signature, max_marks: usize) -> Atom {
    let bases: Vec<&String> = sig.objects.iter().collect();
    let base = bases[r.gen_range(0..bases.len())].clone();
    let mut a = Atom::new(base);
    let marks = if sig.flavor.right_rigid { r.gen_range(0..=max_marks) } else { 0 };
    for _ in 0..marks {
        a = a.dual(crate::object::DualMark::Right);
    }
    a
}

/// A random tensor word of length `0..=max_len`.
pub fn random_object(r: &mut ChaCha8Rng, sig: &Signature, max_len: usize) -> ObjectExpr {
    let len = r.gen_range(0..=max_len);
    ObjectExpr((0..len).map(|_| random_atom(r, sig, 1)).collect())
}

/// A dense complex matrix with entries uniform in the unit square.
pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    let mut m = CMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        }
    }
    m
}

fn whisker(word: &ObjectExpr, at: usize, span: usize, core: Term) -> Term {
    let left = word.slice(0, at);
    let right = word.slice(at + span, word.len());
    let mut t = core;
    if !left.is_unit() {
        t = Term::tensor(Term::Id(left), t);
    }
    if !right.is_unit() {
        t = Term::tensor(t, Term::Id(right));
    }
    t
}

/// One random structural layer applicable to `word`; returns the whiskered
/// layer and the resulting word. `None` when nothing applies.
fn random_layer(
    r: &mut ChaCha8Rng,
    sig: &Signature,
    word: &ObjectExpr,
) -> Option<(Term, ObjectExpr)> {
    let fl = &sig.flavor;
    let mut moves: Vec<u8> = Vec::new();
    if fl.right_rigid {
        moves.push(0); // birth
    }
    if fl.right_rigid && word.len() >= 2 {
        moves.push(1); // death, if an adjacent pair matches x*, x
    }
    if fl.braided && word.len() >= 2 {
        moves.push(2);
        moves.push(3);
    }
    if fl.balanced && !word.is_empty() {
        moves.push(4);
        moves.push(5);
    }
    if fl.has_left_rigid() {
        moves.push(6); // lbirth
    }
    for _ in 0..4 {
        if moves.is_empty() {
            return None;
        }
        match moves[r.gen_range(0..moves.len())] {
            0 => {
                let at = r.gen_range(0..=word.len());
                let x = ObjectExpr::from_atom(random_atom(r, sig, 1));
                let cod = word
                    .slice(0, at)
                    .tensor(&x)
                    .tensor(&x.right_dual())
                    .tensor(&word.slice(at, word.len()));
                return Some((whisker(word, at, 0, Term::Birth(x)), cod));
            }
            1 => {
                // Find adjacent (x*, x) pairs.
                let mut spots = Vec::new();
                for i in 0..word.len() - 1 {
                    let (l, rt) = (&word.0[i], &word.0[i + 1]);
                    if *l == rt.dual(crate::object::DualMark::Right) {
                        spots.push(i);
                    }
                }
                if let Some(&i) = spots.choose(r) {
                    let x = ObjectExpr::from_atom(word.0[i + 1].clone());
                    let cod = word.slice(0, i).tensor(&word.slice(i + 2, word.len()));
                    return Some((whisker(word, i, 2, Term::Death(x)), cod));
                }
            }
            m @ (2 | 3) => {
                let i = r.gen_range(0..word.len() - 1);
                let u = ObjectExpr::from_atom(word.0[i].clone());
                let v = ObjectExpr::from_atom(word.0[i + 1].clone());
                let cod = word
                    .slice(0, i)
                    .tensor(&v)
                    .tensor(&u)
                    .tensor(&word.slice(i + 2, word.len()));
                // Braid(u, v) and BraidInv(v, u) both map u ⊗ v → v ⊗ u.
                let core = if m == 2 { Term::Braid(u, v) } else { Term::BraidInv(v, u) };
                return Some((whisker(word, i, 2, core), cod));
            }
            m @ (4 | 5) => {
                let i = r.gen_range(0..word.len());
                let x = ObjectExpr::from_atom(word.0[i].clone());
                let core = if m == 4 { Term::Twist(x) } else { Term::TwistInv(x) };
                return Some((whisker(word, i, 1, core), word.clone()));
            }
            _ => {
                let at = r.gen_range(0..=word.len());
                let x = ObjectExpr::from_atom(random_atom(r, sig, 1));
                let cod = word
                    .slice(0, at)
                    .tensor(&sig.left_dual(&x))
                    .tensor(&x)
                    .tensor(&word.slice(at, word.len()));
                return Some((whisker(word, at, 0, Term::LBirth(x)), cod));
            }
        }
    }
    None
}

/// A random well-typed term: a pipeline of `1..=max_layers` structural layers
/// from a random domain, occasionally wrapped in a dagger.
pub fn random_term(r: &mut ChaCha8Rng, sig: &Signature, max_layers: usize) -> Term {
    let dom = random_object(r, sig, 3);
    let mut word = dom.clone();
    let mut steps: Vec<Term> = vec![Term::Id(dom)];
    let n = r.gen_range(1..=max_layers);
    for _ in 0..n {
        if let Some((layer, next)) = random_layer(r, sig, &word) {
            steps.push(layer);
            word = next;
        }
    }
    let t = Term::pipeline(steps);
    if sig.flavor.dagger && sig.flavor.dagger_type != crate::flavor::DaggerType::None && r.gen_bool(0.2) {
        Term::dagger(t)
    } else {
        t
    }
}

/// The exact inverse of an invertible structural layer.
fn invert_layer(t: &Term) -> Option<Term> {
    Some(match t {
        Term::Id(x) => Term::Id(x.clone()),
        Term::Tensor(a, b) => Term::tensor(invert_layer(a)?, invert_layer(b)?),
        Term::Braid(u, v) => Term::BraidInv(u.clone(), v.clone()),
        Term::BraidInv(u, v) => Term::Braid(u.clone(), v.clone()),
        Term::Twist(x) => Term::TwistInv(x.clone()),
        Term::TwistInv(x) => Term::Twist(x.clone()),
        _ => return None,
    })
}

/// A random structural endomorphism of `x`: an invertible walk (braids and
/// twists) followed by its reverse, with a twist stuck in the middle so the
/// result is rarely the identity.
pub fn random_structural_endo(r: &mut ChaCha8Rng, sig: &Signature, x: &ObjectExpr) -> Term {
    let mut word = x.clone();
    let mut walk: Vec<Term> = Vec::new();
    let n = r.gen_range(0..=3);
    for _ in 0..n {
        // Invertible moves only: braids and twists.
        if word.len() >= 2 && sig.flavor.braided && r.gen_bool(0.7) {
            let i = r.gen_range(0..word.len() - 1);
            let u = ObjectExpr::from_atom(word.0[i].clone());
            let v = ObjectExpr::from_atom(word.0[i + 1].clone());
            let cod = word
                .slice(0, i)
                .tensor(&v)
                .tensor(&u)
                .tensor(&word.slice(i + 2, word.len()));
            walk.push(whisker(&word, i, 2, Term::Braid(u, v)));
            word = cod;
        } else if !word.is_empty() && sig.flavor.balanced {
            let i = r.gen_range(0..word.len());
            let xx = ObjectExpr::from_atom(word.0[i].clone());
            walk.push(whisker(&word, i, 1, Term::Twist(xx)));
        }
    }
    let middle = if sig.flavor.balanced && !word.is_empty() {
        let i = r.gen_range(0..word.len());
        let xx = ObjectExpr::from_atom(word.0[i].clone());
        whisker(&word, i, 1, Term::Twist(xx))
    } else {
        Term::Id(word.clone())
    };
    let mut steps = vec![Term::Id(x.clone())];
    steps.extend(walk.iter().cloned());
    steps.push(middle);
    steps.extend(walk.iter().rev().map(|l| invert_layer(l).expect("walk layers invert")));
    Term::pipeline(steps)
}

/// Guard helper: flavors whose structural sampler is non-trivial.
pub fn can_sample(flavor: &Flavor) -> bool {
    flavor.right_rigid || flavor.braided
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flavor::DaggerType;
    use crate::term::typecheck;

    fn sig() -> Signature {
        let mut s = Signature::new(Flavor::ribbon_dagger(DaggerType::TypeI));
        s.add_object("V");
        s.add_object("W");
        s
    }

    #[test]
    fn random_terms_typecheck() {
        let s = sig();
        let mut r = rng(7);
        for _ in 0..200 {
            let t = random_term(&mut r, &s, 6);
            typecheck(&t, &s).expect("sampled term must typecheck");
        }
    }

    #[test]
    fn structural_endos_are_endos() {
        let s = sig();
        let mut r = rng(11);
        for _ in 0..100 {
            let x = random_object(&mut r, &s, 3);
            let t = random_structural_endo(&mut r, &s, &x);
            let b = typecheck(&t, &s).unwrap();
            assert_eq!(b.dom, x);
            assert_eq!(b.cod, x);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let s = sig();
        let t1 = random_term(&mut rng(42), &s, 5);
        let t2 = random_term(&mut rng(42), &s, 5);
        assert_eq!(t1, t2);
    }
}
