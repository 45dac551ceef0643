//! Builtin model presets: symmetric vector spaces, abelian anyons (semion),
//! and the two-dimensional R-matrix model.

use crate::flavor::{DaggerType, Flavor};
use crate::matrix::{C, CMat};
use crate::model::{DaggerRealization, ModelSpec};
use std::f64::consts::PI;

/// `SymVect(n)`: one object `V` of dimension `n`, permutation (swap)
/// braiding, trivial twist and duality, conjugate-transpose dagger. The
/// braiding is symmetric and unitary, so it passes Type I and Type II alike;
/// the declared flavor is ribbon + dagger Type I.
pub fn sym_vect(n: usize) -> ModelSpec {
    let mut m = ModelSpec::new(format!("symvect({n})"), Flavor::ribbon_dagger(DaggerType::TypeI));
    m.objects.insert("V".into(), n);
    let mut swap = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            swap[(j * n + i, i * n + j)] = C::new(1.0, 0.0);
        }
    }
    m.braid.insert(("V".into(), "V".into()), swap);
    m.twist.insert("V".into(), CMat::identity(n));
    m.dagger = Some(DaggerRealization::ConjugateTranspose);
    m
}

/// `AbelianAnyon(Z_n, k)`: one-dimensional objects `a0 … a{n-1}` (anyon
/// charges), braiding phases `c_{g,h} = e^{iπ k g h / n}` and twists
/// `θ_g = e^{iπ k g² / n}` — the quadratic-form theory on `Z_n`. All phases
/// are unimodular, so the braiding is unitary and the flavor is ribbon +
/// dagger Type I.
pub fn abelian_anyon(n: usize, k: i64) -> ModelSpec {
    assert!(n >= 1);
    let mut m =
        ModelSpec::new(format!("anyon(Z_{n},k={k})"), Flavor::ribbon_dagger(DaggerType::TypeI));
    let phase = |x: f64| C::new(0.0, x).exp();
    for g in 0..n {
        let name = format!("a{g}");
        m.objects.insert(name.clone(), 1);
        m.twist.insert(
            name.clone(),
            CMat::scalar(phase(PI * k as f64 * (g * g) as f64 / n as f64)),
        );
    }
    for g in 0..n {
        for h in 0..n {
            m.braid.insert(
                (format!("a{g}"), format!("a{h}")),
                CMat::scalar(phase(PI * k as f64 * (g * h) as f64 / n as f64)),
            );
        }
    }
    m.dagger = Some(DaggerRealization::ConjugateTranspose);
    m
}

/// The semion theory: `AbelianAnyon(Z_2, 1)` — charges `a0` (vacuum) and
/// `a1` (semion) with `c_{a1,a1} = θ_{a1} = i`.
pub fn semion() -> ModelSpec {
    let mut m = abelian_anyon(2, 1);
    m.name = "semion".into();
    m
}

/// `RMatrix(q)`: one object `V` of dimension 2 with the standard
/// quasitriangular braid matrix
/// `Ř = [[q,0,0,0],[0,0,1,0],[0,1,q−q⁻¹,0],[0,0,0,q]]`,
/// duality pairing `B = diag(q^{1/2}, q^{-1/2})` and twist `θ = q²·id`, so
/// that the snake equations hold exactly and `dim_q(V) = q + q⁻¹` in both
/// trace styles.
///
/// For real `q` the braid matrix is self-adjoint (`c† = c`), giving a
/// Type II dagger ribbon flavor; it is unitary only at `q = ±1`. For
/// non-real `q` neither dagger type holds and the flavor is plain ribbon.
pub fn rmatrix(q: C) -> ModelSpec {
    let flavor = if q.im.abs() < 1e-14 {
        Flavor::ribbon_dagger(DaggerType::TypeII)
    } else {
        Flavor::ribbon()
    };
    let mut m = ModelSpec::new(format!("rmatrix({})", crate::matrix::fmt_complex(q)), flavor);
    m.objects.insert("V".into(), 2);
    let z = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let braid = CMat::from_rows(vec![
        vec![q, z, z, z],
        vec![z, z, one, z],
        vec![z, one, q - one / q, z],
        vec![z, z, z, q],
    ]);
    m.braid.insert(("V".into(), "V".into()), braid);
    let sq = q.sqrt();
    m.duality.insert(
        "V".into(),
        CMat::from_rows(vec![vec![sq, z], vec![z, one / sq]]),
    );
    m.twist.insert("V".into(), CMat::identity(2).scale(q * q));
    if m.flavor.dagger {
        m.dagger = Some(DaggerRealization::ConjugateTranspose);
    }
    m
}

/// All models exercised by the test suites, with their preset parameters.
pub fn standard_suite() -> Vec<ModelSpec> {
    vec![
        sym_vect(2),
        sym_vect(3),
        sym_vect(4),
        semion(),
        rmatrix(C::new(0.7, 0.0)),
        rmatrix(C::new(1.3, 0.0)),
        rmatrix(C::new(0.0, PI / 5.0).exp()),
    ]
}

/// Look up a builtin by CLI name.
pub fn by_name(name: &str, param: Option<C>, dim: Option<usize>) -> Result<ModelSpec, String> {
    match name {
        "symvect" => Ok(sym_vect(dim.unwrap_or(2))),
        "semion" => Ok(semion()),
        "rmatrix" => Ok(rmatrix(param.ok_or("rmatrix requires --param q")?)),
        other => Err(format!("unknown builtin `{other}` (expected symvect|semion|rmatrix)")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::object::ObjectExpr;
    use crate::term::Term;

    #[test]
    fn semion_phases() {
        let m = semion();
        let s = ObjectExpr::atom("a1");
        let c = m.eval(&Term::Braid(s.clone(), s.clone())).unwrap();
        assert!((c[(0, 0)] - C::new(0.0, 1.0)).norm() < 1e-15);
        let t = m.eval(&Term::Twist(s.clone())).unwrap();
        assert!((t[(0, 0)] - C::new(0.0, 1.0)).norm() < 1e-15);
        // Balancing forces θ_{s⊗s} = c² θ_s θ_s = 1: the fusion product of two
        // semions is the vacuum.
        let tss = m.eval(&Term::Twist(s.tensor(&s))).unwrap();
        assert!((tss[(0, 0)] - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn symvect_braid_squares_to_id() {
        let m = sym_vect(3);
        let v = ObjectExpr::atom("V");
        let c = m.eval(&Term::Braid(v.clone(), v.clone())).unwrap();
        assert!(c.mul(&c).unwrap().approx_eq(&CMat::identity(9), 1e-14));
    }
}
