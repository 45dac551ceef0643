//! Acceptance gate: one test per top-level guarantee, each printing a single
//! pass/fail line. Run with `--nocapture` to see the lines on success.

use braidcalc::builtins;
use braidcalc::derived::{self, TraceStyle};
use braidcalc::flavor::{DaggerType, Flavor};
use braidcalc::laws::{self, LawStatus};
use braidcalc::matrix::{CMat, C};
use braidcalc::model::ModelSpec;
use braidcalc::object::ObjectExpr;
use braidcalc::parse::{parse_file, parse_term_str};
use braidcalc::print::print_term;
use braidcalc::rewrite::{self};
use braidcalc::sampling;
use braidcalc::term::{typecheck, Term};
use braidcalc::validate::validate_model;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

struct Gate {
    name: &'static str,
    started: Instant,
    budget_secs: f64,
}

impl Gate {
    fn open(name: &'static str, budget_secs: f64) -> Gate {
        Gate { name, started: Instant::now(), budget_secs }
    }

    fn close(self) {
        let secs = self.started.elapsed().as_secs_f64();
        let ok = secs <= self.budget_secs;
        println!(
            "{}: {} ({secs:.2}s, budget {}s)",
            self.name,
            if ok { "PASS" } else { "FAIL" },
            self.budget_secs
        );
        assert!(ok, "{} exceeded its {}s time budget ({secs:.2}s)", self.name, self.budget_secs);
    }
}

fn id_dev(m: &ModelSpec, t: &Term, x: &ObjectExpr) -> f64 {
    let mat = m.eval(t).expect("evaluation");
    let n = m.dim_word(x).expect("dimension");
    mat.max_abs_diff(&CMat::identity(n))
}

fn eval_models() -> Vec<ModelSpec> {
    vec![builtins::sym_vect(2), builtins::semion(), builtins::rmatrix(C::new(1.3, 0.0))]
}

fn run_law(name: &str, m: &ModelSpec, samples: usize, seed: u64) -> laws::LawReport {
    let catalog = laws::catalog();
    let law = catalog.iter().find(|l| l.name == name).unwrap_or_else(|| panic!("law {name}"));
    let report = validate_model(m);
    let mut r = sampling::rng(seed);
    laws::check_law(law, m, &report, samples, &mut r)
}

fn assert_law_passes(name: &str, m: &ModelSpec, samples: usize, tol: f64) {
    let rep = run_law(name, m, samples, 11);
    assert_eq!(rep.status, LawStatus::Pass, "{name} in {}: {}", m.name, rep.detail);
    assert!(rep.max_deviation < tol, "{name} in {}: dev {}", m.name, rep.max_deviation);
}

#[test]
fn criterion_1_snake_identities() {
    let gate = Gate::open("criterion-1 snake identities", 1.0);
    for m in eval_models() {
        let sig = m.signature();
        let mut r = sampling::rng(1);
        for _ in 0..10 {
            let x = sampling::random_object(&mut r, &sig, 2);
            if x.is_unit() {
                continue;
            }
            let xd = x.right_dual();
            let lx = sig.left_dual(&x);
            let pairs = [
                (
                    Term::compose(
                        Term::tensor(Term::Id(x.clone()), Term::Death(x.clone())),
                        Term::tensor(Term::Birth(x.clone()), Term::Id(x.clone())),
                    ),
                    &x,
                ),
                (
                    Term::compose(
                        Term::tensor(Term::Death(x.clone()), Term::Id(xd.clone())),
                        Term::tensor(Term::Id(xd.clone()), Term::Birth(x.clone())),
                    ),
                    &xd,
                ),
                (
                    Term::compose(
                        Term::tensor(Term::LDeath(x.clone()), Term::Id(x.clone())),
                        Term::tensor(Term::Id(x.clone()), Term::LBirth(x.clone())),
                    ),
                    &x,
                ),
                (
                    Term::compose(
                        Term::tensor(Term::Id(lx.clone()), Term::LDeath(x.clone())),
                        Term::tensor(Term::LBirth(x.clone()), Term::Id(lx.clone())),
                    ),
                    &lx,
                ),
            ];
            for (t, at) in &pairs {
                let dev = id_dev(&m, t, at);
                assert!(dev < 1e-10, "snake on {x} in {} deviates {dev}", m.name);
            }
        }
    }
    gate.close();
}

#[test]
fn criterion_2_model_validation() {
    let gate = Gate::open("criterion-2 model validation", 5.0);
    for m in builtins::standard_suite() {
        let rep = validate_model(&m);
        assert!(rep.passed(), "{} should validate:\n{}", m.name, rep.to_text());
    }
    // A 1e-3 perturbation of one R-matrix entry must be caught decisively.
    let mut bad = builtins::rmatrix(C::new(1.3, 0.0));
    let braid = bad.braid.get_mut(&("V".to_string(), "V".to_string())).unwrap();
    braid[(1, 2)] += C::new(1e-3, 0.0);
    let rep = validate_model(&bad);
    assert!(!rep.passed(), "perturbed R-matrix must fail validation");
    assert!(
        rep.worst_required_deviation() >= 1e-4,
        "perturbation must register clearly, got {}",
        rep.worst_required_deviation()
    );
    gate.close();
}

/// Build a random term on which `rule` fires at the root, possibly extending
/// the model with fresh random generators.
fn rule_instance(rule: &str, m: &ModelSpec, r: &mut ChaCha8Rng) -> (ModelSpec, Term) {
    let sig = m.signature();
    let word = |r: &mut ChaCha8Rng| loop {
        let x = sampling::random_object(r, &sig, 2);
        if !x.is_unit() {
            return x;
        }
    };
    let mut m2 = m.clone();
    let fresh = |r: &mut ChaCha8Rng, m2: &mut ModelSpec, n: &str, d: &ObjectExpr, c: &ObjectExpr| {
        let (dd, dc) = (m2.dim_word(d).unwrap(), m2.dim_word(c).unwrap());
        *m2 = m2.with_generator(n, d.clone(), c.clone(), sampling::random_matrix(r, dc, dd));
        Term::gen(n)
    };
    let t = match rule {
        "compose-id" => {
            let (v, w) = (word(r), word(r));
            let f = fresh(r, &mut m2, "__f", &v, &w);
            Term::compose(Term::Id(w), f)
        }
        "tensor-id-fuse" => Term::tensor(Term::Id(word(r)), Term::Id(word(r))),
        "interchange" => {
            let (a, b, c) = (word(r), word(r), word(r));
            let (u, v, w) = (word(r), word(r), word(r));
            let g1 = fresh(r, &mut m2, "__g1", &a, &b);
            let g2 = fresh(r, &mut m2, "__g2", &b, &c);
            let h1 = fresh(r, &mut m2, "__h1", &u, &v);
            let h2 = fresh(r, &mut m2, "__h2", &v, &w);
            Term::compose(Term::tensor(g2, h2), Term::tensor(g1, h1))
        }
        "snake-right" => {
            let x = word(r);
            Term::compose(
                Term::tensor(Term::Id(x.clone()), Term::Death(x.clone())),
                Term::tensor(Term::Birth(x.clone()), Term::Id(x.clone())),
            )
        }
        "snake-left" => {
            let x = word(r);
            Term::compose(
                Term::tensor(Term::LDeath(x.clone()), Term::Id(x.clone())),
                Term::tensor(Term::Id(x.clone()), Term::LBirth(x.clone())),
            )
        }
        "braid-inverse" => {
            let (u, v) = (word(r), word(r));
            Term::compose(Term::Braid(u.clone(), v.clone()), Term::BraidInv(u, v))
        }
        "twist-inverse" => {
            let x = word(r);
            Term::compose(Term::Twist(x.clone()), Term::TwistInv(x))
        }
        "hexagon-expand" => {
            let u = word(r).tensor(&word(r));
            Term::Braid(u, word(r))
        }
        "balancing-expand" => Term::Twist(word(r).tensor(&word(r))),
        "duality-word-expand" => {
            let x = word(r).tensor(&word(r));
            match r.gen_range(0..4) {
                0 => Term::Birth(x),
                1 => Term::Death(x),
                2 => Term::LBirth(x),
                _ => Term::LDeath(x),
            }
        }
        "dagger-pushdown" => Term::dagger(sampling::random_term(r, &sig, 4)),
        "braid-naturality" => {
            // Naturality only binds to actual morphism families, so use a
            // structural endomorphism rather than an arbitrary matrix.
            let (u, a) = (word(r), word(r));
            let f = sampling::random_structural_endo(r, &sig, &u);
            Term::compose(
                Term::tensor(f, Term::Id(a.clone())),
                Term::Braid(a, u),
            )
        }
        "twist-naturality" => {
            let u = word(r);
            let f = sampling::random_structural_endo(r, &sig, &u);
            Term::compose(f, Term::Twist(u))
        }
        other => panic!("no instance builder for rule {other}"),
    };
    (m2, t)
}

#[test]
fn criterion_3_rewrite_rules_sound() {
    let gate = Gate::open("criterion-3 rewrite soundness", 30.0);
    let models = eval_models();
    for rule in rewrite::catalog() {
        let mut fired = 0usize;
        let mut r = sampling::rng(0x3000 + rule.name.len() as u64);
        while fired < 100 {
            let m = &models[fired % models.len()];
            let (m2, t) = rule_instance(rule.name, m, &mut r);
            let sig = m2.signature();
            let post = match rule.try_apply(&t, &sig) {
                Some(p) => p,
                None => panic!("rule {} did not fire on its own instance", rule.name),
            };
            assert_eq!(
                typecheck(&t, &sig).unwrap(),
                typecheck(&post, &sig).unwrap(),
                "rule {} changed a boundary",
                rule.name
            );
            let (pre_m, post_m) = (m2.eval(&t).unwrap(), m2.eval(&post).unwrap());
            let dev = pre_m.max_abs_diff(&post_m);
            assert!(dev < 1e-9, "rule {} unsound in {}: dev {dev}", rule.name, m2.name);
            fired += 1;
        }
    }
    // Normalization is idempotent and boundary-preserving on random terms.
    let m = builtins::sym_vect(2);
    let sig = m.signature();
    let mut r = sampling::rng(33);
    for _ in 0..1000 {
        let t = sampling::random_term(&mut r, &sig, 5);
        let b = typecheck(&t, &sig).unwrap();
        let (n1, _) = rewrite::normalize(&t, &sig).unwrap();
        assert_eq!(typecheck(&n1, &sig).unwrap(), b);
        let (n2, _) = rewrite::normalize(&n1, &sig).unwrap();
        assert_eq!(n1, n2, "normalize not idempotent on {}", print_term(&t));
    }
    gate.close();
}

#[test]
fn criterion_4_quantum_trace() {
    let gate = Gate::open("criterion-4 quantum trace", 30.0);
    for m in eval_models() {
        assert_law_passes("trace-cyclic", &m, 100, 1e-9);
        assert_law_passes("trace-multiplicative", &m, 100, 1e-9);
    }
    // dim_q(V) = q + q⁻¹ in the R-matrix model, with either closure style.
    for q in [0.7, 1.3] {
        let m = builtins::rmatrix(C::new(q, 0.0));
        let sig = m.signature();
        let v = ObjectExpr::atom("V");
        for style in [TraceStyle::Over, TraceStyle::Under] {
            let t = derived::quantum_dim(&sig, &v, style).unwrap();
            let got = m.model_scalar(&t).unwrap();
            let want = C::new(q + 1.0 / q, 0.0);
            assert!((got - want).norm() < 1e-10, "dim_q({q}) = {got}, want {want}");
        }
    }
    gate.close();
}

#[test]
fn criterion_5_partial_trace_theorems() {
    let gate = Gate::open("criterion-5 partial traces", 30.0);
    // Type I consequences in a Type I model, Type II in a Type II model.
    let semion = builtins::semion();
    assert_law_passes("type1-goofy-traces-agree", &semion, 100, 1e-9);
    assert_law_passes("type1-vanilla-goofy-dagger", &semion, 100, 1e-9);
    let rm = builtins::rmatrix(C::new(1.3, 0.0));
    assert_law_passes("type2-partial-trace-dagger", &rm, 100, 1e-9);
    // The up/down conversion holds in every model and is provable by rewriting.
    for m in eval_models() {
        assert_law_passes("goofy-up-down", &m, 100, 1e-9);
        let rep = run_law("goofy-up-down", &m, 1, 5);
        assert_eq!(rep.method, "rewrite+evaluate", "goofy-up-down should rewrite in {}", m.name);
    }
    gate.close();
}

#[test]
fn criterion_6_name_coname_calculus() {
    let gate = Gate::open("criterion-6 name/coname calculus", 30.0);
    for m in eval_models() {
        for law in ["absorption", "backward-absorption", "compositionality", "compositional-cut"] {
            assert_law_passes(law, &m, 100, 1e-9);
        }
    }
    gate.close();
}

#[test]
fn criterion_7_hom_isomorphism() {
    let gate = Gate::open("criterion-7 Hom adjunction round trips", 30.0);
    for m in eval_models() {
        assert_law_passes("hom-iso-round-trip", &m, 100, 1e-10);
    }
    gate.close();
}

#[test]
fn criterion_8_type2_no_go() {
    let gate = Gate::open("criterion-8 Type II no-go", 30.0);
    // A symmetric model with unitary braiding satisfies the conclusion…
    let mut sym = builtins::sym_vect(2);
    sym.flavor = Flavor::ribbon_dagger(DaggerType::TypeII);
    sym.name = "symvect(2)+typeII".into();
    let rep = run_law("type2-unitary-no-go", &sym, 50, 17);
    assert_eq!(rep.status, LawStatus::Pass, "{}", rep.detail);
    // …while the non-symmetric models escape through a failed precondition
    // rather than a failed conclusion.
    let semion = builtins::semion(); // Type I: guard not certified
    let rep = run_law("type2-unitary-no-go", &semion, 10, 17);
    assert_eq!(rep.status, LawStatus::GuardUnsatisfied);
    let rm = builtins::rmatrix(C::new(1.3, 0.0)); // Type II but non-unitary braiding
    let rep = run_law("type2-unitary-no-go", &rm, 10, 17);
    assert_eq!(rep.status, LawStatus::GuardUnsatisfied);
    gate.close();
}

#[test]
fn criterion_9_cli_surface() {
    let gate = Gate::open("criterion-9 CLI and syntax round trips", 60.0);
    // Printed syntax parses back to the identical term.
    let m = builtins::sym_vect(2);
    let sig = m.signature();
    let mut r = sampling::rng(9);
    for _ in 0..1000 {
        let t = sampling::random_term(&mut r, &sig, 5);
        let back = parse_term_str(&print_term(&t), &sig)
            .unwrap_or_else(|e| panic!("reparse failed on {}: {e}", print_term(&t)));
        assert_eq!(t, back, "round trip changed {}", print_term(&t));
    }
    // Full grammar exercises through parse_file.
    let src = "flavor ribbon typeI;\nobject V W;\ngen f : V -> W adjoint g;\n\
               term u = (name(g) (x) id(V)) ; (id(V) (x) coname(f));\nterm v = tr(over, f ; g);\n";
    let f = parse_file(src).expect("file parses");
    assert_eq!(f.terms.len(), 2);

    // The binary itself: emit builtins, validate them, and run the suite.
    let bin = env!("CARGO_BIN_EXE_braidcalc");
    let dir = std::env::temp_dir().join("braidcalc-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let presets: [(&str, &[&str], &str); 3] = [
        ("symvect", &["--dim", "2"], "ribbon typeI"),
        ("semion", &[], "ribbon typeI"),
        ("rmatrix", &["--param", "1.3"], "ribbon typeII"),
    ];
    for (name, extra, flavor) in presets {
        let model = dir.join(format!("{name}.json"));
        let run = |args: &[&str]| {
            let out = std::process::Command::new(bin).args(args).output().expect("spawn");
            assert!(
                out.status.success(),
                "braidcalc {args:?} failed:\n{}",
                String::from_utf8_lossy(&out.stderr)
            );
        };
        let model_s = model.to_str().unwrap();
        let mut emit = vec!["builtin", name];
        emit.extend_from_slice(extra);
        emit.extend_from_slice(&["--emit", model_s]);
        run(&emit);
        run(&["validate", "--model", model_s]);
        run(&[
            "laws",
            "--flavor",
            &flavor.replace(' ', "+"),
            "--model",
            model_s,
            "--samples",
            "5",
            "--seed",
            "1",
        ]);
    }
    gate.close();
}
