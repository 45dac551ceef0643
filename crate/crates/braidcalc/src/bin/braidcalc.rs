use braidcalc::laws::run_suite;
use braidcalc::matrix::{fmt_complex, C};
use braidcalc::model::ModelSpec;
use braidcalc::parse::{parse_file, ParsedFile};
use braidcalc::print::print_term;
use braidcalc::rewrite::{normalize, rules_json};
use braidcalc::term::typecheck;
use braidcalc::validate::validate_model;
use braidcalc::Flavor;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Calculator for string-diagram terms over braided, balanced, ribbon and
/// dagger monoidal signatures: typecheck, normalize, evaluate in matrix
/// models, and run the law suite.
#[derive(Parser)]
#[command(name = "braidcalc", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a term file and typecheck every named term.
    Check { file: PathBuf },
    /// Normalize a named term from a file and print its normal form.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        term: String,
        /// Also print the rewrite steps taken.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a named term in a matrix model and print the result.
    Eval {
        file: PathBuf,
        #[arg(long)]
        term: String,
        /// Path to a model JSON file.
        #[arg(long)]
        model: PathBuf,
    },
    /// Run the axiom checks for a model and report pass/fail per axiom.
    Validate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the randomized law suite against a model.
    Laws {
        /// Flavor to check, e.g. `braided+rigid` or `ribbon+dagger1`.
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here (text always goes to stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Emit a built-in model (symvect | semion | rmatrix) as JSON.
    Builtin {
        name: String,
        /// Deformation parameter q for `rmatrix`, e.g. `1.3` or `0.8+0.58i`.
        #[arg(long)]
        param: Option<String>,
        /// Vector-space dimension for `symvect`.
        #[arg(long)]
        dim: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// List the rewrite rule catalog as JSON.
    Rules,
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_file(path: &PathBuf) -> Result<ParsedFile, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_file(&src).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_model(path: &PathBuf) -> Result<ModelSpec, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ModelSpec::from_json(&src).map_err(|e| format!("{}: {e}", path.display()))
}

fn named_term<'a>(f: &'a ParsedFile, name: &str) -> Result<&'a braidcalc::term::Term, String> {
    f.terms
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, t)| t)
        .ok_or_else(|| format!("no term named `{name}` in file"))
}

fn parse_q(s: &str) -> Result<C, String> {
    if let Ok(re) = s.parse::<f64>() {
        return Ok(C::new(re, 0.0));
    }
    s.parse::<C>().map_err(|_| format!("cannot parse `{s}` as a real or complex number"))
}

fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Check { file } => {
            let f = load_file(&file)?;
            for (name, term) in &f.terms {
                let b = typecheck(term, &f.sig).map_err(|e| format!("term `{name}`: {e}"))?;
                println!("{name} : {} -> {}", b.dom, b.cod);
            }
            println!("ok: {} terms typecheck", f.terms.len());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Normalize { file, term, trace } => {
            let f = load_file(&file)?;
            let t = named_term(&f, &term)?;
            let (nf, tr) = normalize(t, &f.sig).map_err(|e| e.to_string())?;
            if trace {
                for step in &tr.steps {
                    println!("  {} {}", step.rule, step.detail);
                }
            }
            println!("{}", print_term(&nf));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Eval { file, term, model } => {
            let f = load_file(&file)?;
            let t = named_term(&f, &term)?;
            let m = load_model(&model)?;
            let result = m.eval(t).map_err(|e| e.to_string())?;
            if result.rows == 1 && result.cols == 1 {
                println!("{}", fmt_complex(result[(0, 0)]));
            } else {
                println!("{result}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate { model, json } => {
            let m = load_model(&model)?;
            let report = validate_model(&m);
            if json {
                println!("{}", report.to_json());
            } else {
                println!("{}", report.to_text());
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Laws { flavor, model, samples, seed, json } => {
            let flavor = Flavor::parse(&flavor).map_err(|e| e.to_string())?;
            let m = load_model(&model)?;
            let report = run_suite(&flavor, &m, samples, seed);
            print!("{}", report.to_text());
            if let Some(path) = json {
                std::fs::write(&path, report.to_json())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Builtin { name, param, dim, emit } => {
            let q = param.as_deref().map(parse_q).transpose()?;
            let m = braidcalc::builtins::by_name(&name, q, dim)?;
            let out = m.to_json();
            match emit {
                Some(path) => std::fs::write(&path, out)
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => println!("{out}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rules => {
            println!("{}", rules_json());
            Ok(ExitCode::SUCCESS)
        }
    }
}
