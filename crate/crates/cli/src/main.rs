use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use catkit_core::diagram::{graph_eq, parse, terms_equal, DiagramTerm, Program, Signature};
use catkit_core::frobenius::{classify_cob, components_of, cob_atom, normal_form, CobordismClass};
use catkit_core::lawcheck::{run_suite, SuiteOptions};
use catkit_core::scalars::SemiringKind;
use catkit_core::tqft::{interpret, parse_interpretation, relation_pairs, verify_frobenius, Interpretation};
use catkit_core::Error;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "catkit", version, about = "String diagrams, Frobenius algebras and their matrix semantics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Interpretation file (JSON)
    #[arg(long, global = true, value_name = "FILE")]
    interp: Option<PathBuf>,
    /// Tolerance for complex comparisons
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,
    /// Seed for randomized law checks
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Compare modulo the Frobenius axioms (spider fusion)
    #[arg(long, global = true)]
    frobenius: bool,
    /// Also assume speciality (mu . delta = id) when fusing
    #[arg(long, global = true)]
    special: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and typecheck a diagram file, printing every diagram's type
    Check { file: PathBuf },
    /// Decide whether two diagrams are equal
    Eq { file: PathBuf, left: String, right: String },
    /// Evaluate a diagram under an interpretation
    Eval { file: PathBuf, diagram: String },
    /// Print the cobordism class of a diagram over a frobenius object
    Classify { file: PathBuf, diagram: String },
    /// Run the law-check suite, optionally against an interpretation
    Laws { file: Option<PathBuf> },
}

/// A diagnostic together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: format!("cannot read {}: {e}", path.display()),
        }
    }

    fn in_file(path: &Path, e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure {
            code,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}", self.message)
    }
}

type Outcome = Result<u8, Failure>;

fn load_program(path: &Path) -> Result<Program, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    parse(&src).map_err(|e| Failure::in_file(path, e))
}

fn load_interp(cli: &Cli, sig: &Signature) -> Result<Interpretation, Failure> {
    let path = cli.interp.as_deref().ok_or_else(|| Failure {
        code: 2,
        message: "this command needs --interp FILE".into(),
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let mut interp = parse_interpretation(&text, sig).map_err(|e| Failure::in_file(path, e))?;
    if let Some(tol) = cli.tol {
        interp.tag = interp.tag.with_tolerance(tol).map_err(|e| Failure::in_file(path, e))?;
    }
    Ok(interp)
}

fn lookup<'a>(prog: &'a Program, path: &Path, name: &str) -> Result<&'a DiagramTerm, Failure> {
    prog.diagram(name).map_err(|e| Failure::in_file(path, e))
}

fn cmd_check(file: &Path) -> Outcome {
    let prog = load_program(file)?;
    let types = prog.typecheck_all().map_err(|e| Failure::in_file(file, e))?;
    for (name, dom, cod) in types {
        println!("{name} : {dom} -> {cod}");
    }
    Ok(0)
}

fn cmd_eq(cli: &Cli, file: &Path, left: &str, right: &str) -> Outcome {
    let prog = load_program(file)?;
    let sig = &prog.signature;
    let (a, b) = (lookup(&prog, file, left)?, lookup(&prog, file, right)?);
    let ta = a.typecheck(sig).map_err(|e| Failure::in_file(file, e))?;
    let tb = b.typecheck(sig).map_err(|e| Failure::in_file(file, e))?;
    let equal = if ta != tb {
        eprintln!(
            "note: {left} : {} -> {} and {right} : {} -> {} have different types",
            ta.0, ta.1, tb.0, tb.1
        );
        false
    } else if cli.frobenius {
        let na = normal_form(a, sig, cli.special).map_err(|e| Failure::in_file(file, e))?;
        let nb = normal_form(b, sig, cli.special).map_err(|e| Failure::in_file(file, e))?;
        graph_eq(&na, &nb)
    } else {
        terms_equal(a, b, sig).map_err(|e| Failure::in_file(file, e))?
    };
    println!("{}", if equal { "equal" } else { "not equal" });
    Ok(if equal { 0 } else { 1 })
}

fn cmd_eval(cli: &Cli, file: &Path, name: &str) -> Outcome {
    let prog = load_program(file)?;
    let sig = &prog.signature;
    let interp = load_interp(cli, sig)?;
    let t = lookup(&prog, file, name)?;
    let m = interpret(t, &interp, sig).map_err(|e| Failure::in_file(file, e))?;
    if m.shape() == (1, 1) {
        println!("{}", m.get(0, 0));
    } else {
        println!("{m}");
    }
    if interp.tag.kind() == SemiringKind::Boolean {
        let (dom, cod) = t.typecheck(sig).map_err(|e| Failure::in_file(file, e))?;
        let names = |w: &catkit_core::diagram::ObjectWord| match w.factors() {
            [f] => interp.elements.get(&f.atom).map(Vec::as_slice),
            _ => None,
        };
        println!("{}", relation_pairs(&m, names(&dom), names(&cod)));
    }
    Ok(0)
}

fn cmd_classify(cli: &Cli, file: &Path, name: &str) -> Outcome {
    let prog = load_program(file)?;
    let sig = &prog.signature;
    let t = lookup(&prog, file, name)?;
    let class = if cli.special {
        let atom = cob_atom(t, sig).map_err(|e| Failure::in_file(file, e))?;
        let g = normal_form(t, sig, true).map_err(|e| Failure::in_file(file, e))?;
        CobordismClass {
            atom,
            components: components_of(&g),
        }
    } else {
        classify_cob(t, sig).map_err(|e| Failure::in_file(file, e))?
    };
    print!("{class}");
    Ok(0)
}

fn cmd_laws(cli: &Cli, file: Option<&Path>) -> Outcome {
    let sig = match file {
        Some(f) => load_program(f)?.signature,
        None => Signature::new(),
    };
    let interp = match cli.interp {
        Some(_) => Some(load_interp(cli, &sig)?),
        None => None,
    };
    let mut opts = SuiteOptions {
        seed: cli.seed,
        interp: interp.clone(),
        ..SuiteOptions::default()
    };
    if let Some(tol) = cli.tol {
        opts.tolerance = tol;
    }
    let mut report = run_suite(&opts);
    if let Some(interp) = &interp {
        for (atom, p) in &interp.frobenius_data {
            report.extend(verify_frobenius(p).prefixed(&format!("interp.{atom}")));
        }
    }
    print!("{report}");
    Ok(if report.all_as_expected() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => cmd_check(file),
        Command::Eq { file, left, right } => cmd_eq(&cli, file, left, right),
        Command::Eval { file, diagram } => cmd_eval(&cli, file, diagram),
        Command::Classify { file, diagram } => cmd_classify(&cli, file, diagram),
        Command::Laws { file } => cmd_laws(&cli, file.as_deref()),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code)
        }
    }
}
