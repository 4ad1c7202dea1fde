use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rumin_core::cinfty::finite::{check_ring_isomorphism, cohomology, FiniteGradedAlgebra};
use rumin_core::model::finite_rumin_model;
use rumin_core::suites::{self, Suite, VerifyConfig};
use rumin_core::ContactModel;
use rumin_cli::{eval_str, report};

const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "rumin",
    version,
    about = "Exact Rumin complex and C-infinity structure on Heisenberg groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a form expression and print it in canonical form ("-" reads stdin)
    Eval {
        expr: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Run a seeded verification suite
    Verify {
        /// Suite name, or "all"
        suite: Option<String>,
        #[arg(long = "suite", value_name = "SUITE")]
        suite_flag: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_poly_degree: u32,
        /// Write the report as JSON to PATH
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// List the coframe monomials of a degree
    Basis {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Only monomials containing theta
        #[arg(long)]
        vertical: bool,
    },
    /// Print theta, d theta, the coframe and the dual frame
    Model {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Cohomology of a finite algebra file, or of the built-in invariant-form model
    Cohomology {
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Print the algebra in the text format instead
        #[arg(long)]
        emit: bool,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn model(n: usize) -> Result<ContactModel, ExitCode> {
    ContactModel::new(n).map_err(|e| fail(USAGE, e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { expr, n } => eval(&expr, n),
        Command::Verify {
            suite,
            suite_flag,
            n,
            trials,
            seed,
            max_poly_degree,
            json,
        } => verify(
            suite.or(suite_flag),
            VerifyConfig {
                n,
                trials,
                seed,
                max_poly_degree,
            },
            json,
        ),
        Command::Basis { degree, n, vertical } => basis(degree, n, vertical),
        Command::Model { n } => show_model(n),
        Command::Cohomology { path, n, emit } => show_cohomology(path, n, emit),
    };
    result.unwrap_or_else(|code| code)
}

fn eval(expr: &str, n: usize) -> Result<ExitCode, ExitCode> {
    let model = model(n)?;
    let text = if expr == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| fail(1, e))?;
        s
    } else {
        expr.to_string()
    };
    let form = eval_str(&text, &model).map_err(|e| fail(1, e))?;
    println!("{form}");
    Ok(ExitCode::SUCCESS)
}

fn verify(suite: Option<String>, cfg: VerifyConfig, json: Option<PathBuf>) -> Result<ExitCode, ExitCode> {
    let name = suite.ok_or_else(|| fail(USAGE, "no suite given (try --suite all)"))?;
    let suite: Suite = name.parse().map_err(|e| {
        let names: Vec<&str> = Suite::INDIVIDUAL.iter().map(|s| s.name()).collect();
        fail(USAGE, format!("{e}; expected one of {}, all", names.join(", ")))
    })?;
    let reports = suites::run(suite, &cfg).map_err(|e| fail(USAGE, e))?;
    for r in &reports {
        print!("{}", report::render(r));
    }
    if let Some(path) = json {
        let text = if suite == Suite::All {
            serde_json::to_string_pretty(&reports)
        } else {
            serde_json::to_string_pretty(&reports[0])
        }
        .map_err(|e| fail(1, e))?;
        fs::write(&path, text + "\n").map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    }
    Ok(if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn basis(degree: usize, n: usize, vertical: bool) -> Result<ExitCode, ExitCode> {
    let model = model(n)?;
    if degree > model.dim() {
        return Err(fail(USAGE, format!("degree must be at most {}", model.dim())));
    }
    let monomials = if vertical {
        model.vertical_basis(degree)
    } else {
        model.basis(degree)
    };
    for m in monomials {
        println!("{}", model.monomial_name(m));
    }
    Ok(ExitCode::SUCCESS)
}

fn show_model(n: usize) -> Result<ExitCode, ExitCode> {
    let model = model(n)?;
    let sum: Vec<String> = (1..=n).map(|i| format!(" - y{i} dx{i}")).collect();
    println!("H^{} with coordinates x1..x{n}, y1..y{n}, z", model.dim());
    println!("theta = dz{}", sum.concat());
    println!("dtheta = {}", model.dtheta());
    let coframe: Vec<String> = (0..model.dim()).map(|i| model.generator_name(i)).collect();
    println!("coframe: {}", coframe.join(", "));
    let frame: Vec<String> = std::iter::once("T = d/dz".to_string())
        .chain((1..=n).map(|i| format!("X{i} = d/dx{i} + y{i} d/dz")))
        .chain((1..=n).map(|i| format!("Y{i} = d/dy{i}")))
        .collect();
    println!("frame: {}", frame.join(", "));
    Ok(ExitCode::SUCCESS)
}

fn print_cohomology(name: &str, alg: &FiniteGradedAlgebra) {
    let h = cohomology(alg);
    let betti: Vec<String> = h.betti_numbers().iter().map(|(_, b)| b.to_string()).collect();
    println!("{name}: dimension {}, Betti numbers ({})", alg.basis().len(), betti.join(", "));
    for (k, _) in h.betti_numbers() {
        for rep in h.representatives(k) {
            println!("  H^{k}: [{rep}]");
        }
    }
}

fn show_cohomology(path: Option<PathBuf>, n: usize, emit: bool) -> Result<ExitCode, ExitCode> {
    if let Some(path) = path {
        let text = fs::read_to_string(&path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
        let alg = FiniteGradedAlgebra::parse(&text).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
        if emit {
            print!("{}", alg.to_text());
        } else {
            print_cohomology(&path.display().to_string(), &alg);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let model = model(n)?;
    let fm = finite_rumin_model(&model, 2).map_err(|e| fail(1, e))?;
    if emit {
        print!("{}", fm.ce.to_text());
        return Ok(ExitCode::SUCCESS);
    }
    print_cohomology("invariant forms", &fm.ce);
    print_cohomology("Rumin subcomplex", &fm.rumin);
    let include = fm.include.clone();
    let iso = check_ring_isomorphism(&move |v| include.apply(v), &fm.rumin, &fm.ce).map_err(|e| fail(1, e))?;
    println!("[f1] is a ring isomorphism: {}", iso.is_isomorphism);
    Ok(ExitCode::SUCCESS)
}
