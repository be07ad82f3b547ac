//! Thin command-line front end; all logic lives in the library.
//!
//! Exit codes: 0 success, 1 parse/file error, 2 hypothesis rejection
//! (including unusable inputs), 3 infeasible budget, 4 verification
//! failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cylcert::assemble::{load_certificate, save_certificate, summarize};
use cylcert::error::Error;
use cylcert::pipeline::{bounds_for_problem, certify_problem, demo, BoundsOutput};
use cylcert::polya::{min_polya_exponent, polya_expand};
use cylcert::polyring::parse_poly;
use cylcert::problem::{load_problem, ProblemFile};
use cylcert::scalar::parse_rat;
use cylcert::verify::verify_certificate;

#[derive(Parser)]
#[command(
    name = "cylcert",
    about = "Exact sum-of-squares certificates for polynomials positive on cylinders",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Verbosity; repeat for more detail.
    #[arg(short, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// Certified lower bound for the minimum of f over S x C, as p/q.
    #[arg(long = "f-min", value_name = "P/Q")]
    f_min: Option<String>,
    /// Lojasiewicz constants c1 c2.
    #[arg(long = "loja", num_args = 2, value_names = ["C1", "C2"])]
    loja: Option<Vec<String>>,
    /// Registry file with corner-monomial certificates.
    #[arg(long = "registry", value_name = "PATH")]
    registry: Option<PathBuf>,
    /// Cap on the multiplication exponent N during the schedule.
    #[arg(long = "max-N", value_name = "N")]
    max_n: Option<u32>,
    /// Cap on the damping exponent k during the schedule.
    #[arg(long = "max-k", value_name = "K")]
    max_k: Option<u32>,
    /// Cap on the damping coefficient lambda during the schedule.
    #[arg(long = "max-lambda", value_name = "P/Q")]
    max_lambda: Option<String>,
    /// Cap on expansion term counts / work estimates.
    #[arg(long = "term-budget", value_name = "T")]
    term_budget: Option<usize>,
    /// Starting grid step for certified minima and estimates, as p/q.
    #[arg(long = "grid-step", value_name = "P/Q")]
    grid_step: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct and verify a certificate for a problem file.
    Certify {
        problem: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Check a certificate file against f and generator files.
    Verify {
        /// File with the target polynomial (text grammar).
        f: PathBuf,
        /// File with one generator per line.
        gens: PathBuf,
        /// Certificate JSON.
        cert: PathBuf,
    },
    /// Print the schedule constants and explicit bounds for an instance.
    Bounds {
        problem: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a built-in instance: desk, counterexample, archimedean,
    /// polya-minimal.
    Demo { name: String },
}

fn apply_overrides(p: &mut ProblemFile, o: &Overrides) -> Result<(), Error> {
    if let Some(v) = &o.f_min {
        p.f_min = Some(parse_rat(v).map_err(|m| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("--f-min: {m}"),
        })?);
    }
    if let Some(pair) = &o.loja {
        let c1 = parse_rat(&pair[0]).map_err(|m| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("--loja: {m}"),
        })?;
        let c2 = parse_rat(&pair[1]).map_err(|m| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("--loja: {m}"),
        })?;
        p.loja = Some((c1, c2));
    }
    if let Some(path) = &o.registry {
        p.registry_path = Some(path.clone());
    }
    if let Some(v) = o.max_n {
        p.caps.max_n = v;
    }
    if let Some(v) = o.max_k {
        p.caps.max_k = v;
    }
    if let Some(v) = &o.max_lambda {
        p.caps.max_lambda = parse_rat(v).map_err(|m| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("--max-lambda: {m}"),
        })?;
    }
    if let Some(v) = o.term_budget {
        p.caps.term_budget = v;
    }
    if let Some(v) = &o.grid_step {
        p.grid_step = Some(parse_rat(v).map_err(|m| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("--grid-step: {m}"),
        })?);
    }
    Ok(())
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Io(_) | Error::CertFormat(_) => 1,
        Error::Budget { .. } => 3,
        Error::Hypothesis(_)
        | Error::NotCertified(_)
        | Error::EmptySet
        | Error::Registry(_)
        | Error::Domain(_)
        | Error::Arity(_) => 2,
    }
}

fn report_error(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if let Error::Budget {
        report: Some(rep), ..
    } = e
    {
        eprintln!("-- explicit bounds at the formula schedule --");
        eprintln!("{rep}");
    }
    ExitCode::from(exit_code_for(e))
}

fn run_certify(problem: &Path, overrides: &Overrides, verbose: u8) -> Result<ExitCode, Error> {
    let mut p = load_problem(problem)?;
    apply_overrides(&mut p, overrides)?;
    let out = certify_problem(&p)?;
    let cert_path = problem.with_extension("cert.json");
    save_certificate(&out.certificate, &cert_path)?;
    println!("certificate: {}", cert_path.display());
    println!("summary: {}", summarize(&out.certificate));
    if let Some(report) = &out.report {
        let bounds_path = problem.with_extension("bounds.txt");
        std::fs::write(&bounds_path, report.to_string())?;
        println!("bounds: {}", bounds_path.display());
    }
    if verbose > 0 {
        for line in &out.certificate.meta.schedule_trace {
            println!("trace: {line}");
        }
    }
    println!(
        "verified: identity {}, sos {}, degree {}",
        out.verification.identity_ok, out.verification.sos_ok, out.verification.degree_ok
    );
    Ok(ExitCode::SUCCESS)
}

fn run_verify(f_path: &Path, gens_path: &Path, cert_path: &Path) -> Result<ExitCode, Error> {
    let cert = load_certificate(cert_path)?;
    let f_text = std::fs::read_to_string(f_path)?;
    let f = parse_poly(f_text.trim(), cert.n)?;
    let gens_text = std::fs::read_to_string(gens_path)?;
    let gens = gens_text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_poly(l, cert.n))
        .collect::<Result<Vec<_>, _>>()?;
    let report = verify_certificate(&f, &gens, &cert);
    print!("{report}");
    if report.all_ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(4))
    }
}

fn run_bounds(problem: &Path, overrides: &Overrides) -> Result<ExitCode, Error> {
    let mut p = load_problem(problem)?;
    apply_overrides(&mut p, overrides)?;
    match bounds_for_problem(&p)? {
        BoundsOutput::Univariate { m } => {
            println!("route: univariate (d = 0)");
            println!("note: f lies in Q[y]; a direct sum-of-squares decomposition applies");
            println!("square_degree_bound: {m}");
        }
        BoundsOutput::Report(report) => print!("{report}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_demo(name: &str, verbose: u8) -> Result<ExitCode, Error> {
    match name {
        "desk" => {
            let p = demo::desk_problem();
            println!("instance: f = {}, S cut out by:", p.f);
            for g in &p.generators {
                println!("  {g} >= 0");
            }
            let out = certify_problem(&p)?;
            let cert_path = PathBuf::from("desk.cert.json");
            save_certificate(&out.certificate, &cert_path)?;
            println!("certificate: {}", cert_path.display());
            println!("summary: {}", summarize(&out.certificate));
            if let Some(report) = &out.report {
                let bounds_path = PathBuf::from("desk.bounds.txt");
                std::fs::write(&bounds_path, report.to_string())?;
                println!("bounds: {}", bounds_path.display());
            }
            if verbose > 0 {
                for line in &out.certificate.meta.schedule_trace {
                    println!("trace: {line}");
                }
            }
            println!(
                "verified: identity {}, sos {}, degree {}",
                out.verification.identity_ok,
                out.verification.sos_ok,
                out.verification.degree_ok
            );
            Ok(ExitCode::SUCCESS)
        }
        "counterexample" => {
            let p = demo::counterexample_problem();
            println!("instance: f = {}, S cut out by:", p.f);
            for g in &p.generators {
                println!("  {g} >= 0");
            }
            match certify_problem(&p) {
                Ok(_) => {
                    eprintln!("error: the rejection instance unexpectedly certified");
                    Ok(ExitCode::from(4))
                }
                Err(e @ Error::Hypothesis(_)) => {
                    println!("rejected as expected: {e}");
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e),
            }
        }
        "archimedean" => {
            let (f, gens, cert) = demo::archimedean_certificate();
            println!("identity: {} = sigma_0 + sigma_1 * ({})", f, gens[0]);
            let report = verify_certificate(&f, &gens, &cert);
            print!("{report}");
            if report.all_ok() {
                println!("the explicit archimedean identity verifies with residual 0");
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(4))
            }
        }
        "polya-minimal" => {
            let h = demo::polya_minimal_h();
            println!("form: {h}");
            for n in 0..=3 {
                let out = polya_expand(&h, n)?;
                let status = if out.all_positive {
                    "all coefficients positive"
                } else {
                    "has a non-positive coefficient"
                };
                println!("N = {n}: {status}");
                if verbose > 0 {
                    for (alpha, b) in &out.b_coeffs {
                        println!("  x-exponents {:?}: {b}", &alpha.exps()[..2]);
                    }
                }
            }
            let (n, _) = min_polya_exponent(&h, 16)?
                .ok_or_else(|| Error::domain("demo: no exponent up to 16 certified"))?;
            println!("minimal exponent: N = {n}");
            Ok(ExitCode::SUCCESS)
        }
        other => {
            eprintln!(
                "error: unknown demo '{other}'; available: desk, counterexample, archimedean, polya-minimal"
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Certify { problem, overrides } => run_certify(problem, overrides, cli.verbose),
        Command::Verify { f, gens, cert } => run_verify(f, gens, cert),
        Command::Bounds { problem, overrides } => run_bounds(problem, overrides),
        Command::Demo { name } => run_demo(name, cli.verbose),
    };
    match result {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}
