//! Schedule constants and explicit degree bounds for the interval
//! instance, evaluated from the formulas without running the pipeline.
//! The exponential bound fields are exact rationals with thousands of
//! digits; this example prints their magnitudes instead of the digits.
//!
//! Run with: `cargo run --release --example bounds_report`

use cylcert::pipeline::{bounds_for_problem, demo, BoundsOutput};
use cylcert::scalar::{fmt_rat, Rat};

fn digits(r: &Rat) -> String {
    let n = r.numer().to_string().len();
    let d = r.denom().to_string().len();
    format!("~{n} digits / {d} digits")
}

fn main() {
    let p = demo::desk_problem();
    let report = match bounds_for_problem(&p).unwrap() {
        BoundsOutput::Report(r) => r,
        BoundsOutput::Univariate { .. } => unreachable!("d = 1 here"),
    };
    println!("formula schedule for f = {}:", p.f);
    println!("  lambda          = {}", fmt_rat(&report.lambda));
    println!("  k               = {}", report.k);
    println!("  ell             = {}", report.ell);
    println!("  N               = {} ({} digits)", trunc(&report.n_polya.to_string()), report.n_polya.to_string().len());
    println!("  k_bound         = {}", fmt_rat(&report.k_bound));
    println!("  ell_bound       = {}", fmt_rat(&report.ell_bound));
    println!("  h_norm_bound    = {}", digits(&report.h_norm_bound));
    println!("  n_plus_ell_bound= {}", digits(&report.n_plus_ell_bound));
    println!("  term_bound_module = {}", report.term_bound_module);
    println!("  term_bound_polya  = {} digits", report.term_bound_polya.to_string().len());
    println!("  c9              = {}", report.c9);
    println!();
    println!(
        "the adaptive schedule certifies this instance at (lambda, k, N) = (1, 1, 4);\n\
         the formula values above are the worst-case backstop, not what runs."
    );

    // the univariate route is reported as such
    let mut uni = demo::desk_problem();
    uni.f = cylcert::polyring::parse_poly("y^2 + 1", 1).unwrap();
    match bounds_for_problem(&uni).unwrap() {
        BoundsOutput::Univariate { m } => {
            println!("\nf = y^2 + 1 takes the univariate route (squares of degree <= {m})")
        }
        BoundsOutput::Report(_) => unreachable!("d = 0 here"),
    }
}

fn trunc(s: &str) -> String {
    if s.len() <= 20 {
        s.to_string()
    } else {
        format!("{}...", &s[..20])
    }
}
