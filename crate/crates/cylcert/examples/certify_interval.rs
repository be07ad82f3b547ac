//! End-to-end certification of the interval instance: `f = x y^2 + 1`
//! over `S = [1/4, 3/4]` (simplex frame), positive on `S x R` with
//! margin 1/4.
//!
//! Run with: `cargo run --release --example certify_interval`

use cylcert::assemble::{certificate_to_json, summarize};
use cylcert::pipeline::{certify_problem, demo};
use cylcert::scalar::fmt_rat;

fn main() {
    let problem = demo::desk_problem();
    println!("f  = {}", problem.f);
    for g in &problem.generators {
        println!("g  = {g}");
    }

    let out = certify_problem(&problem).expect("the interval instance certifies");
    let cert = &out.certificate;
    println!("\n{}", summarize(cert));
    println!("schedule trace:");
    for line in &cert.meta.schedule_trace {
        println!("  {line}");
    }

    println!("\nmultipliers (factored weighted squares):");
    for (i, sigma) in cert.sigmas.iter().enumerate() {
        println!("  sigma_{i}: {} squares", sigma.terms().len());
        for (w, q) in sigma.terms().iter().take(3) {
            println!("    {} * ({q})^2", fmt_rat(w));
        }
        if sigma.terms().len() > 3 {
            println!("    ...");
        }
    }

    let v = &out.verification;
    println!(
        "\nverification: identity {}, sos {}, degree {} (max term degree {})",
        v.identity_ok, v.sos_ok, v.degree_ok, v.max_term_degree
    );
    assert!(v.all_ok());
    assert!(v.residual.is_zero());

    if let Some(report) = &out.report {
        println!(
            "\nschedule used (lambda, k, N) = ({}, {}, {}); formula k bound has {} digits",
            fmt_rat(&report.lambda),
            report.k,
            report.n_polya,
            report.k_bound.numer().to_string().len()
        );
    }

    let json = certificate_to_json(cert);
    println!("\ncertificate JSON: {} bytes", json.len());
}
