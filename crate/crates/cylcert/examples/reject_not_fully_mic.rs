//! The rejection instance: `f = (1 - x^2) y^2 + 1` is positive on
//! `S x R` for `S = [-1, 1]` cut out by `(1 - x^2)^3`, yet it has no
//! quadratic-module certificate because the leading `y`-coefficient
//! vanishes at `x = +-1`. The engine rejects it for failing the
//! fully-m-ic hypothesis and reports a witness.
//!
//! Run with: `cargo run --release --example reject_not_fully_mic`

use cylcert::error::{Error, HypothesisViolation};
use cylcert::pipeline::{certify_problem, demo};
use cylcert::scalar::fmt_rat;

fn main() {
    let problem = demo::counterexample_problem();
    println!("f = {}", problem.f);
    println!("g = {}", problem.generators[0]);

    match certify_problem(&problem) {
        Err(Error::Hypothesis(HypothesisViolation::NotFullyMic { witness, value })) => {
            let pt: Vec<String> = witness.iter().map(fmt_rat).collect();
            println!(
                "rejected: not fully 2-ic; leading y-coefficient is {} at x = ({})",
                fmt_rat(&value),
                pt.join(", ")
            );
            assert_eq!(pt, vec!["1"]);
        }
        Err(other) => panic!("expected a fully-m-ic rejection, got: {other}"),
        Ok(_) => panic!("the rejection instance must not certify"),
    }

    // An odd y-degree is rejected even earlier (d >= 1 keeps the
    // instance off the univariate route).
    let mut odd = demo::desk_problem();
    odd.f = cylcert::polyring::parse_poly("x1 * y^3 + 2", 1).unwrap();
    match certify_problem(&odd) {
        Err(Error::Hypothesis(HypothesisViolation::OddYDegree { m })) => {
            println!("odd-degree instance rejected (deg_y = {m})");
        }
        other => panic!("expected an odd-degree rejection, got ok={}", other.is_ok()),
    }
}
