//! Minimal multiplication exponent for `H = x0^2 - x0 x1 + x1^2`:
//! multiplying by `(x0 + x1)^N` leaves a non-positive coefficient for
//! `N = 0, 1, 2` and turns every coefficient positive at `N = 3`.
//!
//! Run with: `cargo run --release --example polya_minimal_exponent`

use cylcert::pipeline::demo;
use cylcert::polya::{min_polya_exponent, polya_expand};
use cylcert::scalar::fmt_rat;

fn main() {
    let h = demo::polya_minimal_h();
    println!("H = {h}\n");

    for n in 0..=3 {
        let out = polya_expand(&h, n).unwrap();
        let coeffs: Vec<String> = out
            .b_coeffs
            .values()
            .map(|b| fmt_rat(&b.constant_term()))
            .collect();
        // missing monomials are zero coefficients
        let width = (n + 2 + 1) as usize;
        let present = out.b_coeffs.len();
        println!(
            "N = {n}: coefficients [{}]{} -> {}",
            coeffs.join(", "),
            if present < width { " (some zero)" } else { "" },
            if out.all_positive { "positive" } else { "not positive" }
        );
    }

    let (n, out) = min_polya_exponent(&h, 16).unwrap().expect("certified");
    println!("\nminimal exponent: N = {n}");
    assert_eq!(n, 3);
    assert!(out.all_positive);
}
