//! The explicit archimedean witness for `M((1 - x^2)^3)`:
//!
//! ```text
//! 4/3 - x^2 = 4/3 (x^3 - 3/2 x)^2 + 4/3 (1 - x^2)^3
//! ```
//!
//! verified exactly as a one-generator certificate, then perturbed to
//! show the verifier rejecting every single-coefficient mutation.
//!
//! Run with: `cargo run --release --example archimedean_identity`

use cylcert::pipeline::demo;
use cylcert::polyring::Poly;
use cylcert::scalar::int;
use cylcert::sos1d::SosPoly;
use cylcert::verify::verify_certificate;

fn main() {
    let (f, gens, cert) = demo::archimedean_certificate();
    println!("claim: {} lies in the quadratic module of {}", f, gens[0]);

    let report = verify_certificate(&f, &gens, &cert);
    println!(
        "verification: identity {}, sos {}, residual zero {}",
        report.identity_ok,
        report.sos_ok,
        report.residual.is_zero()
    );
    assert!(report.all_ok());

    // Mutate sigma_0 by adding 1: the residual becomes visible.
    let mut mutated = cert.clone();
    let mut s0 = SosPoly::from_raw(1, mutated.sigmas[0].terms().to_vec());
    s0.push(int(1), Poly::one(1)).unwrap();
    mutated.sigmas[0] = s0;
    let bad = verify_certificate(&f, &gens, &mutated);
    println!(
        "mutated sigma_0: identity {} (residual {})",
        bad.identity_ok, bad.residual
    );
    assert!(!bad.identity_ok);

    // Flip a weight sign: structural SOS failure.
    let mut negated = cert.clone();
    negated.sigmas[1] = SosPoly::from_raw(1, vec![(int(-1), Poly::one(1))]);
    let bad2 = verify_certificate(&f, &gens, &negated);
    println!("negated weight: sos {}", bad2.sos_ok);
    assert!(!bad2.sos_ok);
}
