//! The corner-monomial registry: built-in closed forms for interval
//! generators, exact verification, the degree statistic `c9`, the
//! archimedean witness and its transfer to the simplex frame.
//!
//! Run with: `cargo run --release --example registry_tour`

use cylcert::assemble::archimedean_transfer;
use cylcert::polyring::parse_poly;
use cylcert::registry::{builtin_certs_n1, c9, verify_archimedean, verify_entry, BuiltinResult};
use cylcert::scalar::fmt_rat;

fn main() {
    let gens = vec![
        parse_poly("x1 - 1/4", 1).unwrap(),
        parse_poly("3/4 - x1", 1).unwrap(),
    ];
    let reg = match builtin_certs_n1(&gens).unwrap() {
        BuiltinResult::Supported(r) => r,
        BuiltinResult::Unsupported(why) => panic!("unsupported: {why}"),
    };
    println!("registry: {}", reg.id);
    for cert in reg.entries() {
        println!("\nparity v = {:?}:", cert.v);
        for (i, sigma) in cert.sigmas.iter().enumerate() {
            if sigma.is_zero() {
                continue;
            }
            for (w, q) in sigma.terms() {
                println!("  sigma_{i} += {} * ({q})^2", fmt_rat(w));
            }
        }
        assert!(verify_entry(cert, &gens), "exact identity holds");
    }
    println!("\nc9 = {}", c9(&reg, &gens).unwrap());

    let w = reg.archimedean.as_ref().expect("builtin witness");
    println!(
        "archimedean witness: {} - x1^2 is in the module (verified: {})",
        fmt_rat(&w.bound),
        verify_archimedean(w, 1, &gens)
    );

    // Transfer across the frame map x -> (x+1)/2: a witness for box-frame
    // generators becomes one for their simplex-frame pullbacks.
    let box_gens = vec![
        parse_poly("x1 + 1/2", 1).unwrap(),
        parse_poly("1/2 - x1", 1).unwrap(),
    ];
    let box_reg = match builtin_certs_n1(&{
        // pull the box generators to the simplex frame first
        let inv = cylcert::assemble::frame_map_inverse(1);
        box_gens
            .iter()
            .map(|g| g.affine_substitute(&inv).unwrap())
            .collect::<Vec<_>>()
    })
    .unwrap()
    {
        BuiltinResult::Supported(r) => r,
        BuiltinResult::Unsupported(why) => panic!("unsupported: {why}"),
    };
    println!("\npulled-back registry: {}", box_reg.id);

    // an original-frame witness transfers with the stated bound change;
    // box generators sit outside [0, 1] so the builtin does not apply,
    // and this one is written by hand:
    //   1 - x^2 = 3/4 + (1/2 - x)^2 (x + 1/2) + (x + 1/2)^2 (1/2 - x)
    let direct = {
        use cylcert::polyring::Poly;
        use cylcert::registry::ArchimedeanWitness;
        use cylcert::scalar::{frac, int};
        use cylcert::sos1d::SosPoly;
        let mut s0 = SosPoly::zero(1);
        s0.push(frac(3, 4), Poly::one(1)).unwrap();
        let mut s1 = SosPoly::zero(1);
        s1.push(int(1), parse_poly("1/2 - x1", 1).unwrap()).unwrap();
        let mut s2 = SosPoly::zero(1);
        s2.push(int(1), parse_poly("x1 + 1/2", 1).unwrap()).unwrap();
        ArchimedeanWitness {
            bound: int(1),
            sigmas: vec![s0, s1, s2],
        }
    };
    assert!(verify_archimedean(&direct, 1, &box_gens));
    let transferred = archimedean_transfer(&direct, 1).unwrap();
    println!(
        "witness bound {} transfers to {} under the frame change",
        fmt_rat(&direct.bound),
        fmt_rat(&transferred.bound)
    );
    let inv = cylcert::assemble::frame_map_inverse(1);
    let tilde: Vec<_> = box_gens
        .iter()
        .map(|g| g.affine_substitute(&inv).unwrap())
        .collect();
    assert!(verify_archimedean(&transferred, 1, &tilde));
    println!("transferred witness verifies against the pulled-back generators");
}
