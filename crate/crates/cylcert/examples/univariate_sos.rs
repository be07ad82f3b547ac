//! Sturm-based positivity and exact univariate SOS decomposition.
//!
//! Run with: `cargo run --release --example univariate_sos`

use cylcert::polyring::parse_poly;
use cylcert::scalar::fmt_rat;
use cylcert::sos1d::{sos_decompose_univariate, sturm_root_count, RootInterval};

fn main() {
    for src in ["y^2 + 1", "y^2 - 1", "y^4 - y^2 + 1", "y^6 - 2 * y^3 + 2"] {
        let p = parse_poly(src, 0).unwrap();
        let roots = sturm_root_count(&p, &RootInterval::WholeLine).unwrap();
        println!("{src}: {roots} distinct real roots");
    }

    println!();
    for src in [
        "y^2 + 1",
        "y^4 - y^2 + 1",
        "2 * y^2 + 2 * y + 1",
        "y^8 + y^7 + 3 * y^2 - y + 5/7",
    ] {
        let p = parse_poly(src, 0).unwrap();
        let sos = sos_decompose_univariate(&p).unwrap();
        println!("{src} =");
        for (w, q) in sos.terms() {
            println!("    + {} * ({q})^2", fmt_rat(w));
        }
        assert_eq!(sos.expand(), p, "exact re-expansion");
        println!("    (re-expansion equals the input exactly)");
    }
}
