//! Tour of the polynomial layer: text grammar round trip, the two
//! weighted norms, circle homogenization and affine substitution.
//!
//! Run with: `cargo run --release --example norms_and_grammar`

use cylcert::polyring::{parse_poly, Poly, Var};
use cylcert::scalar::fmt_rat;

fn main() {
    // text grammar: parse -> print -> parse is the identity
    let f = parse_poly("x1*Y^2 + 3/4*x1 - 1", 1).unwrap();
    let printed = f.to_string();
    println!("canonical form: {printed}");
    assert_eq!(parse_poly(&printed, 1).unwrap(), f);

    // weighted norm: coefficients against the multinomial basis
    let s3 = parse_poly("x1 + x2", 2).unwrap().pow(3);
    println!("|(x1 + x2)^3| = {}", fmt_rat(&s3.norm_weighted().unwrap()));
    let xy = parse_poly("x1 * x2", 2).unwrap();
    println!("|x1 x2|       = {}", fmt_rat(&xy.norm_weighted().unwrap()));

    // circle homogenization and the mixed norm
    let g = parse_poly("x1 * y^2 + 1", 1).unwrap();
    let gbar = g.homogenize_y(g.deg_y()).unwrap();
    println!("homogenized: {g} -> {gbar}");
    assert_eq!(gbar.subst_z_one(), g);
    assert_eq!(gbar.norm_bullet().unwrap(), g.norm_bullet().unwrap());

    // affine substitution: pull 1 - x^2 from the box frame to the simplex
    let box_gen = parse_poly("1 - x1^2", 1).unwrap();
    let map = [parse_poly("2 * x1 - 1", 1).unwrap()];
    let simplex_gen = box_gen.affine_substitute(&map).unwrap();
    println!("frame pullback: {box_gen} -> {simplex_gen}");
    assert_eq!(simplex_gen, parse_poly("4 * x1 - 4 * x1^2", 1).unwrap());

    // exact evaluation
    let at = gbar
        .eval_xyz(
            &[cylcert::scalar::frac(1, 4)],
            &cylcert::scalar::int(1),
            &cylcert::scalar::int(0),
        )
        .unwrap();
    println!("fbar(1/4, 1, 0) = {}", fmt_rat(&at));

    // the simplex face and homogenization helpers used by the engine
    println!("1 - sum x  (n = 2): {}", Poly::one_minus_sum_x(2));
    println!("x0 + sum x (n = 2): {}", Poly::sum_x_with_x0(2));
    println!("y variable slot prints as: {}", Poly::var(2, Var::Y));
}
