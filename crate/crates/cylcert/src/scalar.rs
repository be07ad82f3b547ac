//! Exact rational scalars: parsing/formatting, big binomials, and
//! soundly rounded enclosures for the few irrational factors (square
//! roots, rational powers) that show up in the bound formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The scalar type used everywhere: an arbitrary-precision rational.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or a plain integer, with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".into());
    }
    match t.parse::<Rat>() {
        Ok(r) => Ok(r),
        Err(e) => Err(format!("bad rational literal '{t}': {e}")),
    }
}

/// Formats as `p/q`, or just `p` when the denominator is 1.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Always formats as `p/q`, including a denominator of 1.
pub fn fmt_rat_slash(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `n choose k` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `(e_1 + ... + e_r)! / (e_1! ... e_r!)`.
pub fn multinomial(exps: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: u64 = 0;
    for &e in exps {
        total += u64::from(e);
        acc *= binomial(total, u64::from(e));
    }
    acc
}

/// Floor of `x` as a big integer.
pub fn floor_int(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Ceiling of `x` as a big integer.
pub fn ceil_int(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// `x^e` for a non-negative big-integer exponent; `None` when the
/// exponent does not fit in `u32` (the result would be astronomically
/// large anyway).
pub fn pow_int(x: &Rat, e: &BigInt) -> Option<Rat> {
    if e.is_negative() {
        return None;
    }
    let e32: u32 = e.to_u32()?;
    Some(pow_u32(x, e32))
}

/// `x^e` for a `u32` exponent.
pub fn pow_u32(x: &Rat, e: u32) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    Rat::new(x.numer().pow(e), x.denom().pow(e))
}

/// Default enclosure width: `10^-6`, matching the bound-formula contract.
pub const ENCLOSURE_DIGITS: u32 = 6;

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Encloses `sqrt(x)` for `x >= 0` in `[lo, hi]` with `hi - lo <= 10^-digits`.
/// The enclosure collapses to a point when `x` is a perfect square.
pub fn sqrt_enclosure(x: &Rat, digits: u32) -> (Rat, Rat) {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let scale = pow10(digits);
    // floor(scale * sqrt(p/q)) = floor(sqrt(scale^2 * p * q)) div q
    let p = x.numer();
    let q = x.denom();
    let inner = &scale * &scale * p * q;
    let root = inner.sqrt();
    let r = root.div_floor(q);
    let lo = Rat::new(r.clone(), scale.clone());
    if &lo * &lo == *x {
        return (lo.clone(), lo);
    }
    let hi = Rat::new(r + BigInt::one(), scale);
    if &hi * &hi == *x {
        return (hi.clone(), hi);
    }
    (lo, hi)
}

/// Encloses the k-th root of `x > 0` in `[lo, hi]` with width `<= 10^-digits`.
pub fn nth_root_enclosure(x: &Rat, k: u32, digits: u32) -> (Rat, Rat) {
    assert!(x.is_positive(), "nth root of a non-positive rational");
    assert!(k >= 1);
    if k == 1 {
        return (x.clone(), x.clone());
    }
    let scale = pow10(digits);
    // floor(scale * (p/q)^(1/k)) = floor((scale^k * p * q^(k-1))^(1/k)) div q
    let p = x.numer();
    let q = x.denom();
    let inner = scale.pow(k) * p * q.pow(k - 1);
    let root = inner.nth_root(k);
    let r = root.div_floor(q);
    let lo = Rat::new(r.clone(), scale.clone());
    if pow_u32(&lo, k) == *x {
        return (lo.clone(), lo);
    }
    let hi = Rat::new(r + BigInt::one(), scale);
    if pow_u32(&hi, k) == *x {
        return (hi.clone(), hi);
    }
    (lo, hi)
}

/// Upper bound for `x^e` with `x > 0` and rational `e >= 0`.
/// Exact when `e` is an integer; otherwise rounded up through an
/// `nth_root_enclosure` of width `10^-digits`.
pub fn pow_rat_upper(x: &Rat, e: &Rat, digits: u32) -> Option<Rat> {
    pow_rat_dir(x, e, digits, true)
}

/// Lower bound for `x^e` with `x > 0` and rational `e >= 0`.
pub fn pow_rat_lower(x: &Rat, e: &Rat, digits: u32) -> Option<Rat> {
    pow_rat_dir(x, e, digits, false)
}

fn pow_rat_dir(x: &Rat, e: &Rat, digits: u32, upper: bool) -> Option<Rat> {
    if e.is_negative() || !x.is_positive() {
        return None;
    }
    if e.is_integer() {
        return pow_int(x, &e.to_integer());
    }
    let p: u32 = e.numer().to_u32()?;
    let q: u32 = e.denom().to_u32()?;
    let base = pow_u32(x, p);
    let (lo, hi) = nth_root_enclosure(&base, q, digits);
    Some(if upper { hi } else { lo })
}

/// Exact conversion of an `f64` (a dyadic rational) to `Rat`.
/// Returns `None` for non-finite values.
pub fn rat_from_f64(v: f64) -> Option<Rat> {
    Rat::from_float(v)
}

/// Rounds `x` to the nearest multiple of `2^-bits` (ties toward -inf).
/// Used to keep intermediate precision bounded in the numeric-seed
/// polish loop.
pub fn round_to_bits(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone()) + Rat::new(BigInt::one(), BigInt::from(2));
    Rat::new(scaled.floor().to_integer(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-3/4", "5", "-5", "0", "123456789/987654321"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
            assert_eq!(parse_rat(&fmt_rat_slash(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(multinomial(&[1, 1]), BigInt::from(2));
        assert_eq!(multinomial(&[2, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[0]), BigInt::one());
    }

    #[test]
    fn sqrt_enclosure_matches_default_width() {
        // sqrt(2) in [1.414213, 1.414214] at the default width.
        let (lo, hi) = sqrt_enclosure(&int(2), ENCLOSURE_DIGITS);
        assert_eq!(lo, frac(1_414_213, 1_000_000));
        assert_eq!(hi, frac(1_414_214, 1_000_000));
        // perfect squares collapse
        let (lo, hi) = sqrt_enclosure(&frac(9, 4), ENCLOSURE_DIGITS);
        assert_eq!(lo, hi);
        assert_eq!(lo, frac(3, 2));
    }

    #[test]
    fn nth_root_sound() {
        let (lo, hi) = nth_root_enclosure(&int(2), 3, 6);
        assert!(pow_u32(&lo, 3) <= int(2));
        assert!(pow_u32(&hi, 3) >= int(2));
        assert!(&hi - &lo <= frac(1, 1_000_000));
    }

    #[test]
    fn rational_powers() {
        assert_eq!(pow_int(&frac(2, 3), &BigInt::from(3)).unwrap(), frac(8, 27));
        let up = pow_rat_upper(&int(2), &frac(3, 2), 6).unwrap();
        let lo = pow_rat_lower(&int(2), &frac(3, 2), 6).unwrap();
        // 2^(3/2) = 2.8284271...
        assert!(lo <= up);
        assert!(pow_u32(&lo, 2) <= int(8));
        assert!(pow_u32(&up, 2) >= int(8));
    }

    #[test]
    fn f64_conversion_is_exact() {
        let r = rat_from_f64(0.1).unwrap();
        // 0.1 is not exactly 1/10 in binary; conversion must preserve the
        // dyadic value, not the decimal literal.
        assert_ne!(r, frac(1, 10));
        assert_eq!(r.to_f64().unwrap(), 0.1);
    }
}
