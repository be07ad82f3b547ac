//! Explicit schedule constants and degree bounds, as exact rationals.
//!
//! The formulas involve `sqrt(n)`, `sqrt(2)` and rational powers; those
//! enter through rational enclosures of width `10^-6` rounded in the
//! sound direction (up for anything that must dominate, down for
//! denominators). Exponential factors of the form `base^(2 c4 r)` are
//! bounded by `base^ceil(2 c4 r)` with `base >= 1`, which keeps the whole
//! report in exact integer arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{
    binomial, ceil_int, fmt_rat_slash, int, pow_int, pow_rat_lower, pow_rat_upper, pow_u32,
    sqrt_enclosure, Rat, ENCLOSURE_DIGITS,
};

/// Lojasiewicz constants `dist(x, S)^c1 <= -c2 * min(g_i(x), 0)`.
#[derive(Debug, Clone)]
pub struct LojaConstants {
    pub c1: Rat,
    pub c2: Rat,
    pub provenance: LojaProvenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LojaProvenance {
    UserSupplied,
    GridEstimated,
}

impl LojaConstants {
    pub fn user(c1: Rat, c2: Rat) -> Result<Self, Error> {
        if !c1.is_positive() || !c2.is_positive() {
            return Err(Error::domain("Lojasiewicz constants must be positive"));
        }
        Ok(LojaConstants {
            c1,
            c2,
            provenance: LojaProvenance::UserSupplied,
        })
    }
}

/// Instance-level quantities feeding the bound formulas.
#[derive(Debug, Clone)]
pub struct InstanceParams {
    pub n: usize,
    pub s: usize,
    pub d: u32,
    pub m: u32,
    pub max_deg_g: u32,
    /// `max_i (deg g_i + 1) * (||g_i|| + 1)`.
    pub max_gen_factor: Rat,
    pub norm_f_bullet: Rat,
    pub f_min: Rat,
    pub loja: LojaConstants,
}

/// Every explicit intermediate bound from the construction, exact.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub lambda: Rat,
    pub k: BigInt,
    pub ell: BigInt,
    pub n_polya: BigInt,
    pub k_bound: Rat,
    pub ell_bound: Rat,
    pub h_norm_bound: Rat,
    pub n_plus_ell_bound: Rat,
    pub term_bound_module: BigInt,
    pub term_bound_polya: BigInt,
    pub c9: BigInt,
}

impl std::fmt::Display for BoundReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "lambda: {}", fmt_rat_slash(&self.lambda))?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "ell: {}", self.ell)?;
        writeln!(f, "N: {}", self.n_polya)?;
        writeln!(f, "k_bound: {}", fmt_rat_slash(&self.k_bound))?;
        writeln!(f, "ell_bound: {}", fmt_rat_slash(&self.ell_bound))?;
        writeln!(f, "h_norm_bound: {}", fmt_rat_slash(&self.h_norm_bound))?;
        writeln!(f, "n_plus_ell_bound: {}", fmt_rat_slash(&self.n_plus_ell_bound))?;
        writeln!(f, "term_bound_module: {}", self.term_bound_module)?;
        writeln!(f, "term_bound_polya: {}", self.term_bound_polya)?;
        writeln!(f, "c9: {}", self.c9)
    }
}

/// The damping coefficient `lambda`: smallest representable rational at
/// or above
/// `c2 2^c1 (sqrt(n) |f| (m+1) d (d+1))^(c1+1) / (sqrt(2) f_min^c1)`,
/// rounded up through the enclosures.
pub fn compute_lambda(
    loja: &LojaConstants,
    n: usize,
    norm_f_bullet: &Rat,
    m: u32,
    d: u32,
    f_min: &Rat,
) -> Result<Rat, Error> {
    if !f_min.is_positive() {
        return Err(Error::domain("compute_lambda: f_min must be positive"));
    }
    if d == 0 {
        return Err(Error::domain("compute_lambda: requires d >= 1"));
    }
    if !loja.c1.is_positive() || !loja.c2.is_positive() {
        return Err(Error::domain("compute_lambda: Lojasiewicz constants must be positive"));
    }
    let digits = ENCLOSURE_DIGITS;
    let (_, sn_hi) = sqrt_enclosure(&int(n as i64), digits);
    let (s2_lo, _) = sqrt_enclosure(&int(2), digits);
    let amp = norm_f_bullet
        * int(i64::from(m) + 1)
        * int(i64::from(d))
        * int(i64::from(d) + 1);
    let base = sn_hi * amp;
    let c1p1 = &loja.c1 + Rat::one();
    let num = &loja.c2
        * pow_rat_upper(&int(2), &loja.c1, digits)
            .ok_or_else(|| Error::domain("compute_lambda: c1 out of range"))?
        * pow_rat_upper(&base, &c1p1, digits)
            .ok_or_else(|| Error::domain("compute_lambda: exponent out of range"))?;
    let den = s2_lo
        * pow_rat_lower(f_min, &loja.c1, digits)
            .ok_or_else(|| Error::domain("compute_lambda: c1 out of range"))?;
    Ok(num / den)
}

/// The damping exponent: smallest `k >= 0` with `2k + 1 >= 4 lambda s / f_min`.
pub fn compute_k(lambda: &Rat, s: usize, f_min: &Rat) -> Result<BigInt, Error> {
    if !lambda.is_positive() {
        return Err(Error::domain("compute_k: lambda must be positive"));
    }
    if s == 0 {
        return Err(Error::domain("compute_k: need at least one generator"));
    }
    if !f_min.is_positive() {
        return Err(Error::domain("compute_k: f_min must be positive"));
    }
    let ratio = lambda * int(4) * int(s as i64) / f_min;
    let k = ceil_int(&((ratio - Rat::one()) / int(2)));
    Ok(if k.is_negative() { BigInt::zero() } else { k })
}

/// The simplex multiplication exponent
/// `N = max(0, floor((m+1)(l+1) l (l-1) |h| / f_min - l) + 1)`.
pub fn compute_polya_n(
    m: u32,
    ell: &BigInt,
    h_norm_bullet: &Rat,
    f_min: &Rat,
) -> Result<BigInt, Error> {
    if !f_min.is_positive() {
        return Err(Error::domain("compute_polya_n: f_min must be positive"));
    }
    if ell.is_negative() {
        return Err(Error::domain("compute_polya_n: ell must be non-negative"));
    }
    let ell_r = Rat::from_integer(ell.clone());
    let value = int(i64::from(m) + 1)
        * (&ell_r + Rat::one())
        * &ell_r
        * (&ell_r - Rat::one())
        * h_norm_bullet
        / f_min
        - &ell_r;
    let n = value.floor().to_integer() + BigInt::one();
    Ok(if n.is_negative() { BigInt::zero() } else { n })
}

/// Mixed-norm growth under the box-to-simplex change of variables:
/// `|f~| <= |f| (3n)^d`.
pub fn norm_transform_bound(norm_f_bullet: &Rat, n: usize, d: u32) -> Rat {
    norm_f_bullet * pow_u32(&int(3 * n as i64), d)
}

/// The explicit upper bound for the mixed norm of the damped polynomial
/// `h` at the formula schedule, usable without building `h` itself.
pub fn h_norm_bound_value(params: &InstanceParams) -> Result<Rat, Error> {
    let digits = ENCLOSURE_DIGITS;
    let c1 = &params.loja.c1;
    let c2 = &params.loja.c2;
    let c1p1 = c1 + Rat::one();
    let (_, sn_hi) = sqrt_enclosure(&int(params.n as i64), digits);
    let (s2_lo, _) = sqrt_enclosure(&int(2), digits);
    let s_r = int(params.s as i64);
    let amp = &params.norm_f_bullet
        * int(i64::from(params.m) + 1)
        * int(i64::from(params.d))
        * int(i64::from(params.d) + 1);
    let a = &amp / &params.f_min;
    let err = || Error::domain("h_norm_bound_value: exponent out of representable range");
    let c3 = c2 * pow_rat_upper(&int(2), c1, digits).ok_or_else(err)?
        * pow_rat_upper(&sn_hi, &c1p1, digits).ok_or_else(err)?
        / &s2_lo;
    let c4 = int(2) * &c3 * &s_r + Rat::one();
    let a_pow = pow_rat_upper(&a, &c1p1, digits).ok_or_else(err)?;
    let exponent = ceil_int(&(int(2) * &c4 * &a_pow));
    if exponent > BigInt::from(1_000_000u32) {
        return Err(Error::domain(
            "h_norm_bound_value: exponential factor exceeds 10^6 bits of exponent",
        ));
    }
    let mx = &params.max_gen_factor;
    if *mx < Rat::one() {
        return Err(Error::domain("h_norm_bound_value: generator factor below 1"));
    }
    let mx_pow = pow_int(mx, &exponent).ok_or_else(err)?;
    let two_mh = pow_u32(&int(2), params.m / 2);
    let c6 = (&c3 * &s_r + Rat::one()) * mx;
    Ok(&c6
        * &two_mh
        * pow_rat_upper(&amp, &c1p1, digits).ok_or_else(err)?
        / pow_rat_lower(&params.f_min, c1, digits).ok_or_else(err)?
        * &mx_pow)
}

/// Evaluates the whole report for given schedule values. The `_bound`
/// fields are the explicit pre-folded estimates at the instance's
/// parameters; the plain fields echo the schedule values used.
pub fn build_bound_report(
    params: &InstanceParams,
    lambda: &Rat,
    k: &BigInt,
    ell: &BigInt,
    n_polya: &BigInt,
    c9: &BigInt,
) -> Result<BoundReport, Error> {
    let digits = ENCLOSURE_DIGITS;
    let c1 = &params.loja.c1;
    let c2 = &params.loja.c2;
    let c1p1 = c1 + Rat::one();
    let (_, sn_hi) = sqrt_enclosure(&int(params.n as i64), digits);
    let (s2_lo, _) = sqrt_enclosure(&int(2), digits);
    let s_r = int(params.s as i64);
    let dmax = int(i64::from(params.max_deg_g));
    let amp = &params.norm_f_bullet
        * int(i64::from(params.m) + 1)
        * int(i64::from(params.d))
        * int(i64::from(params.d) + 1);
    let a = &amp / &params.f_min;

    let err = || Error::domain("build_bound_report: exponent out of representable range");
    let c3 = c2 * pow_rat_upper(&int(2), c1, digits).ok_or_else(err)?
        * pow_rat_upper(&sn_hi, &c1p1, digits).ok_or_else(err)?
        / &s2_lo;
    let c4 = int(2) * &c3 * &s_r + Rat::one();
    let a_pow = pow_rat_upper(&a, &c1p1, digits).ok_or_else(err)?;
    let k_bound = &c4 * &a_pow;
    let c5 = (int(2) * &c4 + Rat::one()) * &dmax;
    let ell_bound = &c5 * &a_pow;

    // e^(c7 * A^(c1+1)) = Mx^(2 c4 A^(c1+1)) <= Mx^ceil(2 c4 A^(c1+1)).
    let exponent = ceil_int(&(int(2) * &c4 * &a_pow));
    if exponent > BigInt::from(1_000_000u32) {
        return Err(Error::domain(
            "build_bound_report: exponential factor exceeds 10^6 bits of exponent",
        ));
    }
    let mx = &params.max_gen_factor;
    if *mx < Rat::one() {
        return Err(Error::domain("build_bound_report: generator factor below 1"));
    }
    let mx_pow = pow_int(mx, &exponent).ok_or_else(err)?;

    let two_mh = pow_u32(&int(2), params.m / 2);
    let c6 = (&c3 * &s_r + Rat::one()) * mx;
    let h_norm_bound = h_norm_bound_value(params)?;

    let c8 = &c5 * &c5 * &c5 * &c6 + Rat::one();
    let four_c1p1 = int(4) * &c1p1;
    let n_plus_ell_bound = &c8
        * int(i64::from(params.m) + 1)
        * &two_mh
        * pow_rat_upper(&a, &four_c1p1, digits).ok_or_else(err)?
        * &mx_pow;

    let term_bound_module = BigInt::from(params.m)
        + (BigInt::from(2u32) * k + BigInt::one()) * BigInt::from(params.max_deg_g);
    let term_bound_polya = BigInt::from(params.m) + n_polya + ell + c9;

    Ok(BoundReport {
        lambda: lambda.clone(),
        k: k.clone(),
        ell: ell.clone(),
        n_polya: n_polya.clone(),
        k_bound,
        ell_bound,
        h_norm_bound,
        n_plus_ell_bound,
        term_bound_module,
        term_bound_polya,
        c9: c9.clone(),
    })
}

/// `t (t-1)^(2k) <= 1/(2k+1)` for `t` in `[0, 1]`, checked exactly.
pub fn generator_damping_bound_holds(t: &Rat, k: u32) -> bool {
    let lhs = t * pow_u32(&(t - Rat::one()), 2 * k);
    lhs <= Rat::new(BigInt::one(), BigInt::from(2 * u64::from(k) + 1))
}

/// `2^j binom(d+1, j+1) <= 3^d` for `0 <= j <= d`, checked exactly.
pub fn binomial_power_bound_holds(j: u32, d: u32) -> bool {
    if j > d {
        return false;
    }
    let lhs = BigInt::from(2u32).pow(j) * binomial(u64::from(d) + 1, u64::from(j) + 1);
    lhs <= BigInt::from(3u32).pow(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn loja(c1: i64, c2: i64) -> LojaConstants {
        LojaConstants::user(int(c1), int(c2)).unwrap()
    }

    #[test]
    fn lambda_desk_instance() {
        // c1=1, c2=1, n=1, |f|=1, m=2, d=1, f_min=1/4: formula value is
        // 288/sqrt(2) = 144 sqrt(2); the returned rational must be at or
        // above that and within the enclosure's reach of it.
        let l = compute_lambda(&loja(1, 1), 1, &int(1), 2, 1, &frac(1, 4)).unwrap();
        assert!(&l * &l * int(2) >= int(288 * 288), "lambda below 144 sqrt 2");
        assert!(l <= int(204));
    }

    #[test]
    fn lambda_sqrt2_case() {
        // all norm factors collapse to 1: n=1, |f|=1/2, m=0, d=1 gives
        // base sqrt(1) * 1/2 * 1 * 1 * 2 = 1, so lambda = c2 * 2 / sqrt(2).
        let l = compute_lambda(&loja(1, 1), 1, &frac(1, 2), 0, 1, &int(1)).unwrap();
        assert!(&l * &l >= int(2));
        assert!(l <= frac(1_414_215, 1_000_000));
    }

    #[test]
    fn lambda_homogeneity_in_norm() {
        // at c1 = 1 the formula is quadratic in |f|: doubling |f|
        // multiplies the result by exactly 4 (enclosures are shared).
        let l1 = compute_lambda(&loja(1, 3), 2, &frac(5, 7), 2, 3, &frac(1, 5)).unwrap();
        let l2 = compute_lambda(&loja(1, 3), 2, &frac(10, 7), 2, 3, &frac(1, 5)).unwrap();
        assert_eq!(l2, l1 * int(4));
    }

    #[test]
    fn lambda_rejects_bad_inputs() {
        assert!(compute_lambda(&loja(1, 1), 1, &int(1), 2, 0, &int(1)).is_err());
        assert!(compute_lambda(&loja(1, 1), 1, &int(1), 2, 1, &int(0)).is_err());
    }

    #[test]
    fn k_examples() {
        assert_eq!(compute_k(&int(204), 2, &frac(1, 4)).unwrap(), BigInt::from(3264));
        assert_eq!(compute_k(&frac(1, 8), 1, &int(1)).unwrap(), BigInt::zero());
        assert_eq!(compute_k(&int(1), 1, &int(1)).unwrap(), BigInt::from(2));
    }

    #[test]
    fn k_minimality() {
        for (lam, s, fm) in [
            (frac(7, 3), 2, frac(1, 5)),
            (int(204), 2, frac(1, 4)),
            (frac(1, 100), 1, int(1)),
            (int(5), 3, frac(2, 3)),
        ] {
            let k = compute_k(&lam, s, &fm).unwrap();
            let ratio = &lam * int(4) * int(s as i64) / &fm;
            let kr = Rat::from_integer(k.clone());
            assert!(int(2) * &kr + Rat::one() >= ratio);
            if k > BigInt::zero() {
                assert!(int(2) * (&kr - Rat::one()) + Rat::one() < ratio);
            }
        }
    }

    #[test]
    fn polya_n_examples() {
        assert_eq!(
            compute_polya_n(2, &BigInt::from(2), &int(1), &frac(1, 2)).unwrap(),
            BigInt::from(35)
        );
        assert_eq!(
            compute_polya_n(7, &BigInt::one(), &int(1000), &frac(1, 1000)).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            compute_polya_n(0, &BigInt::from(3), &int(1), &int(1)).unwrap(),
            BigInt::from(22)
        );
    }

    #[test]
    fn norm_transform_examples() {
        assert_eq!(norm_transform_bound(&int(1), 1, 2), int(9));
        assert_eq!(norm_transform_bound(&frac(5, 3), 2, 0), frac(5, 3));
        assert_eq!(norm_transform_bound(&int(2), 2, 1), int(12));
    }

    fn params_desk() -> InstanceParams {
        InstanceParams {
            n: 1,
            s: 2,
            d: 1,
            m: 2,
            max_deg_g: 1,
            max_gen_factor: int(4),
            norm_f_bullet: int(1),
            f_min: frac(1, 4),
            loja: loja(1, 2),
        }
    }

    #[test]
    fn report_term_bounds() {
        let p = params_desk();
        let r = build_bound_report(
            &p,
            &int(1),
            &BigInt::one(),
            &BigInt::from(3),
            &BigInt::from(5),
            &BigInt::from(2),
        )
        .unwrap();
        assert_eq!(r.term_bound_module, BigInt::from(5)); // 2 + 3*1
        assert_eq!(r.term_bound_polya, BigInt::from(12)); // 2 + 5 + 3 + 2

        let mut p0 = params_desk();
        p0.m = 0;
        let r = build_bound_report(&p0, &int(1), &BigInt::zero(), &BigInt::zero(), &BigInt::zero(), &BigInt::zero()).unwrap();
        assert_eq!(r.term_bound_module, BigInt::from(p0.max_deg_g));
        assert_eq!(r.term_bound_polya, BigInt::zero());
    }

    #[test]
    fn report_dominates_formula_schedule() {
        // with the formula's own (lambda, k), k <= k_bound and the generic
        // ell = max(d, (2k+1) max_deg_g) <= ell_bound
        let p = params_desk();
        let lambda =
            compute_lambda(&p.loja, p.n, &p.norm_f_bullet, p.m, p.d, &p.f_min).unwrap();
        let k = compute_k(&lambda, p.s, &p.f_min).unwrap();
        let ell = BigInt::from(p.d).max((BigInt::from(2u32) * &k + BigInt::one()) * p.max_deg_g);
        let n_p = compute_polya_n(p.m, &ell, &int(1), &p.f_min).unwrap();
        let r = build_bound_report(&p, &lambda, &k, &ell, &n_p, &BigInt::from(3)).unwrap();
        assert!(Rat::from_integer(k) <= r.k_bound);
        assert!(Rat::from_integer(ell) <= r.ell_bound);
    }

    #[test]
    fn damping_bound_spot() {
        assert!(generator_damping_bound_holds(&frac(1, 2), 1));
        assert!(generator_damping_bound_holds(&int(1), 7));
        assert!(generator_damping_bound_holds(&int(0), 0));
        // outside [0,1] the bound has no claim; the helper just evaluates
        assert!(!generator_damping_bound_holds(&int(2), 0));
    }

    #[test]
    fn binomial_bound_spot() {
        assert!(binomial_power_bound_holds(0, 0));
        assert!(binomial_power_bound_holds(3, 7));
        assert!(binomial_power_bound_holds(7, 7));
        assert!(!binomial_power_bound_holds(5, 4));
    }
}
