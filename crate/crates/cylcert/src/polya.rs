//! The simplex-multiplication core: damping, bihomogenization, expansion
//! of `H * (x0 + ... + xn)^N` grouped by x-monomial, strict positivity of
//! the `(y, z)` coefficient forms on the circle, and the adaptive
//! escalation schedule whose termination is backstopped by the explicit
//! schedule constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::bounds::{compute_k, compute_lambda, compute_polya_n, LojaConstants};
use crate::error::Error;
use crate::polyring::{Mono, Poly};
use crate::scalar::{binomial, fmt_rat, Rat};
use crate::sos1d::{sturm_root_count, RootInterval};

/// Escalation limits for the adaptive schedule.
#[derive(Debug, Clone)]
pub struct ScheduleCaps {
    pub max_n: u32,
    pub max_k: u32,
    pub max_lambda: Rat,
    /// Cap on expansion term counts and (squared-degree) work estimates.
    pub term_budget: usize,
}

impl Default for ScheduleCaps {
    fn default() -> Self {
        ScheduleCaps {
            max_n: 60,
            max_k: 12,
            max_lambda: crate::scalar::int(1 << 20),
            term_budget: 10_000_000,
        }
    }
}

/// Result of one expansion: the coefficient forms `b_alpha(y, z)` of
/// `H * (x0 + ... + xn)^N`, keyed by the x-monomial, plus the schedule
/// values that produced `H`.
#[derive(Debug, Clone)]
pub struct PolyaOutcome {
    pub n_used: u32,
    pub lambda_used: Rat,
    pub k_used: u32,
    pub ell: u32,
    /// `alpha -> b_alpha`; keys have zero `y`/`z` slots, `|alpha| = N + ell`.
    pub b_coeffs: BTreeMap<Mono, Poly>,
    /// True when every `b_alpha` with `|alpha| = N + ell` is present,
    /// nonzero and strictly positive on the circle.
    pub all_positive: bool,
    /// A failing x-monomial, for diagnostics (`None` when a coefficient
    /// is missing entirely or everything passed).
    pub first_failure: Option<Mono>,
}

/// `h = fbar - lambda (y^2 + z^2)^(m/2) sum_i g_i (g_i - 1)^(2k)`.
///
/// `deg_y f` must be even; for `m = 0` the circle factor degenerates to 1
/// and `h = f - lambda sum g_i (g_i - 1)^(2k)`.
pub fn build_h(f: &Poly, gens: &[Poly], lambda: &Rat, k: u32) -> Result<Poly, Error> {
    let m = f.deg_y();
    if m % 2 != 0 {
        return Err(Error::domain("build_h: deg_y f must be even"));
    }
    if !lambda.is_positive() {
        return Err(Error::domain("build_h: lambda must be positive"));
    }
    let n = f.nvars();
    let fbar = f.homogenize_y(m)?;
    let mut damp = Poly::zero(n);
    for g in gens {
        if g.nvars() != n {
            return Err(Error::arity("build_h: generator arity mismatch"));
        }
        if !g.is_x_only() {
            return Err(Error::domain("build_h: generators must be x-only"));
        }
        let shifted = g - &Poly::one(n);
        damp = &damp + &(g * &shifted.pow(2 * k));
    }
    let circle = {
        let y = Poly::var(n, crate::polyring::Var::Y);
        let z = Poly::var(n, crate::polyring::Var::Z);
        (&(&y * &y) + &(&z * &z)).pow(m / 2)
    };
    Ok(&fbar - &(&circle * &damp).scale(lambda))
}

/// Bihomogenizes `h` (homogeneous in `(y, z)`, `deg_x h <= ell`) to x-degree
/// `ell` by padding each x-homogeneous layer with powers of
/// `x0 + x1 + ... + xn`. Substituting `x0 = 1 - sum x` recovers `h`.
pub fn bihomogenize(h: &Poly, ell: u32) -> Result<Poly, Error> {
    if h.yz_degree_uniform().is_none() {
        return Err(Error::domain("bihomogenize: h is not homogeneous in (y, z)"));
    }
    if h.uses_x0() {
        return Err(Error::domain("bihomogenize: h already involves x0"));
    }
    if h.deg_x() > ell {
        return Err(Error::domain(format!(
            "bihomogenize: deg_x h = {} exceeds ell = {ell}",
            h.deg_x()
        )));
    }
    let n = h.nvars();
    let linear = Poly::sum_x_with_x0(n);
    let mut powers = Vec::with_capacity(ell as usize + 1);
    powers.push(Poly::one(n));
    for i in 1..=ell {
        powers.push(&powers[(i - 1) as usize] * &linear);
    }
    let mut out = Poly::zero(n);
    for (mono, c) in h.terms() {
        let xdeg: u32 = mono.exps()[..=n].iter().sum();
        let mut stub = Poly::zero(n);
        stub.add_term(mono.clone(), c.clone());
        out = &out + &(&stub * &powers[(ell - xdeg) as usize]);
    }
    Ok(out)
}

/// Strict positivity of a binary form on the unit circle: the
/// dehomogenization `b(y, 1)` has no real roots, `b(0, 1) > 0`, and
/// `b(1, 0) > 0` (the `y^m` coefficient, covering the poles). The zero
/// form reports `false`.
pub fn positivity_on_c(b: &Poly) -> Result<bool, Error> {
    if b.is_zero() {
        return Ok(false);
    }
    let m = b
        .yz_degree_uniform()
        .ok_or_else(|| Error::domain("positivity_on_c: not homogeneous in (y, z)"))?;
    if m % 2 != 0 {
        return Err(Error::domain("positivity_on_c: degree must be even"));
    }
    if b.deg_x() > 0 {
        return Err(Error::domain("positivity_on_c: input must be a (y, z) form"));
    }
    if m == 0 {
        return Ok(b.constant_term().is_positive());
    }
    let n = b.nvars();
    let coeff_of = |ey: u32, ez: u32| -> Rat {
        let mut exps = vec![0u32; n + 3];
        exps[n + 1] = ey;
        exps[n + 2] = ez;
        b.coeff(&Mono::from_exps(exps))
    };
    if !coeff_of(m, 0).is_positive() {
        return Ok(false);
    }
    if !coeff_of(0, m).is_positive() {
        return Ok(false);
    }
    let dehom = b.subst_z_one();
    Ok(sturm_root_count(&dehom, &RootInterval::WholeLine)? == 0)
}

/// Incremental product state for `H * (x0 + ... + xn)^N`.
pub struct Expansion {
    current: Poly,
    n_current: u32,
    linear: Poly,
}

impl Expansion {
    pub fn new(h_bihom: &Poly) -> Self {
        Expansion {
            current: h_bihom.clone(),
            n_current: 0,
            linear: Poly::sum_x_with_x0(h_bihom.nvars()),
        }
    }

    pub fn n_current(&self) -> u32 {
        self.n_current
    }

    /// Multiplies up to exponent `n`, one linear factor at a time.
    /// Returns `false` without advancing further when the term budget
    /// would be exceeded.
    pub fn advance_to(&mut self, n: u32, term_budget: usize) -> bool {
        while self.n_current < n {
            if self.current.num_terms() > term_budget {
                return false;
            }
            self.current = &self.current * &self.linear;
            self.n_current += 1;
        }
        self.current.num_terms() <= term_budget
    }

    pub fn current(&self) -> &Poly {
        &self.current
    }

    /// Groups the current product by x-monomial and runs the circle
    /// positivity check on every coefficient form.
    pub fn outcome(&self, lambda: &Rat, k: u32, ell: u32) -> Result<PolyaOutcome, Error> {
        let n = self.current.nvars();
        let mut groups: BTreeMap<Mono, Poly> = BTreeMap::new();
        for (mono, c) in self.current.terms() {
            let mut xkey = mono.exps().to_vec();
            xkey[n + 1] = 0;
            xkey[n + 2] = 0;
            let mut yz = vec![0u32; n + 3];
            yz[n + 1] = mono.exps()[n + 1];
            yz[n + 2] = mono.exps()[n + 2];
            groups
                .entry(Mono::from_exps(xkey))
                .or_insert_with(|| Poly::zero(n))
                .add_term(Mono::from_exps(yz), c.clone());
        }
        let total_degree = self.n_current + ell;
        let expected = expected_alpha_count(n, total_degree);
        let mut all_positive = BigInt::from(groups.len()) == expected;
        let mut first_failure = None;
        if all_positive {
            for (alpha, b) in &groups {
                if !positivity_on_c(b)? {
                    all_positive = false;
                    first_failure = Some(alpha.clone());
                    break;
                }
            }
        }
        Ok(PolyaOutcome {
            n_used: self.n_current,
            lambda_used: lambda.clone(),
            k_used: k,
            ell,
            b_coeffs: groups,
            all_positive,
            first_failure,
        })
    }
}

fn expected_alpha_count(n: usize, total_degree: u32) -> BigInt {
    // number of alpha in N_0^(n+1) with |alpha| = total: C(total + n, n)
    binomial(u64::from(total_degree) + n as u64, n as u64)
}

/// One-shot expansion at a fixed exponent.
pub fn polya_expand(h_bihom: &Poly, n_exp: u32) -> Result<PolyaOutcome, Error> {
    let ell = h_bihom
        .x_degree_uniform()
        .ok_or_else(|| Error::domain("polya_expand: H is not homogeneous in the x-block"))?;
    if h_bihom.yz_degree_uniform().is_none() {
        return Err(Error::domain("polya_expand: H is not homogeneous in (y, z)"));
    }
    let mut e = Expansion::new(h_bihom);
    e.advance_to(n_exp, usize::MAX);
    e.outcome(&Rat::one(), 0, ell)
}

/// Smallest exponent `N <= cap` making every coefficient form strictly
/// positive on the circle, stepping by one and reusing the expansion.
pub fn min_polya_exponent(h_bihom: &Poly, cap: u32) -> Result<Option<(u32, PolyaOutcome)>, Error> {
    let ell = h_bihom
        .x_degree_uniform()
        .ok_or_else(|| Error::domain("min_polya_exponent: H is not homogeneous in the x-block"))?;
    if h_bihom.yz_degree_uniform().is_none() {
        return Err(Error::domain(
            "min_polya_exponent: H is not homogeneous in (y, z)",
        ));
    }
    let mut e = Expansion::new(h_bihom);
    for n in 0..=cap {
        e.advance_to(n, usize::MAX);
        let out = e.outcome(&Rat::one(), 0, ell)?;
        if out.all_positive {
            return Ok(Some((n, out)));
        }
    }
    Ok(None)
}

/// Adaptive search for a certifying `(lambda, k, N)`.
///
/// Schedule: start at `(1, 0)`; for each pair try exponents `0, 1, 2, 4,
/// 8, ...` up to `min(formula N for the current h, max_n)`, reusing the
/// expansion incrementally; on failure alternately bump `k` and double
/// `lambda`, capped by the formula values for the instance; the final
/// fallback runs the formula-exact `(lambda, k, N)` within the term
/// budget. Any outcome passing the positivity check yields a valid
/// certificate, so smaller-than-formula schedule values are sound.
pub fn adaptive_certify_core(
    f: &Poly,
    gens: &[Poly],
    f_min: &Rat,
    loja: &LojaConstants,
    caps: &ScheduleCaps,
) -> Result<(PolyaOutcome, Vec<String>), Error> {
    let n = f.nvars();
    let s = gens.len();
    let m = f.deg_y();
    if m % 2 != 0 {
        return Err(Error::domain("adaptive_certify_core: deg_y f must be even"));
    }
    let d = f.deg_x();
    if d == 0 {
        return Err(Error::domain(
            "adaptive_certify_core: d = 0 takes the direct univariate route",
        ));
    }
    if !f_min.is_positive() {
        return Err(Error::domain("adaptive_certify_core: f_min must be positive"));
    }
    let mut trace: Vec<String> = Vec::new();

    let norm_f = f.norm_bullet()?;
    let formula_lambda = compute_lambda(loja, n, &norm_f, m, d, f_min)?;
    let formula_k = compute_k(&formula_lambda, s, f_min)?;
    let lam_cap = formula_lambda.clone().min(caps.max_lambda.clone());
    let k_cap: u32 = formula_k.to_u32().unwrap_or(u32::MAX).min(caps.max_k);
    trace.push(format!(
        "schedule caps: lambda <= {}, k <= {k_cap} (formula lambda = {}, k = {formula_k})",
        fmt_rat(&lam_cap),
        fmt_rat(&formula_lambda)
    ));

    let mut lam = Rat::one().min(lam_cap.clone());
    let mut k: u32 = 0;
    let mut bump_k = true;
    loop {
        if let Some(outcome) = try_pair(f, gens, &lam, k, m, f_min, caps, &mut trace)? {
            return Ok((outcome, trace));
        }
        let k_at_cap = k >= k_cap;
        let lam_at_cap = lam >= lam_cap;
        if k_at_cap && lam_at_cap {
            break;
        }
        if bump_k && !k_at_cap {
            k += 1;
        } else if !lam_at_cap {
            lam = (&lam + &lam).min(lam_cap.clone());
        } else {
            k += 1;
        }
        bump_k = !bump_k;
    }

    // Fallback: the formula-exact run, guarded by the term budget.
    trace.push("schedule exhausted; trying formula-exact parameters".to_string());
    let k_formula = formula_k.to_u32().ok_or_else(|| Error::Budget {
        detail: format!("formula k = {formula_k} is out of range"),
        report: None,
    })?;
    let max_deg_g = gens.iter().map(|g| g.deg_total()).max().unwrap_or(0);
    let damp_deg = u64::from(2 * k_formula) * u64::from(max_deg_g);
    let damp_work = damp_deg.saturating_mul(damp_deg);
    if damp_work > caps.term_budget as u64 {
        return Err(Error::Budget {
            detail: format!(
                "building h at formula k = {k_formula} needs ~{damp_work} coefficient \
                 operations, over the budget of {}",
                caps.term_budget
            ),
            report: None,
        });
    }
    let h = build_h(f, gens, &formula_lambda, k_formula)?;
    let ell = h.deg_x();
    let hn = h.norm_bullet()?;
    let n_formula = compute_polya_n(m, &BigInt::from(ell), &hn, f_min)?;
    let n_formula_u32 = n_formula.to_u32().ok_or_else(|| Error::Budget {
        detail: format!("formula N = {n_formula} is out of range"),
        report: None,
    })?;
    let predicted_terms = expected_alpha_count(n, n_formula_u32 + ell) * BigInt::from(m + 1);
    let predicted_work =
        BigInt::from(n_formula_u32 + ell) * BigInt::from(n_formula_u32 + ell) * BigInt::from(m + 1);
    if predicted_terms > BigInt::from(caps.term_budget)
        || predicted_work > BigInt::from(caps.term_budget)
    {
        return Err(Error::Budget {
            detail: format!(
                "formula-exact expansion needs N = {n_formula_u32}, ell = {ell} \
                 (~{predicted_terms} terms), over the budget of {}",
                caps.term_budget
            ),
            report: None,
        });
    }
    let hb = bihomogenize(&h, ell)?;
    let mut expansion = Expansion::new(&hb);
    if !expansion.advance_to(n_formula_u32, caps.term_budget) {
        return Err(Error::Budget {
            detail: "formula-exact expansion exceeded the term budget".to_string(),
            report: None,
        });
    }
    let outcome = expansion.outcome(&formula_lambda, k_formula, ell)?;
    trace.push(format!(
        "formula-exact run: lambda = {}, k = {k_formula}, N = {n_formula_u32}: {}",
        fmt_rat(&formula_lambda),
        if outcome.all_positive { "positive" } else { "NOT positive" }
    ));
    if outcome.all_positive {
        Ok((outcome, trace))
    } else {
        Err(Error::Budget {
            detail: "formula-exact run failed the positivity check; the supplied f_min or \
                     Lojasiewicz constants are likely invalid for this instance"
                .to_string(),
            report: None,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn try_pair(
    f: &Poly,
    gens: &[Poly],
    lam: &Rat,
    k: u32,
    m: u32,
    f_min: &Rat,
    caps: &ScheduleCaps,
    trace: &mut Vec<String>,
) -> Result<Option<PolyaOutcome>, Error> {
    let h = build_h(f, gens, lam, k)?;
    if h.is_zero() {
        trace.push(format!("lambda = {}, k = {k}: h = 0, skipped", fmt_rat(lam)));
        return Ok(None);
    }
    let ell = h.deg_x();
    let hn = h.norm_bullet()?;
    let n_formula = compute_polya_n(m, &BigInt::from(ell), &hn, f_min)?;
    let n_limit: u32 = n_formula.to_u32().unwrap_or(u32::MAX).min(caps.max_n);
    let hb = bihomogenize(&h, ell)?;

    // exponents 0, 1, 2, 4, ... plus the limit itself
    let mut ns: Vec<u32> = Vec::new();
    let mut v = 0u32;
    while v <= n_limit {
        ns.push(v);
        v = if v == 0 { 1 } else { v.saturating_mul(2) };
    }
    if *ns.last().unwrap() != n_limit {
        ns.push(n_limit);
    }

    let mut expansion = Expansion::new(&hb);
    let mut log = format!(
        "lambda = {}, k = {k}, ell = {ell}, N limit = {n_limit}:",
        fmt_rat(lam)
    );
    for n_try in ns {
        if !expansion.advance_to(n_try, caps.term_budget) {
            log.push_str(" budget");
            break;
        }
        let outcome = expansion.outcome(lam, k, ell)?;
        if outcome.all_positive {
            log.push_str(&format!(" N={n_try}:ok"));
            trace.push(log);
            return Ok(Some(outcome));
        }
        log.push_str(&format!(" N={n_try}:no"));
    }
    // Sampled diagnostic, never load-bearing: if h dips below f_min/2 on
    // a coarse grid of the simplex times the circle, no exponent can
    // succeed for this pair and escalation is expected.
    if let Some(low) = sampled_h_low_point(&h, f_min)? {
        log.push_str(&format!(" [h = {} sampled below f_min/2]", fmt_rat(&low)));
    }
    trace.push(log);
    Ok(None)
}

/// Coarse sample of `h` over the simplex times the circle; returns a
/// sampled value below `f_min / 2` when one exists.
fn sampled_h_low_point(h: &Poly, f_min: &Rat) -> Result<Option<Rat>, Error> {
    let n = h.nvars();
    if n != 1 {
        return Ok(None); // keep the diagnostic cheap
    }
    let threshold = f_min / crate::scalar::int(2);
    let mut worst: Option<Rat> = None;
    for i in 0..=8i64 {
        let x = [Rat::new(i.into(), 8.into())];
        for j in -4..=4i64 {
            let t = Rat::new(j.into(), 4.into());
            let t2 = &t * &t;
            let den = &t2 + Rat::one();
            let y = (&t + &t) / &den;
            let z = (Rat::one() - &t2) / &den;
            let v = h.eval_xyz(&x, &y, &z)?;
            if v < threshold && worst.as_ref().map(|w| v < *w).unwrap_or(true) {
                worst = Some(v);
            }
        }
    }
    Ok(worst)
}
