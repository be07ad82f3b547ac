//! Exact sums of squares for strictly positive univariate polynomials,
//! Sturm-sequence root counting, and the weighted-square container type.
//!
//! The decomposition pipeline: shift off an `eps * (1 + y^2 + ... +
//! y^(2r))` margin, factor the remainder numerically over the complex
//! numbers into `lc * (u^2 + v^2)` via conjugate root pairing,
//! rationalize the rank-two Gram matrix, repair its anti-diagonal sums
//! so it is an exact Gram matrix of the input again, add `eps * I`, and
//! certify positive definiteness by exact rational LDL^T. The LDL^T
//! factors are the weighted squares. Floating-point quality only affects
//! whether the PD check passes, never the correctness of an accepted
//! output; on failure the seed is polished to higher precision and the
//! loop retries.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::polyring::{Mono, Poly, Var};
use crate::scalar::{binomial, int, rat_from_f64, round_to_bits, Rat};

// ---------------------------------------------------------------------------
// Weighted squares
// ---------------------------------------------------------------------------

/// A sum `sum_j d_j * q_j^2` with positive rational weights `d_j`.
///
/// Since every positive rational is a sum of at most four rational
/// squares, each weighted square is itself a sum of squares; the weight
/// is stored, not its four-square split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosPoly {
    nvars: usize,
    terms: Vec<(Rat, Poly)>,
}

impl SosPoly {
    /// The zero sum (a valid, empty SOS).
    pub fn zero(nvars: usize) -> Self {
        SosPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Appends `weight * root^2`. The weight must be strictly positive;
    /// zero roots are dropped.
    pub fn push(&mut self, weight: Rat, root: Poly) -> Result<(), Error> {
        if !weight.is_positive() {
            return Err(Error::domain(format!(
                "sos weight must be positive, got {}",
                crate::scalar::fmt_rat(&weight)
            )));
        }
        if root.nvars() != self.nvars {
            return Err(Error::arity("sos root arity mismatch".to_string()));
        }
        if root.is_zero() {
            return Ok(());
        }
        self.terms.push((weight, root));
        Ok(())
    }

    /// Raw constructor for deserialization; the verifier re-checks weights.
    pub fn from_raw(nvars: usize, terms: Vec<(Rat, Poly)>) -> Self {
        SosPoly { nvars, terms }
    }

    pub fn terms(&self) -> &[(Rat, Poly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact expansion `sum d_j q_j^2`.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::zero(self.nvars);
        for (w, q) in &self.terms {
            acc = &acc + &(q * q).scale(w);
        }
        acc
    }

    /// Scales all weights by a positive rational.
    pub fn scale(&self, s: &Rat) -> Result<SosPoly, Error> {
        if !s.is_positive() {
            return Err(Error::domain("sos scale factor must be positive"));
        }
        Ok(SosPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(w, q)| (w * s, q.clone()))
                .collect(),
        })
    }

    /// Largest root degree; 0 when empty.
    pub fn max_root_degree(&self) -> u32 {
        self.terms.iter().map(|(_, q)| q.deg_total()).max().unwrap_or(0)
    }

    /// Degree of the expansion without expanding: `2 * max deg root`.
    /// Exact because leading weighted squares cannot cancel.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, q)| 2 * q.deg_total())
            .max()
            .unwrap_or(0)
    }
}

// ---------------------------------------------------------------------------
// Dense univariate representation (internal)
// ---------------------------------------------------------------------------

/// Dense univariate polynomial in `y`, trimmed so the last coefficient is
/// nonzero (empty = zero polynomial).
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct UniPoly(Vec<Rat>);

impl UniPoly {
    pub(crate) fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(Rat::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    /// Extracts a univariate-in-`y` view from a `Poly`; x-variables or `z`
    /// present is a domain error.
    pub(crate) fn from_poly_y(p: &Poly) -> Result<Self, Error> {
        let n = p.nvars();
        let mut coeffs = vec![Rat::zero(); p.deg_y() as usize + 1];
        for (mono, c) in p.terms() {
            let e = mono.exps();
            if e[..=n].iter().any(|&v| v > 0) || e[n + 2] > 0 {
                return Err(Error::domain(
                    "expected a univariate polynomial in y".to_string(),
                ));
            }
            coeffs[e[n + 1] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub(crate) fn to_poly(&self, nvars: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        for (i, c) in self.0.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0u32; nvars + 3];
                exps[nvars + 1] = i as u32;
                p.add_term(Mono::from_exps(exps), c.clone());
            }
        }
        p
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub(crate) fn lc(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub(crate) fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub(crate) fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub(crate) fn derivative(&self) -> UniPoly {
        if self.0.len() <= 1 {
            return UniPoly(Vec::new());
        }
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn sub_scaled(&self, other: &UniPoly, factor: &Rat, shift: usize) -> UniPoly {
        // self - factor * y^shift * other
        let len = self.0.len().max(other.0.len() + shift);
        let mut out = self.0.clone();
        out.resize(len, Rat::zero());
        for (i, c) in other.0.iter().enumerate() {
            out[i + shift] = &out[i + shift] - &(factor * c);
        }
        UniPoly::new(out)
    }

    /// Remainder of `self` by `other` (exact division over Q).
    fn rem(&self, other: &UniPoly) -> UniPoly {
        assert!(!other.is_zero());
        let mut r = self.clone();
        let dlc = other.lc();
        while !r.is_zero() && r.deg() >= other.deg() {
            let shift = r.deg() - other.deg();
            let factor = r.lc() / &dlc;
            r = r.sub_scaled(other, &factor, shift);
        }
        r
    }

    /// Divides by the content (gcd of numerators over lcm of denominators),
    /// keeping the sign: same sign pattern, small integer coefficients.
    fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in &self.0 {
            g = num_integer::Integer::gcd(&g, c.numer());
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        if g.is_zero() {
            return self.clone();
        }
        let scale = Rat::new(l, g);
        UniPoly(self.0.iter().map(|c| c * &scale).collect())
    }

}

// ---------------------------------------------------------------------------
// Sturm sequences
// ---------------------------------------------------------------------------

/// Interval for root counting.
#[derive(Debug, Clone)]
pub enum RootInterval {
    WholeLine,
    /// Half-open `(a, b]`.
    Between(Rat, Rat),
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.primitive()];
    let d = p.derivative();
    if !d.is_zero() {
        chain.push(d.primitive());
        loop {
            let k = chain.len();
            let r = chain[k - 2].rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            let mut neg = r.primitive();
            for c in &mut neg.0 {
                *c = -c.clone();
            }
            chain.push(neg);
        }
    }
    chain
}

fn sign_at(p: &UniPoly, x: &Rat) -> i8 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_inf(p: &UniPoly, positive: bool) -> i8 {
    if p.is_zero() {
        return 0;
    }
    let lc_sign = if p.lc().is_positive() { 1 } else { -1 };
    if positive || p.deg() % 2 == 0 {
        lc_sign
    } else {
        -lc_sign
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last: Option<i8> = None;
    for s in signs {
        if s == 0 {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Number of distinct real roots of `p` in the interval, by Sturm's
/// theorem over exact rationals. Finite intervals count roots in `(a, b]`.
pub fn sturm_root_count(p: &Poly, interval: &RootInterval) -> Result<usize, Error> {
    let u = UniPoly::from_poly_y(p)?;
    if u.is_zero() {
        return Err(Error::domain("sturm_root_count: zero polynomial"));
    }
    let chain = sturm_chain(&u);
    let count = match interval {
        RootInterval::WholeLine => {
            let vneg = variations(chain.iter().map(|q| sign_at_inf(q, false)));
            let vpos = variations(chain.iter().map(|q| sign_at_inf(q, true)));
            vneg - vpos
        }
        RootInterval::Between(a, b) => {
            if a > b {
                return Err(Error::domain("sturm_root_count: empty interval"));
            }
            let va = variations(chain.iter().map(|q| sign_at(q, a)));
            let vb = variations(chain.iter().map(|q| sign_at(q, b)));
            va - vb
        }
    };
    Ok(count)
}

/// Convenience: true when `p` (univariate in `y`) is strictly positive on
/// all of `R`: positive somewhere, no real roots.
pub fn is_strictly_positive(p: &Poly) -> Result<bool, Error> {
    let u = UniPoly::from_poly_y(p)?;
    if u.is_zero() {
        return Ok(false);
    }
    if !u.eval(&Rat::zero()).is_positive() {
        return Ok(false);
    }
    if u.deg() % 2 == 1 || !u.lc().is_positive() {
        return Ok(false);
    }
    Ok(sturm_root_count(p, &RootInterval::WholeLine)? == 0)
}

// ---------------------------------------------------------------------------
// SOS decomposition
// ---------------------------------------------------------------------------

/// `(y^2 + 1)^m_half` as an explicit SOS: weights `binomial(m_half, j)`
/// over squares of `y^j`.
pub fn binomial_sos(nvars: usize, m_half: u32) -> SosPoly {
    let mut s = SosPoly::zero(nvars);
    let y = Poly::var(nvars, Var::Y);
    for j in 0..=m_half {
        let w = Rat::from_integer(binomial(u64::from(m_half), u64::from(j)));
        s.push(w, y.pow(j)).expect("binomial weights are positive");
    }
    s
}

/// Decomposes a strictly positive univariate polynomial (in `y`, even
/// degree, positive leading coefficient) into weighted rational squares
/// with each square-root degree at most `deg(p)/2`. The output expands to
/// `p` exactly.
pub fn sos_decompose_univariate(p: &Poly) -> Result<SosPoly, Error> {
    let nvars = p.nvars();
    let u = UniPoly::from_poly_y(p)?;
    if u.is_zero() {
        return Err(Error::domain("sos_decompose: zero polynomial"));
    }
    if u.deg() % 2 != 0 {
        return Err(Error::domain("sos_decompose: odd degree"));
    }
    if !u.lc().is_positive() {
        return Err(Error::domain("sos_decompose: leading coefficient <= 0"));
    }
    if u.deg() == 0 {
        let mut s = SosPoly::zero(nvars);
        s.push(u.lc(), Poly::one(nvars))?;
        return Ok(s);
    }
    if sturm_root_count(p, &RootInterval::WholeLine)? != 0 {
        return Err(Error::domain(
            "sos_decompose: polynomial has a real root, not strictly positive",
        ));
    }

    let r = u.deg() / 2;

    // Margin: largest eps = 2^-j such that p - eps * (1 + y^2 + ... + y^2r)
    // is still strictly positive.
    let eps = find_margin(&u, nvars)?;
    let mut shifted = u.clone();
    for i in 0..=r {
        shifted.0[2 * i] = &shifted.0[2 * i] - &eps;
    }
    let shifted = UniPoly::new(shifted.0);

    // Precision escalation loop; correctness of an accepted result never
    // depends on the seed quality.
    for attempt in 0..6u32 {
        let polish_bits = match attempt {
            0 => None,
            a => Some(64u32 << a),
        };
        if let Some(gram) = gram_from_seed(&shifted, r, polish_bits) {
            let mut q = gram;
            for (i, row) in q.iter_mut().enumerate() {
                row[i] = &row[i] + &eps;
            }
            if let Some((weights, roots)) = ldlt(&q) {
                let mut out = SosPoly::zero(nvars);
                for (d, l_col) in weights.into_iter().zip(roots) {
                    let mut root = Poly::zero(nvars);
                    for (j, c) in l_col.into_iter().enumerate() {
                        if !c.is_zero() {
                            let mut exps = vec![0u32; nvars + 3];
                            exps[nvars + 1] = j as u32;
                            root.add_term(Mono::from_exps(exps), c);
                        }
                    }
                    if !d.is_zero() {
                        out.push(d, root)?;
                    }
                }
                debug_assert_eq!(out.expand(), *p);
                return Ok(out);
            }
        }
    }
    Err(Error::domain(
        "sos_decompose: numeric seed precision exhausted (internal)",
    ))
}

/// Largest `eps = 2^-j` (starting from a coefficient-scale guess) keeping
/// `p - eps * sum y^(2i)` strictly positive.
fn find_margin(u: &UniPoly, nvars: usize) -> Result<Rat, Error> {
    let r = u.deg() / 2;
    let scale_guess = u
        .eval(&Rat::zero())
        .min(u.lc())
        .min(Rat::one());
    let mut eps = scale_guess / int(2);
    for _ in 0..1000 {
        let mut shifted = u.clone();
        for i in 0..=r {
            shifted.0[2 * i] = &shifted.0[2 * i] - &eps;
        }
        let shifted = UniPoly::new(shifted.0);
        if !shifted.is_zero()
            && shifted.deg() == u.deg()
            && shifted.lc().is_positive()
            && shifted.eval(&Rat::zero()).is_positive()
            && sturm_root_count(&shifted.to_poly(nvars), &RootInterval::WholeLine)? == 0
        {
            return Ok(eps);
        }
        eps /= int(2);
    }
    Err(Error::domain(
        "sos_decompose: could not find a positivity margin (is the input positive?)",
    ))
}

/// Builds an exact rational Gram matrix of `shifted` from a floating
/// two-squares seed. Returns `None` when the seed is unusable (caller
/// escalates precision).
fn gram_from_seed(shifted: &UniPoly, r: usize, polish_bits: Option<u32>) -> Option<Vec<Vec<Rat>>> {
    let lc = shifted.lc();
    let monic: Vec<Rat> = shifted.0.iter().map(|c| c / &lc).collect();
    let monic_f: Vec<f64> = monic.iter().map(|c| c.to_f64()).collect::<Option<_>>()?;
    if monic_f.iter().any(|v| !v.is_finite()) {
        return None;
    }
    // u + i v = prod (y - z_j) over one root of each conjugate pair.
    // The float path is fast; the escalation path reruns the root
    // iteration in rounded rational arithmetic, where near-real roots
    // classify reliably by the exact sign of the imaginary part.
    let (ucoef, vcoef) = match polish_bits {
        None => {
            let roots = durand_kerner(&monic_f, 200)?;
            let upper: Vec<Complex64> = roots.into_iter().filter(|z| z.im > 0.0).collect();
            if upper.len() != r {
                return None;
            }
            let prod = expand_conjugate_product_f64(&upper);
            let mut us = Vec::with_capacity(r + 1);
            let mut vs = Vec::with_capacity(r + 1);
            // denominators capped at 2^48; the anti-diagonal repair below
            // keeps the Gram matrix exact whatever the rounding
            for c in prod {
                us.push(round_to_bits(&rat_from_f64(c.re)?, 48));
                vs.push(round_to_bits(&rat_from_f64(c.im)?, 48));
            }
            (us, vs)
        }
        Some(bits) => {
            let roots = durand_kerner_rational(&monic, bits)?;
            let upper: Vec<CRat> = roots
                .into_iter()
                .filter(|z| z.im.is_positive())
                .collect();
            if upper.len() != r {
                return None;
            }
            expand_conjugate_product_rat(&upper)
        }
    };

    // Q = lc * (u u^T + v v^T), then repair anti-diagonal sums so that
    // sum_{i+j=k} Q[i][j] equals the k-th coefficient of `shifted`.
    let dim = r + 1;
    let mut q = vec![vec![Rat::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut v = &ucoef[i] * &ucoef[j];
            v += &vcoef[i] * &vcoef[j];
            q[i][j] = v * &lc;
        }
    }
    for k in 0..=(2 * r) {
        let mut sum = Rat::zero();
        let lo = k.saturating_sub(r);
        let hi = k.min(r);
        for i in lo..=hi {
            sum += q[i][k - i].clone();
        }
        let deficit = shifted.coeff(k) - sum;
        if deficit.is_zero() {
            continue;
        }
        if k % 2 == 0 {
            let i = k / 2;
            q[i][i] = &q[i][i] + &deficit;
        } else {
            let i = k / 2;
            let half = deficit / int(2);
            q[i][i + 1] = &q[i][i + 1] + &half;
            q[i + 1][i] = &q[i + 1][i] + &half;
        }
    }
    Some(q)
}

/// Durand-Kerner simultaneous root iteration on a monic polynomial.
fn durand_kerner(monic: &[f64], iters: usize) -> Option<Vec<Complex64>> {
    let deg = monic.len() - 1;
    if deg == 0 {
        return Some(Vec::new());
    }
    let radius = 1.0 + monic.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|i| seed.powu(i as u32 + 1) * radius)
        .collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for c in monic[..deg].iter().rev() {
            acc = acc * z + Complex64::new(*c, 0.0);
        }
        acc
    };
    for _ in 0..iters {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() < 1e-300 {
                return None;
            }
            let delta = eval(zs[i]) / denom;
            zs[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 * radius {
            break;
        }
    }
    if zs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return None;
    }
    Some(zs)
}

/// Complex rational with denominator-capped arithmetic.
#[derive(Clone)]
struct CRat {
    re: Rat,
    im: Rat,
}

impl CRat {
    fn round(&self, bits: u32) -> CRat {
        CRat {
            re: round_to_bits(&self.re, bits),
            im: round_to_bits(&self.im, bits),
        }
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn add(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn div(&self, o: &CRat) -> Option<CRat> {
        let n = &o.re * &o.re + &o.im * &o.im;
        if n.is_zero() {
            return None;
        }
        let conj = CRat {
            re: o.re.clone(),
            im: -o.im.clone(),
        };
        let num = self.mul(&conj);
        Some(CRat {
            re: num.re / &n,
            im: num.im / &n,
        })
    }
}

/// Simultaneous root iteration in rational complex arithmetic with
/// denominators capped at `2^bits` after every update. Unlike the float
/// pass, the achievable accuracy scales with `bits`, so arbitrarily thin
/// positivity margins become reachable by escalation.
fn durand_kerner_rational(monic: &[Rat], bits: u32) -> Option<Vec<CRat>> {
    let deg = monic.len() - 1;
    if deg == 0 {
        return Some(Vec::new());
    }
    let radius = monic
        .iter()
        .fold(Rat::one(), |m, c| m.max(c.abs()))
        + Rat::one();
    let seed = CRat {
        re: Rat::new(2.into(), 5.into()),
        im: Rat::new(9.into(), 10.into()),
    };
    let mut zs: Vec<CRat> = Vec::with_capacity(deg);
    let mut acc = CRat {
        re: radius.clone(),
        im: Rat::zero(),
    };
    for _ in 0..deg {
        acc = acc.mul(&seed).round(bits);
        zs.push(acc.clone());
    }
    let eval = |z: &CRat| -> CRat {
        let mut p = CRat {
            re: Rat::one(),
            im: Rat::zero(),
        };
        for k in (0..deg).rev() {
            p = p.mul(z).add(&CRat {
                re: monic[k].clone(),
                im: Rat::zero(),
            });
        }
        p
    };
    let tol = &radius * Rat::new(BigInt::one(), BigInt::one() << (bits - 8));
    let iters = 120 + bits as usize;
    for _ in 0..iters {
        let mut moved = Rat::zero();
        for i in 0..deg {
            let mut denom = CRat {
                re: Rat::one(),
                im: Rat::zero(),
            };
            for j in 0..deg {
                if i != j {
                    denom = denom.mul(&zs[i].sub(&zs[j]));
                }
            }
            let delta = match eval(&zs[i]).div(&denom) {
                Some(d) => d,
                None => {
                    // coincident iterates: nudge apart and continue
                    zs[i].re += Rat::new(BigInt::one(), BigInt::one() << (bits / 2));
                    continue;
                }
            };
            let size = delta.re.abs() + delta.im.abs();
            if size > moved {
                moved = size;
            }
            zs[i] = zs[i].sub(&delta).round(bits);
        }
        if moved < tol {
            break;
        }
    }
    Some(zs)
}

fn expand_conjugate_product_f64(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * z;
        }
        coeffs = next;
    }
    coeffs
}

fn expand_conjugate_product_rat(roots: &[CRat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut coeffs = vec![CRat {
        re: Rat::one(),
        im: Rat::zero(),
    }];
    for z in roots {
        let mut next = vec![
            CRat {
                re: Rat::zero(),
                im: Rat::zero()
            };
            coeffs.len() + 1
        ];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(z));
        }
        coeffs = next;
    }
    (
        coeffs.iter().map(|c| c.re.clone()).collect(),
        coeffs.iter().map(|c| c.im.clone()).collect(),
    )
}

/// Exact LDL^T with positive-pivot certification. Returns
/// `(diag, columns of L^T as coefficient vectors)`; `None` when a pivot
/// is non-positive (matrix not positive definite).
fn ldlt(q: &[Vec<Rat>]) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let n = q.len();
    let mut l = vec![vec![Rat::zero(); n]; n];
    let mut d = vec![Rat::zero(); n];
    for i in 0..n {
        let mut di = q[i][i].clone();
        for k in 0..i {
            di -= &l[i][k] * &l[i][k] * &d[k];
        }
        if !di.is_positive() {
            return None;
        }
        d[i] = di;
        l[i][i] = Rat::one();
        for j in (i + 1)..n {
            let mut v = q[j][i].clone();
            for k in 0..i {
                v -= &l[j][k] * &l[i][k] * &d[k];
            }
            l[j][i] = v / &d[i];
        }
    }
    // Column i of L^T: coefficients of q_i(y) = sum_j L[j][i] y^j.
    let cols = (0..n)
        .map(|i| (0..n).map(|j| l[j][i].clone()).collect())
        .collect();
    Some((d, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::scalar::frac;

    fn yp(s: &str) -> Poly {
        parse_poly(s, 0).unwrap()
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(
            sturm_root_count(&yp("y^2 + 1"), &RootInterval::WholeLine).unwrap(),
            0
        );
        assert_eq!(
            sturm_root_count(&yp("y^2 - 1"), &RootInterval::WholeLine).unwrap(),
            2
        );
        assert_eq!(
            sturm_root_count(&yp("y^4 - y^2 + 1"), &RootInterval::WholeLine).unwrap(),
            0
        );
        // repeated roots count once
        assert_eq!(
            sturm_root_count(&yp("y^2 - 2 * y + 1"), &RootInterval::WholeLine).unwrap(),
            1
        );
        // interval (0, 2] catches the root at 1 of y^2 - 1 but not -1
        assert_eq!(
            sturm_root_count(
                &yp("y^2 - 1"),
                &RootInterval::Between(int(0), int(2))
            )
            .unwrap(),
            1
        );
        assert!(sturm_root_count(&yp("0"), &RootInterval::WholeLine).is_err());
    }

    #[test]
    fn binomial_sos_cases() {
        let s0 = binomial_sos(0, 0);
        assert_eq!(s0.expand(), yp("1"));
        let s1 = binomial_sos(0, 1);
        assert_eq!(s1.expand(), yp("y^2 + 1"));
        assert_eq!(s1.terms().len(), 2);
        let s2 = binomial_sos(0, 2);
        assert_eq!(s2.expand(), yp("y^4 + 2 * y^2 + 1"));
        let weights: Vec<Rat> = s2.terms().iter().map(|(w, _)| w.clone()).collect();
        assert_eq!(weights, vec![int(1), int(2), int(1)]);
    }

    #[test]
    fn decompose_simple() {
        for s in ["y^2 + 1", "y^4 - y^2 + 1", "2 * y^2 + 2 * y + 1"] {
            let p = yp(s);
            let sos = sos_decompose_univariate(&p).unwrap();
            assert_eq!(sos.expand(), p, "round trip for {s}");
            for (w, q) in sos.terms() {
                assert!(w.is_positive());
                assert!(2 * q.deg_total() <= p.deg_y());
            }
        }
    }

    #[test]
    fn decompose_constant_and_rejects() {
        let c = yp("7/3");
        let sos = sos_decompose_univariate(&c).unwrap();
        assert_eq!(sos.expand(), c);
        assert!(sos_decompose_univariate(&yp("y^2 - 1")).is_err());
        assert!(sos_decompose_univariate(&yp("y^3 + 1")).is_err());
        assert!(sos_decompose_univariate(&yp("0")).is_err());
        assert!(sos_decompose_univariate(&yp("-y^2 - 1")).is_err());
    }

    #[test]
    fn decompose_near_double_root_needs_polish() {
        // (y^2 - 2)^2 + 10^-18: the positivity margin is far below f64
        // resolution, so the raw float seed cannot certify and the
        // rational Newton polish has to kick in
        for (exp, base_src) in [
            (18u32, "y^4 - 4 * y^2 + 4"),
            (30, "y^4 - 4 * y^2 + 4"),
            // clustered sextic: (y^2 - 2)^2 (y^2 + 1) + tiny
            (24, "y^6 - 3 * y^4 + 4"),
        ] {
            let tiny = Rat::new(BigInt::one(), BigInt::from(10u64).pow(exp));
            let base = yp(base_src);
            let p = &base + &Poly::constant(0, tiny);
            let sos = sos_decompose_univariate(&p)
                .unwrap_or_else(|e| panic!("margin 10^-{exp} on {base_src}: {e}"));
            assert_eq!(sos.expand(), p, "margin 10^-{exp} on {base_src}");
            for (w, q) in sos.terms() {
                assert!(w.is_positive());
                assert!(2 * q.deg_total() <= p.deg_y());
            }
        }
    }

    #[test]
    fn sos_container_contracts() {
        let mut s = SosPoly::zero(1);
        assert!(s.push(int(0), yp("1").clone()).is_err());
        assert!(s.push(int(-1), yp("1").clone()).is_err());
        s.push(frac(1, 2), parse_poly("x1 + y", 1).unwrap()).unwrap();
        // zero roots are dropped
        s.push(int(5), Poly::zero(1)).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.degree(), 2);
        let e = s.expand();
        assert_eq!(
            e,
            parse_poly("1/2 * x1^2 + x1 * y + 1/2 * y^2", 1).unwrap()
        );
    }

    #[test]
    fn strictly_positive_predicate() {
        assert!(is_strictly_positive(&yp("y^2 + 1")).unwrap());
        assert!(!is_strictly_positive(&yp("y^2")).unwrap());
        assert!(!is_strictly_positive(&yp("y^3 + 10")).unwrap());
        assert!(!is_strictly_positive(&yp("0")).unwrap());
    }
}
