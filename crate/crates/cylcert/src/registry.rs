//! Registry of corner-monomial certificates and the archimedean witness.
//!
//! For every parity vector `v` in `{0,1}^(n+1)` the splicing step needs an
//! explicit representation
//!
//! ```text
//! (1 - x1 - ... - xn)^(v0) * x^(vbar) = sigma_v0 + sigma_v1 g_1 + ... + sigma_vs g_s
//! ```
//!
//! with SOS multipliers. These are fixed data of the generator family:
//! closed forms are built in for `n = 1` with affine generators, arbitrary
//! registries load from JSON (re-verified exactly before acceptance), and
//! an experimental constant-multiplier search may fill gaps for other
//! shapes. The registry also carries an optional archimedean witness
//! `N - x1^2 - ... - xn^2 = sigma_0 + sum sigma_i g_i`, verified when
//! present but never searched for.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::polyring::{parse_poly, Poly, Var};
use crate::scalar::{fmt_rat, int, parse_rat, Rat};
use crate::sos1d::SosPoly;

/// Certificate for one corner monomial `(1 - sum x)^(v0) * x^(vbar)`.
#[derive(Debug, Clone)]
pub struct MonomialCert {
    /// Parity vector `(v0, v1..vn)`, entries 0 or 1.
    pub v: Vec<u8>,
    /// `s + 1` SOS multipliers `sigma_v0, sigma_v1, ..., sigma_vs`.
    pub sigmas: Vec<SosPoly>,
}

/// Witness that the quadratic module is archimedean.
#[derive(Debug, Clone)]
pub struct ArchimedeanWitness {
    pub bound: Rat,
    /// `s + 1` SOS multipliers with `bound - sum x_i^2 = sigma_0 + sum sigma_i g_i`.
    pub sigmas: Vec<SosPoly>,
}

/// Immutable store of monomial certificates for one generator family.
#[derive(Debug, Clone)]
pub struct Registry {
    pub id: String,
    pub n: usize,
    entries: Vec<MonomialCert>, // indexed by parity bitmask
    pub archimedean: Option<ArchimedeanWitness>,
}

/// The corner monomial `(1 - sum x)^(v0) * x^(vbar)`.
pub fn corner_monomial(n: usize, v: &[u8]) -> Poly {
    assert_eq!(v.len(), n + 1);
    let mut p = Poly::one(n);
    if v[0] == 1 {
        p = &p * &Poly::one_minus_sum_x(n);
    }
    for (i, &vi) in v.iter().enumerate().skip(1) {
        if vi == 1 {
            p = &p * &Poly::var(n, Var::X(i));
        }
    }
    p
}

fn mask_of(v: &[u8]) -> usize {
    v.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

impl Registry {
    pub fn new(id: String, n: usize, mut certs: Vec<MonomialCert>) -> Result<Self, Error> {
        let total = 1usize << (n + 1);
        if certs.len() != total {
            let have: Vec<usize> = certs.iter().map(|c| mask_of(&c.v)).collect();
            let missing: Vec<String> = (0..total)
                .filter(|m| !have.contains(m))
                .map(|m| format!("{:0width$b}", m, width = n + 1))
                .collect();
            return Err(Error::Registry(format!(
                "incomplete registry: missing parity vectors [{}]",
                missing.join(", ")
            )));
        }
        certs.sort_by_key(|c| mask_of(&c.v));
        for (i, c) in certs.iter().enumerate() {
            if mask_of(&c.v) != i {
                return Err(Error::Registry("duplicate parity vector".to_string()));
            }
        }
        Ok(Registry {
            id,
            n,
            entries: certs,
            archimedean: None,
        })
    }

    pub fn entry(&self, v: &[u8]) -> Result<&MonomialCert, Error> {
        self.entries.get(mask_of(v)).ok_or_else(|| {
            Error::Registry(format!("no certificate for parity vector {v:?}"))
        })
    }

    pub fn entries(&self) -> &[MonomialCert] {
        &self.entries
    }
}

/// Exact check of one entry: residual zero and all weights positive.
pub fn verify_entry(cert: &MonomialCert, gens: &[Poly]) -> bool {
    let n = cert.v.len() - 1;
    if cert.sigmas.len() != gens.len() + 1 {
        return false;
    }
    for s in &cert.sigmas {
        for (w, _) in s.terms() {
            if !w.is_positive() {
                return false;
            }
        }
    }
    let mut acc = cert.sigmas[0].expand();
    for (s, g) in cert.sigmas[1..].iter().zip(gens) {
        acc = &acc + &(&s.expand() * g);
    }
    let target = corner_monomial(n, &cert.v);
    (&target - &acc).is_zero()
}

/// Exact check of an archimedean witness against the generators.
pub fn verify_archimedean(w: &ArchimedeanWitness, n: usize, gens: &[Poly]) -> bool {
    if w.sigmas.len() != gens.len() + 1 {
        return false;
    }
    for s in &w.sigmas {
        for (wt, _) in s.terms() {
            if !wt.is_positive() {
                return false;
            }
        }
    }
    let mut target = Poly::constant(n, w.bound.clone());
    for i in 1..=n {
        let xi = Poly::var(n, Var::X(i));
        target = &target - &(&xi * &xi);
    }
    let mut acc = w.sigmas[0].expand();
    for (s, g) in w.sigmas[1..].iter().zip(gens) {
        acc = &acc + &(&s.expand() * g);
    }
    (&target - &acc).is_zero()
}

/// Largest `deg(sigma_vi * g_i)` over all entries, with `g_0 = 1`.
pub fn c9(reg: &Registry, gens: &[Poly]) -> Result<BigInt, Error> {
    if reg.entries.len() != 1 << (reg.n + 1) {
        return Err(Error::Registry("incomplete registry".to_string()));
    }
    let mut best: u32 = 0;
    for cert in &reg.entries {
        for (i, sigma) in cert.sigmas.iter().enumerate() {
            if sigma.is_zero() {
                continue;
            }
            let gdeg = if i == 0 { 0 } else { gens[i - 1].deg_total() };
            best = best.max(sigma.degree() + gdeg);
        }
    }
    Ok(BigInt::from(best))
}

// ---------------------------------------------------------------------------
// Built-in closed forms for n = 1 with affine generators
// ---------------------------------------------------------------------------

/// Outcome of the builtin constructor: a registry or a reason it does not
/// apply to this generator family.
pub enum BuiltinResult {
    Supported(Registry),
    Unsupported(String),
}

struct AffineGen {
    index: usize,
    slope: Rat,    // coefficient of x1
    constant: Rat, // constant term
}

/// Closed-form registry for `n = 1` and affine generators cutting out an
/// interval `[b, a]` inside `[0, 1]`. Scalar multiples of `x - b` and
/// `a - x` are accepted; redundant affine generators get zero multipliers.
/// Everything is verified exactly before being returned.
pub fn builtin_certs_n1(gens: &[Poly]) -> Result<BuiltinResult, Error> {
    if gens.is_empty() {
        return Ok(BuiltinResult::Unsupported("no generators".into()));
    }
    let n = gens[0].nvars();
    if n != 1 {
        return Ok(BuiltinResult::Unsupported(format!(
            "builtin registry supports n = 1 only, got n = {n}"
        )));
    }
    let mut lowers: Vec<AffineGen> = Vec::new(); // slope > 0: x >= -const/slope
    let mut uppers: Vec<AffineGen> = Vec::new(); // slope < 0: x <= const/(-slope)
    for (i, g) in gens.iter().enumerate() {
        if !g.is_x_only() || g.deg_total() > 1 {
            return Ok(BuiltinResult::Unsupported(format!(
                "generator {} is not affine in x1",
                i + 1
            )));
        }
        let constant = g.constant_term();
        let slope = g.eval_x(&[int(1)])? - &constant;
        if slope.is_zero() {
            if constant.is_negative() {
                return Ok(BuiltinResult::Unsupported(format!(
                    "generator {} is a negative constant; S is empty",
                    i + 1
                )));
            }
            continue; // vacuous constant generator
        }
        let ag = AffineGen {
            index: i,
            slope: slope.clone(),
            constant,
        };
        if slope.is_positive() {
            lowers.push(ag);
        } else {
            uppers.push(ag);
        }
    }
    // tightest bounds: b = max(-c/slope) over lowers, a = min(c/(-slope))
    let lower = lowers.into_iter().max_by(|p, q| {
        let bp = -&p.constant / &p.slope;
        let bq = -&q.constant / &q.slope;
        bp.cmp(&bq)
    });
    let upper = uppers.into_iter().min_by(|p, q| {
        let ap = &p.constant / (-&p.slope);
        let aq = &q.constant / (-&q.slope);
        ap.cmp(&aq)
    });
    let (lower, upper) = match (lower, upper) {
        (Some(l), Some(u)) => (l, u),
        _ => {
            return Ok(BuiltinResult::Unsupported(
                "need both a lower and an upper affine generator".into(),
            ))
        }
    };
    let b = -&lower.constant / &lower.slope;
    let a = &upper.constant / (-&upper.slope);
    if b.is_negative() || a > Rat::one() || b >= a {
        return Ok(BuiltinResult::Unsupported(format!(
            "interval [{}, {}] is not inside [0, 1]",
            fmt_rat(&b),
            fmt_rat(&a)
        )));
    }
    let beta1 = lower.slope.clone(); // g_lo = beta1 (x - b)
    let beta2 = -upper.slope.clone(); // g_up = beta2 (a - x)
    let w = &a - &b;
    let s = gens.len();
    let one = Poly::one(1);
    let x = Poly::var(1, Var::X(1));
    let a_minus_x = &Poly::constant(1, a.clone()) - &x;
    let x_minus_b = &x - &Poly::constant(1, b.clone());

    let mut certs: Vec<MonomialCert> = Vec::new();

    // v = (0, 0): 1 = 1^2
    {
        let mut sig = vec![SosPoly::zero(1); s + 1];
        sig[0].push(Rat::one(), one.clone())?;
        certs.push(MonomialCert {
            v: vec![0, 0],
            sigmas: sig,
        });
    }
    // v = (0, 1): x = b + (1/beta1) g_lo
    {
        let mut sig = vec![SosPoly::zero(1); s + 1];
        if b.is_positive() {
            sig[0].push(b.clone(), one.clone())?;
        }
        sig[lower.index + 1].push(beta1.recip(), one.clone())?;
        certs.push(MonomialCert {
            v: vec![0, 1],
            sigmas: sig,
        });
    }
    // v = (1, 0): 1 - x = (1 - a) + (1/beta2) g_up
    {
        let mut sig = vec![SosPoly::zero(1); s + 1];
        let rem = Rat::one() - &a;
        if rem.is_positive() {
            sig[0].push(rem, one.clone())?;
        }
        sig[upper.index + 1].push(beta2.recip(), one.clone())?;
        certs.push(MonomialCert {
            v: vec![1, 0],
            sigmas: sig,
        });
    }
    // v = (1, 1): x (1 - x) = b(1-a) + [(1-a) + (a-x)^2 / w] / beta1 * g_lo
    //                                + [b + (x-b)^2 / w] / beta2 * g_up
    {
        let mut sig = vec![SosPoly::zero(1); s + 1];
        let c0 = &b * &(Rat::one() - &a);
        if c0.is_positive() {
            sig[0].push(c0, one.clone())?;
        }
        let rem1 = (Rat::one() - &a) / &beta1;
        if rem1.is_positive() {
            sig[lower.index + 1].push(rem1, one.clone())?;
        }
        sig[lower.index + 1].push((&w * &beta1).recip(), a_minus_x.clone())?;
        let rem2 = &b / &beta2;
        if rem2.is_positive() {
            sig[upper.index + 1].push(rem2, one.clone())?;
        }
        sig[upper.index + 1].push((&w * &beta2).recip(), x_minus_b.clone())?;
        certs.push(MonomialCert {
            v: vec![1, 1],
            sigmas: sig,
        });
    }

    for cert in &certs {
        if !verify_entry(cert, gens) {
            return Err(Error::Registry(format!(
                "builtin certificate for v = {:?} failed exact verification (internal)",
                cert.v
            )));
        }
    }
    let mut reg = Registry::new(
        format!("builtin-n1[{},{}]", fmt_rat(&b), fmt_rat(&a)),
        1,
        certs,
    )?;

    // Archimedean witness: 1 - x^2 = (1 - a^2) + (a + b)/beta2 * g_up
    //   + (a-x)^2/(w beta1) * g_lo + (x-b)^2/(w beta2) * g_up
    {
        let mut sig = vec![SosPoly::zero(1); s + 1];
        let c0 = Rat::one() - &a * &a;
        if c0.is_positive() {
            sig[0].push(c0, one.clone())?;
        }
        let lin = (&a + &b) / &beta2;
        if lin.is_positive() {
            sig[upper.index + 1].push(lin, one.clone())?;
        }
        sig[lower.index + 1].push((&w * &beta1).recip(), a_minus_x.clone())?;
        sig[upper.index + 1].push((&w * &beta2).recip(), x_minus_b.clone())?;
        let witness = ArchimedeanWitness {
            bound: Rat::one(),
            sigmas: sig,
        };
        if verify_archimedean(&witness, 1, gens) {
            reg.archimedean = Some(witness);
        }
    }
    Ok(BuiltinResult::Supported(reg))
}

// ---------------------------------------------------------------------------
// Experimental constant-multiplier fallback
// ---------------------------------------------------------------------------

/// Tiny experimental search: looks for constant multipliers `c_i >= 0`
/// such that the corner monomial minus `c_i g_i` is a non-negative
/// constant. Covers only trivially redundant generator families; returns
/// `None` when no combination is found.
pub fn constant_fallback_entry(n: usize, v: &[u8], gens: &[Poly]) -> Option<MonomialCert> {
    let target = corner_monomial(n, v);
    if target.deg_total() == 0 {
        let c = target.constant_term();
        if c.is_negative() {
            return None;
        }
        let mut sigmas = vec![SosPoly::zero(n); gens.len() + 1];
        if c.is_positive() {
            sigmas[0].push(c, Poly::one(n)).ok()?;
        }
        return Some(MonomialCert {
            v: v.to_vec(),
            sigmas,
        });
    }
    // single-generator match: target = c * g_i + r with r a non-negative
    // constant, for c on a small grid
    for (i, g) in gens.iter().enumerate() {
        for num in 1..=8i64 {
            for den in 1..=4i64 {
                let c = Rat::new(num.into(), den.into());
                let r = &target - &g.scale(&c);
                if r.deg_total() == 0 && !r.constant_term().is_negative() {
                    let mut sigmas = vec![SosPoly::zero(n); gens.len() + 1];
                    let rc = r.constant_term();
                    if rc.is_positive() {
                        sigmas[0].push(rc, Poly::one(n)).ok()?;
                    }
                    sigmas[i + 1].push(c, Poly::one(n)).ok()?;
                    let cert = MonomialCert {
                        v: v.to_vec(),
                        sigmas,
                    };
                    if verify_entry(&cert, gens) {
                        return Some(cert);
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// JSON registry files
// ---------------------------------------------------------------------------

#[derive(serde::Serialize, serde::Deserialize)]
struct SosTermJson {
    weight: String,
    poly: String,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct SosJson {
    terms: Vec<SosTermJson>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct EntryJson {
    v: Vec<u8>,
    sigmas: Vec<SosJson>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct WitnessJson {
    bound: String,
    sigmas: Vec<SosJson>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct RegistryJson {
    id: String,
    n: usize,
    entries: Vec<EntryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    archimedean: Option<WitnessJson>,
}

fn sos_to_json(s: &SosPoly) -> SosJson {
    SosJson {
        terms: s
            .terms()
            .iter()
            .map(|(w, q)| SosTermJson {
                weight: crate::scalar::fmt_rat_slash(w),
                poly: q.to_string(),
            })
            .collect(),
    }
}

fn sos_from_json(j: &SosJson, n: usize) -> Result<SosPoly, Error> {
    let mut terms = Vec::with_capacity(j.terms.len());
    for t in &j.terms {
        let w = parse_rat(&t.weight).map_err(Error::CertFormat)?;
        let p = parse_poly(&t.poly, n)?;
        terms.push((w, p));
    }
    Ok(SosPoly::from_raw(n, terms))
}

/// Loads a registry from JSON and re-verifies every entry against the
/// given generators before acceptance. Fails listing missing parity
/// vectors, or naming the first entry whose identity does not hold.
pub fn load_registry(path: &std::path::Path, n: usize, gens: &[Poly]) -> Result<Registry, Error> {
    let text = std::fs::read_to_string(path)?;
    let parsed: RegistryJson = serde_json::from_str(&text)
        .map_err(|e| Error::CertFormat(format!("registry json: {e}")))?;
    if parsed.n != n {
        return Err(Error::Registry(format!(
            "registry is for n = {}, problem has n = {n}",
            parsed.n
        )));
    }
    let mut certs = Vec::with_capacity(parsed.entries.len());
    for e in &parsed.entries {
        if e.v.len() != n + 1 || e.v.iter().any(|&b| b > 1) {
            return Err(Error::Registry(format!("bad parity vector {:?}", e.v)));
        }
        let sigmas = e
            .sigmas
            .iter()
            .map(|s| sos_from_json(s, n))
            .collect::<Result<Vec<_>, _>>()?;
        let cert = MonomialCert {
            v: e.v.clone(),
            sigmas,
        };
        if !verify_entry(&cert, gens) {
            return Err(Error::Registry(format!(
                "certificate for parity vector {:?} failed exact verification",
                e.v
            )));
        }
        certs.push(cert);
    }
    let mut reg = Registry::new(format!("file:{}", path.display()), n, certs)?;
    if let Some(wj) = &parsed.archimedean {
        let witness = ArchimedeanWitness {
            bound: parse_rat(&wj.bound).map_err(Error::CertFormat)?,
            sigmas: wj
                .sigmas
                .iter()
                .map(|s| sos_from_json(s, n))
                .collect::<Result<Vec<_>, _>>()?,
        };
        if !verify_archimedean(&witness, n, gens) {
            return Err(Error::Registry(
                "archimedean witness failed exact verification".to_string(),
            ));
        }
        reg.archimedean = Some(witness);
    }
    Ok(reg)
}

/// Serializes a registry to the JSON file format.
pub fn save_registry(reg: &Registry, path: &std::path::Path) -> Result<(), Error> {
    let json = RegistryJson {
        id: reg.id.clone(),
        n: reg.n,
        entries: reg
            .entries
            .iter()
            .map(|c| EntryJson {
                v: c.v.clone(),
                sigmas: c.sigmas.iter().map(sos_to_json).collect(),
            })
            .collect(),
        archimedean: reg.archimedean.as_ref().map(|w| WitnessJson {
            bound: crate::scalar::fmt_rat_slash(&w.bound),
            sigmas: w.sigmas.iter().map(sos_to_json).collect(),
        }),
    };
    let text = serde_json::to_string_pretty(&json)
        .map_err(|e| Error::CertFormat(format!("registry json: {e}")))?;
    std::fs::write(path, text)?;
    Ok(())
}
