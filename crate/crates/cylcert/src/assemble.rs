//! Certificate assembly: splice the expansion outcome, univariate SOS
//! decompositions and registry certificates into the multipliers
//! `sigma_0, ..., sigma_s`, lift simplex-frame certificates to the
//! unit-box frame, and transfer archimedean witnesses across the frame
//! change.
//!
//! Multipliers are stored factored as weighted squares; squares of
//! squares are never expanded during assembly. Expansion happens in the
//! verifier (and once here, as an internal guard before returning).

use num_bigint::BigInt;

use crate::error::Error;
use crate::polya::PolyaOutcome;
use crate::polyring::{parse_poly, Poly, Var};
use crate::registry::{ArchimedeanWitness, Registry};
use crate::scalar::{fmt_rat, fmt_rat_slash, parse_rat, Rat};
use crate::sos1d::{binomial_sos, sos_decompose_univariate, SosPoly};

/// Construction metadata carried by a certificate.
#[derive(Debug, Clone, Default)]
pub struct CertMeta {
    /// "simplex" (direct frame), "box-lift" (pulled back through the
    /// frame map) or "univariate" (d = 0 direct route).
    pub route: String,
    pub frame: String,
    pub lambda: Option<Rat>,
    pub k: Option<u32>,
    pub n_polya: Option<u32>,
    pub ell: Option<u32>,
    pub c9: Option<BigInt>,
    pub f_min: Option<Rat>,
    pub f_min_provenance: Option<String>,
    /// `(c1, c2, provenance)`.
    pub loja: Option<(Rat, Rat, String)>,
    pub registry_id: Option<String>,
    pub schedule_trace: Vec<String>,
}

/// An explicit quadratic-module membership witness
/// `f = sigma_0 + sigma_1 g_1 + ... + sigma_s g_s`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub n: usize,
    pub f: Poly,
    pub generators: Vec<Poly>,
    /// `s + 1` SOS multipliers, `sigma_0` first.
    pub sigmas: Vec<SosPoly>,
    pub meta: CertMeta,
    /// Per-multiplier max degree of `sigma_i * g_i` (factored form).
    pub degree_audit: Vec<u32>,
}

impl Certificate {
    /// The recorded degree bound
    /// `max(m + (2k+1) max deg g, m + N + ell + c9)`, when the metadata
    /// carries schedule values; `m` alone on the univariate route.
    pub fn degree_bound(&self) -> Option<BigInt> {
        let m = BigInt::from(self.f.deg_y());
        if self.meta.route == "univariate" {
            return Some(m);
        }
        let k = self.meta.k?;
        let n_polya = self.meta.n_polya?;
        let ell = self.meta.ell?;
        let c9 = self.meta.c9.clone()?;
        let max_deg_g = self
            .generators
            .iter()
            .map(|g| g.deg_total())
            .max()
            .unwrap_or(0);
        let module = &m + BigInt::from((2 * k + 1) * max_deg_g);
        let polya = &m + BigInt::from(n_polya) + BigInt::from(ell) + c9;
        Some(module.max(polya))
    }
}

fn audit_sigmas(sigmas: &[SosPoly], gens: &[Poly]) -> Vec<u32> {
    sigmas
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let gdeg = if i == 0 { 0 } else { gens[i - 1].deg_total() };
            s.terms()
                .iter()
                .map(|(_, q)| 2 * q.deg_total() + gdeg)
                .max()
                .unwrap_or(0)
        })
        .collect()
}

fn expand_membership(sigmas: &[SosPoly], gens: &[Poly], n: usize) -> Poly {
    let mut acc = sigmas[0].expand();
    for (s, g) in sigmas[1..].iter().zip(gens) {
        acc = &acc + &(&s.expand() * g);
    }
    let _ = n;
    acc
}

/// Splices a successful expansion outcome into a certificate for the
/// simplex frame:
///
/// * each `sigma_i` (`i >= 1`) collects
///   `lambda (y^2+1)^(m/2) ((g_i - 1)^k)^2` from the damping term, and
/// * every `b_alpha` contributes `sos(b_alpha(y,1)) * q_alpha^2 *
///   sigma_{v(alpha), i}`, where `q_alpha` is the square root of the
///   even-exponent part of the corner monomial and `v(alpha)` its parity.
///
/// The identity and degree audit are re-checked exactly before returning.
pub fn assemble_simplex(
    f: &Poly,
    gens: &[Poly],
    outcome: &PolyaOutcome,
    registry: &Registry,
) -> Result<Certificate, Error> {
    if !outcome.all_positive {
        return Err(Error::domain(
            "assemble_simplex: outcome did not pass the positivity check",
        ));
    }
    let n = f.nvars();
    if registry.n != n {
        return Err(Error::Registry(format!(
            "registry is for n = {}, instance has n = {n}",
            registry.n
        )));
    }
    let s = gens.len();
    let m = f.deg_y();
    if m % 2 != 0 {
        return Err(Error::domain("assemble_simplex: deg_y f must be even"));
    }
    let k = outcome.k_used;
    let lambda = &outcome.lambda_used;

    // registry entries are re-verified at assembly time, not just at load
    for entry in registry.entries() {
        if !crate::registry::verify_entry(entry, gens) {
            return Err(Error::Registry(format!(
                "registry entry for parity vector {:?} failed re-verification at assembly",
                entry.v
            )));
        }
    }

    let mut sigmas = vec![SosPoly::zero(n); s + 1];

    // Damping term: sigma_i += lambda * binom(m/2, j) * (y^j (g_i - 1)^k)^2.
    let bsos = binomial_sos(n, m / 2);
    for (i, g) in gens.iter().enumerate() {
        let gk = (g - &Poly::one(n)).pow(k);
        for (w, root) in bsos.terms() {
            sigmas[i + 1].push(lambda * w, root * &gk)?;
        }
    }

    // Corner terms.
    let one_minus = Poly::one_minus_sum_x(n);
    let max_e0 = outcome
        .b_coeffs
        .keys()
        .map(|a| a.exps()[0] / 2)
        .max()
        .unwrap_or(0);
    let mut om_powers = Vec::with_capacity(max_e0 as usize + 1);
    om_powers.push(Poly::one(n));
    for i in 1..=max_e0 {
        om_powers.push(&om_powers[(i - 1) as usize] * &one_minus);
    }

    for (alpha, b) in &outcome.b_coeffs {
        let exps = alpha.exps();
        let v: Vec<u8> = exps[..=n].iter().map(|&e| (e % 2) as u8).collect();
        let entry = registry.entry(&v)?;
        let b_dehom = b.subst_z_one();
        let sos_b = sos_decompose_univariate(&b_dehom)?;
        // q_alpha: square root of (1 - sum x)^(a0 - v0) * x^(abar - vbar)
        let mut half_exps = vec![0u32; n + 1];
        for (i, he) in half_exps.iter_mut().enumerate().skip(1) {
            *he = (exps[i] - u32::from(v[i])) / 2;
        }
        let q_alpha = {
            let e0 = (exps[0] - u32::from(v[0])) / 2;
            let mut xexps = vec![0u32; n + 1];
            xexps[1..].copy_from_slice(&half_exps[1..]);
            &om_powers[e0 as usize] * &Poly::x_monomial(n, &xexps)
        };
        for (i, sigma_vi) in entry.sigmas.iter().enumerate() {
            if sigma_vi.is_zero() {
                continue;
            }
            for (wb, pb) in sos_b.terms() {
                let pq = pb * &q_alpha;
                for (wr, pr) in sigma_vi.terms() {
                    sigmas[i].push(wb * wr, &pq * pr)?;
                }
            }
        }
    }

    // Internal guard: exact identity and degree audit.
    let expanded = expand_membership(&sigmas, gens, n);
    let residual = f - &expanded;
    if !residual.is_zero() {
        return Err(Error::domain(format!(
            "assemble_simplex: internal identity failure, residual has {} terms",
            residual.num_terms()
        )));
    }
    let degree_audit = audit_sigmas(&sigmas, gens);
    let c9 = crate::registry::c9(registry, gens)?;
    let meta = CertMeta {
        route: "simplex".to_string(),
        frame: "simplex".to_string(),
        lambda: Some(lambda.clone()),
        k: Some(k),
        n_polya: Some(outcome.n_used),
        ell: Some(outcome.ell),
        c9: Some(c9.clone()),
        registry_id: Some(registry.id.clone()),
        ..CertMeta::default()
    };
    let cert = Certificate {
        n,
        f: f.clone(),
        generators: gens.to_vec(),
        sigmas,
        meta,
        degree_audit,
    };
    let bound = cert.degree_bound().expect("schedule meta present");
    for &a in &cert.degree_audit {
        if BigInt::from(a) > bound {
            return Err(Error::domain(format!(
                "assemble_simplex: degree audit {a} exceeds bound {bound} (internal)"
            )));
        }
    }
    Ok(cert)
}

/// The affine frame map `x_i -> (x_i + 1) / (2n)` taking the open unit
/// box into the simplex interior.
pub fn frame_map(n: usize) -> Vec<Poly> {
    let two_n = crate::scalar::int(2 * n as i64);
    (1..=n)
        .map(|i| {
            let xi = Poly::var(n, Var::X(i));
            (&xi + &Poly::one(n)).scale(&two_n.recip())
        })
        .collect()
}

/// The inverse frame map `x_i -> 2n x_i - 1`.
pub fn frame_map_inverse(n: usize) -> Vec<Poly> {
    let two_n = crate::scalar::int(2 * n as i64);
    (1..=n)
        .map(|i| {
            let xi = Poly::var(n, Var::X(i));
            &xi.scale(&two_n) - &Poly::one(n)
        })
        .collect()
}

/// Lifts a simplex-frame certificate for the transformed data back to
/// the original frame by composing every square root and generator with
/// the frame map. Degrees are unchanged; the identity is re-checked.
pub fn lift_to_box(cert_tilde: &Certificate, n: usize) -> Result<Certificate, Error> {
    if cert_tilde.n != n {
        return Err(Error::arity("lift_to_box: arity mismatch"));
    }
    let map = frame_map(n);
    let lift_sos = |s: &SosPoly| -> Result<SosPoly, Error> {
        let mut out = SosPoly::zero(n);
        for (w, q) in s.terms() {
            out.push(w.clone(), q.affine_substitute(&map)?)?;
        }
        Ok(out)
    };
    let sigmas = cert_tilde
        .sigmas
        .iter()
        .map(&lift_sos)
        .collect::<Result<Vec<_>, _>>()?;
    let generators = cert_tilde
        .generators
        .iter()
        .map(|g| g.affine_substitute(&map))
        .collect::<Result<Vec<_>, _>>()?;
    let f = cert_tilde.f.affine_substitute(&map)?;

    let expanded = expand_membership(&sigmas, &generators, n);
    if !(&f - &expanded).is_zero() {
        return Err(Error::domain("lift_to_box: internal identity failure"));
    }
    let degree_audit = audit_sigmas(&sigmas, &generators);
    if degree_audit != cert_tilde.degree_audit {
        return Err(Error::domain(
            "lift_to_box: affine substitution changed the degree audit (internal)",
        ));
    }
    let mut meta = cert_tilde.meta.clone();
    meta.route = "box-lift".to_string();
    meta.frame = "unit-box".to_string();
    Ok(Certificate {
        n,
        f,
        generators,
        sigmas,
        meta,
        degree_audit,
    })
}

/// Transfers an archimedean witness for the original generators to the
/// simplex-frame generators `g_i(2n x - 1)`: the new bound is
/// `N/(2n^2) + 1/(2n)` and every multiplier is composed with the inverse
/// frame map and scaled by `1/(2n^2)`, plus the square completion terms
/// `(n x_i - 1)^2 / n^2` on `sigma_0`.
pub fn archimedean_transfer(
    witness: &ArchimedeanWitness,
    n: usize,
) -> Result<ArchimedeanWitness, Error> {
    if witness.sigmas.is_empty() {
        return Err(Error::domain("archimedean_transfer: empty witness"));
    }
    let inv = frame_map_inverse(n);
    let two_n_sq = crate::scalar::int(2 * (n * n) as i64);
    let scale = two_n_sq.recip();
    let mut sigmas = Vec::with_capacity(witness.sigmas.len());
    for s in &witness.sigmas {
        let mut out = SosPoly::zero(n);
        for (w, q) in s.terms() {
            out.push(w * &scale, q.affine_substitute(&inv)?)?;
        }
        sigmas.push(out);
    }
    let nn_inv = crate::scalar::int((n * n) as i64).recip();
    for i in 1..=n {
        let root = &Poly::var(n, Var::X(i)).scale(&crate::scalar::int(n as i64)) - &Poly::one(n);
        sigmas[0].push(nn_inv.clone(), root)?;
    }
    let bound = &witness.bound * &scale + crate::scalar::int(2 * n as i64).recip();
    Ok(ArchimedeanWitness { bound, sigmas })
}

// ---------------------------------------------------------------------------
// Certificate files
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
struct MetaJson {
    route: String,
    frame: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_polya: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ell: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c9: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_min: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_min_provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    loja_c1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    loja_c2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    loja_provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    registry_id: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    schedule_trace: Vec<String>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CertificateJson {
    format: String,
    n: usize,
    f: String,
    generators: Vec<String>,
    sigmas: Vec<SosJson>,
    meta: MetaJson,
    degree_audit: Vec<u32>,
}

const CERT_FORMAT: &str = "cylcert-certificate-v1";

/// Serializes a certificate to JSON with a stable field order.
pub fn certificate_to_json(cert: &Certificate) -> String {
    let json = CertificateJson {
        format: CERT_FORMAT.to_string(),
        n: cert.n,
        f: cert.f.to_string(),
        generators: cert.generators.iter().map(|g| g.to_string()).collect(),
        sigmas: cert
            .sigmas
            .iter()
            .map(|s| SosJson {
                terms: s
                    .terms()
                    .iter()
                    .map(|(w, q)| SosTermJson {
                        weight: fmt_rat_slash(w),
                        poly: q.to_string(),
                    })
                    .collect(),
            })
            .collect(),
        meta: MetaJson {
            route: cert.meta.route.clone(),
            frame: cert.meta.frame.clone(),
            lambda: cert.meta.lambda.as_ref().map(fmt_rat_slash),
            k: cert.meta.k,
            n_polya: cert.meta.n_polya,
            ell: cert.meta.ell,
            c9: cert.meta.c9.as_ref().map(|v| v.to_string()),
            f_min: cert.meta.f_min.as_ref().map(fmt_rat_slash),
            f_min_provenance: cert.meta.f_min_provenance.clone(),
            loja_c1: cert.meta.loja.as_ref().map(|(c1, _, _)| fmt_rat_slash(c1)),
            loja_c2: cert.meta.loja.as_ref().map(|(_, c2, _)| fmt_rat_slash(c2)),
            loja_provenance: cert.meta.loja.as_ref().map(|(_, _, p)| p.clone()),
            registry_id: cert.meta.registry_id.clone(),
            schedule_trace: cert.meta.schedule_trace.clone(),
        },
        degree_audit: cert.degree_audit.clone(),
    };
    serde_json::to_string_pretty(&json).expect("certificate serialization")
}

pub fn save_certificate(cert: &Certificate, path: &std::path::Path) -> Result<(), Error> {
    std::fs::write(path, certificate_to_json(cert))?;
    Ok(())
}

/// Parses a certificate file. Structure only; all semantic checking is
/// the verifier's job.
pub fn load_certificate(path: &std::path::Path) -> Result<Certificate, Error> {
    let text = std::fs::read_to_string(path)?;
    certificate_from_json(&text)
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, Error> {
    let json: CertificateJson = serde_json::from_str(text)
        .map_err(|e| Error::CertFormat(format!("certificate json: {e}")))?;
    if json.format != CERT_FORMAT {
        return Err(Error::CertFormat(format!(
            "unknown certificate format '{}'",
            json.format
        )));
    }
    let n = json.n;
    let f = parse_poly(&json.f, n)?;
    let generators = json
        .generators
        .iter()
        .map(|g| parse_poly(g, n))
        .collect::<Result<Vec<_>, _>>()?;
    let sigmas = json
        .sigmas
        .iter()
        .map(|s| {
            let terms = s
                .terms
                .iter()
                .map(|t| {
                    let w = parse_rat(&t.weight).map_err(Error::CertFormat)?;
                    let p = parse_poly(&t.poly, n)?;
                    Ok((w, p))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(SosPoly::from_raw(n, terms))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let loja = match (&json.meta.loja_c1, &json.meta.loja_c2) {
        (Some(c1), Some(c2)) => Some((
            parse_rat(c1).map_err(Error::CertFormat)?,
            parse_rat(c2).map_err(Error::CertFormat)?,
            json.meta.loja_provenance.clone().unwrap_or_default(),
        )),
        _ => None,
    };
    let meta = CertMeta {
        route: json.meta.route,
        frame: json.meta.frame,
        lambda: json
            .meta
            .lambda
            .as_deref()
            .map(parse_rat)
            .transpose()
            .map_err(Error::CertFormat)?,
        k: json.meta.k,
        n_polya: json.meta.n_polya,
        ell: json.meta.ell,
        c9: json
            .meta
            .c9
            .as_deref()
            .map(|s| s.parse::<BigInt>())
            .transpose()
            .map_err(|e| Error::CertFormat(format!("c9: {e}")))?,
        f_min: json
            .meta
            .f_min
            .as_deref()
            .map(parse_rat)
            .transpose()
            .map_err(Error::CertFormat)?,
        f_min_provenance: json.meta.f_min_provenance,
        loja,
        registry_id: json.meta.registry_id,
        schedule_trace: json.meta.schedule_trace,
    };
    Ok(Certificate {
        n,
        f,
        generators,
        sigmas,
        meta,
        degree_audit: json.degree_audit,
    })
}

/// Human-oriented one-line summary used by the CLI.
pub fn summarize(cert: &Certificate) -> String {
    let squares: usize = cert.sigmas.iter().map(|s| s.terms().len()).sum();
    let lam = cert
        .meta
        .lambda
        .as_ref()
        .map(fmt_rat)
        .unwrap_or_else(|| "-".to_string());
    format!(
        "route {}, lambda {}, k {}, N {}, ell {}, {} weighted squares, max degree {}",
        cert.meta.route,
        lam,
        cert.meta.k.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
        cert.meta
            .n_polya
            .map(|v| v.to_string())
            .unwrap_or_else(|| "-".into()),
        cert.meta.ell.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
        squares,
        cert.degree_audit.iter().max().copied().unwrap_or(0)
    )
}
