//! Independent exact certificate checker.
//!
//! Trusts nothing from the assembler: re-expands every multiplier from
//! its factored form with plain ring operations, forms the residual
//! `f - sigma_0 - sum sigma_i g_i`, checks weight positivity, and audits
//! degrees against the bound recorded in the metadata. Shares only the
//! polynomial ring with the construction side.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::assemble::Certificate;
use crate::polyring::Poly;
use crate::sos1d::SosPoly;

/// Outcome of a verification run; failures are fields, not errors.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub identity_ok: bool,
    pub sos_ok: bool,
    pub degree_ok: bool,
    /// `f - sigma_0 - sum sigma_i g_i`; zero iff `identity_ok`.
    pub residual: Poly,
    pub max_term_degree: u32,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.identity_ok && self.sos_ok && self.degree_ok
    }

    fn failed(n: usize, note: String) -> Self {
        VerificationReport {
            identity_ok: false,
            sos_ok: false,
            degree_ok: false,
            residual: Poly::zero(n),
            max_term_degree: 0,
            notes: vec![note],
        }
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "identity_ok: {}", self.identity_ok)?;
        writeln!(f, "sos_ok: {}", self.sos_ok)?;
        writeln!(f, "degree_ok: {}", self.degree_ok)?;
        writeln!(f, "max_term_degree: {}", self.max_term_degree)?;
        if !self.identity_ok {
            writeln!(f, "residual: {}", self.residual)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Structural SOS membership: every stored weight is strictly positive.
/// The empty sum (the zero multiplier) is a valid SOS.
pub fn verify_sos(s: &SosPoly) -> bool {
    s.terms().iter().all(|(w, _)| w.is_positive())
}

/// Recomputes everything about a certificate from scratch against the
/// supplied `f` and generators.
pub fn verify_certificate(f: &Poly, gens: &[Poly], cert: &Certificate) -> VerificationReport {
    let n = f.nvars();
    if cert.n != n || gens.iter().any(|g| g.nvars() != n) {
        return VerificationReport::failed(n, "arity mismatch between f, generators and certificate".into());
    }
    if cert.sigmas.len() != gens.len() + 1 {
        return VerificationReport::failed(
            n,
            format!(
                "certificate has {} multipliers for {} generators",
                cert.sigmas.len(),
                gens.len()
            ),
        );
    }
    let mut notes = Vec::new();
    if cert.f != *f {
        notes.push("certificate's embedded f differs from the supplied f".to_string());
    }
    if cert.generators != gens {
        notes.push("certificate's embedded generators differ from the supplied ones".to_string());
    }

    let sos_ok = cert.sigmas.iter().all(verify_sos);
    if !sos_ok {
        notes.push("a multiplier carries a non-positive weight".to_string());
    }

    // re-expansion from the factored form, independent of the assembler
    let mut acc = Poly::zero(n);
    for (w, q) in cert.sigmas[0].terms() {
        acc = &acc + &(q * q).scale(w);
    }
    for (sigma, g) in cert.sigmas[1..].iter().zip(gens) {
        let mut expanded = Poly::zero(n);
        for (w, q) in sigma.terms() {
            expanded = &expanded + &(q * q).scale(w);
        }
        acc = &acc + &(&expanded * g);
    }
    let residual = f - &acc;
    let identity_ok = residual.is_zero();

    let mut max_term_degree = 0u32;
    for (i, sigma) in cert.sigmas.iter().enumerate() {
        let gdeg = if i == 0 { 0 } else { gens[i - 1].deg_total() };
        for (_, q) in sigma.terms() {
            max_term_degree = max_term_degree.max(2 * q.deg_total() + gdeg);
        }
    }
    let degree_ok = match cert.degree_bound() {
        Some(bound) => {
            let ok = BigInt::from(max_term_degree) <= bound;
            if !ok {
                notes.push(format!(
                    "max term degree {max_term_degree} exceeds the recorded bound {bound}"
                ));
            }
            ok
        }
        None => {
            notes.push("no degree bounds recorded in metadata; audit skipped".to_string());
            true
        }
    };

    VerificationReport {
        identity_ok,
        sos_ok,
        degree_ok,
        residual,
        max_term_degree,
        notes,
    }
}
