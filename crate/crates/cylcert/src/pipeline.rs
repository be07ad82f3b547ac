//! End-to-end orchestration: hypothesis checks in the declared frame,
//! certified positivity margin, frame transform to the simplex, adaptive
//! core, assembly, optional lift back to the unit box, and a final
//! independent verification.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::assemble::{assemble_simplex, frame_map_inverse, lift_to_box, CertMeta, Certificate};
use crate::bounds::{
    build_bound_report, compute_k, compute_lambda, compute_polya_n, h_norm_bound_value,
    BoundReport, InstanceParams, LojaConstants, LojaProvenance,
};
use crate::error::{Error, HypothesisViolation};
use crate::polya::{adaptive_certify_core, ScheduleCaps};
use crate::polyring::Poly;
use crate::problem::ProblemFile;
use crate::region::{
    certified_min_with, check_fully_mic_with, estimate_loja, Frame, FullyMic, GridOptions,
    MinMethod, SemialgebraicSet,
};
use crate::registry::{builtin_certs_n1, load_registry, BuiltinResult, MonomialCert, Registry};
use crate::scalar::{fmt_rat, frac, int, Rat};
use crate::sos1d::{is_strictly_positive, sos_decompose_univariate, SosPoly};
use crate::verify::{verify_certificate, VerificationReport};

/// Everything `certify` produces.
pub struct CertifyOutput {
    pub certificate: Certificate,
    /// Schedule constants and explicit bounds; absent on the univariate
    /// route where none of them arise.
    pub report: Option<BoundReport>,
    pub verification: VerificationReport,
}

/// `bounds` output: the constants, or a note that the instance takes the
/// direct univariate route.
pub enum BoundsOutput {
    Univariate { m: u32 },
    Report(Box<BoundReport>),
}

struct Resolved {
    /// Simplex-frame data (identical to the input for simplex problems).
    f_t: Poly,
    gens_t: Vec<Poly>,
    f_min: Rat,
    f_min_provenance: String,
    loja: LojaConstants,
    registry: Registry,
    m: u32,
    d: u32,
    notes: Vec<String>,
}

fn grid_options(p: &ProblemFile) -> GridOptions {
    let mut opts = GridOptions::default();
    if let Some(step) = &p.grid_step {
        opts.x_step_start = step.clone();
        if opts.x_step_finest > opts.x_step_start {
            opts.x_step_finest = opts.x_step_start.clone();
        }
    }
    opts
}

fn target_gap(p: &ProblemFile) -> Rat {
    p.target_gap.clone().unwrap_or_else(|| frac(1, 8))
}

fn resolve_registry(p: &ProblemFile, gens_t: &[Poly]) -> Result<Registry, Error> {
    if let Some(path) = &p.registry_path {
        return load_registry(path, p.n, gens_t);
    }
    match builtin_certs_n1(gens_t)? {
        BuiltinResult::Supported(reg) => Ok(reg),
        BuiltinResult::Unsupported(why) => {
            // Experimental constant-multiplier fallback; usually partial.
            let total = 1usize << (p.n + 1);
            let mut certs: Vec<MonomialCert> = Vec::new();
            for mask in 0..total {
                let v: Vec<u8> = (0..=p.n)
                    .rev()
                    .map(|bit| ((mask >> bit) & 1) as u8)
                    .collect();
                match crate::registry::constant_fallback_entry(p.n, &v, gens_t) {
                    Some(c) => certs.push(c),
                    None => {
                        return Err(Error::Registry(format!(
                            "no certificate source for these generators: builtin says '{why}', \
                             and the experimental fallback cannot cover parity vector {v:?}; \
                             supply one with 'registry:' or --registry"
                        )))
                    }
                }
            }
            let mut reg = Registry::new("constant-fallback (experimental)".to_string(), p.n, certs)?;
            reg.archimedean = None;
            Ok(reg)
        }
    }
}

fn resolve(p: &ProblemFile) -> Result<Resolved, Error> {
    let set = SemialgebraicSet::new(p.n, p.generators.clone(), p.frame)?;
    let opts = grid_options(p);
    let gap = target_gap(p);
    let mut notes = Vec::new();

    let m = p.f.deg_y();
    let d = p.f.deg_x();

    // Fully-m-ic hypothesis, checked in the declared frame so witnesses
    // come out in the caller's coordinates.
    let leading_min = match check_fully_mic_with(&p.f, &set, &gap, &opts)? {
        FullyMic::Pass { leading_min, .. } => Some(leading_min.lower_bound),
        FullyMic::Violation(v) => return Err(Error::Hypothesis(v)),
    };

    // Positivity margin over S x C (invariant under the frame change).
    let (f_min, f_min_provenance) = match &p.f_min {
        Some(v) => (v.clone(), "user-supplied".to_string()),
        None => match certified_min_with(&p.f, &set, &gap, &opts) {
            Ok(cm) => {
                let prov = match cm.method {
                    MinMethod::LipschitzGrid => format!(
                        "lipschitz-grid (step {})",
                        fmt_rat(&cm.witness_grid_step)
                    ),
                    MinMethod::UserSupplied => "user-supplied".to_string(),
                };
                (cm.lower_bound, prov)
            }
            Err(Error::NotCertified(detail)) => {
                return Err(Error::Hypothesis(
                    HypothesisViolation::PositivityUncertified { detail },
                ))
            }
            Err(e) => return Err(e),
        },
    };

    // Simplex-frame data.
    let (f_t, gens_t) = match p.frame {
        Frame::SimplexInterior => (p.f.clone(), p.generators.clone()),
        Frame::OpenUnitBox => {
            let inv = frame_map_inverse(p.n);
            let f_t = p.f.affine_substitute(&inv)?;
            let gens_t = p
                .generators
                .iter()
                .map(|g| g.affine_substitute(&inv))
                .collect::<Result<Vec<_>, _>>()?;
            (f_t, gens_t)
        }
    };

    // Evaluation-bound consistency: f_min <= |f_t| (m+1)(d+1) must hold
    // for any true lower bound of the minimum over S x C.
    let eval_bound = &f_t.norm_bullet()? * int(i64::from(m) + 1) * int(i64::from(d) + 1);
    if f_min > eval_bound {
        return Err(Error::NotCertified(format!(
            "f_min = {} exceeds the evaluation bound {}; the supplied value cannot be a \
             lower bound for the minimum over S x C",
            fmt_rat(&f_min),
            fmt_rat(&eval_bound)
        )));
    }

    let set_t = SemialgebraicSet::new(p.n, gens_t.clone(), Frame::SimplexInterior)?;
    let loja = match &p.loja {
        Some((c1, c2)) => LojaConstants::user(c1.clone(), c2.clone())?,
        None => {
            let step = p.grid_step.clone().unwrap_or_else(|| frac(1, 64));
            estimate_loja(&set_t, &step, &int(2))?
        }
    };

    let registry = resolve_registry(p, &gens_t)?;
    if let Some(lm) = &leading_min {
        notes.push(format!(
            "leading y-coefficient certified >= {} on S",
            fmt_rat(lm)
        ));
    }
    if let Some(w) = &registry.archimedean {
        notes.push(format!(
            "archimedean witness verified (bound {})",
            fmt_rat(&w.bound)
        ));
    }

    Ok(Resolved {
        f_t,
        gens_t,
        f_min,
        f_min_provenance,
        loja,
        registry,
        m,
        d,
        notes,
    })
}

fn instance_params(p: &ProblemFile, r: &Resolved) -> Result<InstanceParams, Error> {
    let max_deg_g = r.gens_t.iter().map(|g| g.deg_total()).max().unwrap_or(0);
    let mut max_gen_factor = Rat::one();
    for g in &r.gens_t {
        let factor =
            int(i64::from(g.deg_total()) + 1) * (g.norm_weighted()? + Rat::one());
        if factor > max_gen_factor {
            max_gen_factor = factor;
        }
    }
    Ok(InstanceParams {
        n: p.n,
        s: r.gens_t.len(),
        d: r.d,
        m: r.m,
        max_deg_g,
        max_gen_factor,
        norm_f_bullet: r.f_t.norm_bullet()?,
        f_min: r.f_min.clone(),
        loja: r.loja.clone(),
    })
}

/// Runs the whole construction on a problem instance.
pub fn certify_problem(p: &ProblemFile) -> Result<CertifyOutput, Error> {
    // d = 0: f is a polynomial in y alone; decompose directly.
    if p.f.deg_x() == 0 {
        return certify_univariate(p);
    }

    let r = resolve(p)?;

    let (outcome, mut trace) = match adaptive_certify_core(
        &r.f_t,
        &r.gens_t,
        &r.f_min,
        &r.loja,
        &p.caps,
    ) {
        Ok(v) => v,
        Err(Error::Budget { detail, report }) => {
            // attach the explicit bound report for diagnosis
            let report = match report {
                Some(rep) => Some(rep),
                None => formula_report(p, &r).ok().map(Box::new),
            };
            return Err(Error::Budget { detail, report });
        }
        Err(e) => return Err(e),
    };
    trace.extend(r.notes.iter().cloned());

    let cert_simplex = assemble_simplex(&r.f_t, &r.gens_t, &outcome, &r.registry)?;
    let mut cert = match p.frame {
        Frame::SimplexInterior => cert_simplex,
        Frame::OpenUnitBox => {
            let lifted = lift_to_box(&cert_simplex, p.n)?;
            if lifted.f != p.f {
                return Err(Error::domain(
                    "pipeline: lifted certificate does not reproduce f (internal)",
                ));
            }
            lifted
        }
    };
    cert.meta.f_min = Some(r.f_min.clone());
    cert.meta.f_min_provenance = Some(r.f_min_provenance.clone());
    cert.meta.loja = Some((
        r.loja.c1.clone(),
        r.loja.c2.clone(),
        match r.loja.provenance {
            LojaProvenance::UserSupplied => "user-supplied".to_string(),
            LojaProvenance::GridEstimated => "grid-estimated".to_string(),
        },
    ));
    cert.meta.schedule_trace = trace;

    let params = instance_params(p, &r)?;
    let c9 = crate::registry::c9(&r.registry, &r.gens_t)?;
    let report = build_bound_report(
        &params,
        &outcome.lambda_used,
        &BigInt::from(outcome.k_used),
        &BigInt::from(outcome.ell),
        &BigInt::from(outcome.n_used),
        &c9,
    )?;

    let verification = verify_certificate(&p.f, &p.generators, &cert);
    if !verification.all_ok() {
        return Err(Error::domain(format!(
            "pipeline: assembled certificate failed independent verification (internal): \
             identity {}, sos {}, degree {}",
            verification.identity_ok, verification.sos_ok, verification.degree_ok
        )));
    }
    Ok(CertifyOutput {
        certificate: cert,
        report: Some(report),
        verification,
    })
}

fn certify_univariate(p: &ProblemFile) -> Result<CertifyOutput, Error> {
    let n = p.n;
    let m = p.f.deg_y();
    // validates the generators even though the multipliers are zero
    SemialgebraicSet::new(n, p.generators.clone(), p.frame)?;
    if !is_strictly_positive(&p.f)? {
        return Err(Error::Hypothesis(HypothesisViolation::UnivariateNotPositive {
            detail: format!("deg_y f = {m}; f must be strictly positive on R"),
        }));
    }
    let sos = sos_decompose_univariate(&p.f)?;
    let s = p.generators.len();
    let mut sigmas = vec![SosPoly::zero(n); s + 1];
    sigmas[0] = sos;
    let degree_audit: Vec<u32> = sigmas
        .iter()
        .enumerate()
        .map(|(i, sig)| {
            let gdeg = if i == 0 {
                0
            } else {
                p.generators[i - 1].deg_total()
            };
            sig.terms()
                .iter()
                .map(|(_, q)| 2 * q.deg_total() + gdeg)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let cert = Certificate {
        n,
        f: p.f.clone(),
        generators: p.generators.clone(),
        sigmas,
        meta: CertMeta {
            route: "univariate".to_string(),
            frame: match p.frame {
                Frame::SimplexInterior => "simplex".to_string(),
                Frame::OpenUnitBox => "unit-box".to_string(),
            },
            ..CertMeta::default()
        },
        degree_audit,
    };
    let verification = verify_certificate(&p.f, &p.generators, &cert);
    if !verification.all_ok() {
        return Err(Error::domain(
            "pipeline: univariate certificate failed verification (internal)",
        ));
    }
    Ok(CertifyOutput {
        certificate: cert,
        report: None,
        verification,
    })
}

/// The formula-side report without running the pipeline: schedule
/// constants from the explicit formulas, the generic `ell`, and `N`
/// evaluated against the norm bound for `h` (or the exact `h` when it is
/// cheap to build).
fn formula_report(p: &ProblemFile, r: &Resolved) -> Result<BoundReport, Error> {
    let params = instance_params(p, r)?;
    let lambda = compute_lambda(&r.loja, p.n, &params.norm_f_bullet, r.m, r.d, &r.f_min)?;
    let k = compute_k(&lambda, params.s, &r.f_min)?;
    let two_k_plus_1 = BigInt::from(2u32) * &k + BigInt::one();
    let ell_generic = BigInt::from(r.d).max(&two_k_plus_1 * BigInt::from(params.max_deg_g));

    // exact h when affordable, otherwise the generic degree and the
    // norm bound
    let (ell, h_norm) = match k.to_u32() {
        Some(k32)
            if u64::from(2 * k32) * u64::from(params.max_deg_g)
                <= 2_000 =>
        {
            let h = crate::polya::build_h(&r.f_t, &r.gens_t, &lambda, k32)?;
            (BigInt::from(h.deg_x()), h.norm_bullet()?)
        }
        _ => (ell_generic.clone(), h_norm_bound_value(&params)?),
    };
    let n_polya = compute_polya_n(r.m, &ell, &h_norm, &r.f_min)?;
    let c9 = crate::registry::c9(&r.registry, &r.gens_t)?;
    build_bound_report(&params, &lambda, &k, &ell, &n_polya, &c9)
}

/// Evaluates the schedule constants without running the pipeline.
pub fn bounds_for_problem(p: &ProblemFile) -> Result<BoundsOutput, Error> {
    if p.f.deg_x() == 0 {
        return Ok(BoundsOutput::Univariate { m: p.f.deg_y() });
    }
    let r = resolve(p)?;
    let report = formula_report(p, &r)?;
    Ok(BoundsOutput::Report(Box::new(report)))
}

// ---------------------------------------------------------------------------
// Built-in demonstration instances
// ---------------------------------------------------------------------------

pub mod demo {
    use super::*;
    use crate::polyring::parse_poly;

    /// Interval instance: `f = x y^2 + 1` over `S = [1/4, 3/4]`, simplex
    /// frame. Fully 2-ic; true positivity margin 1/4.
    pub fn desk_problem() -> ProblemFile {
        ProblemFile {
            n: 1,
            frame: Frame::SimplexInterior,
            f: parse_poly("x1 * y^2 + 1", 1).expect("static"),
            generators: vec![
                parse_poly("x1 - 1/4", 1).expect("static"),
                parse_poly("3/4 - x1", 1).expect("static"),
            ],
            f_min: None,
            loja: None,
            registry_path: None,
            caps: ScheduleCaps::default(),
            grid_step: None,
            target_gap: None,
        }
    }

    /// Rejection instance: `g = (1 - x^2)^3`, `f = (1 - x^2) y^2 + 1`.
    /// Positive on `S x R` but not fully 2-ic on `S = [-1, 1]`; the
    /// leading coefficient vanishes at `x = 1`.
    pub fn counterexample_problem() -> ProblemFile {
        let g = parse_poly("1 - x1^2", 1).expect("static").pow(3);
        ProblemFile {
            n: 1,
            frame: Frame::OpenUnitBox,
            f: parse_poly("y^2 - x1^2 * y^2 + 1", 1).expect("static"),
            generators: vec![g],
            f_min: None,
            loja: None,
            registry_path: None,
            caps: ScheduleCaps::default(),
            grid_step: None,
            target_gap: None,
        }
    }

    /// The explicit archimedean identity
    /// `4/3 - x^2 = 4/3 (x^3 - 3/2 x)^2 + 4/3 (1 - x^2)^3`, packaged as a
    /// one-generator certificate.
    pub fn archimedean_certificate() -> (Poly, Vec<Poly>, Certificate) {
        let f = parse_poly("4/3 - x1^2", 1).expect("static");
        let g = parse_poly("1 - x1^2", 1).expect("static").pow(3);
        let mut s0 = SosPoly::zero(1);
        s0.push(frac(4, 3), parse_poly("x1^3 - 3/2 * x1", 1).expect("static"))
            .expect("positive weight");
        let mut s1 = SosPoly::zero(1);
        s1.push(frac(4, 3), Poly::one(1)).expect("positive weight");
        let cert = Certificate {
            n: 1,
            f: f.clone(),
            generators: vec![g.clone()],
            sigmas: vec![s0, s1],
            meta: CertMeta {
                route: "demo".to_string(),
                frame: "unit-box".to_string(),
                ..CertMeta::default()
            },
            degree_audit: vec![6, 6],
        };
        (f, vec![g], cert)
    }

    /// The minimal-exponent form `x0^2 - x0 x1 + x1^2`: positive away
    /// from the origin, needs exactly three multiplications by
    /// `x0 + x1` before all coefficients turn positive.
    pub fn polya_minimal_h() -> Poly {
        parse_poly("x0^2 - x0 * x1 + x1^2", 1).expect("static")
    }
}
