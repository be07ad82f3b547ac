//! Semialgebraic-set services: membership, grid-certified lower bounds
//! over `S x C`, heuristic Lojasiewicz constants, and the fully-m-ic
//! hypothesis check.
//!
//! Certified minima subtract an exact rational Lipschitz slack from a
//! grid minimum. Grid membership is relaxed by each generator's own
//! Lipschitz constant so that every true point of `S` is covered by some
//! relaxed grid point; the returned bound is therefore a true lower
//! bound for the minimum over `S x C`. The circle `C` is sampled through
//! the rational parametrization `(y, z) = (2t/(1+t^2), (1-t^2)/(1+t^2))`
//! for `t` in `[-1, 1]` plus the point `(0, -1)`; for even homogenization
//! degree this covers the whole circle by antipodal symmetry.

use num_traits::{One, Signed, Zero};

use crate::bounds::{LojaConstants, LojaProvenance};
use crate::error::{Error, HypothesisViolation};
use crate::polyring::Poly;
use crate::scalar::{frac, int, pow_u32, Rat};

/// Declared ambient box for the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// `S` inside the interior of the standard simplex `x_i >= 0, sum <= 1`.
    SimplexInterior,
    /// `S` inside the open box `(-1, 1)^n`.
    OpenUnitBox,
}

/// `S = {x | g_1(x) >= 0, ..., g_s(x) >= 0}` with a declared ambient box.
#[derive(Debug, Clone)]
pub struct SemialgebraicSet {
    n: usize,
    generators: Vec<Poly>,
    frame: Frame,
}

impl SemialgebraicSet {
    /// Builds the set; every generator must involve only `x1..xn`.
    pub fn new(n: usize, generators: Vec<Poly>, frame: Frame) -> Result<Self, Error> {
        if generators.is_empty() {
            return Err(Error::domain("a semialgebraic set needs at least one generator"));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::arity(format!("generator {} has wrong arity", i + 1)));
            }
            if !g.is_x_only() {
                return Err(Error::domain(format!(
                    "generator {} involves y, z or x0; generators must be x-only",
                    i + 1
                )));
            }
        }
        Ok(SemialgebraicSet { n, generators, frame })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Exact membership: all generators evaluate `>= 0`.
    pub fn contains(&self, point: &[Rat]) -> Result<bool, Error> {
        if point.len() != self.n {
            return Err(Error::arity(format!(
                "membership point has {} coordinates, expected {}",
                point.len(),
                self.n
            )));
        }
        for g in &self.generators {
            if g.eval_x(point)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Certified rational lower bound for a minimum.
#[derive(Debug, Clone)]
pub struct CertifiedMin {
    pub lower_bound: Rat,
    pub witness_grid_step: Rat,
    pub method: MinMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinMethod {
    LipschitzGrid,
    UserSupplied,
}

/// Grid schedule knobs.
#[derive(Debug, Clone)]
pub struct GridOptions {
    pub x_step_start: Rat,
    pub x_step_finest: Rat,
    pub t_points_start: usize,
    /// Refinement stops rather than enumerate more grid points than this.
    pub max_points: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            x_step_start: frac(1, 64),
            x_step_finest: frac(1, 1024),
            t_points_start: 129,
            max_points: 2_000_000,
        }
    }
}

/// Result of the fully-m-ic hypothesis check.
#[derive(Debug, Clone)]
pub enum FullyMic {
    /// Even `deg_y` and certified positive leading coefficient.
    Pass { m: u32, leading_min: CertifiedMin },
    Violation(HypothesisViolation),
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// Grid points of the ambient box with denominator `den` (step `1/den`).
/// Simplex: `x_i = k_i/den`, `sum k_i <= den`. Box: `x_i = k_i/den - 1`,
/// `0 <= k_i <= 2 den`.
fn ambient_grid(n: usize, frame: Frame, den: u64) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    let mut current = vec![0u64; n];
    fn simplex_rec(
        n: usize,
        den: u64,
        i: usize,
        left: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<Rat>>,
    ) {
        if i == n {
            out.push(
                current
                    .iter()
                    .map(|&k| Rat::new((k as i64).into(), (den as i64).into()))
                    .collect(),
            );
            return;
        }
        for k in 0..=left {
            current[i] = k;
            simplex_rec(n, den, i + 1, left - k, current, out);
        }
    }
    fn box_rec(n: usize, den: u64, i: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<Rat>>) {
        if i == n {
            out.push(
                current
                    .iter()
                    .map(|&k| Rat::new((k as i64 - den as i64).into(), (den as i64).into()))
                    .collect(),
            );
            return;
        }
        for k in 0..=2 * den {
            current[i] = k;
            box_rec(n, den, i + 1, current, out);
        }
    }
    match frame {
        Frame::SimplexInterior => simplex_rec(n, den, 0, den, &mut current, &mut out),
        Frame::OpenUnitBox => box_rec(n, den, 0, &mut current, &mut out),
    }
    out
}

fn grid_point_count(n: usize, frame: Frame, den: u64) -> u128 {
    match frame {
        Frame::SimplexInterior => {
            // C(den + n, n)
            let mut acc: u128 = 1;
            for i in 1..=n as u128 {
                acc = acc * (den as u128 + i) / i;
            }
            acc
        }
        Frame::OpenUnitBox => (2 * den as u128 + 1).pow(n as u32),
    }
}

/// Rational points on the upper half of `C` from the tan-half-angle grid
/// `t = j/tden`, `j = -tden..tden`, plus the pole `(0, -1)`.
fn circle_points(tden: u64) -> Vec<(Rat, Rat)> {
    let mut pts = Vec::with_capacity(2 * tden as usize + 2);
    for j in -(tden as i64)..=(tden as i64) {
        let t = Rat::new(j.into(), (tden as i64).into());
        let t2 = &t * &t;
        let denom = &t2 + Rat::one();
        let y = (&t + &t) / &denom;
        let z = (Rat::one() - &t2) / &denom;
        pts.push((y, z));
    }
    pts.push((Rat::zero(), -Rat::one()));
    pts
}

/// Per-unit-step Lipschitz coefficient for `fbar` on the ambient box, in
/// the x-direction, accounting for the round-down covering radius
/// `step * sqrt(n)`: simplex uses `n/2 * |f| (m+1) d (d+1)`, the box picks
/// up an extra `n^(d-1)` from the larger coordinate range.
fn x_slack_coeff(frame: Frame, n: usize, norm: &Rat, m: u32, d: u32) -> Rat {
    if d == 0 {
        return Rat::zero();
    }
    let base = norm
        * int(i64::from(m) + 1)
        * int(i64::from(d))
        * int(i64::from(d) + 1)
        / int(2);
    let factor = match frame {
        Frame::SimplexInterior => int(n as i64),
        Frame::OpenUnitBox => pow_u32(&int(n as i64), d),
    };
    base * factor
}

/// Per-unit-arc Lipschitz coefficient along `C`: `m (m+1) (d+1) |f|`,
/// from term-wise differentiation in the circle angle on `|y|,|z| <= 1`.
/// The per-layer basis sum is `d + 1` on the simplex ((sum x)^j <= 1) but
/// `sum_{j<=d} n^j` on the box, where each basis block can reach `n^j`.
fn t_slack_coeff(frame: Frame, n: usize, norm: &Rat, m: u32, d: u32) -> Rat {
    let layer = match frame {
        Frame::SimplexInterior => int(i64::from(d) + 1),
        Frame::OpenUnitBox => {
            let mut total = Rat::zero();
            for j in 0..=d {
                total += pow_u32(&int(n as i64), j);
            }
            total
        }
    };
    norm * int(i64::from(m)) * int(i64::from(m) + 1) * layer
}

/// Relaxation margin for generator membership at a given step: points
/// within `step * sqrt(n)` of `S` must stay in the relaxed set.
fn membership_margin(frame: Frame, n: usize, g: &Poly, step: &Rat) -> Result<Rat, Error> {
    let dg = g.deg_x();
    let ng = g.norm_weighted()?;
    Ok(x_slack_coeff(frame, n, &ng, 0, dg) * step)
}

// ---------------------------------------------------------------------------
// Certified minimum over S x C
// ---------------------------------------------------------------------------

/// Certified rational lower bound `0 < L <= min {fbar on S x C}`, by grid
/// evaluation minus exact Lipschitz slack, refining until the slack is at
/// most `target_gap` (then until the bound is positive, within budget).
pub fn certified_min(
    f: &Poly,
    set: &SemialgebraicSet,
    target_gap: &Rat,
) -> Result<CertifiedMin, Error> {
    certified_min_with(f, set, target_gap, &GridOptions::default())
}

pub fn certified_min_with(
    f: &Poly,
    set: &SemialgebraicSet,
    target_gap: &Rat,
    opts: &GridOptions,
) -> Result<CertifiedMin, Error> {
    if f.nvars() != set.n() {
        return Err(Error::arity("certified_min: arity mismatch"));
    }
    if f.uses_x0() || f.uses_z() {
        return Err(Error::domain("certified_min expects f in (x1..xn, y)"));
    }
    let m = f.deg_y();
    if m % 2 != 0 {
        return Err(Error::domain("certified_min: deg_y f must be even"));
    }
    let d = f.deg_x();
    let n = set.n();
    let norm = f.norm_bullet()?;
    // fbar as y-layers: fbar(x, y, z) = sum_i f_i(x) y^i z^(m-i).
    let layers: Vec<Poly> = (0..=m).map(|i| f.y_coefficient(i)).collect();

    let lx = x_slack_coeff(set.frame(), n, &norm, m, d);
    let lt = t_slack_coeff(set.frame(), n, &norm, m, d);

    let mut den: u64 = rat_to_den(&opts.x_step_start);
    let den_finest: u64 = rat_to_den(&opts.x_step_finest);
    let mut tden: u64 = (opts.t_points_start.saturating_sub(1) / 2).max(1) as u64;

    let mut best: Option<(Rat, Rat)> = None; // (bound, step)
    loop {
        if grid_point_count(n, set.frame(), den) > opts.max_points as u128 {
            break;
        }
        let step = Rat::new(1.into(), (den as i64).into());
        let t_step = Rat::new(1.into(), (tden as i64).into());
        let margins: Vec<Rat> = set
            .generators()
            .iter()
            .map(|g| membership_margin(set.frame(), n, g, &step))
            .collect::<Result<_, _>>()?;

        let mut grid_min: Option<Rat> = None;
        let circle = if m == 0 {
            vec![(Rat::zero(), Rat::one())]
        } else {
            circle_points(tden)
        };
        let mut seen_relaxed = false;
        for point in ambient_grid(n, set.frame(), den) {
            let mut inside = true;
            for (g, margin) in set.generators().iter().zip(margins.iter()) {
                if g.eval_x(&point)? < -margin.clone() {
                    inside = false;
                    break;
                }
            }
            if !inside {
                continue;
            }
            seen_relaxed = true;
            let vals: Vec<Rat> = layers
                .iter()
                .map(|l| l.eval_x(&point))
                .collect::<Result<_, _>>()?;
            for (y, z) in &circle {
                let mut acc = Rat::zero();
                for (i, v) in vals.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    acc += v * pow_u32(y, i as u32) * pow_u32(z, m - i as u32);
                }
                if grid_min.as_ref().map(|g| acc < *g).unwrap_or(true) {
                    grid_min = Some(acc);
                }
            }
        }
        if !seen_relaxed {
            return Err(Error::EmptySet);
        }
        let slack = &lx * &step + &lt * &t_step;
        let bound = grid_min.expect("relaxed grid nonempty") - &slack;
        if best
            .as_ref()
            .map(|(b, _)| bound > *b)
            .unwrap_or(true)
        {
            best = Some((bound.clone(), step.clone()));
        }
        if bound.is_positive() && slack <= *target_gap {
            return Ok(CertifiedMin {
                lower_bound: bound,
                witness_grid_step: step,
                method: MinMethod::LipschitzGrid,
            });
        }
        if den >= den_finest {
            break;
        }
        den *= 2;
        tden *= 2;
    }
    match best {
        Some((bound, step)) if bound.is_positive() => Ok(CertifiedMin {
            lower_bound: bound,
            witness_grid_step: step,
            method: MinMethod::LipschitzGrid,
        }),
        Some((bound, step)) => Err(Error::NotCertified(format!(
            "grid minimum minus slack is {} at step {} (not positive)",
            crate::scalar::fmt_rat(&bound),
            crate::scalar::fmt_rat(&step)
        ))),
        None => Err(Error::EmptySet),
    }
}

fn rat_to_den(step: &Rat) -> u64 {
    // steps are 1/den by construction; round defensively otherwise
    if step.numer().is_one() {
        num_traits::ToPrimitive::to_u64(step.denom()).unwrap_or(64)
    } else {
        let inv = step.recip();
        num_traits::ToPrimitive::to_u64(&inv.ceil().to_integer()).unwrap_or(64)
    }
}

// ---------------------------------------------------------------------------
// Lojasiewicz estimation
// ---------------------------------------------------------------------------

/// Heuristic grid estimate of Lojasiewicz constants `(c1, c2)` with
/// `dist(x, S)^c1 <= -c2 * min(g_i(x), 0)` at every exterior grid point:
/// `c1` is searched over `{1, 2, 4, 8, 16}`, `c2` is the smallest power
/// of two (at least 1) that works, picked to minimize `c2`, then
/// multiplied by `safety`. Soundness of the final certificate never
/// depends on this estimate.
pub fn estimate_loja(
    set: &SemialgebraicSet,
    grid_step: &Rat,
    safety: &Rat,
) -> Result<LojaConstants, Error> {
    if safety < &int(2) {
        return Err(Error::domain("estimate_loja: safety factor must be >= 2"));
    }
    let den = rat_to_den(grid_step);
    let n = set.n();
    let grid = ambient_grid(n, set.frame(), den);
    let mut members: Vec<&Vec<Rat>> = Vec::new();
    let mut exterior: Vec<(&Vec<Rat>, Rat)> = Vec::new(); // (point, min g)
    for p in &grid {
        let mut worst: Option<Rat> = None;
        for g in set.generators() {
            let v = g.eval_x(p)?;
            if worst.as_ref().map(|w| v < *w).unwrap_or(true) {
                worst = Some(v);
            }
        }
        let worst = worst.expect("at least one generator");
        if worst.is_negative() {
            exterior.push((p, worst));
        } else {
            members.push(p);
        }
    }
    if members.is_empty() {
        return Err(Error::EmptySet);
    }

    let c1_candidates = [1u32, 2, 4, 8, 16];
    let mut best: Option<(u32, Rat)> = None;
    for &c1 in &c1_candidates {
        // needed c2^2 = max (dist^2)^c1 / (min g)^2 over exterior points
        let mut needed_sq = Rat::zero();
        for (p, worst) in &exterior {
            let mut dist_sq: Option<Rat> = None;
            for q in &members {
                let mut ds = Rat::zero();
                for (a, b) in p.iter().zip(q.iter()) {
                    let diff = a - b;
                    ds += &diff * &diff;
                }
                if dist_sq.as_ref().map(|d| ds < *d).unwrap_or(true) {
                    dist_sq = Some(ds);
                }
            }
            let dist_sq = dist_sq.expect("members nonempty");
            let ratio = pow_u32(&dist_sq, c1) / (worst * worst);
            if ratio > needed_sq {
                needed_sq = ratio;
            }
        }
        let mut c2 = Rat::one();
        while &c2 * &c2 < needed_sq {
            c2 *= int(2);
        }
        if best
            .as_ref()
            .map(|(_, b)| c2 < *b)
            .unwrap_or(true)
        {
            best = Some((c1, c2));
        }
    }
    let (c1, c2) = best.expect("candidate list nonempty");
    Ok(LojaConstants {
        c1: int(i64::from(c1)),
        c2: c2 * safety,
        provenance: LojaProvenance::GridEstimated,
    })
}

// ---------------------------------------------------------------------------
// Fully-m-ic check
// ---------------------------------------------------------------------------

/// Checks the fully-m-ic hypothesis: `deg_y f` even and the leading
/// y-coefficient certified strictly positive on `S`. Violations are
/// return values, not errors; an exact grid witness is preferred and the
/// lexicographically largest witness is reported.
pub fn check_fully_mic(f: &Poly, set: &SemialgebraicSet) -> Result<FullyMic, Error> {
    check_fully_mic_with(f, set, &frac(1, 8), &GridOptions::default())
}

pub fn check_fully_mic_with(
    f: &Poly,
    set: &SemialgebraicSet,
    target_gap: &Rat,
    opts: &GridOptions,
) -> Result<FullyMic, Error> {
    let m = f.deg_y();
    if m % 2 != 0 {
        return Ok(FullyMic::Violation(HypothesisViolation::OddYDegree { m }));
    }
    let fm = f.y_coefficient(m);

    // Exact witness scan on the starting grid.
    let den = rat_to_den(&opts.x_step_start);
    let mut witness: Option<(Vec<Rat>, Rat)> = None;
    for p in ambient_grid(set.n(), set.frame(), den) {
        if set.contains(&p)? {
            let v = fm.eval_x(&p)?;
            if !v.is_positive() {
                let better = witness
                    .as_ref()
                    .map(|(w, _)| p > *w)
                    .unwrap_or(true);
                if better {
                    witness = Some((p, v));
                }
            }
        }
    }
    if let Some((point, value)) = witness {
        return Ok(FullyMic::Violation(HypothesisViolation::NotFullyMic {
            witness: point,
            value,
        }));
    }

    match certified_min_with(&fm, set, target_gap, opts) {
        Ok(cm) => Ok(FullyMic::Pass { m, leading_min: cm }),
        Err(Error::NotCertified(detail)) => Ok(FullyMic::Violation(
            HypothesisViolation::LeadingCoeffUncertified { detail },
        )),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn interval_set(lo: &str, hi: &str) -> SemialgebraicSet {
        let g1 = parse_poly(&format!("x1 - {lo}"), 1).unwrap();
        let g2 = parse_poly(&format!("{hi} - x1"), 1).unwrap();
        SemialgebraicSet::new(1, vec![g1, g2], Frame::SimplexInterior).unwrap()
    }

    #[test]
    fn membership() {
        let s = interval_set("1/4", "3/4");
        assert!(s.contains(&[frac(1, 2)]).unwrap());
        assert!(!s.contains(&[int(0)]).unwrap());
        // boundary counts as inside
        let g = parse_poly("1 - 3 * x1^2 + 3 * x1^4 - x1^6", 1).unwrap(); // (1 - x^2)^3
        let s2 = SemialgebraicSet::new(1, vec![g], Frame::OpenUnitBox).unwrap();
        assert!(s2.contains(&[int(1)]).unwrap());
        assert!(s.contains(&[int(0), int(0)]).is_err());
    }

    #[test]
    fn set_construction_rejects_y() {
        let g = parse_poly("y - 1", 1).unwrap();
        assert!(SemialgebraicSet::new(1, vec![g], Frame::SimplexInterior).is_err());
    }

    #[test]
    fn certified_min_desk() {
        // f = x*y^2 + 1 on S = [1/4, 3/4]: true minimum of fbar over S x C
        // is 1/4 at x = 1/4, (y, z) = (+-1, 0).
        let s = interval_set("1/4", "3/4");
        let f = parse_poly("x1 * y^2 + 1", 1).unwrap();
        let cm = certified_min(&f, &s, &frac(1, 8)).unwrap();
        assert!(cm.lower_bound.is_positive());
        assert!(cm.lower_bound <= frac(1, 4));
    }

    #[test]
    fn certified_min_constant_on_circle() {
        // f = y^2 + 1 homogenizes to y^2 + z^2 which is 1 on C.
        let s = interval_set("1/4", "3/4");
        let f = parse_poly("y^2 + 1", 1).unwrap();
        let cm = certified_min(&f, &s, &frac(1, 4)).unwrap();
        assert!(cm.lower_bound.is_positive());
        assert!(cm.lower_bound <= int(1));
        // constants certify exactly
        let c = parse_poly("1", 1).unwrap();
        let cm = certified_min(&c, &s, &frac(1, 4)).unwrap();
        assert_eq!(cm.lower_bound, int(1));
    }

    #[test]
    fn certified_min_respects_grid_values() {
        // the certified bound never exceeds any sampled value: check a
        // couple of hand points on the desk instance
        let s = interval_set("1/4", "3/4");
        let f = parse_poly("x1 * y^2 + 1", 1).unwrap();
        let cm = certified_min(&f, &s, &frac(1, 8)).unwrap();
        let fb = f.homogenize_y(2).unwrap();
        for (x, y, z) in [
            (frac(1, 4), int(1), int(0)),
            (frac(1, 2), int(0), int(1)),
            (frac(3, 4), frac(4, 5), frac(3, 5)),
        ] {
            let v = fb.eval_xyz(&[x], &y, &z).unwrap();
            assert!(cm.lower_bound <= v);
        }
    }

    #[test]
    fn estimate_loja_interval() {
        let s = interval_set("1/4", "3/4");
        let lc = estimate_loja(&s, &frac(1, 64), &int(2)).unwrap();
        assert_eq!(lc.c1, int(1));
        assert_eq!(lc.c2, int(2)); // c2 = 1 pre-safety
        assert_eq!(lc.provenance, LojaProvenance::GridEstimated);
        assert!(estimate_loja(&s, &frac(1, 64), &int(1)).is_err());
    }

    #[test]
    fn estimate_loja_whole_simplex() {
        // S = the simplex itself: no exterior grid points, returns (1, safety)
        let g1 = parse_poly("x1", 1).unwrap();
        let g2 = parse_poly("1 - x1", 1).unwrap();
        let s = SemialgebraicSet::new(1, vec![g1, g2], Frame::SimplexInterior).unwrap();
        let lc = estimate_loja(&s, &frac(1, 64), &int(2)).unwrap();
        assert_eq!(lc.c1, int(1));
        assert_eq!(lc.c2, int(2));
    }

    #[test]
    fn estimate_loja_cubic_flatness() {
        // g = (1/4 - (x - 1/2)^2)^3 on the simplex: S = [1/4, 3/4] with a
        // cubically flat boundary; small c1 needs a large c2 at grid
        // scale, so the estimator escalates c1.
        let g = {
            let lin = parse_poly("-x1^2 + x1 - 3/16", 1).unwrap(); // (x-1/4)(3/4-x)
            lin.pow(3)
        };
        let s = SemialgebraicSet::new(1, vec![g], Frame::SimplexInterior).unwrap();
        let lc = estimate_loja(&s, &frac(1, 64), &int(2)).unwrap();
        let c1 = num_traits::ToPrimitive::to_u32(&lc.c1.to_integer()).unwrap();
        assert!(c1 >= 4, "cubic flatness should force c1 >= 4, got {c1}");
    }

    #[test]
    fn fully_mic_pass_and_violations() {
        let s = interval_set("1/4", "3/4");
        let f = parse_poly("x1 * y^2 + 1", 1).unwrap();
        match check_fully_mic(&f, &s).unwrap() {
            FullyMic::Pass { m, leading_min } => {
                assert_eq!(m, 2);
                assert!(leading_min.lower_bound.is_positive());
                assert!(leading_min.lower_bound <= frac(1, 4));
            }
            other => panic!("expected pass, got {other:?}"),
        }
        // odd degree
        let g = parse_poly("y^3 + 1", 1).unwrap();
        match check_fully_mic(&g, &s).unwrap() {
            FullyMic::Violation(HypothesisViolation::OddYDegree { m }) => assert_eq!(m, 3),
            other => panic!("expected odd-degree violation, got {other:?}"),
        }
    }

    #[test]
    fn fully_mic_counterexample_witness() {
        // g = (1 - x^2)^3, S = [-1, 1], f = (1 - x^2) y^2 + 1: the leading
        // coefficient vanishes at x = 1, and the reported witness is the
        // lexicographically largest grid witness.
        let g = parse_poly("1 - x1^2", 1).unwrap().pow(3);
        let s = SemialgebraicSet::new(1, vec![g], Frame::OpenUnitBox).unwrap();
        let f = parse_poly("y^2 - x1^2 * y^2 + 1", 1).unwrap();
        match check_fully_mic(&f, &s).unwrap() {
            FullyMic::Violation(HypothesisViolation::NotFullyMic { witness, value }) => {
                assert_eq!(witness, vec![int(1)]);
                assert!(value.is_zero());
            }
            other => panic!("expected fully-m-ic violation, got {other:?}"),
        }
    }
}
