//! Sparse multivariate polynomials over exact rationals.
//!
//! Variables are `x0, x1..xn, y, z` stored as one exponent slot each:
//! layout `[x0, x1, ..., xn, y, z]`, so a polynomial with `n` x-variables
//! carries `n + 3` slots. `x0` is the homogenization slack variable, `z`
//! the circle variable; ordinary inputs live in `(x1..xn, y)`.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomial
//! order, which makes printing, serialization and iteration deterministic.
//! Stored coefficients are never zero.

mod text;

pub use text::parse_poly;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{multinomial, Rat};

/// A variable of the ring: the slack `X0`, an affine variable `X(i)`
/// (1-based), the cylinder variable `Y`, or the circle variable `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X(usize),
    Y,
    Z,
}

/// Exponent vector with graded-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Box<[u32]>);

impl Mono {
    pub fn zero(slots: usize) -> Self {
        Mono(vec![0u32; slots].into_boxed_slice())
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Mono(exps.into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.0.len(), other.0.len(), "monomial arity mismatch");
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `Q[x0, x1..xn, y, z]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    /// The zero polynomial with `n` x-variables.
    pub fn zero(n: usize) -> Self {
        Poly {
            nvars: n,
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(Mono::zero(n + 3), c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, Rat::one())
    }

    /// The monomial for a single variable.
    pub fn var(n: usize, v: Var) -> Self {
        let mut exps = vec![0u32; n + 3];
        exps[Self::slot_of(n, v)] = 1;
        let mut p = Poly::zero(n);
        p.terms.insert(Mono::from_exps(exps), Rat::one());
        p
    }

    fn slot_of(n: usize, v: Var) -> usize {
        match v {
            Var::X(i) => {
                assert!(i <= n, "variable x{i} out of range for n = {n}");
                i
            }
            Var::Y => n + 1,
            Var::Z => n + 2,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn slots(&self) -> usize {
        self.nvars + 3
    }

    fn y_slot(&self) -> usize {
        self.nvars + 1
    }

    fn z_slot(&self) -> usize {
        self.nvars + 2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    /// Adds `c * mono` to the polynomial, dropping the term if the
    /// accumulated coefficient cancels to zero.
    pub fn add_term(&mut self, mono: Mono, c: Rat) {
        assert_eq!(mono.exps().len(), self.slots(), "term arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, mono: &Mono) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::zero(self.slots()))
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn deg_total(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as u32)
            .max()
            .unwrap_or(0)
    }

    /// Degree in the x-block `x0..xn`.
    pub fn deg_x(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exps()[..=self.nvars].iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        let s = self.y_slot();
        self.terms.keys().map(|m| m.exps()[s]).max().unwrap_or(0)
    }

    pub fn deg_z(&self) -> u32 {
        let s = self.z_slot();
        self.terms.keys().map(|m| m.exps()[s]).max().unwrap_or(0)
    }

    pub fn uses_x0(&self) -> bool {
        self.terms.keys().any(|m| m.exps()[0] > 0)
    }

    pub fn uses_y(&self) -> bool {
        self.deg_y() > 0
    }

    pub fn uses_z(&self) -> bool {
        self.deg_z() > 0
    }

    /// True when only `x1..xn` occur (no `x0`, `y`, `z`).
    pub fn is_x_only(&self) -> bool {
        !self.uses_x0() && !self.uses_y() && !self.uses_z()
    }

    /// The uniform `(y, z)` degree when every term has the same
    /// `e_y + e_z`; `None` otherwise. The zero polynomial reports `Some(0)`.
    pub fn yz_degree_uniform(&self) -> Option<u32> {
        let (ys, zs) = (self.y_slot(), self.z_slot());
        let mut it = self.terms.keys().map(|m| m.exps()[ys] + m.exps()[zs]);
        match it.next() {
            None => Some(0),
            Some(first) => it.all(|d| d == first).then_some(first),
        }
    }

    /// The uniform x-block degree, when homogeneous in `(x0..xn)`.
    pub fn x_degree_uniform(&self) -> Option<u32> {
        let mut it = self
            .terms
            .keys()
            .map(|m| m.exps()[..=self.nvars].iter().sum::<u32>());
        match it.next() {
            None => Some(0),
            Some(first) => it.all(|d| d == first).then_some(first),
        }
    }

    /// Coefficient of `y^i` as a polynomial (the `y` slot is zeroed,
    /// everything else kept).
    pub fn y_coefficient(&self, i: u32) -> Poly {
        let ys = self.y_slot();
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exps()[ys] == i {
                let mut exps = m.exps().to_vec();
                exps[ys] = 0;
                out.add_term(Mono::from_exps(exps), c.clone());
            }
        }
        out
    }

    pub fn neg_ref(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    /// Multiplies by a scalar (zero scalar gives the zero polynomial).
    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * s;
        }
        out
    }

    fn add_inner(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    fn mul_inner(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation at a full point `[x0, x1.., y, z]`.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, Error> {
        if point.len() != self.slots() {
            return Err(Error::arity(format!(
                "eval point has {} coordinates, polynomial expects {}",
                point.len(),
                self.slots()
            )));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.exps().iter().zip(point.iter()) {
                if *e > 0 {
                    t *= crate::scalar::pow_u32(v, *e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation helper for polynomials in `(x1..xn, y, z)`: `x0` is 0.
    pub fn eval_xyz(&self, xs: &[Rat], y: &Rat, z: &Rat) -> Result<Rat, Error> {
        if xs.len() != self.nvars {
            return Err(Error::arity(format!(
                "point has {} x-coordinates, expected {}",
                xs.len(),
                self.nvars
            )));
        }
        let mut point = Vec::with_capacity(self.slots());
        point.push(Rat::zero());
        point.extend_from_slice(xs);
        point.push(y.clone());
        point.push(z.clone());
        self.eval(&point)
    }

    /// Evaluation for x-only polynomials.
    pub fn eval_x(&self, xs: &[Rat]) -> Result<Rat, Error> {
        self.eval_xyz(xs, &Rat::zero(), &Rat::zero())
    }

    /// Homogenization in `y` against `z` to degree `m`: each `y^i` term is
    /// padded with `z^(m-i)`. Requires `deg_y <= m`, no prior `z`, no `x0`.
    pub fn homogenize_y(&self, m: u32) -> Result<Poly, Error> {
        if self.uses_z() {
            return Err(Error::domain("homogenize_y: input already involves z"));
        }
        if self.uses_x0() {
            return Err(Error::domain("homogenize_y: input involves x0"));
        }
        if self.deg_y() > m {
            return Err(Error::domain(format!(
                "homogenize_y: deg_y = {} exceeds m = {m}",
                self.deg_y()
            )));
        }
        let (ys, zs) = (self.y_slot(), self.z_slot());
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let mut exps = mono.exps().to_vec();
            exps[zs] = m - exps[ys];
            out.add_term(Mono::from_exps(exps), c.clone());
        }
        Ok(out)
    }

    /// Substitutes `z = 1`.
    pub fn subst_z_one(&self) -> Poly {
        let zs = self.z_slot();
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let mut exps = mono.exps().to_vec();
            exps[zs] = 0;
            out.add_term(Mono::from_exps(exps), c.clone());
        }
        out
    }

    /// Substitutes `x0 = rep` (used with `rep = 1 - x1 - ... - xn`).
    pub fn subst_x0(&self, rep: &Poly) -> Poly {
        assert_eq!(self.nvars, rep.nvars, "polynomial arity mismatch");
        let max_e = self.terms.keys().map(|m| m.exps()[0]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(Poly::one(self.nvars));
        for i in 1..=max_e {
            powers.push(&powers[(i - 1) as usize] * rep);
        }
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let e0 = mono.exps()[0];
            let mut exps = mono.exps().to_vec();
            exps[0] = 0;
            let mut stub = Poly::zero(self.nvars);
            stub.add_term(Mono::from_exps(exps), c.clone());
            out = &out + &(&stub * &powers[e0 as usize]);
        }
        out
    }

    /// Affine substitution on the x-variables: `x_i -> map[i-1]` for
    /// `i = 1..n`. Each image must be an affine x-only polynomial; the
    /// input must not involve `x0`.
    pub fn affine_substitute(&self, map: &[Poly]) -> Result<Poly, Error> {
        if map.len() != self.nvars {
            return Err(Error::arity(format!(
                "affine map has {} entries, expected {}",
                map.len(),
                self.nvars
            )));
        }
        for (i, im) in map.iter().enumerate() {
            if im.nvars != self.nvars {
                return Err(Error::arity(format!("map image {} has wrong arity", i + 1)));
            }
            if !im.is_x_only() || im.deg_total() > 1 {
                return Err(Error::domain(format!(
                    "map image for x{} is not an affine x-polynomial",
                    i + 1
                )));
            }
        }
        if self.uses_x0() {
            return Err(Error::domain("affine_substitute: input involves x0"));
        }
        // Precompute powers of each image up to the largest exponent used.
        let mut max_e = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for i in 0..self.nvars {
                max_e[i] = max_e[i].max(m.exps()[i + 1]);
            }
        }
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let mut ps = Vec::with_capacity(max_e[i] as usize + 1);
            ps.push(Poly::one(self.nvars));
            for e in 1..=max_e[i] {
                ps.push(&ps[(e - 1) as usize] * &map[i]);
            }
            powers.push(ps);
        }
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let mut exps = mono.exps().to_vec();
            for slot in 1..=self.nvars {
                exps[slot] = 0;
            }
            let mut term = Poly::zero(self.nvars);
            term.add_term(Mono::from_exps(exps), c.clone());
            for i in 0..self.nvars {
                let e = mono.exps()[i + 1];
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// The weighted norm: expand in the basis `multinomial(|a|, a) * x^a`
    /// over `x1..xn` and return the largest `|coefficient|`. Rejects
    /// polynomials involving `x0`, `y` or `z`.
    pub fn norm_weighted(&self) -> Result<Rat, Error> {
        if !self.is_x_only() {
            return Err(Error::domain(
                "norm_weighted requires a polynomial in x1..xn only",
            ));
        }
        let mut best = Rat::zero();
        for (m, c) in &self.terms {
            let w = multinomial(&m.exps()[1..=self.nvars]);
            let a = (c / Rat::from_integer(w)).abs();
            if a > best {
                best = a;
            }
        }
        Ok(best)
    }

    /// The mixed norm: expand in the basis `multinomial(|a|, a) * x^a * y^i
    /// (z^(m-i))` and return the largest `|coefficient|`. Accepts
    /// polynomials in `(x1..xn, y)` and polynomials homogeneous in `(y, z)`.
    pub fn norm_bullet(&self) -> Result<Rat, Error> {
        if self.uses_x0() {
            return Err(Error::domain("norm_bullet: input involves x0"));
        }
        if self.uses_z() && self.yz_degree_uniform().is_none() {
            return Err(Error::domain(
                "norm_bullet: z is present but the polynomial is not homogeneous in (y, z)",
            ));
        }
        let mut best = Rat::zero();
        for (m, c) in &self.terms {
            let w = multinomial(&m.exps()[1..=self.nvars]);
            let a = (c / Rat::from_integer(w)).abs();
            if a > best {
                best = a;
            }
        }
        Ok(best)
    }

    /// `1 - x1 - ... - xn`, the simplex face polynomial.
    pub fn one_minus_sum_x(n: usize) -> Poly {
        let mut p = Poly::one(n);
        for i in 1..=n {
            p = &p - &Poly::var(n, Var::X(i));
        }
        p
    }

    /// `x0 + x1 + ... + xn`, the homogenized linear form.
    pub fn sum_x_with_x0(n: usize) -> Poly {
        let mut p = Poly::var(n, Var::X(0));
        for i in 1..=n {
            p = &p + &Poly::var(n, Var::X(i));
        }
        p
    }

    /// Monomial `prod x_i^{e_i}` from x-block exponents `[e0, e1..en]`.
    pub fn x_monomial(n: usize, xexps: &[u32]) -> Poly {
        assert_eq!(xexps.len(), n + 1);
        let mut exps = vec![0u32; n + 3];
        exps[..=n].copy_from_slice(xexps);
        let mut p = Poly::zero(n);
        p.add_term(Mono::from_exps(exps), Rat::one());
        p
    }

    /// Largest coefficient denominator/numerator bit size; a cheap
    /// complexity metric for traces.
    pub fn coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| (c.numer().bits()).max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

/// Arity-checked product, the public multiplication entry point.
pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly, Error> {
    if a.nvars != b.nvars {
        return Err(Error::arity(format!(
            "cannot multiply polynomials with {} and {} x-variables",
            a.nvars, b.nvars
        )));
    }
    Ok(a.mul_inner(b))
}

/// Arity-checked sum.
pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly, Error> {
    if a.nvars != b.nvars {
        return Err(Error::arity(format!(
            "cannot add polynomials with {} and {} x-variables",
            a.nvars, b.nvars
        )));
    }
    Ok(a.add_inner(b, false))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_inner(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_inner(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_inner(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        text::format_poly(self, f)
    }
}

/// Builds a polynomial from integer-coefficient terms; test/demo helper.
pub fn poly_from_terms(n: usize, terms: &[(i64, &[u32])]) -> Poly {
    let mut p = Poly::zero(n);
    for (c, exps) in terms {
        assert_eq!(exps.len(), n + 3);
        p.add_term(Mono::from_exps(exps.to_vec()), crate::scalar::int(*c));
    }
    p
}

pub fn multinomial_of(mono: &Mono, n: usize) -> BigInt {
    multinomial(&mono.exps()[1..=n])
}
