//! Sparse multivariate polynomials over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Monomial, TermOrder, Vars};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A polynomial as a map from exponent vector to nonzero coefficient.
/// Iteration is ascending in graded-lex order; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SparsePoly {
    pub fn zero(vars: &Vars) -> Self {
        Self { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn constant(vars: &Vars, c: Scalar) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { vars: vars.clone(), terms }
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), Scalar::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Self {
        let i = vars.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, i)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(vars: &Vars, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    /// Builds from `(coefficient, exponents)` with small integer coefficients; test and example helper.
    pub fn from_int_terms(vars: &Vars, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(vars, terms.iter().map(|(c, e)| (Monomial(e.to_vec()), Scalar::from_int(*c))))
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Whether variable `var` occurs.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Leading term under graded-lex.
    pub fn lt(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, &Scalar)> {
        match order {
            TermOrder::GrLex => self.lt(),
            TermOrder::Lex => self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, o: &Self) {
        assert!(self.vars == o.vars, "polynomials from different rings: {:?} vs {:?}", self.vars, o.vars);
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.lt() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.terms.insert(m2, c * &Scalar::from_int(e as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &v.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> Option<f64> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64()?;
            for (v, &e) in point.iter().zip(&m.0) {
                t *= v.powi(e as i32);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Substitutes `subs[i]` for variable `i`; all substitutes live in one target ring.
    pub fn compose(&self, subs: &[SparsePoly], target: &Vars) -> SparsePoly {
        assert_eq!(subs.len(), self.nvars());
        let mut cache: Vec<Vec<SparsePoly>> = vec![Vec::new(); subs.len()];
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(SparsePoly::one(target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &subs[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes a scalar for one variable, keeping the ring.
    pub fn substitute_scalar(&self, var: usize, value: &Scalar) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out.add_term(m2, &(c * &value.pow(e)));
        }
        out
    }

    /// Re-embeds into another ring; `map[i]` is the target index of variable `i`.
    pub fn remap(&self, target: &Vars, map: &[usize]) -> SparsePoly {
        assert_eq!(map.len(), self.nvars());
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Re-embeds by variable name; every variable used must exist in `target`.
    pub fn embed(&self, target: &Vars) -> Result<SparsePoly> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(j),
                None if !self.involves(i) => map.push(usize::MAX),
                None => return Err(Error::Invalid(format!("variable {name} not in target ring"))),
            }
        }
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[i]] += k;
                }
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    /// Splits into coefficients with respect to the first `n` variables.
    /// Returned coefficients live in `rest`, the ring of the remaining variables.
    pub fn split_leading_vars(&self, n: usize, rest: &Vars) -> BTreeMap<Monomial, SparsePoly> {
        assert_eq!(rest.len(), self.nvars() - n);
        let mut out: BTreeMap<Monomial, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let head = Monomial(m.0[..n].to_vec());
            let tail = Monomial(m.0[n..].to_vec());
            out.entry(head).or_insert_with(|| SparsePoly::zero(rest)).add_term(tail, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficients of the powers of `var`: `result[k]` multiplies `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<SparsePoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![SparsePoly::zero(&self.vars); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[k].add_term(m2, c);
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Division with remainder in `var`, treating other variables as coefficients.
    /// With `pseudo`, the remainder is of `lc^k · f` and the multiplier `lc^k` is returned too.
    pub fn divrem_in(&self, g: &SparsePoly, var: usize, pseudo: bool) -> Result<DivRem> {
        self.check_ring(g);
        let dg = g.degree_in(var);
        if g.is_zero() || dg == 0 {
            return Err(Error::ZeroDegreeDivisor { var: self.vars.name(var).to_string() });
        }
        let gc = g.coeffs_in(var);
        let lc = gc[dg as usize].clone();
        let scalar_lc = lc.is_constant();
        if !scalar_lc && !pseudo {
            return Err(Error::NonScalarLeadingCoefficient { var: self.vars.name(var).to_string() });
        }
        let xv = SparsePoly::var(&self.vars, var);
        let mut q = SparsePoly::zero(&self.vars);
        let mut r = self.clone();
        let mut mult = SparsePoly::one(&self.vars);
        while !r.is_zero() && r.degree_in(var) >= dg {
            let dr = r.degree_in(var);
            let rl = r.coeffs_in(var)[dr as usize].clone();
            let shift = xv.pow(dr - dg);
            if scalar_lc {
                let c = lc.constant_term().inv().unwrap();
                let t = &rl.scale(&c) * &shift;
                q = &q + &t;
                r = &r - &(&t * g);
            } else {
                let t = &rl * &shift;
                q = &(&q * &lc) + &t;
                r = &(&r * &lc) - &(&t * g);
                mult = &mult * &lc;
            }
        }
        Ok(DivRem { quotient: q, remainder: r, multiplier: mult })
    }

    /// Multivariate division by graded-lex leading terms; `Some(q)` iff `g` divides `self` exactly.
    pub fn exact_div(&self, g: &SparsePoly) -> Option<SparsePoly> {
        self.check_ring(g);
        if g.is_zero() {
            return None;
        }
        let (gm, gc) = g.lt().map(|(m, c)| (m.clone(), c.inv().unwrap()))?;
        let mut q = SparsePoly::zero(&self.vars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.lt() {
            let m = gm.div_of(rm)?;
            let c = rc * &gc;
            r = &r - &g.mul_term(&m, &c);
            q.add_term(m, &c);
        }
        Some(q)
    }

    pub fn divides(&self, f: &SparsePoly) -> bool {
        f.exact_div(self).is_some()
    }

    /// Whether `self = c·o` for some nonzero scalar `c`.
    pub fn is_scalar_multiple_of(&self, o: &SparsePoly) -> bool {
        match (self.lt(), o.lt()) {
            (None, None) => true,
            (Some((ma, ca)), Some((mb, cb))) if ma == mb => *self == o.scale(&(ca / cb)),
            _ => false,
        }
    }

    /// Maps every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    pub fn conj(&self) -> SparsePoly {
        self.map_coeffs(Scalar::conj)
    }

    /// Renders with another set of variable names (same arity).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivRem {
    pub quotient: SparsePoly,
    pub remainder: SparsePoly,
    /// `lc^k` for pseudo-division, otherwise 1: `multiplier·f = q·g + r`.
    pub multiplier: SparsePoly,
}

/// Division of `f` by `g` in variable `var`; see [`SparsePoly::divrem_in`].
pub fn poly_divrem(f: &SparsePoly, g: &SparsePoly, var: &str, pseudo: bool) -> Result<DivRem> {
    let i = f
        .vars()
        .index_of(var)
        .ok_or_else(|| Error::Invalid(format!("unknown variable {var}")))?;
    f.divrem_in(g, i, pseudo)
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, o: &SparsePoly) -> SparsePoly {
        self.check_ring(o);
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, o: &SparsePoly) -> SparsePoly {
        self.check_ring(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, o: &SparsePoly) -> SparsePoly {
        self.check_ring(o);
        let mut out = SparsePoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, o: SparsePoly) -> SparsePoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, o: &SparsePoly) -> SparsePoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<SparsePoly> for &'a SparsePoly {
            type Output = SparsePoly;
            fn $m(self, o: SparsePoly) -> SparsePoly {
                self.$m(&o)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    p: &'a SparsePoly,
    names: &'a [String],
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &SparsePoly, names: &[String]) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative_like();
        let c_abs = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        let mono: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if mono.is_empty() {
            write!(f, "{c_abs}")?;
        } else if c_abs.is_one() {
            write!(f, "{}", mono.join("*"))?;
        } else {
            write!(f, "{}*{}", c_abs, mono.join("*"))?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.p, self.names)
    }
}

impl fmt::Display for SparsePoly {
    /// Descending graded-lex, e.g. `Y^2 - X`, `-3/2*x*y + (1+i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, self.vars.names())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
