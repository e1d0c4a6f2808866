//! Partial fractions over linear factors and exp(∫ r dx) in closed form.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::Vars;
use super::poly::SparsePoly;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use super::univariate::{extract_roots, UniPoly};
use crate::error::{Error, Result};

/// One summand `coefficient / (x - root)^power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFractionTerm {
    pub root: Scalar,
    pub power: u32,
    pub coefficient: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionDecomposition {
    pub polynomial_part: UniPoly,
    /// Sorted by root, then power.
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractionDecomposition {
    /// Recombines into a rational function in variable `var` of `vars`.
    pub fn recombine(&self, vars: &Vars, var: usize) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(self.polynomial_part.to_sparse(vars, var));
        for t in &self.terms {
            let den = UniPoly::linear(&t.root).pow(t.power).to_sparse(vars, var);
            let term = RationalFunction::new(SparsePoly::constant(vars, t.coefficient.clone()), den).unwrap();
            acc = acc.add(&term);
        }
        acc
    }
}

fn univariate_parts(r: &RationalFunction, var: usize) -> Result<(UniPoly, UniPoly)> {
    let n = UniPoly::from_sparse(r.num(), var);
    let d = UniPoly::from_sparse(r.den(), var);
    match (n, d) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Invalid(format!("{r} is not univariate in {}", r.vars().name(var)))),
    }
}

/// Power series of `a / b` at 0 up to (excluding) `t^k`; needs `b(0) != 0`.
fn series_quotient(a: &UniPoly, b: &UniPoly, k: usize) -> Vec<Scalar> {
    let b0inv = b.coeff(0).inv().expect("nonzero constant term");
    let mut s: Vec<Scalar> = Vec::with_capacity(k);
    for n in 0..k {
        let mut acc = a.coeff(n);
        for (j, sj) in s.iter().enumerate() {
            acc -= &(sj * &b.coeff(n - j));
        }
        s.push(&acc * &b0inv);
    }
    s
}

pub fn partial_fractions(r: &RationalFunction, var: usize) -> Result<PartialFractionDecomposition> {
    let (num, den) = univariate_parts(r, var)?;
    let (poly, rem) = num.divrem(&den);
    let mut terms = Vec::new();
    if !rem.is_zero() {
        let split = extract_roots(&den);
        if !split.fully_split() {
            return Err(Error::UnsupportedDenominator {
                factor: split.unsplit.to_sparse(r.vars(), var).to_string(),
            });
        }
        for (a, k) in &split.roots {
            let h = den.exact_div(&UniPoly::linear(a).pow(*k)).expect("root multiplicity");
            let s = series_quotient(&rem.shift(a), &h.shift(a), *k as usize);
            for (i, c) in s.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push(PartialFractionTerm { root: a.clone(), power: k - i as u32, coefficient: c });
                }
            }
        }
    }
    terms.sort_by(|a, b| a.root.to_pair().cmp(&b.root.to_pair()).then(a.power.cmp(&b.power)));
    Ok(PartialFractionDecomposition { polynomial_part: poly, terms })
}

/// `exp(∫ r dx)` as `∏ (x - a_j)^{e_j} · exp(R(x))` with `R` rational.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicExpIntegral {
    vars: Vars,
    var: usize,
    /// `(root a, exponent e)` for each factor `(x - a)^e`, sorted by root.
    pub factors: Vec<(Scalar, Scalar)>,
    /// The rational exponent `R`; zero when absent.
    pub exp_part: RationalFunction,
}

impl SymbolicExpIntegral {
    pub fn one(vars: &Vars, var: usize) -> Self {
        Self { vars: vars.clone(), var, factors: Vec::new(), exp_part: RationalFunction::zero(vars) }
    }

    pub fn from_parts(vars: &Vars, var: usize, factors: Vec<(Scalar, Scalar)>, exp_part: RationalFunction) -> Self {
        Self { vars: vars.clone(), var, factors, exp_part }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.exp_part.is_zero()
    }

    /// `d/dx log(self)` as an exact rational function.
    pub fn log_derivative(&self) -> RationalFunction {
        let mut acc = self.exp_part.derivative(self.var);
        for (a, e) in &self.factors {
            let den = UniPoly::linear(a).to_sparse(&self.vars, self.var);
            acc = acc.add(&RationalFunction::new(SparsePoly::constant(&self.vars, e.clone()), den).unwrap());
        }
        acc
    }

    /// The reciprocal `1/self`.
    pub fn recip(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            var: self.var,
            factors: self.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
            exp_part: self.exp_part.neg(),
        }
    }

    /// `self · other` (same variable).
    pub fn mul(&self, o: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (a, e) in &o.factors {
            match factors.iter_mut().find(|(b, _)| b == a) {
                Some(f) => f.1 = &f.1 + e,
                None => factors.push((a.clone(), e.clone())),
            }
        }
        factors.retain(|(_, e)| !e.is_zero());
        factors.sort_by_key(|a| a.0.to_pair());
        Self { vars: self.vars.clone(), var: self.var, factors, exp_part: self.exp_part.add(&o.exp_part) }
    }

    /// Exact rational value when all exponents are integers and there is no exponential.
    pub fn as_rational(&self) -> Option<RationalFunction> {
        if !self.exp_part.is_zero() {
            return None;
        }
        let mut num = SparsePoly::one(&self.vars);
        let mut den = SparsePoly::one(&self.vars);
        for (a, e) in &self.factors {
            let k = e.to_i64()?;
            let lin = UniPoly::linear(a).to_sparse(&self.vars, self.var);
            if k >= 0 {
                num = &num * &lin.pow(k as u32);
            } else {
                den = &den * &lin.pow((-k) as u32);
            }
        }
        RationalFunction::new(num, den).ok()
    }

    /// Numeric value at a real point; non-integer powers need a positive base.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        let mut acc = 1.0;
        for (a, e) in &self.factors {
            let (Some(a), Some(e)) = (a.to_f64(), e.to_f64()) else {
                return Err(Error::DomainCrossing("complex factor in real evaluation".into()));
            };
            let base = x - a;
            if e.fract() == 0.0 {
                acc *= base.powi(e as i32);
            } else if base > 0.0 {
                acc *= base.powf(e);
            } else {
                return Err(Error::DomainCrossing(format!("x - {a} <= 0 raised to {e}")));
            }
        }
        if !self.exp_part.is_zero() {
            let mut pt = vec![0.0; self.vars.len()];
            pt[self.var] = x;
            let r = self
                .exp_part
                .eval_f64(&pt)
                .ok_or_else(|| Error::DomainCrossing("complex exponent in real evaluation".into()))?;
            acc *= r.exp();
        }
        Ok(acc)
    }
}

/// `exp(∫ r dx)` via partial fractions: simple poles become powers of linear
/// factors, higher poles and the polynomial part go into the exponent.
pub fn log_quadrature(r: &RationalFunction, var: usize) -> Result<SymbolicExpIntegral> {
    let vars = r.vars().clone();
    let pf = partial_fractions(r, var)?;
    let mut exp_part = RationalFunction::from_poly(pf.polynomial_part.integral().to_sparse(&vars, var));
    let mut factors: Vec<(Scalar, Scalar)> = Vec::new();
    for t in &pf.terms {
        if t.power == 1 {
            factors.push((t.root.clone(), t.coefficient.clone()));
        } else {
            // ∫ c (x-a)^{-k} = c/(1-k) (x-a)^{1-k}
            let c = &t.coefficient / &Scalar::from_int(1 - t.power as i64);
            let den = UniPoly::linear(&t.root).pow(t.power - 1).to_sparse(&vars, var);
            exp_part = exp_part.add(&RationalFunction::new(SparsePoly::constant(&vars, c), den).unwrap());
        }
    }
    Ok(SymbolicExpIntegral { vars, var, factors, exp_part })
}

impl fmt::Display for SymbolicExpIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let name = self.vars.name(self.var);
        let mut parts: Vec<String> = Vec::new();
        for (a, e) in &self.factors {
            let base = if a.is_zero() {
                name.to_string()
            } else {
                let lin = UniPoly::linear(a).to_sparse(&self.vars, self.var);
                format!("({lin})")
            };
            if e.is_one() {
                parts.push(base);
            } else {
                parts.push(format!("{base}^({e})"));
            }
        }
        if !self.exp_part.is_zero() {
            parts.push(format!("exp({})", self.exp_part));
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for SymbolicExpIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
