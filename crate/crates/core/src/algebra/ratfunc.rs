use std::fmt;

use num_traits::Zero;

use super::gcd::poly_gcd;
use super::monomial::Vars;
use super::poly::SparsePoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `num / den` in lowest terms with a monic (graded-lex) denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: SparsePoly,
    den: SparsePoly,
}

impl RationalFunction {
    pub fn new(num: SparsePoly, den: SparsePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: SparsePoly, den: SparsePoly) -> Self {
        if num.is_zero() {
            return Self { den: SparsePoly::one(num.vars()), num };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let lc = den.lt().unwrap().1.inv().unwrap();
        Self { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        let den = SparsePoly::one(p.vars());
        Self { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(SparsePoly::zero(vars))
    }

    pub fn constant(vars: &Vars, c: Scalar) -> Self {
        Self::from_poly(SparsePoly::constant(vars, c))
    }

    pub fn num(&self) -> &SparsePoly {
        &self.num
    }

    pub fn den(&self) -> &SparsePoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&SparsePoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.num.involves(var) || self.den.involves(var)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduce(&self.num + &o.num, self.den.clone());
        }
        Self::reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::reduce(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn mul_poly(&self, p: &SparsePoly) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Invalid("division by zero rational function".into()));
        }
        Ok(Self::reduce(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn derivative(&self, var: usize) -> Self {
        let n = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        Self::reduce(n, &self.den * &self.den)
    }

    pub fn eval(&self, point: &[Scalar]) -> Option<Scalar> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(point) / &d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Option<f64> {
        Some(self.num.eval_f64(point)? / self.den.eval_f64(point)?)
    }

    /// Substitutes rational functions for the variables; `None` if a denominator vanishes identically.
    pub fn compose(&self, subs: &[RationalFunction], target: &Vars) -> Option<Self> {
        let n = compose_poly(&self.num, subs, target);
        let d = compose_poly(&self.den, subs, target);
        n.div(&d).ok()
    }
}

/// `p(R_1, ..., R_n)` over a common denominator.
pub fn compose_poly(p: &SparsePoly, subs: &[RationalFunction], target: &Vars) -> RationalFunction {
    assert_eq!(subs.len(), p.nvars());
    let degs: Vec<u32> = (0..p.nvars()).map(|i| p.degree_in(i)).collect();
    let mut num = SparsePoly::zero(target);
    let mut den = SparsePoly::one(target);
    for (i, &d) in degs.iter().enumerate() {
        den = &den * &subs[i].den.pow(d);
    }
    for (m, c) in p.terms() {
        let mut t = SparsePoly::constant(target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if degs[i] == 0 {
                continue;
            }
            t = &t * &subs[i].num.pow(e);
            t = &t * &subs[i].den.pow(degs[i] - e);
        }
        num = &num + &t;
    }
    RationalFunction::reduce(num, den)
}

impl From<SparsePoly> for RationalFunction {
    fn from(p: SparsePoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &SparsePoly| {
            if p.num_terms() == 1 && !p.lt().unwrap().1.is_negative_like() {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_reduction() {
        let v = Vars::xy();
        let x = SparsePoly::var(&v, 0);
        let y = SparsePoly::var(&v, 1);
        let r = RationalFunction::new(&(&x * &y) - &(&y * &y), (&(&x * &y) - &(&y * &y)).scale(&Scalar::from_int(2))).unwrap();
        assert_eq!(r, RationalFunction::constant(&v, Scalar::from_ratio(1, 2)));
        let s = RationalFunction::new(&x * &x, x.scale(&Scalar::from_int(3))).unwrap();
        assert_eq!(s.as_poly(), Some(&x.scale(&Scalar::from_ratio(1, 3))));
    }

    #[test]
    fn quotient_rule() {
        let v = Vars::xy();
        let x = SparsePoly::var(&v, 0);
        let one = SparsePoly::one(&v);
        let r = RationalFunction::new(one.clone(), x.clone()).unwrap();
        let d = r.derivative(0);
        assert_eq!(d, RationalFunction::new(-&one, &x * &x).unwrap());
    }

    #[test]
    fn compose_inverse_pair() {
        // X = x^2 - 1/y, Y = x composed with x = Y, y = 1/(Y^2 - X)
        let v = Vars::xy();
        let w = Vars::new(&["X", "Y"]);
        let x = SparsePoly::var(&v, 0);
        let y = SparsePoly::var(&v, 1);
        let bx = SparsePoly::var(&w, 0);
        let by = SparsePoly::var(&w, 1);
        let fwd = RationalFunction::new(&(&(&x * &x) * &y) - &SparsePoly::one(&v), y.clone()).unwrap();
        let inv_x = RationalFunction::from_poly(by.clone());
        let inv_y = RationalFunction::new(SparsePoly::one(&w), &(&by * &by) - &bx).unwrap();
        let back = fwd.compose(&[inv_x, inv_y], &w).unwrap();
        assert_eq!(back, RationalFunction::from_poly(bx));
    }
}
