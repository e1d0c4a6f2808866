//! Dense univariate polynomials over ℚ(i) and exact root extraction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Monomial, Vars};
use super::poly::SparsePoly;
use super::scalar::{rational_to_f64, Scalar};

/// Coefficients low to high; no trailing zeros (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(pub Vec<Scalar>);

impl UniPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Scalar::one()])
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`.
    pub fn linear(a: &Scalar) -> Self {
        UniPoly(vec![-a, Scalar::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.0.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(Scalar::is_real)
    }

    pub fn from_sparse(p: &SparsePoly, var: usize) -> Option<Self> {
        let mut c = vec![Scalar::zero(); p.degree_in(var) as usize + 1];
        for (m, a) in p.terms() {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            c[m.0[var] as usize] = a.clone();
        }
        Some(Self::new(c))
    }

    pub fn to_sparse(&self, vars: &Vars, var: usize) -> SparsePoly {
        SparsePoly::from_terms(
            vars,
            self.0.iter().enumerate().map(|(k, c)| {
                let mut m = Monomial::one(vars.len());
                m.0[var] = k as u32;
                (m, c.clone())
            }),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().unwrap())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, g: &Self) -> (Self, Self) {
        assert!(!g.is_zero(), "division by zero polynomial");
        if self.0.len() < g.0.len() {
            return (Self::zero(), self.clone());
        }
        let inv = g.lc().inv().unwrap();
        let mut r = self.0.clone();
        let dg = g.degree();
        let mut q = vec![Scalar::zero(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = &r[k + dg] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, gc) in g.0.iter().enumerate() {
                r[k + j] -= &(&c * gc);
            }
            q[k] = c;
        }
        r.truncate(dg);
        (Self::new(q), Self::new(r))
    }

    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        let (q, r) = self.divrem(g);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &Scalar) -> Self {
        // Horner in the shifted variable
        let lin = UniPoly(vec![a.clone(), Scalar::one()]);
        let mut acc = Self::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self::new(self.0.iter().map(Scalar::conj).collect())
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut c = vec![Scalar::zero()];
        for (k, a) in self.0.iter().enumerate() {
            c.push(a / &Scalar::from_int(k as i64 + 1));
        }
        Self::new(c)
    }
}

/// Roots of a univariate polynomial found over ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootExtraction {
    /// Distinct roots with multiplicity, sorted for determinism.
    pub roots: Vec<(Scalar, u32)>,
    /// Monic cofactor without Gaussian-rational roots (1 when fully split).
    pub unsplit: UniPoly,
    /// False when an integer could not be fully factored during the candidate search.
    pub exhaustive: bool,
}

impl RootExtraction {
    pub fn fully_split(&self) -> bool {
        self.unsplit.degree() == 0
    }
}

/// Square root in ℚ(i), when one exists.
pub fn gaussian_sqrt(w: &Scalar) -> Option<Scalar> {
    if w.is_zero() {
        return Some(Scalar::zero());
    }
    if w.is_real() && !w.re().is_negative() {
        return rational_sqrt(w.re()).map(Scalar::from_real);
    }
    if w.is_real() {
        return rational_sqrt(&-w.re().clone()).map(|s| Scalar::new(BigRational::zero(), s));
    }
    // (a + bi)^2 = u + vi  =>  a^2 = (|w| + u)/2, b = v / (2a)
    let modulus = rational_sqrt(&w.norm())?;
    let a2 = (&modulus + w.re()) / BigRational::from_integer(BigInt::from(2));
    let a = rational_sqrt(&a2)?;
    if a.is_zero() {
        return None;
    }
    let b = w.im() / (&a * BigRational::from_integer(BigInt::from(2)));
    Some(Scalar::new(a, b))
}

pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Cap on trial-division work per integer in the rational-root search.
const TRIAL_DIVISION_LIMIT: u64 = 2_000_000;

/// Positive divisors; the flag is false when factoring gave up on a large cofactor.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut n = n.abs();
    if n.is_zero() {
        return (vec![BigInt::one()], true);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p: u64 = 2;
    let mut exhaustive = true;
    while BigInt::from(p) * BigInt::from(p) <= n {
        if p > TRIAL_DIVISION_LIMIT {
            exhaustive = false;
            break;
        }
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    (divs, exhaustive)
}

/// Integer coefficients of a primitive multiple of a real polynomial.
fn primitive_integer(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
    let ints: Vec<BigInt> = p.0.iter().map(|c| (c.re() * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn approx_root_test(z: &[BigInt], re: f64, im: f64) -> bool {
    // complex Horner with a relative residual bound; only a prefilter
    let (mut ar, mut ai) = (0.0f64, 0.0f64);
    let mut scale = 0.0f64;
    let modulus = (re * re + im * im).sqrt();
    for c in z.iter().rev() {
        let cf = c.to_f64().unwrap_or(f64::MAX);
        let nr = ar * re - ai * im + cf;
        let ni = ar * im + ai * re;
        ar = nr;
        ai = ni;
        scale = scale * modulus + cf.abs();
    }
    if !scale.is_finite() || !ar.is_finite() {
        return true;
    }
    (ar * ar + ai * ai).sqrt() <= 1e-6 * scale.max(1.0)
}

/// Gaussian-rational candidates among the roots of a real polynomial:
/// rational roots by the rational root theorem, non-real roots `a ± bi`
/// through primitive integer quadratic factors `c2 x² + c1 x + c0` with
/// `c2 | lc`, `c0 | const`, and negative discriminant.
fn norm_candidates(n: &UniPoly) -> (Vec<Scalar>, bool) {
    let mut out = Vec::new();
    let mut p = n.clone();
    // strip the root at zero
    let mut low = 0;
    while low < p.0.len() && p.0[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        out.push(Scalar::zero());
        p = UniPoly(p.0[low..].to_vec());
    }
    if p.degree() == 0 {
        return (out, true);
    }
    let z = primitive_integer(&p);
    let a0 = z[0].clone();
    let an = z.last().unwrap().clone();
    let (d0, ex0) = divisors(&a0);
    let (dn, exn) = divisors(&an);
    let exhaustive = ex0 && exn;
    for q in &dn {
        for pp in &d0 {
            for s in [1i64, -1] {
                let r = BigRational::new(pp * BigInt::from(s), q.clone());
                let rf = rational_to_f64(&r).unwrap_or(0.0);
                if !approx_root_test(&z, rf, 0.0) {
                    continue;
                }
                let cand = Scalar::from_real(r);
                if p.eval(&cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    if p.degree() >= 2 {
        // c2 > 0 w.l.o.g.; negative discriminant forces c0 to share its sign
        for c2 in &dn {
            for c0 in &d0 {
                let prod4 = BigInt::from(4) * c2 * c0;
                let bound = prod4.sqrt();
                let bound_i = bound.to_i64().unwrap_or(i64::MAX);
                if bound_i > 4_000_000 {
                    continue;
                }
                for c1 in -bound_i..=bound_i {
                    let c1b = BigInt::from(c1);
                    let disc = &prod4 - &c1b * &c1b;
                    if disc.sign() != Sign::Plus {
                        continue;
                    }
                    let Some(s) = int_sqrt_exact(&disc) else { continue };
                    let two_c2 = BigInt::from(2) * c2;
                    let a = BigRational::new(-c1b, two_c2.clone());
                    let b = BigRational::new(s, two_c2);
                    let (af, bf) = (rational_to_f64(&a).unwrap_or(0.0), rational_to_f64(&b).unwrap_or(0.0));
                    if !approx_root_test(&z, af, bf) {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let cand = Scalar::new(a.clone(), &b * BigRational::from_integer(BigInt::from(sign)));
                        if p.eval(&cand).is_zero() && !out.contains(&cand) {
                            out.push(cand);
                        }
                    }
                }
            }
        }
    }
    (out, exhaustive)
}

/// Gaussian-rational roots with multiplicities.
pub fn extract_roots(f: &UniPoly) -> RootExtraction {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut rest = f.monic();
    let mut roots: Vec<(Scalar, u32)> = Vec::new();
    let mut exhaustive = true;

    let take_root = |rest: &mut UniPoly, r: Scalar, roots: &mut Vec<(Scalar, u32)>| {
        let lin = UniPoly::linear(&r);
        let mut m = 0;
        while rest.degree() >= 1 {
            match rest.exact_div(&lin) {
                Some(q) => {
                    *rest = q;
                    m += 1;
                }
                None => break,
            }
        }
        if m > 0 {
            roots.push((r, m));
        }
    };

    if rest.degree() > 2 {
        let norm = if rest.is_real() { rest.clone() } else { rest.mul(&rest.conj()) };
        let (cands, ex) = norm_candidates(&norm);
        exhaustive = ex;
        for c in cands {
            take_root(&mut rest, c, &mut roots);
        }
    }
    // degree <= 2 remainders are split with the quadratic formula
    while rest.degree() >= 1 && rest.degree() <= 2 {
        if rest.degree() == 1 {
            let r = -&rest.coeff(0);
            take_root(&mut rest, r, &mut roots);
            break;
        }
        let (a, b, c) = (rest.coeff(2), rest.coeff(1), rest.coeff(0));
        let disc = &(&b * &b) - &(&Scalar::from_int(4) * &(&a * &c));
        match gaussian_sqrt(&disc) {
            Some(s) => {
                let two_a = &Scalar::from_int(2) * &a;
                let r = &(&(-&b) + &s) / &two_a;
                take_root(&mut rest, r, &mut roots);
            }
            None => break,
        }
    }
    roots.sort_by(|a, b| a.0.to_pair().cmp(&b.0.to_pair()).then(a.1.cmp(&b.1)));
    // merge duplicates produced by separate passes
    let mut merged: Vec<(Scalar, u32)> = Vec::new();
    for (r, m) in roots {
        match merged.iter_mut().find(|(s, _)| *s == r) {
            Some(e) => e.1 += m,
            None => merged.push((r, m)),
        }
    }
    RootExtraction { roots: merged, unsplit: rest.monic(), exhaustive }
}
