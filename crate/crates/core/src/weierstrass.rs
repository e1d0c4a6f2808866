//! Truncated power series in x, polynomials in y over them, and checks of
//! invariance identities modulo powers of x.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Scalar, SparsePoly};
use crate::error::{Error, Result};
use crate::vectorfield::VectorField;

/// Default truncation order.
pub const DEFAULT_ORDER: u32 = 16;

/// A power series in x known modulo `x^prec`, or exactly (a polynomial) when `exact`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Scalar>,
    prec: u32,
    exact: bool,
}

impl TruncSeries {
    /// Series known modulo `x^(order+1)`.
    pub fn new(mut coeffs: Vec<Scalar>, order: u32) -> Self {
        coeffs.resize(order as usize + 1, Scalar::zero());
        Self { coeffs, prec: order + 1, exact: false }.trim()
    }

    /// A polynomial in x, known to every order.
    pub fn exact(coeffs: Vec<Scalar>) -> Self {
        Self { coeffs, prec: 0, exact: true }.trim()
    }

    pub fn zero_exact() -> Self {
        Self::exact(Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::exact(vec![c])
    }

    fn trim(mut self) -> Self {
        if !self.exact {
            self.coeffs.truncate(self.prec as usize);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Coefficients are known below `x^precision()`; `None` when exact.
    pub fn precision(&self) -> Option<u32> {
        (!self.exact).then_some(self.prec)
    }

    /// Truncation order `N` (known modulo `x^(N+1)`); `None` when exact.
    pub fn order(&self) -> Option<u32> {
        self.precision().map(|p| p.saturating_sub(1))
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Known coefficients (trailing zeros dropped).
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Whether the series is zero as far as it is known.
    pub fn is_zero_known(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the first nonzero known coefficient; the precision (or `u32::MAX`) if none.
    pub fn valuation(&self) -> u32 {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => k as u32,
            None if self.exact => u32::MAX,
            None => self.prec,
        }
    }

    fn cap(&self) -> u32 {
        if self.exact {
            u32::MAX
        } else {
            self.prec
        }
    }

    fn with_cap(coeffs: Vec<Scalar>, cap: u32) -> Self {
        if cap == u32::MAX {
            Self::exact(coeffs)
        } else {
            Self { coeffs, prec: cap, exact: false }.trim()
        }
    }

    /// Drops everything from `x^(order+1)` on.
    pub fn truncate(&self, order: u32) -> Self {
        let cap = self.cap().min(order + 1);
        Self::with_cap(self.coeffs.clone(), cap)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        Self::with_cap(c, self.cap().min(o.cap()))
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec, exact: self.exact }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::with_cap(self.coeffs.iter().map(|c| c * s).collect(), self.cap())
    }

    pub fn mul(&self, o: &Self) -> Self {
        // an error term O(x^p) in one factor is multiplied by the other's valuation
        let cap = self.cap().saturating_add(o.valuation()).min(o.cap().saturating_add(self.valuation()));
        let cap = if self.exact && o.exact { u32::MAX } else { cap.min(u32::MAX - 1) };
        let limit = if cap == u32::MAX { usize::MAX } else { cap as usize };
        let n = (self.coeffs.len() + o.coeffs.len()).saturating_sub(1).min(limit);
        let mut c = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] += &(a * b);
            }
        }
        Self::with_cap(c, cap)
    }

    /// `d/dx`; loses one order unless exact.
    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, a)| a * &Scalar::from_int(k as i64)).collect();
        Self::with_cap(c, if self.exact { u32::MAX } else { self.prec.saturating_sub(1) })
    }

    /// Antiderivative with zero constant term; gains one order.
    pub fn integral(&self) -> Self {
        let mut c = vec![Scalar::zero()];
        c.extend(self.coeffs.iter().enumerate().map(|(k, a)| a / &Scalar::from_int(k as i64 + 1)));
        Self::with_cap(c, if self.exact { u32::MAX } else { self.prec + 1 })
    }

    /// `1/self` modulo `x^prec` (exact inputs are expanded to `order`).
    pub fn inv(&self, order: u32) -> Result<Self> {
        let c0 = self.coeff(0);
        let Some(i0) = c0.inv() else {
            return Err(Error::Invalid("series with zero constant term is not invertible".into()));
        };
        let prec = self.cap().min(order + 1);
        let mut out = vec![i0.clone()];
        for k in 1..prec as usize {
            let mut s = Scalar::zero();
            for j in 1..=k {
                s += &(&self.coeff(j) * &out[k - j]);
            }
            out.push(-&(&s * &i0));
        }
        Ok(Self { coeffs: out, prec, exact: false }.trim())
    }

    /// `self(inner(x))` for `inner(0) = 0`.
    pub fn compose(&self, inner: &Self, order: u32) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::Invalid("inner series must vanish at 0".into()));
        }
        let cap = if self.exact && inner.exact { u32::MAX } else { self.cap().min(inner.cap()) };
        let cap = cap.min(order + 1);
        let mut acc = TruncSeries::zero_exact();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&TruncSeries::constant(c.clone())).truncate(cap.saturating_sub(1));
        }
        Ok(Self::with_cap(acc.coeffs, cap))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            parts.push(match (k, c.is_one()) {
                (0, _) => c.to_string(),
                (_, true) => m,
                _ => format!("{c}*{m}"),
            });
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.exact {
            write!(f, "{body}")
        } else {
            write!(f, "{body} + O(x^{})", self.prec)
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Σ aᵢ(x) yⁱ` with series coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesPolyY {
    coeffs: Vec<TruncSeries>,
}

impl SeriesPolyY {
    pub fn new(mut coeffs: Vec<TruncSeries>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_exact() && c.is_zero_known()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(TruncSeries::zero_exact());
        }
        Self { coeffs }
    }

    /// Exact embedding of a polynomial in `x, y`.
    pub fn from_poly(p: &SparsePoly) -> Self {
        let dy = p.degree_in(1) as usize;
        let dx = p.degree_in(0) as usize;
        let mut c = vec![vec![Scalar::zero(); dx + 1]; dy + 1];
        for (m, v) in p.terms() {
            c[m.0[1] as usize][m.0[0] as usize] = v.clone();
        }
        Self::new(c.into_iter().map(TruncSeries::exact).collect())
    }

    pub fn y() -> Self {
        Self::new(vec![TruncSeries::zero_exact(), TruncSeries::constant(Scalar::one())])
    }

    pub fn constant(c: TruncSeries) -> Self {
        Self::new(vec![c])
    }

    pub fn ydeg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = TruncSeries::zero_exact();
        Self::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z).add(o.coeffs.get(i).unwrap_or(&z))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut out = vec![TruncSeries::zero_exact(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn dx(&self) -> Self {
        Self::new(self.coeffs.iter().map(TruncSeries::derivative).collect())
    }

    pub fn dy(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, a)| a.scale(&Scalar::from_int(k as i64))).collect();
        Self::new(c)
    }

    /// Every coefficient truncated to order `n`.
    pub fn truncate(&self, n: u32) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.truncate(n)).collect())
    }

    /// Largest `a` such that the value is known to vanish modulo `x^a` (`u32::MAX` if exactly zero).
    pub fn vanishing_order(&self) -> u32 {
        self.coeffs.iter().map(TruncSeries::valuation).min().unwrap_or(u32::MAX)
    }
}

impl fmt::Display for SeriesPolyY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact() && c.is_zero_known() && self.coeffs.len() > 1 {
                continue;
            }
            let y = match i {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            };
            if i == 0 {
                parts.push(format!("({c})"));
            } else if c.is_exact() && c.coeffs() == [Scalar::one()] {
                parts.push(y);
            } else {
                parts.push(format!("({c})*{y}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Monic in y with every lower coefficient vanishing at `x = 0`.
pub fn is_weierstrass_polynomial(p: &SeriesPolyY) -> bool {
    let n = p.ydeg();
    let lead = &p.coeffs()[n];
    let lead_is_one = lead.coeff(0).is_one() && lead.coeffs().iter().skip(1).all(|c| c.is_zero());
    lead_is_one && p.coeffs()[..n].iter().all(|a| a.coeff(0).is_zero())
}

/// `X(f) = P·∂f/∂x + Q·∂f/∂y`.
pub fn lie_series(field: &VectorField, f: &SeriesPolyY) -> SeriesPolyY {
    let p = SeriesPolyY::from_poly(field.p());
    let q = SeriesPolyY::from_poly(field.q());
    p.mul(&f.dx()).add(&q.mul(&f.dy()))
}

/// Evaluates a polynomial in `x, y` at `y = g(x)`.
fn eval_at(p: &SparsePoly, g: &TruncSeries) -> TruncSeries {
    let sp = SeriesPolyY::from_poly(p);
    let mut acc = TruncSeries::zero_exact();
    for c in sp.coeffs().iter().rev() {
        acc = acc.mul(g).add(c);
    }
    acc
}

/// The solution `y = g(x)`, `g(0) = 0`, of `dy/dx = Q/P`, with coefficients
/// through `x^(N+1)` so that the residual `P(x,g)·g' - Q(x,g)` vanishes modulo `x^(N+1)`.
pub fn formal_solution(field: &VectorField, order: u32) -> Result<TruncSeries> {
    let zero = [Scalar::zero(), Scalar::zero()];
    if field.p().eval(&zero).is_zero() {
        return Err(Error::SingularAtOrigin);
    }
    let mut g: Vec<Scalar> = vec![Scalar::zero()];
    for k in 0..=order {
        // g known modulo x^(k+1); the x^k coefficient of Q/P fixes g_{k+1}
        let gs = TruncSeries::new(g.clone(), k);
        let pv = eval_at(field.p(), &gs).truncate(k);
        let qv = eval_at(field.q(), &gs).truncate(k);
        let f = qv.mul(&pv.inv(k)?);
        let next = &f.coeff(k as usize) / &Scalar::from_int(k as i64 + 1);
        g.push(next);
    }
    let out = TruncSeries::new(g, order + 1);
    debug_assert!({
        let p = eval_at(field.p(), &out);
        let q = eval_at(field.q(), &out);
        p.mul(&out.derivative()).sub(&q).valuation() > order
    });
    Ok(out)
}

/// `C = y - g(x)` from [`formal_solution`] with its cofactor `K = X(C)/C`,
/// obtained by synthetic division in y.
pub fn formal_curve(field: &VectorField, order: u32) -> Result<(SeriesPolyY, SeriesPolyY)> {
    let g = formal_solution(field, order)?;
    let c = SeriesPolyY::y().sub(&SeriesPolyY::constant(g.clone()));
    let xc = lie_series(field, &c);
    let a = xc.coeffs();
    let n = a.len() - 1;
    if n == 0 {
        return Ok((c, SeriesPolyY::constant(TruncSeries::zero_exact())));
    }
    let mut q = vec![TruncSeries::zero_exact(); n];
    q[n - 1] = a[n].clone();
    for k in (1..n).rev() {
        q[k - 1] = a[k].add(&g.mul(&q[k])).truncate(order);
    }
    let k = SeriesPolyY::new(q).truncate(order);
    Ok((c, k))
}

/// Order to which an identity was verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormalCheck {
    pub holds: bool,
    /// Largest `a <= N+1` with the residual vanishing modulo `x^a`.
    pub achieved: u32,
}

/// `X(C) - K·C ≡ 0 (mod x^(N+1))`.
pub fn verify_formal_invariant(field: &VectorField, c: &SeriesPolyY, k: &SeriesPolyY, order: u32) -> FormalCheck {
    let r = lie_series(field, c).sub(&k.mul(c));
    let achieved = r.vanishing_order().min(order + 1);
    FormalCheck { holds: achieved > order, achieved }
}

/// `V = exp(D/E) ∏ Cᵢ^{lᵢ}` with Weierstrass `E` and `Cᵢ`, checked to order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCertificate {
    pub d: SeriesPolyY,
    pub e: SeriesPolyY,
    pub curve_terms: Vec<(SeriesPolyY, Scalar)>,
    pub order: u32,
}

/// Verifies `E²∏Cᵢ·[X(D/E) + Σlᵢ X(Cᵢ)/Cᵢ - div] ≡ 0 (mod x^(N+1))` in cleared form.
pub fn check_weierstrass_certificate(field: &VectorField, cert: &WeierstrassCertificate) -> Result<FormalCheck> {
    if !is_weierstrass_polynomial(&cert.e) {
        return Err(Error::MalformedCertificate(format!("E = {} is not a Weierstrass polynomial", cert.e)));
    }
    for (c, _) in &cert.curve_terms {
        if !is_weierstrass_polynomial(c) {
            return Err(Error::MalformedCertificate(format!("C = {c} is not a Weierstrass polynomial")));
        }
    }
    let one = SeriesPolyY::constant(TruncSeries::constant(Scalar::one()));
    let prod = cert.curve_terms.iter().fold(one.clone(), |acc, (c, _)| acc.mul(c));
    let e2 = cert.e.mul(&cert.e);
    let xd = lie_series(field, &cert.d);
    let xe = lie_series(field, &cert.e);
    let mut total = prod.mul(&cert.e.mul(&xd).sub(&cert.d.mul(&xe)));
    for (i, (c, l)) in cert.curve_terms.iter().enumerate() {
        let others = cert.curve_terms.iter().enumerate().filter(|(j, _)| *j != i).fold(one.clone(), |acc, (_, (o, _))| acc.mul(o));
        total = total.add(&e2.mul(&lie_series(field, c)).mul(&others).scale(l));
    }
    let div = SeriesPolyY::from_poly(&field.divergence());
    total = total.sub(&e2.mul(&prod).mul(&div));
    let achieved = total.vanishing_order().min(cert.order + 1);
    Ok(FormalCheck { holds: achieved > cert.order, achieved })
}
