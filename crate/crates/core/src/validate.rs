//! Closedness of rational 1-forms and numeric conservation checks.
//!
//! Everything here except [`numeric_drift`] is exact. The integrator is a
//! Dormand-Prince 5(4) pair with adaptive steps.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{partial_fractions, RationalFunction, Scalar, SparsePoly, SymbolicExpIntegral, UniPoly};
use crate::darboux::{DarbouxCertificate, Role};
use crate::error::{Error, Result};
use crate::vectorfield::{integrate, VectorField, XOnlyIntegratingFactor};

/// `a dx + b dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOneForm {
    pub a: RationalFunction,
    pub b: RationalFunction,
}

impl RationalOneForm {
    /// `(dη ≡ 0, ∂b/∂x - ∂a/∂y)`.
    pub fn closedness_check(&self) -> (bool, RationalFunction) {
        let r = self.b.derivative(0).sub(&self.a.derivative(1));
        (r.is_zero(), r)
    }
}

/// `(Q dx - P dy) / V`.
pub fn iif_to_one_form(field: &VectorField, v: &RationalFunction) -> Result<RationalOneForm> {
    if v.is_zero() {
        return Err(Error::Invalid("V = 0".into()));
    }
    let a = RationalFunction::from_poly(field.q().clone()).div(v)?;
    let b = RationalFunction::from_poly(-field.p()).div(v)?;
    Ok(RationalOneForm { a, b })
}

/// A real-valued function of `(x, y)` built for numeric evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum DriftExpr {
    Poly(SparsePoly),
    Rational(RationalFunction),
    /// Integer exponents accept any base; others need a positive one.
    Pow(Box<DriftExpr>, f64),
    Exp(Box<DriftExpr>),
    Product(Vec<DriftExpr>),
    Sum(Vec<DriftExpr>),
}

fn real_coeffs(p: &SparsePoly) -> Result<()> {
    if p.is_real() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{p} has non-real coefficients")))
    }
}

impl DriftExpr {
    /// Rejects anything with a non-real coefficient.
    pub fn check_real(&self) -> Result<()> {
        match self {
            DriftExpr::Poly(p) => real_coeffs(p),
            DriftExpr::Rational(r) => real_coeffs(r.num()).and(real_coeffs(r.den())),
            DriftExpr::Pow(b, e) if e.is_finite() => b.check_real(),
            DriftExpr::Pow(_, e) => Err(Error::Invalid(format!("exponent {e}"))),
            DriftExpr::Exp(b) => b.check_real(),
            DriftExpr::Product(v) | DriftExpr::Sum(v) => v.iter().try_for_each(|e| e.check_real()),
        }
    }

    pub fn eval(&self, pt: &[f64; 2]) -> Result<f64> {
        let v = match self {
            DriftExpr::Poly(p) => p.eval_f64(pt).ok_or_else(|| Error::Invalid("complex polynomial".into()))?,
            DriftExpr::Rational(r) => {
                let d = r.den().eval_f64(pt).ok_or_else(|| Error::Invalid("complex denominator".into()))?;
                if d == 0.0 {
                    return Err(Error::DomainCrossing(format!("{} vanishes at ({}, {})", r.den(), pt[0], pt[1])));
                }
                r.num().eval_f64(pt).ok_or_else(|| Error::Invalid("complex numerator".into()))? / d
            }
            DriftExpr::Pow(b, e) => {
                let base = b.eval(pt)?;
                if e.fract() == 0.0 {
                    if base == 0.0 && *e < 0.0 {
                        return Err(Error::DomainCrossing(format!("zero base at ({}, {})", pt[0], pt[1])));
                    }
                    base.powi(*e as i32)
                } else if base > 0.0 {
                    base.powf(*e)
                } else {
                    return Err(Error::DomainCrossing(format!("base {base} raised to {e} at ({}, {})", pt[0], pt[1])));
                }
            }
            DriftExpr::Exp(b) => b.eval(pt)?.exp(),
            DriftExpr::Product(v) => v.iter().try_fold(1.0, |acc, e| e.eval(pt).map(|x| acc * x))?,
            DriftExpr::Sum(v) => v.iter().try_fold(0.0, |acc, e| e.eval(pt).map(|x| acc + x))?,
        };
        Ok(v)
    }

    /// `∏ Cᵢ^{λᵢ} · exp(D/E)` for a real first-integral certificate.
    pub fn from_certificate(cert: &DarbouxCertificate) -> Result<DriftExpr> {
        if cert.role != Role::FirstIntegral {
            return Err(Error::Invalid("numeric checks need a first integral".into()));
        }
        let exponent = |s: &Scalar| -> Result<f64> {
            s.to_f64().ok_or_else(|| Error::Invalid(format!("exponent {s} is not real")))
        };
        let mut parts = Vec::new();
        for (c, l) in &cert.curve_terms {
            parts.push(DriftExpr::Pow(Box::new(DriftExpr::Poly(c.c.clone())), exponent(l)?));
        }
        if !cert.exp_terms.is_empty() {
            parts.push(DriftExpr::Exp(Box::new(DriftExpr::Rational(cert.exp_part()))));
        }
        let e = DriftExpr::Product(parts);
        e.check_real()?;
        Ok(e)
    }

    /// `exp(∫r dx)` as a product of powers of `x - a` and an exponential.
    pub fn from_exp_integral(r: &SymbolicExpIntegral) -> Result<DriftExpr> {
        let vars = r.vars();
        let x = SparsePoly::var(vars, r.var());
        let mut parts = Vec::new();
        for (a, e) in &r.factors {
            let e = e.to_f64().ok_or_else(|| Error::Invalid(format!("exponent {e} is not real")))?;
            let lin = &x - &SparsePoly::constant(vars, a.clone());
            parts.push(DriftExpr::Pow(Box::new(DriftExpr::Poly(lin)), e));
        }
        if !r.exp_part.is_zero() {
            parts.push(DriftExpr::Exp(Box::new(DriftExpr::Rational(r.exp_part.clone()))));
        }
        let e = DriftExpr::Product(parts);
        e.check_real()?;
        Ok(e)
    }
}

impl std::fmt::Display for DriftExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DriftExpr::Poly(p) => write!(f, "({p})"),
            DriftExpr::Rational(r) => write!(f, "({r})"),
            DriftExpr::Pow(b, e) => write!(f, "{b}^({e})"),
            DriftExpr::Exp(b) => write!(f, "exp{b}"),
            DriftExpr::Product(v) if v.is_empty() => write!(f, "1"),
            DriftExpr::Sum(v) if v.is_empty() => write!(f, "0"),
            DriftExpr::Product(v) => write!(f, "{}", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("*")),
            DriftExpr::Sum(v) => write!(f, "({})", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" + ")),
        }
    }
}

/// A first integral from an x-only integrating factor `R`, in the two cases
/// with an elementary closed form: `R = exp(c·x + d)` with polynomial data, or
/// `R` rational with a rational antiderivative.
///
/// With `Ψ = ∫P dy`, `H = -R·Ψ + ∫R·G dx` where `G = Q + r·Ψ + Ψ_x` is free of y.
pub fn x_only_first_integral(field: &VectorField, xf: &XOnlyIntegratingFactor) -> Result<DriftExpr> {
    if !xf.verify(field) {
        return Err(Error::Invalid("integrating factor does not verify".into()));
    }
    let vars = field.vars();
    let psi = integrate(field.p(), 1);
    let g = xf
        .r
        .mul_poly(&psi)
        .add(&RationalFunction::from_poly(field.q() + &psi.derivative(0)));
    if g.involves(1) {
        return Err(Error::Invalid("x-only factor gives a y-dependent remainder".into()));
    }
    let big_r = &xf.big_r;

    if let Some(rr) = big_r.as_rational() {
        let rg = rr.mul(&g);
        let pf = partial_fractions(&rg, 0)?;
        if pf.terms.iter().any(|t| t.power == 1) {
            return Err(Error::NoSolution("antiderivative has logarithms".into()));
        }
        let mut f = RationalFunction::from_poly(pf.polynomial_part.integral().to_sparse(vars, 0));
        for t in &pf.terms {
            let k = Scalar::from_int(1 - t.power as i64);
            let den = UniPoly::linear(&t.root).pow(t.power - 1).to_sparse(vars, 0);
            let c = SparsePoly::constant(vars, &t.coefficient / &k);
            f = f.add(&RationalFunction::new(c, den)?);
        }
        let h = f.sub(&rr.mul_poly(&psi));
        return Ok(DriftExpr::Rational(h));
    }

    let lin = big_r.exp_part.as_poly().filter(|p| p.total_degree().unwrap_or(0) <= 1);
    let (Some(e), true, Some(gp)) = (lin, big_r.factors.is_empty(), g.as_poly()) else {
        return Err(Error::NoSolution("no elementary closed form for the quadrature".into()));
    };
    // F' + c·F = G
    let c = e.coeff(&crate::algebra::Monomial(vec![1, 0]));
    let mut f = SparsePoly::zero(vars);
    if c.is_zero() {
        f = integrate(gp, 0);
    } else {
        let cinv = c.inv().unwrap();
        let mut term = gp.scale(&cinv);
        while !term.is_zero() {
            f = &f + &term;
            term = term.derivative(0).scale(&-&cinv);
        }
    }
    let h = DriftExpr::Product(vec![
        DriftExpr::Exp(Box::new(DriftExpr::Poly(e.clone()))),
        DriftExpr::Poly(&f - &psi),
    ]);
    h.check_real()?;
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DriftOptions {
    pub rtol: f64,
    pub atol: f64,
    pub floor: f64,
    pub max_steps: usize,
}

impl Default for DriftOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, floor: 1e-30, max_steps: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftReport {
    pub samples: usize,
    pub max_relative_drift: f64,
    pub span: [f64; 2],
    pub min_step: f64,
    pub max_step: f64,
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Integrates the field from `start` over `span` and tracks `|H(t) - H(0)| / max(|H(0)|, floor)`.
pub fn numeric_drift(
    field: &VectorField,
    h: &DriftExpr,
    start: [f64; 2],
    span: [f64; 2],
    opts: &DriftOptions,
) -> Result<DriftReport> {
    if !field.is_real() {
        return Err(Error::Invalid("numeric checks need a real field".into()));
    }
    h.check_real()?;
    let (p, q) = (field.p().clone(), field.q().clone());
    let rhs = |y: &[f64; 2]| -> [f64; 2] { [p.eval_f64(y).unwrap(), q.eval_f64(y).unwrap()] };

    let h0 = h.eval(&start)?;
    let scale = h0.abs().max(opts.floor);
    let (t0, t1) = (span[0], span[1]);
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let total = (t1 - t0).abs();
    let mut report = DriftReport { samples: 1, max_relative_drift: 0.0, span, min_step: f64::INFINITY, max_step: 0.0 };
    if total == 0.0 {
        report.min_step = 0.0;
        return Ok(report);
    }

    let mut t = t0;
    let mut y = start;
    let mut step = (total * 1e-3).min(1e-2);
    let mut k1 = rhs(&y);
    let mut steps = 0usize;
    while (t1 - t) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::StepFailure(format!("more than {} steps", opts.max_steps)));
        }
        step = step.min((t1 - t).abs());
        if step < 1e-14 * (1.0 + t.abs()) {
            return Err(Error::StepFailure(format!("step size underflow at t = {t}")));
        }
        let hs = step * dir;
        let mut k = [[0.0f64; 2]; 7];
        k[0] = k1;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += hs * A[s][j] * kj[0];
                ys[1] += hs * A[s][j] * kj[1];
            }
            k[s] = rhs(&ys);
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for i in 0..2 {
            let mut d = 0.0;
            for s in 0..7 {
                y5[i] += hs * B5[s] * k[s][i];
                d += hs * (B5[s] - B4[s]) * k[s][i];
            }
            let sc = opts.atol + opts.rtol * y[i].abs().max(y5[i].abs());
            err = err.max((d / sc).abs());
        }
        if !err.is_finite() || !y5[0].is_finite() || !y5[1].is_finite() {
            step *= 0.25;
            continue;
        }
        if err <= 1.0 {
            t += hs;
            y = y5;
            k1 = k[6];
            report.samples += 1;
            report.min_step = report.min_step.min(step);
            report.max_step = report.max_step.max(step);
            let drift = (h.eval(&y)? - h0).abs() / scale;
            report.max_relative_drift = report.max_relative_drift.max(drift);
        }
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        step *= fac;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vars;

    fn rf(n: SparsePoly, d: SparsePoly) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn log_form_is_closed() {
        let v = Vars::xy();
        let (x, y) = (SparsePoly::var(&v, 0), SparsePoly::var(&v, 1));
        let one = SparsePoly::one(&v);
        let form = RationalOneForm { a: rf(one.clone(), x.clone()), b: rf(-&one, y.clone()) };
        assert!(form.closedness_check().0);
        let form = RationalOneForm { a: RationalFunction::from_poly(y), b: RationalFunction::zero(&v) };
        let (ok, r) = form.closedness_check();
        assert!(!ok);
        assert_eq!(r.to_string(), "-1");
    }

    #[test]
    fn separable_form_is_closed() {
        let f = VectorField::from_int_terms(&[(1, &[2, 0]), (-1, &[1, 0])], &[(1, &[0, 2]), (-1, &[0, 1])]).unwrap();
        let v = RationalFunction::from_poly(f.p() * f.q());
        assert!(iif_to_one_form(&f, &v).unwrap().closedness_check().0);
    }

    #[test]
    fn saddle_forms() {
        let f = VectorField::from_int_terms(&[(1, &[1, 0])], &[(1, &[0, 1])]).unwrap();
        let vars = f.vars().clone();
        let xy = RationalFunction::from_poly(SparsePoly::from_int_terms(&vars, &[(1, &[1, 1])]));
        assert!(iif_to_one_form(&f, &xy).unwrap().closedness_check().0);
        let x = RationalFunction::from_poly(SparsePoly::var(&vars, 0));
        assert!(!iif_to_one_form(&f, &x).unwrap().closedness_check().0);
        let rot = VectorField::from_int_terms(&[(-1, &[0, 1])], &[(1, &[1, 0])]).unwrap();
        let one = RationalFunction::from_poly(SparsePoly::one(&vars));
        let form = iif_to_one_form(&rot, &one).unwrap();
        assert_eq!((form.a.to_string(), form.b.to_string()), ("x".into(), "y".into()));
        assert!(form.closedness_check().0);
    }

    #[test]
    fn hyperbolic_drift() {
        let f = VectorField::from_int_terms(&[(1, &[1, 0])], &[(-1, &[0, 1])]).unwrap();
        let h = DriftExpr::Poly(SparsePoly::from_int_terms(f.vars(), &[(1, &[1, 1])]));
        let rep = numeric_drift(&f, &h, [1.0, 1.0], [0.0, 3.0], &DriftOptions::default()).unwrap();
        assert!(rep.max_relative_drift < 1e-9, "{rep:?}");
        assert!(rep.samples > 2);
    }

    #[test]
    fn x_only_pipeline() {
        let f = VectorField::from_int_terms(&[(1, &[0, 0])], &[(1, &[1, 0]), (1, &[0, 1])]).unwrap();
        let xf = f.x_only_integrating_factor().unwrap();
        let h = x_only_first_integral(&f, &xf).unwrap();
        // H = -exp(-x)(y + x + 1)
        let v = h.eval(&[0.0, 1.0]).unwrap();
        assert!((v + 2.0).abs() < 1e-15);
        assert_eq!(h.to_string(), "exp(-x)*(-x - y - 1)");
        let rep = numeric_drift(&f, &h, [0.0, 1.0], [0.0, 2.0], &DriftOptions::default()).unwrap();
        assert!(rep.max_relative_drift < 1e-8, "{rep:?}");
    }

    #[test]
    fn blow_up_is_a_step_failure() {
        let f = VectorField::from_int_terms(&[(1, &[2, 0]), (-1, &[1, 0])], &[(1, &[0, 2]), (-1, &[0, 1])]).unwrap();
        let v = f.vars().clone();
        let num = SparsePoly::from_int_terms(&v, &[(1, &[1, 1]), (-1, &[1, 0])]);
        let den = SparsePoly::from_int_terms(&v, &[(1, &[1, 1]), (-1, &[0, 1])]);
        let h = DriftExpr::Rational(rf(num, den));
        let err = numeric_drift(&f, &h, [2.0, 3.0], [0.0, 1.0], &DriftOptions::default()).unwrap_err();
        assert!(matches!(err, Error::StepFailure(_)), "{err:?}");
        let rep = numeric_drift(&f, &h, [2.0, 3.0], [0.0, 0.3], &DriftOptions::default()).unwrap();
        assert!(rep.max_relative_drift < 1e-8, "{rep:?}");
    }

    #[test]
    fn fractional_power_of_negative_base() {
        let f = VectorField::from_int_terms(&[(-1, &[0, 0])], &[]).unwrap();
        let x = SparsePoly::var(f.vars(), 0);
        let h = DriftExpr::Pow(Box::new(DriftExpr::Poly(x)), 0.5);
        let err = numeric_drift(&f, &h, [0.5, 0.0], [0.0, 2.0], &DriftOptions::default()).unwrap_err();
        assert!(matches!(err, Error::DomainCrossing(_)), "{err:?}");
    }
}
