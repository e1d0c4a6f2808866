//! Integrating factors `M = α(x)·S(x,y) / ∏(y - gᵢ(x))` built on polynomial
//! solutions, the first integrals they give, and the two-case classification.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{log_quadrature, Monomial, RationalFunction, Scalar, SparsePoly, SymbolicExpIntegral, UniPoly, Vars};
use crate::darboux::{DarbouxCertificate, Role};
use crate::error::{Error, Result};
use crate::invariants::{ExpFactor, InvariantCurve, PolynomialSolution};
use crate::polysolve::{solve_system, Budget};
use crate::vectorfield::VectorField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PainleveIntegratingFactor {
    pub solutions: Vec<PolynomialSolution>,
    pub s: SparsePoly,
    /// `α'/α`, free of y.
    pub r: RationalFunction,
    /// `exp(∫ r dx)`; absent when `r` has poles outside ℚ(i).
    pub alpha: Option<SymbolicExpIntegral>,
    pub quadrature_only: bool,
    /// True when `deg_y S` differs from `ℓ - m - 1`.
    pub violates_degree_count: bool,
}

/// `Wᵢ = (Q - P·gᵢ') / (y - gᵢ)`, exact by the factor theorem.
pub fn w_poly(field: &VectorField, g: &PolynomialSolution) -> Result<SparsePoly> {
    let y = SparsePoly::var(field.vars(), 1);
    let num = &field.q().clone() - &(field.p() * &g.g.derivative(0));
    num.exact_div(&(&y - &g.g))
        .ok_or_else(|| Error::Invalid(format!("y = {} is not a solution", g.g)))
}

impl PainleveIntegratingFactor {
    pub fn w_sum(&self, field: &VectorField) -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(field.vars());
        for g in &self.solutions {
            acc = &acc + &w_poly(field, g)?;
        }
        Ok(acc)
    }

    /// `r·P·S + X(S) + (div - ΣWᵢ)·S`, cleared of the denominator of `r`.
    pub fn residual(&self, field: &VectorField) -> Result<SparsePoly> {
        let rest = &field.lie_derivative(&self.s) + &(&(&field.divergence() - &self.w_sum(field)?) * &self.s);
        Ok(&(&(self.r.num() * field.p()) * &self.s) + &(self.r.den() * &rest))
    }

    pub fn verify(&self, field: &VectorField) -> bool {
        let Ok(res) = self.residual(field) else { return false };
        let alpha_ok = match &self.alpha {
            Some(a) => a.log_derivative() == self.r,
            None => self.quadrature_only,
        };
        res.is_zero() && !self.s.is_zero() && !self.r.involves(1) && alpha_ok && self.solutions.iter().all(|g| g.verify(field))
    }

    /// `∏(y - gᵢ)`.
    pub fn pole_product(&self, vars: &Vars) -> SparsePoly {
        let y = SparsePoly::var(vars, 1);
        self.solutions.iter().fold(SparsePoly::one(vars), |acc, g| &acc * &(&y - &g.g))
    }

    /// `M` itself when `α` is rational.
    pub fn as_rational(&self) -> Option<RationalFunction> {
        let a = self.alpha.as_ref()?.as_rational()?;
        let vars = self.s.vars();
        a.mul_poly(&self.s).div(&RationalFunction::from_poly(self.pole_product(vars))).ok()
    }

    /// `∂/∂x log M` and `∂/∂y log M` as rational functions.
    fn log_gradient(&self) -> (RationalFunction, RationalFunction) {
        let vars = self.s.vars();
        let s = RationalFunction::from_poly(self.s.clone());
        let mut dx = self.r.add(&RationalFunction::from_poly(self.s.derivative(0)).div(&s).unwrap());
        let mut dy = RationalFunction::from_poly(self.s.derivative(1)).div(&s).unwrap();
        let y = SparsePoly::var(vars, 1);
        for g in &self.solutions {
            let c = &y - &g.g;
            let inv = RationalFunction::new(SparsePoly::one(vars), c.clone()).unwrap();
            dx = dx.sub(&inv.mul_poly(&c.derivative(0)));
            dy = dy.sub(&inv);
        }
        (dx, dy)
    }
}

/// Whether `a / b` is constant.
pub fn projectively_equal(a: &PainleveIntegratingFactor, b: &PainleveIntegratingFactor) -> bool {
    let (ax, ay) = a.log_gradient();
    let (bx, by) = b.log_gradient();
    ax == bx && ay == by
}

/// Coefficients of `S`: monomials `x^i y^j` with `i <= deg_x`, `j <= deg_y`, ascending graded-lex.
fn s_monomials(deg_x: u32, deg_y: u32) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = (0..=deg_x).flat_map(|i| (0..=deg_y).map(move |j| Monomial(vec![i, j]))).collect();
    v.sort();
    v
}

fn y_free(rf: &RationalFunction) -> bool {
    !rf.involves(1)
}

/// Searches for `S` (up to the given degrees) making `T = (X(S) + (div - ΣWᵢ)S)/(P·S)` free of y.
pub fn painleve_search(
    field: &VectorField,
    chosen: &[PolynomialSolution],
    deg_y_s: u32,
    deg_x_s: u32,
    budget: &Budget,
) -> Result<Vec<PainleveIntegratingFactor>> {
    for (i, g) in chosen.iter().enumerate() {
        if !g.verify(field) {
            return Err(Error::Invalid(format!("y = {} is not a solution", g.g)));
        }
        if chosen[..i].contains(g) {
            return Err(Error::Invalid(format!("solution {} repeated", g.g)));
        }
    }
    if field.p().is_zero() {
        return Err(Error::Invalid("P = 0".into()));
    }
    let xy = field.vars().clone();
    let mut wsum = SparsePoly::zero(&xy);
    for g in chosen {
        wsum = &wsum + &w_poly(field, g)?;
    }
    let base = &field.divergence() - &wsum;
    let monos = s_monomials(deg_x_s, deg_y_s);
    let count = chosen.len() as i64 - field.degree() as i64 - 1;

    let branch = |lead: usize| -> Result<Vec<SparsePoly>> {
        let mut names: Vec<String> = xy.names().to_vec();
        names.extend((0..lead).map(|j| format!("s{j}")));
        let ring = Vars::new(&names);
        let u = Vars::new(&names[2..]);
        let lift = |p: &SparsePoly| p.embed(&ring).unwrap();
        let mut s = SparsePoly::monomial(&ring, pad(&monos[lead], ring.len()), Scalar::one());
        for (j, m) in monos[..lead].iter().enumerate() {
            s = &s + &(&SparsePoly::var(&ring, 2 + j) * &SparsePoly::monomial(&ring, pad(m, ring.len()), Scalar::one()));
        }
        let (p, q) = (lift(field.p()), lift(field.q()));
        let n = &(&(&p * &s.derivative(0)) + &(&q * &s.derivative(1))) + &(&lift(&base) * &s);
        let d = &p * &s;
        let e = &(&n.derivative(1) * &d) - &(&n * &d.derivative(1));
        let eqs: Vec<SparsePoly> = e.split_leading_vars(2, &u).into_values().collect();
        let sols = solve_system(&u, &eqs, budget)?;
        let mut pts: Vec<Vec<Scalar>> = sols.points.clone();
        for f in &sols.families {
            let k = f.free.len();
            let mut params = vec![vec![Scalar::zero(); k]];
            for i in 0..k {
                let mut v = vec![Scalar::zero(); k];
                v[i] = Scalar::one();
                params.push(v);
            }
            pts.extend(params.iter().map(|pp| f.member(pp)));
        }
        Ok(pts
            .iter()
            .map(|pt| {
                let mut s = SparsePoly::monomial(&xy, monos[lead].clone(), Scalar::one());
                for (j, m) in monos[..lead].iter().enumerate() {
                    s = &s + &SparsePoly::monomial(&xy, m.clone(), pt[j].clone());
                }
                s
            })
            .collect())
    };
    let per_branch: Vec<Result<Vec<SparsePoly>>> = (0..monos.len()).into_par_iter().map(branch).collect();

    let mut out: Vec<PainleveIntegratingFactor> = Vec::new();
    for res in per_branch {
        for s in res? {
            let n = &field.lie_derivative(&s) + &(&base * &s);
            let t = RationalFunction::new(n, field.p() * &s)?;
            if !y_free(&t) {
                continue;
            }
            let r = t.neg();
            let (alpha, quadrature_only) = match log_quadrature(&r, 0) {
                Ok(a) => (Some(a), false),
                Err(Error::UnsupportedDenominator { .. }) => (None, true),
                Err(e) => return Err(e),
            };
            let violates = count < 0 || s.degree_in(1) as i64 != count;
            let m = PainleveIntegratingFactor {
                solutions: chosen.to_vec(),
                s,
                r,
                alpha,
                quadrature_only,
                violates_degree_count: violates,
            };
            if m.verify(field) && !out.iter().any(|o| projectively_equal(o, &m)) {
                out.push(m);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NoSolution(format!("no S with deg_y <= {deg_y_s}, deg_x <= {deg_x_s}")));
    }
    Ok(out)
}

fn pad(m: &Monomial, n: usize) -> Monomial {
    let mut e = m.0.clone();
    e.resize(n, 0);
    Monomial(e)
}

/// `I = ∏(y - gᵢ)^{αᵢ} · h(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PainleveFirstIntegral {
    pub terms: Vec<(PolynomialSolution, Scalar)>,
    pub h: SymbolicExpIntegral,
    /// `(log h)'`.
    pub log_h_derivative: RationalFunction,
}

impl PainleveFirstIntegral {
    /// `Σαᵢ Wᵢ + P·(log h)'`, which vanishes exactly for a first integral.
    pub fn residual(&self, field: &VectorField) -> Result<RationalFunction> {
        let mut acc = self.log_h_derivative.mul_poly(field.p());
        for (g, a) in &self.terms {
            acc = acc.add(&RationalFunction::from_poly(w_poly(field, g)?.scale(a)));
        }
        Ok(acc)
    }

    pub fn verify(&self, field: &VectorField) -> bool {
        self.terms.iter().all(|t| !t.1.is_zero())
            && self.h.log_derivative() == self.log_h_derivative
            && self.residual(field).is_ok_and(|r| r.is_zero())
    }
}

/// Reads off the exponents `αᵢ` from the partial fractions of `-M·P` in y.
pub fn painleve_first_integral(field: &VectorField, m: &PainleveIntegratingFactor) -> Result<PainleveFirstIntegral> {
    if !m.verify(field) {
        return Err(Error::Invalid("integrating factor does not verify".into()));
    }
    let Some(alpha) = &m.alpha else {
        return Err(Error::UnsupportedDenominator { factor: format!("denominator of r = {}", m.r) });
    };
    let alpha = alpha
        .as_rational()
        .ok_or_else(|| Error::NonConstantExponents(format!("alpha = {alpha} is not rational")))?;
    let vars = field.vars().clone();
    let neg_mp = m.as_rational().expect("alpha is rational").mul_poly(&-field.p());
    let y = SparsePoly::var(&vars, 1);

    let mut terms = Vec::new();
    let mut recombined = RationalFunction::zero(&vars);
    for (i, g) in m.solutions.iter().enumerate() {
        // residue at y = gᵢ: -α P(x,gᵢ) S(x,gᵢ) / ∏_{j≠i}(gᵢ - gⱼ)
        let subs = [SparsePoly::var(&vars, 0), g.g.clone()];
        let num = alpha.mul_poly(&(&-field.p().compose(&subs, &vars) * &m.s.compose(&subs, &vars)));
        let den = m.solutions.iter().enumerate().filter(|(j, _)| *j != i).fold(SparsePoly::one(&vars), |acc, (_, h)| &acc * &(&g.g - &h.g));
        let a = num.div(&RationalFunction::from_poly(den))?;
        if !a.num().is_constant() || !a.den().is_constant() {
            return Err(Error::NonConstantExponents(format!("coefficient at y = {} is {a}", g.g)));
        }
        let a = a.num().constant_term();
        if a.is_zero() {
            return Err(Error::NonConstantExponents(format!("zero exponent at y = {}", g.g)));
        }
        recombined = recombined.add(&RationalFunction::new(SparsePoly::constant(&vars, a.clone()), &y - &g.g)?);
        terms.push((g.clone(), a));
    }
    if recombined != neg_mp {
        return Err(Error::NonConstantExponents("-M·P has a part beyond simple poles at the solutions".into()));
    }
    // (log h)' = M Q + Σ αᵢ gᵢ'/(y - gᵢ)
    let mut lh = m.as_rational().unwrap().mul_poly(field.q());
    for (g, a) in &terms {
        lh = lh.add(&RationalFunction::new(g.g.derivative(0).scale(a), &y - &g.g)?);
    }
    if lh.involves(1) {
        return Err(Error::NonConstantExponents(format!("(log h)' = {lh} depends on y")));
    }
    let h = log_quadrature(&lh, 0)?;
    let out = PainleveFirstIntegral { terms, h, log_h_derivative: lh };
    if !out.verify(field) {
        return Err(Error::Invalid("first integral failed its exact check".into()));
    }
    Ok(out)
}

/// Constant-ratio check `M₂/M₁` as a first integral: `X(log M₂ - log M₁) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioFirstIntegral {
    pub numerator: PainleveIntegratingFactor,
    pub denominator: PainleveIntegratingFactor,
}

impl RatioFirstIntegral {
    pub fn verify(&self, field: &VectorField) -> bool {
        let (ax, ay) = self.numerator.log_gradient();
        let (bx, by) = self.denominator.log_gradient();
        let dx = ax.sub(&bx);
        let dy = ay.sub(&by);
        let x = dx.mul_poly(field.p()).add(&dy.mul_poly(field.q()));
        x.is_zero() && !(dx.is_zero() && dy.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Two independent factors: their ratio is a first integral.
    RiccatiReducible { first_integral: RatioFirstIntegral },
    /// A single projective class; the inverse factor `1/M` in Darboux form when buildable.
    Algebraic { factor: PainleveIntegratingFactor, certificate: Option<DarbouxCertificate>, note: Option<String> },
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::RiccatiReducible { .. } => "a",
            Classification::Algebraic { .. } => "b",
        }
    }
}

pub fn classify_factors(field: &VectorField, results: &[PainleveIntegratingFactor]) -> Result<Classification> {
    let Some(first) = results.first() else {
        return Err(Error::Invalid("no integrating factors to classify".into()));
    };
    for other in &results[1..] {
        if !projectively_equal(first, other) {
            let fi = RatioFirstIntegral { numerator: other.clone(), denominator: first.clone() };
            if fi.verify(field) {
                return Ok(Classification::RiccatiReducible { first_integral: fi });
            }
        }
    }
    let (certificate, note) = match inverse_factor_certificate(field, first) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(Classification::Algebraic { factor: first.clone(), certificate, note })
}

/// `V = 1/M = ∏(y - gᵢ) · α⁻¹ · S⁻¹` as a Darboux inverse integrating factor.
pub fn inverse_factor_certificate(field: &VectorField, m: &PainleveIntegratingFactor) -> Result<DarbouxCertificate> {
    let vars = field.vars().clone();
    let alpha = m.alpha.as_ref().ok_or_else(|| Error::UnsupportedDenominator { factor: m.r.to_string() })?;
    let y = SparsePoly::var(&vars, 1);
    let mut curve_terms: Vec<(InvariantCurve, Scalar)> = Vec::new();
    for g in &m.solutions {
        curve_terms.push((InvariantCurve { c: &y - &g.g, k: w_poly(field, g)? }, Scalar::one()));
    }
    for (a, e) in &alpha.factors {
        let lin = UniPoly::linear(a).to_sparse(&vars, 0);
        let k = field
            .p()
            .exact_div(&lin)
            .ok_or_else(|| Error::NotInvariant(format!("{lin} does not divide P")))?;
        curve_terms.push((InvariantCurve { c: lin, k }, -e));
    }
    if !m.s.is_constant() {
        let c = InvariantCurve::from_curve(field, m.s.clone())?;
        curve_terms.push((c, -Scalar::one()));
    }
    let mut exp_terms = Vec::new();
    let r = &alpha.exp_part;
    if !r.is_zero() {
        // exp(-R) with R = A/B: h = -A, g = B, n = 1, L = X(-R)
        let l = field.lie_derivative_rational(&r.neg());
        let l = l.as_poly().cloned().ok_or_else(|| Error::NotInvariant(format!("X(exp({r})) is not polynomial")))?;
        exp_terms.push((ExpFactor { h: -r.num(), g: r.den().clone(), n: 1, l }, Scalar::one()));
    }
    let cert = DarbouxCertificate { curve_terms, exp_terms, role: Role::InverseIntegratingFactor };
    let (ok, res) = cert.verify(field);
    if !ok {
        return Err(Error::NoSolution(format!("1/M does not verify as a Darboux factor (residual {res})")));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: &[(i64, &[u32])], q: &[(i64, &[u32])]) -> VectorField {
        VectorField::from_int_terms(p, q).unwrap()
    }

    fn separable() -> VectorField {
        field(&[(1, &[2, 0]), (-1, &[1, 0])], &[(1, &[0, 2]), (-1, &[0, 1])])
    }

    fn sol(f: &VectorField, terms: &[(i64, &[u32])]) -> PolynomialSolution {
        PolynomialSolution::new(SparsePoly::from_int_terms(f.vars(), terms)).unwrap()
    }

    #[test]
    fn separable_factor() {
        let f = separable();
        let gs = vec![sol(&f, &[]), sol(&f, &[(1, &[0, 0])])];
        let ms = painleve_search(&f, &gs, 0, 0, &Budget::default()).unwrap();
        assert_eq!(ms.len(), 1);
        let m = &ms[0];
        assert!(m.s.is_one());
        assert_eq!(m.alpha.as_ref().unwrap().as_rational().unwrap().to_string(), "1/(x^2 - x)");
        assert!(m.violates_degree_count);
        assert_eq!(m.as_rational().unwrap().to_string(), "1/(x^2*y^2 - x^2*y - x*y^2 + x*y)");

        let fi = painleve_first_integral(&f, m).unwrap();
        let exps: Vec<Scalar> = fi.terms.iter().map(|t| t.1.clone()).collect();
        assert_eq!(exps, vec![Scalar::one(), -Scalar::one()]);
        assert_eq!(fi.h.as_rational().unwrap().to_string(), "(x - 1)/x");

        let c = classify_factors(&f, &ms).unwrap();
        assert_eq!(c.tag(), "b");
        let Classification::Algebraic { certificate: Some(cert), .. } = c else { panic!() };
        assert!(cert.verify(&f).0);
        assert_eq!(cert.cofactor_sum(&f), f.divergence());
    }

    #[test]
    fn three_solutions_fail() {
        let f = separable();
        let gs = vec![sol(&f, &[]), sol(&f, &[(1, &[0, 0])]), sol(&f, &[(1, &[1, 0])])];
        assert!(matches!(painleve_search(&f, &gs, 0, 0, &Budget::default()), Err(Error::NoSolution(_))));
        assert!(matches!(painleve_search(&f, &gs, 0, 2, &Budget::default()), Err(Error::NoSolution(_))));
    }

    #[test]
    fn autonomous_logistic() {
        let f = field(&[(1, &[0, 0])], &[(1, &[0, 2]), (-1, &[0, 1])]);
        let gs = vec![sol(&f, &[]), sol(&f, &[(1, &[0, 0])])];
        let ms = painleve_search(&f, &gs, 0, 0, &Budget::default()).unwrap();
        assert!(ms[0].r.is_zero());
        assert!(ms[0].alpha.as_ref().unwrap().is_one());
        let fi = painleve_first_integral(&f, &ms[0]).unwrap();
        assert_eq!(fi.h.to_string(), "exp(x)");
    }

    #[test]
    fn scalar_multiple_is_one_class() {
        let f = separable();
        let gs = vec![sol(&f, &[]), sol(&f, &[(1, &[0, 0])])];
        let m = painleve_search(&f, &gs, 0, 0, &Budget::default()).unwrap().remove(0);
        let mut m2 = m.clone();
        m2.s = m.s.scale(&Scalar::from_int(2));
        assert!(projectively_equal(&m, &m2));
        assert_eq!(classify_factors(&f, &[m, m2]).unwrap().tag(), "b");
    }

    #[test]
    fn linear_equation_is_case_a() {
        // y' = y with the solution y = 0: S = 1 and S = y give 1/y and exp(-x)
        let f = field(&[(1, &[0, 0])], &[(1, &[0, 1])]);
        let gs = vec![sol(&f, &[])];
        let ms = painleve_search(&f, &gs, 1, 0, &Budget::default()).unwrap();
        assert!(ms.len() >= 2);
        let c = classify_factors(&f, &ms).unwrap();
        assert_eq!(c.tag(), "a");
        let Classification::RiccatiReducible { first_integral } = c else { panic!() };
        assert!(first_integral.verify(&f));
    }
}
