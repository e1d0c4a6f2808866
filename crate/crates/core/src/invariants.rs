//! Invariant algebraic curves, exponential factors and polynomial solutions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::linalg;
use crate::algebra::{Monomial, Scalar, SparsePoly, Vars};
use crate::error::{Error, Result};
use crate::polysolve::{solve_system, Budget, Family};
use crate::vectorfield::VectorField;

/// `X(C) = K·C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCurve {
    pub c: SparsePoly,
    pub k: SparsePoly,
}

impl InvariantCurve {
    /// Builds the curve with its cofactor computed by exact division.
    pub fn from_curve(field: &VectorField, c: SparsePoly) -> Result<Self> {
        if c.is_constant() {
            return Err(Error::NotInvariant(format!("{c} is constant")));
        }
        let k = field.lie_derivative(&c).exact_div(&c).ok_or_else(|| Error::NotInvariant(c.to_string()))?;
        if k.total_degree().unwrap_or(0) > field.cofactor_degree() {
            return Err(Error::NotInvariant(format!("cofactor of {c} exceeds degree m-1")));
        }
        Ok(Self { c, k })
    }

    pub fn verify(&self, field: &VectorField) -> bool {
        verify_invariant_curve(field, &self.c, &self.k).0
    }

    pub fn product(&self, o: &Self) -> Self {
        Self { c: &self.c * &o.c, k: &self.k + &o.k }
    }
}

/// `exp(h/gⁿ)` with cofactor `L`: `X(h) - n·h·K_g = L·gⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpFactor {
    pub h: SparsePoly,
    pub g: SparsePoly,
    pub n: u32,
    pub l: SparsePoly,
}

impl ExpFactor {
    /// Cofactor of `g` (zero when `g` is constant).
    pub fn g_cofactor(&self, field: &VectorField) -> Option<SparsePoly> {
        if self.g.is_constant() {
            return Some(SparsePoly::zero(self.g.vars()));
        }
        field.lie_derivative(&self.g).exact_div(&self.g)
    }

    pub fn residual(&self, field: &VectorField) -> Option<SparsePoly> {
        let kg = self.g_cofactor(field)?;
        let lhs = &field.lie_derivative(&self.h) - &(&self.h * &kg).scale(&Scalar::from_int(self.n as i64));
        Some(&lhs - &(&self.l * &self.g.pow(self.n)))
    }

    pub fn verify(&self, field: &VectorField) -> bool {
        !self.g.is_zero()
            && self.n >= 1
            && self.l.total_degree().unwrap_or(0) <= field.cofactor_degree()
            && self.residual(field).is_some_and(|r| r.is_zero())
    }
}

/// A polynomial solution `y = g(x)` of `dy/dx = Q/P`; `g` lives in the `x, y` ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSolution {
    pub g: SparsePoly,
}

impl PolynomialSolution {
    pub fn new(g: SparsePoly) -> Result<Self> {
        if g.involves(1) {
            return Err(Error::Invalid(format!("solution {g} depends on y")));
        }
        Ok(Self { g })
    }

    /// `P(x,g)·g' - Q(x,g)`.
    pub fn residual(&self, field: &VectorField) -> SparsePoly {
        let v = field.vars();
        let subs = [SparsePoly::var(v, 0), self.g.clone()];
        let p = field.p().compose(&subs, v);
        let q = field.q().compose(&subs, v);
        &(&p * &self.g.derivative(0)) - &q
    }

    pub fn verify(&self, field: &VectorField) -> bool {
        !self.g.involves(1) && self.residual(field).is_zero()
    }

    /// `y - g(x)` as an invariant curve.
    pub fn as_curve(&self, field: &VectorField) -> Result<InvariantCurve> {
        let c = &SparsePoly::var(field.vars(), 1) - &self.g;
        InvariantCurve::from_curve(field, c)
    }
}

/// A building block of a Darboux certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofactoredObject {
    Curve(InvariantCurve),
    Exp(ExpFactor),
}

impl CofactoredObject {
    pub fn cofactor(&self) -> &SparsePoly {
        match self {
            CofactoredObject::Curve(c) => &c.k,
            CofactoredObject::Exp(e) => &e.l,
        }
    }

    pub fn verify(&self, field: &VectorField) -> bool {
        match self {
            CofactoredObject::Curve(c) => c.verify(field),
            CofactoredObject::Exp(e) => e.verify(field),
        }
    }
}

/// `(X(C) - K·C == 0, X(C) - K·C)`.
pub fn verify_invariant_curve(field: &VectorField, c: &SparsePoly, k: &SparsePoly) -> (bool, SparsePoly) {
    let r = &field.lie_derivative(c) - &(k * c);
    (r.is_zero() && !c.is_constant(), r)
}

/// Monomials in `x, y` of total degree at most `d`, ascending in graded-lex.
pub fn monomials_upto(d: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..=d).flat_map(|t| (0..=t).map(move |j| Monomial(vec![t - j, j]))).collect();
    out.sort();
    out
}

/// A family of objects parametrized by `t0, t1, ...`; polynomials live in `x, y, t0, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFamily {
    pub params: Vec<String>,
    /// Curve (or solution) with parameters.
    pub object: SparsePoly,
    /// Cofactor with parameters (zero for polynomial solutions).
    pub cofactor: SparsePoly,
}

impl ParamFamily {
    /// Member at the given parameter values, back in the `x, y` ring.
    pub fn member(&self, values: &[Scalar], xy: &Vars) -> (SparsePoly, SparsePoly) {
        let mut subs = vec![SparsePoly::var(xy, 0), SparsePoly::var(xy, 1)];
        subs.extend(values.iter().map(|v| SparsePoly::constant(xy, v.clone())));
        (self.object.compose(&subs, xy), self.cofactor.compose(&subs, xy))
    }

    /// Parameter choices used as representatives: all zero, then each unit vector.
    pub fn sample_parameters(&self) -> Vec<Vec<Scalar>> {
        let n = self.params.len();
        let mut out = vec![vec![Scalar::zero(); n]];
        for i in 0..n {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            out.push(v);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSearch {
    /// Isolated curves, sorted by leading monomial.
    pub curves: Vec<InvariantCurve>,
    pub families: Vec<ParamFamily>,
    /// Members of the families at [`ParamFamily::sample_parameters`].
    pub representatives: Vec<InvariantCurve>,
    pub complete: bool,
}

impl CurveSearch {
    /// Isolated curves followed by family representatives.
    pub fn all_curves(&self) -> Vec<InvariantCurve> {
        let mut v = self.curves.clone();
        for r in &self.representatives {
            if !v.iter().any(|c| c.c == r.c) {
                v.push(r.clone());
            }
        }
        v
    }
}

/// Turns a solver family into a polynomial over `x, y, t0, ...`.
fn family_object(fam: &Family, coeffs: &[(Monomial, usize)], fixed: &[(Monomial, Scalar)], xy: &Vars) -> (Vars, SparsePoly) {
    let mut names: Vec<String> = xy.names().to_vec();
    names.extend((0..fam.free.len()).map(|i| format!("t{i}")));
    let ring = Vars::new(&names);
    // unknown u_i -> its value with free unknowns renamed to t's
    let unknowns = fam.values[0].vars().clone();
    let mut subs: Vec<SparsePoly> = vec![SparsePoly::zero(&ring); unknowns.len()];
    for (k, &f) in fam.free.iter().enumerate() {
        subs[f] = SparsePoly::var(&ring, 2 + k);
    }
    let mut out = SparsePoly::zero(&ring);
    for (m, idx) in coeffs {
        let val = fam.values[*idx].compose(&subs, &ring);
        let mut e = m.0.clone();
        e.resize(ring.len(), 0);
        out = &out + &(&val * &SparsePoly::monomial(&ring, Monomial(e), Scalar::one()));
    }
    for (m, c) in fixed {
        let mut e = m.0.clone();
        e.resize(ring.len(), 0);
        out = &out + &SparsePoly::monomial(&ring, Monomial(e), c.clone());
    }
    (ring, out)
}

struct BranchResult {
    curves: Vec<InvariantCurve>,
    families: Vec<ParamFamily>,
    complete: bool,
    /// Budget message when the branch gave up.
    limit: Option<String>,
}

/// Bilinear equations `X(C) - K·C = 0` for one normalization branch:
/// `C` has leading monomial `monos[lead]` with coefficient 1. Unknowns are
/// the lower `C` coefficients `c0..` followed by the `K` coefficients `k0..`.
pub fn curve_branch_equations(field: &VectorField, monos: &[Monomial], lead: usize) -> (Vars, Vec<SparsePoly>) {
    let kmonos = monomials_upto(field.cofactor_degree());
    let mut names: Vec<String> = (0..lead).map(|j| format!("c{j}")).collect();
    names.extend((0..kmonos.len()).map(|j| format!("k{j}")));
    let u = Vars::new(&names);
    let ccoef: Vec<SparsePoly> =
        (0..=lead).map(|j| if j == lead { SparsePoly::one(&u) } else { SparsePoly::var(&u, j) }).collect();
    let kcoef: Vec<SparsePoly> = (0..kmonos.len()).map(|j| SparsePoly::var(&u, lead + j)).collect();

    let xy = field.vars();
    let mut eqs: BTreeMap<Monomial, SparsePoly> = BTreeMap::new();
    for (j, m) in monos[..=lead].iter().enumerate() {
        let xm = field.lie_derivative(&SparsePoly::monomial(xy, m.clone(), Scalar::one()));
        for (mm, s) in xm.terms() {
            let e = eqs.entry(mm.clone()).or_insert_with(|| SparsePoly::zero(&u));
            *e = &*e + &ccoef[j].scale(s);
        }
        for (i, km) in kmonos.iter().enumerate() {
            let e = eqs.entry(km.mul(m)).or_insert_with(|| SparsePoly::zero(&u));
            *e = &*e - &(&kcoef[i] * &ccoef[j]);
        }
    }
    (u, eqs.into_values().filter(|p| !p.is_zero()).collect())
}

fn curve_branch(field: &VectorField, monos: &[Monomial], lead: usize, budget: &Budget) -> Result<BranchResult> {
    let xy = field.vars().clone();
    let kmonos = monomials_upto(field.cofactor_degree());
    let (u, eqs) = curve_branch_equations(field, monos, lead);
    let sols = match solve_system(&u, &eqs, budget) {
        Ok(s) => s,
        Err(Error::ResourceLimit(msg)) => {
            return Ok(BranchResult { curves: Vec::new(), families: Vec::new(), complete: false, limit: Some(msg) })
        }
        Err(e) => return Err(e),
    };
    let build = |vals: &[Scalar]| -> InvariantCurve {
        let mut c = SparsePoly::monomial(&xy, monos[lead].clone(), Scalar::one());
        for j in 0..lead {
            c = &c + &SparsePoly::monomial(&xy, monos[j].clone(), vals[j].clone());
        }
        let k = SparsePoly::from_terms(&xy, kmonos.iter().enumerate().map(|(i, m)| (m.clone(), vals[lead + i].clone())));
        InvariantCurve { c, k }
    };
    let curves: Vec<InvariantCurve> = sols.points.iter().map(|p| build(p)).filter(|c| c.verify(field)).collect();
    let mut families = Vec::new();
    for fam in &sols.families {
        let ccoeffs: Vec<(Monomial, usize)> = (0..lead).map(|j| (monos[j].clone(), j)).collect();
        let (ring, obj) = family_object(fam, &ccoeffs, &[(monos[lead].clone(), Scalar::one())], &xy);
        let kcoeffs: Vec<(Monomial, usize)> = kmonos.iter().enumerate().map(|(i, m)| (m.clone(), lead + i)).collect();
        let (_, cof) = family_object(fam, &kcoeffs, &[], &xy);
        families.push(ParamFamily { params: ring.names()[2..].to_vec(), object: obj, cofactor: cof });
    }
    Ok(BranchResult { curves, families, complete: sols.complete, limit: None })
}

/// Whether `c` is (up to a scalar) a product of curves from `pool` of lower degree.
fn is_product(c: &SparsePoly, pool: &[SparsePoly]) -> bool {
    let d = c.total_degree().unwrap_or(0);
    for f in pool {
        if f.total_degree().unwrap_or(0) >= d || f.is_constant() {
            continue;
        }
        if let Some(q) = c.exact_div(f) {
            if q.is_constant() || pool.iter().any(|g| g.is_scalar_multiple_of(&q)) || is_product(&q, pool) {
                return true;
            }
        }
    }
    false
}

/// Invariant curves of degree `1..=d` with ℚ(i) coefficients, monic in graded-lex.
///
/// Branches that exceed the budget are skipped and clear `complete`; if that
/// leaves nothing at all the search fails with `ResourceLimit`.
pub fn find_invariant_curves(field: &VectorField, d: u32, budget: &Budget) -> Result<CurveSearch> {
    if d == 0 {
        return Err(Error::Invalid("max degree must be at least 1".into()));
    }
    let monos = monomials_upto(d);
    let branches: Vec<usize> = (1..monos.len()).collect();
    let results: Vec<BranchResult> =
        branches.par_iter().map(|&b| curve_branch(field, &monos, b, budget)).collect::<Result<_>>()?;

    let limit = results.iter().find_map(|r| r.limit.clone());
    if let Some(msg) = &limit {
        // nothing usable survived the budget
        if results.iter().all(|r| r.curves.is_empty() && r.families.is_empty()) {
            return Err(Error::ResourceLimit(msg.clone()));
        }
    }
    let mut complete = true;
    let mut curves: Vec<InvariantCurve> = Vec::new();
    let mut families: Vec<ParamFamily> = Vec::new();
    for r in results {
        complete &= r.complete;
        for c in r.curves {
            if !curves.iter().any(|o| o.c == c.c) {
                curves.push(c);
            }
        }
        families.extend(r.families);
    }
    let xy = field.vars().clone();
    let mut representatives = Vec::new();
    for f in &families {
        for params in f.sample_parameters() {
            let (c, k) = f.member(&params, &xy);
            let cur = InvariantCurve { c: c.monic(), k };
            if cur.verify(field) && !representatives.iter().any(|o: &InvariantCurve| o.c == cur.c) {
                representatives.push(cur);
            }
        }
    }
    let pool: Vec<SparsePoly> = curves.iter().chain(&representatives).map(|c| c.c.clone()).collect();
    curves.retain(|c| !is_product(&c.c, &pool));
    curves.sort_by(|a, b| a.c.lt().map(|t| t.0).cmp(&b.c.lt().map(|t| t.0)));
    Ok(CurveSearch { curves, families, representatives, complete })
}

/// Default bound on `deg h` in [`find_exp_factors`].
pub fn default_exp_degree(field: &VectorField, g: &SparsePoly, n: u32) -> u32 {
    let m = field.degree();
    if g.is_constant() {
        m.max(1)
    } else {
        n * g.total_degree().unwrap_or(0) + m.saturating_sub(1)
    }
}

/// Basis of the solutions `(h, L)` of `X(h) - n·h·K_g = L·gⁿ` with `deg h <= deg_h`,
/// modulo the trivial direction `h = gⁿ` (which only rescales the factor).
pub fn find_exp_factors(field: &VectorField, g: &SparsePoly, n: u32, deg_h: u32) -> Result<Vec<ExpFactor>> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let xy = field.vars().clone();
    let kg = if g.is_constant() {
        if g.is_zero() {
            return Err(Error::NotInvariant("g = 0".into()));
        }
        SparsePoly::zero(&xy)
    } else {
        field.lie_derivative(g).exact_div(g).ok_or_else(|| Error::NotInvariant(g.to_string()))?
    };
    if kg.total_degree().unwrap_or(0) > field.cofactor_degree() {
        return Err(Error::NotInvariant(format!("cofactor of {g} exceeds degree m-1")));
    }
    let hmonos = monomials_upto(deg_h);
    let lmonos = monomials_upto(field.cofactor_degree());
    let gn = g.pow(n);
    let nh = hmonos.len();
    let cols = nh + lmonos.len();

    // column images: h-monomial -> X(m) - n m K_g, L-monomial -> -m gⁿ
    let mut images: Vec<SparsePoly> = Vec::with_capacity(cols);
    let ns = Scalar::from_int(n as i64);
    for m in &hmonos {
        let mp = SparsePoly::monomial(&xy, m.clone(), Scalar::one());
        images.push(&field.lie_derivative(&mp) - &(&mp * &kg).scale(&ns));
    }
    for m in &lmonos {
        images.push(-&(&SparsePoly::monomial(&xy, m.clone(), Scalar::one()) * &gn));
    }
    let mut rows: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
    for (j, im) in images.iter().enumerate() {
        for (m, c) in im.terms() {
            rows.entry(m.clone()).or_insert_with(|| vec![Scalar::zero(); cols])[j] = c.clone();
        }
    }
    let mut matrix: Vec<Vec<Scalar>> = rows.into_values().collect();
    // pin the coefficient of the leading monomial of gⁿ in h to zero
    if let Some((lm, _)) = gn.lt() {
        if let Some(pos) = hmonos.iter().position(|m| m == lm) {
            let mut row = vec![Scalar::zero(); cols];
            row[pos] = Scalar::one();
            matrix.push(row);
        }
    }
    let basis = linalg::nullspace(&matrix, cols);
    let mut out = Vec::new();
    for v in basis {
        let h = SparsePoly::from_terms(&xy, hmonos.iter().cloned().zip(v[..nh].iter().cloned()));
        let l = SparsePoly::from_terms(&xy, lmonos.iter().cloned().zip(v[nh..].iter().cloned()));
        if h.is_zero() {
            continue;
        }
        let e = ExpFactor { h, g: g.clone(), n, l };
        debug_assert!(e.verify(field));
        out.push(e);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySolSearch {
    pub solutions: Vec<PolynomialSolution>,
    /// Families `g(x, t0, ...)`; `cofactor` is unused (zero).
    pub families: Vec<ParamFamily>,
    pub complete: bool,
}

/// Polynomial solutions `y = g(x)` with `deg g <= d`.
pub fn find_polynomial_solutions(field: &VectorField, d: u32, budget: &Budget) -> Result<PolySolSearch> {
    let xy = field.vars().clone();
    let mut names = vec![xy.name(0).to_string()];
    names.extend((0..=d).map(|j| format!("a{j}")));
    let ring = Vars::new(&names);
    let x = SparsePoly::var(&ring, 0);
    let mut g = SparsePoly::zero(&ring);
    for j in 0..=d {
        g = &g + &(&SparsePoly::var(&ring, 1 + j as usize) * &x.pow(j));
    }
    let p = field.p().compose(&[x.clone(), g.clone()], &ring);
    let q = field.q().compose(&[x.clone(), g.clone()], &ring);
    let expr = &(&p * &g.derivative(0)) - &q;
    let u = Vars::new(&names[1..]);
    let eqs: Vec<SparsePoly> = expr.split_leading_vars(1, &u).into_values().collect();
    let sols = solve_system(&u, &eqs, budget)?;

    let xmonos: Vec<Monomial> = (0..=d).map(|j| Monomial(vec![j, 0])).collect();
    let mut solutions = Vec::new();
    for pt in &sols.points {
        let gx = SparsePoly::from_terms(&xy, xmonos.iter().cloned().zip(pt.iter().cloned()));
        let s = PolynomialSolution { g: gx };
        if s.verify(field) && !solutions.contains(&s) {
            solutions.push(s);
        }
    }
    solutions.sort_by(|a, b| (a.g.total_degree(), a.g.lt().map(|t| t.0), a.g.to_string()).cmp(&(b.g.total_degree(), b.g.lt().map(|t| t.0), b.g.to_string())));
    let families = sols
        .families
        .iter()
        .map(|fam| {
            let coeffs: Vec<(Monomial, usize)> = xmonos.iter().cloned().zip(0..).collect();
            let (ring, obj) = family_object(fam, &coeffs, &[], &xy);
            ParamFamily { params: ring.names()[2..].to_vec(), cofactor: SparsePoly::zero(&ring), object: obj }
        })
        .collect();
    Ok(PolySolSearch { solutions, families, complete: sols.complete })
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

    #[test]
    fn verify_examples() {
        let f = field(&[(1, &[1, 0])], &[(-1, &[0, 1])]);
        let v = f.vars().clone();
        let x = SparsePoly::var(&v, 0);
        let y = SparsePoly::var(&v, 1);
        let one = SparsePoly::one(&v);
        assert!(verify_invariant_curve(&f, &x, &one).0);
        let (ok, r) = verify_invariant_curve(&f, &y, &one);
        assert!(!ok);
        assert_eq!(r, y.scale(&Scalar::from_int(-2)));
        let s = separable();
        assert!(verify_invariant_curve(&s, &(&y - &x), &(&(&x + &y) - &one)).0);
    }

    #[test]
    fn saddle_lines() {
        let f = field(&[(1, &[1, 0])], &[(-1, &[0, 1])]);
        let s = find_invariant_curves(&f, 1, &Budget::default()).unwrap();
        let cs: Vec<String> = s.curves.iter().map(|c| format!("{} {}", c.c, c.k)).collect();
        assert_eq!(cs, vec!["y -1", "x 1"]);
        assert!(s.complete);
    }

    #[test]
    fn separable_lines() {
        let s = find_invariant_curves(&separable(), 1, &Budget::default()).unwrap();
        let mut cs: Vec<String> = s.curves.iter().map(|c| c.c.to_string()).collect();
        cs.sort();
        assert_eq!(cs, vec!["x", "x - 1", "x - y", "y", "y - 1"]);
        for c in &s.curves {
            assert!(c.verify(&separable()));
        }
    }

    #[test]
    fn translation_family() {
        let f = field(&[(1, &[0, 0])], &[(1, &[0, 0])]);
        let s = find_invariant_curves(&f, 1, &Budget::default()).unwrap();
        assert_eq!(s.families.len(), 1);
        let all = s.all_curves();
        assert!(all.iter().any(|c| c.c.to_string() == "x - y" && c.k.is_zero()));
    }

    #[test]
    fn exp_factors() {
        let f = field(&[(1, &[0, 0])], &[(1, &[1, 0]), (1, &[0, 1])]);
        let one = SparsePoly::one(f.vars());
        let e = find_exp_factors(&f, &one, 1, 2).unwrap();
        assert!(!e.is_empty());
        assert!(e.iter().all(|e| e.verify(&f) && e.l.total_degree().unwrap_or(0) == 0));
        assert!(e.iter().any(|e| e.h.to_string() == "x"));
        let saddle = field(&[(1, &[1, 0])], &[(-1, &[0, 1])]);
        let x = SparsePoly::var(saddle.vars(), 0);
        assert!(find_exp_factors(&saddle, &x, 1, 1).unwrap().is_empty());
        assert!(find_exp_factors(&saddle, &one, 1, 0).unwrap().is_empty());
        let y2 = &SparsePoly::var(saddle.vars(), 1) + &one;
        assert!(matches!(find_exp_factors(&saddle, &y2, 1, 1), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn polynomial_solutions() {
        let s = find_polynomial_solutions(&separable(), 1, &Budget::default()).unwrap();
        let gs: Vec<String> = s.solutions.iter().map(|p| p.g.to_string()).collect();
        assert_eq!(gs, vec!["0", "1", "x"]);
        assert!(s.complete && s.families.is_empty());

        let r = field(&[(1, &[0, 0])], &[(1, &[0, 2])]);
        let s = find_polynomial_solutions(&r, 2, &Budget::default()).unwrap();
        assert_eq!(s.solutions.len(), 1);
        assert!(s.solutions[0].g.is_zero());

        let t = field(&[(1, &[0, 0])], &[(1, &[0, 0])]);
        let s = find_polynomial_solutions(&t, 1, &Budget::default()).unwrap();
        assert!(s.solutions.is_empty());
        assert_eq!(s.families.len(), 1);
        assert_eq!(s.families[0].object.to_string(), "x + t0");
    }
}
