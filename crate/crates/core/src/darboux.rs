//! Darboux first integrals and inverse integrating factors.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::linalg;
use crate::algebra::{Monomial, RationalFunction, Scalar, SparsePoly};
use crate::error::{Error, Result};
use crate::invariants::{default_exp_degree, find_exp_factors, find_invariant_curves, CofactoredObject, ExpFactor, InvariantCurve};
use crate::polysolve::Budget;
use crate::vectorfield::VectorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    FirstIntegral,
    InverseIntegratingFactor,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::FirstIntegral => "first-integral",
            Role::InverseIntegratingFactor => "inverse-integrating-factor",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        match s {
            "first-integral" | "fi" => Some(Role::FirstIntegral),
            "inverse-integrating-factor" | "inverse-factor" | "iif" => Some(Role::InverseIntegratingFactor),
            _ => None,
        }
    }

    /// Right-hand side of the cofactor identity.
    pub fn target(self, field: &VectorField) -> SparsePoly {
        match self {
            Role::FirstIntegral => SparsePoly::zero(field.vars()),
            Role::InverseIntegratingFactor => field.divergence(),
        }
    }
}

/// `∏ Cᵢ^{λᵢ} · ∏ exp(hⱼ/gⱼ^{nⱼ})^{μⱼ}` with `Σλᵢ Kᵢ + Σμⱼ Lⱼ` equal to 0 or `div`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxCertificate {
    pub curve_terms: Vec<(InvariantCurve, Scalar)>,
    pub exp_terms: Vec<(ExpFactor, Scalar)>,
    pub role: Role,
}

impl DarbouxCertificate {
    pub fn cofactor_sum(&self, field: &VectorField) -> SparsePoly {
        let mut acc = SparsePoly::zero(field.vars());
        for (c, l) in &self.curve_terms {
            acc = &acc + &c.k.scale(l);
        }
        for (e, m) in &self.exp_terms {
            acc = &acc + &e.l.scale(m);
        }
        acc
    }

    pub fn exponents(&self) -> Vec<Scalar> {
        self.curve_terms.iter().map(|t| t.1.clone()).chain(self.exp_terms.iter().map(|t| t.1.clone())).collect()
    }

    /// `Σμⱼ hⱼ/gⱼ^{nⱼ}` over a common denominator, i.e. `D/E`.
    pub fn exp_part(&self) -> RationalFunction {
        let vars = self
            .curve_terms
            .first()
            .map(|t| t.0.c.vars().clone())
            .or_else(|| self.exp_terms.first().map(|t| t.0.h.vars().clone()))
            .expect("certificate has terms");
        let mut acc = RationalFunction::zero(&vars);
        for (e, m) in &self.exp_terms {
            let t = RationalFunction::new(e.h.scale(m), e.g.pow(e.n)).unwrap();
            acc = acc.add(&t);
        }
        acc
    }

    /// Multiplies every exponent by `c` (first integrals stay first integrals).
    pub fn scaled(&self, c: &Scalar) -> DarbouxCertificate {
        DarbouxCertificate {
            curve_terms: self.curve_terms.iter().map(|(o, l)| (o.clone(), l * c)).collect(),
            exp_terms: self.exp_terms.iter().map(|(o, l)| (o.clone(), l * c)).collect(),
            role: self.role,
        }
    }

    /// `self / other` as a first integral; both must be inverse integrating factors.
    pub fn ratio(&self, other: &DarbouxCertificate) -> DarbouxCertificate {
        let mut curve_terms = self.curve_terms.clone();
        for (o, l) in &other.curve_terms {
            match curve_terms.iter_mut().find(|(c, _)| c.c == o.c) {
                Some(t) => t.1 = &t.1 - l,
                None => curve_terms.push((o.clone(), -l)),
            }
        }
        let mut exp_terms = self.exp_terms.clone();
        for (o, l) in &other.exp_terms {
            match exp_terms.iter_mut().find(|(e, _)| e == o) {
                Some(t) => t.1 = &t.1 - l,
                None => exp_terms.push((o.clone(), -l)),
            }
        }
        curve_terms.retain(|t| !t.1.is_zero());
        exp_terms.retain(|t| !t.1.is_zero());
        DarbouxCertificate { curve_terms, exp_terms, role: Role::FirstIntegral }
    }

    pub fn verify(&self, field: &VectorField) -> (bool, SparsePoly) {
        verify_certificate(field, self)
    }
}

/// Re-checks every member and the weighted cofactor sum; the residual is
/// `Σλᵢ Kᵢ + Σμⱼ Lⱼ - target`.
pub fn verify_certificate(field: &VectorField, cert: &DarbouxCertificate) -> (bool, SparsePoly) {
    let residual = &cert.cofactor_sum(field) - &cert.role.target(field);
    let members = cert.curve_terms.iter().all(|(c, _)| c.verify(field)) && cert.exp_terms.iter().all(|(e, _)| e.verify(field));
    let nonzero = cert.exponents().iter().any(|e| !e.is_zero());
    (members && nonzero && residual.is_zero(), residual)
}

fn cofactor_matrix(objects: &[CofactoredObject], target: &SparsePoly) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
    let cols = objects.len();
    let mut rows: BTreeMap<Monomial, (Vec<Scalar>, Scalar)> = BTreeMap::new();
    let blank = || (vec![Scalar::zero(); cols], Scalar::zero());
    for (j, o) in objects.iter().enumerate() {
        for (m, c) in o.cofactor().terms() {
            rows.entry(m.clone()).or_insert_with(blank).0[j] = c.clone();
        }
    }
    for (m, c) in target.terms() {
        rows.entry(m.clone()).or_insert_with(blank).1 = c.clone();
    }
    rows.into_values().unzip()
}

/// Scales so the first nonzero entry is 1.
fn normalize_direction(v: &mut [Scalar]) {
    if let Some(p) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = p.inv().unwrap();
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

fn build(objects: &[CofactoredObject], exps: &[Scalar], role: Role) -> DarbouxCertificate {
    let mut curve_terms = Vec::new();
    let mut exp_terms = Vec::new();
    for (o, e) in objects.iter().zip(exps) {
        if e.is_zero() {
            continue;
        }
        match o {
            CofactoredObject::Curve(c) => curve_terms.push((c.clone(), e.clone())),
            CofactoredObject::Exp(x) => exp_terms.push((x.clone(), e.clone())),
        }
    }
    DarbouxCertificate { curve_terms, exp_terms, role }
}

/// Solves `Σλᵢ Kᵢ + Σμⱼ Lⱼ = target` over the objects. For first integrals the
/// nullspace basis is returned; for inverse integrating factors the
/// minimum-norm particular solution comes first, followed by the first-integral basis.
pub fn assemble(field: &VectorField, objects: &[CofactoredObject], goal: Role) -> Result<Vec<DarbouxCertificate>> {
    if let Some(bad) = objects.iter().find(|o| !o.verify(field)) {
        return Err(Error::NotInvariant(format!("{bad:?}")));
    }
    if objects.is_empty() {
        return Err(Error::NoSolution("no invariant objects".into()));
    }
    let target = goal.target(field);
    let (m, rhs) = cofactor_matrix(objects, &target);
    let sol = linalg::solve(&m, &rhs, objects.len());
    let mut fis: Vec<Vec<Scalar>> = sol.nullspace_basis.clone();
    for v in fis.iter_mut() {
        normalize_direction(v);
    }
    let mut out = Vec::new();
    if goal == Role::InverseIntegratingFactor {
        let Some(p) = sol.particular.as_ref() else {
            return Err(Error::NoSolution("cofactors do not span the divergence".into()));
        };
        let p = linalg::min_norm_particular(p, &sol.nullspace_basis);
        if p.iter().any(|c| !c.is_zero()) {
            out.push(build(objects, &p, Role::InverseIntegratingFactor));
        }
    }
    out.extend(fis.iter().map(|v| build(objects, v, Role::FirstIntegral)));
    if out.is_empty() {
        return Err(Error::NoSolution("no nonzero exponent vector".into()));
    }
    for c in &out {
        debug_assert!(c.verify(field).0);
    }
    Ok(out)
}

/// `B·X(A) - A·X(B) - N·A·B·div`, zero iff `(A/B)^{1/N}` is an inverse integrating factor.
pub fn algebraic_iif_check(field: &VectorField, a: &SparsePoly, b: &SparsePoly, n: u32) -> (bool, SparsePoly) {
    let lhs = &(b * &field.lie_derivative(a)) - &(a * &field.lie_derivative(b));
    let rhs = (&(a * b) * &field.divergence()).scale(&Scalar::from_int(n as i64));
    let r = &lhs - &rhs;
    (r.is_zero() && !a.is_zero() && !b.is_zero() && n >= 1, r)
}

/// Splits `p` into powers of curves from `pool` by trial division; returns the
/// multiplicities and the unfactored remainder.
fn trial_factor(p: &SparsePoly, pool: &[InvariantCurve]) -> (Vec<u32>, SparsePoly) {
    let mut rest = p.clone();
    let mut mult = vec![0u32; pool.len()];
    for (i, c) in pool.iter().enumerate() {
        while !rest.is_constant() {
            match rest.exact_div(&c.c) {
                Some(q) => {
                    rest = q;
                    mult[i] += 1;
                }
                None => break,
            }
        }
    }
    (mult, rest)
}

/// From a rational inverse integrating factor to a Darboux first integral.
pub fn rational_iif_to_darboux(
    field: &VectorField,
    vnum: &SparsePoly,
    vden: &SparsePoly,
    known_curves: &[InvariantCurve],
    budget: &Budget,
) -> Result<DarbouxCertificate> {
    if !algebraic_iif_check(field, vnum, vden, 1).0 {
        return Err(Error::Invalid("V is not an inverse integrating factor".into()));
    }
    let mut pool: Vec<InvariantCurve> = known_curves.iter().filter(|c| c.verify(field)).cloned().collect();
    let deg = vnum.total_degree().unwrap_or(0).max(vden.total_degree().unwrap_or(0));
    let mut search_complete = true;
    if deg >= 1 {
        let found = find_invariant_curves(field, deg, budget)?;
        search_complete = found.complete;
        for c in found.all_curves() {
            if !pool.iter().any(|o| o.c.is_scalar_multiple_of(&c.c)) {
                pool.push(c);
            }
        }
    }
    // lower degrees first so trial division peels off irreducible pieces
    pool.sort_by_key(|c| c.c.total_degree());
    let (mn, rn) = trial_factor(vnum, &pool);
    let (md, rd) = trial_factor(vden, &pool);
    for r in [&rn, &rd] {
        if !r.is_constant() {
            let note = if search_complete { "" } else { " (curve search incomplete)" };
            return Err(Error::UnfactoredResidual(format!("{r}{note}")));
        }
    }
    let used: Vec<(usize, u32)> = (0..pool.len()).filter(|&i| mn[i] + md[i] > 0).map(|i| (i, mn[i].max(md[i]))).collect();
    let mut objects: Vec<CofactoredObject> = used.iter().map(|&(i, _)| CofactoredObject::Curve(pool[i].clone())).collect();

    let first = |objects: &[CofactoredObject]| -> Option<DarbouxCertificate> {
        assemble(field, objects, Role::FirstIntegral).ok().and_then(|v| v.into_iter().find(|c| c.role == Role::FirstIntegral))
    };
    if let Some(c) = first(&objects) {
        return Ok(c);
    }
    // repeated factors suggest exponential factors exp(h/g^k)
    for &(i, mult) in &used {
        for k in 1..mult {
            let g = &pool[i].c;
            let dh = default_exp_degree(field, g, k);
            for e in find_exp_factors(field, g, k, dh)? {
                objects.push(CofactoredObject::Exp(e));
            }
        }
    }
    let one = SparsePoly::one(field.vars());
    for e in find_exp_factors(field, &one, 1, default_exp_degree(field, &one, 1))? {
        objects.push(CofactoredObject::Exp(e));
    }
    if let Some(c) = first(&objects) {
        return Ok(c);
    }
    Err(Error::NoSolution("factors of V admit no first-integral combination".into()))
}

impl fmt::Display for DarbouxCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (c, l) in &self.curve_terms {
            if l.is_one() {
                parts.push(format!("({})", c.c));
            } else {
                parts.push(format!("({})^({l})", c.c));
            }
        }
        if !self.exp_terms.is_empty() {
            parts.push(format!("exp({})", self.exp_part()));
        }
        let name = match self.role {
            Role::FirstIntegral => "H",
            Role::InverseIntegratingFactor => "V",
        };
        write!(f, "{name} = {}", parts.join("*"))
    }
}
