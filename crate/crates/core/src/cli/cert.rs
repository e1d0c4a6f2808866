//! The `cert-v1` JSON interchange format.
//!
//! Every certificate is a self-contained object carrying its field, so that
//! `verify` can re-check it without context. Scalars are `["re", "im"]` pairs
//! of exact `p/q` strings; polynomials carry their exponent/coefficient terms
//! (authoritative) and their canonical text, which must parse back to the
//! same terms.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::parse::parse_polynomial;
use crate::algebra::{Monomial, Scalar, SparsePoly, Vars};
use crate::darboux::{verify_certificate, DarbouxCertificate, Role};
use crate::error::{Error, Result};
use crate::invariants::{ExpFactor, InvariantCurve, PolynomialSolution};
use crate::vectorfield::VectorField;
use crate::weierstrass::{check_weierstrass_certificate, verify_formal_invariant, SeriesPolyY, TruncSeries, WeierstrassCertificate};

pub const SCHEMA: &str = "cert-v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub text: String,
    pub terms: Vec<(Vec<u32>, Scalar)>,
}

impl PolyJson {
    pub fn from_poly(p: &SparsePoly) -> Self {
        Self { text: p.to_string(), terms: p.terms().rev().map(|(m, c)| (m.0.clone(), c.clone())).collect() }
    }

    pub fn to_poly(&self, vars: &Vars) -> Result<SparsePoly> {
        for (e, _) in &self.terms {
            if e.len() != vars.len() {
                return Err(Error::MalformedCertificate(format!("exponent vector {e:?} has the wrong length")));
            }
        }
        let p = SparsePoly::from_terms(vars, self.terms.iter().map(|(e, c)| (Monomial(e.clone()), c.clone())));
        let from_text = parse_polynomial(&self.text, vars).map_err(|e| Error::MalformedCertificate(format!("{:?}: {e}", self.text)))?;
        if from_text != p {
            return Err(Error::MalformedCertificate(format!("text {:?} disagrees with terms {p}", self.text)));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub coeffs: Vec<Scalar>,
    /// Known modulo `x^precision`; absent for polynomials.
    pub precision: Option<u32>,
}

impl SeriesJson {
    fn from_series(s: &TruncSeries) -> Self {
        Self { coeffs: s.coeffs().to_vec(), precision: s.precision() }
    }

    fn to_series(&self) -> Result<TruncSeries> {
        match self.precision {
            None => Ok(TruncSeries::exact(self.coeffs.clone())),
            Some(0) => Err(Error::MalformedCertificate("precision 0".into())),
            Some(p) => Ok(TruncSeries::new(self.coeffs.clone(), p - 1)),
        }
    }
}

/// `Σ aᵢ(x) yⁱ`, coefficients listed from `y^0` up.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolyJson {
    pub text: String,
    pub y_coeffs: Vec<SeriesJson>,
}

impl SeriesPolyJson {
    pub fn from_series(p: &SeriesPolyY) -> Self {
        Self { text: p.to_string(), y_coeffs: p.coeffs().iter().map(SeriesJson::from_series).collect() }
    }

    pub fn to_series(&self) -> Result<SeriesPolyY> {
        if self.y_coeffs.is_empty() {
            return Err(Error::MalformedCertificate("empty series polynomial".into()));
        }
        Ok(SeriesPolyY::new(self.y_coeffs.iter().map(SeriesJson::to_series).collect::<Result<_>>()?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    #[serde(rename = "P")]
    pub p: PolyJson,
    #[serde(rename = "Q")]
    pub q: PolyJson,
}

impl FieldJson {
    pub fn from_field(f: &VectorField) -> Self {
        Self { p: PolyJson::from_poly(f.p()), q: PolyJson::from_poly(f.q()) }
    }

    pub fn to_field(&self) -> Result<VectorField> {
        let v = Vars::xy();
        VectorField::new(self.p.to_poly(&v)?, self.q.to_poly(&v)?).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveTermJson {
    pub curve: PolyJson,
    pub cofactor: PolyJson,
    pub exponent: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpTermJson {
    pub h: PolyJson,
    pub g: PolyJson,
    pub n: u32,
    pub cofactor: PolyJson,
    pub exponent: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub curve: SeriesPolyJson,
    pub exponent: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertBody {
    InvariantCurve {
        curve: PolyJson,
        cofactor: PolyJson,
    },
    ExpFactor {
        h: PolyJson,
        g: PolyJson,
        n: u32,
        cofactor: PolyJson,
    },
    PolynomialSolution {
        g: PolyJson,
    },
    Darboux {
        role: String,
        text: String,
        curves: Vec<CurveTermJson>,
        exp_factors: Vec<ExpTermJson>,
    },
    FormalInvariant {
        curve: SeriesPolyJson,
        cofactor: SeriesPolyJson,
        order: u32,
    },
    Weierstrass {
        d: SeriesPolyJson,
        e: SeriesPolyJson,
        curves: Vec<SeriesTermJson>,
        order: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertDoc {
    pub schema: String,
    pub field: FieldJson,
    #[serde(flatten)]
    pub body: CertBody,
}

/// Outcome of re-checking one certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub kind: String,
    pub ok: bool,
    /// Residual of the defining identity (text), or the achieved order for formal checks.
    pub residual: String,
    pub achieved_order: Option<u32>,
}

fn doc(field: &VectorField, body: CertBody) -> CertDoc {
    CertDoc { schema: SCHEMA.into(), field: FieldJson::from_field(field), body }
}

pub fn curve_doc(field: &VectorField, c: &InvariantCurve) -> CertDoc {
    doc(field, CertBody::InvariantCurve { curve: PolyJson::from_poly(&c.c), cofactor: PolyJson::from_poly(&c.k) })
}

pub fn exp_doc(field: &VectorField, e: &ExpFactor) -> CertDoc {
    doc(
        field,
        CertBody::ExpFactor { h: PolyJson::from_poly(&e.h), g: PolyJson::from_poly(&e.g), n: e.n, cofactor: PolyJson::from_poly(&e.l) },
    )
}

pub fn solution_doc(field: &VectorField, g: &PolynomialSolution) -> CertDoc {
    doc(field, CertBody::PolynomialSolution { g: PolyJson::from_poly(&g.g) })
}

pub fn darboux_doc(field: &VectorField, c: &DarbouxCertificate) -> CertDoc {
    doc(
        field,
        CertBody::Darboux {
            role: c.role.as_str().into(),
            text: c.to_string(),
            curves: c
                .curve_terms
                .iter()
                .map(|(o, l)| CurveTermJson { curve: PolyJson::from_poly(&o.c), cofactor: PolyJson::from_poly(&o.k), exponent: l.clone() })
                .collect(),
            exp_factors: c
                .exp_terms
                .iter()
                .map(|(o, l)| ExpTermJson {
                    h: PolyJson::from_poly(&o.h),
                    g: PolyJson::from_poly(&o.g),
                    n: o.n,
                    cofactor: PolyJson::from_poly(&o.l),
                    exponent: l.clone(),
                })
                .collect(),
        },
    )
}

pub fn formal_doc(field: &VectorField, c: &SeriesPolyY, k: &SeriesPolyY, order: u32) -> CertDoc {
    doc(field, CertBody::FormalInvariant { curve: SeriesPolyJson::from_series(c), cofactor: SeriesPolyJson::from_series(k), order })
}

pub fn weierstrass_doc(field: &VectorField, w: &WeierstrassCertificate) -> CertDoc {
    doc(
        field,
        CertBody::Weierstrass {
            d: SeriesPolyJson::from_series(&w.d),
            e: SeriesPolyJson::from_series(&w.e),
            curves: w.curve_terms.iter().map(|(c, l)| SeriesTermJson { curve: SeriesPolyJson::from_series(c), exponent: l.clone() }).collect(),
            order: w.order,
        },
    )
}

impl CertBody {
    pub fn kind(&self) -> &'static str {
        match self {
            CertBody::InvariantCurve { .. } => "invariant-curve",
            CertBody::ExpFactor { .. } => "exp-factor",
            CertBody::PolynomialSolution { .. } => "polynomial-solution",
            CertBody::Darboux { .. } => "darboux",
            CertBody::FormalInvariant { .. } => "formal-invariant",
            CertBody::Weierstrass { .. } => "weierstrass",
        }
    }
}

fn curve_of(c: &PolyJson, k: &PolyJson, v: &Vars) -> Result<InvariantCurve> {
    Ok(InvariantCurve { c: c.to_poly(v)?, k: k.to_poly(v)? })
}

fn exp_of(h: &PolyJson, g: &PolyJson, n: u32, l: &PolyJson, v: &Vars) -> Result<ExpFactor> {
    Ok(ExpFactor { h: h.to_poly(v)?, g: g.to_poly(v)?, n, l: l.to_poly(v)? })
}

impl CertDoc {
    pub fn field(&self) -> Result<VectorField> {
        self.field.to_field()
    }

    /// Rebuilds a Darboux certificate.
    pub fn to_darboux(&self) -> Result<DarbouxCertificate> {
        let v = Vars::xy();
        let CertBody::Darboux { role, curves, exp_factors, .. } = &self.body else {
            return Err(Error::MalformedCertificate(format!("expected a darboux certificate, found {}", self.body.kind())));
        };
        let role = Role::parse(role).ok_or_else(|| Error::MalformedCertificate(format!("unknown role {role:?}")))?;
        let curve_terms = curves.iter().map(|t| Ok((curve_of(&t.curve, &t.cofactor, &v)?, t.exponent.clone()))).collect::<Result<_>>()?;
        let exp_terms =
            exp_factors.iter().map(|t| Ok((exp_of(&t.h, &t.g, t.n, &t.cofactor, &v)?, t.exponent.clone()))).collect::<Result<_>>()?;
        Ok(DarbouxCertificate { curve_terms, exp_terms, role })
    }

    /// Curves and exponential factors usable as Darboux building blocks.
    pub fn to_object(&self) -> Result<Option<crate::invariants::CofactoredObject>> {
        use crate::invariants::CofactoredObject;
        let v = Vars::xy();
        Ok(match &self.body {
            CertBody::InvariantCurve { curve, cofactor } => Some(CofactoredObject::Curve(curve_of(curve, cofactor, &v)?)),
            CertBody::ExpFactor { h, g, n, cofactor } => Some(CofactoredObject::Exp(exp_of(h, g, *n, cofactor, &v)?)),
            _ => None,
        })
    }

    /// Re-checks the certificate against its own field.
    pub fn check(&self) -> Result<Check> {
        if self.schema != SCHEMA {
            return Err(Error::MalformedCertificate(format!("schema {:?}", self.schema)));
        }
        let field = self.field()?;
        let v = field.vars().clone();
        let kind = self.body.kind().to_string();
        let exact = |ok: bool, r: SparsePoly| Check { kind: kind.clone(), ok, residual: r.to_string(), achieved_order: None };
        Ok(match &self.body {
            CertBody::InvariantCurve { curve, cofactor } => {
                let c = curve_of(curve, cofactor, &v)?;
                let (ok, r) = crate::invariants::verify_invariant_curve(&field, &c.c, &c.k);
                exact(ok && c.verify(&field), r)
            }
            CertBody::ExpFactor { h, g, n, cofactor } => {
                let e = exp_of(h, g, *n, cofactor, &v)?;
                let r = e.residual(&field).ok_or_else(|| Error::MalformedCertificate("g is not invariant".into()))?;
                exact(e.verify(&field), r)
            }
            CertBody::PolynomialSolution { g } => {
                let s = PolynomialSolution::new(g.to_poly(&v)?)?;
                exact(s.verify(&field), s.residual(&field))
            }
            CertBody::Darboux { .. } => {
                let c = self.to_darboux()?;
                let (ok, r) = verify_certificate(&field, &c);
                exact(ok, r)
            }
            CertBody::FormalInvariant { curve, cofactor, order } => {
                let chk = verify_formal_invariant(&field, &curve.to_series()?, &cofactor.to_series()?, *order);
                Check { kind, ok: chk.holds, residual: format!("O(x^{})", chk.achieved), achieved_order: Some(chk.achieved) }
            }
            CertBody::Weierstrass { d, e, curves, order } => {
                let w = WeierstrassCertificate {
                    d: d.to_series()?,
                    e: e.to_series()?,
                    curve_terms: curves.iter().map(|t| Ok((t.curve.to_series()?, t.exponent.clone()))).collect::<Result<_>>()?,
                    order: *order,
                };
                let chk = check_weierstrass_certificate(&field, &w)?;
                Check { kind, ok: chk.holds, residual: format!("O(x^{})", chk.achieved), achieved_order: Some(chk.achieved) }
            }
        })
    }
}

/// Every `cert-v1` object inside a JSON document (a single certificate, a list or a report).
pub fn collect_docs(v: &Value) -> Result<Vec<CertDoc>> {
    let mut out = Vec::new();
    walk(v, &mut out)?;
    Ok(out)
}

fn walk(v: &Value, out: &mut Vec<CertDoc>) -> Result<()> {
    match v {
        Value::Object(m) => {
            if m.get("schema").and_then(Value::as_str) == Some(SCHEMA) {
                let d: CertDoc = serde_json::from_value(v.clone()).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
                out.push(d);
            } else {
                for x in m.values() {
                    walk(x, out)?;
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                walk(x, out)?;
            }
        }
        _ => {}
    }
    Ok(())
}

/// Checks every certificate in a JSON text; returns whether all passed and the checks as JSON.
pub fn verify_text(text: &str) -> Result<(bool, String)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    let docs = collect_docs(&v)?;
    if docs.is_empty() {
        return Err(Error::NoSolution(format!("no {SCHEMA} objects")));
    }
    let checks = docs.iter().map(CertDoc::check).collect::<Result<Vec<_>>>()?;
    let ok = checks.iter().all(|c| c.ok);
    Ok((ok, serde_json::to_string(&checks).expect("checks serialize")))
}

/// A JSON array of invariant-curve certificates, keys sorted.
pub fn curves_json(field: &VectorField, curves: &[InvariantCurve]) -> String {
    let docs: Vec<CertDoc> = curves.iter().map(|c| curve_doc(field, c)).collect();
    let v = serde_json::to_value(&docs).expect("certificates serialize");
    serde_json::to_string(&v).expect("certificates serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn saddle() -> VectorField {
        VectorField::from_int_terms(&[(1, &[1, 0])], &[(-1, &[0, 1])]).unwrap()
    }

    #[test]
    fn curve_round_trip() {
        let f = saddle();
        let c = InvariantCurve::from_curve(&f, SparsePoly::var(f.vars(), 0)).unwrap();
        let d = curve_doc(&f, &c);
        let s = serde_json::to_string(&d).unwrap();
        let back: CertDoc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(back.check().unwrap().ok);
    }

    #[test]
    fn tampered_text_is_rejected() {
        let f = saddle();
        let c = InvariantCurve::from_curve(&f, SparsePoly::var(f.vars(), 0)).unwrap();
        let mut d = curve_doc(&f, &c);
        if let CertBody::InvariantCurve { curve, .. } = &mut d.body {
            curve.text = "y".into();
        }
        assert!(matches!(d.check(), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn wrong_cofactor_fails() {
        let f = saddle();
        let c = InvariantCurve { c: SparsePoly::var(f.vars(), 0), k: SparsePoly::constant(f.vars(), Scalar::from_int(2)) };
        let chk = curve_doc(&f, &c).check().unwrap();
        assert!(!chk.ok);
        assert_eq!(chk.residual, "-x");
    }

    #[test]
    fn finds_nested_docs() {
        let f = saddle();
        let c = InvariantCurve::from_curve(&f, SparsePoly::var(f.vars(), 1)).unwrap();
        let v = serde_json::json!({"results": {"curves": [curve_doc(&f, &c)]}});
        assert_eq!(collect_docs(&v).unwrap().len(), 1);
    }
}
