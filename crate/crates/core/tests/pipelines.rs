//! End-to-end flows across modules through the public library API.

use darbouxkit::algebra::{RationalFunction, Scalar, SparsePoly, Vars};
use darbouxkit::cli::cert::{darboux_doc, formal_doc, weierstrass_doc};
use darbouxkit::cli::parse::{parse_expression, parse_polynomial};
use darbouxkit::darboux::{algebraic_iif_check, assemble, rational_iif_to_darboux, Role};
use darbouxkit::invariants::{find_exp_factors, find_invariant_curves, find_polynomial_solutions, CofactoredObject};
use darbouxkit::painleve::{inverse_factor_certificate, painleve_first_integral, painleve_search};
use darbouxkit::polysolve::Budget;
use darbouxkit::validate::{iif_to_one_form, numeric_drift, DriftExpr, DriftOptions};
use darbouxkit::vectorfield::{RationalMap, VectorField};
use darbouxkit::weierstrass::{formal_curve, verify_formal_invariant, SeriesPolyY, TruncSeries, WeierstrassCertificate};
use darbouxkit::Error;
use num_traits::One;

fn poly(s: &str) -> SparsePoly {
    parse_polynomial(s, &Vars::xy()).unwrap()
}

fn field(p: &str, q: &str) -> VectorField {
    VectorField::new(poly(p), poly(q)).unwrap()
}

fn separable() -> VectorField {
    field("x^2 - x", "y^2 - y")
}

#[test]
fn curves_to_inverse_factor_to_first_integral_to_drift() {
    let f = separable();
    let b = Budget::default();
    let found = find_invariant_curves(&f, 1, &b).unwrap();
    let axis: Vec<CofactoredObject> =
        found.all_curves().into_iter().filter(|c| c.c != poly("x - y")).map(CofactoredObject::Curve).collect();
    assert_eq!(axis.len(), 4);

    let iif = assemble(&f, &axis, Role::InverseIntegratingFactor).unwrap();
    let v = iif.iter().find(|c| c.role == Role::InverseIntegratingFactor).unwrap();
    assert!(v.exponents().iter().all(|e| e.is_one()));

    // the same V, as a rational function, through the one-form and algebraic checks
    let vpoly = poly("(x^2 - x)*(y^2 - y)");
    assert!(algebraic_iif_check(&f, &vpoly, &SparsePoly::one(f.vars()), 1).0);
    let form = iif_to_one_form(&f, &RationalFunction::from_poly(vpoly.clone())).unwrap();
    assert!(form.closedness_check().0);

    // back to a Darboux first integral H = x(y-1)/((x-1)y) up to gauge
    let fi = rational_iif_to_darboux(&f, &vpoly, &SparsePoly::one(f.vars()), &found.all_curves(), &b).unwrap();
    assert_eq!(fi.role, Role::FirstIntegral);
    assert!(fi.verify(&f).0);
    let mut h = RationalFunction::from_poly(SparsePoly::one(f.vars()));
    for (c, l) in &fi.curve_terms {
        let e = l.to_i64().unwrap() as i32;
        h = h.mul(&RationalFunction::from_poly(c.c.clone()).pow(e).unwrap());
    }
    assert!(f.lie_derivative_rational(&h).is_zero());

    let expr = DriftExpr::from_certificate(&fi).unwrap();
    let rep = numeric_drift(&f, &expr, [2.0, 3.0], [0.0, 0.3], &DriftOptions::default()).unwrap();
    assert!(rep.max_relative_drift < 1e-8, "{rep:?}");
    // the trajectory from (2, 3) leaves every bounded set at t = ln(3/2)
    let err = numeric_drift(&f, &expr, [2.0, 3.0], [0.0, 1.0], &DriftOptions::default()).unwrap_err();
    assert!(matches!(err, Error::StepFailure(_)), "{err:?}");
}

#[test]
fn painleve_inverse_factor_agrees_with_darboux_assembly() {
    let f = separable();
    let b = Budget::default();
    let sols = find_polynomial_solutions(&f, 1, &b).unwrap();
    let chosen: Vec<_> = sols.solutions.iter().filter(|s| s.g.is_constant()).cloned().collect();
    assert_eq!(chosen.len(), 2);
    let ms = painleve_search(&f, &chosen, 0, 0, &b).unwrap();
    let cert = inverse_factor_certificate(&f, &ms[0]).unwrap();
    assert_eq!(cert.cofactor_sum(&f), f.divergence());

    // 1/M equals the product of the certificate's curves
    let mut prod = SparsePoly::one(f.vars());
    for (c, l) in &cert.curve_terms {
        prod = &prod * &c.c.pow(l.to_i64().unwrap() as u32);
    }
    let m = ms[0].as_rational().unwrap();
    assert!(m.mul_poly(&prod).as_poly().is_some_and(|p| p.is_constant()));

    let fi = painleve_first_integral(&f, &ms[0]).unwrap();
    assert!(fi.verify(&f));
}

#[test]
fn exponential_factor_of_quadratic_example() {
    // x' = -y, y' = x + y + y^2: exp(-x) has cofactor y
    let f = field("-y", "x + y + y^2");
    let es = find_exp_factors(&f, &SparsePoly::one(f.vars()), 1, 2).unwrap();
    assert!(es.iter().all(|e| e.verify(&f)));
    let hit = es.iter().find(|e| e.l == poly("y")).expect("exp(-x) with cofactor y");
    assert!(hit.h == poly("-x") || (&hit.h + &poly("x")).is_constant(), "h = {}", hit.h);
    // alone it cannot cancel against anything
    let objs = vec![CofactoredObject::Exp(hit.clone())];
    assert!(matches!(assemble(&f, &objs, Role::FirstIntegral), Err(Error::NoSolution(_))));
}

#[test]
fn abel_to_riccati_then_formal_solution() {
    let src = Vars::xy();
    let dst = Vars::new(&["X", "Y"]);
    let f = VectorField::new(poly("1"), poly("y^3 - 2*x*y^2")).unwrap();
    let map = RationalMap::new(
        [parse_expression("x^2 - 1/y", &src).unwrap(), parse_expression("x", &src).unwrap()],
        [parse_expression("Y", &dst).unwrap(), parse_expression("1/(Y^2 - X)", &dst).unwrap()],
    )
    .unwrap();
    let r = f.change_variables(&map).unwrap();
    assert_eq!((r.p().to_string(), r.q().to_string()), ("1".to_string(), "Y^2 - X".to_string()));

    // the Riccati field has a formal invariant curve through the origin
    let ric = field("1", "y^2 - x");
    let (c, k) = formal_curve(&ric, 10).unwrap();
    let chk = verify_formal_invariant(&ric, &c, &k, 10);
    assert!(chk.holds, "{chk:?}");
    let doc = formal_doc(&ric, &c, &k, 10);
    assert!(doc.check().unwrap().ok);
}

#[test]
fn certificate_documents_survive_json() {
    let f = field("x", "-y");
    let found = find_invariant_curves(&f, 1, &Budget::default()).unwrap();
    let objs: Vec<CofactoredObject> = found.all_curves().into_iter().map(CofactoredObject::Curve).collect();
    let cert = assemble(&f, &objs, Role::FirstIntegral).unwrap().remove(0);
    let doc = darboux_doc(&f, &cert);
    let text = serde_json::to_string(&doc).unwrap();
    let back: darbouxkit::cli::cert::CertDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_darboux().unwrap(), cert);
    assert!(back.check().unwrap().ok);

    let lin = field("1", "y");
    let w = WeierstrassCertificate {
        d: SeriesPolyY::constant(TruncSeries::zero_exact()),
        e: SeriesPolyY::constant(TruncSeries::constant(Scalar::one())),
        curve_terms: vec![(SeriesPolyY::y(), Scalar::one())],
        order: 8,
    };
    let doc = weierstrass_doc(&lin, &w);
    let back: darbouxkit::cli::cert::CertDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    let chk = back.check().unwrap();
    assert!(chk.ok);
}
