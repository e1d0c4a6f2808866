use darbouxkit::algebra::{partial_fractions, Monomial, RationalFunction, Scalar, SparsePoly, TermOrder, Vars};
use darbouxkit::cli::parse::{parse_expression, parse_polynomial};
use darbouxkit::darboux::algebraic_iif_check;
use darbouxkit::invariants::InvariantCurve;
use darbouxkit::polysolve::{groebner, normal_form, reduces_to_zero, Budget};
use darbouxkit::validate::iif_to_one_form;
use darbouxkit::vectorfield::VectorField;
use proptest::prelude::*;

fn xy() -> Vars {
    Vars::xy()
}

fn monos(d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|t| (0..=t).map(move |j| Monomial(vec![t - j, j]))).collect()
}

/// Dense polynomial of total degree <= d with small Gaussian-integer coefficients.
fn poly_strategy(d: u32, gaussian: bool) -> impl Strategy<Value = SparsePoly> {
    let n = monos(d).len();
    let im = if gaussian { -2i64..=2 } else { 0i64..=0 };
    prop::collection::vec((-4i64..=4, im), n).prop_map(move |cs| {
        let terms = monos(d).into_iter().zip(cs).map(|(m, (re, im))| (m, Scalar::from_parts((re, 1), (im, 1))));
        SparsePoly::from_terms(&xy(), terms.collect::<Vec<_>>())
    })
}

fn sparse_strategy() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2), -3i64..=3), 1..=3).prop_map(|ts| {
        SparsePoly::from_terms(&xy(), ts.into_iter().map(|((a, b), c)| (Monomial(vec![a, b]), Scalar::from_int(c))).collect::<Vec<_>>())
    })
}

fn field_strategy() -> impl Strategy<Value = VectorField> {
    (poly_strategy(2, false), poly_strategy(2, false))
        .prop_filter_map("zero field", |(p, q)| VectorField::new(p, q).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(p in poly_strategy(3, true), q in poly_strategy(2, true), r in poly_strategy(2, false)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p + &(-&p)).is_zero());
        prop_assert_eq!(&p * &SparsePoly::one(&xy()), p.clone());
    }

    #[test]
    fn pseudo_divrem_round_trip(f in poly_strategy(3, true), g in poly_strategy(2, true)) {
        prop_assume!(g.involves(1));
        let dr = f.divrem_in(&g, 1, true).unwrap();
        prop_assert_eq!(&dr.multiplier * &f, &(&dr.quotient * &g) + &dr.remainder);
        prop_assert!(dr.remainder.degree_in(1) < g.degree_in(1));
    }

    #[test]
    fn exact_division_recovers_factor(a in poly_strategy(2, true), b in poly_strategy(2, false)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
    }

    #[test]
    fn partial_fractions_recombine(
        roots in prop::collection::vec(((-4i64..=4, 1i64..=3), -2i64..=2, 1u32..=2), 1..=3),
        num in poly_strategy(3, true),
    ) {
        let vars = xy();
        let num = num.substitute_scalar(1, &Scalar::from_int(0));
        prop_assume!(!num.is_zero());
        let mut den = SparsePoly::one(&vars);
        for ((re, d), im, e) in roots {
            let lin = &SparsePoly::var(&vars, 0) - &SparsePoly::constant(&vars, Scalar::from_parts((re, d), (im, 1)));
            den = &den * &lin.pow(e);
        }
        let rf = RationalFunction::new(num, den).unwrap();
        let pf = partial_fractions(&rf, 0).unwrap();
        prop_assert_eq!(pf.recombine(&vars, 0), rf);
    }

    #[test]
    fn groebner_reduces_generators(gens in prop::collection::vec(sparse_strategy(), 1..=3), lex in any::<bool>()) {
        let gens: Vec<SparsePoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let order = if lex { TermOrder::Lex } else { TermOrder::GrLex };
        let gb = groebner(&gens, order, &Budget::default()).unwrap();
        for g in &gens {
            prop_assert!(reduces_to_zero(g, &gb, order));
        }
        // members of the ideal reduce too
        let combo = &(&gens[0] * &SparsePoly::var(&xy(), 0)) + &gens[gens.len() - 1];
        prop_assert!(normal_form(&combo, &gb, order).is_zero());
    }

    #[test]
    fn cofactors_add_over_products(
        a1 in -3i64..=3, a2 in -3i64..=3,
        u in poly_strategy(1, false), v in poly_strategy(1, false),
    ) {
        let vars = xy();
        let l1 = &SparsePoly::var(&vars, 0) - &SparsePoly::constant(&vars, Scalar::from_int(a1));
        let l2 = &SparsePoly::var(&vars, 1) - &SparsePoly::constant(&vars, Scalar::from_int(a2));
        let Ok(f) = VectorField::new(&l1 * &u, &l2 * &v) else { return Ok(()) };
        let c1 = InvariantCurve::from_curve(&f, l1).unwrap();
        let c2 = InvariantCurve::from_curve(&f, l2).unwrap();
        let prod = c1.product(&c2);
        prop_assert!(prod.verify(&f));
        prop_assert_eq!(InvariantCurve::from_curve(&f, prod.c.clone()).unwrap().k, &c1.k + &c2.k);
    }

    #[test]
    fn two_inverse_factors_give_first_integral(a in poly_strategy(1, false), h in poly_strategy(2, false)) {
        prop_assume!(!a.is_zero() && !h.is_constant());
        let Ok(f) = VectorField::new(&a * &h.derivative(1), -(&a * &h.derivative(0))) else { return Ok(()) };
        let one = SparsePoly::one(&xy());
        let v2 = &a * &h;
        prop_assert!(algebraic_iif_check(&f, &a, &one, 1).0);
        prop_assert!(algebraic_iif_check(&f, &v2, &one, 1).0);
        let ratio = RationalFunction::from_poly(v2).div(&RationalFunction::from_poly(a)).unwrap();
        prop_assert!(f.lie_derivative_rational(&ratio).is_zero());
        prop_assert!(!ratio.num().is_constant() || !ratio.den().is_constant());
    }

    #[test]
    fn print_parse_round_trip(p in poly_strategy(3, true), q in poly_strategy(2, false)) {
        let vars = xy();
        prop_assert_eq!(parse_polynomial(&p.to_string(), &vars).unwrap(), p.clone());
        if !q.is_zero() {
            let r = RationalFunction::new(p, q).unwrap();
            prop_assert_eq!(parse_expression(&r.to_string(), &vars).unwrap(), r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closedness_matches_algebraic_check(f in field_strategy(), a in poly_strategy(1, false), b in poly_strategy(1, false), built in any::<bool>()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        // half the cases get a field that has the factor A
        let f = if built {
            match VectorField::new(&a * &b.derivative(1), -(&a * &b.derivative(0))) {
                Ok(f) => f,
                Err(_) => f,
            }
        } else {
            f
        };
        let v = RationalFunction::new(a, b).unwrap();
        let closed = iif_to_one_form(&f, &v).unwrap().closedness_check().0;
        prop_assert_eq!(closed, algebraic_iif_check(&f, v.num(), v.den(), 1).0);
    }
}
