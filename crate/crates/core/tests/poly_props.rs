use geomquant::poly::{expand_expr, mpoly_subst, parse_expr, parse_poly, parse_series, Coeff, HSeries, MPoly, VarNames};
use num_rational::BigRational;
use proptest::prelude::*;

const ARITY: usize = 3;
const N: usize = 3;

fn names() -> VarNames {
    VarNames::flat(ARITY)
}

fn p(s: &str) -> MPoly {
    parse_poly(s, &names()).unwrap()
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (-4i64..5, 1i64..4, 0usize..2).prop_map(|(a, b, e)| {
        let c = Coeff::from_ratio(a, b);
        if e == 1 {
            &c * &Coeff::eps()
        } else {
            c
        }
    })
}

fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..2), coeff()), 0..5)
        .prop_map(|ts| MPoly::from_terms(ARITY, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], k))))
}

fn series() -> impl Strategy<Value = HSeries> {
    prop::collection::vec(mpoly(), N + 1).prop_map(|cs| HSeries::from_coeffs(ARITY, N, cs).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-3i64..4, 1i64..3).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mpoly_ring_axioms(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a * &MPoly::zero(ARITY)).is_zero());
        prop_assert!((&a + &b).terms().all(|(_, k)| !k.is_zero()));
    }

    #[test]
    fn derivative_is_a_derivation(a in mpoly(), b in mpoly(), i in 0usize..ARITY) {
        let lhs = (&a * &b).diff(i).unwrap();
        let rhs = &(&a.diff(i).unwrap() * &b) + &(&a * &b.diff(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_is_a_ring_map(a in mpoly(), b in mpoly(), v in rational()) {
        prop_assert_eq!((&a * &b).specialize_eps(&v), &a.specialize_eps(&v) * &b.specialize_eps(&v));
        prop_assert_eq!((&a + &b).specialize_eps(&v), &a.specialize_eps(&v) + &b.specialize_eps(&v));
        let free = a.specialize_eps(&v);
        prop_assert_eq!(free.specialize_eps(&BigRational::from_integer(7.into())), free.clone());
    }

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &HSeries::zero(ARITY, N), a.clone());
    }

    #[test]
    fn unit_series_invert(a in series()) {
        let mut u = a.clone();
        u.set_coeff(0, MPoly::one(ARITY));
        let inv = u.inverse().unwrap();
        prop_assert_eq!(&u * &inv, HSeries::one(ARITY, N));
    }

    #[test]
    fn exp_and_ln_are_inverse(a in series()) {
        let small = a.shift(1);
        let e = small.exp().unwrap();
        prop_assert_eq!(e.ln().unwrap(), small.clone());
        let one_plus = &HSeries::one(ARITY, N) + &small;
        prop_assert_eq!(one_plus.ln().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn substitution_is_a_ring_map(a in mpoly(), b in mpoly(), i0 in series(), i1 in series(), i2 in series()) {
        let images = [i0, i1, i2];
        let lhs = mpoly_subst(&(&a * &b), &images).unwrap();
        let rhs = &mpoly_subst(&a, &images).unwrap() * &mpoly_subst(&b, &images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_respects_arithmetic(a in mpoly(), b in mpoly()) {
        let nm = names();
        let ea = parse_expr(&a.to_string_with(&nm), &nm).unwrap();
        let eb = parse_expr(&b.to_string_with(&nm), &nm).unwrap();
        prop_assert_eq!(ea.to_poly(ARITY).unwrap(), a.clone());
        let prod = expand_expr(&(ea.clone() * eb.clone()), N, ARITY).unwrap();
        prop_assert_eq!(prod, &expand_expr(&ea, N, ARITY).unwrap() * &expand_expr(&eb, N, ARITY).unwrap());
        let h = parse_expr("h", &nm).unwrap();
        let one = parse_expr("1", &nm).unwrap();
        let d = one.clone() - h * ea;
        let recip = expand_expr(&(one / d.clone()), N, ARITY).unwrap();
        prop_assert_eq!(&recip * &expand_expr(&d, N, ARITY).unwrap(), HSeries::one(ARITY, N));
    }
}

#[test]
fn polynomial_arithmetic_examples() {
    assert_eq!(&p("x1 + x2") * &p("x1 - x2"), p("x1^2 - x2^2"));
    let sum = &p("x1^2*x2 + 3/2*x3") + &p("-x1^2*x2");
    assert_eq!(sum, p("3/2*x3"));
    assert_eq!(sum.num_terms(), 1);
    assert!(MPoly::zero(2).checked_add(&MPoly::zero(3)).is_err());
}

#[test]
fn derivative_examples() {
    assert_eq!(p("x1^2*x2").diff(0).unwrap(), p("2*x1*x2"));
    assert!(p("x1^2*x2").diff(2).unwrap().is_zero());
    assert_eq!(p("x1*x2 + x1").diff(0).unwrap(), p("x2 + 1"));
    assert!(p("x1").diff(3).is_err());
}

#[test]
fn substitution_examples() {
    let nm = names();
    let shift = |s: &str| parse_series(s, &nm, 2).unwrap();
    let out = mpoly_subst(&p("x1*x2"), &[shift("x1 + h"), shift("x2"), shift("x3")]).unwrap();
    assert_eq!(out, shift("x1*x2 + h*x2"));
    let q = p("x1^3 - 2*x2*x3 + 1/3");
    let id: Vec<HSeries> = (0..3).map(|i| HSeries::from_poly(MPoly::var(3, i), 2)).collect();
    assert_eq!(mpoly_subst(&q, &id).unwrap(), HSeries::from_poly(q.clone(), 2));
    // Hand expansion: (1 + h + h^2/2)^2 = 1 + 2h + 2h^2 mod h^3.
    let euler = mpoly_subst(&p("x1^2"), &[shift("x1 + h*x1 + 1/2*h^2*x1"), shift("x2"), shift("x3")]).unwrap();
    assert_eq!(euler.coeffs(), &[p("x1^2"), p("2*x1^2"), p("2*x1^2")]);
    assert!(mpoly_subst(&q, &id[..2]).is_err());
    let mixed = [id[0].clone(), id[1].clone(), HSeries::from_poly(MPoly::var(3, 2), 3)];
    assert!(mpoly_subst(&q, &mixed).is_err());
}

#[test]
fn series_arithmetic_examples() {
    let nm = VarNames::blocks(2, 2);
    let s = |t: &str| parse_series(t, &nm, 2).unwrap();
    assert_eq!(&s("1 + h") * &s("1 - h"), s("1 - h^2"));
    // Hand expansion: 1 + h y2 + h^2 y2^2 + h y2 + h^2 y2^2 + O(h^3).
    let prod = &s("1 + h*y2") * &s("1 + h*y2 + h^2*y2^2");
    let y2 = parse_poly("y2", &nm).unwrap();
    assert_eq!(prod.coeffs(), &[MPoly::one(4), y2.scale(&Coeff::from_int(2)), y2.pow(2).scale(&Coeff::from_int(2))]);
    assert!(s("1").checked_add(&parse_series("1", &nm, 3).unwrap()).is_err());
}

#[test]
fn expansion_examples() {
    let nm = VarNames::blocks(3, 2);
    let q = |t: &str| parse_poly(t, &nm).unwrap();
    assert_eq!(parse_series("1/(1 - h*y2)", &nm, 2).unwrap().coeffs(), &[MPoly::one(6), q("y2"), q("y2^2")]);
    let ln = parse_series("ln(1 + h*y2)", &nm, 3).unwrap();
    assert_eq!(ln.coeffs(), &[MPoly::zero(6), q("y2"), q("-1/2*y2^2"), q("1/3*y2^3")]);
    // First star component, expanded by hand to second order.
    let star = parse_series("((1 - h*y3 + h*y1/2)/(1 - h*y2))*x1 - h*y1*x2", &nm, 2).unwrap();
    assert_eq!(star.coeff(0), &q("x1"));
    assert_eq!(star.coeff(1), &q("(y1/2 - y3 + y2)*x1 - y1*x2"));
    assert_eq!(star.coeff(2), &q("(y2*(y1/2 - y3) + y2^2)*x1"));
    assert!(parse_series("1/(h*y2)", &nm, 2).is_err());
    assert!(parse_series("ln(2 + h)", &nm, 2).is_err());
}

#[test]
fn specialization_examples() {
    let zero = BigRational::from_integer(0.into());
    let half = Coeff::from_ratio(1, 2);
    let c = &Coeff::one() + &(&half * &Coeff::eps());
    assert_eq!(c.specialize(&zero), Coeff::one());
    let nm = VarNames::custom(vec!["x".into(), "y".into(), "z".into()]);
    let b2 = parse_poly("-eps*x", &nm).unwrap();
    assert!(b2.specialize_eps(&zero).is_zero());
    let free = parse_poly("x^2 - 3*y*z", &nm).unwrap();
    assert_eq!(free.specialize_eps(&BigRational::from_integer(5.into())), free);
}
