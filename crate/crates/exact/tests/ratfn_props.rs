use dahalab_exact::{parse_ratfn, ArithError, Poly, Rat, RatFn, VarSet};
use proptest::prelude::*;

fn vars() -> VarSet {
    VarSet::new(["q", "tau", "X1", "X2"]).unwrap()
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0i16..3, 0i16..2, 0i16..3, 0i16..2, -4i64..5), 1..5).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|(a, b, c, d, k)| {
            (dahalab_exact::Mono::from_slice(&[a, b, c, d]), Rat::from_int(k))
        }))
    })
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (small_poly(), small_poly()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            RatFn::new(&vars(), n, d).ok()
        }
    })
}

/// Evaluation at a point avoiding poles, computed without any gcd.
fn eval_raw(num: &str, den: &str, at: &[Rat]) -> Option<Rat> {
    let v = vars();
    let n = parse_ratfn(num, &v).unwrap().eval(at).ok()?;
    let d = parse_ratfn(den, &v).unwrap().eval(at).ok()?;
    if d.is_zero() {
        None
    } else {
        Some(&n / &d)
    }
}

#[test]
fn quotient_by_long_division() {
    let v = vars();
    let r = parse_ratfn("(q^2 - 1)/(q - 1)", &v).unwrap();
    assert_eq!(r.canonical_string(), "q + 1");
    // Independent check at sample points.
    for k in [2i64, 3, 7, -5] {
        let at = [Rat::from_int(k), Rat::ONE, Rat::ONE, Rat::ONE];
        assert_eq!(eval_raw("q^2 - 1", "q - 1", &at).unwrap(), Rat::from_int(k + 1));
    }
}

#[test]
fn shift_substitution_clears() {
    let v = vars();
    let f = parse_ratfn("1/(X1*X2^-1 - 1)", &v).unwrap();
    let img = parse_ratfn("q*X1", &v).unwrap();
    let g = f.substitute(&[("X1", img)], &v).unwrap();
    let expect = parse_ratfn("X2/(q*X1 - X2)", &v).unwrap();
    assert_eq!(g, expect);
    // Pointwise: 1/(q x1/x2 - 1) at sample points equals x2/(q x1 - x2).
    let at = [Rat::new(3, 2), Rat::ONE, Rat::new(-2, 7), Rat::new(5, 3)];
    let lhs = Rat::ONE.clone() / (&(&at[0] * &at[2]) / &at[3] - Rat::ONE);
    assert_eq!(g.eval(&at).unwrap(), lhs);
}

#[test]
fn tau_to_one_kills_numerator() {
    let v = vars();
    let f = parse_ratfn("(tau - tau^-1)/(X1 - X2)", &v).unwrap();
    let g = f.substitute(&[("tau", RatFn::one(&v))], &v).unwrap();
    assert!(g.is_zero());
    assert_eq!(g.canonical_string(), "0");
}

#[test]
fn substitution_into_zero_denominator_fails() {
    let v = vars();
    let f = parse_ratfn("1/(X1 - X2)", &v).unwrap();
    let x2 = RatFn::var(&v, "X2").unwrap();
    assert_eq!(f.substitute(&[("X1", x2)], &v), Err(ArithError::ZeroDenominator));
}

#[test]
fn simple_identities() {
    let v = vars();
    let a = parse_ratfn("q/tau", &v).unwrap();
    let b = parse_ratfn("tau/q", &v).unwrap();
    assert!(a.mul(&b).is_one());
    let c = parse_ratfn("(q^2-1)/q", &v).unwrap();
    assert_eq!(c.add(&RatFn::zero(&v)), c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in ratfn()) {
        let again = RatFn::new(a.vars(), a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let reparsed = parse_ratfn(&a.canonical_string(), a.vars()).unwrap();
        prop_assert_eq!(reparsed.canonical_string(), a.canonical_string());
    }

    #[test]
    fn equal_values_have_equal_strings(a in ratfn(), b in ratfn()) {
        // (a + b) - b built by a different route than a itself.
        let other = a.add(&b).sub(&b);
        prop_assert_eq!(other.canonical_string(), a.canonical_string());
    }

    #[test]
    fn substitute_is_multiplicative(a in ratfn(), b in ratfn(), k in 2i64..5) {
        let v = vars();
        let img = parse_ratfn(&format!("{k}*q*X1 + X2"), &v).unwrap();
        let s = |f: &RatFn| f.substitute(&[("X1", img.clone())], &v);
        if let (Ok(sa), Ok(sb), Ok(sab)) = (s(&a), s(&b), s(&a.mul(&b))) {
            prop_assert_eq!(sab, sa.mul(&sb));
        }
    }
}
