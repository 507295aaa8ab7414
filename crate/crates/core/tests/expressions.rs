use proptest::prelude::*;

use dahalab::*;

fn atom(name: &str, idx: &[usize]) -> Expr {
    Expr::Atom(Atom { name: name.to_string(), idx: idx.to_vec() })
}

#[test]
fn grammar_examples() {
    assert_eq!(parse_expr("Y[1] e[1,2]").unwrap(), Expr::Prod(vec![atom("Y", &[1]), atom("e", &[1, 2])]));
    assert_eq!(parse_expr("T[1]^2").unwrap(), Expr::Pow(Box::new(atom("T", &[1])), 2));
    let want = Expr::Sum(vec![
        (false, Expr::Prod(vec![Expr::Scalar("q-1".into()), atom("X", &[1])])),
        (false, Expr::Prod(vec![Expr::Scalar("tau".into()), Expr::Pow(Box::new(atom("Y", &[2])), -1)])),
    ]);
    assert_eq!(parse_expr("{q-1} X[1] + {tau} Y[2]^-1").unwrap(), want);
    assert_eq!(parse_expr("pi piinv").unwrap(), Expr::Prod(vec![atom("pi", &[]), atom("piinv", &[])]));
}

#[test]
fn syntax_errors_carry_positions() {
    for bad in ["Y[1", "T[1]^", "(X[1]", "X[1] +", "{q"] {
        let e = parse_expr(bad).unwrap_err().to_string();
        assert!(e.contains("parse error at"), "{bad}: {e}");
    }
}

#[test]
fn out_of_range_indices_fail_at_evaluation() {
    let e = parse_expr("T[5]").unwrap();
    let g = Gens::new(Ctx::daha(2, &[], Mode::Exact).unwrap());
    assert!(g.eval(&e).is_err());
}

#[test]
fn evaluation_with_scalars() {
    let g = Gens::new(Ctx::daha(2, &[], Mode::Exact).unwrap());
    let c = g.ctx();
    let op = g.eval_str("{q-1} X[1] + {tau} Y[2]^-1").unwrap();
    let a = c.act(&op, &Frac::one()).unwrap();
    let y2inv_on_one = c.act(&g.get(Gen::Yinv(2)).unwrap(), &Frac::one()).unwrap();
    let want = c.add(&c.parse("(q-1)*X1").unwrap(), &c.mul(&c.tau(), &y2inv_on_one));
    assert!(c.equal(&a, &want));
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (prop::sample::select(vec!["T", "Tinv", "Y", "Yinv", "X", "Xinv", "D", "t", "d"]), 1usize..4)
            .prop_map(|(n, i)| atom(n, &[i])),
        (1usize..4, 1usize..4).prop_map(|(i, j)| atom("e", &[i, j])),
        Just(atom("pi", &[])),
        Just(atom("piinv", &[])),
        (0u64..20).prop_map(Expr::Int),
        prop::sample::select(vec!["q", "tau", "q-1", "1/(q+tau)", "q^2*tau^-1"]).prop_map(|s| Expr::Scalar(s.into())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), -3i32..=3).prop_map(|(b, k)| Expr::Pow(Box::new(b), k)),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Prod),
            prop::collection::vec((any::<bool>(), inner), 2..4).prop_map(Expr::Sum),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_round_trips(e in expr()) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(&back, &e, "{}", text);
    }
}
