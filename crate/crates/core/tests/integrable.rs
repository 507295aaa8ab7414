use std::collections::BTreeMap;

use proptest::prelude::*;

use dahalab::relations::suite_gens;
use dahalab::*;

#[test]
fn closed_m_rank_one() {
    let c = Ctx::daha(1, &["a", "b", "c"], Mode::Exact).unwrap();
    let s = |x: &str| c.scalar(x).unwrap();
    let xinv = c.parse("X1^-1").unwrap();
    let want = Op::from_terms(
        1,
        vec![
            (Key::unit_shift(0, 1), c.mul(&s("a"), &xinv)),
            (Key::unit_shift(0, -1), c.mul(&s("b"), &xinv)),
            (Key::ID, c.mul(&s("c"), &xinv)),
        ],
    );
    assert!(c.op_eq(&closed_m(&c, &s("a"), &s("b"), &s("c")).unwrap(), &want).unwrap());
}

#[test]
fn closed_m_multiplication_part() {
    let c = Ctx::daha(3, &["c"], Mode::Exact).unwrap();
    let got = closed_m(&c, &Frac::zero(), &Frac::zero(), &c.scalar("c").unwrap()).unwrap();
    let want = Op::mult(3, c.parse("c*(X1^-1 + X2^-1 + X3^-1)").unwrap());
    assert!(c.op_eq(&got, &want).unwrap());
    assert!(c.is_w_invariant(&got).unwrap());
}

#[test]
fn closed_m_is_invariant() {
    let c = Ctx::daha(2, &["a", "b", "c"], Mode::Exact).unwrap();
    let s = |x: &str| c.scalar(x).unwrap();
    assert!(c.is_w_invariant(&closed_m(&c, &s("a"), &s("b"), &s("c")).unwrap()).unwrap());
}

#[test]
fn closed_d12_single_sum() {
    let c = Ctx::daha(3, &["a1"], Mode::Exact).unwrap();
    let z = Frac::zero();
    let op = closed_d12(&c, &z, &z, &c.scalar("a1").unwrap(), &z).unwrap();
    assert!(!op.is_zero());
    for (k, _) in op.terms() {
        assert!(k.perm.is_identity());
        let s: Vec<i16> = k.shift[..3].to_vec();
        assert_eq!(s.iter().filter(|&&e| e == 1).count(), 1, "{s:?}");
        assert_eq!(s.iter().filter(|&&e| e == 0).count(), 2, "{s:?}");
    }
}

#[test]
fn e_closed_top_index() {
    for n in 1..=3 {
        let c = Ctx::daha(n, &[], Mode::Exact).unwrap();
        let coeff = c.mul(&c.pow(&c.tau(), 1 - n as i32).unwrap(), &c.site(n - 1, -1));
        let want = Op::term(n, Key::unit_shift(n - 1, 1), coeff);
        assert!(c.op_eq(&e_closed(&c, 1, n).unwrap(), &want).unwrap(), "n = {n}");
    }
}

#[test]
fn res_p1_matches_closed_m_at_rank_two() {
    let g = suite_gens(2, Mode::Exact, false, (1, 1)).unwrap();
    let c = g.ctx();
    let s = |x: &str| c.scalar(x).unwrap();
    let r = res_sym(&g, SymKind::PowerSum(1)).unwrap();
    assert!(c.op_eq(&r, &closed_m(c, &s("a1"), &s("am1"), &s("a0")).unwrap()).unwrap());
    let e2 = res_sym(&g, SymKind::Elementary(2)).unwrap();
    assert!(c.is_w_invariant(&e2).unwrap());
    assert!(c.commutator(&r, &e2).unwrap().is_zero());
    assert!(res_sym(&g, SymKind::PowerSum(3)).is_err());
}

#[test]
fn cald_routes_agree() {
    let g = suite_gens(3, Mode::Exact, false, (1, 2)).unwrap();
    assert_eq!(cald_family(&g).unwrap().len(), 3);
}

#[test]
fn two_type_identity_examples() {
    for (a, b) in [(1, 0), (1, 1), (2, 2)] {
        assert!(twotype_identity_check(a, b).unwrap(), "({a},{b})");
    }
    assert!(twotype_hat_check(1, 1).unwrap());
}

#[test]
fn two_type_build_and_commutator() {
    let mut v = BTreeMap::new();
    v.insert("th0".to_string(), dahalab_exact::Rat::new(1, 2));
    let h = twotype_build(TwoTypeKind::HHat, 1, 1, &v).unwrap();
    assert!(h.commutator(&h).unwrap().op.is_zero());
    let j = h.to_json();
    assert_eq!(j["kind"], "H_hat");
    assert_eq!(j["N1"], 1);
    v.insert("nope".to_string(), dahalab_exact::Rat::one());
    assert!(matches!(twotype_build(TwoTypeKind::HHat, 1, 1, &v), Err(CoreError::BadParams(_))));
}

fn symmetric_poly(c: &Ctx, a: i32, b: i32, k: i64) -> Frac {
    let f = c.add(&c.monomial(&[a, b]), &c.monomial(&[b, a]));
    c.mul(&Frac::int(k), &f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn res_preserves_symmetric_polynomials(
        am1 in 1i64..5, a0 in -3i64..=3, a1 in 1i64..5,
        a in -3i32..=3, b in -3i32..=3, k in 1i64..4, seed in 0u64..100,
    ) {
        let c = Ctx::daha(2, &[], Mode::Specialized(seed)).unwrap();
        let mut m = BTreeMap::new();
        m.insert(-1, Frac::int(-am1));
        m.insert(0, Frac::int(a0));
        m.insert(1, Frac::int(a1));
        let g = Gens::new(c.clone()).with_cald(CalDParams::new(1, 1, m).unwrap());
        let f = symmetric_poly(&c, a, b, k);
        for s in [SymKind::PowerSum(1), SymKind::PowerSum(2), SymKind::Elementary(2)] {
            let op = res_sym(&g, s).unwrap();
            let img = c.act(&op, &f).unwrap();
            prop_assert!(c.laurent_terms(&img).is_ok());
            let swapped = c.act(&Op::perm(2, Perm::simple(0)), &img).unwrap();
            prop_assert!(c.equal(&img, &swapped));
        }
    }

    #[test]
    fn p3_commutes_in_specialized_mode(seed in 0u64..1000) {
        let g = suite_gens(3, Mode::Specialized(seed), false, (1, 1)).unwrap();
        let c = g.ctx();
        let p1 = res_sym(&g, SymKind::PowerSum(1)).unwrap();
        let p3 = res_sym(&g, SymKind::PowerSum(3)).unwrap();
        prop_assert!(c.commutator(&p1, &p3).unwrap().is_zero());
    }
}
