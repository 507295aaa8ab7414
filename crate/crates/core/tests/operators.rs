use std::sync::Arc;

use proptest::prelude::*;

use dahalab::*;

fn ctx(n: usize) -> Arc<Ctx> {
    Ctx::daha(n, &[], Mode::Exact).unwrap()
}

fn gens(n: usize) -> Gens {
    Gens::new(ctx(n))
}

fn act_eq(g: &Gens, x: Gen, input: &str, want: &str) {
    let c = g.ctx();
    let got = c.act(&g.get(x).unwrap(), &c.parse(input).unwrap()).unwrap();
    assert!(c.equal(&got, &c.parse(want).unwrap()), "{x} on {input}: got {}", c.to_string(&got));
}

#[test]
fn pi_inverse_on_monomial() {
    act_eq(&gens(2), Gen::PiInv, "X1^2*X2", "q^2*X1*X2^2");
}

#[test]
fn t_on_constant_and_x1() {
    let g = gens(2);
    act_eq(&g, Gen::T(1), "1", "tau");
    act_eq(&g, Gen::T(1), "X1", "tau^-1*X2");
}

#[test]
fn shift_and_q_derivative() {
    let g = gens(1);
    for m in 0..5 {
        act_eq(&g, Gen::Shift(1), &format!("X1^{m}"), &format!("q^{m}*X1^{m}"));
        let qint = format!("((q^{m} - q^-{m})/(q - q^-1))");
        let want = if m == 0 { "0".to_string() } else { format!("{qint}*X1^{}", m - 1) };
        act_eq(&g, Gen::Dq(1), &format!("X1^{m}"), &want);
    }
}

#[test]
fn quantum_group_images() {
    let g = gens(2);
    let c = g.ctx();
    let on = |j: JsGen, f: &str| c.act(&g.js_rep(j).unwrap(), &c.parse(f).unwrap()).unwrap();
    assert!(c.equal(&on(JsGen::G(1, 1), "X1"), &c.parse("q*X1").unwrap()));
    assert!(c.equal(&on(JsGen::E(1), "X2"), &c.parse("X1").unwrap()));
    assert!(c.equal(&on(JsGen::F(1), "X1"), &c.parse("X2").unwrap()));
}

#[test]
fn shift_commutes_past_x_with_q() {
    let g = gens(2);
    let c = g.ctx();
    let lhs = c.compose(&g.get(Gen::Shift(1)).unwrap(), &g.get(Gen::X(1)).unwrap()).unwrap();
    let rhs = c.scale_op(&c.q(), &c.compose(&g.get(Gen::X(1)).unwrap(), &g.get(Gen::Shift(1)).unwrap()).unwrap());
    assert!(c.op_eq(&lhs, &rhs).unwrap());
}

#[test]
fn linear_combinations() {
    let g = gens(2);
    let c = g.ctx();
    let a = g.get(Gen::T(1)).unwrap();
    assert!(c.linear_combine(2, &[(Frac::one(), &a), (Frac::int(-1), &a)]).unwrap().is_zero());
    assert!(c.linear_combine(2, &[]).unwrap().is_zero());
    assert!(c.op_eq(&c.compose(&a, &Op::identity(2)).unwrap(), &a).unwrap());
    assert!(c.op_eq(&c.product(&[]).unwrap(), &Op::identity(2)).unwrap());
}

#[test]
fn res_examples() {
    let c = ctx(2);
    let g = c.parse("X1 + q").unwrap();
    let h = c.parse("tau*X2").unwrap();
    let t1 = Key::unit_shift(0, 1);
    let t2 = Key::unit_shift(1, 1);
    let mut t1s1 = t1;
    t1s1.perm = Perm::simple(0);
    let op = Op::from_terms(2, vec![(t1s1, g.clone()), (t2, h.clone())]);
    let want = Op::from_terms(2, vec![(t1, g), (t2, h)]);
    assert!(c.op_eq(&c.res(&op), &want).unwrap());
    assert!(c.op_eq(&c.res(&Op::perm(2, Perm::simple(0))), &Op::identity(2)).unwrap());
    assert!(c.op_eq(&c.res(&want), &want).unwrap());
}

#[test]
fn w_invariance_examples() {
    let g = gens(2);
    let c = g.ctx();
    let t1 = g.get(Gen::Shift(1)).unwrap();
    let sum = c.add_ops(&t1, &g.get(Gen::Shift(2)).unwrap()).unwrap();
    assert!(c.is_w_invariant(&sum).unwrap());
    assert!(!c.is_w_invariant(&t1).unwrap());
}

#[test]
fn string_identities() {
    let g = gens(4);
    let c = g.ctx();
    let id = Op::identity(4);
    assert!(c.op_eq(&g.string(StringKind::Tplus, 3, 1).unwrap(), &id).unwrap());
    let prod = c
        .compose(&g.string(StringKind::Tplus, 1, 3).unwrap(), &g.string(StringKind::TinvMinus, 3, 1).unwrap())
        .unwrap();
    assert!(c.op_eq(&prod, &id).unwrap());
    assert!(c.op_eq(&g.r_op(1, 1, 2, 2).unwrap(), &id).unwrap());
    for eps in [1, -1] {
        let prod = c.compose(&g.r_op(eps, -1, 4, 1).unwrap(), &g.r_op(eps, 1, 4, 1).unwrap()).unwrap();
        assert!(c.op_eq(&prod, &id).unwrap(), "eps = {eps}");
    }
}

#[test]
fn string_at_tau_one_is_a_permutation() {
    let c = Ctx::daha_tau_one(3, &[]).unwrap();
    let g = Gens::new(c.clone());
    let want = Op::perm(3, Perm::simple(0).then(&Perm::simple(1)));
    assert!(c.op_eq(&g.string(StringKind::Tplus, 1, 2).unwrap(), &want).unwrap());
}

#[test]
fn psi_t_on_constants() {
    let g = Gens::psi(ctx(3));
    for k in 1..3 {
        act_eq(&g, Gen::T(k), "1", "tau");
    }
}

fn laurent(n: usize) -> impl Strategy<Value = Vec<(Vec<i32>, i64)>> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, n), -3i64..=3), 1..4)
}

fn build(c: &Ctx, terms: &[(Vec<i32>, i64)]) -> Frac {
    let parts: Vec<Frac> = terms.iter().map(|(a, k)| c.mul(&Frac::int(*k), &c.monomial(a))).collect();
    c.sum_owned(&parts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_quadratic_relation_on_laurent(terms in laurent(3), k in 1usize..3) {
        let g = gens(3);
        let c = g.ctx();
        let f = build(c, &terms);
        let t = g.get(Gen::T(k)).unwrap();
        let tf = c.act(&t, &f).unwrap();
        let ttf = c.act(&t, &tf).unwrap();
        let tau = c.tau();
        let tinv = c.inv(&tau).unwrap();
        // (T - τ)(T + τ⁻¹) = T² - (τ - τ⁻¹)T - 1
        let lhs = c.sub(&c.sub(&ttf, &c.mul(&c.sub(&tau, &tinv), &tf)), &f);
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn composition_matches_sequential_action(terms in laurent(2), a in 0usize..8, b in 0usize..8) {
        let all = [Gen::T(1), Gen::Tinv(1), Gen::Pi, Gen::PiInv, Gen::Y(1), Gen::Y(2), Gen::D(1), Gen::X(2)];
        let g = gens(2);
        let c = g.ctx();
        let f = build(c, &terms);
        let (x, y) = (g.get(all[a]).unwrap(), g.get(all[b]).unwrap());
        let seq = c.act(&x, &c.act(&y, &f).unwrap()).unwrap();
        let comp = c.act(&c.compose(&x, &y).unwrap(), &f).unwrap();
        prop_assert!(c.equal(&seq, &comp));
    }

    #[test]
    fn res_agrees_on_symmetric_inputs(terms in laurent(2), a in 0usize..4) {
        let all = [Gen::T(1), Gen::D(1), Gen::Y(1), Gen::Pi];
        let g = gens(2);
        let c = g.ctx();
        let f = build(c, &terms);
        let s = c.act(&Op::perm(2, Perm::simple(0)), &f).unwrap();
        let sym = c.add(&f, &s);
        let op = g.get(all[a]).unwrap();
        prop_assert!(c.equal(&c.act(&op, &sym).unwrap(), &c.act(&c.res(&op), &sym).unwrap()));
    }
}
