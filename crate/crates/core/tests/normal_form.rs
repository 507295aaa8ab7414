use proptest::prelude::*;

use dahalab::*;

fn mono(n: usize, w: Perm, efactors: Vec<(usize, usize, u32)>, yexp: Vec<i32>) -> PBWMonomial {
    assert_eq!(yexp.len(), n);
    PBWMonomial { w, efactors, yexp }
}

#[test]
fn hecke_examples() {
    let h = Hgl::new(3, Mode::Exact).unwrap();
    let c = h.ctx();
    let sq = hecke_normalize(c, 3, &[Letter::T(1), Letter::T(1)]).unwrap();
    assert_eq!(sq.terms.len(), 2);
    assert!(c.equal(sq.coeff(&Perm::ID).unwrap(), &Frac::one()));
    let d = c.sub(&c.tau(), &c.inv(&c.tau()).unwrap());
    assert!(c.equal(sq.coeff(&Perm::simple(0)).unwrap(), &d));

    let braid = hecke_normalize(c, 3, &[Letter::T(1), Letter::T(2), Letter::T(1)]).unwrap();
    let w0 = Perm::simple(0).then(&Perm::simple(1)).then(&Perm::simple(0));
    assert_eq!(braid.terms.len(), 1);
    assert!(c.equal(braid.coeff(&w0).unwrap(), &Frac::one()));

    let empty = hecke_normalize(c, 3, &[]).unwrap();
    assert_eq!(empty.terms.len(), 1);
    assert!(c.equal(empty.coeff(&Perm::ID).unwrap(), &Frac::one()));
}

#[test]
fn validate_examples() {
    let w = Perm::simple(0);
    assert!(pbw_validate(&mono(3, w, vec![(1, 2, 1), (1, 3, 1)], vec![2, 0, -1])));
    assert!(!pbw_validate(&mono(2, Perm::ID, vec![(1, 2, 1), (2, 1, 1)], vec![0, 0])));
    assert!(pbw_validate(&mono(2, w, vec![], vec![-3, 5])));
    assert!(!pbw_validate(&mono(2, Perm::ID, vec![(1, 1, 1)], vec![0, 0])));
    assert!(!pbw_validate(&mono(2, Perm::ID, vec![(1, 2, 0)], vec![0, 0])));
}

/// `to_operator(x)` and the PBW form agree on every `X^a`, `|a_i| <= 3`.
fn agrees_on_monomials(h: &Hgl, x: &AlgElement, p: &PBWElement) -> bool {
    let c = h.ctx();
    let (a, b) = (h.to_operator(x).unwrap(), h.pbw_operator(p).unwrap());
    let n = h.n();
    let mut pts: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..n {
        pts = pts.into_iter().flat_map(|v| (-3..=3).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    pts.iter().all(|e| {
        let f = c.monomial(e);
        c.equal(&c.act(&a, &f).unwrap(), &c.act(&b, &f).unwrap())
    })
}

#[test]
fn reduce_examples() {
    let h = Hgl::new(2, Mode::Exact).unwrap();
    let c = h.ctx();

    let e12 = h.parse("e[1,2]").unwrap();
    let p = h.reduce(&e12).unwrap();
    assert_eq!(p.terms.len(), 1);
    let m = mono(2, Perm::ID, vec![(1, 2, 1)], vec![0, 0]);
    assert!(c.equal(&p.terms[&m], &Frac::one()));

    let x = h.parse("Y[1] e[1,2]").unwrap();
    let p = h.reduce(&x).unwrap();
    assert!(p.e_parts() <= 2);
    assert!(agrees_on_monomials(&h, &x, &p));

    let x = h.parse("T[1] e[1,2] T[1]").unwrap();
    let p = h.reduce(&x).unwrap();
    let e21 = mono(2, Perm::ID, vec![(2, 1, 1)], vec![0, 0]);
    assert!(c.equal(&p.terms[&e21], &Frac::one()));
    assert!(p.terms.keys().all(|m| m == &e21 || m.efactors.is_empty()));
    assert!(agrees_on_monomials(&h, &x, &p));
}

#[test]
fn step_bound_is_reported() {
    let h = Hgl::new(3, Mode::Specialized(1)).unwrap().with_step_bound(3);
    let x = h.parse("e[1,2] e[2,3] e[3,1] Y[1] e[2,1]").unwrap();
    assert!(matches!(h.reduce(&x), Err(CoreError::StepBound { .. })));
}

#[test]
fn reduce_rejects_foreign_atoms() {
    let h = Hgl::new(2, Mode::Exact).unwrap();
    assert!(h.parse("X[1] e[1,2]").is_err());
    assert!(h.parse("e[1,3]").and_then(|x| h.reduce(&x)).is_err());
}

#[test]
fn rank_test_examples() {
    let z = vec![0, 0];
    let small = vec![
        PBWMonomial::identity(2),
        mono(2, Perm::ID, vec![], vec![1, 0]),
        mono(2, Perm::ID, vec![], vec![0, 1]),
        mono(2, Perm::ID, vec![(1, 2, 1)], z.clone()),
        mono(2, Perm::ID, vec![(2, 1, 1)], z.clone()),
    ];
    assert!(pbw_rank_test(&small, 2, 2, 0).unwrap().is_independent());
    let dup = vec![mono(2, Perm::ID, vec![(1, 2, 1)], z.clone()), mono(2, Perm::ID, vec![(1, 2, 1)], z.clone())];
    assert_eq!(pbw_rank_test(&dup, 2, 2, 0).unwrap(), RankOutcome::Dependent { first: 0, second: 1 });
    // A box of one point cannot separate five operators.
    assert!(matches!(pbw_rank_test(&small, 2, 0, 0).unwrap(), RankOutcome::Inconclusive { columns: 5, .. }));
    let ms = pbw_monomials(2, 2, 1);
    assert!(ms.iter().all(pbw_validate));
    assert!(pbw_rank_test(&ms, 2, 2, 1).unwrap().is_independent());
}

#[test]
fn centraliser_examples() {
    let g = Gens::new(Ctx::daha(2, &[], Mode::Exact).unwrap());
    let r = centraliser_degree_check(&g, &[1, 0], &[0, 1], &[0, 0], Perm::ID).unwrap();
    assert!(r.commutes && r.degrees_equal);
    let r = centraliser_degree_check(&g, &[1, 0], &[0, 0], &[0, 0], Perm::ID).unwrap();
    assert!(!r.commutes && !r.degrees_equal);
    let r = centraliser_degree_check(&g, &[0, 0], &[0, 0], &[0, 0], Perm::ID).unwrap();
    assert!(r.commutes);
    assert!(centraliser_degree_check(&g, &[1, 0], &[1, 0], &[0, 0], Perm::ID).is_err());
}

#[test]
fn tau_one_examples() {
    let h = Hgl::new(2, Mode::Exact).unwrap();
    for s in ["T[1] e[1,2] T[1]", "Y[2] e[1,2] Y[1]^-1", "e[2,1] e[1,2]"] {
        assert!(tau_one_check(&h, &h.parse(s).unwrap()).unwrap(), "{s}");
    }
}

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    let mut all = Vec::new();
    for i in 1..=n {
        all.push(Letter::Y(i));
        all.push(Letter::Yinv(i));
        for j in (1..=n).filter(|&j| j != i) {
            all.push(Letter::E(i, j));
        }
    }
    for k in 1..n {
        all.push(Letter::T(k));
        all.push(Letter::Tinv(k));
    }
    prop::sample::select(all)
}

fn t_letter(n: usize) -> impl Strategy<Value = Letter> {
    let all: Vec<Letter> = (1..n).flat_map(|k| [Letter::T(k), Letter::Tinv(k)]).collect();
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hecke_normalize_is_sound(word in prop::collection::vec(t_letter(3), 0..7)) {
        let g = Gens::new(Ctx::daha(3, &[], Mode::Specialized(2)).unwrap());
        let c = g.ctx();
        let hk = hecke_normalize(c, 3, &word).unwrap();
        let direct = g.word(&word.iter().map(|l| l.to_gen()).collect::<Vec<_>>()).unwrap();
        prop_assert!(c.op_eq(&hk.to_operator(&g).unwrap(), &direct).unwrap());
    }

    #[test]
    fn reduce_is_valid_sound_and_idempotent(word in prop::collection::vec(letter(2), 1..5)) {
        let h = Hgl::new(2, Mode::Specialized(3)).unwrap();
        let x = AlgElement::word(2, word);
        let p = h.reduce(&x).unwrap();
        prop_assert!(p.terms.keys().all(pbw_validate));
        prop_assert!(h.ctx().op_eq(&h.to_operator(&x).unwrap(), &h.pbw_operator(&p).unwrap()).unwrap());
        let again = h.reduce(&p.to_alg()).unwrap();
        prop_assert_eq!(again.terms.len(), p.terms.len());
        for (m, c) in &p.terms {
            prop_assert!(again.terms.get(m).is_some_and(|d| h.ctx().equal(c, d)));
        }
    }
}
