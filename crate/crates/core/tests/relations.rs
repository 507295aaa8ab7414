use proptest::prelude::*;

use dahalab::relations::{find_relation, suite_gens, verify_cald, verify_with};
use dahalab::*;

#[test]
fn catalog_ids_are_unique() {
    let ids: Vec<&str> = list_relations().iter().map(|e| e.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    assert!(matches!(find_relation("NO-SUCH"), Err(CoreError::UnknownRelation(_))));
}

#[test]
fn named_examples() {
    assert!(verify("DAHA-HECKE", 2, Mode::Exact).unwrap().verified());
    assert!(verify_cald("CALD-COMM", 3, Mode::Exact, (1, 2)).unwrap().verified());
    assert!(verify("GRADE-YT", 3, Mode::Exact).unwrap().verified());
    assert!(matches!(verify("BRAID-L", 2, Mode::Exact), Err(CoreError::RankTooSmall { .. })));
}

#[test]
fn grading_on_a_monomial() {
    let g = Gens::new(Ctx::daha(3, &[], Mode::Exact).unwrap());
    let c = g.ctx();
    let yt = g.eval_str("Yt").unwrap();
    let f = c.parse("X1*X2^2").unwrap();
    assert!(c.equal(&c.act(&yt, &f).unwrap(), &c.mul(&c.parse("q^3").unwrap(), &f)));
}

#[test]
fn perturbed_relation_is_caught() {
    let g = Gens::new(Ctx::daha(2, &[], Mode::Exact).unwrap());
    let c = g.ctx();
    let lhs = g.eval_str("T[1] X[1] T[1]").unwrap();
    assert!(c.op_eq(&lhs, &g.eval_str("X[2]").unwrap()).unwrap());
    assert!(!c.op_eq(&lhs, &g.eval_str("{q} X[2]").unwrap()).unwrap());
}

fn entry_index() -> impl Strategy<Value = usize> {
    0..list_relations().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn entries_hold_at_random_points(i in entry_index(), seed in 0u64..10_000) {
        let e = list_relations().swap_remove(i);
        let n = e.n_min.max(3);
        let g = suite_gens(n, Mode::Specialized(seed), false, (1, 1)).unwrap();
        let r = verify_with(&e, &g).unwrap();
        prop_assert!(r.verified(), "{} seed {}: {:?}", e.id, seed, r.to_json());
    }
}
