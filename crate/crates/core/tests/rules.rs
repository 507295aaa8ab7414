use dahalab::rules::Rule;
use dahalab::{Hgl, Mode};

fn rules_hold(n: usize, mode: Mode) {
    let h = Hgl::new(n, mode).unwrap();
    let rules = Rule::all(n);
    assert!(!rules.is_empty());
    for r in rules {
        let lhs = h.to_operator(&h.parse(&r.lhs()).unwrap()).unwrap();
        let rhs = h.to_operator(&h.parse(&r.rhs(n)).unwrap()).unwrap();
        assert!(h.ctx().op_eq(&lhs, &rhs).unwrap(), "{r:?}: {} = {}", r.lhs(), r.rhs(n));
    }
}

#[test]
fn rewrite_rules_hold_in_the_representation() {
    rules_hold(2, Mode::Exact);
    rules_hold(3, Mode::Exact);
}
