//! Acceptance criteria 1-11, all with exact equality. Prints one line per
//! criterion and exits non-zero if any fails.
//!
//! Arguments that are criterion numbers select a subset; other filters that
//! do not match `criterion_<k>` skip it.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dahalab::relations::{suite_gens, verify_cald};
use dahalab::*;

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn all_verified(reports: &[VerificationReport], what: &str) -> Check {
    let bad: Vec<String> = reports.iter().filter(|r| !r.verified()).map(|r| r.id.clone()).collect();
    ensure(bad.is_empty(), || format!("{what}: failing ids {bad:?}"))
}

fn symbolic_gens(n: usize, l1: usize, l2: usize, mode: Mode) -> std::result::Result<Gens, String> {
    core(suite_gens(n, mode, false, (l1, l2)))
}

fn c1_relation_suite() -> Check {
    for n in [2, 3] {
        all_verified(&core(verify_suite(n, Mode::Exact, false))?, &format!("exact n={n}"))?;
    }
    for seed in 0..3 {
        all_verified(&core(verify_suite(4, Mode::Specialized(seed), false))?, &format!("n=4 seed {seed}"))?;
    }
    Ok(())
}

fn c2_quantum_group() -> Check {
    for id in ["QG-1", "QG-2", "QG-3", "QG-4", "QG-5", "QG-6"] {
        let r = core(verify(id, 3, Mode::Exact))?;
        ensure(r.verified(), || format!("{id} fails at n=3"))?;
    }
    // QG-4 has no instance below n = 4.
    let r = core(verify("QG-4", 4, Mode::Exact))?;
    ensure(r.verified() && r.instances > 0, || "QG-4 fails at n=4".into())
}

fn pairwise_commute(g: &Gens, make: fn(usize) -> Gen) -> Check {
    let n = g.n();
    for i in 1..=n {
        for j in i + 1..=n {
            let a = core(g.get(make(i)))?;
            let b = core(g.get(make(j)))?;
            let c = core(g.ctx().commutator(&a, &b))?;
            ensure(c.is_zero(), || format!("[{}, {}] != 0 at n={n}, {}", make(i), make(j), g.ctx().mode()))?;
        }
    }
    Ok(())
}

fn c3_commutativity() -> Check {
    for n in 2..=4 {
        pairwise_commute(&Gens::new(core(Ctx::daha(n, &[], Mode::Specialized(0)))?), Gen::D)?;
    }
    for n in 2..=3 {
        pairwise_commute(&Gens::new(core(Ctx::daha(n, &[], Mode::Exact))?), Gen::D)?;
    }
    for (l1, l2) in [(1, 1), (1, 2), (2, 0)] {
        pairwise_commute(&symbolic_gens(3, l1, l2, Mode::Exact)?, Gen::CalD)?;
        let r = core(verify_cald("CALD-COMM", 3, Mode::Exact, (l1, l2)))?;
        ensure(r.verified(), || format!("CALD-COMM fails for ({l1},{l2})"))?;
    }
    Ok(())
}

fn c4_closed_forms() -> Check {
    for n in 2..=4 {
        let g = symbolic_gens(n, 1, 1, Mode::Exact)?;
        let c = g.ctx();
        let s = |name: &str| core(c.scalar(name));
        let r = core(res_sym(&g, SymKind::PowerSum(1)))?;
        let m = core(closed_m(c, &s("a1")?, &s("am1")?, &s("a0")?))?;
        ensure(core(c.op_eq(&r, &m))?, || format!("closed_M differs at n={n}"))?;
    }
    for n in 2..=3 {
        let g = symbolic_gens(n, 1, 2, Mode::Exact)?;
        let c = g.ctx();
        let s = |name: &str| core(c.scalar(name));
        let r = core(res_sym(&g, SymKind::PowerSum(1)))?;
        let d = core(closed_d12(c, &s("am1")?, &s("a0")?, &s("a1")?, &s("a2")?))?;
        ensure(core(c.op_eq(&r, &d))?, || format!("closed_D12 differs at n={n}"))?;
    }
    Ok(())
}

fn c5_e_closed() -> Check {
    let g = symbolic_gens(3, 1, 1, Mode::Exact)?;
    let c = g.ctx();
    for m in 1..=3 {
        for sign in [1, -1] {
            let lhs = core(res_cald_sign_sum(&g, sign, m))?;
            let rhs = core(e_closed(c, sign, m))?;
            ensure(core(c.op_eq(&lhs, &rhs))?, || format!("E_{m} sign {sign} differs"))?;
        }
    }
    Ok(())
}

/// Random symmetric Laurent polynomials: sums of orbit sums of `X^a` with
/// `Σ|a_i| <= 3`.
fn random_symmetric(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Frac {
    let n = ctx.n();
    let mut parts = Vec::new();
    for _ in 0..3 {
        let a: Vec<i32> = loop {
            let a: Vec<i32> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            if a.iter().map(|e| e.abs()).sum::<i32>() <= 3 {
                break a;
            }
        };
        let mut orbit: Vec<Vec<i32>> = Perm::all(n).iter().map(|w| (0..n).map(|i| a[w.at(i)]).collect()).collect();
        orbit.sort();
        orbit.dedup();
        let c = Frac::int(rng.gen_range(1..=5));
        for b in orbit {
            parts.push(ctx.mul(&c, &ctx.monomial(&b)));
        }
    }
    ctx.sum_owned(&parts)
}

fn preserves_symmetric(ctx: &Ctx, op: &Op, rng: &mut ChaCha8Rng, what: &str) -> Check {
    let n = ctx.n();
    for _ in 0..4 {
        let f = random_symmetric(ctx, rng);
        let g = core(ctx.act(op, &f))?;
        core(ctx.laurent_terms(&g)).map_err(|e| format!("{what}: image not Laurent: {e}"))?;
        for k in 0..n - 1 {
            let sg = core(ctx.act(&Op::perm(n, Perm::simple(k)), &g))?;
            ensure(ctx.equal(&sg, &g), || format!("{what}: image of a symmetric polynomial is not symmetric"))?;
        }
    }
    Ok(())
}

fn c6_res_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = symbolic_gens(3, 1, 1, Mode::Exact)?;
    let c = g.ctx();
    let p1 = core(res_sym(&g, SymKind::PowerSum(1)))?;
    let p2 = core(res_sym(&g, SymKind::PowerSum(2)))?;
    for (name, p) in [("p1", &p1), ("p2", &p2)] {
        ensure(core(c.is_w_invariant(p))?, || format!("{name} is not invariant"))?;
        preserves_symmetric(c, p, &mut rng, name)?;
    }
    ensure(core(c.commutator(&p1, &p2))?.is_zero(), || "[p1, p2] != 0".into())?;
    let gs = symbolic_gens(3, 1, 1, Mode::Specialized(0))?;
    let cs = gs.ctx();
    let s1 = core(res_sym(&gs, SymKind::PowerSum(1)))?;
    let s2 = core(res_sym(&gs, SymKind::PowerSum(2)))?;
    let s3 = core(res_sym(&gs, SymKind::PowerSum(3)))?;
    ensure(core(cs.is_w_invariant(&s3))?, || "p3 is not invariant".into())?;
    preserves_symmetric(cs, &s3, &mut rng, "p3")?;
    ensure(core(cs.commutator(&s1, &s3))?.is_zero(), || "[p1, p3] != 0".into())?;
    ensure(core(cs.commutator(&s2, &s3))?.is_zero(), || "[p2, p3] != 0".into())
}

fn c7_leading_terms() -> Check {
    for (n, l1, l2) in [(2, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 1), (3, 1, 2)] {
        let r = core(leading_term_check(&symbolic_gens(n, l1, l2, Mode::Exact)?))?;
        ensure(r.passed(), || format!("n={n} ({l1},{l2}): {r:?}"))?;
    }
    Ok(())
}

fn alphabet(n: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(Letter::Y(i));
        out.push(Letter::Yinv(i));
        for j in (1..=n).filter(|&j| j != i) {
            out.push(Letter::E(i, j));
        }
    }
    for k in 1..n {
        out.push(Letter::T(k));
        out.push(Letter::Tinv(k));
    }
    out
}

fn random_words(n: usize, max_len: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<AlgWord> {
    let letters = alphabet(n);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
        })
        .collect()
}

const ROUND_TRIP_N2: usize = 170;
const ROUND_TRIP_N3: usize = 32;

fn c8_pbw() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for (n, max_len, count) in [(2, 6, ROUND_TRIP_N2), (3, 4, ROUND_TRIP_N3)] {
        let h = core(Hgl::new(n, Mode::Exact))?;
        for w in random_words(n, max_len, count, &mut rng) {
            let x = AlgElement::word(n, w.clone());
            let p = core(h.reduce(&x))?;
            ensure(p.terms.keys().all(pbw_validate), || format!("invalid monomial in the form of {w:?}"))?;
            let direct = core(h.to_operator(&x))?;
            let via = core(h.pbw_operator(&p))?;
            ensure(core(h.ctx().op_eq(&direct, &via))?, || format!("round trip fails for {w:?}"))?;
            checked += 1;
        }
    }
    ensure(checked >= 200, || format!("only {checked} words"))?;
    for (n, max_e) in [(2, 2), (3, 1)] {
        let ms = pbw_monomials(n, max_e, 1);
        for seed in 0..3 {
            let r = core(pbw_rank_test(&ms, n, 2, seed))?;
            ensure(r.is_independent(), || format!("rank test n={n} seed {seed}: {r:?}"))?;
        }
    }
    for (n, max_len, count) in [(2, 4, 12), (3, 3, 6)] {
        let h = core(Hgl::new(n, Mode::Exact))?;
        for w in random_words(n, max_len, count, &mut rng) {
            let ok = core(tau_one_check(&h, &AlgElement::word(n, w.clone())))?;
            ensure(ok, || format!("τ = 1 check fails for {w:?}"))?;
        }
    }
    Ok(())
}

fn c9_centre_grading() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=3 {
        let g = Gens::new(core(Ctx::daha(n, &[], Mode::Exact))?);
        let c = g.ctx();
        let yt = core(g.word(&(1..=n).map(Gen::Y).collect::<Vec<_>>()))?;
        let mut gens: Vec<Gen> = (1..n).map(Gen::T).collect();
        for i in 1..=n {
            gens.push(Gen::Y(i));
            gens.push(Gen::Yinv(i));
            gens.extend((1..=n).filter(|&j| j != i).map(|j| Gen::E(i, j)));
        }
        for x in gens {
            let comm = core(c.commutator(&yt, &*core(g.get(x))?))?;
            ensure(comm.is_zero(), || format!("Ỹ does not commute with {x} at n={n}"))?;
        }
    }
    let g = Gens::new(core(Ctx::daha(3, &[], Mode::Exact))?);
    let c = g.ctx();
    let yt = core(g.word(&[Gen::Y(1), Gen::Y(2), Gen::Y(3)]))?;
    for _ in 0..20 {
        let a: Vec<i32> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
        let f = c.monomial(&a);
        let want = c.mul(&core(c.pow(&c.q(), a.iter().sum()))?, &f);
        ensure(c.equal(&core(c.act(&yt, &f))?, &want), || format!("Ỹ on X^{a:?}"))?;
    }
    let g = Gens::new(core(Ctx::daha(2, &[], Mode::Exact))?);
    let mut count = 0;
    for w in Perm::all(2) {
        for mx in [0u32, 1, 2].iter().flat_map(|&a| [0u32, 1, 2].map(|b| [a, b])) {
            for md in [0u32, 1, 2].iter().flat_map(|&a| [0u32, 1, 2].map(|b| [a, b])) {
                if (0..2).any(|i| mx[i] > 0 && md[i] > 0) {
                    continue;
                }
                for my in (-2..=2).flat_map(|a| (-2..=2).map(move |b| [a, b])) {
                    let r = core(centraliser_degree_check(&g, &mx, &md, &my, w))?;
                    ensure(r.consistent(), || format!("centraliser check {w:?} {mx:?} {md:?} {my:?}: {r:?}"))?;
                    count += 1;
                }
            }
        }
    }
    ensure(count > 0, || "no monomials checked".into())
}

fn c10_psi() -> Check {
    all_verified(&core(verify_suite(2, Mode::Exact, true))?, "ψ suite at n=2")?;
    for n in 2..=3 {
        let g = Gens::psi(core(Ctx::daha(n, &[], Mode::Exact))?);
        let c = g.ctx();
        let mut ops = Vec::new();
        for i in 1..=n {
            ops.push(Gen::D(i));
            ops.extend((1..=n).filter(|&j| j != i).map(|j| Gen::E(i, j)));
        }
        let mut exps: Vec<Vec<i32>> = vec![Vec::new()];
        for _ in 0..n {
            exps = exps.into_iter().flat_map(|v| (0..=3).map(move |e| [v.clone(), vec![e]].concat())).collect();
        }
        exps.retain(|a| a.iter().sum::<i32>() <= 3);
        for x in ops {
            let op = core(g.get(x))?;
            for a in &exps {
                let img = core(c.act(&op, &c.monomial(a)))?;
                let terms = core(c.laurent_terms(&img))?;
                ensure(terms.iter().all(|(e, _)| e.iter().all(|&k| k >= 0)), || {
                    format!("ψ({x}) X^{a:?} is not a polynomial at n={n}")
                })?;
            }
        }
    }
    Ok(())
}

fn c11_two_type() -> Check {
    for total in 1..=4 {
        for n1 in 0..=total {
            let ok = core(twotype_identity_check(n1, total - n1))?;
            ensure(ok, || format!("identity fails at ({n1},{})", total - n1))?;
        }
    }
    for n in 2..=3 {
        let m = core(twotype_build(TwoTypeKind::MTilde, n, 0, &BTreeMap::new()))?;
        let c = &m.ctx;
        let (th0, th1, tau) = (core(c.scalar("th0"))?, core(c.scalar("th1"))?, c.tau());
        let a = c.mul(&core(c.pow(&tau, n as i32 - 1))?, &c.mul(&th0, &th0)).neg();
        let b = c.mul(&core(c.pow(&tau, 1 - n as i32))?, &c.mul(&th0, &th1)).neg();
        let cc = c.mul(&th0, &c.add(&th0, &th1));
        let closed = core(closed_m(c, &a, &b, &cc))?;
        ensure(core(c.op_eq(&m.op, &closed))?, || format!("M_tilde differs from closed_M at n={n}"))?;
    }
    ensure(core(twotype_merge_check(1, 1))?, || "merge check fails at (1,1)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("relation suite", c1_relation_suite),
        ("quantum group relations", c2_quantum_group),
        ("commutativity of D and calD", c3_commutativity),
        ("Hamiltonian closed forms", c4_closed_forms),
        ("E_m cross-check", c5_e_closed),
        ("Res properties", c6_res_properties),
        ("leading terms", c7_leading_terms),
        ("PBW basis", c8_pbw),
        ("centre and grading", c9_centre_grading),
        ("psi representation", c10_psi),
        ("two-type Hamiltonians", c11_two_type),
    ];
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        let label = format!("criterion_{k}");
        if !filters.is_empty() && !filters.iter().any(|p| *p == k.to_string() || label.contains(p.as_str())) {
            continue;
        }
        ran += 1;
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {k:>2} PASS {name} ({secs:.1}s)"),
            Err(e) => {
                failed += 1;
                println!("criterion {k:>2} FAIL {name} ({secs:.1}s): {e}");
            }
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
