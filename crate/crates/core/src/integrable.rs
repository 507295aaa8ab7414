//! Commuting q-difference Hamiltonians from symmetric combinations of `𝒟_i`.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::field::{Ctx, Frac};
use crate::gens::{CalDParams, Gen, Gens};
use crate::group::Key;
use crate::op::Op;

/// A symmetric polynomial in `n` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymKind {
    Elementary(usize),
    PowerSum(usize),
}

impl fmt::Display for SymKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymKind::Elementary(r) => write!(f, "elementary {r}"),
            SymKind::PowerSum(r) => write!(f, "powersum {r}"),
        }
    }
}

impl SymKind {
    pub fn degree(&self) -> usize {
        match *self {
            SymKind::Elementary(r) | SymKind::PowerSum(r) => r,
        }
    }
}

fn cald_params(gens: &Gens) -> Result<&CalDParams> {
    gens.cald_params().ok_or_else(|| CoreError::BadParams("no calD parameters configured".into()))
}

/// `𝒟_1, …, 𝒟_n`, built by conjugating `𝒟_n` and checked against the
/// π-form.
pub fn cald_family(gens: &Gens) -> Result<Vec<Op>> {
    let p = cald_params(gens)?.clone();
    let ctx = gens.ctx();
    let mut out = Vec::with_capacity(gens.n());
    for i in 1..=gens.n() {
        let conj = gens.get(Gen::CalD(i))?;
        if !ctx.op_eq(&conj, &gens.cald_pi_form(i, &p)?)? {
            return Err(CoreError::Inconsistent(format!("the two forms of calD[{i}] differ")));
        }
        out.push((*conj).clone());
    }
    Ok(out)
}

/// `Res(a ∘ b)`, using `Res(a ∘ b) = Res(a ∘ Res(b))`.
pub fn res_compose(ctx: &Ctx, a: &Op, b: &Op) -> Result<Op> {
    Ok(ctx.res(&ctx.compose(a, &ctx.res(b))?))
}

/// `Res(𝒟_{i_1} ∘ ⋯ ∘ 𝒟_{i_r})`.
fn res_product(gens: &Gens, idx: &[usize]) -> Result<Op> {
    let ctx = gens.ctx();
    let mut acc = Op::identity(gens.n());
    for &i in idx.iter().rev() {
        acc = res_compose(ctx, &*gens.get(Gen::CalD(i))?, &acc)?;
    }
    Ok(acc)
}

/// `Res(s(𝒟_1, …, 𝒟_n))`; products are composed in index order.
pub fn res_sym(gens: &Gens, s: SymKind) -> Result<Op> {
    cald_params(gens)?;
    let n = gens.n();
    let r = s.degree();
    if r == 0 || r > n {
        return Err(CoreError::IndexOutOfRange(format!("{s} for n = {n}")));
    }
    let monomials: Vec<Vec<usize>> = match s {
        SymKind::PowerSum(r) => (1..=n).map(|i| vec![i; r]).collect(),
        SymKind::Elementary(r) => subsets(n, r),
    };
    let mut parts = Vec::with_capacity(monomials.len());
    for m in &monomials {
        parts.push(res_product(gens, m)?);
    }
    let refs: Vec<(Frac, &Op)> = parts.iter().map(|o| (Frac::one(), o)).collect();
    gens.ctx().linear_combine(n, &refs)
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in r..=n {
        for mut s in subsets(last - 1, r - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

/// `∏_{j ∈ js, j ≠ i} (α X_i − β X_j) / (γ X_i − δ X_j)` over 1-based sites.
fn cross_product(ctx: &Ctx, i: usize, js: impl Iterator<Item = usize>, num: (&Frac, &Frac), den: (&Frac, &Frac)) -> Result<Frac> {
    let xi = ctx.site(i - 1, 1);
    let mut acc = Frac::one();
    for j in js.filter(|&j| j != i) {
        let xj = ctx.site(j - 1, 1);
        let a = ctx.sub(&ctx.mul(num.0, &xi), &ctx.mul(num.1, &xj));
        let b = ctx.sub(&ctx.mul(den.0, &xi), &ctx.mul(den.1, &xj));
        acc = ctx.mul(&acc, &ctx.div(&a, &b)?);
    }
    Ok(acc)
}

fn tau2(ctx: &Ctx) -> Frac {
    ctx.mul(&ctx.tau(), &ctx.tau())
}

/// The closed form of `Res(Σ 𝒟_i^{(1,1)})` with `a = a_1`, `b = a_{-1}`, `c = a_0`.
pub fn closed_m(ctx: &Ctx, a: &Frac, b: &Frac, c: &Frac) -> Result<Op> {
    let n = ctx.n();
    let one = Frac::one();
    let t2 = tau2(ctx);
    let pre = ctx.pow(&ctx.tau(), 1 - n as i32)?;
    let mut terms = Vec::new();
    for i in 1..=n {
        let xinv = ctx.site(i - 1, -1);
        let up = cross_product(ctx, i, 1..=n, (&t2, &one), (&one, &one))?;
        let down = cross_product(ctx, i, 1..=n, (&one, &t2), (&one, &one))?;
        terms.push((Key::unit_shift(i - 1, 1), ctx.mul(&ctx.mul(a, &pre), &ctx.mul(&xinv, &up))));
        terms.push((Key::unit_shift(i - 1, -1), ctx.mul(&ctx.mul(b, &pre), &ctx.mul(&xinv, &down))));
        terms.push((Key::ID, ctx.mul(c, &xinv)));
    }
    sum_terms(ctx, n, terms)
}

/// The closed form of `Res(Σ 𝒟_i^{(1,2)})`.
pub fn closed_d12(ctx: &Ctx, am1: &Frac, a0: &Frac, a1: &Frac, a2: &Frac) -> Result<Op> {
    let n = ctx.n();
    if n < 2 {
        return Err(CoreError::IndexOutOfRange(format!("closed_D12 needs n >= 2, got {n}")));
    }
    let one = Frac::one();
    let q = ctx.q();
    let t2 = tau2(ctx);
    let qt2 = ctx.mul(&q, &t2);
    let mut terms = closed_m(ctx, a1, am1, a0)?.terms().to_vec();
    let pre2 = ctx.mul(a2, &ctx.pow(&ctx.tau(), 2 - 2 * n as i32)?);
    for i in 1..=n {
        let p1 = cross_product(ctx, i, 1..=n, (&t2, &one), (&one, &one))?;
        let p2 = cross_product(ctx, i, 1..=n, (&qt2, &one), (&q, &one))?;
        let c = ctx.mul(&ctx.mul(&pre2, &ctx.site(i - 1, -1)), &ctx.mul(&p1, &p2));
        terms.push((Key::unit_shift(i - 1, 2), c));
    }
    let cross = ctx.mul(
        &ctx.mul(&q, &pre2),
        &ctx.mul(&ctx.sub(&t2, &one), &ctx.sub(&t2, &q)),
    );
    for i in 1..=n {
        for j in i + 1..=n {
            let (xi, xj) = (ctx.site(i - 1, 1), ctx.site(j - 1, 1));
            let den = ctx.mul(
                &ctx.sub(&ctx.mul(&q, &xi), &xj),
                &ctx.sub(&ctx.mul(&q, &xj), &xi),
            );
            let mut c = ctx.mul(&cross, &ctx.div(&ctx.add(&xi, &xj), &den)?);
            let others = || (1..=n).filter(move |&l| l != i && l != j);
            for s in [i, j] {
                c = ctx.mul(&c, &cross_product(ctx, s, others(), (&t2, &one), (&one, &one))?);
            }
            let mut k = Key::unit_shift(i - 1, 1);
            k.shift[j - 1] = 1;
            terms.push((k, c));
        }
    }
    sum_terms(ctx, n, terms)
}

/// `E_m^+` (`sign > 0`) or `E_m^-`.
pub fn e_closed(ctx: &Ctx, sign: i32, m: usize) -> Result<Op> {
    let n = ctx.n();
    if m == 0 || m > n {
        return Err(CoreError::IndexOutOfRange(format!("m = {m} for n = {n}")));
    }
    let one = Frac::one();
    let t2 = tau2(ctx);
    let mut terms = Vec::new();
    if sign > 0 {
        let pre = ctx.pow(&ctx.tau(), 1 - n as i32)?;
        for i in m..=n {
            let a = cross_product(ctx, i, m..=n, (&t2, &one), (&one, &one))?;
            terms.push((Key::unit_shift(i - 1, 1), ctx.mul(&pre, &ctx.mul(&ctx.site(i - 1, -1), &a))));
        }
    } else {
        let pre = ctx.pow(&ctx.tau(), n as i32 - 2 * m as i32 + 1)?;
        for i in 1..=m {
            let b = cross_product(ctx, i, 1..=m, (&one, &t2), (&one, &one))?;
            terms.push((Key::unit_shift(i - 1, -1), ctx.mul(&pre, &ctx.mul(&ctx.site(i - 1, -1), &b))));
        }
    }
    sum_terms(ctx, n, terms)
}

/// `𝒟_i^+ = X_i^{-1} (T^{-1})⁺_{i,n-1} π^{-1} (T^{-1})⁺_{1,i-1}` or
/// `𝒟_i^- = X_i^{-1} T⁻_{i-1,1} π T⁻_{n-1,i}`.
pub fn cald_sign(gens: &Gens, sign: i32, i: usize) -> Result<Op> {
    Gen::CalD(i).validate(gens.n())?;
    let core = if sign > 0 { gens.cald_plus_core(i)? } else { gens.cald_minus_core(i)? };
    Ok(gens.ctx().scale_op(&gens.ctx().site(i - 1, -1), &core))
}

/// `Res(Σ_{i ≥ m} 𝒟_i^+)` or `Res(Σ_{i ≤ m} 𝒟_i^-)`.
pub fn res_cald_sign_sum(gens: &Gens, sign: i32, m: usize) -> Result<Op> {
    let n = gens.n();
    if m == 0 || m > n {
        return Err(CoreError::IndexOutOfRange(format!("m = {m} for n = {n}")));
    }
    let range: Vec<usize> = if sign > 0 { (m..=n).collect() } else { (1..=m).collect() };
    let mut parts = Vec::new();
    for i in range {
        parts.push(gens.ctx().res(&cald_sign(gens, sign, i)?));
    }
    let refs: Vec<(Frac, &Op)> = parts.iter().map(|o| (Frac::one(), o)).collect();
    gens.ctx().linear_combine(n, &refs)
}

fn sum_terms(ctx: &Ctx, n: usize, terms: Vec<(Key, Frac)>) -> Result<Op> {
    let ops: Vec<Op> = terms.into_iter().map(|(k, c)| Op::term(n, k, c)).collect();
    let refs: Vec<(Frac, &Op)> = ops.iter().map(|o| (Frac::one(), o)).collect();
    ctx.linear_combine(n, &refs)
}

/// Outcome of [`leading_term_check`].
#[derive(Clone, Debug, Default)]
pub struct LeadingReport {
    /// Coefficients of `t_i^{l2}` match the closed form for every `i`.
    pub top_ok: bool,
    /// Coefficients of `t_i^{-l1}` match the closed form for every `i`.
    pub bottom_ok: bool,
    /// Every other shift obeys the sign and bound constraints.
    pub structure_ok: bool,
    /// Shifts violating the constraints.
    pub violations: Vec<Vec<i16>>,
}

impl LeadingReport {
    pub fn passed(&self) -> bool {
        self.top_ok && self.bottom_ok && self.structure_ok
    }
}

/// Compares the extreme shifts of `Res(Σ 𝒟_i)` with their closed forms and
/// checks the shape of the remaining shifts.
pub fn leading_term_check(gens: &Gens) -> Result<LeadingReport> {
    let p = cald_params(gens)?.clone();
    let ctx = gens.ctx();
    let n = gens.n();
    let r = res_sym(gens, SymKind::PowerSum(1))?;
    let (l1, l2) = (p.l1 as i32, p.l2 as i32);
    let one = Frac::one();
    let q = ctx.q();
    let t2 = tau2(ctx);
    let mut report = LeadingReport { top_ok: true, bottom_ok: true, structure_ok: true, violations: Vec::new() };
    for i in 1..=n {
        let xinv = ctx.site(i - 1, -1);
        let mut top = ctx.mul(&p.coeff(l2), &ctx.mul(&xinv, &ctx.pow(&ctx.tau(), l2 * (1 - n as i32))?));
        let mut bottom = ctx.mul(&p.coeff(-l1), &ctx.mul(&xinv, &ctx.pow(&ctx.tau(), l1 * (1 - n as i32))?));
        for k in 0..l2.max(l1) {
            let qk = ctx.pow(&q, k)?;
            let qkt2 = ctx.mul(&qk, &t2);
            if k < l2 {
                top = ctx.mul(&top, &cross_product(ctx, i, 1..=n, (&qkt2, &one), (&qk, &one))?);
            }
            if k < l1 {
                bottom = ctx.mul(&bottom, &cross_product(ctx, i, 1..=n, (&one, &qkt2), (&one, &qk))?);
            }
        }
        let got = |e: i16| r.coeff(&Key::unit_shift(i - 1, e)).cloned().unwrap_or_default();
        report.top_ok &= ctx.equal(&got(l2 as i16), &top);
        report.bottom_ok &= ctx.equal(&got(-l1 as i16), &bottom);
    }
    for (k, _) in r.terms() {
        let s = &k.shift[..n];
        let nonzero: Vec<i16> = s.iter().copied().filter(|&e| e != 0).collect();
        let leading = nonzero.len() == 1 && (nonzero[0] == l2 as i16 || nonzero[0] == -l1 as i16);
        if leading || !k.perm.is_identity() {
            if !k.perm.is_identity() {
                report.structure_ok = false;
                report.violations.push(s.to_vec());
            }
            continue;
        }
        let in_box = s.iter().all(|&e| -l1 < e as i32 && (e as i32) < l2);
        let sum: i32 = s.iter().map(|&e| e as i32).sum();
        let pos = s.iter().all(|&e| e >= 0) && sum <= l2;
        let neg = s.iter().all(|&e| e <= 0) && sum >= -l1;
        if !(in_box && (pos || neg)) {
            report.structure_ok = false;
            report.violations.push(s.to_vec());
        }
    }
    Ok(report)
}
