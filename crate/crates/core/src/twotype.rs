//! Hamiltonians with two types of particles.
//!
//! Sites `X_1..X_{N1}` carry `q`-shifts and sites `Y_1..Y_{N2}` carry shifts
//! with base `t`. For the additive forms, `X_i` and `Y_i` stand for `q^{x_i}`
//! and `q^{y_i}`; a `y`-shift of exponent `-1` is `q^{y_i} ↦ t^{-1} q^{y_i}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{CoreError, Result};
use crate::field::{Ctx, Frac, Mode, Scalar, SiteSpec};
use crate::group::Key;
use crate::op::Op;
use dahalab_exact::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoTypeKind {
    /// Four boundary parameters `t0..t3` and coupling `t`.
    HFull,
    /// The limit with parameters `th0, th1` and coupling `t`.
    HHat,
    /// The multiplicative form with parameters `th0, th1` and `t = τ²`.
    MTilde,
}

impl fmt::Display for TwoTypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoTypeKind::HFull => "H_full",
            TwoTypeKind::HHat => "H_hat",
            TwoTypeKind::MTilde => "M_tilde",
        })
    }
}

impl TwoTypeKind {
    /// Scalars of the operator; all are symbolic unless given a value.
    pub fn scalar_names(&self) -> &'static [&'static str] {
        match self {
            TwoTypeKind::HFull => &["q", "t", "t0", "t1", "t2", "t3"],
            TwoTypeKind::HHat => &["q", "t", "th0", "th1"],
            TwoTypeKind::MTilde => &["q", "tau", "th0", "th1"],
        }
    }
}

/// A two-type operator with its context.
#[derive(Clone, Debug)]
pub struct TwoTypeOp {
    pub kind: TwoTypeKind,
    pub n1: usize,
    pub n2: usize,
    pub ctx: Arc<Ctx>,
    pub op: Op,
}

impl TwoTypeOp {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .op
            .terms()
            .iter()
            .map(|(k, c)| {
                json!({
                    "xshift": k.shift[..self.n1].to_vec(),
                    "yshift": k.shift[self.n1..self.n1 + self.n2].to_vec(),
                    "coeff": self.ctx.to_string(c),
                })
            })
            .collect();
        let mut out = json!({
            "kind": self.kind.to_string(),
            "N1": self.n1,
            "N2": self.n2,
            "bases": { "x": "q", "y": "t" },
            "terms": terms,
        });
        if self.kind == TwoTypeKind::MTilde {
            out["t"] = json!("tau^2");
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.op.terms() {
            s.push_str(&format!(
                "x{:?} y{:?}: {}\n",
                &k.shift[..self.n1],
                &k.shift[self.n1..self.n1 + self.n2],
                self.ctx.to_string(c)
            ));
        }
        if s.is_empty() {
            s.push_str("0\n");
        }
        s
    }

    /// `self ∘ o − o ∘ self`.
    pub fn commutator(&self, o: &TwoTypeOp) -> Result<TwoTypeOp> {
        if self.kind != o.kind || self.n1 != o.n1 || self.n2 != o.n2 || !Arc::ptr_eq(&self.ctx, &o.ctx) {
            return Err(CoreError::Precondition("commutator of operators of different kinds".into()));
        }
        Ok(TwoTypeOp { op: self.ctx.commutator(&self.op, &o.op)?, ..self.clone() })
    }
}

fn two_type_ctx(
    names: &[&str],
    values: &BTreeMap<String, Rat>,
    n1: usize,
    n2: usize,
    y_base: (&str, i16),
) -> Result<Arc<Ctx>> {
    if let Some(k) = values.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(CoreError::BadParams(format!("unknown parameter `{k}`; expected one of {names:?}")));
    }
    let scalars = names
        .iter()
        .map(|&s| (s.to_string(), values.get(s).map_or(Scalar::Sym, |v| Scalar::Val(v.clone()))))
        .collect();
    let mut sites: Vec<SiteSpec> = (1..=n1).map(|i| SiteSpec::new(format!("X{i}"), "q", 1)).collect();
    sites.extend((1..=n2).map(|i| SiteSpec::new(format!("Y{i}"), y_base.0, y_base.1)));
    Ctx::new(scalars, sites, Mode::Exact)
}

/// Builds one of the two-type operators; parameters without a value stay
/// symbolic.
pub fn twotype_build(kind: TwoTypeKind, n1: usize, n2: usize, values: &BTreeMap<String, Rat>) -> Result<TwoTypeOp> {
    if n1 + n2 == 0 {
        return Err(CoreError::BadParams("N1 + N2 must be positive".into()));
    }
    let y_base = if kind == TwoTypeKind::MTilde { ("tau", 2) } else { ("t", 1) };
    let ctx = two_type_ctx(kind.scalar_names(), values, n1, n2, y_base)?;
    let s = |name: &str| ctx.scalar(name);
    let op = match kind {
        TwoTypeKind::HFull => h_full(&ctx, n1, n2, &s("t")?, [&s("t0")?, &s("t1")?, &s("t2")?, &s("t3")?])?,
        TwoTypeKind::HHat => h_hat(&ctx, n1, n2, &s("t")?, &s("th0")?, &s("th1")?)?,
        TwoTypeKind::MTilde => m_tilde(&ctx, n1, n2, &s("th0")?, &s("th1")?)?,
    };
    Ok(TwoTypeOp { kind, n1, n2, ctx, op })
}

struct Sites<'a> {
    ctx: &'a Ctx,
    n1: usize,
}

impl Sites<'_> {
    fn x(&self, i: usize) -> Frac {
        self.ctx.site(i - 1, 1)
    }

    fn y(&self, i: usize) -> Frac {
        self.ctx.site(self.n1 + i - 1, 1)
    }

    fn xkey(&self, i: usize, e: i16) -> Key {
        Key::unit_shift(i - 1, e)
    }

    fn ykey(&self, i: usize, e: i16) -> Key {
        Key::unit_shift(self.n1 + i - 1, e)
    }
}

/// `(α a − b) / (γ a − b)` for the ratio `a / b` of site variables.
fn ratio(ctx: &Ctx, alpha: &Frac, gamma: &Frac, a: &Frac, b: &Frac) -> Result<Frac> {
    ctx.div(&ctx.sub(&ctx.mul(alpha, a), b), &ctx.sub(&ctx.mul(gamma, a), b))
}

/// `(c − u/v) / (d − u/v)`.
fn qratio(ctx: &Ctx, c: &Frac, d: &Frac, u: &Frac, v: &Frac) -> Result<Frac> {
    ctx.div(&ctx.sub(&ctx.mul(c, v), u), &ctx.sub(&ctx.mul(d, v), u))
}

/// Appends `c (t - 1)` for the shift `t` given by `key`.
fn push_diff(terms: &mut Vec<(Key, Frac)>, key: Key, c: Frac) {
    terms.push((Key::ID, c.neg()));
    terms.push((key, c));
}

fn sum_terms(ctx: &Ctx, terms: Vec<(Key, Frac)>) -> Result<Op> {
    let n = ctx.n();
    let ops: Vec<Op> = terms.into_iter().map(|(k, c)| Op::term(n, k, c)).collect();
    let refs: Vec<(Frac, &Op)> = ops.iter().map(|o| (Frac::one(), o)).collect();
    ctx.linear_combine(n, &refs)
}

fn prod(ctx: &Ctx, parts: impl IntoIterator<Item = Result<Frac>>) -> Result<Frac> {
    let mut acc = Frac::one();
    for p in parts {
        acc = ctx.mul(&acc, &p?);
    }
    Ok(acc)
}

/// The additive-variable Hamiltonian with boundary parameters `t0..t3`.
fn h_full(ctx: &Ctx, n1: usize, n2: usize, t: &Frac, tp: [&Frac; 4]) -> Result<Op> {
    let st = Sites { ctx, n1 };
    let one = Frac::one();
    let q = ctx.q();
    let qinv = ctx.inv(&q)?;
    let tinv = ctx.inv(t)?;
    let [t0, t1, t2, t3] = tp;
    let lin = |c: &Frac, u: &Frac| ctx.sub(&one, &ctx.mul(c, u));
    let front = ctx.div(&ctx.mul(t1, t2), &ctx.mul(&q, &ctx.mul(t0, t3)))?;
    let qt = ctx.mul(&q, t);
    let mut terms = Vec::new();
    for i in 1..=n1 {
        let u = st.x(i);
        let xx = prod(ctx, (1..=n1).filter(|&j| j != i).map(|j| qratio(ctx, &tinv, &one, &u, &st.x(j))))?;
        let xy = prod(ctx, (1..=n2).map(|j| qratio(ctx, &q, &one, &u, &st.y(j))))?;
        let c = ctx.mul(&ctx.mul(&lin(t1, &u), &lin(t2, &u)), &ctx.mul(&xx, &xy));
        push_diff(&mut terms, st.xkey(i, 1), c);
        let xx = prod(ctx, (1..=n1).filter(|&j| j != i).map(|j| qratio(ctx, t, &one, &u, &st.x(j))))?;
        let xy = prod(ctx, (1..=n2).map(|j| qratio(ctx, t, &qt, &u, &st.y(j))))?;
        let c = ctx.mul(&front, &ctx.mul(&ctx.mul(&lin(t0, &u), &lin(t3, &u)), &ctx.mul(&xx, &xy)));
        push_diff(&mut terms, st.xkey(i, -1), c);
    }
    let c3 = ctx.div(&ctx.sub(&one, &q), &ctx.sub(&one, &tinv))?;
    let c4 = ctx.div(&ctx.mul(&front, &ctx.sub(&one, &qinv)), &ctx.sub(&one, t))?;
    let qinv_tinv = ctx.mul(&qinv, &tinv);
    for i in 1..=n2 {
        let v = st.y(i);
        let yx = prod(ctx, (1..=n1).map(|j| qratio(ctx, &tinv, &one, &v, &st.x(j))))?;
        let yy = prod(ctx, (1..=n2).filter(|&j| j != i).map(|j| qratio(ctx, &q, &one, &v, &st.y(j))))?;
        let c = ctx.mul(&c3, &ctx.mul(&ctx.mul(&lin(t1, &v), &lin(t2, &v)), &ctx.mul(&yx, &yy)));
        push_diff(&mut terms, st.ykey(i, -1), c);
        let yx = prod(ctx, (1..=n1).map(|j| qratio(ctx, &qinv, &qinv_tinv, &v, &st.x(j))))?;
        let yy = prod(ctx, (1..=n2).filter(|&j| j != i).map(|j| qratio(ctx, &qinv, &one, &v, &st.y(j))))?;
        let tq = ctx.mul(t, &q);
        let m = ctx.mul(&lin(&ctx.mul(t0, &tq), &v), &lin(&ctx.mul(t3, &tq), &v));
        let c = ctx.mul(&c4, &ctx.mul(&m, &ctx.mul(&yx, &yy)));
        push_diff(&mut terms, st.ykey(i, 1), c);
    }
    sum_terms(ctx, terms)
}

/// The limit of [`h_full`] at `t3 = 1`, `t0 = th1 th2 / q`, `t1 = th0 th2`,
/// `t2 = th0 th1`, `th2 → 0`.
fn h_hat(ctx: &Ctx, n1: usize, n2: usize, t: &Frac, th0: &Frac, th1: &Frac) -> Result<Op> {
    let st = Sites { ctx, n1 };
    let one = Frac::one();
    let q = ctx.q();
    let qinv = ctx.inv(&q)?;
    let tinv = ctx.inv(t)?;
    let qt = ctx.mul(&q, t);
    let th01 = ctx.mul(th0, th1);
    let th00 = ctx.mul(th0, th0);
    let lin = |c: &Frac, u: &Frac| ctx.sub(&one, &ctx.mul(c, u));
    let mut terms = Vec::new();
    for i in 1..=n1 {
        let u = st.x(i);
        let xx = prod(ctx, (1..=n1).filter(|&j| j != i).map(|j| qratio(ctx, &tinv, &one, &u, &st.x(j))))?;
        let xy = prod(ctx, (1..=n2).map(|j| qratio(ctx, &q, &one, &u, &st.y(j))))?;
        push_diff(&mut terms, st.xkey(i, 1), ctx.mul(&lin(&th01, &u), &ctx.mul(&xx, &xy)));
        let xx = prod(ctx, (1..=n1).filter(|&j| j != i).map(|j| qratio(ctx, t, &one, &u, &st.x(j))))?;
        let xy = prod(ctx, (1..=n2).map(|j| qratio(ctx, t, &qt, &u, &st.y(j))))?;
        let c = ctx.mul(&th00, &ctx.mul(&lin(&one, &u), &ctx.mul(&xx, &xy)));
        push_diff(&mut terms, st.xkey(i, -1), c);
    }
    let c3 = ctx.div(&ctx.sub(&one, &q), &ctx.sub(&one, &tinv))?;
    let c4 = ctx.div(&ctx.mul(&th00, &ctx.sub(&one, &qinv)), &ctx.sub(&one, t))?;
    let qinv_tinv = ctx.mul(&qinv, &tinv);
    for i in 1..=n2 {
        let v = st.y(i);
        let yx = prod(ctx, (1..=n1).map(|j| qratio(ctx, &tinv, &one, &v, &st.x(j))))?;
        let yy = prod(ctx, (1..=n2).filter(|&j| j != i).map(|j| qratio(ctx, &q, &one, &v, &st.y(j))))?;
        let c = ctx.mul(&c3, &ctx.mul(&lin(&th01, &v), &ctx.mul(&yx, &yy)));
        push_diff(&mut terms, st.ykey(i, -1), c);
        let yx = prod(ctx, (1..=n1).map(|j| qratio(ctx, &qinv, &qinv_tinv, &v, &st.x(j))))?;
        let yy = prod(ctx, (1..=n2).filter(|&j| j != i).map(|j| qratio(ctx, &qinv, &one, &v, &st.y(j))))?;
        let c = ctx.mul(&c4, &ctx.mul(&lin(&qt, &v), &ctx.mul(&yx, &yy)));
        push_diff(&mut terms, st.ykey(i, 1), c);
    }
    sum_terms(ctx, terms)
}

/// The multiplicative two-type operator with `ã = -th0²`, `b̃ = -th0 th1`,
/// `c̃ = th0 (th0 + th1)`.
fn m_tilde(ctx: &Ctx, n1: usize, n2: usize, th0: &Frac, th1: &Frac) -> Result<Op> {
    let st = Sites { ctx, n1 };
    let one = Frac::one();
    let q = ctx.q();
    let qinv = ctx.inv(&q)?;
    let t2 = ctx.mul(&ctx.tau(), &ctx.tau());
    let t2inv = ctx.inv(&t2)?;
    let a = ctx.mul(th0, th0).neg();
    let b = ctx.mul(th0, th1).neg();
    let c = ctx.mul(th0, &ctx.add(th0, th1));
    let ratio_y = ctx.div(&ctx.sub(&one, &q), &ctx.sub(&one, &t2inv))?;
    let qt2 = ctx.mul(&q, &t2);
    let qinv_t2inv = ctx.mul(&qinv, &t2inv);
    let mut terms = Vec::new();
    for i in 1..=n1 {
        let (x, xinv) = (st.x(i), ctx.site(i - 1, -1));
        let xx = prod(ctx, (1..=n1).filter(|&j| j != i).map(|j| ratio(ctx, &t2, &one, &x, &st.x(j))))?;
        let xy = prod(ctx, (1..=n2).map(|j| ratio(ctx, &t2, &qt2, &x, &st.y(j))))?;
        terms.push((st.xkey(i, 1), ctx.mul(&a, &ctx.mul(&xinv, &ctx.mul(&xx, &xy)))));
        let xx = prod(ctx, (1..=n1).filter(|&j| j != i).map(|j| ratio(ctx, &t2inv, &one, &x, &st.x(j))))?;
        let xy = prod(ctx, (1..=n2).map(|j| ratio(ctx, &q, &one, &x, &st.y(j))))?;
        terms.push((st.xkey(i, -1), ctx.mul(&b, &ctx.mul(&xinv, &ctx.mul(&xx, &xy)))));
        terms.push((Key::ID, ctx.mul(&c, &xinv)));
    }
    for i in 1..=n2 {
        let (y, yinv) = (st.y(i), ctx.site(n1 + i - 1, -1));
        let yx = prod(ctx, (1..=n1).map(|j| ratio(ctx, &qinv, &qinv_t2inv, &y, &st.x(j))))?;
        let yy = prod(ctx, (1..=n2).filter(|&j| j != i).map(|j| ratio(ctx, &qinv, &one, &y, &st.y(j))))?;
        let pre = ctx.mul(&ctx.mul(&a, &ratio_y), &yinv);
        terms.push((st.ykey(i, -1), ctx.mul(&pre, &ctx.mul(&yx, &yy))));
        let yx = prod(ctx, (1..=n1).map(|j| ratio(ctx, &t2inv, &one, &y, &st.x(j))))?;
        let yy = prod(ctx, (1..=n2).filter(|&j| j != i).map(|j| ratio(ctx, &q, &one, &y, &st.y(j))))?;
        let pre = ctx.mul(&ctx.mul(&b, &ratio_y), &yinv);
        terms.push((st.ykey(i, 1), ctx.mul(&pre, &ctx.mul(&yx, &yy))));
        terms.push((Key::ID, ctx.mul(&ctx.mul(&c, &ratio_y), &yinv)));
    }
    sum_terms(ctx, terms)
}

/// The rational identity behind the constant terms of the multiplicative
/// operator, in variables `z_1..z_{N1}`, `w_1..w_{N2}`, `s`, `t`.
pub fn twotype_identity_check(n1: usize, n2: usize) -> Result<bool> {
    if n1 + n2 == 0 {
        return Err(CoreError::BadParams("N1 + N2 must be positive".into()));
    }
    let scalars = vec![("s".to_string(), Scalar::Sym), ("t".to_string(), Scalar::Sym)];
    let mut sites: Vec<SiteSpec> = (1..=n1).map(|i| SiteSpec::new(format!("z{i}"), "s", 1)).collect();
    sites.extend((1..=n2).map(|i| SiteSpec::new(format!("w{i}"), "s", 1)));
    let ctx = Ctx::new(scalars, sites, Mode::Exact)?;
    let (s, t) = (ctx.scalar("s")?, ctx.scalar("t")?);
    let one = Frac::one();
    let z = |i: usize| ctx.site(i - 1, 1);
    let w = |i: usize| ctx.site(n1 + i - 1, 1);
    let c = ctx.div(&ctx.sub(&one, &s), &ctx.sub(&one, &t))?;
    // (α b − a) / (b − a)
    let f = |alpha: &Frac, a: &Frac, b: &Frac| ctx.div(&ctx.sub(&ctx.mul(alpha, b), a), &ctx.sub(b, a));
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for i in 1..=n1 {
        let zi = z(i);
        let p1 = prod(&ctx, (1..=n1).filter(|&j| j != i).map(|j| f(&t, &zi, &z(j))))?;
        let p2 = prod(&ctx, (1..=n2).map(|j| f(&s, &zi, &w(j))))?;
        lhs.push(ctx.mul(&zi, &ctx.mul(&p1, &p2)));
        rhs.push(zi);
    }
    for i in 1..=n2 {
        let wi = w(i);
        let p1 = prod(&ctx, (1..=n1).map(|j| f(&t, &wi, &z(j))))?;
        let p2 = prod(&ctx, (1..=n2).filter(|&j| j != i).map(|j| f(&s, &wi, &w(j))))?;
        lhs.push(ctx.mul(&c, &ctx.mul(&wi, &ctx.mul(&p1, &p2))));
        rhs.push(ctx.mul(&c, &wi));
    }
    Ok(ctx.equal(&ctx.sum_owned(&lhs), &ctx.sum_owned(&rhs)))
}

/// `H_full` at `(N1, N2)` and `t = q^{-1}`, read with `y_i = x_{N1+i}`,
/// against `H_full` at `(N1 + N2, 0)` and `t = q^{-1}`.
pub fn twotype_merge_check(n1: usize, n2: usize) -> Result<bool> {
    let names = ["q", "t0", "t1", "t2", "t3"];
    let scalars: Vec<(String, Scalar)> = names.iter().map(|s| (s.to_string(), Scalar::Sym)).collect();
    let n = n1 + n2;
    let merged_sites = |ybase: i16| -> Vec<SiteSpec> {
        (1..=n).map(|i| SiteSpec::new(format!("X{i}"), "q", if i > n1 { ybase } else { 1 })).collect()
    };
    let one_type = Ctx::new(scalars.clone(), merged_sites(1), Mode::Exact)?;
    let two_type = Ctx::new(scalars, merged_sites(-1), Mode::Exact)?;
    let build = |ctx: &Ctx, a: usize, b: usize| -> Result<Op> {
        let t = ctx.inv(&ctx.q())?;
        let tp: Vec<Frac> = ["t0", "t1", "t2", "t3"].iter().map(|s| ctx.scalar(s)).collect::<Result<_>>()?;
        h_full(ctx, a, b, &t, [&tp[0], &tp[1], &tp[2], &tp[3]])
    };
    let reference = build(&one_type, n, 0)?;
    let split = build(&two_type, n1, n2)?;
    let mut terms = Vec::new();
    for (k, c) in split.terms() {
        let mut key = *k;
        for e in &mut key.shift[n1..n] {
            *e = -*e;
        }
        terms.push((key, two_type.transfer(c, &one_type)?));
    }
    let rebased = sum_terms(&one_type, terms)?;
    one_type.op_eq(&reference, &rebased)
}

/// `H_hat` against `H_full` at `t3 = 1`, `t0 = th1 th2 / q`, `t1 = th0 th2`,
/// `t2 = th0 th1`, evaluated at `th2 = 0`.
pub fn twotype_hat_check(n1: usize, n2: usize) -> Result<bool> {
    let names = ["q", "t", "th0", "th1", "th2"];
    let sym: Vec<(String, Scalar)> = names.iter().map(|s| (s.to_string(), Scalar::Sym)).collect();
    let mut at_zero = sym.clone();
    at_zero[4].1 = Scalar::Val(Rat::ZERO);
    let mut sites: Vec<SiteSpec> = (1..=n1).map(|i| SiteSpec::new(format!("X{i}"), "q", 1)).collect();
    sites.extend((1..=n2).map(|i| SiteSpec::new(format!("Y{i}"), "t", 1)));
    let full_ctx = Ctx::new(sym, sites.clone(), Mode::Exact)?;
    let hat_ctx = Ctx::new(at_zero, sites, Mode::Exact)?;
    let s = |c: &Ctx, name: &str| c.scalar(name);
    let (q, th0, th1, th2) = (full_ctx.q(), s(&full_ctx, "th0")?, s(&full_ctx, "th1")?, s(&full_ctx, "th2")?);
    let t0 = full_ctx.div(&full_ctx.mul(&th1, &th2), &q)?;
    let t1 = full_ctx.mul(&th0, &th2);
    let t2 = full_ctx.mul(&th0, &th1);
    let full = h_full(&full_ctx, n1, n2, &s(&full_ctx, "t")?, [&t0, &t1, &t2, &Frac::one()])?;
    let limit = full_ctx.transfer_op(&full, &hat_ctx)?;
    let hat = h_hat(&hat_ctx, n1, n2, &s(&hat_ctx, "t")?, &s(&hat_ctx, "th0")?, &s(&hat_ctx, "th1")?)?;
    hat_ctx.op_eq(&limit, &hat)
}
