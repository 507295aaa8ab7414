//! Named operators of the polynomial representation, built by composition
//! from `T_k`, `π^{±1}` and multiplication operators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use crate::error::{CoreError, Result};
use crate::field::{Ctx, Frac};
use crate::group::{Key, Perm};
use crate::op::Op;

/// Generator kinds with 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    T(usize),
    Tinv(usize),
    Pi,
    PiInv,
    X(usize),
    Xinv(usize),
    Y(usize),
    Yinv(usize),
    D(usize),
    CalD(usize),
    E(usize, usize),
    Stau(usize, usize),
    Shift(usize),
    ShiftInv(usize),
    Dq(usize),
    Eq(usize, usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::T(k) => write!(f, "T[{k}]"),
            Gen::Tinv(k) => write!(f, "Tinv[{k}]"),
            Gen::Pi => write!(f, "pi"),
            Gen::PiInv => write!(f, "piinv"),
            Gen::X(i) => write!(f, "X[{i}]"),
            Gen::Xinv(i) => write!(f, "Xinv[{i}]"),
            Gen::Y(i) => write!(f, "Y[{i}]"),
            Gen::Yinv(i) => write!(f, "Yinv[{i}]"),
            Gen::D(i) => write!(f, "D[{i}]"),
            Gen::CalD(i) => write!(f, "calD[{i}]"),
            Gen::E(i, j) => write!(f, "e[{i},{j}]"),
            Gen::Stau(i, j) => write!(f, "S[{i},{j}]"),
            Gen::Shift(i) => write!(f, "t[{i}]"),
            Gen::ShiftInv(i) => write!(f, "tinv[{i}]"),
            Gen::Dq(i) => write!(f, "d[{i}]"),
            Gen::Eq(i, j) => write!(f, "Eq[{i},{j}]"),
        }
    }
}

impl Gen {
    /// Checks indices against `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let site = |i: usize| (1..=n).contains(&i);
        let ok = match *self {
            Gen::T(k) | Gen::Tinv(k) => k >= 1 && k < n,
            Gen::Pi | Gen::PiInv => n >= 1,
            Gen::X(i)
            | Gen::Xinv(i)
            | Gen::Y(i)
            | Gen::Yinv(i)
            | Gen::D(i)
            | Gen::CalD(i)
            | Gen::Shift(i)
            | Gen::ShiftInv(i)
            | Gen::Dq(i) => site(i),
            Gen::E(i, j) | Gen::Stau(i, j) | Gen::Eq(i, j) => site(i) && site(j),
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::IndexOutOfRange(format!("{self} for n = {n}")))
        }
    }
}

/// Parameters of `𝒟^{(l1,l2)}`: `a_j` for `j = -l1..=l2`.
#[derive(Clone, Debug)]
pub struct CalDParams {
    pub l1: usize,
    pub l2: usize,
    pub a: BTreeMap<i32, Frac>,
}

impl CalDParams {
    pub fn new(l1: usize, l2: usize, a: BTreeMap<i32, Frac>) -> Result<CalDParams> {
        let lo = -(l1 as i32);
        let hi = l2 as i32;
        if a.keys().any(|&j| j < lo || j > hi) {
            return Err(CoreError::BadParams("a_j index outside -l1..=l2".into()));
        }
        let nz = |j: i32| a.get(&j).is_some_and(|f| !f.is_zero());
        if !nz(lo) || !nz(hi) {
            return Err(CoreError::BadParams("a_{-l1} and a_{l2} must be nonzero".into()));
        }
        Ok(CalDParams { l1, l2, a })
    }

    /// Symbolic `a_j` named `a{j}` / `am{|j|}` in `ctx`.
    pub fn symbolic(ctx: &Ctx, l1: usize, l2: usize) -> Result<CalDParams> {
        let mut a = BTreeMap::new();
        for j in -(l1 as i32)..=(l2 as i32) {
            a.insert(j, ctx.scalar(&a_name(j))?);
        }
        CalDParams::new(l1, l2, a)
    }

    /// Parameter names used by [`CalDParams::symbolic`].
    pub fn names(l1: usize, l2: usize) -> Vec<String> {
        (-(l1 as i32)..=(l2 as i32)).map(a_name).collect()
    }

    /// `a_{-1} = -1, a_1 = 1`, the choice giving `(q - q^{-1}) D_i`.
    pub fn dunkl() -> CalDParams {
        let mut a = BTreeMap::new();
        a.insert(-1, Frac::int(-1));
        a.insert(1, Frac::int(1));
        CalDParams { l1: 1, l2: 1, a }
    }

    pub fn coeff(&self, j: i32) -> Frac {
        self.a.get(&j).cloned().unwrap_or_default()
    }
}

pub fn a_name(j: i32) -> String {
    if j < 0 {
        format!("am{}", -j)
    } else {
        format!("a{j}")
    }
}

/// Memoizing builder for one context.
pub struct Gens {
    ctx: Arc<Ctx>,
    psi: bool,
    cald: Option<CalDParams>,
    cache: Mutex<FxHashMap<Gen, Arc<Op>>>,
}

impl Gens {
    pub fn new(ctx: Arc<Ctx>) -> Gens {
        Gens { ctx, psi: false, cald: None, cache: Mutex::new(FxHashMap::default()) }
    }

    /// The variant in which `Y_i^{±1}` carry the extra factor `τ^{±(n-1)}`.
    pub fn psi(ctx: Arc<Ctx>) -> Gens {
        Gens { ctx, psi: true, cald: None, cache: Mutex::new(FxHashMap::default()) }
    }

    pub fn with_cald(mut self, p: CalDParams) -> Gens {
        self.cald = Some(p);
        self
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn is_psi(&self) -> bool {
        self.psi
    }

    pub fn cald_params(&self) -> Option<&CalDParams> {
        self.cald.as_ref()
    }

    pub fn get(&self, g: Gen) -> Result<Arc<Op>> {
        g.validate(self.n())?;
        if let Some(op) = self.cache.lock().unwrap().get(&g) {
            return Ok(op.clone());
        }
        let op = Arc::new(self.build(g)?);
        self.cache.lock().unwrap().insert(g, op.clone());
        Ok(op)
    }

    /// Product of generators, left to right.
    pub fn word(&self, letters: &[Gen]) -> Result<Op> {
        let mut acc = Op::identity(self.n());
        for &g in letters {
            acc = self.ctx.compose(&acc, &*self.get(g)?)?;
        }
        Ok(acc)
    }

    fn build(&self, g: Gen) -> Result<Op> {
        let ctx = &*self.ctx;
        let n = self.n();
        let q = ctx.q();
        let tau = ctx.tau();
        let tau_inv = ctx.inv(&tau)?;
        Ok(match g {
            Gen::T(k) => {
                let (xk, xk1) = (ctx.site(k - 1, 1), ctx.site(k, 1));
                let den = ctx.inv(&ctx.sub(&xk1, &xk))?;
                let s_coef = ctx.mul(&ctx.sub(&ctx.mul(&tau_inv, &xk1), &ctx.mul(&tau, &xk)), &den);
                let id_coef = ctx.mul(&ctx.mul(&ctx.sub(&tau, &tau_inv), &xk1), &den);
                Op::from_terms(n, vec![(Key::perm(Perm::simple(k - 1)), s_coef), (Key::ID, id_coef)])
            }
            Gen::Tinv(k) => {
                let t = self.get(Gen::T(k))?;
                let c = ctx.sub(&tau_inv, &tau);
                ctx.linear_combine(n, &[(Frac::one(), &t), (c, &Op::identity(n))])?
            }
            Gen::PiInv => Op::key(n, Key { perm: Perm::cycle_down(n), shift: unit(n - 1, n) }),
            Gen::Pi => Op::key(n, Key { perm: Perm::cycle_down(n), shift: unit(n - 1, n) }.inverse()),
            Gen::X(i) => Op::mult(n, ctx.site(i - 1, 1)),
            Gen::Xinv(i) => Op::mult(n, ctx.site(i - 1, -1)),
            Gen::Shift(i) => Op::key(n, Key::unit_shift(i - 1, 1)),
            Gen::ShiftInv(i) => Op::key(n, Key::unit_shift(i - 1, -1)),
            Gen::Y(i) => {
                let mut letters: Vec<Gen> = (i..n).map(Gen::T).collect();
                letters.push(Gen::PiInv);
                letters.extend((1..i).map(Gen::Tinv));
                let y = self.word(&letters)?;
                if self.psi {
                    ctx.scale_op(&ctx.pow(&tau, n as i32 - 1)?, &y)
                } else {
                    y
                }
            }
            Gen::Yinv(i) => {
                let mut letters: Vec<Gen> = (1..i).rev().map(Gen::T).collect();
                letters.push(Gen::Pi);
                letters.extend((i..n).rev().map(Gen::Tinv));
                let y = self.word(&letters)?;
                if self.psi {
                    ctx.scale_op(&ctx.pow(&tau, 1 - n as i32)?, &y)
                } else {
                    y
                }
            }
            Gen::D(i) => {
                if i == n {
                    let c = ctx.mul(&ctx.site(n - 1, -1), &ctx.inv(&ctx.sub(&q, &ctx.inv(&q)?))?);
                    let diff = ctx.sub_ops(&*self.get(Gen::Y(n))?, &*self.get(Gen::Yinv(n))?)?;
                    ctx.scale_op(&c, &diff)
                } else {
                    self.conjugate_to(i, &*self.get(Gen::D(n))?)?
                }
            }
            Gen::CalD(i) => {
                let p = self
                    .cald
                    .as_ref()
                    .ok_or_else(|| CoreError::BadParams("no calD parameters configured".into()))?;
                if i == n {
                    let mut parts: Vec<(Frac, Op)> = Vec::new();
                    for (&j, a) in &p.a {
                        parts.push((a.clone(), self.y_power(n, j)?));
                    }
                    let refs: Vec<(Frac, &Op)> = parts.iter().map(|(c, o)| (c.clone(), o)).collect();
                    let sum = ctx.linear_combine(n, &refs)?;
                    ctx.scale_op(&ctx.site(n - 1, -1), &sum)
                } else {
                    self.conjugate_to(i, &*self.get(Gen::CalD(n))?)?
                }
            }
            Gen::E(i, j) => ctx.compose(&*self.get(Gen::X(i))?, &*self.get(Gen::D(j))?)?,
            Gen::Stau(i, j) => ctx.commutator(&*self.get(Gen::D(i))?, &*self.get(Gen::X(j))?)?,
            Gen::Dq(i) => {
                let c = ctx.mul(&ctx.site(i - 1, -1), &ctx.inv(&ctx.sub(&q, &ctx.inv(&q)?))?);
                let diff = Op::from_terms(
                    n,
                    vec![(Key::unit_shift(i - 1, 1), c.clone()), (Key::unit_shift(i - 1, -1), c.neg())],
                );
                diff
            }
            Gen::Eq(i, j) => ctx.compose(&*self.get(Gen::X(i))?, &*self.get(Gen::Dq(j))?)?,
        })
    }

    /// `T⁺_{i,n-1} · op · T⁻_{n-1,i}`.
    fn conjugate_to(&self, i: usize, op: &Op) -> Result<Op> {
        let n = self.n();
        let left = self.string(StringKind::Tplus, i, n - 1)?;
        let right = self.string(StringKind::Tminus, n - 1, i)?;
        self.ctx.product(&[&left, op, &right])
    }

    /// `Y_i^j` by repeated composition; `j = 0` is the identity.
    pub fn y_power(&self, i: usize, j: i32) -> Result<Op> {
        let g = if j >= 0 { Gen::Y(i) } else { Gen::Yinv(i) };
        let letters = vec![g; j.unsigned_abs() as usize];
        self.word(&letters)
    }

    /// `T^±` strings: `Tplus(i, j) = T_i T_{i+1} ⋯ T_j` (identity if `i > j`),
    /// `Tminus(i, j) = T_i T_{i-1} ⋯ T_j` (identity if `i < j`), and the same
    /// with inverses.
    pub fn string(&self, kind: StringKind, i: usize, j: usize) -> Result<Op> {
        self.word(&string_letters(kind, i, j))
    }

    /// `(𝓡^ε)^±_{ij} = (T^ε)⁻_{i-1,j+1} T_j^{±2} (T^{-ε})⁺_{j+1,i-1}` for `i > j`,
    /// identity otherwise.
    pub fn r_op(&self, eps: i32, sign: i32, i: usize, j: usize) -> Result<Op> {
        self.word(&r_letters(eps, sign, i, j))
    }

    /// Generators of `U_q(gl_n)` in the q-oscillator representation.
    pub fn js_rep(&self, g: JsGen) -> Result<Op> {
        let n = self.n();
        match g {
            JsGen::G(i, s) => {
                Gen::Shift(i).validate(n)?;
                Ok(Op::key(n, Key::unit_shift(i - 1, s as i16)))
            }
            JsGen::E(k) => {
                if k == 0 || k >= n {
                    return Err(CoreError::IndexOutOfRange(format!("e_{k} for n = {n}")));
                }
                self.ctx.compose(&*self.get(Gen::X(k))?, &*self.get(Gen::Dq(k + 1))?)
            }
            JsGen::F(k) => {
                if k == 0 || k >= n {
                    return Err(CoreError::IndexOutOfRange(format!("f_{k} for n = {n}")));
                }
                self.ctx.compose(&*self.get(Gen::X(k + 1))?, &*self.get(Gen::Dq(k))?)
            }
        }
    }

    /// `𝒟_i` from the π-form: `X_i^{-1}(Σ_{j>0} a_j P_i^j + Σ_{j>0} a_{-j} M_i^j + a_0)`
    /// with `P_i = (T^{-1})⁺_{i,n-1} π^{-1} (T^{-1})⁺_{1,i-1}` and
    /// `M_i = T⁻_{i-1,1} π T⁻_{n-1,i}`.
    pub fn cald_pi_form(&self, i: usize, p: &CalDParams) -> Result<Op> {
        let ctx = &*self.ctx;
        let n = self.n();
        let pp = self.cald_plus_core(i)?;
        let mm = self.cald_minus_core(i)?;
        let mut parts: Vec<(Frac, Op)> = vec![(p.coeff(0), Op::identity(n))];
        let mut pow = Op::identity(n);
        for j in 1..=p.l2 as i32 {
            pow = ctx.compose(&pow, &pp)?;
            parts.push((p.coeff(j), pow.clone()));
        }
        let mut pow = Op::identity(n);
        for j in 1..=p.l1 as i32 {
            pow = ctx.compose(&pow, &mm)?;
            parts.push((p.coeff(-j), pow.clone()));
        }
        let refs: Vec<(Frac, &Op)> = parts.iter().map(|(c, o)| (c.clone(), o)).collect();
        let sum = ctx.linear_combine(n, &refs)?;
        Ok(ctx.scale_op(&ctx.site(i - 1, -1), &sum))
    }

    /// `(T^{-1})⁺_{i,n-1} π^{-1} (T^{-1})⁺_{1,i-1}`.
    pub fn cald_plus_core(&self, i: usize) -> Result<Op> {
        let n = self.n();
        let mut letters: Vec<Gen> = (i..n).map(Gen::Tinv).collect();
        letters.push(Gen::PiInv);
        letters.extend((1..i).map(Gen::Tinv));
        self.word(&letters)
    }

    /// `T⁻_{i-1,1} π T⁻_{n-1,i}`.
    pub fn cald_minus_core(&self, i: usize) -> Result<Op> {
        let n = self.n();
        let mut letters: Vec<Gen> = (1..i).rev().map(Gen::T).collect();
        letters.push(Gen::Pi);
        letters.extend((i..n).rev().map(Gen::T));
        self.word(&letters)
    }
}

fn unit(i: usize, n: usize) -> [i16; crate::group::MAX_SITES] {
    let mut s = [0; crate::group::MAX_SITES];
    if i < n {
        s[i] = 1;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StringKind {
    Tplus,
    Tminus,
    TinvPlus,
    TinvMinus,
}

pub fn string_letters(kind: StringKind, i: usize, j: usize) -> Vec<Gen> {
    match kind {
        StringKind::Tplus => (i..=j).map(Gen::T).collect(),
        StringKind::TinvPlus => (i..=j).map(Gen::Tinv).collect(),
        StringKind::Tminus => (j..=i).rev().map(Gen::T).collect(),
        StringKind::TinvMinus => (j..=i).rev().map(Gen::Tinv).collect(),
    }
}

pub fn r_letters(eps: i32, sign: i32, i: usize, j: usize) -> Vec<Gen> {
    if i <= j {
        return Vec::new();
    }
    let (minus, plus) = if eps > 0 {
        (StringKind::Tminus, StringKind::TinvPlus)
    } else {
        (StringKind::TinvMinus, StringKind::Tplus)
    };
    let mut out = string_letters(minus, i - 1, j + 1);
    let tj = if sign > 0 { Gen::T(j) } else { Gen::Tinv(j) };
    out.push(tj);
    out.push(tj);
    out.extend(string_letters(plus, j + 1, i - 1));
    out
}

/// `g_i^{±1}`, `e_k`, `f_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JsGen {
    G(usize, i32),
    E(usize),
    F(usize),
}
