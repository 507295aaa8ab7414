//! Words in `ℍ^{gl_n}` and their reduction to the PBW normal form
//! `T_w · e_{i_1 j_1}^{k_1} ⋯ e_{i_t j_t}^{k_t} · Y^m`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{CoreError, Result};
use crate::expr::{parse_expr, Atom, Expr};
use crate::field::{Ctx, Frac, Mode};
use crate::gens::{r_letters, string_letters, Gen, Gens, StringKind};
use crate::group::Perm;
use crate::hecke::{add_into, hecke_normalize, HeckeElement};
use crate::op::Op;
use crate::rules::{diag_e, s_text, Rule};

/// Distinct `monomial · letter` products [`Hgl::reduce`] may expand before
/// giving up.
pub const DEFAULT_STEP_BOUND: usize = 1_000_000;

/// A generator of `ℍ^{gl_n}`; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    T(usize),
    Tinv(usize),
    Y(usize),
    Yinv(usize),
    E(usize, usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_gen())
    }
}

impl Letter {
    pub fn to_gen(self) -> Gen {
        match self {
            Letter::T(k) => Gen::T(k),
            Letter::Tinv(k) => Gen::Tinv(k),
            Letter::Y(i) => Gen::Y(i),
            Letter::Yinv(i) => Gen::Yinv(i),
            Letter::E(i, j) => Gen::E(i, j),
        }
    }

    pub fn validate(self, n: usize) -> Result<()> {
        if let Letter::E(i, j) = self {
            if i == j {
                return Err(CoreError::IndexOutOfRange(format!("{self}: e needs distinct indices")));
            }
        }
        self.to_gen().validate(n)
    }
}

/// A word in the generators.
pub type AlgWord = Vec<Letter>;

fn word_text(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// A linear combination of words with nonzero scalar coefficients.
#[derive(Clone, Debug)]
pub struct AlgElement {
    pub n: usize,
    pub terms: BTreeMap<AlgWord, Frac>,
}

impl AlgElement {
    pub fn zero(n: usize) -> AlgElement {
        AlgElement { n, terms: BTreeMap::new() }
    }

    pub fn word(n: usize, w: AlgWord) -> AlgElement {
        let mut terms = BTreeMap::new();
        terms.insert(w, Frac::one());
        AlgElement { n, terms }
    }

    pub fn scalar(n: usize, c: Frac) -> AlgElement {
        let mut out = AlgElement::zero(n);
        if !c.is_zero() {
            out.terms.insert(Vec::new(), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, ctx: &Ctx, o: &AlgElement, sign: i64) -> AlgElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            add_into(ctx, &mut out.terms, w.clone(), c.scale(&sign.into()));
        }
        out
    }

    pub fn mul(&self, ctx: &Ctx, o: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                add_into(ctx, &mut out.terms, w, ctx.mul(ca, cb));
            }
        }
        out
    }

    pub fn to_text(&self, ctx: &Ctx) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{{{}}} {}", ctx.to_string(c), word_text(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `T_w · ∏ e_{ij}^k · ∏ Y_l^{m_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBWMonomial {
    pub w: Perm,
    pub efactors: Vec<(usize, usize, u32)>,
    pub yexp: Vec<i32>,
}

impl PBWMonomial {
    pub fn identity(n: usize) -> PBWMonomial {
        PBWMonomial { w: Perm::ID, efactors: Vec::new(), yexp: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.yexp.len()
    }

    /// Total number of `e` letters.
    pub fn e_degree(&self) -> u32 {
        self.efactors.iter().map(|f| f.2).sum()
    }

    /// The monomial as a word: a reduced word for `w`, then the `e` and `Y`
    /// factors.
    pub fn letters(&self) -> AlgWord {
        let n = self.n();
        let mut out: AlgWord = self.w.reduced_word(n).into_iter().map(|k| Letter::T(k + 1)).collect();
        for &(i, j, k) in &self.efactors {
            out.extend(std::iter::repeat(Letter::E(i, j)).take(k as usize));
        }
        for (l, &m) in self.yexp.iter().enumerate() {
            let y = if m > 0 { Letter::Y(l + 1) } else { Letter::Yinv(l + 1) };
            out.extend(std::iter::repeat(y).take(m.unsigned_abs() as usize));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let n = self.n();
        json!({
            "w": self.w.images(n),
            "efactors": self.efactors.iter().map(|&(i, j, k)| json!([i, j, k])).collect::<Vec<_>>(),
            "yexp": self.yexp,
        })
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut parts = Vec::new();
        if !self.w.is_identity() {
            parts.push(format!("T{:?}", self.w.images(n)));
        }
        for &(i, j, k) in &self.efactors {
            parts.push(if k == 1 { format!("e[{i},{j}]") } else { format!("e[{i},{j}]^{k}") });
        }
        for (l, &m) in self.yexp.iter().enumerate() {
            match m {
                0 => {}
                1 => parts.push(format!("Y[{}]", l + 1)),
                _ => parts.push(format!("Y[{}]^{m}", l + 1)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Whether `m` satisfies the index constraints of a PBW basis monomial.
pub fn pbw_validate(m: &PBWMonomial) -> bool {
    let n = m.n();
    if n == 0 || n > crate::group::MAX_SITES || (n..crate::group::MAX_SITES).any(|i| m.w.at(i) != i) {
        return false;
    }
    let mut is = Vec::new();
    let mut js = Vec::new();
    for &(i, j, k) in &m.efactors {
        if k == 0 || i == j || i == 0 || j == 0 || i > n || j > n {
            return false;
        }
        is.push(i);
        js.push(j);
    }
    for s in 1..m.efactors.len() {
        let (a, b) = (m.efactors[s - 1], m.efactors[s]);
        if a.0 > b.0 || a.1 > b.1 || (a.0 == b.0 && a.1 >= b.1) {
            return false;
        }
    }
    !is.iter().any(|i| js.contains(i))
}

/// A linear combination of PBW monomials.
#[derive(Clone, Debug)]
pub struct PBWElement {
    pub n: usize,
    pub terms: BTreeMap<PBWMonomial, Frac>,
}

impl PBWElement {
    pub fn zero(n: usize) -> PBWElement {
        PBWElement { n, terms: BTreeMap::new() }
    }

    /// The element `1`.
    pub fn unit(n: usize) -> PBWElement {
        let mut p = PBWElement::zero(n);
        p.terms.insert(PBWMonomial::identity(n), Frac::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct `e` parts among the terms.
    pub fn e_parts(&self) -> usize {
        let mut parts: Vec<&Vec<(usize, usize, u32)>> = self.terms.keys().map(|m| &m.efactors).collect();
        parts.sort();
        parts.dedup();
        parts.len()
    }

    pub fn to_alg(&self) -> AlgElement {
        AlgElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.letters(), c.clone())).collect() }
    }

    pub fn to_json(&self, ctx: &Ctx) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut v = m.to_json();
                v["coeff"] = json!(ctx.to_string(c));
                v
            })
            .collect();
        json!({ "n": self.n, "terms": terms })
    }

    pub fn to_text(&self, ctx: &Ctx) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{{{}}} {m}", ctx.to_string(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

type Expansion = Arc<Vec<(AlgWord, Frac)>>;

/// `ℍ^{gl_n}` over one coefficient context: expression input, PBW
/// reduction and the polynomial representation.
pub struct Hgl {
    gens: Gens,
    step_bound: usize,
    cache: Mutex<FxHashMap<Rule, Expansion>>,
    memo: Mutex<Memo>,
}

#[derive(Default)]
struct Memo {
    nf: FxHashMap<(Vec<(usize, usize, u32)>, Vec<i32>, Letter), Arc<PBWElement>>,
    hecke: FxHashMap<(Perm, Perm), Arc<HeckeElement>>,
    active: rustc_hash::FxHashSet<(Vec<(usize, usize, u32)>, Vec<i32>, Letter)>,
    steps: usize,
}

impl Hgl {
    /// Exact or specialized `q, τ`; the step bound is read from
    /// `DAHA_STEP_BOUND` when set.
    pub fn new(n: usize, mode: Mode) -> Result<Hgl> {
        Ok(Hgl::with_gens(Gens::new(Ctx::daha(n, &[], mode)?)))
    }

    pub fn with_gens(gens: Gens) -> Hgl {
        let step_bound = std::env::var("DAHA_STEP_BOUND")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_STEP_BOUND);
        Hgl { gens, step_bound, cache: Mutex::new(FxHashMap::default()), memo: Mutex::new(Memo::default()) }
    }

    pub fn with_step_bound(mut self, bound: usize) -> Hgl {
        self.step_bound = bound;
        self
    }

    pub fn n(&self) -> usize {
        self.gens.n()
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        self.gens.ctx()
    }

    pub fn gens(&self) -> &Gens {
        &self.gens
    }

    pub fn parse(&self, text: &str) -> Result<AlgElement> {
        self.from_expr(&parse_expr(text)?)
    }

    /// Expands an expression into words. Diagonal `e[x,x]` and `S[a,b]` are
    /// rewritten in `T` and `Y`; atoms outside `ℍ^{gl_n}` are rejected.
    pub fn from_expr(&self, e: &Expr) -> Result<AlgElement> {
        let ctx = &**self.ctx();
        let n = self.n();
        match e {
            Expr::Atom(a) => self.atom(a),
            Expr::Int(k) => Ok(AlgElement::scalar(n, Frac::int(*k as i64))),
            Expr::Scalar(s) => {
                let c = ctx.parse(s)?;
                if !ctx.is_scalar(&c) {
                    return Err(CoreError::BadParams(format!("`{{{s}}}` depends on the sites")));
                }
                Ok(AlgElement::scalar(n, c))
            }
            Expr::Pow(b, k) => {
                let base = if *k >= 0 {
                    self.from_expr(b)?
                } else {
                    match &**b {
                        Expr::Atom(a) if matches!(a.name.as_str(), "T" | "Tinv" | "Y" | "Yinv" | "Yt" | "Ytinv") => {
                            let name = match a.name.as_str() {
                                "T" => "Tinv",
                                "Tinv" => "T",
                                "Y" => "Yinv",
                                "Yinv" => "Y",
                                "Yt" => "Ytinv",
                                _ => "Yt",
                            };
                            self.atom(&Atom { name: name.into(), idx: a.idx.clone() })?
                        }
                        Expr::Int(_) | Expr::Scalar(_) => {
                            let v = self.from_expr(b)?;
                            let c = v.terms.get(&Vec::new()).cloned().unwrap_or_default();
                            AlgElement::scalar(n, ctx.inv(&c)?)
                        }
                        _ => {
                            return Err(CoreError::BadParams(
                                "negative powers only apply to T, Y and scalars".into(),
                            ))
                        }
                    }
                };
                let mut acc = AlgElement::scalar(n, Frac::one());
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(ctx, &base);
                }
                Ok(acc)
            }
            Expr::Prod(fs) => {
                let mut acc = AlgElement::scalar(n, Frac::one());
                for f in fs {
                    acc = acc.mul(ctx, &self.from_expr(f)?);
                }
                Ok(acc)
            }
            Expr::Sum(ps) => {
                let mut acc = AlgElement::zero(n);
                for (neg, x) in ps {
                    acc = acc.add(ctx, &self.from_expr(x)?, if *neg { -1 } else { 1 });
                }
                Ok(acc)
            }
        }
    }

    fn atom(&self, a: &Atom) -> Result<AlgElement> {
        let n = self.n();
        let two = || -> Result<(usize, usize)> {
            if a.idx.len() != 2 {
                return Err(CoreError::BadParams(format!("`{}` takes 2 indices", a.name)));
            }
            for &i in &a.idx {
                Gen::X(i).validate(n)?;
            }
            Ok((a.idx[0], a.idx[1]))
        };
        let one = || -> Result<usize> {
            if a.idx.len() != 1 {
                return Err(CoreError::BadParams(format!("`{}` takes 1 index", a.name)));
            }
            Ok(a.idx[0])
        };
        let letters = |ls: Vec<Letter>| -> Result<AlgElement> {
            for l in &ls {
                l.validate(n)?;
            }
            Ok(AlgElement::word(n, ls))
        };
        let from_gens = |gs: Vec<Gen>| -> Result<AlgElement> {
            letters(
                gs.into_iter()
                    .map(|g| match g {
                        Gen::T(k) => Letter::T(k),
                        Gen::Tinv(k) => Letter::Tinv(k),
                        _ => unreachable!("strings hold T letters only"),
                    })
                    .collect(),
            )
        };
        match a.name.as_str() {
            "T" => letters(vec![Letter::T(one()?)]),
            "Tinv" => letters(vec![Letter::Tinv(one()?)]),
            "Y" => letters(vec![Letter::Y(one()?)]),
            "Yinv" => letters(vec![Letter::Yinv(one()?)]),
            "Yt" | "Ytinv" => {
                if !a.idx.is_empty() {
                    return Err(CoreError::BadParams(format!("`{}` takes no indices", a.name)));
                }
                letters((1..=n).map(|i| if a.name == "Yt" { Letter::Y(i) } else { Letter::Yinv(i) }).collect())
            }
            "e" => {
                let (i, j) = two()?;
                if i == j {
                    self.parse(&diag_e(i, n))
                } else {
                    letters(vec![Letter::E(i, j)])
                }
            }
            "S" => {
                let (i, j) = two()?;
                self.parse(&s_text(i, j, n))
            }
            "Tp" | "Tm" | "Tip" | "Tim" => {
                let kind = match a.name.as_str() {
                    "Tp" => StringKind::Tplus,
                    "Tm" => StringKind::Tminus,
                    "Tip" => StringKind::TinvPlus,
                    _ => StringKind::TinvMinus,
                };
                if a.idx.len() != 2 {
                    return Err(CoreError::BadParams(format!("`{}` takes 2 indices", a.name)));
                }
                from_gens(string_letters(kind, a.idx[0], a.idx[1]))
            }
            "Rp" | "Rm" | "Rip" | "Rim" => {
                let (i, j) = two()?;
                let (eps, sign) = match a.name.as_str() {
                    "Rp" => (1, 1),
                    "Rm" => (1, -1),
                    "Rip" => (-1, 1),
                    _ => (-1, -1),
                };
                from_gens(r_letters(eps, sign, i, j))
            }
            other => Err(CoreError::BadParams(format!("`{other}` is not a generator of H^gl_n"))),
        }
    }

    fn expansion(&self, r: Rule) -> Result<Expansion> {
        if let Some(x) = self.cache.lock().unwrap().get(&r) {
            return Ok(x.clone());
        }
        let el = self.parse(&r.rhs(self.n()))?;
        let x: Expansion = Arc::new(el.terms.into_iter().collect());
        self.cache.lock().unwrap().insert(r, x.clone());
        Ok(x)
    }

    /// Rewrites `x` into PBW normal form, multiplying letter by letter.
    pub fn reduce(&self, x: &AlgElement) -> Result<PBWElement> {
        let ctx = &**self.ctx();
        let n = self.n();
        if x.n != n {
            return Err(CoreError::SizeMismatch(x.n, n));
        }
        let mut out = PBWElement::zero(n);
        for (w, c) in &x.terms {
            for l in w {
                l.validate(n)?;
            }
            let p = self.mul_word(PBWElement::unit(n), w)?;
            for (m, d) in p.terms {
                add_into(ctx, &mut out.terms, m, ctx.mul(c, &d));
            }
        }
        Ok(out)
    }

    /// `p · word` in normal form.
    pub fn mul_word(&self, mut p: PBWElement, word: &[Letter]) -> Result<PBWElement> {
        for &l in word {
            p = self.mul_letter(&p, l)?;
        }
        Ok(p)
    }

    /// `p · l` in normal form.
    pub fn mul_letter(&self, p: &PBWElement, l: Letter) -> Result<PBWElement> {
        let ctx = &**self.ctx();
        let mut out = PBWElement::zero(self.n());
        for (m, c) in &p.terms {
            let w = m.w;
            let base = PBWMonomial { w: Perm::ID, ..m.clone() };
            let r = self.nf_letter(&base, l)?;
            for (m2, d) in &r.terms {
                let cd = ctx.mul(c, d);
                if w.is_identity() {
                    add_into(ctx, &mut out.terms, m2.clone(), cd);
                    continue;
                }
                let h = self.hecke_mul(w, m2.w);
                for (u, f) in &h.terms {
                    let m3 = PBWMonomial { w: *u, ..m2.clone() };
                    add_into(ctx, &mut out.terms, m3, ctx.mul(&cd, f));
                }
            }
        }
        Ok(out)
    }

    fn hecke_mul(&self, u: Perm, v: Perm) -> Arc<HeckeElement> {
        if let Some(h) = self.memo.lock().unwrap().hecke.get(&(u, v)) {
            return h.clone();
        }
        let ctx = &**self.ctx();
        let n = self.n();
        let mut h = HeckeElement::zero(n);
        h.terms.insert(u, Frac::one());
        for k in v.reduced_word(n) {
            h = h.mul_t(ctx, k + 1);
        }
        let h = Arc::new(h);
        self.memo.lock().unwrap().hecke.insert((u, v), h.clone());
        h
    }

    /// Normal form of `base · l` for `base` without a `T_w` part.
    fn nf_letter(&self, base: &PBWMonomial, l: Letter) -> Result<Arc<PBWElement>> {
        let key = (base.efactors.clone(), base.yexp.clone(), l);
        if let Some(r) = self.memo.lock().unwrap().nf.get(&key) {
            return Ok(r.clone());
        }
        {
            let mut memo = self.memo.lock().unwrap();
            memo.steps += 1;
            if !memo.active.insert(key.clone()) {
                return Err(CoreError::Precondition(format!("rewriting cycle at {base} {l}")));
            }
            if memo.steps > self.step_bound {
                return Err(CoreError::StepBound {
                    bound: self.step_bound,
                    element: format!("{base} {l}"),
                });
            }
        }
        let r = self.nf_letter_uncached(base, l);
        let mut memo = self.memo.lock().unwrap();
        memo.active.remove(&key);
        let r = Arc::new(r?);
        memo.nf.insert(key, r.clone());
        Ok(r)
    }

    fn nf_letter_uncached(&self, base: &PBWMonomial, l: Letter) -> Result<PBWElement> {
        let ctx = &**self.ctx();
        let n = self.n();
        let single = |m: PBWMonomial| {
            let mut p = PBWElement::zero(n);
            p.terms.insert(m, Frac::one());
            p
        };
        let last_y = base.yexp.iter().rposition(|&m| m != 0);
        let split_y = |ly: usize| {
            let mut b = base.clone();
            let s = b.yexp[ly].signum();
            b.yexp[ly] -= s;
            (b, ly + 1, s)
        };
        let split_e = || {
            let mut b = base.clone();
            let f = b.efactors.last_mut().expect("nonempty e part");
            let (i, j) = (f.0, f.1);
            f.2 -= 1;
            if f.2 == 0 {
                b.efactors.pop();
            }
            (b, i, j)
        };
        let (rest, rule) = match l {
            Letter::Y(i) | Letter::Yinv(i) => {
                let mut m = base.clone();
                m.yexp[i - 1] += if matches!(l, Letter::Y(_)) { 1 } else { -1 };
                return Ok(single(m));
            }
            Letter::Tinv(k) => {
                let mut p = (*self.nf_letter(base, Letter::T(k))?).clone();
                let tau = ctx.tau();
                add_into(ctx, &mut p.terms, base.clone(), ctx.sub(&ctx.inv(&tau)?, &tau));
                return Ok(p);
            }
            Letter::T(k) => {
                if let Some(ly) = last_y {
                    let (b, i, s) = split_y(ly);
                    (b, Rule::YT { i, s, k })
                } else if !base.efactors.is_empty() {
                    let (b, a, c) = split_e();
                    (b, Rule::ET { a, b: c, k })
                } else {
                    let mut m = base.clone();
                    m.w = Perm::simple(k - 1);
                    return Ok(single(m));
                }
            }
            Letter::E(j, k) => {
                if let Some(ly) = pick_y(&base.yexp, j, k, n) {
                    let (b, i, s) = split_y(ly);
                    (b, Rule::YE { i, s, j, k })
                } else {
                    let mut es: Vec<(usize, usize)> = Vec::new();
                    for &(i, j, k) in &base.efactors {
                        es.extend(std::iter::repeat((i, j)).take(k as usize));
                    }
                    es.push((j, k));
                    match e_block_rule(&es) {
                        None => {
                            let mut m = base.clone();
                            match m.efactors.last_mut() {
                                Some(f) if f.0 == j && f.1 == k => f.2 += 1,
                                _ => m.efactors.push((j, k, 1)),
                            }
                            return Ok(single(m));
                        }
                        Some((p, rule)) => {
                            debug_assert_eq!(p + 2, es.len());
                            (split_e().0, rule)
                        }
                    }
                }
            }
        };
        let x = self.expansion(rule)?;
        let start = single(rest);
        let mut out = PBWElement::zero(n);
        for (word, c) in x.iter() {
            let p = self.mul_word(start.clone(), word)?;
            for (m, d) in p.terms {
                add_into(ctx, &mut out.terms, m, ctx.mul(c, &d));
            }
        }
        Ok(out)
    }

    /// The operator of a word combination in the polynomial representation,
    /// evaluated along the prefix tree of its words.
    pub fn to_operator(&self, x: &AlgElement) -> Result<Op> {
        let words: Vec<(&[Letter], &Frac)> = x.terms.iter().map(|(w, c)| (w.as_slice(), c)).collect();
        self.trie_operator(&words, 0)
    }

    /// `Σ c · w[depth..]` for words sharing their first `depth` letters.
    fn trie_operator(&self, words: &[(&[Letter], &Frac)], depth: usize) -> Result<Op> {
        let ctx = &**self.ctx();
        let n = self.n();
        let mut parts: Vec<(Frac, Op)> = Vec::new();
        let mut start = 0;
        while start < words.len() {
            let (w, c) = words[start];
            if w.len() == depth {
                parts.push((c.clone(), Op::identity(n)));
                start += 1;
                continue;
            }
            let l = w[depth];
            let mut end = start + 1;
            while end < words.len() && words[end].0.len() > depth && words[end].0[depth] == l {
                end += 1;
            }
            let rest = self.trie_operator(&words[start..end], depth + 1)?;
            parts.push((Frac::one(), ctx.compose(&*self.gens.get(l.to_gen())?, &rest)?));
            start = end;
        }
        let refs: Vec<(Frac, &Op)> = parts.iter().map(|(c, o)| (c.clone(), o)).collect();
        ctx.linear_combine(n, &refs)
    }

    pub fn pbw_operator(&self, p: &PBWElement) -> Result<Op> {
        self.to_operator(&p.to_alg())
    }

    pub fn monomial_operator(&self, m: &PBWMonomial) -> Result<Op> {
        let gs: Vec<Gen> = m.letters().iter().map(|l| l.to_gen()).collect();
        self.gens.word(&gs)
    }

    /// Expands a word in `T_k^{±1}` in the basis `T_w`.
    pub fn hecke_normalize(&self, word: &[Letter]) -> Result<HeckeElement> {
        hecke_normalize(self.ctx(), self.n(), word)
    }
}

/// The `Y` letter to move past `e_jk` first. Letters whose rule has no
/// correction term come first; then the lowest `Y_i`, then the highest
/// `Y_i^{-1}`. Correction terms replace the chosen letter and only pass
/// strings of `T` over letters that this order has not chosen yet.
fn pick_y(yexp: &[i32], j: usize, k: usize, n: usize) -> Option<usize> {
    let clean = |l: usize| {
        let i = l + 1;
        if yexp[l] > 0 {
            i == j || (i != k && i < j)
        } else {
            i == k || (i != j && k < i) || (i == j && i == n)
        }
    };
    let present: Vec<usize> = (0..yexp.len()).filter(|&l| yexp[l] != 0).collect();
    present
        .iter()
        .copied()
        .find(|&l| clean(l))
        .or_else(|| present.iter().copied().find(|&l| yexp[l] > 0))
        .or_else(|| present.last().copied())
}

/// The next rewrite inside a block of `e` letters, as `(position, rule)`.
fn e_block_rule(es: &[(usize, usize)]) -> Option<(usize, Rule)> {
    let adj = |p: usize| ((es[p].0, es[p].1), (es[p + 1].0, es[p + 1].1));
    // Contract an adjacent pair sharing an index in opposite slots.
    for p in 0..es.len().saturating_sub(1) {
        let ((i, j), (k, l)) = adj(p);
        if i == l {
            return Some((p, Rule::SwapJ { i, j, k, l }));
        }
        if j == k {
            return Some((p, Rule::SwapI { i, j, k, l }));
        }
    }
    // Otherwise move the closest such pair together.
    let mut best: Option<(usize, usize)> = None;
    for s in 0..es.len() {
        for t in s + 2..es.len() {
            if (es[s].0 == es[t].1 || es[s].1 == es[t].0) && best.map_or(true, |(a, b)| t - s < b - a) {
                best = Some((s, t));
            }
        }
    }
    if let Some((_, t)) = best {
        let ((i, j), (k, l)) = adj(t - 1);
        return Some((t - 1, Rule::Swap { i, j, k, l }));
    }
    for p in 0..es.len().saturating_sub(1) {
        let ((i, j), (k, l)) = adj(p);
        if i > k {
            return Some((p, Rule::SwapI { i, j, k, l }));
        }
    }
    for p in 0..es.len().saturating_sub(1) {
        let ((i, j), (k, l)) = adj(p);
        if j > l {
            return Some((p, Rule::SwapJ { i, j, k, l }));
        }
    }
    None
}
