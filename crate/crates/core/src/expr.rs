//! Text expressions over named operators.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := primary ('^' ['-'] int)?
//! primary:= atom | int | '{' ratfn '}' | '(' expr ')'
//! atom   := name ('[' int (',' int)* ']')?
//! ```
//!
//! Atom names: `T Tinv pi piinv X Xinv Y Yinv D calD e S t tinv d Eq` with
//! their usual indices, the strings `Tp Tm Tip Tim` (`T⁺ T⁻ (T⁻¹)⁺ (T⁻¹)⁻`),
//! `Rp Rm Rip Rim` (`𝓡⁺ 𝓡⁻ (𝓡⁻¹)⁺ (𝓡⁻¹)⁻`), `Yt Ytinv` (`Ỹ^{±1}`) and the
//! quantum-group images `g ginv qe qf`.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{CoreError, Result};
use crate::gens::{Gen, Gens, JsGen, StringKind};
use crate::op::Op;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub idx: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Int(u64),
    Scalar(String),
    Pow(Box<Expr>, i32),
    Prod(Vec<Expr>),
    /// Signed summands; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>),
}

fn perr(pos: usize, msg: impl Into<String>) -> CoreError {
    CoreError::BadParams(format!("parse error at {pos}: {}", msg.into()))
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if st == self.i {
            return Err(perr(st, "expected integer"));
        }
        std::str::from_utf8(&self.s[st..self.i])
            .unwrap()
            .parse()
            .map_err(|_| perr(st, "integer too large"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut parts = Vec::new();
        let neg = self.eat(b'-');
        parts.push((neg, self.term()?));
        loop {
            if self.eat(b'+') {
                parts.push((false, self.term()?));
            } else if self.eat(b'-') {
                parts.push((true, self.term()?));
            } else {
                break;
            }
        }
        if parts.len() == 1 && !parts[0].0 {
            Ok(parts.pop().unwrap().1)
        } else {
            Ok(Expr::Sum(parts))
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == b'(' || c == b'{' || c.is_ascii_alphanumeric())
    }

    fn term(&mut self) -> Result<Expr> {
        let mut fs = vec![self.factor()?];
        loop {
            if self.eat(b'*') {
                fs.push(self.factor()?);
            } else if self.starts_factor() {
                fs.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Expr::Prod(fs) })
    }

    fn factor(&mut self) -> Result<Expr> {
        let p = self.primary()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let pos = self.i;
            let k = i32::try_from(self.int()?).map_err(|_| perr(pos, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(p), if neg { -k } else { k }));
        }
        Ok(p)
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.i;
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(perr(self.i, "expected `)`"));
                }
                Ok(e)
            }
            Some(b'{') => {
                self.i += 1;
                let st = self.i;
                let mut depth = 1;
                while self.i < self.s.len() {
                    match self.s[self.i] {
                        b'{' => depth += 1,
                        b'}' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    self.i += 1;
                }
                if self.i >= self.s.len() {
                    return Err(perr(st, "unclosed `{`"));
                }
                let text = std::str::from_utf8(&self.s[st..self.i]).unwrap().trim().to_string();
                self.i += 1;
                Ok(Expr::Scalar(text))
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.int()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let st = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_alphanumeric() {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[st..self.i]).unwrap().to_string();
                let mut idx = Vec::new();
                if self.eat(b'[') {
                    idx.push(self.int()? as usize);
                    while self.eat(b',') {
                        idx.push(self.int()? as usize);
                    }
                    if !self.eat(b']') {
                        return Err(perr(self.i, "expected `]`"));
                    }
                }
                Ok(Expr::Atom(Atom { name, idx }))
            }
            _ => Err(perr(pos, "unexpected input")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { s: text.as_bytes(), i: 0 };
    let e = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(perr(p.i, "trailing input"));
    }
    Ok(e)
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.idx.is_empty() {
            let s: Vec<String> = self.idx.iter().map(|i| i.to_string()).collect();
            write!(f, "[{}]", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Int(k) => write!(f, "{k}"),
            Expr::Scalar(s) => write!(f, "{{{s}}}"),
            Expr::Pow(b, k) => match **b {
                Expr::Atom(_) | Expr::Int(_) | Expr::Scalar(_) => write!(f, "{b}^{k}"),
                _ => write!(f, "({b})^{k}"),
            },
            Expr::Prod(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    match x {
                        Expr::Sum(_) | Expr::Prod(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Expr::Sum(ps) => {
                for (i, (neg, x)) in ps.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    match x {
                        Expr::Sum(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

fn arity(a: &Atom, k: usize) -> Result<()> {
    if a.idx.len() == k {
        Ok(())
    } else {
        Err(CoreError::BadParams(format!("`{}` takes {k} indices", a.name)))
    }
}

/// The generator named by a single-letter atom, if any.
pub fn atom_gen(a: &Atom) -> Result<Option<Gen>> {
    let one = |f: fn(usize) -> Gen| -> Result<Option<Gen>> {
        arity(a, 1)?;
        Ok(Some(f(a.idx[0])))
    };
    let two = |f: fn(usize, usize) -> Gen| -> Result<Option<Gen>> {
        arity(a, 2)?;
        Ok(Some(f(a.idx[0], a.idx[1])))
    };
    match a.name.as_str() {
        "T" => one(Gen::T),
        "Tinv" => one(Gen::Tinv),
        "X" => one(Gen::X),
        "Xinv" => one(Gen::Xinv),
        "Y" => one(Gen::Y),
        "Yinv" => one(Gen::Yinv),
        "D" => one(Gen::D),
        "calD" => one(Gen::CalD),
        "t" => one(Gen::Shift),
        "tinv" => one(Gen::ShiftInv),
        "d" => one(Gen::Dq),
        "e" => two(Gen::E),
        "S" => two(Gen::Stau),
        "Eq" => two(Gen::Eq),
        "pi" => {
            arity(a, 0)?;
            Ok(Some(Gen::Pi))
        }
        "piinv" => {
            arity(a, 0)?;
            Ok(Some(Gen::PiInv))
        }
        _ => Ok(None),
    }
}

/// Name of the inverse atom, for negative powers.
fn inverse_name(name: &str) -> Option<&'static str> {
    Some(match name {
        "T" => "Tinv",
        "Tinv" => "T",
        "X" => "Xinv",
        "Xinv" => "X",
        "Y" => "Yinv",
        "Yinv" => "Y",
        "t" => "tinv",
        "tinv" => "t",
        "pi" => "piinv",
        "piinv" => "pi",
        "g" => "ginv",
        "ginv" => "g",
        "Yt" => "Ytinv",
        "Ytinv" => "Yt",
        _ => return None,
    })
}

impl Gens {
    fn eval_atom(&self, a: &Atom) -> Result<Op> {
        if let Some(g) = atom_gen(a)? {
            return Ok((*self.get(g)?).clone());
        }
        let n = self.n();
        let strings = [
            ("Tp", StringKind::Tplus),
            ("Tm", StringKind::Tminus),
            ("Tip", StringKind::TinvPlus),
            ("Tim", StringKind::TinvMinus),
        ];
        if let Some((_, k)) = strings.iter().find(|(s, _)| *s == a.name) {
            arity(a, 2)?;
            return self.string(*k, a.idx[0], a.idx[1]);
        }
        let rs = [("Rp", 1, 1), ("Rm", 1, -1), ("Rip", -1, 1), ("Rim", -1, -1)];
        if let Some((_, eps, sign)) = rs.iter().find(|(s, _, _)| *s == a.name) {
            arity(a, 2)?;
            for &i in &a.idx {
                Gen::X(i).validate(n)?;
            }
            return self.r_op(*eps, *sign, a.idx[0], a.idx[1]);
        }
        match a.name.as_str() {
            "g" | "ginv" => {
                arity(a, 1)?;
                self.js_rep(JsGen::G(a.idx[0], if a.name == "g" { 1 } else { -1 }))
            }
            "qe" => {
                arity(a, 1)?;
                self.js_rep(JsGen::E(a.idx[0]))
            }
            "qf" => {
                arity(a, 1)?;
                self.js_rep(JsGen::F(a.idx[0]))
            }
            "Yt" | "Ytinv" => {
                arity(a, 0)?;
                let letters: Vec<Gen> =
                    (1..=n).map(|i| if a.name == "Yt" { Gen::Y(i) } else { Gen::Yinv(i) }).collect();
                self.word(&letters)
            }
            _ => Err(CoreError::BadParams(format!("unknown atom `{}`", a.name))),
        }
    }

    /// Evaluates an expression to an operator.
    pub fn eval(&self, e: &Expr) -> Result<Op> {
        self.eval_memo(e, &mut None)
    }

    /// Like [`Gens::eval`], remembering products and powers in `memo`.
    pub fn eval_memo(&self, e: &Expr, memo: &mut Option<FxHashMap<String, Op>>) -> Result<Op> {
        if let (Some(m), Expr::Prod(_) | Expr::Pow(..)) = (memo.as_ref(), e) {
            if let Some(op) = m.get(&e.to_string()) {
                return Ok(op.clone());
            }
        }
        let out = self.eval_uncached(e, memo)?;
        if let (Some(m), Expr::Prod(_) | Expr::Pow(..)) = (memo.as_mut(), e) {
            m.insert(e.to_string(), out.clone());
        }
        Ok(out)
    }

    fn eval_uncached(&self, e: &Expr, memo: &mut Option<FxHashMap<String, Op>>) -> Result<Op> {
        let ctx = self.ctx();
        let n = self.n();
        match e {
            Expr::Atom(a) => self.eval_atom(a),
            Expr::Int(k) => Ok(Op::mult(n, crate::field::Frac::int(*k as i64))),
            Expr::Scalar(s) => Ok(Op::mult(n, ctx.parse(s)?)),
            Expr::Pow(b, k) => {
                let base = if *k >= 0 {
                    self.eval_memo(b, memo)?
                } else {
                    match &**b {
                        Expr::Atom(a) => {
                            let inv = inverse_name(&a.name).ok_or_else(|| {
                                CoreError::BadParams(format!("`{}` has no inverse atom", a.name))
                            })?;
                            self.eval_atom(&Atom { name: inv.to_string(), idx: a.idx.clone() })?
                        }
                        Expr::Int(_) | Expr::Scalar(_) => {
                            let v = self.eval_memo(b, memo)?;
                            let c = v.coeff(&crate::group::Key::ID).cloned().unwrap_or_default();
                            Op::mult(n, ctx.inv(&c)?)
                        }
                        _ => {
                            return Err(CoreError::BadParams(
                                "negative powers only apply to atoms and scalars".into(),
                            ))
                        }
                    }
                };
                let mut acc = Op::identity(n);
                for _ in 0..k.unsigned_abs() {
                    acc = ctx.compose(&acc, &base)?;
                }
                Ok(acc)
            }
            Expr::Prod(fs) => {
                let mut acc = Op::identity(n);
                for f in fs {
                    acc = ctx.compose(&acc, &self.eval_memo(f, memo)?)?;
                }
                Ok(acc)
            }
            Expr::Sum(ps) => {
                let vals: Vec<(bool, Op)> =
                    ps.iter().map(|(s, x)| Ok((*s, self.eval_memo(x, memo)?))).collect::<Result<_>>()?;
                let parts: Vec<(crate::field::Frac, &Op)> = vals
                    .iter()
                    .map(|(s, o)| (crate::field::Frac::int(if *s { -1 } else { 1 }), o))
                    .collect();
                ctx.linear_combine(n, &parts)
            }
        }
    }

    /// Parses and evaluates.
    pub fn eval_str(&self, text: &str) -> Result<Op> {
        self.eval(&parse_expr(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "T[1] Y[2]^-1 + {q-1} e[1,2]",
            "-(X[1] + X[2])^2 - 3 Tp[1,2]",
            "Yt Ytinv",
            "{(q^2-1)/tau} (Y[1] - Yinv[1])",
        ] {
            let e = parse_expr(s).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e, "{s} -> {printed}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("T[1").is_err());
        assert!(parse_expr("T[1] +").is_err());
        assert!(parse_expr("{q").is_err());
    }
}
