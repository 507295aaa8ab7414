//! Reader for rational-function text such as `(q^2 - 1)/(q*tau) + 3/2`.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/')? unary)*`,
//! `unary := '-' unary | power`, `power := primary ('^' int)?`,
//! `primary := integer | name | '(' expr ')'`. Juxtaposition multiplies.

use crate::error::ArithError;
use crate::ratfn::RatFn;
use crate::rational::Rat;
use crate::vars::VarSet;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ArithError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(s[st..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Name(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ArithError::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

/// Names of all identifiers occurring in `s`, in order of first appearance.
pub fn identifiers(s: &str) -> Result<Vec<String>, ArithError> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in lex(s)? {
        if let Tok::Name(n) = t {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

/// Parses `s` as a rational function over `vars`.
pub fn parse_ratfn(s: &str, vars: &VarSet) -> Result<RatFn, ArithError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, vars, len: s.len() };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a VarSet,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn err(&self, msg: &str) -> ArithError {
        let pos = self.toks.get(self.pos).map_or(self.len, |t| t.0);
        ArithError::Parse { pos, msg: msg.to_string() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFn, ArithError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Name(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<RatFn, ArithError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| {
                    let pos = self.toks.get(at).map_or(self.len, |t| t.0);
                    ArithError::Parse { pos, msg: "division by zero".into() }
                })?;
            } else if self.starts_primary() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn, ArithError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFn, ArithError> {
        let base = self.primary()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            let e = match self.peek() {
                Some(Tok::Int(s)) => {
                    let v: i32 = s.parse().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    v
                }
                _ => return Err(self.err("expected integer exponent")),
            };
            if paren && !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| self.err("zero raised to a negative power"));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RatFn, ArithError> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let v: i64 = s.parse().map_err(|_| self.err("integer literal too large"))?;
                Ok(RatFn::constant(self.vars, Rat::from_int(v)))
            }
            Some(Tok::Name(n)) => {
                let r = RatFn::var(self.vars, &n).map_err(|_| self.err(&format!("unknown variable `{n}`")))?;
                self.pos += 1;
                Ok(r)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let r = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(r)
            }
            _ => Err(self.err("expected a number, a variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_canonical_output_back() {
        let v = VarSet::new(["q", "tau", "X1"]).unwrap();
        let f = parse_ratfn("(q^2 - 1)/(q*tau) - 3/2*X1^-1", &v).unwrap();
        let g = parse_ratfn(&f.canonical_string(), &v).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn juxtaposition() {
        let v = VarSet::new(["q", "tau"]).unwrap();
        assert_eq!(parse_ratfn("2q tau", &v).unwrap(), parse_ratfn("2*q*tau", &v).unwrap());
    }

    #[test]
    fn errors_carry_position() {
        let v = VarSet::new(["q"]).unwrap();
        match parse_ratfn("q + r", &v) {
            Err(ArithError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
