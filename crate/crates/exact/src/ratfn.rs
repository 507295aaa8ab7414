//! Canonical rational functions over the rationals.

use std::fmt;

use crate::error::ArithError;
use crate::gcd::gcd;
use crate::poly::{Mono, Poly};
use crate::rational::Rat;
use crate::vars::VarSet;

/// A polynomial paired with its variable list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    pub vars: VarSet,
    pub poly: Poly,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.format(self.vars.names()))
    }
}

/// `num/den` with `gcd(num, den) = 1`, coprime integer coefficients overall and
/// a positive graded-lex leading coefficient in `den`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    vars: VarSet,
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn zero(vars: &VarSet) -> RatFn {
        RatFn { vars: vars.clone(), num: Poly::zero(), den: Poly::one() }
    }

    pub fn one(vars: &VarSet) -> RatFn {
        RatFn::constant(vars, Rat::ONE)
    }

    pub fn constant(vars: &VarSet, c: Rat) -> RatFn {
        RatFn::from_poly(vars, Poly::constant(c))
    }

    pub fn int(vars: &VarSet, c: i64) -> RatFn {
        RatFn::constant(vars, Rat::from_int(c))
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<RatFn, ArithError> {
        let i = vars.index(name).ok_or_else(|| ArithError::UnknownVariable(name.to_string()))?;
        Ok(RatFn::from_poly(vars, Poly::var(i)))
    }

    /// Accepts Laurent polynomials; negative exponents move to the denominator.
    pub fn from_poly(vars: &VarSet, p: Poly) -> RatFn {
        RatFn::new(vars, p, Poly::one()).expect("unit denominator")
    }

    /// Canonicalizes `num/den`. Both may carry negative exponents.
    pub fn new(vars: &VarSet, num: Poly, den: Poly) -> Result<RatFn, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn::zero(vars));
        }
        let mn = num.min_exps();
        let md = den.min_exps();
        let n1 = num.mul_term(&mn.inv(), &Rat::ONE);
        let d1 = den.mul_term(&md.inv(), &Rat::ONE);
        let (mut n2, mut d2) = if d1.as_constant().is_some() || n1.as_constant().is_some() {
            (n1, d1)
        } else {
            let g = gcd(&n1, &d1);
            if g.is_one() {
                (n1, d1)
            } else {
                (n1.div_exact(&g).expect("gcd divides"), d1.div_exact(&g).expect("gcd divides"))
            }
        };
        let shift = mn.div(&md);
        let pos = shift.emax(&Mono::ONE);
        let neg = pos.div(&shift);
        if !pos.is_one() {
            n2 = n2.mul_term(&pos, &Rat::ONE);
        }
        if !neg.is_one() {
            d2 = d2.mul_term(&neg, &Rat::ONE);
        }
        let mut c = Rat::content(n2.terms().iter().chain(d2.terms().iter()).map(|t| &t.1));
        if d2.lead_grlex().unwrap().1.is_negative() {
            c = -c;
        }
        if !c.is_one() {
            let ci = c.inv().unwrap();
            n2 = n2.scale(&ci);
            d2 = d2.scale(&ci);
        }
        Ok(RatFn { vars: vars.clone(), num: n2, den: d2 })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn numerator(&self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), poly: self.num.clone() }
    }

    pub fn denominator(&self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), poly: self.den.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n / &d)
    }

    fn check(&self, o: &RatFn) {
        assert!(self.vars == o.vars, "RatFn operands use different variable lists");
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        self.check(o);
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::new(&self.vars, self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let g = gcd(&self.den, &o.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), o.den.div_exact(&g).unwrap())
        };
        let num = self.num.mul(&db).add(&o.num.mul(&da));
        let den = self.den.mul(&db);
        RatFn::new(&self.vars, num, den).unwrap()
    }

    pub fn neg(&self) -> RatFn {
        RatFn { vars: self.vars.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        self.check(o);
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(&self.vars);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        RatFn::new(&self.vars, a.mul(&c), b.mul(&d)).unwrap()
    }

    pub fn inv(&self) -> Result<RatFn, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RatFn::new(&self.vars, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn, ArithError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFn, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFn { vars: self.vars.clone(), num: base.num.pow(k), den: base.den.pow(k) }
            .renormalized())
    }

    fn renormalized(self) -> RatFn {
        RatFn::new(&self.vars, self.num, self.den).unwrap()
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn::new(&self.vars, self.num.scale(c), self.den.clone()).unwrap()
    }

    /// Re-expresses the value over a list that contains all of its variables.
    pub fn coerce(&self, target: &VarSet) -> Result<RatFn, ArithError> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index(n).ok_or_else(|| ArithError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let re = |p: &Poly| {
            p.map_terms(|m, c| {
                let mut out = Mono::ONE;
                for (k, &e) in m.0.iter().enumerate().take(map.len()) {
                    out.0[map[k]] = e;
                }
                (out, c.clone())
            })
        };
        RatFn::new(target, re(&self.num), re(&self.den))
    }

    /// Simultaneous substitution. Every image must live over `target`; unbound
    /// variables map to the same-named variable of `target`.
    pub fn substitute(
        &self,
        bindings: &[(&str, RatFn)],
        target: &VarSet,
    ) -> Result<RatFn, ArithError> {
        let mut images: Vec<RatFn> = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            match bindings.iter().find(|(b, _)| b == name) {
                Some((_, img)) => {
                    if img.vars() != target {
                        return Err(ArithError::VarSetMismatch);
                    }
                    images.push(img.clone());
                }
                None => images.push(RatFn::var(target, name)?),
            }
        }
        let (nn, nd) = eval_poly(&self.num, &images);
        let (dn, dd) = eval_poly(&self.den, &images);
        if dn.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        RatFn::new(target, nn.mul(&dd), nd.mul(&dn))
    }

    /// Evaluates at rational points for every variable.
    pub fn eval(&self, values: &[Rat]) -> Result<Rat, ArithError> {
        let n = eval_rat(&self.num, values);
        let d = eval_rat(&self.den, values);
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(&n / &d)
    }

    pub fn canonical_string(&self) -> String {
        let names = self.vars.names();
        let num = self.num.format(names);
        if self.den.is_one() {
            return num;
        }
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        let den = self.den.format(names);
        let bare = self.den.len() == 1 && {
            let (m, c) = &self.den.terms()[0];
            m.is_one() || (c.is_one() && m.0.iter().filter(|&&e| e != 0).count() == 1)
        };
        if bare {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

/// Evaluates `p` at rational-function images, returning `(numerator, denominator)`
/// polynomials over a shared common denominator.
fn eval_poly(p: &Poly, images: &[RatFn]) -> (Poly, Poly) {
    let nv = images.len();
    let maxe = p.max_exps();
    let mut den = Poly::one();
    for (k, img) in images.iter().enumerate() {
        if maxe.0[k] > 0 {
            den = den.mul(&img.den.pow(maxe.0[k] as u32));
        }
    }
    let mut parts = Vec::with_capacity(p.len());
    let mut cache: std::collections::HashMap<(usize, i16, i16), Poly> = Default::default();
    for (m, c) in p.terms() {
        let mut t = Poly::constant(c.clone());
        for k in 0..nv {
            let e = m.0[k];
            let f = maxe.0[k];
            if f == 0 {
                continue;
            }
            let key = (k, e, f);
            let factor = cache
                .entry(key)
                .or_insert_with(|| images[k].num.pow(e as u32).mul(&images[k].den.pow((f - e) as u32)))
                .clone();
            t = t.mul(&factor);
        }
        parts.push(t);
    }
    (Poly::sum(parts.iter()), den)
}

fn eval_rat(p: &Poly, values: &[Rat]) -> Rat {
    let mut acc = Rat::ZERO;
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (k, v) in values.iter().enumerate() {
            if m.0[k] != 0 {
                t = &t * &v.pow(m.0[k] as i32).expect("nonzero base");
            }
        }
        acc = &acc + &t;
    }
    acc
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({})", self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs() -> VarSet {
        VarSet::new(["q", "tau", "X1", "X2"]).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        let v = vs();
        let q = RatFn::var(&v, "q").unwrap();
        let one = RatFn::one(&v);
        let a = q.mul(&q).sub(&one);
        let b = q.sub(&one);
        let r = a.div(&b).unwrap();
        assert_eq!(r.canonical_string(), "q + 1");
    }

    #[test]
    fn sign_and_content() {
        let v = vs();
        let q = RatFn::var(&v, "q").unwrap();
        let r = q.div(&RatFn::int(&v, -2)).unwrap();
        assert_eq!(r.canonical_string(), "-q/2");
        let half = RatFn::constant(&v, Rat::new(1, 2));
        assert_eq!(half.canonical_string(), "1/2");
    }

    #[test]
    fn laurent_input() {
        let v = vs();
        let p = Poly::var(0).sub(&Poly::monomial(Mono::var(0, -1), Rat::ONE));
        let r = RatFn::from_poly(&v, p);
        assert_eq!(r.canonical_string(), "(q^2 - 1)/q");
    }

    #[test]
    fn division_by_zero_is_error() {
        let v = vs();
        assert_eq!(RatFn::one(&v).div(&RatFn::zero(&v)), Err(ArithError::DivisionByZero));
    }
}
