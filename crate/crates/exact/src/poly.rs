//! Sparse multivariate (Laurent) polynomials over `Rat`.
//!
//! Exponent vectors have a fixed capacity of [`MAX_VARS`] slots. A `Poly` does
//! not know its variable names; callers pair it with a [`crate::VarSet`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::rational::Rat;

pub const MAX_VARS: usize = 16;

/// Exponent vector. The derived order is lexicographic with slot 0 most
/// significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [i16; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(i: usize, e: i16) -> Mono {
        let mut m = Mono::ONE;
        m.0[i] = e;
        m
    }

    pub fn from_slice(exps: &[i16]) -> Mono {
        let mut m = Mono::ONE;
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = [0i16; MAX_VARS];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = self.0[k] + o.0[k];
        }
        Mono(r)
    }

    #[inline]
    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = [0i16; MAX_VARS];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = self.0[k] - o.0[k];
        }
        Mono(r)
    }

    pub fn inv(&self) -> Mono {
        Mono::ONE.div(self)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn emin(&self, o: &Mono) -> Mono {
        let mut r = self.0;
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = (*slot).min(o.0[k]);
        }
        Mono(r)
    }

    pub fn emax(&self, o: &Mono) -> Mono {
        let mut r = self.0;
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = (*slot).max(o.0[k]);
        }
        Mono(r)
    }

    /// True when `o / self` has no negative exponent.
    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// Graded-lexicographic comparison: total degree first, then lex.
    pub fn grlex_cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.cmp(o))
    }
}

impl std::fmt::Debug for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// Sparse polynomial; terms sorted ascending by [`Mono`], no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Rat)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::ONE)
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn monomial(m: Mono, c: Rat) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Poly {
        Poly::monomial(Mono::var(i, 1), Rat::ONE)
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(it: I) -> Poly {
        let mut v: Vec<(Mono, Rat)> = it.into_iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly { terms: merge_sorted(v) }
    }

    /// Wraps terms already sorted ascending with distinct monomials and no zeros.
    pub fn from_sorted_unchecked(terms: Vec<(Mono, Rat)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Rat)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(Mono, Rat)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((*m, c.clone())),
            _ => None,
        }
    }

    /// Largest term in lex order.
    pub fn lead(&self) -> Option<&(Mono, Rat)> {
        self.terms.last()
    }

    /// Largest term in graded-lex order.
    pub fn lead_grlex(&self) -> Option<&(Mono, Rat)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(&b.0))
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(p) => self.terms[p].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    pub fn min_exps(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some(first) => it.fold(first.0, |acc, t| acc.emin(&t.0)),
        }
    }

    pub fn max_exps(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some(first) => it.fold(first.0, |acc, t| acc.emax(&t.0)),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_nonneg())
    }

    /// Bit mask of variable slots that occur with nonzero exponent.
    pub fn var_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for (k, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    mask |= 1 << k;
                }
            }
        }
        mask
    }

    pub fn degree_in(&self, v: usize) -> i16 {
        self.terms.iter().map(|t| t.0 .0[v]).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Multiplication by `c * m`; preserves order since lex is translation invariant.
    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.mul(m), if c.is_one() { a.clone() } else { a * c }))
                .collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                v.push((ma.mul(mb), ca * cb));
            }
        }
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly { terms: merge_sorted(v) }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Sum of many polynomials with a single sort.
    pub fn sum<'a, I: IntoIterator<Item = &'a Poly>>(parts: I) -> Poly {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.terms);
        }
        Poly::from_terms(v)
    }

    /// Applies `f` to every term and re-sorts.
    pub fn map_terms<F: FnMut(&Mono, &Rat) -> (Mono, Rat)>(&self, mut f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| f(m, c)))
    }

    /// Exact division; `None` if `d` does not divide `self`. Negative exponents
    /// are handled by factoring out the minimal monomials of both operands.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((m, c)) = d.as_monomial() {
            return Some(self.mul_term(&m.inv(), &c.inv().unwrap()));
        }
        let ma = self.min_exps();
        let md = d.min_exps();
        let a = if ma.is_one() { self.clone() } else { self.mul_term(&ma.inv(), &Rat::ONE) };
        let b = if md.is_one() { d.clone() } else { d.mul_term(&md.inv(), &Rat::ONE) };
        let q = a.div_exact_nonneg(&b)?;
        let shift = ma.div(&md);
        Some(if shift.is_one() { q } else { q.mul_term(&shift, &Rat::ONE) })
    }

    fn div_exact_nonneg(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.lead().unwrap().clone();
        let lc_inv = lc.inv().unwrap();
        let rest = &d.terms[..d.terms.len() - 1];
        // Quick reject on total degree in each variable.
        let (amax, dmax) = (self.max_exps(), d.max_exps());
        if !dmax.divides(&amax) {
            return None;
        }
        let mut r: BTreeMap<Mono, Rat> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((m, c)) = r.pop_last() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = &c * &lc_inv;
            for (dm, dc) in rest {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match r.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get() - &delta;
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            q.push((qm, qc));
        }
        q.reverse();
        Some(Poly { terms: q })
    }

    /// Decomposes into coefficients of powers of variable `v` (ascending powers).
    pub fn coeffs_in(&self, v: usize) -> Vec<(i16, Poly)> {
        let mut map: BTreeMap<i16, Vec<(Mono, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm.0[v];
            mm.0[v] = 0;
            map.entry(e).or_default().push((mm, c.clone()));
        }
        map.into_iter().map(|(e, t)| (e, Poly::from_terms(t))).collect()
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Rat {
        Rat::content(self.terms.iter().map(|t| &t.1))
    }

    /// Integer primitive part with positive lex-leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&c.inv().unwrap())
    }

    /// Formats with `names` for variable slots, terms in descending graded-lex order.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ts: Vec<&(Mono, Rat)> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.grlex_cmp(&a.0));
        let mut s = String::new();
        for (k, (m, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let vars = format_mono(m, names);
            if vars.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&vars);
            } else {
                let _ = write!(s, "{a}*{vars}");
            }
        }
        s
    }
}

pub fn format_mono(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names.get(k).map(String::as_str).unwrap_or("?");
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

fn merge_sorted(v: Vec<(Mono, Rat)>) -> Vec<(Mono, Rat)> {
    let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        if let Some(last) = out.last_mut() {
            if last.0 == m {
                last.1 = &last.1 + &c;
                continue;
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        out.push((m, c));
    }
    if let Some(last) = out.last() {
        if last.1.is_zero() {
            out.pop();
        }
    }
    out
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|k| format!("v{k}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn merge_drops_cancelled_terms() {
        let p = x(0).add(&x(1)).sub(&x(0));
        assert_eq!(p, x(1));
        let z = x(0).mul(&x(1)).sub(&x(1).mul(&x(0)));
        assert!(z.is_zero());
    }

    #[test]
    fn exact_division() {
        let a = x(0).sub(&x(1));
        let b = x(0).add(&x(1));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.add(&Poly::one()).div_exact(&a), None);
        let laurent = p.mul_term(&Mono::var(2, -3), &Rat::from_int(5));
        let q = laurent.div_exact(&b).unwrap();
        assert_eq!(q, a.mul_term(&Mono::var(2, -3), &Rat::from_int(5)));
    }

    #[test]
    fn grlex_format() {
        let names: Vec<String> = ["q", "tau"].iter().map(|s| s.to_string()).collect();
        let p = x(0).add(&Poly::one()).add(&x(1).mul(&x(1)).scale(&Rat::from_int(-3)));
        assert_eq!(p.format(&names), "-3*tau^2 + q + 1");
    }
}
