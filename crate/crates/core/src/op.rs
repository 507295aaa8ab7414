//! Difference-reflection operators `Σ g_{k,w}(X) t^k w`.

use std::collections::BTreeMap;

use dahalab_exact::{Mono, Poly, Rat, RatFn};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{CoreError, Result};
use crate::field::{Ctx, Frac};
use crate::group::{Key, Perm};

/// Terms sorted by key, no zero coefficients.
#[derive(Clone, Debug, Default)]
pub struct Op {
    n: usize,
    terms: Vec<(Key, Frac)>,
}

impl Op {
    pub fn zero(n: usize) -> Op {
        Op { n, terms: Vec::new() }
    }

    pub fn identity(n: usize) -> Op {
        Op::term(n, Key::ID, Frac::one())
    }

    pub fn term(n: usize, key: Key, coeff: Frac) -> Op {
        if coeff.is_zero() {
            Op::zero(n)
        } else {
            Op { n, terms: vec![(key, coeff)] }
        }
    }

    /// Multiplication by `f`.
    pub fn mult(n: usize, f: Frac) -> Op {
        Op::term(n, Key::ID, f)
    }

    pub fn key(n: usize, key: Key) -> Op {
        Op::term(n, key, Frac::one())
    }

    pub fn perm(n: usize, p: Perm) -> Op {
        Op::key(n, Key::perm(p))
    }

    /// Builds from unsorted terms whose keys are distinct.
    pub fn from_terms(n: usize, mut terms: Vec<(Key, Frac)>) -> Op {
        terms.retain(|t| !t.1.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(terms.windows(2).all(|w| w[0].0 != w[1].0));
        Op { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Key, Frac)] {
        &self.terms
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

    pub fn coeff(&self, key: &Key) -> Option<&Frac> {
        self.terms.binary_search_by(|t| t.0.cmp(key)).ok().map(|i| &self.terms[i].1)
    }

    pub fn neg(&self) -> Op {
        Op { n: self.n, terms: self.terms.iter().map(|(k, g)| (*k, g.neg())).collect() }
    }

    pub fn scale_rat(&self, c: &Rat) -> Op {
        if c.is_zero() {
            return Op::zero(self.n);
        }
        Op { n: self.n, terms: self.terms.iter().map(|(k, g)| (*k, g.scale(c))).collect() }
    }

    /// Replaces every permutation by the identity, merging colliding shifts.
    pub fn res_keys(&self) -> Vec<(Key, Vec<&Frac>)> {
        let mut map: BTreeMap<Key, Vec<&Frac>> = BTreeMap::new();
        for (k, g) in &self.terms {
            map.entry(Key { perm: Perm::ID, shift: k.shift }).or_default().push(g);
        }
        map.into_iter().collect()
    }
}

fn check(a: &Op, b: &Op) -> Result<()> {
    if a.n != b.n {
        Err(CoreError::SizeMismatch(a.n, b.n))
    } else {
        Ok(())
    }
}

impl Ctx {
    /// `a ∘ b`: `(g₁ S₁)(g₂ S₂) = g₁ S₁⟨g₂⟩ · S₁S₂`.
    pub fn compose(&self, a: &Op, b: &Op) -> Result<Op> {
        check(a, b)?;
        let mut acc: FxHashMap<Key, Vec<Frac>> = FxHashMap::default();
        for (ka, ga) in &a.terms {
            for (kb, gb) in &b.terms {
                let g = self.mul(ga, &self.act_key(gb, ka));
                acc.entry(ka.then(kb)).or_default().push(g);
            }
        }
        Ok(self.collect(a.n, acc))
    }

    fn collect(&self, n: usize, acc: FxHashMap<Key, Vec<Frac>>) -> Op {
        let terms = acc
            .into_iter()
            .map(|(k, parts)| (k, self.sum_owned(&parts)))
            .filter(|(_, g)| !g.is_zero())
            .collect();
        Op::from_terms(n, terms)
    }

    /// Left-to-right product of several operators; the identity when empty.
    pub fn product(&self, ops: &[&Op]) -> Result<Op> {
        let Some((first, rest)) = ops.split_first() else {
            return Ok(Op::identity(self.n()));
        };
        let mut acc = (*first).clone();
        for o in rest {
            acc = self.compose(&acc, o)?;
        }
        Ok(acc)
    }

    /// `Σ c_i · op_i` with scalar (or any coefficient) multipliers on the left.
    pub fn linear_combine(&self, n: usize, parts: &[(Frac, &Op)]) -> Result<Op> {
        let mut acc: FxHashMap<Key, Vec<Frac>> = FxHashMap::default();
        for (c, op) in parts {
            if op.n != n {
                return Err(CoreError::SizeMismatch(n, op.n));
            }
            if c.is_zero() {
                continue;
            }
            for (k, g) in &op.terms {
                acc.entry(*k).or_default().push(self.mul(c, g));
            }
        }
        Ok(self.collect(n, acc))
    }

    pub fn add_ops(&self, a: &Op, b: &Op) -> Result<Op> {
        self.linear_combine(a.n, &[(Frac::one(), a), (Frac::one(), b)])
    }

    pub fn sub_ops(&self, a: &Op, b: &Op) -> Result<Op> {
        self.linear_combine(a.n, &[(Frac::one(), a), (Frac::int(-1), b)])
    }

    /// `f · op` for a coefficient `f` (multiplication operator on the left).
    pub fn scale_op(&self, f: &Frac, op: &Op) -> Op {
        if f.is_zero() {
            return Op::zero(op.n);
        }
        Op::from_terms(op.n, op.terms.iter().map(|(k, g)| (*k, self.mul(f, g))).collect())
    }

    pub fn commutator(&self, a: &Op, b: &Op) -> Result<Op> {
        let ab = self.compose(a, b)?;
        let ba = self.compose(b, a)?;
        self.sub_ops(&ab, &ba)
    }

    pub fn op_eq(&self, a: &Op, b: &Op) -> Result<bool> {
        Ok(self.sub_ops(a, b)?.is_zero())
    }

    /// Image of a Laurent polynomial; fails if denominators in the site
    /// variables survive.
    pub fn act(&self, op: &Op, f: &Frac) -> Result<Frac> {
        if !self.is_site_laurent(f) {
            return Err(CoreError::NotLaurent);
        }
        let parts: Vec<Frac> = op.terms.iter().map(|(k, g)| self.mul(g, &self.act_key(f, k))).collect();
        let out = self.sum_owned(&parts);
        if self.is_site_laurent(&out) {
            Ok(out)
        } else {
            Err(CoreError::NotLaurent)
        }
    }

    /// `Res`: drop permutations, keep shifts.
    pub fn res(&self, op: &Op) -> Op {
        let terms = op
            .res_keys()
            .into_iter()
            .map(|(k, parts)| (k, self.sum(&parts)))
            .filter(|(_, g)| !g.is_zero())
            .collect();
        Op::from_terms(op.n, terms)
    }

    /// Whether `s_k · op · s_k = op` for every simple transposition.
    pub fn is_w_invariant(&self, op: &Op) -> Result<bool> {
        for k in 0..op.n.saturating_sub(1) {
            let s = Op::perm(op.n, Perm::simple(k));
            let conj = self.product(&[&s, op, &s])?;
            if !self.op_eq(&conj, op)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Replaces every coefficient through `f` (used to move between contexts).
    pub fn map_op<F: FnMut(&Frac) -> Result<Frac>>(&self, op: &Op, mut f: F) -> Result<Op> {
        let mut terms = Vec::with_capacity(op.terms.len());
        for (k, g) in &op.terms {
            terms.push((*k, f(g)?));
        }
        Ok(Op::from_terms(op.n, terms))
    }

    /// Copies an operator into another context with the same sites,
    /// substituting scalar values where the target binds them.
    pub fn transfer_op(&self, op: &Op, target: &Ctx) -> Result<Op> {
        self.map_op(op, |g| self.transfer(g, target))
    }

    // ------------------------------------------------------------------
    // Laurent polynomials.

    /// The monomial `X^a`.
    pub fn monomial(&self, a: &[i32]) -> Frac {
        let mut m = Mono::ONE;
        for (i, &e) in a.iter().enumerate() {
            m.0[self.site_var(i)] = e as i16;
        }
        Frac::from_poly(Poly::monomial(m, Rat::ONE))
    }

    /// Splits a site-Laurent value into `(exponents, scalar coefficient)` pairs.
    pub fn laurent_terms(&self, f: &Frac) -> Result<Vec<(Vec<i32>, Frac)>> {
        if !self.is_site_laurent(f) {
            return Err(CoreError::NotLaurent);
        }
        let n = self.n();
        let mut groups: BTreeMap<Vec<i32>, Vec<(Mono, Rat)>> = BTreeMap::new();
        for (m, c) in f.num().terms() {
            let mut mm = *m;
            let mut e = vec![0; n];
            for (i, x) in e.iter_mut().enumerate() {
                *x = mm.0[self.site_var(i)] as i32;
                mm.0[self.site_var(i)] = 0;
            }
            groups.entry(e).or_default().push((mm, c.clone()));
        }
        Ok(groups
            .into_iter()
            .map(|(e, t)| (e, self.over(Poly::from_terms(t), f.den())))
            .collect())
    }

    // ------------------------------------------------------------------
    // Output.

    pub fn op_to_json(&self, op: &Op) -> Value {
        let terms: Vec<Value> = op
            .terms
            .iter()
            .map(|(k, g)| {
                json!({
                    "perm": k.perm.images(op.n),
                    "shift": k.shift[..op.n].to_vec(),
                    "coeff": self.to_string(g),
                })
            })
            .collect();
        json!({ "n": op.n, "terms": terms })
    }

    pub fn op_to_text(&self, op: &Op) -> String {
        let mut s = String::new();
        for (k, g) in &op.terms {
            s.push_str(&format!(
                "{:?} {:?}: {}\n",
                k.perm.images(op.n),
                &k.shift[..op.n],
                self.to_string(g)
            ));
        }
        if s.is_empty() {
            s.push_str("0\n");
        }
        s
    }

    /// Canonical coefficients keyed like the JSON encoding.
    pub fn op_canonical(&self, op: &Op) -> Vec<(Vec<usize>, Vec<i16>, RatFn)> {
        op.terms
            .iter()
            .map(|(k, g)| (k.perm.images(op.n), k.shift[..op.n].to_vec(), self.to_ratfn(g)))
            .collect()
    }
}
