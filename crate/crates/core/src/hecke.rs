//! The finite Hecke algebra in the basis `T_w`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{CoreError, Result};
use crate::field::{Ctx, Frac};
use crate::gens::{Gen, Gens};
use crate::group::Perm;
use crate::op::Op;
use crate::pbw::Letter;

/// `Σ c_w T_w`; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct HeckeElement {
    pub n: usize,
    pub terms: BTreeMap<Perm, Frac>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> HeckeElement {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> HeckeElement {
        let mut terms = BTreeMap::new();
        terms.insert(Perm::ID, Frac::one());
        HeckeElement { n, terms }
    }

    pub fn coeff(&self, w: &Perm) -> Option<&Frac> {
        self.terms.get(w)
    }

    fn add_term(&mut self, ctx: &Ctx, w: Perm, c: Frac) {
        add_into(ctx, &mut self.terms, w, c);
    }

    /// Right multiplication by `T_k` (1-based `k`).
    pub fn mul_t(&self, ctx: &Ctx, k: usize) -> HeckeElement {
        let d = ctx.sub(&ctx.tau(), &ctx.inv(&ctx.tau()).expect("tau is nonzero"));
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.then(&Perm::simple(k - 1));
            out.add_term(ctx, ws, c.clone());
            if w.at(k - 1) > w.at(k) {
                out.add_term(ctx, *w, ctx.mul(c, &d));
            }
        }
        out
    }

    /// Right multiplication by `T_k^{-1} = T_k + τ^{-1} - τ`.
    pub fn mul_tinv(&self, ctx: &Ctx, k: usize) -> HeckeElement {
        let d = ctx.sub(&ctx.inv(&ctx.tau()).expect("tau is nonzero"), &ctx.tau());
        let mut out = self.mul_t(ctx, k);
        for (w, c) in &self.terms {
            out.add_term(ctx, *w, ctx.mul(c, &d));
        }
        out
    }

    /// The operator `Σ c_w T_w`, with `T_w` along a reduced word.
    pub fn to_operator(&self, gens: &Gens) -> Result<Op> {
        let ctx = gens.ctx();
        let mut ops = Vec::new();
        for (w, c) in &self.terms {
            let letters: Vec<Gen> = w.reduced_word(self.n).into_iter().map(|k| Gen::T(k + 1)).collect();
            ops.push((c.clone(), gens.word(&letters)?));
        }
        let parts: Vec<(Frac, &Op)> = ops.iter().map(|(c, o)| (c.clone(), o)).collect();
        ctx.linear_combine(self.n, &parts)
    }

    pub fn to_json(&self, ctx: &Ctx) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| json!({ "w": w.images(self.n), "coeff": ctx.to_string(c) }))
            .collect();
        json!({ "n": self.n, "terms": terms })
    }
}

pub(crate) fn add_into<K: Ord>(ctx: &Ctx, map: &mut BTreeMap<K, Frac>, k: K, c: Frac) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = ctx.add(o.get(), &c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Expands a word in `T_k^{±1}` in the basis `T_w`.
pub fn hecke_normalize(ctx: &Ctx, n: usize, word: &[Letter]) -> Result<HeckeElement> {
    let mut acc = HeckeElement::one(n);
    for l in word {
        acc = match *l {
            Letter::T(k) if k >= 1 && k < n => acc.mul_t(ctx, k),
            Letter::Tinv(k) if k >= 1 && k < n => acc.mul_tinv(ctx, k),
            Letter::T(_) | Letter::Tinv(_) => {
                return Err(CoreError::IndexOutOfRange(format!("{l} for n = {n}")))
            }
            _ => return Err(CoreError::Precondition(format!("{l} is not a Hecke generator"))),
        };
    }
    Ok(acc)
}
