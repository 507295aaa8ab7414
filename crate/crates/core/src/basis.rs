//! Checks on the PBW basis: linear independence in the polynomial
//! representation, the `τ = 1` slice, and the `Ỹ`-centraliser of monomials
//! in `T_w`, `X`, `D` and `Y`.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::error::{CoreError, Result};
use crate::field::{Ctx, Frac, Mode};
use crate::gens::{Gen, Gens};
use crate::group::Perm;
use crate::op::Op;
use crate::pbw::{pbw_validate, AlgElement, AlgWord, Hgl, Letter, PBWMonomial};

/// Bound on numerators and denominators of the scalars in [`pbw_rank_test`].
pub const RANK_BOUND: i64 = 50;

const P: u64 = (1 << 31) - 1;

/// Result of [`pbw_rank_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankOutcome {
    Independent,
    /// Two entries of the list coincide.
    Dependent { first: usize, second: usize },
    /// Rank below the number of monomials on this box; a larger box or
    /// another seed may still separate them.
    Inconclusive { rank: usize, columns: usize },
}

impl RankOutcome {
    pub fn is_independent(&self) -> bool {
        *self == RankOutcome::Independent
    }
}

/// Every valid PBW monomial with `e`-degree at most `max_e` and
/// `|Y`-exponents`| <= max_y`.
pub fn pbw_monomials(n: usize, max_e: u32, max_y: i32) -> Vec<PBWMonomial> {
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut eparts: Vec<Vec<(usize, usize, u32)>> = vec![Vec::new()];
    for d in 1..=max_e {
        let mut next = Vec::new();
        extend_eparts(&pairs, 0, d, &mut Vec::new(), &mut next);
        eparts.extend(next);
    }
    let mut yparts: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..n {
        yparts = yparts
            .into_iter()
            .flat_map(|v| {
                (-max_y..=max_y).map(move |m| {
                    let mut v = v.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for w in Perm::all(n) {
        for es in &eparts {
            for ys in &yparts {
                let m = PBWMonomial { w, efactors: es.clone(), yexp: ys.clone() };
                if pbw_validate(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

fn extend_eparts(
    pairs: &[(usize, usize)],
    from: usize,
    left: u32,
    cur: &mut Vec<(usize, usize, u32)>,
    out: &mut Vec<Vec<(usize, usize, u32)>>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for p in from..pairs.len() {
        for k in 1..=left {
            cur.push((pairs[p].0, pairs[p].1, k));
            extend_eparts(pairs, p + 1, left - k, cur, out);
            cur.pop();
        }
    }
}

/// Rank of the actions of `monomials` on `X^a`, `a ∈ [-degree_box, degree_box]^n`,
/// with `q, τ` drawn from `seed`. The rank is taken modulo a prime, so
/// full rank there implies full rank over the rationals.
pub fn pbw_rank_test(monomials: &[PBWMonomial], n: usize, degree_box: u32, seed: u64) -> Result<RankOutcome> {
    for m in monomials {
        if m.n() != n || !pbw_validate(m) {
            return Err(CoreError::Precondition(format!("{m} is not a PBW monomial for n = {n}")));
        }
    }
    let mut seen: FxHashMap<&PBWMonomial, usize> = FxHashMap::default();
    for (idx, m) in monomials.iter().enumerate() {
        if let Some(&first) = seen.get(m) {
            return Ok(RankOutcome::Dependent { first, second: idx });
        }
        seen.insert(m, idx);
    }
    let cols = monomials.len();
    if cols == 0 {
        return Ok(RankOutcome::Independent);
    }
    let ctx = Ctx::daha_random(n, &[], seed, RANK_BOUND, RANK_BOUND)?;
    let gens = Gens::new(ctx.clone());
    let words: Vec<AlgWord> = monomials.iter().map(|m| m.letters()).collect();
    let b = degree_box as i32;
    let mut points: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..n {
        points = points.into_iter().flat_map(|v| (-b..=b).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    points.sort_by_key(|a| (a.iter().map(|e| e.abs()).sum::<i32>(), a.clone()));
    let mut echelon = Echelon::new();
    for a in &points {
        let mut memo: FxHashMap<&[Letter], Frac> = FxHashMap::default();
        let mut rows: BTreeMap<Vec<i32>, Vec<u64>> = BTreeMap::new();
        for (c, w) in words.iter().enumerate() {
            let image = act_word(&ctx, &gens, w, &ctx.monomial(a), &mut memo)?;
            for (e, coeff) in ctx.laurent_terms(&image)? {
                let r = coeff
                    .as_constant()
                    .and_then(|r| r.residue(P))
                    .ok_or_else(|| CoreError::Precondition("coefficient not reducible mod p".into()))?;
                rows.entry(e).or_insert_with(|| vec![0; cols])[c] = r;
            }
        }
        for row in rows.into_values() {
            echelon.insert(row);
            if echelon.rank() == cols {
                return Ok(RankOutcome::Independent);
            }
        }
    }
    Ok(RankOutcome::Inconclusive { rank: echelon.rank(), columns: cols })
}

/// The image of `f` under a word, acting letter by letter from the right;
/// images of suffixes are shared through `memo`.
fn act_word<'a>(
    ctx: &Ctx,
    gens: &Gens,
    w: &'a [Letter],
    f: &Frac,
    memo: &mut FxHashMap<&'a [Letter], Frac>,
) -> Result<Frac> {
    if w.is_empty() {
        return Ok(f.clone());
    }
    if let Some(v) = memo.get(w) {
        return Ok(v.clone());
    }
    let inner = act_word(ctx, gens, &w[1..], f, memo)?;
    let out = ctx.act(&*gens.get(w[0].to_gen())?, &inner)?;
    memo.insert(w, out.clone());
    Ok(out)
}

struct Echelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        for (p, r) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + (P - c) * y) % P;
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let inv = pow_mod(v[p], P - 2);
            for x in v.iter_mut() {
                *x = *x * inv % P;
            }
            self.rows.push((p, v));
        }
    }
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % P;
        }
        a = a * a % P;
        e >>= 1;
    }
    r
}

/// Compares `x` at `τ = 1` with its reduced form read in the `τ = 1`
/// operators: `T_w → w`, `e_ij → E^q_ij`, `Y_i → t_i`. Needs exact mode.
pub fn tau_one_check(h: &Hgl, x: &AlgElement) -> Result<bool> {
    if h.ctx().mode() != Mode::Exact {
        return Err(CoreError::Precondition("the τ = 1 check needs exact mode".into()));
    }
    let n = h.n();
    let p = h.reduce(x)?;
    let ctx1 = Ctx::daha_tau_one(n, &[])?;
    let g1 = Gens::new(ctx1.clone());
    let mut x1 = AlgElement::zero(n);
    for (w, c) in &x.terms {
        let c1 = h.ctx().transfer(c, &ctx1)?;
        if !c1.is_zero() {
            x1.terms.insert(w.clone(), c1);
        }
    }
    let direct = Hgl::with_gens(Gens::new(ctx1.clone())).to_operator(&x1)?;
    let mut parts = Vec::new();
    for (m, c) in &p.terms {
        let mut factors: Vec<Op> = m
            .w
            .reduced_word(n)
            .into_iter()
            .map(|k| Op::perm(n, Perm::simple(k)))
            .collect();
        for &(i, j, k) in &m.efactors {
            for _ in 0..k {
                factors.push((*g1.get(Gen::Eq(i, j))?).clone());
            }
        }
        for (l, &e) in m.yexp.iter().enumerate() {
            let g = if e > 0 { Gen::Shift(l + 1) } else { Gen::ShiftInv(l + 1) };
            for _ in 0..e.unsigned_abs() {
                factors.push((*g1.get(g)?).clone());
            }
        }
        let refs: Vec<&Op> = factors.iter().collect();
        parts.push((h.ctx().transfer(c, &ctx1)?, ctx1.product(&refs)?));
    }
    let refs: Vec<(Frac, &Op)> = parts.iter().map(|(c, o)| (c.clone(), o)).collect();
    let via_basis = ctx1.linear_combine(n, &refs)?;
    ctx1.op_eq(&direct, &via_basis)
}

/// Result of [`centraliser_degree_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentraliserReport {
    /// Whether the monomial commutes with `Ỹ = Y_1 ⋯ Y_n`.
    pub commutes: bool,
    /// Whether `Σ mx = Σ md`.
    pub degrees_equal: bool,
}

impl CentraliserReport {
    pub fn consistent(&self) -> bool {
        self.commutes == self.degrees_equal
    }
}

/// Builds `T_w ∏X_i^{mx_i} ∏D_i^{md_i} ∏Y_i^{my_i}` and tests it against `Ỹ`.
pub fn centraliser_degree_check(gens: &Gens, mx: &[u32], md: &[u32], my: &[i32], w: Perm) -> Result<CentraliserReport> {
    let n = gens.n();
    if mx.len() != n || md.len() != n || my.len() != n {
        return Err(CoreError::SizeMismatch(n, mx.len().max(md.len()).max(my.len())));
    }
    if let Some(i) = (0..n).find(|&i| mx[i] > 0 && md[i] > 0) {
        return Err(CoreError::Precondition(format!("X_{0} and D_{0} both occur", i + 1)));
    }
    if (n..crate::group::MAX_SITES).any(|i| w.at(i) != i) {
        return Err(CoreError::IndexOutOfRange(format!("permutation {w:?} for n = {n}")));
    }
    let mut letters: Vec<Gen> = w.reduced_word(n).into_iter().map(|k| Gen::T(k + 1)).collect();
    for (i, &e) in mx.iter().enumerate() {
        letters.extend(std::iter::repeat(Gen::X(i + 1)).take(e as usize));
    }
    for (i, &e) in md.iter().enumerate() {
        letters.extend(std::iter::repeat(Gen::D(i + 1)).take(e as usize));
    }
    for (i, &e) in my.iter().enumerate() {
        let g = if e > 0 { Gen::Y(i + 1) } else { Gen::Yinv(i + 1) };
        letters.extend(std::iter::repeat(g).take(e.unsigned_abs() as usize));
    }
    let m = gens.word(&letters)?;
    let ytilde = gens.word(&(1..=n).map(Gen::Y).collect::<Vec<_>>())?;
    let commutes = gens.ctx().commutator(&ytilde, &m)?.is_zero();
    let degrees_equal = mx.iter().sum::<u32>() == md.iter().sum::<u32>();
    Ok(CentraliserReport { commutes, degrees_equal })
}
