//! Coefficient arithmetic for operators.
//!
//! A [`Frac`] is a Laurent polynomial numerator over a product of interned
//! irreducible "atoms". Atoms are primitive integer polynomials without
//! monomial factors; shifting and permuting variables maps atoms to atoms, so
//! substitution never needs a gcd and cancellation is exact division by known
//! factors. Canonical [`RatFn`] values are produced only at the output
//! boundary.

use std::sync::{Arc, Mutex, RwLock};

use dahalab_exact::{parse_ratfn, var_rank, ArithError, Mono, Poly, Rat, RatFn, VarSet, MAX_VARS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{CoreError, Result};
use crate::group::{Key, MAX_SITES};

pub type AtomId = u32;
pub type Den = SmallVec<[(AtomId, u16); 4]>;

/// `num / ∏ atom^e`, with `num` not divisible by any listed atom.
#[derive(Clone, Debug, Default)]
pub struct Frac {
    num: Poly,
    den: Den,
}

impl Frac {
    pub fn zero() -> Frac {
        Frac::default()
    }

    pub fn one() -> Frac {
        Frac::from_poly(Poly::one())
    }

    pub fn constant(c: Rat) -> Frac {
        Frac::from_poly(Poly::constant(c))
    }

    pub fn int(c: i64) -> Frac {
        Frac::constant(Rat::from_int(c))
    }

    pub fn from_poly(p: Poly) -> Frac {
        Frac { num: p, den: Den::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Den {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rat) -> Frac {
        if c.is_zero() {
            return Frac::zero();
        }
        Frac { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Frac {
        if c.is_zero() {
            return Frac::zero();
        }
        Frac { num: self.num.mul_term(m, c), den: self.den.clone() }
    }

    /// Value as a rational number, if constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() {
            if self.num.is_zero() {
                return Some(Rat::ZERO);
            }
            self.num.as_constant()
        } else {
            None
        }
    }
}

/// How a scalar symbol enters a context.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Sym,
    Val(Rat),
}

/// Exact symbolic scalars, or every scalar replaced by a seeded random rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Specialized(u64),
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Specialized(s) => write!(f, "specialized({s})"),
        }
    }
}

/// A site variable and the base of its shift: `t_i` maps it to `base^pow · X_i`.
#[derive(Clone, Debug)]
pub struct SiteSpec {
    pub name: String,
    pub base: String,
    pub base_pow: i16,
}

impl SiteSpec {
    pub fn new(name: impl Into<String>, base: impl Into<String>, base_pow: i16) -> SiteSpec {
        SiteSpec { name: name.into(), base: base.into(), base_pow }
    }
}

/// Bounds for the scalars of [`Ctx::daha`] in specialized mode.
pub const SPECIAL_NUM: i64 = 9;
pub const SPECIAL_DEN: i64 = 4;

/// A random rational `a/b` with `|a| <= bound`, `1 <= b <= den_bound`,
/// excluding `0` and `±1`.
pub fn random_scalar(rng: &mut ChaCha8Rng, bound: i64, den_bound: i64) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-bound..=bound);
        let d: i64 = rng.gen_range(1..=den_bound);
        if n == 0 {
            continue;
        }
        let r = Rat::new(n, d);
        if r.abs().is_one() {
            continue;
        }
        return r;
    }
}

const P: u64 = (1 << 31) - 1;

fn powm(mut a: u64, mut e: u64) -> u64 {
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

struct Atoms {
    polys: Vec<Arc<Poly>>,
    index: FxHashMap<Poly, AtomId>,
    has_site: Vec<bool>,
    filter: Vec<Option<(usize, Vec<u64>)>>,
    powers: FxHashMap<(AtomId, u16), Arc<Poly>>,
}

/// Variables, scalar values, shift bases and the atom table for one family
/// of operators.
pub struct Ctx {
    vars: VarSet,
    n: usize,
    site0: usize,
    mode: Mode,
    scalars: Vec<(String, Scalar)>,
    bases: Vec<(Mono, Rat)>,
    atoms: RwLock<Atoms>,
    sigma: Mutex<FxHashMap<(AtomId, Key), (Mono, Rat, AtomId)>>,
    residues: [u64; MAX_VARS],
    inv_residues: [u64; MAX_VARS],
}

impl std::fmt::Debug for Ctx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ctx").field("vars", &self.vars).field("mode", &self.mode).finish()
    }
}

impl Ctx {
    /// General constructor. Symbolic scalars become variables ordered by
    /// [`var_rank`], followed by the sites in the given order.
    pub fn new(scalars: Vec<(String, Scalar)>, sites: Vec<SiteSpec>, mode: Mode) -> Result<Arc<Ctx>> {
        if sites.len() > MAX_SITES {
            return Err(CoreError::TooManySites(sites.len()));
        }
        let mut sym: Vec<String> =
            scalars.iter().filter(|(_, s)| *s == Scalar::Sym).map(|(n, _)| n.clone()).collect();
        sym.sort_by_key(|s| var_rank(s));
        let site0 = sym.len();
        let mut names = sym;
        names.extend(sites.iter().map(|s| s.name.clone()));
        let vars = VarSet::new(names)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_da4a);
        let mut residues = [0u64; MAX_VARS];
        let mut inv_residues = [0u64; MAX_VARS];
        for k in 0..MAX_VARS {
            residues[k] = rng.gen_range(2..P - 1);
            inv_residues[k] = powm(residues[k], P - 2);
        }
        let mut ctx = Ctx {
            vars,
            n: sites.len(),
            site0,
            mode,
            scalars,
            bases: Vec::new(),
            atoms: RwLock::new(Atoms {
                polys: Vec::new(),
                index: FxHashMap::default(),
                has_site: Vec::new(),
                filter: Vec::new(),
                powers: FxHashMap::default(),
            }),
            sigma: Mutex::new(FxHashMap::default()),
            residues,
            inv_residues,
        };
        let mut bases = Vec::new();
        for s in &sites {
            let b = ctx.scalar_poly(&s.base).ok_or_else(|| {
                CoreError::BadParams(format!("unknown shift base `{}` for site {}", s.base, s.name))
            })?;
            let (m, c) = b.as_monomial().ok_or_else(|| {
                CoreError::BadParams(format!("shift base `{}` must be a monomial", s.base))
            })?;
            let e = s.base_pow;
            bases.push((mono_pow(&m, e as i32), c.pow(e as i32).ok_or(ArithError::DivisionByZero)?));
        }
        ctx.bases = bases;
        Ok(Arc::new(ctx))
    }

    /// `q`, `tau` and the named parameters, with sites `X1..Xn` shifted by `q`.
    /// In specialized mode every scalar is drawn from the seeded generator in
    /// the order `q`, `tau`, then `params`.
    pub fn daha(n: usize, params: &[&str], mode: Mode) -> Result<Arc<Ctx>> {
        match mode {
            Mode::Exact => {
                let mut names = vec!["q", "tau"];
                names.extend_from_slice(params);
                Ctx::new(names.iter().map(|s| (s.to_string(), Scalar::Sym)).collect(), x_sites(n), mode)
            }
            Mode::Specialized(seed) => Ctx::daha_random(n, params, seed, SPECIAL_NUM, SPECIAL_DEN),
        }
    }

    /// Specialized [`Ctx::daha`] with scalars drawn by [`random_scalar`]
    /// under the given bounds.
    pub fn daha_random(n: usize, params: &[&str], seed: u64, bound: i64, den_bound: i64) -> Result<Arc<Ctx>> {
        let mut names = vec!["q", "tau"];
        names.extend_from_slice(params);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scalars =
            names.iter().map(|s| (s.to_string(), Scalar::Val(random_scalar(&mut rng, bound, den_bound)))).collect();
        Ctx::new(scalars, x_sites(n), Mode::Specialized(seed))
    }

    /// The `τ = 1` slice with symbolic `q` and parameters.
    pub fn daha_tau_one(n: usize, params: &[&str]) -> Result<Arc<Ctx>> {
        let mut scalars = vec![("q".to_string(), Scalar::Sym), ("tau".to_string(), Scalar::Val(Rat::ONE))];
        scalars.extend(params.iter().map(|p| (p.to_string(), Scalar::Sym)));
        Ctx::new(scalars, x_sites(n), Mode::Exact)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    /// Number of sites.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Variable slot of 0-based site `i`.
    pub fn site_var(&self, i: usize) -> usize {
        self.site0 + i
    }

    pub fn site_names(&self) -> &[String] {
        &self.vars.names()[self.site0..]
    }

    pub fn scalar_names(&self) -> Vec<String> {
        self.scalars.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn scalar_value(&self, name: &str) -> Option<&Scalar> {
        self.scalars.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    fn scalar_poly(&self, name: &str) -> Option<Poly> {
        match self.scalar_value(name)? {
            Scalar::Sym => Some(Poly::var(self.vars.index(name)?)),
            Scalar::Val(v) => Some(Poly::constant(v.clone())),
        }
    }

    /// A scalar symbol of this context as a coefficient.
    pub fn scalar(&self, name: &str) -> Result<Frac> {
        self.scalar_poly(name)
            .map(Frac::from_poly)
            .ok_or_else(|| CoreError::Arith(ArithError::UnknownVariable(name.to_string())))
    }

    pub fn q(&self) -> Frac {
        self.scalar("q").expect("context without q")
    }

    pub fn tau(&self) -> Frac {
        self.scalar("tau").expect("context without tau")
    }

    /// The site variable `X_{i+1}` raised to `e`.
    pub fn site(&self, i: usize, e: i16) -> Frac {
        Frac::from_poly(Poly::monomial(Mono::var(self.site0 + i, e), Rat::ONE))
    }

    /// `base^e` for the shift of site `i`.
    pub fn base_power(&self, i: usize, e: i32) -> (Mono, Rat) {
        let (m, c) = &self.bases[i];
        (mono_pow(m, e), c.pow(e).expect("nonzero base"))
    }

    // ------------------------------------------------------------------
    // Atoms.

    fn atom(&self, id: AtomId) -> Arc<Poly> {
        self.atoms.read().unwrap().polys[id as usize].clone()
    }

    fn atom_has_site(&self, id: AtomId) -> bool {
        self.atoms.read().unwrap().has_site[id as usize]
    }

    fn atom_pow(&self, id: AtomId, e: u16) -> Arc<Poly> {
        if e == 1 {
            return self.atom(id);
        }
        if let Some(p) = self.atoms.read().unwrap().powers.get(&(id, e)) {
            return p.clone();
        }
        let p = Arc::new(self.atom(id).pow(e as u32));
        self.atoms.write().unwrap().powers.insert((id, e), p.clone());
        p
    }

    /// Interns a primitive, monomial-free, non-constant polynomial.
    fn intern(&self, p: Poly) -> AtomId {
        if let Some(&id) = self.atoms.read().unwrap().index.get(&p) {
            return id;
        }
        let mask = p.var_mask();
        let site_mask: u32 = ((1u32 << self.n) - 1) << self.site0;
        let filter = self.make_filter(&p);
        let mut a = self.atoms.write().unwrap();
        if let Some(&id) = a.index.get(&p) {
            return id;
        }
        let id = a.polys.len() as AtomId;
        a.polys.push(Arc::new(p.clone()));
        a.has_site.push(mask & site_mask != 0);
        a.filter.push(filter);
        a.index.insert(p, id);
        id
    }

    /// Splits `p` into a monomial unit and an interned atom.
    fn intern_irreducible(&self, p: &Poly) -> (Mono, Rat, AtomId) {
        let (m, c, prim) = normalize_atom(p);
        (m, c, self.intern(prim))
    }

    /// Factors a nonzero polynomial as `m · c · ∏ atom^e`. Univariate factors
    /// with rational roots are split off; any remaining factor is one atom.
    fn factor(&self, p: &Poly) -> (Mono, Rat, Den) {
        if let Some((m, c)) = p.as_monomial() {
            return (m, c, Den::new());
        }
        let (m, c, prim) = normalize_atom(p);
        let mut den = Den::new();
        let mut rest = prim;
        let mask = rest.var_mask();
        if mask.count_ones() == 1 {
            let v = mask.trailing_zeros() as usize;
            for lin in rational_linear_factors(&rest, v) {
                let mut k = 0u16;
                while let Some(qt) = rest.div_exact(&lin) {
                    rest = qt;
                    k += 1;
                }
                if k > 0 {
                    push_den(&mut den, self.intern(lin), k);
                }
            }
        }
        let mut c = c;
        if let Some(k) = rest.as_constant() {
            c = &c * &k;
        } else {
            let (m2, c2, prim2) = normalize_atom(&rest);
            debug_assert!(m2.is_one());
            c = &c * &c2;
            push_den(&mut den, self.intern(prim2), 1);
        }
        den.sort_unstable();
        (m, c, den)
    }

    // ------------------------------------------------------------------
    // Divisibility filter: images modulo P after fixing every variable but one.

    fn make_filter(&self, a: &Poly) -> Option<(usize, Vec<u64>)> {
        let mut best = None;
        let mut best_deg = 0;
        for v in 0..MAX_VARS {
            let d = a.degree_in(v);
            if d > best_deg {
                best_deg = d;
                best = Some(v);
            }
        }
        let v = best?;
        let mut img = self.uni_image(a, v)?;
        strip_low(&mut img);
        trim(&mut img);
        if img.len() < 2 {
            return None;
        }
        Some((v, img))
    }

    fn uni_image(&self, p: &Poly, v: usize) -> Option<Vec<u64>> {
        let lo = p.terms().iter().map(|t| t.0 .0[v]).min().unwrap_or(0);
        let hi = p.terms().iter().map(|t| t.0 .0[v]).max().unwrap_or(0);
        let mut out = vec![0u64; (hi - lo) as usize + 1];
        for (m, c) in p.terms() {
            let mut val = c.residue(P)?;
            for (u, &e) in m.0.iter().enumerate() {
                if u == v || e == 0 {
                    continue;
                }
                let r = if e > 0 { self.residues[u] } else { self.inv_residues[u] };
                val = val * powm(r, e.unsigned_abs() as u64) % P;
            }
            let k = (m.0[v] - lo) as usize;
            out[k] = (out[k] + val) % P;
        }
        Some(out)
    }

    fn may_divide(&self, num: &Poly, atom: AtomId) -> bool {
        let filter = self.atoms.read().unwrap().filter[atom as usize].clone();
        let Some((v, d)) = filter else { return true };
        let Some(mut a) = self.uni_image(num, v) else { return true };
        trim(&mut a);
        uni_rem_zero(&a, &d)
    }

    fn reduce(&self, mut num: Poly, den: Den) -> Frac {
        if num.is_zero() {
            return Frac::zero();
        }
        if den.is_empty() || num.len() == 1 {
            return Frac { num, den };
        }
        let mut out = Den::new();
        for (a, e) in den {
            let mut e = e;
            let ap = self.atom(a);
            while e > 0 && num.len() > 1 && self.may_divide(&num, a) {
                match num.div_exact(&ap) {
                    Some(qt) => {
                        num = qt;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out.push((a, e));
            }
        }
        Frac { num, den: out }
    }

    /// `num / den`, reduced.
    pub fn over(&self, num: Poly, den: &Den) -> Frac {
        self.reduce(num, den.clone())
    }

    // ------------------------------------------------------------------
    // Field operations.

    pub fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        if a.is_zero() || b.is_zero() {
            return Frac::zero();
        }
        if a.den.is_empty() && b.den.is_empty() {
            return Frac::from_poly(a.num.mul(&b.num));
        }
        let mut an = a.num.clone();
        let mut bn = b.num.clone();
        let mut den = Den::new();
        let (mut i, mut j) = (0, 0);
        // Cancel a's atoms against b's numerator and vice versa.
        while i < a.den.len() || j < b.den.len() {
            let take_a = j >= b.den.len() || (i < a.den.len() && a.den[i].0 < b.den[j].0);
            let take_b = i >= a.den.len() || (j < b.den.len() && b.den[j].0 < a.den[i].0);
            if take_a {
                let (id, e) = a.den[i];
                let left = self.cancel(&mut bn, id, e);
                if left > 0 {
                    den.push((id, left));
                }
                i += 1;
            } else if take_b {
                let (id, e) = b.den[j];
                let left = self.cancel(&mut an, id, e);
                if left > 0 {
                    den.push((id, left));
                }
                j += 1;
            } else {
                den.push((a.den[i].0, a.den[i].1 + b.den[j].1));
                i += 1;
                j += 1;
            }
        }
        Frac { num: an.mul(&bn), den }
    }

    fn cancel(&self, num: &mut Poly, id: AtomId, e: u16) -> u16 {
        if num.len() <= 1 {
            return e;
        }
        let ap = self.atom(id);
        let mut e = e;
        while e > 0 && self.may_divide(num, id) {
            match num.div_exact(&ap) {
                Some(qt) => {
                    *num = qt;
                    e -= 1;
                }
                None => break,
            }
        }
        e
    }

    pub fn add(&self, a: &Frac, b: &Frac) -> Frac {
        self.sum(&[a, b])
    }

    pub fn sub(&self, a: &Frac, b: &Frac) -> Frac {
        self.sum(&[a, &b.neg()])
    }

    pub fn sum(&self, parts: &[&Frac]) -> Frac {
        let parts: SmallVec<[&Frac; 8]> = parts.iter().copied().filter(|f| !f.is_zero()).collect();
        match parts.len() {
            0 => return Frac::zero(),
            1 => return parts[0].clone(),
            _ => {}
        }
        let first = &parts[0].den;
        if parts.iter().all(|p| &p.den == first) {
            let num = Poly::sum(parts.iter().map(|p| &p.num));
            return self.reduce(num, first.clone());
        }
        let mut den: Den = Den::new();
        for p in &parts {
            for &(id, e) in &p.den {
                match den.iter_mut().find(|x| x.0 == id) {
                    Some(x) => x.1 = x.1.max(e),
                    None => den.push((id, e)),
                }
            }
        }
        den.sort_unstable();
        let nums: Vec<Poly> = parts
            .iter()
            .map(|p| {
                let mut num = p.num.clone();
                for &(id, e) in &den {
                    let have = p.den.iter().find(|x| x.0 == id).map_or(0, |x| x.1);
                    if e > have {
                        num = num.mul(&self.atom_pow(id, e - have));
                    }
                }
                num
            })
            .collect();
        self.reduce(Poly::sum(nums.iter()), den)
    }

    pub fn sum_owned(&self, parts: &[Frac]) -> Frac {
        let refs: Vec<&Frac> = parts.iter().collect();
        self.sum(&refs)
    }

    pub fn inv(&self, a: &Frac) -> Result<Frac> {
        if a.is_zero() {
            return Err(CoreError::Arith(ArithError::DivisionByZero));
        }
        let (m, c, den) = self.factor(&a.num);
        let mut num = Poly::monomial(m.inv(), c.inv().unwrap());
        for &(id, e) in &a.den {
            num = num.mul(&self.atom_pow(id, e));
        }
        Ok(self.reduce(num, den))
    }

    pub fn div(&self, a: &Frac, b: &Frac) -> Result<Frac> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Frac, e: i32) -> Result<Frac> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = Frac::one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    pub fn equal(&self, a: &Frac, b: &Frac) -> bool {
        self.sub(a, b).is_zero()
    }

    /// True if no denominator atom involves a site variable.
    pub fn is_site_laurent(&self, a: &Frac) -> bool {
        a.den.iter().all(|&(id, _)| !self.atom_has_site(id))
    }

    /// True if neither numerator nor denominator involves a site variable.
    pub fn is_scalar(&self, a: &Frac) -> bool {
        let site_mask: u32 = ((1u32 << self.n) - 1) << self.site0;
        a.num.var_mask() & site_mask == 0 && self.is_site_laurent(a)
    }

    // ------------------------------------------------------------------
    // Shift-and-permute substitution.

    /// `(k, w)` applied to a monomial: the image monomial and scalar factor.
    pub fn key_on_mono(&self, m: &Mono, key: &Key) -> (Mono, Rat) {
        let mut out = *m;
        let mut exps = [0i32; MAX_SITES];
        let mut any = false;
        for i in 0..self.n {
            out.0[self.site0 + i] = 0;
        }
        for i in 0..self.n {
            let a = m.0[self.site0 + i];
            if a == 0 {
                continue;
            }
            let j = key.perm.at(i);
            out.0[self.site0 + j] = a;
            let k = key.shift[j];
            if k != 0 {
                exps[j] += k as i32 * a as i32;
                any = true;
            }
        }
        let mut c = Rat::ONE;
        if any {
            for (j, &e) in exps.iter().enumerate().take(self.n) {
                if e != 0 {
                    let (bm, bc) = self.base_power(j, e);
                    out = out.mul(&bm);
                    c = &c * &bc;
                }
            }
        }
        (out, c)
    }

    pub fn key_on_poly(&self, p: &Poly, key: &Key) -> Poly {
        if key.is_identity() {
            return p.clone();
        }
        p.map_terms(|m, c| {
            let (m2, k) = self.key_on_mono(m, key);
            (m2, c * &k)
        })
    }

    /// The substitution `X_i ↦ base^{k_{w(i)}} X_{w(i)}`.
    pub fn act_key(&self, f: &Frac, key: &Key) -> Frac {
        if key.is_identity() || f.is_zero() {
            return f.clone();
        }
        let mut num = self.key_on_poly(&f.num, key);
        let mut den = Den::new();
        for &(id, e) in &f.den {
            if !self.atom_has_site(id) {
                den.push((id, e));
                continue;
            }
            let hit = self.sigma.lock().unwrap().get(&(id, *key)).cloned();
            let (m, c, id2) = match hit {
                Some(h) => h,
                None => {
                    let img = self.key_on_poly(&self.atom(id), key);
                    let h = self.intern_irreducible(&img);
                    self.sigma.lock().unwrap().insert((id, *key), h.clone());
                    h
                }
            };
            // atom = m·c·atom', so 1/atom^e = (m·c)^{-e} / atom'^e
            let ei = -(e as i32);
            num = num.mul_term(&mono_pow(&m, ei), &c.pow(ei).unwrap());
            den.push((id2, e));
        }
        den.sort_unstable();
        Frac { num, den }
    }

    // ------------------------------------------------------------------
    // Conversions.

    fn expand_den(&self, den: &Den) -> Poly {
        let mut d = Poly::one();
        for &(id, e) in den {
            d = d.mul(&self.atom_pow(id, e));
        }
        d
    }

    pub fn to_ratfn(&self, f: &Frac) -> RatFn {
        RatFn::new(&self.vars, f.num.clone(), self.expand_den(&f.den)).expect("nonzero denominator")
    }

    pub fn to_string(&self, f: &Frac) -> String {
        self.to_ratfn(f).canonical_string()
    }

    /// Reads a value over any variable list whose names are scalars or sites
    /// of this context; scalars bound to numbers are substituted.
    pub fn from_ratfn(&self, r: &RatFn) -> Result<Frac> {
        let num = self.import_poly(r.num(), r.vars())?;
        let den = self.import_poly(r.den(), r.vars())?;
        if den.is_zero() {
            return Err(CoreError::Arith(ArithError::ZeroDenominator));
        }
        self.div(&Frac::from_poly(num), &Frac::from_poly(den))
    }

    /// Parses rational-function text in the scalars and sites of this context.
    pub fn parse(&self, text: &str) -> Result<Frac> {
        let mut names: Vec<String> = self.scalars.iter().map(|(n, _)| n.clone()).collect();
        names.extend(self.site_names().iter().cloned());
        let vs = VarSet::new(names)?;
        let r = parse_ratfn(text, &vs)?;
        self.from_ratfn(&r)
    }

    fn import_poly(&self, p: &Poly, vars: &VarSet) -> Result<Poly> {
        enum Slot {
            Var(usize),
            Val(Rat),
        }
        let mut slots = Vec::with_capacity(vars.len());
        for name in vars.names() {
            let s = if let Some(i) = self.vars.index(name) {
                Slot::Var(i)
            } else {
                match self.scalar_value(name) {
                    Some(Scalar::Val(v)) => Slot::Val(v.clone()),
                    _ => return Err(CoreError::Arith(ArithError::UnknownVariable(name.clone()))),
                }
            };
            slots.push(s);
        }
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut out = Mono::ONE;
            let mut coef = c.clone();
            for (k, s) in slots.iter().enumerate() {
                let e = m.0[k];
                if e == 0 {
                    continue;
                }
                match s {
                    Slot::Var(i) => out.0[*i] += e,
                    Slot::Val(v) => {
                        coef = &coef * &v.pow(e as i32).ok_or(ArithError::DivisionByZero)?;
                    }
                }
            }
            terms.push((out, coef));
        }
        Ok(Poly::from_terms(terms))
    }

    /// Substitutes numeric values for symbolic scalars, landing in `target`.
    pub fn transfer(&self, f: &Frac, target: &Ctx) -> Result<Frac> {
        let r = self.to_ratfn(f);
        target.from_ratfn(&r)
    }

    /// Evaluates every site variable at a rational point.
    pub fn eval_sites(&self, f: &Frac, at: &[Rat]) -> Result<Frac> {
        let ev = |p: &Poly| -> Poly {
            p.map_terms(|m, c| {
                let mut mm = *m;
                let mut cc = c.clone();
                for (i, v) in at.iter().enumerate() {
                    let e = mm.0[self.site0 + i];
                    if e != 0 {
                        cc = &cc * &v.pow(e as i32).unwrap();
                        mm.0[self.site0 + i] = 0;
                    }
                }
                (mm, cc)
            })
        };
        let num = ev(&f.num);
        let den = ev(&self.expand_den(&f.den));
        if den.is_zero() {
            return Err(CoreError::Arith(ArithError::ZeroDenominator));
        }
        self.div(&Frac::from_poly(num), &Frac::from_poly(den))
    }
}

fn x_sites(n: usize) -> Vec<SiteSpec> {
    (1..=n).map(|i| SiteSpec::new(format!("X{i}"), "q", 1)).collect()
}

fn push_den(den: &mut Den, id: AtomId, e: u16) {
    match den.iter_mut().find(|x| x.0 == id) {
        Some(x) => x.1 += e,
        None => den.push((id, e)),
    }
}

pub(crate) fn mono_pow(m: &Mono, e: i32) -> Mono {
    let mut out = *m;
    for x in out.0.iter_mut() {
        *x = (*x as i32 * e) as i16;
    }
    out
}

/// `p = m · c · prim` with `prim` primitive, monomial-free, positive lex lead.
fn normalize_atom(p: &Poly) -> (Mono, Rat, Poly) {
    let m = p.min_exps();
    let p1 = if m.is_one() { p.clone() } else { p.mul_term(&m.inv(), &Rat::ONE) };
    let mut c = p1.content();
    if p1.lead().unwrap().1.is_negative() {
        c = -c;
    }
    let prim = p1.scale(&c.inv().unwrap());
    (m, c, prim)
}

/// Linear factors `d·v - n` of a univariate integer polynomial with small
/// extreme coefficients.
fn rational_linear_factors(p: &Poly, v: usize) -> Vec<Poly> {
    let c0 = p.terms().first().unwrap().1.clone();
    let cn = p.lead().unwrap().1.clone();
    let (Some((a0, 1)), Some((an, 1))) = (c0.as_small(), cn.as_small()) else {
        return Vec::new();
    };
    if a0.abs() > 1_000_000 || an.abs() > 1_000_000 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for num in divisors(a0.abs()) {
        for den in divisors(an.abs()) {
            for s in [1i64, -1] {
                let r = Rat::new(s * num, den);
                if eval_uni(p, v, &r).is_zero() {
                    let (rn, rd) = r.as_small().unwrap();
                    let lin = Poly::from_terms([
                        (Mono::var(v, 1), Rat::from_int(rd)),
                        (Mono::ONE, Rat::from_int(-rn)),
                    ]);
                    let (_, _, lin) = normalize_atom(&lin);
                    if !out.contains(&lin) {
                        out.push(lin);
                    }
                }
            }
        }
    }
    out
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn eval_uni(p: &Poly, v: usize, x: &Rat) -> Rat {
    let mut acc = Rat::ZERO;
    for (m, c) in p.terms() {
        acc = &acc + &(c * &x.pow(m.0[v] as i32).unwrap());
    }
    acc
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn strip_low(a: &mut Vec<u64>) {
    let k = a.iter().position(|&x| x != 0).unwrap_or(a.len());
    a.drain(..k);
}

/// Whether `d` divides `a` modulo P; `d` has a nonzero constant term.
fn uni_rem_zero(a: &[u64], d: &[u64]) -> bool {
    if a.is_empty() {
        return true;
    }
    if a.len() < d.len() {
        return false;
    }
    let mut r = a.to_vec();
    let li = powm(*d.last().unwrap(), P - 2);
    for k in (0..=r.len() - d.len()).rev() {
        let c = r[k + d.len() - 1] * li % P;
        if c != 0 {
            for (j, &y) in d.iter().enumerate() {
                r[k + j] = (r[k + j] + P - c * y % P) % P;
            }
        }
    }
    r[..d.len() - 1].iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_through_atoms() {
        let ctx = Ctx::daha(2, &[], Mode::Exact).unwrap();
        let a = ctx.parse("(X1^2 - X2^2)/(X1 - X2)").unwrap();
        assert!(a.is_polynomial());
        assert_eq!(ctx.to_string(&a), "X1 + X2");
        let b = ctx.parse("1/(q - q^-1)").unwrap();
        assert_eq!(b.den().len(), 2);
        let c = ctx.mul(&b, &ctx.parse("q^2 - 1").unwrap());
        assert_eq!(ctx.to_string(&c), "q");
    }

    #[test]
    fn shifted_atoms() {
        let ctx = Ctx::daha(2, &[], Mode::Exact).unwrap();
        let f = ctx.parse("1/(X1*X2^-1 - 1)").unwrap();
        let k = Key::unit_shift(0, 1);
        let g = ctx.act_key(&f, &k);
        assert_eq!(ctx.to_string(&g), "X2/(q*X1 - X2)");
    }

    #[test]
    fn sums_cancel() {
        let ctx = Ctx::daha(2, &[], Mode::Exact).unwrap();
        let a = ctx.parse("X1/(X1 - X2)").unwrap();
        let b = ctx.parse("X2/(X2 - X1)").unwrap();
        let s = ctx.add(&a, &b);
        assert_eq!(ctx.to_string(&s), "1");
        assert!(s.is_polynomial());
    }

    #[test]
    fn specialized_scalars_are_numbers() {
        let ctx = Ctx::daha(2, &["a1"], Mode::Specialized(7)).unwrap();
        assert!(ctx.q().as_constant().is_some());
        assert!(ctx.scalar("a1").unwrap().as_constant().is_some());
        assert_eq!(ctx.vars().len(), 2);
    }
}
