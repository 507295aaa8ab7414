//! Multivariate polynomial gcd over the rationals.
//!
//! Brown's dense modular algorithm: images modulo word-size primes are
//! computed by recursive evaluation/interpolation, combined by CRT, and the
//! candidate is confirmed by trial division over the integers.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::{Mono, Poly};
use crate::rational::Rat;

/// Greatest common divisor of two polynomials with non-negative exponents.
/// The result has coprime integer coefficients and a positive lex-leading
/// coefficient; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let ma = a.min_exps();
    let mb = b.min_exps();
    let m = ma.emin(&mb);
    let a1 = strip(a, &ma).primitive();
    let b1 = strip(b, &mb).primitive();
    let g = gcd_no_mono(&a1, &b1);
    if m.is_one() {
        g
    } else {
        g.mul_term(&m, &Rat::ONE)
    }
}

fn strip(p: &Poly, m: &Mono) -> Poly {
    if m.is_one() {
        p.clone()
    } else {
        p.mul_term(&m.inv(), &Rat::ONE)
    }
}

/// Both inputs integer-primitive with no monomial factor.
fn gcd_no_mono(a: &Poly, b: &Poly) -> Poly {
    if a.as_monomial().is_some() || b.as_monomial().is_some() {
        return Poly::one();
    }
    if a == b {
        return a.clone();
    }
    let (ma, mb) = (a.var_mask(), b.var_mask());
    if ma & mb == 0 {
        return Poly::one();
    }
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }
    let vars: Vec<usize> = (0..32).filter(|k| (ma | mb) >> k & 1 == 1).collect();
    modular_gcd(a, b, &vars)
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a prime p < 2^31.

fn primes() -> &'static Vec<u64> {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| {
        let mut v = Vec::new();
        let mut c: u64 = (1 << 31) - 1;
        while v.len() < 64 {
            if is_prime(c) {
                v.push(c);
            }
            c -= 2;
        }
        v
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

/// Sparse polynomial modulo p, sorted ascending by monomial, nonzero coefficients.
type MP = Vec<(Mono, u64)>;

fn mp_from_poly(a: &Poly, p: u64) -> Option<MP> {
    let mut out = Vec::with_capacity(a.len());
    for (m, c) in a.terms() {
        let v = c.residue(p)?;
        if v != 0 {
            out.push((*m, v));
        }
    }
    Some(out)
}

fn mp_sort(mut v: Vec<(Mono, u64)>, p: u64) -> MP {
    v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let mut out: MP = Vec::with_capacity(v.len());
    for (m, c) in v {
        if let Some(last) = out.last_mut() {
            if last.0 == m {
                last.1 = addm(last.1, c, p);
                continue;
            }
        }
        if out.last().map_or(false, |l| l.1 == 0) {
            out.pop();
        }
        out.push((m, c));
    }
    if out.last().map_or(false, |l| l.1 == 0) {
        out.pop();
    }
    out
}

fn mp_scale(a: &MP, c: u64, p: u64) -> MP {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|(m, x)| (*m, mulm(*x, c, p))).collect()
}

fn mp_monic(a: &MP, p: u64) -> MP {
    match a.last() {
        None => Vec::new(),
        Some((_, lc)) => mp_scale(a, invm(*lc, p), p),
    }
}

fn mp_uses(a: &MP, v: usize) -> bool {
    a.iter().any(|(m, _)| m.0[v] != 0)
}

/// Exact division test modulo p by lex-leading-term reduction.
fn mp_divides(a: &MP, d: &MP, p: u64) -> bool {
    let (lm, lc) = *d.last().unwrap();
    let li = invm(lc, p);
    let rest = &d[..d.len() - 1];
    let mut r: BTreeMap<Mono, u64> = a.iter().cloned().collect();
    while let Some((m, c)) = r.pop_last() {
        if !lm.divides(&m) {
            return false;
        }
        let qm = m.div(&lm);
        let qc = mulm(c, li, p);
        for (dm, dc) in rest {
            let key = qm.mul(dm);
            let delta = mulm(qc, *dc, p);
            let e = r.entry(key).or_insert(0);
            *e = subm(*e, delta, p);
            if *e == 0 {
                r.remove(&key);
            }
        }
    }
    true
}

// Dense univariate polynomials modulo p: index = power.

fn u_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn u_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| addm(mulm(acc, x, p), c, p))
}

fn u_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = addm(r[i + j], mulm(x, y, p), p);
        }
    }
    u_trim(r)
}

/// Quotient and remainder.
fn u_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), u_trim(r));
    }
    let li = invm(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + b.len() - 1], li, p);
        q[k] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = subm(r[k + j], mulm(c, y, p), p);
            }
        }
    }
    r.truncate(b.len() - 1);
    (u_trim(q), u_trim(r))
}

fn u_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = u_trim(a.to_vec());
    let mut y = u_trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = u_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    let li = invm(*x.last().unwrap(), p);
    x.iter().map(|&c| mulm(c, li, p)).collect()
}

/// Groups terms by the monomial in all variables but `v`, with the
/// coefficient a dense polynomial in `v`.
fn group(a: &MP, v: usize) -> BTreeMap<Mono, Vec<u64>> {
    let mut g: BTreeMap<Mono, Vec<u64>> = BTreeMap::new();
    for (m, c) in a {
        let mut mm = *m;
        let e = mm.0[v] as usize;
        mm.0[v] = 0;
        let u = g.entry(mm).or_default();
        if u.len() <= e {
            u.resize(e + 1, 0);
        }
        u[e] = *c;
    }
    g
}

fn ungroup(g: &BTreeMap<Mono, Vec<u64>>, v: usize, p: u64) -> MP {
    let mut out = Vec::new();
    for (m, u) in g {
        for (e, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut mm = *m;
                mm.0[v] = e as i16;
                out.push((mm, c));
            }
        }
    }
    mp_sort(out, p)
}

fn g_content(g: &BTreeMap<Mono, Vec<u64>>, p: u64) -> Vec<u64> {
    let mut c: Vec<u64> = Vec::new();
    for u in g.values() {
        c = if c.is_empty() { u_gcd(u, &[], p) } else { u_gcd(&c, u, p) };
        if c.len() == 1 {
            break;
        }
    }
    c
}

fn g_divide(g: &mut BTreeMap<Mono, Vec<u64>>, c: &[u64], p: u64) {
    if c.len() <= 1 {
        return;
    }
    for u in g.values_mut() {
        let (q, r) = u_divrem(u, c, p);
        debug_assert!(r.is_empty());
        *u = q;
    }
}

fn g_eval(g: &BTreeMap<Mono, Vec<u64>>, x: u64, p: u64) -> MP {
    let mut out = Vec::with_capacity(g.len());
    for (m, u) in g {
        let c = u_eval(u, x, p);
        if c != 0 {
            out.push((*m, c));
        }
    }
    out
}

/// Monic gcd modulo p of `a` and `b` in the variables `vars`.
fn pgcd(a: &MP, b: &MP, vars: &[usize], p: u64) -> MP {
    if a.is_empty() {
        return mp_monic(b, p);
    }
    if b.is_empty() {
        return mp_monic(a, p);
    }
    let vars: Vec<usize> =
        vars.iter().copied().filter(|&v| mp_uses(a, v) || mp_uses(b, v)).collect();
    if vars.is_empty() {
        return vec![(Mono::ONE, 1)];
    }
    let x = *vars.last().unwrap();
    let main = &vars[..vars.len() - 1];
    if main.is_empty() {
        let ua = group(a, x).into_values().next().unwrap_or_default();
        let ub = group(b, x).into_values().next().unwrap_or_default();
        let g = u_gcd(&ua, &ub, p);
        return g
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (Mono::var(x, e as i16), c))
            .collect();
    }
    let mut ga = group(a, x);
    let mut gb = group(b, x);
    let ca = g_content(&ga, p);
    let cb = g_content(&gb, p);
    let c = u_gcd(&ca, &cb, p);
    g_divide(&mut ga, &ca, p);
    g_divide(&mut gb, &cb, p);
    let lca = ga.values().next_back().unwrap().clone();
    let lcb = gb.values().next_back().unwrap().clone();
    let gam = u_gcd(&lca, &lcb, p);
    let deg_a = ga.values().map(|u| u.len()).max().unwrap_or(1) - 1;
    let deg_b = gb.values().map(|u| u.len()).max().unwrap_or(1) - 1;
    let limit = deg_a.min(deg_b) + gam.len().saturating_sub(1);
    let a_pp = ungroup(&ga, x, p);
    let b_pp = ungroup(&gb, x, p);

    let c_mp = |h: MP| -> MP {
        // multiply by the univariate content c(x) and normalize
        let mut out = Vec::new();
        for (m, v) in &h {
            for (e, &ce) in c.iter().enumerate() {
                if ce != 0 {
                    let mut mm = *m;
                    mm.0[x] += e as i16;
                    out.push((mm, mulm(*v, ce, p)));
                }
            }
        }
        mp_monic(&mp_sort(out, p), p)
    };

    let mut h: BTreeMap<Mono, Vec<u64>> = BTreeMap::new();
    let mut lm_h: Option<Mono> = None;
    let mut qpoly: Vec<u64> = vec![1];
    let mut alpha: u64 = 1;
    loop {
        alpha += 1;
        if alpha >= p {
            panic!("modular gcd ran out of evaluation points");
        }
        let gv = u_eval(&gam, alpha, p);
        if gv == 0 {
            continue;
        }
        let aa = g_eval(&ga, alpha, p);
        let bb = g_eval(&gb, alpha, p);
        let ci = pgcd(&aa, &bb, main, p);
        let (lm, _) = *ci.last().unwrap();
        if lm.is_one() {
            return c_mp(vec![(Mono::ONE, 1)]);
        }
        let ci = mp_scale(&ci, gv, p);
        match lm_h {
            Some(cur) if lm > cur => continue,
            Some(cur) if lm == cur => {
                // Newton step: h += (ci - h(alpha)) * q / q(alpha)
                let qa = invm(u_eval(&qpoly, alpha, p), p);
                let mut keys: Vec<Mono> = h.keys().copied().collect();
                for (m, _) in &ci {
                    keys.push(*m);
                }
                keys.sort_unstable();
                keys.dedup();
                let cmap: BTreeMap<Mono, u64> = ci.iter().cloned().collect();
                for k in keys {
                    let hu = h.entry(k).or_default();
                    let hv = u_eval(hu, alpha, p);
                    let target = cmap.get(&k).copied().unwrap_or(0);
                    let delta = mulm(subm(target, hv, p), qa, p);
                    if delta != 0 {
                        let add = u_mul(&qpoly, &[delta], p);
                        if hu.len() < add.len() {
                            hu.resize(add.len(), 0);
                        }
                        for (e, &cc) in add.iter().enumerate() {
                            hu[e] = addm(hu[e], cc, p);
                        }
                        *hu = u_trim(std::mem::take(hu));
                    }
                }
                h.retain(|_, u| !u.is_empty());
                qpoly = u_mul(&qpoly, &[p - alpha, 1], p);
            }
            _ => {
                h = ci.iter().map(|(m, c)| (*m, vec![*c])).collect();
                lm_h = Some(lm);
                qpoly = vec![p - alpha, 1];
            }
        }
        if qpoly.len() - 1 > limit {
            let mut hh = h.clone();
            let cont = g_content(&hh, p);
            g_divide(&mut hh, &cont, p);
            let cand = ungroup(&hh, x, p);
            if mp_divides(&a_pp, &cand, p) && mp_divides(&b_pp, &cand, p) {
                return c_mp(cand);
            }
        }
    }
}

fn lead_int(a: &Poly) -> BigInt {
    a.lead().unwrap().1.numer()
}

fn modular_gcd(a: &Poly, b: &Poly, vars: &[usize]) -> Poly {
    let gamma = lead_int(a).gcd(&lead_int(b));
    let mut acc: Option<(Mono, BTreeMap<Mono, BigInt>, BigInt)> = None;
    let mut last_candidate: Option<Poly> = None;
    for &p in primes() {
        let (ap, bp) = match (mp_from_poly(a, p), mp_from_poly(b, p)) {
            (Some(x), Some(y)) => (x, y),
            _ => continue,
        };
        // Degree-preserving reduction only.
        if ap.last().map(|t| t.0) != a.lead().map(|t| t.0)
            || bp.last().map(|t| t.0) != b.lead().map(|t| t.0)
        {
            continue;
        }
        let g = pgcd(&ap, &bp, vars, p);
        let (lm, _) = *g.last().unwrap();
        if lm.is_one() {
            return Poly::one();
        }
        let gm = gamma.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        let g = mp_scale(&g, gm, p);
        let pb = BigInt::from(p);
        acc = match acc.take() {
            Some((cur, _, _)) if lm < cur => Some((lm, to_big_map(&g), pb)),
            Some((cur, map, m)) if lm > cur => Some((cur, map, m)),
            Some((cur, map, m)) => Some((cur, crt(&map, &m, &g, p), m * &pb)),
            None => Some((lm, to_big_map(&g), pb)),
        };
        let (_, map, m) = acc.as_ref().unwrap();
        let half: BigInt = m >> 1;
        let cand = Poly::from_terms(map.iter().filter(|(_, c)| !c.is_zero()).map(|(mono, c)| {
            let s = if c > &half { c - m } else { c.clone() };
            (*mono, Rat::from_bigints(s, BigInt::one()))
        }))
        .primitive();
        if last_candidate.as_ref() == Some(&cand)
            && a.div_exact(&cand).is_some()
            && b.div_exact(&cand).is_some()
        {
            return cand;
        }
        last_candidate = Some(cand);
    }
    panic!("modular gcd exhausted its prime list");
}

fn to_big_map(g: &MP) -> BTreeMap<Mono, BigInt> {
    g.iter().map(|(m, c)| (*m, BigInt::from(*c))).collect()
}

/// Combines residues `map mod m` with `g mod p` into residues mod `m*p` in `[0, m*p)`.
fn crt(map: &BTreeMap<Mono, BigInt>, m: &BigInt, g: &MP, p: u64) -> BTreeMap<Mono, BigInt> {
    let pb = BigInt::from(p);
    let m_mod_p = m.mod_floor(&pb).to_u64().unwrap();
    let inv = BigInt::from(invm(m_mod_p, p));
    let gmap: BTreeMap<Mono, u64> = g.iter().cloned().collect();
    let mut keys: Vec<Mono> = map.keys().copied().collect();
    keys.extend(gmap.keys().copied());
    keys.sort_unstable();
    keys.dedup();
    let mut out = BTreeMap::new();
    for k in keys {
        let r1 = map.get(&k).cloned().unwrap_or_default();
        let r2 = BigInt::from(gmap.get(&k).copied().unwrap_or(0));
        // x = r1 + m * ((r2 - r1) * inv mod p)
        let t = ((&r2 - &r1) * &inv).mod_floor(&pb);
        let x = &r1 + m * t;
        out.insert(k, x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(Rat::from_int(n))
    }

    #[test]
    fn univariate() {
        let a = x(0).mul(&x(0)).sub(&c(1));
        let b = x(0).sub(&c(1));
        assert_eq!(gcd(&a, &b), b);
        let d = x(0).add(&c(2));
        assert_eq!(gcd(&a.mul(&d), &b.mul(&d).mul(&d)), b.mul(&d));
    }

    #[test]
    fn multivariate_common_factor() {
        let f = x(0).sub(&x(1).scale(&Rat::from_int(3)));
        let g1 = x(2).add(&x(0).mul(&x(1)));
        let g2 = x(2).mul(&x(2)).sub(&x(1));
        let a = f.mul(&g1).scale(&Rat::new(2, 3));
        let b = f.mul(&g2).mul(&x(0));
        assert_eq!(gcd(&a, &b), f.primitive());
    }

    #[test]
    fn monomial_part() {
        let a = x(0).mul(&x(0)).mul(&x(1).add(&c(1)));
        let b = x(0).mul(&x(1)).mul(&x(1).add(&c(1)));
        assert_eq!(gcd(&a, &b), x(0).mul(&x(1).add(&c(1))));
    }

    #[test]
    fn large_coefficients() {
        let big = Rat::from_int(1 << 40);
        let f = x(0).scale(&big).add(&x(1).scale(&Rat::from_int(7))).add(&c(3));
        let a = f.mul(&x(2).add(&c(5))).mul(&x(0).sub(&x(2)));
        let b = f.mul(&x(1).sub(&c(11))).mul(&f);
        assert_eq!(gcd(&a, &b), f.primitive());
    }

    #[test]
    fn coprime() {
        let a = x(0).mul(&x(1)).add(&c(1));
        let b = x(0).add(&x(1));
        assert!(gcd(&a, &b).is_one());
    }
}
