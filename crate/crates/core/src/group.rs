//! The group ℤⁿ ⋊ 𝔖_n of shifts and permutations.
//!
//! A key `(k, w)` acts on functions by `X_i ↦ base^{k_{w(i)}} X_{w(i)}`; the
//! product is `(k1, w1)(k2, w2) = (k1 + w1·k2, w1∘w2)` with
//! `(w·k)_{w(i)} = k_i`, so that composing keys composes their actions.

use std::fmt;

use crate::error::CoreError;

pub const MAX_SITES: usize = 8;

/// A permutation of `{0..n-1}` stored as images; slots past `n` are fixed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [u8; MAX_SITES]);

impl Perm {
    pub const ID: Perm = Perm([0, 1, 2, 3, 4, 5, 6, 7]);

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm, CoreError> {
        let n = images.len();
        if n > MAX_SITES {
            return Err(CoreError::TooManySites(n));
        }
        let mut p = Perm::ID;
        let mut seen = [false; MAX_SITES];
        for (i, &im) in images.iter().enumerate() {
            if im == 0 || im > n || seen[im - 1] {
                return Err(CoreError::BadPermutation(images.to_vec()));
            }
            seen[im - 1] = true;
            p.0[i] = (im - 1) as u8;
        }
        Ok(p)
    }

    /// The simple transposition swapping sites `k` and `k+1` (0-based `k`).
    pub fn simple(k: usize) -> Perm {
        let mut p = Perm::ID;
        p.0.swap(k, k + 1);
        p
    }

    /// The cycle `(n, …, 2, 1)`: `1 ↦ n`, `i ↦ i-1`.
    pub fn cycle_down(n: usize) -> Perm {
        let mut p = Perm::ID;
        p.0[0] = (n - 1) as u8;
        for i in 1..n {
            p.0[i] = (i - 1) as u8;
        }
        p
    }

    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ o`.
    pub fn then(&self, o: &Perm) -> Perm {
        let mut r = Perm::ID;
        for i in 0..MAX_SITES {
            r.0[i] = self.0[o.0[i] as usize];
        }
        r
    }

    pub fn inverse(&self) -> Perm {
        let mut r = Perm::ID;
        for i in 0..MAX_SITES {
            r.0[self.0[i] as usize] = i as u8;
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        *self == Perm::ID
    }

    pub fn images(&self, n: usize) -> Vec<usize> {
        (0..n).map(|i| self.at(i) + 1).collect()
    }

    /// Number of inversions.
    pub fn length(&self, n: usize) -> usize {
        let mut l = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// All permutations of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            let mut p = Perm::ID;
            for (i, &c) in cur.iter().enumerate() {
                p.0[i] = c as u8;
            }
            out.push(p);
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// A reduced word `k_1 … k_l` (0-based) with `self = s_{k_1} ⋯ s_{k_l}`.
    pub fn reduced_word(&self, n: usize) -> Vec<usize> {
        // Peel descents on the right: if w(k) > w(k+1) then w = (w s_k) s_k.
        let mut w = *self;
        let mut rev = Vec::new();
        'outer: loop {
            for k in 0..n.saturating_sub(1) {
                if w.0[k] > w.0[k + 1] {
                    w = w.then(&Perm::simple(k));
                    rev.push(k);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = (0..MAX_SITES).rev().find(|&i| self.0[i] as usize != i).map_or(0, |i| i + 1);
        write!(f, "{:?}", self.images(n))
    }
}

/// A group element `t^k · w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Key {
    pub perm: Perm,
    pub shift: [i16; MAX_SITES],
}

impl Key {
    pub const ID: Key = Key { perm: Perm::ID, shift: [0; MAX_SITES] };

    pub fn perm(p: Perm) -> Key {
        Key { perm: p, shift: [0; MAX_SITES] }
    }

    pub fn shift(k: &[i16]) -> Key {
        let mut s = [0; MAX_SITES];
        s[..k.len()].copy_from_slice(k);
        Key { perm: Perm::ID, shift: s }
    }

    /// `t_i^e` for 0-based site `i`.
    pub fn unit_shift(i: usize, e: i16) -> Key {
        let mut s = [0; MAX_SITES];
        s[i] = e;
        Key { perm: Perm::ID, shift: s }
    }

    pub fn is_identity(&self) -> bool {
        *self == Key::ID
    }

    pub fn then(&self, o: &Key) -> Key {
        let mut shift = self.shift;
        for i in 0..MAX_SITES {
            shift[self.perm.at(i)] += o.shift[i];
        }
        Key { perm: self.perm.then(&o.perm), shift }
    }

    pub fn inverse(&self) -> Key {
        // (k, w)^{-1} = (-w^{-1}·k, w^{-1})
        let wi = self.perm.inverse();
        let mut shift = [0; MAX_SITES];
        for i in 0..MAX_SITES {
            shift[wi.at(i)] = -self.shift[i];
        }
        Key { perm: wi, shift }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_multiply_back() {
        for w in Perm::all(4) {
            let word = w.reduced_word(4);
            assert_eq!(word.len(), w.length(4));
            let prod = word.iter().fold(Perm::ID, |acc, &k| acc.then(&Perm::simple(k)));
            assert_eq!(prod, w);
        }
    }

    #[test]
    fn key_inverse() {
        let k = Key { perm: Perm::cycle_down(3), shift: [1, -2, 3, 0, 0, 0, 0, 0] };
        assert!(k.then(&k.inverse()).is_identity());
        assert!(k.inverse().then(&k).is_identity());
    }

    #[test]
    fn cycle_factorizations_agree() {
        // c·t_1 = t_n·c
        let n = 4;
        let c = Key::perm(Perm::cycle_down(n));
        assert_eq!(c.then(&Key::unit_shift(0, 1)), Key::unit_shift(n - 1, 1).then(&c));
    }
}
