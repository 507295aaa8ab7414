//! Exact rationals with an `i64` fast path and a big-integer fallback.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A reduced rational number. Values that fit in `i64/i64` are always stored
/// in the small form, so structural equality is value equality.
#[derive(Clone)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn zero() -> Rat {
        Rat::ZERO
    }

    pub fn one() -> Rat {
        Rat::ONE
    }

    pub fn from_int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    /// Builds `n/d`; panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        if n == 0 {
            return Rat::ZERO;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::Small(a, b),
            _ => Rat::Big(Box::new(r)),
        }
    }

    pub fn from_bigints(n: BigInt, d: BigInt) -> Rat {
        assert!(!d.is_zero(), "zero denominator");
        Rat::from_big(BigRational::new(n, d))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(n, _) => n.signum() as i32,
            Rat::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Rat> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(n, d) => Some(Rat::from_i128(*d as i128, *n as i128)),
            Rat::Big(b) => Some(Rat::from_big(b.recip())),
        }
    }

    pub fn pow(&self, e: i32) -> Option<Rat> {
        if e < 0 {
            return self.inv().map(|r| r.pow_u(e.unsigned_abs()));
        }
        Some(self.pow_u(e as u32))
    }

    fn pow_u(&self, mut e: u32) -> Rat {
        let mut base = self.clone();
        let mut acc = Rat::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Returns `(numerator, denominator)` when both fit in `i64`.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self {
            Rat::Small(n, d) => Some((*n, *d)),
            Rat::Big(_) => None,
        }
    }

    /// Residue modulo a prime `p < 2^32`; `None` if `p` divides the denominator.
    pub fn residue(&self, p: u64) -> Option<u64> {
        let (n, d) = match self {
            Rat::Small(n, d) => ((*n as i128).rem_euclid(p as i128) as u64, (*d as i128).rem_euclid(p as i128) as u64),
            Rat::Big(b) => {
                let pm = BigInt::from(p);
                (b.numer().mod_floor(&pm).to_u64().unwrap(), b.denom().mod_floor(&pm).to_u64().unwrap())
            }
        };
        if d == 0 {
            return None;
        }
        let (mut base, mut e, mut inv) = (d as u128, p as u128 - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % p as u128;
            }
            base = base * base % p as u128;
            e >>= 1;
        }
        Some((n as u128 * inv % p as u128) as u64)
    }

    /// Integer gcd of numerators divided by lcm of denominators: the positive
    /// rational `g` such that every input divided by `g` is an integer and the
    /// resulting integers are coprime.
    pub fn content<'a, I: IntoIterator<Item = &'a Rat>>(items: I) -> Rat {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for r in items {
            match r {
                Rat::Small(n, d) => {
                    g = g.gcd(&BigInt::from(*n));
                    l = l.lcm(&BigInt::from(*d));
                }
                Rat::Big(b) => {
                    g = g.gcd(b.numer());
                    l = l.lcm(b.denom());
                }
            }
        }
        if g.is_zero() {
            return Rat::ONE;
        }
        Rat::from_bigints(g, l)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rat::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Rat {
        Rat::from_int(n as i64)
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rat::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let Some(s) = x.checked_add(y) {
                    return Rat::from_i128(s, b * d);
                }
            }
        }
        Rat::from_big(self.to_big() + o.to_big())
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, o: &Rat) -> Rat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rat::Small(p, 1);
                }
            }
            return Rat::from_i128((*a as i128) * (*c as i128), (*b as i128) * (*d as i128));
        }
        Rat::from_big(self.to_big() * o.to_big())
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    /// Panics on division by zero; use [`Rat::inv`] for a checked variant.
    fn div(self, o: &Rat) -> Rat {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, *d),
                None => Rat::from_big(-self.to_big()),
            },
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Rat::new(6, -4), Rat::new(-3, 2));
        assert_eq!(Rat::new(0, -5), Rat::ZERO);
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rat::from_int(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Rat::Big(_)));
        let back = &s - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(..)));
    }

    #[test]
    fn content_of_mixed() {
        let c = Rat::content(&[Rat::new(2, 3), Rat::new(4, 5)]);
        assert_eq!(c, Rat::new(2, 15));
    }
}
