use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision integer with an inline `i64` fast path.
///
/// The `Big` variant is only used for values outside the `i64` range, so
/// derived equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let g = gcd_u64(a.unsigned_abs(), b.unsigned_abs());
                if g <= i64::MAX as u64 {
                    Int::Small(g as i64)
                } else {
                    Int::Big(BigInt::from(g))
                }
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Exact division; panics in debug builds if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => {
                debug_assert!(*b != 0 && a % b == 0);
                match a.checked_div(*b) {
                    Some(v) => Int::Small(v),
                    None => Int::from_big(BigInt::from(*a) / BigInt::from(*b)),
                }
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&d.to_big());
                debug_assert!(r.is_zero());
                Int::from_big(q)
            }
        }
    }

    /// Truncated quotient and remainder.
    pub fn div_rem(&self, d: &Int) -> (Int, Int) {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => (Int::Small(a / b), Int::Small(a % b)),
            _ => {
                let (q, r) = self.to_big().div_rem(&d.to_big());
                (Int::from_big(q), Int::from_big(r))
            }
        }
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn pow(&self, e: u32) -> Int {
        if let Int::Small(v) = self {
            if let Some(r) = v.checked_pow(e) {
                return Int::Small(r);
            }
        }
        Int::from_big(num_traits::pow(self.to_big(), e as usize))
    }

    /// Residue in `[0, p)`.
    pub fn rem_u64(&self, p: u64) -> u64 {
        match self {
            Int::Small(v) => v.rem_euclid(p as i64) as u64,
            Int::Big(b) => {
                let r = b.mod_floor(&BigInt::from(p));
                r.to_u64().unwrap()
            }
        }
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            return Int::from_i128(*a as i128 * *b as i128);
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &Int) -> Int {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow() {
        let a = Int::from(i64::MAX);
        let s = &a + &Int::ONE;
        assert!(matches!(s, Int::Big(_)));
        assert_eq!(&s - &Int::ONE, a);
        let p = &a * &a;
        assert_eq!(p.div_exact(&a), a);
    }

    #[test]
    fn gcd_and_division() {
        assert_eq!(Int::from(12).gcd(&Int::from(-18)), Int::from(6));
        assert_eq!(Int::from(-7).rem_u64(5), 3);
        let big = Int::from(3).pow(60);
        assert_eq!(big.gcd(&Int::from(81)), Int::from(81));
        assert_eq!(Int::from(i64::MIN).div_rem(&Int::from(-1)).0, -Int::from(i64::MIN));
    }
}
