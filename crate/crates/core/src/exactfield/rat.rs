use super::int::Int;
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational number `num/den` with `den > 0` and coprime parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Int,
    den: Int,
}

impl Rat {
    pub fn zero() -> Rat {
        Rat { num: Int::ZERO, den: Int::ONE }
    }

    pub fn one() -> Rat {
        Rat { num: Int::ONE, den: Int::ONE }
    }

    pub fn from_int(n: Int) -> Rat {
        Rat { num: n, den: Int::ONE }
    }

    pub fn new(num: Int, den: Int) -> Result<Rat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat::reduce(num, den))
    }

    fn reduce(mut num: Int, mut den: Int) -> Rat {
        if num.is_zero() {
            return Rat::zero();
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        Rat { num, den }
    }

    pub fn num(&self) -> &Int {
        &self.num
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn inv(&self) -> Result<Rat> {
        Rat::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Rat> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Rat { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn parse(s: &str) -> Result<Rat> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
        Rat::new(Int::from_big(n), Int::from_big(d))
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(Int::from(v))
    }
}

impl From<Int> for Rat {
    fn from(v: Int) -> Self {
        Rat::from_int(v)
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, r: &Rat) -> Rat {
        if self.den.is_one() && r.den.is_one() {
            return Rat::from_int(&self.num + &r.num);
        }
        Rat::reduce(&self.num * &r.den + &r.num * &self.den, &self.den * &r.den)
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, r: &Rat) -> Rat {
        self + &(-r)
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, r: &Rat) -> Rat {
        if self.den.is_one() && r.den.is_one() {
            return Rat::from_int(&self.num * &r.num);
        }
        Rat::reduce(&self.num * &r.num, &self.den * &r.den)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    /// Panics on division by zero; use [`Rat::inv`] for a checked variant.
    fn div(self, r: &Rat) -> Rat {
        assert!(!r.is_zero(), "rational division by zero");
        Rat::reduce(&self.num * &r.den, &self.den * &r.num)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat { num: -&self.num, den: self.den.clone() }
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
            fn $m(self, rhs: Rat) -> Rat {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
