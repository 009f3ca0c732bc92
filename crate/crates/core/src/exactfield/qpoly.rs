use super::rat::Rat;
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial in `q` with rational coefficients, stored densely from
/// the lowest exponent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    lo: i64,
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> QPoly {
        QPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> QPoly {
        QPoly::from_dense(0, vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: Rat, e: i64) -> QPoly {
        QPoly::from_dense(e, vec![c])
    }

    pub fn q_pow(e: i64) -> QPoly {
        QPoly::monomial(Rat::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> QPoly {
        let terms: Vec<(i64, Rat)> = terms.into_iter().collect();
        if terms.is_empty() {
            return QPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = &*slot + &c;
        }
        QPoly::from_dense(lo, coeffs)
    }

    pub fn from_dense(lo: i64, mut coeffs: Vec<Rat>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return QPoly::zero();
        }
        coeffs.drain(..lead);
        QPoly { lo: lo + lead as i64, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent, `None` for zero.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Rat {
        if e < self.lo || e >= self.lo + self.coeffs.len() as i64 {
            Rat::zero()
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn len(&self) -> usize {
        self.terms().count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        QPoly::from_dense(self.lo, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, e: i64) -> QPoly {
        QPoly { lo: self.lo + e, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, q: &Rat) -> Result<Rat> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        Ok(&acc * &q.pow(self.lo)?)
    }

    /// Exact division; errors if `d` does not divide `self` in ℚ[q, 1/q].
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        let n = self.coeffs.len();
        let m = d.coeffs.len();
        if n < m {
            return Err(Error::NotDivisible);
        }
        let mut rem = self.coeffs.clone();
        let inv = d.coeffs[m - 1].inv()?;
        let mut quot = vec![Rat::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let c = &rem[i + m - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = &rem[i + j] - &(&c * dj);
                rem[i + j] = t;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(QPoly::from_dense(self.lo - d.lo, quot))
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, r: &QPoly) -> QPoly {
        if self.is_zero() {
            return r.clone();
        }
        if r.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(r.lo);
        let hi = self.degree().unwrap().max(r.degree().unwrap());
        let coeffs = (lo..=hi).map(|e| &self.coeff(e) + &r.coeff(e)).collect();
        QPoly::from_dense(lo, coeffs)
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, r: &QPoly) -> QPoly {
        self + &(-r)
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, r: &QPoly) -> QPoly {
        if self.is_zero() || r.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + r.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in r.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        QPoly::from_dense(self.lo + r.lo, out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    /// Ascending powers of `q`, e.g. `q + q^3 - q^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ if e < 0 => format!("q^({e})"),
                _ => format!("q^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(terms: &[(i64, i64)]) -> QPoly {
        QPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rat::from(c))))
    }

    #[test]
    fn display_ascending() {
        assert_eq!(qp(&[(4, -1), (1, 1), (3, 1)]).to_string(), "q + q^3 - q^4");
        assert_eq!(qp(&[(-2, 1), (0, 3)]).to_string(), "q^(-2) + 3");
    }

    #[test]
    fn laurent_division() {
        let a = qp(&[(-1, 1), (0, -1)]);
        let b = qp(&[(0, 1), (1, 1)]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(qp(&[(0, 1), (2, 1)]).div_exact(&qp(&[(0, 1), (1, 1)])).is_err());
    }

    #[test]
    fn evaluation() {
        let a = qp(&[(-1, 2), (2, 1)]);
        assert_eq!(a.eval(&Rat::from(2)).unwrap(), Rat::from(5));
    }
}
