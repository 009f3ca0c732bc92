use super::gcd::gcd;
use super::int::Int;
use super::mpoly::{MPoly, Mono, Var};
use super::qpoly::QPoly;
use super::rat::Rat;
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Canonical fraction `num/den` over ℤ[q, x, y, z].
///
/// Canonical means `gcd(num, den) = 1` (integer content included) and the
/// leading coefficient of `den` is positive, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

/// Image of a variable under substitution.
#[derive(Clone, Debug)]
pub enum Subst {
    Keep,
    /// `v -> q^shift * w`
    Mono(i64, Option<Var>),
    Value(Rat),
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> RatFun {
        RatFun { num: p, den: MPoly::one() }
    }

    pub fn from_i64(c: i64) -> RatFun {
        RatFun::from_poly(MPoly::from_i64(c))
    }

    pub fn from_rat(r: &Rat) -> RatFun {
        RatFun::new(MPoly::constant(r.num().clone()), MPoly::constant(r.den().clone())).unwrap()
    }

    pub fn var(v: Var) -> RatFun {
        RatFun::from_poly(MPoly::var(v))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> RatFun {
        let m = MPoly::var_pow(Var::Q, e.unsigned_abs() as u32);
        if e >= 0 {
            RatFun::from_poly(m)
        } else {
            RatFun { num: MPoly::one(), den: m }
        }
    }

    /// `c * q^qe * v^e` for a variable `v`, negative exponents allowed.
    pub fn monomial(c: i64, qe: i64, v: Var, e: i64) -> RatFun {
        let mut r = RatFun::q_pow(qe).scale_int(&Int::from(c));
        let m = RatFun::from_poly(MPoly::var_pow(v, e.unsigned_abs() as u32));
        r = if e >= 0 { &r * &m } else { (&r / &m).unwrap() };
        r
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::normalize(num, den))
    }

    fn normalize(num: MPoly, den: MPoly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.is_one() {
            return RatFun { num, den };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.try_div(&g).unwrap(), den.try_div(&g).unwrap()) };
        if d.lc().is_negative() {
            n = -n;
            d = -d;
        }
        RatFun { num: n, den: d }
    }

    /// Builds from parts already known to be coprime; only fixes the sign.
    fn from_coprime(mut num: MPoly, mut den: MPoly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.lc().is_negative() {
            num = -num;
            den = -den;
        }
        RatFun { num, den }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn scale_int(&self, c: &Int) -> RatFun {
        RatFun::normalize(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RatFun::from_coprime(b.num.pow(k), b.den.pow(k)))
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        Ok(self * &o.inv()?)
    }

    /// Applies a substitution to every variable simultaneously.
    pub fn subst(&self, s: &[Subst; 4]) -> Result<RatFun> {
        let mut img = [(0i64, Mono::ONE); 4];
        let mut values: Vec<(Var, Rat)> = Vec::new();
        for v in Var::ALL {
            img[v.index()] = match &s[v.index()] {
                Subst::Keep => (0, Mono::var(v, 1)),
                Subst::Mono(sh, w) => (*sh, w.map(|w| Mono::var(w, 1)).unwrap_or(Mono::ONE)),
                Subst::Value(r) => {
                    values.push((v, r.clone()));
                    (0, Mono::var(v, 1))
                }
            };
        }
        let (mut n, sn) = self.num.subst_mono(&img);
        let (mut d, sd) = self.den.subst_mono(&img);
        // n q^-sn / (d q^-sd)
        let shift = sd - sn;
        if shift > 0 {
            n = n.mul_mono(Mono::var(Var::Q, shift as u32));
        } else if shift < 0 {
            d = d.mul_mono(Mono::var(Var::Q, (-shift) as u32));
        }
        for (v, r) in values {
            let (n2, dn) = n.subst_rat(v, &r);
            let (d2, dd) = d.subst_rat(v, &r);
            // n(v=r) = n2 / den^dn, likewise for d
            let den_r = r.den().clone();
            n = n2;
            d = d2;
            if dd > dn {
                n = n.scale(&den_r.pow(dd - dn));
            } else if dn > dd {
                d = d.scale(&den_r.pow(dn - dd));
            }
        }
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator {} vanishes", self.den)));
        }
        Ok(RatFun::normalize(n, d))
    }

    /// `v -> q^s * v`.
    pub fn shift(&self, v: Var, s: i64) -> RatFun {
        if s == 0 || !self.uses(v) {
            return self.clone();
        }
        let mut sub = [Subst::Keep, Subst::Keep, Subst::Keep, Subst::Keep];
        sub[v.index()] = Subst::Mono(s, Some(v));
        self.subst(&sub).expect("monomial shifts never create poles")
    }

    /// `v -> q^e` (the sequence variable at a concrete index).
    pub fn at_q_pow(&self, v: Var, e: i64) -> Result<RatFun> {
        let mut sub = [Subst::Keep, Subst::Keep, Subst::Keep, Subst::Keep];
        sub[v.index()] = Subst::Mono(e, None);
        self.subst(&sub)
    }

    /// `v -> c` for a rational constant.
    pub fn at_value(&self, v: Var, c: &Rat) -> Result<RatFun> {
        let mut sub = [Subst::Keep, Subst::Keep, Subst::Keep, Subst::Keep];
        sub[v.index()] = Subst::Value(c.clone());
        self.subst(&sub)
    }

    /// Renames `v` to `w` (`w` must be absent).
    pub fn rename(&self, v: Var, w: Var) -> RatFun {
        let mut sub = [Subst::Keep, Subst::Keep, Subst::Keep, Subst::Keep];
        sub[v.index()] = Subst::Mono(0, Some(w));
        self.subst(&sub).unwrap()
    }

    pub fn eval_rat(&self, vals: &[Rat; 4]) -> Result<Rat> {
        let d = self.den.eval_rat(vals);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator {} vanishes", self.den)));
        }
        Ok(&self.num.eval_rat(vals) / &d)
    }

    pub fn eval_mod(&self, vals: [u64; 4], p: u64) -> Option<u64> {
        let d = self.den.eval_mod(vals, p);
        if d == 0 {
            return None;
        }
        Some(super::modp::mul(self.num.eval_mod(vals, p), super::modp::inv(d, p), p))
    }

    /// Converts a function of `q` alone whose denominator is a monomial.
    pub fn to_qpoly(&self) -> Result<QPoly> {
        for v in [Var::X, Var::Y, Var::Z] {
            if self.uses(v) {
                return Err(Error::Domain(format!("{self} is not a function of q alone")));
            }
        }
        if !self.den.is_monomial() {
            return Err(Error::Domain(format!("{self} is not a Laurent polynomial")));
        }
        let (dm, dc) = (self.den.lm(), self.den.lc().clone());
        let shift = dm.exp(Var::Q) as i64;
        let dc = Rat::from_int(dc);
        Ok(QPoly::from_terms(
            self.num.terms().iter().map(|(m, c)| (m.exp(Var::Q) as i64 - shift, &Rat::from_int(c.clone()) / &dc)),
        ))
    }

    pub fn from_qpoly(p: &QPoly) -> RatFun {
        let mut acc = RatFun::zero();
        for (e, c) in p.terms() {
            acc = &acc + &(&RatFun::from_rat(c) * &RatFun::q_pow(e));
        }
        acc
    }

    pub fn fmt_named(&self, names: &[&str; 4]) -> String {
        let n = self.num.fmt_named(names);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.fmt_named(names);
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        // a product in the denominator needs parentheses too
        let d = if d.contains(['+', '-', '*']) { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

/// `(base; q)_count` with three cases; negative counts are
/// reciprocals of `Π_{j=1}^{|count|} (1 - base q^{-j})`.
pub fn qpoch(base: &RatFun, count: i64) -> Result<RatFun> {
    let one = RatFun::one();
    if count >= 0 {
        let mut acc = RatFun::one();
        for j in 0..count {
            acc = &acc * &(&one - &(base * &RatFun::q_pow(j)));
        }
        return Ok(acc);
    }
    let mut acc = RatFun::one();
    for j in 1..=-count {
        let f = &one - &(base * &RatFun::q_pow(-j));
        if f.is_zero() {
            return Err(Error::Pole(format!("({base}; q)_{count} has the factor 1 - {base} q^-{j} = 0")));
        }
        acc = &acc * &f;
    }
    acc.inv()
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return RatFun::normalize(&self.num + &o.num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = &(&self.num * &o.den) + &(&o.num * &self.den);
            return RatFun::from_coprime(n, &self.den * &o.den);
        }
        let sd = self.den.try_div(&g).unwrap();
        let od = o.den.try_div(&g).unwrap();
        let n = &(&self.num * &od) + &(&o.num * &sd);
        if n.is_zero() {
            return RatFun::zero();
        }
        let h = gcd(&n, &g);
        let (n, g2) = if h.is_one() { (n, g) } else { (n.try_div(&h).unwrap(), g.try_div(&h).unwrap()) };
        RatFun::from_coprime(n, &(&sd * &od) * &g2)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun::from_poly(&self.num * &o.num);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let div = |a: &MPoly, g: &MPoly| if g.is_one() { a.clone() } else { a.try_div(g).unwrap() };
        let n = &div(&self.num, &g1) * &div(&o.num, &g2);
        let d = &div(&self.den, &g2) * &div(&o.den, &g1);
        RatFun::from_coprime(n, d)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Div<&RatFun> for &RatFun {
    type Output = Result<RatFun>;
    fn div(self, o: &RatFun) -> Result<RatFun> {
        RatFun::div(self, o)
    }
}

impl From<MPoly> for RatFun {
    fn from(p: MPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_named(&["x", "y", "z", "q"]))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RatFun {
        RatFun::var(Var::X)
    }
    fn q() -> RatFun {
        RatFun::var(Var::Q)
    }
    fn c(v: i64) -> RatFun {
        RatFun::from_i64(v)
    }

    #[test]
    fn normalize_cancels_common_factors() {
        let num = &(&x() * &x()) - &c(1);
        let den = &x() - &c(1);
        let r = RatFun::new(num.num().clone(), den.num().clone()).unwrap();
        assert_eq!(r, &x() + &c(1));
        let z = RatFun::new(MPoly::zero(), (&x() + &c(3)).num().clone()).unwrap();
        assert_eq!(z, RatFun::zero());
        assert_eq!(z.den(), &MPoly::one());
        let qm1 = &q() - &c(1);
        let xy = &x() * &RatFun::var(Var::Y);
        let r = RatFun::new((&qm1 * &xy).num().clone(), qm1.num().clone()).unwrap();
        assert_eq!(r, xy);
        assert!(RatFun::new(MPoly::one(), MPoly::zero()).is_err());
    }

    #[test]
    fn qpoch_cases() {
        assert_eq!(qpoch(&x(), 0).unwrap(), RatFun::one());
        let expect = &(&c(1) - &q()) * &(&c(1) - &(&q() * &q()));
        assert_eq!(qpoch(&q(), 2).unwrap(), expect);
        assert!(matches!(qpoch(&q(), -1), Err(Error::Pole(_))));
    }

    #[test]
    fn substitution() {
        let f = &x() * &q();
        let one = Rat::one();
        let r = f.subst(&[Subst::Keep, Subst::Keep, Subst::Keep, Subst::Value(one.clone())]).unwrap();
        assert_eq!(r, x());
        let g = (&c(1) / &(&q() - &c(1))).unwrap();
        assert!(matches!(g.subst(&[Subst::Keep, Subst::Keep, Subst::Keep, Subst::Value(one)]), Err(Error::Pole(_))));
        // shifting x by q^-1 on 1/(x - q) gives q/(x - q^2)
        let h = (&c(1) / &(&x() - &q())).unwrap();
        let expect = (&q() / &(&x() - &(&q() * &q()))).unwrap();
        assert_eq!(h.shift(Var::X, -1), expect);
    }

    #[test]
    fn laurent_roundtrip() {
        let r = &RatFun::q_pow(-2) + &c(3);
        let qp = r.to_qpoly().unwrap();
        assert_eq!(qp.to_string(), "q^(-2) + 3");
        assert_eq!(RatFun::from_qpoly(&qp), r);
    }
}
