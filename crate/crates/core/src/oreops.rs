//! Skew polynomials `Σ aᵢ Eⁱ` with `E·f(v) = f(q·v)·E`.
//!
//! The shift acts on `x` (= qⁿ) for recursions in `n` and on `y` (= qᵏ)
//! for recursions in `k`.

use crate::error::{Error, Result};
use crate::exactfield::gcd::{gcd, lcm};
use crate::exactfield::parse::{eval, parse_expr, Algebra};
use crate::exactfield::{Int, MPoly, QPoly, Rat, RatFun, Var};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OreOp {
    var: Var,
    coeffs: Vec<RatFun>,
}

/// Recursion in `k`; coefficients live in `x, y` and `E_k` shifts `y`.
pub type BiOreOp = OreOp;

/// `op · J = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InhomRec {
    pub op: OreOp,
    pub rhs: RatFun,
}

/// Serialized form; expressions use the exactfield grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OreJson {
    pub order: usize,
    pub coeffs: Vec<String>,
    pub rhs: Option<String>,
}

impl OreOp {
    /// Operator in `E` acting on `x`. Trailing zero coefficients are dropped.
    pub fn new(coeffs: Vec<RatFun>) -> OreOp {
        OreOp::with_var(Var::X, coeffs)
    }

    /// Operator in `E_k` acting on `y`.
    pub fn new_k(coeffs: Vec<RatFun>) -> OreOp {
        OreOp::with_var(Var::Y, coeffs)
    }

    pub fn with_var(var: Var, mut coeffs: Vec<RatFun>) -> OreOp {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OreOp { var, coeffs }
    }

    pub fn zero(var: Var) -> OreOp {
        OreOp { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: RatFun) -> OreOp {
        OreOp::with_var(var, vec![c])
    }

    /// `E` itself.
    pub fn shift(var: Var) -> OreOp {
        OreOp::with_var(var, vec![RatFun::zero(), RatFun::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFun {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; the zero operator has order 0.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> RatFun {
        self.coeffs.last().cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn add(&self, o: &OreOp) -> OreOp {
        let n = self.coeffs.len().max(o.coeffs.len());
        OreOp::with_var(self.var, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &OreOp) -> OreOp {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> OreOp {
        OreOp { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Left multiplication by a coefficient.
    pub fn scale_left(&self, f: &RatFun) -> OreOp {
        OreOp::with_var(self.var, self.coeffs.iter().map(|c| f * c).collect())
    }

    /// Product in the skew ring.
    pub fn mul(&self, o: &OreOp) -> OreOp {
        if self.is_zero() || o.is_zero() {
            return OreOp::zero(self.var);
        }
        let mut out = vec![RatFun::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = a * &b.shift(self.var, i as i64);
                    out[i + j] = &out[i + j] + &t;
                }
            }
        }
        OreOp::with_var(self.var, out)
    }

    /// `Σ aᵢ(qⁿ)·J(n+i)` where `values[j]` is `J(n0 + j)`.
    pub fn apply(&self, values: &[QPoly], n0: i64, n: i64) -> Result<RatFun> {
        let mut acc = RatFun::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let idx = n + i as i64 - n0;
            let v = usize::try_from(idx)
                .ok()
                .and_then(|j| values.get(j))
                .ok_or_else(|| Error::Index(format!("value at index {} is not available", n + i as i64)))?;
            let c = a.at_q_pow(self.var, n)?;
            acc = &acc + &(&c * &RatFun::from_qpoly(v));
        }
        Ok(acc)
    }

    /// Clears denominators, removes the polynomial content and makes the
    /// leading coefficient's leading term positive.
    pub fn normalized(&self) -> OreOp {
        let (coeffs, _) = normalize_parts(&self.coeffs, None);
        OreOp::with_var(self.var, coeffs)
    }

    /// Divides by the leading coefficient (the `r_p = 1` form).
    pub fn monic(&self) -> Result<OreOp> {
        let l = self.leading();
        if l.is_zero() {
            return Err(Error::Normalization("zero operator".into()));
        }
        let inv = l.inv()?;
        Ok(self.scale_left(&inv))
    }

    pub fn fmt_named(&self, names: &[&str; 4]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let e = if self.var == Var::Y { "Ek" } else { "E" };
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.fmt_named(names);
            let atom = if c.num().len() > 1 || !c.is_poly() { format!("({s})") } else { s };
            let pow = if i == 1 { e.to_string() } else { format!("{e}^{i}") };
            parts.push(match i {
                0 => atom,
                _ if c.is_one() => pow,
                _ => format!("{atom}*{pow}"),
            });
        }
        parts.join(" + ")
    }

    /// LaTeX with `x` printed as `q^n`.
    pub fn to_latex(&self) -> String {
        let e = if self.var == Var::Y { "E_k" } else { "E" };
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = ratfun_latex(c);
            parts.push(match i {
                0 => format!("\\left({s}\\right)"),
                1 => format!("\\left({s}\\right){e}"),
                _ => format!("\\left({s}\\right){e}^{{{i}}}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Parses text such as `q^(3*n + 2)*(q^n - 1) + (q^(n + 1) - 1)*E`.
    pub fn parse(s: &str) -> Result<OreOp> {
        OreOp::parse_in(s, Var::X)
    }

    pub fn parse_in(s: &str, var: Var) -> Result<OreOp> {
        let e = parse_expr(s)?;
        let shift_name = if var == Var::Y { "Ek" } else { "E" };
        let lookup = |id: &str| -> Result<OreOp> {
            if id == shift_name {
                return Ok(OreOp::shift(var));
            }
            let v = match id {
                "q" => Var::Q,
                "x" => Var::X,
                "y" => Var::Y,
                "z" => Var::Z,
                _ => return Err(Error::Parse(format!("unknown symbol {id}"))),
            };
            Ok(OreOp::constant(var, RatFun::var(v)))
        };
        let op: OreOp = eval(&e, &lookup)?;
        Ok(OreOp { var, ..op })
    }

    /// Tests `self ∝ other` at the given `(q, x)` points by comparing
    /// cross products of coefficient values.
    pub fn proportional_at(&self, other: &OreOp, points: &[(Rat, Rat)]) -> Result<bool> {
        if self.order() != other.order() {
            return Ok(false);
        }
        let top = self.order();
        for (q, x) in points {
            let vals = [x.clone(), Rat::zero(), Rat::zero(), q.clone()];
            let la = self.coeffs[top].eval_rat(&vals)?;
            let lb = other.coeffs[top].eval_rat(&vals)?;
            for i in 0..top {
                let a = self.coeff(i).eval_rat(&vals)?;
                let b = other.coeff(i).eval_rat(&vals)?;
                if &a * &lb != &b * &la {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self, rhs: Option<&RatFun>) -> OreJson {
        OreJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            rhs: rhs.map(|r| r.to_string()),
        }
    }
}

/// LaTeX for a fraction in `q` and `x`, writing `x` as `q^n`.
pub fn ratfun_latex(f: &RatFun) -> String {
    let n = mpoly_latex(f.num());
    if f.is_poly() {
        return n;
    }
    format!("\\frac{{{n}}}{{{}}}", mpoly_latex(f.den()))
}

fn mpoly_latex(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        let mag = c.abs();
        let mut f = String::new();
        let (eq, ex) = (m.exp(Var::Q), m.exp(Var::X));
        if eq > 0 || ex > 0 {
            let mut e = Vec::new();
            match ex {
                0 => {}
                1 => e.push("n".to_string()),
                _ => e.push(format!("{ex}n")),
            }
            if eq > 0 {
                e.push(eq.to_string());
            }
            let ee = e.join("+");
            f.push_str(&if ee == "1" { "q".to_string() } else { format!("q^{{{ee}}}") });
        }
        for (v, name) in [(Var::Y, "q^{k}"), (Var::Z, "z")] {
            match m.exp(v) {
                0 => {}
                1 => f.push_str(name),
                e => f.push_str(&format!("({name})^{{{e}}}")),
            }
        }
        if f.is_empty() {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(&f);
        }
    }
    s
}

/// Common normalization of coefficients plus an optional right-hand side:
/// clear denominators, divide by the polynomial gcd, fix the sign.
fn normalize_parts(coeffs: &[RatFun], rhs: Option<&RatFun>) -> (Vec<RatFun>, Option<RatFun>) {
    let all: Vec<&RatFun> = coeffs.iter().chain(rhs).collect();
    let mut den = MPoly::one();
    for c in &all {
        if !c.is_zero() {
            den = lcm(&den, c.den());
        }
    }
    let cleared: Vec<MPoly> = all
        .iter()
        .map(|c| if c.is_zero() { MPoly::zero() } else { &c.num().clone() * &den.try_div(c.den()).unwrap() })
        .collect();
    let mut g = MPoly::zero();
    for p in &cleared {
        if !p.is_zero() {
            g = if g.is_zero() { p.clone() } else { gcd(&g, p) };
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return (coeffs.to_vec(), rhs.cloned());
    }
    let lead = cleared[..coeffs.len()].iter().rev().find(|p| !p.is_zero()).or(cleared.last()).unwrap();
    let q = lead.try_div(&g).unwrap();
    let sign = if q.lc().is_negative() { Int::from(-1) } else { Int::from(1) };
    let mut out: Vec<RatFun> = cleared
        .iter()
        .map(|p| if p.is_zero() { RatFun::zero() } else { RatFun::from_poly(p.try_div(&g).unwrap().scale(&sign)) })
        .collect();
    let r = rhs.map(|_| out.pop().unwrap());
    (out, r)
}

impl InhomRec {
    pub fn new(op: OreOp, rhs: RatFun) -> InhomRec {
        InhomRec { op, rhs }
    }

    pub fn order(&self) -> usize {
        self.op.order()
    }

    /// Joint normalization of operator and right-hand side.
    pub fn normalized(&self) -> InhomRec {
        let (c, r) = normalize_parts(&self.op.coeffs, Some(&self.rhs));
        InhomRec { op: OreOp::with_var(self.op.var, c), rhs: r.unwrap() }
    }

    /// `op·J(n) − rhs(qⁿ)` for `values[j] = J(n0 + j)`.
    pub fn residual(&self, values: &[QPoly], n0: i64, n: i64) -> Result<RatFun> {
        let lhs = self.op.apply(values, n0, n)?;
        Ok(&lhs - &self.rhs.at_q_pow(self.op.var, n)?)
    }

    /// Order-raising conversion to a homogeneous operator, obtained by
    /// applying `(E − 1)·(1/R)`.
    pub fn homogenize(&self) -> Result<OreOp> {
        if self.rhs.is_zero() {
            return Err(Error::AlreadyHomogeneous);
        }
        let v = self.op.var;
        let inv_r = self.rhs.inv()?;
        let scaled = self.op.scale_left(&inv_r);
        let lifted = OreOp::shift(v).mul(&scaled);
        Ok(lifted.sub(&scaled).normalized())
    }

    pub fn to_json(&self) -> OreJson {
        self.op.to_json(Some(&self.rhs))
    }

    pub fn from_json(j: &OreJson) -> Result<InhomRec> {
        let coeffs = j.coeffs.iter().map(|s| crate::exactfield::parse_ratfun(s)).collect::<Result<Vec<_>>>()?;
        let op = OreOp::new(coeffs);
        if op.order() != j.order {
            return Err(Error::Parse(format!("declared order {} but found {}", j.order, op.order())));
        }
        let rhs = match &j.rhs {
            Some(s) => crate::exactfield::parse_ratfun(s)?,
            None => RatFun::zero(),
        };
        Ok(InhomRec { op, rhs })
    }
}

impl Algebra for OreOp {
    fn from_int(c: &Int) -> Self {
        OreOp::constant(Var::X, RatFun::from_poly(MPoly::constant(c.clone())))
    }
    fn add(&self, o: &Self) -> Self {
        OreOp::add(self, &o.with_var_of(self))
    }
    fn sub(&self, o: &Self) -> Self {
        OreOp::sub(self, &o.with_var_of(self))
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = unify(self, o);
        OreOp::mul(&a, &b)
    }
    fn neg(&self) -> Self {
        OreOp::neg(self)
    }
    fn pow(&self, e: i64) -> Result<Self> {
        if self.order() == 0 {
            return Ok(OreOp::constant(self.var, self.coeff(0).pow(e)?));
        }
        if e < 0 {
            return Err(Error::Parse("negative power of a shift operator".into()));
        }
        let mut acc = OreOp::constant(self.var, RatFun::one());
        for _ in 0..e {
            acc = OreOp::mul(&acc, self);
        }
        Ok(acc)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.order() != 0 || o.is_zero() {
            return Err(Error::Parse("division by an operator".into()));
        }
        let (a, b) = unify(self, o);
        Ok(OreOp::mul(&a, &OreOp::constant(b.var, b.coeff(0).inv()?)))
    }
}

impl OreOp {
    fn with_var_of(&self, o: &OreOp) -> OreOp {
        if self.order() == 0 {
            OreOp { var: o.var, coeffs: self.coeffs.clone() }
        } else {
            self.clone()
        }
    }
}

/// Constants are parsed before the shift variable is known; adopt the
/// variable of whichever side has positive order.
fn unify(a: &OreOp, b: &OreOp) -> (OreOp, OreOp) {
    if a.order() > 0 {
        (a.clone(), b.with_var_of(a))
    } else {
        (a.with_var_of(b), b.clone())
    }
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_named(&["x", "y", "z", "q"]))
    }
}

impl fmt::Display for InhomRec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.op, self.rhs)
    }
}

impl InhomRec {
    pub fn to_latex(&self) -> String {
        format!("{} = {}", self.op.to_latex(), ratfun_latex(&self.rhs))
    }
}

impl fmt::Debug for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_ratfun;

    fn op(s: &str) -> OreOp {
        OreOp::parse(s).unwrap()
    }

    fn consts(n: usize, v: i64) -> Vec<QPoly> {
        vec![QPoly::constant(Rat::from(v)); n]
    }

    #[test]
    fn commutation_rule() {
        assert_eq!(op("E").mul(&op("x")), op("q*x*E"));
        assert_eq!(op("E + 1").mul(&op("E - 1")), op("E^2 - 1"));
        assert_eq!(op("E - x").mul(&op("E - x")), op("E^2 - (q + 1)*x*E + x^2"));
        assert_eq!(op("(E - x)^2"), op("E^2 - (q + 1)*x*E + x^2"));
    }

    #[test]
    fn apply_small() {
        assert!(op("E - 1").apply(&consts(4, 1), 0, 1).unwrap().is_zero());
        assert!(matches!(op("E^3").apply(&consts(2, 1), 0, 0), Err(Error::Index(_))));
        let pole = OreOp::new(vec![parse_ratfun("1/(x - q^2)").unwrap()]);
        assert!(matches!(pole.apply(&consts(4, 1), 0, 2), Err(Error::Pole(_))));
    }

    #[test]
    fn homogenize_small() {
        let r = InhomRec::new(op("E - 1"), RatFun::one());
        assert_eq!(r.homogenize().unwrap(), op("E^2 - 2*E + 1"));
        let z = InhomRec::new(op("E - 1"), RatFun::zero());
        assert_eq!(z.homogenize(), Err(Error::AlreadyHomogeneous));
    }

    #[test]
    fn normalization_is_up_to_units() {
        let a = op("q^(3*n + 2)*(q^n - 1) + (q^(n + 1) - 1)*E");
        let b = a.scale_left(&parse_ratfun("-(q - 1)*x^2/(q + 3)").unwrap());
        assert_eq!(a.normalized(), b.normalized());
        assert_eq!(a.normalized(), a);
    }

    #[test]
    fn json_round_trip() {
        let rec = InhomRec::new(op("q^2*x^3*(x - 1) + (q*x - 1)*E"), parse_ratfun("(q*x^2 - 1)*x").unwrap());
        let j = rec.to_json();
        assert_eq!(j.order, 1);
        let back = InhomRec::from_json(&serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(OreOp::parse(&rec.op.to_string()).unwrap(), rec.op);
    }

    #[test]
    fn k_operators() {
        let a = OreOp::parse_in("Ek - y", Var::Y).unwrap();
        assert_eq!(a.var(), Var::Y);
        assert_eq!(a.mul(&a), OreOp::parse_in("Ek^2 - (q + 1)*y*Ek + y^2", Var::Y).unwrap());
    }
}
