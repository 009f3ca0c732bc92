use super::int::Int;
use super::modp;
use super::rat::Rat;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Variables of the polynomial ring ℤ[q, x, y, z]; `x` stands for qⁿ and `y`
/// for qᵏ, `z` is a spare slot (generating-function variable, ansatz shifts).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    Q,
}

impl Var {
    /// Most significant first; this is the lex order of monomials.
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::Q];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    fn shift(self) -> u32 {
        48 - 16 * self as u32
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::Q => "q",
        }
    }
}

pub const MAX_EXP: u32 = 0xFFFF;

/// Packed exponent vector, 16 bits per variable; integer order is lex x > y > z > q.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub u64);

#[allow(clippy::should_implement_trait)]
impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(e: [u32; 4]) -> Mono {
        let mut m = 0u64;
        for v in Var::ALL {
            let ev = e[v.index()];
            assert!(ev <= MAX_EXP, "exponent overflow");
            m |= (ev as u64) << v.shift();
        }
        Mono(m)
    }

    pub fn var(v: Var, e: u32) -> Mono {
        let mut ex = [0; 4];
        ex[v.index()] = e;
        Mono::from_exps(ex)
    }

    #[inline]
    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> v.shift()) & 0xFFFF) as u32
    }

    pub fn exps(self) -> [u32; 4] {
        [self.exp(Var::X), self.exp(Var::Y), self.exp(Var::Z), self.exp(Var::Q)]
    }

    pub fn with_exp(self, v: Var, e: u32) -> Mono {
        assert!(e <= MAX_EXP, "exponent overflow");
        Mono((self.0 & !(0xFFFFu64 << v.shift())) | ((e as u64) << v.shift()))
    }

    /// Product; caller guarantees no field overflows.
    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        debug_assert!(Var::ALL.iter().all(|&v| self.exp(v) + o.exp(v) <= MAX_EXP));
        Mono(self.0 + o.0)
    }

    #[inline]
    pub fn divides(self, o: Mono) -> bool {
        Var::ALL.iter().all(|&v| self.exp(v) <= o.exp(v))
    }

    #[inline]
    pub fn div(self, d: Mono) -> Mono {
        debug_assert!(d.divides(self));
        Mono(self.0 - d.0)
    }

    pub fn total_degree(self) -> u32 {
        Var::ALL.iter().map(|&v| self.exp(v)).sum()
    }

    pub fn min(self, o: Mono) -> Mono {
        let mut e = [0; 4];
        for v in Var::ALL {
            e[v.index()] = self.exp(v).min(o.exp(v));
        }
        Mono::from_exps(e)
    }

    pub fn without(self, v: Var) -> Mono {
        self.with_exp(v, 0)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

/// Sparse polynomial in ℤ[q, x, y, z], terms sorted by strictly decreasing monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Mono, Int)>,
}

const DENSE_CELLS: usize = 1 << 22;

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn from_i64(c: i64) -> MPoly {
        MPoly::constant(Int::from(c))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::monomial(Mono::var(v, 1), Int::ONE)
    }

    pub fn var_pow(v: Var, e: u32) -> MPoly {
        MPoly::monomial(Mono::var(v, e), Int::ONE)
    }

    pub fn monomial(m: Mono, c: Int) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Int)>>(it: I) -> MPoly {
        let mut v: Vec<(Mono, Int)> = it.into_iter().collect();
        v.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Mono, Int)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Int> {
        if self.is_zero() {
            Some(Int::ZERO)
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub fn lc(&self) -> &Int {
        &self.terms[0].1
    }

    pub fn coeff_of(&self, m: Mono) -> Int {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).min().unwrap_or(0)
    }

    pub fn degrees(&self) -> [u32; 4] {
        let mut d = [0; 4];
        for (m, _) in &self.terms {
            for v in Var::ALL {
                d[v.index()] = d[v.index()].max(m.exp(v));
            }
        }
        d
    }

    pub fn min_degrees(&self) -> [u32; 4] {
        if self.is_zero() {
            return [0; 4];
        }
        let mut d = [u32::MAX; 4];
        for (m, _) in &self.terms {
            for v in Var::ALL {
                d[v.index()] = d[v.index()].min(m.exp(v));
            }
        }
        d
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    pub fn all_small(&self) -> bool {
        self.terms.iter().all(|t| matches!(t.1, Int::Small(_)))
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|t| t.1.bits()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Int) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_mono(&self, m: Mono) -> MPoly {
        let d = self.degrees();
        for v in Var::ALL {
            assert!(d[v.index()] + m.exp(v) <= MAX_EXP, "exponent overflow");
        }
        MPoly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn mul_term(&self, m: Mono, c: &Int) -> MPoly {
        self.mul_mono(m).scale(c)
    }

    /// Divides every monomial by `m`, which must divide all of them.
    pub fn div_mono(&self, m: Mono) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(a, c)| (a.div(m), c.clone())).collect() }
    }

    /// Gcd of the monomials (componentwise minimum exponent).
    pub fn mono_content(&self) -> Mono {
        Mono::from_exps(self.min_degrees())
    }

    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the integer content and makes the leading coefficient positive.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_int(&g)
    }

    pub fn div_int(&self, c: &Int) -> MPoly {
        if c.is_one() {
            return self.clone();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (*m, a.div_exact(c))).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut r = MPoly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    fn add_sub(&self, o: &MPoly, negate: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MPoly { terms: out }
    }

    fn mul_impl(&self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        let (da, db) = (self.degrees(), o.degrees());
        let (la, lb) = (self.min_degrees(), o.min_degrees());
        let mut dims = [0usize; 4];
        let mut cells: usize = 1;
        for v in Var::ALL {
            let i = v.index();
            assert!(da[i] + db[i] <= MAX_EXP, "exponent overflow in product");
            dims[i] = (da[i] + db[i] - la[i] - lb[i] + 1) as usize;
            cells = cells.saturating_mul(dims[i]);
        }
        let work = self.terms.len().saturating_mul(o.terms.len());
        if self.all_small() && o.all_small() && cells <= DENSE_CELLS && cells <= 16 * work {
            if let Some(p) = self.mul_dense(o, dims, la, lb) {
                return p;
            }
        }
        let mut acc: HashMap<Mono, Int> = HashMap::with_capacity(self.len() + o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let e = acc.entry(ma.mul(*mb)).or_insert(Int::ZERO);
                *e = &*e + &(ca * cb);
            }
        }
        MPoly::from_terms(acc)
    }

    fn mul_dense(&self, o: &MPoly, dims: [usize; 4], la: [u32; 4], lb: [u32; 4]) -> Option<MPoly> {
        let strides = strides_of(dims);
        let idx = |m: Mono, lo: [u32; 4]| -> usize {
            Var::ALL.iter().map(|&v| (m.exp(v) - lo[v.index()]) as usize * strides[v.index()]).sum()
        };
        let cells: usize = dims.iter().product();
        let mut acc = vec![0i128; cells];
        let bi: Vec<(usize, i128)> = o.terms.iter().map(|(m, c)| (idx(*m, lb), c.as_i64().unwrap() as i128)).collect();
        for (ma, ca) in &self.terms {
            let base = idx(*ma, la);
            let ca = ca.as_i64().unwrap() as i128;
            for &(off, cb) in &bi {
                let slot = &mut acc[base + off];
                *slot = slot.checked_add(ca * cb)?;
            }
        }
        let mut lo = [0u32; 4];
        for v in Var::ALL {
            lo[v.index()] = la[v.index()] + lb[v.index()];
        }
        Some(from_dense_cells(&acc, dims, strides, lo))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn try_div(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (a, ca) in &self.terms {
                if !m.divides(*a) {
                    return None;
                }
                let (qq, r) = ca.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push((a.div(*m), qq));
            }
            return Some(MPoly { terms: out });
        }
        let (da, db) = (self.degrees(), d.degrees());
        let (la, lb) = (self.min_degrees(), d.min_degrees());
        for v in Var::ALL {
            let i = v.index();
            if db[i] > da[i] || lb[i] > la[i] || db[i] - lb[i] > da[i] - la[i] {
                return None;
            }
        }
        if !d.lm().divides(self.lm()) {
            return None;
        }
        let mut dims = [0usize; 4];
        for v in Var::ALL {
            dims[v.index()] = (da[v.index()] - la[v.index()] + 1) as usize;
        }
        let cells: usize = dims.iter().product();
        if self.all_small() && d.all_small() && cells <= DENSE_CELLS && cells <= 64 * self.len().max(d.len()) * 8 {
            match self.div_dense(d, dims, la, lb, da, db) {
                DenseDiv::Quotient(q) => return Some(q),
                DenseDiv::NotDivisible => return None,
                DenseDiv::Overflow => {}
            }
        }
        self.div_sparse(d)
    }

    fn div_dense(
        &self,
        d: &MPoly,
        dims: [usize; 4],
        la: [u32; 4],
        lb: [u32; 4],
        da: [u32; 4],
        db: [u32; 4],
    ) -> DenseDiv {
        let strides = strides_of(dims);
        let idx = |m: Mono, lo: [u32; 4]| -> usize {
            Var::ALL.iter().map(|&v| (m.exp(v) - lo[v.index()]) as usize * strides[v.index()]).sum()
        };
        let cells: usize = dims.iter().product();
        let mut rem = vec![0i128; cells];
        for (m, c) in &self.terms {
            rem[idx(*m, la)] = c.as_i64().unwrap() as i128;
        }
        let dterms: Vec<(usize, i128)> =
            d.terms.iter().map(|(m, c)| (idx(*m, lb), c.as_i64().unwrap() as i128)).collect();
        let (lead_off, lead_c) = dterms[0];
        let lead_m = d.lm();
        let mut lq = [0u32; 4];
        let mut hq = [0u32; 4];
        for v in Var::ALL {
            let i = v.index();
            lq[i] = la[i] - lb[i];
            hq[i] = da[i] - db[i];
        }
        let mut quot: Vec<(Mono, Int)> = Vec::new();
        for c in (0..cells).rev() {
            let r = rem[c];
            if r == 0 {
                continue;
            }
            if r % lead_c != 0 {
                return DenseDiv::NotDivisible;
            }
            let t = r / lead_c;
            // decode the cell and check the quotient monomial lies in its box
            let mut qe = [0u32; 4];
            for v in Var::ALL {
                let i = v.index();
                let e = la[i] as i64 + ((c / strides[i]) % dims[i]) as i64 - lead_m.exp(v) as i64;
                if e < lq[i] as i64 || e > hq[i] as i64 {
                    return DenseDiv::NotDivisible;
                }
                qe[i] = e as u32;
            }
            let qoff = c - lead_off;
            for &(off, dc) in &dterms {
                let Some(prod) = t.checked_mul(dc) else {
                    return DenseDiv::Overflow;
                };
                let slot = &mut rem[qoff + off];
                match slot.checked_sub(prod) {
                    Some(v) => *slot = v,
                    None => return DenseDiv::Overflow,
                }
            }
            quot.push((Mono::from_exps(qe), Int::from_i128(t)));
        }
        DenseDiv::Quotient(MPoly { terms: quot })
    }

    fn div_sparse(&self, d: &MPoly) -> Option<MPoly> {
        let mut rem: BTreeMap<Mono, Int> = self.terms.iter().cloned().collect();
        let (dm, dc) = (d.lm(), d.lc().clone());
        let mut quot = Vec::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            if !dm.divides(m) {
                return None;
            }
            let (t, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(dm);
            for (bm, bc) in &d.terms {
                let key = qm.mul(*bm);
                let e = rem.entry(key).or_insert(Int::ZERO);
                *e = &*e - &(&t * bc);
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qm, t));
        }
        Some(MPoly { terms: quot })
    }

    /// Exact division; errors when the division is not exact.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.try_div(d).ok_or(Error::NotDivisible)
    }

    pub fn divides(&self, other: &MPoly) -> bool {
        other.try_div(self).is_some()
    }

    /// Evaluation of every variable modulo `p`.
    pub fn eval_mod(&self, vals: [u64; 4], p: u64) -> u64 {
        let d = self.degrees();
        let pows: Vec<Vec<u64>> = Var::ALL
            .iter()
            .map(|&v| {
                let mut t = Vec::with_capacity(d[v.index()] as usize + 1);
                let mut acc = 1u64;
                for _ in 0..=d[v.index()] {
                    t.push(acc);
                    acc = modp::mul(acc, vals[v.index()] % p, p);
                }
                t
            })
            .collect();
        let mut s = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.rem_u64(p);
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    t = modp::mul(t, pows[v.index()][e as usize], p);
                }
            }
            s = modp::add(s, t, p);
        }
        s
    }

    /// Exact evaluation of every variable at a rational point.
    pub fn eval_rat(&self, vals: &[Rat; 4]) -> Rat {
        let d = self.degrees();
        let pows: Vec<Vec<Rat>> = Var::ALL
            .iter()
            .map(|&v| {
                let mut t = vec![Rat::one()];
                for k in 1..=d[v.index()] as usize {
                    let next = &t[k - 1] * &vals[v.index()];
                    t.push(next);
                }
                t
            })
            .collect();
        let mut s = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = Rat::from_int(c.clone());
            for v in Var::ALL {
                let e = m.exp(v) as usize;
                if e > 0 {
                    t = &t * &pows[v.index()][e];
                }
            }
            s = &s + &t;
        }
        s
    }

    /// Substitutes `v = a/b`: returns `P` with `self(v=a/b) = P / b^deg_v(self)`.
    pub fn subst_rat(&self, v: Var, val: &Rat) -> (MPoly, u32) {
        let dv = self.degree(v);
        let (a, b) = (val.num().clone(), val.den().clone());
        let mut apow = vec![Int::ONE];
        let mut bpow = vec![Int::ONE];
        for k in 1..=dv as usize {
            apow.push(&apow[k - 1] * &a);
            bpow.push(&bpow[k - 1] * &b);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exp(v) as usize;
            let coef = &(c * &apow[e]) * &bpow[dv as usize - e];
            (m.with_exp(v, 0), coef)
        });
        (MPoly::from_terms(terms), dv)
    }

    /// Applies a monomial substitution: each variable `v` maps to
    /// `q^{img[v].0} * img[v].1`. Returns `(P, s)` with the image equal to
    /// `P * q^{-s}`, `s >= 0` minimal.
    pub fn subst_mono(&self, img: &[(i64, Mono); 4]) -> (MPoly, i64) {
        let mut raw: Vec<(i64, Mono, Int)> = Vec::with_capacity(self.terms.len());
        let mut min_q = 0i64;
        for (m, c) in &self.terms {
            let mut qe = 0i64;
            let mut mono = Mono::ONE;
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let (qs, im) = img[v.index()];
                qe += qs * e as i64;
                for w in Var::ALL {
                    let k = im.exp(w) * e;
                    if k > 0 {
                        mono = mono.with_exp(w, mono.exp(w) + k);
                    }
                }
            }
            qe += mono.exp(Var::Q) as i64;
            mono = mono.without(Var::Q);
            min_q = min_q.min(qe);
            raw.push((qe, mono, c.clone()));
        }
        let s = -min_q;
        let poly = MPoly::from_terms(raw.into_iter().map(|(qe, m, c)| {
            let e = qe + s;
            assert!(e <= MAX_EXP as i64, "exponent overflow in substitution");
            (m.with_exp(Var::Q, e as u32), c)
        }));
        (poly, s)
    }

    /// Coefficients with respect to `v`: `(e, c_e)` with `self = Σ c_e v^e`.
    pub fn coeffs_in(&self, v: Var) -> Vec<(u32, MPoly)> {
        let mut groups: BTreeMap<u32, Vec<(Mono, Int)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.exp(v)).or_default().push((m.without(v), c.clone()));
        }
        groups.into_iter().map(|(e, ts)| (e, MPoly::from_terms(ts))).collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Int) -> Int) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Renders with custom variable names (order x, y, z, q); empty names are omitted.
    pub fn fmt_named(&self, names: &[&str; 4]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for v in [Var::Q, Var::X, Var::Y, Var::Z] {
                let e = m.exp(v);
                let name = names[v.index()];
                if e == 0 || name.is_empty() {
                    continue;
                }
                factors.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

enum DenseDiv {
    Quotient(MPoly),
    NotDivisible,
    Overflow,
}

fn strides_of(dims: [usize; 4]) -> [usize; 4] {
    // x most significant so that descending index is descending lex order
    let mut st = [0usize; 4];
    let mut acc = 1usize;
    for v in Var::ALL.iter().rev() {
        st[v.index()] = acc;
        acc *= dims[v.index()];
    }
    st
}

fn from_dense_cells(acc: &[i128], dims: [usize; 4], strides: [usize; 4], lo: [u32; 4]) -> MPoly {
    let mut terms = Vec::new();
    for c in (0..acc.len()).rev() {
        let v = acc[c];
        if v == 0 {
            continue;
        }
        let mut e = [0u32; 4];
        for w in Var::ALL {
            let i = w.index();
            e[i] = lo[i] + ((c / strides[i]) % dims[i]) as u32;
        }
        terms.push((Mono::from_exps(e), Int::from_i128(v)));
    }
    MPoly { terms }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        self.add_sub(o, false)
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self.add_sub(o, true)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        self.mul_impl(o)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_named(&["x", "y", "z", "q"]))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
