//! Multivariate polynomial gcd over ℤ.
//!
//! The main path is Brown's dense modular algorithm: images over 62-bit
//! primes are computed by recursive evaluation and Newton interpolation,
//! combined by Chinese remaindering and certified by trial division. The
//! subresultant PRS is kept as an independent fallback.

use super::int::Int;
use super::modp::{self, upoly, PRIMES};
use super::mpoly::{MPoly, Mono, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Gcd with positive leading coefficient (zero only if both inputs are zero).
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive_sign();
    }
    if b.is_zero() {
        return a.primitive_sign();
    }
    let ca = a.content();
    let cb = b.content();
    let gc = ca.gcd(&cb);
    let ma = a.mono_content();
    let mb = b.mono_content();
    let gm = ma.min(mb);
    let pa = a.div_int(&ca).div_mono(ma);
    let pb = b.div_int(&cb).div_mono(mb);
    let core = if pa.is_constant() || pb.is_constant() {
        MPoly::one()
    } else if pa == pb || pa == -&pb {
        pa.primitive()
    } else {
        modular_gcd(&pa, &pb).unwrap_or_else(|| gcd_prs(&pa, &pb))
    };
    core.mul_mono(gm).scale(&gc)
}

pub fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let g = gcd(a, b);
    (a * &b.try_div(&g).expect("gcd divides")).primitive_sign()
}

impl MPoly {
    /// `self` with the sign fixed so the leading coefficient is positive.
    pub fn primitive_sign(&self) -> MPoly {
        if !self.is_zero() && self.lc().is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

/// Sparse polynomial over F_p, descending monomials.
#[derive(Clone, Debug, PartialEq)]
struct PP {
    terms: Vec<(Mono, u64)>,
}

impl PP {
    fn from_mpoly(a: &MPoly, p: u64) -> PP {
        PP {
            terms: a
                .terms()
                .iter()
                .filter_map(|(m, c)| {
                    let r = c.rem_u64(p);
                    (r != 0).then_some((*m, r))
                })
                .collect(),
        }
    }

    fn from_unsorted(mut v: Vec<(Mono, u64)>, p: u64) -> PP {
        v.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Mono, u64)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = modp::add(*lc, c, p),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        PP { terms: out }
    }

    fn one() -> PP {
        PP { terms: vec![(Mono::ONE, 1)] }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE
    }

    fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    fn lm(&self) -> Mono {
        self.terms[0].0
    }

    fn monic(&self, p: u64) -> PP {
        if self.is_zero() {
            return self.clone();
        }
        let li = modp::inv(self.terms[0].1, p);
        PP { terms: self.terms.iter().map(|&(m, c)| (m, modp::mul(c, li, p))).collect() }
    }

    fn scale(&self, s: u64, p: u64) -> PP {
        if s == 0 {
            return PP { terms: vec![] };
        }
        PP { terms: self.terms.iter().map(|&(m, c)| (m, modp::mul(c, s, p))).collect() }
    }

    fn group(&self, v: Var) -> BTreeMap<Mono, Vec<u64>> {
        let mut g: BTreeMap<Mono, Vec<u64>> = BTreeMap::new();
        for &(m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let slot = g.entry(m.without(v)).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, 0);
            }
            slot[e] = c;
        }
        g
    }

    fn ungroup(g: &BTreeMap<Mono, Vec<u64>>, v: Var, p: u64) -> PP {
        let mut out = Vec::new();
        for (m, coeffs) in g {
            for (e, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    out.push((m.with_exp(v, e as u32), c));
                }
            }
        }
        PP::from_unsorted(out, p)
    }

    fn eval(&self, v: Var, a: u64, p: u64) -> PP {
        let d = self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0) as usize;
        let mut pw = Vec::with_capacity(d + 1);
        let mut acc = 1u64;
        for _ in 0..=d {
            pw.push(acc);
            acc = modp::mul(acc, a, p);
        }
        PP::from_unsorted(
            self.terms.iter().map(|&(m, c)| (m.without(v), modp::mul(c, pw[m.exp(v) as usize], p))).collect(),
            p,
        )
    }

    fn try_div(&self, d: &PP, p: u64) -> Option<PP> {
        let mut rem: BTreeMap<Mono, u64> = self.terms.iter().cloned().collect();
        let (dm, dc) = d.terms[0];
        let di = modp::inv(dc, p);
        let mut quot = Vec::new();
        while let Some((&m, &c)) = rem.iter().next_back() {
            if !dm.divides(m) {
                return None;
            }
            let t = modp::mul(c, di, p);
            let qm = m.div(dm);
            for &(bm, bc) in &d.terms {
                let key = qm.mul(bm);
                let e = rem.entry(key).or_insert(0);
                *e = modp::sub(*e, modp::mul(t, bc, p), p);
                if *e == 0 {
                    rem.remove(&key);
                }
            }
            quot.push((qm, t));
        }
        Some(PP { terms: quot })
    }
}

fn to_upoly(a: &PP, v: Var) -> Vec<u64> {
    let mut out = Vec::new();
    for &(m, c) in &a.terms {
        let e = m.exp(v) as usize;
        if out.len() <= e {
            out.resize(e + 1, 0);
        }
        out[e] = c;
    }
    out
}

fn from_upoly(a: &[u64], v: Var) -> PP {
    let mut t: Vec<(Mono, u64)> =
        a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (Mono::var(v, e as u32), c)).collect();
    t.reverse();
    PP { terms: t }
}

fn ugcd_many<'a>(polys: impl Iterator<Item = &'a Vec<u64>>, p: u64) -> Vec<u64> {
    let mut g: Vec<u64> = Vec::new();
    for c in polys {
        g = upoly::gcd(&g, c, p);
        if g.len() == 1 {
            break;
        }
    }
    g
}

/// Monic gcd of two polynomials over F_p, or `None` after too many unlucky points.
fn pgcd(a: &PP, b: &PP, p: u64, rng: &mut ChaCha8Rng) -> Option<PP> {
    if a.is_zero() {
        return Some(b.monic(p));
    }
    if b.is_zero() {
        return Some(a.monic(p));
    }
    let active: Vec<Var> = Var::ALL.iter().copied().filter(|&v| a.uses(v) || b.uses(v)).collect();
    if active.is_empty() {
        return Some(PP::one());
    }
    if active.len() == 1 {
        let v = active[0];
        let g = upoly::gcd(&to_upoly(a, v), &to_upoly(b, v), p);
        return Some(from_upoly(&g, v));
    }
    let v = *active.last().unwrap();
    let mut ga = a.group(v);
    let mut gb = b.group(v);
    let ca = ugcd_many(ga.values(), p);
    let cb = ugcd_many(gb.values(), p);
    for g in ga.values_mut() {
        *g = upoly::divrem(g, &ca, p).0;
    }
    for g in gb.values_mut() {
        *g = upoly::divrem(g, &cb, p).0;
    }
    let cont = upoly::gcd(&ca, &cb, p);
    let a1 = PP::ungroup(&ga, v, p);
    let b1 = PP::ungroup(&gb, v, p);
    let lca = ga.values().next_back().unwrap().clone();
    let lcb = gb.values().next_back().unwrap().clone();
    let gamma = upoly::gcd(&lca, &lcb, p);
    let dva = ga.values().map(|c| c.len()).max().unwrap() - 1;
    let dvb = gb.values().map(|c| c.len()).max().unwrap() - 1;
    let bound = gamma.len() - 1 + dva.min(dvb);

    let mut h: BTreeMap<Mono, Vec<u64>> = BTreeMap::new();
    let mut modulus: Vec<u64> = vec![1];
    let mut lm_h: Option<Mono> = None;
    let mut npts = 0usize;
    let mut attempts = 0usize;
    let cap = 4 * bound + 64;
    while attempts < cap {
        attempts += 1;
        let alpha = rng.gen_range(1..p);
        if upoly::eval(&lca, alpha, p) == 0 || upoly::eval(&lcb, alpha, p) == 0 {
            continue;
        }
        let aa = a1.eval(v, alpha, p);
        let bb = b1.eval(v, alpha, p);
        let g = pgcd(&aa, &bb, p, rng)?;
        if g.is_constant() {
            return Some(from_upoly(&cont, v).monic(p));
        }
        let lmg = g.lm();
        match lm_h {
            Some(l) if lmg > l => continue,
            Some(l) if lmg == l => {}
            _ => {
                h.clear();
                modulus = vec![1];
                npts = 0;
                lm_h = Some(lmg);
            }
        }
        let g = g.scale(upoly::eval(&gamma, alpha, p), p);
        let mut changed = false;
        let mval = upoly::eval(&modulus, alpha, p);
        let minv = modp::inv(mval, p);
        let gmap: BTreeMap<Mono, u64> = g.terms.iter().cloned().collect();
        let keys: Vec<Mono> = h.keys().chain(gmap.keys()).copied().collect();
        for k in keys {
            let cur = h.get(&k).map(|c| upoly::eval(c, alpha, p)).unwrap_or(0);
            let target = gmap.get(&k).copied().unwrap_or(0);
            let diff = modp::sub(target, cur, p);
            if diff == 0 {
                continue;
            }
            changed = true;
            let corr = upoly::scale(&modulus, modp::mul(diff, minv, p), p);
            let slot = h.entry(k).or_default();
            *slot = upoly::add_poly(slot, &corr, p);
        }
        h.retain(|_, c| !c.is_empty());
        modulus = upoly::mul_poly(&modulus, &[modp::neg(alpha, p), 1], p);
        npts += 1;
        if (npts > bound) || (!changed && npts >= 2) {
            let hc = ugcd_many(h.values(), p);
            let hg: BTreeMap<Mono, Vec<u64>> = h.iter().map(|(k, c)| (*k, upoly::divrem(c, &hc, p).0)).collect();
            let cand = PP::ungroup(&hg, v, p).monic(p);
            if a1.try_div(&cand, p).is_some() && b1.try_div(&cand, p).is_some() {
                let cpoly = from_upoly(&cont, v);
                let prod = mul_pp(&cand, &cpoly, p);
                return Some(prod.monic(p));
            }
            if npts > bound {
                h.clear();
                modulus = vec![1];
                npts = 0;
                lm_h = None;
            }
        }
    }
    None
}

fn mul_pp(a: &PP, b: &PP, p: u64) -> PP {
    let mut v = Vec::with_capacity(a.terms.len() * b.terms.len());
    for &(ma, ca) in &a.terms {
        for &(mb, cb) in &b.terms {
            v.push((ma.mul(mb), modp::mul(ca, cb, p)));
        }
    }
    PP::from_unsorted(v, p)
}

/// Gcd of primitive, monomial-free inputs via CRT over primes.
fn modular_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let gamma = a.lc().gcd(b.lc());
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d9cd);
    let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
    let mut acc_lm: Option<Mono> = None;
    let mut modulus = BigInt::one();
    let mut last: Option<MPoly> = None;
    for &p in PRIMES.iter() {
        if a.lc().rem_u64(p) == 0 || b.lc().rem_u64(p) == 0 {
            continue;
        }
        let ap = PP::from_mpoly(a, p);
        let bp = PP::from_mpoly(b, p);
        let Some(g) = pgcd(&ap, &bp, p, &mut rng) else {
            continue;
        };
        if g.is_constant() {
            return Some(MPoly::one());
        }
        let g = g.scale(gamma.rem_u64(p), p);
        match acc_lm {
            Some(l) if g.lm() > l => continue,
            Some(l) if g.lm() == l => {
                let pb = BigInt::from(p);
                let minv = modp::inv((&modulus % &pb).try_into().unwrap(), p);
                let gmap: BTreeMap<Mono, u64> = g.terms.iter().cloned().collect();
                let keys: Vec<Mono> = acc.keys().chain(gmap.keys()).copied().collect();
                for k in keys {
                    let r1 = acc.get(&k).cloned().unwrap_or_else(BigInt::zero);
                    let r2 = gmap.get(&k).copied().unwrap_or(0);
                    let r1p: u64 = r1.mod_floor(&pb).try_into().unwrap();
                    let t = modp::mul(modp::sub(r2, r1p, p), minv, p);
                    let v = &r1 + &modulus * BigInt::from(t);
                    acc.insert(k, v);
                }
                modulus *= &pb;
            }
            _ => {
                acc = g.terms.iter().map(|&(m, c)| (m, BigInt::from(c))).collect();
                acc_lm = Some(g.lm());
                modulus = BigInt::from(p);
                last = None;
            }
        }
        let half = &modulus >> 1;
        let cand = MPoly::from_terms(acc.iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| {
            let s = if *c > half { c - &modulus } else { c.clone() };
            (*m, Int::from_big(s))
        }));
        let stable = last.as_ref() == Some(&cand);
        let small = cand.max_coeff_bits() + 16 < modulus.bits();
        if stable || small {
            let h = cand.primitive();
            if a.try_div(&h).is_some() && b.try_div(&h).is_some() {
                return Some(h);
            }
        }
        last = Some(cand);
    }
    None
}

/// Subresultant-PRS gcd, recursive in the most significant variable.
pub fn gcd_prs(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive_sign();
    }
    if b.is_zero() {
        return a.primitive_sign();
    }
    let v = Var::ALL.iter().copied().find(|&v| a.uses(v) || b.uses(v));
    let Some(v) = v else {
        return MPoly::constant(a.lc().gcd(b.lc()));
    };
    let ua = as_univariate(a, v);
    let ub = as_univariate(b, v);
    let ca = univ_content(&ua);
    let cb = univ_content(&ub);
    let c = gcd_prs(&ca, &cb);
    let pa: Vec<MPoly> = ua.iter().map(|x| x.try_div(&ca).unwrap()).collect();
    let pb: Vec<MPoly> = ub.iter().map(|x| x.try_div(&cb).unwrap()).collect();
    let g = subresultant(pa, pb);
    let gc = univ_content(&g);
    let g: Vec<MPoly> = g.iter().map(|x| x.try_div(&gc).unwrap()).collect();
    (&from_univariate(&g, v) * &c).primitive_sign()
}

fn as_univariate(a: &MPoly, v: Var) -> Vec<MPoly> {
    let parts = a.coeffs_in(v);
    let d = parts.last().map(|p| p.0).unwrap_or(0) as usize;
    let mut out = vec![MPoly::zero(); d + 1];
    for (e, c) in parts {
        out[e as usize] = c;
    }
    out
}

fn from_univariate(c: &[MPoly], v: Var) -> MPoly {
    let mut acc = MPoly::zero();
    for (e, ce) in c.iter().enumerate() {
        if !ce.is_zero() {
            acc = &acc + &ce.mul_mono(Mono::var(v, e as u32));
        }
    }
    acc
}

fn univ_content(c: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for x in c {
        g = gcd_prs(&g, x);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        MPoly::one()
    } else {
        g
    }
}

fn udeg(a: &[MPoly]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn trim_u(a: &mut Vec<MPoly>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = udeg(b).unwrap();
    let lb = b[db].clone();
    let mut r: Vec<MPoly> = a.to_vec();
    trim_u(&mut r);
    let da = r.len().saturating_sub(1);
    let mut steps = da as i64 - db as i64 + 1;
    while let Some(dr) = udeg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let mut nr: Vec<MPoly> = r.iter().map(|c| c * &lb).collect();
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let k = dr - db + j;
            nr[k] = &nr[k] - &(bj * &lr);
        }
        r = nr;
        trim_u(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    r
}

fn subresultant(mut a: Vec<MPoly>, mut b: Vec<MPoly>) -> Vec<MPoly> {
    trim_u(&mut a);
    trim_u(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return a;
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = a.len() - b.len();
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![MPoly::one()];
        }
        let div = &g * &h.pow(delta as u32);
        a = b;
        b = r.iter().map(|c| c.try_div(&div).expect("subresultant division")).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 { h } else { g.pow(delta as u32).try_div(&h.pow(delta as u32 - 1)).expect("subresultant h") };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }
    fn y() -> MPoly {
        MPoly::var(Var::Y)
    }
    fn q() -> MPoly {
        MPoly::var(Var::Q)
    }
    fn c(v: i64) -> MPoly {
        MPoly::from_i64(v)
    }

    #[test]
    fn univariate_common_factor() {
        let a = &(&x() * &x()) - &c(1);
        let b = &x() - &c(1);
        assert_eq!(gcd(&a, &b), b);
        assert_eq!(gcd_prs(&a, &b), b);
    }

    #[test]
    fn multivariate_common_factor() {
        let f = &(&(&q() * &x()) - &y()) + &c(2);
        let g1 = &(&x() * &y()) + &q().pow(3);
        let g2 = &(&x().pow(2) - &q()) + &(&c(7) * &y());
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(gcd(&a, &b), f);
        assert_eq!(gcd_prs(&a, &b), f);
    }

    #[test]
    fn contents_and_monomials() {
        let a = MPoly::from_i64(6).mul_mono(Mono::var(Var::X, 2));
        let b = MPoly::from_i64(4).mul_mono(Mono::var(Var::X, 3));
        assert_eq!(gcd(&a, &b), MPoly::from_i64(2).mul_mono(Mono::var(Var::X, 2)));
        let l = lcm(&(&x() - &c(1)), &(&x() + &c(1)));
        assert_eq!(l, &x().pow(2) - &c(1));
    }

    #[test]
    fn big_coefficients_use_several_primes() {
        let big = MPoly::constant(Int::from(3).pow(90));
        let f = &(&big * &x()) + &(&q() * &y());
        let a = &f * &(&x() + &q());
        let b = &f * &(&y() - &c(5));
        assert_eq!(gcd(&a, &b), f);
    }
}
