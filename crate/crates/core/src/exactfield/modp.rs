//! Arithmetic in prime fields of 62-bit size.

pub const PRIMES: [u64; 48] = [
    0x3fffffffffffffc7,
    0x3fffffffffffffa9,
    0x3fffffffffffff8b,
    0x3fffffffffffff71,
    0x3fffffffffffff67,
    0x3fffffffffffff59,
    0x3fffffffffffff55,
    0x3fffffffffffff3d,
    0x3fffffffffffff35,
    0x3ffffffffffffeef,
    0x3ffffffffffffee1,
    0x3ffffffffffffec3,
    0x3ffffffffffffe45,
    0x3ffffffffffffe1d,
    0x3ffffffffffffe11,
    0x3ffffffffffffdc1,
    0x3ffffffffffffdbb,
    0x3ffffffffffffda5,
    0x3ffffffffffffd87,
    0x3ffffffffffffd69,
    0x3ffffffffffffd03,
    0x3ffffffffffffcfb,
    0x3ffffffffffffcf7,
    0x3ffffffffffffce9,
    0x3ffffffffffffcd3,
    0x3ffffffffffffcc1,
    0x3ffffffffffffc65,
    0x3ffffffffffffc2b,
    0x3ffffffffffffc1f,
    0x3ffffffffffffc17,
    0x3ffffffffffffc11,
    0x3ffffffffffffc07,
    0x3ffffffffffffb53,
    0x3ffffffffffffb27,
    0x3ffffffffffffaf3,
    0x3ffffffffffffab7,
    0x3ffffffffffffa67,
    0x3ffffffffffffa15,
    0x3ffffffffffff9ef,
    0x3ffffffffffff9d9,
    0x3ffffffffffff9d3,
    0x3ffffffffffff9c5,
    0x3ffffffffffff9af,
    0x3ffffffffffff977,
    0x3ffffffffffff95f,
    0x3ffffffffffff95b,
    0x3ffffffffffff959,
    0x3ffffffffffff8e1,
];

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

/// Maps a residue to the symmetric range as i128.
pub fn symmetric(a: u64, p: u64) -> i128 {
    if a > p / 2 {
        a as i128 - p as i128
    } else {
        a as i128
    }
}

/// Dense univariate polynomials over F_p, index = exponent, no trailing zeros.
pub mod upoly {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
    }

    pub fn mul_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        let pp = p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let o = &mut out[i + j];
                *o = (*o + x as u128 * y as u128) % pp;
            }
        }
        let mut r: Vec<u64> = out.into_iter().map(|v| v as u64).collect();
        trim(&mut r);
        r
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        if c == 0 {
            return Vec::new();
        }
        a.iter().map(|&x| mul(x, c, p)).collect()
    }

    pub fn add_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n).map(|i| add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
        trim(&mut r);
        r
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let mut r = a.to_vec();
        let li = inv(*b.last().unwrap(), p);
        let mut q = vec![0u64; a.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let c = mul(r[i + b.len() - 1], li, p);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = sub(r[i + j], mul(c, bj, p), p);
            }
        }
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => scale(a, inv(l, p), p),
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }
}
