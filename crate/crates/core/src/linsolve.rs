//! Exact linear algebra over the fraction field of ℤ[q, x, y, z] with
//! polynomial entries: fraction-free Gauss–Jordan elimination.

use crate::error::{Error, Result};
use crate::exactfield::gcd::gcd;
use crate::exactfield::modp::{self, PRIMES};
use crate::exactfield::{MPoly, RatFun};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MPoly>,
}

impl FFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FFMatrix {
        FFMatrix { rows, cols, data: vec![MPoly::zero(); rows * cols] }
    }

    /// Rows must all have the same length.
    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> FFMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        FFMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[MPoly] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn select_rows(&self, idx: &[usize]) -> FFMatrix {
        FFMatrix::from_rows(idx.iter().map(|&r| self.row(r).to_vec()).collect())
    }

    /// `M·v` for a polynomial vector.
    pub fn mul_vec(&self, v: &[MPoly]) -> Vec<MPoly> {
        (0..self.rows)
            .map(|r| {
                let mut acc = MPoly::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `M·v` for a rational-function vector.
    pub fn mul_vec_rat(&self, v: &[RatFun]) -> Vec<RatFun> {
        (0..self.rows)
            .map(|r| {
                let mut acc = RatFun::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(&RatFun::from_poly(a.clone()) * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Entries evaluated modulo `p` at a point.
    fn eval_mod(&self, pt: [u64; 4], p: u64) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|e| e.eval_mod(pt, p)).collect()).collect()
    }

    /// Rank at a random point modulo a large prime, together with a set of
    /// rows that are independent there. This is a lower bound for the rank.
    pub fn rank_mod_p(&self, rng: &mut ChaCha8Rng) -> (usize, Vec<usize>) {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let pt = [rng.gen_range(2..p), rng.gen_range(2..p), rng.gen_range(2..p), rng.gen_range(2..p)];
        let m = self.eval_mod(pt, p);
        independent_rows(m, self.cols, p)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.clone(), None).expect("no deadline").pivots.len()
    }
}

/// Rows of `m` (mod p) forming a basis of its row space, picked greedily.
fn independent_rows(m: Vec<Vec<u64>>, cols: usize, p: u64) -> (usize, Vec<usize>) {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (r, mut row) in m.into_iter().enumerate() {
        for (pc, b) in &basis {
            let f = row[*pc];
            if f != 0 {
                for c in 0..cols {
                    row[c] = modp::sub(row[c], modp::mul(f, b[c], p), p);
                }
            }
        }
        if let Some(pc) = (0..cols).find(|&c| row[c] != 0) {
            let inv = modp::inv(row[pc], p);
            for v in row.iter_mut() {
                *v = modp::mul(*v, inv, p);
            }
            // keep the basis reduced so later rows see zeros in pivot columns
            for (_, b) in basis.iter_mut() {
                let f = b[pc];
                if f != 0 {
                    for c in 0..cols {
                        b[c] = modp::sub(b[c], modp::mul(f, row[c], p), p);
                    }
                }
            }
            basis.push((pc, row));
            chosen.push(r);
            if basis.len() == cols {
                break;
            }
        }
    }
    (chosen.len(), chosen)
}

struct Reduced {
    m: FFMatrix,
    /// (row, column) of each pivot, in elimination order.
    pivots: Vec<(usize, usize)>,
    det: MPoly,
}

/// Fraction-free Gauss–Jordan: afterwards every pivot row has the common
/// value `det` in its pivot column and zeros in the other pivot columns.
fn bareiss(mut m: FFMatrix, deadline: Option<Instant>) -> Result<Reduced> {
    let mut prev = MPoly::one();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; m.rows];
    for c in 0..m.cols {
        let pick = (0..m.rows).filter(|&r| !used[r] && !m.get(r, c).is_zero()).min_by_key(|&r| (m.get(r, c).len(), r));
        let Some(pr) = pick else { continue };
        used[pr] = true;
        let piv = m.get(pr, c).clone();
        let prow: Vec<MPoly> = m.row(pr).to_vec();
        for r in 0..m.rows {
            if r == pr {
                continue;
            }
            if deadline.is_some_and(|d| Instant::now() > d) {
                return Err(Error::BudgetExceeded);
            }
            let f = m.get(r, c).clone();
            for (cc, pc) in prow.iter().enumerate() {
                let a = m.get(r, cc);
                let mut v = if a.is_zero() { MPoly::zero() } else { &piv * a };
                if !f.is_zero() && !pc.is_zero() {
                    v = &v - &(&f * pc);
                }
                if !prev.is_one() && !v.is_zero() {
                    v = v.try_div(&prev).expect("Bareiss division is exact");
                }
                m.set(r, cc, v);
            }
        }
        pivots.push((pr, c));
        prev = piv;
    }
    Ok(Reduced { m, pivots, det: prev })
}

/// Right nullspace basis with polynomial entries, each vector primitive
/// with its first nonzero entry positive.
pub fn nullspace_poly(m: &FFMatrix) -> Vec<Vec<MPoly>> {
    nullspace_poly_seeded(m, 0x51de_c0de)
}

pub fn nullspace_poly_seeded(m: &FFMatrix, seed: u64) -> Vec<Vec<MPoly>> {
    nullspace_poly_until(m, seed, None).expect("no deadline")
}

/// As [`nullspace_poly_seeded`], giving up once `deadline` has passed.
pub fn nullspace_poly_until(m: &FFMatrix, seed: u64, deadline: Option<Instant>) -> Result<Vec<Vec<MPoly>>> {
    if m.rows == 0 {
        return Ok((0..m.cols).map(|c| unit(m.cols, c)).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (rank, _) = m.rank_mod_p(&mut rng);
    if rank == m.cols {
        // a lower bound equal to the column count settles it
        return Ok(Vec::new());
    }
    let pre = presolve(m);
    let basis = if pre.m.cols == 0 {
        Vec::new()
    } else if pre.m.rows == 0 {
        (0..pre.m.cols).map(|c| unit(pre.m.cols, c)).collect()
    } else {
        reduced_nullspace(&pre.m, &mut rng, deadline)?
    };
    Ok(basis.into_iter().map(|w| pre.lift(w, m.cols)).collect())
}

/// A smaller system with the same nullspace up to column scaling.
struct Presolved {
    m: FFMatrix,
    /// Original index of each remaining column.
    live: Vec<usize>,
    /// Content divided out of each remaining column.
    content: Vec<MPoly>,
}

impl Presolved {
    fn lift(&self, w: Vec<MPoly>, cols: usize) -> Vec<MPoly> {
        let mut l = MPoly::one();
        for (c, e) in w.iter().enumerate() {
            if !e.is_zero() && !self.content[c].divides(&l) {
                l = crate::exactfield::gcd::lcm(&l, &self.content[c]);
            }
        }
        let mut v = vec![MPoly::zero(); cols];
        for (c, e) in w.into_iter().enumerate() {
            if !e.is_zero() {
                v[self.live[c]] = &e * &l.try_div(&self.content[c]).unwrap();
            }
        }
        primitive_vec(v)
    }
}

fn content_of<'a>(it: impl Iterator<Item = &'a MPoly>) -> MPoly {
    let mut g = MPoly::zero();
    for e in it {
        if !e.is_zero() {
            g = if g.is_zero() { e.clone() } else { gcd(&g, e) };
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Rows with a single live entry force that unknown to zero; the remaining
/// rows and columns are then divided by their contents.
fn presolve(m: &FFMatrix) -> Presolved {
    let mut dead = vec![false; m.cols];
    loop {
        let mut changed = false;
        for r in 0..m.rows {
            let mut live = (0..m.cols).filter(|&c| !dead[c] && !m.get(r, c).is_zero());
            if let (Some(c), None) = (live.next(), live.next()) {
                dead[c] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let live: Vec<usize> = (0..m.cols).filter(|&c| !dead[c]).collect();
    let mut rows: Vec<Vec<MPoly>> = (0..m.rows)
        .filter(|&r| live.iter().any(|&c| !m.get(r, c).is_zero()))
        .map(|r| live.iter().map(|&c| m.get(r, c).clone()).collect())
        .collect();
    for row in rows.iter_mut() {
        let g = content_of(row.iter());
        if !g.is_one() {
            row.iter_mut().filter(|e| !e.is_zero()).for_each(|e| *e = e.try_div(&g).unwrap());
        }
    }
    let mut content = Vec::with_capacity(live.len());
    for c in 0..live.len() {
        let g = content_of(rows.iter().map(|row| &row[c]));
        let g = if g.is_zero() { MPoly::one() } else { g };
        if !g.is_one() {
            rows.iter_mut().filter(|row| !row[c].is_zero()).for_each(|row| row[c] = row[c].try_div(&g).unwrap());
        }
        content.push(g);
    }
    let m = if rows.is_empty() { FFMatrix::zeros(0, live.len()) } else { FFMatrix::from_rows(rows) };
    Presolved { m, live, content }
}

fn reduced_nullspace(m: &FFMatrix, rng: &mut ChaCha8Rng, deadline: Option<Instant>) -> Result<Vec<Vec<MPoly>>> {
    let (rank, rows) = m.rank_mod_p(rng);
    if rank == m.cols {
        return Ok(Vec::new());
    }
    if rank < m.rows {
        let sub = m.select_rows(&rows);
        let basis = nullspace_full(&sub, deadline)?;
        // the modular rank can only underestimate; confirm on all rows
        if basis.iter().all(|v| m.mul_vec(v).iter().all(|e| e.is_zero())) {
            return Ok(basis);
        }
    }
    nullspace_full(m, deadline)
}

fn unit(n: usize, c: usize) -> Vec<MPoly> {
    (0..n).map(|i| if i == c { MPoly::one() } else { MPoly::zero() }).collect()
}

fn nullspace_full(m: &FFMatrix, deadline: Option<Instant>) -> Result<Vec<Vec<MPoly>>> {
    let red = bareiss(m.clone(), deadline)?;
    let pivot_cols: Vec<usize> = red.pivots.iter().map(|p| p.1).collect();
    let mut out = Vec::new();
    for f in 0..m.cols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![MPoly::zero(); m.cols];
        v[f] = red.det.clone();
        for &(r, c) in &red.pivots {
            v[c] = -red.m.get(r, f);
        }
        out.push(primitive_vec(v));
    }
    Ok(out)
}

/// Divides out the gcd of all entries and makes the first nonzero entry's
/// leading coefficient positive.
pub fn primitive_vec(v: Vec<MPoly>) -> Vec<MPoly> {
    let mut g = MPoly::zero();
    for e in &v {
        if !e.is_zero() {
            g = if g.is_zero() { e.clone() } else { gcd(&g, e) };
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return v;
    }
    let first = v.iter().find(|e| !e.is_zero()).unwrap();
    if first.try_div(&g).unwrap().lc().is_negative() {
        g = -g;
    }
    if g.is_one() {
        return v;
    }
    v.into_iter().map(|e| if e.is_zero() { e } else { e.try_div(&g).unwrap() }).collect()
}

/// Nullspace basis over the fraction field, each vector scaled so that its
/// first nonzero entry is 1.
pub fn nullspace(m: &FFMatrix) -> Vec<Vec<RatFun>> {
    nullspace_poly(m)
        .into_iter()
        .map(|v| {
            let lead = v.iter().find(|e| !e.is_zero()).unwrap().clone();
            v.into_iter().map(|e| RatFun::new(e, lead.clone()).unwrap()).collect()
        })
        .collect()
}

/// One solution of `M·v = b`, or `None` if the system is inconsistent.
pub fn solve(m: &FFMatrix, b: &[MPoly]) -> Option<Vec<RatFun>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let aug = FFMatrix::from_rows(
        (0..m.rows)
            .map(|r| {
                let mut row = m.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect(),
    );
    let n = m.cols;
    let red = bareiss(aug, None).expect("no deadline");
    if red.pivots.iter().any(|&(_, c)| c == n) {
        return None;
    }
    let mut v = vec![RatFun::zero(); n];
    for &(r, c) in &red.pivots {
        v[c] = RatFun::new(red.m.get(r, n).clone(), red.det.clone()).unwrap();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{parse_ratfun, Var};

    fn p(s: &str) -> MPoly {
        let f = parse_ratfun(s).unwrap();
        assert!(f.is_poly());
        f.num().clone()
    }

    fn r(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn small_nullspaces() {
        let m = FFMatrix::from_rows(vec![vec![p("1"), p("1")]]);
        assert_eq!(nullspace(&m), vec![vec![r("1"), r("-1")]]);
        let id = FFMatrix::from_rows(vec![vec![p("1"), p("0")], vec![p("0"), p("1")]]);
        assert!(nullspace(&id).is_empty());
        let m = FFMatrix::from_rows(vec![vec![p("x - 1"), p("x^2 - 1")]]);
        assert_eq!(nullspace(&m), vec![vec![r("1"), r("-1/(x + 1)")]]);
    }

    #[test]
    fn solve_small() {
        let m = FFMatrix::from_rows(vec![vec![p("2")]]);
        assert_eq!(solve(&m, &[p("x")]), Some(vec![r("x/2")]));
        let m = FFMatrix::from_rows(vec![vec![p("1")], vec![p("1")]]);
        assert_eq!(solve(&m, &[p("1"), p("2")]), None);
    }

    #[test]
    fn redundant_rows_take_the_modular_shortcut() {
        let a = vec![p("x - q"), p("q*x"), p("1")];
        let b = vec![p("1"), p("x + 1"), p("q^2")];
        let c: Vec<MPoly> = a.iter().zip(&b).map(|(u, v)| &(&p("x^2") * u) - &(&p("q + 1") * v)).collect();
        let m = FFMatrix::from_rows(vec![a, b, c]);
        let ns = nullspace_poly(&m);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|e| e.is_zero()));
        assert_eq!(m.rank(), 2);
        assert!(!ns[0].iter().any(|e| e.uses(Var::Y)));
    }
}
