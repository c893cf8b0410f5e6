//! Small dense exact-rational vector/matrix helpers.

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::Integer;
use num_traits::{One, Zero};

use super::rat::Rat;

/// Point, direction, or dual vector in ℝⁿ.
pub type RatVec = Vec<Rat>;

pub fn zeros(n: usize) -> RatVec {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> RatVec {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], k: &Rat) -> RatVec {
    a.iter().map(|x| x * k).collect()
}

pub fn neg(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

/// Scale a nonzero vector to the unique primitive integer representative of
/// its ray (integer entries, content 1, direction preserved).
pub fn primitive(v: &[Rat]) -> RatVec {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.iter()
        .map(|i| Rat::from_big(i / &g, BigInt::one()))
        .collect()
}

pub fn linf_norm(v: &[Rat]) -> Rat {
    v.iter()
        .map(Rat::abs)
        .fold(Rat::zero(), |m, x| if x > m { x } else { m })
}

pub fn l1_norm(v: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for x in v {
        acc += &x.abs();
    }
    acc
}

/// Row-reduce a copy of `rows`, returning (rank, reduced rows, pivot columns).
fn row_echelon(rows: &[RatVec], cols: usize) -> (usize, Vec<RatVec>, Vec<usize>) {
    let mut m: Vec<RatVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = scale(&m[r], &inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row = sub(&m[i], &scale(&m[r], &f));
                m[i] = row;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (r, m, pivots)
}

pub fn rank(rows: &[RatVec], cols: usize) -> usize {
    row_echelon(rows, cols).0
}

/// Basis of the null space `{x : rows · x = 0}`, deterministic in the free
/// column order.
pub fn nullspace(rows: &[RatVec], cols: usize) -> Vec<RatVec> {
    let (rk, m, pivots) = row_echelon(rows, cols);
    let mut basis = Vec::with_capacity(cols - rk);
    let pivot_set: Vec<Option<usize>> = {
        let mut s = vec![None; cols];
        for (row_idx, &c) in pivots.iter().enumerate() {
            s[c] = Some(row_idx);
        }
        s
    };
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = zeros(cols);
        v[free] = Rat::one();
        for (c, slot) in pivot_set.iter().enumerate() {
            if let Some(row_idx) = slot {
                v[c] = -&m[*row_idx][free];
            }
        }
        basis.push(primitive(&v));
    }
    basis
}

/// Indices of a maximal linearly independent subset of `rows`, greedy in
/// the given order.
pub fn independent_subset(rows: &[RatVec], cols: usize) -> Vec<usize> {
    let mut chosen: Vec<RatVec> = Vec::new();
    let mut idx = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        chosen.push(row.clone());
        if rank(&chosen, cols) == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
        if chosen.len() == cols {
            break;
        }
    }
    idx
}

/// Solve the square system `a · x = b` (rows of `a` are the matrix rows).
/// Returns `None` when `a` is singular.
pub fn solve_square(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let n = b.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let mut rows: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let (rk, m, pivots) = {
        let (rk, m, p) = row_echelon(&rows, n);
        (rk, m, p)
    };
    if rk < n {
        return None;
    }
    rows = m;
    let mut x = zeros(n);
    for (row_idx, &c) in pivots.iter().enumerate() {
        x[c] = rows[row_idx][n].clone();
    }
    Some(x)
}
