//! Double description method for polyhedral cones, plus Fourier–Motzkin
//! elimination. All arithmetic exact.


use super::linalg::{self, RatVec};
use super::rat::Rat;

/// Generators of a cone `{y : ineq·y ≤ 0, eq·y = 0}`: extreme rays of the
/// pointed part plus a basis of the lineality space.
pub struct ConeGens {
    pub rays: Vec<RatVec>,
    pub lines: Vec<RatVec>,
}

/// Bitset over constraint rows, used for the combinatorial adjacency test.
#[derive(Clone, PartialEq, Eq)]
struct RowSet(Vec<u64>);

impl RowSet {
    fn new(n: usize) -> Self {
        RowSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &RowSet) -> RowSet {
        RowSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &RowSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    vec: RatVec,
    zero_set: RowSet,
}

/// Extreme rays of the pointed cone `{z : rows·z ≤ 0}`; requires
/// `rank(rows) == dim` so the cone has no lineality.
fn pointed_dd(rows: &[RatVec], dim: usize) -> Vec<RatVec> {
    if dim == 0 {
        return Vec::new();
    }
    let basis_idx = linalg::independent_subset(rows, dim);
    assert_eq!(basis_idx.len(), dim, "cone must be pointed");

    // Simplicial start: rays are the columns of -(A_B)^{-1}.
    let basis_rows: Vec<RatVec> = basis_idx.iter().map(|&i| rows[i].clone()).collect();
    let nrows = rows.len();
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut e = linalg::zeros(dim);
        e[i] = -Rat::one();
        let v = linalg::solve_square(&basis_rows, &e).expect("basis rows are independent");
        let vec = linalg::primitive(&v);
        let mut zs = RowSet::new(nrows);
        for (k, &bi) in basis_idx.iter().enumerate() {
            if k != i {
                zs.insert(bi);
            }
        }
        rays.push(Ray { vec, zero_set: zs });
    }

    let mut processed: Vec<usize> = basis_idx.clone();
    for r in 0..nrows {
        if basis_idx.contains(&r) {
            continue;
        }
        rays = insert_halfspace(rays, rows, &processed, r);
        processed.push(r);
    }
    rays.into_iter().map(|r| r.vec).collect()
}

fn insert_halfspace(rays: Vec<Ray>, rows: &[RatVec], processed: &[usize], r: usize) -> Vec<Ray> {
    let row = &rows[r];
    let mut keep: Vec<Ray> = Vec::new();
    let mut neg: Vec<usize> = Vec::new();
    let mut pos: Vec<Ray> = Vec::new();
    for mut ray in rays {
        let v = linalg::dot(row, &ray.vec);
        if v.is_zero() {
            ray.zero_set.insert(r);
            keep.push(ray);
        } else if v.is_negative() {
            keep.push(ray);
            neg.push(keep.len() - 1);
        } else {
            pos.push(ray);
        }
    }
    if pos.is_empty() {
        return keep;
    }

    let mut fresh: Vec<Ray> = Vec::new();
    for p in &pos {
        for &qi in &neg {
            let q = &keep[qi];
            let common = p.zero_set.intersection(&q.zero_set);
            // Adjacent iff no third ray is tight on every shared constraint.
            let adjacent = keep
                .iter()
                .enumerate()
                .all(|(i, other)| i == qi || !other.zero_set.is_superset(&common))
                && pos
                    .iter()
                    .all(|other| std::ptr::eq(other, p) || !other.zero_set.is_superset(&common));
            if !adjacent {
                continue;
            }
            let vp = linalg::dot(row, &p.vec);
            let vq = linalg::dot(row, &q.vec);
            let combo = linalg::sub(
                &linalg::scale(&q.vec, &vp),
                &linalg::scale(&p.vec, &vq),
            );
            if linalg::is_zero_vec(&combo) {
                continue;
            }
            let vec = linalg::primitive(&combo);
            if fresh.iter().any(|f| f.vec == vec) || keep.iter().any(|k| k.vec == vec) {
                continue;
            }
            let mut zs = RowSet::new(rows.len());
            for &pr in processed {
                if linalg::dot(&rows[pr], &vec).is_zero() {
                    zs.insert(pr);
                }
            }
            zs.insert(r);
            fresh.push(Ray { vec, zero_set: zs });
        }
    }
    keep.extend(fresh);
    keep
}

/// Generators of `{y ∈ ℝ^dim : ineq·y ≤ 0 for all ineqs, eq·y = 0 for all
/// eqs}`. Handles lineality by splitting it off and running the pointed
/// method on the quotient.
pub fn cone_generators(ineqs: &[RatVec], eqs: &[RatVec], dim: usize) -> ConeGens {
    let mut all: Vec<RatVec> = Vec::with_capacity(ineqs.len() + eqs.len());
    all.extend(ineqs.iter().cloned());
    all.extend(eqs.iter().cloned());
    let lines = linalg::nullspace(&all, dim);

    // Cut to the orthogonal complement of the lineality space; the
    // remaining cone is pointed.
    let mut eq2: Vec<RatVec> = eqs.to_vec();
    eq2.extend(lines.iter().cloned());
    let subspace_basis = linalg::nullspace(&eq2, dim);
    let m = subspace_basis.len();
    if m == 0 {
        return ConeGens {
            rays: Vec::new(),
            lines,
        };
    }

    let mut reduced: Vec<RatVec> = Vec::with_capacity(ineqs.len());
    for row in ineqs {
        let proj: RatVec = subspace_basis
            .iter()
            .map(|b| linalg::dot(row, b))
            .collect();
        if !linalg::is_zero_vec(&proj) {
            reduced.push(linalg::primitive(&proj));
        }
    }

    let rays_z = pointed_dd(&reduced, m);
    let rays = rays_z
        .iter()
        .map(|z| {
            let mut v = linalg::zeros(dim);
            for (zj, b) in z.iter().zip(&subspace_basis) {
                if !zj.is_zero() {
                    v = linalg::add(&v, &linalg::scale(b, zj));
                }
            }
            linalg::primitive(&v)
        })
        .collect();
    ConeGens { rays, lines }
}

/// One inequality `normal · x ≤ offset` as a flat row `[normal | offset]`.
pub type FmRow = RatVec;

pub enum FmOutcome {
    System { ineqs: Vec<FmRow>, eqs: Vec<FmRow> },
    Infeasible,
    TooLarge,
}

const FM_ROW_BUDGET: usize = 2000;

/// Eliminate the coordinates *not* listed in `keep` from the system
/// `{x : ineq rows, eq rows}`, with redundancy pruning after every
/// elimination step. Rows are `[normal | offset]` in the current dims.
pub fn fourier_motzkin(
    mut ineqs: Vec<FmRow>,
    mut eqs: Vec<FmRow>,
    dim: usize,
    keep: &[usize],
) -> FmOutcome {
    let mut cols: Vec<usize> = (0..dim).collect();
    while let Some(pos) = cols.iter().rposition(|c| !keep.contains(c)) {
        match eliminate_one(&mut ineqs, &mut eqs, pos, cols.len()) {
            Ok(()) => {}
            Err(infeasible) => {
                return if infeasible {
                    FmOutcome::Infeasible
                } else {
                    FmOutcome::TooLarge
                }
            }
        }
        cols.remove(pos);
    }
    FmOutcome::System { ineqs, eqs }
}

/// Eliminate column `j` of a system with `width` coordinate columns (+1
/// offset column). `Err(true)` = infeasible, `Err(false)` = row blow-up.
fn eliminate_one(
    ineqs: &mut Vec<FmRow>,
    eqs: &mut Vec<FmRow>,
    j: usize,
    width: usize,
) -> Result<(), bool> {
    let strip = |row: &FmRow| -> FmRow {
        let mut out = row.clone();
        out.remove(j);
        out
    };

    // Prefer Gaussian substitution through an equality row.
    if let Some(k) = eqs.iter().position(|e| !e[j].is_zero()) {
        let pivot = eqs.remove(k);
        let pj = pivot[j].clone();
        let reduce = |row: &FmRow| -> FmRow {
            let f = &row[j] / &pj;
            let adjusted: FmRow = row
                .iter()
                .zip(&pivot)
                .map(|(r, p)| r - &(&f * p))
                .collect();
            strip(&adjusted)
        };
        let new_ineqs: Vec<FmRow> = ineqs.iter().map(&reduce).collect();
        let new_eqs: Vec<FmRow> = eqs.iter().map(&reduce).collect();
        *ineqs = new_ineqs;
        *eqs = new_eqs;
        return tidy(ineqs, eqs, width - 1);
    }

    let mut zero_rows: Vec<FmRow> = Vec::new();
    let mut plus: Vec<FmRow> = Vec::new();
    let mut minus: Vec<FmRow> = Vec::new();
    for row in ineqs.drain(..) {
        if row[j].is_zero() {
            zero_rows.push(strip(&row));
        } else if row[j].is_positive() {
            plus.push(row);
        } else {
            minus.push(row);
        }
    }
    if plus.len() * minus.len() + zero_rows.len() > FM_ROW_BUDGET {
        return Err(false);
    }
    for p in &plus {
        for q in &minus {
            // positive combination cancelling column j
            let cp = &p[j];
            let cq = &q[j];
            let combined: FmRow = p
                .iter()
                .zip(q)
                .map(|(a, b)| &(&(-cq) * a) + &(cp * b))
                .collect();
            zero_rows.push(strip(&combined));
        }
    }
    let new_eqs: Vec<FmRow> = eqs.iter().map(&strip).collect();
    *ineqs = zero_rows;
    *eqs = new_eqs;
    tidy(ineqs, eqs, width - 1)
}

/// Canonicalize rows, drop duplicates and same-normal dominated rows, and
/// detect trivially infeasible rows. `Err(true)` = infeasible.
fn tidy(ineqs: &mut Vec<FmRow>, eqs: &mut Vec<FmRow>, width: usize) -> Result<(), bool> {
    let mut out: Vec<FmRow> = Vec::with_capacity(ineqs.len());
    for row in ineqs.drain(..) {
        let normal_zero = row[..width].iter().all(Rat::is_zero);
        if normal_zero {
            if row[width].is_negative() {
                return Err(true);
            }
            continue;
        }
        let row = linalg::primitive(&row);
        // Same normal: keep the tighter offset.
        if let Some(existing) = out.iter_mut().find(|r| r[..width] == row[..width]) {
            if row[width] < existing[width] {
                *existing = row;
            }
            continue;
        }
        out.push(row);
    }
    out.sort_by(|a, b| linalg::lex_cmp(a, b));
    *ineqs = out;

    let mut eout: Vec<FmRow> = Vec::new();
    for row in eqs.drain(..) {
        let normal_zero = row[..width].iter().all(Rat::is_zero);
        if normal_zero {
            if !row[width].is_zero() {
                return Err(true);
            }
            continue;
        }
        let mut row = linalg::primitive(&row);
        // Canonical sign for equality rows.
        if row.iter().find(|x| !x.is_zero()).is_some_and(Rat::is_negative) {
            row = linalg::neg(&row);
        }
        if !eout.contains(&row) {
            eout.push(row);
        }
    }
    eout.sort_by(|a, b| linalg::lex_cmp(a, b));
    *eqs = eout;
    Ok(())
}
