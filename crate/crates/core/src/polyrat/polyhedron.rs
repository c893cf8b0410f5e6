//! Closed convex polyhedra with synchronized H- and V-representations.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::dd::{self, FmOutcome};
use super::linalg::{self, RatVec};
use super::rat::{ExtRat, Rat};
use crate::error::{Error, Result};

/// `⟨normal, x⟩ ≤ offset` (or `= offset` when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: RatVec,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: RatVec, offset: Rat) -> Self {
        Halfspace { normal, offset }
    }

    fn canonical(&self) -> Halfspace {
        let mut row = self.normal.clone();
        row.push(self.offset.clone());
        let row = linalg::primitive(&row);
        let offset = row.last().unwrap().clone();
        Halfspace {
            normal: row[..row.len() - 1].to_vec(),
            offset,
        }
    }
}

/// Inequality/equality description of a polyhedron. An empty system in
/// dimension `n` describes all of ℝⁿ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceSystem {
    #[serde(default)]
    pub ineqs: Vec<Halfspace>,
    #[serde(default)]
    pub eqs: Vec<Halfspace>,
}

impl HalfspaceSystem {
    pub fn validate(&self, dim: usize) -> Result<()> {
        for h in self.ineqs.iter().chain(&self.eqs) {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.normal.len(),
                });
            }
            if linalg::is_zero_vec(&h.normal) {
                return Err(Error::ZeroNormal);
            }
        }
        Ok(())
    }
}

/// Vertex/ray description. The represented set is
/// `conv(vertices) + cone(rays)`; a line is carried as a pair of opposite
/// rays. No vertices means the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSystem {
    #[serde(default)]
    pub vertices: Vec<RatVec>,
    #[serde(default)]
    pub rays: Vec<RatVec>,
}

impl GeneratorSystem {
    fn canonical(mut self) -> Self {
        self.vertices.sort_by(|a, b| linalg::lex_cmp(a, b));
        self.vertices.dedup();
        self.rays = self.rays.iter().map(|r| linalg::primitive(r)).collect();
        self.rays.sort_by(|a, b| linalg::lex_cmp(a, b));
        self.rays.dedup();
        self
    }
}

/// A closed convex polyhedron in ℝⁿ. Immutable; representations are filled
/// in lazily and idempotently, so values can be shared across threads.
#[derive(Debug, Default)]
pub struct Polyhedron {
    dim: usize,
    empty: OnceLock<bool>,
    hrep: OnceLock<HalfspaceSystem>,
    vrep: OnceLock<GeneratorSystem>,
}

impl Clone for Polyhedron {
    fn clone(&self) -> Self {
        let p = Polyhedron {
            dim: self.dim,
            empty: OnceLock::new(),
            hrep: OnceLock::new(),
            vrep: OnceLock::new(),
        };
        if let Some(e) = self.empty.get() {
            let _ = p.empty.set(*e);
        }
        if let Some(h) = self.hrep.get() {
            let _ = p.hrep.set(h.clone());
        }
        if let Some(v) = self.vrep.get() {
            let _ = p.vrep.set(v.clone());
        }
        p
    }
}

impl Serialize for Polyhedron {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.vrep().serialize(ser)
    }
}

/// Dimension bound for the Fourier–Motzkin projection path.
pub const FM_DIM_CAP: usize = 6;

impl Polyhedron {
    pub fn from_hrep(dim: usize, h: HalfspaceSystem) -> Result<Self> {
        h.validate(dim)?;
        let p = Polyhedron {
            dim,
            ..Default::default()
        };
        p.hrep.set(h).ok();
        Ok(p)
    }

    pub fn from_vrep(dim: usize, g: GeneratorSystem) -> Result<Self> {
        for v in &g.vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        for r in &g.rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            if linalg::is_zero_vec(r) {
                return Err(Error::ZeroRay);
            }
        }
        let empty = g.vertices.is_empty();
        let p = Polyhedron {
            dim,
            ..Default::default()
        };
        let g = if empty {
            GeneratorSystem::default()
        } else {
            g.canonical()
        };
        p.vrep.set(g).ok();
        p.empty.set(empty).ok();
        if empty {
            p.hrep.set(infeasible_marker(dim)).ok();
        }
        Ok(p)
    }

    pub fn empty_set(dim: usize) -> Self {
        Polyhedron::from_vrep(dim, GeneratorSystem::default()).unwrap()
    }

    pub fn full_space(dim: usize) -> Self {
        Polyhedron::from_hrep(dim, HalfspaceSystem::default()).unwrap()
    }

    pub fn point(v: RatVec) -> Self {
        let dim = v.len();
        Polyhedron::from_vrep(
            dim,
            GeneratorSystem {
                vertices: vec![v],
                rays: vec![],
            },
        )
        .unwrap()
    }

    /// Box `{y : |y_i - center_i| ≤ radius}`.
    pub fn linf_ball(center: &[Rat], radius: &Rat) -> Self {
        let dim = center.len();
        let mut ineqs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            ineqs.push(Halfspace::new(linalg::unit(dim, i), &center[i] + radius));
            let mut n = linalg::zeros(dim);
            n[i] = -Rat::one();
            ineqs.push(Halfspace::new(n, radius - &center[i]));
        }
        Polyhedron::from_hrep(dim, HalfspaceSystem { ineqs, eqs: vec![] }).unwrap()
    }

    /// Cross-polytope `{y : Σ|y_i - center_i| ≤ radius}`.
    pub fn l1_ball(center: &[Rat], radius: &Rat) -> Self {
        let dim = center.len();
        let mut ineqs = Vec::new();
        for mask in 0..(1u32 << dim) {
            let normal: RatVec = (0..dim)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        -Rat::one()
                    } else {
                        Rat::one()
                    }
                })
                .collect();
            let offset = radius + &linalg::dot(&normal, center);
            ineqs.push(Halfspace::new(normal, offset));
        }
        Polyhedron::from_hrep(dim, HalfspaceSystem { ineqs, eqs: vec![] }).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        *self.empty.get_or_init(|| self.vrep().vertices.is_empty())
    }

    /// Halfspace representation, derived from the generators on first use.
    pub fn hrep(&self) -> &HalfspaceSystem {
        self.hrep.get_or_init(|| {
            let g = self.vrep();
            if g.vertices.is_empty() {
                return infeasible_marker(self.dim);
            }
            vrep_to_hrep(self.dim, g)
        })
    }

    /// Generator representation, derived from the halfspaces on first use.
    pub fn vrep(&self) -> &GeneratorSystem {
        self.vrep.get_or_init(|| {
            let h = self.hrep.get().expect("polyhedron has a representation");
            hrep_to_vrep(self.dim, h)
        })
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vrep().vertices
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.vrep().rays
    }

    pub fn member(&self, y: &[Rat]) -> bool {
        if self.is_empty() {
            return false;
        }
        let h = self.hrep();
        h.ineqs.iter().all(|hs| linalg::dot(&hs.normal, y) <= hs.offset)
            && h.eqs.iter().all(|hs| linalg::dot(&hs.normal, y) == hs.offset)
    }

    /// Exact supremum of `⟨d, ·⟩` over the set; `-∞` on the empty set.
    pub fn support(&self, d: &[Rat]) -> ExtRat {
        if self.is_empty() {
            return ExtRat::NegInf;
        }
        let g = self.vrep();
        if g.rays.iter().any(|r| linalg::dot(d, r).is_positive()) {
            return ExtRat::PosInf;
        }
        let best = g
            .vertices
            .iter()
            .map(|v| linalg::dot(d, v))
            .max()
            .expect("nonempty set has a vertex");
        ExtRat::Finite(best)
    }

    /// Does the recession cone contain direction `r`?
    pub fn recession_contains(&self, r: &[Rat]) -> bool {
        let h = self.hrep();
        h.ineqs
            .iter()
            .all(|hs| !linalg::dot(&hs.normal, r).is_positive())
            && h.eqs.iter().all(|hs| linalg::dot(&hs.normal, r).is_zero())
    }

    /// `inner ⊆ self`, decided exactly through inner's generators.
    pub fn contains_set(&self, inner: &Polyhedron) -> bool {
        if inner.is_empty() {
            return true;
        }
        if self.is_empty() {
            return false;
        }
        inner.vertices().iter().all(|v| self.member(v))
            && inner.rays().iter().all(|r| self.recession_contains(r))
    }

    pub fn set_eq(&self, other: &Polyhedron) -> bool {
        self.contains_set(other) && other.contains_set(self)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if self.empty.get() == Some(&true) || other.empty.get() == Some(&true) {
            return Polyhedron::empty_set(self.dim);
        }
        let a = self.hrep();
        let b = other.hrep();
        let h = HalfspaceSystem {
            ineqs: a.ineqs.iter().chain(&b.ineqs).cloned().collect(),
            eqs: a.eqs.iter().chain(&b.eqs).cloned().collect(),
        };
        Polyhedron::from_hrep(self.dim, h).unwrap()
    }

    /// Minkowski sum; the empty set absorbs everything.
    pub fn minkowski_sum(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if self.is_empty() || other.is_empty() {
            return Polyhedron::empty_set(self.dim);
        }
        let a = self.vrep();
        let b = other.vrep();
        let mut vertices = Vec::with_capacity(a.vertices.len() * b.vertices.len());
        for v in &a.vertices {
            for w in &b.vertices {
                vertices.push(linalg::add(v, w));
            }
        }
        let rays = a.rays.iter().chain(&b.rays).cloned().collect();
        Polyhedron::from_vrep(self.dim, GeneratorSystem { vertices, rays }).unwrap()
    }

    pub fn translate(&self, t: &[Rat]) -> Polyhedron {
        if self.is_empty() {
            return Polyhedron::empty_set(self.dim);
        }
        let g = self.vrep();
        Polyhedron::from_vrep(
            self.dim,
            GeneratorSystem {
                vertices: g.vertices.iter().map(|v| linalg::add(v, t)).collect(),
                rays: g.rays.clone(),
            },
        )
        .unwrap()
    }

    /// Exact image under the linear map with the given rows.
    pub fn linear_image(&self, rows: &[RatVec]) -> Polyhedron {
        let out_dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == self.dim));
        if self.is_empty() {
            return Polyhedron::empty_set(out_dim);
        }
        let g = self.vrep();
        let map = |v: &RatVec| -> RatVec { rows.iter().map(|row| linalg::dot(row, v)).collect() };
        let vertices: Vec<RatVec> = g.vertices.iter().map(map).collect();
        let rays: Vec<RatVec> = g
            .rays
            .iter()
            .map(map)
            .filter(|r| !linalg::is_zero_vec(r))
            .collect();
        Polyhedron::from_vrep(out_dim, GeneratorSystem { vertices, rays }).unwrap()
    }

    pub fn scale(&self, k: &Rat) -> Polyhedron {
        if self.is_empty() {
            return Polyhedron::empty_set(self.dim);
        }
        let g = self.vrep();
        let vertices = g.vertices.iter().map(|v| linalg::scale(v, k)).collect();
        let rays = if k.is_zero() {
            vec![]
        } else if k.is_negative() {
            g.rays.iter().map(|r| linalg::neg(r)).collect()
        } else {
            g.rays.clone()
        };
        Polyhedron::from_vrep(self.dim, GeneratorSystem { vertices, rays }).unwrap()
    }

    /// Image under every scalar in the interval `[lo, hi]`, `0 ∉ [lo, hi]`.
    pub fn interval_scale(&self, lo: &Rat, hi: &Rat) -> Polyhedron {
        assert!(lo <= hi && (lo.is_positive() || hi.is_negative()));
        closed_conv_union(self.dim, &[self.scale(lo), self.scale(hi)])
    }

    /// Orthogonal projection onto the coordinates in `keep` (strictly
    /// increasing). Runs Fourier–Motzkin when an H-representation is at
    /// hand within the dimension cap, otherwise projects generators.
    pub fn project(&self, keep: &[usize]) -> Polyhedron {
        assert!(!keep.is_empty() && keep.windows(2).all(|w| w[0] < w[1]));
        assert!(*keep.last().unwrap() < self.dim);
        if self.is_empty() {
            return Polyhedron::empty_set(keep.len());
        }
        if self.dim <= FM_DIM_CAP {
            if let Some(h) = self.hrep.get() {
                let to_row = |hs: &Halfspace| -> RatVec {
                    let mut row = hs.normal.clone();
                    row.push(hs.offset.clone());
                    row
                };
                let ineqs = h.ineqs.iter().map(to_row).collect();
                let eqs = h.eqs.iter().map(to_row).collect();
                match dd::fourier_motzkin(ineqs, eqs, self.dim, keep) {
                    FmOutcome::System { ineqs, eqs } => {
                        let of_row = |row: &RatVec| {
                            Halfspace::new(
                                row[..row.len() - 1].to_vec(),
                                row.last().unwrap().clone(),
                            )
                        };
                        let h = HalfspaceSystem {
                            ineqs: ineqs.iter().map(of_row).collect(),
                            eqs: eqs.iter().map(of_row).collect(),
                        };
                        return Polyhedron::from_hrep(keep.len(), h).unwrap();
                    }
                    FmOutcome::Infeasible => return Polyhedron::empty_set(keep.len()),
                    FmOutcome::TooLarge => {}
                }
            }
        }
        let g = self.vrep();
        let pick = |v: &RatVec| -> RatVec { keep.iter().map(|&i| v[i].clone()).collect() };
        let vertices: Vec<RatVec> = g.vertices.iter().map(pick).collect();
        let rays: Vec<RatVec> = g
            .rays
            .iter()
            .map(pick)
            .filter(|r| !linalg::is_zero_vec(r))
            .collect();
        Polyhedron::from_vrep(keep.len(), GeneratorSystem { vertices, rays }).unwrap()
    }

    /// Rebuild with a minimal, deterministically ordered generator set.
    pub fn canonicalized(&self) -> Polyhedron {
        if self.is_empty() {
            return Polyhedron::empty_set(self.dim);
        }
        let h = vrep_to_hrep(self.dim, self.vrep());
        let g = hrep_to_vrep(self.dim, &h);
        let p = Polyhedron {
            dim: self.dim,
            ..Default::default()
        };
        p.hrep.set(h).ok();
        p.vrep.set(g).ok();
        p.empty.set(false).ok();
        p
    }

    /// An interior-leaning rational point: average of vertices, pushed by
    /// the ray sum. `None` on the empty set.
    pub fn sample_point(&self) -> Option<RatVec> {
        if self.is_empty() {
            return None;
        }
        let g = self.vrep();
        let k = Rat::from_int(g.vertices.len() as i64);
        let mut p = linalg::zeros(self.dim);
        for v in &g.vertices {
            p = linalg::add(&p, v);
        }
        p = linalg::scale(&p, &k.recip());
        for r in &g.rays {
            p = linalg::add(&p, r);
        }
        Some(p)
    }

    /// A point of the set avoiding finitely many excluded points, when one
    /// exists.
    pub fn sample_point_avoiding(&self, bad: &[RatVec]) -> Option<RatVec> {
        let p = self.sample_point()?;
        if !bad.contains(&p) {
            return Some(p);
        }
        let g = self.vrep();
        // Walk from the sample toward each vertex / along each ray; each
        // line meets the finite excluded set at most finitely often.
        let mut dirs: Vec<RatVec> = g
            .vertices
            .iter()
            .map(|v| linalg::sub(v, &p))
            .filter(|d| !linalg::is_zero_vec(d))
            .collect();
        dirs.extend(g.rays.iter().cloned());
        if dirs.is_empty() {
            return None; // the set is the single excluded point
        }
        for d in &dirs {
            let mut t = Rat::one();
            for _ in 0..=bad.len() {
                let cand = linalg::add(&p, &linalg::scale(d, &t));
                if self.member(&cand) && !bad.contains(&cand) {
                    return Some(cand);
                }
                t = &t * &Rat::frac(1, 2);
            }
        }
        None
    }
}

fn infeasible_marker(dim: usize) -> HalfspaceSystem {
    let e = linalg::unit(dim, 0);
    HalfspaceSystem {
        ineqs: vec![
            Halfspace::new(e.clone(), -Rat::one()),
            Halfspace::new(linalg::neg(&e), -Rat::one()),
        ],
        eqs: vec![],
    }
}

/// Vertex/ray enumeration through the homogenization cone.
fn hrep_to_vrep(dim: usize, h: &HalfspaceSystem) -> GeneratorSystem {
    let lift = |hs: &Halfspace| -> RatVec {
        let mut row = hs.normal.clone();
        row.push(-&hs.offset);
        row
    };
    let mut ineqs: Vec<RatVec> = h.ineqs.iter().map(lift).collect();
    let mut t_row = linalg::zeros(dim + 1);
    t_row[dim] = -Rat::one();
    ineqs.push(t_row);
    let eqs: Vec<RatVec> = h.eqs.iter().map(lift).collect();

    let gens = dd::cone_generators(&ineqs, &eqs, dim + 1);
    for l in &gens.lines {
        debug_assert!(l[dim].is_zero(), "lineality must be horizontal");
    }

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &gens.rays {
        let t = &r[dim];
        if t.is_positive() {
            let inv = t.recip();
            vertices.push(linalg::scale(&r[..dim], &inv));
        } else {
            debug_assert!(t.is_zero());
            rays.push(r[..dim].to_vec());
        }
    }
    if vertices.is_empty() {
        return GeneratorSystem::default();
    }
    for l in &gens.lines {
        rays.push(l[..dim].to_vec());
        rays.push(linalg::neg(&l[..dim]));
    }
    GeneratorSystem { vertices, rays }.canonical()
}

/// Facet enumeration by polarity on the homogenization cone.
fn vrep_to_hrep(dim: usize, g: &GeneratorSystem) -> HalfspaceSystem {
    debug_assert!(!g.vertices.is_empty());
    let mut rows: Vec<RatVec> = Vec::with_capacity(g.vertices.len() + g.rays.len());
    for v in &g.vertices {
        let mut row = v.clone();
        row.push(Rat::one());
        rows.push(row);
    }
    for r in &g.rays {
        let mut row = r.clone();
        row.push(Rat::zero());
        rows.push(row);
    }
    let dual = dd::cone_generators(&rows, &[], dim + 1);

    // Tighten each inequality to the exact support so offsets are attained
    // even when the set is lower-dimensional.
    let tight_offset = |normal: &RatVec| -> Rat {
        g.vertices
            .iter()
            .map(|v| linalg::dot(normal, v))
            .max()
            .expect("nonempty generator system")
    };
    let mut ineqs = Vec::new();
    for y in &dual.rays {
        let normal = y[..dim].to_vec();
        if linalg::is_zero_vec(&normal) {
            continue; // vacuous 0 ≤ positive row
        }
        let offset = tight_offset(&normal);
        debug_assert!(offset <= -&y[dim]);
        let hs = Halfspace::new(normal, offset).canonical();
        if !ineqs.contains(&hs) {
            ineqs.push(hs);
        }
    }
    let mut eqs = Vec::new();
    for y in &dual.lines {
        let normal = y[..dim].to_vec();
        debug_assert!(!linalg::is_zero_vec(&normal));
        let mut hs = Halfspace::new(normal, -&y[dim]).canonical();
        if hs
            .normal
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(Rat::is_negative)
        {
            hs = Halfspace::new(linalg::neg(&hs.normal), -&hs.offset);
        }
        eqs.push(hs);
    }
    ineqs.sort_by(|a, b| linalg::lex_cmp(&a.normal, &b.normal).then(a.offset.cmp(&b.offset)));
    eqs.sort_by(|a, b| linalg::lex_cmp(&a.normal, &b.normal).then(a.offset.cmp(&b.offset)));
    HalfspaceSystem { ineqs, eqs }
}

/// Closed convex hull of a finite union: `cl co(∪ parts)`. The convex hull
/// of finitely many polyhedra is again finitely generated, so taking all
/// vertices and rays together is exact.
pub fn closed_conv_union(dim: usize, parts: &[Polyhedron]) -> Polyhedron {
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for p in parts {
        assert_eq!(p.dim(), dim, "dimension mismatch");
        if p.is_empty() {
            continue;
        }
        let g = p.vrep();
        vertices.extend(g.vertices.iter().cloned());
        rays.extend(g.rays.iter().cloned());
    }
    if vertices.is_empty() {
        return Polyhedron::empty_set(dim);
    }
    Polyhedron::from_vrep(dim, GeneratorSystem { vertices, rays }).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(xs: &[i64]) -> RatVec {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn interval(lo: i64, hi: i64) -> Polyhedron {
        Polyhedron::from_hrep(
            1,
            HalfspaceSystem {
                ineqs: vec![
                    Halfspace::new(rv(&[1]), Rat::from_int(hi)),
                    Halfspace::new(rv(&[-1]), Rat::from_int(-lo)),
                ],
                eqs: vec![],
            },
        )
        .unwrap()
    }

    #[test]
    fn interval_endpoints() {
        let p = interval(0, 1);
        let g = p.vrep();
        assert_eq!(g.vertices, vec![rv(&[0]), rv(&[1])]);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn halfline_vertex_and_ray() {
        let p = Polyhedron::from_hrep(
            1,
            HalfspaceSystem {
                ineqs: vec![Halfspace::new(rv(&[-1]), Rat::zero())],
                eqs: vec![],
            },
        )
        .unwrap();
        let g = p.vrep();
        assert_eq!(g.vertices, vec![rv(&[0])]);
        assert_eq!(g.rays, vec![rv(&[1])]);
    }

    #[test]
    fn linf_ball_has_four_corners() {
        let p = Polyhedron::linf_ball(&rv(&[0, 0]), &Rat::one());
        assert_eq!(p.vertices().len(), 4);
        assert!(p.rays().is_empty());
        for v in p.vertices() {
            assert!(v.iter().all(|c| c.abs() == Rat::one()));
        }
    }

    #[test]
    fn simplex_round_trip() {
        let tri = Polyhedron::from_vrep(
            2,
            GeneratorSystem {
                vertices: vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1])],
                rays: vec![],
            },
        )
        .unwrap();
        let h = tri.hrep();
        assert_eq!(h.ineqs.len(), 3);
        let again = Polyhedron::from_hrep(2, h.clone()).unwrap();
        assert!(again.set_eq(&tri));
    }

    #[test]
    fn intersect_basics() {
        let a = interval(-1, 1);
        let b = interval(0, 2);
        let c = a.intersect(&b);
        assert!(c.set_eq(&interval(0, 1)));
        assert!(a.intersect(&Polyhedron::full_space(1)).set_eq(&a));
        let disjoint = interval(5, 6);
        assert!(a.intersect(&disjoint).is_empty());
    }

    #[test]
    fn minkowski_basics() {
        let s = interval(0, 1).minkowski_sum(&interval(0, 2));
        assert!(s.set_eq(&interval(0, 3)));
        let e = Polyhedron::empty_set(1).minkowski_sum(&Polyhedron::full_space(1));
        assert!(e.is_empty());
    }

    #[test]
    fn conv_union_of_gap() {
        let u = closed_conv_union(1, &[interval(-2, -1), interval(1, 2)]);
        assert!(u.set_eq(&interval(-2, 2)));
        let opposite_halflines = closed_conv_union(
            1,
            &[
                Polyhedron::from_vrep(
                    1,
                    GeneratorSystem {
                        vertices: vec![rv(&[-2])],
                        rays: vec![rv(&[-1])],
                    },
                )
                .unwrap(),
                Polyhedron::from_vrep(
                    1,
                    GeneratorSystem {
                        vertices: vec![rv(&[2])],
                        rays: vec![rv(&[1])],
                    },
                )
                .unwrap(),
            ],
        );
        assert!(opposite_halflines.set_eq(&Polyhedron::full_space(1)));
        assert!(closed_conv_union(1, &[Polyhedron::empty_set(1)]).is_empty());
    }

    #[test]
    fn support_cases() {
        let p = interval(-1, 1);
        assert_eq!(p.support(&rv(&[1])), ExtRat::Finite(Rat::one()));
        assert_eq!(Polyhedron::empty_set(1).support(&rv(&[1])), ExtRat::NegInf);
        let ray = Polyhedron::from_vrep(
            1,
            GeneratorSystem {
                vertices: vec![rv(&[0])],
                rays: vec![rv(&[1])],
            },
        )
        .unwrap();
        assert_eq!(ray.support(&rv(&[1])), ExtRat::PosInf);
    }

    #[test]
    fn member_and_containment() {
        let p = interval(-1, 1);
        assert!(p.member(&rv(&[0])));
        assert!(!p.member(&rv(&[2])));
        assert!(p.member(&rv(&[1])));
        assert!(interval(-1, 2).contains_set(&interval(0, 1)));
        assert!(!interval(0, 1).contains_set(&Polyhedron::full_space(1)));
        assert!(interval(0, 1).contains_set(&Polyhedron::empty_set(1)));
    }

    #[test]
    fn projection_shadow() {
        let tri = Polyhedron::from_vrep(
            2,
            GeneratorSystem {
                vertices: vec![rv(&[0, 0]), rv(&[2, 1]), rv(&[1, 3])],
                rays: vec![],
            },
        )
        .unwrap();
        // Force the H-representation so FM is exercised, then compare with
        // the generator route.
        let _ = tri.hrep();
        let shadow = tri.project(&[0]);
        assert!(shadow.set_eq(&interval(0, 2)));
        let gen_route = Polyhedron::from_vrep(2, tri.vrep().clone())
            .unwrap()
            .project(&[0]);
        assert!(shadow.set_eq(&gen_route));
        assert!(Polyhedron::empty_set(2).project(&[0]).is_empty());
    }

    #[test]
    fn linear_image_cases() {
        let seg = interval(0, 1);
        let ident = seg.linear_image(&[rv(&[1])]);
        assert!(ident.set_eq(&seg));
        // Simplex weights to the segment between two images.
        let delta2 = Polyhedron::from_vrep(
            2,
            GeneratorSystem {
                vertices: vec![rv(&[1, 0]), rv(&[0, 1])],
                rays: vec![],
            },
        )
        .unwrap();
        let seg2 = delta2.linear_image(&[rv(&[-3, 5])]);
        assert!(seg2.set_eq(&interval(-3, 5)));
    }

    #[test]
    fn full_space_round_trip() {
        let f = Polyhedron::full_space(2);
        let g = f.vrep();
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.rays.len(), 4);
        let h2 = vrep_to_hrep(2, g);
        assert!(h2.ineqs.is_empty() && h2.eqs.is_empty());
    }

    #[test]
    fn empty_flag_is_explicit() {
        let e = Polyhedron::empty_set(3);
        assert!(e.is_empty());
        assert!(!e.member(&rv(&[0, 0, 0])));
        assert_eq!(e.support(&rv(&[1, 0, 0])), ExtRat::NegInf);
    }

    #[test]
    fn sample_point_avoids_excluded() {
        let p = interval(0, 1);
        let bad = vec![rv(&[0]), p.sample_point().unwrap()];
        let q = p.sample_point_avoiding(&bad).unwrap();
        assert!(p.member(&q) && !bad.contains(&q));
        let single = Polyhedron::point(rv(&[3]));
        assert!(single.sample_point_avoiding(&[rv(&[3])]).is_none());
    }
}
