//! Exact subdifferential calculus: `∂f`, `∂_ε f`, normal and ε-normal
//! sets, nearby-point enlargements, and approximate-to-exact subgradient
//! witnesses.

mod witness;
mod enlargement;

pub use witness::{witness_subgradient, SubgradientWitness};
pub use enlargement::{
    enlargement, enlargement_member, BallNorm, EnlargementQuery, EnlargementSandwich,
    EnlargementVariant,
};

use crate::convfun::{ConvexFunction, MaxAffine, Value};
use crate::error::{Error, Result};
use crate::polyrat::linalg::{self, RatVec};
use crate::polyrat::polyhedron::{Halfspace, HalfspaceSystem, Polyhedron};
use crate::polyrat::rat::Rat;
use crate::polyrat::GeneratorSystem;

/// Assemble an H-representation while resolving zero-normal rows: a
/// vacuous row is dropped, a violated one makes the set empty (`None`).
pub(crate) fn build_hrep(
    dim: usize,
    ineqs: Vec<(RatVec, Rat)>,
    eqs: Vec<(RatVec, Rat)>,
) -> Option<Polyhedron> {
    let mut hi = Vec::with_capacity(ineqs.len());
    for (normal, offset) in ineqs {
        if linalg::is_zero_vec(&normal) {
            if offset.is_negative() {
                return None;
            }
            continue;
        }
        hi.push(Halfspace::new(normal, offset));
    }
    let mut he = Vec::with_capacity(eqs.len());
    for (normal, offset) in eqs {
        if linalg::is_zero_vec(&normal) {
            if !offset.is_zero() {
                return None;
            }
            continue;
        }
        he.push(Halfspace::new(normal, offset));
    }
    Some(Polyhedron::from_hrep(dim, HalfspaceSystem { ineqs: hi, eqs: he }).unwrap())
}

fn empty_or(dim: usize, p: Option<Polyhedron>) -> Polyhedron {
    p.unwrap_or_else(|| Polyhedron::empty_set(dim))
}

/// Exact Fenchel subdifferential `∂f(x)`.
///
/// Empty at points outside the domain, at points whose value is overridden
/// above the lsc envelope, and at the corner of the analytic catalog.
pub fn subdifferential(f: &ConvexFunction, x: &[Rat]) -> Result<Polyhedron> {
    let dim = f.dim();
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    match f {
        ConvexFunction::MaxAffine(ma) => {
            let fx = ma.eval(x);
            if !fx.is_finite() || fx > ma.envelope_value(x) {
                return Ok(Polyhedron::empty_set(dim));
            }
            let env = ma.lsc_envelope();
            Ok(active_subgradient(&env, x))
        }
        ConvexFunction::Analytic(a) => {
            let u = a.arg(&x[0]);
            if !u.is_positive() {
                return Ok(Polyhedron::empty_set(1));
            }
            let Some(root) = u.sqrt_exact() else {
                return Err(Error::IrrationalBoundary(format!(
                    "slope of the analytic catalog at argument {u} is irrational"
                )));
            };
            let slope = -&a.scale / (Rat::from_int(2) * root);
            let slope = if a.reflect { -slope } else { slope };
            Ok(Polyhedron::point(vec![slope]))
        }
    }
}

/// `conv{active piece gradients} + (normal cone of the domain at x)` for a
/// function that agrees with its envelope at `x`.
fn active_subgradient(env: &MaxAffine, x: &[Rat]) -> Polyhedron {
    let dim = env.dim();
    let base = env.base_value(x);
    let vertices: Vec<RatVec> = env
        .pieces()
        .iter()
        .filter(|(a, b)| linalg::dot(a, x) + b.clone() == base)
        .map(|(a, _)| a.clone())
        .collect();
    let h = env.domain().hrep();
    let mut rays = Vec::new();
    for hs in &h.ineqs {
        if linalg::dot(&hs.normal, x) == hs.offset {
            rays.push(hs.normal.clone());
        }
    }
    for hs in &h.eqs {
        rays.push(hs.normal.clone());
        rays.push(linalg::neg(&hs.normal));
    }
    Polyhedron::from_vrep(dim, GeneratorSystem { vertices, rays }).unwrap()
}

/// Exact ε-subdifferential `∂_ε f(x)`; empty whenever `f(x)` is not finite.
///
/// For max-affine functions this is a slice of the conjugate's epigraph:
/// `{g : f*(g) ≤ ⟨g,x⟩ - f(x) + ε}`, which is immediate from the cached
/// epigraph H-representation. Conjugation factors through the lsc
/// envelope while `f(x)` keeps any overridden value, so non-lsc points
/// come out right without special cases.
pub fn eps_subdifferential(f: &ConvexFunction, x: &[Rat], eps: &Rat) -> Result<Polyhedron> {
    let dim = f.dim();
    if eps.is_negative() {
        return Err(Error::BadGrid("negative epsilon".into()));
    }
    let fx = f.eval(x);
    let Value::Fin(q) = &fx else {
        return Ok(Polyhedron::empty_set(dim));
    };
    match f {
        ConvexFunction::MaxAffine(ma) => {
            let fx_rat = q.as_rat().expect("max-affine values are rational").clone();
            let epi = ma.conjugate_epigraph();
            let h = epi.hrep();
            let shift = &fx_rat - eps;
            let slice_row = |hs: &Halfspace| -> (RatVec, Rat) {
                let alpha = &hs.normal[..dim];
                let beta = &hs.normal[dim];
                let normal = linalg::add(alpha, &linalg::scale(x, beta));
                let offset = &hs.offset + &(beta * &shift);
                (normal, offset)
            };
            let ineqs: Vec<_> = h.ineqs.iter().map(slice_row).collect();
            let eqs: Vec<_> = h.eqs.iter().map(slice_row).collect();
            Ok(empty_or(dim, build_hrep(dim, ineqs, eqs)))
        }
        ConvexFunction::Analytic(a) => analytic_eps_subdiff(a, &x[0], eps),
    }
}

/// Closed-form `∂_ε(-s√·)(x)` pushed through the reflect/shift transform.
fn analytic_eps_subdiff(
    a: &crate::convfun::Analytic1D,
    x: &Rat,
    eps: &Rat,
) -> Result<Polyhedron> {
    let u = a.arg(x);
    if u.is_negative() {
        return Ok(Polyhedron::empty_set(1));
    }
    let s = &a.scale;
    let delta = eps / s;
    let flip = a.reflect;
    // Underlying slopes c of -√· with the chain rule g = c·s·(±1).
    let to_gradient = |c: Rat| -> Rat {
        let g = &c * s;
        if flip {
            -g
        } else {
            g
        }
    };
    if u.is_zero() {
        if delta.is_zero() {
            return Ok(Polyhedron::empty_set(1));
        }
        // {c ≤ -1/(4δ)}
        let c_hi = -Rat::one() / (Rat::from_int(4) * delta);
        let vertex = to_gradient(c_hi);
        let ray = if flip { Rat::one() } else { -Rat::one() };
        return Ok(Polyhedron::from_vrep(
            1,
            GeneratorSystem {
                vertices: vec![vec![vertex]],
                rays: vec![vec![ray]],
            },
        )
        .unwrap());
    }
    let Some(root) = u.sqrt_exact() else {
        return Err(Error::IrrationalBoundary(format!(
            "epsilon-subdifferential boundary at argument {u} is irrational"
        )));
    };
    if delta.is_zero() {
        let c = -Rat::one() / (Rat::from_int(2) * root.clone());
        return Ok(Polyhedron::point(vec![to_gradient(c)]));
    }
    // 4u·c² + 4(√u+δ)·c + 1 ≤ 0, an interval with endpoints
    // (-(√u+δ) ± √(δ²+2δ√u)) / (2u).
    let disc = &delta.square() + &(Rat::from_int(2) * &delta * &root);
    let Some(disc_root) = disc.sqrt_exact() else {
        return Err(Error::IrrationalBoundary(format!(
            "epsilon-subdifferential endpoints at argument {u}, epsilon {eps} are irrational"
        )));
    };
    let two_u = Rat::from_int(2) * &u;
    let mid = -(&root + &delta);
    let c_lo = &(&mid - &disc_root) / &two_u;
    let c_hi = &(&mid + &disc_root) / &two_u;
    let (g1, g2) = (to_gradient(c_lo), to_gradient(c_hi));
    let (lo, hi) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
    Ok(Polyhedron::from_vrep(
        1,
        GeneratorSystem {
            vertices: vec![vec![lo], vec![hi]],
            rays: vec![],
        },
    )
    .unwrap())
}

/// ε-normal set of a convex polyhedron at `x`: all `x*` with
/// `⟨x*, y - x⟩ ≤ ε` over the set; empty when `x` is outside, the normal
/// cone when `ε = 0`.
pub fn normal_cone(a: &Polyhedron, x: &[Rat], eps: &Rat) -> Polyhedron {
    let dim = a.dim();
    if !a.member(x) {
        return Polyhedron::empty_set(dim);
    }
    if eps.is_zero() {
        let h = a.hrep();
        let mut rays = Vec::new();
        for hs in &h.ineqs {
            if linalg::dot(&hs.normal, x) == hs.offset {
                rays.push(hs.normal.clone());
            }
        }
        for hs in &h.eqs {
            rays.push(hs.normal.clone());
            rays.push(linalg::neg(&hs.normal));
        }
        return Polyhedron::from_vrep(
            dim,
            GeneratorSystem {
                vertices: vec![linalg::zeros(dim)],
                rays,
            },
        )
        .unwrap();
    }
    // One inequality per generator of the set.
    let g = a.vrep();
    let mut ineqs = Vec::new();
    for v in &g.vertices {
        ineqs.push((linalg::sub(v, x), eps.clone()));
    }
    for r in &g.rays {
        ineqs.push((r.clone(), Rat::zero()));
    }
    empty_or(dim, build_hrep(dim, ineqs, vec![]))
}
