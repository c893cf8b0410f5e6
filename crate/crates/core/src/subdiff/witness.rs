//! From an ε-subgradient at `x` to an exact subgradient at a nearby point.
//!
//! Given `x* ∈ ∂_ε f(x)`, minimizing
//! `f(y) - ⟨x*, y⟩ + √ε·(‖y-x‖₁ + |⟨x*, y-x⟩|)` produces a point `x_ε`
//! and a subgradient `x*_ε ∈ ∂f(x_ε)` of the form
//! `x* + √ε(y* + λx*)` with `‖y*‖_∞ ≤ 1` and `λ ∈ [-1,1]`, satisfying
//!
//! * `‖x_ε - x‖_∞ ≤ √ε`,
//! * `|⟨x*_ε, x_ε - x⟩| ≤ ε + √ε`,
//! * `|f(x_ε) - f(x)| ≤ ε + √ε`,
//! * `x*_ε ∈ ∂_{2ε}f(x)`.
//!
//! For max-affine `f` the whole construction is one exact vertex
//! enumeration, so every bound is verified, not approximated.

use crate::convfun::ConvexFunction;
use crate::error::{Error, Result};
use crate::polyrat::linalg::{self, RatVec};
use crate::polyrat::polyhedron::Polyhedron;
use crate::polyrat::rat::{ExtRat, Rat};
use crate::polyrat::GeneratorSystem;

use super::{build_hrep, eps_subdifferential, subdifferential};

#[derive(Clone, Debug)]
pub struct SubgradientWitness {
    pub x_eps: RatVec,
    pub xstar_eps: RatVec,
    /// Coefficient of `x*` in the dual correction, in `[-1, 1]`.
    pub lambda_eps: Rat,
    /// Dual-ball part of the correction, `‖·‖_∞ ≤ 1`.
    pub ystar_eps: RatVec,
}

pub fn witness_subgradient(
    f: &ConvexFunction,
    x: &[Rat],
    xstar: &[Rat],
    eps: &Rat,
) -> Result<SubgradientWitness> {
    if !eps.is_positive() {
        return Err(Error::BadGrid("witness construction needs eps > 0".into()));
    }
    let Some(sqrt_eps) = eps.sqrt_exact() else {
        return Err(Error::NoRationalSqrt);
    };
    let ConvexFunction::MaxAffine(ma) = f else {
        return Err(Error::UnsupportedFamily(
            "witness construction is implemented for max-affine functions".into(),
        ));
    };
    let n = ma.dim();
    if x.len() != n || xstar.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len().max(xstar.len()),
        });
    }
    let env = ConvexFunction::MaxAffine(ma.lsc_envelope());
    if !eps_subdifferential(&env, x, eps)?.member(xstar) {
        return Err(Error::NotEpsSubgradient);
    }
    let g = env.as_max_affine().expect("envelope is max-affine");

    // Lifted epigraph of f(y) - ⟨x*,y⟩ + √ε(Σᵢuᵢ + w) over (y, u, w, t).
    let dim = 2 * n + 2;
    let wi = 2 * n;
    let ti = 2 * n + 1;
    let mut ineqs: Vec<(RatVec, Rat)> = Vec::new();
    for (a, b) in g.pieces() {
        let mut row = linalg::zeros(dim);
        for i in 0..n {
            row[i] = &a[i] - &xstar[i];
            row[n + i] = sqrt_eps.clone();
        }
        row[wi] = sqrt_eps.clone();
        row[ti] = -Rat::one();
        ineqs.push((row, -b));
    }
    for i in 0..n {
        let mut up = linalg::zeros(dim);
        up[i] = Rat::one();
        up[n + i] = -Rat::one();
        ineqs.push((up, x[i].clone()));
        let mut down = linalg::zeros(dim);
        down[i] = -Rat::one();
        down[n + i] = -Rat::one();
        ineqs.push((down, -&x[i]));
    }
    let pair = linalg::dot(xstar, x);
    let mut wp = linalg::zeros(dim);
    let mut wm = linalg::zeros(dim);
    for i in 0..n {
        wp[i] = xstar[i].clone();
        wm[i] = -&xstar[i];
    }
    wp[wi] = -Rat::one();
    wm[wi] = -Rat::one();
    ineqs.push((wp, pair.clone()));
    ineqs.push((wm, -&pair));
    let dh = g.domain().hrep();
    let extend = |normal: &RatVec| {
        let mut row = normal.clone();
        row.resize(dim, Rat::zero());
        row
    };
    let mut eqs: Vec<(RatVec, Rat)> = Vec::new();
    for hs in &dh.ineqs {
        ineqs.push((extend(&hs.normal), hs.offset.clone()));
    }
    for hs in &dh.eqs {
        eqs.push((extend(&hs.normal), hs.offset.clone()));
    }
    let lifted = build_hrep(dim, ineqs, eqs).expect("lifted program is feasible at y = x");

    let mut down = linalg::zeros(dim);
    down[ti] = -Rat::one();
    let ExtRat::Finite(neg_min) = lifted.support(&down) else {
        unreachable!("penalized objective is bounded below for an eps-subgradient");
    };
    let min_t = -neg_min;
    let x_eps: RatVec = lifted
        .vertices()
        .iter()
        .filter(|v| v[ti] == min_t)
        .min_by(|a, b| linalg::lex_cmp(a, b))
        .expect("minimum is attained at a listed generator")[..n]
        .to_vec();

    // x*_ε comes from ∂f(x_ε) ∩ (x* + √ε·(unit box + [-1,1]x*)); the
    // optimality of x_ε makes the intersection nonempty.
    let d_at = subdifferential(&env, &x_eps)?;
    let box_part = Polyhedron::linf_ball(&linalg::zeros(n), &sqrt_eps);
    let seg = Polyhedron::from_vrep(
        n,
        GeneratorSystem {
            vertices: vec![
                linalg::scale(xstar, &sqrt_eps),
                linalg::scale(xstar, &-&sqrt_eps),
            ],
            rays: vec![],
        },
    )
    .unwrap();
    let target = box_part.minkowski_sum(&seg).translate(xstar);
    let feasible = d_at.intersect(&target);
    assert!(!feasible.is_empty(), "subgradient optimality certificate");
    let xstar_eps = closest_point(&feasible, xstar);

    // Decompose x*_ε - x* = √ε(y* + λx*) with λ ∈ [-1,1], ‖y*‖_∞ ≤ 1.
    let d: RatVec = linalg::sub(&xstar_eps, xstar)
        .iter()
        .map(|v| v / &sqrt_eps)
        .collect();
    let lambda = best_lambda(&d, xstar);
    let ystar: RatVec = linalg::sub(&d, &linalg::scale(xstar, &lambda));
    debug_assert!(linalg::linf_norm(&ystar) <= Rat::one());

    Ok(SubgradientWitness {
        x_eps,
        xstar_eps,
        lambda_eps: lambda,
        ystar_eps: ystar,
    })
}

/// The point of `p` with least sup-distance to `target`, lexicographically
/// smallest among the minimizers.
fn closest_point(p: &Polyhedron, target: &[Rat]) -> RatVec {
    if p.member(target) {
        return target.to_vec();
    }
    let n = target.len();
    let dim = n + 1;
    let ri = n;
    let mut ineqs: Vec<(RatVec, Rat)> = Vec::new();
    let h = p.hrep();
    for hs in &h.ineqs {
        let mut row = hs.normal.clone();
        row.resize(dim, Rat::zero());
        ineqs.push((row, hs.offset.clone()));
    }
    let mut eqs: Vec<(RatVec, Rat)> = Vec::new();
    for hs in &h.eqs {
        let mut row = hs.normal.clone();
        row.resize(dim, Rat::zero());
        eqs.push((row, hs.offset.clone()));
    }
    for i in 0..n {
        let mut up = linalg::zeros(dim);
        up[i] = Rat::one();
        up[ri] = -Rat::one();
        ineqs.push((up, target[i].clone()));
        let mut down = linalg::zeros(dim);
        down[i] = -Rat::one();
        down[ri] = -Rat::one();
        ineqs.push((down, -&target[i]));
    }
    let lifted = build_hrep(dim, ineqs, eqs).expect("nonempty set stays feasible");
    let mut obj = linalg::zeros(dim);
    obj[ri] = -Rat::one();
    let ExtRat::Finite(neg_min) = lifted.support(&obj) else {
        unreachable!("distance to a nonempty set is finite");
    };
    let min_r = -neg_min;
    lifted
        .vertices()
        .iter()
        .filter(|v| v[ri] == min_r)
        .min_by(|a, b| linalg::lex_cmp(a, b))
        .expect("minimum distance is attained")[..n]
        .to_vec()
}

/// Minimize `‖d - λ·x*‖_∞` over `λ ∈ [-1, 1]` exactly; the objective is a
/// max of `2n` affine functions of `λ`, so a minimizer sits at `±1` or at
/// a crossing of two of them.
fn best_lambda(d: &[Rat], xstar: &[Rat]) -> Rat {
    let mut lines: Vec<(Rat, Rat)> = Vec::with_capacity(2 * d.len());
    for (di, xi) in d.iter().zip(xstar) {
        lines.push((-xi, di.clone()));
        lines.push((xi.clone(), -di));
    }
    let mut candidates: Vec<Rat> = vec![-Rat::one(), Rat::one()];
    for (i, (s1, c1)) in lines.iter().enumerate() {
        for (s2, c2) in lines.iter().skip(i + 1) {
            if s1 == s2 {
                continue;
            }
            let lam = &(c2 - c1) / &(s1 - s2);
            if lam.abs() <= Rat::one() {
                candidates.push(lam);
            }
        }
    }
    let value = |lam: &Rat| -> Rat {
        lines
            .iter()
            .map(|(s, c)| s * lam + c.clone())
            .max()
            .unwrap_or_else(Rat::zero)
            .max(Rat::zero())
    };
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .min_by(|a, b| value(a).cmp(&value(b)))
        .expect("candidate list is nonempty")
}
