//! Nearby-point enlargements of the subdifferential.
//!
//! The base set collects exact subgradients taken at points `y` close to
//! `x` in value and position, with the pairing bound `|⟨y*, y-x⟩| ≤ ε`.
//! The refined variant swaps the pairing bound for membership in
//! `∂_{2ε}f(x)`; the ball-free variant drops the proximity constraint
//! altogether. The bilinear
//! coupling between `y` and `y*` makes these sets non-polyhedral in
//! general, so they are carried as certified inner/outer lists of
//! polyhedra plus an exact pointwise membership oracle.

use std::collections::BTreeSet;

use crate::convfun::{Analytic1D, ConvexFunction, Value};
use crate::error::{Error, Result};
use crate::polyrat::linalg::{self, RatVec};
use crate::polyrat::polyhedron::Polyhedron;
use crate::polyrat::rat::Rat;
use crate::polyrat::GeneratorSystem;

use super::{build_hrep, eps_subdifferential, subdifferential};

/// Which enlargement is being computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnlargementVariant {
    /// Ball + value band + pairing bound.
    Base,
    /// Ball + value band + membership in `∂_{2ε}f(x)`.
    Refined,
    /// Value band + pairing bound, no proximity ball.
    NoBall,
}

/// Norm defining the ball `{y : ‖y-x‖ ≤ ε}`. The sup-norm is the default;
/// the 1-norm exists to witness norm-independence of the grid limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BallNorm {
    #[default]
    LInf,
    L1,
}

#[derive(Clone, Debug)]
pub struct EnlargementQuery {
    pub f: ConvexFunction,
    pub x: RatVec,
    pub eps: Rat,
    pub norm: BallNorm,
    pub variant: EnlargementVariant,
}

impl EnlargementQuery {
    pub fn new(f: ConvexFunction, x: RatVec, eps: Rat, variant: EnlargementVariant) -> Result<Self> {
        if x.len() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: f.dim(),
                got: x.len(),
            });
        }
        if !eps.is_positive() {
            return Err(Error::BadGrid("enlargement needs eps > 0".into()));
        }
        Ok(EnlargementQuery {
            f,
            x,
            eps,
            norm: BallNorm::LInf,
            variant,
        })
    }

    pub fn with_norm(mut self, norm: BallNorm) -> Self {
        self.norm = norm;
        self
    }

    fn ball(&self) -> Polyhedron {
        match self.norm {
            BallNorm::LInf => Polyhedron::linf_ball(&self.x, &self.eps),
            BallNorm::L1 => Polyhedron::l1_ball(&self.x, &self.eps),
        }
    }
}

/// Certified two-sided approximation of an enlargement: each `inner` part
/// is a subset of the true set, and the true set is covered by the union
/// of the `outer` parts. `exact` is set when the two unions provably
/// coincide.
#[derive(Clone, Debug)]
pub struct EnlargementSandwich {
    pub query: EnlargementQuery,
    pub inner: Vec<Polyhedron>,
    pub outer: Vec<Polyhedron>,
    pub exact: bool,
}

impl EnlargementSandwich {
    /// Closed convex hull of the certified inner union.
    pub fn inner_hull(&self) -> Polyhedron {
        crate::polyrat::closed_conv_union(self.query.f.dim(), &self.inner)
    }

    /// Closed convex hull of the outer cover.
    pub fn outer_hull(&self) -> Polyhedron {
        crate::polyrat::closed_conv_union(self.query.f.dim(), &self.outer)
    }

    pub fn is_certainly_empty(&self) -> bool {
        self.outer.iter().all(Polyhedron::is_empty)
    }

    fn empty(query: EnlargementQuery) -> Self {
        EnlargementSandwich {
            query,
            inner: vec![],
            outer: vec![],
            exact: true,
        }
    }
}

fn exactness(inner: &[Polyhedron], outer: &[Polyhedron]) -> bool {
    outer
        .iter()
        .all(|o| inner.iter().any(|i| i.contains_set(o)))
}

/// Compute a certified sandwich for the enlargement described by `q`.
pub fn enlargement(q: &EnlargementQuery) -> Result<EnlargementSandwich> {
    let fx = q.f.eval(&q.x);
    if !fx.is_finite() {
        return Ok(EnlargementSandwich::empty(q.clone()));
    }
    match &q.f {
        ConvexFunction::MaxAffine(_) => max_affine_sandwich(q, &fx),
        ConvexFunction::Analytic(a) => analytic_sandwich(q, a),
    }
}

/// Max-affine case: walk the linearity cells. On each cell the function is
/// affine and the subdifferential is constant, so the witness region
/// (cell ∩ ball ∩ value band) is a polyhedron. Cells whose region can be
/// witnessed contribute their subdifferential to the outer cover; the
/// region's vertices (plus `x` itself) act as inner witnesses with the
/// pairing bound applied exactly.
fn max_affine_sandwich(q: &EnlargementQuery, fx: &Value) -> Result<EnlargementSandwich> {
    let f = &q.f;
    let dim = f.dim();
    let ma = f.as_max_affine().expect("max-affine path");
    let fx_rat = fx
        .as_rat()
        .expect("max-affine values are rational")
        .clone();
    let env = ma.lsc_envelope();
    let bad = ma.raised_points();
    let ball = (q.variant != EnlargementVariant::NoBall).then(|| q.ball());
    let hat_cap = (q.variant == EnlargementVariant::Refined)
        .then(|| {
            let two_eps = &q.eps * &Rat::from_int(2);
            eps_subdifferential(f, &q.x, &two_eps)
        })
        .transpose()?;

    let mut outer: Vec<Polyhedron> = Vec::new();
    let mut witnesses: BTreeSet<RatVec> = BTreeSet::new();
    witnesses.insert(q.x.clone());

    for cell in env.cells()? {
        // value band |f(y) - f(x)| ≤ ε, affine on the cell
        let (a, b) = &cell.affine;
        let band_rows = vec![
            (a.clone(), &(&fx_rat + &q.eps) - b),
            (linalg::neg(a), &(&q.eps - &fx_rat) + b),
        ];
        let Some(band) = build_hrep(dim, band_rows, vec![]) else {
            continue;
        };
        let mut region = cell.region.intersect(&band);
        if let Some(ball) = &ball {
            region = region.intersect(ball);
        }
        if region.is_empty() {
            continue;
        }
        if !bad.is_empty() && region.sample_point_avoiding(&bad).is_none() {
            continue; // only raised points could witness this cell
        }
        let part = match &hat_cap {
            Some(cap) => cell.subgrad.intersect(cap),
            None => cell.subgrad.clone(),
        };
        if !part.is_empty() {
            outer.push(part);
        }
        for v in region.vertices() {
            witnesses.insert(v.clone());
        }
    }

    let mut inner: Vec<Polyhedron> = Vec::new();
    for y in &witnesses {
        if bad.contains(y) {
            continue;
        }
        // the witness must satisfy the ball and band itself
        if let Some(ball) = &ball {
            if !ball.member(y) {
                continue;
            }
        }
        if !f.eval(y).within(fx, &q.eps) {
            continue;
        }
        let mut part = subdifferential(f, y)?;
        if part.is_empty() {
            continue;
        }
        if q.variant != EnlargementVariant::Refined {
            let d = linalg::sub(y, &q.x);
            if !linalg::is_zero_vec(&d) {
                let pairing = build_hrep(
                    dim,
                    vec![(d.clone(), q.eps.clone()), (linalg::neg(&d), q.eps.clone())],
                    vec![],
                )
                .expect("pairing box is feasible");
                part = part.intersect(&pairing);
            }
        } else if let Some(cap) = &hat_cap {
            part = part.intersect(cap);
        }
        if !part.is_empty() {
            inner.push(part);
        }
    }

    let exact = exactness(&inner, &outer);
    Ok(EnlargementSandwich {
        query: q.clone(),
        inner,
        outer,
        exact,
    })
}

/// Analytic catalog at the domain corner: the enlargement is an exact
/// halfline. Away from the corner the endpoints are irrational in
/// general, so only the membership oracle is offered there.
fn analytic_sandwich(q: &EnlargementQuery, a: &Analytic1D) -> Result<EnlargementSandwich> {
    let u_x = a.arg(&q.x[0]);
    debug_assert!(!u_x.is_negative(), "finite value checked by caller");
    if !u_x.is_zero() {
        return Err(Error::IrrationalBoundary(
            "analytic enlargement away from the domain corner".into(),
        ));
    }
    let s = &a.scale;
    // Slopes are c = -1/(2t) over feasible t = √(arg) > 0. The value band
    // caps t at ε/s; the ball caps t² at ε; the pairing bound (s·t/2 ≤ ε)
    // is implied by the band.
    let mut t_max = &q.eps / s;
    if q.variant != EnlargementVariant::NoBall && t_max.square() > q.eps {
        let Some(root) = q.eps.sqrt_exact() else {
            return Err(Error::IrrationalBoundary(
                "ball-limited analytic enlargement needs a square eps".into(),
            ));
        };
        t_max = root;
    }
    let mut c_hi = -Rat::one() / (Rat::from_int(2) * t_max);
    if q.variant == EnlargementVariant::Refined {
        // cap by ∂_{2ε}f(x): c ≤ -s/(8ε)
        let cap = -s / (Rat::from_int(8) * &q.eps);
        c_hi = c_hi.min(cap);
    }
    let g_vertex = {
        let g = &c_hi * s;
        if a.reflect {
            -g
        } else {
            g
        }
    };
    let ray = if a.reflect { Rat::one() } else { -Rat::one() };
    let set = Polyhedron::from_vrep(
        1,
        GeneratorSystem {
            vertices: vec![vec![g_vertex]],
            rays: vec![vec![ray]],
        },
    )
    .unwrap();
    Ok(EnlargementSandwich {
        query: q.clone(),
        inner: vec![set.clone()],
        outer: vec![set],
        exact: true,
    })
}

/// Exact membership of `ystar` in the enlargement, with a witness point on
/// success.
///
/// For max-affine `f`, the set `{y : y* ∈ ∂f(y)}` is the polyhedron where
/// the Fenchel-Young inequality is tight; `f` is affine there, so every
/// side condition is linear in `y` and feasibility is decided exactly.
pub fn enlargement_member(
    q: &EnlargementQuery,
    ystar: &[Rat],
) -> Result<(bool, Option<RatVec>)> {
    let f = &q.f;
    let dim = f.dim();
    if ystar.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: ystar.len(),
        });
    }
    let fx = f.eval(&q.x);
    if !fx.is_finite() {
        return Ok((false, None));
    }
    match f {
        ConvexFunction::MaxAffine(ma) => {
            let fx_rat = fx.as_rat().expect("rational value").clone();
            if q.variant == EnlargementVariant::Refined {
                let two_eps = &q.eps * &Rat::from_int(2);
                let cap = eps_subdifferential(f, &q.x, &two_eps)?;
                if !cap.member(ystar) {
                    return Ok((false, None));
                }
            }
            let Value::Fin(conj) = ma.conjugate_value(ystar) else {
                return Ok((false, None));
            };
            let fstar = conj
                .as_rat()
                .expect("conjugate of a max-affine function is rational")
                .clone();
            let env = ma.lsc_envelope();

            // argmax region: y in the envelope's domain with every piece
            // below the affine form ⟨y*, y⟩ - f*(y*)
            let mut ineqs: Vec<(RatVec, Rat)> = Vec::new();
            for (a, b) in env.pieces() {
                ineqs.push((linalg::sub(a, ystar), -(b + &fstar)));
            }
            // value band: |⟨y*, y⟩ - f* - f(x)| ≤ ε
            ineqs.push((ystar.to_vec(), &(&fstar + &fx_rat) + &q.eps));
            ineqs.push((
                linalg::neg(ystar),
                &(&q.eps - &fstar) - &fx_rat,
            ));
            if q.variant != EnlargementVariant::Refined {
                // pairing bound |⟨y*, y - x⟩| ≤ ε
                let shift = linalg::dot(ystar, &q.x);
                ineqs.push((ystar.to_vec(), &shift + &q.eps));
                ineqs.push((linalg::neg(ystar), &q.eps - &shift));
            }
            let Some(free) = build_hrep(dim, ineqs, vec![]) else {
                return Ok((false, None));
            };
            let mut region = free.intersect(env.domain());
            if q.variant != EnlargementVariant::NoBall {
                region = region.intersect(&q.ball());
            }
            if region.is_empty() {
                return Ok((false, None));
            }
            let bad = ma.raised_points();
            match region.sample_point_avoiding(&bad) {
                Some(w) => Ok((true, Some(w))),
                None => Ok((false, None)),
            }
        }
        ConvexFunction::Analytic(a) => analytic_member(q, a, &ystar[0], &fx),
    }
}

fn analytic_member(
    q: &EnlargementQuery,
    a: &Analytic1D,
    ystar: &Rat,
    fx: &Value,
) -> Result<(bool, Option<RatVec>)> {
    let u_x = a.arg(&q.x[0]);
    let s = &a.scale;
    // invert y* = ∓s/(2t): the candidate tightness scale t is rational
    let c = {
        let g = ystar / s;
        if a.reflect {
            -g
        } else {
            g
        }
    };
    if !c.is_negative() {
        return Ok((false, None));
    }
    let t = -Rat::one() / (Rat::from_int(2) * &c);
    let u = t.square();
    let y = a.point_of_arg(&u);
    let fy = Value::Fin(crate::convfun::QuadVal::new(
        Rat::zero(),
        -s.clone(),
        u.clone(),
    ));
    // ball: |y - x| = |u - u_x|
    if q.variant != EnlargementVariant::NoBall && (&u - &u_x).abs() > q.eps {
        return Ok((false, None));
    }
    if !fy.within(fx, &q.eps) {
        return Ok((false, None));
    }
    match q.variant {
        EnlargementVariant::Refined => {
            // y* ∈ ∂_{2ε}f(x): c·u_x + 1/(4c) + 2ε/s ≥ -√u_x
            let delta = &(&q.eps * &Rat::from_int(2)) / s;
            let lhs = &(&(&c * &u_x) + &(Rat::one() / (Rat::from_int(4) * &c))) + &delta;
            let ok = crate::convfun::QuadVal::new(lhs, Rat::one(), u_x)
                >= crate::convfun::QuadVal::from_rat(Rat::zero());
            if !ok {
                return Ok((false, None));
            }
        }
        _ => {
            // pairing: |y*|·|u - u_x| ≤ ε
            if ystar.abs() * (&u - &u_x).abs() > q.eps {
                return Ok((false, None));
            }
        }
    }
    Ok((true, Some(vec![y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convfun::{MaxAffine, PointOverride};
    use crate::polyrat::polyhedron::{Halfspace, HalfspaceSystem};

    fn rv(xs: &[i64]) -> RatVec {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn neg_sqrt_fn() -> ConvexFunction {
        ConvexFunction::Analytic(Analytic1D::neg_sqrt())
    }

    fn halfline_right() -> Polyhedron {
        Polyhedron::from_hrep(
            1,
            HalfspaceSystem {
                ineqs: vec![Halfspace::new(vec![-Rat::one()], Rat::zero())],
                eqs: vec![],
            },
        )
        .unwrap()
    }

    fn down_ray(v: Rat) -> Polyhedron {
        Polyhedron::from_vrep(
            1,
            GeneratorSystem {
                vertices: vec![vec![v]],
                rays: vec![vec![-Rat::one()]],
            },
        )
        .unwrap()
    }

    #[test]
    fn neg_sqrt_enlargement_is_exact_halfline() {
        for (eps, endpoint) in [
            (Rat::frac(1, 4), Rat::from_int(-2)),
            (Rat::frac(1, 16), Rat::from_int(-8)),
        ] {
            let q = EnlargementQuery::new(
                neg_sqrt_fn(),
                rv(&[0]),
                eps,
                EnlargementVariant::Base,
            )
            .unwrap();
            let s = enlargement(&q).unwrap();
            assert!(s.exact);
            assert!(s.inner_hull().set_eq(&down_ray(endpoint.clone())));
            assert!(s.outer_hull().set_eq(&down_ray(endpoint)));
        }
    }

    #[test]
    fn reflected_neg_sqrt_enlargement_mirrors() {
        let q = EnlargementQuery::new(
            ConvexFunction::Analytic(Analytic1D::neg_sqrt().reflected()),
            rv(&[0]),
            Rat::frac(1, 4),
            EnlargementVariant::Base,
        )
        .unwrap();
        let s = enlargement(&q).unwrap();
        let expect = down_ray(Rat::from_int(-2)).scale(&-Rat::one());
        assert!(s.exact);
        assert!(s.outer_hull().set_eq(&expect));
    }

    #[test]
    fn neg_sqrt_membership_with_witness() {
        let q = EnlargementQuery::new(
            neg_sqrt_fn(),
            rv(&[0]),
            Rat::frac(1, 4),
            EnlargementVariant::Base,
        )
        .unwrap();
        let (ok, w) = enlargement_member(&q, &[Rat::from_int(-2)]).unwrap();
        assert!(ok);
        assert_eq!(w, Some(vec![Rat::frac(1, 16)]));
        let (no, _) = enlargement_member(&q, &[Rat::from_int(-1)]).unwrap();
        assert!(!no);
    }

    #[test]
    fn raised_origin_has_empty_enlargement() {
        // x + I_[0,∞) with the origin raised to 1: for eps < 1/2 no witness
        // point survives both the value band and the ball.
        let f = ConvexFunction::MaxAffine(
            MaxAffine::new(
                1,
                vec![(rv(&[1]), Rat::zero())],
                halfline_right(),
                vec![PointOverride {
                    point: rv(&[0]),
                    value: Some(Rat::one()),
                }],
            )
            .unwrap(),
        );
        let q = EnlargementQuery::new(
            f.clone(),
            rv(&[0]),
            Rat::frac(1, 8),
            EnlargementVariant::Base,
        )
        .unwrap();
        let s = enlargement(&q).unwrap();
        assert!(s.is_certainly_empty());
        assert!(s.exact);
        let (ok, _) = enlargement_member(&q, &[Rat::one()]).unwrap();
        assert!(!ok);

        // after taking the envelope the enlargement is (-∞, 1]
        let qcl = EnlargementQuery::new(
            f.lsc_envelope(),
            rv(&[0]),
            Rat::frac(1, 8),
            EnlargementVariant::Base,
        )
        .unwrap();
        let scl = enlargement(&qcl).unwrap();
        assert!(scl.exact);
        assert!(scl.outer_hull().set_eq(&down_ray(Rat::one())));
    }

    #[test]
    fn abs_enlargement_is_unit_interval() {
        let f = ConvexFunction::MaxAffine(
            MaxAffine::new(
                1,
                vec![(rv(&[1]), Rat::zero()), (rv(&[-1]), Rat::zero())],
                Polyhedron::full_space(1),
                vec![],
            )
            .unwrap(),
        );
        let q = EnlargementQuery::new(f, rv(&[0]), Rat::frac(1, 8), EnlargementVariant::Base)
            .unwrap();
        let s = enlargement(&q).unwrap();
        let unit = Polyhedron::from_vrep(
            1,
            GeneratorSystem {
                vertices: vec![rv(&[-1]), rv(&[1])],
                rays: vec![],
            },
        )
        .unwrap();
        assert!(s.exact);
        assert!(s.inner_hull().set_eq(&unit));
        assert!(s.outer_hull().set_eq(&unit));
        // soundness at the membership level
        for part in &s.inner {
            for v in part.vertices() {
                let (ok, _) = enlargement_member(&q, v).unwrap();
                assert!(ok);
            }
        }
    }

    #[test]
    fn affine_membership_is_trivial() {
        let f = ConvexFunction::MaxAffine(
            MaxAffine::new(
                2,
                vec![(rv(&[2, -3]), Rat::frac(1, 2))],
                Polyhedron::full_space(2),
                vec![],
            )
            .unwrap(),
        );
        let x = rv(&[1, 1]);
        let q = EnlargementQuery::new(f, x.clone(), Rat::frac(1, 8), EnlargementVariant::Base)
            .unwrap();
        let (ok, witness) = enlargement_member(&q, &rv(&[2, -3])).unwrap();
        assert!(ok);
        let w = witness.unwrap();
        assert!(q.ball().member(&w));
        let (no, _) = enlargement_member(&q, &rv(&[2, -2])).unwrap();
        assert!(!no);
    }

    #[test]
    fn refined_caps_by_two_eps_subdifferential() {
        let q = EnlargementQuery::new(
            neg_sqrt_fn(),
            rv(&[0]),
            Rat::frac(1, 4),
            EnlargementVariant::Refined,
        )
        .unwrap();
        let s = enlargement(&q).unwrap();
        // base endpoint -2 is more restrictive than the ∂_{2ε} cap -1/2
        assert!(s.outer_hull().set_eq(&down_ray(Rat::from_int(-2))));
        let (ok, _) = enlargement_member(&q, &[Rat::from_int(-3)]).unwrap();
        assert!(ok);
        let (no, _) = enlargement_member(&q, &[-Rat::one()]).unwrap();
        assert!(!no);
    }

    #[test]
    fn small_frown_drops_the_ball() {
        // f = max(0, x-1): at x=0 with eps=1/2 the far cell around y=1
        // satisfies the value band but not the ball.
        let f = ConvexFunction::MaxAffine(
            MaxAffine::new(
                1,
                vec![(rv(&[0]), Rat::zero()), (rv(&[1]), -Rat::one())],
                Polyhedron::full_space(1),
                vec![],
            )
            .unwrap(),
        );
        let eps = Rat::frac(1, 2);
        let base =
            EnlargementQuery::new(f.clone(), rv(&[0]), eps.clone(), EnlargementVariant::Base)
                .unwrap();
        let frown =
            EnlargementQuery::new(f, rv(&[0]), eps, EnlargementVariant::NoBall).unwrap();
        let sb = enlargement(&base).unwrap();
        let sf = enlargement(&frown).unwrap();
        assert!(sb.outer_hull().set_eq(&Polyhedron::point(rv(&[0]))));
        // without the ball, the kink at y=1 contributes [0, 1/2] of slopes
        // cut by the pairing bound |y*| ≤ 1/2
        let expect = Polyhedron::from_vrep(
            1,
            GeneratorSystem {
                vertices: vec![vec![Rat::zero()], vec![Rat::frac(1, 2)]],
                rays: vec![],
            },
        )
        .unwrap();
        assert!(sf.inner_hull().set_eq(&expect));
        assert!(sf.outer_hull().contains_set(&expect));
    }
}
