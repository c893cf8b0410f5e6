//! Right-hand sides of the supremum-rule formulas, their intersection over
//! an ε-grid, and set-identity verdicts against the exact `∂f(x)`.

use serde::Serialize;

use crate::convfun::{ConvexFunction, FunctionFamily, SupFunction};
use crate::error::{Error, Result};
use crate::polyrat::closed_conv_union;
use crate::polyrat::linalg::{self, RatVec};
use crate::polyrat::polyhedron::Polyhedron;
use crate::polyrat::rat::{ExtRat, Rat};
use crate::subdiff::{
    enlargement, eps_subdifferential, normal_cone, subdifferential, EnlargementQuery,
    EnlargementVariant,
};

/// The formula whose right-hand side is being built.
///
/// * `EpsAllActive` — ε-subdifferentials at the reference point, every
///   index active, no normal-cone term.
/// * `EpsActive` — ε-subdifferentials of the ε-active indices plus the
///   normal cone of the supremum's domain.
/// * `NearbyBase` — nearby-point enlargements plus the domain normal cone.
/// * `NearbyRefined` — the refined enlargement (`∂f_t(y) ∩ ∂_{2ε}f_t(x)`)
///   plus the domain normal cone.
/// * `NearbyRestricted` — enlargements of the data functions restricted to
///   the closed domain of the supremum, no normal-cone term.
/// * `NearbyEnvelopes` — enlargements of the lsc envelopes over the
///   envelope-active indices; the domain normal cone is added outside the
///   intersection.
/// * `NearbyExact` — exact subdifferentials at all points of the ε-ball,
///   no extra terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormulaKind {
    EpsAllActive,
    EpsActive,
    NearbyBase,
    NearbyRefined,
    NearbyRestricted,
    NearbyEnvelopes,
    NearbyExact,
}

impl FormulaKind {
    pub const ALL: [FormulaKind; 7] = [
        FormulaKind::EpsAllActive,
        FormulaKind::EpsActive,
        FormulaKind::NearbyBase,
        FormulaKind::NearbyRefined,
        FormulaKind::NearbyRestricted,
        FormulaKind::NearbyEnvelopes,
        FormulaKind::NearbyExact,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FormulaKind::EpsAllActive => "eps_all_active",
            FormulaKind::EpsActive => "eps_active",
            FormulaKind::NearbyBase => "nearby_base",
            FormulaKind::NearbyRefined => "nearby_refined",
            FormulaKind::NearbyRestricted => "nearby_restricted",
            FormulaKind::NearbyEnvelopes => "nearby_envelopes",
            FormulaKind::NearbyExact => "nearby_exact",
        }
    }

    pub fn parse(s: &str) -> Result<FormulaKind> {
        FormulaKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown formula {s:?}")))
    }
}

/// Continuity hypotheses an instance claims to satisfy; gates the two
/// continuous-case formulas.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct ContinuityFlags {
    pub continuous_at_x: bool,
    pub continuous_somewhere: bool,
}

/// Inner/outer approximation of one formula's right-hand side at a fixed
/// ε (or after grid intersection).
#[derive(Clone, Debug)]
pub struct RhsSandwich {
    pub eps: Rat,
    pub inner: Polyhedron,
    pub outer: Polyhedron,
    pub exact: bool,
}

/// Verification outcome for one (formula, instance) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    ExactMatch,
    SandwichPass,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A direction separating the two sides, with both support values.
    Direction {
        direction: RatVec,
        lhs_support: ExtRat,
        rhs_bound: ExtRat,
    },
    /// A generator point lying on the wrong side.
    Point { point: RatVec, side: WitnessSide },
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSide {
    LhsNotInOuter,
    InnerNotInLhs,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness: Option<Witness>,
    /// Worst support gap between the outer set and the left-hand side
    /// over the sampled directions (sandwich verdicts only).
    pub gap: Option<Rat>,
    pub eps_grid: Vec<Rat>,
    pub support_tol: Rat,
}

/// Exact left-hand side `∂f(x)` of every formula.
pub fn lhs_subdifferential(fam: &FunctionFamily, x: &[Rat]) -> Result<Polyhedron> {
    match fam.sup_function()? {
        SupFunction::Exact(f) => subdifferential(&f, x),
        SupFunction::Pointwise(handle) => {
            let fam = handle.family();
            let dim = fam.dim();
            if fam.entries().len() == 1 {
                return subdifferential(&fam.entries()[0].1, x);
            }
            // Families outside the max-affine class are supported when the
            // common domain collapses to a point: the supremum is then a
            // (possibly shifted) point indicator.
            let dom = family_domain(fam);
            let g = dom.vrep();
            if g.rays.is_empty() && g.vertices.len() == 1 {
                let p = &g.vertices[0];
                if !fam.sup_value(p).is_finite() {
                    return Err(Error::Improper("supremum is +inf everywhere".into()));
                }
                return Ok(if x == &p[..] {
                    Polyhedron::full_space(dim)
                } else {
                    Polyhedron::empty_set(dim)
                });
            }
            Err(Error::UnsupportedFamily(
                "no closed form for the supremum of this family".into(),
            ))
        }
    }
}

/// Effective domain of the supremum, `∩_t dom f_t`.
pub fn family_domain(fam: &FunctionFamily) -> Polyhedron {
    let mut dom = Polyhedron::full_space(fam.dim());
    for (_, f) in fam.entries() {
        dom = dom.intersect(&f.domain());
    }
    dom
}

/// Right-hand side of `kind` at a single ε.
pub fn rhs_at_eps(
    kind: FormulaKind,
    fam: &FunctionFamily,
    x: &[Rat],
    eps: &Rat,
    flags: &ContinuityFlags,
) -> Result<RhsSandwich> {
    if !eps.is_positive() {
        return Err(Error::BadGrid("rhs needs eps > 0".into()));
    }
    check_gates(kind, fam, x, flags)?;
    let dim = fam.dim();
    let use_cl = kind == FormulaKind::NearbyEnvelopes;
    let active = fam.active_set(x, eps, use_cl);

    let mut inner_parts: Vec<Polyhedron> = Vec::new();
    let mut outer_parts: Vec<Polyhedron> = Vec::new();
    let mut all_exact = true;

    let n_term = match kind {
        FormulaKind::EpsActive | FormulaKind::NearbyBase | FormulaKind::NearbyRefined => {
            Some(normal_cone(&family_domain(fam), x, &Rat::zero()))
        }
        _ => None,
    };
    let add_n = |p: Polyhedron| -> Polyhedron {
        match &n_term {
            Some(n) => p.minkowski_sum(n),
            None => p,
        }
    };

    for label in &active {
        let f = fam.get(label).expect("label from the active set");
        match kind {
            FormulaKind::EpsAllActive | FormulaKind::EpsActive => {
                let d = eps_subdifferential(f, x, eps)?;
                let part = add_n(d);
                inner_parts.push(part.clone());
                outer_parts.push(part);
            }
            FormulaKind::NearbyBase | FormulaKind::NearbyRefined => {
                let variant = if kind == FormulaKind::NearbyBase {
                    EnlargementVariant::Base
                } else {
                    EnlargementVariant::Refined
                };
                let q = EnlargementQuery::new(f.clone(), x.to_vec(), eps.clone(), variant)?;
                let s = enlargement(&q)?;
                all_exact &= s.exact;
                inner_parts.extend(s.inner.iter().cloned().map(&add_n));
                outer_parts.extend(s.outer.iter().cloned().map(&add_n));
            }
            FormulaKind::NearbyRestricted => {
                let restricted = f.add_indicator(&family_domain(fam))?;
                let q = EnlargementQuery::new(
                    restricted,
                    x.to_vec(),
                    eps.clone(),
                    EnlargementVariant::Base,
                )?;
                let s = enlargement(&q)?;
                all_exact &= s.exact;
                inner_parts.extend(s.inner.iter().cloned());
                outer_parts.extend(s.outer.iter().cloned());
            }
            FormulaKind::NearbyEnvelopes => {
                let q = EnlargementQuery::new(
                    f.lsc_envelope(),
                    x.to_vec(),
                    eps.clone(),
                    EnlargementVariant::Base,
                )?;
                let s = enlargement(&q)?;
                all_exact &= s.exact;
                inner_parts.extend(s.inner.iter().cloned());
                outer_parts.extend(s.outer.iter().cloned());
            }
            FormulaKind::NearbyExact => {
                let parts = nearby_exact_parts(f, x, eps)?;
                inner_parts.extend(parts.iter().cloned());
                outer_parts.extend(parts);
            }
        }
    }

    let inner = closed_conv_union(dim, &inner_parts);
    let outer = closed_conv_union(dim, &outer_parts);
    let exact = all_exact || inner.set_eq(&outer);
    Ok(RhsSandwich {
        eps: eps.clone(),
        inner,
        outer,
        exact,
    })
}

fn check_gates(
    kind: FormulaKind,
    fam: &FunctionFamily,
    x: &[Rat],
    flags: &ContinuityFlags,
) -> Result<()> {
    match kind {
        FormulaKind::EpsAllActive
            if fam.active_set(x, &Rat::zero(), false).len() != fam.entries().len() =>
        {
            Err(Error::NotEverywhereActive)
        }
        FormulaKind::NearbyEnvelopes if !flags.continuous_somewhere => Err(Error::PreconditionContinuity),
        FormulaKind::NearbyExact if !flags.continuous_at_x => {
            Err(Error::PreconditionContinuity)
        }
        _ => Ok(()),
    }
}

/// `∪ {∂f(y) : ‖y-x‖_∞ ≤ ε}` for one data function, as an exact part
/// list. Every linearity cell meeting the ball contributes its
/// subdifferential; any point of the intersection has at least those
/// pieces active, so the union over cells equals the union over points.
fn nearby_exact_parts(f: &ConvexFunction, x: &[Rat], eps: &Rat) -> Result<Vec<Polyhedron>> {
    let ma = f.as_max_affine().ok_or_else(|| {
        Error::UnsupportedFamily("nearby exact subdifferentials need a max-affine entry".into())
    })?;
    let ball = Polyhedron::linf_ball(x, eps);
    let env = ma.lsc_envelope();
    let bad = ma.raised_points();
    let mut parts = Vec::new();
    for cell in env.cells()? {
        let region = cell.region.intersect(&ball);
        if region.is_empty() {
            continue;
        }
        if !bad.is_empty() && region.sample_point_avoiding(&bad).is_none() {
            continue;
        }
        parts.push(cell.subgrad.clone());
    }
    Ok(parts)
}

/// Intersect the per-ε right-hand sides over a strictly decreasing grid.
/// The outer approximations shrink monotonically by construction, which is
/// asserted; for the envelope-based formula the domain normal cone is
/// added after the intersection.
pub fn intersect_over_grid(
    kind: FormulaKind,
    fam: &FunctionFamily,
    x: &[Rat],
    grid: &[Rat],
    flags: &ContinuityFlags,
) -> Result<RhsSandwich> {
    if grid.is_empty() {
        return Err(Error::BadGrid("empty grid".into()));
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) || !grid.iter().all(Rat::is_positive) {
        return Err(Error::BadGrid(
            "grid must be strictly decreasing and positive".into(),
        ));
    }
    let mut inner: Option<Polyhedron> = None;
    let mut outer: Option<Polyhedron> = None;
    for eps in grid {
        let rhs = rhs_at_eps(kind, fam, x, eps, flags)?;
        inner = Some(match inner {
            None => rhs.inner,
            Some(prev) => prev.intersect(&rhs.inner),
        });
        outer = Some(match outer {
            None => rhs.outer,
            Some(prev) => {
                assert!(
                    prev.contains_set(&rhs.outer),
                    "outer right-hand sides must shrink along the grid"
                );
                prev.intersect(&rhs.outer)
            }
        });
    }
    let mut inner = inner.expect("nonempty grid");
    let mut outer = outer.expect("nonempty grid");
    if kind == FormulaKind::NearbyEnvelopes {
        let n = normal_cone(&family_domain(fam), x, &Rat::zero());
        inner = inner.minkowski_sum(&n);
        outer = outer.minkowski_sum(&n);
    }
    let exact = inner.set_eq(&outer);
    Ok(RhsSandwich {
        eps: grid.last().unwrap().clone(),
        inner,
        outer,
        exact,
    })
}

/// Directions used for support-gap reporting: caller-provided (seeded)
/// ones, facet normals of both sides, and the coordinate axes.
fn gap_directions(lhs: &Polyhedron, outer: &Polyhedron, extra: &[RatVec]) -> Vec<RatVec> {
    let dim = lhs.dim();
    let mut dirs: Vec<RatVec> = Vec::new();
    let mut push = |d: RatVec| {
        if !linalg::is_zero_vec(&d) {
            let d = linalg::primitive(&d);
            if !dirs.contains(&d) {
                dirs.push(d);
            }
        }
    };
    for i in 0..dim {
        push(linalg::unit(dim, i));
        push(linalg::neg(&linalg::unit(dim, i)));
    }
    for p in [lhs, outer] {
        if p.is_empty() {
            continue;
        }
        let h = p.hrep();
        for hs in &h.ineqs {
            push(hs.normal.clone());
        }
        for hs in &h.eqs {
            push(hs.normal.clone());
            push(linalg::neg(&hs.normal));
        }
    }
    for d in extra {
        push(d.clone());
    }
    dirs
}

/// Compare `∂f(x)` against the grid-intersected right-hand side.
pub fn verify_formula(
    kind: FormulaKind,
    fam: &FunctionFamily,
    x: &[Rat],
    grid: &[Rat],
    directions: &[RatVec],
    tol: &Rat,
    flags: &ContinuityFlags,
) -> Result<Verdict> {
    if tol.is_negative() {
        return Err(Error::BadGrid("negative tolerance".into()));
    }
    let lhs = lhs_subdifferential(fam, x)?;
    let rhs = intersect_over_grid(kind, fam, x, grid, flags)?;
    let verdict = |status, witness, gap| Verdict {
        status,
        witness,
        gap,
        eps_grid: grid.to_vec(),
        support_tol: tol.clone(),
    };

    if lhs.set_eq(&rhs.inner) && lhs.set_eq(&rhs.outer) {
        return Ok(verdict(VerdictStatus::ExactMatch, None, Some(Rat::zero())));
    }

    if let Some(w) = containment_witness(&rhs.outer, &lhs, WitnessSide::LhsNotInOuter) {
        return Ok(verdict(VerdictStatus::Mismatch, Some(w), None));
    }
    if let Some(w) = containment_witness(&lhs, &rhs.inner, WitnessSide::InnerNotInLhs) {
        return Ok(verdict(VerdictStatus::Mismatch, Some(w), None));
    }

    // Exact inclusions hold; grade the remaining slack by support gaps.
    let mut worst: Option<(Rat, RatVec)> = None;
    for d in gap_directions(&lhs, &rhs.outer, directions) {
        let so = rhs.outer.support(&d);
        let sl = lhs.support(&d);
        match (so, sl) {
            (ExtRat::PosInf, ExtRat::PosInf) => {}
            (ExtRat::Finite(a), ExtRat::Finite(b)) => {
                let gap = &a - &b;
                debug_assert!(!gap.is_negative(), "outer contains lhs");
                if worst.as_ref().is_none_or(|(g, _)| gap > *g) {
                    worst = Some((gap, d));
                }
            }
            (so, sl) => {
                // unbounded slack in this direction
                return Ok(verdict(
                    VerdictStatus::Mismatch,
                    Some(Witness::Direction {
                        direction: d,
                        lhs_support: sl,
                        rhs_bound: so,
                    }),
                    None,
                ));
            }
        }
    }
    let gap = worst
        .as_ref()
        .map(|(g, _)| g.clone())
        .unwrap_or_else(Rat::zero);
    if gap <= *tol {
        Ok(verdict(VerdictStatus::SandwichPass, None, Some(gap)))
    } else {
        let (_, d) = worst.expect("positive gap has a direction");
        let sl = lhs.support(&d);
        let so = rhs.outer.support(&d);
        Ok(verdict(
            VerdictStatus::Mismatch,
            Some(Witness::Direction {
                direction: d,
                lhs_support: sl,
                rhs_bound: so,
            }),
            None,
        ))
    }
}

/// If `inner ⊄ outer`, produce the offending generator.
fn containment_witness(
    outer: &Polyhedron,
    inner: &Polyhedron,
    side: WitnessSide,
) -> Option<Witness> {
    if inner.is_empty() {
        return None;
    }
    if outer.is_empty() {
        return Some(Witness::Point {
            point: inner.vertices()[0].clone(),
            side,
        });
    }
    for v in inner.vertices() {
        if !outer.member(v) {
            return Some(Witness::Point {
                point: v.clone(),
                side,
            });
        }
    }
    for r in inner.rays() {
        if !outer.recession_contains(r) {
            return Some(Witness::Direction {
                direction: r.clone(),
                lhs_support: inner.support(r),
                rhs_bound: outer.support(r),
            });
        }
    }
    None
}
