//! Representations of the data functions and their pointwise supremum.
//!
//! Two function classes are supported: max-of-affine with a polyhedral
//! indicator and optional finite point-value overrides (which is how
//! non-lower-semicontinuous examples are modeled), and a small catalog of
//! 1-D analytic functions built around `y ↦ -√y`.

pub mod value;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyrat::linalg::{self, RatVec};
use crate::polyrat::polyhedron::{closed_conv_union, Halfspace, HalfspaceSystem, Polyhedron};
use crate::polyrat::rat::Rat;
pub use value::{QuadVal, Value};

/// One affine piece `y ↦ ⟨a, y⟩ + b`.
pub type Piece = (RatVec, Rat);

/// A single-point value override; `None` means the point is raised to `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointOverride {
    pub point: RatVec,
    pub value: Option<Rat>,
}

/// Max of finitely many affine pieces, restricted to a polyhedral domain,
/// with optional value overrides at extreme points of the domain.
#[derive(Clone, Debug)]
pub struct MaxAffine {
    dim: usize,
    pieces: Vec<Piece>,
    domain: Polyhedron,
    overrides: Vec<PointOverride>,
    conj_epi: OnceLock<Polyhedron>,
    cells: OnceLock<Result<Vec<LinearityCell>>>,
}

impl MaxAffine {
    pub fn new(
        dim: usize,
        pieces: Vec<Piece>,
        domain: Polyhedron,
        overrides: Vec<PointOverride>,
    ) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyPieces);
        }
        for (a, _) in &pieces {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
        }
        if domain.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: domain.dim(),
            });
        }
        if domain.is_empty() {
            return Err(Error::Improper("empty domain".into()));
        }
        let mut pieces = pieces;
        pieces.sort_by(|(a1, b1), (a2, b2)| linalg::lex_cmp(a1, a2).then(b1.cmp(b2)));
        pieces.dedup();

        let f = MaxAffine {
            dim,
            pieces,
            domain,
            overrides: Vec::new(),
            conj_epi: OnceLock::new(),
            cells: OnceLock::new(),
        };
        f.with_overrides(overrides)
    }

    fn with_overrides(mut self, overrides: Vec<PointOverride>) -> Result<Self> {
        if overrides.is_empty() {
            return Ok(self);
        }
        let canon = self.domain.canonicalized();
        let has_line = canon
            .rays()
            .iter()
            .any(|r| canon.rays().contains(&linalg::neg(r)));
        let mut kept: Vec<PointOverride> = Vec::new();
        for ov in overrides {
            if ov.point.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: ov.point.len(),
                });
            }
            if !self.domain.member(&ov.point) {
                return Err(Error::InvalidOverride(
                    "override point outside the domain".into(),
                ));
            }
            if kept.iter().any(|o| o.point == ov.point) {
                return Err(Error::InvalidOverride("duplicate override point".into()));
            }
            // Raising the value at a non-extreme point breaks convexity:
            // the point would sit strictly inside a segment of the domain.
            if has_line || !canon.vertices().contains(&ov.point) {
                let base = self.base_value(&ov.point);
                let raises = match &ov.value {
                    None => true,
                    Some(v) => *v > base,
                };
                if raises {
                    return Err(Error::InvalidOverride(
                        "override raises the value at a non-extreme point".into(),
                    ));
                }
                continue;
            }
            match &ov.value {
                None => kept.push(ov),
                Some(v) => {
                    let base = self.base_value(&ov.point);
                    if *v < base {
                        return Err(Error::InvalidOverride(
                            "override below the max-affine value".into(),
                        ));
                    }
                    if *v > base {
                        kept.push(ov);
                    }
                    // equal: a no-op, dropped
                }
            }
        }
        // Properness: some domain point must keep a finite value.
        let punched: Vec<RatVec> = kept
            .iter()
            .filter(|o| o.value.is_none())
            .map(|o| o.point.clone())
            .collect();
        if !punched.is_empty() && self.domain.sample_point_avoiding(&punched).is_none() {
            return Err(Error::Improper("every domain point is raised to +inf".into()));
        }
        self.overrides = kept;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain(&self) -> &Polyhedron {
        &self.domain
    }

    pub fn overrides(&self) -> &[PointOverride] {
        &self.overrides
    }

    /// Max-affine value at `y`, ignoring domain and overrides.
    pub fn base_value(&self, y: &[Rat]) -> Rat {
        self.pieces
            .iter()
            .map(|(a, b)| linalg::dot(a, y) + b.clone())
            .max()
            .expect("at least one piece")
    }

    pub fn eval(&self, y: &[Rat]) -> Value {
        if !self.domain.member(y) {
            return Value::PosInf;
        }
        if let Some(ov) = self.overrides.iter().find(|o| o.point == y) {
            return match &ov.value {
                Some(v) => Value::rat(v.clone()),
                None => Value::PosInf,
            };
        }
        Value::rat(self.base_value(y))
    }

    /// Value of the lower semicontinuous envelope at `y`.
    pub fn envelope_value(&self, y: &[Rat]) -> Value {
        self.lsc_envelope().eval(y)
    }

    pub fn is_lsc(&self) -> bool {
        self.overrides.is_empty() || self.domain_is_single_point()
    }

    fn domain_is_single_point(&self) -> bool {
        self.domain.rays().is_empty() && self.domain.vertices().len() == 1
    }

    /// Largest lsc minorant. Overrides vanish in the envelope, except over
    /// a single-point domain where the function is already closed.
    pub fn lsc_envelope(&self) -> MaxAffine {
        if self.overrides.is_empty() {
            return self.clone();
        }
        if self.domain_is_single_point() {
            let p = self.domain.vertices()[0].clone();
            if let Some(ov) = self.overrides.iter().find(|o| o.point == p) {
                if let Some(v) = &ov.value {
                    return MaxAffine::new(
                        self.dim,
                        vec![(linalg::zeros(self.dim), v.clone())],
                        self.domain.clone(),
                        vec![],
                    )
                    .expect("point function is well formed");
                }
            }
        }
        MaxAffine::new(self.dim, self.pieces.clone(), self.domain.clone(), vec![])
            .expect("dropping overrides keeps the function well formed")
    }

    /// Domain points whose value is raised above the envelope (so the
    /// subdifferential there is empty) or punched out to `+∞`.
    pub fn raised_points(&self) -> Vec<RatVec> {
        if self.domain_is_single_point() {
            return Vec::new();
        }
        self.overrides.iter().map(|o| o.point.clone()).collect()
    }

    /// Restrict to `domain ∩ p`.
    pub fn add_indicator(&self, p: &Polyhedron) -> Result<MaxAffine> {
        let domain = self.domain.intersect(p);
        let overrides = self
            .overrides
            .iter()
            .filter(|o| domain.member(&o.point))
            .cloned()
            .collect();
        MaxAffine::new(self.dim, self.pieces.clone(), domain, overrides)
    }

    /// Epigraph of the convex conjugate, a polyhedron in ℝ^{dim+1}. The
    /// conjugate never sees overrides (conjugation factors through the lsc
    /// envelope), so it is assembled from the envelope's pieces and domain:
    /// vertices `(aᵢ, -bᵢ)`, one ray per domain facet, lines for domain
    /// equalities, and the vertical ray.
    pub fn conjugate_epigraph(&self) -> &Polyhedron {
        self.conj_epi.get_or_init(|| {
            let env = self.lsc_envelope();
            let mut vertices = Vec::with_capacity(env.pieces.len());
            for (a, b) in &env.pieces {
                let mut v = a.clone();
                v.push(-b);
                vertices.push(v);
            }
            let mut rays = Vec::new();
            let h = env.domain.hrep();
            for hs in &h.ineqs {
                let mut r = hs.normal.clone();
                r.push(hs.offset.clone());
                rays.push(r);
            }
            for hs in &h.eqs {
                let mut r = hs.normal.clone();
                r.push(hs.offset.clone());
                rays.push(r.clone());
                rays.push(linalg::neg(&r));
            }
            let mut up = linalg::zeros(self.dim + 1);
            up[self.dim] = Rat::one();
            rays.push(up);
            Polyhedron::from_vrep(
                self.dim + 1,
                crate::polyrat::GeneratorSystem { vertices, rays },
            )
            .expect("conjugate epigraph generators are well formed")
        })
    }

    /// Exact conjugate value `f*(g) = sup_y ⟨g,y⟩ - f(y)`.
    pub fn conjugate_value(&self, g: &[Rat]) -> Value {
        let epi = self.conjugate_epigraph();
        let h = epi.hrep();
        // min τ with (g, τ) in the epigraph
        let mut best: Option<Rat> = None;
        for hs in h.ineqs.iter().chain(&h.eqs) {
            let alpha = &hs.normal[..self.dim];
            let beta = &hs.normal[self.dim];
            let lhs = linalg::dot(alpha, g);
            if beta.is_zero() {
                if lhs > hs.offset {
                    return Value::PosInf;
                }
                continue;
            }
            let bound = &(&hs.offset - &lhs) / beta;
            if beta.is_negative() {
                // α·g + βτ ≤ γ  ⇒  τ ≥ (γ - α·g)/β
                if best.as_ref().is_none_or(|b| bound > *b) {
                    best = Some(bound);
                }
            }
            // β > 0 rows cannot appear in an epigraph (unbounded above),
            // except as equalities, which the vertical ray rules out.
        }
        match best {
            Some(v) => Value::rat(v),
            None => Value::PosInf,
        }
    }

    /// Linearity cells: all pairs (tied piece set, tight facet set) whose
    /// closed region is nonempty. On each region the function is affine and
    /// the subdifferential is the fixed polyhedron `subgrad`.
    pub fn cells(&self) -> Result<&[LinearityCell]> {
        match self.cells.get_or_init(|| enumerate_cells(self)) {
            Ok(cells) => Ok(cells),
            Err(e) => Err(e.clone()),
        }
    }
}

/// One linearity cell of a max-affine function.
#[derive(Clone, Debug)]
pub struct LinearityCell {
    pub active_pieces: Vec<usize>,
    pub tight_facets: Vec<usize>,
    /// Closed set where the listed pieces tie for the max and the listed
    /// domain facets are tight.
    pub region: Polyhedron,
    /// `∂f` at points whose exact active/tight sets are the listed ones.
    pub subgrad: Polyhedron,
    /// Affine form of `f` on the region.
    pub affine: Piece,
}

const CELL_BUDGET: usize = 20_000;

fn cell_region(f: &MaxAffine, pieces: &[usize], facets: &[usize]) -> Option<Polyhedron> {
    let h = f.domain().hrep();
    let mut ineqs: Vec<Halfspace> = h.ineqs.clone();
    let mut eqs: Vec<Halfspace> = h.eqs.clone();
    let lead = pieces[0];
    let (a0, b0) = &f.pieces()[lead];
    for (j, (aj, bj)) in f.pieces().iter().enumerate() {
        if j == lead {
            continue;
        }
        let normal = linalg::sub(aj, a0);
        let offset = b0 - bj;
        if pieces.contains(&j) {
            if linalg::is_zero_vec(&normal) {
                if !offset.is_zero() {
                    return None;
                }
                continue;
            }
            eqs.push(Halfspace::new(normal, offset));
        } else {
            if linalg::is_zero_vec(&normal) {
                if offset.is_negative() {
                    return None;
                }
                continue;
            }
            ineqs.push(Halfspace::new(normal, offset));
        }
    }
    for &j in facets {
        let hs = &h.ineqs[j];
        eqs.push(hs.clone());
    }
    let region = Polyhedron::from_hrep(f.dim(), HalfspaceSystem { ineqs, eqs }).unwrap();
    if region.is_empty() {
        None
    } else {
        Some(region)
    }
}

fn cell_subgrad(f: &MaxAffine, pieces: &[usize], facets: &[usize]) -> Polyhedron {
    let dim = f.dim();
    let vertices: Vec<RatVec> = pieces.iter().map(|&i| f.pieces()[i].0.clone()).collect();
    let h = f.domain().hrep();
    let mut rays: Vec<RatVec> = facets.iter().map(|&j| h.ineqs[j].normal.clone()).collect();
    for hs in &h.eqs {
        rays.push(hs.normal.clone());
        rays.push(linalg::neg(&hs.normal));
    }
    closed_conv_union(
        dim,
        &[Polyhedron::from_vrep(
            dim,
            crate::polyrat::GeneratorSystem { vertices, rays },
        )
        .unwrap()],
    )
}

fn enumerate_cells(f: &MaxAffine) -> Result<Vec<LinearityCell>> {
    use std::collections::BTreeSet;
    let npieces = f.pieces().len();
    let nfacets = f.domain().hrep().ineqs.len();
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut out: Vec<LinearityCell> = Vec::new();
    let mut queue: Vec<(Vec<usize>, Vec<usize>)> =
        (0..npieces).map(|i| (vec![i], vec![])).collect();

    while let Some((pieces, facets)) = queue.pop() {
        if !seen.insert((pieces.clone(), facets.clone())) {
            continue;
        }
        if seen.len() > CELL_BUDGET {
            return Err(Error::DimensionCap { limit: CELL_BUDGET });
        }
        let Some(region) = cell_region(f, &pieces, &facets) else {
            continue; // supersets only shrink the region
        };
        let lead = pieces[0];
        let value_row = f.pieces()[lead].clone();
        out.push(LinearityCell {
            active_pieces: pieces.clone(),
            tight_facets: facets.clone(),
            subgrad: cell_subgrad(f, &pieces, &facets),
            affine: value_row,
            region,
        });
        for p in 0..npieces {
            if !pieces.contains(&p) {
                let mut s = pieces.clone();
                s.push(p);
                s.sort_unstable();
                queue.push((s, facets.clone()));
            }
        }
        for j in 0..nfacets {
            if !facets.contains(&j) {
                let mut g = facets.clone();
                g.push(j);
                g.sort_unstable();
                queue.push((pieces.clone(), g));
            }
        }
    }
    out.sort_by(|a, b| {
        a.active_pieces
            .cmp(&b.active_pieces)
            .then(a.tight_facets.cmp(&b.tight_facets))
    });
    Ok(out)
}

/// Catalog tag for the analytic 1-D functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyticKind {
    NegSqrt,
}

/// `y ↦ -scale·√(arg)` on `{arg ≥ 0}` with `arg = ±y - shift`, `+∞`
/// elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analytic1D {
    pub kind: AnalyticKind,
    pub reflect: bool,
    pub shift: Rat,
    pub scale: Rat,
}

impl Analytic1D {
    pub fn new(kind: AnalyticKind, reflect: bool, shift: Rat, scale: Rat) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Parse("analytic scale must be positive".into()));
        }
        Ok(Analytic1D {
            kind,
            reflect,
            shift,
            scale,
        })
    }

    pub fn neg_sqrt() -> Self {
        Analytic1D {
            kind: AnalyticKind::NegSqrt,
            reflect: false,
            shift: Rat::zero(),
            scale: Rat::one(),
        }
    }

    pub fn reflected(mut self) -> Self {
        self.reflect = !self.reflect;
        self
    }

    /// Inner argument `±y - shift`.
    pub fn arg(&self, y: &Rat) -> Rat {
        let w = if self.reflect { -y } else { y.clone() };
        w - self.shift.clone()
    }

    /// The point in y-space with the given argument value.
    pub fn point_of_arg(&self, u: &Rat) -> Rat {
        let w = u + &self.shift;
        if self.reflect {
            -w
        } else {
            w
        }
    }

    pub fn eval(&self, y: &Rat) -> Value {
        let u = self.arg(y);
        if u.is_negative() {
            return Value::PosInf;
        }
        Value::Fin(QuadVal::new(Rat::zero(), -&self.scale, u))
    }

    /// Effective domain, the halfline `{y : arg(y) ≥ 0}`.
    pub fn domain(&self) -> Polyhedron {
        let (normal, offset) = if self.reflect {
            (vec![Rat::one()], -&self.shift)
        } else {
            (vec![-Rat::one()], -&self.shift)
        };
        Polyhedron::from_hrep(
            1,
            HalfspaceSystem {
                ineqs: vec![Halfspace::new(normal, offset)],
                eqs: vec![],
            },
        )
        .unwrap()
    }
}

/// Tagged union of the supported convex function representations.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum ConvexFunction {
    MaxAffine(MaxAffine),
    Analytic(Analytic1D),
}

impl ConvexFunction {
    pub fn dim(&self) -> usize {
        match self {
            ConvexFunction::MaxAffine(f) => f.dim(),
            ConvexFunction::Analytic(_) => 1,
        }
    }

    pub fn eval(&self, y: &[Rat]) -> Value {
        match self {
            ConvexFunction::MaxAffine(f) => f.eval(y),
            ConvexFunction::Analytic(f) => f.eval(&y[0]),
        }
    }

    /// Effective domain. With `+∞` overrides present this is the closure
    /// of the true domain (the two differ at finitely many extreme
    /// points).
    pub fn domain(&self) -> Polyhedron {
        match self {
            ConvexFunction::MaxAffine(f) => f.domain().clone(),
            ConvexFunction::Analytic(f) => f.domain(),
        }
    }

    pub fn lsc_envelope(&self) -> ConvexFunction {
        match self {
            ConvexFunction::MaxAffine(f) => ConvexFunction::MaxAffine(f.lsc_envelope()),
            ConvexFunction::Analytic(f) => ConvexFunction::Analytic(f.clone()),
        }
    }

    pub fn is_lsc(&self) -> bool {
        match self {
            ConvexFunction::MaxAffine(f) => f.is_lsc(),
            ConvexFunction::Analytic(_) => true,
        }
    }

    pub fn as_max_affine(&self) -> Option<&MaxAffine> {
        match self {
            ConvexFunction::MaxAffine(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_analytic(&self) -> Option<&Analytic1D> {
        match self {
            ConvexFunction::Analytic(f) => Some(f),
            _ => None,
        }
    }

    /// Restrict to the polyhedron `p`. For analytic functions only the
    /// trivial cases are representable: `p` covering the domain, or the
    /// restriction collapsing to a single point with rational value.
    pub fn add_indicator(&self, p: &Polyhedron) -> Result<ConvexFunction> {
        match self {
            ConvexFunction::MaxAffine(f) => Ok(ConvexFunction::MaxAffine(f.add_indicator(p)?)),
            ConvexFunction::Analytic(f) => {
                let dom = f.domain();
                if p.contains_set(&dom) {
                    return Ok(ConvexFunction::Analytic(f.clone()));
                }
                let cut = dom.intersect(p);
                if cut.is_empty() {
                    return Err(Error::Improper("restriction has empty domain".into()));
                }
                let g = cut.vrep();
                if g.rays.is_empty() && g.vertices.len() == 1 {
                    let pt = g.vertices[0].clone();
                    let v = f.eval(&pt[0]);
                    let Some(r) = v.as_rat() else {
                        return Err(Error::IrrationalBoundary(
                            "restriction point has irrational value".into(),
                        ));
                    };
                    let fun =
                        MaxAffine::new(1, vec![(linalg::zeros(1), r.clone())], cut, vec![])?;
                    return Ok(ConvexFunction::MaxAffine(fun));
                }
                Err(Error::UnsupportedFamily(
                    "analytic function restricted to a nontrivial interval".into(),
                ))
            }
        }
    }
}

/// A finite indexed family `{f_t}` over a common space.
#[derive(Clone, Debug)]
pub struct FunctionFamily {
    dim: usize,
    entries: Vec<(String, ConvexFunction)>,
}

impl FunctionFamily {
    pub fn new(dim: usize, entries: Vec<(String, ConvexFunction)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Improper("empty family".into()));
        }
        for (label, f) in &entries {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
            if entries.iter().filter(|(l, _)| l == label).count() > 1 {
                return Err(Error::Parse(format!("duplicate index label {label:?}")));
            }
        }
        Ok(FunctionFamily { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(String, ConvexFunction)] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&ConvexFunction> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, f)| f)
    }

    /// Pointwise supremum at `y`.
    pub fn sup_value(&self, y: &[Rat]) -> Value {
        self.entries
            .iter()
            .map(|(_, f)| f.eval(y))
            .max()
            .expect("nonempty family")
    }

    /// Indices within `eps` of the supremum at `x`: `f_t(x) ≥ f(x) - ε`
    /// (with the envelope value on the left when `use_cl` is set). When
    /// `f(x) = +∞` the active indices are exactly those with
    /// `f_t(x) = +∞`.
    pub fn active_set(&self, x: &[Rat], eps: &Rat, use_cl: bool) -> Vec<String> {
        let sup = self.sup_value(x);
        let mut out = Vec::new();
        for (label, f) in &self.entries {
            let v = if use_cl {
                f.lsc_envelope().eval(x)
            } else {
                f.eval(x)
            };
            let active = match (&sup, &v) {
                (Value::PosInf, _) => v == Value::PosInf,
                (Value::Fin(s), Value::PosInf) => {
                    // f_t(x) = +∞ exceeds any finite threshold
                    let _ = s;
                    true
                }
                (Value::Fin(s), Value::Fin(q)) => *q >= s.add_rat(&-eps),
            };
            if active {
                out.push(label.clone());
            }
        }
        out
    }

    /// Exact supremum. All-max-affine families merge into one max-affine
    /// representation; otherwise a pointwise-evaluation handle is
    /// returned and closed-form left-hand sides are supplied downstream.
    pub fn sup_function(&self) -> Result<SupFunction> {
        if self
            .entries
            .iter()
            .all(|(_, f)| matches!(f, ConvexFunction::MaxAffine(_)))
        {
            return Ok(SupFunction::Exact(self.merge_max_affine()?));
        }
        Ok(SupFunction::Pointwise(SupHandle {
            family: self.clone(),
        }))
    }

    fn merge_max_affine(&self) -> Result<ConvexFunction> {
        let mut pieces: Vec<Piece> = Vec::new();
        let mut domain = Polyhedron::full_space(self.dim);
        let mut candidate_points: Vec<RatVec> = Vec::new();
        for (_, f) in &self.entries {
            let f = f.as_max_affine().expect("checked all max-affine");
            pieces.extend(f.pieces().iter().cloned());
            domain = domain.intersect(f.domain());
            for ov in f.overrides() {
                if !candidate_points.contains(&ov.point) {
                    candidate_points.push(ov.point.clone());
                }
            }
        }
        if domain.is_empty() {
            return Err(Error::Improper("family domains do not intersect".into()));
        }
        let probe = MaxAffine::new(self.dim, pieces.clone(), domain.clone(), vec![])?;
        let mut overrides = Vec::new();
        for p in candidate_points {
            if !domain.member(&p) {
                continue;
            }
            let v = self.sup_value(&p);
            match v {
                Value::PosInf => overrides.push(PointOverride {
                    point: p,
                    value: None,
                }),
                Value::Fin(q) => {
                    let r = q
                        .as_rat()
                        .expect("max-affine family values are rational")
                        .clone();
                    if r > probe.base_value(&p) {
                        overrides.push(PointOverride {
                            point: p,
                            value: Some(r),
                        });
                    }
                }
            }
        }
        Ok(ConvexFunction::MaxAffine(MaxAffine::new(
            self.dim, pieces, domain, overrides,
        )?))
    }
}

/// Result of [`FunctionFamily::sup_function`].
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum SupFunction {
    Exact(ConvexFunction),
    Pointwise(SupHandle),
}

/// Evaluation-only handle for suprema outside the max-affine class.
#[derive(Clone, Debug)]
pub struct SupHandle {
    family: FunctionFamily,
}

impl SupHandle {
    pub fn eval(&self, y: &[Rat]) -> Value {
        self.family.sup_value(y)
    }

    pub fn family(&self) -> &FunctionFamily {
        &self.family
    }
}
