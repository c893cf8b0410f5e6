//! Property suites for the function layer and the subdifferential
//! calculus.

use proptest::prelude::*;

use supdiff_core::convfun::{ConvexFunction, FunctionFamily, MaxAffine, SupFunction, Value};
use supdiff_core::polyrat::linalg;
use supdiff_core::polyrat::{Polyhedron, RatVec, Subspace};
use supdiff_core::subdiff::{
    witness_subgradient, enlargement, enlargement_member, eps_subdifferential, subdifferential, BallNorm,
    EnlargementQuery, EnlargementVariant,
};
use supdiff_core::Rat;

fn rat(v: i64) -> Rat {
    Rat::from_int(v)
}

fn arb_coeff() -> impl Strategy<Value = i64> {
    -3i64..=3
}

/// Max-affine function with small integer pieces, optionally boxed.
fn arb_function(n: usize) -> impl Strategy<Value = MaxAffine> {
    (
        prop::collection::vec(
            (prop::collection::vec(arb_coeff(), n), -4i64..=4),
            1..=4,
        ),
        prop::option::of(1i64..=3),
    )
        .prop_map(move |(rows, box_radius)| {
            let pieces = rows
                .into_iter()
                .map(|(a, b)| (a.into_iter().map(rat).collect::<RatVec>(), rat(b)))
                .collect();
            let domain = match box_radius {
                None => Polyhedron::full_space(n),
                Some(r) => Polyhedron::linf_ball(&linalg::zeros(n), &rat(r)),
            };
            MaxAffine::new(n, pieces, domain, vec![]).unwrap()
        })
}

fn arb_point(n: usize) -> impl Strategy<Value = RatVec> {
    prop::collection::vec((-2i64..=2, 1i64..=2), n)
        .prop_map(|cs| cs.into_iter().map(|(p, q)| Rat::frac(p, q)).collect())
}

fn arb_family(n: usize) -> impl Strategy<Value = FunctionFamily> {
    prop::collection::vec(arb_function(n), 1..=3).prop_map(move |fs| {
        let entries = fs
            .into_iter()
            .enumerate()
            .map(|(i, f)| (format!("t{i}"), ConvexFunction::MaxAffine(f)))
            .collect();
        FunctionFamily::new(n, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// The merged supremum evaluates to the pointwise max of the entries.
    #[test]
    fn sup_matches_pointwise_max(fam in arb_family(2), y in arb_point(2)) {
        let SupFunction::Exact(sup) = fam.sup_function().unwrap() else {
            panic!("max-affine families merge");
        };
        prop_assert_eq!(sup.eval(&y), fam.sup_value(&y));
    }

    /// The envelope never exceeds the function and is idempotent.
    #[test]
    fn envelope_dominated_and_idempotent(f in arb_function(2), y in arb_point(2)) {
        let cl = f.lsc_envelope();
        prop_assert!(cl.eval(&y) <= f.eval(&y));
        prop_assert_eq!(cl.lsc_envelope().eval(&y), cl.eval(&y));
    }

    /// Active sets grow with ε, and the envelope variant is finer.
    #[test]
    fn active_sets_monotone(fam in arb_family(2), x in arb_point(2)) {
        let small = fam.active_set(&x, &Rat::frac(1, 8), false);
        let large = fam.active_set(&x, &Rat::frac(1, 2), false);
        for t in &small {
            prop_assert!(large.contains(t));
        }
        let cl = fam.active_set(&x, &Rat::frac(1, 8), true);
        for t in &cl {
            prop_assert!(small.contains(t));
        }
    }

    /// `∂f(x) ⊆ ∂_ε f(x) ⊆ ∂_{ε'} f(x)` for `ε ≤ ε'`.
    #[test]
    fn eps_subdifferentials_nest(f in arb_function(2), x in arb_point(2)) {
        let f = ConvexFunction::MaxAffine(f);
        if !f.eval(&x).is_finite() {
            return Ok(());
        }
        let d0 = subdifferential(&f, &x).unwrap();
        let d1 = eps_subdifferential(&f, &x, &Rat::frac(1, 8)).unwrap();
        let d2 = eps_subdifferential(&f, &x, &Rat::frac(1, 2)).unwrap();
        prop_assert!(d1.contains_set(&d0));
        prop_assert!(d2.contains_set(&d1));
    }

    /// Sandwich soundness: every inner part sits inside some outer part,
    /// and every inner vertex passes the membership oracle.
    #[test]
    fn enlargement_sandwich_sound(f in arb_function(2), x in arb_point(2), k in 1u32..=4) {
        let f = ConvexFunction::MaxAffine(f);
        if !f.eval(&x).is_finite() {
            return Ok(());
        }
        let eps = Rat::frac(1, 1 << k).square();
        let q = EnlargementQuery::new(f, x, eps, EnlargementVariant::Base).unwrap();
        let s = enlargement(&q).unwrap();
        let outer_hull = s.outer_hull();
        for part in &s.inner {
            prop_assert!(outer_hull.contains_set(part));
            for v in part.vertices() {
                let (ok, witness) = enlargement_member(&q, v).unwrap();
                prop_assert!(ok);
                prop_assert!(witness.is_some());
            }
        }
    }

    /// Exact enlargements collapse onto `∂f(x)` along the grid.
    #[test]
    fn enlargement_grid_shrinks_to_subdifferential(f in arb_function(1), x in arb_point(1)) {
        let f = ConvexFunction::MaxAffine(f);
        if !f.eval(&x).is_finite() {
            return Ok(());
        }
        let d = subdifferential(&f, &x).unwrap();
        let tiny = Rat::frac(1, 1 << 12);
        let q = EnlargementQuery::new(f, x, tiny, EnlargementVariant::Base).unwrap();
        let s = enlargement(&q).unwrap();
        if s.exact {
            prop_assert!(s.outer_hull().set_eq(&d));
            prop_assert!(s.inner_hull().set_eq(&d));
        } else {
            // even without exactness both bounds bracket ∂f(x)
            prop_assert!(s.outer_hull().contains_set(&d));
            prop_assert!(d.contains_set(&s.inner_hull()));
        }
    }

    /// Every point certified for the base enlargement also passes the
    /// refined one and lies in `∂_{2ε}f(x)` and `∂_{3ε}f(x)` of the
    /// supremum.
    #[test]
    fn enlargement_chain_and_sup_inclusion(fam in arb_family(2), x in arb_point(2), k in 1u32..=3) {
        let eps = Rat::frac(1, 1 << k).square();
        let two_eps = &eps * &rat(2);
        let three_eps = &eps * &rat(3);
        let SupFunction::Exact(sup) = fam.sup_function().unwrap() else {
            panic!("max-affine families merge");
        };
        if !sup.eval(&x).is_finite() {
            return Ok(());
        }
        let sup_3eps = eps_subdifferential(&sup, &x, &three_eps).unwrap();
        let active = fam.active_set(&x, &eps, false);
        for label in &active {
            let f = fam.get(label).unwrap();
            if !f.eval(&x).is_finite() {
                continue;
            }
            let base = EnlargementQuery::new(
                f.clone(), x.clone(), eps.clone(), EnlargementVariant::Base,
            ).unwrap();
            let refined = EnlargementQuery::new(
                f.clone(), x.clone(), eps.clone(), EnlargementVariant::Refined,
            ).unwrap();
            let s = enlargement(&base).unwrap();
            let cap = eps_subdifferential(f, &x, &two_eps).unwrap();
            for part in &s.inner {
                for v in part.vertices() {
                    let (in_refined, _) = enlargement_member(&refined, v).unwrap();
                    prop_assert!(in_refined);
                    prop_assert!(cap.member(v));
                    prop_assert!(sup_3eps.member(v));
                }
            }
        }
    }

    /// Restricting by coordinate subspaces through the reference point
    /// never loses subgradients, and the whole-space member collapses the
    /// intersection to `∂f(x)`.
    #[test]
    fn coordinate_restrictions_collapse(f in arb_function(2), axis in 0usize..=1) {
        let f = ConvexFunction::MaxAffine(f);
        let mut x = linalg::zeros(2);
        x[axis] = Rat::zero();
        if !f.eval(&x).is_finite() {
            return Ok(());
        }
        let d = subdifferential(&f, &x).unwrap();
        let subspaces = [
            Subspace::coordinate(2, &[axis]),
            Subspace::whole(2),
        ];
        let mut meet: Option<Polyhedron> = None;
        for l in &subspaces {
            let restricted = f.add_indicator(&l.as_polyhedron()).unwrap();
            let dl = subdifferential(&restricted, &x).unwrap();
            prop_assert!(dl.contains_set(&d));
            meet = Some(match meet {
                None => dl,
                Some(m) => m.intersect(&dl),
            });
        }
        prop_assert!(meet.unwrap().set_eq(&d));
    }

    /// The witness construction satisfies its bounds on random draws.
    #[test]
    fn witness_bounds_hold(f in arb_function(2), k in 1u32..=4, pick in 0usize..8) {
        let f = ConvexFunction::MaxAffine(f);
        let x = linalg::zeros(2);
        if !f.eval(&x).is_finite() {
            return Ok(());
        }
        let eps = Rat::frac(1, 1 << k).square();
        let d = eps_subdifferential(&f, &x, &eps).unwrap();
        prop_assume!(!d.is_empty());
        let verts = d.vertices();
        let xstar = verts[pick % verts.len()].clone();
        let w = witness_subgradient(&f, &x, &xstar, &eps).unwrap();
        let sqrt = eps.sqrt_exact().unwrap();
        let budget = &eps + &sqrt;
        let step = linalg::sub(&w.x_eps, &x);
        prop_assert!(linalg::linf_norm(&step) <= sqrt);
        prop_assert!(subdifferential(&f, &w.x_eps).unwrap().member(&w.xstar_eps));
        prop_assert!(linalg::dot(&w.xstar_eps, &step).abs() <= budget);
        let Value::Fin(fx) = f.eval(&x) else { unreachable!() };
        let Value::Fin(fe) = f.eval(&w.x_eps) else { panic!("witness point is in the domain") };
        prop_assert!(fe <= fx.add_rat(&budget) && fx <= fe.add_rat(&budget));
        let two_eps = &eps * &rat(2);
        prop_assert!(eps_subdifferential(&f, &x, &two_eps).unwrap().member(&w.xstar_eps));
    }

    /// The grid limits are norm-independent: with a tiny ε the ball shape
    /// stops mattering and both sandwiches agree.
    #[test]
    fn ball_norm_agreement_at_grid_bottom(f in arb_function(2)) {
        let f = ConvexFunction::MaxAffine(f);
        let x = linalg::zeros(2);
        if !f.eval(&x).is_finite() {
            return Ok(());
        }
        let tiny = Rat::frac(1, 1 << 12);
        let base = EnlargementQuery::new(f, x, tiny, EnlargementVariant::Base).unwrap();
        let linf = enlargement(&base).unwrap();
        let l1 = enlargement(&base.clone().with_norm(BallNorm::L1)).unwrap();
        prop_assert!(linf.outer_hull().set_eq(&l1.outer_hull()));
        prop_assert!(linf.inner_hull().set_eq(&l1.inner_hull()));
    }
}
