//! Property suites for the polyhedral kernel.

use proptest::prelude::*;

use supdiff_core::polyrat::linalg;
use supdiff_core::polyrat::polyhedron::{closed_conv_union, Halfspace, HalfspaceSystem};
use supdiff_core::polyrat::{GeneratorSystem, Polyhedron, RatVec, Subspace};
use supdiff_core::{ExtRat, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=4).prop_map(|(p, q)| Rat::frac(p, q))
}

fn arb_vec(n: usize) -> impl Strategy<Value = RatVec> {
    prop::collection::vec(arb_rat(), n)
}

fn arb_polytope(n: usize) -> impl Strategy<Value = Polyhedron> {
    prop::collection::vec(arb_vec(n), 1..=4).prop_map(move |vertices| {
        Polyhedron::from_vrep(
            n,
            GeneratorSystem {
                vertices,
                rays: vec![],
            },
        )
        .unwrap()
    })
}

fn arb_polyhedron(n: usize) -> impl Strategy<Value = Polyhedron> {
    (
        prop::collection::vec(arb_vec(n), 1..=3),
        prop::collection::vec(arb_vec(n), 0..=2),
    )
        .prop_map(move |(vertices, rays)| {
            let rays = rays
                .into_iter()
                .filter(|r| !linalg::is_zero_vec(r))
                .collect();
            Polyhedron::from_vrep(n, GeneratorSystem { vertices, rays }).unwrap()
        })
}

fn arb_hrep(n: usize) -> impl Strategy<Value = Polyhedron> {
    prop::collection::vec((arb_vec(n), arb_rat()), 1..=5).prop_map(move |rows| {
        let ineqs: Vec<Halfspace> = rows
            .into_iter()
            .filter(|(normal, _)| !linalg::is_zero_vec(normal))
            .map(|(normal, offset)| Halfspace::new(normal, offset))
            .collect();
        Polyhedron::from_hrep(n, HalfspaceSystem { ineqs, eqs: vec![] }).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Converting representations in either order describes the same set.
    #[test]
    fn representation_round_trip(p in prop_oneof![arb_hrep(2), arb_hrep(3), arb_polyhedron(2)]) {
        let via_vrep = Polyhedron::from_vrep(p.dim(), p.vrep().clone()).unwrap();
        prop_assert!(p.set_eq(&via_vrep));
        if !p.is_empty() {
            let via_hrep = Polyhedron::from_hrep(p.dim(), p.hrep().clone()).unwrap();
            prop_assert!(p.set_eq(&via_hrep));
        }
    }

    /// Interval scaling commutes with the closed convex hull when the
    /// interval avoids zero: both evaluation orders give the same set.
    #[test]
    fn interval_scaling_commutes_with_hull(
        parts in prop::collection::vec(arb_polytope(2), 1..=3),
        lo_num in 1i64..=5,
        width in 0i64..=4,
        negate in any::<bool>(),
    ) {
        let (mut lo, mut hi) = (Rat::frac(lo_num, 2), Rat::frac(lo_num + width, 2));
        if negate {
            (lo, hi) = (-hi, -lo);
        }
        let hull_first = closed_conv_union(2, &parts).interval_scale(&lo, &hi);
        let mut scaled: Vec<Polyhedron> = Vec::new();
        for p in &parts {
            scaled.push(p.scale(&lo));
            scaled.push(p.scale(&hi));
        }
        let scale_first = closed_conv_union(2, &scaled);
        prop_assert!(hull_first.set_eq(&scale_first));
    }

    /// Membership agrees with the facet description and the support
    /// function: y is in P iff every canonical facet bound holds, and the
    /// support over each facet normal equals its offset.
    #[test]
    fn support_and_membership_agree(p in arb_polyhedron(2), y in arb_vec(2)) {
        prop_assume!(!p.is_empty());
        let c = p.canonicalized();
        let h = c.hrep();
        let by_facets = h.ineqs.iter().all(|hs| linalg::dot(&hs.normal, &y) <= hs.offset)
            && h.eqs.iter().all(|hs| linalg::dot(&hs.normal, &y) == hs.offset);
        prop_assert_eq!(p.member(&y), by_facets);
        for hs in &h.ineqs {
            prop_assert_eq!(c.support(&hs.normal), ExtRat::Finite(hs.offset.clone()));
        }
    }

    /// Support functions add under Minkowski sums, with the empty set
    /// absorbing everything.
    #[test]
    fn minkowski_support_additivity(
        p in arb_polyhedron(2),
        q in arb_polyhedron(2),
        d in arb_vec(2),
    ) {
        prop_assume!(!linalg::is_zero_vec(&d));
        let s = p.minkowski_sum(&q);
        let expect = match (p.support(&d), q.support(&d)) {
            (ExtRat::PosInf, _) | (_, ExtRat::PosInf) => ExtRat::PosInf,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::NegInf,
        };
        prop_assert_eq!(s.support(&d), expect);
        let absorbed = p.minkowski_sum(&Polyhedron::empty_set(2));
        prop_assert!(absorbed.is_empty());
    }

    /// Projection through Fourier-Motzkin and through the generators give
    /// the same shadow.
    #[test]
    fn projection_routes_agree(p in arb_hrep(3), keep in prop::sample::subsequence(vec![0usize,1,2], 1..=2)) {
        let _ = p.hrep(); // make the elimination path available
        let fm = p.project(&keep);
        let via_generators = Polyhedron::from_vrep(3, p.vrep().clone()).unwrap().project(&keep);
        prop_assert!(fm.set_eq(&via_generators));
    }

    /// Intersection is the set intersection (checked by sampling members
    /// of both sides).
    #[test]
    fn intersection_membership(p in arb_polyhedron(2), q in arb_polytope(2), y in arb_vec(2)) {
        let both = p.intersect(&q);
        prop_assert_eq!(both.member(&y), p.member(&y) && q.member(&y));
    }

    /// The closed convex hull of a union contains every part, and any
    /// convex set containing all parts contains the hull.
    #[test]
    fn conv_union_is_least_upper_bound(
        a in arb_polytope(2),
        b in arb_polytope(2),
        pad in arb_rat(),
    ) {
        let u = closed_conv_union(2, &[a.clone(), b.clone()]);
        prop_assert!(u.contains_set(&a));
        prop_assert!(u.contains_set(&b));
        // a box around both parts contains the hull
        let r = pad.abs() + Rat::from_int(64);
        let big = Polyhedron::linf_ball(&linalg::zeros(2), &r);
        prop_assert!(big.contains_set(&u));
    }

    /// Orthogonal complements: the two spans only share the origin and
    /// their ranks add up to the ambient dimension.
    #[test]
    fn subspace_complement(basis in prop::collection::vec(arb_vec(3), 1..=2)) {
        let rank = linalg::rank(&basis, 3);
        prop_assume!(rank == basis.len());
        let l = Subspace::new(3, basis).unwrap();
        let c = l.orthogonal_complement();
        prop_assert_eq!(l.rank() + c.rank(), 3);
        for b in c.basis() {
            prop_assert!(!l.contains(b));
        }
    }
}
