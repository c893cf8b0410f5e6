//! Seeded random instances and functions for the verification suites.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supdiff_core::convfun::{AnalyticKind, ConvexFunction, FunctionFamily, MaxAffine};
use supdiff_core::polyrat::polyhedron::{Halfspace, HalfspaceSystem};
use supdiff_core::polyrat::{Polyhedron, RatVec};
use supdiff_core::Rat;

use crate::instance::{
    EntrySpec, FlagsSpec, FunctionSpec, Instance, InstanceSpec, OverrideSpec, PieceSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    FullDomain,
    WithIndicator,
}

impl GenKind {
    pub fn parse(s: &str) -> Option<GenKind> {
        match s {
            "full_domain" => Some(GenKind::FullDomain),
            "with_indicator" => Some(GenKind::WithIndicator),
            _ => None,
        }
    }
}

fn rat(v: i64) -> Rat {
    Rat::from_int(v)
}

/// Inclusive per-coordinate bounds of a box domain.
type BoxBounds = (Vec<i64>, Vec<i64>);

/// A family of `k` affine functions tying at a chosen point, optionally
/// joined by a box-domain indicator entry with the reference point on the
/// box boundary. Deterministic in `(n, k, seed, kind)`; coefficients stay
/// within `|a_ij|, |b_i| ≤ 8`.
pub fn gen_random_instance(n: usize, k: usize, seed: u64, kind: GenKind) -> Instance {
    assert!((1..=3).contains(&n), "n must be 1..=3");
    assert!((2..=5).contains(&k), "k must be 2..=5");
    let tag = match kind {
        GenKind::FullDomain => 0u64,
        GenKind::WithIndicator => 1u64,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed.wrapping_mul(1_000_003)
            .wrapping_add((n as u64) << 32)
            .wrapping_add((k as u64) << 16)
            .wrapping_add(tag),
    );

    // Box first (when present), then a reference point on its boundary.
    let (domain_box, x): (Option<BoxBounds>, Vec<i64>) = match kind {
        GenKind::FullDomain => {
            let x = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
            (None, x)
        }
        GenKind::WithIndicator => {
            let lo: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=-1)).collect();
            let hi: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let tight = rng.gen_range(0..n);
            let x = (0..n)
                .map(|i| {
                    if i == tight || rng.gen_bool(0.4) {
                        hi[i]
                    } else {
                        rng.gen_range(lo[i]..=hi[i])
                    }
                })
                .collect();
            (Some((lo, hi)), x)
        }
    };

    // Slope rows and the active pattern at x. The common level sits at 2,
    // safely above the indicator's 0, so the active set is stable for
    // every grid ε < 1.
    let level = 2i64;
    let all_active = seed.is_multiple_of(2);
    let mut entries: Vec<(String, ConvexFunction)> = Vec::new();
    for t in 0..k {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let active = all_active || t == 0 || rng.gen_bool(0.5);
        let gap = if active { 0 } else { rng.gen_range(1..=4) };
        let ax: i64 = a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
        let b = level - ax - gap;
        let f = MaxAffine::new(
            n,
            vec![(a.iter().map(|&v| rat(v)).collect(), rat(b))],
            Polyhedron::full_space(n),
            vec![],
        )
        .expect("affine entry is well formed");
        entries.push((format!("f{}", t + 1), ConvexFunction::MaxAffine(f)));
    }
    let flags = match &domain_box {
        None => FlagsSpec {
            lsc: true,
            continuous_at_x: true,
            continuous_somewhere: true,
        },
        Some((lo, hi)) => {
            let mut ineqs = Vec::with_capacity(2 * n);
            for i in 0..n {
                let mut up = vec![Rat::zero(); n];
                up[i] = Rat::one();
                ineqs.push(Halfspace::new(up, rat(hi[i])));
                let mut down = vec![Rat::zero(); n];
                down[i] = -Rat::one();
                ineqs.push(Halfspace::new(down, rat(-lo[i])));
            }
            let box_poly =
                Polyhedron::from_hrep(n, HalfspaceSystem { ineqs, eqs: vec![] }).unwrap();
            let indicator = MaxAffine::new(
                n,
                vec![(vec![Rat::zero(); n], Rat::zero())],
                box_poly,
                vec![],
            )
            .unwrap();
            entries.push(("dom".into(), ConvexFunction::MaxAffine(indicator)));
            FlagsSpec {
                lsc: true,
                continuous_at_x: false,
                continuous_somewhere: true,
            }
        }
    };

    let family = FunctionFamily::new(n, entries).expect("generated family is well formed");
    Instance {
        name: format!("gen_{n}d_k{k}_seed{seed}_{tag}"),
        family,
        x: x.into_iter().map(rat).collect(),
        flags,
        expected: BTreeMap::new(),
    }
}

/// A multi-piece max-affine function for subgradient-level suites: `k`
/// pieces with small integer coefficients, optionally over a box domain
/// containing the origin.
pub fn gen_random_function(n: usize, k: usize, seed: u64, with_domain: bool) -> ConvexFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(7_368_787).wrapping_add(n as u64));
    let pieces: Vec<(RatVec, Rat)> = (0..k)
        .map(|_| {
            let a: RatVec = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
            let b = rat(rng.gen_range(-4..=4));
            (a, b)
        })
        .collect();
    let domain = if with_domain {
        let mut ineqs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let hi = rng.gen_range(1..=3);
            let lo = rng.gen_range(1..=3);
            let mut up = vec![Rat::zero(); n];
            up[i] = Rat::one();
            ineqs.push(Halfspace::new(up, rat(hi)));
            let mut down = vec![Rat::zero(); n];
            down[i] = -Rat::one();
            ineqs.push(Halfspace::new(down, rat(lo)));
        }
        Polyhedron::from_hrep(n, HalfspaceSystem { ineqs, eqs: vec![] }).unwrap()
    } else {
        Polyhedron::full_space(n)
    };
    ConvexFunction::MaxAffine(MaxAffine::new(n, pieces, domain, vec![]).unwrap())
}

/// Serialize an in-memory instance back into the file schema.
pub fn instance_to_spec(inst: &Instance) -> InstanceSpec {
    let family = inst
        .family
        .entries()
        .iter()
        .map(|(label, f)| EntrySpec {
            label: label.clone(),
            f: function_to_spec(f),
        })
        .collect();
    let expected = inst
        .expected
        .iter()
        .map(|(k, v)| {
            let status = match v {
                supdiff_core::formulas::VerdictStatus::ExactMatch => "exact_match",
                supdiff_core::formulas::VerdictStatus::SandwichPass => "sandwich_pass",
                supdiff_core::formulas::VerdictStatus::Mismatch => "mismatch",
            };
            (k.clone(), status.to_string())
        })
        .collect();
    InstanceSpec {
        name: inst.name.clone(),
        dimension: inst.family.dim(),
        x: inst.x.clone(),
        family,
        flags: inst.flags,
        expected,
    }
}

fn function_to_spec(f: &ConvexFunction) -> FunctionSpec {
    match f {
        ConvexFunction::MaxAffine(ma) => {
            let pieces = ma
                .pieces()
                .iter()
                .map(|(a, b)| PieceSpec {
                    a: a.clone(),
                    b: b.clone(),
                })
                .collect();
            let h = ma.domain().hrep().clone();
            let domain = if h.ineqs.is_empty() && h.eqs.is_empty() {
                None
            } else {
                Some(h)
            };
            let overrides = ma
                .overrides()
                .iter()
                .map(|o| OverrideSpec {
                    point: o.point.clone(),
                    value: o.value.clone(),
                })
                .collect();
            FunctionSpec::MaxAffine {
                pieces,
                domain,
                overrides,
            }
        }
        ConvexFunction::Analytic(a) => FunctionSpec::Analytic1d {
            name: match a.kind {
                AnalyticKind::NegSqrt => "neg_sqrt".into(),
            },
            reflect: a.reflect,
            shift: a.shift.clone(),
            scale: a.scale.clone(),
        },
    }
}

/// Seeded rational probe directions with small numerators/denominators.
pub fn gen_directions(n: usize, count: usize, seed: u64) -> Vec<RatVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(15_485_863).wrapping_add(17));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d: RatVec = (0..n)
            .map(|_| Rat::frac(rng.gen_range(-20..=20), rng.gen_range(1..=5)))
            .collect();
        if d.iter().any(|c| !c.is_zero()) {
            out.push(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism_in_seed() {
        let a = gen_random_instance(2, 3, 7, GenKind::WithIndicator);
        let b = gen_random_instance(2, 3, 7, GenKind::WithIndicator);
        assert_eq!(a.x, b.x);
        assert_eq!(a.name, b.name);
        for ((la, fa), (lb, fb)) in a.family.entries().iter().zip(b.family.entries()) {
            assert_eq!(la, lb);
            let (pa, pb) = (
                fa.as_max_affine().unwrap().pieces(),
                fb.as_max_affine().unwrap().pieces(),
            );
            assert_eq!(pa, pb);
        }
    }

    #[test]
    fn indicator_instances_put_x_on_the_boundary() {
        for seed in 0..6 {
            let inst = gen_random_instance(2, 2, seed, GenKind::WithIndicator);
            let dom = supdiff_core::formulas::family_domain(&inst.family);
            assert!(dom.member(&inst.x));
            let tight = dom
                .hrep()
                .ineqs
                .iter()
                .any(|h| supdiff_core::polyrat::linalg::dot(&h.normal, &inst.x) == h.offset);
            assert!(tight, "seed {seed}: x should touch the box boundary");
        }
    }

    #[test]
    fn coefficients_stay_small() {
        for seed in 0..4 {
            let inst = gen_random_instance(3, 5, seed, GenKind::FullDomain);
            for (_, f) in inst.family.entries() {
                for (a, b) in f.as_max_affine().unwrap().pieces() {
                    assert!(a.iter().all(|c| c.abs() <= Rat::from_int(8)));
                    assert!(b.abs() <= Rat::from_int(8));
                }
            }
        }
    }
}
