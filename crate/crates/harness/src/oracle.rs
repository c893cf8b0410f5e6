//! Independent support oracle.
//!
//! `σ_{∂f(x)}(d)` equals the one-sided directional derivative `f'(x; d)`
//! for polyhedral `f`, and that limit is computable from raw function
//! evaluations along the ray: below the first breakpoint the restriction
//! `t ↦ f(x + t·d)` is affine, so two samples pin its slope and its limit
//! value at `0+`. Nothing here touches the subdifferential machinery.

use supdiff_core::convfun::{FunctionFamily, SupFunction, Value};
use supdiff_core::error::{Error, Result};
use supdiff_core::polyrat::linalg;
use supdiff_core::polyrat::rat::{ExtRat, Rat};

/// Exact `σ_{∂f(x)}(d)` for the supremum of a max-affine family, computed
/// as a directional derivative: `+∞` when `d` leaves the domain, `-∞`
/// when the subdifferential is empty.
pub fn oracle_support(fam: &FunctionFamily, x: &[Rat], d: &[Rat]) -> Result<ExtRat> {
    let sup = match fam.sup_function()? {
        SupFunction::Exact(f) => f,
        SupFunction::Pointwise(_) => {
            return Err(Error::UnsupportedFamily(
                "support oracle needs a max-affine supremum".into(),
            ))
        }
    };
    let ma = sup.as_max_affine().expect("exact supremum is max-affine");
    let fx = ma.eval(x);
    let Value::Fin(fx_val) = &fx else {
        return Ok(ExtRat::NegInf); // outside the domain the set is empty
    };
    let fx_rat = fx_val
        .as_rat()
        .expect("max-affine values are rational")
        .clone();

    // How far the ray stays inside the domain.
    let mut t_cap: Option<Rat> = None;
    let h = ma.domain().hrep();
    for hs in &h.ineqs {
        let slope = linalg::dot(&hs.normal, d);
        if slope.is_positive() {
            let room = &hs.offset - &linalg::dot(&hs.normal, x);
            let bound = &room / &slope;
            if t_cap.as_ref().is_none_or(|c| bound < *c) {
                t_cap = Some(bound);
            }
        }
    }
    for hs in &h.eqs {
        if !linalg::dot(&hs.normal, d).is_zero() {
            t_cap = Some(Rat::zero());
        }
    }
    if t_cap.as_ref().is_some_and(Rat::is_zero) {
        // the ray exits immediately; the derivative is +∞ unless the
        // value at x is itself raised above its limit (empty set)
        if raised_at(ma, x, &fx_rat) {
            return Ok(ExtRat::NegInf);
        }
        return Ok(ExtRat::PosInf);
    }

    // First event along the ray: a piece crossing or the domain exit.
    let mut first_event = t_cap;
    let pieces = ma.pieces();
    for (i, (ai, bi)) in pieces.iter().enumerate() {
        for (aj, bj) in pieces.iter().skip(i + 1) {
            let da = linalg::dot(&linalg::sub(ai, aj), d);
            if da.is_zero() {
                continue;
            }
            let num = (bj.clone() + linalg::dot(aj, x)) - (bi.clone() + linalg::dot(ai, x));
            let t = &num / &da;
            if t.is_positive() && first_event.as_ref().is_none_or(|c| t < *c) {
                first_event = Some(t);
            }
        }
    }
    let scale = first_event.unwrap_or_else(Rat::one);

    // Two override-free samples inside the affine window.
    let mut samples: Vec<(Rat, Rat)> = Vec::new();
    let mut t = &scale * &Rat::frac(1, 2);
    while samples.len() < 2 {
        let point = linalg::add(x, &linalg::scale(d, &t));
        if let Some(v) = ma.eval(&point).as_rat() {
            samples.push((t.clone(), v.clone()));
        }
        t = &t * &Rat::frac(1, 2);
    }
    let (t1, v1) = &samples[0];
    let (t2, v2) = &samples[1];
    let slope = &(v1 - v2) / &(t1 - t2);
    let limit = v2 - &(&slope * t2);
    debug_assert!(limit <= fx_rat, "the limit from inside never exceeds f(x)");
    if limit < fx_rat {
        return Ok(ExtRat::NegInf); // value raised at x: empty subdifferential
    }
    Ok(ExtRat::Finite(slope))
}

/// Is `f(x)` strictly above its limit along rays into the domain?
fn raised_at(ma: &supdiff_core::convfun::MaxAffine, x: &[Rat], fx: &Rat) -> bool {
    match ma.envelope_value(x).as_rat() {
        Some(env) => fx > env,
        None => false,
    }
}
