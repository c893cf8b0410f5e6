//! Bundled instances: the two counterexample pairs, their closed twins,
//! and small continuous families.

use supdiff_core::error::Error as CoreError;

use crate::instance::{parse_instance, Instance};

/// (name, canonical JSON text) for every bundled instance.
pub const BUNDLED: &[(&str, &str)] = &[
    ("sqrt_pair", SQRT_PAIR),
    ("non_lsc_pair", NON_LSC_PAIR),
    ("non_lsc_pair_closed", NON_LSC_PAIR_CLOSED),
    ("abs", ABS),
    ("corner2d", CORNER2D),
];

pub fn bundled(name: &str) -> Result<Instance, CoreError> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CoreError::Parse(format!("no bundled instance named {name:?}")))?;
    parse_instance(text)
}

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// `f₁(y) = -√y` and its reflection: the supremum is the indicator of the
/// origin, every subdifferential of the data functions at the origin is
/// empty, and only the nearby-point formulas recover `∂f(0) = ℝ`.
const SQRT_PAIR: &str = r#"{
  "name": "sqrt_pair",
  "dimension": 1,
  "x": ["0"],
  "family": [
    {"label": "1", "f": {"kind": "analytic1d", "name": "neg_sqrt", "reflect": false, "shift": "0", "scale": "1"}},
    {"label": "2", "f": {"kind": "analytic1d", "name": "neg_sqrt", "reflect": true, "shift": "0", "scale": "1"}}
  ],
  "flags": {"lsc": true, "continuous_at_x": false, "continuous_somewhere": false},
  "expected": {
    "eps_all_active": "exact_match",
    "eps_active": "exact_match",
    "nearby_base": "exact_match",
    "nearby_refined": "exact_match",
    "nearby_restricted": "exact_match"
  }
}"#;

/// Identity and its reflection on opposite halflines, both raised to 1 at
/// the origin. The supremum is `1 + I_{0}` with `∂f(0) = ℝ`, but the data
/// functions have empty enlargements for small ε, so the nearby-point
/// formula genuinely fails without lower semicontinuity.
const NON_LSC_PAIR: &str = r#"{
  "name": "non_lsc_pair",
  "dimension": 1,
  "x": ["0"],
  "family": [
    {"label": "1", "f": {"kind": "max_affine",
      "pieces": [{"a": ["1"], "b": "0"}],
      "domain": {"ineqs": [{"normal": ["-1"], "offset": "0"}]},
      "overrides": [{"point": ["0"], "value": "1"}]}},
    {"label": "2", "f": {"kind": "max_affine",
      "pieces": [{"a": ["-1"], "b": "0"}],
      "domain": {"ineqs": [{"normal": ["1"], "offset": "0"}]},
      "overrides": [{"point": ["0"], "value": "1"}]}}
  ],
  "flags": {"lsc": false, "continuous_at_x": false, "continuous_somewhere": false},
  "expected": {
    "eps_all_active": "mismatch",
    "eps_active": "mismatch",
    "nearby_base": "mismatch",
    "nearby_refined": "mismatch",
    "nearby_restricted": "exact_match"
  }
}"#;

/// The lsc envelopes of the pair above; the nearby-point formula holds
/// again, with the union `]-∞,1] ∪ [-1,+∞[` convexifying to the line.
const NON_LSC_PAIR_CLOSED: &str = r#"{
  "name": "non_lsc_pair_closed",
  "dimension": 1,
  "x": ["0"],
  "family": [
    {"label": "1", "f": {"kind": "max_affine",
      "pieces": [{"a": ["1"], "b": "0"}],
      "domain": {"ineqs": [{"normal": ["-1"], "offset": "0"}]}}},
    {"label": "2", "f": {"kind": "max_affine",
      "pieces": [{"a": ["-1"], "b": "0"}],
      "domain": {"ineqs": [{"normal": ["1"], "offset": "0"}]}}}
  ],
  "flags": {"lsc": true, "continuous_at_x": false, "continuous_somewhere": false},
  "expected": {
    "eps_all_active": "exact_match",
    "eps_active": "exact_match",
    "nearby_base": "exact_match",
    "nearby_refined": "exact_match",
    "nearby_restricted": "exact_match"
  }
}"#;

/// `|x|` as the supremum of the two slopes; everything is exact here.
const ABS: &str = r#"{
  "name": "abs",
  "dimension": 1,
  "x": ["0"],
  "family": [
    {"label": "+", "f": {"kind": "max_affine", "pieces": [{"a": ["1"], "b": "0"}]}},
    {"label": "-", "f": {"kind": "max_affine", "pieces": [{"a": ["-1"], "b": "0"}]}}
  ],
  "flags": {"lsc": true, "continuous_at_x": true, "continuous_somewhere": true},
  "expected": {
    "eps_all_active": "exact_match",
    "eps_active": "exact_match",
    "nearby_base": "exact_match",
    "nearby_refined": "exact_match",
    "nearby_restricted": "exact_match",
    "nearby_envelopes": "exact_match",
    "nearby_exact": "exact_match"
  }
}"#;

/// Three affine functions on ℝ² tying at the origin: a full-dimensional
/// continuous instance whose subdifferential is a triangle.
const CORNER2D: &str = r#"{
  "name": "corner2d",
  "dimension": 2,
  "x": ["0", "0"],
  "family": [
    {"label": "a", "f": {"kind": "max_affine", "pieces": [{"a": ["1", "0"], "b": "0"}]}},
    {"label": "b", "f": {"kind": "max_affine", "pieces": [{"a": ["0", "1"], "b": "0"}]}},
    {"label": "c", "f": {"kind": "max_affine", "pieces": [{"a": ["-1", "-1"], "b": "0"}]}}
  ],
  "flags": {"lsc": true, "continuous_at_x": true, "continuous_somewhere": true},
  "expected": {
    "eps_all_active": "exact_match",
    "eps_active": "exact_match",
    "nearby_base": "exact_match",
    "nearby_refined": "exact_match",
    "nearby_restricted": "exact_match",
    "nearby_envelopes": "exact_match",
    "nearby_exact": "exact_match"
  }
}"#;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_instances_parse() {
        for (name, _) in BUNDLED {
            let inst = bundled(name).unwrap();
            assert_eq!(&inst.name, name);
        }
    }

    #[test]
    fn unknown_name_errors() {
        assert!(bundled("nope").is_err());
    }
}
