//! On-disk instance format.
//!
//! UTF-8 JSON; every rational is a string `"p/q"` (or an integer
//! string/literal), so exactness survives serialization. Functions are
//! tagged objects:
//!
//! ```json
//! {"kind":"max_affine",
//!  "pieces":[{"a":["1","0"],"b":"-1/2"}],
//!  "domain":{"ineqs":[{"normal":["1","0"],"offset":"1"}]},
//!  "overrides":[{"point":["0","0"],"value":"1"}]}
//! {"kind":"analytic1d","name":"neg_sqrt","reflect":true,"shift":"0","scale":"1"}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use supdiff_core::convfun::{
    Analytic1D, AnalyticKind, ConvexFunction, FunctionFamily, MaxAffine, PointOverride,
};
use supdiff_core::error::Error as CoreError;
use supdiff_core::formulas::{ContinuityFlags, FormulaKind, VerdictStatus};
use supdiff_core::polyrat::{HalfspaceSystem, Polyhedron, RatVec};
use supdiff_core::Rat;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceSpec {
    pub a: Vec<Rat>,
    pub b: Rat,
}

/// `value: null` (or the string `"+inf"`) raises the point to `+∞`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OverrideSpec {
    pub point: Vec<Rat>,
    #[serde(default, deserialize_with = "de_override_value")]
    pub value: Option<Rat>,
}

fn de_override_value<'de, D>(de: D) -> Result<Option<Rat>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    use serde::de::Error;
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Missing,
        Text(String),
        Int(i64),
    }
    match Raw::deserialize(de)? {
        Raw::Missing => Ok(None),
        Raw::Int(v) => Ok(Some(Rat::from_int(v))),
        Raw::Text(s) => {
            let t = s.trim();
            if t == "+inf" || t == "inf" {
                Ok(None)
            } else {
                t.parse::<Rat>().map(Some).map_err(D::Error::custom)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    MaxAffine {
        pieces: Vec<PieceSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain: Option<HalfspaceSystem>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        overrides: Vec<OverrideSpec>,
    },
    Analytic1d {
        name: String,
        #[serde(default)]
        reflect: bool,
        #[serde(default = "Rat::zero")]
        shift: Rat,
        #[serde(default = "Rat::one")]
        scale: Rat,
    },
}

impl FunctionSpec {
    pub fn to_function(&self, dim: usize) -> Result<ConvexFunction, CoreError> {
        match self {
            FunctionSpec::MaxAffine {
                pieces,
                domain,
                overrides,
            } => {
                let domain = match domain {
                    None => Polyhedron::full_space(dim),
                    Some(h) => Polyhedron::from_hrep(dim, h.clone())?,
                };
                let pieces = pieces.iter().map(|p| (p.a.clone(), p.b.clone())).collect();
                let overrides = overrides
                    .iter()
                    .map(|o| PointOverride {
                        point: o.point.clone(),
                        value: o.value.clone(),
                    })
                    .collect();
                Ok(ConvexFunction::MaxAffine(MaxAffine::new(
                    dim, pieces, domain, overrides,
                )?))
            }
            FunctionSpec::Analytic1d {
                name,
                reflect,
                shift,
                scale,
            } => {
                if dim != 1 {
                    return Err(CoreError::DimensionMismatch {
                        expected: 1,
                        got: dim,
                    });
                }
                let kind = match name.as_str() {
                    "neg_sqrt" => AnalyticKind::NegSqrt,
                    other => {
                        return Err(CoreError::Parse(format!(
                            "unknown analytic catalog entry {other:?}"
                        )))
                    }
                };
                Ok(ConvexFunction::Analytic(Analytic1D::new(
                    kind,
                    *reflect,
                    shift.clone(),
                    scale.clone(),
                )?))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntrySpec {
    pub label: String,
    pub f: FunctionSpec,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct FlagsSpec {
    #[serde(default)]
    pub lsc: bool,
    #[serde(default)]
    pub continuous_at_x: bool,
    #[serde(default)]
    pub continuous_somewhere: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub name: String,
    pub dimension: usize,
    pub x: Vec<Rat>,
    pub family: Vec<EntrySpec>,
    #[serde(default)]
    pub flags: FlagsSpec,
    /// Per-formula expected verdict, e.g. `{"nearby_base": "mismatch"}`.
    /// Instances reproducing negative results carry their expectation so
    /// the runner can assert failures too.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, String>,
}

/// A fully validated instance ready for verification.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub family: FunctionFamily,
    pub x: RatVec,
    pub flags: FlagsSpec,
    pub expected: BTreeMap<String, VerdictStatus>,
}

impl Instance {
    pub fn continuity(&self) -> ContinuityFlags {
        ContinuityFlags {
            continuous_at_x: self.flags.continuous_at_x,
            continuous_somewhere: self.flags.continuous_somewhere,
        }
    }

    pub fn expected_for(&self, kind: FormulaKind) -> Option<&VerdictStatus> {
        self.expected.get(kind.name())
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, CoreError> {
    let spec: InstanceSpec =
        serde_json::from_str(text).map_err(|e| CoreError::Parse(e.to_string()))?;
    spec_to_instance(&spec)
}

pub fn spec_to_instance(spec: &InstanceSpec) -> Result<Instance, CoreError> {
    let dim = spec.dimension;
    if spec.x.len() != dim {
        return Err(CoreError::DimensionMismatch {
            expected: dim,
            got: spec.x.len(),
        });
    }
    let mut entries = Vec::with_capacity(spec.family.len());
    for e in &spec.family {
        entries.push((e.label.clone(), e.f.to_function(dim)?));
    }
    let family = FunctionFamily::new(dim, entries)?;
    validate_flags(&family, &spec.x, &spec.flags)?;
    let mut expected = BTreeMap::new();
    for (k, v) in &spec.expected {
        FormulaKind::parse(k)?;
        let status = match v.as_str() {
            "exact_match" => VerdictStatus::ExactMatch,
            "sandwich_pass" => VerdictStatus::SandwichPass,
            "mismatch" => VerdictStatus::Mismatch,
            other => {
                return Err(CoreError::Parse(format!(
                    "unknown expected status {other:?}"
                )))
            }
        };
        expected.insert(k.clone(), status);
    }
    Ok(Instance {
        name: spec.name.clone(),
        family,
        x: spec.x.clone(),
        flags: spec.flags,
        expected,
    })
}

/// Reject flag claims the representation itself refutes.
fn validate_flags(
    family: &FunctionFamily,
    x: &[Rat],
    flags: &FlagsSpec,
) -> Result<(), CoreError> {
    if flags.lsc {
        for (label, f) in family.entries() {
            if !f.is_lsc() {
                return Err(CoreError::Parse(format!(
                    "flags claim lsc but entry {label:?} has value overrides"
                )));
            }
        }
    }
    if flags.continuous_at_x || flags.continuous_somewhere {
        let dom = supdiff_core::formulas::family_domain(family);
        if dom.is_empty() {
            return Err(CoreError::Improper("family domains do not intersect".into()));
        }
        let full_dimensional = dom.canonicalized().hrep().eqs.is_empty();
        if flags.continuous_somewhere && !full_dimensional {
            return Err(CoreError::Parse(
                "flags claim continuity somewhere but the domain is not full-dimensional".into(),
            ));
        }
        if flags.continuous_at_x {
            let h = dom.canonicalized().hrep().clone();
            let interior = full_dimensional
                && dom.member(x)
                && h.ineqs.iter().all(|hs| {
                    supdiff_core::polyrat::linalg::dot(&hs.normal, x) < hs.offset
                });
            if !interior {
                return Err(CoreError::Parse(
                    "flags claim continuity at x but x is not interior to the domain".into(),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_max_affine_with_domain_and_override() {
        let text = r#"{
            "name": "t",
            "dimension": 1,
            "x": ["0"],
            "family": [
                {"label": "1",
                 "f": {"kind": "max_affine",
                       "pieces": [{"a": ["1"], "b": "0"}],
                       "domain": {"ineqs": [{"normal": ["-1"], "offset": "0"}]},
                       "overrides": [{"point": ["0"], "value": "1"}]}}
            ],
            "flags": {"lsc": false},
            "expected": {"nearby_base": "mismatch"}
        }"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.family.entries().len(), 1);
        assert_eq!(
            inst.expected_for(FormulaKind::NearbyBase),
            Some(&VerdictStatus::Mismatch)
        );
    }

    #[test]
    fn lsc_claim_is_checked() {
        let text = r#"{
            "name": "t",
            "dimension": 1,
            "x": ["0"],
            "family": [
                {"label": "1",
                 "f": {"kind": "max_affine",
                       "pieces": [{"a": ["1"], "b": "0"}],
                       "domain": {"ineqs": [{"normal": ["-1"], "offset": "0"}]},
                       "overrides": [{"point": ["0"], "value": "1"}]}}
            ],
            "flags": {"lsc": true}
        }"#;
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn analytic_round_trip() {
        let spec = InstanceSpec {
            name: "s".into(),
            dimension: 1,
            x: vec![Rat::zero()],
            family: vec![EntrySpec {
                label: "1".into(),
                f: FunctionSpec::Analytic1d {
                    name: "neg_sqrt".into(),
                    reflect: true,
                    shift: Rat::zero(),
                    scale: Rat::one(),
                },
            }],
            flags: FlagsSpec::default(),
            expected: BTreeMap::new(),
        };
        let json = serde_json::to_string(&spec).unwrap();
        let inst = parse_instance(&json).unwrap();
        let f = inst.family.entries()[0].1.as_analytic().unwrap();
        assert!(f.reflect);
    }

    #[test]
    fn interior_claim_is_checked() {
        let text = r#"{
            "name": "t",
            "dimension": 1,
            "x": ["0"],
            "family": [
                {"label": "1",
                 "f": {"kind": "max_affine",
                       "pieces": [{"a": ["1"], "b": "0"}],
                       "domain": {"ineqs": [{"normal": ["-1"], "offset": "0"}]}}}
            ],
            "flags": {"lsc": true, "continuous_at_x": true}
        }"#;
        // x = 0 sits on the domain boundary
        assert!(parse_instance(text).is_err());
    }
}
