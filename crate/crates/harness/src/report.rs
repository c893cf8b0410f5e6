//! Verification reports: a machine-readable JSON body (byte-identical
//! for identical inputs and seed) plus a human text rendering that also
//! carries timing.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use supdiff_core::formulas::{Verdict, VerdictStatus};
use supdiff_core::polyrat::Polyhedron;
use supdiff_core::Rat;

/// Canonical, minimal generator description of a computed set.
#[derive(Clone, Debug, Serialize)]
pub struct SetSummary {
    pub empty: bool,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
}

impl SetSummary {
    pub fn of(p: &Polyhedron) -> SetSummary {
        let c = p.canonicalized();
        let fmt = |vs: &[Vec<Rat>]| -> Vec<Vec<String>> {
            vs.iter()
                .map(|v| v.iter().map(Rat::to_string).collect())
                .collect()
        };
        SetSummary {
            empty: c.is_empty(),
            vertices: fmt(c.vertices()),
            rays: fmt(c.rays()),
        }
    }

    fn render(&self) -> String {
        if self.empty {
            return "{}".into();
        }
        let join = |vs: &[Vec<String>]| {
            vs.iter()
                .map(|v| format!("({})", v.join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = format!("verts {}", join(&self.vertices));
        if !self.rays.is_empty() {
            let _ = write!(s, " rays {}", join(&self.rays));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOutcome {
    ExactMatch,
    SandwichPass,
    Mismatch,
    Skipped,
}

impl RowOutcome {
    pub fn of(v: &VerdictStatus) -> RowOutcome {
        match v {
            VerdictStatus::ExactMatch => RowOutcome::ExactMatch,
            VerdictStatus::SandwichPass => RowOutcome::SandwichPass,
            VerdictStatus::Mismatch => RowOutcome::Mismatch,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            RowOutcome::ExactMatch => "EXACT_MATCH",
            RowOutcome::SandwichPass => "SANDWICH_PASS",
            RowOutcome::Mismatch => "MISMATCH",
            RowOutcome::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaRow {
    pub formula: &'static str,
    pub outcome: RowOutcome,
    /// Whether the outcome is acceptable for this instance (it matches an
    /// in-file expectation, passes, or was skipped for a stated reason).
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<RowOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<SetSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_inner: Option<SetSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_outer: Option<SetSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub instance: String,
    pub grid: Vec<Rat>,
    pub tolerance: Rat,
    pub directions: usize,
    pub seed: u64,
    pub rows: Vec<FormulaRow>,
    pub ok: bool,
    /// Wall-clock time; excluded from the JSON body so that identical
    /// inputs give byte-identical machine output.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "instance {} (grid {}; tol {}; {} directions; seed {})",
            self.instance,
            self.grid
                .iter()
                .map(Rat::to_string)
                .collect::<Vec<_>>()
                .join(","),
            self.tolerance,
            self.directions,
            self.seed,
        );
        for row in &self.rows {
            let mark = if row.ok { "ok" } else { "FAIL" };
            let mut detail = String::new();
            if let Some(exp) = &row.expected {
                let _ = write!(detail, " expected={}", exp.label());
            }
            if let Some(reason) = &row.skip_reason {
                let _ = write!(detail, " ({reason})");
            }
            if let Some(v) = &row.verdict {
                if let Some(gap) = &v.gap {
                    if !gap.is_zero() {
                        let _ = write!(detail, " gap={gap}");
                    }
                }
            }
            if let (Some(lhs), Some(outer)) = (&row.lhs, &row.rhs_outer) {
                let _ = write!(detail, " | lhs {} | rhs {}", lhs.render(), outer.render());
            }
            let _ = writeln!(
                out,
                "  [{mark:>4}] {:<17} {}{}",
                row.formula,
                row.outcome.label(),
                detail
            );
        }
        let _ = writeln!(
            out,
            "result: {} ({} ms)",
            if self.ok { "PASS" } else { "FAIL" },
            self.elapsed.as_millis()
        );
        out
    }
}
