//! Drive formula verification over instances and assemble reports.

use std::time::Instant;

use supdiff_core::error::Error as CoreError;
use supdiff_core::formulas::{
    intersect_over_grid, lhs_subdifferential, verify_formula, FormulaKind,
};
use supdiff_core::Rat;

use crate::gen::gen_directions;
use crate::instance::Instance;
use crate::report::{FormulaRow, Report, RowOutcome, SetSummary};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub formulas: Vec<FormulaKind>,
    pub grid: Vec<Rat>,
    pub directions: usize,
    pub seed: u64,
    pub tol: Rat,
    /// Attach canonical set summaries to each row (reports get bigger).
    pub show_sets: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            formulas: FormulaKind::ALL.to_vec(),
            grid: default_grid(6),
            directions: 50,
            seed: 0,
            tol: Rat::frac(1, 256),
            show_sets: false,
        }
    }
}

/// The dyadic-square grid `{(2^-k)² : k = 1..=levels}`.
pub fn default_grid(levels: u32) -> Vec<Rat> {
    (1..=levels)
        .map(|k| Rat::frac(1, 1i64 << k).square())
        .collect()
}

pub fn parse_grid(text: &str) -> Result<Vec<Rat>, CoreError> {
    text.split(',')
        .map(|s| s.trim().parse::<Rat>())
        .collect::<Result<Vec<_>, _>>()
}

/// Skippable preconditions are reported, not failed.
fn skip_reason(e: &CoreError) -> Option<String> {
    match e {
        CoreError::PreconditionContinuity
        | CoreError::NotEverywhereActive
        | CoreError::UnsupportedFamily(_)
        | CoreError::IrrationalBoundary(_) => Some(e.to_string()),
        _ => None,
    }
}

/// Run the requested formulas against one instance. The report is
/// deterministic given `(instance, options)`; the exit convention is
/// `ok = true` iff every non-expected-failure verdict passes and every
/// expected failure indeed fails.
pub fn run_verify(inst: &Instance, opts: &VerifyOptions) -> Result<Report, CoreError> {
    let start = Instant::now();
    let dirs = gen_directions(inst.family.dim(), opts.directions, opts.seed);
    let flags = inst.continuity();

    let mut rows = Vec::with_capacity(opts.formulas.len());
    let mut all_ok = true;
    for &kind in &opts.formulas {
        let expected = inst.expected_for(kind).map(RowOutcome::of);
        let row = match verify_formula(
            kind,
            &inst.family,
            &inst.x,
            &opts.grid,
            &dirs,
            &opts.tol,
            &flags,
        ) {
            Ok(verdict) => {
                let outcome = RowOutcome::of(&verdict.status);
                let ok = match expected {
                    Some(exp) => outcome == exp,
                    None => !matches!(outcome, RowOutcome::Mismatch),
                };
                let (lhs, rhs_inner, rhs_outer) = if opts.show_sets {
                    let lhs = lhs_subdifferential(&inst.family, &inst.x)?;
                    let rhs = intersect_over_grid(kind, &inst.family, &inst.x, &opts.grid, &flags)?;
                    (
                        Some(SetSummary::of(&lhs)),
                        Some(SetSummary::of(&rhs.inner)),
                        Some(SetSummary::of(&rhs.outer)),
                    )
                } else {
                    (None, None, None)
                };
                FormulaRow {
                    formula: kind.name(),
                    outcome,
                    ok,
                    expected,
                    skip_reason: None,
                    verdict: Some(verdict),
                    lhs,
                    rhs_inner,
                    rhs_outer,
                }
            }
            Err(e) => match skip_reason(&e) {
                Some(reason) => FormulaRow {
                    formula: kind.name(),
                    outcome: RowOutcome::Skipped,
                    // a skipped formula only fails if a verdict was expected
                    ok: expected.is_none(),
                    expected,
                    skip_reason: Some(reason),
                    verdict: None,
                    lhs: None,
                    rhs_inner: None,
                    rhs_outer: None,
                },
                None => return Err(e),
            },
        };
        all_ok &= row.ok;
        rows.push(row);
    }
    Ok(Report {
        instance: inst.name.clone(),
        grid: opts.grid.clone(),
        tolerance: opts.tol.clone(),
        directions: opts.directions,
        seed: opts.seed,
        rows,
        ok: all_ok,
        elapsed: start.elapsed(),
    })
}

/// Run the whole bundled suite on the fixed dyadic-square grid and return
/// one report per instance, each with the exact computed sets attached.
pub fn run_bundled_suite() -> Result<Vec<Report>, CoreError> {
    let opts = VerifyOptions {
        show_sets: true,
        ..VerifyOptions::default()
    };
    let mut reports = Vec::new();
    for name in crate::bundled::bundled_names() {
        let inst = crate::bundled::bundled(name)?;
        reports.push(run_verify(&inst, &opts)?);
    }
    Ok(reports)
}
