use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use supdiff_core::formulas::FormulaKind;
use supdiff_core::Rat;
use supdiff_harness::bundled::{bundled, bundled_names, BUNDLED};
use supdiff_harness::gen::{gen_directions, gen_random_instance, GenKind};
use supdiff_harness::instance::{parse_instance, Instance};
use supdiff_harness::oracle::oracle_support;
use supdiff_harness::runner::{parse_grid, run_bundled_suite, run_verify, VerifyOptions};

/// Exact verification of subdifferential formulas for pointwise suprema
/// of convex functions.
#[derive(Parser)]
#[command(name = "supdiff", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct CommonOpts {
    /// Epsilon grid, strictly decreasing, e.g. "1/4,1/16,1/64".
    #[arg(long, value_name = "LIST")]
    eps_grid: Option<String>,
    /// Number of seeded probe directions for support gaps.
    #[arg(long, default_value_t = 50)]
    directions: usize,
    /// Seed for the probe directions.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Support-gap tolerance for sandwich verdicts.
    #[arg(long, default_value = "1/256")]
    tol: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Verify formulas against an instance file (or a bundled instance).
    Verify {
        /// Path to an instance JSON file.
        #[arg(long, value_name = "PATH", conflicts_with = "bundled")]
        instance: Option<PathBuf>,
        /// Name of a bundled instance.
        #[arg(long, value_name = "NAME")]
        bundled: Option<String>,
        /// Formula name or "all".
        #[arg(long, default_value = "all")]
        formula: String,
        /// Attach the exact computed sets to every row.
        #[arg(long)]
        show_sets: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Reproduce the bundled examples on the fixed dyadic-square grid.
    Examples {
        /// Also write each bundled instance as a JSON file into this
        /// directory.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Generate a random instance (deterministic in the seed).
    Gen {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// "full_domain" or "with_indicator".
        #[arg(long, default_value = "full_domain")]
        kind: String,
        /// Write the instance here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Cross-check the support of the computed subdifferential against
    /// the directional-derivative oracle.
    Oracle {
        #[arg(long, value_name = "PATH", conflicts_with = "bundled")]
        instance: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        bundled: Option<String>,
        #[arg(long, default_value_t = 50)]
        directions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_instance(path: &Option<PathBuf>, name: &Option<String>) -> Result<Instance> {
    match (path, name) {
        (Some(p), None) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("reading instance file {}", p.display()))?;
            Ok(parse_instance(&text)?)
        }
        (None, Some(n)) => Ok(bundled(n)?),
        _ => bail!(
            "provide exactly one of --instance PATH or --bundled NAME (bundled: {})",
            bundled_names().join(", ")
        ),
    }
}

fn build_options(formula: &str, show_sets: bool, common: &CommonOpts) -> Result<VerifyOptions> {
    let mut opts = VerifyOptions {
        directions: common.directions,
        seed: common.seed,
        tol: common
            .tol
            .parse::<Rat>()
            .context("parsing --tol as a rational")?,
        show_sets,
        ..VerifyOptions::default()
    };
    if let Some(g) = &common.eps_grid {
        opts.grid = parse_grid(g)?;
    }
    if formula != "all" {
        opts.formulas = vec![FormulaKind::parse(formula)?];
    }
    Ok(opts)
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            instance,
            bundled,
            formula,
            show_sets,
            common,
        } => {
            let inst = load_instance(&instance, &bundled)?;
            let opts = build_options(&formula, show_sets, &common)?;
            let report = run_verify(&inst, &opts)?;
            match common.report {
                ReportFormat::Text => print!("{}", report.to_text()),
                ReportFormat::Json => println!("{}", report.to_json()),
            }
            Ok(report.ok)
        }
        Command::Examples { out_dir, report } => {
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
                for (name, text) in BUNDLED {
                    let path = dir.join(format!("{name}.json"));
                    fs::write(&path, format!("{text}\n"))
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
            let reports = run_bundled_suite()?;
            let ok = reports.iter().all(|r| r.ok);
            match report {
                ReportFormat::Text => {
                    for r in &reports {
                        print!("{}", r.to_text());
                    }
                    println!("suite: {}", if ok { "PASS" } else { "FAIL" });
                }
                ReportFormat::Json => {
                    let bodies: Vec<serde_json::Value> = reports
                        .iter()
                        .map(|r| serde_json::from_str(&r.to_json()).expect("valid json"))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&bodies)?);
                }
            }
            Ok(ok)
        }
        Command::Gen {
            n,
            k,
            seed,
            kind,
            out,
        } => {
            let kind = GenKind::parse(&kind)
                .with_context(|| format!("unknown generator kind {kind:?}"))?;
            let inst = gen_random_instance(n, k, seed, kind);
            let spec = supdiff_harness::gen::instance_to_spec(&inst);
            let text = serde_json::to_string_pretty(&spec)?;
            match out {
                Some(p) => fs::write(&p, format!("{text}\n"))
                    .with_context(|| format!("writing {}", p.display()))?,
                None => println!("{text}"),
            }
            Ok(true)
        }
        Command::Oracle {
            instance,
            bundled,
            directions,
            seed,
        } => {
            let inst = load_instance(&instance, &bundled)?;
            let lhs = supdiff_core::formulas::lhs_subdifferential(&inst.family, &inst.x)?;
            let dirs = gen_directions(inst.family.dim(), directions, seed);
            let mut ok = true;
            for d in &dirs {
                let via_set = lhs.support(d);
                let via_oracle = oracle_support(&inst.family, &inst.x, d)?;
                let agree = via_set == via_oracle;
                ok &= agree;
                let d_text = d
                    .iter()
                    .map(Rat::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                println!(
                    "d=({d_text}) subdiff={} oracle={} {}",
                    via_set,
                    via_oracle,
                    if agree { "ok" } else { "DISAGREE" }
                );
            }
            println!("oracle: {}", if ok { "PASS" } else { "FAIL" });
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
