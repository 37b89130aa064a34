//! `biharm`: exact classification and pointwise numerical verification of
//! indexed-biharmonic and conformal-harmonic submanifolds of round spheres.
//!
//! Exit codes: 0 all suites passed, 1 verification failure, 2 usage or
//! precondition error.

mod descriptor;
mod report;
mod run;

use anyhow::{anyhow, bail, Result};
use biharm_core::catalog::sample;
use biharm_core::classify::{
    charm_classify, classify_hypersphere, classify_torus, compact_gate, hypersphere_for_index,
    tori_for_index, ClassificationRecord,
};
use biharm_core::exact::{parse_rational, Surd};
use biharm_core::identities::IdentityCase;
use biharm_core::operators::{CharmMode, ResidualReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "biharm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact classification (no floating point involved).
    Classify {
        #[command(subcommand)]
        what: ClassifyCmd,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical residual verification over a sample plan.
    Verify(VerifyArgs),
    /// Shorthand for `verify identities`.
    Identities(IdentityArgs),
    /// Parameter sweeps producing residual or root-count tables.
    Scan {
        #[command(subcommand)]
        what: ScanCmd,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Hypersphere S^{n−1}(a) ⊂ S^n, by radius or by index.
    Hypersphere {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a2: Option<String>,
        #[arg(long)]
        k: Option<String>,
    },
    /// Generalized Clifford torus S^{n₁}(a)×S^{n₂}(b), by radius or index.
    Torus {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        a2: Option<String>,
        #[arg(long)]
        k: Option<String>,
        /// Evaluate exactly at the optimal bound n₁+n₂−2√(n₁n₂).
        #[arg(long)]
        k_at_bound: bool,
    },
    /// Conformal-harmonic classification in dimension m ∈ {4, 6}.
    Charm {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Compact-case rigidity gate.
    Gate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: String,
        #[arg(long, default_value = "0")]
        inf_h2: String,
        #[arg(long)]
        pseudo_umbilical: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Residual suite to run.
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    common: CommonArgs,
    /// Identity case (identities suite; default: all applicable).
    #[arg(long)]
    case: Option<String>,
    /// Fourth-order mode: reduced (ambient curvature) or full (induced).
    #[arg(long, value_enum, default_value = "reduced")]
    mode: Mode,
}

#[derive(Args)]
struct IdentityArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    case: Option<String>,
}

#[derive(Args)]
struct CommonArgs {
    /// Manifold descriptor, e.g. hypersphere:n=5,a2=6/7.
    #[arg(long)]
    manifold: String,
    /// Index k as an exact rational, or `auto` to ask the classifier.
    #[arg(long, default_value = "auto")]
    k: String,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Chart jet order override (suites enforce their own minima).
    #[arg(long)]
    jet_order: Option<usize>,
    /// Run the numerics in ~32-digit double-double precision.
    #[arg(long)]
    extended_precision: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for the per-point sweep.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Biharmonic,
    Charm4,
    Charm6,
    Identities,
    Instability,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Reduced,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Classify { what, format, out } => {
            let (records, extra) = run_classify(what)?;
            let text = match format {
                Format::Json => {
                    let recs: Vec<Value> = records.iter().map(report::record_json).collect();
                    let mut doc = json!({ "records": recs });
                    if let Some(extra) = extra {
                        doc["charm"] = extra;
                    }
                    serde_json::to_string_pretty(&doc)? + "\n"
                }
                Format::Csv => report::record_csv_rows(&records).join("\n") + "\n",
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Verify(args) => run_verify(args),
        Command::Identities(args) => run_verify(VerifyArgs {
            suite: Suite::Identities,
            common: args.common,
            case: args.case,
            mode: Mode::Reduced,
        }),
        Command::Scan { what, format, out } => run_scan(what, format, out.as_deref()),
    }
}

fn run_classify(cmd: ClassifyCmd) -> Result<(Vec<ClassificationRecord>, Option<Value>)> {
    match cmd {
        ClassifyCmd::Hypersphere { n, a2, k } => {
            let rec = match (a2, k) {
                (Some(a2), None) => {
                    classify_hypersphere(n, &Surd::from_rational(parse_rational(&a2)?))?
                }
                (None, Some(k)) => hypersphere_for_index(n, &parse_rational(&k)?)?,
                _ => bail!("give exactly one of --a2 or --k"),
            };
            Ok((vec![rec], None))
        }
        ClassifyCmd::Torus {
            n1,
            n2,
            a2,
            k,
            k_at_bound,
        } => match (a2, k, k_at_bound) {
            (Some(a2), None, false) => Ok((
                vec![classify_torus(
                    n1,
                    n2,
                    &Surd::from_rational(parse_rational(&a2)?),
                )?],
                None,
            )),
            (None, Some(k), false) => {
                let ks = Surd::from_rational(parse_rational(&k)?);
                let (recs, bound, roots) = tori_for_index(n1, n2, &ks)?;
                let extra = json!({
                    "bound": report::surd_json(&bound),
                    "discriminant": biharm_core::exact::rational_string(&roots.discriminant),
                });
                Ok((recs, Some(extra)))
            }
            (None, None, true) => {
                let bound = biharm_core::classify::torus_bound(n1, n2)?;
                let (recs, bound, _) = tori_for_index(n1, n2, &bound)?;
                Ok((recs, Some(json!({"bound": report::surd_json(&bound)}))))
            }
            _ => bail!("give exactly one of --a2, --k or --k-at-bound"),
        },
        ClassifyCmd::Charm { m, n } => {
            let rep = charm_classify(m, n)?;
            let extra = report::charm_json(&rep);
            let recs = rep.hypersphere.into_iter().collect();
            Ok((recs, Some(extra)))
        }
        ClassifyCmd::Gate {
            m,
            k,
            inf_h2,
            pseudo_umbilical,
        } => {
            let verdict = compact_gate(
                m,
                &parse_rational(&k)?,
                &parse_rational(&inf_h2)?,
                pseudo_umbilical,
            );
            Ok((Vec::new(), Some(json!({ "gate": verdict.to_string() }))))
        }
    }
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let common = &args.common;
    let spec = descriptor::build_manifold(&common.manifold)?;
    if let Some(order) = common.jet_order {
        if !(2..=6).contains(&order) {
            bail!("jet order must lie in 2..=6");
        }
    }
    let plan =
        sample(&spec, common.samples, common.seed).map_err(|e| anyhow!("sampling: {e}"))?;
    let precision = if common.extended_precision {
        run::Precision::Extended
    } else {
        run::Precision::Double
    };
    let mut reports: Vec<ResidualReport> = Vec::new();
    let mut extras: Vec<Value> = Vec::new();

    let push_biharmonic = |reports: &mut Vec<ResidualReport>| -> Result<()> {
        let k = descriptor::resolve_index(&spec, &common.k)?;
        reports.push(run::run_biharmonic(
            &spec,
            &plan,
            &k,
            common.threads,
            precision,
        )?);
        Ok(())
    };

    match args.suite {
        Suite::Biharmonic => push_biharmonic(&mut reports)?,
        Suite::Charm4 => {
            let mode = match args.mode {
                Mode::Reduced => CharmMode::Reduced,
                Mode::Full => CharmMode::Full,
            };
            reports.push(run::run_charm4(&spec, &plan, mode, common.threads)?);
        }
        Suite::Charm6 => {
            reports.push(run::run_charm6(&spec, &plan, common.threads, precision)?);
        }
        Suite::Identities => {
            let case = args
                .case
                .as_deref()
                .map(IdentityCase::parse)
                .transpose()
                .map_err(|e| anyhow!("{e}"))?;
            reports.extend(run::run_identities(&spec, &plan, case)?);
        }
        Suite::Instability => {
            let k = descriptor::resolve_index(&spec, &common.k)?;
            let (rep, integral) = run::run_instability(&spec, &plan, &k, common.threads)?;
            extras.push(json!({"instability_integral": integral}));
            reports.push(rep);
        }
        Suite::All => {
            push_biharmonic(&mut reports)?;
            if spec.m == 4 {
                reports.push(run::run_charm4(
                    &spec,
                    &plan,
                    CharmMode::Reduced,
                    common.threads,
                )?);
            }
            reports.extend(run::run_identities(&spec, &plan, None)?);
            let k = descriptor::resolve_index(&spec, &common.k)?;
            let (rep, integral) = run::run_instability(&spec, &plan, &k, common.threads)?;
            extras.push(json!({"instability_integral": integral}));
            reports.push(rep);
        }
    }

    let all_pass = reports.iter().all(|r| r.pass);
    let text = match common.format {
        Format::Json => {
            let reps: Vec<Value> = reports.iter().map(report::residual_json).collect();
            let doc = json!({
                "reports": reps,
                "extras": extras,
                "pass": all_pass,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let mut rows = vec![report::RESIDUAL_CSV_HEADER.to_string()];
            rows.extend(reports.iter().map(report::residual_csv_row));
            rows.join("\n") + "\n"
        }
    };
    emit(common.out.as_deref(), &text)?;
    Ok(all_pass)
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Exact proper-torus counts over a k grid.
    Tori {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        k_grid: String,
    },
    /// Hypersphere residual sweep over an a² grid.
    Hypersphere {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a2_grid: String,
        #[arg(long, default_value = "auto")]
        k: String,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn run_scan(cmd: ScanCmd, format: Format, out: Option<&std::path::Path>) -> Result<bool> {
    let (rows, pass) = match cmd {
        ScanCmd::Tori { n1, n2, k_grid } => {
            let grid = run::parse_grid(&k_grid)?;
            (run::scan_tori(n1, n2, &grid)?, true)
        }
        ScanCmd::Hypersphere {
            n,
            a2_grid,
            k,
            samples,
            seed,
            threads,
        } => {
            let grid = run::parse_grid(&a2_grid)?;
            run::scan_hypersphere(n, &grid, &k, samples, seed, threads)?
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&json!({ "rows": rows }))? + "\n",
        Format::Csv => {
            let mut lines = Vec::new();
            if let Some(first) = rows.first() {
                let keys: Vec<&str> = first
                    .as_object()
                    .unwrap()
                    .keys()
                    .map(|s| s.as_str())
                    .collect();
                lines.push(keys.join(","));
                for row in &rows {
                    let obj = row.as_object().unwrap();
                    let cells: Vec<String> = keys
                        .iter()
                        .map(|k| match &obj[*k] {
                            Value::String(s) => s.clone(),
                            Value::Array(a) => a
                                .iter()
                                .map(|v| v.as_str().unwrap_or_default().to_string())
                                .collect::<Vec<_>>()
                                .join(";"),
                            Value::Number(n) if n.is_f64() => {
                                report::csv_number(n.as_f64().unwrap())
                            }
                            v => v.to_string(),
                        })
                        .collect();
                    lines.push(cells.join(","));
                }
            }
            lines.join("\n") + "\n"
        }
    };
    emit(out, &text)?;
    Ok(pass)
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
