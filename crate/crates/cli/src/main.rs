//! Command-line front end for the `planematch` library.
//!
//! Exit codes: 0 on success, 1 on usage, input or size errors, 2 when a
//! verification finds an inconsistency.

use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use planematch::io::parse_matching;
use planematch::matching::for_each_matching;
use planematch::report::to_json;
use planematch::*;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "planematch", version, about = "Plane perfect matchings of planar point sets")]
struct Cli {
    /// Largest set size for exhaustive enumeration and counting.
    #[arg(long, global = true, value_name = "N")]
    max_enum: Option<usize>,

    /// Check every triple for collinearity when reading point files.
    #[arg(long, global = true)]
    strict_gp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a point set and write it to a file.
    Gen {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = GeneratorSpec::DEFAULT_RADIUS)]
        radius: i64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Count plane perfect matchings, with the Catalan number and the recursive lower bound.
    Count {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        format: Option<ReportFormat>,
    },
    /// List plane perfect matchings, one per line.
    Enumerate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Construct a matching with the piercing property.
    Witness {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        format: Option<ReportFormat>,
    },
    /// Print convex, exceptional_six or generic.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Check the main theorem on one file or on a batch of generated sets.
    Verify {
        #[arg(short, long, conflicts_with = "trials", required_unless_present = "trials")]
        input: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma separated generator kinds.
        #[arg(long, value_delimiter = ',', default_value = "random")]
        kinds: Vec<GeneratorKind>,
        #[arg(long, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Draw a point set, optionally with a matching, as SVG.
    Svg {
        #[arg(short, long)]
        input: PathBuf,
        /// File holding a matching such as `0-3 1-2 4-5`.
        #[arg(short, long)]
        matching: Option<PathBuf>,
        /// Draw the piercing line of the matching; without `-m`, of the constructed witness.
        #[arg(long)]
        highlight: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Serialize)]
struct CountReport {
    n: usize,
    k: usize,
    pm: String,
    catalan_k: String,
    gnt: String,
}

/// Witness output without the construction trace.
#[derive(Serialize)]
struct WitnessBrief<'a> {
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    matching: Option<&'a Matching>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<NoWitness>,
}

enum Status {
    Ok,
    Inconsistent,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Inconsistent) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::InternalInconsistency(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let limits = cli.max_enum.map(Limits::uniform).unwrap_or_default();
    let check = if cli.strict_gp { GpCheck::Strict } else { GpCheck::Auto };
    let load = |path: &Path| read_point_set(path, check).with_context(|| format!("reading {}", path.display()));
    let mut out = std::io::stdout().lock();

    match cli.command {
        Command::Gen { kind, n, seed, radius, output } => {
            let spec = GeneratorSpec { radius, ..GeneratorSpec::new(kind, n, seed) };
            let set = generate(&spec)?;
            write_point_set(&output, &set).with_context(|| format!("writing {}", output.display()))?;
        }
        Command::Count { input, format } => {
            let set = load(&input)?;
            let k = set.half()?;
            let pm = count_matchings(&set, &limits)?;
            let (c, g) = (catalan(k), gnt_lower_bound(&set)?);
            match format {
                Some(ReportFormat::Json) => {
                    let body = CountReport {
                        n: set.len(),
                        k,
                        pm: pm.to_string(),
                        catalan_k: c.to_string(),
                        gnt: g.to_string(),
                    };
                    out.write_all(&to_json(&body))?;
                }
                Some(ReportFormat::Csv) => writeln!(out, "n,k,pm,catalan_k,gnt\n{},{k},{pm},{c},{g}", set.len())?,
                None => writeln!(out, "pm {pm}\ncatalan {c}\ngnt {g}")?,
            }
        }
        Command::Enumerate { input, limit } => {
            let set = load(&input)?;
            set.half()?;
            let limit = limit.unwrap_or(usize::MAX);
            let mut written = 0;
            let mut failure = None;
            for_each_matching(&set, &limits, |m| {
                if written == limit {
                    return ControlFlow::Break(());
                }
                if let Err(e) = writeln!(out, "{m}") {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
                written += 1;
                ControlFlow::Continue(())
            })?;
            if let Some(e) = failure {
                return Err(e.into());
            }
        }
        Command::Witness { input, trace, format } => {
            let set = load(&input)?;
            let result = build_witness(&set, &limits)?;
            match format {
                Some(ReportFormat::Json) if trace => out.write_all(&to_json(&result))?,
                Some(ReportFormat::Json) => {
                    let body = match &result {
                        WitnessResult::Witness { matching, .. } => {
                            WitnessBrief { outcome: "witness", matching: Some(matching), reason: None }
                        }
                        WitnessResult::NotExists { reason } => {
                            WitnessBrief { outcome: "not_exists", matching: None, reason: Some(*reason) }
                        }
                    };
                    out.write_all(&to_json(&body))?;
                }
                Some(ReportFormat::Csv) => anyhow::bail!("witness output has no csv form"),
                None => match &result {
                    WitnessResult::Witness { matching, trace: t } => {
                        writeln!(out, "witness {matching}")?;
                        if trace {
                            writeln!(out, "trace {}", serde_json::to_string(t)?)?;
                        }
                    }
                    WitnessResult::NotExists { reason } => {
                        writeln!(out, "none {}", serde_json::to_value(reason)?.as_str().unwrap_or_default())?;
                    }
                },
            }
        }
        Command::Classify { input } => {
            let set = load(&input)?;
            writeln!(out, "{}", classify(&set)?.as_str())?;
        }
        Command::Verify { input: Some(input), format, .. } => {
            let set = load(&input)?;
            let report = verify_main_theorem(&set, &limits)?;
            out.write_all(&write_report(Report::Theorem(&report), format))?;
            if !report.consistent {
                return Ok(Status::Inconsistent);
            }
        }
        Command::Verify { input: None, trials, n_min, n_max, seed, kinds, format } => {
            let config = ExperimentConfig::new(trials.unwrap_or(0), n_min, n_max, seed, kinds);
            let summary = run_experiment(&config, &limits)?;
            out.write_all(&write_report(Report::Summary(&summary), format))?;
            if !summary.is_clean() {
                return Ok(Status::Inconsistent);
            }
        }
        Command::Svg { input, matching, highlight, output } => {
            let set = load(&input)?;
            let (m, pair) = match matching {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let m = parse_matching(&text, &set)?;
                    let pair = if highlight { find_piercing_pair(&m, &set)? } else { None };
                    (Some(m), pair)
                }
                None if highlight => match build_witness(&set, &limits)? {
                    WitnessResult::Witness { matching, trace } => (Some(matching), Some(trace.piercing_pair)),
                    WitnessResult::NotExists { .. } => (None, None),
                },
                None => (None, None),
            };
            if highlight && pair.is_none() {
                log::warn!("no piercing pair to highlight");
            }
            std::fs::write(&output, render_svg(&set, m.as_ref(), pair.as_ref()))
                .with_context(|| format!("writing {}", output.display()))?;
        }
    }
    Ok(Status::Ok)
}
