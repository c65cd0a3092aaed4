mod cache;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use rauzy_core::classes::{
    enumerate_class, ClassError, DiagramMode, EnumerateOptions, ExportFormat, RauzyDiagram,
    DEFAULT_BUDGET,
};
use rauzy_core::invariants::{profile, InvariantsError};
use rauzy_core::perm::{LabeledPermutation, PermError, ReducedPermutation};
use rauzy_core::theorem::{class_representatives, verify_in_class, TheoremError};
use rauzy_core::{enumerate_reduced, Execution};

use cache::Cache;

#[derive(Parser)]
#[command(
    name = "rauzy",
    version,
    about = "Rauzy classes of interval exchange permutations"
)]
struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run every stage on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[arg(
        long,
        global = true,
        env = "RAUZY_CACHE_DIR",
        default_value = ".rauzy-cache"
    )]
    cache_dir: PathBuf,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the size of a Rauzy class with its stratum.
    Orbit {
        /// "a b c / c b a" rows, or a single bottom row over 1..d.
        perm: String,
        #[arg(long, default_value = "reduced")]
        mode: DiagramMode,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Compare the predicted class-size ratio with enumeration.
    Verify {
        perm: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Write the Rauzy diagram as DOT or JSON.
    Export {
        perm: String,
        #[arg(long, default_value = "reduced")]
        mode: DiagramMode,
        #[arg(long, default_value = "json")]
        format: ExportFormat,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Verify one representative of every Rauzy class up to a size.
    Sweep {
        #[arg(long)]
        max_d: usize,
        /// JSON-lines file receiving one report per class.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InputError(String);

struct App {
    cache: Cache,
    execution: Execution,
}

impl App {
    fn options(&self, budget: usize) -> EnumerateOptions {
        EnumerateOptions {
            budget,
            execution: self.execution,
        }
    }

    fn diagram(
        &self,
        seed: &LabeledPermutation,
        mode: DiagramMode,
        budget: usize,
    ) -> Result<RauzyDiagram> {
        let key = match mode {
            DiagramMode::Reduced => format!("diagram|reduced|{}", seed.reduce().canonical_key()),
            DiagramMode::Labeled => format!("diagram|labeled|{}", seed.canonical_key()),
        };
        let json = self.cache.get_or_compute(&key, || {
            Ok(enumerate_class(seed, mode, &self.options(budget))?.to_json())
        })?;
        let diagram = RauzyDiagram::from_json(&json)?;
        over_budget(diagram.len(), budget)?;
        Ok(diagram)
    }
}

/// A cached result found larger than the budget fails as a fresh run would.
fn over_budget(discovered: usize, budget: usize) -> Result<()> {
    if discovered > budget {
        return Err(ClassError::BudgetExceeded { budget, discovered }.into());
    }
    Ok(())
}

fn parse_labeled(text: &str) -> Result<LabeledPermutation> {
    if text.contains('/') {
        Ok(LabeledPermutation::parse(text)?)
    } else {
        Ok(ReducedPermutation::parse(text)?.embed())
    }
}

fn orbit(ctx: &App, perm: &str, mode: DiagramMode, budget: usize) -> Result<String> {
    let seed = parse_labeled(perm)?;
    let diagram = ctx.diagram(&seed, mode, budget)?;
    let prof = profile(&seed.reduce())?;
    Ok(format!(
        "{}\nd {}\ngenus {}\nprofile {}\n",
        diagram.len(),
        diagram.d(),
        prof.genus,
        prof
    ))
}

fn verify_report(ctx: &App, seed: &ReducedPermutation, budget: usize) -> Result<String> {
    let key = format!("report|{}", seed.canonical_key());
    let json = ctx.cache.get_or_compute(&key, || {
        let opts = ctx.options(budget);
        let reduced = enumerate_reduced(seed, &opts)?;
        Ok(verify_in_class(seed, &reduced, &opts)?.to_json())
    })?;
    let value: serde_json::Value = serde_json::from_str(&json)?;
    for field in ["reduced_size", "labeled_size"] {
        over_budget(value[field].as_u64().unwrap_or(0) as usize, budget)?;
    }
    Ok(json)
}

fn verify(ctx: &App, perm: &str, budget: usize) -> Result<String> {
    let seed = parse_labeled(perm)?.reduce();
    Ok(verify_report(ctx, &seed, budget)? + "\n")
}

fn export(
    ctx: &App,
    perm: &str,
    mode: DiagramMode,
    format: ExportFormat,
    out: Option<&PathBuf>,
    budget: usize,
) -> Result<String> {
    let seed = parse_labeled(perm)?;
    let diagram = ctx.diagram(&seed, mode, budget)?;
    match out {
        Some(path) => {
            let mut file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            diagram.export(format, &mut file)?;
            Ok(String::new())
        }
        None => {
            let mut buf = Vec::new();
            diagram.export(format, &mut buf)?;
            Ok(String::from_utf8(buf)?)
        }
    }
}

#[derive(Serialize)]
struct Listed<'a> {
    seed: &'a str,
    profile: &'a str,
}

fn sweep(ctx: &App, max_d: usize, report: Option<&PathBuf>, budget: usize) -> Result<String> {
    if !(2..=rauzy_core::perm::MAX_INTERVALS).contains(&max_d) {
        return Err(InputError(format!(
            "--max-d must be between 2 and {}, got {max_d}",
            rauzy_core::perm::MAX_INTERVALS
        ))
        .into());
    }
    let classes = class_representatives(max_d, &ctx.options(budget))?;
    let seeds: Vec<&ReducedPermutation> = classes.iter().map(|(p, _)| p).collect();
    let reports = ctx
        .execution
        .map(&seeds, |p| verify_report(ctx, p, budget))
        .into_iter()
        .collect::<Result<Vec<String>>>()?;

    let mut counts = [0usize; 3];
    let mut unclassified = Vec::new();
    for line in &reports {
        let v: serde_json::Value = serde_json::from_str(line)?;
        match v["verdict"].as_str() {
            Some("match") => counts[0] += 1,
            Some("mismatch") => counts[1] += 1,
            _ => {
                counts[2] += 1;
                unclassified.push(serde_json::to_string(&Listed {
                    seed: v["seed"].as_str().unwrap_or_default(),
                    profile: v["profile_text"].as_str().unwrap_or_default(),
                })?);
            }
        }
    }
    if let Some(path) = report {
        let mut text = reports.join("\n");
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = format!(
        "classes {}\nmatch {}\nmismatch {}\nunclassified {}\n",
        reports.len(),
        counts[0],
        counts[1],
        counts[2]
    );
    for line in unclassified {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<String> {
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| anyhow::anyhow!("configuring {n} threads: {e}"))?;
    }
    #[cfg(not(feature = "parallel"))]
    if cli.threads.is_some() {
        eprintln!("warning: built without parallel support, --threads ignored");
    }
    let ctx = App {
        cache: if cli.no_cache {
            Cache::disabled()
        } else {
            Cache::new(cli.cache_dir.clone())
        },
        execution: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match &cli.command {
        Command::Orbit { perm, mode, budget } => orbit(&ctx, perm, *mode, *budget),
        Command::Verify { perm, budget } => verify(&ctx, perm, *budget),
        Command::Export {
            perm,
            mode,
            format,
            out,
            budget,
        } => export(&ctx, perm, *mode, *format, out.as_ref(), *budget),
        Command::Sweep {
            max_d,
            report,
            budget,
        } => sweep(&ctx, *max_d, report.as_ref(), *budget),
    }
}

fn class_code(e: &ClassError) -> u8 {
    match e {
        ClassError::BudgetExceeded { .. } => 2,
        ClassError::Perm(_)
        | ClassError::Malformed(_)
        | ClassError::Json(_)
        | ClassError::Io(_) => 1,
        ClassError::Induction(_) => 3,
    }
}

fn invariants_code(e: &InvariantsError) -> u8 {
    match e {
        InvariantsError::Perm(_) => 1,
        _ => 3,
    }
}

/// 1 for bad input, 2 for an exhausted budget, 3 for anything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<InputError>() || cause.is::<PermError>() || cause.is::<io::Error>() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<ClassError>() {
            return class_code(e);
        }
        if let Some(e) = cause.downcast_ref::<InvariantsError>() {
            return invariants_code(e);
        }
        if let Some(e) = cause.downcast_ref::<TheoremError>() {
            return match e {
                TheoremError::Class(e) => class_code(e),
                TheoremError::Invariants(e) => invariants_code(e),
                TheoremError::NotAnInteger(_) => 3,
            };
        }
    }
    3
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
