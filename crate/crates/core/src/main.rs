use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use cubelink::cube::{build_delta, build_x, export_complex};
use cubelink::gamma::{build_gamma, OffsetScheme};
use cubelink::sweep::{sweep, SchemeMode};
use cubelink::verify::{run_verification, Target, VerificationConfig, DEFAULT_SAMPLE_HOMOLOGY};
use cubelink::Result;

#[derive(Parser)]
#[command(
    name = "cubelink",
    version,
    about = "Build and verify the Γ, X and Δ complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SchemeArgs {
    /// Offsets for the same-sign edges, as `a,b`
    #[arg(long, value_parser = parse_pair)]
    e1: Option<[u32; 2]>,
    /// Offsets for the A+ to B- edges
    #[arg(long, value_parser = parse_pair)]
    e2: Option<[u32; 2]>,
    /// Offsets for the A- to B+ edges
    #[arg(long, value_parser = parse_pair)]
    e3: Option<[u32; 2]>,
}

impl SchemeArgs {
    fn scheme(&self) -> OffsetScheme {
        let d = OffsetScheme::default();
        OffsetScheme {
            e1: self.e1.unwrap_or(d.e1),
            e2: self.e2.unwrap_or(d.e2),
            e3: self.e3.unwrap_or(d.e3),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Gamma,
    X,
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportTarget {
    X,
    Delta,
}

#[derive(Subcommand)]
enum Command {
    /// Print the edge list of Γ
    Gamma {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run all checks for a target and write a JSON report
    Verify {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_HOMOLOGY)]
        sample_homology: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the cell list of X or Δ
    Export {
        #[arg(long, value_enum)]
        target: ExportTarget,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate the Γ conditions over a range of moduli
    Sweep {
        #[arg(long)]
        p_min: u32,
        #[arg(long)]
        p_max: u32,
        #[arg(long)]
        all_schemes: bool,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<[u32; 2], String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok([num(a)?, num(b)?])
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gamma { p, scheme, out } => {
            let g = build_gamma(p, scheme.scheme())?;
            emit(&out, &g.to_edge_list())?;
            Ok(true)
        }
        Command::Verify {
            target,
            p,
            scheme,
            parallel,
            sample_homology,
            seed,
            out,
        } => {
            let config = VerificationConfig {
                target: match target {
                    TargetArg::Gamma => Target::Gamma,
                    TargetArg::X => Target::X,
                    TargetArg::Delta => Target::Delta,
                },
                p,
                scheme: scheme.scheme(),
                parallelism: parallel,
                sample_homology,
                seed,
            };
            let report = run_verification(&config)?;
            for (step, t) in &report.timings {
                eprintln!("{step:<28} {:>10.3}s", t.as_secs_f64());
            }
            for (id, c) in &report.checks {
                let status = if c.passed() { "pass" } else { "FAIL" };
                match &c.witness {
                    Some(w) => eprintln!("{status} {id}: {w}"),
                    None => eprintln!("{status} {id}"),
                }
            }
            emit(&out, &report.to_json())?;
            Ok(report.all_pass())
        }
        Command::Export {
            target,
            p,
            scheme,
            out,
        } => {
            let g = build_gamma(p, scheme.scheme())?;
            let start = Instant::now();
            let cc = match target {
                ExportTarget::X => build_x(&g),
                ExportTarget::Delta => build_delta(&g),
            };
            eprintln!(
                "built {:?} in {:.3}s",
                cc.census(),
                start.elapsed().as_secs_f64()
            );
            export_complex(&cc, &out)?;
            Ok(true)
        }
        Command::Sweep {
            p_min,
            p_max,
            all_schemes,
            parallel,
            out,
        } => {
            let mode = if all_schemes {
                SchemeMode::AllSchemes
            } else {
                SchemeMode::DefaultOnly
            };
            let table = sweep(p_min, p_max, mode, parallel)?;
            emit(&out, &table.to_text())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
