//! Command-line interface: `solve`, `gen` and `campaign`.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | campaign had failing instances |
//! | 2 | usage error (bad flags or generator parameters) |
//! | 3 | I/O error |
//! | 4 | instance file is not valid JSON |
//! | 10–19 | instance validation, one code per kind (see [`validation_exit_code`]) |
//! | 20 | strand cap exceeded |
//! | 21 | non-terminating annealing |
//! | 22 | no solution within the search bound |
//! | 23 | oracle size guard |
//! | 24 | internal pipeline error |

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::campaign::{run_campaign, CampaignConfig};
use crate::gen::{generate, GenError, GenParams};
use crate::machine::{Lab, TubeError, DEFAULT_MAX_STRANDS};
use crate::model::{validate_instance, InstanceDescription, ValidationError, ValidationErrors};
use crate::oracle::OracleError;
use crate::pipeline::{
    run_pipeline, Extraction, Phase2Mode, PipelineError, PipelineKind, PipelineOptions,
};
use crate::trace::JsonlSink;

pub const MAX_STRANDS_ENV: &str = "KSUPPLIER_MAX_STRANDS";

#[derive(Debug, Parser)]
#[command(
    name = "ksupplier-dna",
    version,
    about = "Test-tube simulation of a DNA k-supplier solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and print the report as JSON.
    Solve(SolveArgs),
    /// Generate random instances.
    Gen(GenArgs),
    /// Generate, solve and verify many random instances.
    Campaign(CampaignArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance JSON file.
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = PipelineKind::Both)]
    pub pipeline: PipelineKind,
    #[arg(long, value_enum, default_value_t = Phase2Mode::Corrected)]
    pub phase2: Phase2Mode,
    #[arg(long, value_enum, default_value_t = Extraction::Both)]
    pub extract: Extraction,
    /// Write one JSON line per bio-step to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Largest tube the simulator will hold.
    #[arg(long, env = MAX_STRANDS_ENV, default_value_t = DEFAULT_MAX_STRANDS)]
    pub max_strands: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    /// Probability of each edge beyond the spanning tree.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 9)]
    pub max_weight: u32,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub clients: Option<usize>,
    #[arg(long)]
    pub facilities: Option<usize>,
    /// Write `instance-NNNN.json` files here instead of JSON lines to stdout.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 9)]
    pub max_weight: u32,
    #[arg(long, env = MAX_STRANDS_ENV, default_value_t = DEFAULT_MAX_STRANDS)]
    pub max_strands: usize,
    /// Also write the full summary as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{failed} of {total} instances failed verification")]
    VerificationFailed { failed: usize, total: usize },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("invalid instance: {0}")]
    Validation(ValidationErrors),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn validation_exit_code(e: &ValidationError) -> i32 {
    match e {
        ValidationError::BadVertexCount(_) => 10,
        ValidationError::VertexOutOfRange { .. } => 11,
        ValidationError::SelfLoop(..) => 12,
        ValidationError::NonIntegerWeight { .. } => 13,
        ValidationError::DuplicateEdge(..) => 14,
        ValidationError::Disconnected(_) => 15,
        ValidationError::EmptySet(_) => 16,
        ValidationError::RepeatedVertex { .. } => 17,
        ValidationError::OverlappingCF(_) => 18,
        ValidationError::BadK { .. } => 19,
    }
}

impl CliError {
    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse { .. } => 4,
            CliError::Validation(v) => validation_exit_code(v.first()),
            CliError::Pipeline(PipelineError::Tube(TubeError::StrandExplosion { .. })) => 20,
            CliError::Pipeline(PipelineError::Tube(TubeError::NonTerminating)) => 21,
            CliError::Pipeline(PipelineError::NoSolution { .. }) => 22,
            CliError::Oracle(OracleError::SizeGuard(_)) => 23,
            CliError::Pipeline(_) => 24,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::VerificationFailed { .. } => "VerificationFailed",
            CliError::Usage(_) => "Usage",
            CliError::Io { .. } => "Io",
            CliError::Parse { .. } => "Parse",
            CliError::Validation(v) => v.first().kind(),
            CliError::Pipeline(PipelineError::Tube(TubeError::StrandExplosion { .. })) => {
                "StrandExplosion"
            }
            CliError::Pipeline(PipelineError::Tube(TubeError::NonTerminating)) => "NonTerminating",
            CliError::Pipeline(PipelineError::NoSolution { .. }) => "NoSolution",
            CliError::Oracle(OracleError::SizeGuard(_)) => "SizeGuard",
            CliError::Pipeline(_) => "Internal",
        }
    }

    /// One-line JSON for standard error.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            error: &'a str,
            exit_code: i32,
            message: String,
        }
        serde_json::to_string(&Out {
            error: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
        })
        .expect("plain struct serializes")
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => solve_command(&args, out),
        Command::Gen(args) => gen_command(&args, out),
        Command::Campaign(args) => campaign_command(&args, out),
    }
}

fn stdout_error(e: io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

pub fn load_instance(path: &Path) -> Result<crate::model::Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let raw = InstanceDescription::from_json(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    validate_instance(&raw).map_err(CliError::Validation)
}

pub fn solve_command(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.max_strands == 0 {
        return Err(CliError::Usage("--max-strands must be positive".into()));
    }
    let inst = load_instance(&args.instance)?;
    let options = PipelineOptions {
        pipeline: args.pipeline,
        phase2: args.phase2,
        extract: args.extract,
    };
    let mut lab = Lab::new().with_max_strands(args.max_strands);
    if let Some(path) = &args.trace {
        let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        lab = lab.with_sink(Box::new(JsonlSink::new(BufWriter::new(file))));
    }
    let result = run_pipeline(&inst, &options, &mut lab);
    let flushed = lab.finish();
    let report = result?;
    if let Some(path) = &args.trace {
        flushed.map_err(|e| CliError::io(path, e))?;
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{text}").map_err(stdout_error)
}

pub fn gen_command(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = GenParams {
        n: args.n,
        density: args.density,
        max_weight: args.max_weight,
        clients: args.clients,
        facilities: args.facilities,
    };
    let instances: Vec<_> = (0..args.count as u64)
        .map(|i| generate(&params, args.seed.wrapping_add(i)))
        .collect::<Result<_, _>>()?;
    match &args.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            for (i, inst) in instances.iter().enumerate() {
                let path = dir.join(format!("instance-{i:04}.json"));
                fs::write(&path, inst.to_json()).map_err(|e| CliError::io(&path, e))?;
                writeln!(out, "{}", path.display()).map_err(stdout_error)?;
            }
        }
        None => {
            for inst in &instances {
                out.write_all(inst.to_json().as_bytes())
                    .map_err(stdout_error)?;
            }
        }
    }
    Ok(())
}

pub fn campaign_command(args: &CampaignArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n_min < 2 || args.n_min > args.n_max {
        return Err(CliError::Usage(format!(
            "need 2 <= --n-min <= --n-max, got {}..={}",
            args.n_min, args.n_max
        )));
    }
    let config = CampaignConfig {
        count: args.count,
        n_range: args.n_min..=args.n_max,
        seed: args.seed,
        density: args.density,
        max_weight: args.max_weight,
        max_strands: args.max_strands,
    };
    let summary = run_campaign(&config)?;
    out.write_all(summary.table().as_bytes())
        .map_err(stdout_error)?;
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))?;
    }
    if summary.all_pass() {
        Ok(())
    } else {
        Err(CliError::VerificationFailed {
            failed: summary.failed,
            total: summary.rows.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_codes_are_distinct() {
        let all = [
            ValidationError::BadVertexCount(0),
            ValidationError::VertexOutOfRange {
                role: "edge",
                vertex: 9,
                n: 2,
            },
            ValidationError::SelfLoop(1, 1),
            ValidationError::NonIntegerWeight {
                u: 1,
                v: 2,
                weight: 0.5,
            },
            ValidationError::DuplicateEdge(1, 2),
            ValidationError::Disconnected(3),
            ValidationError::EmptySet("client"),
            ValidationError::RepeatedVertex {
                role: "client",
                vertex: 1,
            },
            ValidationError::OverlappingCF(1),
            ValidationError::BadK {
                k: 3,
                facilities: 1,
            },
        ];
        let codes: std::collections::BTreeSet<i32> = all.iter().map(validation_exit_code).collect();
        assert_eq!(codes, (10..=19).collect());
    }

    #[test]
    fn error_json_shape() {
        let e = CliError::Pipeline(PipelineError::NoSolution { bound: 4 });
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["error"], "NoSolution");
        assert_eq!(v["exit_code"], 22);
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "ksupplier-dna",
            "solve",
            "--instance",
            "x.json",
            "--pipeline",
            "paper",
            "--phase2",
            "paper_literal",
            "--extract",
            "xsearch",
            "--max-strands",
            "10",
        ])
        .unwrap();
        let Command::Solve(a) = cli.command else {
            panic!("expected solve")
        };
        assert_eq!(a.pipeline, PipelineKind::Paper);
        assert_eq!(a.phase2, Phase2Mode::PaperLiteral);
        assert_eq!(a.extract, Extraction::Xsearch);
        assert_eq!(a.max_strands, 10);
        assert!(Cli::try_parse_from([
            "ksupplier-dna",
            "solve",
            "--instance",
            "x",
            "--pipeline",
            "nope"
        ])
        .is_err());
    }
}
