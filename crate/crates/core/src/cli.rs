//! The `segcover` command line.
//!
//! Every command prints one compact JSON document on standard output. Exit
//! status 0 means success, 1 an input error (diagnostic on standard error),
//! 2 that no cover of size at most `k` exists; the JSON then names `k` and
//! the stage that ruled it out.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::fpt::{self, CoverError, CoverOutcome, FailedStage, KernelOutcome, SegmentSet, DEFAULT_GUARD};
use crate::generate;
use crate::geometry::{build_arrangement, gridfill_oracle, Arrangement, GeometryError, Mode};
use crate::io::{self, IoError};
use crate::reduction::{self, ReductionError};
use crate::subdivision::{self, TreeError};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_COVER: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "segcover", version, about = "Cover the cells of an axis-aligned segment arrangement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Only print the JSON document; skip the summary on standard error.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write an SVG rendering to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Seed for the generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest segment count for exhaustive search.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    pub guard: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the cells of an instance with their defining segments.
    Cells { instance: PathBuf },
    /// Minimum cover of all cells or of the rectangular cells.
    Cover {
        instance: PathBuf,
        #[arg(long, default_value = "all")]
        mode: Mode,
        /// Only look for covers of at most this size.
        #[arg(short)]
        k: Option<usize>,
    },
    /// Kernelize the rectangular-cell instance for budget k.
    Kernel {
        instance: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Minimum cover of a recursively split rectangle, outer face included.
    Subdiv { tree: PathBuf },
    /// Compile a planar 3SAT formula into a covering instance.
    Compile3sat {
        cnf: PathBuf,
        #[arg(long, default_value = "all")]
        variant: Mode,
    },
    /// Cross-check the arrangement against the grid flood fill and solve by brute force.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value = "all")]
        mode: Mode,
    },
    /// Print a random instance or split tree.
    Gen {
        #[arg(value_enum)]
        what: GenKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Instance,
    Tree,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: IoError },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("grid oracle and arrangement disagree")]
    OracleMismatch,
}

impl CliError {
    /// Stable identifier printed in `--json` error documents.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Read { .. } => "read",
            CliError::Write { .. } => "write",
            CliError::Parse { .. } => "parse",
            CliError::Geometry(_) => "geometry",
            CliError::Cover(CoverError::BudgetRequired { .. }) => "budget-required",
            CliError::Cover(_) => "cover",
            CliError::Tree(_) => "tree",
            CliError::Reduction(ReductionError::EmbeddingInfeasible(..)) => "embedding",
            CliError::Reduction(_) => "cnf",
            CliError::OracleMismatch => "oracle",
        }
    }
}

struct Report {
    doc: Value,
    summary: String,
    code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })
}

fn parsed<T>(path: &Path, f: impl Fn(&str) -> Result<T, IoError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn arrangement(path: &Path) -> Result<Arrangement, CliError> {
    Ok(build_arrangement(&parsed(path, io::parse_instance)?)?)
}

fn render(cli: &Cli, arr: &Arrangement, chosen: &SegmentSet) -> Result<(), CliError> {
    match &cli.svg {
        Some(path) => svg::write_svg(arr, chosen, path).map_err(|source| CliError::Write { path: path.clone(), source }),
        None => Ok(()),
    }
}

fn ids(set: &SegmentSet) -> String {
    set.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let ok = |doc: Value, summary: String| Report { doc, summary, code: EXIT_OK };
    match &cli.command {
        Command::Cells { instance } => {
            let arr = arrangement(instance)?;
            render(cli, &arr, &SegmentSet::new())?;
            let rect = arr.rectangular_cells().count();
            Ok(ok(io::cells_json(&arr), format!("{} cells, {rect} rectangular", arr.cell_count())))
        }
        Command::Cover { instance, mode, k } => {
            let arr = arrangement(instance)?;
            match fpt::min_cover_outcome(&arr, *mode, *k, cli.guard)? {
                CoverOutcome::Found(cover) => {
                    render(cli, &arr, &cover)?;
                    let summary = format!("minimum {mode} cover of size {}: {}", cover.len(), ids(&cover));
                    Ok(ok(io::cover_json(*mode, &cover), summary))
                }
                CoverOutcome::NoCover { stage } => {
                    render(cli, &arr, &SegmentSet::new())?;
                    let k = k.expect("only bounded searches fail");
                    Ok(Report {
                        doc: io::no_cover_json(*mode, k, stage),
                        summary: format!("no {mode} cover of size at most {k} ({} stage)", stage.as_str()),
                        code: EXIT_NO_COVER,
                    })
                }
            }
        }
        Command::Kernel { instance, k } => {
            let arr = arrangement(instance)?;
            render(cli, &arr, &SegmentSet::new())?;
            let kr = fpt::kernelize(&fpt::extract_rect_instance(&arr, *k));
            let mut doc = io::kernel_json(&kr);
            let summary = format!("{} sets after {} collapses", kr.instance.family.len(), kr.trace.len());
            Ok(match kr.outcome {
                KernelOutcome::Kernel => ok(doc, format!("kernel: {summary}")),
                KernelOutcome::Infeasible => {
                    doc["stage"] = json!(FailedStage::Kernel.as_str());
                    let bound = fpt::kernel_bound(*k);
                    Report {
                        doc,
                        summary: format!("infeasible: {summary}, more than {bound} for k = {k}"),
                        code: EXIT_NO_COVER,
                    }
                }
            })
        }
        Command::Subdiv { tree } => {
            let t = parsed(tree, io::parse_tree)?;
            let (cover, table) = subdivision::dp_solve(&t)?;
            if cli.svg.is_some() {
                let arr = build_arrangement(&subdivision::tree_to_segments(&t)?)?;
                render(cli, &arr, &cover)?;
            }
            let mut doc = io::cover_json(Mode::All, &cover);
            doc["evaluations"] = json!(table.evaluations);
            Ok(ok(doc, format!("subdivision cover of size {}: {}", cover.len(), ids(&cover))))
        }
        Command::Compile3sat { cnf, variant } => {
            let phi = parsed(cnf, io::parse_cnf)?;
            let compiled = reduction::compile(&phi, *variant)?;
            if cli.svg.is_some() {
                render(cli, &build_arrangement(&compiled.segments)?, &SegmentSet::new())?;
            }
            let summary =
                format!("{} segments, budget {} ({variant} variant)", compiled.segments.len(), compiled.budget);
            Ok(ok(io::compiled_json(&compiled), summary))
        }
        Command::Oracle { instance, mode } => {
            let segs = parsed(instance, io::parse_instance)?;
            let grid = gridfill_oracle(&segs)?;
            if grid != build_arrangement(&segs)? {
                return Err(CliError::OracleMismatch);
            }
            let cover = fpt::brute_force_cover(&grid, *mode, cli.guard)?;
            render(cli, &grid, &cover)?;
            let mut doc = io::cover_json(*mode, &cover);
            doc["cells"] = json!(grid.cell_count());
            let summary = format!("oracle agrees on {} cells; brute-force {mode} cover of size {}", grid.cell_count(), cover.len());
            Ok(ok(doc, summary))
        }
        Command::Gen { what } => {
            let mut rng = generate::rng(cli.seed);
            Ok(match what {
                GenKind::Instance => {
                    let segs = generate::random_instance(&mut rng, 14, 16);
                    ok(io::instance_json(&segs), format!("{} segments (seed {})", segs.len(), cli.seed))
                }
                GenKind::Tree => {
                    let t = generate::random_tree(&mut rng, 12, 32);
                    ok(io::tree_json(&t), format!("{} splits (seed {})", t.root.split_count(), cli.seed))
                }
            })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(io::to_line(&report.doc).as_bytes());
            if !cli.json {
                let _ = writeln!(err, "{}", report.summary);
            }
            report.code
        }
        Err(e) => {
            if cli.json {
                let doc = json!({ "format": io::FORMAT, "error": { "code": e.code(), "message": e.to_string() } });
                let _ = out.write_all(io::to_line(&doc).as_bytes());
            }
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
