use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kernel_ladder::bench::{
    self, ladder, load_report, merge_reports, render, resolve, variants, ReportFormat, RunConfig,
    Sweep, Task, VariantDescriptor,
};
use kernel_ladder::histogram::{CharRange, IterationPattern};
use kernel_ladder::knn::TopK;
use kernel_ladder::workload::{
    io, GridSpec, KnnSpec, TextSource, TextSpec, Workload, WorkloadSpec,
};
use kernel_ladder::{Error, Workers};

#[derive(Parser)]
#[command(
    name = "ladder-bench",
    version,
    about = "Verify and time the histogram, Game of Life and kNN kernel ladders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded input file.
    Gen {
        #[command(flatten)]
        workload: WorkloadArgs,
        /// Output path. For knn this receives the data points.
        #[arg(long)]
        output: PathBuf,
        /// knn only: where to write the query points [default: <output>.queries]
        #[arg(long)]
        queries: Option<PathBuf>,
    },
    /// List registered variants with their stage labels and flags.
    List {
        #[arg(long)]
        task: Option<String>,
    },
    /// Run variants and their oracle on one input and compare exactly.
    Verify {
        #[command(flatten)]
        workload: WorkloadArgs,
        #[command(flatten)]
        select: SelectArgs,
        /// Read the input from a file written by `gen` instead of generating it.
        #[arg(long)]
        input: Option<PathBuf>,
        /// knn only: query file to pair with --input [default: <input>.queries]
        #[arg(long)]
        queries: Option<PathBuf>,
    },
    /// Verify, then time variants and emit a report.
    Run {
        #[command(flatten)]
        workload: WorkloadArgs,
        #[command(flatten)]
        select: SelectArgs,
        #[arg(long, default_value_t = 10)]
        repeat: usize,
        #[arg(long, default_value_t = 3)]
        warmup: usize,
        /// Time without checking results against the oracle.
        #[arg(long)]
        skip_verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Merge JSON reports and render them stage-ordered.
    Report {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Accept reports from different tasks.
        #[arg(long)]
        allow_mixed: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => ReportFormat::Table,
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Lorem,
    Hexdump,
    Repeated,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pattern {
    Block,
    Stride,
}

#[derive(Args)]
struct WorkloadArgs {
    #[arg(long)]
    task: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// histogram: text length in bytes
    #[arg(long, default_value_t = 256 << 20, help_heading = "Histogram")]
    bytes: usize,
    #[arg(long, default_value_t = 32, help_heading = "Histogram")]
    range_from: u8,
    #[arg(long, default_value_t = 127, help_heading = "Histogram")]
    range_to: u8,
    #[arg(long, value_enum, default_value_t = Source::Lorem, help_heading = "Histogram")]
    source: Source,
    /// Byte value for --source repeated
    #[arg(long, default_value_t = b'e', help_heading = "Histogram")]
    byte: u8,
    /// Generate this many bytes and repeat them up to --bytes
    #[arg(long, help_heading = "Histogram")]
    repeat_unit: Option<usize>,

    #[arg(long, default_value_t = 4096, help_heading = "Game of Life")]
    width: usize,
    #[arg(long, default_value_t = 4096, help_heading = "Game of Life")]
    height: usize,
    #[arg(long, default_value_t = 0.5, help_heading = "Game of Life")]
    density: f64,
    #[arg(long, default_value_t = 20, help_heading = "Game of Life")]
    iters: usize,

    /// Data points
    #[arg(long, default_value_t = 1 << 20, help_heading = "kNN")]
    n: usize,
    /// Query points
    #[arg(long, default_value_t = 256, help_heading = "kNN")]
    m: usize,
    #[arg(long, default_value_t = 32, help_heading = "kNN")]
    k: usize,
    #[arg(long, default_value_t = 0.0, help_heading = "kNN")]
    lo: f64,
    #[arg(long, default_value_t = 1.0, help_heading = "kNN")]
    hi: f64,
}

#[derive(Args)]
struct SelectArgs {
    /// Variant name, a comma-separated list, or `all`
    #[arg(long, default_value = "all")]
    variant: String,
    /// Worker counts to sweep [default: all logical CPUs]
    #[arg(long, value_delimiter = ',')]
    workers: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "16")]
    items_per_worker: Vec<usize>,
    /// Iteration pattern for `multiitem` and `multicopy`
    #[arg(long, value_enum)]
    pattern: Option<Pattern>,
    /// Buffer capacities to sweep [default: k]
    #[arg(long, value_delimiter = ',')]
    batch_size: Vec<usize>,
}

impl WorkloadArgs {
    fn task(&self) -> Result<Task, Error> {
        self.task.parse()
    }

    fn spec(&self) -> Result<WorkloadSpec, Error> {
        let spec = match self.task()? {
            Task::Histogram => WorkloadSpec::Histogram(TextSpec {
                seed: self.seed,
                bytes: self.bytes,
                source: match self.source {
                    Source::Lorem => TextSource::Lorem,
                    Source::Hexdump => TextSource::Hexdump,
                    Source::Repeated => TextSource::Repeated { byte: self.byte },
                },
                repeat_unit: self.repeat_unit,
                range: self.range()?,
            }),
            Task::Gol => WorkloadSpec::Gol(GridSpec {
                seed: self.seed,
                width: self.width,
                height: self.height,
                density: self.density,
                iterations: self.iters,
            }),
            Task::Knn => WorkloadSpec::Knn(KnnSpec {
                seed: self.seed,
                n: self.n,
                m: self.m,
                k: self.k,
                lo: self.lo,
                hi: self.hi,
            }),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn range(&self) -> Result<CharRange, Error> {
        CharRange::new(self.range_from, self.range_to)
    }
}

impl SelectArgs {
    fn series(
        &self,
        task: Task,
        include_oracle: bool,
    ) -> Result<Vec<&'static VariantDescriptor>, Error> {
        if self.variant == "all" {
            return Ok(if include_oracle {
                variants(Some(task))
            } else {
                ladder(task)
            });
        }
        let pattern = self.pattern.map(|p| match p {
            Pattern::Block => IterationPattern::ContiguousBlock,
            Pattern::Stride => IterationPattern::WorkerStride,
        });
        self.variant
            .split(',')
            .map(|name| resolve(task, name.trim(), pattern))
            .collect()
    }

    fn sweep(&self) -> Result<Sweep, Error> {
        let workers = if self.workers.is_empty() {
            vec![Workers::available()]
        } else {
            self.workers
                .iter()
                .map(|&w| Workers::new(w))
                .collect::<Result<_, _>>()?
        };
        if let Some(&bad) = self.items_per_worker.iter().find(|&&i| i == 0) {
            return Err(Error::parameter(
                "items-per-worker",
                format!("{bad} must be at least 1"),
            ));
        }
        let batch_size = if self.batch_size.is_empty() {
            vec![None]
        } else {
            self.batch_size.iter().map(|&b| Some(b)).collect()
        };
        Ok(Sweep {
            workers,
            items_per_worker: self.items_per_worker.clone(),
            batch_size,
        })
    }
}

fn queries_path(base: &Path, explicit: Option<&PathBuf>) -> PathBuf {
    explicit.cloned().unwrap_or_else(|| {
        let mut p = base.as_os_str().to_owned();
        p.push(".queries");
        PathBuf::from(p)
    })
}

fn gen(workload: &WorkloadArgs, output: &Path, queries: Option<&PathBuf>) -> Result<(), Error> {
    let spec = workload.spec()?;
    let files = spec.generate()?.encode()?;
    fs::write(output, &files[0]).map_err(|e| at(output)(e.into()))?;
    println!("wrote {} ({} bytes)", output.display(), files[0].len());
    if let Some(q) = files.get(1) {
        let path = queries_path(output, queries);
        fs::write(&path, q).map_err(|e| at(&path)(e.into()))?;
        println!("wrote {} ({} bytes)", path.display(), q.len());
    }
    Ok(())
}

/// Names the file in I/O errors.
fn at(path: &Path) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", path.display()),
        )),
        other => other,
    }
}

fn load_workload(
    args: &WorkloadArgs,
    input: &Path,
    queries: Option<&PathBuf>,
) -> Result<Workload, Error> {
    Ok(match args.task()? {
        Task::Histogram => Workload::Text {
            text: io::read_text(input).map_err(at(input))?,
            range: args.range()?,
        },
        Task::Gol => Workload::Grid {
            grid: io::read_grid(input).map_err(at(input))?,
            iterations: args.iters,
        },
        Task::Knn => {
            let data = io::read_points(input).map_err(at(input))?;
            let k = TopK::new(args.k)?;
            if data.len() < k.get() {
                return Err(Error::InsufficientData {
                    needed: k.get(),
                    available: data.len(),
                });
            }
            Workload::Points {
                data,
                queries: {
                    let path = queries_path(input, queries);
                    io::read_points(&path).map_err(at(&path))?
                },
                k,
            }
        }
    })
}

fn list(task: Option<&str>) -> Result<(), Error> {
    let task = task.map(str::parse::<Task>).transpose()?;
    let rows = variants(task);
    let name_w = rows.iter().map(|d| d.name.len()).max().unwrap_or(0);
    let stage_w = rows.iter().map(|d| d.stage.len()).max().unwrap_or(0);
    for d in rows {
        let flags = if d.params.is_empty() {
            "-".to_string()
        } else {
            d.params.join(" ")
        };
        println!(
            "{:<9} {:<stage_w$}  {:<name_w$}  {:<36}  {}",
            d.task, d.stage, d.name, flags, d.summary
        );
    }
    Ok(())
}

/// Prints one line per variant and parameter set; returns whether all passed.
fn verify(
    args: &WorkloadArgs,
    select: &SelectArgs,
    input: Option<&PathBuf>,
    queries: Option<&PathBuf>,
) -> Result<bool, Error> {
    let task = args.task()?;
    let series = select.series(task, true)?;
    let sweep = select.sweep()?;
    let workload = match input {
        Some(path) => load_workload(args, path, queries)?,
        None => args.spec()?.generate()?,
    };
    let expected = bench::oracle_output(&workload)?;
    let mut all_passed = true;
    for desc in series {
        let prepared = bench::prepare(desc, &workload)?;
        for params in sweep.params_for(desc) {
            let actual = bench::execute(desc, &prepared, &params)?;
            let verdict = bench::compare(&expected, &actual);
            all_passed &= verdict.passed();
            let described: Vec<String> = bench::describe(desc, &params)
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            println!(
                "{task} {} {} [{}]: {verdict}",
                desc.stage,
                desc.name,
                described.join(";")
            );
        }
    }
    Ok(all_passed)
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| at(path)(e.into()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gen {
            workload,
            output,
            queries,
        } => gen(&workload, &output, queries.as_ref())?,
        Command::List { task } => list(task.as_deref())?,
        Command::Verify {
            workload,
            select,
            input,
            queries,
        } => {
            if !verify(&workload, &select, input.as_ref(), queries.as_ref())? {
                return Ok(ExitCode::from(EXIT_VERIFY));
            }
        }
        Command::Run {
            workload,
            select,
            repeat,
            warmup,
            skip_verify,
            format,
            output,
        } => {
            if repeat == 0 {
                return Err(Error::parameter("repeat", "must be at least 1"));
            }
            let task = workload.task()?;
            let report = bench::run(
                &workload.spec()?,
                &select.series(task, false)?,
                &select.sweep()?,
                &RunConfig {
                    repeat,
                    warmup,
                    skip_verify,
                },
            )?;
            emit(&render(&report, format.into())?, output.as_ref())?;
        }
        Command::Report {
            inputs,
            format,
            output,
            allow_mixed,
        } => {
            let reports = inputs
                .iter()
                .map(|p| {
                    let json = fs::read_to_string(p).map_err(|e| at(p)(e.into()))?;
                    load_report(&json).map_err(|e| match e {
                        Error::Schema { path, message } => Error::Schema {
                            path: format!("{}: {path}", p.display()),
                            message,
                        },
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let merged = merge_reports(reports, allow_mixed)?;
            emit(&render(&merged, format.into())?, output.as_ref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

const EXIT_IO: u8 = 1;
const EXIT_PARAMETER: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_FORMAT: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification { .. } => EXIT_VERIFY,
        Error::Format(_) | Error::Schema { .. } => EXIT_FORMAT,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_PARAMETER,
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
