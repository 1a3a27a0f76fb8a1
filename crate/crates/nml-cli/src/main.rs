//! Command-line front end: frame I/O, near-miss analysis, constructions,
//! bounds, searches, seller designs, and table reproduction.
//!
//! Exit codes: 0 success, 2 input validation failures (with a diagnostic
//! naming the violated precondition), 1 enumeration-cap or budget limits.

mod report;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nml_core::bounds;
use nml_core::constructions;
use nml_core::nm;
use nml_core::search::{self, SearchMode, SearchOptions};
use nml_core::seller;
use nml_core::space::DEFAULT_MAX_SPACE;
use nml_core::{Error, FrameDocument, Limits};

#[derive(Parser)]
#[command(
    name = "nml",
    version,
    about = "Analyze and design framed lotteries over q-ary Hamming space"
)]
struct Cli {
    /// Largest outcome count q^n dense operations may enumerate
    /// (default 2^27).
    #[arg(long, global = true, env = "NML_MAX_SPACE")]
    max_space: Option<u64>,

    /// Worker threads for parallel search (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Add elapsed-time fields to JSON reports. Off by default so identical
    /// invocations emit byte-identical output.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact near-miss analysis of a frame file.
    Nm(NmArgs),
    /// Frame constructions; each emits canonical frame JSON on stdout.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Closed-form bounds.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Exact and heuristic searches with verified certificates.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Seller-side optimal designs.
    #[command(subcommand)]
    Seller(SellerCommand),
    /// Reproduce the minimal binary covering-code table as CSV.
    Tables(TablesArgs),
}

#[derive(Args)]
struct NmArgs {
    /// Frame JSON file.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum BuildCommand {
    /// Perfect radius-1 frame for prime-power q and redundancy m.
    Hamming {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
    },
    /// Append one free coordinate: index rises, covering radius preserved.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Split every symbol into t interchangeable copies.
    Split {
        #[arg(long)]
        t: u32,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Refold an alphabet of size base^t into base, length t·n.
    Fold {
        #[arg(long)]
        base: u32,
        #[arg(long)]
        t: u32,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Radius-1 length-3 frame at the optimal size ⌊(q²+1)/2⌋.
    R1n3 {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Threshold probability and M-bound for (q, n).
    M {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
    },
    /// Sphere covering bound for (q, n, R).
    Sphere {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
    /// Emit an M-bound table as CSV (columns q,n,p,M).
    Table {
        #[arg(long, value_enum, default_value_t = GridKind::Paper)]
        grid: GridKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GridKind {
    /// The standard ten-row demonstration grid.
    Paper,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Minimal covering code for (q, n, R).
    Kqnr {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Heuristic mode stops once a witness of this size is found.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Exhaustive index-maximal frame at a fixed winner count.
    Frame {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Minimal distance-sum curve over every winner count.
    Curve {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Heuristic,
}

#[derive(Subcommand)]
enum SellerCommand {
    /// Optimal design at win probability 1/q^m.
    Design {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
    },
    /// Designs for m = 1..=mmax (value rises, p falls).
    Schedule {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        mmax: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long, value_enum, default_value_t = TableKind::Table1)]
    which: TableKind,
    /// Largest length to certify (exact search; lengths above 6 exceed the
    /// exact-search cap at q = 2).
    #[arg(long, default_value_t = 5)]
    max_n: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    /// Minimal binary covering-code sizes for R = 1 and R = 2.
    Table1,
}

enum CliError {
    Core(Error),
    Io { path: PathBuf, source: std::io::Error },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 1,
            _ => 2,
        }
    }
}

struct Ctx {
    limits: Limits,
    timing: bool,
}

impl Ctx {
    fn elapsed(&self, started: Instant) -> Option<u128> {
        self.timing.then(|| started.elapsed().as_millis())
    }
}

fn read_frame(path: &Path) -> Result<FrameDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let (doc, dupes) = FrameDocument::from_json_str(&text)?;
    if dupes > 0 {
        eprintln!(
            "warning: {}: dropped {dupes} duplicate winning outcome(s); |W| counts distinct outcomes",
            path.display()
        );
    }
    Ok(doc)
}

fn frame_output(doc: &FrameDocument) -> String {
    let mut s = doc.to_json_string();
    s.push('\n');
    s
}

fn run(command: Command, ctx: &Ctx) -> Result<String, CliError> {
    match command {
        Command::Nm(args) => {
            let doc = read_frame(&args.input)?;
            let started = Instant::now();
            let analysis = nm::near_miss_report(&doc.frame, &ctx.limits)?;
            let perfect = nm::is_perfect_radius1(&doc.frame, &ctx.limits)?;
            Ok(report::render_nm(
                &args.input.display().to_string(),
                &doc,
                &analysis,
                perfect,
                ctx.elapsed(started),
            ))
        }
        Command::Build(build) => run_build(build, ctx),
        Command::Bound(bound) => run_bound(bound, ctx),
        Command::Search(search_cmd) => run_search(search_cmd, ctx),
        Command::Seller(seller_cmd) => run_seller(seller_cmd, ctx),
        Command::Tables(args) => run_tables(args, ctx),
    }
}

fn run_build(command: BuildCommand, ctx: &Ctx) -> Result<String, CliError> {
    let doc = match command {
        BuildCommand::Hamming { q, m } => {
            FrameDocument::bare(constructions::hamming_frame(q, m, &ctx.limits)?)
        }
        BuildCommand::Extend { input } => {
            let doc = read_frame(&input)?;
            // the alphabet is unchanged, so labels stay meaningful
            FrameDocument::new(constructions::extend_length(&doc.frame)?, doc.labels)?
        }
        BuildCommand::Split { t, input } => {
            let doc = read_frame(&input)?;
            FrameDocument::bare(constructions::split_symbols(&doc.frame, t, &ctx.limits)?)
        }
        BuildCommand::Fold { base, t, input } => {
            let doc = read_frame(&input)?;
            FrameDocument::bare(constructions::fold_alphabet(&doc.frame, base, t)?)
        }
        BuildCommand::R1n3 { q, seed } => {
            FrameDocument::bare(constructions::radius1_length3_code(q, seed, &ctx.limits)?)
        }
    };
    Ok(frame_output(&doc))
}

fn run_bound(command: BoundCommand, ctx: &Ctx) -> Result<String, CliError> {
    match command {
        BoundCommand::M { q, n } => {
            if q < 2 {
                return Err(Error::InvalidAlphabet { q }.into());
            }
            if n < 1 {
                return Err(Error::InvalidLength { n }.into());
            }
            let started = Instant::now();
            let row = bounds::m_bound(q, n);
            Ok(report::render_m_bound(&row, ctx.elapsed(started)))
        }
        BoundCommand::Sphere { q, n, r } => {
            let started = Instant::now();
            let bound = bounds::sphere_covering_bound(q, n, r)?;
            Ok(report::render_sphere(
                q,
                n,
                r,
                &bound.to_string(),
                ctx.elapsed(started),
            ))
        }
        BoundCommand::Table { grid: GridKind::Paper } => {
            let rows: Vec<_> = bounds::M_BOUND_GRID
                .iter()
                .map(|&(q, n)| bounds::m_bound(q, n))
                .collect();
            Ok(report::render_m_bound_table(&rows))
        }
    }
}

fn run_search(command: SearchCommand, ctx: &Ctx) -> Result<String, CliError> {
    match command {
        SearchCommand::Kqnr {
            q,
            n,
            r,
            mode,
            budget,
            seed,
            target,
        } => {
            let opts = SearchOptions {
                budget: budget.unwrap_or_else(|| SearchOptions::default().budget),
                seed,
                target_size: target,
                ..SearchOptions::default()
            };
            let mode = match mode {
                ModeArg::Exact => SearchMode::Exact,
                ModeArg::Heuristic => SearchMode::Heuristic,
            };
            let started = Instant::now();
            let cert = search::minimal_covering_code(q, n, r, mode, &opts, &ctx.limits)?;
            Ok(report::render_certificate(
                q,
                n,
                r,
                &cert,
                ctx.elapsed(started),
            ))
        }
        SearchCommand::Frame { q, n, w, budget } => {
            let opts = SearchOptions {
                budget: budget.unwrap_or_else(|| SearchOptions::default().budget),
                ..SearchOptions::default()
            };
            let started = Instant::now();
            let (frame, index) = search::optimal_frame(q, n, w, &opts, &ctx.limits)?;
            let doc = FrameDocument::bare(frame);
            Ok(report::render_optimal_frame(
                q,
                n,
                w,
                &index,
                &doc,
                ctx.elapsed(started),
            ))
        }
        SearchCommand::Curve { q, n, budget } => {
            let opts = SearchOptions {
                budget: budget.unwrap_or_else(|| SearchOptions::default().budget),
                ..SearchOptions::default()
            };
            let started = Instant::now();
            let curve = search::min_distance_sum_curve(q, n, &opts)?;
            let convex = search::is_convex(&curve);
            Ok(report::render_curve(
                q,
                n,
                &curve,
                convex,
                ctx.elapsed(started),
            ))
        }
    }
}

fn run_seller(command: SellerCommand, ctx: &Ctx) -> Result<String, CliError> {
    match command {
        SellerCommand::Design { q, m } => {
            let started = Instant::now();
            let design = seller::design_optimal(q, m, &ctx.limits)?;
            Ok(report::render_seller_design(&design, ctx.elapsed(started)))
        }
        SellerCommand::Schedule { q, mmax, format } => {
            if mmax < 1 {
                return Err(
                    Error::InvalidParameter("mmax must be at least 1".into()).into()
                );
            }
            let designs = seller::corollary_schedule(q, mmax, &ctx.limits)?;
            Ok(match format {
                FormatArg::Csv => report::render_schedule_csv(&designs),
                FormatArg::Json => report::render_schedule_json(q, &designs),
            })
        }
    }
}

fn run_tables(args: TablesArgs, ctx: &Ctx) -> Result<String, CliError> {
    let TablesArgs { which: TableKind::Table1, max_n } = args;
    if max_n < 1 {
        return Err(Error::InvalidParameter("max-n must be at least 1".into()).into());
    }
    let opts = SearchOptions::default();
    let mut rows = Vec::new();
    for r in [1u32, 2] {
        for n in r.max(1)..=max_n {
            if r == 2 && n < 2 {
                continue;
            }
            let cert =
                search::minimal_covering_code(2, n, r, SearchMode::Exact, &opts, &ctx.limits)?;
            rows.push((r, n, cert.frame.win_count()));
        }
    }
    Ok(report::render_k_table(&rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let limits = Limits::with_max_space(cli.max_space.unwrap_or(DEFAULT_MAX_SPACE));
    let ctx = Ctx {
        limits,
        timing: cli.timing,
    };
    match run(cli.command, &ctx) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
