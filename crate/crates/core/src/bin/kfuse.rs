//! Command-line front-end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 infeasible cluster
//! count. Failures print one `kfuse: error[<kind>]: <message>` line on stderr.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use kfuse::dataset::{load_csv, load_label_file};
use kfuse::generate::{generate, Shape};
use kfuse::metrics::score_all;
use kfuse::ranking::{friedman_statistic, nemenyi_cd, q_alpha_005, significant_pairs, RankTable};
use kfuse::svg::render_scatter;
use kfuse::{cluster, Config, EnqueueMode, Error, KMode};

#[derive(Parser)]
#[command(name = "kfuse", version, about = "Density-based agglomerative clustering")]
struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a CSV dataset and write one label per input row.
    Cluster(ClusterArgs),
    /// Compare a predicted label file against ground truth.
    Eval {
        truth: PathBuf,
        predicted: PathBuf,
    },
    /// Friedman statistic and Nemenyi critical difference over a score matrix.
    Stats {
        scores: PathBuf,
        /// Critical value q_α; defaults to the built-in α = 0.05 table.
        #[arg(long)]
        q_alpha: Option<f64>,
    },
    /// Write a seeded synthetic dataset as labelled CSV.
    Generate(GenerateArgs),
    /// Render a 2-D dataset colored by a label file.
    Svg {
        dataset: PathBuf,
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// The dataset's last column is a label and is skipped.
        #[arg(long)]
        has_labels: bool,
    },
}

#[derive(clap::Args)]
struct ClusterArgs {
    input: PathBuf,
    /// Number of clusters.
    #[arg(short = 'c', long = "clusters")]
    clusters: usize,
    /// The last column holds ground truth; it is stripped before clustering
    /// and used only for the metric report.
    #[arg(long)]
    has_labels: bool,
    #[arg(long)]
    no_normalize: bool,
    #[arg(long, value_enum, default_value_t = KModeArg::Lambda)]
    k_mode: KModeArg,
    #[arg(long, value_enum, default_value_t = EnqueueArg::RepImage)]
    enqueue_mode: EnqueueArg,
    /// Assignment file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the result as SVG (2-D data only).
    #[arg(long)]
    svg_out: Option<PathBuf>,
    /// Compute distances on a single thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KModeArg {
    Lambda,
    MaxNb,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnqueueArg {
    RepImage,
    PeaksOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Blobs,
    Rings,
    Moons,
    Line,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    shape: ShapeArg,
    /// Number of groups (blobs, rings).
    #[arg(short, long, default_value_t = 3)]
    k: usize,
    /// Number of points.
    #[arg(short, long, default_value_t = 300)]
    n: usize,
    /// Blob standard deviation (default 1), ring jitter (0.1) or moon jitter (0.05).
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfeasibleTarget { .. } => 3,
            Error::InvalidParameter(_) => 1,
            _ => 2,
        };
        Failure { code, kind: e.kind(), message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, kind: "usage", message: message.into() }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|source| Error::Io { path: p.to_path_buf(), source }.into()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure {
                code: 2,
                kind: "io",
                message: e.to_string(),
            })
        }
    }
}

fn cmd_cluster(args: ClusterArgs) -> Result<(), Failure> {
    let started = Instant::now();
    let ds = load_csv(&args.input, args.has_labels)?;
    let truth = ds.labels().map(<[usize]>::to_vec);
    let ds = ds.without_labels();
    let cfg = Config::new(args.clusters)
        .normalize(!args.no_normalize)
        .k_mode(match args.k_mode {
            KModeArg::Lambda => KMode::Lambda,
            KModeArg::MaxNb => KMode::MaxNb,
        })
        .enqueue_mode(match args.enqueue_mode {
            EnqueueArg::RepImage => EnqueueMode::RepImage,
            EnqueueArg::PeaksOnly => EnqueueMode::PeaksOnly,
        })
        .parallel(!args.sequential);
    let out = cluster(&ds, &cfg)?;

    let mut assignments = String::with_capacity(out.labels.len() * 3);
    for l in &out.labels {
        writeln!(assignments, "{l}").unwrap();
    }
    write_output(args.out.as_deref(), &assignments)?;
    if let Some(svg_path) = &args.svg_out {
        let svg = render_scatter(&ds, &out.labels)?;
        write_output(Some(svg_path), &svg)?;
    }

    let mut report = String::new();
    writeln!(report, "dataset: {}", ds.name()).unwrap();
    writeln!(report, "points: {}", ds.len()).unwrap();
    writeln!(report, "dimensions: {}", ds.dim()).unwrap();
    writeln!(report, "lambda: {}", out.lambda()).unwrap();
    writeln!(report, "peaks: {}", out.peak_count()).unwrap();
    writeln!(report, "subclusters: {}", out.subcluster_count()).unwrap();
    writeln!(report, "merges: {}", out.merges).unwrap();
    writeln!(report, "clusters: {}", args.clusters).unwrap();
    if let Some(truth) = truth {
        let s = score_all(&truth, &out.labels)?;
        writeln!(report, "FMI: {:.3}", s.fmi).unwrap();
        writeln!(report, "ARI: {:.3}", s.ari).unwrap();
        writeln!(report, "NMI: {:.3}", s.nmi).unwrap();
    }
    writeln!(report, "seconds: {:.3}", started.elapsed().as_secs_f64()).unwrap();
    // keep stdout clean when it carries the assignments
    if args.out.is_some() {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    Ok(())
}

fn cmd_eval(truth: &Path, predicted: &Path) -> Result<(), Failure> {
    let t = load_label_file(truth)?;
    let p = load_label_file(predicted)?;
    if t.len() != p.len() {
        return Err(Error::LengthMismatch { left: t.len(), right: p.len() }.into());
    }
    let s = score_all(&t, &p)?;
    println!("FMI ARI NMI");
    println!("{:.3} {:.3} {:.3}", s.fmi, s.ari, s.nmi);
    Ok(())
}

fn cmd_stats(scores: &Path, q_alpha: Option<f64>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(scores)
        .map_err(|source| Error::Io { path: scores.to_path_buf(), source })?;
    let rt = RankTable::from_csv_str(&text)?;
    let (m, n) = (rt.algorithm_count(), rt.dataset_count());
    let q = match q_alpha {
        Some(q) if q > 0.0 && q.is_finite() => q,
        Some(q) => return Err(usage(format!("--q-alpha must be positive, got {q}"))),
        None => q_alpha_005(m)
            .ok_or_else(|| usage(format!("no built-in q_alpha for {m} algorithms; pass --q-alpha")))?,
    };
    let f = friedman_statistic(&rt)?;
    let cd = nemenyi_cd(m, n, q);
    println!("algorithms: {m}");
    println!("datasets: {n}");
    println!("mean ranks:");
    for (name, r) in rt.algorithms.iter().zip(&rt.mean_ranks) {
        println!("  {name}: {r:.4}");
    }
    println!("chi-square: {:.4}", f.chi_square);
    println!("df: {}", f.df);
    println!("q_alpha: {q}");
    println!("CD: {cd:.4}");
    let sig = significant_pairs(&rt, cd);
    if sig.is_empty() {
        println!("significant pairs: none");
    } else {
        println!("significant pairs:");
        for (a, b, gap) in sig {
            println!("  {} vs {}: {gap:.4}", rt.algorithms[a], rt.algorithms[b]);
        }
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let shape = match args.shape {
        ShapeArg::Blobs => Shape::Blobs { k: args.k, n: args.n, spread: args.noise.unwrap_or(1.0) },
        ShapeArg::Rings => Shape::Rings { k: args.k, n: args.n, noise: args.noise.unwrap_or(0.1) },
        ShapeArg::Moons => Shape::Moons { n: args.n, noise: args.noise.unwrap_or(0.05) },
        ShapeArg::Line => Shape::Line { n: args.n },
    };
    let ds = generate(shape, args.seed)?;
    write_output(args.out.as_deref(), &ds.to_csv_string())
}

fn cmd_svg(dataset: &Path, labels: &Path, out: &Path, has_labels: bool) -> Result<(), Failure> {
    let ds = load_csv(dataset, has_labels)?;
    let labels = load_label_file(labels)?;
    let svg = render_scatter(&ds, &labels)?;
    write_output(Some(out), &svg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match cli.command {
        Command::Cluster(args) => cmd_cluster(args),
        Command::Eval { truth, predicted } => cmd_eval(&truth, &predicted),
        Command::Stats { scores, q_alpha } => cmd_stats(&scores, q_alpha),
        Command::Generate(args) => cmd_generate(args),
        Command::Svg { dataset, labels, out, has_labels } => {
            cmd_svg(&dataset, &labels, &out, has_labels)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let message = f.message.replace('\n', " ");
            eprintln!("kfuse: error[{}]: {message}", f.kind);
            ExitCode::from(f.code)
        }
    }
}
