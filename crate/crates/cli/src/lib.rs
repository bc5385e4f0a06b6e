//! The `stigmergia` command-line interface, callable in-process through
//! [`run_cli`].
//!
//! Exit status: 0 on success, 1 when some inputs failed or a run error
//! occurred, 2 for invalid arguments or configuration.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use stigmergia::dataset::{self, FeatureTable, SynthConfig};
use stigmergia::pipeline::{self, Manifest, RunConfig, CONFIG_ENV};
use stigmergia::Error;

#[derive(Parser)]
#[command(
    name = "stigmergia",
    version,
    about = "Shape features, ant-colony clustering and grid k-NN"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Key = value configuration file.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file, or output directory for `cluster`. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record a snapshot every this many steps.
    #[arg(long, global = true)]
    snapshot_every: Option<u64>,
    /// Worker threads for per-file work.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Suppress progress and summary messages.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Override any configuration key, e.g. `--set k1=0.2`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Segment images and write their Hu invariants as a features CSV.
    Extract {
        #[arg(required = true)]
        images: Vec<PathBuf>,
        /// Label attached to every row.
        #[arg(long)]
        label: Option<String>,
        /// ln, log10 or none.
        #[arg(long)]
        log: Option<String>,
        /// auto, dark or bright.
        #[arg(long)]
        polarity: Option<String>,
    },
    /// Emit the embedded twenty-larvae feature table.
    Table1 {
        /// Three copies of every row (ids 1-60).
        #[arg(long)]
        triplicate: bool,
        /// Min-max scale each column onto [0, 1].
        #[arg(long)]
        normalize: bool,
    },
    /// Cluster a features CSV with the ant colony.
    Cluster {
        /// Features CSV.
        input: PathBuf,
        /// Reproduce the run recorded in this manifest.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Min-max scale features first.
        #[arg(long)]
        normalize: bool,
        /// Label drawn at full intensity in snapshot images.
        #[arg(long)]
        highlight: Option<String>,
        #[arg(long)]
        block_size: Option<usize>,
        #[arg(long)]
        t_max: Option<u64>,
        #[arg(long)]
        ants: Option<usize>,
        /// ROWSxCOLS.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Classify non-marker items of a placement CSV by their nearest markers.
    Classify {
        /// Placement CSV written by `cluster`.
        input: PathBuf,
        #[arg(short, long)]
        k: Option<usize>,
        /// Marker ids, `first-last`.
        #[arg(long)]
        markers: Option<String>,
        /// Take the grid size from this manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// ROWSxCOLS.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Generate labeled synthetic clusters in the unit cube.
    Synth {
        #[arg(long, default_value_t = 4)]
        classes: usize,
        #[arg(long, default_value_t = 200)]
        per_class: usize,
        #[arg(long, default_value_t = 7)]
        features: usize,
        #[arg(long, default_value_t = 0.85)]
        separation: f64,
        #[arg(long, default_value_t = 0.07)]
        jitter: f64,
    },
    /// Two feature columns as `id,x,y,label`.
    Scatter {
        input: PathBuf,
        #[arg(short)]
        x: String,
        #[arg(short)]
        y: String,
    },
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let usage = err.chain().any(|c| {
            matches!(
                c.downcast_ref::<Error>(),
                Some(Error::InvalidParams(_) | Error::EvenK(_) | Error::UnknownColumn(_))
            )
        });
        Self {
            code: if usage { 2 } else { 1 },
            err,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        anyhow::Error::from(err).into()
    }
}

fn output(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn load_config(common: &Common, extra: &[(&str, String)]) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &common.config {
        cfg.apply_file(path)
            .with_context(|| format!("reading config {}", path.display()))
            .map_err(|e| Failure { code: 2, err: e })?;
    }
    let mut pairs: Vec<(String, String)> = Vec::new();
    if let Some(s) = common.seed {
        pairs.push(("seed".into(), s.to_string()));
    }
    if let Some(s) = common.snapshot_every {
        pairs.push(("snapshot_every".into(), s.to_string()));
    }
    pairs.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    for o in &common.overrides {
        let (k, v) = o.split_once('=').ok_or_else(|| Failure {
            code: 2,
            err: anyhow::anyhow!("--set expects KEY=VALUE, got `{o}`"),
        })?;
        pairs.push((k.into(), v.into()));
    }
    for (k, v) in pairs {
        cfg.set(&k, &v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn opt<T: ToString>(key: &'static str, v: &Option<T>) -> Option<(&'static str, String)> {
    v.as_ref().map(|v| (key, v.to_string()))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let common = &cli.common;
    let out = common.out.as_deref();
    match &cli.command {
        Command::Extract {
            images,
            label,
            log,
            polarity,
        } => {
            let extra: Vec<_> = [opt("log", log), opt("polarity", polarity)]
                .into_iter()
                .flatten()
                .collect();
            let cfg = load_config(common, &extra)?;
            let (table, failed) = pipeline::extract(images, &cfg, label.as_deref(), common.jobs);
            table.write_csv(output(out)?)?;
            for (path, e) in &failed {
                eprintln!("error: {}: {e}", path.display());
            }
            Ok(if failed.is_empty() { 0 } else { 1 })
        }
        Command::Table1 { triplicate, normalize } => {
            load_config(common, &[])?;
            dataset::table1(*triplicate, *normalize)?.write_csv(output(out)?)?;
            Ok(0)
        }
        Command::Cluster {
            input,
            replay,
            normalize,
            highlight,
            block_size,
            t_max,
            ants,
            grid,
        } => {
            let Some(dir) = out else {
                return Err(Failure {
                    code: 2,
                    err: anyhow::anyhow!("cluster needs --out <directory>"),
                });
            };
            let started = Instant::now();
            let result = match replay {
                Some(m) => {
                    let manifest = Manifest::read(m).with_context(|| format!("reading manifest {}", m.display()))?;
                    pipeline::replay(&manifest, input)?
                }
                None => {
                    let mut extra: Vec<_> = [
                        opt("highlight", highlight),
                        opt("block_size", block_size),
                        opt("t_max", t_max),
                        opt("n_ants", ants),
                        opt("grid", grid),
                    ]
                    .into_iter()
                    .flatten()
                    .collect();
                    if *normalize {
                        extra.push(("normalize", "true".into()));
                    }
                    let cfg = load_config(common, &extra)?;
                    pipeline::cluster_file(input, &cfg).with_context(|| format!("clustering {}", input.display()))?
                }
            };
            pipeline::write_cluster(&result, dir)?;
            for w in &result.warnings {
                eprintln!("warning: {w}");
            }
            let m = &result.manifest;
            if !common.quiet {
                eprintln!(
                    "{} items, {} steps, {} ants on {}x{}, final entropy {}, {:.2} s",
                    m.input.items,
                    m.params.t_max,
                    m.params.n_ants,
                    m.params.grid_rows,
                    m.params.grid_cols,
                    m.final_entropy.map_or("n/a".into(), dataset::format_real),
                    started.elapsed().as_secs_f64()
                );
            }
            Ok(0)
        }
        Command::Classify {
            input,
            k,
            markers,
            manifest,
            grid,
        } => {
            let mut extra: Vec<_> = [opt("k", k), opt("markers", markers)].into_iter().flatten().collect();
            if let Some(m) = manifest {
                let m = Manifest::read(m).with_context(|| format!("reading manifest {}", m.display()))?;
                extra.push(("grid", format!("{}x{}", m.params.grid_rows, m.params.grid_cols)));
            }
            extra.extend(opt("grid", grid));
            let cfg = load_config(common, &extra)?;
            let rows = pipeline::read_placement(
                fs::File::open(input).with_context(|| format!("opening {}", input.display()))?,
            )?;
            let result = pipeline::classify(&rows, &cfg)?;
            pipeline::write_predictions(&result.predictions, output(out)?)?;
            let line = pipeline::accuracy_line(&result);
            match (common.quiet, out.is_some()) {
                (true, _) => {}
                (false, true) => println!("{line}"),
                (false, false) => eprintln!("{line}"),
            }
            Ok(0)
        }
        Command::Synth {
            classes,
            per_class,
            features,
            separation,
            jitter,
        } => {
            let cfg = load_config(common, &[])?;
            let table = dataset::synth(&SynthConfig {
                classes: *classes,
                per_class: *per_class,
                features: *features,
                separation: *separation,
                jitter: *jitter,
                seed: cfg.params.seed,
            })?;
            table.write_csv(output(out)?)?;
            Ok(0)
        }
        Command::Scatter { input, x, y } => {
            load_config(common, &[])?;
            let table =
                FeatureTable::read_csv(fs::File::open(input).with_context(|| format!("opening {}", input.display()))?)?;
            let points = dataset::scatter(&table, x, y)?;
            dataset::write_scatter(&points, output(out)?)?;
            Ok(0)
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit status.
pub fn run_cli<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    if cli.common.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return 2;
    }
    match run(cli) {
        Ok(code) => code,
        Err(Failure { code, err }) => {
            eprintln!("error: {err:#}");
            code
        }
    }
}
