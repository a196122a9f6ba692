use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use sun_casimir::casimir::{build_rep, compute_index, RouteChoice};
use sun_casimir::reps::RepKind;
use sun_casimir::{ArtifactStore, Config, SuN};
use sun_casimir_cli::cache::{default_root, DiskCache, CACHE_ENV};
use sun_casimir_cli::config::{heavy_caps, Format, RunConfig, Tier};
use sun_casimir_cli::suite::{run_suite, Workbench};
use sun_casimir_cli::table::compute_table;
use sun_casimir_cli::{CliError, EXIT_INFRA, EXIT_MISMATCH, EXIT_OK};

/// Generalised Dynkin indices and Casimir eigenvalues of su(n).
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Tensor cache root [default: $XDG_CACHE_HOME/suncas or ~/.cache/suncas]
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Run without reading or writing the tensor cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Absolute tolerance for identity checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    abs_tol: f64,
    /// Relative tolerance for identity checks
    #[arg(long, global = true, default_value_t = 1e-8)]
    rel_tol: f64,
    /// Cap on canonical entries of one tensor
    #[arg(long, global = true)]
    max_entries: Option<f64>,
    /// Cap on complex multiply-adds of one trace computation
    #[arg(long, global = true)]
    max_flops: Option<f64>,
    /// Cap on representation dimension
    #[arg(long, global = true)]
    max_rep_dim: Option<usize>,
    /// Raise trace and alternation caps for long computations
    #[arg(long, global = true)]
    heavy: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Index table of the fundamental representations of su(n)
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// sym | component | both | auto
        #[arg(long, default_value = "auto")]
        route: RouteChoice,
    },
    /// Run the verification suite and print a JSON report
    Verify {
        #[arg(long, value_enum, default_value_t = Tier::Core)]
        suite: Tier,
    },
    /// One eigenvalue and index as JSON
    Compute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// def | adj | sym:p | fund:s | spinor | conj:<spec>
        #[arg(long)]
        rep: RepKind,
        /// sym | component | both | auto
        #[arg(long, default_value = "auto")]
        route: RouteChoice,
    },
    /// Inspect or empty the tensor cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    List,
    Clear,
}

impl GlobalArgs {
    fn run_config(&self, tier: Tier, format: Format) -> Result<RunConfig, CliError> {
        let mut core = Config::default();
        if self.heavy || tier == Tier::Heavy {
            core.caps = heavy_caps();
        }
        core.tolerance = sun_casimir::linalg::Tolerance::new(self.abs_tol, self.rel_tol)?;
        if let Some(v) = self.max_entries {
            core.caps.tensor_entries = v;
        }
        if let Some(v) = self.max_flops {
            core.caps.trace_flops = v;
        }
        if let Some(v) = self.max_rep_dim {
            core.caps.rep_dim = v;
        }
        let cfg = RunConfig {
            core,
            cache_dir: if self.no_cache {
                None
            } else {
                self.cache_dir.clone().or_else(default_root)
            },
            format,
            tier,
            ..RunConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// An unusable cache directory only costs the cache.
fn open_store(cfg: &RunConfig) -> Option<Arc<dyn ArtifactStore>> {
    let root = cfg.cache_dir.as_ref()?;
    match DiskCache::open(root) {
        Ok(c) => Some(Arc::new(c)),
        Err(e) => {
            eprintln!("warning: {e}; running uncached");
            None
        }
    }
}

fn algebra(n: usize, cfg: &RunConfig) -> Result<SuN, CliError> {
    if !cfg.n_range.contains(&n) && cfg.core.caps == Config::default().caps {
        return Err(CliError::Config(format!(
            "n = {n} is outside {:?}; pass explicit cap overrides to go beyond",
            cfg.n_range
        )));
    }
    let alg = SuN::with_config(n, cfg.core.clone())?;
    Ok(match open_store(cfg) {
        Some(store) => alg.with_store(store),
        None => alg,
    })
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let g = &cli.global;
    match cli.command {
        Command::Table { n, format, route } => {
            let cfg = g.run_config(Tier::Core, format)?;
            let alg = algebra(n, &cfg)?;
            let table = compute_table(&alg, route)?;
            println!("{}", table.render(format));
            let ok = table.checks().iter().all(sun_casimir::Check::passed);
            Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Verify { suite } => {
            let cfg = g.run_config(suite, Format::Json)?;
            let mut bench = Workbench::new(cfg.core.clone(), open_store(&cfg));
            let report = run_suite(suite, &mut bench, |c| {
                eprintln!("{}", c.summary_line());
                for f in c.failures() {
                    eprintln!(
                        "  failed: {} (residual {:.3e}, tolerance {:.1e}) {}",
                        f.name, f.residual, f.tolerance, f.detail
                    );
                }
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.passed { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Compute { n, m, rep, route } => {
            let cfg = g.run_config(Tier::Core, Format::Json)?;
            let alg = algebra(n, &cfg)?;
            let rep = build_rep(&alg, &rep)?;
            let report = compute_index(&alg, &rep, m, route)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(EXIT_OK)
        }
        Command::Cache { action } => {
            let root = g
                .cache_dir
                .clone()
                .or_else(default_root)
                .context("no cache directory: set --cache-dir or SUNCAS_CACHE_DIR")?;
            let cache = DiskCache::open(&root)?;
            match action {
                CacheAction::List => {
                    for e in cache.list()? {
                        let tag = if e.current { "" } else { " (stale version)" };
                        println!("{}\t{}{tag}", e.path.display(), e.bytes);
                    }
                }
                CacheAction::Clear => {
                    let removed = cache.clear()?;
                    eprintln!("removed {removed} entries from {}", root.display());
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INFRA
        }
    };
    ExitCode::from(code as u8)
}
