use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;

use tourlen::bench::{self, RunConfig};
use tourlen::estimators::EstimateReport;
use tourlen::generators::{grid_optimal_length, make_grid, GridSpec};
use tourlen::metric::{build_instance, compute_stats};
use tourlen::solvers::{best_start_nearest_town, exact_tour, nearest_town};
use tourlen::tsplib::parse_instance;
use tourlen::{prim_mst, Instance, SolverLimit};

#[derive(Parser)]
#[command(name = "tourlen", version, about = "Tour-length estimates and bounds for Euclidean TSP instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every estimator on a corpus and write the error table and series.
    Evaluate(CorpusArgs),
    /// Recompute published tour lengths and compare them with reported values.
    Audit(CorpusArgs),
    /// Write the e(2^d + k, d) curves.
    Curves {
        /// Largest dimension to evaluate.
        #[arg(long, default_value_t = 100)]
        d_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a lattice, solve it and print its closed forms and estimates.
    Grid {
        /// Points per axis, for example `4,3` or `2,2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        sides: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        #[arg(long, default_value_t = 15)]
        exact_cap: usize,
    },
    /// Solve one TSPLIB instance exactly (if small enough) and by nearest town.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 15)]
        exact_cap: usize,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Directory of `.tsp` files.
    #[arg(long)]
    instances: PathBuf,
    /// Directory of `.tour` / `.opt.tour` files. Defaults to the instance directory.
    #[arg(long)]
    tours: Option<PathBuf>,
    /// CSV with columns `name,reported_opt,hk`.
    #[arg(long)]
    reported: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated subset of O1,O2,Ot1,Ot2,Otc1,Otc2,HK,T_plus_w0,T_ratio.
    #[arg(long)]
    formulas: Option<String>,
    /// Dimension used by the estimators instead of the instance's own.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 15)]
    exact_cap: usize,
}

impl CorpusArgs {
    fn config(&self) -> Result<RunConfig> {
        let mut config = RunConfig::new(&self.instances, &self.out);
        config.tour_dir = Some(self.tours.clone().unwrap_or_else(|| self.instances.clone()));
        config.reported_values_path = self.reported.clone();
        config.d_override = self.d;
        if let Some(list) = &self.formulas {
            config.formulas = bench::parse_formula_list(list)?;
        }
        config.limit = SolverLimit::new(self.exact_cap)?;
        Ok(config)
    }
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Evaluate(args) => evaluate(&args.config()?, &mut out),
        Command::Audit(args) => audit(&args.config()?, &mut out),
        Command::Curves { d_max, out: dir } => {
            if d_max == 0 {
                bail!("--d-max must be at least 1");
            }
            fs::create_dir_all(&dir)?;
            let path = dir.join("fig1.csv");
            bench::write_fig1_curves(d_max, BufWriter::new(File::create(&path)?))?;
            writeln!(out, "wrote {}", path.display())?;
            Ok(())
        }
        Command::Grid {
            sides,
            spacing,
            exact_cap,
        } => {
            let spec = GridSpec::new(sides, spacing)?;
            let instance = make_grid(&spec);
            writeln!(out, "closed-form optimum {}", grid_optimal_length(&spec))?;
            writeln!(out, "closed-form diameter {}", spec.diameter())?;
            describe(&instance, SolverLimit::new(exact_cap)?, &mut out)
        }
        Command::Solve { instance, exact_cap } => {
            let file = File::open(&instance).with_context(|| format!("opening {}", instance.display()))?;
            let raw = parse_instance(file).with_context(|| format!("parsing {}", instance.display()))?;
            describe(&build_instance(&raw)?, SolverLimit::new(exact_cap)?, &mut out)
        }
    }
}

fn evaluate(config: &RunConfig, out: &mut impl Write) -> Result<()> {
    let run = bench::run_evaluate(config)?;
    for s in &run.skipped {
        writeln!(out, "skipped {}: {}", s.path.display(), s.reason)?;
    }
    let without_opt = run.results.iter().filter(|r| r.opt.is_none()).count();
    writeln!(
        out,
        "evaluated {} instances ({} without an optimum)",
        run.results.len(),
        without_opt
    )?;
    io::copy(&mut File::open(config.output_dir.join("table1.txt"))?, out)?;
    info!("outputs in {}", config.output_dir.display());
    Ok(())
}

fn audit(config: &RunConfig, out: &mut impl Write) -> Result<()> {
    let entries = bench::audit_tours(config)?;
    fs::create_dir_all(&config.output_dir)?;
    let path = config.output_dir.join("audit.csv");
    bench::write_audit_csv(&entries, BufWriter::new(File::create(&path)?))?;
    for e in &entries {
        match (e.computed, &e.diagnostic) {
            (Some(c), _) => writeln!(
                out,
                "{:<10} computed {:>14.6}  reported {:>10}  hk {:>10}  {}{}",
                e.instance,
                c,
                e.reported_opt.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                e.hk.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                e.classification.map(|c| c.name()).unwrap_or("no reported value"),
                if e.hk_anomaly { "  HK above tour" } else { "" }
            )?,
            (None, Some(d)) => writeln!(out, "{:<10} {d}", e.instance)?,
            (None, None) => writeln!(out, "{:<10} not computed", e.instance)?,
        }
    }
    writeln!(out, "wrote {}", path.display())?;
    Ok(())
}

fn describe(instance: &Instance, limit: SolverLimit, out: &mut impl Write) -> Result<()> {
    let norm = instance.norm();
    let stats = compute_stats(instance).scaled(norm);
    let mst = prim_mst(instance).scaled_total(norm);
    let report = EstimateReport::new(&stats, mst, instance.dim());
    writeln!(out, "instance {} n={} d={}", instance.name(), stats.n, instance.dim())?;
    writeln!(out, "w0 {}  w1 {}  mst {}", stats.w0, stats.w1, mst)?;
    writeln!(
        out,
        "O1 {}  O2 {}  Ot1 {}  Ot2 {}  Otc1 {}  Otc2 {}",
        report.o1, report.o2, report.ot1, report.ot2, report.otc1, report.otc2
    )?;
    writeln!(
        out,
        "lower bound {}  upper bound {}{}",
        report.bounds.lower(),
        report.bounds.upper(),
        if report.bounds.is_consistent() { "" } else { "  (inconsistent)" }
    )?;
    if instance.len() <= limit.max_exact_n() {
        let exact = exact_tour(instance, limit)?;
        writeln!(out, "exact {}  order {:?}", exact.length, exact.order)?;
    } else {
        writeln!(out, "exact skipped: n above cap {}", limit.max_exact_n())?;
    }
    if instance.len() >= 3 {
        let single = nearest_town(instance, 0)?;
        let best = best_start_nearest_town(instance)?;
        writeln!(out, "nearest town from 0 {}", single.length)?;
        writeln!(out, "nearest town best start {}  start {}", best.length, best.order[0])?;
    }
    Ok(())
}
