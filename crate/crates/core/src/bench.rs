//! Corpus harness: evaluate every estimator on a directory of TSPLIB
//! instances, compare against the best available optimum, and emit the
//! error table, per-instance series, e(n,d) curves and the tour audit.
//!
//! Every writer here formats floats with Rust's shortest round-trip
//! representation (except the human-readable table), so a CSV value parses
//! back to the exact `f64` that was computed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::{info, warn};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{BenchError, ParseError};
use crate::estimators::{aggregate_errors, e_ratio_log2, relative_error, ErrorRecord, ErrorStats, EstimateReport};
use crate::metric::{build_instance, compute_stats, order_from_sequence, tour_length, Instance};
use crate::mst::prim_mst;
use crate::solvers::{exact_tour, SolverLimit};
use crate::tsplib::{load_reported_values, parse_instance, parse_tour, ReportedValues};

/// Quantities compared against the optimum, in error-table row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    O1,
    O2,
    Ot1,
    Ot2,
    Otc1,
    Otc2,
    Hk,
    TPlusW0,
    TRatio,
}

/// Whether a formula is a proven bound on the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl Formula {
    pub const ALL: [Formula; 9] = [
        Formula::O1,
        Formula::O2,
        Formula::Ot1,
        Formula::Ot2,
        Formula::Otc1,
        Formula::Otc2,
        Formula::Hk,
        Formula::TPlusW0,
        Formula::TRatio,
    ];

    /// Identifier used on the command line and in file names.
    pub fn name(self) -> &'static str {
        match self {
            Formula::O1 => "O1",
            Formula::O2 => "O2",
            Formula::Ot1 => "Ot1",
            Formula::Ot2 => "Ot2",
            Formula::Otc1 => "Otc1",
            Formula::Otc2 => "Otc2",
            Formula::Hk => "HK",
            Formula::TPlusW0 => "T_plus_w0",
            Formula::TRatio => "T_ratio",
        }
    }

    /// Row label for the text table.
    pub fn label(self) -> &'static str {
        match self {
            Formula::Hk => "HK*",
            Formula::TPlusW0 => "|T|+w0",
            Formula::TRatio => "|T|n/(n-1)",
            other => other.name(),
        }
    }

    pub fn bound_kind(self) -> Option<BoundKind> {
        match self {
            Formula::O1 => Some(BoundKind::Upper),
            Formula::Hk | Formula::TPlusW0 | Formula::TRatio => Some(BoundKind::Lower),
            _ => None,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        Formula::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| BenchError::UnknownFormula(wanted.to_string()))
    }
}

/// Parses a comma-separated formula list such as `O1,Ot1,HK`.
pub fn parse_formula_list(list: &str) -> Result<Vec<Formula>, BenchError> {
    let mut formulas = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Formula::from_str)
        .collect::<Result<Vec<_>, _>>()?;
    formulas.sort();
    formulas.dedup();
    if formulas.is_empty() {
        return Err(BenchError::EmptyFormulaSet);
    }
    Ok(formulas)
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub instance_dir: PathBuf,
    pub tour_dir: Option<PathBuf>,
    pub reported_values_path: Option<PathBuf>,
    pub output_dir: PathBuf,
    /// Replaces the instance dimension in the estimators.
    pub d_override: Option<usize>,
    pub formulas: Vec<Formula>,
    pub limit: SolverLimit,
}

impl RunConfig {
    pub fn new(instance_dir: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            instance_dir: instance_dir.into(),
            tour_dir: None,
            reported_values_path: None,
            output_dir: output_dir.into(),
            d_override: None,
            formulas: Formula::ALL.to_vec(),
            limit: SolverLimit::default(),
        }
    }
}

/// Where an instance's optimum came from. Ordered by precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OptSource {
    Exact,
    PublishedTour,
    Reported,
}

impl OptSource {
    pub fn name(self) -> &'static str {
        match self {
            OptSource::Exact => "EXACT",
            OptSource::PublishedTour => "PUBLISHED_TOUR",
            OptSource::Reported => "REPORTED",
        }
    }
}

/// All lengths are in reporting units (ATT instances divided by √10).
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub w0: f64,
    pub w1: f64,
    pub mst_total: f64,
    pub opt: Option<(OptSource, f64)>,
    pub report: EstimateReport,
    pub estimates: BTreeMap<Formula, f64>,
    pub epsilon: BTreeMap<Formula, f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedInstance {
    pub path: PathBuf,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRun {
    /// Sorted by instance name.
    pub results: Vec<InstanceResult>,
    pub skipped: Vec<SkippedInstance>,
}

fn list_files(dir: &Path, keep: impl Fn(&str) -> bool) -> Result<Vec<PathBuf>, BenchError> {
    let entries = fs::read_dir(dir).map_err(|source| BenchError::UnreadableDir {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|source| BenchError::UnreadableDir {
                path: dir.to_path_buf(),
                source,
            })?
            .path();
        let file_name = path.file_name().and_then(|s| s.to_str()).unwrap_or_default();
        if path.is_file() && keep(file_name) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn load_instance(path: &Path) -> Result<Instance, String> {
    let file = File::open(path).map_err(|e| e.to_string())?;
    let raw = parse_instance(file).map_err(|e| e.to_string())?;
    let mut instance = build_instance(&raw).map_err(|e| e.to_string())?;
    if instance.name().is_empty() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        instance = Instance::new(
            stem,
            instance.dim(),
            &instance.points().map(<[f64]>::to_vec).collect::<Vec<_>>(),
            instance.norm(),
        )
        .map_err(|e| e.to_string())?;
    }
    Ok(instance)
}

fn load_reported_map(path: Option<&Path>) -> Result<HashMap<String, ReportedValues>, BenchError> {
    let Some(path) = path else {
        return Ok(HashMap::new());
    };
    let file = File::open(path)?;
    let rows = load_reported_values(file).map_err(|source| BenchError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(rows.into_iter().map(|r| (r.instance_name.clone(), r)).collect())
}

fn tour_candidates(tour_dir: &Path, name: &str) -> Option<PathBuf> {
    [format!("{name}.opt.tour"), format!("{name}.tour")]
        .into_iter()
        .map(|f| tour_dir.join(f))
        .find(|p| p.is_file())
}

/// Length of a tour file for `instance`, in reporting units.
fn published_tour_length(instance: &Instance, path: &Path) -> Result<f64, String> {
    let file = File::open(path).map_err(|e| e.to_string())?;
    let raw = parse_tour(file, instance.len()).map_err(|e: ParseError| e.to_string())?;
    let tour = tour_length(instance, &order_from_sequence(&raw.sequence)).map_err(|e| e.to_string())?;
    Ok(tour.length)
}

fn evaluate_instance(
    path: &Path,
    config: &RunConfig,
    reported: &HashMap<String, ReportedValues>,
) -> Result<InstanceResult, SkippedInstance> {
    let skip = |reason: String| SkippedInstance {
        path: path.to_path_buf(),
        reason,
    };
    let instance = load_instance(path).map_err(skip)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
    let name = instance.name().to_string();
    let norm = instance.norm();
    let n = instance.len();
    let d = config.d_override.unwrap_or(instance.dim());

    let stats = compute_stats(&instance).scaled(norm);
    let mst_total = prim_mst(&instance).scaled_total(norm);
    let report = EstimateReport::new(&stats, mst_total, d);
    let known = reported.get(&name).or_else(|| reported.get(&stem));
    let mut notes = Vec::new();

    let mut opt = None;
    if n <= config.limit.max_exact_n() {
        let tour = exact_tour(&instance, config.limit).map_err(|e| skip(e.to_string()))?;
        opt = Some((OptSource::Exact, tour.length));
    }
    if opt.is_none() {
        if let Some(tour_path) = config
            .tour_dir
            .as_deref()
            .and_then(|dir| tour_candidates(dir, &stem).or_else(|| tour_candidates(dir, &name)))
        {
            match published_tour_length(&instance, &tour_path) {
                Ok(length) => opt = Some((OptSource::PublishedTour, length)),
                Err(e) => {
                    warn!("{}: ignoring tour: {e}", tour_path.display());
                    notes.push(format!("tour {} ignored: {e}", tour_path.display()));
                }
            }
        }
    }
    if opt.is_none() {
        opt = known.and_then(|r| r.reported_opt).map(|v| (OptSource::Reported, v));
    }

    let mut estimates = BTreeMap::new();
    for &formula in &config.formulas {
        let value = match formula {
            Formula::O1 => Some(report.o1),
            Formula::O2 => Some(report.o2),
            Formula::Ot1 => Some(report.ot1),
            Formula::Ot2 => Some(report.ot2),
            Formula::Otc1 => Some(report.otc1),
            Formula::Otc2 => Some(report.otc2),
            Formula::Hk => known.and_then(|r| r.hk_bound),
            Formula::TPlusW0 => Some(report.bounds.mst_plus_w0),
            Formula::TRatio => Some(report.bounds.mst_ratio),
        };
        if let Some(v) = value {
            estimates.insert(formula, v);
        }
    }

    let mut epsilon = BTreeMap::new();
    if let Some((_, opt_value)) = opt {
        for (&formula, &value) in &estimates {
            let eps = relative_error(value, opt_value).map_err(|e| skip(e.to_string()))?;
            epsilon.insert(formula, eps);
        }
        if !report.bounds.is_consistent() {
            notes.push("lower bound exceeds upper bound".to_string());
        }
    }

    Ok(InstanceResult {
        name,
        n,
        d,
        w0: stats.w0,
        w1: stats.w1,
        mst_total,
        opt,
        report,
        estimates,
        epsilon,
        notes,
    })
}

/// Evaluates every `.tsp` file in `config.instance_dir`.
///
/// A file that fails to load is skipped and reported in
/// [`CorpusRun::skipped`]; the run fails only if nothing could be evaluated.
pub fn evaluate_corpus(config: &RunConfig) -> Result<CorpusRun, BenchError> {
    if config.formulas.is_empty() {
        return Err(BenchError::EmptyFormulaSet);
    }
    let files = list_files(&config.instance_dir, |f| f.ends_with(".tsp"))?;
    let reported = load_reported_map(config.reported_values_path.as_deref())?;

    let eval = |path: &PathBuf| evaluate_instance(path, config, &reported);
    #[cfg(feature = "parallel")]
    let outcomes: Vec<_> = files.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<_> = files.iter().map(eval).collect();

    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(s) => {
                warn!("skipping {}: {}", s.path.display(), s.reason);
                skipped.push(s);
            }
        }
    }
    if results.is_empty() {
        return Err(BenchError::NoInstances(config.instance_dir.clone()));
    }
    results.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(CorpusRun { results, skipped })
}

/// One `ErrorStats` row per formula, in table order.
pub fn table1(results: &[InstanceResult], formulas: &[Formula]) -> Result<Vec<ErrorStats>, BenchError> {
    let mut formulas = formulas.to_vec();
    formulas.sort();
    formulas.dedup();
    if formulas.is_empty() {
        return Err(BenchError::EmptyFormulaSet);
    }
    let mut rows = Vec::with_capacity(formulas.len());
    for formula in formulas {
        let records: Vec<ErrorRecord> = results
            .iter()
            .filter_map(|r| {
                r.epsilon.get(&formula).map(|&epsilon| ErrorRecord {
                    instance_name: r.name.clone(),
                    formula_name: formula.name().to_string(),
                    epsilon,
                })
            })
            .collect();
        if records.is_empty() {
            return Err(BenchError::NoErrors(formula.name().to_string()));
        }
        rows.extend(aggregate_errors(&records)?);
    }
    Ok(rows)
}

pub fn write_table1_csv<W: Write>(rows: &[ErrorStats], sink: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["formula", "count", "min_eps", "max_eps", "range", "rms"])?;
    for r in rows {
        w.write_record([
            r.formula_name.clone(),
            r.count.to_string(),
            r.min_eps.to_string(),
            r.max_eps.to_string(),
            r.range.to_string(),
            r.rms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Aligned plain-text version of the error table, two decimals.
pub fn write_table1_text<W: Write>(rows: &[ErrorStats], mut sink: W) -> Result<(), BenchError> {
    let label = |name: &str| {
        Formula::from_str(name)
            .map(|f| f.label().to_string())
            .unwrap_or_else(|_| name.to_string())
    };
    writeln!(
        sink,
        "{:<12} {:>5} {:>10} {:>10} {:>10} {:>10}",
        "X", "n", "min eps", "max eps", "range", "eps_rms"
    )?;
    for r in rows {
        writeln!(
            sink,
            "{:<12} {:>5} {:>10.2} {:>10.2} {:>10.2} {:>10.2}",
            label(&r.formula_name),
            r.count,
            r.min_eps,
            r.max_eps,
            r.range,
            r.rms
        )?;
    }
    sink.flush()?;
    Ok(())
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Per-instance CSV: statistics, optimum with its provenance, and every
/// selected estimate with its ε.
pub fn write_results_csv<W: Write>(
    results: &[InstanceResult],
    formulas: &[Formula],
    sink: W,
) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(sink);
    let mut header: Vec<String> = ["instance", "n", "d", "w0", "w1", "mst", "opt_source", "opt"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for f in formulas {
        header.push(format!("est_{f}"));
        header.push(format!("eps_{f}"));
    }
    w.write_record(&header)?;
    for r in results {
        let mut row = vec![
            r.name.clone(),
            r.n.to_string(),
            r.d.to_string(),
            r.w0.to_string(),
            r.w1.to_string(),
            r.mst_total.to_string(),
            r.opt.map(|(s, _)| s.name().to_string()).unwrap_or_default(),
            opt_cell(r.opt.map(|(_, v)| v)),
        ];
        for f in formulas {
            row.push(opt_cell(r.estimates.get(f).copied()));
            row.push(opt_cell(r.epsilon.get(f).copied()));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// ε of one formula on every instance that has it, sorted by `n` then name.
///
/// `bound_violation` marks rows where a proven bound lands on the wrong side
/// of the optimum; for `HK` this can only come from the ingested values.
pub fn write_histogram<W: Write>(results: &[InstanceResult], formula: Formula, sink: W) -> Result<usize, BenchError> {
    let mut rows: Vec<(&InstanceResult, f64)> = results
        .iter()
        .filter_map(|r| r.epsilon.get(&formula).map(|&e| (r, e)))
        .collect();
    if rows.is_empty() {
        return Err(BenchError::NoErrors(formula.name().to_string()));
    }
    rows.sort_by(|a, b| a.0.n.cmp(&b.0.n).then_with(|| a.0.name.cmp(&b.0.name)));
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["instance", "n", "epsilon", "bound_violation"])?;
    for (r, eps) in &rows {
        let violation = match formula.bound_kind() {
            Some(BoundKind::Lower) => *eps > 0.0,
            Some(BoundKind::Upper) => *eps < 0.0,
            None => false,
        };
        w.write_record([r.name.clone(), r.n.to_string(), eps.to_string(), violation.to_string()])?;
    }
    w.flush()?;
    Ok(rows.len())
}

/// The four `k(d)` families for `e(2^d + k, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fig1Curve {
    Log2D,
    DPowLog2D,
    DPowD,
    DPowDPlus1,
}

impl Fig1Curve {
    pub const ALL: [Fig1Curve; 4] = [
        Fig1Curve::Log2D,
        Fig1Curve::DPowLog2D,
        Fig1Curve::DPowD,
        Fig1Curve::DPowDPlus1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Fig1Curve::Log2D => "k=log2(d)",
            Fig1Curve::DPowLog2D => "k=d^log2(d)",
            Fig1Curve::DPowD => "k=d^d",
            Fig1Curve::DPowDPlus1 => "k=d^(d+1)",
        }
    }

    /// `log2(k)`; `-inf` when `k = 0`.
    pub fn log2_k(self, d: usize) -> f64 {
        let l = (d as f64).log2();
        match self {
            Fig1Curve::Log2D => l.log2(),
            Fig1Curve::DPowLog2D => l * l,
            Fig1Curve::DPowD => d as f64 * l,
            Fig1Curve::DPowDPlus1 => (d + 1) as f64 * l,
        }
    }

    /// `e(2^d + k, d)` evaluated through `log2(n)`, finite for every `d`.
    pub fn e(self, d: usize) -> f64 {
        let x = self.log2_k(d) - d as f64;
        // log2(1 + 2^x) without overflow
        let excess = if x == f64::NEG_INFINITY {
            0.0
        } else if x > 0.0 {
            x + (-x).exp2().ln_1p() / std::f64::consts::LN_2
        } else {
            x.exp2().ln_1p() / std::f64::consts::LN_2
        };
        e_ratio_log2(d as f64 + excess, d)
    }
}

/// CSV `d,curve,e` for `d = 1..=d_max` and each curve family.
pub fn write_fig1_curves<W: Write>(d_max: usize, sink: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["d", "curve", "e"])?;
    for d in 1..=d_max {
        for curve in Fig1Curve::ALL {
            w.write_record([d.to_string(), curve.id().to_string(), curve.e(d).to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// How a computed tour length compares with the reported integer optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discrepancy {
    Shorter,
    Longer,
    Within,
}

impl Discrepancy {
    pub fn name(self) -> &'static str {
        match self {
            Discrepancy::Shorter => "shorter_than_reported",
            Discrepancy::Longer => "longer_than_reported",
            Discrepancy::Within => "within_tolerance",
        }
    }
}

/// Relative tolerance for [`Discrepancy::Within`].
pub const AUDIT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct AuditEntry {
    pub instance: String,
    pub n: Option<usize>,
    /// Unrounded tour length in reporting units.
    pub computed: Option<f64>,
    pub reported_opt: Option<f64>,
    pub hk: Option<f64>,
    pub classification: Option<Discrepancy>,
    /// HK value above the computed tour length.
    pub hk_anomaly: bool,
    pub diagnostic: Option<String>,
}

fn tour_stem(file_name: &str) -> &str {
    file_name
        .strip_suffix(".opt.tour")
        .or_else(|| file_name.strip_suffix(".tour"))
        .unwrap_or(file_name)
}

fn audit_one(stem: &str, tour_path: &Path, instance_dir: &Path, known: Option<&ReportedValues>) -> AuditEntry {
    let mut entry = AuditEntry {
        instance: stem.to_string(),
        n: None,
        computed: None,
        reported_opt: known.and_then(|r| r.reported_opt),
        hk: known.and_then(|r| r.hk_bound),
        classification: None,
        hk_anomaly: false,
        diagnostic: None,
    };
    let instance = match load_instance(&instance_dir.join(format!("{stem}.tsp"))) {
        Ok(i) => i,
        Err(e) => {
            entry.diagnostic = Some(format!("instance: {e}"));
            return entry;
        }
    };
    entry.n = Some(instance.len());
    let computed = match published_tour_length(&instance, tour_path) {
        Ok(c) => c,
        Err(e) => {
            entry.diagnostic = Some(format!("tour: {e}"));
            return entry;
        }
    };
    entry.computed = Some(computed);
    entry.classification = entry.reported_opt.map(|reported| {
        if (computed - reported).abs() <= AUDIT_TOLERANCE * reported {
            Discrepancy::Within
        } else if computed < reported {
            Discrepancy::Shorter
        } else {
            Discrepancy::Longer
        }
    });
    entry.hk_anomaly = entry.hk.is_some_and(|hk| hk > computed);
    entry
}

/// Recomputes the length of every tour file in `config.tour_dir` against its
/// instance in `config.instance_dir`. Problems with a single pair are
/// recorded in that entry's diagnostic.
pub fn audit_tours(config: &RunConfig) -> Result<Vec<AuditEntry>, BenchError> {
    let tour_dir = config.tour_dir.as_deref().unwrap_or(&config.instance_dir);
    let tours = list_files(tour_dir, |f| f.ends_with(".tour"))?;
    let reported = load_reported_map(config.reported_values_path.as_deref())?;
    let mut entries: Vec<AuditEntry> = tours
        .iter()
        .map(|path| {
            let file_name = path.file_name().and_then(|s| s.to_str()).unwrap_or_default();
            let stem = tour_stem(file_name);
            audit_one(stem, path, &config.instance_dir, reported.get(stem))
        })
        .collect();
    entries.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(entries)
}

pub fn write_audit_csv<W: Write>(entries: &[AuditEntry], sink: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record([
        "instance",
        "n",
        "computed",
        "reported_opt",
        "hk",
        "classification",
        "hk_anomaly",
        "diagnostic",
    ])?;
    for e in entries {
        w.write_record([
            e.instance.clone(),
            e.n.map(|n| n.to_string()).unwrap_or_default(),
            opt_cell(e.computed),
            opt_cell(e.reported_opt),
            opt_cell(e.hk),
            e.classification.map(|c| c.name().to_string()).unwrap_or_default(),
            e.hk_anomaly.to_string(),
            e.diagnostic.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn create(dir: &Path, file: &str) -> Result<BufWriter<File>, BenchError> {
    Ok(BufWriter::new(File::create(dir.join(file))?))
}

/// Full pipeline: evaluate the corpus and write `instances.csv`,
/// `table1.csv`, `table1.txt` and one `hist_<formula>.csv` per formula that
/// has at least one ε.
pub fn run_evaluate(config: &RunConfig) -> Result<CorpusRun, BenchError> {
    let run = evaluate_corpus(config)?;
    fs::create_dir_all(&config.output_dir)?;
    let out = &config.output_dir;

    write_results_csv(&run.results, &config.formulas, create(out, "instances.csv")?)?;

    let with_errors: Vec<Formula> = config
        .formulas
        .iter()
        .copied()
        .filter(|f| {
            let any = run.results.iter().any(|r| r.epsilon.contains_key(f));
            if !any {
                warn!("no relative errors for {f}; left out of the table");
            }
            any
        })
        .collect();
    if with_errors.is_empty() {
        return Err(BenchError::NoErrors(
            config.formulas.iter().map(|f| f.name()).collect::<Vec<_>>().join(","),
        ));
    }
    let rows = table1(&run.results, &with_errors)?;
    write_table1_csv(&rows, create(out, "table1.csv")?)?;
    write_table1_text(&rows, create(out, "table1.txt")?)?;
    for f in with_errors {
        let count = write_histogram(&run.results, f, create(out, &format!("hist_{f}.csv"))?)?;
        info!("hist_{f}.csv: {count} rows");
    }
    Ok(run)
}
