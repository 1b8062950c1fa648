//! Experiment harness: repeated GA runs per (instance, operator) pair,
//! aggregated into best/average/worst lengths with quality percentages.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::crossover::OperatorKind;
use crate::error::{contract, Error, Result};
use crate::ga::{run_ga, GaConfig, GaResult};
use crate::instance::Instance;

/// Percentage excess of `cost` over `optimum`.
pub fn quality(cost: f64, optimum: i64) -> Result<f64> {
    if optimum <= 0 {
        return Err(contract(format!("optimum must be positive, got {optimum}")));
    }
    Ok((cost - optimum as f64) / optimum as f64 * 100.0)
}

/// Optimal tour lengths for the benchmark instances, keyed by lowercase name.
const KNOWN_OPTIMA: &[(&str, i64)] = &[
    ("eil51", 426),
    ("eil101", 629),
    ("kroa100", 21282),
    ("kroa200", 29368),
    ("a280", 2579),
    ("lin318", 42029),
];

/// Looks up a bundled optimum by instance name; case and a `.tsp` suffix
/// are ignored.
pub fn known_optimum(instance_name: &str) -> Option<i64> {
    let key = instance_name.trim().to_ascii_lowercase();
    let key = key.strip_suffix(".tsp").unwrap_or(&key);
    KNOWN_OPTIMA.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
}

/// Loads a TSPLIB file and attaches its bundled optimum, trying the NAME
/// field first and the file stem second.
pub fn load_instance(path: &Path) -> Result<Instance> {
    let inst = Instance::load(path)?;
    let opt = known_optimum(inst.name()).or_else(|| path.file_stem().and_then(|s| s.to_str()).and_then(known_optimum));
    Ok(inst.with_known_optimum(opt))
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub instances: Vec<PathBuf>,
    pub operators: Vec<String>,
    pub runs: usize,
    /// Template for every run; `operator` and `seed` are overwritten.
    pub ga: GaConfig,
    /// Run `r` uses seed `base_seed + r`.
    pub base_seed: u64,
    pub output: Option<PathBuf>,
    /// When false the CSV leaves `avg_secs` empty so reruns are byte-identical.
    pub record_timing: bool,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            instances: Vec::new(),
            operators: vec![OperatorKind::Igx.name().to_string()],
            runs: 30,
            ga: GaConfig::default(),
            base_seed: 0,
            output: None,
            record_timing: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub instance: String,
    pub operator: String,
    pub runs: usize,
    pub best_length: i64,
    pub average_length: f64,
    pub worst_length: i64,
    pub best_quality: Option<f64>,
    pub average_quality: Option<f64>,
    pub worst_quality: Option<f64>,
    pub avg_outer_loops: f64,
    pub avg_time: f64,
    /// Runs stopped by the outer-loop cap rather than convergence.
    pub capped_runs: usize,
}

/// Summarizes the runs of one (instance, operator) pair.
pub fn aggregate(instance: &str, operator: &str, optimum: Option<i64>, results: &[GaResult]) -> Result<RunReport> {
    if results.is_empty() {
        return Err(contract("cannot aggregate zero runs"));
    }
    let runs = results.len();
    let lengths = results.iter().map(|r| r.best_length);
    let best = lengths.clone().min().expect("non-empty");
    let worst = lengths.clone().max().expect("non-empty");
    let average = lengths.map(|l| l as f64).sum::<f64>() / runs as f64;
    let q = |c: f64| optimum.map(|o| quality(c, o)).transpose();
    Ok(RunReport {
        instance: instance.to_string(),
        operator: operator.to_string(),
        runs,
        best_length: best,
        average_length: average,
        worst_length: worst,
        best_quality: q(best as f64)?,
        average_quality: q(average)?,
        worst_quality: q(worst as f64)?,
        avg_outer_loops: results.iter().map(|r| r.outer_loops as f64).sum::<f64>() / runs as f64,
        avg_time: results.iter().map(|r| r.wall_time).sum::<f64>() / runs as f64,
        capped_runs: results.iter().filter(|r| r.hit_loop_cap).count(),
    })
}

/// `runs` seeded GA runs of one configuration, in seed order.
pub fn run_seeds(
    inst: &Instance,
    template: &GaConfig,
    operator: OperatorKind,
    base_seed: u64,
    runs: usize,
) -> Result<Vec<GaResult>> {
    (0..runs)
        .into_par_iter()
        .map(|r| {
            let cfg = GaConfig {
                operator,
                seed: base_seed.wrapping_add(r as u64),
                ..template.clone()
            };
            run_ga(inst, &cfg)
        })
        .collect()
}

/// Validates everything up front, then runs every (instance, operator) pair.
/// Writes the CSV when `spec.output` is set.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<RunReport>> {
    let mut problems = Vec::new();
    if spec.runs == 0 {
        problems.push("runs must be at least 1".to_string());
    }
    if spec.instances.is_empty() {
        problems.push("no instances given".to_string());
    }
    if spec.operators.is_empty() {
        problems.push("no operators given".to_string());
    }
    let mut operators = Vec::new();
    for name in &spec.operators {
        match name.parse::<OperatorKind>() {
            Ok(k) => operators.push(k),
            Err(e) => problems.push(e.to_string()),
        }
    }
    let mut instances = Vec::new();
    for path in &spec.instances {
        match load_instance(path) {
            Ok(inst) => match spec.ga.validate(&inst) {
                Ok(()) => instances.push(inst),
                Err(e) => problems.push(format!("{}: {e}", path.display())),
            },
            Err(e) => problems.push(format!("{}: {e}", path.display())),
        }
    }
    if !problems.is_empty() {
        return Err(Error::InvalidExperiment(problems));
    }

    let mut reports = Vec::new();
    for inst in &instances {
        for &op in &operators {
            let results = run_seeds(inst, &spec.ga, op, spec.base_seed, spec.runs)?;
            reports.push(aggregate(inst.name(), op.name(), inst.known_optimum(), &results)?);
        }
    }
    if let Some(out) = &spec.output {
        let file = std::fs::File::create(out)
            .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", out.display()))))?;
        write_csv(&reports, file, spec.record_timing)?;
    }
    Ok(reports)
}

pub const CSV_HEADER: [&str; 11] = [
    "instance",
    "operator",
    "runs",
    "best",
    "best_q",
    "avg",
    "avg_q",
    "worst",
    "worst_q",
    "avg_loops",
    "avg_secs",
];

fn opt2(v: Option<f64>) -> String {
    v.map(|q| format!("{q:.2}")).unwrap_or_default()
}

pub fn write_csv(reports: &[RunReport], out: impl io::Write, include_timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.instance.clone(),
            r.operator.clone(),
            r.runs.to_string(),
            r.best_length.to_string(),
            opt2(r.best_quality),
            format!("{:.2}", r.average_length),
            opt2(r.average_quality),
            r.worst_length.to_string(),
            opt2(r.worst_quality),
            format!("{:.2}", r.avg_outer_loops),
            if include_timing {
                format!("{:.4}", r.avg_time)
            } else {
                String::new()
            },
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn with_quality(len: String, q: Option<f64>) -> String {
    match q {
        Some(q) => format!("{len}({q:.2}%)"),
        None => len,
    }
}

/// Console rendering in the familiar `428(0.47%)` style.
pub fn format_table(reports: &[RunReport]) -> String {
    let header = [
        "Problem",
        "Crossover",
        "Best length (quality)",
        "Average length (quality)",
        "Worst length (quality)",
        "Outer loops",
        "Average time (s)",
    ];
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            [
                r.instance.clone(),
                r.operator.clone(),
                with_quality(r.best_length.to_string(), r.best_quality),
                with_quality(format!("{:.1}", r.average_length), r.average_quality),
                with_quality(r.worst_length.to_string(), r.worst_quality),
                format!("{:.1}", r.avg_outer_loops),
                format!("{:.3}", r.avg_time),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let parts: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &header);
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&mut out, &cells);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tour::Tour;

    fn result(len: i64, loops: usize) -> GaResult {
        let inst = crate::instance::fig1_fixture();
        let t = Tour::new((0..8).collect(), &inst).unwrap();
        GaResult {
            best_tour: t,
            best_length: len,
            outer_loops: loops,
            wall_time: 0.5,
            children_produced: 0,
            best_history: vec![],
            hit_loop_cap: false,
        }
    }

    #[test]
    fn quality_values() {
        assert_eq!(quality(426.0, 426).unwrap(), 0.0);
        assert_eq!(format!("{:.2}", quality(428.0, 426).unwrap()), "0.47");
        assert_eq!(quality(852.0, 426).unwrap(), 100.0);
        assert!(quality(1.0, 0).is_err());
        assert!(quality(1.0, -3).is_err());
    }

    #[test]
    fn optima_lookup() {
        assert_eq!(known_optimum("eil51"), Some(426));
        assert_eq!(known_optimum("kroA100"), Some(21282));
        assert_eq!(known_optimum("KROA100.tsp"), Some(21282));
        assert_eq!(known_optimum("unknown.tsp"), None);
    }

    #[test]
    fn optima_consistent_with_reported_qualities() {
        // reference best lengths with their two-decimal qualities
        for (name, best, q) in [
            ("eil51", 428, 0.47),
            ("eil101", 634, 0.79),
            ("kroA100", 21292, 0.05),
            ("kroA200", 29649, 0.96),
            ("a280", 2593, 0.54),
            ("lin318", 42992, 2.29),
        ] {
            let got = quality(best as f64, known_optimum(name).unwrap()).unwrap();
            assert!((got - q).abs() < 0.005 + 1e-9, "{name}: {got}");
        }
    }

    #[test]
    fn aggregate_single_run() {
        let r = aggregate("eil51", "igx", Some(426), &[result(430, 3)]).unwrap();
        assert_eq!(r.best_length, 430);
        assert_eq!(r.worst_length, 430);
        assert_eq!(r.average_length, 430.0);
        assert_eq!(r.best_quality, r.worst_quality);
    }

    #[test]
    fn aggregate_many() {
        let r = aggregate("x", "igx", None, &[result(10, 1), result(14, 3), result(12, 2)]).unwrap();
        assert_eq!((r.best_length, r.worst_length), (10, 14));
        assert_eq!(r.average_length, 12.0);
        assert_eq!(r.avg_outer_loops, 2.0);
        assert!(r.best_quality.is_none());
        assert!(aggregate("x", "igx", None, &[]).is_err());
    }

    #[test]
    fn csv_layout() {
        let r = aggregate("eil51", "igx", Some(426), &[result(428, 3), result(430, 5)]).unwrap();
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(lines.next().unwrap(), "eil51,igx,2,428,0.47,429.00,0.70,430,0.94,4.00,");
    }

    #[test]
    fn table_format() {
        let r = aggregate("eil51", "igx", Some(426), &[result(428, 3)]).unwrap();
        let t = format_table(&[r]);
        assert!(t.contains("428(0.47%)"), "{t}");
        assert!(t.starts_with("Problem"));
    }

    #[test]
    fn experiment_fails_fast_listing_problems() {
        let spec = ExperimentSpec {
            instances: vec![PathBuf::from("/nonexistent/a.tsp"), PathBuf::from("/nonexistent/b.tsp")],
            operators: vec!["igx".into(), "pmx".into()],
            runs: 1,
            ..Default::default()
        };
        match run_experiment(&spec) {
            Err(Error::InvalidExperiment(p)) => {
                assert_eq!(p.len(), 3, "{p:?}");
                assert!(p.iter().any(|m| m.contains("pmx")));
            }
            other => panic!("expected InvalidExperiment, got {other:?}"),
        }
    }
}
