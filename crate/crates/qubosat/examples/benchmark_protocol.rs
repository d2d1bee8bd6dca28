//! The full benchmark protocol: instances in, report and CSV out.
//!
//! Builds a three-instance set, measures one solver over repeated seeded
//! trials per instance, and persists a JSON report plus a flat trial CSV.
//! The third instance deliberately gives weak local search an impossible
//! target, so its time-to-solution comes out `unbounded` - the shape a
//! result takes when a solver cannot reach the optimum within its budget.
//!
//! ```bash
//! cargo run --example benchmark_protocol
//! ```

use qubosat::bench::{
    load_report, run_benchmark, BenchConfig, BenchInstance, SolverConfig,
};
use qubosat::Formula;

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let report_path = dir.path().join("report.json");
    let csv_path = dir.path().join("trials.csv");

    // Two easy instances, plus a large one whose best-known weight is set
    // to its total weight: local search will never satisfy everything, so
    // every trial misses.
    let instances = vec![
        BenchInstance::new("easy-1", Formula::random(12, 72, 1).unwrap()),
        BenchInstance::new("easy-2", Formula::random(12, 72, 2).unwrap()),
        BenchInstance::new("too-hard", Formula::random(120, 720, 3).unwrap())
            .with_known_best(720),
    ];
    let config = BenchConfig {
        repetitions: 15,
        budget: 1.0,
        base_seed: 0,
        ..BenchConfig::default()
    };

    let report = run_benchmark(
        &instances,
        &[SolverConfig::local_search(3)],
        &config,
        &report_path,
        &csv_path,
    )
    .expect("benchmark runs");

    println!("{:<10} {:>7} {:>6}  tts_s", "instance", "trials", "p(end)");
    for est in &report.estimates {
        println!(
            "{:<10} {:>7} {:>6.2}  {}",
            est.instance_id,
            est.trials,
            est.success_prob.last().unwrap(),
            est.tts
        );
    }

    let csv = std::fs::read_to_string(&csv_path).expect("csv written");
    println!("\nfirst CSV lines:");
    for line in csv.lines().take(4) {
        println!("  {line}");
    }

    let reloaded = load_report(&report_path).expect("report reloads");
    assert_eq!(reloaded, report);
    println!("\nreport round-tripped through {}", report_path.display());
}
