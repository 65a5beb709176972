//! Run a disturbance-grid experiment: for each level d, generate matrices,
//! derive both rankings, and record inconsistency, divergence, and envelope
//! outcomes. Writes CSV next to the working directory and prints the summary.
//!
//! ```bash
//! cargo run --release -p pcrank --example run_experiment
//! ```

use std::fs::File;

use pcrank::montecarlo::write_csv;
use pcrank::{run_experiment, summarize, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A lighter grid than the default keeps this example quick; swap in
    // `ExperimentConfig::default()` for the full desk-scale sweep.
    let cfg = ExperimentConfig {
        d_grid: (0..=18).map(|i| 1.0 + 0.5 * i as f64).collect(),
        samples_per_d: 100,
        master_seed: 7,
        ..ExperimentConfig::default()
    };

    let records = run_experiment(&cfg)?;
    let mut file = File::create("experiment.csv")?;
    write_csv(&mut file, &cfg, &records)?;
    println!("wrote {} records to experiment.csv", records.len());

    let summary = summarize(&records, cfg.n)?;
    println!("eigensolver failures: {}", summary.evm_failures);
    println!("bound violations:     {}", summary.bound_violations);
    println!(
        "rank correlation of (d, mean KI): {:.4}",
        summary.spearman_d_mean_ki
    );
    println!(
        "minimal slack: chain {:.3e}, manhattan {:.3e}, chebyshev {:.3e}",
        summary.min_slack_chain, summary.min_slack_md, summary.min_slack_cheb
    );

    println!("\n{:>5}  {:>9}  {:>9}  {:>9}", "d", "mean KI", "mean MD", "max MD");
    for level in &summary.per_level {
        println!(
            "{:>5.2}  {:>9.6}  {:>9.6}  {:>9.6}",
            level.d, level.mean_ki, level.mean_md, level.max_md
        );
    }
    Ok(())
}
