//! Estimate the random consistency index RI(n) empirically - the mean CI of
//! matrices filled with uniform draws from the 1/9..9 scale - and compare
//! against the shipped defaults.
//!
//! ```bash
//! cargo run --release -p pcrank --example estimate_random_index
//! ```

use pcrank::{estimate_ri, RiTable};

fn main() -> pcrank::Result<()> {
    let table = RiTable::default();
    let samples = 20_000;

    println!("{:>3}  {:>10}  {:>8}", "n", "estimated", "shipped");
    for n in 3..=7 {
        let estimate = estimate_ri(n, samples, 1990 + n as u64)?;
        println!(
            "{n:>3}  {estimate:>10.4}  {:>8.2}",
            table.get(n).expect("defaults cover 3..=10")
        );
    }
    println!("\n({samples} samples per order; estimates land near the shipped values)");
    Ok(())
}
