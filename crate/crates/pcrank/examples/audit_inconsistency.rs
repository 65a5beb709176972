//! Audit the consistency of a set of pairwise judgments: eigenvalue-based
//! CI/CR, triad-based KI, and the single worst triad.
//!
//! ```bash
//! cargo run -p pcrank --example audit_inconsistency
//! ```

use pcrank::{inconsistency_report, EvmOptions, PcMatrix, RiTable, Tolerance};

fn main() -> pcrank::Result<()> {
    let text = "\
# three experts rated the same four options quite differently
1    1/2  2    5
2    1    4    4
1/2  1/4  1    5
1/5  1/4  1/5  1
";
    let c = PcMatrix::parse(text)?;
    println!("consistent at 1e-6: {}", c.is_consistent(Tolerance::new(1e-6)?));

    let report = inconsistency_report(&c, &RiTable::default(), EvmOptions::default())?;
    println!("lambda_max: {:.6}", report.lambda_max);
    println!("CI:         {:.6}", report.ci);
    if let Some(cr) = report.cr {
        let verdict = if cr <= 0.1 { "acceptable" } else { "needs revision" };
        println!("CR:         {cr:.6}  ({verdict}, threshold 0.1)");
    }
    if let (Some(ki), Some(t)) = (report.ki, report.worst_triad) {
        println!("KI:         {ki:.6}");
        println!(
            "worst triad: a{} -> a{} -> a{} closes with relative error {:.3}",
            t.i + 1,
            t.k + 1,
            t.j + 1,
            t.local_ki
        );
        println!(
            "             c[{0}][{2}] = {3}, but c[{0}][{1}] * c[{1}][{2}] = {4}",
            t.i + 1,
            t.k + 1,
            t.j + 1,
            c.get(t.i, t.j),
            c.get(t.i, t.k) * c.get(t.k, t.j)
        );
    }
    Ok(())
}
