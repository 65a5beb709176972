//! Compare two experts' judgment matrices over the same alternatives with the
//! four compatibility indices.
//!
//! ```bash
//! cargo run -p pcrank --example compare_matrices
//! ```

use pcrank::similarity::comp_report_matrices;
use pcrank::PcMatrix;

fn main() -> pcrank::Result<()> {
    let expert_a = PcMatrix::from_upper_triangle(4, vec![0.5, 2.0, 5.0, 4.0, 4.0, 5.0])?;
    // A second assessor mostly agrees but flips a couple of strengths.
    let expert_b = PcMatrix::from_upper_triangle(4, vec![1.0, 2.0, 4.0, 3.0, 5.0, 3.0])?;

    let self_report = comp_report_matrices(&expert_a, &expert_a)?;
    println!("matrix against itself: comp = {:.6} (identical judgments)", self_report.comp);

    let r = comp_report_matrices(&expert_a, &expert_b)?;
    println!("\nexpert A vs expert B");
    println!("comp:       {:.6}  (mean pairwise agreement, 1 = identical)", r.comp);
    println!("comp_lower: {:.6}  (mean of the smaller product per pair)", r.comp_lower);
    println!("comp_upper: {:.6}  (mean of the larger product per pair)", r.comp_upper);
    println!("comp_max:   {:.6}  (single most divergent pair)", r.comp_max);

    assert!(r.comp_lower <= r.comp && r.comp <= r.comp_upper && r.comp_upper <= r.comp_max);
    println!("\nordering comp_lower <= comp <= comp_upper <= comp_max holds, as it must.");
    Ok(())
}
