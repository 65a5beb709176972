//! Derive a priority vector from a comparison matrix with both methods and
//! measure how far apart the two rankings are.
//!
//! ```bash
//! cargo run -p pcrank --example derive_ranking
//! ```

use pcrank::{chebyshev, evm, gmm, kendall_distance, manhattan, EvmOptions, PcMatrix};

fn main() -> pcrank::Result<()> {
    // Four alternatives compared pairwise; entries above the diagonal are
    // c_12, c_13, c_14, c_23, c_24, c_34.
    let c = PcMatrix::from_upper_triangle(4, vec![0.5, 2.0, 5.0, 4.0, 4.0, 5.0])?;

    let ev = evm(&c, EvmOptions::default())?;
    let gm = gmm(&c);

    println!("principal eigenvalue: {:.6}", ev.lambda_max);
    println!("( converged in {} iterations, residual {:.2e} )\n", ev.iterations, ev.residual);

    println!("{:>4}  {:>10}  {:>10}", "", "eigen", "geo-mean");
    for i in 0..c.order() {
        println!("a{:<3}  {:>10.6}  {:>10.6}", i + 1, ev.weights.get(i), gm.get(i));
    }

    println!();
    println!("manhattan distance: {:.6}", manhattan(&ev.weights, &gm)?);
    println!("chebyshev distance: {:.6}", chebyshev(&ev.weights, &gm)?);
    println!(
        "discordant pairs:   {}",
        kendall_distance(&ev.weights, &gm)?
    );
    Ok(())
}
