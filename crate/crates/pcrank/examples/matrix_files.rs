//! Read and write the matrix text format: full matrices with comments and
//! fractions, bare upper triangles, and exact serialization round trips.
//!
//! ```bash
//! cargo run -p pcrank --example matrix_files
//! ```

use pcrank::{Error, PcMatrix};

fn main() -> pcrank::Result<()> {
    // A full matrix: '#' comments, whitespace-separated entries, fractions.
    let full = "\
# how four options compare
1    1/2  2    5
2    1    4    4
1/2  1/4  1    5
1/5  1/4  1/5  1
";
    let a = PcMatrix::parse(full)?;

    // The same judgments as a bare upper triangle (one row per matrix row,
    // shrinking by one entry each line).
    let upper = "1/2 2 5\n4 4\n5\n";
    let b = PcMatrix::parse(upper)?;
    assert_eq!(a, b);
    println!("full and upper-triangle layouts parse to the same matrix");

    // Serialization keeps 17 significant digits, enough to round-trip f64
    // exactly.
    let text = a.to_text();
    assert_eq!(PcMatrix::parse(&text)?, a);
    println!("\nserialized form:\n{text}");

    // Validation errors carry positions.
    match PcMatrix::parse("1 2\n0.4 1\n") {
        Err(Error::Validation { i, j, .. }) => {
            println!("0.4 * 2 != 1, reported at entry ({i}, {j})")
        }
        other => panic!("expected a reciprocity error, got {other:?}"),
    }
    match PcMatrix::parse("1 2\noops 1\n") {
        Err(Error::Parse { line, column, .. }) => {
            println!("bad token reported at line {line}, column {column}")
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    Ok(())
}
