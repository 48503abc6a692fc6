//! Writes an `x ai ai_prime` table from this crate's Airy evaluator, in the
//! same format as the reference table used by the tests, and reports the
//! largest deviation from that reference.
//!
//! ```text
//! cargo run --release --example airy_golden_table > airy.txt
//! ```

use gapdet::specfun::golden::{read_table, tabulate, write_table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reference = read_table(include_str!("../tests/data/airy_golden.txt").as_bytes())?;
    let ours = tabulate(-15.0, 30.0, 451)?;
    let worst = reference
        .iter()
        .zip(&ours)
        .map(|(r, o)| (r.ai - o.ai).abs().max((r.ai_prime - o.ai_prime).abs()))
        .fold(0.0, f64::max);
    write_table(std::io::stdout().lock(), &ours)?;
    eprintln!("max deviation from the reference table: {worst:.2e}");
    Ok(())
}
