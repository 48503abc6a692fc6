//! The GUE Tracy-Widom distribution F2(s) on a grid, with the convergence
//! diagnostics of each determinant.
//!
//! ```text
//! cargo run --release --example tracy_widom
//! ```

use gapdet::cli::scans::linspace;
use gapdet::gapprob::tracy_widom_f2;

fn main() -> gapdet::Result<()> {
    println!("{:>6} {:>24} {:>10}   nodes", "s", "F2(s)", "err");
    for s in linspace(-8.0, 4.0, 13) {
        let r = tracy_widom_f2(s, 40, 1e-10)?;
        println!(
            "{s:>6.1} {:>24.16e} {:>10.1e}   {:?}",
            r.re(),
            r.err_estimate,
            r.m_used
        );
    }
    Ok(())
}
