//! Airy function values, the Airy kernel and its diagonal limit. The last
//! column clamps to 0 once Ai underflows, as kernels on far ray nodes need.

use gapdet::kernels::airy_kernel;
use gapdet::specfun::{airy, airy_ai_tail};

fn main() -> gapdet::Result<()> {
    println!(
        "{:>6} {:>24} {:>24} {:>24}",
        "x", "Ai(x)", "Ai'(x)", "Ai, clamped"
    );
    for x in [-10.0, -2.338107410459767, -1.0, 0.0, 1.0, 5.0, 10.0, 120.0] {
        let (ai, dai) = airy(x).map_or((f64::NAN, f64::NAN), |p| (p.ai, p.ai_prime));
        println!(
            "{x:>6.3} {ai:>24.16e} {dai:>24.16e} {:>24.16e}",
            airy_ai_tail(x)?
        );
    }
    println!();
    for (x, y) in [(0.0, 0.0), (0.0, 1e-9), (-1.0, 2.0), (3.0, 3.0)] {
        println!("K_Ai({x}, {y}) = {:.16e}", airy_kernel(x, y)?);
    }
    Ok(())
}
