//! Far along the Pearcey cusp the gap probability of a scaled interval
//! factorizes into two Tracy-Widom distributions, one per edge.

use gapdet::cli::scans::{scan_pearcey_to_airy, ScanSettings};

fn main() -> gapdet::Result<()> {
    let settings = ScanSettings::default();
    for tau in [3.0, 5.314] {
        println!("tau = {tau}");
        for r in scan_pearcey_to_airy(tau, -3.0, 1.0, 5, &settings)? {
            match (&r.f_p, r.f2f2, r.reldiff) {
                (Some(fp), Some(f2f2), Some(rel)) => println!(
                    "  rho = {:>5.2}, sigma = {:>5.2}: F_P {:.10}  F2 F2 {:.10}  reldiff {rel:+.3e}",
                    r.rho,
                    r.sigma,
                    fp.re(),
                    f2f2
                ),
                _ => println!("  rho = {}, sigma = {}: {}", r.rho, r.sigma, r.error.unwrap_or_default()),
            }
        }
    }
    Ok(())
}
