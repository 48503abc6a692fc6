//! When the two touching curves separate, the tacnode gap probability
//! decouples into a product of Tracy-Widom distributions, exponentially fast.

use gapdet::cli::scans::{log_linear_fit, scan_tacnode_to_airy, ScanSettings, Sweep};

fn main() -> gapdet::Result<()> {
    let sigmas = [1.0, 2.0, 3.0, 4.0, 5.0];
    let rows = scan_tacnode_to_airy(
        -0.3,
        0.5,
        Sweep::Sigma,
        &sigmas,
        0.0,
        &ScanSettings::default(),
    )?;
    let mut rel = Vec::new();
    for r in &rows {
        let d = r.reldiff.unwrap_or(f64::NAN);
        println!("sigma = {}: reldiff {d:+.3e}", r.param);
        rel.push(d);
    }
    if let Some((slope, r2)) = log_linear_fit(&sigmas, &rel) {
        println!("log|reldiff| slope {slope:.3}, R^2 {r2:.4}");
    }
    Ok(())
}
