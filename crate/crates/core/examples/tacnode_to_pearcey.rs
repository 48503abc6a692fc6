//! Deep in the overlap regime the tacnode gap probability of a rescaled
//! interval approaches the Pearcey one.

use gapdet::cli::scans::{scan_tacnode_to_pearcey, Branch, ScanSettings};

fn main() -> gapdet::Result<()> {
    let sigmas = [-3.0, -5.0, -7.0, -9.0];
    let rows = scan_tacnode_to_pearcey(
        &sigmas,
        -1.0,
        1.0,
        &[0.0],
        Branch::Plus,
        &ScanSettings::default(),
    )?;
    for r in rows {
        let tac = r.f_tac.as_ref().map(|g| g.re());
        let fp = r.f_p.as_ref().map(|g| g.re());
        println!(
            "sigma = {}: F_tac {tac:.10?}, F_P {fp:.10?}, reldiff {:+.4e}, extended precision {}",
            r.sigma,
            r.reldiff.unwrap_or(f64::NAN),
            r.f_tac.is_some_and(|g| g.extended)
        );
    }
    Ok(())
}
