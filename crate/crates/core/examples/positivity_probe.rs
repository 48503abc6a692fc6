//! Samples 2x2 correlation determinants of the block kernel conditioned on
//! no points in R+. A negative one shows that the kernel does not describe
//! a point process.

use gapdet::cli::probe::{positivity_probe, ProbeConfig};

fn main() -> gapdet::Result<()> {
    let report = positivity_probe(&ProbeConfig::default())?;
    let negative = report
        .samples
        .iter()
        .filter(|s| s.det.is_some_and(|d| d < 0.0))
        .count();
    println!("{negative} of {} samples negative", report.samples.len());
    if let Some(w) = report.witness {
        let s = &report.samples[w];
        println!(
            "smallest det {:.6} at sigma = {}, tau = {}, x = {:.4}, xi = {:.4}",
            s.det.unwrap_or(f64::NAN),
            s.sigma,
            s.tau,
            s.x,
            s.xi
        );
        if let Some(k) = s.kernel {
            println!(
                "kernel matrix [[{:.6}, {:.6}], [{:.6}, {:.6}]]",
                k[0], k[1], k[2], k[3]
            );
        }
    }
    Ok(())
}
